fn main() {
    std::process::exit(germcalc::cli::run(std::env::args().skip(1)));
}
