//! Command-line front end.
//!
//! Subcommands: `classify`, `integrate`, `differentiate`, `roundtrip`,
//! `normal`, `lj`, `mesh`, `slice`, `locus`, `demo`. Germ input is always
//! explicit: `--pedal-n/--pedal-p` for a pedal pair, `--phi1/--phi2` for a
//! normalized front (validated first), `--map "E1,E2,E3"` for an assembled
//! map (decomposed first). The form is never inferred.
//!
//! Exit codes: 0 ok, 1 usage error, 2 domain error. With `--json` a report
//! goes to stdout; classification payloads serialize exact rationals as
//! strings, never floats. Identical argv produces byte-identical stdout and
//! files.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::calculus::{
    differentiate_d, integrate_i, roundtrip_di, roundtrip_id, CalculusError, RoundtripReport,
};
use crate::classify::{classify_legendrian, classify_pedal, whitney_criterion, Classification};
use crate::coeff::Coeff;
use crate::expr::{parse_expr, ParseError};
use crate::germs::{
    assemble_pedal, decompose_pedal, validate_normalized, GermError, MapGerm3,
    NormalizedLegendrianGerm, PedalGerm,
};
use crate::jet::JetError;
use crate::legendrian::{lift_rank_check, lj_det, lj_reduced, norm_squared, normal_field};
use crate::sampling::{
    mesh_to_obj, polyline_to_csv, sample_surface, singular_locus, slice_front, slice_to_csv, Range2,
};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "germcalc", version = VERSION, disable_help_subcommand = true)]
#[command(
    about = "Exact jet calculus and singularity recognition for pedal-type map-germs and Legendrian fronts"
)]
struct Cli {
    /// Truncation order for all jets.
    #[arg(long, global = true, default_value_t = crate::DEFAULT_ORDER)]
    order: u32,
    /// Emit a JSON report on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Output file: OBJ for mesh, CSV for slice/locus, JSON report otherwise.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a germ (pedal side or Legendrian side).
    Classify(GermInput),
    /// Integrate a pedal germ into a normalized Legendrian front.
    Integrate(GermInput),
    /// Differentiate a normalized front back to its pedal pair.
    Differentiate(GermInput),
    /// Check the round-trip identity for the given germ.
    Roundtrip(GermInput),
    /// Print the unnormalized normal field and the lift rank check.
    Normal(GermInput),
    /// Print the reduced and determinant Legendrian Jacobians.
    Lj(GermInput),
    /// Sample a germ over a grid and write a Wavefront OBJ mesh.
    Mesh(MeshArgs),
    /// Sample a y-slice of a front with unit normals (CSV).
    Slice(SliceArgs),
    /// Trace the singular locus {LJ = 0} (CSV).
    Locus(LocusArgs),
    /// Reproduce the worked chain from the Whitney umbrella to the
    /// swallowtail, the failing direct integration, and the cuspidal edge.
    Demo,
}

#[derive(Args)]
struct GermInput {
    /// Pedal pair: the factor n (with --pedal-p).
    #[arg(long = "pedal-n", value_name = "EXPR", allow_hyphen_values = true)]
    pedal_n: Option<String>,
    /// Pedal pair: the factor p (with --pedal-n).
    #[arg(long = "pedal-p", value_name = "EXPR", allow_hyphen_values = true)]
    pedal_p: Option<String>,
    /// Front component Phi1 (with --phi2).
    #[arg(long, value_name = "EXPR", allow_hyphen_values = true)]
    phi1: Option<String>,
    /// Front component Phi2 (with --phi1).
    #[arg(long, value_name = "EXPR", allow_hyphen_values = true)]
    phi2: Option<String>,
    /// Assembled map as three comma-separated expressions.
    #[arg(long, value_name = "EXPR,EXPR,EXPR", allow_hyphen_values = true)]
    map: Option<String>,
}

#[derive(Args)]
struct MeshArgs {
    #[command(flatten)]
    input: GermInput,
    /// Domain rectangle xmin,xmax,ymin,ymax.
    #[arg(
        long,
        value_name = "A,B,C,D",
        default_value = "-1,1,-1,1",
        allow_hyphen_values = true
    )]
    range: String,
    /// Grid resolution nx,ny.
    #[arg(long, value_name = "NX,NY", default_value = "40,40")]
    res: String,
}

#[derive(Args)]
struct SliceArgs {
    #[command(flatten)]
    input: GermInput,
    /// The y value of the slice.
    #[arg(long, allow_hyphen_values = true)]
    y0: f64,
    /// Sampled x interval.
    #[arg(
        long = "range-x",
        value_name = "A,B",
        default_value = "-1,1",
        allow_hyphen_values = true
    )]
    range_x: String,
    /// Number of samples (>= 2).
    #[arg(long, default_value_t = 100)]
    samples: u32,
}

#[derive(Args)]
struct LocusArgs {
    #[command(flatten)]
    input: GermInput,
    /// Domain rectangle xmin,xmax,ymin,ymax.
    #[arg(
        long,
        value_name = "A,B,C,D",
        default_value = "-1,1,-1,1",
        allow_hyphen_values = true
    )]
    range: String,
    /// Grid resolution nx,ny.
    #[arg(long, value_name = "NX,NY", default_value = "100,100")]
    res: String,
    /// Also write the image-space polyline to this CSV file.
    #[arg(long = "image-out", value_name = "PATH")]
    image_out: Option<PathBuf>,
}

// ----------------------------------------------------------------------
// Errors
// ----------------------------------------------------------------------

/// Anything an inner module can surface; `code()` is the verbatim JSON name.
#[derive(Debug)]
enum AppError {
    Parse(ParseError),
    Jet(JetError),
    Germ(GermError),
    Calculus(CalculusError),
    Io(String),
}

impl AppError {
    fn code(&self) -> &'static str {
        match self {
            AppError::Parse(e) => e.code(),
            AppError::Jet(e) => e.code(),
            AppError::Germ(e) => e.code(),
            AppError::Calculus(e) => e.code(),
            AppError::Io(_) => "IoError",
        }
    }

    fn message(&self) -> String {
        match self {
            AppError::Parse(e) => e.to_string(),
            AppError::Jet(e) => e.to_string(),
            AppError::Germ(e) => e.to_string(),
            AppError::Calculus(e) => e.to_string(),
            AppError::Io(m) => m.clone(),
        }
    }
}

impl From<ParseError> for AppError {
    fn from(e: ParseError) -> Self {
        AppError::Parse(e)
    }
}
impl From<JetError> for AppError {
    fn from(e: JetError) -> Self {
        AppError::Jet(e)
    }
}
impl From<GermError> for AppError {
    fn from(e: GermError) -> Self {
        AppError::Germ(e)
    }
}
impl From<CalculusError> for AppError {
    fn from(e: CalculusError) -> Self {
        AppError::Calculus(e)
    }
}

/// A usage problem (flag shape, not domain data): exit code 1.
struct UsageError(String);

// ----------------------------------------------------------------------
// Report
// ----------------------------------------------------------------------

#[derive(Serialize)]
#[serde(untagged)]
enum Status {
    Ok(&'static str),
    Error { error: String, message: String },
}

#[derive(Serialize)]
struct Report {
    tool_version: &'static str,
    truncation_order: u32,
    input_echo: BTreeMap<&'static str, String>,
    result: Value,
    status: Status,
}

fn diagnostics_json(c: &Classification) -> Value {
    Value::Array(
        c.diagnostics
            .iter()
            .map(|d| json!({ "criterion": d.criterion, "value": d.value.to_string() }))
            .collect(),
    )
}

fn roundtrip_json(direction: &str, r: &RoundtripReport) -> Value {
    json!({
        "direction": direction,
        "equal": r.equal,
        "compared_degree": r.compared_degree,
        "mismatches": r.mismatches.iter().map(|m| json!({
            "component": m.component,
            "monomial": format!("x^{}*y^{}", m.monomial.0, m.monomial.1),
            "expected": m.expected,
            "got": m.got,
        })).collect::<Vec<_>>(),
    })
}

// ----------------------------------------------------------------------
// Input resolution
// ----------------------------------------------------------------------

enum ResolvedInput {
    Pedal(PedalGerm),
    Front(NormalizedLegendrianGerm),
}

struct InputData {
    echo: BTreeMap<&'static str, String>,
    resolved: Result<ResolvedInput, AppError>,
}

enum InputKind {
    Pedal,
    Front,
    Map,
}

impl GermInput {
    fn kind(&self) -> Result<InputKind, UsageError> {
        let pedal = self.pedal_n.is_some() || self.pedal_p.is_some();
        let phi = self.phi1.is_some() || self.phi2.is_some();
        let map = self.map.is_some();
        match (pedal, phi, map) {
            (true, false, false) => {
                if self.pedal_n.is_some() && self.pedal_p.is_some() {
                    Ok(InputKind::Pedal)
                } else {
                    Err(UsageError(
                        "--pedal-n and --pedal-p must be given together".into(),
                    ))
                }
            }
            (false, true, false) => {
                if self.phi1.is_some() && self.phi2.is_some() {
                    Ok(InputKind::Front)
                } else {
                    Err(UsageError(
                        "--phi1 and --phi2 must be given together".into(),
                    ))
                }
            }
            (false, false, true) => Ok(InputKind::Map),
            (false, false, false) => Err(UsageError(
                "germ input required: --pedal-n/--pedal-p, --phi1/--phi2, or --map".into(),
            )),
            _ => Err(UsageError(
                "give exactly one input form: pedal pair, phi pair, or --map".into(),
            )),
        }
    }

    /// Parse and validate into the side the flags name; `--map` goes through
    /// pedal decomposition first.
    fn resolve(&self, order: u32) -> Result<InputData, UsageError> {
        let mut echo = BTreeMap::new();
        let resolved = match self.kind()? {
            InputKind::Pedal => (|| {
                let n = parse_expr(self.pedal_n.as_ref().unwrap(), order)?;
                echo.insert("pedal_n", n.to_string());
                let p = parse_expr(self.pedal_p.as_ref().unwrap(), order)?;
                echo.insert("pedal_p", p.to_string());
                Ok(ResolvedInput::Pedal(PedalGerm::new(n, p)?))
            })(),
            InputKind::Front => (|| {
                let phi1 = parse_expr(self.phi1.as_ref().unwrap(), order)?;
                echo.insert("phi1", phi1.to_string());
                let phi2 = parse_expr(self.phi2.as_ref().unwrap(), order)?;
                echo.insert("phi2", phi2.to_string());
                Ok(ResolvedInput::Front(validate_normalized(&phi1, &phi2)?))
            })(),
            InputKind::Map => {
                let text = self.map.as_ref().unwrap();
                let parts: Vec<&str> = text.split(',').collect();
                if parts.len() != 3 {
                    return Err(UsageError(format!(
                        "--map needs exactly three comma-separated expressions, got {}",
                        parts.len()
                    )));
                }
                (|| {
                    let c1 = parse_expr(parts[0], order)?;
                    echo.insert("map_1", c1.to_string());
                    let c2 = parse_expr(parts[1], order)?;
                    echo.insert("map_2", c2.to_string());
                    let c3 = parse_expr(parts[2], order)?;
                    echo.insert("map_3", c3.to_string());
                    let m = MapGerm3::new(c1, c2, c3)?;
                    Ok(ResolvedInput::Pedal(decompose_pedal(&m)?))
                })()
            }
        };
        Ok(InputData { echo, resolved })
    }
}

fn parse_floats<const N: usize>(text: &str, what: &str) -> Result<[f64; N], UsageError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != N {
        return Err(UsageError(format!(
            "{what} needs {N} comma-separated numbers"
        )));
    }
    let mut out = [0.0; N];
    for (slot, part) in out.iter_mut().zip(parts) {
        *slot = part
            .trim()
            .parse::<f64>()
            .map_err(|_| UsageError(format!("{what}: '{part}' is not a number")))?;
        if !slot.is_finite() {
            return Err(UsageError(format!("{what}: '{part}' is not finite")));
        }
    }
    Ok(out)
}

fn parse_res(text: &str) -> Result<(u32, u32), UsageError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(UsageError("--res needs nx,ny".into()));
    }
    let nx = parts[0]
        .trim()
        .parse::<u32>()
        .map_err(|_| UsageError("--res: bad nx".into()))?;
    let ny = parts[1]
        .trim()
        .parse::<u32>()
        .map_err(|_| UsageError("--res: bad ny".into()))?;
    if nx < 1 || ny < 1 {
        return Err(UsageError("--res must be at least 1,1".into()));
    }
    Ok((nx, ny))
}

fn parse_range(text: &str) -> Result<Range2, UsageError> {
    let [x_min, x_max, y_min, y_max] = parse_floats::<4>(text, "--range")?;
    let r = Range2 {
        x_min,
        x_max,
        y_min,
        y_max,
    };
    if !r.is_finite() {
        return Err(UsageError(
            "--range must satisfy xmin < xmax and ymin < ymax".into(),
        ));
    }
    Ok(r)
}

// ----------------------------------------------------------------------
// Entry point
// ----------------------------------------------------------------------

/// Run the CLI on the given arguments (without the binary name); returns the
/// process exit code.
pub fn run<I>(args: I) -> i32
where
    I: IntoIterator<Item = String>,
{
    let argv = std::iter::once("germcalc".to_string()).chain(args);
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            // clap renders help to stdout and errors to stderr itself
            let _ = e.print();
            return code;
        }
    };
    if cli.order < 1 {
        eprintln!("error: --order must be at least 1");
        return 1;
    }

    match dispatch(&cli) {
        Ok((echo, result, lines)) => match emit(&cli, echo, result, Status::Ok("ok"), &lines) {
            Ok(()) => 0,
            Err(io) => {
                eprintln!("error[IoError]: {io}");
                2
            }
        },
        Err(RunError::Usage(u)) => {
            eprintln!("error: {}", u.0);
            1
        }
        Err(RunError::Domain { echo, error }) => {
            let lines = vec![format!("error[{}]: {}", error.code(), error.message())];
            let _ = emit(
                &cli,
                echo,
                Value::Null,
                Status::Error {
                    error: error.code().to_string(),
                    message: error.message(),
                },
                &lines,
            );
            2
        }
    }
}

enum RunError {
    Usage(UsageError),
    Domain {
        echo: BTreeMap<&'static str, String>,
        error: AppError,
    },
}

impl From<UsageError> for RunError {
    fn from(u: UsageError) -> Self {
        RunError::Usage(u)
    }
}

type Success = (BTreeMap<&'static str, String>, Value, Vec<String>);

/// For the file-producing subcommands `--out` names the OBJ/CSV target;
/// everywhere else it receives the JSON report.
fn out_takes_report(cli: &Cli) -> bool {
    !matches!(
        cli.command,
        Command::Mesh(_) | Command::Slice(_) | Command::Locus(_)
    )
}

fn emit(
    cli: &Cli,
    echo: BTreeMap<&'static str, String>,
    result: Value,
    status: Status,
    lines: &[String],
) -> Result<(), String> {
    let report = Report {
        tool_version: VERSION,
        truncation_order: cli.order,
        input_echo: echo,
        result,
        status,
    };
    let rendered = serde_json::to_string_pretty(&report).expect("report serializes");
    let mut write_result = Ok(());
    if out_takes_report(cli) {
        if let Some(path) = &cli.out {
            write_result = std::fs::write(path, format!("{rendered}\n"))
                .map_err(|e| format!("{}: {e}", path.display()));
        }
    }
    if cli.json {
        println!("{rendered}");
    } else {
        for line in lines {
            println!("{line}");
        }
    }
    write_result
}

fn dispatch(cli: &Cli) -> Result<Success, RunError> {
    match &cli.command {
        Command::Classify(input) => cmd_classify(cli, input),
        Command::Integrate(input) => cmd_integrate(cli, input),
        Command::Differentiate(input) => cmd_differentiate(cli, input),
        Command::Roundtrip(input) => cmd_roundtrip(cli, input),
        Command::Normal(input) => cmd_normal(cli, input),
        Command::Lj(input) => cmd_lj(cli, input),
        Command::Mesh(args) => cmd_mesh(cli, args),
        Command::Slice(args) => cmd_slice(cli, args),
        Command::Locus(args) => cmd_locus(cli, args),
        Command::Demo => cmd_demo(cli),
    }
}

fn resolve(
    input: &GermInput,
    cli: &Cli,
) -> Result<(BTreeMap<&'static str, String>, ResolvedInput), RunError> {
    let data = input.resolve(cli.order)?;
    match data.resolved {
        Ok(r) => Ok((data.echo, r)),
        Err(error) => Err(RunError::Domain {
            echo: data.echo,
            error,
        }),
    }
}

fn require_front(resolved: ResolvedInput) -> Result<NormalizedLegendrianGerm, RunError> {
    match resolved {
        ResolvedInput::Front(f) => Ok(f),
        ResolvedInput::Pedal(_) => Err(RunError::Usage(UsageError(
            "this subcommand needs a front: use --phi1/--phi2".into(),
        ))),
    }
}

fn write_file(
    path: &PathBuf,
    contents: &str,
    echo: &BTreeMap<&'static str, String>,
) -> Result<(), RunError> {
    std::fs::write(path, contents).map_err(|e| RunError::Domain {
        echo: echo.clone(),
        error: AppError::Io(format!("{}: {e}", path.display())),
    })
}

// ----------------------------------------------------------------------
// Subcommands
// ----------------------------------------------------------------------

fn cmd_classify(cli: &Cli, input: &GermInput) -> Result<Success, RunError> {
    let (echo, resolved) = resolve(input, cli)?;
    let (side, classification, witness) = match &resolved {
        ResolvedInput::Pedal(g) => {
            let mut witness = BTreeMap::new();
            witness.insert("pedal_n", g.n().to_string());
            witness.insert("pedal_p", g.p().to_string());
            ("pedal", classify_pedal(g), witness)
        }
        ResolvedInput::Front(f) => {
            let mut witness = BTreeMap::new();
            witness.insert("pedal_n", f.pedal_n().to_string());
            ("legendrian", classify_legendrian(f), witness)
        }
    };
    let result = json!({
        "side": side,
        "tag": classification.tag.name(),
        "diagnostics": diagnostics_json(&classification),
        "witness": witness,
    });
    let mut lines = vec![format!("{}: {}", side, classification.tag.name())];
    for d in &classification.diagnostics {
        lines.push(format!("  {} = {}", d.criterion, d.value));
    }
    Ok((echo, result, lines))
}

fn cmd_integrate(cli: &Cli, input: &GermInput) -> Result<Success, RunError> {
    let (echo, resolved) = resolve(input, cli)?;
    let g = match resolved {
        ResolvedInput::Pedal(g) => g,
        ResolvedInput::Front(_) => {
            return Err(RunError::Usage(UsageError(
                "integrate consumes a pedal germ: use --pedal-n/--pedal-p or --map".into(),
            )))
        }
    };
    let front = integrate_i(&g).map_err(|e| RunError::Domain {
        echo: echo.clone(),
        error: e.into(),
    })?;
    let result = json!({
        "phi1": front.phi1().to_string(),
        "phi2": front.phi2().to_string(),
        "phi3": "y",
        "pedal_n": front.pedal_n().to_string(),
    });
    let lines = vec![
        format!("phi1 = {}", front.phi1()),
        format!("phi2 = {}", front.phi2()),
        "phi3 = y".to_string(),
    ];
    Ok((echo, result, lines))
}

fn cmd_differentiate(cli: &Cli, input: &GermInput) -> Result<Success, RunError> {
    let (echo, resolved) = resolve(input, cli)?;
    let front = require_front(resolved)?;
    let g = differentiate_d(&front);
    let assembled = assemble_pedal(&g);
    let result = json!({
        "pedal_n": g.n().to_string(),
        "pedal_p": g.p().to_string(),
        "assembled": [assembled.c1.to_string(), assembled.c2.to_string(), "y"],
    });
    let lines = vec![
        format!("n = {}", g.n()),
        format!("p = {}", g.p()),
        format!("assembled = ({}, {}, y)", assembled.c1, assembled.c2),
    ];
    Ok((echo, result, lines))
}

fn cmd_roundtrip(cli: &Cli, input: &GermInput) -> Result<Success, RunError> {
    let (echo, resolved) = resolve(input, cli)?;
    let (direction, report) = match &resolved {
        ResolvedInput::Pedal(g) => (
            "DI",
            roundtrip_di(g).map_err(|e| RunError::Domain {
                echo: echo.clone(),
                error: e.into(),
            })?,
        ),
        ResolvedInput::Front(f) => (
            "ID",
            roundtrip_id(f).map_err(|e| RunError::Domain {
                echo: echo.clone(),
                error: e.into(),
            })?,
        ),
    };
    let mut lines = vec![format!(
        "roundtrip {}: {} (compared through degree {})",
        direction,
        if report.equal { "equal" } else { "NOT equal" },
        report.compared_degree
    )];
    for m in &report.mismatches {
        lines.push(format!(
            "  {} differs at x^{}*y^{}: expected {}, got {}",
            m.component, m.monomial.0, m.monomial.1, m.expected, m.got
        ));
    }
    Ok((echo, roundtrip_json(direction, &report), lines))
}

fn cmd_normal(cli: &Cli, input: &GermInput) -> Result<Success, RunError> {
    let (echo, resolved) = resolve(input, cli)?;
    let front = require_front(resolved)?;
    let field = normal_field(&front);
    let immersive = lift_rank_check(&front, &field);
    let result = json!({
        "nu1": field.nu1.to_string(),
        "nu2": field.nu2.to_string(),
        "nu3": field.nu3.to_string(),
        "lift_immersive": immersive,
    });
    let lines = vec![
        format!("nu = ({}, {}, {})", field.nu1, field.nu2, field.nu3),
        format!("legendrian lift immersive at 0: {immersive}"),
    ];
    Ok((echo, result, lines))
}

fn cmd_lj(cli: &Cli, input: &GermInput) -> Result<Success, RunError> {
    let (echo, resolved) = resolve(input, cli)?;
    let front = require_front(resolved)?;
    let field = normal_field(&front);
    let reduced = lj_reduced(&front);
    let det = lj_det(&front, &field);
    let unit = norm_squared(&field);
    let result = json!({
        "lj_reduced": reduced.to_string(),
        "lj_det": det.to_string(),
        "unit_norm_squared": unit.to_string(),
    });
    let lines = vec![
        format!("LJ reduced = {reduced}"),
        format!("LJ det     = {det}"),
        format!("||nu||^2   = {unit}"),
    ];
    Ok((echo, result, lines))
}

fn cmd_mesh(cli: &Cli, args: &MeshArgs) -> Result<Success, RunError> {
    let (echo, resolved) = resolve(&args.input, cli)?;
    let range = parse_range(&args.range)?;
    let res = parse_res(&args.res)?;
    let out = cli
        .out
        .as_ref()
        .ok_or_else(|| UsageError("mesh needs --out PATH for the OBJ file".into()))?;
    let m = match &resolved {
        ResolvedInput::Pedal(g) => assemble_pedal(g),
        ResolvedInput::Front(f) => f.as_map(),
    };
    let mesh = sample_surface(&m, range, res);
    write_file(out, &mesh_to_obj(&mesh), &echo)?;
    let result = json!({
        "out": out.display().to_string(),
        "vertices": mesh.vertices.len(),
        "faces": mesh.faces.len(),
    });
    let lines = vec![format!(
        "wrote {} ({} vertices, {} quads)",
        out.display(),
        mesh.vertices.len(),
        mesh.faces.len()
    )];
    Ok((echo, result, lines))
}

fn cmd_slice(cli: &Cli, args: &SliceArgs) -> Result<Success, RunError> {
    let (echo, resolved) = resolve(&args.input, cli)?;
    let front = require_front(resolved)?;
    let [a, b] = parse_floats::<2>(&args.range_x, "--range-x")?;
    if a >= b {
        return Err(UsageError("--range-x must satisfy a < b".into()).into());
    }
    if args.samples < 2 {
        return Err(UsageError("--samples must be at least 2".into()).into());
    }
    let s = slice_front(&front, args.y0, (a, b), args.samples);
    let csv = slice_to_csv(&s);
    let mut lines = Vec::new();
    if let Some(out) = &cli.out {
        write_file(out, &csv, &echo)?;
        lines.push(format!(
            "wrote {} ({} samples)",
            out.display(),
            s.points.len()
        ));
    } else {
        lines.push(csv.trim_end().to_string());
    }
    let result = json!({
        "y0": args.y0,
        "samples": s.points.len(),
        "out": cli.out.as_ref().map(|p| p.display().to_string()),
    });
    Ok((echo, result, lines))
}

fn cmd_locus(cli: &Cli, args: &LocusArgs) -> Result<Success, RunError> {
    let (echo, resolved) = resolve(&args.input, cli)?;
    let front = require_front(resolved)?;
    let range = parse_range(&args.range)?;
    let res = parse_res(&args.res)?;
    let locus = singular_locus(&front, range, res);
    let mut lines = Vec::new();
    if locus.is_empty() {
        lines.push("empty locus: LJ has no sign change on the grid".to_string());
    }
    if let Some(out) = &cli.out {
        write_file(out, &polyline_to_csv(&locus.domain), &echo)?;
        lines.push(format!("wrote {}", out.display()));
    } else if !locus.is_empty() {
        lines.push(polyline_to_csv(&locus.domain).trim_end().to_string());
    }
    if let Some(image_out) = &args.image_out {
        write_file(image_out, &polyline_to_csv(&locus.image), &echo)?;
        lines.push(format!("wrote {}", image_out.display()));
    }
    let result = json!({
        "empty": locus.is_empty(),
        "points": locus.domain.points.len(),
        "closed": locus.domain.closed,
        "out": cli.out.as_ref().map(|p| p.display().to_string()),
        "image_out": args.image_out.as_ref().map(|p| p.display().to_string()),
    });
    Ok((echo, result, lines))
}

// ----------------------------------------------------------------------
// Demo
// ----------------------------------------------------------------------

struct DemoStep {
    name: &'static str,
    detail: String,
    ok: bool,
}

fn cmd_demo(cli: &Cli) -> Result<Success, RunError> {
    let steps = run_demo(cli.order).map_err(|error| RunError::Domain {
        echo: BTreeMap::new(),
        error,
    })?;
    let all_ok = steps.iter().all(|s| s.ok);
    let result = json!({
        "steps": steps.iter().map(|s| json!({
            "name": s.name,
            "detail": s.detail,
            "ok": s.ok,
        })).collect::<Vec<_>>(),
        "all_ok": all_ok,
    });
    let mut lines = Vec::new();
    for s in &steps {
        lines.push(format!(
            "[{}] {}: {}",
            if s.ok { "ok" } else { "FAIL" },
            s.name,
            s.detail
        ));
    }
    lines.push(format!(
        "demo: {}",
        if all_ok {
            "all comparisons exact"
        } else {
            "MISMATCH FOUND"
        }
    ));
    if all_ok {
        Ok((BTreeMap::new(), result, lines))
    } else {
        for line in &lines {
            eprintln!("{line}");
        }
        Err(RunError::Domain {
            echo: BTreeMap::new(),
            error: AppError::Io("demo chain mismatch".into()),
        })
    }
}

fn run_demo(order: u32) -> Result<Vec<DemoStep>, AppError> {
    let jet = |text: &str| parse_expr(text, order);
    let mut steps = Vec::new();

    // The cross-cap normal form and its classical criterion.
    let f = MapGerm3::new(jet("x*y")?, jet("x^2")?, jet("y")?)?;
    let is_whitney = whitney_criterion(&f)?;
    steps.push(DemoStep {
        name: "whitney-normal-form",
        detail: format!("f = (x*y, x^2, y); cross-cap criterion: {is_whitney}"),
        ok: is_whitney,
    });

    // g = h_t . f . h_s with h_s = (x, x^2 + y), h_t = (X, -Z, -Y + Z).
    let u = jet("x")?;
    let v = jet("x^2 + y")?;
    let fc1 = f.c1.compose2(&u, &v)?;
    let fc2 = f.c2.compose2(&u, &v)?;
    let fc3 = f.c3.compose2(&u, &v)?;
    let g = MapGerm3::new(fc1, fc3.neg(), fc3.sub(&fc2)?)?;
    let g_expected = MapGerm3::new(jet("x^3 + x*y")?, jet("-x^2 - y")?, jet("y")?)?;
    steps.push(DemoStep {
        name: "coordinate-change",
        detail: format!("g = h_t.f.h_s = ({}, {}, {})", g.c1, g.c2, g.c3),
        ok: g == g_expected,
    });

    // g is of pedal unfolding type and classifies as a Whitney umbrella.
    let pedal = decompose_pedal(&g)?;
    let pedal_class = classify_pedal(&pedal);
    steps.push(DemoStep {
        name: "pedal-decomposition",
        detail: format!(
            "n = {}, p = {}; classification: {}",
            pedal.n(),
            pedal.p(),
            pedal_class.tag.name()
        ),
        ok: pedal.n() == &jet("-x")? && pedal_class.tag == crate::classify::Tag::WhitneyUmbrella,
    });

    // Integration gives the normalized swallowtail representative.
    let front = integrate_i(&pedal)?;
    let front_ok =
        front.phi1() == &jet("1/4*x^4 + 1/2*x^2*y")? && front.phi2() == &jet("-1/3*x^3 - x*y")?;
    let front_class = classify_legendrian(&front);
    steps.push(DemoStep {
        name: "integration",
        detail: format!(
            "I(g) = ({}, {}, y); classification: {}",
            front.phi1(),
            front.phi2(),
            front_class.tag.name()
        ),
        ok: front_ok && front_class.tag == crate::classify::Tag::Swallowtail,
    });

    // Scaling to the swallowtail normal form: H_s = (x, y/6), H_t = (12X, 12Y, 6Z).
    let hu = jet("x")?;
    let hv = jet("1/6*y")?;
    let s1 = front.phi1().compose2(&hu, &hv)?.scale(&Coeff::from_int(12));
    let s2 = front.phi2().compose2(&hu, &hv)?.scale(&Coeff::from_int(12));
    let scaled_ok = s1 == jet("3*x^4 + x^2*y")? && s2 == jet("-4*x^3 - 2*x*y")?;
    let scaled_front = validate_normalized(&s1, &s2)?;
    let scaled_class = classify_legendrian(&scaled_front);
    steps.push(DemoStep {
        name: "scaling",
        detail: format!(
            "H_t.I(g).H_s = ({s1}, {s2}, y); classification: {}",
            scaled_class.tag.name()
        ),
        ok: scaled_ok && scaled_class.tag == crate::classify::Tag::Swallowtail,
    });

    // Integrating the cross-cap normal form directly cannot work.
    let direct = decompose_pedal(&f);
    let direct_validate = validate_normalized(&jet("1/2*x^2*y")?, &jet("1/3*x^3")?);
    let decompose_failed = matches!(direct, Err(GermError::Jet(JetError::NotDivisible(..))));
    let validate_failed = matches!(direct_validate, Err(GermError::NotLegendrianAtJetOrder(..)));
    steps.push(DemoStep {
        name: "direct-integration-fails",
        detail: format!(
            "decompose (x*y, x^2, y): {}; validate (1/2*x^2*y, 1/3*x^3): {}",
            direct.err().map(|e| e.code()).unwrap_or("accepted"),
            direct_validate
                .err()
                .map(|e| e.code())
                .unwrap_or("accepted"),
        ),
        ok: decompose_failed && validate_failed,
    });

    // The cuspidal edge pipeline.
    let ce = validate_normalized(&jet("1/3*x^3")?, &jet("1/2*x^2")?)?;
    let ce_class = classify_legendrian(&ce);
    let back = differentiate_d(&ce);
    let back_class = classify_pedal(&back);
    let ce_round = roundtrip_id(&ce)?;
    steps.push(DemoStep {
        name: "cuspidal-edge-pipeline",
        detail: format!(
            "(1/3*x^3, 1/2*x^2, y): {}; D gives (n, p) = ({}, {}): {}; roundtrip equal: {}",
            ce_class.tag.name(),
            back.n(),
            back.p(),
            back_class.tag.name(),
            ce_round.equal
        ),
        ok: ce_class.tag == crate::classify::Tag::CuspidalEdge
            && back_class.tag == crate::classify::Tag::NonSingular
            && ce_round.equal,
    });

    // Round trip on the pedal side.
    let di = roundtrip_di(&pedal)?;
    steps.push(DemoStep {
        name: "pedal-roundtrip",
        detail: format!("D(I(g)) = g exactly: {}", di.equal),
        ok: di.equal,
    });

    Ok(steps)
}
