//! End-to-end checks of the command-line interface: exit codes, JSON report
//! shape, verbatim error names, and byte-identical reruns.

use std::process::{Command, Output};

fn germcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_germcalc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(args: &[&str]) -> (i32, serde_json::Value) {
    let out = germcalc(args);
    let code = out.status.code().expect("exit code");
    let value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    });
    (code, value)
}

#[test]
fn classify_pedal_fixture_reports_whitney_umbrella() {
    let (code, v) = stdout_json(&[
        "classify",
        "--pedal-n",
        "-x",
        "--pedal-p",
        "-(x^2+y)",
        "--json",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["truncation_order"], 8);
    assert_eq!(v["result"]["tag"], "WhitneyUmbrella");
    assert_eq!(v["input_echo"]["pedal_n"], "-x");
    assert_eq!(v["input_echo"]["pedal_p"], "-x^2 - y");
    // diagnostics are exact rational strings, never numbers
    for d in v["result"]["diagnostics"].as_array().unwrap() {
        assert!(
            d["value"].is_string(),
            "diagnostic values must be strings: {d}"
        );
    }
}

#[test]
fn integrate_fixture_echoes_canonical_jets() {
    let (code, v) = stdout_json(&[
        "integrate",
        "--pedal-n",
        "-x",
        "--pedal-p",
        "-(x^2+y)",
        "--json",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["phi1"], "1/4*x^4 + 1/2*x^2*y");
    assert_eq!(v["result"]["phi2"], "-1/3*x^3 - x*y");
}

#[test]
fn classify_legendrian_side() {
    let (code, v) = stdout_json(&[
        "classify", "--phi1", "1/3*x^3", "--phi2", "1/2*x^2", "--json",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["tag"], "CuspidalEdge");
    assert_eq!(v["result"]["side"], "legendrian");
}

#[test]
fn domain_errors_exit_2_with_verbatim_names() {
    // the cross-cap normal form is not of pedal unfolding type
    let (code, v) = stdout_json(&["classify", "--map", "x*y,x^2,y", "--json"]);
    assert_eq!(code, 2);
    assert_eq!(v["status"]["error"], "NotDivisible");

    // Legendrian validation failure
    let (code, v) = stdout_json(&[
        "classify",
        "--phi1",
        "1/2*x^2*y",
        "--phi2",
        "1/3*x^3",
        "--json",
    ]);
    assert_eq!(code, 2);
    assert_eq!(v["status"]["error"], "NotLegendrianAtJetOrder");

    // invariant violations are named
    let (code, v) = stdout_json(&["classify", "--pedal-n", "x", "--pedal-p", "0", "--json"]);
    assert_eq!(code, 2);
    assert_eq!(v["status"]["error"], "InvariantViolation");

    // parser errors carry their own codes
    let (code, v) = stdout_json(&["classify", "--pedal-n", "x", "--pedal-p", "x y", "--json"]);
    assert_eq!(code, 2);
    assert_eq!(v["status"]["error"], "SyntaxError");
    let (code, v) = stdout_json(&["classify", "--pedal-n", "x", "--pedal-p", "1/0", "--json"]);
    assert_eq!(code, 2);
    assert_eq!(v["status"]["error"], "DivisionByZeroLiteral");
    let (code, v) = stdout_json(&["integrate", "--pedal-n", "x", "--pedal-p", "x^8", "--json"]);
    assert_eq!(code, 2);
    assert_eq!(v["status"]["error"], "DegreeOverflow");
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(germcalc(&["classify"]).status.code(), Some(1));
    assert_eq!(germcalc(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(
        germcalc(&["classify", "--pedal-n", "x", "--phi1", "y", "--phi2", "y"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        germcalc(&["mesh", "--pedal-n", "x", "--pedal-p", "x"])
            .status
            .code(),
        Some(1),
        "mesh without --out is a usage error"
    );
    // front-only subcommands reject pedal input
    assert_eq!(
        germcalc(&["lj", "--pedal-n", "x", "--pedal-p", "x"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn order_flag_controls_truncation() {
    let (code, v) = stdout_json(&[
        "integrate",
        "--pedal-n",
        "x",
        "--pedal-p",
        "x",
        "--order",
        "4",
        "--json",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["truncation_order"], 4);
    assert_eq!(v["result"]["phi1"], "1/3*x^3");
    // at order 4 a degree-4 p cannot be integrated
    let (code, v) = stdout_json(&[
        "integrate",
        "--pedal-n",
        "x",
        "--pedal-p",
        "x^4",
        "--order",
        "4",
        "--json",
    ]);
    assert_eq!(code, 2);
    assert_eq!(v["status"]["error"], "DegreeOverflow");
}

#[test]
fn demo_exits_zero_and_is_deterministic() {
    let a = germcalc(&["demo"]);
    let b = germcalc(&["demo"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(
        a.stdout, b.stdout,
        "identical argv must give identical stdout"
    );
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.contains("all comparisons exact"));

    let a = germcalc(&[
        "classify",
        "--pedal-n",
        "-x",
        "--pedal-p",
        "-(x^2+y)",
        "--json",
    ]);
    let b = germcalc(&[
        "classify",
        "--pedal-n",
        "-x",
        "--pedal-p",
        "-(x^2+y)",
        "--json",
    ]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn mesh_writes_deterministic_obj() {
    let dir = std::env::temp_dir();
    let p1 = dir.join("germcalc_cli_mesh_1.obj");
    let p2 = dir.join("germcalc_cli_mesh_2.obj");
    for p in [&p1, &p2] {
        let out = germcalc(&[
            "mesh",
            "--pedal-n",
            "-x",
            "--pedal-p",
            "-(x^2+y)",
            "--range",
            "-1,1,-1,1",
            "--res",
            "20,20",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    let m1 = std::fs::read(&p1).unwrap();
    let m2 = std::fs::read(&p2).unwrap();
    assert_eq!(m1, m2, "mesh files must be byte-identical across runs");
    let text = String::from_utf8(m1).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 441);
    assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 400);
    assert!(text.ends_with('\n'));
    let _ = std::fs::remove_file(p1);
    let _ = std::fs::remove_file(p2);
}

#[test]
fn slice_and_locus_write_csv() {
    let dir = std::env::temp_dir();
    let slice_path = dir.join("germcalc_cli_slice.csv");
    let out = germcalc(&[
        "slice",
        "--phi1",
        "1/4*x^4+1/2*x^2*y",
        "--phi2",
        "-1/3*x^3-x*y",
        "--y0",
        "-0.5",
        "--samples",
        "50",
        "--out",
        slice_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&slice_path).unwrap();
    assert!(text.starts_with("x,y,nx,ny\n"));
    assert_eq!(text.lines().count(), 51);
    let _ = std::fs::remove_file(slice_path);

    let locus_path = dir.join("germcalc_cli_locus.csv");
    let image_path = dir.join("germcalc_cli_locus_image.csv");
    let out = germcalc(&[
        "locus",
        "--phi1",
        "1/4*x^4+1/2*x^2*y",
        "--phi2",
        "-1/3*x^3-x*y",
        "--res",
        "50,50",
        "--out",
        locus_path.to_str().unwrap(),
        "--image-out",
        image_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(std::fs::read_to_string(&locus_path)
        .unwrap()
        .starts_with("x,y\n"));
    assert!(std::fs::read_to_string(&image_path)
        .unwrap()
        .starts_with("x,y,z\n"));
    let _ = std::fs::remove_file(locus_path);
    let _ = std::fs::remove_file(image_path);
}

#[test]
fn out_flag_writes_the_json_report_for_non_file_commands() {
    let path = std::env::temp_dir().join("germcalc_cli_report.json");
    let out = germcalc(&[
        "classify",
        "--pedal-n",
        "-x",
        "--pedal-p",
        "-(x^2+y)",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    // human lines still go to stdout; the file holds the full report
    assert!(String::from_utf8_lossy(&out.stdout).contains("WhitneyUmbrella"));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["status"], "ok");
    assert_eq!(report["result"]["tag"], "WhitneyUmbrella");
    let _ = std::fs::remove_file(path);
}

#[test]
fn roundtrip_subcommand_reports_equality() {
    let (code, v) = stdout_json(&[
        "roundtrip",
        "--pedal-n",
        "-x",
        "--pedal-p",
        "-(x^2+y)",
        "--json",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["direction"], "DI");
    assert_eq!(v["result"]["equal"], true);

    let (code, v) = stdout_json(&[
        "roundtrip",
        "--phi1",
        "1/4*x^4+1/2*x^2*y",
        "--phi2",
        "-1/3*x^3-x*y",
        "--json",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["direction"], "ID");
    assert_eq!(v["result"]["equal"], true);
}

#[test]
fn normal_and_lj_subcommands() {
    let (code, v) = stdout_json(&[
        "normal",
        "--phi1",
        "1/4*x^4+1/2*x^2*y",
        "--phi2",
        "-1/3*x^3-x*y",
        "--json",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["nu1"], "1");
    assert_eq!(v["result"]["nu2"], "x");
    assert_eq!(v["result"]["nu3"], "1/2*x^2");
    assert_eq!(v["result"]["lift_immersive"], true);

    let (code, v) = stdout_json(&["lj", "--phi1", "1/3*x^3", "--phi2", "1/2*x^2", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["lj_reduced"], "x");
    assert_eq!(v["result"]["lj_det"], "x^3 + x");
    assert_eq!(v["result"]["unit_norm_squared"], "x^2 + 1");
}
