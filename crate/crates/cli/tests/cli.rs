use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_euler2c"))
        .args(args)
        .output()
        .expect("spawn euler2c")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    assert_eq!(
        code(out),
        0,
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

struct Row {
    series: String,
    x: f64,
    y: f64,
}

fn read_csv(path: &Path) -> Vec<Row> {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("series,x,y,f"));
    lines
        .map(|l| {
            let cols: Vec<&str> = l.split(',').collect();
            assert_eq!(cols.len(), 4, "{l}");
            Row {
                series: cols[0].to_string(),
                x: cols[1].parse().unwrap(),
                y: cols[2].parse().unwrap(),
            }
        })
        .collect()
}

fn curve(which: &str, extra: &[&str]) -> Vec<Row> {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join(format!("{which}.csv"));
    let mut args = vec!["curve", which, "-o", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = run(&args);
    assert_eq!(
        code(&out),
        0,
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    read_csv(&path)
}

#[test]
fn constants_round_trip_exactly() {
    let v = json(&run(&["constants", "--mu", "0.25"]));
    let p = euler2c::ProblemParams::new(0.25).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["c_j"].as_f64().unwrap().to_bits(), p.c_jacobi().to_bits());
    assert_eq!(v["l"].as_f64().unwrap().to_bits(), p.l().to_bits());
    assert!((v["c_j"].as_f64().unwrap() - (-1.0 - 3f64.sqrt() / 2.0)).abs() < 1e-15);
    let (a, b) = (v["a"].as_f64().unwrap(), v["b"].as_f64().unwrap());
    assert!(a < b, "a = {a}, b = {b}");

    let half = json(&run(&["constants", "--mu", "0.5"]));
    assert_eq!(half["l"].as_f64(), Some(0.5));
    assert_eq!(half["c_j"].as_f64(), Some(-2.0));
}

#[test]
fn invalid_input_exits_with_2() {
    for args in [
        &["constants", "--mu", "1.5"][..],
        &["constants"],
        &["verdict", "elliptic", "--mu", "0.5", "--c", "-1.5"],
        &["verdict", "levi", "--mu", "0.3", "--c", "cJ+0.01"],
        &["verdict", "elliptic", "--mu", "0.5", "--c", "cJ*2"],
        &["verify-identities", "--only", "no-such-identity"],
        &["--set", "colour=red", "constants", "--mu", "0.5"],
    ] {
        let out = run(args);
        assert_eq!(
            code(&out),
            2,
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn elliptic_verdicts() {
    let v = json(&run(&[
        "verdict",
        "elliptic",
        "--mu",
        "0.5",
        "--c",
        "-2.5",
        "--n-lambda",
        "30",
        "--n-nu",
        "30",
        "--n-phi",
        "8",
    ]));
    assert_eq!(v["verdict"], "Convex");
    assert_eq!(v["agree"], true);

    let theory = json(&run(&[
        "verdict", "elliptic", "--mu", "0.3", "--c", "-1.9167", "--method", "theory",
    ]));
    assert_eq!(theory["verdict"], "NonConvex");
    assert!(theory["oracle"].is_null());
}

#[test]
fn disagreement_exits_with_3() {
    // A 2x2x1 grid cannot see the thin nonconvex band just below c_J.
    let out = run(&[
        "verdict",
        "elliptic",
        "--mu",
        "0.3",
        "--c",
        "-1.9167",
        "--n-lambda",
        "2",
        "--n-nu",
        "2",
        "--n-phi",
        "1",
    ]);
    assert_eq!(code(&out), 3);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["agree"], false);
}

#[test]
fn levi_witness_at_critical_energy() {
    let v = json(&run(&["verdict", "levi", "--mu", "0.3", "--c", "cJ"]));
    assert_eq!(v["verdict"], "NonConvex");
    assert_eq!(v["agree"], true);
    let w = &v["witness"];
    let x0 = w["x0"].as_f64().unwrap();
    let pt: Vec<f64> = w["v"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t.as_f64().unwrap())
        .collect();
    assert!(pt[0] < x0 && (pt[0] - x0).hypot(pt[1]) < 0.05 * x0, "{w}");
    assert!(w["f"].as_f64().unwrap() < 0.0);
}

#[test]
fn fiberwise_verdicts() {
    let convex = json(&run(&[
        "verdict",
        "fiberwise",
        "--mu",
        "0.5",
        "--c",
        "-2.2",
        "--rays",
        "500",
        "--energies",
        "4",
    ]));
    assert_eq!(convex["verdict"], "Convex");
    let moon = json(&run(&[
        "verdict",
        "fiberwise",
        "--mu",
        "0.7",
        "--c",
        "cJ",
        "--component",
        "moon",
    ]));
    assert_eq!(moon["verdict"], "NonConvex");
    assert_eq!(moon["agree"], true);
}

#[test]
fn config_file_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("run.conf");
    std::fs::write(
        &conf,
        "# equal masses\nmu = 0.5\nc = -2.5\nmethod = theory\n",
    )
    .unwrap();
    let conf = conf.to_str().unwrap();
    let v = json(&run(&["--config", conf, "verdict", "elliptic"]));
    assert_eq!(
        (v["mu"].as_f64(), v["verdict"].as_str()),
        (Some(0.5), Some("Convex"))
    );
    let v = json(&run(&[
        "--config", conf, "--set", "mu=0.3", "--set", "c=cJ", "verdict", "levi",
    ]));
    assert_eq!(
        (v["mu"].as_f64(), v["verdict"].as_str()),
        (Some(0.3), Some("NonConvex"))
    );
    let v = json(&run(&[
        "--config",
        conf,
        "--set",
        "mu=0.3",
        "constants",
        "--mu",
        "0.25",
    ]));
    assert_eq!(v["mu"].as_f64(), Some(0.25));
}

#[test]
fn quartic_passes_through_the_cusp() {
    let rows = curve("quartic", &[]);
    assert!(rows.iter().any(|r| r.series == "upper"));
    assert!(rows.iter().any(|r| r.series == "lower"));
    let d = rows
        .iter()
        .map(|r| (r.x - 1.0).hypot(r.y + 2.0))
        .fold(f64::INFINITY, f64::min);
    assert!(d < 1e-12, "closest approach to (1, -2): {d}");
}

#[test]
fn c0_curve_touches_critical_energy_at_equal_masses() {
    let rows = curve("c0curve", &["--points", "100"]);
    let at = |name: &str| {
        rows.iter()
            .find(|r| r.series == name && (r.x - 0.5).abs() < 1e-12)
            .map(|r| r.y)
            .unwrap()
    };
    assert!((at("c0") - at("cJ")).abs() < 1e-12);
    for r in rows.iter().filter(|r| r.series == "c0") {
        let cj = rows
            .iter()
            .find(|s| s.series == "cJ" && s.x == r.x)
            .unwrap()
            .y;
        assert!(r.y <= cj + 1e-12, "mu = {}: c0 {} above cJ {cj}", r.x, r.y);
    }
}

#[test]
fn levi_curves_pass_through_the_crossing() {
    let x0 = json(&run(&[
        "verdict", "levi", "--mu", "0.3", "--c", "cJ", "--method", "oracle",
    ]))["witness"]["x0"]
        .as_f64()
        .unwrap();
    for which in ["v0", "f0"] {
        let rows = curve(which, &["--mu", "0.3", "--c", "cJ"]);
        let d = rows
            .iter()
            .filter(|r| r.series == which)
            .map(|r| (r.x - x0).hypot(r.y))
            .fold(f64::INFINITY, f64::min);
        assert!(d < 1e-6, "{which}: {d}");
        assert!(rows.iter().any(|r| r.series == format!("{which}_mirror")));
    }
}

#[test]
fn hill_curve_has_both_components() {
    let rows = curve("hill", &["--mu", "0.3", "--c", "cJ-0.1", "--rays", "90"]);
    for name in ["earth", "moon"] {
        assert!(
            rows.iter().filter(|r| r.series == name).count() >= 90,
            "{name}"
        );
    }
}

#[test]
fn identities_list_and_subset() {
    let out = run(&["verify-identities", "--list"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().count() >= 10);
    assert!(text.lines().any(|l| l.starts_with("det ")));

    let out = run(&["verify-identities", "--only", "det"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("PASS det"), "{text}");
    assert_eq!(
        text.lines()
            .filter(|l| l.starts_with("PASS") || l.starts_with("FAIL"))
            .count(),
        1
    );
}

#[test]
fn full_identity_suite_passes() {
    let out = run(&["verify-identities"]);
    assert_eq!(code(&out), 0);
    assert!(!String::from_utf8(out.stdout).unwrap().contains("FAIL"));
}

#[test]
fn scan_outputs() {
    let v = json(&run(&[
        "scan",
        "curvature",
        "--mu",
        "0.3",
        "--c",
        "cJ-0.05",
        "--nx",
        "40",
        "--ny",
        "30",
    ]));
    assert_eq!(v["schema"], 1);
    assert_eq!(v["report"]["grid"]["counts"][0], 40);

    let out = run(&[
        "scan",
        "curvature",
        "--mu",
        "0.3",
        "--format",
        "csv",
        "--nx",
        "40",
        "--ny",
        "30",
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("series,x,y,f"));
    assert!(text.lines().skip(1).all(|l| l.starts_with("witness,")));
}
