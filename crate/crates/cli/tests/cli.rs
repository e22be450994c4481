use std::fs;
use std::process::{Command, Output};

fn lhverify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lhverify"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn tate_fe_example_passes_exactly() {
    let o = lhverify(&["verify", "tate-fe", "--p", "3,5", "--cases", "10", "--seed", "42"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let cases = report["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 60);
    assert!(cases.iter().all(|c| c["status"] == "pass" && c["error"] == "exact"));
    assert_eq!(report["seed"], 42);
    let text = stdout(&o);
    let at = |k: &str| text.find(&format!("\n  \"{k}\"")).expect(k);
    assert!(at("suite") < at("seed") && at("seed") < at("cases") && at("cases") < at("summary"));
}

#[test]
fn isometry_arch_reports_max_error() {
    let o = lhverify(&["verify", "isometry-arch", "--tol", "1e-6", "--format", "table"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    let line = text.lines().find(|l| l.starts_with("max error")).expect("max error line");
    let e: f64 = line.trim_start_matches("max error ").parse().unwrap();
    assert!(e < 1e-6);
}

#[test]
fn reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let o = lhverify(&[
            "verify",
            "metaplectic",
            "--cases",
            "60",
            "--seed",
            "9",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let c = dir.path().join("c.json");
    lhverify(&["verify", "metaplectic", "--cases", "60", "--seed", "10", "--out", c.to_str().unwrap()]);
    assert_ne!(fs::read(&a).unwrap(), fs::read(&c).unwrap());
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(lhverify(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(lhverify(&["verify", "tate-fe", "--p", "4"]).status.code(), Some(2));
    assert_eq!(lhverify(&["verify", "weil-rep", "--p", "2"]).status.code(), Some(2));
    assert_eq!(lhverify(&["verify", "tate-fe", "--cases", "0"]).status.code(), Some(2));
    assert_eq!(lhverify(&["verify", "isometry-arch", "--tol", "-1"]).status.code(), Some(2));
    assert_eq!(lhverify(&["verify"]).status.code(), Some(2));
    assert_eq!(lhverify(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn failing_suite_exits_with_one() {
    // a zero tolerance cannot absorb quadrature error
    let o = lhverify(&["verify", "isometry-arch", "--tol", "0", "--cases", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

fn compute(src: &str) -> Output {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("input.lh");
    fs::write(&path, src).unwrap();
    lhverify(&["compute", path.to_str().unwrap()])
}

#[test]
fn compute_examples() {
    let o = compute("ft p=5 ball(0,0)\nzeta p=3 f=ball(0,0) chi=triv\nf2 real W=x^2*gauss t=0.5\n");
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "ball(0,0) coeff 1");
    assert_eq!(lines[1], "(2/3)/(1 - X)");
    assert!(lines[2].starts_with("3.62149004297e-2 + 8.74305037775e-2i"), "{}", lines[2]);
}

#[test]
fn compute_parse_error_has_position() {
    let o = compute("ft p=5 ball(0,0)\n\nzeta p=3 f=ball(0,0) chi=wobbly!\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3, column 26"), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
}

#[test]
fn compute_semantic_error_names_hypothesis() {
    let o = compute("isometry real W=gauss phi=gauss delta=1\nft p=3 ball(0,0)\n");
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 1") && stderr(&o).contains("hypothesis failed"), "{}", stderr(&o));
    assert_eq!(stdout(&o), "ball(0,0) coeff 1\n");
}
