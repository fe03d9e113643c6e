use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use hopf_designs::io::{parse_design, read_design, AnyDesign};
use hopf_designs::sphere::Sphere;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_hopf-designs"));
    c.env_remove("HOPF_DESIGNS_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_with(args: &[&str], input: &[u8]) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn design_len(text: &[u8]) -> (Sphere, usize) {
    let doc = parse_design(std::str::from_utf8(text).unwrap(), false).unwrap();
    (doc.design.sphere(), doc.design.len())
}

fn six_point_set() -> Vec<u8> {
    let y = run(&["gen", "s2-antipodal"]);
    run_with(&["lift", "--gon-size", "3"], &y.stdout).stdout
}

#[test]
fn gen_examples() {
    assert_eq!(
        design_len(&run(&["gen", "s1-gon", "--n", "3"]).stdout),
        (Sphere::S1, 3)
    );
    assert_eq!(
        design_len(&run(&["gen", "s2-antipodal"]).stdout),
        (Sphere::S2, 2)
    );
    assert_eq!(
        design_len(&run(&["gen", "s2-product", "--t", "2"]).stdout),
        (Sphere::S2, 6)
    );
}

#[test]
fn lift_examples() {
    assert_eq!(design_len(&six_point_set()), (Sphere::S3, 6));

    let one = br#"{"sphere": "s2", "points": [[0.6, 0.8, 0]]}"#;
    let o = run_with(&["lift", "--t", "0", "--gon-size", "1"], one);
    assert!(o.status.success());
    assert_eq!(design_len(&o.stdout), (Sphere::S3, 1));

    let y = run(&["gen", "s2-product", "--t", "2"]);
    let o = run_with(&["lift", "--t", "2", "--gon-size", "5"], &y.stdout);
    assert_eq!(design_len(&o.stdout), (Sphere::S3, 30));
    let report = String::from_utf8(o.stderr).unwrap();
    assert!(report.contains("points: 30"));
    assert!(report.contains("(2t+1)(t+1)^2 = 45 for t = 2: holds"));
}

#[test]
fn lift_infers_strength_and_gon_size() {
    let y = run(&["gen", "s2-product", "--t", "3"]);
    let o = run_with(&["lift"], &y.stdout);
    let doc = parse_design(&stdout(&o), false).unwrap();
    let meta = doc.meta.unwrap();
    assert_eq!(meta["t"], 3);
    assert_eq!(meta["gon_size"], 7);
    assert_eq!(doc.design.len(), 8 * 7);
}

#[test]
fn verify_examples() {
    let six = six_point_set();
    assert_eq!(
        run_with(
            &["verify", "--max-degree", "3", "--expect-strength", "2"],
            &six
        )
        .status
        .code(),
        Some(0)
    );
    assert_eq!(
        run_with(
            &["verify", "--max-degree", "3", "--expect-strength", "3"],
            &six
        )
        .status
        .code(),
        Some(1)
    );
    let gon = run(&["gen", "s1-gon", "--n", "3"]);
    let o = run_with(
        &["verify", "--max-degree", "4", "--expect-strength", "2"],
        &gon.stdout,
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("certified strength: 2"));

    let o = run_with(&["verify", "--max-degree", "3", "--json"], &six);
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["certified_strength"], 2);
    assert_eq!(r["basis_sizes"], serde_json::json!([1, 4, 10, 20]));
}

#[test]
fn pushforward_examples() {
    let line = |args: &[&str]| stdout(&run(args)).trim().to_string();
    assert_eq!(line(&["pushforward", "1", "1", "0", "0"]), "1/2 + 1/2·ξ");
    assert_eq!(line(&["pushforward", "1", "0", "0", "1"]), "0");
    assert_eq!(line(&["pushforward", "0", "0", "0", "0"]), "1");
    assert_eq!(line(&["pushforward", "0", "0", "1", "1"]), "1/2 - 1/2·ξ");
    assert_eq!(line(&["pullback", "1", "0", "0"]), "a·ā - b·b̄");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["gen", "s1-gon", "--n", "0"]).status.code(), Some(2));
    assert_eq!(
        run(&["pushforward", "1", "-1", "0", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        run(&["gen", "s2-product", "--t", "12", "--nodes", "2"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(run_with(&["lift"], b"{not json").status.code(), Some(4));
    assert_eq!(
        run_with(&["verify", "--max-degree", "2"], b"")
            .status
            .code(),
        Some(4)
    );
    assert_eq!(
        run(&[
            "verify",
            "--max-degree",
            "2",
            "--input",
            "/nonexistent/x.json"
        ])
        .status
        .code(),
        Some(4)
    );
    let gon = run(&["gen", "s1-gon", "--n", "3"]);
    assert_eq!(run_with(&["lift"], &gon.stdout).status.code(), Some(4));

    let off = br#"{"sphere": "s2", "points": [[1.1, 0, 0]]}"#;
    let o = run_with(&["lift", "--t", "0"], off);
    assert_eq!(o.status.code(), Some(5));
    assert!(String::from_utf8(o.stderr).unwrap().contains("point 0"));
    assert_eq!(
        run_with(&["lift", "--t", "0", "--renormalize"], off)
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        run_with(&["verify", "--max-degree", "1"], off)
            .status
            .code(),
        Some(5)
    );
}

#[test]
fn weighted_fallback_recovers_from_no_convergence() {
    let o = run(&[
        "gen",
        "s2-product",
        "--t",
        "12",
        "--nodes",
        "2",
        "--weighted-fallback",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("\"weights\""));
    let v = run_with(
        &["verify", "--max-degree", "12", "--expect-strength", "12"],
        text.as_bytes(),
    );
    assert_eq!(v.status.code(), Some(0));
}

fn pipeline(dir: &Path, tag: &str, seed_flag: bool) -> Vec<u8> {
    let y = dir.join(format!("y{tag}.json"));
    let x = dir.join(format!("x{tag}.json"));
    let mut gen = vec![
        "gen",
        "s2-product",
        "--t",
        "4",
        "--phases",
        "random",
        "--output",
        y.to_str().unwrap(),
    ];
    let mut lift = vec![
        "lift",
        "--input",
        y.to_str().unwrap(),
        "--output",
        x.to_str().unwrap(),
        "--phases",
        "random",
    ];
    if seed_flag {
        gen.extend(["--seed", "42"]);
        lift.extend(["--seed", "42"]);
    }
    let mut g = bin();
    let mut l = bin();
    if !seed_flag {
        g.env("HOPF_DESIGNS_SEED", "42");
        l.env("HOPF_DESIGNS_SEED", "42");
    }
    assert!(g.args(&gen).status().unwrap().success());
    let o = l.args(&lift).output().unwrap();
    assert!(o.status.success());
    // With --output the cardinality report goes to stdout.
    assert!(stdout(&o).contains("points: "));
    std::fs::read(&x).unwrap()
}

#[test]
fn pipelines_are_byte_identical_and_reingest() {
    let dir = tempfile::tempdir().unwrap();
    let a = pipeline(dir.path(), "a", true);
    let b = pipeline(dir.path(), "b", true);
    let c = pipeline(dir.path(), "c", false);
    assert_eq!(a, b);
    assert_eq!(a, c);

    let other = run(&[
        "gen",
        "s2-product",
        "--t",
        "4",
        "--phases",
        "random",
        "--seed",
        "43",
    ]);
    let first = std::fs::read(dir.path().join("ya.json")).unwrap();
    assert_ne!(other.stdout, first);

    for name in ["ya.json", "xa.json"] {
        let doc = read_design(&dir.path().join(name), false).unwrap();
        assert!(!doc.design.is_empty());
    }
    let x = read_design(&dir.path().join("xa.json"), false).unwrap();
    assert!(matches!(x.design, AnyDesign::S3(_)));
    let v = bin()
        .args([
            "verify",
            "--max-degree",
            "9",
            "--expect-strength",
            "8",
            "--input",
        ])
        .arg(dir.path().join("xa.json"))
        .output()
        .unwrap();
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
}

#[test]
fn emitted_files_are_stable_under_rewrite() {
    for args in [
        &["gen", "s1-gon", "--n", "7", "--phase", "0.3"][..],
        &["gen", "s2-product", "--t", "5"][..],
        &[
            "gen",
            "s2-product",
            "--t",
            "12",
            "--nodes",
            "2",
            "--weighted-fallback",
        ][..],
    ] {
        let text = stdout(&run(args));
        assert_eq!(hopf_designs::cli::normalize_document(&text).unwrap(), text);
    }
}
