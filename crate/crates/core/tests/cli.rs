use liephase::cli::{run, Outcome, EXIT_FAIL, EXIT_PASS, EXIT_PRECISION, EXIT_USAGE};

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("liephase").chain(args.iter().copied()))
}

fn temp_file(name: &str, text: &str) -> std::path::PathBuf {
    let p = std::env::temp_dir().join(format!("liephase-{}-{name}", std::process::id()));
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn validate_builtins() {
    for name in ["sl2", "abelian:3", "heisenberg3", "solvable2", "kappa:4"] {
        let out = cli(&["validate", "--builtin", name]);
        assert_eq!(out.code, EXIT_PASS, "{name}: {}", out.stdout);
        assert!(out.stdout.starts_with("valid"));
    }
}

#[test]
fn validate_rejects_broken_antisymmetry() {
    let p = temp_file(
        "bad.toml",
        "dim = 3\nbasis = [\"x1\", \"x2\", \"x3\"]\nbrackets = [\n  [\"x1\", \"x2\", \"x3\", \"1\"],\n  [\"x2\", \"x1\", \"x3\", \"1\"],\n]\n",
    );
    let out = cli(&["validate", p.to_str().unwrap()]);
    std::fs::remove_file(&p).ok();
    assert_eq!(out.code, EXIT_FAIL);
    assert!(out.stdout.contains("invalid"), "{}", out.stdout);
}

#[test]
fn validate_json_and_file_round_trip() {
    let def = liephase::lie::LieAlgebra::sl2().to_definition();
    let p = temp_file("sl2.toml", &def);
    let out = cli(&["validate", "--file", p.to_str().unwrap(), "--format", "json"]);
    std::fs::remove_file(&p).ok();
    assert_eq!(out.code, EXIT_PASS);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["valid"], true);
    assert_eq!(v["dim"], 3);
}

#[test]
fn usage_errors() {
    assert_eq!(cli(&["validate"]).code, EXIT_USAGE);
    assert_eq!(cli(&["validate", "--builtin", "nope"]).code, EXIT_USAGE);
    assert_eq!(cli(&["frobnicate"]).code, EXIT_USAGE);
    let out = cli(&["compute", "antipode", "x1 +", "--builtin", "sl2", "-N", "3"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("column"), "{}", out.stderr);
    assert_eq!(cli(&["compute", "antipode", "x7", "--builtin", "sl2"]).code, EXIT_USAGE);
}

#[test]
fn compute_phi_heisenberg() {
    let out = cli(&["compute", "phi", "--builtin", "heisenberg3", "-N", "4"]);
    assert_eq!(out.code, EXIT_PASS);
    assert!(out.stdout.contains("(3,1): 1/2*d2"), "{}", out.stdout);
    assert!(out.stdout.contains("[prec 4]"));
}

#[test]
fn compute_o_abelian_is_identity() {
    let out = cli(&["compute", "O", "--builtin", "abelian:2", "-N", "5"]);
    assert_eq!(out.code, EXIT_PASS);
    assert_eq!(out.stdout, "O [prec 5]\n(1,1): 1\n(2,2): 1\n");
}

#[test]
fn compute_coproduct_d3() {
    let out = cli(&["compute", "coproduct", "d3", "--builtin", "heisenberg3", "-N", "3"]);
    assert_eq!(out.code, EXIT_PASS);
    assert!(out.stdout.contains("1/2*d1 (x) d2 - 1/2*d2 (x) d1"), "{}", out.stdout);
}

#[test]
fn compute_other_objects() {
    for args in [
        vec!["phitilde"],
        vec!["Oinv"],
        vec!["realization", "x1 x2"],
        vec!["dualbasis", "1,0,1"],
        vec!["dualbasis", "x1 x3"],
        vec!["antipode", "x1 d2"],
        vec!["multiply", "d1", "x2"],
        vec!["blackleft", "d1 + x1", "x2 x1"],
        vec!["coproduct", "x1"],
    ] {
        let mut full = vec!["compute"];
        full.extend(args.iter().copied());
        full.extend(["--builtin", "heisenberg3", "-N", "4"]);
        let out = cli(&full);
        assert_eq!(out.code, EXIT_PASS, "{args:?}: {}", out.stderr);
        assert!(!out.stdout.is_empty());
    }
    let out = cli(&["compute", "dualbasis", "2,0,2", "--builtin", "heisenberg3", "-N", "3"]);
    assert_eq!(out.code, EXIT_PRECISION, "{}", out.stderr);
}

#[test]
fn printed_antipode_reparses() {
    let out = cli(&["compute", "antipode", "x1 d3 + y2", "--builtin", "sl2", "-N", "4"]);
    assert_eq!(out.code, EXIT_PASS);
    let ps = liephase::phase::PhaseSpace::new(liephase::lie::LieAlgebra::sl2(), 4);
    let printed = out.stdout.trim().replace('\n', " ");
    let back = liephase::expr::parse_h(&ps, &printed).unwrap();
    let direct = ps.antipode(&liephase::expr::parse_h(&ps, "x1 d3 + y2").unwrap());
    assert_eq!(back.prec(), direct.prec());
    assert!(back.first_difference(&direct, back.prec()).is_none());
}

#[test]
fn verify_heisenberg_all() {
    let out = cli(&["verify", "--builtin", "heisenberg3", "-N", "6", "-M", "2", "--suite", "all"]);
    assert_eq!(out.code, EXIT_PASS, "{}", out.stdout);
    assert!(out.stdout.trim_end().ends_with("0 failed"));
}

#[test]
fn verify_solvable_hopf_reports_square() {
    let out = cli(&["verify", "--builtin", "solvable2", "-N", "8", "-M", "3", "--suite", "hopf"]);
    assert_eq!(out.code, EXIT_PASS, "{}", out.stdout);
    assert!(out.stdout.contains("S^2(x1) = x1 - 1"), "{}", out.stdout);
    assert!(out.stdout.contains("S^2(x2) = x2"));
}

#[test]
fn verify_abelian_all_is_deterministic_json() {
    let args = ["verify", "--builtin", "abelian:2", "-N", "4", "-M", "2", "--format", "json"];
    let a = cli(&args);
    assert_eq!(a.code, EXIT_PASS, "{}", a.stdout);
    assert_eq!(a.stdout, cli(&args).stdout);
    let v: serde_json::Value = serde_json::from_str(&a.stdout).unwrap();
    let first = &v[0];
    for key in ["check_id", "paper_eq", "status", "witness", "millis"] {
        assert!(first.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn verify_low_precision_suggests_n() {
    let out = cli(&["verify", "--builtin", "heisenberg3", "-N", "2", "-M", "2", "--suite", "hopf"]);
    assert_eq!(out.code, EXIT_PRECISION, "{}", out.stdout);
    assert!(out.stdout.contains("try N >="), "{}", out.stdout);
}
