use std::process::{Command, Output};

fn bpbraid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bpbraid"))
        .args(args)
        .env_remove("BPBRAID_MAX_MU")
        .env_remove("BPBRAID_MAX_WORD_LEN")
        .env_remove("BPBRAID_ORBIT_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn assert_golden(args: &[&str], name: &str) {
    let o = bpbraid(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), golden(name), "{args:?}");
}

#[test]
fn golden_outputs() {
    assert_golden(&["dynkin", "2,2", "--dot"], "dynkin_2_2.dot");
    assert_golden(&["presentation", "2,2"], "presentation_2_2.txt");
    assert_golden(&["presentation", "2,3", "--format", "json"], "presentation_2_3.json");
    assert_golden(&["hl-disc", "2,3"], "hl_disc_2_3.txt");
    assert_golden(&["bp-gens", "2,2"], "bp_gens_2_2.txt");
    assert_golden(&["hl-bif", "2,2", "--report"], "hl_bif_2_2_report.txt");
}

#[test]
fn dynkin_dot_shape() {
    let out = stdout(&bpbraid(&["dynkin", "2,2", "--dot"]));
    assert_eq!(out.matches(" -- ").count(), 5);
    assert_eq!(out.lines().filter(|l| l.ends_with("\";")).count(), 4);
}

#[test]
fn word_equality() {
    let o = bpbraid(&["word-eq", "3", "s1 s2 s1", "s2 s1 s2"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "equal\n"));
    let o = bpbraid(&["word-eq", "3", "s1 s2", "s2 s1"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "different\n"));
    let o = bpbraid(&["--json", "word-eq", "3", "s1", "s1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["equal"], true);
}

#[test]
fn verify_single_case() {
    let o = bpbraid(&["verify", "--id", "braid/a"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 1);
    assert!(out.contains(" holds "), "{out}");
    let o = bpbraid(&["verify", "--id", "braid/a", "--params", "4", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["cases"][0]["verdict"], "holds");
    assert_eq!(v["cases"][0]["params"], "4");
}

#[test]
fn verify_everything() {
    let o = bpbraid(&["verify", "--all"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("0 problems"));
    assert_eq!(out.lines().filter(|l| l.starts_with("out of reach:")).count(), 2);
}

#[test]
fn negative_control_alone_still_passes() {
    // a negative control that fails is the expected outcome
    let o = bpbraid(&["verify", "--id", "neg/braid/a"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("fails (negative-control) witness:"));
}

#[test]
fn hurwitz_commands() {
    let o = bpbraid(&["hurwitz-stab", "--tuple", "psi:2,3", "--gens", "E:2,3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("moves"));
    let o = bpbraid(&["hurwitz-stab", "--tuple", "perm:3", "--word", "s1 s1"]);
    assert_eq!(o.status.code(), Some(1), "σ1² moves ((1 2),(2 3),(3 4))");
    let o = bpbraid(&["hurwitz-orbit", "--tuple", "perm:3"]);
    assert_eq!(stdout(&o), "orbit size 16\n");
    let o = bpbraid(&["hurwitz-orbit", "--tuple", "psi:0,4", "--orbit-cap", "10"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn budgets_and_environment() {
    let o = bpbraid(&["hl-bif", "3,3"]);
    assert_eq!(o.status.code(), Some(3));
    let o = bpbraid(&["hl-disc", "2,3", "--max-mu", "4"]);
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_bpbraid")).args(["hl-disc", "2,3"]).env("BPBRAID_MAX_MU", "4").output().unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = bpbraid(&[
        "word-eq",
        "4",
        "s1 s2 s3 s1 s2 s3 s1 s2 s3 s1 s2 s3",
        "s3 s2 s1 s3 s2 s1 s3 s2 s1 s3 s2 s1",
        "--max-word-len",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn usage_errors() {
    for args in [
        &["bogus"][..],
        &["hl-disc", "2,x"],
        &["family", "zz:1"],
        &["word-eq", "3", "s5", "s1"],
        &["verify"],
        &["verify", "--id", "no/such"],
    ] {
        let o = bpbraid(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn every_subcommand_speaks_json() {
    let cases: [&[&str]; 11] = [
        &["bp-gens", "2,2"],
        &["an-gens", "3"],
        &["family", "cw:4"],
        &["dynkin", "2,3"],
        &["presentation", "2,2"],
        &["hl-disc", "2,2"],
        &["hl-bif", "2,2", "--report"],
        &["word-eq", "3", "s1", "s2"],
        &["hurwitz-stab", "--tuple", "perm:3", "--gens", "cw:3"],
        &["hurwitz-orbit", "--tuple", "perm:2"],
        &["verify", "--filter", "subcable"],
    ];
    for args in cases {
        let mut a = vec!["--json"];
        a.extend_from_slice(args);
        let o = bpbraid(&a);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        serde_json::from_str::<serde_json::Value>(&stdout(&o)).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    }
}

#[test]
fn output_is_deterministic() {
    let a = bpbraid(&["--json", "verify", "--all"]);
    let b = bpbraid(&["--json", "verify", "--all"]);
    assert_eq!(a.stdout, b.stdout);
}
