use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isolattice")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_iso1_passes() {
    let o = run(&["verify", "iso1", "--max-square", "30"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("square\tm=1\tnot-represented\tnot-represented"), "{out}");
    assert!(out.ends_with("verdict\tpass\n"));
}

#[test]
fn verify_small_claims() {
    for claim in ["remark-d12", "thm44-witness", "table1-candidates", "remark-a16"] {
        assert_eq!(run(&["verify", claim]).status.code(), Some(0), "{claim}");
    }
}

#[test]
fn table1_as_printed_fails() {
    let o = run(&["verify", "table1"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("<1,2> + A1 10[1 1/2] vs I_0(5)\tnot-represented\tfound"), "{out}");
    assert!(out.contains("<1,2> + A1 14[1 1/2] vs I_1(3)\tnot-represented\tfound"), "{out}");
}

#[test]
fn unknown_claim_is_a_usage_error() {
    assert_eq!(run(&["verify", "iso9"]).status.code(), Some(64));
}

#[test]
fn claim_list() {
    let o = run(&["verify", "list"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 9);
}

#[test]
fn bad_flags_are_usage_errors() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(run(&["sublattices", "--n", "x", "--p", "3"]).status.code(), Some(64));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let t = dir.path().join("a.tsv");
    for p in [&a, &b] {
        let o = run(&["verify", "iso1", "--json", p.to_str().unwrap(), "--tsv", t.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    let ja = fs::read(&a).unwrap();
    assert_eq!(ja, fs::read(&b).unwrap());
    let v: serde_json::Value = serde_json::from_slice(&ja).unwrap();
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["entries"].as_array().unwrap().len(), 30);
    assert!(v["entries"][0].get("millis").is_none());
    assert!(fs::read_to_string(&t).unwrap().starts_with("family\tparameters"));
}

#[test]
fn timings_are_opt_in() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    run(&["verify", "iso1", "--timings", "--json", a.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_slice(&fs::read(&a).unwrap()).unwrap();
    assert!(v["entries"][0].get("millis").is_some());
}

#[test]
fn rep_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("four.json");
    let host = dir.path().join("host.json");
    let bad = dir.path().join("bad.json");
    fs::write(&target, r#"{"rank": 1, "gram": [[4]]}"#).unwrap();
    fs::write(&host, r#"{"rank": 3, "gram": [[2,0,0],[0,2,0],[0,0,5]]}"#).unwrap();
    fs::write(&bad, r#"{"rank": 2, "gram": [[1,0],"#).unwrap();
    let (t, h, b) = (target.to_str().unwrap(), host.to_str().unwrap(), bad.to_str().unwrap());

    let o = run(&["rep", t, h]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("status\tfound\n"));

    let one = r#"{"rank": 1, "gram": [[1]]}"#;
    assert_eq!(run(&["rep", one, h]).status.code(), Some(1));
    assert_eq!(run(&["rep", b, h]).status.code(), Some(64));
    assert_eq!(run(&["rep", t, "no_such_lattice"]).status.code(), Some(64));

    let i2 = r#"{"rank": 2, "gram": [[1,0],[0,1]]}"#;
    assert_eq!(run(&["rep", i2, "iso2_quinary"]).status.code(), Some(1));
    assert_eq!(run(&["rep", "glue:A2", "glue:A1 A1 8[1 1 1/2]"]).status.code(), Some(1));
    assert_eq!(run(&["rep", "glue:A1", "glue:A3"]).status.code(), Some(0));
}

#[test]
fn rep_budget_exhaustion_is_inconclusive() {
    let o = run(&["rep", "glue:A11", "glue:D12[1]", "--node-budget", "1"]);
    assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn sublattices_of_i2() {
    let o = run(&["sublattices", "--n", "2", "--p", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("# 2 classes\n"));
    assert_eq!(out.lines().count(), 3);
    assert_eq!(run(&["sublattices", "--n", "2", "--p", "4"]).status.code(), Some(64));
}

#[test]
fn reduce_peels_one_form() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("diag-2-2-5.json");
    fs::write(&f, r#"{"rank": 3, "gram": [[2,0,0],[0,2,0],[0,0,5]]}"#).unwrap();
    let o = run(&["reduce", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("h\t2 2 5\n"));
    assert!(out.contains("peel\t1\n"));
    assert!(out.contains("residual\t{\"rank\":3,\"gram\":[[2,0,0],[0,2,0],[0,0,3]]}\n"), "{out}");
}

#[test]
fn bounds_table() {
    let o = run(&["bounds", "--n", "100"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let row: Vec<&str> = out.lines().nth(1).unwrap().split('\t').collect();
    assert_eq!(&row[..4], ["100", "4", "496", "unknown"]);
    let out = stdout(&run(&["bounds", "--n", "2"]));
    assert_eq!(out.lines().nth(1).unwrap(), "2\t0\t2\t36\t15");
    let out = stdout(&run(&["bounds", "--n", "7", "--g", "11"]));
    assert_ne!(out.lines().nth(1).unwrap().split('\t').nth(3).unwrap(), "unknown");
}

#[test]
fn hilbert_table() {
    let out = stdout(&run(&["hilbert", "-1", "-1"]));
    assert_eq!(out, "place\tsymbol\n2\t-1\ninf\t-1\n");
    assert_eq!(run(&["hilbert", "0", "3"]).status.code(), Some(64));
}
