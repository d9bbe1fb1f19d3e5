use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn burnside(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_burnside")).args(args).output().expect("binary runs")
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data").join(name).to_string_lossy().into_owned()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn invariant_examples() {
    let w = json(&burnside(&["invariant", &data("whitehead_half_cabling.pres"), "--exponent", "4"]));
    assert_eq!(w["verdict"], "OBSTRUCTED");
    assert_eq!(w["invariants"]["quotient_order"]["log"], 10);
    assert_eq!(w["move"]["n"], 4);

    let u = json(&burnside(&["invariant", &data("unknot.pd"), "--exponent", "3"]));
    assert_eq!(u["verdict"], "METHOD_INAPPLICABLE");
    assert_eq!(u["invariants"]["quotient_order"]["value"], 1);

    let d = json(&burnside(&["invariant", "delta54.braid", "--exponent", "3"]));
    assert_eq!(d["verdict"], "OBSTRUCTED");
}

#[test]
fn output_is_byte_stable_and_out_file_matches() {
    let args = ["invariant", "borromean.pd", "-n", "4"];
    let (a, b) = (burnside(&args), burnside(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let c = burnside(&["invariant", "borromean.pd", "-n", "4", "--out", out.to_str().unwrap()]);
    assert!(c.status.success());
    assert!(c.stdout.is_empty());
    assert_eq!(std::fs::read(&out).unwrap(), a.stdout);
}

#[test]
fn format_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("link.txt");
    std::fs::write(&path, "strands=2\ns1 s1 s1\n").unwrap();
    let p = path.to_str().unwrap();
    assert!(!burnside(&["invariant", p, "-n", "3"]).status.success());
    let r = json(&burnside(&["invariant", p, "-n", "3", "--format", "braid"]));
    assert_eq!(r["invariants"]["h1_mod_n"], "Z3");
}

#[test]
fn compare_examples() {
    let run = |a: &str, b: &str, n: &str| json(&burnside(&["compare", a, b, "--exponent", n]))["result"].clone();
    assert_eq!(run("whitehead_half_cabling.pres", "borromean.pd", "4"), "DISTINGUISHED");
    assert_eq!(run("borromean.pd", "borromean.braid", "4"), "NOT_DISTINGUISHED");
    assert_eq!(run("delta54.braid", "link20.braid", "3"), "NOT_DISTINGUISHED");
}

#[test]
fn audit_requires_seed_and_is_reproducible() {
    assert!(!burnside(&["audit", "trefoil.braid", "-n", "3"]).status.success());
    let args = ["audit", "trefoil.braid", "-n", "3", "--seed", "5", "--trials", "6"];
    let a = burnside(&args);
    assert_eq!(a.stdout, burnside(&args).stdout);
    let r = json(&a);
    assert_eq!(r["passed"], true);
    assert_eq!(r["trials"].as_array().unwrap().len(), 6);
    assert!(!burnside(&["audit", "whitehead_half_cabling.pres", "-n", "4", "--seed", "1"]).status.success());
}

#[test]
fn reproduce_targets() {
    let st = burnside(&["reproduce", "--target", "engine-selftest"]);
    assert!(st.status.success());
    assert!(String::from_utf8_lossy(&st.stdout).trim_end().ends_with("result: PASS"));

    let mn = burnside(&["reproduce", "--target", "montesinos-nakanishi"]);
    assert!(mn.status.success(), "{}", String::from_utf8_lossy(&mn.stdout));

    // the literal R2 row fails, so the table fails and the exit code says so
    let k = burnside(&["reproduce", "--target", "kawauchi"]);
    assert_eq!(k.status.code(), Some(2));
    let text = String::from_utf8_lossy(&k.stdout);
    assert!(text.contains("|B_W(4)|") && text.contains("2^10"));

    assert_eq!(burnside(&["reproduce", "--target", "nope"]).status.code(), Some(1));
}

#[test]
fn errors_exit_nonzero() {
    for args in [
        &["invariant", "missing.pd", "-n", "3"][..],
        &["invariant", "trefoil.braid", "-n", "1"],
        &["invariant", "trefoil.braid", "-n", "4", "--q", "0"],
    ] {
        let out = burnside(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: "));
    }
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.pd");
    std::fs::write(&bad, "X[1,2,3]").unwrap();
    assert_eq!(burnside(&["invariant", bad.to_str().unwrap(), "-n", "3"]).status.code(), Some(1));
}

#[test]
fn data_dir_override() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_burnside"))
            .args(["invariant", "whitehead_half_cabling.pres", "-n", "4"])
            .env("BURNSIDE_DATA_DIR", dir.path())
            .output()
            .unwrap()
    };
    // an empty directory has no engine files
    assert_eq!(run().status.code(), Some(1));
    std::fs::copy(data("b24.pcp"), dir.path().join("b24.pcp")).unwrap();
    assert_eq!(json(&run())["verdict"], "OBSTRUCTED");
}
