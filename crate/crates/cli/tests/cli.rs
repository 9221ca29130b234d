use std::process::{Command, Output};

fn uquery(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uquery"))
        .args(args)
        .env_remove("UQUERY_CAP")
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = uquery(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

#[test]
fn gen_writes_table_and_metadata() {
    let text = stdout(&["gen", "or:2"]);
    assert!(text.contains("table = \"table:7:2\""), "{text}");
    assert!(text.contains("family = \"or\""));
    assert!(stdout(&["gen", "ind:1"]).contains("table:35:3"));
    assert_eq!(
        stdout(&["gen", "random:3:42"]),
        stdout(&["gen", "random:3:42"])
    );
}

#[test]
fn function_files_are_accepted_wherever_specs_are() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("and2.toml");
    let p = path.to_str().unwrap();
    stdout(&["gen", "and:2", "--out", p]);
    assert_eq!(stdout(&["eval", p, "0u"]), "0\n");
    assert_eq!(stdout(&["measures", p]), stdout(&["measures", "and:2"]));
}

#[test]
fn eval_examples() {
    assert_eq!(stdout(&["eval", "and:2", "0u"]), "0\n");
    assert_eq!(stdout(&["eval", "or:2", "u1"]), "1\n");
    assert_eq!(stdout(&["eval", "parity:2", "1u"]), "u\n");
}

#[test]
fn measures_report() {
    let text = stdout(&["measures", "and:2"]);
    assert!(text.lines().any(|l| l == "C_u=2"), "{text}");
    let zero = stdout(&["measures", "table:0:2"]);
    assert!(zero.lines().all(|l| l.ends_with("=0")), "{zero}");
    let ind = stdout(&["measures", "ind:1", "--witnesses"]);
    let get = |k: &str| -> usize {
        ind.lines()
            .find_map(|l| l.strip_prefix(&format!("{k}=")))
            .unwrap()
            .parse()
            .unwrap()
    };
    assert!(get("D") <= get("D_u"));
    assert!(ind.contains("witness.tree_u="));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    stdout(&["measures", "or:3", "--json", path.to_str().unwrap()]);
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["D_u"], 3);
    assert!(v.get("witnesses").is_none());
}

#[test]
fn solve_methods() {
    let r = json(&["solve", "and:2", "11"]);
    assert_eq!(r["output"], "1");
    assert!(r["queries"].as_u64().unwrap() <= r["bound"].as_u64().unwrap());
    assert_eq!(r["transcript"][0], serde_json::json!({"i": 1, "a": "1"}));

    let r = json(&["solve", "or:3", "uuu", "--method", "tree"]);
    assert_eq!(r["output"], "u");

    for hidden in ["0000", "u1u0", "1u1u", "uuuu", "0101"] {
        let r = json(&["solve", "mind:2", hidden, "--method", "monotone"]);
        assert_eq!(r["output"], r["expected"], "{hidden}");
    }
    let r = json(&["solve", "table:d:2", "u0", "--method", "unate"]);
    assert_eq!(r["output"], "u");
}

#[test]
fn inapplicable_method_is_a_usage_error() {
    let out = uquery(&["solve", "parity:2", "00", "--method", "monotone"]);
    assert_eq!(out.status.code(), Some(2));
    let out = uquery(&["solve", "parity:2", "00", "--method", "unate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tree_depths() {
    assert!(stdout(&["tree", "or:3"]).starts_with("depth=3\n"));
    assert!(stdout(&["tree", "ind:2", "--model", "binary"]).starts_with("depth=3\n"));
    let zero = stdout(&["tree", "table:0:2"]);
    assert!(zero.starts_with("depth=0\n"));
    assert!(zero.contains("\"leaf\": \"0\""));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    assert_eq!(
        stdout(&["tree", "or:2", "--out", path.to_str().unwrap()]),
        "depth=2\n"
    );
    let tree =
        uquery::trees::DecisionTree::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(tree.depth(), 2);
}

#[test]
fn verify_exit_status_follows_checks() {
    let out = uquery(&["verify", "reduction", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.contains("PASS or_via_ind passed=20 failed=0"),
        "{text}"
    );

    let out = uquery(&["verify", "monotone", "--n", "4..4", "--workers", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("functions=168"));

    // bs_u exceeds C_u on u-inputs at arity 3
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = uquery(&[
        "verify",
        "core",
        "--n",
        "3",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["passed"], false);
    let c = &report["counterexamples"][0];
    assert!(c["function"].as_str().unwrap().starts_with("table:"));
}

#[test]
fn verify_output_is_reproducible() {
    let args = [
        "verify",
        "algorithm1",
        "--n",
        "4..4",
        "--samples",
        "20",
        "--seed",
        "9",
    ];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(uquery(&["eval", "or:2", "0"]).status.code(), Some(2));
    assert_eq!(uquery(&["eval", "bogus:2", "00"]).status.code(), Some(2));
    assert_eq!(uquery(&["eval", "or:2", "0x"]).status.code(), Some(2));
    assert_eq!(uquery(&["verify", "nope"]).status.code(), Some(2));
    assert_eq!(uquery(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn cap_flag_and_environment() {
    assert_eq!(
        uquery(&["--cap", "3", "eval", "or:4", "0000"])
            .status
            .code(),
        Some(2)
    );
    let out = Command::new(env!("CARGO_BIN_EXE_uquery"))
        .args(["eval", "or:4", "0000"])
        .env("UQUERY_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout(&["--cap", "4", "eval", "or:4", "000u"]), "u\n");
}
