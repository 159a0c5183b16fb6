use std::path::Path;
use std::process::{Command, Output};

fn fkalg() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fkalg"));
    for var in ["FKALG_FORMAT", "FKALG_THREADS", "FKALG_CACHE_DIR", "FKALG_BUDGET", "FKALG_CAPS", "FKALG_EXPECT", "FKALG_MAX_DEG", "FKALG_GRAPH"] {
        cmd.env_remove(var);
    }
    cmd
}

fn run(args: &[&str]) -> Output {
    fkalg().args(args).output().expect("spawn fkalg")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn json_output_matches_golden_files() {
    let cases: &[(&str, &[&str])] = &[
        ("hilbert_a3", &["hilbert", "--graph", "A:3"]),
        ("pair", &["pair", "x12.x23", "x23.x12"]),
        ("nf", &["nf", "+1*x12.x23 +1*x23.x13 +1*x13.x12", "--n", "3"]),
        ("weyl_d4", &["weyl", "--type", "D4"]),
        ("affine_primitives_3", &["affine", "primitives", "--n", "3"]),
        ("dn_5", &["dn", "--n", "5"]),
        ("relcheck_braid_3", &["relcheck", "braid", "--n", "3"]),
        ("mcr_d4", &["mcr", "--graph", "D:4", "--edge", "4-5"]),
        ("quotient_d4_d5", &["quotient", "--sub", "D:4", "--sup", "D:5"]),
    ];
    for (name, args) in cases {
        let mut full = vec!["--format", "json"];
        full.extend_from_slice(args);
        let o = run(&full);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&o.stderr));
        let got: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        let want: serde_json::Value = serde_json::from_str(&golden(name)).unwrap();
        assert_eq!(got, want, "{name}");
        assert_eq!(got["pass"], serde_json::Value::Bool(true), "{name}");
    }
}

#[test]
fn golden_values_are_consistent() {
    let h: serde_json::Value = serde_json::from_str(&golden("hilbert_a3")).unwrap();
    assert_eq!(h["series"], "[2][3]");
    assert_eq!(h["dimension"], 6);
    let w: serde_json::Value = serde_json::from_str(&golden("weyl_d4")).unwrap();
    // |W(D4)| / index of connection = 192 / 4
    assert_eq!(w["order"], 192);
    assert_eq!(w["dimension"], "48");
    let q: serde_json::Value = serde_json::from_str(&golden("quotient_d4_d5")).unwrap();
    let m: serde_json::Value = serde_json::from_str(&golden("mcr_d4")).unwrap();
    // [5](1 + t^3) both ways
    assert_eq!(q["quotient"], "1, 1, 1, 2, 2, 1, 1, 1");
    assert_eq!(m["profile"], serde_json::json!([1, 1, 1, 2, 2, 1, 1, 1]));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["hilbert", "--graph", "A:3", "--expect", "[2][3]"]).status.code(), Some(0));
    // the fork's series, not the star's
    assert_eq!(run(&["hilbert", "--graph", "star:4", "--expect", "[4]^2[5][6]"]).status.code(), Some(1));
    let o = run(&["--budget", "0.5", "appendix", "--vertices", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty(), "no partial results on budget exhaustion");
    assert_eq!(run(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(run(&["hilbert", "--graph", "nosuch:3"]).status.code(), Some(3));
    assert_eq!(run(&["nf", "x12.x99", "--n", "3"]).status.code(), Some(3));
}

#[test]
fn thread_count_does_not_change_output() {
    for args in [&["appendix", "--vertices", "4"][..], &["mcr", "--graph", "A:3", "--edge", "3-4"][..]] {
        let outs: Vec<String> = ["1", "4"]
            .iter()
            .map(|t| {
                let mut full = vec!["--format", "json", "--threads", t];
                full.extend_from_slice(args);
                let o = run(&full);
                assert_eq!(o.status.code(), Some(0));
                stdout(&o)
            })
            .collect();
        assert_eq!(outs[0], outs[1], "{args:?}");
    }
}

#[test]
fn environment_overrides_flags() {
    let o = fkalg().env("FKALG_FORMAT", "json").args(["weyl", "--type", "D4"]).output().unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["ratio"], "[3][4]^2");
    let o = fkalg().env("FKALG_EXPECT", "[9]").args(["hilbert", "--graph", "A:3"]).output().unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn tsv_is_key_tab_value() {
    let o = run(&["--format", "tsv", "weyl", "--type", "D4"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines.iter().all(|l| l.split('\t').count() >= 2), "{text}");
    assert!(lines.contains(&"ratio\t[3][4]^2"));
}

#[test]
fn cache_dir_is_written_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let first = run(&["--format", "json", "--cache-dir", d, "relcheck", "braid", "--n", "4"]);
    assert_eq!(first.status.code(), Some(0));
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
    let second = run(&["--format", "json", "--cache-dir", d, "relcheck", "braid", "--n", "4"]);
    assert_eq!(stdout(&first), stdout(&second));
}
