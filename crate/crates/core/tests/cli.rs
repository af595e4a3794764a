use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_artin-kernels")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn decompose_tree_text() {
    let input = fixture("tree.json");
    let o = run(&["decompose", "--input", input.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("H_1 = (K[t±1]/Φ1)^3 ⊕ (K[t±1]/Φ2)^2 ⊕ (K[t±1]/Φ3)^2 ⊕ (K[t±1]/Φ4) ⊕ (K[t±1]/Φ6^2)"));
    assert!(out.contains("pipelines agree"));
}

#[test]
fn json_reports_match_goldens_byte_for_byte() {
    for name in ["tree", "kite", "triangle", "block3"] {
        let input = fixture(&format!("{name}.json"));
        let o = run(&["check", "--input", input.to_str().unwrap(), "--format", "json"]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stderr(&o));
        let golden = std::fs::read_to_string(fixture(&format!("{name}.expected.json"))).unwrap();
        assert_eq!(stdout(&o), golden, "{name}");
    }
}

#[test]
fn output_file_and_filters() {
    let dir = std::env::temp_dir().join(format!("artin-kernels-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("report.json");
    let input = fixture("block3.json");
    let o = run(&[
        "decompose",
        "--input",
        input.to_str().unwrap(),
        "--format",
        "json",
        "--method",
        "formulas",
        "--d",
        "1,2",
        "--max-degree",
        "2",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(v["degrees"]["2"]["torsion"], serde_json::json!({"1": [8], "2": [0, 0, 1]}));
    assert!(v["degrees"].get("3").is_none());
    assert_eq!(v["agreement"], serde_json::Value::Null);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn resonant_needs_the_direct_pipeline_and_the_override() {
    let input = fixture("resonant.json");
    let path = input.to_str().unwrap();
    let o = run(&["decompose", "--input", path, "--method", "formulas"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("resonant character unsupported by formula pipeline"));
    assert_eq!(run(&["decompose", "--input", path, "--method", "direct"]).status.code(), Some(1));
    let o = run(&["decompose", "--input", path, "--method", "direct", "--allow-resonant"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("H_1 = K[t±1] ⊕ (K[t±1]/Φ1)^2 ⊕ (K[t±1]/Φ2)"));
}

#[test]
fn bad_input_exits_with_one() {
    let dir = std::env::temp_dir().join(format!("artin-kernels-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("loop.json");
    std::fs::write(&bad, r#"{"vertices":["a"],"edges":[["a","a"]],"character":{"a":1}}"#).unwrap();
    let o = run(&["decompose", "--input", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("self-loop"), "{}", stderr(&o));
    assert_eq!(run(&["decompose", "--input", dir.join("missing.json").to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(run(&["decompose", "--bogus"]).status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn bundled_fixtures_pass() {
    let o = run(&["fixtures"]);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("ok")).count(), 5);
}

#[test]
fn fuzz_smoke() {
    let o = run(&["fuzz", "--seed", "0", "--vertices", "6", "--trials", "50"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).trim(), "50 trials, 0 failing");
}
