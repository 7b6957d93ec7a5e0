//! Command-line surface checks.

use std::process::Command;

fn exe() -> &'static str {
    env!("CARGO_BIN_EXE_coherence-lab")
}

#[test]
fn version_prints_engine_and_schemas() {
    let out = Command::new(exe()).arg("--version").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("coherence-lab"));
    let long = Command::new(exe()).arg("--help").output().unwrap();
    assert!(long.status.success());
}

#[test]
fn run_requires_valid_config() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    std::fs::write(&path, "experiment = \"nope\"\n").unwrap();
    let out = Command::new(exe()).arg("run").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn run_with_config_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.toml");
    std::fs::write(
        &cfg,
        "experiment = \"conjecture-sweep\"\nn = 2\n[sweep]\nmax_entry = 1\n",
    )
    .unwrap();
    let outdir = dir.path().join("out");
    let out = Command::new(exe())
        .arg("run")
        .arg(&cfg)
        .args(["--preset", "dual", "--out"])
        .arg(&outdir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let json = std::fs::read_to_string(outdir.join("conjecture-sweep.json")).unwrap();
    assert!(json.contains("\"labeling\": \"dual\""));
    assert!(json.contains("\"schema\": \"coherence-lab/report/v1\""));
}

#[test]
fn explicit_instances_run() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("inst.toml");
    std::fs::write(
        &cfg,
        r#"
experiment = "kostant-kumar"
n = 3
[[instances]]
weights = [[2,1,0],[0,0,0],[0,0,0]]
"#,
    )
    .unwrap();
    let out = Command::new(exe()).arg("run").arg(&cfg).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn unknown_example_is_an_error() {
    let out = Command::new(exe())
        .args(["example", "sec9.9"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn demazure_run_from_files() {
    let data = coherence_lab::examples::default_data_dir();
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("dem.toml");
    std::fs::write(
        &cfg,
        format!(
            r#"
experiment = "demazure-coherence"
n = 2
[[modules]]
path = "{0}/demazure-l1m2.json"
expected_limit_dim = 18
[[modules]]
path = "{0}/demazure-l1m3.json"
expected_limit_dim = 18
"#,
            data.display()
        ),
    )
    .unwrap();
    let out = Command::new(exe()).arg("run").arg(&cfg).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn fundamental_rejects_mixed_weights() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("fund.toml");
    std::fs::write(
        &cfg,
        r#"
experiment = "fundamental"
n = 3
[[instances]]
weights = [[1,0,0],[1,1,0],[0,0,0]]
"#,
    )
    .unwrap();
    let out = Command::new(exe()).arg("run").arg(&cfg).output().unwrap();
    // mixed fundamentals: the record is incomplete, exit code 1
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn fundamental_accepts_pure_collections() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("fund.toml");
    std::fs::write(
        &cfg,
        r#"
experiment = "fundamental"
n = 3
fundamental_index = 1
[[instances]]
weights = [[1,0,0],[0,0,0],[1,0,0]]
"#,
    )
    .unwrap();
    let out = Command::new(exe()).arg("run").arg(&cfg).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("1 passed"), "{text}");
}

#[test]
fn missing_data_directory_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(exe())
        .args(["example", "sec7.3a", "--data-dir"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("make-data"), "{err}");
}

#[test]
fn make_data_is_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let run = |tag: &str| {
        let d = dir.path().join(tag);
        let out = Command::new(exe())
            .args(["make-data", "--out"])
            .arg(&d)
            .output()
            .unwrap();
        assert!(out.status.success());
        let mut files: Vec<_> = std::fs::read_dir(&d)
            .unwrap()
            .map(|e| e.unwrap().path())
            .collect();
        files.sort();
        files
            .iter()
            .map(|p| std::fs::read_to_string(p).unwrap())
            .collect::<Vec<_>>()
    };
    assert_eq!(run("a"), run("b"));
}
