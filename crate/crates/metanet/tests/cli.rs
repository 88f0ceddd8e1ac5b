use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use metanet::config::BlockMatrixFile;
use metanet_core::synthgen::MultiOptimumConfig;
use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_metanet"));
    c.env_remove("METANET_THREADS");
    c
}

fn data(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(rel)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn strip_timestamp(mut v: Value) -> Value {
    v["manifest"].as_object_mut().unwrap().remove("timestamp");
    v
}

#[test]
fn no_arguments_is_a_usage_error() {
    let o = run(&[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
    assert_eq!(run(&["bestest"]).status.code(), Some(2));
    assert_eq!(run(&["metrics", "nmi", "--bogus"]).status.code(), Some(2));
}

#[test]
fn nmi_on_three_object_fixtures() {
    let a = data("three_objects/p2_ab_c.labels");
    let b = data("three_objects/p3_ac_b.labels");
    let o = run(&["metrics", "nmi", "--a", a.to_str().unwrap(), "--b", b.to_str().unwrap()]);
    assert!(o.status.success());
    let x: f64 = stdout(&o).trim().parse().unwrap();
    assert!((x - 0.27).abs() < 0.005);
    let o = run(&["metrics", "ami", "--a", a.to_str().unwrap(), "--b", b.to_str().unwrap()]);
    let x: f64 = stdout(&o).trim().parse().unwrap();
    assert!((x + 0.5).abs() < 1e-9);
}

#[test]
fn bestest_is_deterministic_and_thread_independent() {
    let g = data("karate/karate.edges");
    let m = data("karate/factions.labels");
    let args = [
        "bestest",
        "--graph",
        g.to_str().unwrap(),
        "--metadata",
        m.to_str().unwrap(),
        "--permutations",
        "999",
        "--seed",
        "4",
    ];
    let a = json(&run(&args));
    let b = json(&bin().args(args).env("METANET_THREADS", "2").output().unwrap());
    let mut a = strip_timestamp(a);
    let mut b = strip_timestamp(b);
    assert_eq!(a["p_value"], b["p_value"]);
    assert_eq!(a["null_mean"], b["null_mean"]);
    a["manifest"]["argv"] = Value::Null;
    b["manifest"]["argv"] = Value::Null;
    assert_eq!(a, b);
    assert_eq!(a["model"], "sbm");
    assert_eq!(a["kind"], "entropy_bits");
    assert_eq!(a["n_permutations"], 999);
    assert_eq!(a["manifest"]["inputs"].as_object().unwrap().len(), 2);
    assert!(a["p_value"].as_f64().unwrap() < 0.01);
}

#[test]
fn bestest_dumps_null_distribution() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("null.csv");
    let o = run(&[
        "bestest",
        "--graph",
        data("karate/karate.edges").to_str().unwrap(),
        "--metadata",
        data("karate/factions.labels").to_str().unwrap(),
        "--model",
        "poisson-dcsbm",
        "--permutations",
        "50",
        "--dump-null",
        dump.to_str().unwrap(),
    ]);
    let v = json(&o);
    assert_eq!(v["log_base"], "e");
    let text = std::fs::read_to_string(dump).unwrap();
    assert_eq!(text.lines().count(), 50);
    assert!(text.lines().all(|l| l.parse::<f64>().is_ok()));
}

#[test]
fn runtime_errors_exit_1() {
    let o = run(&[
        "bestest",
        "--graph",
        data("karate/karate.edges").to_str().unwrap(),
        "--metadata",
        data("three_objects/p1_abc.labels").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("does not appear in the graph"));
    let o = run(&["metrics", "vi", "--a", "/nonexistent", "--b", "/nonexistent"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn generate_neosbm_landscape_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("tb");
    let v = json(&run(&[
        "generate",
        "two-block",
        "--n",
        "40",
        "--epsilon",
        "0.1",
        "--ell",
        "0.6",
        "--mean-degree",
        "6",
        "--seed",
        "3",
        "--out-prefix",
        prefix.to_str().unwrap(),
    ]));
    assert_eq!(v["n_nodes"], 40);
    let edges = dir.path().join("tb.edges");
    let meta = dir.path().join("tb.metadata");
    assert!(dir.path().join("tb.truth").exists());

    let out = dir.path().join("path.json");
    let o = run(&[
        "neosbm",
        "--graph",
        edges.to_str().unwrap(),
        "--metadata",
        meta.to_str().unwrap(),
        "--theta-grid",
        "0.1:0.9:0.2",
        "--sweeps",
        "50",
        "--restarts",
        "3",
        "--seed",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let path: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let records = path["records"].as_array().unwrap();
    assert_eq!(records.len(), 5);
    let mut prev_q = 0;
    for r in records {
        let q = r["q"].as_u64().unwrap();
        assert!(q >= prev_q);
        prev_q = q;
        assert_eq!(r["partition"].as_array().unwrap().len(), 40);
        let z = r["z"].as_array().unwrap();
        assert_eq!(z.iter().filter(|x| x.as_u64() == Some(1)).count() as u64, q);
    }
    let parts = dir.path().join("path.partitions");
    assert_eq!(std::fs::read_dir(&parts).unwrap().count(), 5);
    std::fs::copy(dir.path().join("tb.truth"), parts.join("truth.labels")).unwrap();
    std::fs::copy(&meta, parts.join("metadata.labels")).unwrap();

    let surface = dir.path().join("surface.csv");
    let v = json(&run(&[
        "landscape",
        "--graph",
        edges.to_str().unwrap(),
        "--partitions",
        parts.to_str().unwrap(),
        "--samples",
        "30",
        "--seed",
        "2",
        "--out",
        surface.to_str().unwrap(),
    ]));
    let n_points = v["n_points"].as_u64().unwrap() as usize;
    let text = std::fs::read_to_string(&surface).unwrap();
    assert_eq!(text.lines().next(), Some("x,y,score,partition_id"));
    assert_eq!(text.lines().count(), n_points + 1);
}

#[test]
fn multi_optimum_config_matches_builtin() {
    let file = BlockMatrixFile::read(&data("multi_optimum.json")).unwrap();
    assert!(file.provenance.as_deref().unwrap().starts_with("calibrated"));
    assert_eq!(file.to_config().unwrap(), MultiOptimumConfig::calibrated());
    let round = BlockMatrixFile::from_config(&MultiOptimumConfig::calibrated(), file.provenance.as_deref());
    assert_eq!(round, file);
}

#[test]
fn generate_multi_optimum_from_config() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("mo");
    let v = json(&run(&[
        "generate",
        "multi-optimum",
        "--config",
        data("multi_optimum.json").to_str().unwrap(),
        "--seed",
        "1",
        "--out-prefix",
        prefix.to_str().unwrap(),
    ]));
    assert_eq!(v["n_nodes"], 200);
    for ext in ["edges", "metadata", "truth", "blocks"] {
        assert!(dir.path().join(format!("mo.{ext}")).exists());
    }
}

#[test]
fn homogeneity_outputs() {
    let o = run(&["metrics", "homogeneity", "--n", "4"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("profile,count,mean_ami"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().any(|r| r.starts_with("2-2,3,")));
    let v = json(&run(&["homogeneity", "--n", "5"]));
    for row in v["rows"].as_array().unwrap() {
        assert!(row["max_interior_abs_mean"].as_f64().unwrap() < 1e-9);
    }
}
