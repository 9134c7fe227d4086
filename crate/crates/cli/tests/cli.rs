use std::path::Path;
use std::process::{Command, Output};

fn crsym(args: &[&str], out_dir: Option<&Path>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_crsym"));
    c.args(args).env_remove("CRSYM_OUT_DIR");
    if let Some(d) = out_dir {
        c.env("CRSYM_OUT_DIR", d);
    }
    c.output().expect("binary runs")
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

#[test]
fn classalg_k3_passes_with_table() {
    let o = crsym(&["verify", "classalg", "--k", "3"], None);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["schema_version"], 1);
    let t = crsym(&["table", "classalg", "--k", "3"], None);
    let csv = String::from_utf8(t.stdout).unwrap();
    assert!(csv.contains("(1,1,1):1/3;(3):2/3"), "{csv}");
    assert!(csv.contains("(1,1,1):1/2;(3):1/2"), "{csv}");
}

#[test]
fn classalg_k2_table_has_two_by_two_cells() {
    let t = crsym(&["table", "classalg", "--k", "2"], None);
    let csv = String::from_utf8(t.stdout).unwrap();
    let mut rd = csv::Reader::from_reader(csv.as_bytes());
    assert_eq!(rd.headers().unwrap().len() - 1, 2);
    assert_eq!(rd.records().count(), 2);
}

#[test]
fn reduction_and_prop1_pass() {
    assert!(crsym(&["verify", "reduction", "--n", "1", "--deg", "3"], None).status.success());
    assert!(crsym(&["verify", "prop1", "--d", "4", "--s", "2", "--n", "3"], None).status.success());
}

#[test]
fn composition_finding_exits_nonzero() {
    let o = crsym(&["verify", "composition", "--n", "1", "--deg", "2"], None);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(json(&o)["status"], "finding");
}

#[test]
fn invalid_parameters_fail() {
    let o = crsym(&["verify", "reduction", "--n", "2", "--w1", "0", "--w2", "0"], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stdout).contains("n + w1 + w2 = 0"));
    assert!(!crsym(&["verify", "nosuch"], None).status.success());
}

#[test]
fn isotypic_table_and_out_dir() {
    let dir = tempfile::tempdir().unwrap();
    let o = crsym(&["table", "isotypic", "--k", "2", "--dim", "4"], Some(dir.path()));
    assert!(o.status.success());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("isotypic_k2_n4.json")).unwrap()).unwrap();
    assert_eq!(v["total_dim"], 104);
    let ranks: Vec<u64> = v["rows"].as_array().unwrap().iter().map(|r| r["rank"].as_u64().unwrap()).collect();
    assert_eq!(ranks, vec![20, 84]);
}

#[test]
fn output_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.csv");
    let c = dir.path().join("c.csv");
    crsym(&["verify", "hwvectors", "--k", "2", "--seed", "5", "--out", a.to_str().unwrap()], None);
    let first = std::fs::read(&a).unwrap();
    crsym(&["verify", "hwvectors", "--k", "2", "--seed", "5", "--out", a.to_str().unwrap()], None);
    assert_eq!(first, std::fs::read(&a).unwrap());
    for p in [&b, &c] {
        crsym(&["verify", "commutation", "--n", "1", "--format", "csv", "--out", p.to_str().unwrap()], None);
    }
    assert_eq!(std::fs::read(&b).unwrap(), std::fs::read(&c).unwrap());
}
