use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn qgraph(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qgraph"));
    cmd.args(args);
    if let Some(t) = threads {
        cmd.env("QGRAPH_THREADS", t);
    }
    cmd.output().unwrap()
}

fn corpus(name: &str) -> String {
    let p: PathBuf = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name);
    p.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_pentagon_file() {
    let o = qgraph(&["analyze", &corpus("pentagon.graph")], None);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("dihedral D_5"), "{text}");
    assert!(text.contains("coefficients  1 1 3 13 63"), "{text}");
}

#[test]
fn analyze_cube_json() {
    let o = qgraph(&["analyze", &corpus("cube.graph"), "--max-level", "4", "--json"], None);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["classification"]["class"], "tensor-product");
    assert_eq!(v["closure"]["dims"], serde_json::json!([1, 1, 4, 20, 112]));
    assert_eq!(v["series"]["coefficients"], serde_json::json!(["1", "1", "4", "20", "112"]));
}

#[test]
fn json_is_byte_stable_across_runs_and_threads() {
    let args = ["analyze", "--named", "hexagon", "--max-level", "3", "--json"];
    let one = qgraph(&args, Some("1"));
    let two = qgraph(&args, Some("2"));
    let again = qgraph(&args, None);
    assert!(one.status.success());
    assert_eq!(one.stdout, two.stdout);
    assert_eq!(one.stdout, again.stdout);
}

#[test]
fn exit_codes() {
    let empty = std::env::temp_dir().join(format!("qgraph-empty-{}.graph", std::process::id()));
    std::fs::write(&empty, "").unwrap();
    let o = qgraph(&["analyze", empty.to_str().unwrap()], None);
    std::fs::remove_file(&empty).unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));

    assert_eq!(qgraph(&["analyze", "--named", "pentagon", "--max-level", "3", "--cap", "2"], None).status.code(), Some(3));
    assert_eq!(qgraph(&["analyze", "--named", "nonsense"], None).status.code(), Some(2));
    assert_eq!(qgraph(&["analyze", "--named", "pentagon", "--max-level", "1"], None).status.code(), Some(2));
    assert_eq!(qgraph(&["enumerate", "--max-vertices", "10"], None).status.code(), Some(2));
    assert_eq!(qgraph(&["series", "tl", "0"], None).status.code(), Some(2));
    assert_eq!(qgraph(&["bogus"], None).status.code(), Some(2));
    assert_eq!(qgraph(&["analyze", "--named", "cube", "--no-closure"], Some("zero")).status.code(), Some(2));
}

#[test]
fn series_command() {
    let o = qgraph(&["series", "fc", "2", "--terms", "4", "--json"], None);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["coefficients"], serde_json::json!(["1", "1", "3", "12", "55"]));
    assert_eq!(v["radius"], "4/27");
    let o = qgraph(&["series", "tl", "4", "--terms", "5", "--json"], None);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["coefficients"], serde_json::json!(["1", "1", "2", "5", "14", "42"]));
    assert_eq!(v["radius"], "1/4");
    let o = qgraph(&["series", "dihedral", "8", "--terms", "4"], None);
    assert!(stdout(&o).contains("c_3"));
    assert!(stdout(&o).contains("34"));
}

#[test]
fn enumerate_command() {
    let o = qgraph(&["enumerate", "--max-vertices", "8", "--classify", "--json"], None);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["total"], 38);
    assert_eq!(v["closed_under_complement"], true);
    assert_eq!(v["class_tallies"], serde_json::json!({"dihedral": 9, "fuss-catalan": 27, "tensor-product": 2}));

    let o = qgraph(&["enumerate", "--max-vertices", "5", "--classify"], None);
    assert!(stdout(&o).contains("dihedral D_5"));
    let o = qgraph(&["enumerate", "--max-vertices", "1", "--json"], None);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["total"], 1);
}

#[test]
fn graph_command_round_trips_through_analyze() {
    let o = qgraph(&["graph", "wheel8"], None);
    assert_eq!(stdout(&o), std::fs::read_to_string(corpus("wheel8.graph")).unwrap());
    assert!(stdout(&qgraph(&["graph"], None)).contains("torus3"));
}
