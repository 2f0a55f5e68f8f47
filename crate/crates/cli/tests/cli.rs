use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn lodi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lodi")).args(args).output().expect("lodi runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn config(text: &str, ext: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(ext).tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn hom_examples() {
    let out = lodi(&["hom", "A[(t0,-1),(t0,1)]", "A[(t0,0),(t0,3)]@1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!((v["dim"].as_u64(), v["oracle_dim"].as_u64(), &v["agree"]), (Some(1), Some(1), &Value::Bool(true)));
    let v = json(&lodi(&["hom", "A[(t0,0),(t0,0)]", "A[(t0,0),(t0,0)]"]));
    assert_eq!(v["dim"], 1);
}

#[test]
fn malformed_and_out_of_window_inputs_exit_2() {
    let out = lodi(&["hom", "A[(t0,0)", "A[(t0,0),(t0,0)]"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
    assert_eq!(lodi(&["probe", "A[(t0,0),(t0,40)]"]).status.code(), Some(2));
    assert_eq!(lodi(&["probe", "A[(zz,0),(zz,1)]"]).status.code(), Some(2));
    assert_eq!(lodi(&["export", "Wing(t0)"]).status.code(), Some(2));
    assert_eq!(lodi(&["--field", "gf4", "hom", "A[(t0,0),(t0,0)]", "A[(t0,0),(t0,0)]"]).status.code(), Some(2));
    assert_eq!(lodi(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn cone_examples() {
    let v = json(&lodi(&["cone", "A[(t0,-1),(t0,1)]", "A[(t0,0),(t0,3)]", "--shift", "1"]));
    assert_eq!(v["cone"], "A[(t0,-1),(t0,3)]@1 + A[(t0,0),(t0,1)]@1");
    assert_eq!(v["agree"], true);
    let v = json(&lodi(&["cone", "A[(t0,0),(t0,0)]", "A[(t0,0),(t0,0)]"]));
    assert_eq!((v["cone"].as_str(), v["by_probing"].as_str()), (Some("0"), Some("0")));
    let v = json(&lodi(&["cone", "A[(t0,0),(t0,1)]", "A[(t0,0),(t0,0)]"]));
    assert_eq!(v["cone"], "A[(t0,1),(t0,1)]@1");
    // no nonzero map
    assert_eq!(lodi(&["cone", "A[(t0,0),(t0,0)]", "A[(t0,3),(t0,3)]"]).status.code(), Some(2));
}

#[test]
fn probe_examples() {
    let v = json(&lodi(&["probe", "A[(t0,-1),(t0,1)]"]));
    let probes: Vec<&str> = v["phi_o"].as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect();
    assert_eq!(probes.len(), 2);
    assert!(probes.contains(&"A[(t0,1),(t0,1)]") && probes.contains(&"A[(t0,-2),(t0,-2)]@-1"));
    assert_eq!(v["component"], "Wing(t0,0)");
    let d = config("kind = \"D\"\nt_labels = [\"t0\"]\nz_window = [-4, 6]\n", ".toml");
    let v = json(&lodi(&["--config", d.path().to_str().unwrap(), "probe", "A1[(t0,0)]"]));
    assert_eq!(v["fiber"].as_array().unwrap().len(), 2);
    assert_eq!(v["shape"], "ZD_inf");
}

#[test]
fn tilt_examples() {
    let a = config(r#"{"kind":"A","t_labels":["t0","t1"],"z_window":[-3,3]}"#, ".json");
    let v = json(&lodi(&["--config", a.path().to_str().unwrap(), "tilt", "A[(t1,0),(t1,0)]"]));
    assert_eq!(v["shape"], "AShape");
    assert_eq!(v["partial_tilting"], true);
    let els = v["elements"].as_array().unwrap();
    assert_eq!(els[0], "A[(t1,0),(t1,0)]");
    assert_eq!(els[els.len() - 1], "A[(t1,1),(t1,1)]@1");
    assert!(v["peripheral_pair"].is_null());

    let d = config("kind = \"D\"\nt_labels = [\"t0\"]\nz_window = [-3, 4]\n", ".toml");
    let v = json(&lodi(&["--config", d.path().to_str().unwrap(), "tilt", "A[(t0,0),(t0,0)]"]));
    assert_eq!(v["shape"], "DShape");
    assert_eq!(v["peripheral_pair"], serde_json::json!(["A1[(t0,0)]", "A2[(t0,0)]"]));

    let one = config("kind = \"A\"\nt_labels = [\"t0\"]\nz_window = [0, 2]\n", ".toml");
    let v = json(&lodi(&["--config", one.path().to_str().unwrap(), "tilt", "A[(t0,0),(t0,0)]"]));
    let els: Vec<&str> = v["elements"].as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect();
    assert_eq!(els, ["A[(t0,0),(t0,0)]", "A[(t0,1),(t0,1)]@1"]);

    assert_eq!(lodi(&["tilt", "A[(t0,0),(t0,1)]"]).status.code(), Some(2));
}

#[test]
fn export_formats() {
    let w = config("kind = \"A\"\nt_labels = [\"t0\"]\nz_window = [0, 3]\n", ".toml");
    let path = w.path().to_str().unwrap();
    let out = lodi(&["--config", path, "export", "Wing(t0,0)"]);
    assert_eq!(out.status.code(), Some(0));
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("style=dashed").count(), 6);
    let v = json(&lodi(&["--config", path, "export", "Wing(t0,0)", "--format", "json"]));
    assert_eq!(v["vertices"].as_array().unwrap().len(), 10);
    // deterministic
    assert_eq!(lodi(&["--config", path, "export", "Wing(t0,0)"]).stdout, dot.into_bytes());
}

#[test]
fn verify_hom_passes_and_sabotage_exits_3() {
    let out = lodi(&["verify", "--suite", "hom"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["suite"], "hom");
    let out = lodi(&["--sabotage-ext", "verify", "--suite", "hom"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["passed"], false);
}

#[test]
fn verify_tilt_includes_examples() {
    let out = lodi(&["--jobs", "2", "--seed", "7", "verify", "--suite", "tilt"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["seed"], 7);
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"tilt_examples"));
}
