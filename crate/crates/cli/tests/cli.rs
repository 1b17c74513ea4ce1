use std::path::Path;
use std::process::{Command, Output};

fn ihss(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ihss")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_of(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

fn bettis(v: &serde_json::Value) -> Vec<u64> {
    v["groups"].as_array().unwrap().iter().map(|g| g["betti"].as_u64().unwrap()).collect()
}

#[test]
fn corpus_listing() {
    let o = ihss(&["corpus"]);
    assert!(o.status.success());
    let s = stdout(&o);
    for name in ["sphere2", "torus7", "twisted_cone_bundle"] {
        assert!(s.contains(name));
    }
    assert!(s.contains("[7, 21, 14]"));
    let g = ihss(&["corpus", "--golden"]);
    assert_eq!(json_of(&g).as_array().unwrap().len(), 12);
}

#[test]
fn ih_corpus_values() {
    let o = ihss(&["ih", "sphere2", "zero", "Z"]);
    assert!(o.status.success());
    assert_eq!(bettis(&json_of(&o)["homology"]), vec![1, 0, 1]);
    let o = ihss(&["ih", "cone_t2", "0,0,0,1", "Q"]);
    assert_eq!(bettis(&json_of(&o)["homology"]), vec![1, 0, 0, 0]);
    let o = ihss(&["ih", "rp2_6", "zero", "Z", "--oracle"]);
    let v = json_of(&o);
    assert_eq!(v["oracle"]["agrees"], true);
    assert_eq!(v["homology"]["groups"][1]["torsion"][0], 2);
}

#[test]
fn ih_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let complex = dir.path().join("cone.txt");
    std::fs::write(&complex, "dim 2\ns 0 1 3\ns 1 2 3\ns 0 2 3\nstratum 0: 3\n").unwrap();
    let o = ihss(&["ih", complex.to_str().unwrap(), "zero", "Q"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(bettis(&json_of(&o)["homology"]), vec![1, 0, 0]);

    // The sign representation of the circle has no twisted homology over Q.
    let circle = dir.path().join("circle.txt");
    std::fs::write(&circle, "dim 1\ns 0 1\ns 1 2\ns 0 2\n").unwrap();
    let sys = dir.path().join("sign.txt");
    std::fs::write(&sys, "rank 1\nedge 0.2 0 : -1\n").unwrap();
    let o = ihss(&["ih", circle.to_str().unwrap(), "zero", "Q", "--local-system", sys.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(bettis(&json_of(&o)["homology"]), vec![0, 0]);
}

#[test]
fn report_file_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let o = ihss(&["ss", "twisted_cone_bundle", "--perversity", "zero", "--field", "Q", "--report", path.to_str().unwrap()]);
        assert!(o.status.success());
        assert!(stdout(&o).contains("verdict: PASS"));
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let v: serde_json::Value = serde_json::from_slice(&ta).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(bettis(&v["ih_neighborhood"]), vec![1, 1, 0, 0]);
}

#[test]
fn ss_with_stalk_system() {
    let dir = tempfile::tempdir().unwrap();
    let o = ihss(&["ss", "twisted_cone_bundle"]);
    let v = json_of(&o);
    assert_eq!(v["base_dimension"], 1);
    // The q = 0 row of E^2 is the homology of the base circle with the
    // coinvariant stalk: a trivial rank-one system.
    let report = dir.path().join("r.json");
    let sys = dir.path().join("stalk.txt");
    std::fs::write(&sys, "rank 1\n").unwrap();
    let o = ihss(&["ss", "twisted_cone_bundle", "--stalk-system", sys.to_str().unwrap(), "--stalk-degree", "0", "--report", report.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&report).unwrap()).unwrap();
    assert_eq!(v["stalk_system"]["agrees"], true);
}

#[test]
fn cone_on_circle_single_column() {
    let o = ihss(&["ss", "cone_s1", "--base", "apex", "--perversity", "zero", "--field", "Q"]);
    assert!(o.status.success());
    let v = json_of(&o);
    assert_eq!(v["full"]["max_p"], 0);
}

#[test]
fn exit_codes() {
    assert_eq!(ihss(&["ih", "no_such_space"]).status.code(), Some(2));
    assert_eq!(ihss(&["ih", "sphere2", "zero", "F4"]).status.code(), Some(2));
    assert_eq!(ihss(&["ih", "sphere2", "0,1,0"]).status.code(), Some(2));
    assert_eq!(ihss(&["ss", "sphere2"]).status.code(), Some(2));
    assert_eq!(ihss(&["ss", "cone_s1", "--field", "Z"]).status.code(), Some(2));
    assert_eq!(ihss(&["check", "nope"]).status.code(), Some(2));
    assert_eq!(ihss(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn check_suites() {
    let o = ihss(&["check", "cone-formula"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("cone-formula: PASS (8 cases)"));
}

fn write_golden(dir: &Path, corrupt: bool) -> String {
    let o = ihss(&["corpus", "--golden"]);
    let mut v = json_of(&o);
    if corrupt {
        v[1]["bettis"][1] = serde_json::json!(3);
    }
    let path = dir.join("golden.json");
    std::fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn golden_override() {
    let dir = tempfile::tempdir().unwrap();
    let good = write_golden(dir.path(), false);
    assert!(ihss(&["check", "golden", "--golden", &good]).status.success());
    let bad = write_golden(dir.path(), true);
    let o = ihss(&["check", "golden", "--golden", &bad]);
    assert_eq!(o.status.code(), Some(1));
    let s = stdout(&o);
    assert!(s.contains("torus7 [0, 0, 0]: FAIL (expected [1, 3, 1], got [Z, Z^2, Z])"), "{s}");
    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{").unwrap();
    assert_eq!(ihss(&["check", "golden", "--golden", garbage.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn oracle_regenerates_golden() {
    let o = ihss(&["corpus", "--oracle"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json_of(&o), json_of(&ihss(&["corpus", "--golden"])));
}
