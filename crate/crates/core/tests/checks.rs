use ihss::checks::{corpus_golden, parse_golden, run_suite, GoldenEntry, SuiteReport};

fn assert_pass(r: &SuiteReport) {
    let failures: Vec<_> = r.failures().map(|c| format!("{}: {}", c.name, c.detail)).collect();
    assert!(r.pass, "{} failed:\n{}", r.suite, failures.join("\n"));
}

#[test]
fn cone_formula_suite() {
    let r = run_suite("cone-formula", None).unwrap();
    assert_pass(&r);
    assert_eq!(r.cases.len(), 8);
}

#[test]
fn exactness_suite() {
    let r = run_suite("exactness", None).unwrap();
    assert_pass(&r);
    assert!(r.cases.iter().any(|c| c.name == "s1_x_cone_t2 neighborhood Mayer-Vietoris"));
}

#[test]
fn prism_suite() {
    assert_pass(&run_suite("prism", None).unwrap());
}

#[test]
fn subdivision_suite() {
    let r = run_suite("subdivision", None).unwrap();
    assert_pass(&r);
    assert_eq!(r.cases.len(), 14);
}

#[test]
fn spectral_suites() {
    assert_pass(&run_suite("e2", None).unwrap());
    assert_pass(&run_suite("ss-map", None).unwrap());
}

#[test]
fn golden_suite_and_override() {
    assert_pass(&run_suite("golden", None).unwrap());
    let mut wrong: Vec<GoldenEntry> = corpus_golden();
    wrong[0].bettis[0] += 1;
    let r = run_suite("golden", Some(&wrong)).unwrap();
    assert!(!r.pass);
    assert_eq!(r.failures().count(), 1);

    let text = r#"[{"space": "rp2_6", "perversity": [0, 0, 0], "bettis": [1, 0, 0], "torsion": [[1, [2]]]}]"#;
    let entries = parse_golden(text).unwrap();
    assert_pass(&run_suite("golden", Some(&entries)).unwrap());
    let no_torsion = parse_golden(r#"[{"space": "rp2_6", "perversity": [0, 0, 0], "bettis": [1, 0, 0]}]"#).unwrap();
    assert!(!run_suite("golden", Some(&no_torsion)).unwrap().pass);
    assert!(parse_golden("[{").is_err());
}

#[test]
fn unknown_suite() {
    assert!(run_suite("nope", None).is_err());
}
