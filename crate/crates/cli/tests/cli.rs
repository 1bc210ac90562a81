use std::path::{Path, PathBuf};

use serde_json::Value;

fn data(rel: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(rel)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("toroidal").chain(args.iter().copied());
    let code = toroidal_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn knot_alexander_of_trefoil() {
    assert_eq!(
        run(&["knot", "alexander", "torus(2,3)"]),
        (0, "1 - t + t^2\n".into(), String::new())
    );
}

#[test]
fn knot_genus_json() {
    let v = json(&["knot", "genus", "sum(torus(2,3); table(4_1))", "--json"]);
    assert_eq!(v["genus"], 2);
    assert_eq!(v["genus_lower"], 2);
    assert_eq!(v["knot"], "sum(torus(2,3); table(4_1))");
}

#[test]
fn malformed_knot_is_a_usage_error() {
    let (code, out, err) = run(&["knot", "genus", "torus(2,"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("knot expression"), "{err}");
}

#[test]
fn diagram_oracle_agrees_with_symbolic_knots() {
    for (file, expr) in [
        ("pd/trefoil.pd", "torus(2,3)"),
        ("pd/torus_3_4.pd", "torus(3,4)"),
        ("pd/figure_eight.pd", "table(4_1)"),
        ("pd/granny.pd", "sum(torus(2,3); torus(2,3))"),
        ("pd/trefoil.gauss", "torus(2,3)"),
    ] {
        let (_, from_file, _) = run(&["diagram", "alexander", &data(file)]);
        let (_, symbolic, _) = run(&["knot", "alexander", expr]);
        assert_eq!(from_file, symbolic, "{file}");
    }
    let v = json(&["diagram", "genus", &data("pd/torus_2_7.pd"), "--json"]);
    assert_eq!((v["genus"].clone(), v["seifert_circles"].clone()), (3.into(), 2.into()));
}

#[test]
fn invalid_pd_content_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.pd");
    std::fs::write(&path, "PD[X[1,2,3]]").unwrap();
    let (code, _, err) = run(&["diagram", "alexander", path.to_str().unwrap()]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn missing_file_is_a_usage_error() {
    let (code, _, err) = run(&["tower", "report", "/nonexistent/tower.json"]);
    assert_eq!(code, 1);
    assert!(err.contains("cannot read"), "{err}");
}

#[test]
fn knotted_solenoid_report() {
    let v = json(&[
        "tower",
        "report",
        &data("towers/knotted_dyadic_solenoid.json"),
        "--json",
    ]);
    assert_eq!(v["genus"], "infinite");
    assert_eq!(v["homeo_verdict"], "obstructed:infinite_genus");
    assert_eq!(v["schema"], "toroidal-report/1");
}

#[test]
fn bad_tower_names_the_schubert_stage() {
    let (code, out, err) = run(&["tower", "report", &data("towers/bad_tower.json")]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("SchubertViolation at cycle stage 0"), "{err}");
}

#[test]
fn catalog_examples() {
    let w = json(&["catalog", "report", "whitehead", "--json"]);
    assert_eq!(w["h1"], "trivial");
    assert!(w["flow_verdict"].as_str().unwrap().starts_with("not_realizable"));
    let d = json(&["catalog", "report", "dyadic_solenoid", "--json"]);
    assert_eq!(
        (d["h1"].as_str(), d["steinitz"].as_str()),
        (Some("not_finitely_generated"), Some("2^inf"))
    );
    let t = json(&["catalog", "report", "tame_trefoil", "--json"]);
    assert_eq!(t["flow_verdict"], "realizable:eventually_concentric");
    assert_eq!(t["alexander"], "1 - t + t^2");
}

#[test]
fn mask_towers_and_unknown_names() {
    let v = json(&["catalog", "report", "mask:101", "--json"]);
    assert_eq!(v["subject"], "mask:101");
    assert_eq!(v["genus"], "infinite");
    let (code, _, err) = run(&["catalog", "report", "no_such_tower"]);
    assert_eq!(code, 1);
    assert!(err.contains("no_such_tower"));
}

#[test]
fn batch_report_keeps_catalog_order() {
    let names: Vec<String> = json(&["catalog", "list", "--json"])
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["name"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(names.len(), 7);
    let all = json(&["catalog", "report", "--json"]);
    let subjects: Vec<&str> = all
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["subject"].as_str().unwrap())
        .collect();
    assert_eq!(subjects, names);
}

#[test]
fn reports_are_deterministic() {
    let a = run(&["catalog", "report", "--json"]);
    let b = run(&["catalog", "report", "--json"]);
    assert_eq!(a, b);
}

#[test]
fn golden_catalog_reports() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for name in toroidal::catalog::names() {
        let (code, out, err) = run(&["catalog", "report", name, "--json"]);
        assert_eq!(code, 0, "{err}");
        let path = dir.join(format!("{name}.json"));
        if update {
            std::fs::write(&path, &out).unwrap();
            continue;
        }
        let golden = std::fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("{}: {e}; rerun with UPDATE_GOLDEN=1", path.display()));
        assert_eq!(out, golden, "{name} drifted from its snapshot");
    }
}

#[test]
fn help_and_usage_errors() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("catalog"));
    let (code, out, err) = run(&["knot", "frobnicate", "unknot"]);
    assert_eq!(code, 1);
    assert!(out.is_empty() && !err.is_empty());
}
