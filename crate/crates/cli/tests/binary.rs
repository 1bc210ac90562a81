use std::path::Path;
use std::process::Command;

fn toroidal() -> Command {
    Command::new(env!("CARGO_BIN_EXE_toroidal"))
}

fn towers(file: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data/towers")
        .join(file)
        .to_string_lossy()
        .into_owned()
}

#[test]
fn exit_codes() {
    let ok = toroidal().args(["knot", "alexander", "torus(2,3)"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "1 - t + t^2\n");

    let usage = toroidal().args(["knot"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(1));
    assert!(!usage.stderr.is_empty());

    let invalid = toroidal()
        .args(["tower", "report", &towers("bad_tower.json")])
        .output()
        .unwrap();
    assert_eq!(invalid.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&invalid.stderr).contains("SchubertViolation"));
}

#[test]
fn catalog_directory_overrides_and_extends() {
    let dir = tempfile::tempdir().unwrap();
    let mut renamed = std::fs::read_to_string(towers("cable_tower.json")).unwrap();
    renamed = renamed.replace("figure_eight_then_cable", "whitehead");
    std::fs::write(dir.path().join("a_override.json"), renamed).unwrap();
    std::fs::copy(towers("truncated_sum.json"), dir.path().join("b_extra.json")).unwrap();
    std::fs::write(dir.path().join("ignored.txt"), "not a tower").unwrap();

    let out = toroidal()
        .args(["catalog", "list"])
        .env("TOROIDAL_CATALOG_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let list = String::from_utf8(out.stdout).unwrap();
    assert_eq!(list.lines().count(), 8, "{list}");
    assert!(list.lines().next().unwrap().contains("a_override.json"));

    let report = toroidal()
        .args(["catalog", "report", "whitehead", "--json"])
        .env("TOROIDAL_CATALOG_DIR", dir.path())
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&report.stdout).unwrap();
    assert_eq!(v["h1"], "Z");
    assert_eq!(v["genus"], "3");
}

#[test]
fn broken_catalog_file_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("broken.json"), "{ \"name\": 3 }").unwrap();
    let out = toroidal()
        .args(["catalog", "list"])
        .env("TOROIDAL_CATALOG_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
