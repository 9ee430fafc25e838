use std::path::{Path, PathBuf};
use std::process::Command;

use connobs_cli::{catalog_command, load_document, run_command, run_modules, verdict_rows, CatalogOptions, Status};
use connobs_core::obstructions::Stages;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_connobs"))
}

fn temp_file(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("connobs-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn rows_for(id: &str) -> Vec<String> {
    let doc = load_document(Path::new(id)).unwrap();
    let modules = doc.build_modules().unwrap();
    verdict_rows(&run_modules(&modules, Stages::table()).unwrap())
}

#[test]
fn builtin_table_rows() {
    assert_eq!(rows_for("monomial-curve-345"), ["p | 1 | 0 | 1"]);
    assert_eq!(rows_for("cubic-cone"), ["M3 | 1 | 0 | 0", "M4 | 1 | 0 | 0"]);
    assert_eq!(rows_for("threefold-E6"), ["m | 1 | 0 | 0"]);
}

#[test]
fn free_module_row_and_json() {
    let input = temp_file("free.txt", "ring: vars x,y; order dp; ideal x^2+y^2;\nmodule F = [[0],[0]];\n");
    let json = input.with_extension("json");
    let mut out = Vec::new();
    let status = run_command(&input, None, Some(json.clone()), &mut out).unwrap();
    assert_eq!(status, Status::Pass);
    let text = String::from_utf8(out).unwrap();
    assert!(text.lines().nth(1).unwrap().starts_with("F | 0 | 0 | 0 | "), "{text}");

    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let r = &v["reports"][0];
    assert_eq!(r["module"], "F");
    assert_eq!(r["aclass"]["vanishes"], true);
    assert_eq!(r["kskernel"]["proper"], false);
    assert_eq!(r["lclass"]["vanishes"], true);
    assert_eq!(r["connection"]["operators"].as_array().unwrap().len(), r["connection"]["generators"].as_array().unwrap().len());
    assert!(r["timings_ms"]["lclass"].is_number());
}

#[test]
fn table_and_json_agree() {
    let input = temp_file("a1.txt", "ring: vars x,y; order dp; ideal x^2+y^2;\nmodule M = [[x,y],[y,-x]];\nmodule P = [[x, y]];\n");
    let json = input.with_extension("json");
    let mut out = Vec::new();
    run_command(&input, Some(Stages::all()), Some(json.clone()), &mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let bit = |b: &serde_json::Value| if b.as_bool().unwrap() { 0 } else { 1 };
    for (line, r) in text.lines().skip(1).zip(v["reports"].as_array().unwrap()) {
        let expect = format!(
            "{} | {} | {} | {} | ",
            r["module"].as_str().unwrap(),
            bit(&r["aclass"]["vanishes"]),
            1 - bit(&r["kskernel"]["proper"]),
            bit(&r["lclass"]["vanishes"]),
        );
        assert!(line.starts_with(&expect), "{line} vs {expect}");
        assert!(r["der"]["generators"].is_array());
    }
}

#[test]
fn stage_subset() {
    let input = temp_file("sub.txt", "ring: vars x,y; order dp; ideal x^2+y^2;\nmodule M = [[x,y],[y,-x]];\n");
    let mut out = Vec::new();
    run_command(&input, Some(Stages::parse_list("aclass").unwrap()), None, &mut out).unwrap();
    assert!(String::from_utf8(out).unwrap().contains("M | 1 | - | - | "));
}

#[test]
fn catalog_verify_and_unknown_id() {
    let mut out = Vec::new();
    let opts = CatalogOptions { verify: true, show: false };
    assert_eq!(catalog_command(Some("monomial-curve-345"), opts, None, &mut out).unwrap(), Status::Pass);

    let mut out = Vec::new();
    assert_eq!(catalog_command(Some("threefold-A*"), opts, None, &mut out).unwrap(), Status::Pass);
    let text = String::from_utf8(out).unwrap();
    for line in text.lines().filter(|l| l.ends_with(" ok")) {
        let l = line.split(" | ").nth(3).unwrap();
        let free = line.starts_with("A | ");
        assert_eq!(l, if free { "0" } else { "1" }, "{line}");
    }

    let err = catalog_command(Some("unknown-id"), CatalogOptions::default(), None, &mut Vec::new()).unwrap_err();
    assert_eq!(err.status(), Status::InputError);
    assert!(err.to_string().contains("cubic-cone"));
}

#[test]
fn binary_exit_codes() {
    let out = bin().args(["catalog", "--verify", "cubic-cone"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("M4 | 1 | 0 | 0 | "));

    let out = bin().args(["catalog", "unknown-id"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("monomial-curve-345"));

    let ds = temp_file("ds.txt", "ring: vars x,y; order ds; ideal x^2+y^2;\nmodule M = [[x,y],[y,-x]];\n");
    let out = bin().arg("run").arg(&ds).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`ds`"));

    let bad = temp_file("w.txt", "ring: vars x,y; order dp; ideal x^2+y^2;\nmodule M = [[x,w]];\n");
    let out = bin().arg("run").arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("2:"));

    let out = bin().args(["der", "monomial-curve-345"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("3*x*d/dx + 4*y*d/dy + 5*z*d/dz"));
}
