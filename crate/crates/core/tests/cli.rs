use std::path::Path;
use std::process::{Command, Output};

use bggc::polyforms::MonomialBasis;
use serde_json::Value;

fn bggc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bggc")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = bggc(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn golden_matrix(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("golden/matrices").join(name)).unwrap()
}

/// Hessian of each monomial of degree at most 4 in the plane, written in the
/// (u11, u12, u22) coordinates of the symmetric fiber.
fn hessian_oracle() -> String {
    let dom = MonomialBasis::get(2, 4);
    let cod = MonomialBasis::get(2, 2);
    let mut m = vec![vec![0i64; dom.len()]; cod.len() * 3];
    for (col, e) in dom.elems().iter().enumerate() {
        let (a, b) = (e[0] as i64, e[1] as i64);
        let parts = [(a * (a - 1), [2, 0]), (a * b, [1, 1]), (b * (b - 1), [0, 2])];
        for (c, (coef, lower)) in parts.into_iter().enumerate() {
            if coef != 0 {
                let target = [e[0] - lower[0], e[1] - lower[1]];
                m[cod.index_of(&target).unwrap() * 3 + c][col] = coef;
            }
        }
    }
    m.iter()
        .map(|row| row.iter().map(|x| format!("{x}/1")).collect::<Vec<_>>().join(",") + "\n")
        .collect()
}

#[test]
fn gradient_matrix_matches_golden() {
    let got = stdout(&["matrix", "--family", "derham", "--dim", "3", "--index", "0", "--degree", "1", "--format", "csv"]);
    assert_eq!(got, golden_matrix("grad_p1.csv"));
}

#[test]
fn hessian_matrix_matches_oracle_and_golden() {
    let got = stdout(&["matrix", "--named", "hessian2d", "--index", "0", "--degree", "4", "--format", "csv"]);
    assert_eq!(got, hessian_oracle());
    assert_eq!(got, golden_matrix("hessian2d_p4.csv"));
}

#[test]
fn matrix_json_has_shape_and_labels() {
    let v: Value = serde_json::from_str(&stdout(&[
        "matrix", "--named", "elasticity3d", "--index", "1", "--degree", "4", "--format", "json",
    ]))
    .unwrap();
    assert_eq!(v["rows"], 60);
    assert_eq!(v["cols"], 210);
    assert_eq!(v["domain"], "P<=4⊗S");
}

#[test]
fn derive_reports_cohomology() {
    let v: Value = serde_json::from_str(&stdout(&["derive", "--named", "elasticity3d", "--degree", "6"])).unwrap();
    assert_eq!(v["cohomology"], serde_json::json!([6, 0, 0, 0]));
    assert_eq!(v["j"], 1);
    let csv = stdout(&["derive", "--family", "altij", "--dim", "2", "--J", "0", "--format", "csv"]);
    assert!(csv.starts_with("index,fiber,cap,dim,cohomology\n"));
    assert!(!csv.contains('"'));
}

#[test]
fn derive_is_deterministic_and_writes_files() {
    let args = ["derive", "--named", "hessian3d", "--degree", "5"];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    let path = std::env::temp_dir().join(format!("bggc-cli-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let out = bggc(&[&args[..], &["--out", p]].concat());
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), a);
    std::fs::remove_file(path).unwrap();
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| bggc(args).status.code();
    assert_eq!(code(&["verify", "--suite", "projection", "--named", "elasticity3d", "--degree", "5"]), Some(0));
    assert_eq!(code(&["verify", "--suite", "appendix1", "--max-dim", "5"]), Some(0));
    assert_eq!(code(&["verify", "--suite", "projection", "--named", "conformal2d_fail"]), Some(2));
    let bad = bggc(&["derive", "--named", "conformal2d_fail"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("NoValidJ"));
    assert_eq!(code(&["matrix", "--named", "hessian3d", "--index", "7"]), Some(2));
    assert_eq!(code(&["derive", "--named", "nope"]), Some(2));
    assert_eq!(code(&["derive", "--family", "altij", "--dim", "3", "--J", "3"]), Some(2));
}

#[test]
fn verify_report_is_json() {
    let v: Value = serde_json::from_str(&stdout(&["verify", "--suite", "dimension", "--named", "divdiv3d", "--degree", "6"])).unwrap();
    assert_eq!(v["passed"], true);
    assert!(v["cases"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}
