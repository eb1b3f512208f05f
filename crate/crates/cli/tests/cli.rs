use std::path::PathBuf;
use std::process::Command;

use tempfile::TempDir;

use teich_cli::{run, terms_json, ObpFile};
use teich_core::{ExpVec, LaurentPoly};

const EXAMPLE: &str = r#"{"sigma":[2,4,1,6,3,5],"k":[11,12,10,12,10,10]}"#;
const EXAMPLE_BASIS: &str = "[[0,0,-1,0,0,1],[0,0,-1,0,1,0]]";

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        Fixture {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn file(&self, name: &str, body: &str) -> String {
        let path: PathBuf = self.dir.path().join(name);
        std::fs::write(&path, body).unwrap();
        path.to_string_lossy().into_owned()
    }
}

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("teich").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn example_theta() -> LaurentPoly {
    let mono = |t: &[i32]| LaurentPoly::monomial(ExpVec::new(t, 0), 1);
    let middle = [
        mono(&[1, 1]),
        mono(&[1, 0]),
        LaurentPoly::constant(2, 7),
        mono(&[-1, 0]),
        mono(&[-1, -1]),
    ]
    .iter()
    .fold(LaurentPoly::zero(2), |acc, x| &acc + x);
    let (u, one) = (LaurentPoly::u(2), LaurentPoly::one(2));
    let quad = &(&(&u * &u) - &(&middle * &u)) + &one;
    (&(&u - &one).pow(3) * &quad).normalized()
}

#[test]
fn validate_exit_codes() {
    let fx = Fixture::new();
    let good = fx.file("ex.json", EXAMPLE);
    let (code, out, _) = call(&["validate", "--obp", &good]);
    assert_eq!(code, 0);
    assert_eq!(
        out.trim(),
        r#"{"first_return_ok":true,"covers_ok":true,"endpoints_ok":true,"irreducible_ok":true,"failures":[]}"#
    );
    let toy = fx.file("toy.json", r#"{"sigma":[1,2],"k":[1,1]}"#);
    let (code, out, _) = call(&["validate", "--obp", &toy]);
    assert_eq!(code, 2);
    assert!(out.contains(r#""irreducible_ok":false"#));
}

#[test]
fn poly_matches_the_worked_example() {
    let fx = Fixture::new();
    let obp = fx.file("ex.json", EXAMPLE);
    let basis = fx.file("basis.json", EXAMPLE_BASIS);
    let (code, out, err) = call(&["poly", "--obp", &obp, "--basis", &basis]);
    assert_eq!(code, 0, "{err}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let expected = serde_json::to_value(terms_json(&example_theta())).unwrap();
    assert_eq!(v["theta"], expected);
    assert_eq!(v["betti"], 3);

    // basis embedded in the OBP file gives the same bytes
    let with_basis = fx.file(
        "exb.json",
        &format!(r#"{{"sigma":[2,4,1,6,3,5],"k":[11,12,10,12,10,10],"basis":{EXAMPLE_BASIS}}}"#),
    );
    let (_, out2, _) = call(&["poly", "--obp", &with_basis]);
    assert_eq!(out, out2);
}

#[test]
fn output_is_byte_stable() {
    let fx = Fixture::new();
    let obp = fx.file("ex.json", EXAMPLE);
    let first = call(&["poly", "--obp", &obp]);
    for _ in 0..3 {
        assert_eq!(call(&["poly", "--obp", &obp]), first);
    }
}

#[test]
fn obp_file_round_trip() {
    for text in [
        EXAMPLE.to_string(),
        format!(r#"{{"sigma":[2,4,1,6,3,5],"k":[11,12,10,12,10,10],"basis":{EXAMPLE_BASIS}}}"#),
    ] {
        let parsed: ObpFile = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string(&parsed).unwrap(), text);
    }
}

#[test]
fn cone_and_specialize() {
    let fx = Fixture::new();
    let obp = fx.file("ex.json", EXAMPLE);
    let basis = fx.file("basis.json", EXAMPLE_BASIS);
    let (code, out, _) = call(&["cone", "--obp", &obp, "--basis", &basis, "--phi", "0,0,1"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), r#"{"in_cone":true,"norm":5}"#);

    let (code, out, _) = call(&[
        "specialize",
        "--obp",
        &obp,
        "--basis",
        &basis,
        "--phi",
        "0,0,1",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["text"], "x^2-11*x+1");
    assert_eq!(v["stripped_units"], 3);
    assert!((v["largest_root"].as_f64().unwrap() - 10.908_326_913_195_984).abs() < 1e-9);

    let (code, out, err) = call(&["specialize", "--obp", &obp, "--phi", "-3,0,1"]);
    assert_eq!(code, 3);
    assert!(out.is_empty());
    assert!(err.contains("outside"));
}

#[test]
fn family_verify() {
    let (code, out, _) = call(&["family", "--g", "2", "--p", "0", "--verify"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verified"], true);
    assert_eq!(v["obp"]["k"], serde_json::json!([7, 7, 7, 4]));
    let (code, out, _) = call(&["family", "--g", "2", "--p", "1"]);
    assert_eq!(code, 0);
    assert!(!out.contains("verified"));
    assert_eq!(call(&["family", "--g", "2", "--p", "17"]).0, 1);
    assert_eq!(
        call(&["family", "--g", "2", "--p", "17", "--p-max", "20"]).0,
        0
    );
    assert_eq!(call(&["family", "--g", "1", "--p", "0"]).0, 1);
}

#[test]
fn prop1_reports() {
    let (code, out, _) = call(&["prop1", "--m", "3", "--a", "1,0", "--am", "5"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["class"], serde_json::json!([2, 3]));
    assert_eq!(v["report"]["text"], "x^6-x^5-5*x^3-x+1");
    assert_eq!(v["report"]["is_biperron"], true);
    let (code, _, err) = call(&["prop1", "--m", "2", "--a", "0", "--am", "3"]);
    assert_eq!(code, 1);
    assert!(err.contains("primitive"));
    assert_eq!(call(&["prop1", "--m", "2", "--a", "1", "--am", "4"]).0, 1);
}

#[test]
fn malformed_input() {
    let fx = Fixture::new();
    let bad = fx.file("bad.json", r#"{"sigma":[1,1],"k":[1,1]}"#);
    assert_eq!(call(&["validate", "--obp", &bad]).0, 1);
    let junk = fx.file("junk.json", "not json");
    assert_eq!(call(&["poly", "--obp", &junk]).0, 1);
    let extra = fx.file("extra.json", r#"{"sigma":[1,2],"k":[1,1],"x":0}"#);
    assert_eq!(call(&["validate", "--obp", &extra]).0, 1);
    assert_eq!(call(&["validate", "--obp", "/nonexistent/file.json"]).0, 1);
    let obp = fx.file("ex.json", EXAMPLE);
    assert_eq!(call(&["cone", "--obp", &obp, "--phi", "1,2"]).0, 1);
    assert_eq!(call(&["cone", "--obp", &obp, "--phi", "a,b,c"]).0, 1);
    assert_eq!(call(&["frobnicate"]).0, 1);
    let wrong_basis = fx.file("b.json", "[[1,0,0,0,0,0],[0,1,0,0,0,0]]");
    assert_eq!(call(&["poly", "--obp", &obp, "--basis", &wrong_basis]).0, 1);
}

#[test]
fn binary_exit_codes() {
    let fx = Fixture::new();
    let toy = fx.file("toy.json", r#"{"sigma":[1,2],"k":[1,1]}"#);
    let bin = env!("CARGO_BIN_EXE_teich");
    let status = Command::new(bin)
        .args(["poly", "--obp", &toy])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(2));
    let ok = Command::new(bin)
        .args(["family", "--g", "2", "--p", "0"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).starts_with(r#"{"g":2,"p":0"#));
}
