use serde_json::Value;
use teich_demo::{cone_grid, family_summary, prop1_roots};

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn family_summary_genus_two() {
    let v = parse(family_summary(2, 0));
    assert_eq!(v["k"], serde_json::json!([7, 7, 7, 4]));
    assert_eq!(v["orbit_lengths"], serde_json::json!([7, 10, 6, 2]));
    assert_eq!(v["matches_closed_form"], true);
    assert_eq!(v["betti"], 2);
    // x^2 - 7x + 1
    assert!((v["stretch_factor"].as_f64().unwrap() - 6.854101966249685).abs() < 1e-8);
    assert!(parse(family_summary(1, 0))["error"].is_string());
    assert!(parse(family_summary(2, 40))["error"].is_string());
}

#[test]
fn cone_grid_marks_the_open_cone() {
    let v = parse(cone_grid(0, 3));
    let cells = v.as_array().unwrap();
    assert_eq!(cells.len(), 49);
    for c in cells {
        let (s, y) = (c["s"].as_i64().unwrap(), c["y"].as_i64().unwrap());
        assert_eq!(c["in_cone"], y > 0 && s.abs() < y, "({s}, {y})");
    }
    let unit = cells.iter().find(|c| c["s"] == 0 && c["y"] == 1).unwrap();
    assert!((unit["stretch_factor"].as_f64().unwrap() - 6.854101966249685).abs() < 1e-8);
    assert!(parse(cone_grid(0, 0))["error"].is_string());
}

#[test]
fn prop1_root_picture() {
    let v = parse(prop1_roots(2, "1", 7));
    assert_eq!(v["polynomial"], "x^4-x^3-7*x^2-x+1");
    assert_eq!(v["is_biperron"], true);
    let lambda = v["largest_root"].as_f64().unwrap();
    assert!((lambda - 3.2319727122).abs() < 1e-8);
    for z in v["roots"].as_array().unwrap() {
        let r = z[0].as_f64().unwrap().hypot(z[1].as_f64().unwrap());
        assert!(r <= lambda + 1e-7 && r >= 1.0 / lambda - 1e-7);
    }
    assert!(parse(prop1_roots(2, "0", 3))["error"]
        .as_str()
        .unwrap()
        .contains("primitive"));
    assert!(parse(prop1_roots(2, "x", 3))["error"].is_string());
}
