use heffter_demo::{bound, random_search, verify_certificate};
use serde_json::Value;

const Q73: &str = r#"{"q":73,"k":4,"r":4,"primitive_root":5,"signs":[0,1,0,0],"rows":[[1,68,25,52],[1,53,49,43],[1,33,50,62],[1,59,35,51]]}"#;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn verify_expands_and_builds_array() {
    let v = parse(verify_certificate(Q73));
    assert_eq!(v["ok"], true);
    assert_eq!(v["report"], "i: ok, ii: ok, iii: ok");
    assert_eq!(v["simple"], true);
    assert_eq!(v["v"], 36);
    assert!(v["space"].as_array().unwrap().iter().all(|a| a["ok"] == true));
    assert_eq!(v["classes"].as_array().unwrap().len(), 4);
    let cells = v["array"]["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 9);
    assert_eq!(cells[0][0], 1);
    assert_eq!(v["array"]["valid"], true);
}

#[test]
fn verify_reports_problems() {
    let v = parse(verify_certificate(&Q73.replace("[1,68,25,52]", "[1,68,25,53]")));
    assert_eq!(v["ok"], false);
    assert!(v["report"].as_str().unwrap().starts_with("i: FAIL"));
    assert!(v.get("space").is_none());
    assert_eq!(parse(verify_certificate("nonsense"))["ok"], false);
}

#[test]
fn search_then_verify() {
    let v = parse(random_search(157, 6, "standard", 6, 3));
    assert_eq!(v["ok"], true, "{v}");
    let again = parse(random_search(157, 6, "standard", 6, 3));
    assert_eq!(v, again);
    let checked = parse(verify_certificate(v["certificate"].as_str().unwrap()));
    assert_eq!(checked["ok"], true);
    assert_eq!(checked["simple"], true);

    assert_eq!(parse(random_search(73, 4, "1,0,0,0", 2, 0))["ok"], false);
    assert_eq!(parse(random_search(73, 4, "x", 2, 0))["ok"], false);
    assert_eq!(parse(random_search(75, 4, "standard", 2, 0))["ok"], false);
}

#[test]
fn bound_values() {
    let v = parse(bound(3, 2, 919));
    assert_eq!(v["q_bound"], "910.264926");
    assert_eq!(v["simplified"], 1296);
    assert_eq!(v["above"], true);
    assert!(parse(bound(3, 1, 0)).get("above").is_none());
    assert_eq!(parse(bound(2, 1, 0))["ok"], false);
}
