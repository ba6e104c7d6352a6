use ybe_web::{build_json, entries_json, expand_json, verify_json};

fn value(s: &str) -> serde_json::Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn lists_six_entries() {
    assert_eq!(value(&entries_json()).as_array().unwrap().len(), 6);
}

#[test]
fn builds_sphere_matrices() {
    let v = value(&build_json(r#"{"entry":"sphere","params":{"n":2,"k":1}}"#).unwrap());
    assert_eq!(v["r"]["dims"], serde_json::json!([2, 2]));
    assert_eq!(v["g_hat"]["ring"], "rational");
}

#[test]
fn verifies_in_both_modes() {
    let req = r#"{"entry":"sphere","params":{"n":3,"k":1}}"#;
    for mode in ["exact", "sampled"] {
        let v = value(&verify_json(req, "qybe", mode, 0).unwrap());
        assert_eq!(v[0]["verdict"], "pass", "{mode}");
    }
    let v = value(&verify_json(r#"{"entry":"sphere","params":{"n":3,"k":0}}"#, "qybe", "exact", 0).unwrap());
    assert_eq!(v[0]["verdict"], "fail");
}

#[test]
fn rejects_bad_requests() {
    assert!(build_json(r#"{"entry":"sphere","params":{"n":0,"k":1}}"#).is_err());
    assert!(build_json("{").is_err());
    assert!(verify_json(r#"{"entry":"cpn","params":{"n":1}}"#, "qybe", "fast", 0).is_err());
    assert!(verify_json(r#"{"entry":"grassmann","params":{"p":3,"q":3}}"#, "qybe", "exact", 0).is_err());
}

#[test]
fn expands_to_requested_order() {
    let v = value(&expand_json(r#"{"entry":"cpn","params":{"n":1}}"#, 3).unwrap());
    assert_eq!(v.as_array().unwrap().len(), 4);
}
