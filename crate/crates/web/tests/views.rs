use grassmann_web::{cohomology_view, graph_view, polynomials_view};
use serde_json::Value;

fn parse(s: Result<String, String>) -> Value {
    serde_json::from_str(&s.expect("view succeeds")).unwrap()
}

#[test]
fn gr25_graph_views() {
    for variant in ["standard", "shifted"] {
        let v = parse(graph_view(2, 5, variant));
        assert_eq!(v["nodes"].as_array().unwrap().len(), 10);
        let edges = v["edges"].as_array().unwrap();
        assert_eq!(edges.len(), 12);
        assert_eq!(
            edges.iter().filter(|e| e["double"] == true).count(),
            6,
            "{variant}"
        );
        assert_eq!(v["levels"].as_array().unwrap().len(), 7);
    }
    let v = parse(graph_view(2, 5, "standard"));
    let top = v["nodes"].as_array().unwrap().last().unwrap();
    assert_eq!(top["letters"], serde_json::json!(["1q1", "q1q"]));
    assert_eq!(top["weight"], 3);
}

#[test]
fn gr25_groups() {
    let v = parse(cohomology_view(2, 5));
    assert_eq!(
        v["constant"],
        serde_json::json!(["ℤ", "0", "ℤ₂", "ℤ₂", "ℤ ⊕ ℤ₂", "0", "ℤ₂"])
    );
    assert_eq!(
        v["twisted"],
        serde_json::json!(["0", "ℤ₂", "ℤ", "ℤ₂", "ℤ₂", "ℤ₂", "ℤ"])
    );
    assert_eq!(
        v["homology"],
        serde_json::json!(["ℤ", "ℤ₂", "ℤ₂", "ℤ₂", "ℤ", "ℤ₂", "0"])
    );
    assert_eq!(v["orientable"], false);
}

#[test]
fn gr24_polynomials() {
    let v = parse(polynomials_view(2, 4));
    assert_eq!(v["point_count"], "q^2 + q^4");
    assert_eq!(v["poincare"], "1 + t^4");
    assert_eq!(v["euler_characteristic"], 2);
    assert_eq!(v["reciprocity"], true);
}

#[test]
fn rejects_bad_input() {
    assert!(graph_view(3, 2, "standard").is_err());
    assert!(graph_view(2, 5, "plain").is_err());
    assert!(cohomology_view(1, 13).is_err());
    assert!(polynomials_view(0, 4).is_err());
}
