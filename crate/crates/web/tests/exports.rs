use absorb_web::{detail_json, lattice_json, localize_json, DEMO_MAX_ORDER};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn z4_lattice_is_a_chain() {
    let v = parse(lattice_json(4, "4", "1", "second").unwrap());
    assert_eq!(v["nodes"].as_array().unwrap().len(), 3);
    assert_eq!(v["edges"], serde_json::json!([[0, 1], [1, 2]]));
    // 2Z_4 is the only second submodule of Z_4
    let second: Vec<u64> =
        v["nodes"].as_array().unwrap().iter().filter(|n| n["holds"] == true).map(|n| n["size"].as_u64().unwrap()).collect();
    assert_eq!(second, vec![2]);
}

#[test]
fn hasse_edges_cover_in_size_order() {
    let v = parse(lattice_json(36, "4, 9", "5", "s2as").unwrap());
    let nodes = v["nodes"].as_array().unwrap();
    assert_eq!(nodes.len(), 9);
    for e in v["edges"].as_array().unwrap() {
        let (lo, hi) = (e[0].as_u64().unwrap() as usize, e[1].as_u64().unwrap() as usize);
        assert!(nodes[lo]["size"].as_u64() < nodes[hi]["size"].as_u64());
    }
}

#[test]
fn detail_lists_every_predicate() {
    let v = parse(detail_json(4, "4", "1", 2).unwrap());
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), absorb_core::Predicate::ALL.len());
    assert_eq!(v["elements"].as_array().unwrap().len(), 4);
    assert!(detail_json(4, "4", "1", 3).is_err());
}

#[test]
fn localizing_at_an_idempotent_kills_its_complement() {
    // over Z_6 with S = {1, 3}, S^-1 Z_6 = 3 Z_6
    let v = parse(localize_json(6, "6", "3").unwrap());
    assert_eq!(v["s"], serde_json::json!([1, 3]));
    assert_eq!(v["local_module_order"], 2);
    assert_eq!(v["kernel"], serde_json::json!(["0", "2", "4"]));
}

#[test]
fn bad_input_is_reported() {
    assert!(lattice_json(4, "", "1", "s2as").is_err());
    assert!(lattice_json(4, "4", "x", "s2as").is_err());
    assert!(lattice_json(4, "4", "1", "nope").is_err());
    assert!(lattice_json(4, "3", "1", "s2as").is_err());
    assert!(lattice_json(2, &"2,".repeat(9), "1", "s2as").unwrap_err().contains(&DEMO_MAX_ORDER.to_string()));
}
