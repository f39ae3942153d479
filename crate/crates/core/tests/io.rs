mod common;

use common::*;
use ndescent::algebra::{partial, Csa, RhoTable, Trivialisation};
use ndescent::curve::TorsionTable;
use ndescent::descent::{EmbeddingData, EpsilonTable};
use ndescent::geometry::quadrics_for_c;
use ndescent::io::*;
use ndescent::Error;
use serde_json::{json, Value};

fn reparse(v: &Value) -> Value {
    serde_json::from_str(&serde_json::to_string_pretty(v).unwrap()).unwrap()
}

#[test]
fn curve_round_trip_and_hash() {
    let c = reference_curve();
    let v = reparse(&curve_to_json(&c));
    let c2 = curve_from_json(&v).unwrap();
    assert_eq!(c2.a(), c.a());
    assert_eq!(c2.b(), c.b());
    assert_eq!(c2.field(), c.field());
    assert_eq!(curve_hash(&c2), curve_hash(&c));
    assert_ne!(curve_hash(&aux_curve()), curve_hash(&c));
    assert_eq!(curve_hash(&c).len(), 64);

    let short = json!({"kind": "curve", "field": [{"gen": "zeta3", "minpoly": ["1", "1", "1"]}], "a": "0", "b": -432});
    assert_eq!(curve_hash(&curve_from_json(&short).unwrap()), curve_hash(&c));
}

#[test]
fn malformed_inputs() {
    for bad in [
        json!({"kind": "curve", "field": "Q", "a": "0", "b": "1"}),
        json!({"kind": "curve", "field": [], "a": "x", "b": "1"}),
        json!({"kind": "curve", "field": [], "a": ["0", "1"], "b": "1"}),
        json!({"kind": "rho", "field": [], "a": "0", "b": "1"}),
        json!({"field": [], "a": "0"}),
    ] {
        assert!(matches!(curve_from_json(&bad), Err(Error::Parse(_))), "{bad}");
    }
    let reducible = json!({"kind": "curve", "field": [{"gen": "s", "minpoly": ["-4", "0", "1"]}], "a": "0", "b": "1"});
    assert!(matches!(curve_from_json(&reducible), Err(Error::ReducibleExtension { .. })));
    let singular = json!({"kind": "curve", "field": [], "a": "0", "b": "0"});
    assert!(matches!(curve_from_json(&singular), Err(Error::SingularCurve)));
}

#[test]
fn artifact_round_trips() {
    let c = reference_curve();
    let table = TorsionTable::new(&c, 3).unwrap();
    let eps = EpsilonTable::compute(&table).unwrap();
    let emb = EmbeddingData::compute(&table, &eps).unwrap();
    let z = random_z(c.field(), 9, 4);
    let z = z.scale(&z.get(0).inv().unwrap());

    let zv = reparse(&relement_to_json(&c, &z));
    assert_eq!(relement_from_json(&c, &zv).unwrap(), z);

    let rho = partial(&table, &z).unwrap();
    let rv = reparse(&rho_to_json(&table, &rho));
    assert_eq!(rho_from_json(&table, &rv).unwrap(), rho);
    assert_eq!(rv["basis"], json!([3, 1]));

    let q = quadrics_for_c(&table, &rho).unwrap();
    assert_eq!(quadrics_from_json(&table, &reparse(&quadrics_to_json(&table, &rho, &q))).unwrap(), (rho.clone(), q));

    let csa = Csa::build(&table, &eps, &rho).unwrap();
    let back = csa_from_json(&table, &reparse(&csa_to_json(&c, &csa))).unwrap();
    assert_eq!(back.constants(), csa.constants());
    assert_eq!(back.certification(), csa.certification());

    let t = Trivialisation::z_twist(&csa, &emb, &z).unwrap();
    let (csa2, t2) = triv_from_json(&table, &reparse(&triv_to_json(&c, &csa, &t))).unwrap();
    assert_eq!(t2, t);
    assert_eq!(csa2.constants(), csa.constants());

    let tv = torsion_to_json(&table);
    assert_eq!(tv["points"].as_array().unwrap().len(), 9);
    assert_eq!(tv["points"][0], Value::Null);
    let k = c.field();
    for (i, p) in tv["points"].as_array().unwrap().iter().enumerate() {
        assert_eq!(&point_from_json(k, p).unwrap(), table.point(i));
    }
    // same inputs, byte-identical output
    assert_eq!(serde_json::to_string(&rho_to_json(&table, &rho)).unwrap(), serde_json::to_string(&rv).unwrap());
}

#[test]
fn hash_mismatch_is_detected() {
    let c = reference_curve();
    let table = TorsionTable::new(&c, 3).unwrap();
    let mut v = rho_to_json(&table, &RhoTable::ones(c.field(), 9));
    v["curve_hash"] = json!("00");
    assert!(matches!(rho_from_json(&table, &v), Err(Error::CurveMismatch { .. })));
    v["kind"] = json!("csa");
    assert!(matches!(rho_from_json(&table, &v), Err(Error::Parse(_))));
}
