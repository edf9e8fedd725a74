use proptest::prelude::*;
use qlie_core::classify::appendix::random_lifted_qlies;
use qlie_core::classify::canonical_form;
use qlie_core::io::{qlie_from_json, qlie_to_json, scalar_from_json, scalar_to_json, space_from_json, tensor_from_json, tensor_to_json};
use qlie_core::tensor::{TensorElem, Word};
use qlie_core::Field;
use serde_json::{json, Value};

fn gf(p: u64) -> Field {
    Field::prime(p).unwrap()
}

fn data(name: &str) -> Value {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/").to_string() + name;
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn flip_json(field: &str, beta: Value) -> Value {
    json!({"field": field, "dim": 2, "c": [[1,0,0,0],[0,0,1,0],[0,1,0,0],[0,0,0,1]], "beta": beta})
}

#[test]
fn shipped_rows_classify_to_their_row() {
    for row in 1..=8u8 {
        let q = qlie_from_json(&data(&format!("row{row}.json"))).unwrap();
        assert_eq!(canonical_form(&q).unwrap().row, row);
        assert_eq!(qlie_from_json(&qlie_to_json(&q)).unwrap(), q);
    }
}

#[test]
fn rational_strings_roundtrip() {
    let f = Field::Rationals;
    let q = qlie_from_json(&data("row7_conjugated.json")).unwrap();
    assert_eq!(q.space.c().get(0, 0), &f.ratio(11, 9).unwrap());
    let back = qlie_to_json(&q);
    assert_eq!(back["c"][0][0], json!("11/9"));
    assert_eq!(qlie_from_json(&back).unwrap(), q);
}

#[test]
fn finite_field_entries_must_be_reduced() {
    let f = gf(5);
    assert_eq!(scalar_from_json(f, &json!(4), "/x").unwrap(), f.int(4));
    for bad in [json!(5), json!(-1), json!("1/2"), json!(1.5), json!(null)] {
        let e = scalar_from_json(f, &bad, "/x").unwrap_err();
        assert_eq!(e.pointer, "/x", "{bad}");
    }
    let e = qlie_from_json(&flip_json("GF5", json!([[0, 1, 4, 0], [0, 0, 0, 7]]))).unwrap_err();
    assert_eq!(e.pointer, "/beta/1/3");
}

#[test]
fn rationals_accept_integers_and_fractions() {
    let f = Field::Rationals;
    assert_eq!(scalar_from_json(f, &json!(-3), "").unwrap(), f.int(-3));
    assert_eq!(scalar_from_json(f, &json!("6/4"), "").unwrap(), f.ratio(3, 2).unwrap());
    assert!(scalar_from_json(f, &json!("1/0"), "").is_err());
    assert_eq!(scalar_to_json(&f.ratio(-3, 6).unwrap()), json!("-1/2"));
}

#[test]
fn dimensions_are_bounded() {
    for d in [json!(0), json!(7), json!(-1), json!("2")] {
        let v = json!({"field": "Q", "dim": d, "c": [], "beta": []});
        assert_eq!(qlie_from_json(&v).unwrap_err().pointer, "/dim");
    }
    let v = json!({"field": "Q", "c": [], "beta": []});
    assert!(qlie_from_json(&v).unwrap_err().message.contains("dim"));
}

#[test]
fn shape_errors_point_at_the_row() {
    let v = json!({"field": "Q", "dim": 2, "c": [[1,0,0,0],[0,0,1],[0,1,0,0],[0,0,0,1]], "beta": [[0,0,0,0],[0,0,0,0]]});
    assert_eq!(qlie_from_json(&v).unwrap_err().pointer, "/c/1");
    let v = flip_json("Q", json!([[0, 0, 0, 0]]));
    assert_eq!(qlie_from_json(&v).unwrap_err().pointer, "/beta");
}

#[test]
fn non_braidings_and_bad_fields_are_rejected() {
    let v = json!({"field": "Q", "dim": 2, "c": [[1,0,0,0],[1,0,1,0],[0,1,0,0],[0,0,1,1]]});
    assert_eq!(space_from_json(&v).unwrap_err().pointer, "/c");
    for name in ["GF4", "GF9", "R", "gf"] {
        let v = flip_json(name, json!([[0, 0, 0, 0], [0, 0, 0, 0]]));
        assert_eq!(qlie_from_json(&v).unwrap_err().pointer, "/field", "{name}");
    }
    assert!(qlie_from_json(&json!([1, 2])).is_err());
    // GF(2) loads for linear algebra; the bracket-level operations refuse it.
    let q = qlie_from_json(&flip_json("GF2", json!([[0, 1, 1, 0], [0, 0, 0, 0]]))).unwrap();
    assert!(canonical_form(&q).is_err());
}

#[test]
fn missing_field_defaults_to_rationals() {
    let v = json!({"dim": 2, "c": [[1,0,0,0],[0,0,1,0],[0,1,0,0],[0,0,0,1]], "beta": [[0,1,-1,0],[0,0,0,0]]});
    assert_eq!(qlie_from_json(&v).unwrap().field(), Field::Rationals);
}

#[test]
fn tensor_letters_are_one_based() {
    let f = gf(7);
    let t = TensorElem::word(f, 2, Word(vec![1, 0])).scale(&f.int(3));
    let j = tensor_to_json(&t);
    assert_eq!(j, json!([{"word": [2, 1], "coeff": "3"}]));
    assert_eq!(tensor_from_json(f, 2, &j, "").unwrap(), t);
    let bad = json!([{"word": [3], "coeff": 1}]);
    assert_eq!(tensor_from_json(f, 2, &bad, "/t").unwrap_err().pointer, "/t/0/word/0");
    let bad = json!([{"word": [1]}]);
    assert!(tensor_from_json(f, 2, &bad, "").unwrap_err().message.contains("coeff"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_brackets_roundtrip(seed in any::<u64>(), p in prop::sample::select(vec![3u64, 5, 7, 11])) {
        for q in random_lifted_qlies(gf(p), 2, seed) {
            let text = serde_json::to_string(&qlie_to_json(&q)).unwrap();
            let back = qlie_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
            prop_assert_eq!(back, q);
        }
    }

    #[test]
    fn rational_scalars_roundtrip(n in -1000i64..1000, d in 1i64..1000) {
        let f = Field::Rationals;
        let s = f.ratio(n, d).unwrap();
        prop_assert_eq!(scalar_from_json(f, &scalar_to_json(&s), "").unwrap(), s);
    }
}
