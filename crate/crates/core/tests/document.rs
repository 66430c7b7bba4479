use erbalg::base::{BaseAlgebraSpec, BaseMonomial};
use erbalg::document::{parse_document, serialize_element, serialize_pair, Value};
use erbalg::hopf::HopfAlgebra;
use erbalg::shuffle::Word;
use erbalg::Error;
use proptest::prelude::*;

fn word_strategy() -> impl Strategy<Value = Word> {
    let letter = (0u32..=2, 0u32..=1).prop_map(|(i, j)| {
        let spec = BaseAlgebraSpec::new(["x", "y"], true).unwrap();
        BaseMonomial::from_exponents(&spec, vec![i, j]).unwrap()
    });
    prop::collection::vec(letter, 1..=3).prop_map(|ls| Word::new(ls).unwrap())
}

#[test]
fn serialized_text_is_stable() {
    let h = HopfAlgebra::new(BaseAlgebraSpec::scalars()).unwrap();
    let t = h.coproduct_kk(2).unwrap();
    let text = serialize_pair(h.algebra().base(), &t);
    assert!(text.contains("\"kind\": \"pair\""));
    assert_eq!(serialize_pair(h.algebra().base(), &t), text);
}

#[test]
fn parse_errors_carry_positions() {
    match parse_document("{\n\n  \"format\": [") {
        Err(Error::Parse { line, column, .. }) => {
            assert_eq!(line, 3);
            assert!(column > 0);
        }
        other => panic!("{other:?}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn elements_and_pairs_round_trip(a in word_strategy(), b in word_strategy()) {
        let h = HopfAlgebra::new(BaseAlgebraSpec::new(["x", "y"], true).unwrap()).unwrap();
        let alg = h.algebra();
        let u = alg.diamond(&alg.word(a), &alg.word(b)).unwrap();
        let doc = parse_document(&serialize_element(alg.base(), &u)).unwrap();
        prop_assert_eq!(doc.value, Value::Element(u.clone()));
        let t = h.coproduct(&u).unwrap();
        let text = serialize_pair(alg.base(), &t);
        let doc = parse_document(&text).unwrap();
        prop_assert_eq!(&doc.value, &Value::Pair(t));
        let Value::Pair(back) = &doc.value else { unreachable!() };
        prop_assert_eq!(serialize_pair(&doc.base, back), text);
    }
}
