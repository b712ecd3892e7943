mod common;

use proptest::prelude::*;

use weyl_core::parse::{format_element, parse_element};
use weyl_core::serial::{element_from_records, element_records};
use weyl_core::weyl::sym_power;
use weyl_core::{Field, Scalar, SymTensor, WeylElement};

use common::{oracle_element, rewrite_word, word};

fn scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=3, -6i64..=6, 1i64..=3).prop_map(|(a, b, c, d)| Scalar::from_parts(a, b, c, d))
}

fn element() -> impl Strategy<Value = WeylElement> {
    prop::collection::vec((0u32..4, 0u32..4, scalar()), 0..5).prop_map(WeylElement::from_terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn associative(x in element(), y in element(), z in element()) {
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
    }

    #[test]
    fn distributive(x in element(), y in element(), z in element()) {
        prop_assert_eq!(x.mul(&(y.clone() + z.clone())), x.mul(&y) + x.mul(&z));
    }

    #[test]
    fn jacobi(x in element(), y in element(), z in element()) {
        let j = x.bracket(&y.bracket(&z)) + y.bracket(&z.bracket(&x)) + z.bracket(&x.bracket(&y));
        prop_assert!(j.is_zero());
    }

    #[test]
    fn bracket_lowers_degree(x in element(), y in element()) {
        // [x, y] has degree at most deg x + deg y - 2
        let b = x.bracket(&y);
        if let (Some(dx), Some(dy), Some(db)) = (x.degree(), y.degree(), b.degree()) {
            prop_assert!(db + 2 <= dx + dy);
        }
    }

    #[test]
    fn record_round_trip(x in element()) {
        prop_assert_eq!(element_from_records(&element_records(&x)).unwrap(), x);
    }

    #[test]
    fn weight_parts_sum_back(x in element()) {
        let total = x.weight_decompose().into_iter().fold(WeylElement::zero(), |acc, c| acc + c.value);
        prop_assert_eq!(total, x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn text_round_trip(x in element()) {
        prop_assert_eq!(parse_element(&format_element(&x)).unwrap(), x);
    }
}

#[test]
fn longer_words_match_rewriting() {
    // three factors, checked against the word oracle directly
    for (a, b, c) in [
        ((2, 3), (4, 1), (1, 2)),
        ((0, 5), (5, 0), (0, 3)),
        ((3, 3), (3, 3), (1, 1)),
    ] {
        let got = WeylElement::monomial(a.0, a.1)
            .mul(&WeylElement::monomial(b.0, b.1))
            .mul(&WeylElement::monomial(c.0, c.1));
        let w = word(a.0, a.1) + &word(b.0, b.1) + &word(c.0, c.1);
        assert_eq!(got, oracle_element(&rewrite_word(&w)));
    }
}

#[test]
fn basic_relations() {
    let (p, q) = (WeylElement::p(), WeylElement::q());
    assert_eq!(p.bracket(&q), WeylElement::one());
    assert_eq!(q.mul(&p), parse_element("p*q - 1").unwrap());
    // [p, q^n] = n q^(n-1)
    assert_eq!(p.bracket(&q.pow(5)), WeylElement::term(0, 4, Scalar::from_i64(5)));
    assert_eq!(q.bracket(&p.pow(3)), WeylElement::term(2, 0, Scalar::from_i64(-3)));
}

#[test]
fn symmetrised_powers() {
    // (p q)_sym = (pq + qp)/2 = pq - 1/2
    assert_eq!(sym_power::<Scalar>(1, 1), parse_element("p*q - 1/2").unwrap());
    // the symmetrisation of p^i q^j is the average over all orderings
    let avg = ["ppq", "pqp", "qpp"]
        .iter()
        .map(|w| oracle_element(&rewrite_word(w)))
        .fold(WeylElement::zero(), |acc, x| acc + x)
        .scale(&Scalar::from_ratio(1, 3));
    assert_eq!(sym_power::<Scalar>(2, 1), avg);
    let t = SymTensor::new(vec![
        (Scalar::from_i64(1), Scalar::from_i64(0)),
        (Scalar::from_i64(0), Scalar::from_i64(1)),
    ]);
    assert_eq!(t.symmetrize(), sym_power(1, 1));
}
