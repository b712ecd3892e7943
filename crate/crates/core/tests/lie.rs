mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use weyl_core::lie::{
    catalog, filiform_normal_basis, lie_closure, normalise, recognize, verify_realization, weight_spaces, CatalogTag,
    LieError, DEFAULT_MAX_DIM,
};
use weyl_core::parse::parse_element;
use weyl_core::{Scalar, WeylElement};

use common::random_generators;

fn els(ts: &[&str]) -> Vec<WeylElement> {
    ts.iter().map(|t| parse_element(t).unwrap()).collect()
}

fn tags() -> Vec<CatalogTag> {
    let mut v = vec![
        CatalogTag::Heisenberg3,
        CatalogTag::Sl2,
        CatalogTag::Sl2xC,
        CatalogTag::Sl2SemidirectH3,
    ];
    for n in 2..=4 {
        v.push(CatalogTag::L(n));
        v.push(CatalogTag::LTilde(n));
    }
    v.push(CatalogTag::r(&[1, 3]));
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn closure_commutes_with_automorphisms(seed in any::<u64>(), k in 0usize..11) {
        let tag = tags()[k].clone();
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let (alg, real) = catalog::<Scalar>(&tag).unwrap();
        let alpha = random_generators(&mut r, 2, true);
        let moved: Vec<WeylElement> = real.unwrap().images.iter().map(|x| alpha.apply(x)).collect();
        let closed = lie_closure(&moved, DEFAULT_MAX_DIM).unwrap();
        prop_assert_eq!(closed.algebra.invariants(), alg.invariants());
        prop_assert_eq!(recognize(&closed.algebra).unwrap(), normalise(&tag));
        prop_assert!(verify_realization(&closed.algebra, closed.images.clone()).is_ok());
    }
}

#[test]
fn catalog_realisations_certify() {
    for tag in tags() {
        let (alg, real) = catalog::<Scalar>(&tag).unwrap();
        let real = real.unwrap();
        assert!(verify_realization(&alg, real.images.clone()).is_ok(), "{tag}");
    }
    assert!(catalog::<Scalar>(&CatalogTag::LTildeModC(3)).unwrap().1.is_none());
    assert!(matches!(
        catalog::<Scalar>(&CatalogTag::L(1)),
        Err(LieError::BadParams(_))
    ));
}

#[test]
fn tag_text_round_trip() {
    for t in ["L(4)", "LTilde(3)", "R(1,2,5)", "R(1,2)xC", "Sl2", "Abelian(2)"] {
        let tag: CatalogTag = t.parse().unwrap();
        assert_eq!(tag.to_string(), t);
    }
    assert_eq!(normalise(&CatalogTag::r(&[-2, -4])), CatalogTag::r(&[1, 2]));
    assert_eq!(
        normalise(&CatalogTag::r(&[0, 3])),
        CatalogTag::R {
            indices: vec![1],
            central: true
        }
    );
}

#[test]
fn wrong_realisations_are_rejected() {
    let (alg, _) = catalog::<Scalar>(&CatalogTag::Sl2).unwrap();
    assert!(verify_realization(&alg, els(&["q^2", "p^2", "p*q"])).is_err());
    assert!(verify_realization(&alg, els(&["p", "q"])).is_err());
}

#[test]
fn runaway_generators() {
    assert_eq!(
        lie_closure(&els(&["p^3", "q^2"]), 24).unwrap_err(),
        LieError::DimensionExceeded(24)
    );
    assert!(matches!(
        lie_closure(&els(&["p^2*q^2", "q"]), 12),
        Err(LieError::DimensionExceeded(12))
    ));
}

#[test]
fn filiform_and_weights_of_closures() {
    let r = lie_closure(&els(&["q", "p^3"]), DEFAULT_MAX_DIM).unwrap();
    assert_eq!(recognize(&r.algebra).unwrap(), CatalogTag::L(4));
    let b = filiform_normal_basis(&r).unwrap();
    assert_eq!(b.len(), 5);
    assert_eq!(b[4], WeylElement::one());
    let r = lie_closure(&els(&["p*q", "p", "p^2"]), DEFAULT_MAX_DIM).unwrap();
    let w = weight_spaces(&r, 0).unwrap();
    assert_eq!(w.len(), 3);
    assert_eq!(recognize(&r.algebra).unwrap(), CatalogTag::r(&[1, 2]));
}
