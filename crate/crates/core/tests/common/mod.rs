#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use weyl_core::sl2::SL2Element;
use weyl_core::{Field, Scalar, WeylElement, WeylMorphism};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Normal form of a word in `p, q` by repeatedly rewriting the leftmost
/// `qp` as `pq - 1`. Knows nothing about the library's reordering formula.
pub fn rewrite_word(word: &str) -> BTreeMap<(u32, u32), BigInt> {
    let mut pending: BTreeMap<String, BigInt> = BTreeMap::new();
    pending.insert(word.to_string(), BigInt::from(1));
    let mut done: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
    while let Some((w, c)) = pending.pop_first() {
        match w.find("qp") {
            None => {
                let i = w.chars().filter(|&ch| ch == 'p').count() as u32;
                let j = w.len() as u32 - i;
                *done.entry((i, j)).or_default() += c;
            }
            Some(at) => {
                let swapped = format!("{}pq{}", &w[..at], &w[at + 2..]);
                let dropped = format!("{}{}", &w[..at], &w[at + 2..]);
                *pending.entry(swapped).or_default() += &c;
                *pending.entry(dropped).or_default() -= &c;
            }
        }
    }
    done.retain(|_, c| *c != BigInt::from(0));
    done
}

pub fn word(i: u32, j: u32) -> String {
    "p".repeat(i as usize) + &"q".repeat(j as usize)
}

pub fn oracle_element(terms: &BTreeMap<(u32, u32), BigInt>) -> WeylElement {
    WeylElement::from_terms(terms.iter().map(|(&(i, j), c)| (i, j, Scalar::from_bigint(c.clone()))))
}

pub fn small_rational<R: Rng>(r: &mut R) -> Scalar {
    Scalar::from_ratio(r.gen_range(-9..=9), r.gen_range(1..=4))
}

pub fn nonzero_rational<R: Rng>(r: &mut R) -> Scalar {
    loop {
        let x = small_rational(r);
        if x != 0 {
            return x;
        }
    }
}

pub fn small_gaussian<R: Rng>(r: &mut R) -> Scalar {
    Scalar::from_parts(
        r.gen_range(-9..=9),
        r.gen_range(1..=4),
        r.gen_range(-9..=9),
        r.gen_range(1..=4),
    )
}

pub fn nonzero_gaussian<R: Rng>(r: &mut R) -> Scalar {
    loop {
        let x = small_gaussian(r);
        if x != 0 {
            return x;
        }
    }
}

pub fn random_element<R: Rng>(r: &mut R, max_deg: u32, terms: usize) -> WeylElement {
    WeylElement::from_terms((0..terms).map(|_| {
        let i = r.gen_range(0..=max_deg);
        let j = r.gen_range(0..=max_deg - i);
        (i, j, small_gaussian(r))
    }))
}

/// A product of elementary unipotent and diagonal matrices, so the result
/// is in SL(2) by construction.
pub fn random_sl2<R: Rng>(r: &mut R) -> SL2Element<Scalar> {
    let one = Scalar::from_i64(1);
    let zero = Scalar::from_i64(0);
    let upper = SL2Element::new(one.clone(), small_rational(r), zero.clone(), one.clone()).unwrap();
    let lower = SL2Element::new(one.clone(), zero.clone(), small_gaussian(r), one.clone()).unwrap();
    let d = nonzero_rational(r);
    let diag = SL2Element::new(d.clone(), zero.clone(), zero, d.inv().unwrap()).unwrap();
    upper.mul(&diag).mul(&lower)
}

pub fn random_borel<R: Rng>(r: &mut R) -> SL2Element<Scalar> {
    let a1 = nonzero_gaussian(r);
    let a4 = a1.inv().unwrap();
    SL2Element::new(a1, Scalar::from_i64(0), small_gaussian(r), a4).unwrap()
}

/// Composition of `len` automorphisms drawn from `phi`, `phi_prime` and
/// `scale`, with exponents 1 or 2.
pub fn random_generators<R: Rng>(r: &mut R, len: usize, with_scale: bool) -> WeylMorphism {
    let mut m = WeylMorphism::identity();
    for _ in 0..len {
        let kinds = if with_scale { 3 } else { 2 };
        let g = match r.gen_range(0..kinds) {
            0 => WeylMorphism::phi(r.gen_range(1..=2), nonzero_rational(r)),
            1 => WeylMorphism::phi_prime(r.gen_range(1..=2), nonzero_rational(r)),
            _ => WeylMorphism::scale(nonzero_gaussian(r)).unwrap(),
        };
        m = m.compose(&g);
    }
    m
}
