//! Tests for the Dixmier partition `Δ₁ … Δ₅` of `A₁ ∖ ℂ`.
//!
//! Membership is decided exactly for elements of degree at most two. For
//! everything else the procedures here are semi-decisions: they either return
//! a certificate or report the bounds they explored.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::field::Field;
use crate::linalg::{nullspace, EchelonBasis, Matrix};
use crate::weyl::{Element, Monomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DixmierError {
    #[error("element has a W_{0} component; only degree ≤ 2 is decided")]
    DegreeTooHigh(u32),
    #[error("element is zero")]
    ZeroElement,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("powers are not proportional")]
    NoProportionality,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DixmierTag {
    Delta1,
    Delta2,
    Delta3,
    Delta4,
    Delta5,
    Scalar,
    Undetermined,
}

impl fmt::Display for DixmierTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate<F> {
    /// Determinant of `ad(w₂)` restricted to `W₁`.
    Determinant(F),
    /// The element is a polynomial in the named generator.
    PolynomialIn(char),
    /// A probe whose `ad`-orbit span kept growing.
    Witness(Element<F>),
    /// Exploration bound used when nothing was proved.
    Bounds { max_iter: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DixmierClass<F> {
    pub tag: DixmierTag,
    pub certificate: Option<Certificate<F>>,
}

impl<F> DixmierClass<F> {
    fn new(tag: DixmierTag, certificate: Option<Certificate<F>>) -> Self {
        DixmierClass { tag, certificate }
    }
}

/// Matrix of `ad(w)` on the basis `(p, q)` of `W₁`, columns being images.
fn ad_matrix_on_w1<F: Field>(w: &Element<F>) -> Matrix<F> {
    let ap = w.bracket(&Element::p());
    let aq = w.bracket(&Element::q());
    vec![
        vec![ap.coeff(1, 0), aq.coeff(1, 0)],
        vec![ap.coeff(0, 1), aq.coeff(0, 1)],
    ]
}

/// Decides the class of `x ∈ ℂ ⊕ W₁ ⊕ W₂`: `Δ₁` when `ad(w₂)` is nilpotent on
/// `W₁` (its trace always vanishes, so this is `det = 0`), `Δ₃` otherwise.
pub fn classify_low_degree<F: Field>(x: &Element<F>) -> Result<DixmierClass<F>, DixmierError> {
    let comps = x.wn_components();
    if let Some(&top) = comps.keys().next_back() {
        if top > 2 {
            return Err(DixmierError::DegreeTooHigh(top));
        }
    }
    if x.is_scalar() {
        return Ok(DixmierClass::new(DixmierTag::Scalar, None));
    }
    let w2 = comps.get(&2).cloned().unwrap_or_else(Element::zero);
    let m = ad_matrix_on_w1(&w2);
    let det = m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone();
    let tag = if det.is_zero() {
        DixmierTag::Delta1
    } else {
        DixmierTag::Delta3
    };
    Ok(DixmierClass::new(tag, Some(Certificate::Determinant(det))))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FTest<F> {
    /// `span{ad(z)^k a}` closed up at this dimension; the basis spans it.
    Stabilized { dim: usize, basis: Vec<Element<F>> },
    /// Dimensions seen at each step, strictly increasing.
    NotStabilized { dims: Vec<usize> },
}

impl<F> FTest<F> {
    pub fn is_stabilized(&self) -> bool {
        matches!(self, FTest::Stabilized { .. })
    }
}

/// Grows the Krylov span of `a` under `ad(z)` until a bracket falls back into
/// it or `max_iter` brackets have been taken.
pub fn f_test<F: Field>(z: &Element<F>, a: &Element<F>, max_iter: usize) -> FTest<F> {
    let mut span = EchelonBasis::new();
    let mut dims = Vec::new();
    if !a.is_zero() {
        span.insert_element(a);
    }
    dims.push(span.dim());
    let mut v = a.clone();
    for _ in 0..max_iter {
        v = z.bracket(&v);
        if span.contains_element(&v) {
            return FTest::Stabilized {
                dim: span.dim(),
                basis: span.basis_elements(),
            };
        }
        span.insert_element(&v);
        dims.push(span.dim());
    }
    FTest::NotStabilized { dims }
}

/// Every monomial of total degree at most `d`, in printing order.
pub fn monomials_up_to(d: u32) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = (0..=d)
        .flat_map(|n| (0..=n).map(move |i| Monomial::new(i, n - i)))
        .collect();
    out.sort();
    out
}

/// Basis of `{v : deg v ≤ d, [x, v] = λ v}`. The bracket is taken in full, so
/// each returned vector is an exact eigenvector in `A₁`.
pub fn eigenvectors_truncated<F: Field>(x: &Element<F>, lambda: &F, d: u32) -> Vec<Element<F>> {
    let unknowns = monomials_up_to(d);
    let images: Vec<Element<F>> = unknowns
        .iter()
        .map(|m| {
            let e = Element::monomial(m.i, m.j);
            x.bracket(&e) - e.scale(lambda)
        })
        .collect();
    let rows: BTreeSet<Monomial> = images.iter().flat_map(|e| e.terms().keys().copied()).collect();
    let matrix: Matrix<F> = rows
        .iter()
        .map(|r| {
            images
                .iter()
                .map(|e| e.terms().get(r).cloned().unwrap_or_else(F::zero))
                .collect()
        })
        .collect();
    let solutions: Vec<Element<F>> = if rows.is_empty() {
        unknowns.iter().map(|m| Element::monomial(m.i, m.j)).collect()
    } else {
        nullspace(&matrix, unknowns.len())
            .into_iter()
            .map(|v| Element::from_terms(unknowns.iter().zip(v).map(|(m, c)| (m.i, m.j, c))))
            .collect()
    };
    EchelonBasis::from_elements(&solutions).basis_elements()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Exponentiable<F> {
    Yes(DixmierClass<F>),
    /// `ad(x)`-orbit of this probe does not close up, so `x ∉ Δ₁ ∪ Δ₃`.
    NoEvidence(Element<F>),
    Undetermined {
        max_iter: usize,
    },
}

pub fn default_probes<F: Field>() -> Vec<Element<F>> {
    vec![
        Element::p(),
        Element::q(),
        Element::monomial(1, 1),
        Element::monomial(2, 0),
        Element::monomial(0, 2),
    ]
}

/// Whether `ad(x)` integrates to a one-parameter automorphism group, i.e.
/// whether `x ∈ Δ₁ ∪ Δ₃`.
pub fn is_exponentiable<F: Field>(
    x: &Element<F>,
    probes: &[Element<F>],
    max_iter: usize,
) -> Result<Exponentiable<F>, DixmierError> {
    if x.is_zero() {
        return Err(DixmierError::ZeroElement);
    }
    if x.is_scalar() {
        return Ok(Exponentiable::Yes(DixmierClass::new(DixmierTag::Scalar, None)));
    }
    match classify_low_degree(x) {
        Ok(c) => return Ok(Exponentiable::Yes(c)),
        Err(DixmierError::DegreeTooHigh(_)) => {}
        Err(e) => return Err(e),
    }
    for (var, only) in [
        ('p', x.terms().keys().all(|m| m.j == 0)),
        ('q', x.terms().keys().all(|m| m.i == 0)),
    ] {
        if only {
            return Ok(Exponentiable::Yes(DixmierClass::new(
                DixmierTag::Delta1,
                Some(Certificate::PolynomialIn(var)),
            )));
        }
    }
    for a in probes {
        if let FTest::NotStabilized { .. } = f_test(x, a, max_iter) {
            return Ok(Exponentiable::NoEvidence(a.clone()));
        }
    }
    Ok(Exponentiable::Undetermined { max_iter })
}

/// The `ad(h)`-eigenvalue of `x`, required to be an integer.
fn integer_weight<F: Field>(h: &Element<F>, x: &Element<F>, name: &str) -> Result<i64, DixmierError> {
    let fail = |why: &str| DixmierError::PreconditionFailed(format!("{name}: {why}"));
    let (m, c) = x.leading().ok_or_else(|| fail("zero"))?;
    if x.is_scalar() {
        return Err(fail("scalar"));
    }
    let hx = h.bracket(x);
    let lambda = hx.terms().get(&m).cloned().unwrap_or_else(F::zero) / c.clone();
    if hx != x.scale(&lambda) {
        return Err(fail("not an ad(h) eigenvector"));
    }
    lambda
        .to_integer()
        .and_then(|n| i64::try_from(n).ok())
        .ok_or_else(|| fail("eigenvalue is not a rational integer"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerRelation<F> {
    pub lambda1: i64,
    pub lambda2: i64,
    /// `X₁^{|λ₂|} = a · X₂^{|λ₁|}`.
    pub a: F,
}

/// For commuting `ad(h)`-eigenvectors with integer weights, finds `a` with
/// `X₁^{|λ₂|} = a X₂^{|λ₁|}` and checks it by multiplying out.
pub fn power_relation<F: Field>(
    h: &Element<F>,
    x1: &Element<F>,
    x2: &Element<F>,
) -> Result<PowerRelation<F>, DixmierError> {
    let l1 = integer_weight(h, x1, "X1")?;
    let l2 = integer_weight(h, x2, "X2")?;
    if l1 == 0 && l2 == 0 {
        return Err(DixmierError::PreconditionFailed("both weights are zero".into()));
    }
    if !x1.bracket(x2).is_zero() {
        return Err(DixmierError::PreconditionFailed("X1 and X2 do not commute".into()));
    }
    if l1 * l2 <= 0 {
        return Err(DixmierError::NoProportionality);
    }
    let lhs = x1.pow(l2.unsigned_abs() as u32);
    let rhs = x2.pow(l1.unsigned_abs() as u32);
    let (ml, cl) = lhs.leading().ok_or(DixmierError::NoProportionality)?;
    let (mr, cr) = rhs.leading().ok_or(DixmierError::NoProportionality)?;
    if ml != mr {
        return Err(DixmierError::NoProportionality);
    }
    let a = cl.clone() / cr.clone();
    if lhs != rhs.scale(&a) {
        return Err(DixmierError::NoProportionality);
    }
    Ok(PowerRelation {
        lambda1: l1,
        lambda2: l2,
        a,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_element;
    use crate::{Scalar, WeylElement};
    use num_traits::{One, Zero};

    fn el(t: &str) -> WeylElement {
        parse_element(t).unwrap()
    }

    #[test]
    fn low_degree_examples() {
        assert_eq!(classify_low_degree(&el("p^2")).unwrap().tag, DixmierTag::Delta1);
        assert_eq!(classify_low_degree(&el("3*p*q + 7")).unwrap().tag, DixmierTag::Delta3);
        let c = classify_low_degree(&el("q^2 - p^2 + 3*q")).unwrap();
        assert_eq!(c.tag, DixmierTag::Delta3);
        assert_eq!(c.certificate, Some(Certificate::Determinant(Scalar::from_i64(-4))));
        assert_eq!(classify_low_degree(&el("p + 2")).unwrap().tag, DixmierTag::Delta1);
        assert_eq!(classify_low_degree(&el("5")).unwrap().tag, DixmierTag::Scalar);
        assert_eq!(classify_low_degree(&el("p^3")), Err(DixmierError::DegreeTooHigh(3)));
    }

    #[test]
    fn f_test_examples() {
        assert!(matches!(
            f_test(&el("p*q"), &el("p^3*q^7"), 64),
            FTest::Stabilized { dim: 1, .. }
        ));
        assert!(matches!(
            f_test(&el("p^2"), &el("q"), 64),
            FTest::Stabilized { dim: 2, .. }
        ));
        match f_test(&el("(1+p*q)*q"), &el("q"), 12) {
            FTest::NotStabilized { dims } => {
                assert!(dims.windows(2).all(|w| w[0] < w[1]));
                assert_eq!(dims.len(), 13);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn eigenvector_examples() {
        let got = eigenvectors_truncated(&el("p*q"), &Scalar::from_i64(-2), 4);
        assert_eq!(got, vec![el("p^3*q"), el("p^2")]);
        let got = eigenvectors_truncated(&el("p*q"), &Scalar::from_i64(-2), 6);
        assert_eq!(got, vec![el("p^4*q^2"), el("p^3*q"), el("p^2")]);
        assert!(eigenvectors_truncated(&el("p"), &Scalar::one(), 3).is_empty());
        let zero = eigenvectors_truncated(&el("p^2*q + q"), &Scalar::zero(), 3);
        assert!(EchelonBasis::from_elements(&zero).contains_element(&WeylElement::one()));
    }

    #[test]
    fn exponentiable_examples() {
        let p = default_probes();
        assert!(matches!(
            is_exponentiable(&el("p^3"), &p, 64).unwrap(),
            Exponentiable::Yes(DixmierClass {
                tag: DixmierTag::Delta1,
                ..
            })
        ));
        assert!(matches!(
            is_exponentiable(&el("p*q + 7"), &p, 64).unwrap(),
            Exponentiable::Yes(DixmierClass {
                tag: DixmierTag::Delta3,
                ..
            })
        ));
        assert_eq!(
            is_exponentiable(&el("(1+p*q)*q"), &p, 12).unwrap(),
            Exponentiable::NoEvidence(el("q"))
        );
        assert_eq!(
            is_exponentiable(&WeylElement::zero(), &p, 12),
            Err(DixmierError::ZeroElement)
        );
    }

    #[test]
    fn power_relation_examples() {
        let h = el("p*q");
        let r = power_relation(&h, &el("p^2"), &el("p^3")).unwrap();
        assert_eq!((r.lambda1, r.lambda2, r.a.clone()), (-2, -3, Scalar::one()));
        let r = power_relation(&h, &el("2*p^2"), &el("p^3")).unwrap();
        assert_eq!(r.a, Scalar::from_i64(8));
        let r = power_relation(&h, &el("q"), &el("q^2")).unwrap();
        assert_eq!((r.lambda1, r.lambda2, r.a), (1, 2, Scalar::one()));
        assert!(matches!(
            power_relation(&h, &el("p"), &el("q")),
            Err(DixmierError::PreconditionFailed(_))
        ));
        assert!(matches!(
            power_relation(&h, &el("p + q"), &el("p")),
            Err(DixmierError::PreconditionFailed(_))
        ));
    }
}
