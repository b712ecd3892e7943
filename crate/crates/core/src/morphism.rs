//! Endomorphisms of `A₁` given by the images of `p` and `q`, the elementary
//! automorphisms, exponentials of inner derivations, and the explicit group
//! families that act on the solvable subalgebras.

use std::fmt;

use thiserror::Error;

use crate::field::Field;
use crate::weyl::Element;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("images do not satisfy [p', q'] = 1")]
    BracketNotOne,
    #[error("supplied inverse images do not invert the map")]
    InverseMismatch,
    #[error("scale factor must be nonzero")]
    ZeroScale,
    #[error("morphism carries no inverse")]
    NotInvertible,
    #[error("ad(z) not nilpotent on the argument within {0} steps")]
    NotLocallyNilpotent(usize),
    #[error("group elements have different index lists")]
    IndexMismatch,
    #[error("group elements have different sizes")]
    SizeMismatch,
    #[error("indices must be strictly increasing positive integers")]
    BadIndices,
    #[error("matrix is not unimodular")]
    NotUnimodular,
}

/// An algebra endomorphism, optionally with the images of its inverse.
#[derive(Clone, PartialEq, Eq)]
pub struct Morphism<F> {
    image_p: Element<F>,
    image_q: Element<F>,
    inverse: Option<(Element<F>, Element<F>)>,
}

fn check_bracket<F: Field>(p: &Element<F>, q: &Element<F>) -> Result<(), MorphismError> {
    if p.bracket(q) == Element::one() {
        Ok(())
    } else {
        Err(MorphismError::BracketNotOne)
    }
}

/// Pushes `x` through the substitution `p ↦ ip, q ↦ iq`.
fn substitute<F: Field>(ip: &Element<F>, iq: &Element<F>, x: &Element<F>) -> Element<F> {
    let (mut max_i, mut max_j) = (0, 0);
    for m in x.terms().keys() {
        max_i = max_i.max(m.i);
        max_j = max_j.max(m.j);
    }
    let powers = |e: &Element<F>, n: u32| {
        let mut v = vec![Element::one()];
        for k in 0..n as usize {
            let next = v[k].mul(e);
            v.push(next);
        }
        v
    };
    let pp = powers(ip, max_i);
    let qp = powers(iq, max_j);
    let mut out = Element::zero();
    for (m, c) in x.terms() {
        out.add_scaled(&pp[m.i as usize].mul(&qp[m.j as usize]), c);
    }
    out
}

impl<F: Field> Morphism<F> {
    /// An endomorphism without inverse; only `[p', q'] = 1` is checked.
    pub fn new(image_p: Element<F>, image_q: Element<F>) -> Result<Self, MorphismError> {
        check_bracket(&image_p, &image_q)?;
        Ok(Morphism {
            image_p,
            image_q,
            inverse: None,
        })
    }

    /// An automorphism; both composites are checked to be the identity.
    pub fn with_inverse(
        image_p: Element<F>,
        image_q: Element<F>,
        inv_p: Element<F>,
        inv_q: Element<F>,
    ) -> Result<Self, MorphismError> {
        check_bracket(&image_p, &image_q)?;
        check_bracket(&inv_p, &inv_q)?;
        let p = Element::p();
        let q = Element::q();
        if substitute(&image_p, &image_q, &inv_p) != p
            || substitute(&image_p, &image_q, &inv_q) != q
            || substitute(&inv_p, &inv_q, &image_p) != p
            || substitute(&inv_p, &inv_q, &image_q) != q
        {
            return Err(MorphismError::InverseMismatch);
        }
        Ok(Morphism {
            image_p,
            image_q,
            inverse: Some((inv_p, inv_q)),
        })
    }

    pub fn identity() -> Self {
        Morphism {
            image_p: Element::p(),
            image_q: Element::q(),
            inverse: Some((Element::p(), Element::q())),
        }
    }

    /// `p ↦ p, q ↦ q + λ p^n`.
    pub fn phi(n: u32, lambda: F) -> Self {
        let shift = |l: F| Element::q() + Element::term(n, 0, l);
        Morphism {
            image_p: Element::p(),
            image_q: shift(lambda.clone()),
            inverse: Some((Element::p(), shift(-lambda))),
        }
    }

    /// `p ↦ p + λ q^n, q ↦ q`.
    pub fn phi_prime(n: u32, lambda: F) -> Self {
        let shift = |l: F| Element::p() + Element::term(0, n, l);
        Morphism {
            image_p: shift(lambda.clone()),
            image_q: Element::q(),
            inverse: Some((shift(-lambda), Element::q())),
        }
    }

    /// `p ↦ u⁻¹ p, q ↦ u q`; multiplies `p^i q^j` by `u^{j-i}`.
    pub fn scale(u: F) -> Result<Self, MorphismError> {
        let inv = u.inv().ok_or(MorphismError::ZeroScale)?;
        Ok(Morphism {
            image_p: Element::term(1, 0, inv.clone()),
            image_q: Element::term(0, 1, u.clone()),
            inverse: Some((Element::term(1, 0, u), Element::term(0, 1, inv))),
        })
    }

    /// The automorphism `exp(ad z)`, with inverse `exp(-ad z)`. Requires
    /// `ad z` to be locally nilpotent on `p` and `q`.
    pub fn exp_ad(z: &Element<F>, max_iter: usize) -> Result<Self, MorphismError> {
        let p = Element::p();
        let q = Element::q();
        let nz = -z.clone();
        Ok(Morphism {
            image_p: exp_ad(z, &p, max_iter)?,
            image_q: exp_ad(z, &q, max_iter)?,
            inverse: Some((exp_ad(&nz, &p, max_iter)?, exp_ad(&nz, &q, max_iter)?)),
        })
    }

    pub fn image_p(&self) -> &Element<F> {
        &self.image_p
    }

    pub fn image_q(&self) -> &Element<F> {
        &self.image_q
    }

    pub fn inverse_images(&self) -> Option<&(Element<F>, Element<F>)> {
        self.inverse.as_ref()
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse.is_some()
    }

    pub fn apply(&self, x: &Element<F>) -> Element<F> {
        substitute(&self.image_p, &self.image_q, x)
    }

    /// `self ∘ other`: applies `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        let inverse = match (&self.inverse, &other.inverse) {
            (Some((sp, sq)), Some((op, oq))) => Some((substitute(op, oq, sp), substitute(op, oq, sq))),
            _ => None,
        };
        Morphism {
            image_p: self.apply(&other.image_p),
            image_q: self.apply(&other.image_q),
            inverse,
        }
    }

    pub fn invert(&self) -> Result<Self, MorphismError> {
        let (ip, iq) = self.inverse.clone().ok_or(MorphismError::NotInvertible)?;
        Ok(Morphism {
            image_p: ip,
            image_q: iq,
            inverse: Some((self.image_p.clone(), self.image_q.clone())),
        })
    }

    /// Equality as maps, ignoring whether an inverse is stored.
    pub fn same_map(&self, other: &Self) -> bool {
        self.image_p == other.image_p && self.image_q == other.image_q
    }

    pub fn is_identity(&self) -> bool {
        self.image_p == Element::p() && self.image_q == Element::q()
    }
}

impl<F: Field> fmt::Display for Morphism<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p -> {}; q -> {}", self.image_p, self.image_q)
    }
}

impl<F: Field> fmt::Debug for Morphism<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Morphism({self})")
    }
}

/// `Σ_k ad(z)^k(x) / k!`, stopping at the first vanishing power.
pub fn exp_ad<F: Field>(z: &Element<F>, x: &Element<F>, max_iter: usize) -> Result<Element<F>, MorphismError> {
    let mut sum = x.clone();
    let mut term = x.clone();
    for k in 1..=max_iter {
        term = z.bracket(&term).scale(&F::from_i64(k as i64).inv().unwrap());
        if term.is_zero() {
            return Ok(sum);
        }
        sum = sum + term.clone();
    }
    Err(MorphismError::NotLocallyNilpotent(max_iter))
}

fn factorial<F: Field>(n: u32) -> F {
    (1..=n).fold(F::one(), |acc, k| acc * F::from_i64(k as i64))
}

/// `α̂₁(g)` for `g = (a1 a2; a3 a4)`: `p ↦ a2 q + a4 p, q ↦ a1 q + a3 p`.
pub fn alpha1_hat<F: Field>(a: [F; 4]) -> Result<Morphism<F>, MorphismError> {
    let [a1, a2, a3, a4] = a;
    if a1.clone() * a4.clone() - a2.clone() * a3.clone() != F::one() {
        return Err(MorphismError::NotUnimodular);
    }
    let lin = |x2: &F, x4: &F, x1: &F, x3: &F| {
        (
            Element::term(0, 1, x2.clone()) + Element::term(1, 0, x4.clone()),
            Element::term(0, 1, x1.clone()) + Element::term(1, 0, x3.clone()),
        )
    };
    let (fp, fq) = lin(&a2, &a4, &a1, &a3);
    // g⁻¹ = (a4 -a2; -a3 a1)
    let (ip, iq) = lin(&-a2.clone(), &a1, &a4, &-a3.clone());
    Ok(Morphism {
        image_p: fp,
        image_q: fq,
        inverse: Some((ip, iq)),
    })
}

/// `α̂₂(b) = exp(ad(b1 q + b2 p))`: `p ↦ p - b1, q ↦ q + b2`.
pub fn alpha2_hat<F: Field>(b: [F; 2]) -> Morphism<F> {
    let [b1, b2] = b;
    let tr = |x: F, y: F| (Element::p() - Element::constant(x), Element::q() + Element::constant(y));
    let (fp, fq) = tr(b1.clone(), b2.clone());
    let (ip, iq) = tr(-b1, -b2);
    Morphism {
        image_p: fp,
        image_q: fq,
        inverse: Some((ip, iq)),
    }
}

/// `α̂₁(g) ∘ α̂₂(b)`, the action of `SL(2) ⋉ ℂ²`.
pub fn sl2_semidirect_aut<F: Field>(g: [F; 4], b: [F; 2]) -> Result<Morphism<F>, MorphismError> {
    Ok(alpha1_hat(g)?.compose(&alpha2_hat(b)))
}

/// A point of the group acting on `r(i₁,…,iₙ)`, with `s` standing for `e^v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RGroupElement<F> {
    pub a: Vec<F>,
    pub s: F,
    pub indices: Vec<u32>,
}

impl<F: Field> RGroupElement<F> {
    pub fn new(a: Vec<F>, s: F, indices: Vec<u32>) -> Result<Self, MorphismError> {
        if s.is_zero() {
            return Err(MorphismError::ZeroScale);
        }
        if a.len() != indices.len() {
            return Err(MorphismError::SizeMismatch);
        }
        if indices.first().is_some_and(|&i| i == 0) || indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(MorphismError::BadIndices);
        }
        Ok(RGroupElement { a, s, indices })
    }

    pub fn identity(indices: Vec<u32>) -> Result<Self, MorphismError> {
        Self::new(vec![F::zero(); indices.len()], F::one(), indices)
    }

    /// `a″_k = a_k + a′_k s^{-i_k}`, `s″ = s s′`.
    pub fn mul(&self, other: &Self) -> Result<Self, MorphismError> {
        if self.indices != other.indices {
            return Err(MorphismError::IndexMismatch);
        }
        let a = self
            .a
            .iter()
            .zip(&other.a)
            .zip(&self.indices)
            .map(|((x, y), &i)| x.clone() + y.clone() * self.s.powi(-(i as i64)).unwrap())
            .collect();
        Ok(RGroupElement {
            a,
            s: self.s.clone() * other.s.clone(),
            indices: self.indices.clone(),
        })
    }

    pub fn inverse(&self) -> Self {
        RGroupElement {
            a: self
                .a
                .iter()
                .zip(&self.indices)
                .map(|(x, &i)| -x.clone() * self.s.pow(i))
                .collect(),
            s: self.s.inv().unwrap(),
            indices: self.indices.clone(),
        }
    }

    fn images(&self) -> (Element<F>, Element<F>) {
        let mut inner = Element::q();
        for (a, &i) in self.a.iter().zip(&self.indices) {
            inner.add_term(crate::weyl::Monomial::new(i - 1, 0), a.clone() / factorial::<F>(i - 1));
        }
        (Element::term(1, 0, self.s.inv().unwrap()), inner.scale(&self.s))
    }

    /// `p ↦ s⁻¹ p, q ↦ s (q + Σ a_k p^{i_k - 1} / (i_k - 1)!)`.
    pub fn to_aut(&self) -> Morphism<F> {
        let (fp, fq) = self.images();
        let (ip, iq) = self.inverse().images();
        Morphism {
            image_p: fp,
            image_q: fq,
            inverse: Some((ip, iq)),
        }
    }
}

/// A point of the group acting on `L̃ₙ`, with `s` standing for `e^v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LTildeGroupElement<F> {
    pub a: Vec<F>,
    pub t: F,
    pub s: F,
}

impl<F: Field> LTildeGroupElement<F> {
    pub fn new(a: Vec<F>, t: F, s: F) -> Result<Self, MorphismError> {
        if s.is_zero() {
            return Err(MorphismError::ZeroScale);
        }
        Ok(LTildeGroupElement { a, t, s })
    }

    pub fn identity(n: usize) -> Self {
        LTildeGroupElement {
            a: vec![F::zero(); n],
            t: F::zero(),
            s: F::one(),
        }
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    /// `a″_k = a_k s′^{n-k} + Σ_{j<k} t^{k-j}/(k-j)! a′_j s′^{-(k-j)} + a′_k`,
    /// `t″ = t′ + t s′⁻¹`, `s″ = s s′`.
    pub fn mul(&self, other: &Self) -> Result<Self, MorphismError> {
        let n = self.n();
        if other.n() != n {
            return Err(MorphismError::SizeMismatch);
        }
        let sp = &other.s;
        let mut a = Vec::with_capacity(n);
        for k in 1..=n {
            let mut x = self.a[k - 1].clone() * sp.pow((n - k) as u32) + other.a[k - 1].clone();
            for j in 1..k {
                let d = (k - j) as u32;
                x = x + self.t.pow(d) / factorial::<F>(d) * other.a[j - 1].clone() * sp.powi(-(d as i64)).unwrap();
            }
            a.push(x);
        }
        Ok(LTildeGroupElement {
            a,
            t: other.t.clone() + self.t.clone() * sp.inv().unwrap(),
            s: self.s.clone() * sp.clone(),
        })
    }

    fn images(&self) -> (Element<F>, Element<F>) {
        let n = self.n();
        let mut inner = Element::q();
        for k in 1..n {
            let e = (n - k - 1) as u32;
            let c = self.a[k - 1].clone() * self.s.powi(k as i64 - n as i64).unwrap() / factorial::<F>(e);
            inner.add_term(crate::weyl::Monomial::new(e, 0), c);
        }
        (
            Element::term(1, 0, self.s.inv().unwrap()) + Element::constant(self.t.clone()),
            inner.scale(&self.s),
        )
    }

    /// `p ↦ s⁻¹ p + t, q ↦ s (q + Σ_{k<n} a_k s^{k-n} p^{n-k-1} / (n-k-1)!)`.
    /// The last coordinate `a_n` does not enter the map.
    pub fn to_aut(&self) -> Morphism<F> {
        let (fp, fq) = self.images();
        // The inverse images come from pushing p, q back through the
        // triangular substitution: p = s(p' - t), then solve for q.
        let s_inv = self.s.inv().unwrap();
        let ip = (Element::p() - Element::constant(self.t.clone())).scale(&self.s);
        let lower = fq.scale(&s_inv) - Element::q();
        let iq = Element::q().scale(&s_inv) - substitute(&ip, &Element::q(), &lower);
        Morphism {
            image_p: fp,
            image_q: fq,
            inverse: Some((ip, iq)),
        }
    }
}

impl<F: Field> Default for Morphism<F> {
    fn default() -> Self {
        Self::identity()
    }
}
