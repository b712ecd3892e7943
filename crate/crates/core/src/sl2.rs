//! Realisations of sl(2) in `A₁` and the action of `Aut(A₁) × Aut(sl(2))`
//! on them.
//!
//! The basis of sl(2) is `e₊, e₋, e₀` with `[e₀, e₊] = 2e₊`,
//! `[e₀, e₋] = -2e₋`, `[e₊, e₋] = e₀`. A realisation stores the images
//! `X, Y, H` of these; elements of sl(2) are coordinate triples in the same
//! order.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::dixmier::eigenvectors_truncated;
use crate::field::Field;
use crate::linalg::EchelonBasis;
use crate::morphism::{self, Morphism, MorphismError};
use crate::weyl::Element;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    HX,
    HY,
    XY,
    NonZero,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::HX => "[H,X]=2X",
            Relation::HY => "[H,Y]=-2Y",
            Relation::XY => "[X,Y]=H",
            Relation::NonZero => "X, Y, H nonzero",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Sl2Error {
    #[error("relation {0} fails")]
    RelationFailed(Relation),
    #[error("Casimir image is not a scalar")]
    NonScalarCasimir,
    #[error("automorphism has no known inverse")]
    NotInvertible,
    #[error("matrix is not in the lower Borel subgroup (a2 must be 0)")]
    NotInBorel,
    #[error("matrix does not have determinant 1")]
    NotUnimodular,
    #[error("intertwining identity fails for {0}")]
    IntertwiningFailed(&'static str),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
}

/// An sl(2) triplet `X, Y, H` in `A₁`.
#[derive(Clone, PartialEq, Eq)]
pub struct Sl2Realization<F> {
    x: Element<F>,
    y: Element<F>,
    h: Element<F>,
}

impl<F: Field> fmt::Display for Sl2Realization<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X = {}; Y = {}; H = {}", self.x, self.y, self.h)
    }
}

impl<F: Field> fmt::Debug for Sl2Realization<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Checks the triplet relations exactly.
pub fn triplet_check<F: Field>(x: Element<F>, y: Element<F>, h: Element<F>) -> Result<Sl2Realization<F>, Sl2Error> {
    if x.is_zero() || y.is_zero() || h.is_zero() {
        return Err(Sl2Error::RelationFailed(Relation::NonZero));
    }
    let two = F::from_i64(2);
    if h.bracket(&x) != x.scale(&two) {
        return Err(Sl2Error::RelationFailed(Relation::HX));
    }
    if h.bracket(&y) != y.scale(&-two) {
        return Err(Sl2Error::RelationFailed(Relation::HY));
    }
    if x.bracket(&y) != h {
        return Err(Sl2Error::RelationFailed(Relation::XY));
    }
    Ok(Sl2Realization { x, y, h })
}

impl<F: Field> Sl2Realization<F> {
    pub fn x(&self) -> &Element<F> {
        &self.x
    }

    pub fn y(&self) -> &Element<F> {
        &self.y
    }

    pub fn h(&self) -> &Element<F> {
        &self.h
    }

    pub fn images(&self) -> [&Element<F>; 3] {
        [&self.x, &self.y, &self.h]
    }

    /// `f(c₊e₊ + c₋e₋ + c₀e₀)`
    pub fn image_of(&self, z: &[F; 3]) -> Element<F> {
        let mut out = self.x.scale(&z[0]);
        out.add_scaled(&self.y, &z[1]);
        out.add_scaled(&self.h, &z[2]);
        out
    }

    /// `α ∘ f`
    pub fn apply(&self, alpha: &Morphism<F>) -> Result<Self, Sl2Error> {
        triplet_check(alpha.apply(&self.x), alpha.apply(&self.y), alpha.apply(&self.h))
    }
}

/// `X = -½q², Y = ½p², H = ½(pq + qp) = pq - ½`.
pub fn f_i<F: Field>() -> Sl2Realization<F> {
    let half = F::from_ratio(1, 2);
    triplet_check(
        Element::term(0, 2, -half.clone()),
        Element::term(2, 0, half.clone()),
        Element::from_terms([(1, 1, F::one()), (0, 0, -half)]),
    )
    .expect("f_I is a triplet")
}

/// `X = (b + pq)q, Y = -p, H = 2pq + b`.
pub fn f_ii<F: Field>(b: F) -> Sl2Realization<F> {
    triplet_check(
        Element::from_terms([(1, 2, F::one()), (0, 1, b.clone())]),
        -Element::p(),
        Element::from_terms([(1, 1, F::from_i64(2)), (0, 0, b)]),
    )
    .expect("f_II is a triplet")
}

/// `X = -q, Y = p(b + pq), H = 2pq + b`.
pub fn f_ii_variant<F: Field>(b: F) -> Sl2Realization<F> {
    triplet_check(
        -Element::q(),
        Element::from_terms([(2, 1, F::one()), (1, 0, b.clone())]),
        Element::from_terms([(1, 1, F::from_i64(2)), (0, 0, b)]),
    )
    .expect("the f_II variant is a triplet")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    X,
    Y,
    H,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::X => "x",
            Letter::Y => "y",
            Letter::H => "h",
        })
    }
}

/// A noncommutative polynomial in `x, y, h`, standing for an element of
/// `𝒰(sl(2))`. Words are not reduced to any normal form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UWord<F> {
    terms: BTreeMap<Vec<Letter>, F>,
}

impl<F: Field> UWord<F> {
    pub fn zero() -> Self {
        UWord { terms: BTreeMap::new() }
    }

    pub fn scalar(c: F) -> Self {
        Self::word(c, &[])
    }

    pub fn word(c: F, letters: &[Letter]) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(letters.to_vec(), c);
        }
        UWord { terms }
    }

    pub fn letter(l: Letter) -> Self {
        Self::word(F::one(), &[l])
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Letter>, F> {
        &self.terms
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            let v = terms.remove(w).unwrap_or_else(F::zero) + c.clone();
            if !v.is_zero() {
                terms.insert(w.clone(), v);
            }
        }
        UWord { terms }
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero();
        for (w, x) in &self.terms {
            out = out.add(&Self::word(x.clone() * c.clone(), w));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out = out.add(&Self::word(x.clone() * y.clone(), &w));
            }
        }
        out
    }

    /// `Q = ½h² + xy + yx`
    pub fn casimir() -> Self {
        use Letter::*;
        Self::word(F::from_ratio(1, 2), &[H, H])
            .add(&Self::word(F::one(), &[X, Y]))
            .add(&Self::word(F::one(), &[Y, X]))
    }
}

impl<F: Field> fmt::Display for UWord<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (w, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            let letters: Vec<String> = w.iter().map(|l| l.to_string()).collect();
            match (w.is_empty(), c.is_one()) {
                (true, _) => write!(f, "({c})")?,
                (false, true) => f.write_str(&letters.join("*"))?,
                (false, false) => write!(f, "({c})*{}", letters.join("*"))?,
            }
        }
        Ok(())
    }
}

/// Image of `w` under the extension of `r` to `𝒰(sl(2))`: each word is
/// multiplied out in `A₁`.
pub fn eval_uword<F: Field>(r: &Sl2Realization<F>, w: &UWord<F>) -> Element<F> {
    let mut out = Element::zero();
    for (word, c) in w.terms() {
        let mut prod = Element::one();
        for l in word {
            let img = match l {
                Letter::X => &r.x,
                Letter::Y => &r.y,
                Letter::H => &r.h,
            };
            prod = prod.mul(img);
        }
        out.add_scaled(&prod, c);
    }
    out
}

/// The scalar `Q_f`.
pub fn casimir<F: Field>(r: &Sl2Realization<F>) -> Result<F, Sl2Error> {
    eval_uword(r, &UWord::casimir())
        .as_scalar()
        .ok_or(Sl2Error::NonScalarCasimir)
}

/// `g = (a₁ a₂; a₃ a₄)` with determinant one.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SL2Element<F> {
    pub a1: F,
    pub a2: F,
    pub a3: F,
    pub a4: F,
}

impl<F: Field> SL2Element<F> {
    pub fn new(a1: F, a2: F, a3: F, a4: F) -> Result<Self, Sl2Error> {
        if a1.clone() * a4.clone() - a2.clone() * a3.clone() != F::one() {
            return Err(Sl2Error::NotUnimodular);
        }
        Ok(SL2Element { a1, a2, a3, a4 })
    }

    pub fn identity() -> Self {
        SL2Element {
            a1: F::one(),
            a2: F::zero(),
            a3: F::zero(),
            a4: F::one(),
        }
    }

    /// `(0 i; i 0)`, whose adjoint action swaps `e₊` and `e₋` and negates
    /// `e₀`. Needs a square root of -1 in `F`.
    pub fn tau() -> Option<Self> {
        let i = F::from_i64(-1).sqrt()?;
        Some(SL2Element {
            a1: F::zero(),
            a2: i.clone(),
            a3: i,
            a4: F::zero(),
        })
    }

    pub fn to_array(&self) -> [F; 4] {
        [self.a1.clone(), self.a2.clone(), self.a3.clone(), self.a4.clone()]
    }

    pub fn mul(&self, o: &Self) -> Self {
        let m = |a: &F, b: &F, c: &F, d: &F| a.clone() * b.clone() + c.clone() * d.clone();
        SL2Element {
            a1: m(&self.a1, &o.a1, &self.a2, &o.a3),
            a2: m(&self.a1, &o.a2, &self.a2, &o.a4),
            a3: m(&self.a3, &o.a1, &self.a4, &o.a3),
            a4: m(&self.a3, &o.a2, &self.a4, &o.a4),
        }
    }

    pub fn inverse(&self) -> Self {
        SL2Element {
            a1: self.a4.clone(),
            a2: -self.a2.clone(),
            a3: -self.a3.clone(),
            a4: self.a1.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        SL2Element {
            a1: -self.a1.clone(),
            a2: -self.a2.clone(),
            a3: -self.a3.clone(),
            a4: -self.a4.clone(),
        }
    }

    /// `Ad(g) z = g z g⁻¹` on coordinates `(c₊, c₋, c₀)`.
    pub fn adjoint(&self, z: &[F; 3]) -> [F; 3] {
        let [cp, cm, c0] = z.clone();
        // z = (c0 cp; cm -c0)
        let z = SL2Element {
            a1: c0.clone(),
            a2: cp,
            a3: cm,
            a4: -c0,
        };
        let m = self.mul(&z).mul(&self.inverse());
        [m.a2, m.a3, m.a1]
    }
}

fn basis<F: Field>() -> [[F; 3]; 3] {
    let (o, z) = (F::one, F::zero);
    [[o(), z(), z()], [z(), o(), z()], [z(), z(), o()]]
}

/// `(α, Ad(g)) · f = α ∘ f ∘ Ad(g)⁻¹`.
pub fn group_act<F: Field>(
    alpha: &Morphism<F>,
    g: &SL2Element<F>,
    r: &Sl2Realization<F>,
) -> Result<Sl2Realization<F>, Sl2Error> {
    if !alpha.is_invertible() {
        return Err(Sl2Error::NotInvertible);
    }
    let ginv = g.inverse();
    let [x, y, h] = basis::<F>().map(|e| alpha.apply(&r.image_of(&ginv.adjoint(&e))));
    triplet_check(x, y, h)
}

/// `(α, Ad(g))` fixes `r`.
pub fn isotropy_check<F: Field>(r: &Sl2Realization<F>, alpha: &Morphism<F>, g: &SL2Element<F>) -> bool {
    group_act(alpha, g, r).is_ok_and(|s| &s == r)
}

fn check_intertwines<F: Field>(
    r: &Sl2Realization<F>,
    alpha: &Morphism<F>,
    g: &SL2Element<F>,
    name: &'static str,
) -> Result<(), Sl2Error> {
    // r ∘ Ad(g) = α ∘ r
    for e in basis::<F>() {
        if r.image_of(&g.adjoint(&e)) != alpha.apply(&r.image_of(&e)) {
            return Err(Sl2Error::IntertwiningFailed(name));
        }
    }
    Ok(())
}

/// `α̂₁(g)`: `p ↦ a₂q + a₄p`, `q ↦ a₁q + a₃p`, with `f_I ∘ Ad(g) = α̂₁(g) ∘ f_I`.
pub fn alpha1_hat<F: Field>(g: &SL2Element<F>) -> Result<Morphism<F>, Sl2Error> {
    let alpha = morphism::alpha1_hat(g.to_array())?;
    check_intertwines(&f_i(), &alpha, g, "alpha1_hat")?;
    Ok(alpha)
}

/// `β̂(g)` for `g = (a₁ 0; a₃ 1/a₁)`: `p ↦ p/a₁²`, `q ↦ a₁²(q - a₃/a₁)`,
/// with `f_II^b ∘ Ad(g) = β̂(g) ∘ f_II^b` for every `b`.
pub fn beta_hat<F: Field>(g: &SL2Element<F>) -> Result<Morphism<F>, Sl2Error> {
    if !g.a2.is_zero() {
        return Err(Sl2Error::NotInBorel);
    }
    let a1 = g.a1.clone();
    let a1sq = a1.clone() * a1.clone();
    let a1a3 = a1.clone() * g.a3.clone();
    let inv_sq = a1sq.inv().ok_or(Sl2Error::NotUnimodular)?;
    let image_p = Element::term(1, 0, inv_sq.clone());
    let image_q = Element::from_terms([(0, 1, a1sq.clone()), (0, 0, -a1a3.clone())]);
    let inv_p = Element::term(1, 0, a1sq);
    let inv_q = Element::from_terms([(0, 1, inv_sq.clone()), (0, 0, a1a3 * inv_sq)]);
    let beta = Morphism::with_inverse(image_p, image_q, inv_p, inv_q)?;
    for b in [F::zero(), F::one()] {
        check_intertwines(&f_ii(b), &beta, g, "beta_hat")?;
    }
    Ok(beta)
}

/// The substitution `w = exp(ad(x²))` of `𝒰(sl(2))`:
/// `x ↦ x`, `y ↦ y + hx + xh - 4x³`, `h ↦ h - 4x²`.
pub fn exotic_substitution<F: Field>() -> [UWord<F>; 3] {
    use Letter::*;
    let one = F::one;
    let minus_four = || F::from_i64(-4);
    [
        UWord::letter(X),
        UWord::letter(Y)
            .add(&UWord::word(one(), &[H, X]))
            .add(&UWord::word(one(), &[X, H]))
            .add(&UWord::word(minus_four(), &[X, X, X])),
        UWord::letter(H).add(&UWord::word(minus_four(), &[X, X])),
    ]
}

/// `g = f_II^1 ∘ w` for the substitution above.
pub fn exotic_g<F: Field>() -> Sl2Realization<F> {
    let f = f_ii(F::one());
    let [x, y, h] = exotic_substitution::<F>().map(|w| eval_uword(&f, &w));
    triplet_check(x, y, h).expect("an automorphism of U(sl(2)) maps triplets to triplets")
}

/// How the computed exotic realisation compares with two printed forms of
/// it. `h_display` is `2pq - 4p²q⁴ + 1`, `h_table` is `2pq + 1 - 4p⁴q²`.
#[derive(Clone, PartialEq, Eq)]
pub struct ExoticReport<F> {
    pub computed: Sl2Realization<F>,
    pub x_matches: bool,
    pub y_matches: bool,
    pub h_display_matches: bool,
    pub h_table_matches: bool,
}

impl<F: Field> fmt::Debug for ExoticReport<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExoticReport")
            .field("computed", &self.computed)
            .field("x_matches", &self.x_matches)
            .field("y_matches", &self.y_matches)
            .field("h_display_matches", &self.h_display_matches)
            .field("h_table_matches", &self.h_table_matches)
            .finish()
    }
}

pub fn exotic_report<F: Field>() -> ExoticReport<F> {
    let n = F::from_i64;
    let x = Element::from_terms([(0, 1, n(1)), (1, 2, n(1))]);
    let y = Element::from_terms([(1, 0, n(-1)), (2, 3, n(4)), (3, 6, n(-4)), (2, 5, n(12))]);
    let h_display = Element::from_terms([(1, 1, n(2)), (2, 4, n(-4)), (0, 0, n(1))]);
    let h_table = Element::from_terms([(1, 1, n(2)), (0, 0, n(1)), (4, 2, n(-4))]);
    let g = exotic_g::<F>();
    ExoticReport {
        x_matches: g.x == x,
        y_matches: g.y == y,
        h_display_matches: g.h == h_display,
        h_table_matches: g.h == h_table,
        computed: g,
    }
}

/// Result of comparing one eigenspace of `ad(H)` with `X·ℂ[H]` (weight 2)
/// or `Y·ℂ[H]` (weight -2), both cut off at total degree `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum S11Outcome<F> {
    /// The two truncated spaces coincide. This is evidence up to degree `D`,
    /// not a proof.
    InS11Pattern,
    /// An eigenvector of degree at most `D` outside the pattern span, or the
    /// other way round.
    NotS11 { witness: Element<F> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct S11Report<F> {
    pub plus: S11Outcome<F>,
    pub minus: S11Outcome<F>,
}

fn compare_side<F: Field>(h: &Element<F>, lead: &Element<F>, weight: i64, d: u32) -> S11Outcome<F> {
    let eig = EchelonBasis::from_elements(&eigenvectors_truncated(h, &F::from_i64(weight), d));
    let mut pattern = EchelonBasis::new();
    // deg(lead·Hᵏ) = deg lead + k·deg H, so the truncation is a prefix
    let mut term = lead.clone();
    while !term.is_zero() && term.degree().unwrap_or(0) <= d {
        pattern.insert_element(&term);
        if h.degree().unwrap_or(0) == 0 {
            break;
        }
        term = term.mul(h);
    }
    let extra = eig
        .basis_elements()
        .into_iter()
        .find(|v| !pattern.contains_element(v))
        .or_else(|| pattern.basis_elements().into_iter().find(|v| !eig.contains_element(v)));
    match extra {
        Some(witness) => S11Outcome::NotS11 { witness },
        None => S11Outcome::InS11Pattern,
    }
}

/// Tests `D(H, 2) = X·ℂ[H]` and `D(H, -2) = Y·ℂ[H]` on elements of degree at
/// most `d`, where `D(H, m) = {z : [H, z] = mz}`.
pub fn s11_test<F: Field>(r: &Sl2Realization<F>, d: u32) -> S11Report<F> {
    S11Report {
        plus: compare_side(&r.h, &r.x, 2, d),
        minus: compare_side(&r.h, &r.y, -2, d),
    }
}
