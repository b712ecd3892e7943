//! Normal-ordered elements of the first Weyl algebra, `pq - qp = 1`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::field::Field;

/// The basis monomial `p^i q^j`.
///
/// The order is the printing order: higher total degree first, ties broken by
/// the higher power of `p`. A `BTreeMap` keyed by monomials therefore iterates
/// leading term first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    pub i: u32,
    pub j: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { i: 0, j: 0 };

    pub fn new(i: u32, j: u32) -> Self {
        Monomial { i, j }
    }

    pub fn degree(&self) -> u32 {
        self.i + self.j
    }

    /// Eigenvalue of `ad(pq)`, i.e. `j - i`.
    pub fn weight(&self) -> i64 {
        self.j as i64 - self.i as i64
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.degree().cmp(&self.degree()).then(other.i.cmp(&self.i))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factor = |var: char, e: u32| match e {
            0 => None,
            1 => Some(var.to_string()),
            _ => Some(format!("{var}^{e}")),
        };
        let parts: Vec<String> = [factor('p', self.i), factor('q', self.j)]
            .into_iter()
            .flatten()
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

type ReorderTable = RwLock<HashMap<(u32, u32), Arc<Vec<BigInt>>>>;

fn reorder_table() -> &'static ReorderTable {
    static TABLE: OnceLock<ReorderTable> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Signed coefficients `(-1)^m C(j,m) C(k,m) m!` of `p^{k-m} q^{j-m}` in the
/// normal form of `q^j p^k`, for `m = 0..=min(j,k)`. Memoised process-wide.
pub fn reorder_coefficients(j: u32, k: u32) -> Arc<Vec<BigInt>> {
    if let Some(v) = reorder_table().read().unwrap().get(&(j, k)) {
        return Arc::clone(v);
    }
    let top = j.min(k);
    let mut out = Vec::with_capacity(top as usize + 1);
    let mut c = BigInt::one();
    for m in 0..=top {
        out.push(c.clone());
        // c_{m+1} = -c_m (j-m)(k-m)/(m+1), always exact
        c = -(c * BigInt::from(j - m) * BigInt::from(k - m)) / BigInt::from(m + 1);
    }
    let out = Arc::new(out);
    reorder_table()
        .write()
        .unwrap()
        .entry((j, k))
        .or_insert_with(|| Arc::clone(&out));
    out
}

/// A finite linear combination of normal-ordered monomials with no zero
/// coefficients stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element<F> {
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> Default for Element<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> Element<F> {
    pub fn zero() -> Self {
        Element { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::term(0, 0, c)
    }

    pub fn p() -> Self {
        Self::monomial(1, 0)
    }

    pub fn q() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(i: u32, j: u32) -> Self {
        Self::term(i, j, F::one())
    }

    pub fn term(i: u32, j: u32, c: F) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::new(i, j), c);
        }
        Element { terms }
    }

    /// Builds an element from arbitrary `(i, j, c)` triples, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (u32, u32, F)>>(it: I) -> Self {
        let mut e = Self::zero();
        for (i, j, c) in it {
            e.add_term(Monomial::new(i, j), c);
        }
        e
    }

    pub fn from_map(map: BTreeMap<Monomial, F>) -> Self {
        let mut e = Self::zero();
        for (m, c) in map {
            e.add_term(m, c);
        }
        e
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, F> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, F> {
        self.terms
    }

    pub fn coeff(&self, i: u32, j: u32) -> F {
        self.terms.get(&Monomial::new(i, j)).cloned().unwrap_or_else(F::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` when the element is the scalar `c` (including zero).
    pub fn as_scalar(&self) -> Option<F> {
        match self.terms.len() {
            0 => Some(F::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn is_scalar(&self) -> bool {
        self.as_scalar().is_some()
    }

    /// Highest total degree of a stored term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    /// Leading term in printing order.
    pub fn leading(&self) -> Option<(Monomial, &F)> {
        self.terms.iter().next().map(|(m, c)| (*m, c))
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = std::mem::replace(old, F::zero()) + c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Element {
            terms: self.terms.iter().map(|(m, x)| (*m, x.clone() * c.clone())).collect(),
        }
    }

    /// Adds `c * other` in place.
    pub fn add_scaled(&mut self, other: &Self, c: &F) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            self.add_term(*m, x.clone() * c.clone());
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut acc: BTreeMap<Monomial, F> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let xy = x.clone() * y.clone();
                // p^a.i (q^a.j p^b.i) q^b.j
                let coeffs = reorder_coefficients(a.j, b.i);
                for (m, k) in coeffs.iter().enumerate() {
                    let m = m as u32;
                    let mono = Monomial::new(a.i + b.i - m, a.j + b.j - m);
                    let c = xy.clone() * F::from_bigint(k.clone());
                    let slot = acc.entry(mono).or_insert_with(F::zero);
                    *slot = std::mem::replace(slot, F::zero()) + c;
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Element { terms: acc }
    }

    pub fn bracket(&self, other: &Self) -> Self {
        self.mul(other) - other.mul(self)
    }

    /// `ad(self)^n (y)`.
    pub fn ad_pow(&self, y: &Self, n: usize) -> Self {
        let mut out = y.clone();
        for _ in 0..n {
            if out.is_zero() {
                break;
            }
            out = self.bracket(&out);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> Element<G> {
        let mut out = Element::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, f(c));
        }
        out
    }

    /// Terms of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Element {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Splits by `ad(pq)`-weight `j - i`, highest weight first.
    pub fn weight_decompose(&self) -> Vec<WeightComponent<F>> {
        let mut by_weight: BTreeMap<i64, Element<F>> = BTreeMap::new();
        for (m, c) in &self.terms {
            by_weight.entry(m.weight()).or_default().add_term(*m, c.clone());
        }
        by_weight
            .into_iter()
            .rev()
            .map(|(weight, value)| WeightComponent { weight, value })
            .collect()
    }

    /// Decomposition along `W_n = δ(S^n W₁)`. Zero maps to the empty map.
    pub fn wn_components(&self) -> BTreeMap<u32, Element<F>> {
        let mut out = BTreeMap::new();
        let mut rest = self.clone();
        while let Some(d) = rest.degree() {
            let mut comp = Element::zero();
            for (m, c) in rest.homogeneous_part(d).terms {
                comp.add_scaled(&sym_power(m.i, m.j), &c);
            }
            rest = rest - comp.clone();
            debug_assert!(rest.degree().is_none_or(|e| e < d));
            out.insert(d, comp);
        }
        out
    }
}

/// One block of [`Element::weight_decompose`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightComponent<F> {
    pub weight: i64,
    pub value: Element<F>,
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut c = BigInt::one();
    for t in 0..k {
        c = c * BigInt::from(n - t) / BigInt::from(t + 1);
    }
    c
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `δ(p^{⊙i} ⊙ q^{⊙j})`, with leading monomial `p^i q^j`.
pub fn sym_power<F: Field>(i: u32, j: u32) -> Element<F> {
    SymTensor::new(
        std::iter::repeat_n((F::one(), F::zero()), i as usize)
            .chain(std::iter::repeat_n((F::zero(), F::one()), j as usize))
            .collect(),
    )
    .symmetrize()
}

/// A symmetric tensor `v₁ ⊙ … ⊙ vₙ` over `W₁ = span{p, q}`. Each factor is a
/// pair `(coefficient of p, coefficient of q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymTensor<F> {
    factors: Vec<(F, F)>,
}

impl<F: Field> SymTensor<F> {
    pub fn new(mut factors: Vec<(F, F)>) -> Self {
        factors.sort();
        SymTensor { factors }
    }

    pub fn factors(&self) -> &[(F, F)] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// `δ(v₁⊙…⊙vₙ) = (1/n!) Σ_σ v_σ(1)…v_σ(n)`, evaluated by polarisation:
    /// `Σ_σ v_σ(1)…v_σ(n) = Σ_{S ⊆ [n]} (-1)^{n-|S|} (Σ_{i∈S} v_i)^n`.
    /// Repeated factors are grouped so `p^{⊙i}⊙q^{⊙j}` costs `O(ij)` powers.
    pub fn symmetrize(&self) -> Element<F> {
        let n = self.factors.len() as u32;
        if n == 0 {
            return Element::one();
        }
        let mut groups: Vec<((F, F), u32)> = Vec::new();
        for v in &self.factors {
            match groups.last_mut() {
                Some((w, k)) if w == v => *k += 1,
                _ => groups.push((v.clone(), 1)),
            }
        }
        let mut total = Element::zero();
        let mut counts = vec![0u32; groups.len()];
        loop {
            let chosen: u32 = counts.iter().sum();
            if chosen > 0 {
                let mut a = F::zero();
                let mut b = F::zero();
                let mut mult = BigInt::one();
                for (((x, y), k), c) in groups.iter().zip(&counts) {
                    let cf = F::from_i64(*c as i64);
                    a = a + cf.clone() * x.clone();
                    b = b + cf * y.clone();
                    mult *= binomial(*k, *c);
                }
                if (n - chosen) % 2 == 1 {
                    mult = -mult;
                }
                let v = Element::from_terms([(1, 0, a), (0, 1, b)]);
                total.add_scaled(&v.pow(n), &F::from_bigint(mult));
            }
            // odometer over 0..=k for each group
            let mut idx = 0;
            loop {
                if idx == groups.len() {
                    return total.scale(&F::from_bigint(factorial(n)).inv().unwrap());
                }
                if counts[idx] < groups[idx].1 {
                    counts[idx] += 1;
                    break;
                }
                counts[idx] = 0;
                idx += 1;
            }
        }
    }
}

fn is_negative<F: Field>(c: &F) -> bool {
    // A coefficient prints with a leading '-' exactly when its negation does not.
    let s = c.to_string();
    s.starts_with('-') && !(-c.clone()).to_string().starts_with('-')
}

fn needs_parens(s: &str) -> bool {
    s.chars().skip(1).any(|ch| ch == '+' || ch == '-')
}

impl<F: Field> fmt::Display for Element<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let neg = is_negative(c) && !needs_parens(&c.to_string());
            let mag = if neg { -c.clone() } else { c.clone() };
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let cs = mag.to_string();
            let cs = if needs_parens(&cs) { format!("({cs})") } else { cs };
            if *m == Monomial::ONE {
                write!(f, "{cs}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{cs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<F: fmt::Debug> fmt::Debug for Element<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(m, c)| (m.to_string(), c)))
            .finish()
    }
}

impl<F: Field> Zero for Element<F> {
    fn zero() -> Self {
        Element::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<F: Field> Neg for Element<F> {
    type Output = Self;
    fn neg(self) -> Self {
        Element {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<F: Field> Neg for &Element<F> {
    type Output = Element<F>;
    fn neg(self) -> Element<F> {
        -self.clone()
    }
}

impl<F: Field> Add for Element<F> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<F: Field> Sub for Element<F> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl<F: Field> Add for &Element<F> {
    type Output = Element<F>;
    fn add(self, rhs: Self) -> Element<F> {
        self.clone() + rhs.clone()
    }
}

impl<F: Field> Sub for &Element<F> {
    type Output = Element<F>;
    fn sub(self, rhs: Self) -> Element<F> {
        self.clone() - rhs.clone()
    }
}

impl<F: Field> Mul for &Element<F> {
    type Output = Element<F>;
    fn mul(self, rhs: Self) -> Element<F> {
        Element::mul(self, rhs)
    }
}
