//! Exact linear algebra: incremental echelon bases over sparse vectors, dense
//! nullspaces, characteristic polynomials and rational spectra.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::field::Field;
use crate::weyl::{Element, Monomial};

pub type SparseVec<K, F> = BTreeMap<K, F>;

/// A reduced row echelon basis of sparse vectors.
///
/// Each row is keyed by its pivot, the smallest key it contains under `K`'s
/// order, has coefficient one there, and vanishes at every other pivot. The
/// coordinates of a member of the span are its entries at the pivots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EchelonBasis<K: Ord, F> {
    rows: BTreeMap<K, SparseVec<K, F>>,
}

impl<K: Ord + Clone, F: Field> Default for EchelonBasis<K, F> {
    fn default() -> Self {
        Self::new()
    }
}

fn axpy<K: Ord + Clone, F: Field>(v: &mut SparseVec<K, F>, row: &SparseVec<K, F>, c: &F) {
    for (k, x) in row {
        let t = x.clone() * c.clone();
        match v.get_mut(k) {
            Some(old) => {
                let s = std::mem::replace(old, F::zero()) + t;
                if s.is_zero() {
                    v.remove(k);
                } else {
                    *old = s;
                }
            }
            None => {
                if !t.is_zero() {
                    v.insert(k.clone(), t);
                }
            }
        }
    }
}

impl<K: Ord + Clone, F: Field> EchelonBasis<K, F> {
    pub fn new() -> Self {
        EchelonBasis { rows: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> impl Iterator<Item = (&K, &SparseVec<K, F>)> {
        self.rows.iter()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    /// Remainder of `v` after eliminating every pivot.
    pub fn reduce(&self, v: &SparseVec<K, F>) -> SparseVec<K, F> {
        let mut v = v.clone();
        for (pivot, row) in &self.rows {
            if let Some(c) = v.get(pivot).cloned() {
                axpy(&mut v, row, &-c);
            }
        }
        v
    }

    pub fn contains(&self, v: &SparseVec<K, F>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span; returns `false` if it was already there.
    pub fn insert(&mut self, v: &SparseVec<K, F>) -> bool {
        let r = self.reduce(v);
        let Some((pivot, lead)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = lead.inv().expect("nonzero pivot");
        let r: SparseVec<K, F> = r.into_iter().map(|(k, c)| (k, c * inv.clone())).collect();
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(&pivot).cloned() {
                axpy(row, &r, &-c);
            }
        }
        self.rows.insert(pivot, r);
        true
    }

    /// Coordinates of `v` against the rows in pivot order, if `v` is in the span.
    pub fn coordinates(&self, v: &SparseVec<K, F>) -> Option<Vec<F>> {
        if !self.contains(v) {
            return None;
        }
        Some(
            self.rows
                .keys()
                .map(|k| v.get(k).cloned().unwrap_or_else(F::zero))
                .collect(),
        )
    }
}

impl<F: Field> EchelonBasis<Monomial, F> {
    pub fn from_elements<'a, I: IntoIterator<Item = &'a Element<F>>>(xs: I) -> Self {
        let mut b = Self::new();
        for x in xs {
            b.insert(x.terms());
        }
        b
    }

    pub fn insert_element(&mut self, x: &Element<F>) -> bool {
        self.insert(x.terms())
    }

    pub fn contains_element(&self, x: &Element<F>) -> bool {
        self.contains(x.terms())
    }

    pub fn element_coordinates(&self, x: &Element<F>) -> Option<Vec<F>> {
        self.coordinates(x.terms())
    }

    pub fn basis_elements(&self) -> Vec<Element<F>> {
        self.rows.values().map(|r| Element::from_map(r.clone())).collect()
    }

    /// Rows whose pivot, the leading monomial, has total degree at most `d`.
    pub fn truncated(&self, d: u32) -> Self {
        EchelonBasis {
            rows: self
                .rows
                .iter()
                .filter(|(k, _)| k.degree() <= d)
                .map(|(k, r)| (*k, r.clone()))
                .collect(),
        }
    }
}

/// Dimension of the span of `xs` together with its reduced basis.
pub fn linear_span_dim<F: Field>(xs: &[Element<F>]) -> (usize, Vec<Element<F>>) {
    let b = EchelonBasis::from_elements(xs);
    (b.dim(), b.basis_elements())
}

pub type Matrix<F> = Vec<Vec<F>>;

pub fn identity<F: Field>(n: usize) -> Matrix<F> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect())
        .collect()
}

pub fn mat_mul<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![F::zero(); m]; n];
    for i in 0..n {
        for (k, bk) in b.iter().enumerate() {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..m {
                if !bk[j].is_zero() {
                    out[i][j] = out[i][j].clone() + a[i][k].clone() * bk[j].clone();
                }
            }
        }
    }
    out
}

pub fn trace<F: Field>(a: &Matrix<F>) -> F {
    (0..a.len()).fold(F::zero(), |acc, i| acc + a[i][i].clone())
}

fn scale_matrix<F: Field>(a: &Matrix<F>, c: &F) -> Matrix<F> {
    a.iter()
        .map(|r| r.iter().map(|x| x.clone() * c.clone()).collect())
        .collect()
}

/// Basis of `{x : A x = 0}`.
pub fn nullspace<F: Field>(a: &Matrix<F>, ncols: usize) -> Vec<Vec<F>> {
    let mut m: Matrix<F> = a.to_vec();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].inv().unwrap();
        for x in m[row].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let c = m[r][col].clone();
                for k in 0..ncols {
                    let t = m[row][k].clone() * c.clone();
                    m[r][k] = m[r][k].clone() - t;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); ncols];
            v[f] = F::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// One solution `x` of `A x = b`, if any. `A` is given by rows.
pub fn solve<F: Field>(a: &Matrix<F>, b: &[F], ncols: usize) -> Option<Vec<F>> {
    let aug: Matrix<F> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(-bi.clone());
            r
        })
        .collect();
    // a kernel vector of [A | -b] with last entry 1 gives A x = b
    nullspace(&aug, ncols + 1)
        .into_iter()
        .find(|v| !v[ncols].is_zero())
        .map(|v| {
            let inv = v[ncols].inv().unwrap();
            v[..ncols].iter().map(|x| x.clone() * inv.clone()).collect()
        })
}

/// Inverse of a square matrix, or `None` if it is singular.
pub fn inverse<F: Field>(a: &Matrix<F>) -> Option<Matrix<F>> {
    let n = a.len();
    let mut m: Matrix<F> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, p);
        let inv = m[col][col].inv().unwrap();
        for x in m[col].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let c = m[r][col].clone();
                for k in 0..2 * n {
                    let t = m[col][k].clone() * c.clone();
                    m[r][k] = m[r][k].clone() - t;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn to_sparse<F: Field>(v: &[F]) -> SparseVec<usize, F> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn to_dense<F: Field>(v: &SparseVec<usize, F>, n: usize) -> Vec<F> {
    let mut out = vec![F::zero(); n];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub fn rank<F: Field>(a: &Matrix<F>, ncols: usize) -> usize {
    ncols - nullspace(a, ncols).len()
}

/// Characteristic polynomial `det(xI - A)`, coefficients from `x^0` up to the
/// monic `x^n`, by Faddeev–LeVerrier.
pub fn charpoly<F: Field>(a: &Matrix<F>) -> Vec<F> {
    let n = a.len();
    let mut c = vec![F::zero(); n + 1];
    c[n] = F::one();
    let mut m: Matrix<F> = vec![vec![F::zero(); n]; n];
    for k in 1..=n {
        let mut next = mat_mul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] = row[i].clone() + c[n - k + 1].clone();
        }
        m = next;
        let am = mat_mul(a, &m);
        c[n - k] = -trace(&am) / F::from_i64(k as i64);
    }
    c
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectrumError {
    #[error("eigenvalue ratios are not rational")]
    IrrationalSpectrum,
    #[error("characteristic polynomial coefficients too large for exact root search")]
    SpectrumTooLarge,
}

const DIVISOR_SEARCH_LIMIT: u64 = 1_000_000_000_000;

fn positive_divisors(n: &BigInt) -> Result<Vec<BigInt>, SpectrumError> {
    let n = n.abs();
    if n > BigInt::from(DIVISOR_SEARCH_LIMIT) {
        return Err(SpectrumError::SpectrumTooLarge);
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let top = n.sqrt();
    let mut d = BigInt::one();
    while d <= top {
        if (&n % &d).is_zero() {
            let e = &n / &d;
            if e != d {
                large.push(e);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

fn eval(poly: &[BigRational], x: &BigRational) -> BigRational {
    poly.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Divides by `(x - r)`, assuming `r` is a root.
fn deflate(poly: &[BigRational], r: &BigRational) -> Vec<BigRational> {
    let n = poly.len() - 1;
    let mut out = vec![BigRational::zero(); n];
    let mut carry = BigRational::zero();
    for k in (0..n).rev() {
        carry = &poly[k + 1] + &carry * r;
        out[k] = carry.clone();
    }
    out
}

/// Rational roots with multiplicity. Returns `None` if the polynomial does
/// not split into rational linear factors.
pub fn rational_roots(poly: &[BigRational]) -> Result<Option<Vec<(BigRational, usize)>>, SpectrumError> {
    let mut p: Vec<BigRational> = poly.to_vec();
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
    let mut roots: Vec<(BigRational, usize)> = Vec::new();
    let push = |roots: &mut Vec<(BigRational, usize)>, r: BigRational| match roots.iter_mut().find(|(x, _)| *x == r) {
        Some((_, m)) => *m += 1,
        None => roots.push((r, 1)),
    };
    while p.len() > 1 && p[0].is_zero() {
        p.remove(0);
        push(&mut roots, BigRational::zero());
    }
    while p.len() > 1 {
        // integer coefficients: clear denominators
        let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = p
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let ints: Vec<BigInt> = ints.into_iter().map(|c| c / &g).collect();
        let a0 = ints.first().unwrap();
        let an = ints.last().unwrap();
        let num_divs = positive_divisors(a0)?;
        let den_divs = positive_divisors(an)?;
        let mut found = None;
        'search: for d in &num_divs {
            for e in &den_divs {
                for sign in [1, -1] {
                    let r = BigRational::new(d * sign, e.clone());
                    if eval(&p, &r).is_zero() {
                        found = Some(r);
                        break 'search;
                    }
                }
            }
        }
        match found {
            Some(r) => {
                p = deflate(&p, &r);
                push(&mut roots, r);
            }
            None => return Ok(None),
        }
    }
    roots.sort();
    Ok(Some(roots))
}

fn rational_poly<F: Field>(poly: &[F]) -> Option<Vec<BigRational>> {
    poly.iter().map(F::to_rational).collect()
}

fn split_rational<F: Field>(poly: &[F]) -> Result<Option<Vec<(F, usize)>>, SpectrumError> {
    let Some(rp) = rational_poly(poly) else {
        return Ok(None);
    };
    Ok(rational_roots(&rp)?.map(|rs| rs.into_iter().map(|(r, m)| (F::from_rational(r), m)).collect()))
}

/// Eigenvalues with algebraic multiplicity, for matrices whose spectrum is a
/// scalar multiple of a rational list. This covers every grading element met
/// in practice, where eigenvalues are integer multiples of one `ρ ∈ F`.
pub fn exact_spectrum<F: Field>(a: &Matrix<F>) -> Result<Vec<(F, usize)>, SpectrumError> {
    let n = a.len();
    let chi = charpoly(a);
    if chi[..n].iter().all(Zero::is_zero) {
        return Ok(if n == 0 { vec![] } else { vec![(F::zero(), n)] });
    }
    if let Some(roots) = split_rational(&chi)? {
        return Ok(roots);
    }
    // eigenvalues λ·r with r rational: λ² is recovered from M²/tr(M²)
    let a2 = mat_mul(a, a);
    let s2 = trace(&a2);
    let s2_inv = s2.inv().ok_or(SpectrumError::IrrationalSpectrum)?;
    let normalised = scale_matrix(&a2, &s2_inv);
    let squares = split_rational(&charpoly(&normalised))?.ok_or(SpectrumError::IrrationalSpectrum)?;
    let t = squares
        .iter()
        .map(|(r, _)| r.clone())
        .find(|r| !r.is_zero())
        .ok_or(SpectrumError::IrrationalSpectrum)?;
    let lambda = (t * s2).sqrt().ok_or(SpectrumError::IrrationalSpectrum)?;
    let scaled = scale_matrix(a, &lambda.inv().unwrap());
    let roots = split_rational(&charpoly(&scaled))?.ok_or(SpectrumError::IrrationalSpectrum)?;
    let mut out: Vec<(F, usize)> = roots.into_iter().map(|(r, m)| (r * lambda.clone(), m)).collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Scalar;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn s(n: i64) -> Scalar {
        Scalar::from_i64(n)
    }

    #[test]
    fn span_examples() {
        type E = Element<Scalar>;
        let (d, _) = linear_span_dim(&[E::p(), E::q(), E::p() + E::q()]);
        assert_eq!(d, 2);
        let pq = E::monomial(1, 1);
        let (d, _) = linear_span_dim(&[E::one(), pq.clone(), pq - E::one()]);
        assert_eq!(d, 2);
        let sym = E::monomial(1, 1).scale(&s(2)) - E::one();
        let (d, _) = linear_span_dim(&[E::monomial(0, 2), E::monomial(2, 0), sym, E::one(), E::p(), E::q()]);
        assert_eq!(d, 6);
    }

    #[test]
    fn echelon_coordinates() {
        let mut b: EchelonBasis<usize, Scalar> = EchelonBasis::new();
        assert!(b.insert(&[(0, s(1)), (1, s(1))].into_iter().collect()));
        assert!(b.insert(&[(1, s(2)), (2, s(1))].into_iter().collect()));
        assert!(!b.insert(&[(0, s(2)), (1, s(4)), (2, s(1))].into_iter().collect()));
        let v: SparseVec<usize, Scalar> = [(0, s(3)), (1, s(5)), (2, s(1))].into_iter().collect();
        // v = 3·(1,1,0) + 1·(0,2,1)
        let coords = b.coordinates(&v).unwrap();
        let rows: Vec<_> = b.rows().map(|(_, r)| r.clone()).collect();
        let mut rebuilt = SparseVec::new();
        for (c, r) in coords.iter().zip(&rows) {
            axpy(&mut rebuilt, r, c);
        }
        assert_eq!(rebuilt, v);
    }

    #[test]
    fn nullspace_and_charpoly() {
        let a = vec![vec![s(1), s(2)], vec![s(2), s(4)]];
        let ns = nullspace(&a, 2);
        assert_eq!(ns, vec![vec![s(-2), s(1)]]);
        // det(x - A) = x² - 5x
        assert_eq!(charpoly(&a), vec![s(0), s(-5), s(1)]);
    }

    #[test]
    fn solving() {
        let a = vec![vec![s(1), s(1)], vec![s(1), s(-1)]];
        assert_eq!(solve(&a, &[s(3), s(1)], 2), Some(vec![s(2), s(1)]));
        let singular = vec![vec![s(1), s(1)], vec![s(2), s(2)]];
        assert_eq!(solve(&singular, &[s(1), s(3)], 2), None);
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity::<Scalar>(2));
        assert_eq!(inverse(&singular), None);
    }

    #[test]
    fn roots_with_multiplicity() {
        // (x - 1)²(x + 1/2) = x³ - 3/2 x² + 0 x + 1/2
        let p = vec![
            BigRational::new(1.into(), 2.into()),
            q(0),
            BigRational::new((-3).into(), 2.into()),
            q(1),
        ];
        let r = rational_roots(&p).unwrap().unwrap();
        assert_eq!(r, vec![(BigRational::new((-1).into(), 2.into()), 1), (q(1), 2)]);
        // x² - 2 does not split
        assert_eq!(rational_roots(&[q(-2), q(0), q(1)]).unwrap(), None);
    }

    #[test]
    fn gaussian_spectrum() {
        let i = Scalar::i();
        let a = vec![
            vec![i.clone(), s(0), s(0)],
            vec![s(0), -i.clone() * s(2), s(0)],
            vec![s(0), s(0), s(0)],
        ];
        let spec = exact_spectrum(&a).unwrap();
        assert_eq!(spec.len(), 3);
        assert!(spec.contains(&(i.clone(), 1)));
        assert!(spec.contains(&(-i * s(2), 1)));
        assert!(spec.contains(&(s(0), 1)));
        let irrational = vec![vec![s(0), s(2)], vec![s(1), s(0)]];
        assert_eq!(exact_spectrum(&irrational), Err(SpectrumError::IrrationalSpectrum));
    }
}
