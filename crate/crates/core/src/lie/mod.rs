//! Finite-dimensional Lie algebras given by structure constants, and their
//! realisations inside `A₁`.

mod catalog;
mod closure;
mod filiform;
mod recognize;
mod weights;

pub use catalog::{catalog, normalise, CatalogTag};
pub use closure::{lie_closure, DEFAULT_MAX_DIM};
pub use filiform::{filiform_chain, filiform_normal_basis};
pub use recognize::recognize;
pub use weights::weight_spaces;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::field::Field;
use crate::linalg::{mat_mul, nullspace, solve, to_dense, to_sparse, trace, EchelonBasis, Matrix, SpectrumError};
use crate::weyl::Element;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    Jacobi(usize, usize, usize),
    #[error("closure exceeded {0} dimensions")]
    DimensionExceeded(usize),
    #[error("images are linearly dependent")]
    NotInjective,
    #[error("bracket [{0}, {1}] is not preserved")]
    NotHomomorphism(String, String),
    #[error("algebra is not nilpotent")]
    NotNilpotent,
    #[error("structure is not of the filiform A1 form: {0}")]
    NotInA1Form(String),
    #[error("ad of the chosen element is not diagonalisable")]
    NotDiagonalisable,
    #[error("eigenvalue ratios are not rational")]
    IrrationalSpectrum,
    #[error("spectrum too large for exact root search")]
    SpectrumTooLarge,
}

impl From<SpectrumError> for LieError {
    fn from(e: SpectrumError) -> Self {
        match e {
            SpectrumError::IrrationalSpectrum => LieError::IrrationalSpectrum,
            SpectrumError::SpectrumTooLarge => LieError::SpectrumTooLarge,
        }
    }
}

type Table<F> = BTreeMap<(usize, usize), BTreeMap<usize, F>>;

/// A Lie algebra on a labelled basis. Only brackets `[e_i, e_j]` with `i < j`
/// are stored; antisymmetry is structural and Jacobi is checked on
/// construction.
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra<F> {
    labels: Vec<String>,
    table: Table<F>,
}

impl<F: Field> std::fmt::Debug for LieAlgebra<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "LieAlgebra[{}]", self.labels.join(", "))?;
        for (i, j, k, c) in self.structure_constants() {
            writeln!(
                f,
                "  [{}, {}] ∋ {} {}",
                self.labels[i], self.labels[j], c, self.labels[k]
            )?;
        }
        Ok(())
    }
}

impl<F: Field> LieAlgebra<F> {
    /// Builds from `(i, j, k, c)` meaning `[e_i, e_j]` has `c` on `e_k`.
    /// Entries with `i > j` are read through antisymmetry; repeats add up.
    pub fn new<I>(labels: Vec<String>, brackets: I) -> Result<Self, LieError>
    where
        I: IntoIterator<Item = (usize, usize, usize, F)>,
    {
        let n = labels.len();
        let mut table: Table<F> = BTreeMap::new();
        for (i, j, k, c) in brackets {
            if i >= n || j >= n || k >= n {
                return Err(LieError::BadParams(format!("index out of range in ({i}, {j}, {k})")));
            }
            if i == j {
                if c.is_zero() {
                    continue;
                }
                return Err(LieError::BadParams(format!("[e{i}, e{i}] must vanish")));
            }
            let (a, b, c) = if i < j { (i, j, c) } else { (j, i, -c) };
            let slot = table.entry((a, b)).or_default();
            let v = slot.remove(&k).unwrap_or_else(F::zero) + c;
            if !v.is_zero() {
                slot.insert(k, v);
            }
        }
        table.retain(|_, v| !v.is_empty());
        let alg = LieAlgebra { labels, table };
        alg.check_jacobi()?;
        Ok(alg)
    }

    pub(crate) fn from_table_unchecked(labels: Vec<String>, table: Table<F>) -> Self {
        LieAlgebra { labels, table }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Nonzero structure constants `(i, j, k, c^k_{ij})` with `i < j`.
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, F)> {
        self.table
            .iter()
            .flat_map(|(&(i, j), v)| v.iter().map(move |(&k, c)| (i, j, k, c.clone())))
            .collect()
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<F> {
        let n = self.dim();
        if i == j {
            return vec![F::zero(); n];
        }
        let (a, b, neg) = if i < j { (i, j, false) } else { (j, i, true) };
        match self.table.get(&(a, b)) {
            Some(v) => {
                let d = to_dense(v, n);
                if neg {
                    d.into_iter().map(|x| -x).collect()
                } else {
                    d
                }
            }
            None => vec![F::zero(); n],
        }
    }

    pub fn bracket(&self, x: &[F], y: &[F]) -> Vec<F> {
        let n = self.dim();
        let mut out = vec![F::zero(); n];
        for (&(i, j), v) in &self.table {
            // [x, y] ∋ (x_i y_j - x_j y_i) [e_i, e_j]
            let w = x[i].clone() * y[j].clone() - x[j].clone() * y[i].clone();
            if w.is_zero() {
                continue;
            }
            for (&k, c) in v {
                out[k] = out[k].clone() + w.clone() * c.clone();
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim()];
        v[i] = F::one();
        v
    }

    /// Matrix of `ad(x)`; column `j` holds the coordinates of `[x, e_j]`.
    pub fn ad_matrix(&self, x: &[F]) -> Matrix<F> {
        let n = self.dim();
        let cols: Vec<Vec<F>> = (0..n).map(|j| self.bracket(x, &self.basis_vector(j))).collect();
        (0..n).map(|k| (0..n).map(|j| cols[j][k].clone()).collect()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.table.is_empty()
    }

    fn check_jacobi(&self) -> Result<(), LieError> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                let eij = self.bracket_basis(i, j);
                for k in j + 1..n {
                    let ek = self.basis_vector(k);
                    let ei = self.basis_vector(i);
                    let ej = self.basis_vector(j);
                    let a = self.bracket(&eij, &ek);
                    let b = self.bracket(&self.bracket_basis(j, k), &ei);
                    let c = self.bracket(&self.bracket_basis(k, i), &ej);
                    if a.iter()
                        .zip(&b)
                        .zip(&c)
                        .any(|((x, y), z)| !(x.clone() + y.clone() + z.clone()).is_zero())
                    {
                        return Err(LieError::Jacobi(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// The same algebra on the basis `f_a = Σ_b basis[a][b] e_b`.
    pub fn change_basis(&self, basis: &[Vec<F>], labels: Vec<String>) -> Result<Self, LieError> {
        let n = self.dim();
        if basis.len() != n || labels.len() != n {
            return Err(LieError::BadParams("basis size differs from dimension".into()));
        }
        // columns are the new basis vectors
        let m: Matrix<F> = (0..n).map(|r| (0..n).map(|c| basis[c][r].clone()).collect()).collect();
        if !nullspace(&m, n).is_empty() {
            return Err(LieError::BadParams("basis is singular".into()));
        }
        let mut entries = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let br = self.bracket(&basis[a], &basis[b]);
                let coords = solve(&m, &br, n).expect("invertible change of basis");
                for (k, c) in coords.into_iter().enumerate() {
                    if !c.is_zero() {
                        entries.push((a, b, k, c));
                    }
                }
            }
        }
        LieAlgebra::new(labels, entries)
    }

    /// Basis of `span{[a, b] : a ∈ xs, b ∈ ys}`.
    pub fn bracket_span(&self, xs: &[Vec<F>], ys: &[Vec<F>]) -> Vec<Vec<F>> {
        let mut e: EchelonBasis<usize, F> = EchelonBasis::new();
        for x in xs {
            for y in ys {
                e.insert(&to_sparse(&self.bracket(x, y)));
            }
        }
        subspace_rows(&e, self.dim())
    }

    pub fn full_basis(&self) -> Vec<Vec<F>> {
        (0..self.dim()).map(|i| self.basis_vector(i)).collect()
    }

    pub fn derived_algebra(&self) -> Vec<Vec<F>> {
        let all = self.full_basis();
        self.bracket_span(&all, &all)
    }

    pub fn centre(&self) -> Vec<Vec<F>> {
        let n = self.dim();
        // x ∈ Z  ⇔  Σ_i x_i [e_i, e_j] = 0 for every j
        let mut rows: Matrix<F> = Vec::new();
        for j in 0..n {
            let cols: Vec<Vec<F>> = (0..n).map(|i| self.bracket_basis(i, j)).collect();
            for k in 0..n {
                rows.push((0..n).map(|i| cols[i][k].clone()).collect());
            }
        }
        nullspace(&rows, n)
    }

    pub fn killing_form(&self) -> Matrix<F> {
        let n = self.dim();
        let ads: Vec<Matrix<F>> = (0..n).map(|i| self.ad_matrix(&self.basis_vector(i))).collect();
        (0..n)
            .map(|i| (0..n).map(|j| trace(&mat_mul(&ads[i], &ads[j]))).collect())
            .collect()
    }

    /// The solvable radical, computed as the Killing-orthogonal of `[L, L]`.
    pub fn radical(&self) -> Vec<Vec<F>> {
        let n = self.dim();
        let k = self.killing_form();
        let rows: Matrix<F> = self
            .derived_algebra()
            .iter()
            .map(|d| {
                (0..n)
                    .map(|j| (0..n).fold(F::zero(), |acc, i| acc + d[i].clone() * k[i][j].clone()))
                    .collect()
            })
            .collect();
        nullspace(&rows, n)
    }

    pub fn invariants(&self) -> Invariants {
        let all = self.full_basis();
        let mut derived = vec![self.dim()];
        let mut cur = all.clone();
        while !cur.is_empty() {
            let next = self.bracket_span(&cur, &cur);
            let stop = next.len() == cur.len();
            derived.push(next.len());
            cur = next;
            if stop {
                break;
            }
        }
        let mut lower = vec![self.dim()];
        let mut cur = all.clone();
        while !cur.is_empty() {
            let next = self.bracket_span(&all, &cur);
            let stop = next.len() == cur.len();
            lower.push(next.len());
            cur = next;
            if stop {
                break;
            }
        }
        Invariants {
            dim: self.dim(),
            solvable: *derived.last().unwrap() == 0,
            nilpotent: *lower.last().unwrap() == 0,
            derived_series_dims: derived,
            lower_central_dims: lower,
            center_dim: self.centre().len(),
        }
    }

    /// `L / Z(L)` on the basis vectors that are not pivots of the centre.
    pub fn quotient_by_center(&self) -> Self {
        let n = self.dim();
        let mut z: EchelonBasis<usize, F> = EchelonBasis::new();
        for v in self.centre() {
            z.insert(&to_sparse(&v));
        }
        let pivots: Vec<usize> = z.pivots().copied().collect();
        let keep: Vec<usize> = (0..n).filter(|i| !pivots.contains(i)).collect();
        let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(a, &i)| (i, a)).collect();
        let mut table: Table<F> = BTreeMap::new();
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate().skip(a + 1) {
                let r = z.reduce(&to_sparse(&self.bracket_basis(i, j)));
                let v: BTreeMap<usize, F> = r.into_iter().map(|(k, c)| (pos[&k], c)).collect();
                if !v.is_empty() {
                    table.insert((a, b), v);
                }
            }
        }
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        LieAlgebra::from_table_unchecked(labels, table)
    }

    /// Checks whether the structure constants agree exactly.
    pub fn same_constants(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.table == other.table
    }
}

pub(crate) fn subspace_rows<F: Field>(e: &EchelonBasis<usize, F>, n: usize) -> Vec<Vec<F>> {
    e.rows().map(|(_, r)| to_dense(r, n)).collect()
}

/// Dimension data used for recognition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub dim: usize,
    pub derived_series_dims: Vec<usize>,
    pub lower_central_dims: Vec<usize>,
    pub center_dim: usize,
    pub solvable: bool,
    pub nilpotent: bool,
}

/// A Lie algebra together with an injective homomorphism into `A₁`.
#[derive(Clone, PartialEq, Eq)]
pub struct Realization<F> {
    pub algebra: LieAlgebra<F>,
    pub images: Vec<Element<F>>,
}

impl<F: Field> std::fmt::Debug for Realization<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (l, x) in self.algebra.labels().iter().zip(&self.images) {
            writeln!(f, "{l} -> {x}")?;
        }
        Ok(())
    }
}

impl<F: Field> Realization<F> {
    /// Image of a coordinate vector.
    pub fn image_of(&self, v: &[F]) -> Element<F> {
        let mut out = Element::zero();
        for (c, x) in v.iter().zip(&self.images) {
            out.add_scaled(x, c);
        }
        out
    }
}

/// Certifies that `images` realise `algebra`: they are independent and every
/// basis bracket is carried to the bracket in `A₁`.
pub fn verify_realization<F: Field>(
    algebra: &LieAlgebra<F>,
    images: Vec<Element<F>>,
) -> Result<Realization<F>, LieError> {
    if images.len() != algebra.dim() {
        return Err(LieError::BadParams(format!(
            "{} images for a {}-dimensional algebra",
            images.len(),
            algebra.dim()
        )));
    }
    if EchelonBasis::from_elements(&images).dim() != images.len() {
        return Err(LieError::NotInjective);
    }
    let r = Realization {
        algebra: algebra.clone(),
        images,
    };
    let n = algebra.dim();
    for i in 0..n {
        for j in i + 1..n {
            let want = r.image_of(&algebra.bracket_basis(i, j));
            if r.images[i].bracket(&r.images[j]) != want {
                let l = algebra.labels();
                return Err(LieError::NotHomomorphism(l[i].clone(), l[j].clone()));
            }
        }
    }
    Ok(r)
}

pub(crate) fn labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_element;
    use crate::{Scalar, WeylElement};

    fn s(n: i64) -> Scalar {
        Scalar::from_i64(n)
    }

    fn el(t: &str) -> WeylElement {
        parse_element(t).unwrap()
    }

    fn sl2() -> LieAlgebra<Scalar> {
        catalog::<Scalar>(&CatalogTag::Sl2).unwrap().0
    }

    #[test]
    fn jacobi_is_enforced() {
        // [e0,e1]=e1, [e0,e2]=e2, [e1,e2]=e0 breaks Jacobi
        let bad = LieAlgebra::new(labels("e", 3), vec![(0, 1, 1, s(1)), (0, 2, 2, s(1)), (1, 2, 0, s(1))]);
        assert!(matches!(bad, Err(LieError::Jacobi(..))));
    }

    #[test]
    fn invariants_examples() {
        let inv = sl2().invariants();
        assert_eq!(inv.derived_series_dims, vec![3, 3]);
        assert!(!inv.solvable);
        let (l3, _) = catalog::<Scalar>(&CatalogTag::L(3)).unwrap();
        let inv = l3.invariants();
        assert!(inv.nilpotent);
        assert_eq!(inv.lower_central_dims, vec![4, 2, 1, 0]);
        assert_eq!(inv.center_dim, 1);
        let (ab, _) = catalog::<Scalar>(&CatalogTag::Abelian(2)).unwrap();
        let inv = ab.invariants();
        assert_eq!(inv.center_dim, 2);
        assert!(inv.nilpotent);
    }

    #[test]
    fn verify_examples() {
        let alg = sl2();
        let ok = verify_realization(&alg, vec![el("-1/2*q^2"), el("1/2*p^2"), el("p*q - 1/2")]);
        assert!(ok.is_ok());
        let bad = verify_realization(&alg, vec![el("-1/2*q^2"), el("-1/2*p^2"), el("p*q - 1/2")]);
        assert_eq!(bad.unwrap_err(), LieError::NotHomomorphism("X".into(), "Y".into()));
        let (ab, _) = catalog::<Scalar>(&CatalogTag::Abelian(2)).unwrap();
        assert_eq!(
            verify_realization(&ab, vec![el("p"), el("p")]).unwrap_err(),
            LieError::NotInjective
        );
    }

    #[test]
    fn quotients() {
        for n in 3..6 {
            let (ln, _) = catalog::<Scalar>(&CatalogTag::L(n)).unwrap();
            let q = ln.quotient_by_center();
            assert_eq!(recognize(&q).unwrap(), CatalogTag::L(n - 1));
        }
        let (sc, _) = catalog::<Scalar>(&CatalogTag::Sl2xC).unwrap();
        assert_eq!(recognize(&sc.quotient_by_center()).unwrap(), CatalogTag::Sl2);
        let (lt, _) = catalog::<Scalar>(&CatalogTag::LTilde(3)).unwrap();
        let q = lt.quotient_by_center();
        let inv = q.invariants();
        assert_eq!((inv.dim, inv.nilpotent, inv.center_dim), (4, false, 0));
        assert_eq!(recognize(&q).unwrap(), CatalogTag::LTildeModC(3));
    }

    #[test]
    fn radicals() {
        let table = [
            (CatalogTag::Sl2, (3, 0, 0, 3)),
            (CatalogTag::Sl2xC, (4, 1, 1, 3)),
            (CatalogTag::Sl2SemidirectH3, (6, 1, 3, 6)),
            (CatalogTag::Sl2SemidirectC2, (5, 0, 2, 5)),
        ];
        for (tag, want) in table {
            let (a, _) = catalog::<Scalar>(&tag).unwrap();
            let got = (a.dim(), a.centre().len(), a.radical().len(), a.derived_algebra().len());
            assert_eq!(got, want, "{tag}");
        }
    }
}
