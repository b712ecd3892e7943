use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{filiform_chain, normalise, CatalogTag, LieAlgebra, LieError};
use crate::field::Field;
use crate::linalg::{exact_spectrum, to_dense, to_sparse, EchelonBasis, Matrix};

/// The subalgebra on the span of `basis` (assumed closed), in the
/// coordinates of its reduced echelon basis.
fn subalgebra<F: Field>(alg: &LieAlgebra<F>, basis: &[Vec<F>]) -> (LieAlgebra<F>, EchelonBasis<usize, F>) {
    let n = alg.dim();
    let mut e: EchelonBasis<usize, F> = EchelonBasis::new();
    for v in basis {
        e.insert(&to_sparse(v));
    }
    let rows: Vec<Vec<F>> = e.rows().map(|(_, r)| to_dense(r, n)).collect();
    let mut table = BTreeMap::new();
    for a in 0..rows.len() {
        for b in a + 1..rows.len() {
            let c = e
                .coordinates(&to_sparse(&alg.bracket(&rows[a], &rows[b])))
                .expect("subspace is closed under brackets");
            let v: BTreeMap<usize, F> = c.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
            if !v.is_empty() {
                table.insert((a, b), v);
            }
        }
    }
    let labels = super::labels("d", rows.len());
    (LieAlgebra::from_table_unchecked(labels, table), e)
}

/// Matrix of `ad(h)` restricted to an invariant subspace, in the
/// coordinates of its echelon basis.
fn restricted_ad<F: Field>(alg: &LieAlgebra<F>, h: &[F], sub: &EchelonBasis<usize, F>) -> Matrix<F> {
    let n = alg.dim();
    let cols: Vec<Vec<F>> = sub
        .rows()
        .map(|(_, r)| {
            sub.coordinates(&to_sparse(&alg.bracket(h, &to_dense(r, n))))
                .expect("subspace is ad(h)-invariant")
        })
        .collect();
    let d = cols.len();
    (0..d).map(|k| (0..d).map(|j| cols[j][k].clone()).collect()).collect()
}

/// Rational multiples `λ_k / λ₀` as integers with no common factor,
/// keeping the sign of the ratio.
fn integer_ratios<F: Field>(eig: &[F]) -> Result<Vec<i64>, LieError> {
    let base = eig[0].clone();
    let mut ratios = Vec::new();
    for e in eig {
        let r = (e.clone() / base.clone())
            .to_rational()
            .ok_or(LieError::IrrationalSpectrum)?;
        ratios.push(r);
    }
    let den = ratios.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
    let ints: Vec<BigInt> = ratios.iter().map(|r| (r * &den).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    ints.iter()
        .map(|x| i64::try_from(x / &g).map_err(|_| LieError::SpectrumTooLarge))
        .collect()
}

/// Decides which catalog entry `alg` is isomorphic to, by invariants and,
/// for solvable algebras, the spectrum of a grading element on `[L, L]`.
pub fn recognize<F: Field>(alg: &LieAlgebra<F>) -> Result<CatalogTag, LieError> {
    let dim = alg.dim();
    if alg.is_abelian() {
        return Ok(CatalogTag::Abelian(dim));
    }
    let inv = alg.invariants();
    if inv.nilpotent {
        return Ok(match filiform_chain(alg) {
            Ok(_) => CatalogTag::L(dim - 1),
            Err(_) => CatalogTag::Unknown,
        });
    }
    if !inv.solvable {
        let key = (dim, inv.center_dim, alg.radical().len(), alg.derived_algebra().len());
        return Ok(match key {
            (3, 0, 0, 3) => CatalogTag::Sl2,
            (4, 1, 1, 3) => CatalogTag::Sl2xC,
            (6, 1, 3, 6) => CatalogTag::Sl2SemidirectH3,
            (5, 0, 2, 5) => CatalogTag::Sl2SemidirectC2,
            _ => CatalogTag::Unknown,
        });
    }
    let derived = alg.derived_algebra();
    let centre = alg.centre();
    let (dalg, dsub) = subalgebra(alg, &derived);
    let mut span = dsub.clone();
    for z in &centre {
        span.insert(&to_sparse(z));
    }
    let Some(h) = alg.full_basis().into_iter().find(|e| !span.contains(&to_sparse(e))) else {
        return Ok(CatalogTag::Unknown);
    };
    let d = derived.len();
    let z = centre.len();

    if dalg.is_abelian() {
        // L = ℂh ⊕ [L, L] ⊕ Z with ad(h) semisimple and invertible on [L, L]
        if span.dim() != d + z || dim != d + z + 1 || z > 1 {
            return Ok(CatalogTag::Unknown);
        }
        let spec = exact_spectrum(&restricted_ad(alg, &h, &dsub))?;
        if spec.iter().any(|(l, m)| *m != 1 || l.is_zero()) {
            return Ok(CatalogTag::Unknown);
        }
        let eig: Vec<F> = spec.into_iter().map(|(l, _)| l).collect();
        let ratios = integer_ratios(&eig)?;
        let positive = ratios.iter().filter(|r| r.is_positive()).count();
        if positive == ratios.len() || positive == 0 {
            return Ok(normalise(&CatalogTag::R {
                indices: ratios,
                central: z == 1,
            }));
        }
        let mut sorted = ratios.clone();
        sorted.sort_unstable();
        if z == 0 && sorted.len() == 2 && sorted[0] == -sorted[1] {
            return Ok(CatalogTag::LTildeModC(2));
        }
        return Ok(CatalogTag::Unknown);
    }

    // derived algebra filiform of codimension one
    if dim != d + 1 || filiform_chain(&dalg).is_err() {
        return Ok(CatalogTag::Unknown);
    }
    let spec = exact_spectrum(&restricted_ad(alg, &h, &dsub))?;
    if spec.iter().any(|(_, m)| *m != 1) {
        return Ok(CatalogTag::Unknown);
    }
    let eig: Vec<F> = spec.into_iter().map(|(l, _)| l).collect();
    // pattern ρ·{1, 0, -1, …, -(n-1)} for L̃_n, ρ·{1, -1, …, -(n-1)} for L̃_n/ℂ
    let (n, pattern): (usize, Vec<i64>) = if z == 1 {
        let n = d - 1;
        (n, std::iter::once(1).chain((0..n as i64).map(|k| -k)).collect())
    } else if z == 0 {
        let n = d;
        (n, std::iter::once(1).chain((1..n as i64).map(|k| -k)).collect())
    } else {
        return Ok(CatalogTag::Unknown);
    };
    let mut want: Vec<F> = pattern.iter().map(|&k| F::from_i64(k)).collect();
    want.sort();
    for rho in eig.iter().filter(|l| !l.is_zero()) {
        let rho_inv = rho.inv().unwrap();
        let mut got: Vec<F> = eig.iter().map(|l| l.clone() * rho_inv.clone()).collect();
        got.sort();
        if got == want {
            return Ok(if z == 1 {
                CatalogTag::LTilde(n)
            } else {
                CatalogTag::LTildeModC(n)
            });
        }
    }
    Ok(CatalogTag::Unknown)
}
