use super::{LieAlgebra, LieError, Realization};
use crate::field::Field;
use crate::linalg::{mat_mul, nullspace, solve, to_sparse, EchelonBasis, Matrix};
use crate::weyl::Element;

fn apply<F: Field>(m: &Matrix<F>, v: &[F]) -> Vec<F> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
        })
        .collect()
}

/// Coordinates of `X₀ … X_n` with `[X₀, X_k] = X_{k+1}` for `1 ≤ k < n` and
/// every other basis bracket zero, for an algebra isomorphic to `L_n`.
///
/// `P` and `Q` are the first pair, scanning the basis against the
/// second-to-last lower central term, whose bracket is nonzero. `X₁` solves
/// `ad(P)^{n-1} X₁ = Q` inside the centraliser of `[L, L]`.
pub fn filiform_chain<F: Field>(alg: &LieAlgebra<F>) -> Result<Vec<Vec<F>>, LieError> {
    let dim = alg.dim();
    let inv = alg.invariants();
    if !inv.nilpotent {
        return Err(LieError::NotNilpotent);
    }
    if alg.is_abelian() {
        return Err(LieError::NotInA1Form("abelian".into()));
    }
    let want: Vec<usize> = std::iter::once(dim).chain((0..dim - 1).rev()).collect();
    if inv.lower_central_dims != want {
        return Err(LieError::NotInA1Form(format!(
            "lower central dimensions {:?}, expected {:?}",
            inv.lower_central_dims, want
        )));
    }
    let all = alg.full_basis();
    let mut series = vec![all.clone()];
    while series.last().unwrap().len() > 1 {
        let next = alg.bracket_span(&all, series.last().unwrap());
        series.push(next);
    }
    let before_last = &series[series.len() - 2];
    let (p, q) = all
        .iter()
        .flat_map(|e| before_last.iter().map(move |b| (e, b)))
        .find(|(e, b)| alg.bracket(e, b).iter().any(|x| !x.is_zero()))
        .map(|(e, b)| (e.clone(), b.clone()))
        .expect("non-abelian nilpotent algebra has a nonzero bracket into its last term");

    // A = centraliser of [L, L]
    let derived = &series[1];
    let a_basis: Vec<Vec<F>> = if dim == 3 {
        all.clone()
    } else {
        let mut rows: Matrix<F> = Vec::new();
        for d in derived {
            let ad = alg.ad_matrix(d);
            rows.extend(ad);
        }
        nullspace(&rows, dim)
    };
    let ad_p = alg.ad_matrix(&p);
    let mut power: Matrix<F> = crate::linalg::identity(dim);
    for _ in 0..dim - 3 {
        power = mat_mul(&ad_p, &power);
    }
    // columns: ad(P)^{dim-3} applied to the basis of A
    let images: Vec<Vec<F>> = a_basis.iter().map(|a| apply(&power, a)).collect();
    let m: Matrix<F> = (0..dim)
        .map(|r| images.iter().map(|c| c[r].clone()).collect())
        .collect();
    let y = solve(&m, &q, a_basis.len())
        .ok_or_else(|| LieError::NotInA1Form("Q is not reached from the centraliser".into()))?;
    let mut x1 = vec![F::zero(); dim];
    for (c, a) in y.iter().zip(&a_basis) {
        for (k, v) in a.iter().enumerate() {
            x1[k] = x1[k].clone() + c.clone() * v.clone();
        }
    }
    let mut chain = vec![p.clone(), x1];
    while chain.len() < dim {
        let next = alg.bracket(&p, chain.last().unwrap());
        chain.push(next);
    }
    check_chain(alg, &chain)?;
    Ok(chain)
}

fn check_chain<F: Field>(alg: &LieAlgebra<F>, chain: &[Vec<F>]) -> Result<(), LieError> {
    let dim = alg.dim();
    let mut e: EchelonBasis<usize, F> = EchelonBasis::new();
    for v in chain {
        e.insert(&to_sparse(v));
    }
    if e.dim() != dim {
        return Err(LieError::NotInA1Form("chain is not a basis".into()));
    }
    let zero = vec![F::zero(); dim];
    for a in 0..dim {
        for b in a + 1..dim {
            let got = alg.bracket(&chain[a], &chain[b]);
            let want = if a == 0 && b + 1 < dim { &chain[b + 1] } else { &zero };
            if &got != want {
                return Err(LieError::NotInA1Form(format!("[X{a}, X{b}] has the wrong value")));
            }
        }
    }
    Ok(())
}

/// A basis `X₀ … X_n` of a realised filiform algebra with
/// `[X₀, X_k] = X_{k+1}` and `X_n = 1`.
pub fn filiform_normal_basis<F: Field>(r: &Realization<F>) -> Result<Vec<Element<F>>, LieError> {
    let chain = filiform_chain(&r.algebra)?;
    let mut out: Vec<Element<F>> = chain.iter().map(|v| r.image_of(v)).collect();
    let c = out
        .last()
        .and_then(|x| x.as_scalar())
        .filter(|c| !c.is_zero())
        .ok_or_else(|| LieError::NotInA1Form("last chain element is not a nonzero scalar".into()))?;
    if !c.is_one() {
        let s = c.inv().unwrap();
        for x in out.iter_mut().skip(1) {
            *x = x.scale(&s);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{catalog, lie_closure, CatalogTag, DEFAULT_MAX_DIM};
    use crate::parse::parse_element;
    use crate::{Scalar, WeylElement, WeylMorphism};

    fn el(t: &str) -> WeylElement {
        parse_element(t).unwrap()
    }

    #[test]
    fn recovers_l3_basis() {
        let (_, r) = catalog::<Scalar>(&CatalogTag::L(3)).unwrap();
        let b = filiform_normal_basis(&r.unwrap()).unwrap();
        assert_eq!(b, vec![el("-q"), el("1/2*p^2"), el("p"), el("1")]);
    }

    #[test]
    fn survives_an_automorphism() {
        let (_, r) = catalog::<Scalar>(&CatalogTag::L(3)).unwrap();
        let phi = WeylMorphism::phi(1, Scalar::from_i64(1));
        let moved: Vec<WeylElement> = r.unwrap().images.iter().map(|x| phi.apply(x)).collect();
        let r = lie_closure(&moved, DEFAULT_MAX_DIM).unwrap();
        let b = filiform_normal_basis(&r).unwrap();
        assert_eq!(b.len(), 4);
        for a in 0..4 {
            for c in a + 1..4 {
                let want = if a == 0 && c < 3 {
                    b[c + 1].clone()
                } else {
                    WeylElement::zero()
                };
                assert_eq!(b[a].bracket(&b[c]), want);
            }
        }
        assert_eq!(b[3], WeylElement::one());
    }

    #[test]
    fn heisenberg_chain() {
        let r = lie_closure(&[el("q"), el("p")], DEFAULT_MAX_DIM).unwrap();
        let b = filiform_normal_basis(&r).unwrap();
        assert_eq!(b.len(), 3);
        assert_eq!(b[0].bracket(&b[1]), b[2]);
        assert_eq!(b[2], WeylElement::one());
    }

    #[test]
    fn rejects_non_filiform() {
        let (sl2, _) = catalog::<Scalar>(&CatalogTag::Sl2).unwrap();
        assert_eq!(filiform_chain(&sl2).unwrap_err(), LieError::NotNilpotent);
        let (ab, _) = catalog::<Scalar>(&CatalogTag::Abelian(3)).unwrap();
        assert!(matches!(filiform_chain(&ab), Err(LieError::NotInA1Form(_))));
    }
}
