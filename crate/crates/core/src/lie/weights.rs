use std::collections::BTreeMap;

use super::{LieError, Realization};
use crate::field::Field;
use crate::linalg::{exact_spectrum, nullspace};
use crate::weyl::Element;

/// Eigenspaces of `ad(images[h_index])` on the realised algebra, keyed by
/// eigenvalue, each given as a list of elements of `A₁`.
pub fn weight_spaces<F: Field>(r: &Realization<F>, h_index: usize) -> Result<BTreeMap<F, Vec<Element<F>>>, LieError> {
    let alg = &r.algebra;
    let n = alg.dim();
    if h_index >= n {
        return Err(LieError::BadParams(format!("index {h_index} out of range")));
    }
    let ad = alg.ad_matrix(&alg.basis_vector(h_index));
    let mut out = BTreeMap::new();
    let mut total = 0;
    for (lambda, _) in exact_spectrum(&ad)? {
        let shifted: Vec<Vec<F>> = ad
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, x)| if i == j { x.clone() - lambda.clone() } else { x.clone() })
                    .collect()
            })
            .collect();
        let space = nullspace(&shifted, n);
        total += space.len();
        out.insert(lambda, space.iter().map(|v| r.image_of(v)).collect());
    }
    if total != n {
        return Err(LieError::NotDiagonalisable);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{catalog, lie_closure, CatalogTag, DEFAULT_MAX_DIM};
    use crate::parse::parse_element;
    use crate::{Scalar, WeylElement};

    fn el(t: &str) -> WeylElement {
        parse_element(t).unwrap()
    }

    #[test]
    fn r_weights() {
        let (_, r) = catalog::<Scalar>(&CatalogTag::r(&[1, 2])).unwrap();
        let w = weight_spaces(&r.unwrap(), 0).unwrap();
        assert_eq!(w[&Scalar::from_i64(-1)], vec![el("p")]);
        assert_eq!(w[&Scalar::from_i64(-2)], vec![el("p^2")]);
        assert_eq!(w[&Scalar::from_i64(0)], vec![el("p*q")]);
    }

    #[test]
    fn ltilde3_weights() {
        let r = lie_closure(&[el("p*q"), el("-q"), el("1/2*p^2")], DEFAULT_MAX_DIM).unwrap();
        let w = weight_spaces(&r, 0).unwrap();
        let keys: Vec<i64> = vec![-2, -1, 0, 1];
        assert_eq!(
            w.keys().cloned().collect::<Vec<_>>(),
            keys.iter().map(|&k| Scalar::from_i64(k)).collect::<Vec<_>>()
        );
        assert_eq!(w[&Scalar::from_i64(0)].len(), 2);
        assert_eq!(w[&Scalar::from_i64(1)].len(), 1);
    }

    #[test]
    fn abelian_and_nilpotent() {
        let (_, r) = catalog::<Scalar>(&CatalogTag::Abelian(3)).unwrap();
        let w = weight_spaces(&r.unwrap(), 1).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w[&Scalar::from_i64(0)].len(), 3);
        let (_, r) = catalog::<Scalar>(&CatalogTag::Heisenberg3).unwrap();
        assert_eq!(weight_spaces(&r.unwrap(), 0).unwrap_err(), LieError::NotDiagonalisable);
    }
}
