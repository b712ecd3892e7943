use std::collections::BTreeMap;

use super::{LieAlgebra, LieError, Realization};
use crate::field::Field;
use crate::linalg::{inverse, EchelonBasis, Matrix};
use crate::weyl::Element;

pub const DEFAULT_MAX_DIM: usize = 64;

/// The Lie subalgebra of `A₁` generated by `gens`.
///
/// The basis is the independent generators in order followed by new brackets
/// in the order they were found; pairs are visited breadth first, each new
/// element against everything before it. Fails with `DimensionExceeded` once
/// the span grows past `max_dim`.
pub fn lie_closure<F: Field>(gens: &[Element<F>], max_dim: usize) -> Result<Realization<F>, LieError> {
    let mut span: EchelonBasis<crate::weyl::Monomial, F> = EchelonBasis::new();
    let mut elems: Vec<Element<F>> = Vec::new();
    for g in gens {
        if span.insert_element(g) {
            elems.push(g.clone());
            if elems.len() > max_dim {
                return Err(LieError::DimensionExceeded(max_dim));
            }
        }
    }
    if elems.is_empty() {
        return Err(LieError::BadParams("no nonzero generators".into()));
    }
    let mut t = 0;
    while t < elems.len() {
        for s in 0..t {
            let b = elems[s].bracket(&elems[t]);
            if span.insert_element(&b) {
                elems.push(b);
                if elems.len() > max_dim {
                    return Err(LieError::DimensionExceeded(max_dim));
                }
            }
        }
        t += 1;
    }
    let algebra = algebra_of(&span, &elems);
    Ok(Realization { algebra, images: elems })
}

/// Structure constants of a closed, independent family.
///
/// Every member of the span is determined by its entries at the echelon
/// pivots, so one inverse of the pivot matrix turns those entries into
/// coordinates against `elems`.
fn algebra_of<F: Field>(span: &EchelonBasis<crate::weyl::Monomial, F>, elems: &[Element<F>]) -> LieAlgebra<F> {
    let n = elems.len();
    let pivots: Vec<_> = span.pivots().copied().collect();
    let at_pivots = |x: &Element<F>| -> Vec<F> { pivots.iter().map(|m| x.coeff(m.i, m.j)).collect() };
    // row a of C holds elems[a] at the pivots, so x = (x at pivots) C⁻¹ · elems
    let c: Matrix<F> = elems.iter().map(at_pivots).collect();
    let cinv = inverse(&c).expect("closure basis is independent");
    let mut table = BTreeMap::new();
    for a in 0..n {
        for b in a + 1..n {
            let br = at_pivots(&elems[a].bracket(&elems[b]));
            let mut v = BTreeMap::new();
            for k in 0..n {
                let x = (0..n).fold(F::zero(), |acc, r| acc + br[r].clone() * cinv[r][k].clone());
                if !x.is_zero() {
                    v.insert(k, x);
                }
            }
            if !v.is_empty() {
                table.insert((a, b), v);
            }
        }
    }
    LieAlgebra::from_table_unchecked(super::labels("g", n), table)
}
