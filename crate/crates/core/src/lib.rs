//! Exact computation in the first Weyl algebra `A₁ = ℂ⟨p, q⟩ / (pq - qp - 1)`.
//!
//! The algebraic core is generic over an exact coefficient [`Field`]; the
//! aliases below fix it to the Gaussian rationals, which is what the CLI and
//! most callers want.

// dense matrix code reads better with explicit indices
#![allow(clippy::needless_range_loop)]

pub mod dixmier;
pub mod field;
pub mod lie;
pub mod linalg;
pub mod morphism;
pub mod parse;
pub mod scalar;
pub mod serial;
pub mod sl2;
pub mod weyl;

pub use field::Field;
pub use scalar::{format_scalar, parse_scalar, GaussianRational, ScalarError};

pub type Scalar = GaussianRational;
pub type WeylElement = weyl::Element<Scalar>;
pub type SymTensor = weyl::SymTensor<Scalar>;
pub type WeightComponent = weyl::WeightComponent<Scalar>;
pub type WeylMorphism = morphism::Morphism<Scalar>;
pub type RGroupElement = morphism::RGroupElement<Scalar>;
pub type LTildeGroupElement = morphism::LTildeGroupElement<Scalar>;
pub type DixmierClass = dixmier::DixmierClass<Scalar>;
pub type LieAlgebraStruct = lie::LieAlgebra<Scalar>;
pub type Realization = lie::Realization<Scalar>;
pub type Sl2Realization = sl2::Sl2Realization<Scalar>;
pub type SL2Element = sl2::SL2Element<Scalar>;
pub type UWord = sl2::UWord<Scalar>;

/// Rational-coefficient variants, for callers that never need `i`.
pub mod rational {
    pub type Scalar = num_rational::BigRational;
    pub type WeylElement = crate::weyl::Element<Scalar>;
    pub type WeylMorphism = crate::morphism::Morphism<Scalar>;
    pub type LieAlgebraStruct = crate::lie::LieAlgebra<Scalar>;
}

pub use weyl::Monomial;
