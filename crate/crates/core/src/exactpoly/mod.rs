//! Exact rational polynomial arithmetic and complex univariate polynomials.

mod cpoly;
mod fpoly;
mod param;
mod poly2;
mod resultant;
mod ring;
mod sparse;


use thiserror::Error;

pub use cpoly::{cpoly_derivative, cpoly_eval, CPoly1};
pub use fpoly::FPoly2;
pub use param::ParamResultant;
pub use poly2::{
    linear_form, mat2, mat2_det, mat2_identity, mat2_inverse, mat2_mul, poly2_arith,
    poly2_compose_linear, poly2_partial, poly2_reduce_mod_linear, q, qi, x1, x2, ArithOp, RatMat2,
    RatPoly2,
};
pub use resultant::{bareiss_det, poly2_eliminate, resultant_from_coeffs, ExactRing};
pub use ring::{rational_to_f64, Ring};
pub use sparse::{Monomial, SparsePoly};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactPolyError {
    #[error("not a hyperplane: {0} is not a nonzero homogeneous linear form")]
    NotHyperplane(String),
    #[error("resultant undefined: both polynomials are constant in the eliminated variable")]
    BothConstant,
    #[error("resultant undefined: zero polynomial input")]
    ZeroInput,
}
