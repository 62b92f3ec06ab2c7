//! Exact scalar tower and generic linear algebra.
//!
//! The tower is `Rational` (arbitrary-precision rationals from `num`) →
//! [`Poly`] (dense univariate polynomials over `Rational`) → [`RatFunc`]
//! (reduced rational functions with monic denominator).  [`Matrix`] is
//! generic over any element type that behaves like a field — both `Rational`
//! and `RatFunc` qualify — so the same elimination code decides systems over
//! Q and over Q(x).
//!
//! Every inverse, nullspace and solution computed here re-checks its defining
//! identity by multiplication before being returned.

mod matrix;
mod poly;
mod ratfunc;
pub mod scalar;

pub use matrix::{
    char_poly_adjugate, mat_det, mat_inverse, mat_nullspace, solve_linear, FieldScalar, MatError,
    Matrix,
};
pub use poly::{poly_gcd, poly_lcm, poly_xgcd, Poly};
pub use ratfunc::RatFunc;
pub use scalar::Rational;
