//! qtw — an exact-arithmetic workbench for the noncommutative algebraic torus
//!
//! The algebra under study is A_q = Q<x^{±1}, y^{±1}> / (xy − q·yx) for an
//! exact rational parameter q ∉ {0, 1, −1}.  Everything in this crate is
//! computed over the rationals with zero tolerance: no floats, no epsilons.
//!
//! Module map:
//! - [`exact`]      big rationals, dense polynomials, rational functions, and
//!                  generic linear algebra over any of them
//! - [`qtorus`]     normal-ordered Laurent polynomials in the q-commuting
//!                  generators x, y, and the automorphisms of A_q
//! - [`skewlocal`]  the localizations Q(x)[y^±] / Q(y)[x^±], truncated skew
//!                  Laurent series, and bounded right-ideal membership
//! - [`cmspace`]    quantum Calogero-Moser matrix data (X, Y, i, j), the
//!                  SL2(Z)-and-scaling action, and equivalence decision
//! - [`ideals`]     the map from Calogero-Moser points to rank-1 fractional
//!                  ideals, ideal normalization/isomorphism, and the
//!                  equivariance harness
//! - [`picard`]     the Picard group (Q*/q^Z)² ⋊ SL2(Z): normalization,
//!                  group arithmetic, SL2(Z) word decomposition, and
//!                  inner-automorphism detection
//! - [`sampling`]   seeded random generators for property suites
//! - [`config`]     shared search bounds and truncation settings

pub mod config;
pub mod exact;
pub mod qtorus;
pub mod skewlocal;
pub mod cmspace;
pub mod ideals;
pub mod picard;
pub mod sampling;

pub use config::Config;
pub use exact::{Matrix, Poly, RatFunc, Rational};
