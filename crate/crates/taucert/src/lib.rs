//! Exact machinery for linear difference equations under the Moebius shift
//! t -> t/(1+bt), aimed at generating functions of combinatorial sequences.
//!
//! The crate provides, in layers:
//!
//! - exact arithmetic: arbitrary-precision rationals, Gaussian rationals
//!   Q(i), dense polynomials, reduced rational functions, partial fractions
//!   and exact linear solving;
//! - truncated power series over Q(i) and over the parameter field Q(i)(x),
//!   with the Borel transform and shift-substitution operators;
//! - the operator calculus: the shift tau, the derivation d = t^2 d/dt, and
//!   the change of frame that turns tau into the unit shift s -> s + 1;
//! - a compiler turning differential equations with exponential coefficients
//!   for an EGF into difference equations for the matching OGF;
//! - decision procedures for rational summability, rational solutions of
//!   first-order shift equations, and telescoper existence;
//! - a certifier that classifies formal solutions of first-order shift
//!   equations as rational (with witness) or strongly differentially
//!   transcendental (with machine-checkable evidence);
//! - a catalog of classical sequence families (Bell, Bernoulli, Genocchi,
//!   Fubini, tangent, Springer, ...) wired to all of the above;
//! - floating-point cross-checks against the trigamma function.
//!
//! See the `book/` directory for a guided tour; its code snippets run as
//! doctests of this crate.

pub mod catalog;
pub mod certify;
pub mod compile;
pub mod equation;
pub mod error;
pub mod field;
pub mod gauss;
pub mod laurent;
pub mod linsolve;
pub mod param;
pub mod partfrac;
pub mod poly;
pub mod ratfun;
pub mod ratsolve;
pub mod roots;
pub mod series;
pub mod shift;
pub mod summability;

pub use error::{Error, Result};
pub use field::Field;
pub use gauss::{BigRat, CoeffField, GaussRat};
pub use param::Param;
pub use poly::Poly;
pub use ratfun::RatFun;
pub use series::Series;
pub use equation::TauEquation;
pub use shift::MoebiusShift;
