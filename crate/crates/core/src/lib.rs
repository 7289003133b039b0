//! Explicit zero-counting envelopes for Dedekind zeta functions.
//!
//! The envelope
//!
//! ```text
//! | N_K(T) - (T/π) log(d_K (T/2πe)^{n_K}) - 1.919 | <= 0.194 (log d_K + n_K log T) + 5.543 n_K + 0.462
//! ```
//!
//! is assembled from four estimates (one per factor of the completed zeta
//! function) and a kernel inequality. Each module recomputes one piece:
//!
//! * [`specfun`]: certified Binet approximations of `Im log Γ`, `Re ψ`, `ψ₁`.
//! * [`kernel`]: the arctan kernel, its majorant, the boundary certificate and
//!   the parameter search.
//! * [`factors`]: estimates for `s(s-1)`, the discriminant and the gamma factor.
//! * [`primes`]: Euler-product sums for the zeta factor.
//! * [`theorem`]: envelope assembly and validation against zero tables.
//!
//! Numerical code is generic over [`Real`]; the aliases below fix `f64`.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod factors;
pub mod kernel;
pub mod primes;
pub mod real;
pub mod specfun;
pub mod theorem;

pub use error::{Error, Result};
pub use real::Real;

pub type ComplexPoint = specfun::ComplexPoint<f64>;
pub type SpecFunResult = specfun::SpecFunResult<f64>;
pub type Params = kernel::Params<f64>;
pub type KernelPoint = kernel::KernelPoint<f64>;
pub type Lemma21Certificate = kernel::Lemma21Certificate;
pub type FieldSignature = factors::FieldSignature;
pub type EnvelopeTerm = factors::EnvelopeTerm<f64>;
pub type PhasePoint = primes::PhasePoint<f64>;
pub type BoundEnvelope = theorem::BoundEnvelope;
pub type ZeroTable = theorem::ZeroTable;
