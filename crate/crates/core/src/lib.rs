//! Exact decision procedure for rational first integrals of plane foliations.
//!
//! A foliation of the complex projective plane is given by a homogeneous
//! 1-form `A dX + B dY + C dZ` with `XA + YB + ZC = 0`. For non-degenerate
//! foliations (every singularity has Milnor number one) this crate decides
//! whether a rational first integral `F/G` with `deg F = deg G < t` exists,
//! and returns either the integral together with the wedge certificate
//! `(G dF - F dG) ∧ Ω = 0` or a rejection.
//!
//! Layout:
//! - [`exactmath`]: rationals, one simple number field at a time, univariate
//!   polynomials, factorization over Q, resultants and exact linear algebra.
//! - [`forms`]: polynomials in projective/affine/local coordinates, 1-forms,
//!   wedge products and the Euler condition.
//! - [`foliation`]: singular locus, Milnor numbers, eigenvalue ratios and
//!   the cardinality bound on non-reduced points.
//! - [`resolution`]: clusters of infinitely near points over non-reduced
//!   singularities and plane curve germ invariants.
//! - [`integrate`]: Diophantine search, linear systems through weighted
//!   clusters, certification and diagnostics.
//! - [`cli`]: file format, subcommands and canonical reports.

pub mod cli;
pub mod error;
pub mod exactmath;
pub mod foliation;
pub mod forms;
pub mod integrate;
pub mod resolution;

pub use error::{Error, Result};
