//! Exact arithmetic: rationals, number fields, polynomials, linear algebra.

pub mod factor;
pub mod field;
pub mod matrix;
pub mod resultant;
pub mod unipoly;
pub mod zassenhaus;

pub use factor::{factor_over, roots_in, univariate_factor, univariate_factor_capped};
pub use field::{int, rat, Field, FieldElement, NumberField, Rational};
pub use matrix::ExactMatrix;
pub use unipoly::UniPoly;
