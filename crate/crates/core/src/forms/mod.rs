//! Polynomials in projective, affine and local coordinates; 1-forms and
//! 2-forms.

pub mod gcd;
pub mod multipoly;
pub mod oneform;

pub use multipoly::{monomial_basis, Exps, MultiPoly, Vars};
pub use oneform::{certificate, euler_check, pencil_differential, wedge, Chart, EulerCheck, ProjOneForm, TwoForm};
