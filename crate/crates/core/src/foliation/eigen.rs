use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactmath::field::{FieldElement, Rational};
use crate::forms::multipoly::MultiPoly;

/// Eigenvalue pair of the linear part, up to scaling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EigenRatio {
    /// Coprime integers; `rho > 0`, and `delta <= rho` when both are
    /// positive.
    Pair { delta: i64, rho: i64 },
    /// The ratio is not a rational number.
    Irrational,
}

impl EigenRatio {
    pub fn pair(self) -> Option<(i64, i64)> {
        match self {
            EigenRatio::Pair { delta, rho } => Some((delta, rho)),
            EigenRatio::Irrational => None,
        }
    }

    /// Positive ratio: the point is non-reduced.
    pub fn is_non_reduced(self) -> bool {
        matches!(self, EigenRatio::Pair { delta, .. } if delta > 0)
    }
}

/// Jacobian at the origin of the vector field `(-b, a)`, rows indexed by
/// the components and columns by `(u, v)`.
pub fn linear_part(a: &MultiPoly, b: &MultiPoly) -> [[FieldElement; 2]; 2] {
    let c = |p: &MultiPoly, e: [i32; 3]| p.coeff(&e);
    [
        [-c(b, [1, 0, 0]), -c(b, [0, 1, 0])],
        [c(a, [1, 0, 0]), c(a, [0, 1, 0])],
    ]
}

pub fn determinant(j: &[[FieldElement; 2]; 2]) -> FieldElement {
    &(&j[0][0] * &j[1][1]) - &(&j[0][1] * &j[1][0])
}

/// Classifies the ratio of the eigenvalues of `j` through `s = T^2 / D`:
/// the ratio `x` solves `x^2 - (s - 2) x + 1 = 0`.
pub fn eigen_ratio(j: &[[FieldElement; 2]; 2]) -> Result<EigenRatio> {
    let d = determinant(j);
    if d.is_zero() {
        return Err(Error::SingularJacobian);
    }
    let t = &j[0][0] + &j[1][1];
    let s = match (&(&t * &t) / &d).as_rational() {
        Some(s) => s,
        None => return Ok(EigenRatio::Irrational),
    };
    let two = Rational::from_integer(2.into());
    let disc = &s * (&s - Rational::from_integer(4.into()));
    let root = match rational_sqrt(&disc) {
        Some(r) => r,
        None => return Ok(EigenRatio::Irrational),
    };
    let x = (&s - &two + root) / two;
    let (p, q) = (x.numer().abs(), x.denom().clone());
    let (lo, hi) = if p < q { (p, q) } else { (q, p) };
    let to = |n: &BigInt| n.to_i64().ok_or_else(|| Error::InvalidInput("eigenvalue ratio too large".into()));
    let (lo, hi) = (to(&lo)?, to(&hi)?);
    Ok(if x.is_positive() {
        EigenRatio::Pair { delta: lo, rho: hi }
    } else {
        EigenRatio::Pair { delta: -lo, rho: hi }
    })
}

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    if q.is_zero() {
        return Some(Rational::zero());
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| Rational::new(n, d))
}
