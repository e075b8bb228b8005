use std::fmt;

use num_traits::Signed;

use super::field::{render_rational, FieldElement, Rational};
use crate::error::{Error, Result};

/// Dense univariate polynomial, ascending coefficients, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<FieldElement>,
}

impl UniPoly {
    pub fn new(coeffs: Vec<FieldElement>) -> UniPoly {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> UniPoly {
        UniPoly { coeffs: vec![] }
    }

    pub fn constant(c: FieldElement) -> UniPoly {
        UniPoly::new(vec![c])
    }

    /// `x`.
    pub fn x() -> UniPoly {
        UniPoly::new(vec![FieldElement::zero(), FieldElement::one()])
    }

    pub fn from_rationals(c: &[Rational]) -> UniPoly {
        UniPoly::new(c.iter().cloned().map(FieldElement::from_rational).collect())
    }

    pub fn from_ints(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&n| FieldElement::from_int(n)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(FieldElement::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> FieldElement {
        self.coeffs.last().cloned().unwrap_or_else(FieldElement::zero)
    }

    pub fn rational_coeffs(&self) -> Option<Vec<Rational>> {
        self.coeffs.iter().map(|c| c.as_rational()).collect()
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn scale(&self, c: &FieldElement) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().inv())
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &FieldElement::from_int(i as i64))
                .collect(),
        )
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new((0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new((0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![FieldElement::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly::new(out)
    }

    pub fn pow(&self, n: usize) -> UniPoly {
        let mut acc = UniPoly::constant(FieldElement::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn divrem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lc_inv = divisor.lc().checked_inv()?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let mut q = vec![FieldElement::zero(); r.len() - dd];
        while r.len() > dd {
            let top = r.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = r.len() - dd;
            let c = &top * &lc_inv;
            for (i, b) in divisor.coeffs[..dd].iter().enumerate() {
                r[i + shift] = &r[i + shift] - &(&c * b);
            }
            q[shift] = c;
        }
        Ok((UniPoly::new(q), UniPoly::new(r)))
    }

    pub fn rem(&self, divisor: &UniPoly) -> Result<UniPoly> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Exact quotient; `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.divrem(divisor).ok()?;
        r.is_zero().then_some(q)
    }

    /// Monic gcd (zero when both inputs are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// `f(x + c)`.
    pub fn shift(&self, c: &FieldElement) -> UniPoly {
        let lin = UniPoly::new(vec![c.clone(), FieldElement::one()]);
        self.compose(&lin)
    }

    /// `f(g(x))`.
    pub fn compose(&self, g: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&UniPoly::constant(c.clone()));
        }
        acc
    }

    /// Yun's algorithm: squarefree, pairwise coprime monic `(g_i, i)` with
    /// `f = lc * prod g_i^i`. Factors equal to 1 are omitted.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(UniPoly, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let f = self.monic();
        let mut out = Vec::new();
        if f.degree() == Some(0) {
            return Ok(out);
        }
        let fp = f.derivative();
        let mut a = f.gcd(&fp);
        let mut b = f.div_exact(&a).expect("gcd divides");
        let mut c = fp.div_exact(&a).expect("gcd divides derivative");
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree().is_some_and(|n| n > 0) {
            a = b.gcd(&d);
            b = b.div_exact(&a).expect("gcd divides");
            c = d.div_exact(&a).expect("gcd divides");
            if a.degree().is_some_and(|n| n > 0) {
                out.push((a.clone(), i));
            }
            d = c.sub(&b.derivative());
            i += 1;
        }
        Ok(out)
    }

    pub fn squarefree_part(&self) -> Result<UniPoly> {
        let mut acc = UniPoly::constant(FieldElement::one());
        for (g, _) in self.squarefree_decomposition()? {
            acc = acc.mul(&g);
        }
        Ok(acc)
    }

    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, body) = match c.as_rational() {
                Some(q) => (q.is_negative(), render_rational(&q.abs())),
                None => (false, c.render()),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                k => format!("{var}^{k}"),
            };
            if mono.is_empty() {
                out.push_str(&body);
            } else if body == "1" {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{body}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("x"))
    }
}

/// `c * prod (x - r)`; handy in tests.
pub fn from_roots(roots: &[FieldElement]) -> UniPoly {
    let mut acc = UniPoly::constant(FieldElement::one());
    for r in roots {
        acc = acc.mul(&UniPoly::new(vec![-r, FieldElement::one()]));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_gcd() {
        let f = UniPoly::from_ints(&[-1, 0, 0, 1]); // x^3 - 1
        let g = UniPoly::from_ints(&[-1, 0, 1]); // x^2 - 1
        assert_eq!(f.gcd(&g), UniPoly::from_ints(&[-1, 1]));
        let (q, r) = f.divrem(&UniPoly::from_ints(&[-1, 1])).unwrap();
        assert_eq!(q, UniPoly::from_ints(&[1, 1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn yun_recovers_multiplicities() {
        // (x-1)^3 (x+2)^2 (x^2+1)
        let f = UniPoly::from_ints(&[-1, 1])
            .pow(3)
            .mul(&UniPoly::from_ints(&[2, 1]).pow(2))
            .mul(&UniPoly::from_ints(&[1, 0, 1]));
        let d = f.squarefree_decomposition().unwrap();
        assert_eq!(
            d,
            vec![
                (UniPoly::from_ints(&[1, 0, 1]), 1),
                (UniPoly::from_ints(&[2, 1]), 2),
                (UniPoly::from_ints(&[-1, 1]), 3)
            ]
        );
    }

    #[test]
    fn rendering() {
        assert_eq!(UniPoly::from_ints(&[1, 1, 1]).to_string_in("t"), "t^2 + t + 1");
        assert_eq!(UniPoly::from_ints(&[-2, 0, -3]).to_string(), "-3*x^2 - 2");
    }
}
