use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `Q[t]/(m(t))` for a monic irreducible `m` of degree at least 2.
#[derive(Debug)]
pub struct NumberField {
    minpoly: Vec<Rational>,
    /// Power-basis coordinates of `t^(e+i)` for `i = 0..e-1`.
    reduction: Vec<Vec<Rational>>,
}

impl NumberField {
    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    /// Monic minimal polynomial, ascending coefficients.
    pub fn minimal_polynomial(&self) -> &[Rational] {
        &self.minpoly
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.minpoly == other.minpoly
    }
}

impl Eq for NumberField {}

/// Handle on the field an element lives in; `None` is Q itself.
#[derive(Debug, Clone, Default)]
pub struct Field(Option<Arc<NumberField>>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (None, None) => true,
            (Some(a), Some(b)) => Arc::ptr_eq(a, b) || a == b,
            _ => false,
        }
    }
}

impl Eq for Field {}

impl Field {
    pub fn rationals() -> Field {
        Field(None)
    }

    /// Builds `Q[t]/(m)`. The polynomial is made monic; a degree-one input
    /// yields Q. Irreducibility over Q is verified.
    pub fn extension(minpoly: &[Rational]) -> Result<Field> {
        let mut m: Vec<Rational> = minpoly.to_vec();
        while m.last().is_some_and(|c| c.is_zero()) {
            m.pop();
        }
        if m.len() < 2 {
            return Err(Error::ZeroPolynomial);
        }
        if m.len() == 2 {
            return Ok(Field::rationals());
        }
        let lc = m.last().unwrap().clone();
        for c in m.iter_mut() {
            *c = &*c / &lc;
        }
        let as_poly = super::unipoly::UniPoly::from_rationals(&m);
        let factors = super::factor::univariate_factor(&as_poly)?;
        if factors.len() != 1 || factors[0].1 != 1 {
            return Err(Error::Reducible(as_poly.to_string_in("t")));
        }
        Ok(Field::from_irreducible(m))
    }

    /// Same as [`Field::extension`] without the irreducibility check. The
    /// caller guarantees `minpoly` is monic and irreducible.
    pub(crate) fn from_irreducible(minpoly: Vec<Rational>) -> Field {
        let e = minpoly.len() - 1;
        if e == 1 {
            return Field::rationals();
        }
        // t^e = -sum m_j t^j
        let mut cur: Vec<Rational> = minpoly[..e].iter().map(|c| -c).collect();
        let mut reduction = Vec::with_capacity(e.saturating_sub(1));
        for _ in 0..e.saturating_sub(1) {
            reduction.push(cur.clone());
            // multiply by t and reduce
            let top = cur[e - 1].clone();
            let mut next = vec![Rational::zero(); e];
            for j in (1..e).rev() {
                next[j] = cur[j - 1].clone();
            }
            for j in 0..e {
                next[j] -= &top * &minpoly[j];
            }
            cur = next;
        }
        Field(Some(Arc::new(NumberField { minpoly, reduction })))
    }

    pub fn degree(&self) -> usize {
        self.0.as_ref().map_or(1, |f| f.degree())
    }

    pub fn is_rational(&self) -> bool {
        self.0.is_none()
    }

    /// `Q` or `Q[t]/(m(t))`.
    pub fn describe(&self) -> String {
        match &self.0 {
            None => "Q".into(),
            Some(nf) => format!(
                "Q[t]/({})",
                super::unipoly::UniPoly::from_rationals(&nf.minpoly).to_string_in("t")
            ),
        }
    }

    pub fn number_field(&self) -> Option<&NumberField> {
        self.0.as_deref()
    }

    /// The class of `t`.
    pub fn generator(&self) -> FieldElement {
        match &self.0 {
            None => FieldElement::zero(),
            Some(_) => {
                let mut coords = vec![Rational::zero(); self.degree()];
                coords[1] = Rational::one();
                FieldElement {
                    field: self.clone(),
                    coords,
                }
            }
        }
    }

    pub fn element(&self, coords: Vec<Rational>) -> FieldElement {
        let e = self.degree();
        let mut coords = coords;
        assert!(coords.len() <= e, "too many coordinates for the field");
        coords.resize(e, Rational::zero());
        FieldElement {
            field: self.clone(),
            coords,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.element(vec![])
    }

    pub fn one(&self) -> FieldElement {
        self.element(vec![Rational::one()])
    }

    /// The larger of two fields when one is Q.
    pub fn join(&self, other: &Field) -> Result<Field> {
        if self.is_rational() {
            Ok(other.clone())
        } else if other.is_rational() || self == other {
            Ok(self.clone())
        } else {
            Err(Error::MixedFields)
        }
    }
}

/// An element of Q or of a simple extension, in power-basis coordinates.
#[derive(Debug, Clone)]
pub struct FieldElement {
    field: Field,
    coords: Vec<Rational>,
}

impl FieldElement {
    pub fn zero() -> FieldElement {
        FieldElement::from_rational(Rational::zero())
    }

    pub fn one() -> FieldElement {
        FieldElement::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> FieldElement {
        FieldElement::from_rational(int(n))
    }

    pub fn from_rational(q: Rational) -> FieldElement {
        FieldElement {
            field: Field::rationals(),
            coords: vec![q],
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coordinates(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    /// Re-expresses `self` in `field`, which must contain it.
    pub fn promote(&self, field: &Field) -> Result<FieldElement> {
        if &self.field == field {
            return Ok(self.clone());
        }
        match self.as_rational() {
            Some(q) => Ok(field.element(vec![q])),
            None => Err(Error::MixedFields),
        }
    }

    fn aligned(&self, other: &FieldElement) -> Result<(Field, FieldElement, FieldElement)> {
        let f = self.field.join(&other.field)?;
        Ok((f.clone(), self.promote(&f)?, other.promote(&f)?))
    }

    pub fn checked_add(&self, other: &FieldElement) -> Result<FieldElement> {
        if self.field == other.field {
            let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
            return Ok(FieldElement { field: self.field.clone(), coords });
        }
        let (field, a, b) = self.aligned(other)?;
        let coords = a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect();
        Ok(FieldElement { field, coords })
    }

    pub fn checked_sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &FieldElement) -> Result<FieldElement> {
        // scalar fast paths
        if self.field.is_rational() && !other.field.is_rational() {
            let c = &self.coords[0];
            return Ok(FieldElement {
                field: other.field.clone(),
                coords: other.coords.iter().map(|x| x * c).collect(),
            });
        }
        if other.field.is_rational() {
            let c = &other.coords[0];
            return Ok(FieldElement {
                field: self.field.clone(),
                coords: self.coords.iter().map(|x| x * c).collect(),
            });
        }
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        let nf = self.field.number_field().expect("extension");
        let e = nf.degree();
        let mut prod = vec![Rational::zero(); 2 * e - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut coords: Vec<Rational> = prod[..e].to_vec();
        for (k, c) in prod[e..].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, r) in nf.reduction[k].iter().enumerate() {
                coords[j] += c * r;
            }
        }
        Ok(FieldElement { field: self.field.clone(), coords })
    }

    pub fn checked_inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let nf = match self.field.number_field() {
            None => {
                return Ok(FieldElement::from_rational(self.coords[0].recip()));
            }
            Some(nf) => nf,
        };
        // extended Euclid on (a, m) in Q[t]
        let a = qpoly::trim(self.coords.clone());
        let m = nf.minpoly.clone();
        let (g, s, _) = qpoly::ext_gcd(&a, &m);
        debug_assert_eq!(g.len(), 1);
        let ginv = g[0].recip();
        let mut coords: Vec<Rational> = s.into_iter().map(|c| c * &ginv).collect();
        coords.resize(nf.degree(), Rational::zero());
        Ok(FieldElement { field: self.field.clone(), coords })
    }

    pub fn checked_div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.checked_mul(&other.checked_inv()?)
    }

    pub fn inv(&self) -> FieldElement {
        self.checked_inv().expect("inverse of zero")
    }

    pub fn pow(&self, n: u32) -> FieldElement {
        let mut result = FieldElement::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        result
    }

    /// Image under a map of Q-algebras sending `t` to `image_of_t`.
    pub fn substitute_generator(&self, image_of_t: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero();
        for c in self.coords.iter().rev() {
            acc = &(&acc * image_of_t) + &FieldElement::from_rational(c.clone());
        }
        acc
    }

    /// Total order used only for deterministic sorting.
    pub fn canonical_cmp(&self, other: &FieldElement) -> Ordering {
        let n = self.coords.len().max(other.coords.len());
        let z = Rational::zero();
        for i in 0..n {
            let a = self.coords.get(i).unwrap_or(&z);
            let b = other.coords.get(i).unwrap_or(&z);
            match a.cmp(b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// Renders as a rational, or as a polynomial in `t` in parentheses.
    pub fn render(&self) -> String {
        if let Some(q) = self.as_rational() {
            return render_rational(&q);
        }
        let mut out = String::new();
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "t".to_string(),
                k => format!("t^{k}"),
            };
            if mono.is_empty() {
                out.push_str(&render_rational(&mag));
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", render_rational(&mag), mono));
            }
        }
        format!("({out})")
    }
}

pub fn render_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        match self.checked_sub(other) {
            Ok(d) => d.is_zero(),
            Err(_) => false,
        }
    }
}

impl Eq for FieldElement {}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl From<Rational> for FieldElement {
    fn from(q: Rational) -> Self {
        FieldElement::from_rational(q)
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        FieldElement::from_int(n)
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

// Operators panic on mixed fields; the checked_* methods report it.
macro_rules! field_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect(concat!("field ", stringify!($method)))
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
    };
}

field_binop!(Add, add, checked_add);
field_binop!(Sub, sub, checked_sub);
field_binop!(Mul, mul, checked_mul);
field_binop!(Div, div, checked_div);

/// Minimal dense Q[t] helpers used by the field itself.
pub(crate) mod qpoly {
    use super::Rational;
    use num_traits::Zero;

    pub fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
        p
    }

    pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let n = a.len().max(b.len());
        let z = Rational::zero();
        trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
    }

    pub fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    pub fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let b = trim(b.to_vec());
        assert!(!b.is_empty(), "division by zero polynomial");
        let mut r = trim(a.to_vec());
        if r.len() < b.len() {
            return (vec![], r);
        }
        let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
        let lc = b.last().unwrap().clone();
        while r.len() >= b.len() && !r.is_empty() {
            let shift = r.len() - b.len();
            let c = r.last().unwrap() / &lc;
            for (i, bc) in b.iter().enumerate() {
                r[i + shift] -= &c * bc;
            }
            q[shift] = c;
            r.pop();
            r = trim(r);
        }
        (trim(q), r)
    }

    /// Returns (g, s, t) with s*a + t*b = g.
    pub fn ext_gcd(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>, Vec<Rational>) {
        let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
        let (mut s0, mut s1) = (vec![Rational::from_integer(1.into())], vec![]);
        let (mut t0, mut t1) = (vec![], vec![Rational::from_integer(1.into())]);
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1);
            let s2 = sub(&s0, &mul(&q, &s1));
            let t2 = sub(&t0, &mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        (r0, s0, t0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta3() -> Field {
        Field::extension(&[int(1), int(1), int(1)]).unwrap()
    }

    #[test]
    fn cube_root_of_unity_products() {
        let k = zeta3();
        let t = k.generator();
        let t2 = &t * &t;
        assert!((&t * &t2).is_one());
    }

    #[test]
    fn inverse_by_extended_euclid() {
        let k = zeta3();
        let t = k.generator();
        let expected = k.element(vec![int(-1), int(-1)]);
        assert_eq!(t.checked_inv().unwrap(), expected);
    }

    #[test]
    fn rational_addition() {
        let s = FieldElement::from(rat(2, 3)) + FieldElement::from(rat(1, 6));
        assert_eq!(s.as_rational().unwrap(), rat(5, 6));
    }

    #[test]
    fn errors() {
        assert_eq!(FieldElement::zero().checked_inv(), Err(Error::DivisionByZero));
        let k = zeta3();
        let i = Field::extension(&[int(1), int(0), int(1)]).unwrap();
        assert_eq!(
            k.generator().checked_mul(&i.generator()),
            Err(Error::MixedFields)
        );
        assert!(matches!(
            Field::extension(&[int(-1), int(0), int(1)]),
            Err(Error::Reducible(_))
        ));
    }

    #[test]
    fn rational_mixes_into_extension() {
        let k = zeta3();
        let x = k.generator() + FieldElement::from_int(2);
        assert_eq!(x.coordinates(), &[int(2), int(1)]);
        assert_eq!(x.render(), "(t + 2)");
    }
}
