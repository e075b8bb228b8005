use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;

use crate::exactmath::field::{render_rational, Field, FieldElement, Rational};
use crate::exactmath::unipoly::UniPoly;
use crate::error::{Error, Result};

/// Exponent vector. Negative entries occur only transiently (virtual
/// transforms divided by a power of the exceptional coordinate).
pub type Exps = [i32; 3];

/// Which coordinates a polynomial is written in. Two-variable kinds use the
/// first two exponent slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Vars {
    /// `X, Y, Z`
    Projective,
    /// chart coordinates `x, y`
    Affine,
    /// local coordinates `u, v` at a point
    Local,
}

impl Vars {
    pub fn names(self) -> [&'static str; 3] {
        match self {
            Vars::Projective => ["X", "Y", "Z"],
            Vars::Affine => ["x", "y", "_"],
            Vars::Local => ["u", "v", "_"],
        }
    }

    pub fn count(self) -> usize {
        match self {
            Vars::Projective => 3,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vars,
    terms: BTreeMap<Exps, FieldElement>,
}

impl MultiPoly {
    pub fn zero(vars: Vars) -> MultiPoly {
        MultiPoly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: Vars, c: FieldElement) -> MultiPoly {
        let mut p = MultiPoly::zero(vars);
        p.add_term([0, 0, 0], c);
        p
    }

    pub fn one(vars: Vars) -> MultiPoly {
        MultiPoly::constant(vars, FieldElement::one())
    }

    /// The coordinate in slot `i`.
    pub fn var(vars: Vars, i: usize) -> MultiPoly {
        let mut e = [0; 3];
        e[i] = 1;
        MultiPoly::monomial(vars, e, FieldElement::one())
    }

    pub fn monomial(vars: Vars, e: Exps, c: FieldElement) -> MultiPoly {
        let mut p = MultiPoly::zero(vars);
        p.add_term(e, c);
        p
    }

    pub fn from_terms(vars: Vars, terms: impl IntoIterator<Item = (Exps, FieldElement)>) -> MultiPoly {
        let mut p = MultiPoly::zero(vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> Vars {
        self.vars
    }

    pub fn with_vars(mut self, vars: Vars) -> MultiPoly {
        self.vars = vars;
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &FieldElement)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &Exps) -> FieldElement {
        self.terms.get(e).cloned().unwrap_or_else(FieldElement::zero)
    }

    pub fn add_term(&mut self, e: Exps, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| *e == [0, 0, 0])
    }

    /// Smallest field containing all coefficients.
    pub fn field(&self) -> Result<Field> {
        let mut f = Field::rationals();
        for c in self.terms.values() {
            f = f.join(c.field())?;
        }
        Ok(f)
    }

    pub fn total_degree(&self) -> Option<i32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Order at the origin: smallest total degree of a term.
    pub fn order(&self) -> Option<i32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    pub fn degree_in(&self, slot: usize) -> Option<i32> {
        self.terms.keys().map(|e| e[slot]).max()
    }

    pub fn min_degree_in(&self, slot: usize) -> Option<i32> {
        self.terms.keys().map(|e| e[slot]).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<i32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().any(|e| e.iter().any(|&x| x < 0))
    }

    /// Terms of total degree exactly `k`.
    pub fn homogeneous_part(&self, k: i32) -> MultiPoly {
        MultiPoly {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<i32>() == k)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Terms of total degree below `k`.
    pub fn truncate(&self, k: i32) -> MultiPoly {
        MultiPoly {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<i32>() < k)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, -c);
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.vars);
        }
        MultiPoly {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term([e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]], c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.vars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplies by the monomial with exponent `e` (entries may be negative).
    pub fn shift_exponents(&self, e: Exps) -> MultiPoly {
        MultiPoly {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(x, c)| ([x[0] + e[0], x[1] + e[1], x[2] + e[2]], c.clone()))
                .collect(),
        }
    }

    /// Drops terms with a negative exponent.
    pub fn drop_negative(&self) -> MultiPoly {
        MultiPoly {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().all(|&x| x >= 0))
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    pub fn derivative(&self, slot: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.vars);
        for (e, c) in &self.terms {
            if e[slot] != 0 {
                let mut f = *e;
                f[slot] -= 1;
                out.add_term(f, c * &FieldElement::from_int(e[slot] as i64));
            }
        }
        out
    }

    pub fn eval(&self, point: &[FieldElement]) -> FieldElement {
        let mut acc = FieldElement::zero();
        let mut cache: Vec<Vec<FieldElement>> = point.iter().map(|p| vec![FieldElement::one(), p.clone()]).collect();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate().take(point.len()) {
                assert!(k >= 0, "evaluation of a Laurent term");
                let k = k as usize;
                while cache[i].len() <= k {
                    let next = cache[i].last().unwrap() * &point[i];
                    cache[i].push(next);
                }
                t = &t * &cache[i][k];
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Replaces the variable in `slot` by a constant.
    pub fn substitute_const(&self, slot: usize, value: &FieldElement) -> MultiPoly {
        let mut out = MultiPoly::zero(self.vars);
        for (e, c) in &self.terms {
            let mut f = *e;
            f[slot] = 0;
            out.add_term(f, c * &value.pow(e[slot] as u32));
        }
        out
    }

    /// `f(g_0, g_1, ...)`, images written in `target` coordinates.
    pub fn compose(&self, images: &[MultiPoly], target: Vars) -> MultiPoly {
        let mut powers: Vec<Vec<MultiPoly>> = images.iter().map(|g| vec![MultiPoly::one(target), g.clone().with_vars(target)]).collect();
        let mut out = MultiPoly::zero(target);
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate().take(images.len()) {
                assert!(k >= 0, "composition of a Laurent term");
                let k = k as usize;
                while powers[i].len() <= k {
                    let next = powers[i].last().unwrap().mul(&images[i].clone().with_vars(target));
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][k]);
            }
            out = out.add(&t);
        }
        out
    }

    /// `f(p_0 + u, p_1 + v)` in local coordinates.
    pub fn translate(&self, p: &[FieldElement; 2]) -> MultiPoly {
        let u = MultiPoly::var(Vars::Local, 0).add(&MultiPoly::constant(Vars::Local, p[0].clone()));
        let v = MultiPoly::var(Vars::Local, 1).add(&MultiPoly::constant(Vars::Local, p[1].clone()));
        self.compose(&[u, v], Vars::Local)
    }

    /// Swaps the first two slots.
    pub fn swap01(&self) -> MultiPoly {
        MultiPoly {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, c)| ([e[1], e[0], e[2]], c.clone())).collect(),
        }
    }

    /// Substitution `(u, v) -> (u, u v)`.
    pub fn blowup_substitution(&self) -> MultiPoly {
        MultiPoly {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, c)| ([e[0] + e[1], e[1], e[2]], c.clone())).collect(),
        }
    }

    /// Exact division by the monomial in slot `slot` to the power `k`;
    /// `None` if some term has smaller exponent.
    pub fn divide_by_var_power(&self, slot: usize, k: i32) -> Option<MultiPoly> {
        if self.terms.keys().any(|e| e[slot] < k) {
            return None;
        }
        let mut shift = [0; 3];
        shift[slot] = -k;
        Some(self.shift_exponents(shift))
    }

    /// Univariate view in `slot`, when no other variable occurs.
    pub fn to_unipoly(&self, slot: usize) -> Option<UniPoly> {
        let deg = match self.degree_in(slot) {
            None => return Some(UniPoly::zero()),
            Some(d) => d,
        };
        if deg < 0 {
            return None;
        }
        let mut c = vec![FieldElement::zero(); deg as usize + 1];
        for (e, x) in &self.terms {
            for (i, &k) in e.iter().enumerate() {
                if i != slot && k != 0 {
                    return None;
                }
            }
            if e[slot] < 0 {
                return None;
            }
            c[e[slot] as usize] = x.clone();
        }
        Some(UniPoly::new(c))
    }

    pub fn from_unipoly(vars: Vars, slot: usize, p: &UniPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(vars);
        for (i, c) in p.coeffs().iter().enumerate() {
            let mut e = [0; 3];
            e[slot] = i as i32;
            out.add_term(e, c.clone());
        }
        out
    }

    /// Coefficient of `var^k` as a polynomial in the other variables.
    pub fn coeff_in(&self, slot: usize, k: i32) -> MultiPoly {
        MultiPoly {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[slot] == k)
                .map(|(e, c)| {
                    let mut f = *e;
                    f[slot] = 0;
                    (f, c.clone())
                })
                .collect(),
        }
    }

    /// Leading term in lexicographic order on the slots.
    pub fn lex_leading(&self) -> Option<(&Exps, &FieldElement)> {
        self.terms.iter().next_back()
    }

    /// Exact multivariate division; `None` if `divisor` does not divide.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        let (le, lc) = divisor.lex_leading()?;
        let lc_inv = lc.inv();
        let mut rem = self.clone();
        let mut quo = MultiPoly::zero(self.vars);
        while let Some((re, rc)) = rem.lex_leading() {
            let diff = [re[0] - le[0], re[1] - le[1], re[2] - le[2]];
            if diff.iter().any(|&x| x < 0) && !self.has_negative_exponents() {
                return None;
            }
            let c = rc * &lc_inv;
            let t = MultiPoly::monomial(self.vars, diff, c);
            rem = rem.sub(&divisor.mul(&t));
            quo = quo.add(&t);
            if quo.num_terms() > 100_000 {
                return None;
            }
        }
        Some(quo)
    }

    /// Dehomogenizes a projective polynomial in the chart where the
    /// coordinate `chart_slot` equals 1; the remaining two coordinates keep
    /// their order and become `x, y`.
    pub fn dehomogenize(&self, chart_slot: usize) -> MultiPoly {
        let keep: Vec<usize> = (0..3).filter(|&i| i != chart_slot).collect();
        let mut out = MultiPoly::zero(Vars::Affine);
        for (e, c) in &self.terms {
            out.add_term([e[keep[0]], e[keep[1]], 0], c.clone());
        }
        out
    }

    /// Inverse of [`MultiPoly::dehomogenize`] to total degree `degree`.
    pub fn homogenize(&self, chart_slot: usize, degree: i32) -> MultiPoly {
        let keep: Vec<usize> = (0..3).filter(|&i| i != chart_slot).collect();
        let mut out = MultiPoly::zero(Vars::Projective);
        for (e, c) in &self.terms {
            let mut f = [0; 3];
            f[keep[0]] = e[0];
            f[keep[1]] = e[1];
            f[chart_slot] = degree - e[0] - e[1];
            assert!(f[chart_slot] >= 0, "homogenizing below the total degree");
            out.add_term(f, c.clone());
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&FieldElement) -> FieldElement) -> MultiPoly {
        let mut out = MultiPoly::zero(self.vars);
        for (e, c) in &self.terms {
            out.add_term(*e, f(c));
        }
        out
    }

    /// Term that comes first in the canonical (graded lexicographic) order.
    pub fn leading_grlex(&self) -> Option<(Exps, FieldElement)> {
        self.terms
            .iter()
            .min_by(|a, b| grlex_desc(a.0, b.0))
            .map(|(e, c)| (*e, c.clone()))
    }

    /// Scaled so the first canonical term has coefficient 1.
    pub fn normalized(&self) -> MultiPoly {
        match self.leading_grlex() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }

    /// Some monomial of the polynomial, rendered; used as a witness.
    pub fn witness(&self) -> Option<String> {
        let mut t: Vec<(&Exps, &FieldElement)> = self.terms.iter().collect();
        t.sort_by(|a, b| grlex_desc(a.0, b.0));
        t.first().map(|(e, c)| MultiPoly::monomial(self.vars, **e, (*c).clone()).render())
    }

    /// Canonical text: graded lexicographic order, explicit `*`, `^`
    /// exponents, integer or `p/q` coefficients.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let names = self.vars.names();
        let mut t: Vec<(&Exps, &FieldElement)> = self.terms.iter().collect();
        t.sort_by(|a, b| grlex_desc(a.0, b.0));
        let mut out = String::new();
        for (e, c) in t {
            let mut factors = Vec::new();
            for (i, &k) in e.iter().enumerate() {
                if k == 1 {
                    factors.push(names[i].to_string());
                } else if k != 0 {
                    factors.push(format!("{}^{}", names[i], k));
                }
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
            if factors.is_empty() {
                out.push_str(&body);
            } else {
                if body != "1" {
                    out.push_str(&body);
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }

    /// Coefficient vector on the degree-`d` monomial basis of
    /// [`monomial_basis`]; `None` if a coefficient is irrational or the
    /// polynomial has other monomials.
    pub fn coefficient_vector(&self, d: i32) -> Option<Vec<Rational>> {
        let basis = monomial_basis(d);
        if self.terms.keys().any(|e| !basis.contains(e)) {
            return None;
        }
        basis.iter().map(|e| self.coeff(e).as_rational()).collect()
    }

    pub fn from_coefficient_vector(d: i32, v: &[Rational]) -> MultiPoly {
        MultiPoly::from_terms(
            Vars::Projective,
            monomial_basis(d)
                .into_iter()
                .zip(v)
                .map(|(e, c)| (e, FieldElement::from_rational(c.clone()))),
        )
    }
}

/// Degree-`d` monomials in `X, Y, Z`, graded-lex descending (`X^d` first).
pub fn monomial_basis(d: i32) -> Vec<Exps> {
    let mut out = Vec::new();
    for i in (0..=d).rev() {
        for j in (0..=d - i).rev() {
            out.push([i, j, d - i - j]);
        }
    }
    out
}

fn grlex_desc(a: &Exps, b: &Exps) -> std::cmp::Ordering {
    let da: i32 = a.iter().sum();
    let db: i32 = b.iter().sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Checks homogeneity of a list of polynomials of one common degree.
pub fn common_degree(polys: &[&MultiPoly]) -> Result<Option<i32>> {
    let mut deg = None;
    for p in polys {
        if p.is_zero() {
            continue;
        }
        if !p.is_homogeneous() {
            return Err(Error::InhomogeneousInput(format!("{} is not homogeneous", p.render())));
        }
        let d = p.total_degree().unwrap();
        match deg {
            None => deg = Some(d),
            Some(x) if x != d => {
                return Err(Error::InhomogeneousInput(format!("degrees {x} and {d} differ")))
            }
            _ => {}
        }
    }
    Ok(deg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz() -> (MultiPoly, MultiPoly, MultiPoly) {
        (
            MultiPoly::var(Vars::Projective, 0),
            MultiPoly::var(Vars::Projective, 1),
            MultiPoly::var(Vars::Projective, 2),
        )
    }

    #[test]
    fn canonical_rendering() {
        let (x, y, z) = xyz();
        let p = x.pow(3).sub(&y.pow(3).scale(&FieldElement::from_int(2))).add(&y.mul(&z.pow(2)));
        assert_eq!(p.render(), "X^3 - 2*Y^3 + Y*Z^2");
        assert_eq!(MultiPoly::zero(Vars::Projective).render(), "0");
        assert_eq!(MultiPoly::one(Vars::Local).neg().render(), "-1");
    }

    #[test]
    fn translation() {
        let x = MultiPoly::var(Vars::Affine, 0);
        let y = MultiPoly::var(Vars::Affine, 1);
        let f = x.pow(2).sub(&y);
        let g = f.translate(&[FieldElement::one(), FieldElement::one()]);
        assert_eq!(g.render(), "u^2 + 2*u - v");
        let h = x.translate(&[FieldElement::one(), FieldElement::zero()]);
        assert_eq!(h.render(), "u + 1");
    }

    #[test]
    fn exact_division() {
        let (x, y, z) = xyz();
        let a = x.add(&y);
        let b = x.sub(&z.scale(&FieldElement::from_int(3)));
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&a).unwrap(), b);
        assert!(p.div_exact(&y).is_none());
    }

    #[test]
    fn chart_round_trip() {
        let (x, y, z) = xyz();
        let p = x.pow(3).add(&y.mul(&z.pow(2)));
        let aff = p.dehomogenize(2);
        assert_eq!(aff.render(), "x^3 + y");
        assert_eq!(aff.homogenize(2, 3), p);
    }
}
