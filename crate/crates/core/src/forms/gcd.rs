//! Multivariate gcd by recursive primitive remainder sequences.

use super::multipoly::MultiPoly;
use crate::exactmath::factor::primitive_integer_coeffs;
use crate::exactmath::field::{FieldElement, Rational};

/// Greatest common divisor, normalized so the lexicographically leading
/// coefficient is 1. `gcd(0, 0) = 0`.
pub fn gcd(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    if f.is_zero() {
        return normalize(g);
    }
    if g.is_zero() {
        return normalize(f);
    }
    let var = match (0..3).rev().find(|&s| involves(f, s) || involves(g, s)) {
        None => return MultiPoly::one(f.vars()),
        Some(v) => v,
    };
    if certainly_coprime(f, g) {
        return MultiPoly::one(f.vars());
    }
    if !involves(f, var) {
        return gcd(f, &content(g, var));
    }
    if !involves(g, var) {
        return gcd(&content(f, var), g);
    }
    let cf = content(f, var);
    let cg = content(g, var);
    let c = gcd(&cf, &cg);
    let mut a = f.div_exact(&cf).expect("content divides");
    let mut b = g.div_exact(&cg).expect("content divides");
    if a.degree_in(var) < b.degree_in(var) {
        std::mem::swap(&mut a, &mut b);
    }
    let prim = loop {
        let r = pseudo_rem(&a, &b, var);
        if r.is_zero() {
            break b;
        }
        if !involves(&r, var) {
            break MultiPoly::one(f.vars());
        }
        a = b;
        b = numeric_primitive(&r.div_exact(&content(&r, var)).expect("content divides"));
    };
    normalize(&c.mul(&prim))
}

/// Gcd of several polynomials.
pub fn gcd_many<'a>(polys: impl IntoIterator<Item = &'a MultiPoly>) -> Option<MultiPoly> {
    let mut acc: Option<MultiPoly> = None;
    for p in polys {
        acc = Some(match acc {
            None => normalize(p),
            Some(a) => gcd(&a, p),
        });
    }
    acc
}

/// Scales a polynomial with rational coefficients to coprime integer
/// coefficients; other polynomials are returned unchanged.
fn numeric_primitive(p: &MultiPoly) -> MultiPoly {
    let coeffs: Option<Vec<Rational>> = p.terms().map(|(_, c)| c.as_rational()).collect();
    let Some(coeffs) = coeffs else { return p.clone() };
    let ints = primitive_integer_coeffs(&coeffs);
    let mut out = MultiPoly::zero(p.vars());
    for ((e, _), c) in p.terms().zip(ints) {
        out.add_term(*e, FieldElement::from_rational(Rational::from_integer(c)));
    }
    out
}

/// Exact sufficient test for `gcd(f, g) = 1`. For each variable, the other
/// variables are specialized to small integers that keep both degrees in it;
/// the specialized gcd is then a multiple of the specialization of the true
/// gcd, so a constant univariate gcd bounds the degree of the true gcd in
/// that variable by zero.
fn certainly_coprime(f: &MultiPoly, g: &MultiPoly) -> bool {
    const TRIES: i64 = 6;
    for var in 0..3 {
        // a common factor involving `var` must divide both
        if !involves(f, var) || !involves(g, var) {
            continue;
        }
        let others: Vec<usize> = (0..3).filter(|&s| s != var && (involves(f, s) || involves(g, s))).collect();
        let mut ok = false;
        for t in 0..TRIES {
            let vals: Vec<FieldElement> =
                others.iter().enumerate().map(|(i, _)| FieldElement::from_int(2 + t + 3 * i as i64 * (t + 1))).collect();
            let spec = |p: &MultiPoly| {
                let mut q = p.clone();
                for (s, v) in others.iter().zip(&vals) {
                    q = q.substitute_const(*s, v);
                }
                q.to_unipoly(var).expect("univariate")
            };
            let (uf, ug) = (spec(f), spec(g));
            if uf.degree() != f.degree_in(var).map(|d| d as usize)
                || ug.degree() != g.degree_in(var).map(|d| d as usize)
            {
                continue;
            }
            if uf.gcd(&ug).degree() == Some(0) {
                ok = true;
            }
            break;
        }
        if !ok {
            return false;
        }
    }
    true
}

fn involves(p: &MultiPoly, slot: usize) -> bool {
    p.degree_in(slot).is_some_and(|d| d > 0)
}

/// Gcd of the coefficients with respect to `slot`.
pub fn content(p: &MultiPoly, slot: usize) -> MultiPoly {
    let d = p.degree_in(slot).unwrap_or(0);
    let coeffs: Vec<MultiPoly> = (0..=d).map(|k| p.coeff_in(slot, k)).filter(|c| !c.is_zero()).collect();
    gcd_many(coeffs.iter()).unwrap_or_else(|| MultiPoly::zero(p.vars()))
}

fn pseudo_rem(a: &MultiPoly, b: &MultiPoly, slot: usize) -> MultiPoly {
    let db = b.degree_in(slot).unwrap();
    let lb = b.coeff_in(slot, db);
    let mut r = a.clone();
    while let Some(dr) = r.degree_in(slot) {
        if dr < db || r.is_zero() {
            break;
        }
        let lr = r.coeff_in(slot, dr);
        let mut e = [0; 3];
        e[slot] = dr - db;
        r = r.mul(&lb).sub(&lr.shift_exponents(e).mul(b));
    }
    r
}

fn normalize(p: &MultiPoly) -> MultiPoly {
    match p.lex_leading() {
        None => p.clone(),
        Some((_, c)) => {
            let inv: FieldElement = c.inv();
            p.scale(&inv)
        }
    }
}
