//! Shared helpers and independent oracles for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use folint::exactmath::field::FieldElement;
use folint::forms::multipoly::{monomial_basis, MultiPoly, Vars};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).expect("fixture")
}

pub fn proj(src: &str) -> MultiPoly {
    folint::cli::parse_projective(src, &folint::exactmath::Field::rationals()).expect("parse")
}

pub fn random_form<R: Rng>(rng: &mut R, d: i32, range: i64) -> MultiPoly {
    let mut p = MultiPoly::zero(Vars::Projective);
    for e in monomial_basis(d) {
        let c: i64 = rng.gen_range(-range..=range);
        p = p.add(&MultiPoly::monomial(Vars::Projective, e, FieldElement::from_int(c)));
    }
    p
}

type Q = BigRational;

/// Rank of a rational matrix by plain Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Q>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let piv = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &piv;
                for j in c..cols {
                    let v = &rows[r][j] * &f;
                    rows[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

/// Whether `span{p1, p2}` equals `span{q1, q2}` for degree-`d` forms.
pub fn same_pencil(d: i32, p: [&MultiPoly; 2], q: [&MultiPoly; 2]) -> bool {
    let v = |m: &MultiPoly| m.coefficient_vector(d).expect("degree d form");
    let all = vec![v(p[0]), v(p[1]), v(q[0]), v(q[1])];
    rank(vec![v(p[0]), v(p[1])]) == 2 && rank(vec![v(q[0]), v(q[1])]) == 2 && rank(all) == 2
}

/// Integer bivariate polynomials for the oracles: exponent pair to coefficient.
pub type Poly2 = BTreeMap<(u32, u32), BigInt>;

pub fn p2(terms: &[((u32, u32), i64)]) -> Poly2 {
    let mut p = Poly2::new();
    for &(e, c) in terms {
        *p.entry(e).or_insert_with(BigInt::zero) += c;
    }
    p.retain(|_, c| !c.is_zero());
    p
}

pub fn p2_mul(a: &Poly2, b: &Poly2) -> Poly2 {
    let mut out = Poly2::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *out.entry((ea.0 + eb.0, ea.1 + eb.1)).or_insert_with(BigInt::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn p2_deriv(a: &Poly2, var: usize) -> Poly2 {
    let mut out = Poly2::new();
    for (e, c) in a {
        let k = if var == 0 { e.0 } else { e.1 };
        if k == 0 {
            continue;
        }
        let ne = if var == 0 { (e.0 - 1, e.1) } else { (e.0, e.1 - 1) };
        *out.entry(ne).or_insert_with(BigInt::zero) += c * BigInt::from(k);
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Truncated-jet oracle: `dim Q[[u,v]] / (gens)` computed as
/// `#{monomials of degree <= n} - rank{ m * g mod deg > n }` for growing
/// `n` until two consecutive values agree. `None` if no stabilization up to
/// `max_n`.
pub fn colength_oracle(gens: &[Poly2], max_n: u32) -> Option<usize> {
    let mut prev = None;
    for n in 1..=max_n {
        let monos: Vec<(u32, u32)> = (0..=n).flat_map(|t| (0..=t).map(move |j| (t - j, j))).collect();
        let index: BTreeMap<(u32, u32), usize> = monos.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        let mut rows = Vec::new();
        for g in gens {
            for m in &monos {
                let mut row = vec![Q::zero(); monos.len()];
                let mut any = false;
                for (e, c) in g {
                    let ne = (e.0 + m.0, e.1 + m.1);
                    if ne.0 + ne.1 <= n {
                        row[index[&ne]] += Q::from_integer(c.clone());
                        any = true;
                    }
                }
                if any {
                    rows.push(row);
                }
            }
        }
        let c = monos.len() - rank(rows);
        if prev == Some(c) {
            return Some(c);
        }
        prev = Some(c);
    }
    None
}

pub fn one() -> BigInt {
    BigInt::one()
}
