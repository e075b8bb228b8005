//! Resultants, first subresultants and interpolation.
//!
//! Bivariate resultants are computed by specializing the first variable at
//! integer points, taking univariate resultants and interpolating.

use super::field::{Field, FieldElement, Rational};
use super::matrix::det_over_field;
use super::unipoly::UniPoly;
use crate::error::{Error, Result};
use crate::forms::multipoly::MultiPoly;

/// Univariate resultant by the Euclidean algorithm.
pub fn resultant(a: &UniPoly, b: &UniPoly) -> FieldElement {
    let (mut a, mut b) = (a.clone(), b.clone());
    if a.is_zero() || b.is_zero() {
        return FieldElement::zero();
    }
    let mut acc = FieldElement::one();
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        if db == 0 {
            return &acc * &b.lc().pow(da as u32);
        }
        if da == 0 {
            return &acc * &a.lc().pow(db as u32);
        }
        let r = a.rem(&b).expect("nonzero divisor");
        if r.is_zero() {
            return FieldElement::zero();
        }
        let dr = r.degree().unwrap();
        if (da * db) % 2 == 1 {
            acc = -acc;
        }
        acc = &acc * &b.lc().pow((da - dr) as u32);
        a = b;
        b = r;
    }
}

/// Norm from `Q(α)` down to Q.
pub fn norm(c: &FieldElement) -> Rational {
    match c.field().number_field() {
        None => c.as_rational().expect("rational"),
        Some(nf) => {
            let m = UniPoly::from_rationals(nf.minimal_polynomial());
            let rep = UniPoly::from_rationals(c.coordinates());
            resultant(&m, &rep).as_rational().expect("rational")
        }
    }
}

/// `Res_t(m(t), g(x - s t))` where the coefficients of `g` live in
/// `Q[t]/(m)`: the norm of the shifted polynomial.
pub fn norm_of_shift(minpoly: &[Rational], g: &UniPoly, s: i64) -> Result<UniPoly> {
    let field = Field::from_irreducible(minpoly.to_vec());
    let e = field.degree();
    let deg = g.degree().ok_or(Error::ZeroPolynomial)?;
    let shift = FieldElement::from_int(s) * field.generator();
    let n = deg * e + 1;
    let mut xs = Vec::with_capacity(n);
    let mut ys = Vec::with_capacity(n);
    for j in 0..n as i64 {
        let x = FieldElement::from_int(j);
        let v = g.eval(&(&x - &shift)).promote(&field)?;
        xs.push(x);
        ys.push(FieldElement::from_rational(norm(&v)));
    }
    Ok(interpolate(&xs, &ys))
}

/// Newton interpolation through `(xs[i], ys[i])`.
pub fn interpolate(xs: &[FieldElement], ys: &[FieldElement]) -> UniPoly {
    let n = xs.len();
    let mut dd: Vec<FieldElement> = ys.to_vec();
    for k in 1..n {
        for i in (k..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &xs[i] - &xs[i - k];
            dd[i] = &num / &den;
        }
    }
    let mut acc = UniPoly::zero();
    for i in (0..n).rev() {
        let lin = UniPoly::new(vec![-&xs[i], FieldElement::one()]);
        acc = acc.mul(&lin).add(&UniPoly::constant(dd[i].clone()));
    }
    acc
}

/// Coefficients `s_{j,0..=j}` of the `j`-th subresultant of `a` and `b`
/// (requires `j < min(deg a, deg b)`).
pub fn subresultant(a: &UniPoly, b: &UniPoly, j: usize) -> Vec<FieldElement> {
    let m = a.degree().expect("nonzero");
    let n = b.degree().expect("nonzero");
    assert!(j < m.min(n) || j == 0);
    let width = m + n - j;
    let mut rows: Vec<Vec<FieldElement>> = Vec::new();
    // columns indexed by power, highest first
    let push = |rows: &mut Vec<Vec<FieldElement>>, p: &UniPoly, s: usize| {
        let mut row = vec![FieldElement::zero(); width];
        for (k, c) in p.coeffs().iter().enumerate() {
            let pw = k + s;
            row[width - 1 - pw] = c.clone();
        }
        rows.push(row);
    };
    for s in (0..n - j).rev() {
        push(&mut rows, a, s);
    }
    for s in (0..m - j).rev() {
        push(&mut rows, b, s);
    }
    let fixed = width - j - 1;
    (0..=j)
        .map(|i| {
            let col = width - 1 - i;
            let mat: Vec<Vec<FieldElement>> = rows
                .iter()
                .map(|r| {
                    let mut v: Vec<FieldElement> = r[..fixed].to_vec();
                    v.push(r[col].clone());
                    v
                })
                .collect();
            det_over_field(mat)
        })
        .collect()
}

/// `Res_y(a, b)` and the first subresultant coefficients `(s10, s11)`, all
/// as polynomials in `x`, for affine polynomials whose `y`-leading
/// coefficients are nonzero constants.
pub struct EliminationData {
    pub resultant: UniPoly,
    pub s10: UniPoly,
    pub s11: UniPoly,
}

pub fn eliminate_y(a: &MultiPoly, b: &MultiPoly) -> Result<EliminationData> {
    let m = a.degree_in(1).ok_or(Error::ZeroPolynomial)? as usize;
    let n = b.degree_in(1).ok_or(Error::ZeroPolynomial)? as usize;
    if !a.coeff_in(1, m as i32).is_constant() || !b.coeff_in(1, n as i32).is_constant() {
        return Err(Error::InvalidInput("y-leading coefficient is not constant".into()));
    }
    let da = a.total_degree().unwrap() as usize;
    let db = b.total_degree().unwrap() as usize;
    let res_bound = da * db;
    let sub_bound = if m >= 2 && n >= 2 { n.saturating_sub(1) * da + m.saturating_sub(1) * db } else { 0 };
    let points = res_bound.max(sub_bound) + 1;
    let mut xs = Vec::with_capacity(points);
    let (mut r, mut s0, mut s1) = (Vec::new(), Vec::new(), Vec::new());
    for j in 0..points as i64 {
        let x = FieldElement::from_int(j);
        let pa = a.substitute_const(0, &x).to_unipoly(1).expect("univariate");
        let pb = b.substitute_const(0, &x).to_unipoly(1).expect("univariate");
        r.push(resultant(&pa, &pb));
        if m >= 2 && n >= 2 {
            let s = subresultant(&pa, &pb, 1);
            s0.push(s[0].clone());
            s1.push(s[1].clone());
        }
        xs.push(x);
    }
    let (s10, s11) = if m >= 2 && n >= 2 {
        (interpolate(&xs, &s0), interpolate(&xs, &s1))
    } else {
        // one of the polynomials is linear in y: it is its own subresultant
        let lin = if m == 1 { a } else { b };
        let c0 = lin.coeff_in(1, 0).to_unipoly(0).expect("univariate");
        let c1 = lin.coeff_in(1, 1).to_unipoly(0).expect("univariate");
        (c0, c1)
    };
    Ok(EliminationData { resultant: interpolate(&xs, &r), s10, s11 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::field::int;
    use crate::forms::multipoly::Vars;

    fn aff(terms: &[([i32; 2], i64)]) -> MultiPoly {
        MultiPoly::from_terms(
            Vars::Affine,
            terms.iter().map(|(e, c)| ([e[0], e[1], 0], FieldElement::from_int(*c))),
        )
    }

    #[test]
    fn univariate_resultants() {
        let f = UniPoly::from_ints(&[-2, 0, 1]);
        assert!(resultant(&f, &f).is_zero());
        // Res(x - 1, x^2 - 2) = (1 - 2) up to sign
        let r = resultant(&UniPoly::from_ints(&[-1, 1]), &f);
        assert_eq!(num_traits::Signed::abs(&r.as_rational().unwrap()), int(1));
    }

    #[test]
    fn norm_of_gaussian_integer() {
        let k = Field::extension(&[int(1), int(0), int(1)]).unwrap();
        let z = &k.generator() + &FieldElement::from_int(2);
        assert_eq!(norm(&z), int(5));
    }

    #[test]
    fn bivariate_resultants() {
        // Res_y(y - x^2, y - x) = ±(x - x^2)
        let e = eliminate_y(&aff(&[([0, 1], 1), ([2, 0], -1)]), &aff(&[([0, 1], 1), ([1, 0], -1)])).unwrap();
        let target = UniPoly::from_ints(&[0, 1, -1]);
        assert!(e.resultant == target || e.resultant == target.scale(&FieldElement::from_int(-1)));
        // Res_y(y^2 - x, y^2 + x y - 1)
        let a = aff(&[([0, 2], 1), ([1, 0], -1)]);
        let b = aff(&[([0, 2], 1), ([1, 1], 1), ([0, 0], -1)]);
        let e = eliminate_y(&a, &b).unwrap();
        // common roots satisfy y = (1 - x)/x; resultant is (1-x)^2 - x^3 up to sign
        let target = UniPoly::from_ints(&[1, -2, 1, -1]);
        assert!(e.resultant == target || e.resultant == target.scale(&FieldElement::from_int(-1)));
    }

    #[test]
    fn subresultant_recovers_common_root() {
        // a = (y - 1)(y - 2), b = (y - 1)(y + 3): gcd y - 1
        let a = UniPoly::from_ints(&[2, -3, 1]);
        let b = UniPoly::from_ints(&[-3, 2, 1]);
        let s = subresultant(&a, &b, 1);
        let root = -(&s[0] / &s[1]);
        assert!(root.is_one());
        let r = subresultant(&a, &b, 0);
        assert!(r[0].is_zero());
    }

    #[test]
    fn interpolation_is_exact() {
        let p = UniPoly::from_ints(&[3, 0, -1, 2]);
        let xs: Vec<FieldElement> = (0..4).map(FieldElement::from_int).collect();
        let ys: Vec<FieldElement> = xs.iter().map(|x| p.eval(x)).collect();
        assert_eq!(interpolate(&xs, &ys), p);
    }
}
