//! Factorization of univariate polynomials over Q and over one simple
//! extension Q(α).
//!
//! Over Q the squarefree parts are factored by Zassenhaus' method. Over Q(α) the norm method is used: a shift
//! `g(x - sα)` with squarefree norm is factored over Q and each norm factor is
//! pulled back with a gcd over Q(α).

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::field::{Field, FieldElement, Rational};
use super::resultant::norm_of_shift;
use super::zassenhaus::factor_squarefree;
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

/// Default cap on the degree of a squarefree polynomial handed to the
/// integer factorizer.
pub const DEFAULT_FACTOR_DEGREE_CAP: usize = 96;

/// Irreducible monic factors over Q with multiplicities, sorted by degree
/// then coefficients.
pub fn univariate_factor(f: &UniPoly) -> Result<Vec<(UniPoly, usize)>> {
    univariate_factor_capped(f, DEFAULT_FACTOR_DEGREE_CAP)
}

pub fn univariate_factor_capped(f: &UniPoly, cap: usize) -> Result<Vec<(UniPoly, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.rational_coeffs().is_none() {
        return Err(Error::InvalidInput(
            "univariate_factor expects rational coefficients".into(),
        ));
    }
    let mut out = Vec::new();
    for (part, mult) in f.squarefree_decomposition()? {
        for p in factor_squarefree_q(&part, cap)? {
            out.push((p, mult));
        }
    }
    out.sort_by(|a, b| cmp_poly(&a.0, &b.0).then(a.1.cmp(&b.1)));
    Ok(out)
}

fn factor_squarefree_q(f: &UniPoly, cap: usize) -> Result<Vec<UniPoly>> {
    let deg = f.degree().unwrap_or(0);
    if deg <= 1 {
        return Ok(if deg == 1 { vec![f.monic()] } else { vec![] });
    }
    if deg > cap {
        return Err(Error::FactorDegreeCap { degree: deg, cap });
    }
    let ints = primitive_integer_coeffs(&f.rational_coeffs().expect("rational"));
    let mut out: Vec<UniPoly> = factor_squarefree(&ints)
        .into_iter()
        .map(|g| {
            let coeffs: Vec<Rational> = g.into_iter().map(Rational::from_integer).collect();
            UniPoly::from_rationals(&coeffs).monic()
        })
        .collect();
    out.sort_by(cmp_poly);
    Ok(out)
}

/// Clears denominators and content.
pub fn primitive_integer_coeffs(c: &[Rational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for q in c {
        lcm = lcm.lcm(q.denom());
    }
    let ints: Vec<BigInt> = c.iter().map(|q| (q * &lcm).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

pub(crate) fn cmp_poly(a: &UniPoly, b: &UniPoly) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| {
        for (x, y) in a.coeffs().iter().zip(b.coeffs()).rev() {
            match x.canonical_cmp(y) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    })
}

/// Irreducible monic factors over `field` with multiplicities.
pub fn factor_over(f: &UniPoly, field: &Field) -> Result<Vec<(UniPoly, usize)>> {
    let nf = match field.number_field() {
        None => return univariate_factor(f),
        Some(nf) => nf,
    };
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let minpoly = nf.minimal_polynomial().to_vec();
    let alpha = field.generator();
    let mut out = Vec::new();
    for (part, mult) in f.squarefree_decomposition()? {
        if part.degree() == Some(1) {
            out.push((part, mult));
            continue;
        }
        let mut found = false;
        for s in shifts().take(40) {
            let norm = norm_of_shift(&minpoly, &part, s)?;
            if norm.gcd(&norm.derivative()).degree() != Some(0) {
                continue;
            }
            let back = FieldElement::from_int(s) * &alpha;
            let mut rest = part.clone();
            for (nfac, _) in univariate_factor(&norm)? {
                // norm(x) = N(g(x - s α)); undo the shift
                let pulled = nfac.shift(&back);
                let h = rest.gcd(&pulled);
                if h.degree().is_some_and(|d| d > 0) {
                    rest = rest.div_exact(&h).expect("gcd divides");
                    out.push((h, mult));
                }
            }
            debug_assert_eq!(rest.degree(), Some(0));
            found = true;
            break;
        }
        if !found {
            return Err(Error::UnsupportedExtension(
                "no squarefree norm found for factorization over the extension".into(),
            ));
        }
    }
    out.sort_by(|a, b| cmp_poly(&a.0, &b.0).then(a.1.cmp(&b.1)));
    Ok(out)
}

/// Roots of `f` lying in `field` (distinct, sorted canonically).
pub fn roots_in(f: &UniPoly, field: &Field) -> Result<Vec<FieldElement>> {
    let mut roots: Vec<FieldElement> = factor_over(f, field)?
        .into_iter()
        .filter(|(p, _)| p.degree() == Some(1))
        .map(|(p, _)| -p.coeff(0))
        .collect();
    roots.sort_by(|a, b| a.canonical_cmp(b));
    Ok(roots)
}

fn shifts() -> impl Iterator<Item = i64> {
    (0i64..).map(|i| if i % 2 == 0 { i / 2 } else { -(i + 1) / 2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::field::int;

    fn expand(factors: &[(UniPoly, usize)]) -> UniPoly {
        factors
            .iter()
            .fold(UniPoly::constant(FieldElement::one()), |acc, (p, m)| acc.mul(&p.pow(*m)))
    }

    #[test]
    fn cube_minus_one() {
        let f = UniPoly::from_ints(&[-1, 0, 0, 1]);
        let fac = univariate_factor(&f).unwrap();
        assert_eq!(
            fac,
            vec![(UniPoly::from_ints(&[-1, 1]), 1), (UniPoly::from_ints(&[1, 1, 1]), 1)]
        );
        assert_eq!(expand(&fac), f);
    }

    #[test]
    fn difference_of_squares_and_irreducible_quadratic() {
        let fac = univariate_factor(&UniPoly::from_ints(&[-1, 0, 1])).unwrap();
        assert_eq!(
            fac,
            vec![(UniPoly::from_ints(&[-1, 1]), 1), (UniPoly::from_ints(&[1, 1]), 1)]
        );
        let fac = univariate_factor(&UniPoly::from_ints(&[1, 0, 1])).unwrap();
        assert_eq!(fac, vec![(UniPoly::from_ints(&[1, 0, 1]), 1)]);
        assert_eq!(univariate_factor(&UniPoly::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn factorization_over_cyclotomic_field() {
        let k = Field::extension(&[int(1), int(1), int(1)]).unwrap();
        // x^3 - 1 splits completely over Q(ζ3)
        let roots = roots_in(&UniPoly::from_ints(&[-1, 0, 0, 1]), &k).unwrap();
        assert_eq!(roots.len(), 3);
        for r in &roots {
            assert!(r.pow(3).is_one());
        }
        // x^2 + 1 stays irreducible over Q(ζ3)
        let fac = factor_over(&UniPoly::from_ints(&[1, 0, 1]), &k).unwrap();
        assert_eq!(fac.len(), 1);
        assert_eq!(fac[0].0.degree(), Some(2));
    }

    #[test]
    fn degree_cap_is_reported() {
        let f = UniPoly::from_ints(&[1, 0, 0, 0, 0, 1, 0, 1]);
        assert!(matches!(
            univariate_factor_capped(&f, 4),
            Err(Error::FactorDegreeCap { degree: 7, cap: 4 })
        ));
    }
}
