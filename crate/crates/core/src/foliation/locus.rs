//! Singular points of a projective 1-form.
//!
//! Points with `Z != 0` are found in the chart `Z = 1` by eliminating `y`
//! after a shear `x' = x + λy` that makes both `y`-leading coefficients
//! constant; each irreducible factor of the resultant gives one conjugacy
//! class, whose `y` coordinate is read off the first subresultant. Points on
//! `Z = 0` come from a univariate gcd in the chart `Y = 1`, plus `(1:0:0)`.

use crate::error::{Error, Result};
use crate::exactmath::factor::{factor_over, univariate_factor_capped};
use crate::exactmath::field::{Field, FieldElement};
use crate::exactmath::resultant::eliminate_y;
use crate::exactmath::unipoly::UniPoly;
use crate::forms::multipoly::{MultiPoly, Vars};
use crate::forms::oneform::{Chart, ProjOneForm};

/// A singular point before its local analysis.
#[derive(Debug, Clone)]
pub struct LocatedPoint {
    pub chart: Chart,
    pub affine: [FieldElement; 2],
    /// Field generated by the coordinates (the base field when one was
    /// declared).
    pub field: Field,
    /// Number of Galois conjugates represented by this point.
    pub class_size: usize,
}

impl LocatedPoint {
    pub fn projective(&self) -> [FieldElement; 3] {
        let one = FieldElement::one();
        let [p, q] = self.affine.clone();
        match self.chart {
            Chart::Z => [p, q, one],
            Chart::Y => [p, one, q],
            Chart::X => [one, p, q],
        }
    }
}

const MAX_SHEARS: i64 = 40;

/// All singular points, chart `Z = 1` first, then `(t:1:0)`, then `(1:0:0)`.
pub fn locate(form: &ProjOneForm, base: &Field, factor_cap: usize) -> Result<Vec<LocatedPoint>> {
    let (a, b) = form.chart_restrict(Chart::Z);
    let mut out = Vec::new();
    for (field, [x, y], size) in affine_zeros(&a, &b, base, factor_cap)? {
        out.push(LocatedPoint { chart: Chart::Z, affine: [x, y], field, class_size: size });
    }
    let (ay, cy) = form.chart_restrict(Chart::Y);
    let zero = FieldElement::zero();
    let la = ay.substitute_const(1, &zero).to_unipoly(0).expect("univariate");
    let lc = cy.substitute_const(1, &zero).to_unipoly(0).expect("univariate");
    if la.is_zero() && lc.is_zero() {
        return Err(Error::DegenerateFoliation("the line Z = 0 is singular".into()));
    }
    let g = la.gcd(&lc);
    if g.degree().is_some_and(|d| d > 0) {
        for (field, alpha, size) in roots_by_class(&g.squarefree_part()?, base, factor_cap)? {
            out.push(LocatedPoint { chart: Chart::Y, affine: [alpha, zero.clone()], field, class_size: size });
        }
    }
    let (bx, cx) = form.chart_restrict(Chart::X);
    if bx.coeff(&[0, 0, 0]).is_zero() && cx.coeff(&[0, 0, 0]).is_zero() {
        out.push(LocatedPoint {
            chart: Chart::X,
            affine: [zero.clone(), zero],
            field: base.clone(),
            class_size: 1,
        });
    }
    Ok(out)
}

/// One entry per irreducible factor: the field, the root, the class size.
fn roots_by_class(f: &UniPoly, base: &Field, cap: usize) -> Result<Vec<(Field, FieldElement, usize)>> {
    let factors = if base.is_rational() {
        univariate_factor_capped(f, cap)?
    } else {
        factor_over(f, base)?
    };
    let mut out = Vec::new();
    for (q, _) in factors {
        let q = q.monic();
        match q.degree() {
            Some(1) => out.push((base.clone(), -q.coeff(0), 1)),
            Some(e) if base.is_rational() => {
                let coeffs = q.rational_coeffs().expect("rational factor");
                let field = Field::from_irreducible(coeffs);
                let alpha = field.generator();
                out.push((field, alpha, e));
            }
            _ => {
                return Err(Error::UnsupportedExtension(format!(
                    "singular points need an extension of degree {} over the declared field",
                    q.degree().unwrap_or(0)
                )))
            }
        }
    }
    Ok(out)
}

type AffineClass = (Field, [FieldElement; 2], usize);

/// Common zeros of two affine polynomials, one entry per conjugacy class.
pub fn affine_zeros(a: &MultiPoly, b: &MultiPoly, base: &Field, cap: usize) -> Result<Vec<AffineClass>> {
    for (p, q) in [(a, b), (b, a)] {
        if p.is_zero() {
            if q.is_constant() && !q.is_zero() {
                return Ok(vec![]);
            }
            return Err(Error::DegenerateFoliation("singular locus contains a curve".into()));
        }
    }
    if a.is_constant() || b.is_constant() {
        return Ok(vec![]);
    }
    for step in 0..MAX_SHEARS {
        let lambda = if step % 2 == 0 { -(step / 2) } else { (step + 1) / 2 };
        let lam = FieldElement::from_int(lambda);
        let x = MultiPoly::var(Vars::Affine, 0);
        let y = MultiPoly::var(Vars::Affine, 1);
        // x = x' - λ y
        let sub = [x.sub(&y.scale(&lam)), y.clone()];
        let a2 = a.compose(&sub, Vars::Affine);
        let b2 = b.compose(&sub, Vars::Affine);
        if !monic_in_y(&a2) || !monic_in_y(&b2) {
            continue;
        }
        let elim = eliminate_y(&a2, &b2)?;
        if elim.resultant.is_zero() {
            return Err(Error::DegenerateFoliation("singular locus contains a curve".into()));
        }
        if elim.resultant.degree() == Some(0) {
            return Ok(vec![]);
        }
        let sq = elim.resultant.squarefree_part()?;
        match recover(&sq, &elim.s10, &elim.s11, &a2, &b2, a, b, &lam, base, cap)? {
            Some(v) => return Ok(v),
            None => continue,
        }
    }
    Err(Error::DegenerateFoliation("singular points could not be separated by a shear".into()))
}

fn monic_in_y(p: &MultiPoly) -> bool {
    let d = p.degree_in(1).unwrap_or(0);
    d > 0 && p.total_degree() == Some(d) && p.coeff_in(1, d).is_constant()
}

#[allow(clippy::too_many_arguments)]
fn recover(
    r: &UniPoly,
    s10: &UniPoly,
    s11: &UniPoly,
    a2: &MultiPoly,
    b2: &MultiPoly,
    a: &MultiPoly,
    b: &MultiPoly,
    lam: &FieldElement,
    base: &Field,
    cap: usize,
) -> Result<Option<Vec<AffineClass>>> {
    let mut out = Vec::new();
    for (field, alpha, size) in roots_by_class(r, base, cap)? {
        let den = s11.eval(&alpha);
        let y = if !den.is_zero() {
            -(&s10.eval(&alpha) / &den)
        } else {
            let pa = a2.substitute_const(0, &alpha).to_unipoly(1).expect("univariate");
            let pb = b2.substitute_const(0, &alpha).to_unipoly(1).expect("univariate");
            let g = pa.gcd(&pb).squarefree_part()?;
            if g.degree() != Some(1) {
                return Ok(None);
            }
            -g.monic().coeff(0)
        };
        let x = &alpha - &(lam * &y);
        let pt = [x.clone(), y.clone()];
        if !a.eval(&pt).is_zero() || !b.eval(&pt).is_zero() {
            return Ok(None);
        }
        out.push((field, [x, y], size));
    }
    Ok(Some(out))
}
