//! Foliation-level analysis: singular locus, Milnor numbers, eigenvalue
//! ratios and the bound on the number of non-reduced points.

pub mod eigen;
pub mod locus;

use crate::error::{Error, Result};
use crate::exactmath::factor::DEFAULT_FACTOR_DEGREE_CAP;
use crate::exactmath::field::{Field, FieldElement};
use crate::forms::multipoly::MultiPoly;
use crate::forms::oneform::{Chart, ProjOneForm};
use crate::resolution::colength::{colength, DEFAULT_JET_CAP};

pub use eigen::{eigen_ratio, EigenRatio};

/// A validated projective 1-form with its base field.
#[derive(Debug, Clone)]
pub struct Foliation {
    form: ProjOneForm,
    base: Field,
    removed_factor: Option<MultiPoly>,
}

impl Foliation {
    /// Validates the form; a common factor of the components is divided out
    /// and remembered.
    pub fn new(a: MultiPoly, b: MultiPoly, c: MultiPoly, base: Field) -> Result<Foliation> {
        for p in [&a, &b, &c] {
            p.field()?;
            for (_, coeff) in p.terms() {
                if !coeff.field().is_rational() && coeff.field() != &base {
                    return Err(Error::MixedFields);
                }
            }
        }
        let (form, removed_factor) = ProjOneForm::new(a, b, c)?;
        Ok(Foliation { form, base, removed_factor })
    }

    pub fn from_form(form: ProjOneForm, base: Field) -> Foliation {
        Foliation { form, base, removed_factor: None }
    }

    pub fn form(&self) -> &ProjOneForm {
        &self.form
    }

    pub fn degree(&self) -> usize {
        self.form.degree()
    }

    pub fn base_field(&self) -> &Field {
        &self.base
    }

    pub fn removed_factor(&self) -> Option<&MultiPoly> {
        self.removed_factor.as_ref()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Reduced,
    NonReduced,
    IrrationalRatio,
    /// Singular linear part.
    Degenerate,
}

/// Representative of a conjugacy class of singular points.
#[derive(Debug, Clone)]
pub struct SingularPoint {
    pub chart: Chart,
    pub affine: [FieldElement; 2],
    pub field: Field,
    pub class_size: usize,
    pub milnor: usize,
    /// `None` when the linear part is singular.
    pub eigen: Option<EigenRatio>,
}

impl SingularPoint {
    pub fn projective(&self) -> [FieldElement; 3] {
        let one = FieldElement::one();
        let [p, q] = self.affine.clone();
        match self.chart {
            Chart::Z => [p, q, one],
            Chart::Y => [p, one, q],
            Chart::X => [one, p, q],
        }
    }

    pub fn classification(&self) -> Classification {
        match self.eigen {
            Some(EigenRatio::Pair { delta, .. }) if delta > 0 => Classification::NonReduced,
            Some(EigenRatio::Pair { .. }) => Classification::Reduced,
            Some(EigenRatio::Irrational) => Classification::IrrationalRatio,
            None => Classification::Degenerate,
        }
    }

    pub fn pair(&self) -> Option<(i64, i64)> {
        self.eigen.and_then(|e| e.pair())
    }

    /// The affine pair `(a, b)` written in local coordinates at the point.
    pub fn local_pair(&self, form: &ProjOneForm) -> (MultiPoly, MultiPoly) {
        let (a, b) = form.chart_restrict(self.chart);
        (a.translate(&self.affine), b.translate(&self.affine))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct LocusOptions {
    pub factor_cap: usize,
    pub jet_cap: usize,
}

impl Default for LocusOptions {
    fn default() -> Self {
        LocusOptions { factor_cap: DEFAULT_FACTOR_DEGREE_CAP, jet_cap: DEFAULT_JET_CAP }
    }
}

#[derive(Debug, Clone)]
pub struct SingularLocus {
    pub points: Vec<SingularPoint>,
}

impl SingularLocus {
    /// `Σ e·μ` over the classes.
    pub fn weighted_count(&self) -> usize {
        self.points.iter().map(|p| p.class_size * p.milnor).sum()
    }

    /// Number of non-reduced points, conjugates counted individually.
    pub fn non_reduced_count(&self) -> usize {
        self.points
            .iter()
            .filter(|p| p.classification() == Classification::NonReduced)
            .map(|p| p.class_size)
            .sum()
    }

    pub fn non_reduced(&self) -> impl Iterator<Item = &SingularPoint> {
        self.points.iter().filter(|p| p.classification() == Classification::NonReduced)
    }

    pub fn reduced(&self) -> impl Iterator<Item = &SingularPoint> {
        self.points.iter().filter(|p| p.classification() == Classification::Reduced)
    }

    pub fn has_irrational_ratio(&self) -> bool {
        self.points.iter().any(|p| p.classification() == Classification::IrrationalRatio)
    }
}

/// Locates the singular points and computes their Milnor numbers and
/// eigenvalue ratios. Does not require non-degeneracy.
pub fn singular_locus(fol: &Foliation, opts: LocusOptions) -> Result<SingularLocus> {
    let located = locus::locate(fol.form(), fol.base_field(), opts.factor_cap)?;
    let mut points = Vec::with_capacity(located.len());
    for lp in located {
        let (a, b) = fol.form().chart_restrict(lp.chart);
        let (a, b) = (a.translate(&lp.affine), b.translate(&lp.affine));
        let j = eigen::linear_part(&a, &b);
        let (milnor, eigen) = if eigen::determinant(&j).is_zero() {
            (colength(&[a, b], opts.jet_cap)?, None)
        } else {
            (1, Some(eigen_ratio(&j)?))
        };
        points.push(SingularPoint {
            chart: lp.chart,
            affine: lp.affine,
            field: lp.field,
            class_size: lp.class_size,
            milnor,
            eigen,
        });
    }
    Ok(SingularLocus { points })
}

/// Singular locus of a non-degenerate foliation: every Milnor number is 1
/// and the weighted count is `r^2 + r + 1`.
pub fn nondegenerate_locus(fol: &Foliation, opts: LocusOptions) -> Result<SingularLocus> {
    let loc = singular_locus(fol, opts)?;
    if let Some(p) = loc.points.iter().find(|p| p.milnor != 1) {
        return Err(Error::DegenerateFoliation(format!(
            "Milnor number {} at {}",
            p.milnor,
            render_point(&p.projective())
        )));
    }
    let r = fol.degree();
    let expected = r * r + r + 1;
    if loc.weighted_count() != expected {
        return Err(Error::DegenerateFoliation(format!(
            "{} singular points counted, expected {expected}",
            loc.weighted_count()
        )));
    }
    Ok(loc)
}

/// `r + 1 <= n`; failure proves there is no rational first integral.
pub fn cota_test(r: usize, n: usize) -> bool {
    r < n
}

pub fn render_point(p: &[FieldElement; 3]) -> String {
    format!("({}:{}:{})", p[0].render(), p[1].render(), p[2].render())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::multipoly::Vars;

    fn v(i: usize) -> MultiPoly {
        MultiPoly::var(Vars::Projective, i)
    }

    #[test]
    fn degree_one_family() {
        let (x, y, z) = (v(0), v(1), v(2));
        let fol = Foliation::new(
            y.mul(&z),
            x.mul(&z),
            x.mul(&y).scale(&FieldElement::from_int(-2)),
            Field::rationals(),
        )
        .unwrap();
        let loc = nondegenerate_locus(&fol, LocusOptions::default()).unwrap();
        assert_eq!(loc.points.len(), 3);
        let kinds: Vec<_> = loc.points.iter().map(|p| (p.chart, p.pair().unwrap())).collect();
        assert_eq!(kinds, vec![(Chart::Z, (-1, 1)), (Chart::Y, (1, 2)), (Chart::X, (1, 2))]);
        assert_eq!(loc.non_reduced_count(), 2);
        assert!(cota_test(1, 2));
    }

    #[test]
    fn cota_boundaries() {
        assert!(!cota_test(2, 1));
        assert!(!cota_test(2, 2));
        assert!(cota_test(4, 12));
        assert!(cota_test(0, 1));
    }

    #[test]
    fn degenerate_point_is_rejected() {
        // y dx + x^2 dy in the chart Z = 1
        let (x, y, z) = (v(0), v(1), v(2));
        let a = y.mul(&z.pow(2));
        let b = x.pow(2).mul(&z);
        let c = x.mul(&y).mul(&z.add(&x)).neg();
        let fol = Foliation::new(a, b, c, Field::rationals());
        let loc = singular_locus(&fol.unwrap(), LocusOptions::default()).unwrap();
        let origin = loc.points.iter().find(|p| p.chart == Chart::Z && p.affine.iter().all(|c| c.is_zero())).unwrap();
        assert_eq!(origin.milnor, 2);
    }
}
