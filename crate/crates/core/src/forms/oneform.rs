use super::gcd::gcd_many;
use super::multipoly::{common_degree, MultiPoly, Vars};
use crate::error::{Error, Result};

/// Affine chart of the projective plane, named by the coordinate set to 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chart {
    X,
    Y,
    Z,
}

impl Chart {
    pub fn slot(self) -> usize {
        match self {
            Chart::X => 0,
            Chart::Y => 1,
            Chart::Z => 2,
        }
    }

    /// Projective slots of the two affine coordinates, in order.
    pub fn affine_slots(self) -> [usize; 2] {
        match self {
            Chart::X => [1, 2],
            Chart::Y => [0, 2],
            Chart::Z => [0, 1],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Chart::X => "X=1",
            Chart::Y => "Y=1",
            Chart::Z => "Z=1",
        }
    }
}

/// `A dX + B dY + C dZ` with homogeneous components of one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjOneForm {
    pub a: MultiPoly,
    pub b: MultiPoly,
    pub c: MultiPoly,
}

/// 2-form with components in the order `(XY, YZ, XZ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoForm {
    pub xy: MultiPoly,
    pub yz: MultiPoly,
    pub xz: MultiPoly,
}

impl TwoForm {
    pub fn is_zero(&self) -> bool {
        self.xy.is_zero() && self.yz.is_zero() && self.xz.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EulerCheck {
    Valid,
    Invalid { witness: String },
}

/// Whether `XA + YB + ZC` vanishes identically.
pub fn euler_check(a: &MultiPoly, b: &MultiPoly, c: &MultiPoly) -> Result<EulerCheck> {
    common_degree(&[a, b, c])?;
    let s = euler_sum(a, b, c);
    Ok(match s.witness() {
        None => EulerCheck::Valid,
        Some(w) => EulerCheck::Invalid { witness: w },
    })
}

fn euler_sum(a: &MultiPoly, b: &MultiPoly, c: &MultiPoly) -> MultiPoly {
    let v = |i| MultiPoly::var(Vars::Projective, i);
    v(0).mul(a).add(&v(1).mul(b)).add(&v(2).mul(c))
}

impl ProjOneForm {
    /// Validates homogeneity and the Euler condition, then divides out
    /// `gcd(A, B, C)`. The second value is the removed common factor when it
    /// was not constant.
    pub fn new(a: MultiPoly, b: MultiPoly, c: MultiPoly) -> Result<(ProjOneForm, Option<MultiPoly>)> {
        let a = a.with_vars(Vars::Projective);
        let b = b.with_vars(Vars::Projective);
        let c = c.with_vars(Vars::Projective);
        if a.is_zero() && b.is_zero() && c.is_zero() {
            return Err(Error::DegenerateFoliation("the 1-form is zero".into()));
        }
        if let EulerCheck::Invalid { witness } = euler_check(&a, &b, &c)? {
            return Err(Error::EulerViolation(witness));
        }
        let g = gcd_many([&a, &b, &c].into_iter().filter(|p| !p.is_zero())).expect("nonzero");
        if g.is_constant() {
            return Ok((ProjOneForm { a, b, c }, None));
        }
        let div = |p: &MultiPoly| p.div_exact(&g).expect("gcd divides");
        Ok((ProjOneForm { a: div(&a), b: div(&b), c: div(&c) }, Some(g)))
    }

    /// Builds without validation; for forms known to be valid.
    pub fn from_components_unchecked(a: MultiPoly, b: MultiPoly, c: MultiPoly) -> ProjOneForm {
        ProjOneForm { a, b, c }
    }

    /// Foliation degree `r`: the component degree minus one.
    pub fn degree(&self) -> usize {
        [&self.a, &self.b, &self.c]
            .iter()
            .filter_map(|p| p.total_degree())
            .next()
            .expect("nonzero form") as usize
            - 1
    }

    pub fn components(&self) -> [&MultiPoly; 3] {
        [&self.a, &self.b, &self.c]
    }

    /// The pair `(a, b)` of the affine form in the given chart.
    pub fn chart_restrict(&self, chart: Chart) -> (MultiPoly, MultiPoly) {
        let comps = self.components();
        let [i, j] = chart.affine_slots();
        (comps[i].dehomogenize(chart.slot()), comps[j].dehomogenize(chart.slot()))
    }

    pub fn scale(&self, c: &crate::exactmath::field::FieldElement) -> ProjOneForm {
        ProjOneForm { a: self.a.scale(c), b: self.b.scale(c), c: self.c.scale(c) }
    }
}

/// `η ∧ ω` for `η = P dX + Q dY + R dZ`.
pub fn wedge(eta: [&MultiPoly; 3], omega: [&MultiPoly; 3]) -> TwoForm {
    let [p, q, r] = eta;
    let [a, b, c] = omega;
    TwoForm {
        xy: p.mul(b).sub(&q.mul(a)),
        yz: q.mul(c).sub(&r.mul(b)),
        xz: p.mul(c).sub(&r.mul(a)),
    }
}

/// Numerator `G dF - F dG` of `d(F/G)`.
pub fn pencil_differential(f: &MultiPoly, g: &MultiPoly) -> Result<[MultiPoly; 3]> {
    let df = f.total_degree().ok_or(Error::ZeroPolynomial)?;
    let dg = g.total_degree().ok_or(Error::ZeroPolynomial)?;
    if !f.is_homogeneous() || !g.is_homogeneous() {
        return Err(Error::InhomogeneousInput("pencil members must be homogeneous".into()));
    }
    if df != dg {
        return Err(Error::UnequalDegrees(df as usize, dg as usize));
    }
    if !super::gcd::gcd(f, g).is_constant() {
        return Err(Error::NotCoprime);
    }
    Ok([0, 1, 2].map(|i| g.mul(&f.derivative(i)).sub(&f.mul(&g.derivative(i)))))
}

/// The wedge certificate `(G dF - F dG) ∧ Ω`; zero iff `F/G` is a first
/// integral.
pub fn certificate(f: &MultiPoly, g: &MultiPoly, omega: &ProjOneForm) -> Result<TwoForm> {
    let [p, q, r] = pencil_differential(f, g)?;
    Ok(wedge([&p, &q, &r], omega.components()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::field::FieldElement;

    fn v(i: usize) -> MultiPoly {
        MultiPoly::var(Vars::Projective, i)
    }

    fn k(n: i64) -> FieldElement {
        FieldElement::from_int(n)
    }

    #[test]
    fn euler_examples() {
        let (x, y, z) = (v(0), v(1), v(2));
        assert_eq!(euler_check(&y, &x.neg(), &MultiPoly::zero(Vars::Projective)).unwrap(), EulerCheck::Valid);
        match euler_check(&x, &y, &z).unwrap() {
            EulerCheck::Invalid { witness } => assert_eq!(witness, "X^2"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(euler_check(&x, &y.pow(2), &z), Err(Error::InhomogeneousInput(_))));
    }

    #[test]
    fn basis_wedge() {
        let one = MultiPoly::one(Vars::Projective);
        let zero = MultiPoly::zero(Vars::Projective);
        let w = wedge([&one, &zero, &zero], [&zero, &one, &zero]);
        assert_eq!(w.xy, one);
        assert!(w.yz.is_zero() && w.xz.is_zero());
    }

    #[test]
    fn pencil_differentials() {
        let (x, y, z) = (v(0), v(1), v(2));
        let [p, q, r] = pencil_differential(&x, &y).unwrap();
        assert_eq!((p, q, r.is_zero()), (y.clone(), x.neg(), true));
        let [p, q, r] = pencil_differential(&x.mul(&y), &z.pow(2)).unwrap();
        assert_eq!(p, y.mul(&z.pow(2)));
        assert_eq!(q, x.mul(&z.pow(2)));
        assert_eq!(r, x.mul(&y).mul(&z).scale(&k(-2)));
        assert_eq!(pencil_differential(&x.pow(2), &x.mul(&y)), Err(Error::NotCoprime));
    }

    #[test]
    fn common_factor_is_removed() {
        let (x, y, z) = (v(0), v(1), v(2));
        let (w, g) = ProjOneForm::new(y.mul(&z), x.neg().mul(&z), MultiPoly::zero(Vars::Projective)).unwrap();
        assert_eq!(g, Some(z));
        assert_eq!(w.degree(), 0);
        assert_eq!(w.a, y);
    }

    #[test]
    fn chart_views() {
        let (x, y, z) = (v(0), v(1), v(2));
        let (w, _) = ProjOneForm::new(y.mul(&z), x.mul(&z), x.mul(&y).scale(&k(-2))).unwrap();
        let (a, b) = w.chart_restrict(Chart::Z);
        assert_eq!((a.render(), b.render()), ("y".to_string(), "x".to_string()));
    }
}
