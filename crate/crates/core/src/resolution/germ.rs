//! Invariants of plane curve germs at the origin.

use crate::error::{Error, Result};
use crate::exactmath::field::FieldElement;
use crate::forms::gcd::gcd_many;
use crate::forms::multipoly::{MultiPoly, Vars};

use super::cluster::{euclid_multiplicities, Cluster, InfinitelyNearPoint};
use super::colength::colength;

/// Default truncation cap for germ colengths.
pub const DEFAULT_GERM_JET_CAP: usize = 24;

/// Local equation `f(u, v)` with `f(0, 0) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Germ {
    poly: MultiPoly,
}

impl Germ {
    pub fn new(poly: MultiPoly) -> Result<Germ> {
        let poly = poly.with_vars(Vars::Local);
        if poly.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !poly.coeff(&[0, 0, 0]).is_zero() {
            return Err(Error::InvalidInput("the germ does not pass through the origin".into()));
        }
        Ok(Germ { poly })
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn multiplicity(&self) -> i32 {
        self.poly.order().unwrap_or(0)
    }

    pub fn times(&self, other: &Germ) -> Germ {
        Germ { poly: self.poly.mul(&other.poly) }
    }

    fn partials(&self) -> [MultiPoly; 2] {
        [self.poly.derivative(0), self.poly.derivative(1)]
    }

    /// No repeated branch through the origin.
    pub fn is_reduced(&self) -> bool {
        let [gu, gv] = self.partials();
        let g = gcd_many([&self.poly, &gu, &gv]).expect("nonempty");
        !g.coeff(&[0, 0, 0]).is_zero()
    }

    /// `g / gcd(g, g_u, g_v)`.
    pub fn squarefree_part(&self) -> MultiPoly {
        let [gu, gv] = self.partials();
        let g = gcd_many([&self.poly, &gu, &gv]).expect("nonempty");
        self.poly.div_exact(&g).expect("gcd divides")
    }
}

pub fn germ_milnor(g: &Germ, cap: usize) -> Result<usize> {
    let [gu, gv] = g.partials();
    colength(&[gu, gv], cap)
}

pub fn germ_tjurina(g: &Germ, cap: usize) -> Result<usize> {
    let [gu, gv] = g.partials();
    colength(&[g.poly.clone(), gu, gv], cap)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Nodal {
    /// Two smooth transversal branches with multiplicities `n <= m`.
    Yes { n: usize, m: usize },
    No(String),
}

pub fn is_nodal(g: &Germ) -> Nodal {
    let red = g.squarefree_part();
    if red.order() != Some(2) {
        return Nodal::No(format!("reduced equation has multiplicity {}", red.order().unwrap_or(0)));
    }
    let q = red.homogeneous_part(2);
    let (a, b, c) = (q.coeff(&[2, 0, 0]), q.coeff(&[1, 1, 0]), q.coeff(&[0, 2, 0]));
    let disc = &(&b * &b) - &(&FieldElement::from_int(4) * &(&a * &c));
    if disc.is_zero() {
        return Nodal::No("the tangent cone of the reduced equation is a double line".into());
    }
    let mults = tangent_multiplicities(&g.poly);
    match mults.as_slice() {
        [n, m] => Nodal::Yes { n: *n.min(m), m: *n.max(m) },
        other => Nodal::No(format!("tangent cone has {} distinct lines", other.len())),
    }
}

/// Multiplicities of the distinct lines of the tangent cone, one entry per
/// line over the algebraic closure, sorted.
pub fn tangent_multiplicities(f: &MultiPoly) -> Vec<usize> {
    let m = match f.order() {
        None => return vec![],
        Some(m) => m,
    };
    let cone = f.homogeneous_part(m);
    let mut out = line_multiplicities(&cone, m as usize);
    out.sort_unstable();
    out
}

/// Roots of the form `h(1, v)` with multiplicities, plus the point at
/// infinity when `deg h(1, v) < m`.
fn line_multiplicities(cone: &MultiPoly, m: usize) -> Vec<usize> {
    let dehom = cone.substitute_const(0, &FieldElement::one()).to_unipoly(1).expect("univariate");
    let mut out = Vec::new();
    let deg = dehom.degree().unwrap_or(0);
    if deg < m {
        out.push(m - deg);
    }
    if deg > 0 {
        for (factor, mult) in dehom.squarefree_decomposition().expect("nonzero") {
            for _ in 0..factor.degree().unwrap_or(0) {
                out.push(mult);
            }
        }
    }
    out
}

/// Applies one cluster step to a local equation and removes `u^divide`.
fn step(f: &MultiPoly, p: &InfinitelyNearPoint, divide: i32) -> MultiPoly {
    let f = if p.swap { f.swap01() } else { f.clone() };
    let f = f.blowup_substitution().shift_exponents([-divide, 0, 0]);
    f.translate(&[FieldElement::zero(), p.direction.clone()])
}

/// Strict transforms along the chain; returns the multiplicities and the
/// last strict transform.
fn strict_transforms(g: &Germ, cluster: &Cluster) -> (Vec<usize>, MultiPoly) {
    let mut f = g.poly.clone();
    let mut seq = Vec::with_capacity(cluster.len());
    for (i, p) in cluster.chain.iter().enumerate() {
        if i > 0 {
            let prev = *seq.last().unwrap() as i32;
            f = step(&f, p, prev);
        }
        seq.push(f.order().unwrap_or(0) as usize);
    }
    (seq, f)
}

pub fn germ_mult_sequence(g: &Germ, cluster: &Cluster) -> Vec<usize> {
    strict_transforms(g, cluster).0
}

/// Intersection multiplicities of the strict transform with the exceptional
/// line of the blowup of the last chain point, sorted.
pub fn final_intersections(g: &Germ, cluster: &Cluster) -> Vec<usize> {
    tangent_multiplicities(&strict_transforms(g, cluster).1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeCheck {
    Match,
    Mismatch(String),
}

/// Topological type `S(a, b, k)` of `u^{ka} + v^{kb}`, tested along the
/// model cluster of `(a, b)`.
pub fn type_check_s(g: &Germ, a: i64, b: i64, k: i64, cap: usize) -> Result<TypeCheck> {
    let cluster = Cluster::model(a, b)?;
    type_check_s_along(g, &cluster, a, b, k, cap)
}

/// Same test along a given cluster with eigenpair `{a, b}`.
pub fn type_check_s_along(g: &Germ, cluster: &Cluster, a: i64, b: i64, k: i64, cap: usize) -> Result<TypeCheck> {
    if !g.is_reduced() {
        return Err(Error::NotReduced);
    }
    let mu = germ_milnor(g, cap)?;
    let expected = ((k * a - 1) * (k * b - 1)) as usize;
    if mu != expected {
        return Ok(TypeCheck::Mismatch(format!("Milnor number {mu}, expected {expected}")));
    }
    let (seq, last) = strict_transforms(g, cluster);
    let want: Vec<usize> = euclid_multiplicities(a.max(b), a.min(b))?.iter().map(|m| (k * m) as usize).collect();
    if seq != want {
        return Ok(TypeCheck::Mismatch(format!("multiplicity sequence {seq:?}, expected {want:?}")));
    }
    let fin = tangent_multiplicities(&last);
    if fin != vec![1; k as usize] {
        return Ok(TypeCheck::Mismatch(format!("final transform meets the exceptional line as {fin:?}")));
    }
    Ok(TypeCheck::Match)
}

/// Equal multiplicity sequences and final intersection behaviour, both
/// germs reduced.
pub fn equisingular(g1: &Germ, g2: &Germ, cluster: &Cluster) -> bool {
    if !g1.is_reduced() || !g2.is_reduced() {
        return false;
    }
    let (s1, l1) = strict_transforms(g1, cluster);
    let (s2, l2) = strict_transforms(g2, cluster);
    s1 == s2 && tangent_multiplicities(&l1) == tangent_multiplicities(&l2)
}

/// `u^i v^j` helper for tests and the CLI.
pub fn local_monomial(i: i32, j: i32, c: i64) -> MultiPoly {
    MultiPoly::monomial(Vars::Local, [i, j, 0], FieldElement::from_int(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn germ(terms: &[(i32, i32, i64)]) -> Germ {
        let mut p = MultiPoly::zero(Vars::Local);
        for &(i, j, c) in terms {
            p = p.add(&local_monomial(i, j, c));
        }
        Germ::new(p).unwrap()
    }

    fn h1() -> Germ {
        germ(&[(3, 0, 1), (0, 3, 2), (3, 3, -3)])
    }

    fn h2() -> Germ {
        germ(&[(3, 0, 1), (0, 3, 1), (3, 3, -2)])
    }

    #[test]
    fn milnor_and_tjurina() {
        let node = germ(&[(1, 1, 1)]);
        assert_eq!(germ_milnor(&node, 24).unwrap(), 1);
        assert_eq!(germ_tjurina(&node, 24).unwrap(), 1);
        let cusp = germ(&[(3, 0, 1), (0, 2, -1)]);
        assert_eq!(germ_milnor(&cusp, 24).unwrap(), 2);
        assert_eq!(germ_tjurina(&cusp, 24).unwrap(), 2);
    }

    #[test]
    fn nodal_examples() {
        assert_eq!(is_nodal(&germ(&[(1, 1, 1)])), Nodal::Yes { n: 1, m: 1 });
        assert_eq!(is_nodal(&germ(&[(2, 3, 1)])), Nodal::Yes { n: 2, m: 3 });
        assert!(matches!(is_nodal(&germ(&[(3, 0, 1), (0, 2, -1)])), Nodal::No(_)));
        // conjugate tangents u^2 + v^2
        assert_eq!(is_nodal(&germ(&[(2, 0, 1), (0, 2, 1)])), Nodal::Yes { n: 1, m: 1 });
    }

    #[test]
    fn multiplicity_sequences() {
        let smooth = germ(&[(2, 0, 1), (0, 1, -1)]);
        assert_eq!(germ_mult_sequence(&smooth, &Cluster::model(1, 1).unwrap()), vec![1]);
        assert_eq!(germ_mult_sequence(&h1(), &Cluster::model(1, 1).unwrap()), vec![3]);
        let cusp = germ(&[(0, 2, 1), (3, 0, -1)]);
        assert_eq!(germ_mult_sequence(&cusp, &Cluster::model(3, 2).unwrap()), vec![2, 1, 1]);
    }

    #[test]
    fn s_types() {
        let six_lines = germ(&[(6, 0, 1), (0, 6, 1)]);
        assert_eq!(type_check_s(&six_lines, 1, 1, 6, 24).unwrap(), TypeCheck::Match);
        let cusp = germ(&[(2, 0, 1), (0, 3, 1)]);
        assert_eq!(type_check_s(&cusp, 2, 3, 1, 24).unwrap(), TypeCheck::Match);
        assert!(matches!(type_check_s(&cusp, 1, 1, 2, 24).unwrap(), TypeCheck::Mismatch(_)));
        assert_eq!(type_check_s(&germ(&[(2, 0, 1)]), 1, 1, 1, 24), Err(Error::NotReduced));
    }

    #[test]
    fn equisingularity() {
        let c = Cluster::model(1, 1).unwrap();
        assert!(equisingular(&h1(), &h2(), &c));
        assert!(equisingular(&germ(&[(1, 1, 1)]), &germ(&[(1, 1, 1), (3, 0, 1)]), &c));
        assert!(!equisingular(&germ(&[(1, 1, 1)]), &germ(&[(0, 2, 1), (3, 0, -1)]), &c));
    }
}
