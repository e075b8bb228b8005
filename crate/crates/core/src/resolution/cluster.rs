//! Chains of infinitely near points over non-reduced singularities.
//!
//! At a point with eigenpair `δ < ρ` the leaves are tangent to the
//! eigendirection of the smaller eigenvalue. Blowing up there gives a new
//! non-reduced point with pair `(ρ - δ, δ)`; the chain stops at `(1, 1)`,
//! whose blowup is dicritical.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exactmath::field::{Field, FieldElement};
use crate::foliation::eigen::{determinant, eigen_ratio, linear_part, EigenRatio};
use crate::foliation::{Foliation, SingularPoint};
use crate::forms::multipoly::{MultiPoly, Vars};

/// Multiplicities of the base points of `(u^ρ, v^δ)`.
pub fn euclid_multiplicities(rho: i64, delta: i64) -> Result<Vec<i64>> {
    if rho <= 0 || delta <= 0 || rho.gcd(&delta) != 1 {
        return Err(Error::NotCoprimeIntegers);
    }
    let (mut hi, mut lo) = (rho.max(delta), rho.min(delta));
    let mut out = Vec::new();
    loop {
        if hi == 1 && lo == 1 {
            out.push(1);
            return Ok(out);
        }
        out.push(lo);
        let next = hi - lo;
        hi = next.max(lo);
        lo = next.min(lo);
    }
}

/// One point of the chain. `swap` and `direction` describe how it is
/// reached from its predecessor: optionally exchange the two local
/// coordinates, substitute `(u, v) -> (u, u v)` and move `v` to
/// `direction`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfinitelyNearPoint {
    pub level: usize,
    pub swap: bool,
    pub direction: FieldElement,
    /// `(δ, ρ)` with `δ <= ρ`.
    pub pair: (i64, i64),
}

#[derive(Debug, Clone)]
pub struct Cluster {
    /// Field of the local coordinates.
    pub field: Field,
    pub chain: Vec<InfinitelyNearPoint>,
    pub multiplicities: Vec<i64>,
    /// Whether the blowup of the last point is transverse to the new
    /// exceptional line.
    pub dicritical_end: bool,
}

impl Cluster {
    /// Cluster of the local form `a du + b dv` at the origin, which must be a
    /// non-reduced singularity.
    pub fn from_local_form(a: &MultiPoly, b: &MultiPoly, field: &Field) -> Result<Cluster> {
        let (mut a, mut b) = (a.clone(), b.clone());
        let mut pair = positive_pair(&a, &b)?;
        let mut chain = vec![InfinitelyNearPoint { level: 0, swap: false, direction: FieldElement::zero(), pair }];
        while pair != (1, 1) {
            let (delta, rho) = pair;
            let j = linear_part(&a, &b);
            let trace = &j[0][0] + &j[1][1];
            let small = &trace * &FieldElement::from_rational(crate::exactmath::field::rat(delta, delta + rho));
            let (x, y) = eigenvector(&j, &small);
            let (swap, c) = if !x.is_zero() { (false, &y / &x) } else { (true, FieldElement::zero()) };
            let (na, nb) = blow_up_form(&a, &b, swap, &c);
            a = na;
            b = nb;
            let expected = {
                let n = rho - delta;
                (n.min(delta), n.max(delta))
            };
            if !a.coeff(&[0, 0, 0]).is_zero() || !b.coeff(&[0, 0, 0]).is_zero() {
                return Err(Error::AmbiguousChain("no singular point in the eigendirection".into()));
            }
            let got = positive_pair(&a, &b)?;
            if got != expected {
                return Err(Error::AmbiguousChain(format!(
                    "expected eigenpair {expected:?} after blowup, found {got:?}"
                )));
            }
            pair = got;
            chain.push(InfinitelyNearPoint { level: chain.len(), swap, direction: c, pair });
        }
        let dicritical_end = {
            let (_, nb) = blow_up_form(&a, &b, false, &FieldElement::zero());
            !nb.substitute_const(0, &FieldElement::zero()).is_zero()
        };
        let (d0, r0) = chain[0].pair;
        Ok(Cluster {
            field: field.clone(),
            chain,
            multiplicities: euclid_multiplicities(r0, d0)?,
            dicritical_end,
        })
    }

    /// Cluster of the model form `ρ v du - δ u dv`, whose leaves are
    /// `u^ρ = c v^δ`.
    pub fn model(rho: i64, delta: i64) -> Result<Cluster> {
        if rho <= 0 || delta <= 0 || rho.gcd(&delta) != 1 {
            return Err(Error::NotCoprimeIntegers);
        }
        let a = MultiPoly::var(Vars::Local, 1).scale(&FieldElement::from_int(rho));
        let b = MultiPoly::var(Vars::Local, 0).scale(&FieldElement::from_int(-delta));
        Cluster::from_local_form(&a, &b, &Field::rationals())
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }
}

/// Cluster over a non-reduced singular point of a foliation.
pub fn foliation_cluster(fol: &Foliation, p: &SingularPoint) -> Result<Cluster> {
    let (a, b) = p.local_pair(fol.form());
    Cluster::from_local_form(&a, &b, &p.field)
}

fn positive_pair(a: &MultiPoly, b: &MultiPoly) -> Result<(i64, i64)> {
    let j = linear_part(a, b);
    if determinant(&j).is_zero() {
        return Err(Error::AmbiguousChain("degenerate point in the chain".into()));
    }
    match eigen_ratio(&j)? {
        EigenRatio::Pair { delta, rho } if delta > 0 => Ok((delta, rho)),
        other => Err(Error::AmbiguousChain(format!("point is not non-reduced: {other:?}"))),
    }
}

fn eigenvector(j: &[[FieldElement; 2]; 2], lambda: &FieldElement) -> (FieldElement, FieldElement) {
    // rows of J - λI annihilate the eigenvector
    let r0 = (&j[0][0] - lambda, j[0][1].clone());
    let r1 = (j[1][0].clone(), &j[1][1] - lambda);
    let row = if !r0.0.is_zero() || !r0.1.is_zero() { r0 } else { r1 };
    if row.0.is_zero() && row.1.is_zero() {
        return (FieldElement::one(), FieldElement::zero());
    }
    (row.1.clone(), -row.0)
}

/// Blowup of `a du + b dv` at the origin in the chart `u = s, v = s t`,
/// after an optional coordinate swap, followed by moving `t` to `c`.
pub fn blow_up_form(a: &MultiPoly, b: &MultiPoly, swap: bool, c: &FieldElement) -> (MultiPoly, MultiPoly) {
    let (a, b) = if swap { (b.swap01(), a.swap01()) } else { (a.clone(), b.clone()) };
    let a1 = a.blowup_substitution();
    let b1 = b.blowup_substitution();
    let v = MultiPoly::var(Vars::Local, 1);
    let u = MultiPoly::var(Vars::Local, 0);
    let na = a1.add(&v.mul(&b1));
    let nb = u.mul(&b1);
    let k = [&na, &nb].iter().filter_map(|p| p.min_degree_in(0)).min().unwrap_or(0);
    let na = na.divide_by_var_power(0, k).expect("common power");
    let nb = nb.divide_by_var_power(0, k).expect("common power");
    let shift = [FieldElement::zero(), c.clone()];
    (na.translate(&shift), nb.translate(&shift))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclid_examples() {
        assert_eq!(euclid_multiplicities(2, 1).unwrap(), vec![1, 1]);
        assert_eq!(euclid_multiplicities(1, 1).unwrap(), vec![1]);
        assert_eq!(euclid_multiplicities(5, 2).unwrap(), vec![2, 2, 1, 1]);
        assert_eq!(euclid_multiplicities(4, 2), Err(Error::NotCoprimeIntegers));
    }

    #[test]
    fn model_chains() {
        for (rho, delta) in [(1, 1), (2, 1), (5, 2), (3, 7)] {
            let c = Cluster::model(rho, delta).unwrap();
            assert_eq!(c.len(), euclid_multiplicities(rho, delta).unwrap().len());
            assert!(c.dicritical_end);
            assert_eq!(c.chain.last().unwrap().pair, (1, 1));
        }
    }

    #[test]
    fn model_directions() {
        // 3 v du - 2 u dv: leaves u^3 = c v^2 leave along v = 0, then
        // along the exceptional line
        let c = Cluster::model(3, 2).unwrap();
        assert!(!c.chain[1].swap);
        assert!(c.chain[1].direction.is_zero());
        assert!(c.chain[2].swap);
    }
}
