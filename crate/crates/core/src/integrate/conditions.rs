//! Linear conditions for a degree-`d` form to pass through weighted
//! clusters.

use crate::exactmath::field::{FieldElement, Rational};
use crate::exactmath::matrix::ExactMatrix;
use crate::foliation::SingularPoint;
use crate::forms::multipoly::{monomial_basis, MultiPoly, Vars};
use crate::resolution::Cluster;

/// A non-reduced class with its cluster.
#[derive(Debug, Clone)]
pub struct ClassCluster {
    pub point: SingularPoint,
    pub cluster: Cluster,
}

/// Local expansions of the degree-`d` monomials at a point, in its chart.
pub fn local_basis(point: &SingularPoint, d: i32) -> Vec<MultiPoly> {
    monomial_basis(d)
        .into_iter()
        .map(|e| {
            MultiPoly::monomial(Vars::Projective, e, FieldElement::one())
                .dehomogenize(point.chart.slot())
                .translate(&point.affine)
        })
        .collect()
}

/// Rows over Q: at each chain point `q` with virtual multiplicity
/// `k m_q`, every coefficient of order below `k m_q` of the virtual
/// transform vanishes.
pub fn cluster_conditions(classes: &[ClassCluster], k: &[i64], d: i32) -> ExactMatrix {
    let n = monomial_basis(d).len();
    let mut m = ExactMatrix::zeros(0, n);
    for (cc, &kk) in classes.iter().zip(k) {
        let e = cc.point.field.degree();
        let mut polys = local_basis(&cc.point, d);
        let mut prev = 0i32;
        for (level, (q, &mult)) in cc.cluster.chain.iter().zip(&cc.cluster.multiplicities).enumerate() {
            let need = (kk * mult) as i32;
            if level > 0 {
                polys = polys
                    .iter()
                    .map(|f| {
                        let f = if q.swap { f.swap01() } else { f.clone() };
                        f.blowup_substitution()
                            .shift_exponents([-prev, 0, 0])
                            .drop_negative()
                            .translate(&[FieldElement::zero(), q.direction.clone()])
                    })
                    .collect();
            }
            for ord in 0..need {
                for i in 0..=ord {
                    let exp = [ord - i, i, 0];
                    let coeffs: Vec<FieldElement> = polys.iter().map(|f| f.coeff(&exp)).collect();
                    if coeffs.iter().all(|c| c.is_zero()) {
                        continue;
                    }
                    for comp in 0..e {
                        let row: Vec<Rational> = coeffs
                            .iter()
                            .map(|c| {
                                let c = c.promote(&cc.point.field).expect("coefficient in the point's field");
                                c.coordinates()[comp].clone()
                            })
                            .collect();
                        if row.iter().any(|x| !num_traits::Zero::is_zero(x)) {
                            m.push_row(row);
                        }
                    }
                }
            }
            prev = need;
        }
    }
    m
}

/// Number of conditions before expansion into rational rows: for each class
/// `Σ_q (k m_q)(k m_q + 1) / 2`.
pub fn expected_condition_count(classes: &[ClassCluster], k: &[i64]) -> i64 {
    classes
        .iter()
        .zip(k)
        .map(|(cc, &kk)| {
            cc.cluster.multiplicities.iter().map(|&m| (kk * m) * (kk * m + 1) / 2).sum::<i64>()
                * cc.point.class_size as i64
        })
        .sum()
}
