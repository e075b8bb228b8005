//! Local checks that a found pencil must satisfy at the singular points.
//! They are informative: only the wedge identity decides.

use crate::error::{Error, Result};
use crate::exactmath::field::FieldElement;
use crate::foliation::{render_point, SingularPoint};
use crate::forms::multipoly::MultiPoly;
use crate::resolution::germ::{
    equisingular, germ_milnor, germ_mult_sequence, germ_tjurina, type_check_s_along, Germ, TypeCheck,
};

use super::conditions::ClassCluster;

/// Outcome at one non-reduced class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionD {
    pub point: String,
    pub field: String,
    pub class_size: usize,
    pub pair: (i64, i64),
    pub k: i64,
    /// Values of `c` for the general members `F + c G` that were used.
    pub members: Option<(i64, i64)>,
    pub equisingular: bool,
    pub reduced: bool,
    pub milnor: Option<usize>,
    pub tjurina: Option<usize>,
    /// Expected type, for instance `S(1,1,6)`.
    pub singularity_type: String,
    pub type_match: bool,
    pub passed: bool,
    pub note: Option<String>,
}

/// Outcome at one reduced class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionE {
    pub point: String,
    pub field: String,
    pub class_size: usize,
    /// Pencil member through the point, normalized.
    pub member: String,
    pub passed: bool,
}

const MEMBER_SEARCH: i64 = 32;

fn local_germ(h: &MultiPoly, p: &SingularPoint) -> MultiPoly {
    h.dehomogenize(p.chart.slot()).translate(&p.affine)
}

/// General members `H_i = F + c_i G`, their equisingularity, and the
/// reducedness, Milnor/Tjurina equality and type `S(ρ, δ, 2k)` of `H_1 H_2`
/// at the class representative.
pub fn verify_condition_d(f: &MultiPoly, g: &MultiPoly, cc: &ClassCluster, k: i64, cap: usize) -> Result<ConditionD> {
    let p = &cc.point;
    let (delta, rho) = p.pair().expect("non-reduced point has a pair");
    let want: Vec<usize> = cc.cluster.multiplicities.iter().map(|m| (k * m) as usize).collect();
    let mut out = ConditionD {
        point: render_point(&p.projective()),
        field: p.field.describe(),
        class_size: p.class_size,
        pair: (delta, rho),
        k,
        members: None,
        equisingular: false,
        reduced: false,
        milnor: None,
        tjurina: None,
        singularity_type: format!("S({},{},{})", rho, delta, 2 * k),
        type_match: false,
        passed: false,
        note: None,
    };
    let mut general = Vec::new();
    for c in 1..=MEMBER_SEARCH {
        let h = f.add(&g.scale(&FieldElement::from_int(c)));
        let germ = match Germ::new(local_germ(&h, p)) {
            Ok(germ) => germ,
            Err(_) => continue,
        };
        if germ.is_reduced() && germ_mult_sequence(&germ, &cc.cluster) == want {
            general.push((c, germ));
            if general.len() == 2 {
                break;
            }
        }
    }
    if general.len() < 2 {
        out.note = Some("no two general members found".into());
        return Ok(out);
    }
    let (c1, h1) = general[0].clone();
    let (c2, h2) = general[1].clone();
    out.members = Some((c1, c2));
    out.equisingular = equisingular(&h1, &h2, &cc.cluster);
    let prod = h1.times(&h2);
    out.reduced = prod.is_reduced();
    if !out.reduced {
        out.note = Some("product of general members is not reduced".into());
        return Ok(out);
    }
    let mu = germ_milnor(&prod, cap)?;
    let tau = germ_tjurina(&prod, cap)?;
    out.milnor = Some(mu);
    out.tjurina = Some(tau);
    match type_check_s_along(&prod, &cc.cluster, rho, delta, 2 * k, cap)? {
        TypeCheck::Match => out.type_match = true,
        TypeCheck::Mismatch(why) => out.note = Some(why),
    }
    out.passed = out.equisingular && out.reduced && mu == tau && out.type_match;
    Ok(out)
}

/// The member of the pencil through a reduced point must be singular there.
pub fn verify_condition_e(f: &MultiPoly, g: &MultiPoly, p: &SingularPoint) -> Result<ConditionE> {
    let pt = p.projective();
    let fv = f.eval(&pt);
    let gv = g.eval(&pt);
    let point = render_point(&pt);
    if fv.is_zero() && gv.is_zero() {
        return Err(Error::BasePointCollision(point));
    }
    let h = f.scale(&gv).sub(&g.scale(&fv)).normalized();
    let passed = (0..3).all(|i| h.derivative(i).eval(&pt).is_zero());
    Ok(ConditionE { point, field: p.field.describe(), class_size: p.class_size, member: h.render(), passed })
}
