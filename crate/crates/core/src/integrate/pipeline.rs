//! The decision procedure: bounds and obstructions first, then the
//! Diophantine candidates in order, each tested by a linear system and the
//! wedge identity.

use std::time::Instant;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactmath::factor::primitive_integer_coeffs;
use crate::exactmath::field::Rational;
use crate::foliation::eigen::{determinant, linear_part};
use crate::foliation::{cota_test, nondegenerate_locus, render_point, Foliation, LocusOptions, SingularLocus};
use crate::forms::multipoly::{MultiPoly, Vars};
use crate::forms::oneform::certificate;
use crate::resolution::cluster::foliation_cluster;
use crate::resolution::germ::DEFAULT_GERM_JET_CAP;

use super::conditions::{cluster_conditions, ClassCluster};
use super::diagnostics::{verify_condition_d, verify_condition_e, ConditionD, ConditionE};
use super::diophantine::{solve_diophantine, DiophantineSolution, EigenClass};

#[derive(Debug, Clone, Copy)]
pub struct PipelineOptions {
    /// Exclusive bound `t` on the degree of the first integral.
    pub max_degree: i64,
    /// Worker threads for candidate evaluation; 1 runs inline.
    pub parallel: usize,
    pub diagnostics: bool,
    pub locus: LocusOptions,
    pub germ_jet_cap: usize,
}

impl PipelineOptions {
    pub fn new(max_degree: i64) -> PipelineOptions {
        PipelineOptions {
            max_degree,
            parallel: 1,
            diagnostics: true,
            locus: LocusOptions::default(),
            germ_jet_cap: DEFAULT_GERM_JET_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    /// Fewer non-reduced points than `r + 1`.
    Cardinality { r: usize, n: usize },
    /// An eigenvalue ratio that is not rational.
    IrrationalRatio {
        point: String,
        field: String,
        jacobian: [[String; 2]; 2],
        /// `T^2 / D`.
        s: String,
        /// `s (s - 4)` when `s` is rational.
        discriminant: Option<String>,
    },
}

/// Weight assigned to one non-reduced class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassWeight {
    pub point: String,
    pub field: String,
    pub class_size: usize,
    pub pair: (i64, i64),
    pub k: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FirstIntegral {
    pub numerator: MultiPoly,
    pub denominator: MultiPoly,
    pub d: i64,
    /// Empty for the degree-one normal form.
    pub weights: Vec<ClassWeight>,
    pub certificate_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    FirstIntegral(FirstIntegral),
    ProvenNo(Obstruction),
    NoBelowBound { bound: i64 },
    Unsupported { reason: String },
}

impl Verdict {
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::FirstIntegral(_) | Verdict::ProvenNo(_) => 0,
            Verdict::NoBelowBound { .. } => 2,
            Verdict::Unsupported { .. } => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateRecord {
    pub d: i64,
    pub k: Vec<i64>,
    pub kernel_dimension: usize,
    pub outcome: CandidateOutcome,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidateOutcome {
    Certified,
    WrongDimension,
    NotCoprime,
    WedgeNonzero,
}

impl CandidateOutcome {
    pub fn as_str(self) -> &'static str {
        match self {
            CandidateOutcome::Certified => "certified",
            CandidateOutcome::WrongDimension => "dimension_not_2",
            CandidateOutcome::NotCoprime => "basis_not_coprime",
            CandidateOutcome::WedgeNonzero => "wedge_nonzero",
        }
    }
}

#[derive(Debug, Clone)]
pub struct IntegrabilityReport {
    pub degree: usize,
    pub bound: i64,
    pub non_reduced: usize,
    pub reduced: usize,
    pub verdict: Verdict,
    pub candidates: Vec<CandidateRecord>,
    pub condition_d: Vec<ConditionD>,
    pub condition_e: Vec<ConditionE>,
    pub notes: Vec<String>,
    /// Stage name and elapsed seconds.
    pub timings: Vec<(String, f64)>,
}

/// Runs the procedure. Input problems are errors; extension and cap
/// limits become an `Unsupported` verdict.
pub fn find_first_integral(fol: &Foliation, opts: &PipelineOptions) -> Result<IntegrabilityReport> {
    let mut report = IntegrabilityReport {
        degree: fol.degree(),
        bound: opts.max_degree,
        non_reduced: 0,
        reduced: 0,
        verdict: Verdict::NoBelowBound { bound: opts.max_degree },
        candidates: Vec::new(),
        condition_d: Vec::new(),
        condition_e: Vec::new(),
        notes: Vec::new(),
        timings: Vec::new(),
    };
    if opts.max_degree < 2 {
        return Err(Error::InvalidInput("the degree bound must be at least 2".into()));
    }
    if let Some(g) = fol.removed_factor() {
        report.notes.push(format!("common factor {} removed from the components", g.render()));
    }
    match run(fol, opts, &mut report) {
        Ok(()) => Ok(report),
        Err(e) if e.exit_code() == 4 => {
            report.verdict = Verdict::Unsupported { reason: e.to_string() };
            Ok(report)
        }
        Err(e) => Err(e),
    }
}

fn run(fol: &Foliation, opts: &PipelineOptions, report: &mut IntegrabilityReport) -> Result<()> {
    let clock = Instant::now();
    let locus = nondegenerate_locus(fol, opts.locus)?;
    report.timings.push(("locus".into(), clock.elapsed().as_secs_f64()));
    let r = fol.degree();
    let n = locus.non_reduced_count();
    report.non_reduced = n;
    report.reduced = locus.reduced().map(|p| p.class_size).sum();

    if !cota_test(r, n) {
        report.verdict = Verdict::ProvenNo(Obstruction::Cardinality { r, n });
        return Ok(());
    }
    if let Some(obs) = irrational_obstruction(fol, &locus) {
        report.verdict = Verdict::ProvenNo(obs);
        return Ok(());
    }
    if r == 1 {
        report.verdict = degree_one(fol, opts.max_degree)?;
        return Ok(());
    }
    let clock = Instant::now();
    let nr: Vec<_> = locus.non_reduced().cloned().collect();
    let clusters: Vec<Result<ClassCluster>> = with_pool(opts.parallel, || {
        nr.par_iter()
            .map(|p| Ok(ClassCluster { point: p.clone(), cluster: foliation_cluster(fol, p)? }))
            .collect()
    });
    let classes: Vec<ClassCluster> = clusters.into_iter().collect::<Result<_>>()?;
    report.timings.push(("clusters".into(), clock.elapsed().as_secs_f64()));

    let clock = Instant::now();
    let eigen: Vec<EigenClass> = classes
        .iter()
        .map(|c| {
            let (delta, rho) = c.point.pair().expect("pair");
            EigenClass { delta, rho, size: c.point.class_size }
        })
        .collect();
    let solutions = solve_diophantine(&eigen, r, opts.max_degree);
    let mut found = None;
    let mut start = 0;
    while start < solutions.len() && found.is_none() {
        let d = solutions[start].d;
        let end = solutions[start..].iter().position(|s| s.d != d).map_or(solutions.len(), |i| start + i);
        let batch = &solutions[start..end];
        let evals: Vec<Evaluation> = if opts.parallel > 1 {
            with_pool(opts.parallel, || batch.par_iter().map(|s| evaluate(fol, &classes, s)).collect::<Result<_>>())?
        } else {
            let mut v = Vec::new();
            for s in batch {
                let e = evaluate(fol, &classes, s)?;
                let done = e.record.outcome == CandidateOutcome::Certified;
                v.push(e);
                if done {
                    break;
                }
            }
            v
        };
        for e in evals {
            let certified = e.record.outcome == CandidateOutcome::Certified;
            report.candidates.push(e.record);
            if certified {
                found = e.pair;
                break;
            }
        }
        start = end;
    }
    report.timings.push(("search".into(), clock.elapsed().as_secs_f64()));

    let Some((f, g, sol)) = found else {
        report.verdict = Verdict::NoBelowBound { bound: opts.max_degree };
        if !fol.base_field().is_rational() {
            report
                .notes
                .push("only pencils with rational coefficients were searched".into());
        }
        return Ok(());
    };

    if opts.diagnostics {
        let clock = Instant::now();
        for (cc, &k) in classes.iter().zip(&sol.k) {
            report.condition_d.push(verify_condition_d(&f, &g, cc, k, opts.germ_jet_cap)?);
        }
        for p in locus.reduced() {
            match verify_condition_e(&f, &g, p) {
                Ok(c) => report.condition_e.push(c),
                Err(e) => report.notes.push(e.to_string()),
            }
        }
        report.timings.push(("diagnostics".into(), clock.elapsed().as_secs_f64()));
    }

    let weights = classes
        .iter()
        .zip(&sol.k)
        .map(|(cc, &k)| ClassWeight {
            point: render_point(&cc.point.projective()),
            field: cc.point.field.describe(),
            class_size: cc.point.class_size,
            pair: cc.point.pair().expect("pair"),
            k,
        })
        .collect();
    report.verdict = Verdict::FirstIntegral(FirstIntegral {
        numerator: f,
        denominator: g,
        d: sol.d,
        weights,
        certificate_zero: true,
    });
    Ok(())
}

fn with_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build().expect("thread pool").install(f)
}

struct Evaluation {
    record: CandidateRecord,
    pair: Option<(MultiPoly, MultiPoly, DiophantineSolution)>,
}

fn evaluate(fol: &Foliation, classes: &[ClassCluster], sol: &DiophantineSolution) -> Result<Evaluation> {
    let d = sol.d as i32;
    let m = cluster_conditions(classes, &sol.k, d);
    let kernel = m.nullspace();
    let mut record = CandidateRecord {
        d: sol.d,
        k: sol.k.clone(),
        kernel_dimension: kernel.len(),
        outcome: CandidateOutcome::WrongDimension,
    };
    if kernel.len() != 2 {
        return Ok(Evaluation { record, pair: None });
    }
    let (f, g) = canonical_pair(d, &kernel[0], &kernel[1]);
    match certificate(&f, &g, fol.form()) {
        Err(Error::NotCoprime) => record.outcome = CandidateOutcome::NotCoprime,
        Err(e) => return Err(e),
        Ok(w) if w.is_zero() => {
            record.outcome = CandidateOutcome::Certified;
            return Ok(Evaluation { record, pair: Some((f, g, sol.clone())) });
        }
        Ok(_) => record.outcome = CandidateOutcome::WedgeNonzero,
    }
    Ok(Evaluation { record, pair: None })
}

/// Reduced echelon basis of a 2-dimensional space of forms (pivots in the
/// canonical monomial order), each scaled to primitive integer coefficients
/// with positive leading coefficient.
pub fn canonical_pair(d: i32, v1: &[Rational], v2: &[Rational]) -> (MultiPoly, MultiPoly) {
    let mut rows = [v1.to_vec(), v2.to_vec()];
    let p1 = |r: &Vec<Rational>| r.iter().position(|x| !x.is_zero()).unwrap_or(usize::MAX);
    if p1(&rows[1]) < p1(&rows[0]) {
        rows.swap(0, 1);
    }
    let c0 = p1(&rows[0]);
    let lead = rows[0][c0].clone();
    rows[0].iter_mut().for_each(|x| *x = &*x / &lead);
    let f = rows[1][c0].clone();
    let r0 = rows[0].clone();
    rows[1].iter_mut().zip(&r0).for_each(|(x, y)| *x = &*x - &f * y);
    let c1 = p1(&rows[1]);
    let lead = rows[1][c1].clone();
    rows[1].iter_mut().for_each(|x| *x = &*x / &lead);
    let f = rows[0][c1].clone();
    let r1 = rows[1].clone();
    rows[0].iter_mut().zip(&r1).for_each(|(x, y)| *x = &*x - &f * y);
    let to_poly = |r: &Vec<Rational>| {
        let ints = primitive_integer_coeffs(r);
        let sign = if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) { -1 } else { 1 };
        let q: Vec<Rational> = ints.into_iter().map(|x| Rational::from_integer(x * sign)).collect();
        MultiPoly::from_coefficient_vector(d, &q)
    };
    (to_poly(&rows[0]), to_poly(&rows[1]))
}

fn irrational_obstruction(fol: &Foliation, locus: &SingularLocus) -> Option<Obstruction> {
    let p = locus.points.iter().find(|p| p.classification() == crate::foliation::Classification::IrrationalRatio)?;
    let (a, b) = p.local_pair(fol.form());
    let j = linear_part(&a, &b);
    let t = &j[0][0] + &j[1][1];
    let s = &(&t * &t) / &determinant(&j);
    let discriminant = s.as_rational().map(|q| {
        let four = Rational::from_integer(4.into());
        crate::exactmath::field::render_rational(&(&q * (&q - four)))
    });
    Some(Obstruction::IrrationalRatio {
        point: render_point(&p.projective()),
        field: p.field.describe(),
        jacobian: [
            [j[0][0].render(), j[0][1].render()],
            [j[1][0].render(), j[1][1].render()],
        ],
        s: s.render(),
        discriminant,
    })
}

/// Degree one: only the normal form `α YZ dX + β XZ dY + γ XY dZ` is
/// handled; its integral is `X^α Y^β Z^γ` after scaling the exponents to
/// coprime integers.
fn degree_one(fol: &Foliation, bound: i64) -> Result<Verdict> {
    let form = fol.form();
    let single = |p: &MultiPoly, e: [i32; 3]| -> Option<Rational> {
        if p.num_terms() == 1 {
            p.coeff(&e).as_rational().filter(|c| !c.is_zero())
        } else {
            None
        }
    };
    let found = (|| {
        Some([
            single(&form.a, [0, 1, 1])?,
            single(&form.b, [1, 0, 1])?,
            single(&form.c, [1, 1, 0])?,
        ])
    })();
    let Some(coeffs) = found else {
        return Ok(Verdict::Unsupported {
            reason: "degree-one foliation not in the normal form a*Y*Z dX + b*X*Z dY + c*X*Y dZ".into(),
        });
    };
    let ints = primitive_integer_coeffs(&coeffs);
    let mut num = MultiPoly::one(Vars::Projective);
    let mut den = MultiPoly::one(Vars::Projective);
    for (i, e) in ints.iter().enumerate() {
        let k: u32 = num_traits::ToPrimitive::to_u32(&e.abs()).ok_or_else(|| Error::InvalidInput("exponent too large".into()))?;
        let v = MultiPoly::var(Vars::Projective, i).pow(k);
        if e.is_positive() {
            num = num.mul(&v);
        } else {
            den = den.mul(&v);
        }
    }
    let degree = num.total_degree().unwrap_or(0) as i64;
    if degree >= bound {
        return Ok(Verdict::NoBelowBound { bound });
    }
    let w = certificate(&num, &den, form)?;
    if !w.is_zero() {
        return Err(Error::InvalidInput("normal-form integral failed to certify".into()));
    }
    Ok(Verdict::FirstIntegral(FirstIntegral {
        numerator: num,
        denominator: den,
        d: degree,
        weights: Vec::new(),
        certificate_zero: true,
    }))
}
