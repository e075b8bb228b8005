//! Canonical reports. Every report is built as an ordered JSON value; the
//! text format is a line-per-field rendering of the same value.

use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::foliation::{render_point, Classification, Foliation, SingularLocus};
use crate::forms::multipoly::MultiPoly;
use crate::forms::oneform::TwoForm;
use crate::integrate::{
    CandidateRecord, ConditionD, ConditionE, IntegrabilityReport, Obstruction, Verdict,
};

use super::parse::FoliationFile;

pub const SCHEMA: &str = "folint-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

fn s(x: impl ToString) -> Value {
    Value::String(x.to_string())
}

fn header(command: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema".into(), s(SCHEMA));
    m.insert("command".into(), s(command));
    m
}

fn input_echo(file: &FoliationFile, source: &str) -> Value {
    let extension = match &file.extension {
        Some(_) => s(file.field.describe()),
        None => Value::Null,
    };
    json!({
        "source": source,
        "extension": extension,
        "A": file.a.render(),
        "B": file.b.render(),
        "C": file.c.render(),
    })
}

fn foliation_summary(fol: &Foliation) -> Value {
    json!({
        "degree": s(fol.degree()),
        "field": fol.base_field().describe(),
        "removed_factor": fol.removed_factor().map(|g| g.render()),
    })
}

fn classification_name(c: Classification) -> &'static str {
    match c {
        Classification::Reduced => "reduced",
        Classification::NonReduced => "non_reduced",
        Classification::IrrationalRatio => "irrational_ratio",
        Classification::Degenerate => "degenerate",
    }
}

fn pair_value(pair: (i64, i64)) -> Value {
    json!({ "delta": s(pair.0), "rho": s(pair.1) })
}

pub fn analyze_report(file: &FoliationFile, source: &str, fol: &Foliation, locus: &SingularLocus) -> Value {
    let mut m = header("analyze");
    m.insert("input".into(), input_echo(file, source));
    m.insert("foliation".into(), foliation_summary(fol));
    let points: Vec<Value> = locus
        .points
        .iter()
        .map(|p| {
            json!({
                "point": render_point(&p.projective()),
                "field": p.field.describe(),
                "chart": p.chart.name(),
                "class_size": s(p.class_size),
                "milnor": s(p.milnor),
                "classification": classification_name(p.classification()),
                "eigenpair": p.pair().map(pair_value),
            })
        })
        .collect();
    m.insert("singularities".into(), Value::Array(points));
    let r = fol.degree();
    let expected = r * r + r + 1;
    let total = locus.weighted_count();
    let nondegenerate = total == expected && locus.points.iter().all(|p| p.milnor == 1);
    m.insert(
        "milnor_sum".into(),
        json!({ "value": s(total), "expected": s(expected), "holds": total == expected }),
    );
    m.insert("non_degenerate".into(), Value::Bool(nondegenerate));
    let n = locus.non_reduced_count();
    let reduced: usize = locus.reduced().map(|p| p.class_size).sum();
    m.insert("counts".into(), json!({ "non_reduced": s(n), "reduced": s(reduced) }));
    m.insert(
        "cardinality".into(),
        json!({ "r": s(r), "n": s(n), "required": s(r + 1), "passes": r < n }),
    );
    Value::Object(m)
}

fn obstruction_value(o: &Obstruction) -> Value {
    match o {
        Obstruction::Cardinality { r, n } => json!({ "type": "cardinality", "r": s(r), "n": s(n) }),
        Obstruction::IrrationalRatio { point, field, jacobian, s: ss, discriminant } => json!({
            "type": "irrational_ratio",
            "point": point,
            "field": field,
            "jacobian": jacobian,
            "s": ss,
            "discriminant": discriminant,
        }),
    }
}

fn candidate_value(c: &CandidateRecord) -> Value {
    json!({
        "d": s(c.d),
        "k": c.k.iter().map(s).collect::<Vec<_>>(),
        "kernel_dimension": s(c.kernel_dimension),
        "outcome": c.outcome.as_str(),
    })
}

fn condition_d_value(c: &ConditionD) -> Value {
    json!({
        "point": c.point,
        "field": c.field,
        "class_size": s(c.class_size),
        "eigenpair": pair_value(c.pair),
        "k": s(c.k),
        "members": c.members.map(|(a, b)| vec![s(a), s(b)]),
        "equisingular": c.equisingular,
        "reduced": c.reduced,
        "milnor": c.milnor.map(s),
        "tjurina": c.tjurina.map(s),
        "singularity_type": c.singularity_type,
        "type_match": c.type_match,
        "passed": c.passed,
        "note": c.note,
    })
}

fn condition_e_value(c: &ConditionE) -> Value {
    json!({
        "point": c.point,
        "field": c.field,
        "class_size": s(c.class_size),
        "member": c.member,
        "passed": c.passed,
    })
}

fn verdict_name(v: &Verdict) -> &'static str {
    match v {
        Verdict::FirstIntegral(_) => "first_integral",
        Verdict::ProvenNo(_) => "proven_no",
        Verdict::NoBelowBound { .. } => "no_below_bound",
        Verdict::Unsupported { .. } => "unsupported",
    }
}

pub fn integrate_report(
    file: &FoliationFile,
    source: &str,
    fol: &Foliation,
    rep: &IntegrabilityReport,
    timings: bool,
) -> Value {
    let mut m = header("integrate");
    m.insert("input".into(), input_echo(file, source));
    m.insert("foliation".into(), foliation_summary(fol));
    m.insert("bound".into(), s(rep.bound));
    m.insert(
        "counts".into(),
        json!({ "non_reduced": s(rep.non_reduced), "reduced": s(rep.reduced) }),
    );
    m.insert("verdict".into(), s(verdict_name(&rep.verdict)));
    match &rep.verdict {
        Verdict::FirstIntegral(fi) => {
            m.insert("numerator".into(), s(fi.numerator.render()));
            m.insert("denominator".into(), s(fi.denominator.render()));
            m.insert("wedge_certificate".into(), s(if fi.certificate_zero { "zero" } else { "nonzero" }));
            m.insert("d".into(), s(fi.d));
            let weights: Vec<Value> = fi
                .weights
                .iter()
                .map(|w| {
                    json!({
                        "point": w.point,
                        "field": w.field,
                        "class_size": s(w.class_size),
                        "eigenpair": pair_value(w.pair),
                        "k": s(w.k),
                    })
                })
                .collect();
            m.insert("weights".into(), Value::Array(weights));
        }
        Verdict::ProvenNo(o) => {
            m.insert("obstruction".into(), obstruction_value(o));
        }
        Verdict::NoBelowBound { .. } => {}
        Verdict::Unsupported { reason } => {
            m.insert("reason".into(), s(reason));
        }
    }
    m.insert("candidates".into(), Value::Array(rep.candidates.iter().map(candidate_value).collect()));
    m.insert(
        "diagnostics".into(),
        json!({
            "condition_d": rep.condition_d.iter().map(condition_d_value).collect::<Vec<_>>(),
            "condition_e": rep.condition_e.iter().map(condition_e_value).collect::<Vec<_>>(),
        }),
    );
    m.insert("notes".into(), Value::Array(rep.notes.iter().map(s).collect()));
    if timings {
        let t: Map<String, Value> = rep.timings.iter().map(|(k, v)| (k.clone(), s(format!("{v:.3}")))).collect();
        m.insert("timings".into(), Value::Object(t));
    }
    Value::Object(m)
}

fn two_form_value(w: &TwoForm) -> Value {
    json!({ "dX^dY": w.xy.render(), "dY^dZ": w.yz.render(), "dX^dZ": w.xz.render() })
}

pub fn certify_report(
    file: &FoliationFile,
    source: &str,
    numerator: &MultiPoly,
    denominator: &MultiPoly,
    wedge: &TwoForm,
) -> Value {
    let mut m = header("certify");
    m.insert("input".into(), input_echo(file, source));
    m.insert("numerator".into(), s(numerator.render()));
    m.insert("denominator".into(), s(denominator.render()));
    if wedge.is_zero() {
        m.insert("verdict".into(), s("certified_zero"));
        m.insert("wedge_certificate".into(), s("zero"));
    } else {
        m.insert("verdict".into(), s("nonzero"));
        m.insert("wedge_certificate".into(), two_form_value(wedge));
    }
    Value::Object(m)
}

/// Germ answers assembled by the command layer.
#[derive(Debug, Clone)]
pub struct GermSummary {
    pub germ: String,
    pub factors: Vec<String>,
    pub multiplicity: i32,
    pub reduced: bool,
    pub milnor: Option<usize>,
    pub tjurina: Option<usize>,
    pub tangent_multiplicities: Vec<usize>,
    pub nodal: Result<(usize, usize), String>,
    pub s_type: Option<STypeSummary>,
}

#[derive(Debug, Clone)]
pub struct STypeSummary {
    pub a: i64,
    pub b: i64,
    pub k: i64,
    pub multiplicity_sequence: Vec<usize>,
    pub result: Result<(), String>,
}

pub fn germ_report(g: &GermSummary) -> Value {
    let mut m = header("germ");
    m.insert("input".into(), json!({ "factors": g.factors }));
    m.insert("germ".into(), s(&g.germ));
    m.insert("multiplicity".into(), s(g.multiplicity));
    m.insert("reduced".into(), Value::Bool(g.reduced));
    m.insert("milnor".into(), s(g.milnor.map_or("infinite".to_string(), |x| x.to_string())));
    m.insert("tjurina".into(), s(g.tjurina.map_or("infinite".to_string(), |x| x.to_string())));
    m.insert(
        "quasi_homogeneous".into(),
        Value::Bool(g.milnor.is_some() && g.milnor == g.tjurina),
    );
    m.insert(
        "tangent_multiplicities".into(),
        Value::Array(g.tangent_multiplicities.iter().map(s).collect()),
    );
    m.insert(
        "nodal".into(),
        match &g.nodal {
            Ok((n, mm)) => json!({ "nodal": true, "n": s(n), "m": s(mm) }),
            Err(why) => json!({ "nodal": false, "reason": why }),
        },
    );
    if let Some(t) = &g.s_type {
        m.insert(
            "s_type".into(),
            json!({
                "type": format!("S({},{},{})", t.a, t.b, t.k),
                "multiplicity_sequence": t.multiplicity_sequence.iter().map(s).collect::<Vec<_>>(),
                "match": t.result.is_ok(),
                "reason": t.result.as_ref().err(),
            }),
        );
    }
    Value::Object(m)
}

pub fn error_report(command: &str, err: &Error) -> Value {
    let mut m = header(command);
    let mut e = Map::new();
    e.insert("kind".into(), s(err.kind()));
    e.insert("message".into(), s(err));
    if let Error::Parse { line, column, .. } = err {
        e.insert("line".into(), s(line));
        e.insert("column".into(), s(column));
    }
    m.insert("error".into(), Value::Object(e));
    m.insert("exit_code".into(), s(err.exit_code()));
    Value::Object(m)
}

pub fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut out = serde_json::to_string_pretty(v).expect("serializable");
            out.push('\n');
            out
        }
        Format::Text => {
            let mut out = String::new();
            text(v, 0, &mut out);
            out
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(if *b { "yes" } else { "no" }.into()),
        Value::String(x) => Some(x.clone()),
        Value::Number(n) => Some(n.to_string()),
        Value::Array(a) if a.is_empty() => Some("(none)".into()),
        Value::Array(a) if a.iter().all(|x| matches!(x, Value::String(_))) => {
            Some(a.iter().map(|x| x.as_str().unwrap_or_default()).collect::<Vec<_>>().join(", "))
        }
        _ => None,
    }
}

fn text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(line) => out.push_str(&format!("{pad}{k}: {line}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        text(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match scalar(x) {
                    Some(line) => out.push_str(&format!("{pad}- {line}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        text(x, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}
