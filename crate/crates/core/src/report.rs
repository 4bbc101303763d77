//! Analysis reports: the `mixres/1` JSON schema and the plain-text tables
//! printed by the command-line tool.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::face::{classify_face_type, compact_faces, degrees, FaceType, PolarSign};
use crate::fan::{canonical_subdivision, is_admissible, is_convenient_subdivision, ConeSubdivision};
use crate::lattice::{self, WeightVector};
use crate::newton::{self, dual_diagram, newton_boundary, DualDiagram2D, NewtonBoundary};
use crate::poly::MixedPolynomial;
use crate::toric::{ProbeStatus, SmoothnessCertificate};

pub const SCHEMA: &str = "mixres/1";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InputEcho {
    pub expression: String,
    pub n: usize,
    pub options: Map<String, Value>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvenienceReport {
    pub convenient: bool,
    /// One pure term per axis, if present.
    pub axis_terms: Vec<Option<String>>,
    /// 1-based.
    pub missing_axis: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportEntry {
    pub point: Vec<i64>,
    pub terms: Vec<String>,
}

/// `P(ν+μ)` and `P(ν−μ)` of one face term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermContribution {
    pub term: String,
    pub radial: i64,
    pub polar: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceTableRow {
    pub weight: WeightVector,
    pub rdeg: i64,
    pub pdeg: Option<i64>,
    pub face_points: Vec<Vec<i64>>,
    pub dim: usize,
    pub terms: Vec<TermContribution>,
    pub face_function: String,
    pub polar_sign: PolarSign,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceTypeReport {
    pub verdict: FaceType,
    pub offending_face: Option<WeightVector>,
    pub sign_disagreements: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeEntry {
    pub name: String,
    pub vertices: Vec<WeightVector>,
    /// One column per vertex.
    pub matrix: Vec<Vec<i64>>,
    pub det: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubdivisionReport {
    pub rays: Vec<WeightVector>,
    pub cones: Vec<ConeEntry>,
    pub regular: bool,
    pub admissible: bool,
    pub convenient: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub schema: &'static str,
    pub command: String,
    pub input: InputEcho,
    pub polynomial: String,
    pub convenience: ConvenienceReport,
    pub support: Vec<SupportEntry>,
    pub newton_boundary: Option<NewtonBoundary>,
    pub dual_diagram: Option<DualDiagram2D>,
    pub face_table: Vec<FaceTableRow>,
    pub face_type: Option<FaceTypeReport>,
    pub subdivision: Option<SubdivisionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<SmoothnessCertificate>,
}

pub fn convenience_report(f: &MixedPolynomial) -> ConvenienceReport {
    let c = f.is_convenient();
    let axis_terms = c
        .axis_terms
        .iter()
        .map(|e| {
            e.as_ref().map(|e| {
                let t = f.terms().iter().find(|t| &t.exps == e).expect("witness is a term");
                t.render()
            })
        })
        .collect();
    ConvenienceReport {
        convenient: c.convenient,
        axis_terms,
        missing_axis: c.missing_axis.map(|a| a + 1),
    }
}

pub fn face_row(f: &MixedPolynomial, p: &WeightVector) -> Result<FaceTableRow> {
    let rec = degrees(f, p)?;
    let face = newton::face(f, p)?;
    let face_fn = crate::face::face_function(f, p)?;
    let terms = face_fn
        .terms()
        .iter()
        .map(|t| TermContribution {
            term: t.render(),
            radial: p.dot(&t.exps.radial()),
            polar: p.dot(&t.exps.polar()),
        })
        .collect();
    Ok(FaceTableRow {
        weight: p.clone(),
        rdeg: rec.rdeg,
        pdeg: rec.pdeg,
        face_points: face.points,
        dim: face.dim,
        terms,
        face_function: face_fn.render(),
        polar_sign: rec.polar_sign,
    })
}

pub fn subdivision_report(f: &MixedPolynomial, s: &ConeSubdivision) -> Result<SubdivisionReport> {
    let cones = s
        .max_cones
        .iter()
        .enumerate()
        .map(|(i, c)| ConeEntry {
            name: format!("tau{}", i + 1),
            vertices: c.vertices().to_vec(),
            matrix: c.matrix(),
            det: lattice::det(&c.matrix()),
        })
        .collect();
    let mut admissible = true;
    for c in &s.max_cones {
        admissible &= is_admissible(c, f)?;
    }
    Ok(SubdivisionReport {
        rays: s.vertices(),
        cones,
        regular: s.is_regular(),
        admissible,
        convenient: is_convenient_subdivision(s, f)?,
    })
}

/// Everything short of the certificate. Non-convenient germs are rejected;
/// the two-variable blocks are `None` for other `n`.
pub fn analyze(f: &MixedPolynomial, input: InputEcho, command: &str) -> Result<AnalysisReport> {
    if f.is_zero() {
        return Err(Error::EmptyPolynomial);
    }
    let convenience = convenience_report(f);
    if let Some(axis) = convenience.missing_axis {
        return Err(Error::NotConvenient { axis });
    }
    let support = newton::support(f)?
        .into_iter()
        .map(|s| SupportEntry {
            point: s.point,
            terms: s.terms.iter().map(|&i| f.terms()[i].render()).collect(),
        })
        .collect();
    let mut report = AnalysisReport {
        schema: SCHEMA,
        command: command.to_string(),
        input,
        polynomial: f.render(),
        convenience,
        support,
        newton_boundary: None,
        dual_diagram: None,
        face_table: Vec::new(),
        face_type: None,
        subdivision: None,
        certificate: None,
    };
    if f.n() != 2 {
        return Ok(report);
    }
    report.newton_boundary = Some(newton_boundary(f)?);
    report.dual_diagram = Some(dual_diagram(f)?);
    for face in compact_faces(f)? {
        for w in &face.weights {
            report.face_table.push(face_row(f, w)?);
        }
    }
    let verdict = classify_face_type(f)?;
    report.face_type = Some(FaceTypeReport {
        verdict: verdict.verdict,
        offending_face: verdict.offending_face,
        sign_disagreements: verdict.sign_disagreements,
    });
    report.subdivision = Some(subdivision_report(f, &canonical_subdivision(f)?)?);
    Ok(report)
}

/// Pretty-printed JSON with a trailing newline.
pub fn emit_report_json<T: Serialize>(report: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(report).expect("reports serialize");
    out.push(b'\n');
    out
}

fn points(ps: &[Vec<i64>]) -> String {
    ps.iter()
        .map(|p| format!("({})", p.iter().map(i64::to_string).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn weights(ws: &[WeightVector]) -> String {
    ws.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn verdict_text(v: FaceType) -> &'static str {
    match v {
        FaceType::StronglyPolarPositive => "strongly polar positive",
        FaceType::StronglyPolarNonNegative => "strongly polar non-negative",
        FaceType::NotOfType => "not of strongly polar non-negative type",
    }
}

pub fn render_face_table(rows: &[FaceTableRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<9} {:<4} {:<6} {:<6} face terms (radial, polar)",
        "weight", "dim", "rdeg", "pdeg"
    );
    for r in rows {
        let terms: Vec<String> = r
            .terms
            .iter()
            .map(|t| format!("{} ({}, {})", t.term, t.radial, t.polar))
            .collect();
        let pdeg = r.pdeg.map_or("-".to_string(), |p| p.to_string());
        let _ = writeln!(
            out,
            "{:<9} {:<4} {:<6} {:<6} {}",
            r.weight.to_string(),
            r.dim,
            r.rdeg,
            pdeg,
            terms.join(" + ")
        );
    }
    out
}

pub fn render_subdivision(s: &SubdivisionReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "rays: {}", weights(&s.rays));
    for c in &s.cones {
        let m = &c.matrix;
        let rows: Vec<String> = m
            .iter()
            .map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        let _ = writeln!(
            out,
            "{:<5} {:<14} [{}]  det {}",
            c.name,
            weights(&c.vertices),
            rows.join("; "),
            c.det
        );
    }
    let yn = |b: bool| if b { "yes" } else { "no" };
    let _ = writeln!(
        out,
        "regular: {}  admissible: {}  convenient: {}",
        yn(s.regular),
        yn(s.admissible),
        yn(s.convenient)
    );
    out
}

pub fn render_certificate(c: &SmoothnessCertificate) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<14} {:<14} {:<7} strict transform", "cone", "chart", "lambda");
    for e in &c.per_cone {
        let status = match &e.probe {
            ProbeStatus::Empty { reason } => format!("EMPTY ({reason})"),
            ProbeStatus::Nonempty { witness, .. } => {
                let w: Vec<String> = witness.iter().map(|z| format!("{:.6}{:+.6}i", z[0], z[1])).collect();
                format!("NONEMPTY at u' = ({})", w.join(", "))
            }
            ProbeStatus::Unknown { best_residual } => format!("UNKNOWN (best residual {best_residual:.3e})"),
        };
        let lambda = e.lambda_tau.map_or("-".to_string(), |l| l.to_string());
        let _ = writeln!(
            out,
            "{:<14} {:<14} {:<7} {}",
            weights(&e.tau),
            weights(&e.chart),
            lambda,
            status
        );
    }
    let set = |s: &[i64]| format!("{{{}}}", s.iter().map(i64::to_string).collect::<Vec<_>>().join(", "));
    let lam = |l: Option<i64>| l.map_or("none".to_string(), |l| l.to_string());
    let _ = writeln!(
        out,
        "L conservative: {}  Lambda = {}",
        set(&c.l_set_conservative),
        lam(c.lambda_conservative)
    );
    let _ = writeln!(
        out,
        "L optimistic:   {}  Lambda = {}",
        set(&c.l_set_optimistic),
        lam(c.lambda_optimistic)
    );
    for corner in &c.corners {
        let _ = writeln!(
            out,
            "corner of chart {}: f~(0,0) = {}",
            weights(&corner.chart),
            corner.value
        );
    }
    let star = match &c.assumption_star {
        crate::toric::AssumptionStar::Holds => "HOLDS".to_string(),
        crate::toric::AssumptionStar::Violated { chart } => format!("VIOLATED in chart {}", weights(chart)),
        crate::toric::AssumptionStar::Unknown => "UNKNOWN".to_string(),
    };
    let _ = writeln!(out, "assumption (*): {star}");
    let _ = writeln!(
        out,
        "strict transform class: {}{}",
        c.smoothness_class,
        if c.meets_c1 { " (at least C^1)" } else { "" }
    );
    out
}

pub fn render_analysis(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "f = {}", r.polynomial);
    let axes: Vec<String> = r
        .convenience
        .axis_terms
        .iter()
        .enumerate()
        .map(|(i, t)| format!("axis {}: {}", i + 1, t.as_deref().unwrap_or("-")))
        .collect();
    let _ = writeln!(out, "convenient: yes ({})", axes.join(", "));
    let support: Vec<Vec<i64>> = r.support.iter().map(|s| s.point.clone()).collect();
    let _ = writeln!(out, "support: {}", points(&support));
    if let Some(b) = &r.newton_boundary {
        let _ = writeln!(out, "boundary: {}", points(&b.vertices).replace(' ', " - "));
    }
    if let Some(d) = &r.dual_diagram {
        let _ = writeln!(out, "dual rays: {}", weights(&d.rays));
    }
    if !r.face_table.is_empty() {
        out.push('\n');
        out.push_str(&render_face_table(&r.face_table));
    }
    if let Some(v) = &r.face_type {
        let _ = writeln!(out, "face type: {}", verdict_text(v.verdict));
        if let Some(w) = &v.offending_face {
            let _ = writeln!(out, "offending face: {w}");
        }
    }
    if let Some(s) = &r.subdivision {
        out.push('\n');
        out.push_str(&render_subdivision(s));
    }
    if let Some(c) = &r.certificate {
        out.push('\n');
        out.push_str(&render_certificate(c));
    }
    out
}
