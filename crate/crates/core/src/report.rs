//! Run records shared by the command-line tool and the C interface, and
//! their text renderings.
//!
//! Records carry exact values as strings (`"13/9"`, `"inf"`) next to
//! 4-digit truncated decimals that are for display only. Nothing
//! time-dependent is stored, so a record is a pure function of its input.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{LctError, Result};
use crate::eval::{evaluate, evaluate_star, LctBreakdown};
use crate::extended::ExtendedRational;
use crate::gamma::{enumerate_rays_counted, global_lct_of_triple, hyperplane_rows};
use crate::ideal::{GeneralBinomialIdeal, IdealTriple};
use crate::linalg::IntVector;
use crate::newton::{howald_lct, DivisorShift, NewtonPolyhedron};
use crate::resolution::{resolve_and_evaluate, BlowUp, ResolutionLct};

pub const DECIMALS: usize = 4;
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Rays,
    Resolution,
    HowaldStar,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Rays => "rays",
            Method::Resolution => "resolution",
            Method::HowaldStar => "howald-star",
        }
    }
}

/// An exact value as numerator and denominator strings; `den = "0"` is `∞`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fraction {
    pub num: String,
    pub den: String,
}

impl From<&ExtendedRational> for Fraction {
    fn from(x: &ExtendedRational) -> Self {
        let (num, den) = x.num_den();
        Fraction {
            num: num.to_string(),
            den: den.to_string(),
        }
    }
}

impl Fraction {
    pub fn to_extended(&self) -> Result<ExtendedRational> {
        let bad = || LctError::InvalidValue(format!("{}/{}", self.num, self.den));
        let num = self.num.parse().map_err(|_| bad())?;
        let den = self.den.parse().map_err(|_| bad())?;
        Ok(ExtendedRational::quotient(num, den))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub ray: String,
    pub lct: String,
    pub lct_decimal: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub star: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub star_decimal: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    #[serde(rename = "A_rows")]
    pub a_rows: usize,
    pub rays: usize,
    pub subsets: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub blowups: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub version: String,
    pub ideal: String,
    pub method: Method,
    pub rows: Vec<ReportRow>,
    pub global: Fraction,
    pub global_decimal: String,
    pub argmin: Vec<String>,
    pub counts: Counts,
}

impl RunReport {
    pub fn global_value(&self) -> Result<ExtendedRational> {
        self.global.to_extended()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| LctError::InvalidValue(e.to_string()))
    }
}

fn row(ray: &IntVector, value: &ExtendedRational, star: Option<&ExtendedRational>) -> ReportRow {
    ReportRow {
        ray: ray.to_string(),
        lct: value.to_record_string(),
        lct_decimal: value.to_decimal(DECIMALS),
        star: star.map(ExtendedRational::to_record_string),
        star_decimal: star.map(|s| s.to_decimal(DECIMALS)),
    }
}

fn finish(
    ideal: &GeneralBinomialIdeal,
    method: Method,
    rows: Vec<ReportRow>,
    global: &ExtendedRational,
    argmin: &[IntVector],
    counts: Counts,
) -> RunReport {
    RunReport {
        version: VERSION.to_string(),
        ideal: ideal.to_string(),
        method,
        rows,
        global: global.into(),
        global_decimal: global.to_decimal(DECIMALS),
        argmin: argmin.iter().map(ToString::to_string).collect(),
        counts,
    }
}

/// Every monomial that appears in some generator, as a monomial ideal.
pub fn all_terms_polyhedron(triple: &IdealTriple) -> Result<NewtonPolyhedron> {
    let mut terms: Vec<IntVector> = Vec::new();
    for m in [triple.plus(), triple.minus()] {
        for r in m.rows() {
            if !terms.contains(r) {
                terms.push(r.clone());
            }
        }
    }
    NewtonPolyhedron::new(terms)
}

pub fn build_report(
    ideal: &GeneralBinomialIdeal,
    method: Method,
    with_star: bool,
) -> Result<RunReport> {
    let triple = ideal.triple();
    match method {
        Method::Rays => {
            let table = global_lct_of_triple(&triple)?;
            let rows = table
                .rays
                .iter()
                .zip(&table.breakdowns)
                .map(|(v, b)| row(v, &b.value, with_star.then_some(&b.star)))
                .collect();
            let counts = Counts {
                a_rows: table.hyperplane_count,
                rays: table.rays.len(),
                subsets: table.full_rank_subsets,
                blowups: None,
            };
            Ok(finish(
                ideal,
                method,
                rows,
                &table.global,
                &table.argmin,
                counts,
            ))
        }
        Method::Resolution => {
            let ResolutionLct {
                value,
                argmin,
                resolution,
            } = resolve_and_evaluate(&triple)?;
            let mut vertices: Vec<IntVector> = resolution.fan.vertices().to_vec();
            vertices.sort();
            let rows = vertices
                .iter()
                .map(|v| {
                    let b = evaluate(&triple, v)?;
                    Ok(row(v, &b.value, with_star.then_some(&b.star)))
                })
                .collect::<Result<Vec<_>>>()?;
            let counts = Counts {
                a_rows: 0,
                rays: vertices.len(),
                subsets: 0,
                blowups: Some(resolution.trace.len()),
            };
            Ok(finish(ideal, method, rows, &value, &argmin, counts))
        }
        Method::HowaldStar => {
            let poly = all_terms_polyhedron(&triple)?;
            let global = howald_lct(&poly, &DivisorShift::zero(triple.nvars()))?;
            let mono = poly.monomial_triple();
            let h = hyperplane_rows(&mono);
            let e = enumerate_rays_counted(&h);
            let mut argmin = Vec::new();
            let mut rows = Vec::with_capacity(e.rays.len());
            for v in &e.rays {
                let value = evaluate_star(&triple, v)?;
                if value == global {
                    argmin.push(v.clone());
                }
                rows.push(row(v, &value, None));
            }
            let counts = Counts {
                a_rows: h.len(),
                rays: e.rays.len(),
                subsets: e.full_rank_subsets,
                blowups: None,
            };
            Ok(finish(ideal, method, rows, &global, &argmin, counts))
        }
    }
}

/// Breakdown of one evaluation in record form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalReport {
    pub version: String,
    pub v: String,
    pub alpha: Vec<String>,
    pub beta: Vec<String>,
    /// 1-based generator indices in sorted order.
    pub epsilon: Vec<usize>,
    pub r0: usize,
    pub n_seq: Vec<usize>,
    pub s0: usize,
    pub rank: usize,
    pub tilde_s: String,
    pub s_v: usize,
    pub candidates: Vec<String>,
    pub value: String,
    pub star: String,
}

impl From<&LctBreakdown> for EvalReport {
    fn from(b: &LctBreakdown) -> Self {
        EvalReport {
            version: VERSION.to_string(),
            v: b.v.to_string(),
            alpha: b.alpha.iter().map(ToString::to_string).collect(),
            beta: b.beta.iter().map(ToString::to_string).collect(),
            epsilon: b.epsilon.iter().map(|i| i + 1).collect(),
            r0: b.r0,
            n_seq: b.n_seq.clone(),
            s0: b.s0,
            rank: b.s_rank,
            tilde_s: b.tilde_s.to_record_string(),
            s_v: b.s_v,
            candidates: b.candidates.iter().map(|c| c.to_record_string()).collect(),
            value: b.value.to_record_string(),
            star: b.star.to_record_string(),
        }
    }
}

fn list<T: ToString>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

pub fn render_breakdown(b: &LctBreakdown) -> String {
    let eps: Vec<usize> = b.epsilon.iter().map(|i| i + 1).collect();
    let cands: Vec<String> = b.candidates.iter().map(ToString::to_string).collect();
    let mut out = String::new();
    let _ = writeln!(out, "v          = {}", b.v);
    let _ = writeln!(out, "alpha      = {}", list(&b.alpha));
    let _ = writeln!(out, "beta       = {}", list(&b.beta));
    let _ = writeln!(out, "epsilon    = {}", list(&eps));
    let _ = writeln!(out, "r0         = {}", b.r0);
    let _ = writeln!(out, "n          = {}", list(&b.n_seq));
    let _ = writeln!(out, "s0         = {}", b.s0);
    let _ = writeln!(out, "rank M     = {}", b.s_rank);
    let _ = writeln!(out, "s          = {}", b.s_v);
    let _ = writeln!(out, "tilde s    = {}", b.tilde_s);
    let _ = writeln!(out, "candidates = {}", cands.join(", "));
    let _ = writeln!(
        out,
        "value      = {} ({})",
        b.value,
        b.value.to_decimal(DECIMALS)
    );
    let _ = writeln!(
        out,
        "star       = {} ({})",
        b.star,
        b.star.to_decimal(DECIMALS)
    );
    out
}

fn display_value(record: &str) -> String {
    if record == "inf" {
        "∞".to_string()
    } else {
        record.to_string()
    }
}

fn display_decimal(d: &str) -> String {
    // drop trailing zeros the way the figures print 1.75 and 2
    if d.contains('.') {
        d.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        d.to_string()
    }
}

fn table_lines(rows: &[&ReportRow], argmin: &[String], with_star: bool) -> Vec<String> {
    let mut cells: Vec<Vec<String>> = vec![{
        let mut h = vec!["Ray".to_string(), "lct".to_string(), String::new()];
        if with_star {
            h.extend(["lct*".to_string(), String::new()]);
        }
        h
    }];
    for r in rows {
        let mark = if argmin.contains(&r.ray) { "*" } else { "" };
        let mut c = vec![
            format!("{}{mark}", r.ray),
            display_value(&r.lct),
            display_decimal(&r.lct_decimal),
        ];
        if with_star {
            c.push(display_value(r.star.as_deref().unwrap_or("")));
            c.push(display_decimal(r.star_decimal.as_deref().unwrap_or("")));
        }
        cells.push(c);
    }
    let ncols = cells[0].len();
    let widths: Vec<usize> = (0..ncols)
        .map(|k| {
            cells
                .iter()
                .map(|c| c[k].chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    cells
        .iter()
        .map(|c| {
            let parts: Vec<String> = c
                .iter()
                .zip(&widths)
                .enumerate()
                .map(|(k, (s, &w))| {
                    let pad = w - s.chars().count();
                    // ray and decimal columns left, exact columns right
                    if k == 0 || k % 2 == 0 {
                        format!("{s}{}", " ".repeat(pad))
                    } else {
                        format!("{}{s}", " ".repeat(pad))
                    }
                })
                .collect();
            format!("| {} |", parts.join(" | "))
        })
        .collect()
}

/// One table, rows in report order; argmin rays are marked with `*`.
pub fn render_table(report: &RunReport) -> String {
    let with_star = report.rows.iter().any(|r| r.star.is_some());
    let rows: Vec<&ReportRow> = report.rows.iter().collect();
    let mut out = table_lines(&rows, &report.argmin, with_star).join("\n");
    out.push('\n');
    out
}

/// Two tables side by side: rays inside the open orthant on the left,
/// rays on a coordinate hyperplane on the right.
pub fn render_figure(report: &RunReport) -> String {
    let with_star = report.rows.iter().any(|r| r.star.is_some());
    let interior = |r: &ReportRow| {
        r.ray
            .trim_matches(|c| c == '(' || c == ')')
            .split(',')
            .all(|x| x != "0")
    };
    let left: Vec<&ReportRow> = report.rows.iter().filter(|r| interior(r)).collect();
    let right: Vec<&ReportRow> = report.rows.iter().filter(|r| !interior(r)).collect();
    let l = table_lines(&left, &report.argmin, with_star);
    let r = table_lines(&right, &report.argmin, with_star);
    let lw = l.iter().map(|s| s.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for k in 0..l.len().max(r.len()) {
        let a = l.get(k).map(String::as_str).unwrap_or("");
        let b = r.get(k).map(String::as_str).unwrap_or("");
        let pad = lw - a.chars().count();
        let _ = writeln!(out, "{a}{}   {b}", " ".repeat(pad));
    }
    out
}

pub fn render_summary(report: &RunReport) -> String {
    let global = report
        .global_value()
        .map(|g| g.to_string())
        .unwrap_or_else(|_| "?".into());
    let mut out = String::new();
    let _ = writeln!(out, "method: {}", report.method.name());
    let _ = writeln!(
        out,
        "lct = {global} ({})",
        display_decimal(&report.global_decimal)
    );
    let _ = writeln!(out, "argmin: {}", report.argmin.join(" "));
    let c = &report.counts;
    match c.blowups {
        Some(b) => {
            let _ = writeln!(out, "vertices: {}, blow-ups: {b}", c.rays);
        }
        None => {
            let _ = writeln!(
                out,
                "hyperplane rows: {}, rays: {}, full-rank subsets: {}",
                c.a_rows, c.rays, c.subsets
            );
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowUpRecord {
    pub step: usize,
    pub phase: u8,
    pub target: String,
    pub center: [String; 2],
    pub new_vertex: String,
    pub before: [String; 2],
    pub after: [String; 2],
}

impl From<&BlowUp> for BlowUpRecord {
    fn from(b: &BlowUp) -> Self {
        BlowUpRecord {
            step: b.step,
            phase: b.target.phase(),
            target: b.target.to_string(),
            center: [b.center.0.to_string(), b.center.1.to_string()],
            new_vertex: b.new_vertex.to_string(),
            before: [b.before.l.to_string(), b.before.lp.to_string()],
            after: [b.after.l.to_string(), b.after.lp.to_string()],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolveReport {
    pub version: String,
    pub ideal: String,
    pub blowups: Vec<BlowUpRecord>,
    pub vertices: Vec<String>,
    pub cones: Vec<Vec<usize>>,
    pub lct: Fraction,
    pub argmin: Vec<String>,
}

pub fn build_resolve_report(ideal: &GeneralBinomialIdeal) -> Result<ResolveReport> {
    let out = resolve_and_evaluate(&ideal.triple())?;
    let res = &out.resolution;
    Ok(ResolveReport {
        version: VERSION.to_string(),
        ideal: ideal.to_string(),
        blowups: res.trace.iter().map(BlowUpRecord::from).collect(),
        vertices: res.fan.vertices().iter().map(ToString::to_string).collect(),
        cones: res
            .fan
            .cones()
            .iter()
            .map(|c| c.iter().map(|i| i + 1).collect())
            .collect(),
        lct: (&out.value).into(),
        argmin: out.argmin.iter().map(ToString::to_string).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub version: String,
    pub ideal: String,
    pub rays: Fraction,
    pub resolution: Fraction,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub howald: Option<Fraction>,
    pub agree: bool,
    pub blowups: usize,
    pub vertices: usize,
}

pub fn build_verify_report(ideal: &GeneralBinomialIdeal) -> Result<VerifyReport> {
    let triple = ideal.triple();
    let rays = global_lct_of_triple(&triple)?.global;
    let res = resolve_and_evaluate(&triple)?;
    let howald = if ideal.is_monomial() {
        let poly = NewtonPolyhedron::new(triple.plus().rows().to_vec())?;
        Some(howald_lct(&poly, &DivisorShift::zero(triple.nvars()))?)
    } else {
        None
    };
    let agree = rays == res.value && howald.as_ref().is_none_or(|h| *h == rays);
    Ok(VerifyReport {
        version: VERSION.to_string(),
        ideal: ideal.to_string(),
        rays: (&rays).into(),
        resolution: (&res.value).into(),
        howald: howald.as_ref().map(Fraction::from),
        agree,
        blowups: res.resolution.trace.len(),
        vertices: res.resolution.fan.vertices().len(),
    })
}

/// Process exit status for an error: 1 when independent computations
/// disagree or an internal invariant broke, 2 for bad input.
pub fn exit_code(e: &LctError) -> i32 {
    match e {
        LctError::OracleMismatch(_) | LctError::InvalidValue(_) | LctError::Infeasible => 1,
        _ => 2,
    }
}
