//! Report types shared by the JSON and table renderers.
//!
//! Every number is rounded to the requested significant digits when the
//! report is built, so both renderers print the same values.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use bmfp_core::functions::Membership;
use bmfp_core::iterate::{Outcome, Trajectory};
use bmfp_core::space::ValidationReport;
use bmfp_core::{ContractionCertificate, FiniteBMetricSpace, FunctionSuite, PairRecord};
use serde::Serialize;

use crate::input::Real;

pub const DEFAULT_PRECISION: usize = 6;

/// Rounds to a fixed number of significant digits.
#[derive(Clone, Copy, Debug)]
pub struct Digits(pub usize);

impl Default for Digits {
    fn default() -> Self {
        Digits(DEFAULT_PRECISION)
    }
}

impl Digits {
    pub fn round(self, x: f64) -> f64 {
        if x == 0.0 || !x.is_finite() {
            return x;
        }
        let p = self.0.clamp(1, 17);
        format!("{:.*e}", p - 1, x).parse().unwrap_or(x)
    }
}

/// Table spelling of a number, identical to its JSON spelling.
pub fn num(x: f64) -> String {
    if x.is_finite() {
        serde_json::to_string(&x).unwrap_or_else(|_| format!("{x:?}"))
    } else {
        format!("{x}")
    }
}

fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_else(|| "n/a".into())
}

fn tuple(labels: &[String]) -> String {
    format!("({})", labels.join(", "))
}

/// Left-aligned columns separated by two spaces.
fn columns(rows: &[Vec<String>]) -> String {
    let mut widths = Vec::new();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            let w = cell.chars().count();
            if i >= widths.len() {
                widths.push(w);
            } else {
                widths[i] = widths[i].max(w);
            }
        }
    }
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            line.extend(std::iter::repeat_n(' ', widths[i] - cell.chars().count()));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// One command's result: a JSON body, a table body and an exit code.
pub trait Report: Serialize {
    fn table(&self) -> String;
    fn exit_code(&self) -> u8;
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ViolationOut {
    pub axiom: &'static str,
    pub points: Vec<String>,
    pub lhs: f64,
    pub rhs: f64,
}

impl ViolationOut {
    pub fn collect(report: &ValidationReport, labels: &[String], digits: Digits) -> Vec<Self> {
        report
            .violations()
            .iter()
            .map(|v| ViolationOut {
                axiom: v.axiom.id(),
                points: v.indices.iter().map(|&i| labels[i].clone()).collect(),
                lhs: digits.round(v.lhs),
                rhs: digits.round(v.rhs),
            })
            .collect()
    }

    fn line(&self) -> String {
        let p = &self.points;
        match (self.axiom, p.len()) {
            ("i", 1) => format!(
                "violation (i) d({0}, {0}) = {1}, expected 0",
                p[0],
                num(self.lhs)
            ),
            ("i", _) => format!(
                "violation (i) d({}, {}) = 0 for distinct points",
                p[0], p[1]
            ),
            ("ii", _) => format!(
                "violation (ii) d({0}, {1}) = {2} but d({1}, {0}) = {3}",
                p[0],
                p[1],
                num(self.lhs),
                num(self.rhs)
            ),
            _ => format!(
                "violation (iii) x={} y={} z={}: d(x, z) = {} > s (d(x, y) + d(y, z)) = {}",
                p[0],
                p[1],
                p[2],
                num(self.lhs),
                num(self.rhs)
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidateReport {
    pub command: &'static str,
    pub points: Vec<String>,
    pub coefficient: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficient_expr: Option<String>,
    pub passed: bool,
    pub minimal_coefficient: Option<f64>,
    pub minimal_triple: Option<Vec<String>>,
    pub violations: Vec<ViolationOut>,
}

fn coefficient_line(value: Option<f64>, triple: &Option<Vec<String>>) -> String {
    match (value, triple) {
        (Some(v), Some(t)) => format!(
            "minimal coefficient {} at (x, y, z) = {}\n",
            num(v),
            tuple(t)
        ),
        (Some(v), None) => format!("minimal coefficient {}\n", num(v)),
        (None, _) => {
            "minimal coefficient none (a zero sum of distances bounds a positive one)\n".into()
        }
    }
}

impl Report for ValidateReport {
    fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "points {}", self.points.join(", "));
        match &self.coefficient_expr {
            Some(e) => {
                let _ = writeln!(out, "coefficient {} = {}", e, num(self.coefficient));
            }
            None => {
                let _ = writeln!(out, "coefficient {}", num(self.coefficient));
            }
        }
        out.push_str(&coefficient_line(
            self.minimal_coefficient,
            &self.minimal_triple,
        ));
        for v in &self.violations {
            out.push_str(&v.line());
            out.push('\n');
        }
        let verdict = if self.passed { "pass" } else { "fail" };
        let _ = writeln!(
            out,
            "axioms {verdict} ({} violations)",
            self.violations.len()
        );
        out
    }

    fn exit_code(&self) -> u8 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoefficientReport {
    pub command: &'static str,
    pub points: Vec<String>,
    pub minimal_coefficient: Option<f64>,
    pub minimal_triple: Option<Vec<String>>,
    /// Declared coefficient from the file, if any.
    pub declared: Option<f64>,
    /// Whether the declared coefficient is at least the minimal one.
    pub declared_admissible: Option<bool>,
    /// Identity and symmetry violations; the coefficient is meaningless
    /// unless this is empty.
    pub violations: Vec<ViolationOut>,
}

impl Report for CoefficientReport {
    fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "points {}", self.points.join(", "));
        for v in &self.violations {
            out.push_str(&v.line());
            out.push('\n');
        }
        if self.violations.is_empty() {
            out.push_str(&coefficient_line(
                self.minimal_coefficient,
                &self.minimal_triple,
            ));
        }
        if let (Some(d), Some(ok)) = (self.declared, self.declared_admissible) {
            let note = if ok {
                "admissible"
            } else {
                "below the minimal coefficient"
            };
            let _ = writeln!(out, "declared coefficient {} ({note})", num(d));
        }
        out
    }

    fn exit_code(&self) -> u8 {
        if self.violations.is_empty() && self.minimal_coefficient.is_some() {
            0
        } else {
            1
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteOut {
    pub theta: &'static str,
    pub fc: &'static str,
    pub c: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_expr: Option<String>,
    pub j: &'static str,
    pub k: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_expr: Option<String>,
}

impl SuiteOut {
    pub fn new(suite: &FunctionSuite, c: Option<&Real>, k: Option<&Real>, digits: Digits) -> Self {
        SuiteOut {
            theta: suite.theta.name(),
            fc: suite.fc.name(),
            c: digits.round(suite.c()),
            c_expr: c.and_then(|r| r.expr.clone()),
            j: suite.j.name(),
            k: digits.round(suite.j.k()),
            k_expr: k.and_then(|r| r.expr.clone()),
        }
    }

    fn line(&self) -> String {
        let c = self.c_expr.clone().unwrap_or_else(|| num(self.c));
        let k = self.k_expr.clone().unwrap_or_else(|| num(self.k));
        format!(
            "suite theta {}, fc {} (c = {c}), j {} (k = {k})\n",
            self.theta, self.fc, self.j
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MembershipOut {
    pub member: bool,
    /// False when the closed-form rule does not cover this suite.
    pub rule_applies: bool,
    pub justification: String,
}

impl MembershipOut {
    pub fn new(suite: &FunctionSuite, m: Membership) -> Self {
        MembershipOut {
            member: m.member,
            rule_applies: rule_applies(suite),
            justification: m.justification,
        }
    }

    /// Stderr warnings for a suite the rule does not vouch for.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.rule_applies {
            out.push(
                "membership rule covers theta = affine_plus_one with ratio c = 1 only".to_string(),
            );
        }
        if !self.member {
            out.push(format!(
                "suite is not a verified member: {}",
                self.justification
            ));
        }
        out
    }

    fn line(&self) -> String {
        let verdict = if self.member {
            "member"
        } else {
            "not a member"
        };
        format!("membership {verdict}: {}\n", self.justification)
    }
}

fn rule_applies(suite: &FunctionSuite) -> bool {
    suite.theta == bmfp_core::ThetaFunction::AffinePlusOne && suite.c() == 1.0
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairOut {
    pub x: String,
    pub y: String,
    pub image_distance: f64,
    pub argument: f64,
    pub j_value: f64,
    pub margin: f64,
    pub verdict: &'static str,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertificateOut {
    pub condition: &'static str,
    pub c: f64,
    pub certified: bool,
    pub min_j_value: Option<f64>,
    pub min_margin: Option<f64>,
    pub pairs: Vec<PairOut>,
    pub witnesses: Vec<PairOut>,
}

impl CertificateOut {
    pub fn new(cert: &ContractionCertificate, digits: Digits) -> Self {
        let failing: BTreeSet<(usize, usize)> = cert
            .witnesses()
            .iter()
            .map(|r| (r.x_index, r.y_index))
            .collect();
        let pair = |r: &PairRecord| PairOut {
            x: r.x.clone(),
            y: r.y.clone(),
            image_distance: digits.round(r.image_distance),
            argument: digits.round(r.argument_distance),
            j_value: digits.round(r.j_value),
            margin: digits.round(r.margin),
            verdict: if failing.contains(&(r.x_index, r.y_index)) {
                "fail"
            } else {
                "pass"
            },
        };
        CertificateOut {
            condition: cert.condition().name(),
            c: digits.round(cert.c()),
            certified: cert.certified(),
            min_j_value: cert.min_j_value().map(|v| digits.round(v)),
            min_margin: cert.min_margin().map(|v| digits.round(v)),
            pairs: cert.records().iter().map(pair).collect(),
            witnesses: cert.witnesses().iter().map(pair).collect(),
        }
    }

    pub fn table(&self) -> String {
        let argument = match self.condition {
            "generalized" => "M_s(x,y)",
            _ => "d(x,y)",
        };
        let mut rows = vec![vec![
            "pair".to_string(),
            "d(Sx,Sy)".to_string(),
            argument.to_string(),
            "j_value".to_string(),
            "margin".to_string(),
            "verdict".to_string(),
        ]];
        for p in &self.pairs {
            rows.push(vec![
                format!("({}, {})", p.x, p.y),
                num(p.image_distance),
                num(p.argument),
                num(p.j_value),
                num(p.margin),
                p.verdict.to_string(),
            ]);
        }
        let mut out = format!("condition {} (c = {})\n", self.condition, num(self.c));
        out.push_str(&columns(&rows));
        let _ = writeln!(out, "pairs checked {}", self.pairs.len());
        let _ = writeln!(out, "min j_value {}", opt_num(self.min_j_value));
        let _ = writeln!(out, "min margin {}", opt_num(self.min_margin));
        for w in &self.witnesses {
            let _ = writeln!(
                out,
                "witness ({}, {}) j_value {} margin {}",
                w.x,
                w.y,
                num(w.j_value),
                num(w.margin)
            );
        }
        let verdict = if self.certified { "yes" } else { "no" };
        let _ = writeln!(out, "certified {verdict}");
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertifyReport {
    pub command: &'static str,
    pub points: Vec<String>,
    pub coefficient: f64,
    pub suite: SuiteOut,
    pub membership: MembershipOut,
    pub certificate: CertificateOut,
}

impl Report for CertifyReport {
    fn table(&self) -> String {
        let mut out = format!("coefficient {}\n", num(self.coefficient));
        out.push_str(&self.suite.line());
        out.push_str(&self.membership.line());
        out.push_str(&self.certificate.table());
        out
    }

    fn exit_code(&self) -> u8 {
        if self.certificate.certified {
            0
        } else {
            1
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OutcomeOut {
    FixedPoint {
        point: String,
        step: usize,
    },
    Cycle {
        period: usize,
        entry: usize,
        entry_point: String,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrajectoryOut {
    pub seed: String,
    pub visited: Vec<String>,
    pub step_distances: Vec<f64>,
    pub outcome: OutcomeOut,
}

impl TrajectoryOut {
    pub fn new(space: &FiniteBMetricSpace, t: &Trajectory, digits: Digits) -> Self {
        let label = |i: usize| space.label(i).to_string();
        TrajectoryOut {
            seed: label(t.seed),
            visited: t.visited.iter().map(|&i| label(i)).collect(),
            step_distances: t.step_distances.iter().map(|&r| digits.round(r)).collect(),
            outcome: match t.outcome {
                Outcome::FixedPoint { point, step } => OutcomeOut::FixedPoint {
                    point: label(point),
                    step,
                },
                Outcome::Cycle { period, entry } => OutcomeOut::Cycle {
                    period,
                    entry,
                    entry_point: label(t.visited[entry]),
                },
            },
        }
    }

    pub fn is_fixed_point(&self) -> bool {
        matches!(self.outcome, OutcomeOut::FixedPoint { .. })
    }

    fn line(&self) -> String {
        let outcome = match &self.outcome {
            OutcomeOut::FixedPoint { point, step } => format!("fixed point {point} at step {step}"),
            OutcomeOut::Cycle {
                period,
                entry_point,
                ..
            } => format!("cycle of period {period} entered at {entry_point}"),
        };
        let steps: Vec<String> = self.step_distances.iter().map(|&r| num(r)).collect();
        format!(
            "seed {}: {}; {outcome}; step distances [{}]\n",
            self.seed,
            self.visited.join(" -> "),
            steps.join(", ")
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IterateReport {
    pub command: &'static str,
    pub max_steps: usize,
    pub trajectories: Vec<TrajectoryOut>,
}

impl Report for IterateReport {
    fn table(&self) -> String {
        self.trajectories.iter().map(TrajectoryOut::line).collect()
    }

    fn exit_code(&self) -> u8 {
        if self.trajectories.iter().all(TrajectoryOut::is_fixed_point) {
            0
        } else {
            1
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FixedPointsReport {
    pub command: &'static str,
    pub fixed_points: Vec<String>,
    pub unique: bool,
}

fn fixed_point_line(fixed_points: &[String]) -> String {
    match fixed_points {
        [p] => format!("unique fixed point: {p}\n"),
        [] => "no fixed point\n".into(),
        many => format!("{} fixed points: {}\n", many.len(), many.join(", ")),
    }
}

impl Report for FixedPointsReport {
    fn table(&self) -> String {
        fixed_point_line(&self.fixed_points)
    }

    fn exit_code(&self) -> u8 {
        if self.unique {
            0
        } else {
            1
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConsequenceOut {
    /// `holds`, `violated` or `not_applicable`.
    pub status: &'static str,
    pub fixed_point: Option<String>,
    pub offending_seed: Option<String>,
    pub reason: Option<&'static str>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DemoSpaceOut {
    pub points: Vec<String>,
    pub distances: Vec<Vec<f64>>,
    pub coefficient: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficient_expr: Option<&'static str>,
    pub axioms_passed: bool,
    pub minimal_coefficient: f64,
    pub minimal_triple: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleOut {
    pub fixed_points: Vec<String>,
    pub unique: bool,
    /// Whether brute force agrees with the last certificate.
    pub consistent: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DemoReport {
    pub command: &'static str,
    pub example: &'static str,
    pub space: DemoSpaceOut,
    pub suite: SuiteOut,
    pub membership: MembershipOut,
    pub certificates: Vec<CertificateOut>,
    pub trajectories: Vec<TrajectoryOut>,
    pub oracle: OracleOut,
    pub consequence: ConsequenceOut,
}

impl Report for DemoReport {
    fn table(&self) -> String {
        let s = &self.space;
        let mut out = format!("example {}\n", self.example);
        let _ = writeln!(out, "points {}", s.points.join(", "));
        let rows: Vec<Vec<String>> = s
            .distances
            .iter()
            .map(|r| r.iter().map(|&v| num(v)).collect())
            .collect();
        out.push_str(&columns(&rows));
        match s.coefficient_expr {
            Some(e) => {
                let _ = writeln!(out, "coefficient {e} = {}", num(s.coefficient));
            }
            None => {
                let _ = writeln!(out, "coefficient {}", num(s.coefficient));
            }
        }
        let verdict = if s.axioms_passed { "pass" } else { "fail" };
        let _ = writeln!(out, "axioms {verdict}");
        out.push_str(&coefficient_line(
            Some(s.minimal_coefficient),
            &s.minimal_triple,
        ));
        out.push_str(&self.suite.line());
        out.push_str(&self.membership.line());
        for cert in &self.certificates {
            out.push('\n');
            out.push_str(&cert.table());
        }
        out.push('\n');
        for t in &self.trajectories {
            out.push_str(&t.line());
        }
        out.push('\n');
        out.push_str(&fixed_point_line(&self.oracle.fixed_points));
        if let Some(c) = self.oracle.consistent {
            let _ = writeln!(
                out,
                "oracle agrees with certificate {}",
                if c { "yes" } else { "no" }
            );
        }
        let c = &self.consequence;
        match (c.status, &c.fixed_point, &c.offending_seed, c.reason) {
            ("holds", Some(p), _, _) => {
                let _ = writeln!(out, "consequence holds: every seed reaches {p}");
            }
            ("violated", _, seed, _) => {
                let _ = writeln!(
                    out,
                    "consequence violated (seed {})",
                    seed.as_deref().unwrap_or("n/a")
                );
            }
            (_, _, _, reason) => {
                let _ = writeln!(out, "consequence not applicable: {}", reason.unwrap_or(""));
            }
        }
        out
    }

    fn exit_code(&self) -> u8 {
        if self.consequence.status == "holds" {
            0
        } else {
            1
        }
    }
}
