//! Simulation functions `J: [1, inf)^2 -> R`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::grid::Axis;
use super::operator::{check_unit_ray, Comparison};
use super::report::{CheckReport, Condition, Verdict, Witness};
use super::theta::Theta;
use super::DomainError;
use crate::tol::Tolerance;

/// Anything usable as a simulation function. Evaluation is unchecked.
pub trait Simulation {
    fn apply(&self, x: f64, y: f64) -> f64;
}

impl<F: Fn(f64, f64) -> f64> Simulation for F {
    fn apply(&self, x: f64, y: f64) -> f64 {
        self(x, y)
    }
}

/// Built-in simulation families.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SimulationFunction {
    /// `y / (k x)`.
    ScaledRatio { k: f64 },
}

impl SimulationFunction {
    /// Any finite `k > 0` is accepted so that non-members can be probed;
    /// see [`scaled_ratio_membership`] for when the result is a genuine
    /// simulation function.
    pub fn scaled_ratio(k: f64) -> Result<Self, DomainError> {
        if k.is_finite() && k > 0.0 {
            Ok(SimulationFunction::ScaledRatio { k })
        } else {
            Err(DomainError::InvalidParameter {
                name: "k",
                value: k,
            })
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SimulationFunction::ScaledRatio { .. } => "scaled_ratio",
        }
    }

    pub fn k(&self) -> f64 {
        match *self {
            SimulationFunction::ScaledRatio { k } => k,
        }
    }

    /// Checked evaluation on `[1, inf)^2`.
    pub fn eval(&self, x: f64, y: f64) -> Result<f64, DomainError> {
        check_unit_ray(x, y)?;
        Ok(self.apply(x, y))
    }
}

impl Simulation for SimulationFunction {
    fn apply(&self, x: f64, y: f64) -> f64 {
        match *self {
            SimulationFunction::ScaledRatio { k } => y / (k * x),
        }
    }
}

/// Checks `J(x, y) < F(y, x)` strictly on every pair of `axis x axis` with
/// both coordinates above 1. No tolerance: equality is a failure.
pub fn check_j_property_i(j: &impl Simulation, op: &impl Comparison, axis: &Axis) -> CheckReport {
    let xs: Vec<f64> = axis
        .samples()
        .iter()
        .copied()
        .filter(|&v| v > 1.0)
        .collect();
    let mut report = CheckReport::default();
    if xs.is_empty() {
        report.push(
            Condition::SimulationDominated,
            Verdict::NotApplicable("no samples above 1"),
        );
        return report;
    }
    let witness = xs
        .iter()
        .flat_map(|&x| xs.iter().map(move |&y| (x, y)))
        .find_map(|(x, y)| {
            let lhs = j.apply(x, y);
            let rhs = op.apply(y, x);
            (!(lhs < rhs)).then(|| Witness {
                args: vec![x, y],
                observed: lhs,
                bound: rhs,
            })
        });
    report.record(Condition::SimulationDominated, witness);
    report
}

/// Two finite positive sequences with a tail window, used to probe the
/// limsup condition. liminf / limsup are estimated as min / max over the tail.
#[derive(Clone, Debug, PartialEq)]
pub struct SequencePairProbe {
    a: Vec<f64>,
    b: Vec<f64>,
    tail_start: usize,
    coefficient: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ProbeError {
    Empty,
    LengthMismatch {
        a: usize,
        b: usize,
    },
    NonPositive {
        sequence: char,
        index: usize,
        value: f64,
    },
    TailOutOfRange {
        start: usize,
        len: usize,
    },
    InvalidCoefficient(f64),
}

impl fmt::Display for ProbeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProbeError::Empty => write!(f, "probe sequences are empty"),
            ProbeError::LengthMismatch { a, b } => {
                write!(f, "probe sequences differ in length ({a} vs {b})")
            }
            ProbeError::NonPositive {
                sequence,
                index,
                value,
            } => write!(f, "{sequence}[{index}] = {value} is not positive"),
            ProbeError::TailOutOfRange { start, len } => {
                write!(
                    f,
                    "tail start {start} is outside a sequence of length {len}"
                )
            }
            ProbeError::InvalidCoefficient(s) => {
                write!(f, "coefficient must be finite and >= 1, got {s}")
            }
        }
    }
}

impl core::error::Error for ProbeError {}

impl SequencePairProbe {
    /// Tail window defaults to the last half (`len / 2 ..`).
    pub fn new(a: Vec<f64>, b: Vec<f64>, coefficient: f64) -> Result<Self, ProbeError> {
        let start = a.len() / 2;
        Self::with_tail(a, b, coefficient, start)
    }

    pub fn with_tail(
        a: Vec<f64>,
        b: Vec<f64>,
        coefficient: f64,
        tail_start: usize,
    ) -> Result<Self, ProbeError> {
        if a.is_empty() || b.is_empty() {
            return Err(ProbeError::Empty);
        }
        if a.len() != b.len() {
            return Err(ProbeError::LengthMismatch {
                a: a.len(),
                b: b.len(),
            });
        }
        for (sequence, seq) in [('a', &a), ('b', &b)] {
            if let Some((index, &value)) = seq
                .iter()
                .enumerate()
                .find(|(_, &v)| !(v > 0.0 && v.is_finite()))
            {
                return Err(ProbeError::NonPositive {
                    sequence,
                    index,
                    value,
                });
            }
        }
        if tail_start >= a.len() {
            return Err(ProbeError::TailOutOfRange {
                start: tail_start,
                len: a.len(),
            });
        }
        if !(coefficient.is_finite() && coefficient >= 1.0) {
            return Err(ProbeError::InvalidCoefficient(coefficient));
        }
        Ok(SequencePairProbe {
            a,
            b,
            tail_start,
            coefficient,
        })
    }

    pub fn coefficient(&self) -> f64 {
        self.coefficient
    }

    pub fn tail_start(&self) -> usize {
        self.tail_start
    }

    fn tail_extremes(seq: &[f64]) -> (f64, f64) {
        seq.iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            })
    }

    /// `(liminf a, limsup a, liminf b, limsup b)` over the tail window.
    pub fn estimates(&self) -> (f64, f64, f64, f64) {
        let (la, ua) = Self::tail_extremes(&self.a[self.tail_start..]);
        let (lb, ub) = Self::tail_extremes(&self.b[self.tail_start..]);
        (la, ua, lb, ub)
    }

    /// Both interleaved bound chains
    /// `0 < liminf a <= s limsup b <= s^2 liminf a < inf` and the same with
    /// `a` and `b` swapped.
    pub fn hypothesis_met(&self, tol: Tolerance) -> bool {
        let s = self.coefficient;
        let (la, ua, lb, ub) = self.estimates();
        let chain = |low: f64, up_other: f64| {
            low > 0.0 && tol.at_most(low, s * up_other) && tol.at_most(s * up_other, s * s * low)
        };
        chain(la, ub) && chain(lb, ua)
    }
}

/// Result of probing the limsup condition with one sequence pair.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbeReport {
    pub liminf_a: f64,
    pub limsup_a: f64,
    pub liminf_b: f64,
    pub limsup_b: f64,
    pub hypothesis_met: bool,
    /// Tail maximum of `J(theta(a_n), theta(b_n))`.
    pub limsup_j: f64,
    /// Index attaining `limsup_j`.
    pub argmax: usize,
    pub verdict: Verdict,
}

/// Probes `limsup J(theta(a_n), theta(b_n)) < c` on one supplied pair of
/// sequences. A probe whose tails miss the hypothesis chains is vacuous.
pub fn check_j_property_ii(
    j: &impl Simulation,
    theta: &impl Theta,
    probe: &SequencePairProbe,
    c: f64,
    tol: Tolerance,
) -> ProbeReport {
    let (la, ua, lb, ub) = probe.estimates();
    let hypothesis_met = probe.hypothesis_met(tol);
    let (argmax, limsup_j) = (probe.tail_start..probe.a.len())
        .map(|n| (n, j.apply(theta.apply(probe.a[n]), theta.apply(probe.b[n]))))
        .fold((probe.tail_start, f64::NEG_INFINITY), |best, cur| {
            if cur.1 > best.1 || cur.1.is_nan() {
                cur
            } else {
                best
            }
        });
    let verdict = if !hypothesis_met {
        Verdict::NotApplicable("hypothesis not met")
    } else if limsup_j < c {
        Verdict::Pass
    } else {
        Verdict::Fail(Witness {
            args: vec![probe.a[argmax], probe.b[argmax]],
            observed: limsup_j,
            bound: c,
        })
    };
    ProbeReport {
        liminf_a: la,
        limsup_a: ua,
        liminf_b: lb,
        limsup_b: ub,
        hypothesis_met,
        limsup_j,
        argmax,
        verdict,
    }
}

/// Closed-form membership rule for `scaled_ratio(k)` paired with the ratio
/// operator (`c = 1`) and `theta(x) = x + 1` on a space with coefficient `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    pub justification: String,
}

/// `k >= s` and `k > 1`.
///
/// The chains give `limsup b_n <= s liminf a_n = s L`, so
/// `limsup (b_n + 1) / (k (a_n + 1)) <= (s L + 1) / (k L + k)`, which is below
/// 1 once `k >= s` and `k > 1`; `k > 1` is also what keeps
/// `y / (k x) < y / x` strict.
pub fn scaled_ratio_membership(k: f64, s: f64) -> Membership {
    if !(k.is_finite() && k > 0.0) {
        return Membership {
            member: false,
            justification: format!("k = {k} is not a positive real"),
        };
    }
    if !(s.is_finite() && s >= 1.0) {
        return Membership {
            member: false,
            justification: format!("s = {s} is not a coefficient (needs s >= 1)"),
        };
    }
    if k <= 1.0 {
        return Membership {
            member: false,
            justification: format!(
                "k = {k} <= 1: J(x,y) = y/(kx) >= y/x = F(y,x), so domination fails, \
                 and equal constant sequences give limsup J = 1/k >= c = 1"
            ),
        };
    }
    if k < s {
        return Membership {
            member: false,
            justification: format!(
                "k = {k} < s = {s}: limsup b_n may reach s*liminf a_n, \
                 making (sL+1)/(k(L+1)) exceed 1 for large L"
            ),
        };
    }
    Membership {
        member: true,
        justification: format!(
            "k = {k} > 1 gives J(x,y) = y/(kx) < y/x; the chains give limsup b_n <= s*liminf a_n = sL, \
             so limsup (b_n+1)/(k(a_n+1)) <= (sL+1)/(kL+k) < 1 since k >= s = {s}"
        ),
    }
}
