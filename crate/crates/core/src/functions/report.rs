use alloc::vec::Vec;
use core::fmt;

/// A property checked by one of the sampled falsifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    /// theta maps `(0, inf)` into `(1, inf)` with finite values.
    ThetaCodomain,
    /// theta is increasing.
    ThetaIncreasing,
    /// theta tends to 1 at `0+`.
    ThetaLimitAtZero,
    /// theta is continuous.
    ThetaContinuous,
    /// F is continuous.
    FcContinuous,
    /// `F(x, y) <= x`.
    FcBoundedByFirst,
    /// `F(x, y) = x` only when `x = 1` or `y = 1`.
    FcEqualityAtOne,
    /// `F(x, y) > c` implies `x > y`.
    FcExceedsImpliesOrder,
    /// `F(x, x) <= c`.
    FcDiagonal,
    /// `J(x, y) < F(y, x)` on `(1, inf)^2`.
    SimulationDominated,
    /// limsup of `J(theta(a_n), theta(b_n))` is below `c`.
    SimulationLimsup,
}

impl Condition {
    pub fn label(&self) -> &'static str {
        match self {
            Condition::ThetaCodomain => "theta codomain (1, inf)",
            Condition::ThetaIncreasing => "theta (a) increasing",
            Condition::ThetaLimitAtZero => "theta (b) limit 1 at 0+",
            Condition::ThetaContinuous => "theta (d) continuous",
            Condition::FcContinuous => "F_c (i) continuous",
            Condition::FcBoundedByFirst => "F_c (ii) F(x,y) <= x",
            Condition::FcEqualityAtOne => "F_c (iii) F(x,y) = x => x = 1 or y = 1",
            Condition::FcExceedsImpliesOrder => "F_c (iv) F(x,y) > c => x > y",
            Condition::FcDiagonal => "F_c (iv) F(x,x) <= c",
            Condition::SimulationDominated => "J (i) J(x,y) < F_c(y,x)",
            Condition::SimulationLimsup => "J (ii) limsup J(theta(a_n), theta(b_n)) < c",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Where a sampled check broke: the sample arguments, the observed value and
/// the bound it was compared against.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub args: Vec<f64>,
    pub observed: f64,
    pub bound: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    /// No violation found on the samples.
    Pass,
    Fail(Witness),
    /// The check could not run (precondition not met).
    NotApplicable(&'static str),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Fail(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Finding {
    pub condition: Condition,
    pub verdict: Verdict,
}

/// Falsifier output: one finding per condition, each carrying the first
/// witness found in sample order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CheckReport {
    findings: Vec<Finding>,
}

impl CheckReport {
    pub(crate) fn push(&mut self, condition: Condition, verdict: Verdict) {
        self.findings.push(Finding { condition, verdict });
    }

    pub(crate) fn record(&mut self, condition: Condition, witness: Option<Witness>) {
        self.push(condition, witness.map_or(Verdict::Pass, Verdict::Fail));
    }

    pub fn findings(&self) -> &[Finding] {
        &self.findings
    }

    /// Every condition ran and found no violation.
    pub fn passed(&self) -> bool {
        !self.findings.is_empty() && self.findings.iter().all(|f| f.verdict.is_pass())
    }

    /// At least one condition has a witness.
    pub fn refuted(&self) -> bool {
        self.findings.iter().any(|f| f.verdict.witness().is_some())
    }

    pub fn verdict(&self, condition: Condition) -> Option<&Verdict> {
        self.findings
            .iter()
            .find(|f| f.condition == condition)
            .map(|f| &f.verdict)
    }

    pub fn witness(&self, condition: Condition) -> Option<&Witness> {
        self.verdict(condition).and_then(Verdict::witness)
    }
}
