//! Auxiliary functions `theta: (0, inf) -> (1, inf)`.

use alloc::vec;
use alloc::vec::Vec;

use super::grid::{ladder, refine_jump, Axis, LADDER_DEPTH, MIN_THETA_SAMPLES};
use super::report::{CheckReport, Condition, Verdict, Witness};
use super::DomainError;
use crate::tol::Tolerance;

/// Anything usable as a theta function. Evaluation is unchecked.
pub trait Theta {
    fn apply(&self, x: f64) -> f64;
}

impl<F: Fn(f64) -> f64> Theta for F {
    fn apply(&self, x: f64) -> f64 {
        self(x)
    }
}

/// Built-in theta families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ThetaFunction {
    /// `x + 1`
    AffinePlusOne,
    /// `e^x`
    Exponential,
}

impl ThetaFunction {
    pub fn name(&self) -> &'static str {
        match self {
            ThetaFunction::AffinePlusOne => "affine_plus_one",
            ThetaFunction::Exponential => "exponential",
        }
    }

    /// Checked evaluation on `(0, inf)`.
    pub fn eval(&self, x: f64) -> Result<f64, DomainError> {
        if !(x > 0.0) || !x.is_finite() {
            return Err(DomainError::NonPositive(x));
        }
        let v = self.apply(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(DomainError::Overflow(x))
        }
    }

    /// Closed form of `lim (theta(x) - 1) / x^t` at `0+` for the built-ins.
    ///
    /// Both families have the limit `d = 1` only at `t = 1`; for every
    /// `t` in `(0, 1)` the quotient tends to 0, so neither satisfies the
    /// power-limit condition. Membership in the continuous family does not
    /// need it.
    pub fn power_limit(&self) -> PowerLimit {
        PowerLimit {
            exponent: 1.0,
            limit: 1.0,
            within_unit_interval: false,
        }
    }
}

impl Theta for ThetaFunction {
    fn apply(&self, x: f64) -> f64 {
        match self {
            ThetaFunction::AffinePlusOne => x + 1.0,
            ThetaFunction::Exponential => libm::exp(x),
        }
    }
}

/// Power-limit diagnostic: `(theta(x) - 1) / x^exponent -> limit`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PowerLimit {
    pub exponent: f64,
    pub limit: f64,
    /// Whether `exponent` lies in the open interval `(0, 1)`.
    pub within_unit_interval: bool,
}

/// `(theta(x) - 1) / x^exponent` at the bottom of the dyadic ladder.
pub fn estimate_power_limit(theta: &impl Theta, exponent: f64) -> f64 {
    let x = libm::ldexp(1.0, -(LADDER_DEPTH as i32));
    (theta.apply(x) - 1.0) / libm::pow(x, exponent)
}

/// Sampled falsifier for the increasing / limit-at-zero / continuity
/// conditions plus the codomain.
///
/// * codomain and monotonicity are checked on every sample and every adjacent
///   pair of `axis` (nonpositive samples are dropped);
/// * the limit at `0+` is checked on the ladder `2^-m`, `m = 1..=40`: values
///   must not increase along the ladder and their Aitken extrapolation must
///   be 1 within tolerance;
/// * continuity refines every adjacent pair of samples and flags a gap that
///   survives refinement.
///
/// The reverse direction of the limit condition follows from the codomain
/// and monotonicity checks, since an increasing map into `(1, inf)` stays
/// above `theta(delta) > 1` on `[delta, inf)`.
///
/// Axes with fewer than 16 positive samples leave the axis-based conditions
/// not applicable.
pub fn check_theta_membership(theta: &impl Theta, axis: &Axis, tol: Tolerance) -> CheckReport {
    let samples: Vec<f64> = axis
        .samples()
        .iter()
        .copied()
        .filter(|&x| x > 0.0)
        .collect();
    let values: Vec<f64> = samples.iter().map(|&x| theta.apply(x)).collect();
    let mut report = CheckReport::default();

    if samples.len() < MIN_THETA_SAMPLES {
        const TOO_COARSE: &str = "grid has fewer than 16 positive samples";
        report.push(Condition::ThetaCodomain, Verdict::NotApplicable(TOO_COARSE));
        report.push(
            Condition::ThetaIncreasing,
            Verdict::NotApplicable(TOO_COARSE),
        );
        report.record(Condition::ThetaLimitAtZero, limit_at_zero(theta, tol));
        report.push(
            Condition::ThetaContinuous,
            Verdict::NotApplicable(TOO_COARSE),
        );
        return report;
    }

    let codomain = samples
        .iter()
        .zip(&values)
        .find(|(_, &v)| !(v.is_finite() && v > 1.0))
        .map(|(&x, &v)| Witness {
            args: vec![x],
            observed: v,
            bound: 1.0,
        });
    report.record(Condition::ThetaCodomain, codomain);

    let increasing = (1..samples.len())
        .find(|&i| !(values[i] > values[i - 1]))
        .map(|i| Witness {
            args: vec![samples[i - 1], samples[i]],
            observed: values[i],
            bound: values[i - 1],
        });
    report.record(Condition::ThetaIncreasing, increasing);

    report.record(Condition::ThetaLimitAtZero, limit_at_zero(theta, tol));

    let continuity = samples.windows(2).find_map(|w| {
        let jump = refine_jump(|x| theta.apply(x), w[0], w[1]);
        jump.is_discontinuity(tol).then(|| Witness {
            args: vec![jump.lo, jump.hi],
            observed: jump.gap,
            bound: tol.relative() * jump.scale,
        })
    });
    report.record(Condition::ThetaContinuous, continuity);

    report
}

fn limit_at_zero(theta: &impl Theta, tol: Tolerance) -> Option<Witness> {
    let xs: Vec<f64> = ladder(LADDER_DEPTH).collect();
    let vs: Vec<f64> = xs.iter().map(|&x| theta.apply(x)).collect();
    for m in 1..vs.len() {
        if !tol.at_most(vs[m], vs[m - 1]) {
            return Some(Witness {
                args: vec![xs[m - 1], xs[m]],
                observed: vs[m],
                bound: vs[m - 1],
            });
        }
    }
    let n = vs.len();
    let limit = aitken(vs[n - 3], vs[n - 2], vs[n - 1]);
    if limit.is_finite() && tol.close(limit, 1.0) {
        None
    } else {
        Some(Witness {
            args: vec![xs[n - 1]],
            observed: limit,
            bound: 1.0,
        })
    }
}

/// Aitken delta-squared extrapolation; falls back to the last term when the
/// second difference vanishes.
fn aitken(x0: f64, x1: f64, x2: f64) -> f64 {
    let d1 = x1 - x0;
    let d2 = x2 - x1;
    let dd = d2 - d1;
    if dd == 0.0 {
        x2
    } else {
        x2 - d2 * d2 / dd
    }
}

#[cfg(test)]
mod tests {
    use super::super::grid::default_theta_axis;
    use super::*;

    fn sample_axis() -> Axis {
        Axis::dyadic_ladder(40).union(&Axis::linear(1.0, 10.0, 1.0).unwrap())
    }

    #[test]
    fn eval_values() {
        assert_eq!(ThetaFunction::AffinePlusOne.eval(4.0), Ok(5.0));
        let e = ThetaFunction::Exponential.eval(0.001).unwrap();
        // 1 + x + x^2/2 + x^3/6 + x^4/24
        let series =
            1.0 + 0.001 + 0.001f64.powi(2) / 2.0 + 0.001f64.powi(3) / 6.0 + 0.001f64.powi(4) / 24.0;
        assert!((e - series).abs() < 1e-15);
        assert!((e - 1.0010005).abs() < 1e-9);
        assert_eq!(
            ThetaFunction::AffinePlusOne.eval(0.0),
            Err(DomainError::NonPositive(0.0))
        );
        assert_eq!(
            ThetaFunction::Exponential.eval(-1.0),
            Err(DomainError::NonPositive(-1.0))
        );
        assert_eq!(
            ThetaFunction::Exponential.eval(800.0),
            Err(DomainError::Overflow(800.0))
        );
    }

    #[test]
    fn affine_inverse_identity() {
        for x in [0.25, 1.0, 7.5, 1e4] {
            assert_eq!(ThetaFunction::AffinePlusOne.eval(x).unwrap() - 1.0, x);
        }
    }

    #[test]
    fn builtins_pass() {
        let tol = Tolerance::default();
        let report = check_theta_membership(&ThetaFunction::AffinePlusOne, &sample_axis(), tol);
        assert!(report.passed(), "{report:?}");
        for theta in [ThetaFunction::AffinePlusOne, ThetaFunction::Exponential] {
            let report = check_theta_membership(&theta, &default_theta_axis(), tol);
            assert!(report.passed(), "{theta:?}: {report:?}");
        }
    }

    #[test]
    fn slow_power_law_passes_limit() {
        let report = check_theta_membership(
            &|x: f64| 1.0 + libm::pow(x, 0.1),
            &sample_axis(),
            Tolerance::default(),
        );
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn constant_fails_limit() {
        let report = check_theta_membership(&|_x: f64| 2.0, &sample_axis(), Tolerance::default());
        let w = report
            .witness(Condition::ThetaLimitAtZero)
            .expect("limit witness");
        assert_eq!(w.observed, 2.0);
        assert!(report.witness(Condition::ThetaIncreasing).is_some());
    }

    #[test]
    fn offset_limit_fails() {
        let report =
            check_theta_membership(&|x: f64| 1.5 + x, &sample_axis(), Tolerance::default());
        let w = report
            .witness(Condition::ThetaLimitAtZero)
            .expect("limit witness");
        assert!((w.observed - 1.5).abs() < 1e-9);
        assert!(report
            .verdict(Condition::ThetaIncreasing)
            .unwrap()
            .is_pass());
    }

    #[test]
    fn step_fails_continuity() {
        let step = |x: f64| if x < 1.0 { 1.0 + x } else { 5.0 + x };
        let report = check_theta_membership(&step, &sample_axis(), Tolerance::default());
        let w = report
            .witness(Condition::ThetaContinuous)
            .expect("jump witness");
        assert!(w.args[0] < 1.0 && w.args[1] >= 1.0);
        assert!((w.observed - 4.0).abs() < 1e-6);
        assert!(report
            .verdict(Condition::ThetaIncreasing)
            .unwrap()
            .is_pass());
    }

    #[test]
    fn coarse_axis_not_applicable() {
        let axis = Axis::linear(1.0, 4.0, 1.0).unwrap();
        let report =
            check_theta_membership(&ThetaFunction::AffinePlusOne, &axis, Tolerance::default());
        assert!(!report.passed());
        assert!(!report.refuted());
    }

    #[test]
    fn power_limit_diagnostic() {
        for theta in [ThetaFunction::AffinePlusOne, ThetaFunction::Exponential] {
            let p = theta.power_limit();
            assert_eq!(
                (p.exponent, p.limit, p.within_unit_interval),
                (1.0, 1.0, false)
            );
            assert!((estimate_power_limit(&theta, 1.0) - 1.0).abs() < 1e-6);
            assert!(estimate_power_limit(&theta, 0.5) < 1e-5);
        }
        assert!((estimate_power_limit(&|x: f64| 1.0 + libm::sqrt(x), 0.5) - 1.0).abs() < 1e-12);
    }
}
