//! Comparison operators `F_c: [1, inf)^2 -> R` with constant `c >= 1`.

use alloc::vec;

use super::grid::{refine_jump, Axis};
use super::report::{CheckReport, Condition, Witness};
use super::DomainError;
use crate::tol::Tolerance;

/// Anything usable as an `F_c` operator. Evaluation is unchecked.
pub trait Comparison {
    fn constant(&self) -> f64;
    fn apply(&self, x: f64, y: f64) -> f64;
}

/// Built-in operator families.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FcOperator {
    /// `x / y`.
    Ratio { c: f64 },
}

impl FcOperator {
    pub fn ratio(c: f64) -> Result<Self, DomainError> {
        if c.is_finite() && c >= 1.0 {
            Ok(FcOperator::Ratio { c })
        } else {
            Err(DomainError::InvalidParameter {
                name: "c",
                value: c,
            })
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FcOperator::Ratio { .. } => "ratio",
        }
    }

    /// Checked evaluation on `[1, inf)^2`.
    pub fn eval(&self, x: f64, y: f64) -> Result<f64, DomainError> {
        check_unit_ray(x, y)?;
        Ok(self.apply(x, y))
    }
}

impl Comparison for FcOperator {
    fn constant(&self) -> f64 {
        match *self {
            FcOperator::Ratio { c } => c,
        }
    }

    fn apply(&self, x: f64, y: f64) -> f64 {
        match self {
            FcOperator::Ratio { .. } => x / y,
        }
    }
}

/// An arbitrary closure paired with its constant, for probing the checkers.
#[derive(Clone, Copy, Debug)]
pub struct CustomOperator<F> {
    pub f: F,
    pub c: f64,
}

impl<F: Fn(f64, f64) -> f64> Comparison for CustomOperator<F> {
    fn constant(&self) -> f64 {
        self.c
    }

    fn apply(&self, x: f64, y: f64) -> f64 {
        (self.f)(x, y)
    }
}

pub(crate) fn check_unit_ray(x: f64, y: f64) -> Result<(), DomainError> {
    if x >= 1.0 && y >= 1.0 && x.is_finite() && y.is_finite() {
        Ok(())
    } else {
        Err(DomainError::OutsideUnitRay { x, y })
    }
}

/// Sampled falsifier for the four operator properties on `axis x axis`.
///
/// Samples below 1 are dropped. Pairs are visited with `x` as the outer
/// index, so each witness is the first failing pair in that order.
/// Continuity refines every adjacent segment along both coordinates.
pub fn check_fc_properties(op: &impl Comparison, axis: &Axis, tol: Tolerance) -> CheckReport {
    let xs: alloc::vec::Vec<f64> = axis
        .samples()
        .iter()
        .copied()
        .filter(|&v| v >= 1.0)
        .collect();
    let c = op.constant();
    let mut report = CheckReport::default();
    let pairs = || xs.iter().flat_map(|&x| xs.iter().map(move |&y| (x, y)));

    let mut continuity = pairs()
        .find(|&(x, y)| !op.apply(x, y).is_finite())
        .map(|(x, y)| Witness {
            args: vec![x, y],
            observed: op.apply(x, y),
            bound: f64::INFINITY,
        });
    if continuity.is_none() {
        'outer: for &fixed in &xs {
            for w in xs.windows(2) {
                let along_x = refine_jump(|t| op.apply(t, fixed), w[0], w[1]);
                let along_y = refine_jump(|t| op.apply(fixed, t), w[0], w[1]);
                for (jump, horizontal) in [(along_x, true), (along_y, false)] {
                    if jump.is_discontinuity(tol) {
                        let args = if horizontal {
                            vec![jump.lo, jump.hi, fixed]
                        } else {
                            vec![fixed, jump.lo, jump.hi]
                        };
                        continuity = Some(Witness {
                            args,
                            observed: jump.gap,
                            bound: tol.relative() * jump.scale,
                        });
                        break 'outer;
                    }
                }
            }
        }
    }
    report.record(Condition::FcContinuous, continuity);

    let bounded = pairs().find_map(|(x, y)| {
        let v = op.apply(x, y);
        tol.exceeds(v, x).then(|| Witness {
            args: vec![x, y],
            observed: v,
            bound: x,
        })
    });
    report.record(Condition::FcBoundedByFirst, bounded);

    let equality = pairs().find_map(|(x, y)| {
        let v = op.apply(x, y);
        let at_one = tol.close(x, 1.0) || tol.close(y, 1.0);
        (tol.close(v, x) && !at_one).then(|| Witness {
            args: vec![x, y],
            observed: v,
            bound: x,
        })
    });
    report.record(Condition::FcEqualityAtOne, equality);

    let order = pairs().find_map(|(x, y)| {
        let v = op.apply(x, y);
        (tol.exceeds(v, c) && !(x > y)).then(|| Witness {
            args: vec![x, y],
            observed: v,
            bound: c,
        })
    });
    report.record(Condition::FcExceedsImpliesOrder, order);

    let diagonal = xs.iter().find_map(|&x| {
        let v = op.apply(x, x);
        tol.exceeds(v, c).then(|| Witness {
            args: vec![x, x],
            observed: v,
            bound: c,
        })
    });
    report.record(Condition::FcDiagonal, diagonal);

    report
}
