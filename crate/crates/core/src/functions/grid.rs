//! Sample axes for the sampled property checkers and the jump detector used
//! for continuity.

use alloc::vec::Vec;
use core::fmt;

use crate::tol::{Tolerance, ABSOLUTE_FLOOR};

/// Samples per axis on the default grid.
pub const DEFAULT_SAMPLES: usize = 64;
/// Upper end of the default two-argument grid, `(1, 10^3]`.
pub const DEFAULT_UPPER: f64 = 1e3;
/// Upper end of the default theta grid, `(1, 10^2]`.
pub const DEFAULT_THETA_UPPER: f64 = 1e2;
/// Depth of the dyadic ladder `2^-1, ..., 2^-40`.
pub const LADDER_DEPTH: u32 = 40;
/// Each refinement level splits an interval into this many pieces.
pub const REFINEMENT_FACTOR: usize = 4;
pub const REFINEMENT_LEVELS: usize = 24;
/// Smallest axis the theta checker accepts.
pub const MIN_THETA_SAMPLES: usize = 16;

/// Sorted, duplicate-free, finite samples.
#[derive(Clone, Debug, PartialEq)]
pub struct Axis {
    samples: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GridError {
    Empty,
    NonFinite(f64),
    InvalidRange { lo: f64, hi: f64 },
}

impl fmt::Display for GridError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridError::Empty => write!(f, "sample grid is empty"),
            GridError::NonFinite(v) => write!(f, "sample {v} is not finite"),
            GridError::InvalidRange { lo, hi } => write!(f, "invalid sample range [{lo}, {hi}]"),
        }
    }
}

impl core::error::Error for GridError {}

impl Axis {
    /// Sorts and deduplicates the samples.
    pub fn new(samples: impl IntoIterator<Item = f64>) -> Result<Self, GridError> {
        let mut samples: Vec<f64> = samples.into_iter().collect();
        if samples.is_empty() {
            return Err(GridError::Empty);
        }
        if let Some(&bad) = samples.iter().find(|v| !v.is_finite()) {
            return Err(GridError::NonFinite(bad));
        }
        samples.sort_by(f64::total_cmp);
        samples.dedup();
        Ok(Axis { samples })
    }

    /// `n` points `lo * (hi/lo)^(i/n)` for `i = 1..=n`; `lo` itself is excluded
    /// and the last point is exactly `hi`.
    pub fn log_spaced(lo: f64, hi: f64, n: usize) -> Result<Self, GridError> {
        if !(lo > 0.0 && hi > lo && lo.is_finite() && hi.is_finite()) {
            return Err(GridError::InvalidRange { lo, hi });
        }
        let ratio = hi / lo;
        let samples = (1..=n).map(|i| {
            if i == n {
                hi
            } else {
                lo * libm::pow(ratio, i as f64 / n as f64)
            }
        });
        Self::new(samples)
    }

    /// `lo, lo + step, ...` up to and including `hi` when it lands on the lattice.
    pub fn linear(lo: f64, hi: f64, step: f64) -> Result<Self, GridError> {
        if !(step > 0.0 && hi >= lo && lo.is_finite() && hi.is_finite()) {
            return Err(GridError::InvalidRange { lo, hi });
        }
        let count = libm::floor((hi - lo) / step + 1e-9) as usize;
        Self::new((0..=count).map(|i| lo + step * i as f64))
    }

    /// `2^-1, 2^-2, ..., 2^-depth`, ascending.
    pub fn dyadic_ladder(depth: u32) -> Self {
        Self::new(ladder(depth)).expect("nonempty ladder")
    }

    /// Merges two axes.
    pub fn union(&self, other: &Axis) -> Axis {
        Self::new(self.samples.iter().chain(other.samples.iter()).copied())
            .expect("union of nonempty axes")
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// 64 log-spaced points on `(1, 10^3]`.
pub fn default_axis() -> Axis {
    Axis::log_spaced(1.0, DEFAULT_UPPER, DEFAULT_SAMPLES).expect("valid default range")
}

/// The dyadic ladder joined with 64 log-spaced points on `(1, 10^2]`.
pub fn default_theta_axis() -> Axis {
    Axis::dyadic_ladder(LADDER_DEPTH).union(
        &Axis::log_spaced(1.0, DEFAULT_THETA_UPPER, DEFAULT_SAMPLES).expect("valid default range"),
    )
}

/// `2^-1, ..., 2^-depth`, in descending order of magnitude.
pub(crate) fn ladder(depth: u32) -> impl Iterator<Item = f64> {
    (1..=depth).map(|m| libm::ldexp(1.0, -(m as i32)))
}

/// Residual jump of `f` on `[lo, hi]` after repeated refinement.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Jump {
    pub lo: f64,
    pub hi: f64,
    pub gap: f64,
    pub scale: f64,
}

impl Jump {
    /// A continuous function leaves a gap that shrinks with the interval; a
    /// discontinuity leaves one that does not.
    pub fn is_discontinuity(&self, tol: Tolerance) -> bool {
        !self.gap.is_finite() || self.gap > ABSOLUTE_FLOOR + tol.relative() * self.scale
    }
}

/// Intervals kept per refinement level. At least one full split, so a jump
/// whose gap ties with the neighbouring pieces survives the first round.
const BEAM_WIDTH: usize = 2 * REFINEMENT_FACTOR;

/// Refines `[lo, hi]` through [`REFINEMENT_LEVELS`] rounds of
/// [`REFINEMENT_FACTOR`]-way splitting, keeping the [`BEAM_WIDTH`] pieces
/// with the largest value change at each round, and returns the largest
/// surviving gap.
pub(crate) fn refine_jump(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> Jump {
    let mut beam: Vec<(f64, f64, f64, f64)> = alloc::vec![(lo, hi, f(lo), f(hi))];
    for _ in 0..REFINEMENT_LEVELS {
        let mut pieces: Vec<(f64, f64, f64, f64)> =
            Vec::with_capacity(beam.len() * REFINEMENT_FACTOR);
        for &(lo, hi, f_lo, f_hi) in &beam {
            let width = (hi - lo) / REFINEMENT_FACTOR as f64;
            let mut prev = (lo, f_lo);
            for piece in 1..=REFINEMENT_FACTOR {
                let (x, fx) = if piece == REFINEMENT_FACTOR {
                    (hi, f_hi)
                } else {
                    let x = lo + width * piece as f64;
                    (x, f(x))
                };
                if prev.0 < x {
                    pieces.push((prev.0, x, prev.1, fx));
                }
                prev = (x, fx);
            }
        }
        if pieces.is_empty() {
            break;
        }
        pieces.sort_by(|a, b| gap_of(b).total_cmp(&gap_of(a)).then(a.0.total_cmp(&b.0)));
        pieces.truncate(BEAM_WIDTH);
        beam = pieces;
    }
    let &(lo, hi, f_lo, f_hi) = beam
        .iter()
        .max_by(|a, b| gap_of(a).total_cmp(&gap_of(b)))
        .expect("beam is never empty");
    Jump {
        lo,
        hi,
        gap: gap_of(&(lo, hi, f_lo, f_hi)),
        scale: f_lo.abs().max(f_hi.abs()).max(1.0),
    }
}

fn gap_of(piece: &(f64, f64, f64, f64)) -> f64 {
    let gap = (piece.3 - piece.2).abs();
    // NaN sorts as the largest gap so non-finite values surface
    if gap.is_nan() {
        f64::INFINITY
    } else {
        gap
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_spacing_excludes_lower_end() {
        let axis = default_axis();
        assert_eq!(axis.len(), 64);
        assert!(axis.samples()[0] > 1.0);
        assert_eq!(*axis.samples().last().unwrap(), 1e3);
        assert!(axis.samples().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn theta_axis_contains_ladder() {
        let axis = default_theta_axis();
        assert_eq!(axis.len(), 40 + 64);
        assert_eq!(axis.samples()[0], libm::ldexp(1.0, -40));
        assert_eq!(axis.samples()[39], 0.5);
    }

    #[test]
    fn linear_axis_hits_endpoint() {
        let axis = Axis::linear(1.0, 10.0, 0.25).unwrap();
        assert_eq!(axis.len(), 37);
        assert_eq!(*axis.samples().last().unwrap(), 10.0);
    }

    #[test]
    fn jump_detection() {
        let tol = Tolerance::default();
        let step = |x: f64| if x < 1.0 { 1.0 + x } else { 5.0 + x };
        assert!(refine_jump(step, 0.5, 2.0).is_discontinuity(tol));
        assert!(!refine_jump(|x| x + 1.0, 0.5, 2.0).is_discontinuity(tol));
        assert!(!refine_jump(libm::exp, 50.0, 100.0).is_discontinuity(tol));
    }

    #[test]
    fn jump_hidden_by_tied_gaps() {
        // equal gaps on the first and last quarter at the first level
        let f = |x: f64| if x < 3.0 { x } else { x - 0.5 };
        let jump = refine_jump(f, 2.0, 3.0);
        assert!(jump.is_discontinuity(Tolerance::default()));
        assert!((jump.gap - 0.5).abs() < 1e-6);
    }

    #[test]
    fn rejects_bad_samples() {
        assert_eq!(Axis::new([]), Err(GridError::Empty));
        assert_eq!(
            Axis::new([1.0, f64::INFINITY]),
            Err(GridError::NonFinite(f64::INFINITY))
        );
        assert!(Axis::log_spaced(0.0, 1.0, 4).is_err());
    }
}
