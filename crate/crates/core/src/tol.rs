//! Floating-point comparison policy shared by every checker.

use core::fmt;

/// Default relative tolerance.
pub const DEFAULT_RELATIVE: f64 = 1e-9;
/// Absolute floor used when both operands are near zero.
pub const ABSOLUTE_FLOOR: f64 = 1e-12;

/// Relative tolerance with an absolute floor near zero.
///
/// The same value doubles as the absolute margin slack for contraction
/// certificates: a pair fails only when `j_value < c - relative`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    relative: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InvalidTolerance(pub f64);

impl fmt::Display for InvalidTolerance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tolerance must be finite and > 0, got {}", self.0)
    }
}

impl core::error::Error for InvalidTolerance {}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            relative: DEFAULT_RELATIVE,
        }
    }
}

impl Tolerance {
    pub fn new(relative: f64) -> Result<Self, InvalidTolerance> {
        if relative.is_finite() && relative > 0.0 {
            Ok(Tolerance { relative })
        } else {
            Err(InvalidTolerance(relative))
        }
    }

    pub fn relative(&self) -> f64 {
        self.relative
    }

    /// `lhs > rhs` by more than the tolerance allows.
    pub fn exceeds(&self, lhs: f64, rhs: f64) -> bool {
        let diff = lhs - rhs;
        diff > ABSOLUTE_FLOOR && diff > self.relative * lhs.abs().max(rhs.abs())
    }

    /// `lhs <= rhs` up to tolerance.
    pub fn at_most(&self, lhs: f64, rhs: f64) -> bool {
        !self.exceeds(lhs, rhs)
    }

    pub fn close(&self, a: f64, b: f64) -> bool {
        !self.exceeds(a, b) && !self.exceeds(b, a)
    }
}
