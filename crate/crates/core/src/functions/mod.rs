//! Auxiliary function classes: theta maps, `F_c` comparison operators and
//! simulation functions.
//!
//! Each class has a closed set of built-in families with checked evaluators,
//! a trait that closures also implement, and a sampled falsifier. A passing
//! falsifier only means no counterexample was found on the samples; proofs
//! of membership exist only for the built-ins (see
//! [`scaled_ratio_membership`]).

mod grid;
mod operator;
mod report;
mod simulation;
mod theta;

use core::fmt;

pub use grid::{
    default_axis, default_theta_axis, Axis, GridError, DEFAULT_SAMPLES, DEFAULT_THETA_UPPER,
    DEFAULT_UPPER, LADDER_DEPTH, MIN_THETA_SAMPLES, REFINEMENT_FACTOR, REFINEMENT_LEVELS,
};
pub use operator::{check_fc_properties, Comparison, CustomOperator, FcOperator};
pub use report::{CheckReport, Condition, Finding, Verdict, Witness};
pub use simulation::{
    check_j_property_i, check_j_property_ii, scaled_ratio_membership, Membership, ProbeError,
    ProbeReport, SequencePairProbe, Simulation, SimulationFunction,
};
pub use theta::{check_theta_membership, estimate_power_limit, PowerLimit, Theta, ThetaFunction};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DomainError {
    /// theta is defined on `(0, inf)` only.
    NonPositive(f64),
    /// theta(x) is not representable.
    Overflow(f64),
    /// Two-argument functions are defined on `[1, inf)^2` only.
    OutsideUnitRay {
        x: f64,
        y: f64,
    },
    InvalidParameter {
        name: &'static str,
        value: f64,
    },
}

impl fmt::Display for DomainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainError::NonPositive(x) => write!(f, "theta argument {x} is not positive"),
            DomainError::Overflow(x) => write!(f, "theta({x}) overflows"),
            DomainError::OutsideUnitRay { x, y } => {
                write!(f, "arguments ({x}, {y}) are outside [1, inf)^2")
            }
            DomainError::InvalidParameter { name, value } => {
                write!(f, "invalid parameter {name} = {value}")
            }
        }
    }
}

impl core::error::Error for DomainError {}

/// A theta map, an `F_c` operator and a simulation function, certified together.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FunctionSuite {
    pub theta: ThetaFunction,
    pub fc: FcOperator,
    pub j: SimulationFunction,
}

impl FunctionSuite {
    pub fn new(theta: ThetaFunction, fc: FcOperator, j: SimulationFunction) -> Self {
        FunctionSuite { theta, fc, j }
    }

    /// `x + 1`, `x / y` with `c = 1`, `y / (k x)`.
    pub fn affine_ratio(k: f64) -> Result<Self, DomainError> {
        Ok(FunctionSuite {
            theta: ThetaFunction::AffinePlusOne,
            fc: FcOperator::ratio(1.0)?,
            j: SimulationFunction::scaled_ratio(k)?,
        })
    }

    /// The operator constant `c`.
    pub fn c(&self) -> f64 {
        self.fc.constant()
    }

    /// `J(theta(image), theta(argument))`, checked.
    pub fn contraction_value(&self, image: f64, argument: f64) -> Result<f64, DomainError> {
        let x = self.theta.eval(image)?;
        let y = self.theta.eval(argument)?;
        self.j.eval(x, y)
    }
}
