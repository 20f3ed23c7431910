//! Verification toolkit and fixed-point engine for finite b-metric spaces.
//!
//! * [`space`]: distance tables, the three b-metric axioms and the least
//!   admissible coefficient.
//! * [`functions`]: theta maps, `F_c` operators and simulation functions with
//!   sampled falsifiers and a closed-form membership rule.
//! * [`certify`]: exhaustive per-pair certificates for the basic contraction
//!   condition and the generalized `M_s` condition.
//! * [`iterate`]: Picard orbits, brute-force fixed points, and the uniqueness
//!   consequence of a certified contraction.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod certify;
pub mod demos;
pub mod functions;
pub mod iterate;
pub mod map;
pub mod space;
pub mod tol;

pub use certify::{
    certify, certify_basic, certify_generalized, compute_ms, CertifyError, ContractionCertificate,
    ContractionCondition, PairRecord,
};
pub use functions::{FcOperator, FunctionSuite, SimulationFunction, ThetaFunction};
pub use iterate::{
    check_b_continuity, check_theorem_consequence, enumerate_fixed_points, picard_iterate,
    Consequence, FixedPointReport, Outcome, Trajectory,
};
pub use map::{MapError, SelfMap};
pub use space::{
    minimal_coefficient, validate_axioms, Axiom, CoefficientBound, DistanceMatrix,
    FiniteBMetricSpace, SpaceError, ValidationReport, Violation,
};
pub use tol::Tolerance;
