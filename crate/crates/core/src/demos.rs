//! The two embedded four-point worked examples.
//!
//! Both share the points `1..4`, the map `1, 2, 3 -> 3`, `4 -> 1` and the
//! functions `theta(x) = x + 1`, `F(x, y) = x / y` with `c = 1`. They differ in
//! `d(1, 4)` and the coefficient: example A uses `d(1, 4) = 4` with
//! `s = sqrt(3)` and `J(x, y) = y / (sqrt(3) x)`; example B uses `d(1, 4) = 15`
//! with `s = 3` and `J(x, y) = y / (3x)`.

use alloc::vec::Vec;

use crate::functions::FunctionSuite;
use crate::map::SelfMap;
use crate::space::{DistanceMatrix, FiniteBMetricSpace};

pub const LABELS: [&str; 4] = ["1", "2", "3", "4"];

/// `sqrt(3)` rounded to the nearest double.
pub fn sqrt3() -> f64 {
    libm::sqrt(3.0)
}

fn table(d14: f64) -> DistanceMatrix {
    DistanceMatrix::from_rows(&[
        [0.0, 3.0, 1.0, d14],
        [3.0, 0.0, 1.0, 4.0],
        [1.0, 1.0, 0.0, 4.0],
        [d14, 4.0, 4.0, 0.0],
    ])
    .expect("square finite table")
}

pub fn example_a_table() -> (Vec<&'static str>, DistanceMatrix) {
    (LABELS.to_vec(), table(4.0))
}

pub fn example_b_table() -> (Vec<&'static str>, DistanceMatrix) {
    (LABELS.to_vec(), table(15.0))
}

pub fn example_a_space() -> FiniteBMetricSpace {
    FiniteBMetricSpace::new(LABELS, table(4.0), sqrt3()).expect("example A is a b-metric space")
}

pub fn example_b_space() -> FiniteBMetricSpace {
    FiniteBMetricSpace::new(LABELS, table(15.0), 3.0).expect("example B is a b-metric space")
}

/// `1, 2, 3 -> 3` and `4 -> 1`.
pub fn example_map(space: &FiniteBMetricSpace) -> SelfMap {
    SelfMap::from_pairs(space, [("1", "3"), ("2", "3"), ("3", "3"), ("4", "1")])
        .expect("map over the example labels")
}

pub fn example_a_suite() -> FunctionSuite {
    FunctionSuite::affine_ratio(sqrt3()).expect("k = sqrt(3) is positive")
}

pub fn example_b_suite() -> FunctionSuite {
    FunctionSuite::affine_ratio(3.0).expect("k = 3 is positive")
}
