//! Exhaustive contraction certificates over all ordered pairs of a finite space.
//!
//! For a suite `(theta, F_c, J)` and a self-map `S`, a pair `(x, y)` qualifies
//! when `d(Sx, Sy) > 0`, and must then satisfy
//!
//! ```text
//! J(theta(d(Sx, Sy)), theta(arg(x, y))) >= c
//! ```
//!
//! with `arg = d(x, y)` for the basic condition and `arg = M_s(x, y)` for the
//! generalized one, where
//!
//! ```text
//! M_s(x, y) = max{ d(x, y), d(x, Sx), d(y, Sy), (d(Sx, y) + d(x, Sy)) / 2s }
//! ```
//!
//! uses the declared coefficient `s` of the space.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::functions::{DomainError, FunctionSuite};
use crate::map::SelfMap;
use crate::space::{FiniteBMetricSpace, SpaceError};
use crate::tol::Tolerance;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ContractionCondition {
    /// Argument distance `d(x, y)`.
    Basic,
    /// Argument distance `M_s(x, y)`.
    Generalized,
}

impl ContractionCondition {
    pub fn name(&self) -> &'static str {
        match self {
            ContractionCondition::Basic => "basic",
            ContractionCondition::Generalized => "generalized",
        }
    }
}

impl fmt::Display for ContractionCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Evaluation of one qualifying ordered pair.
#[derive(Clone, Debug, PartialEq)]
pub struct PairRecord {
    pub x: String,
    pub y: String,
    pub x_index: usize,
    pub y_index: usize,
    /// `d(Sx, Sy)`, always positive.
    pub image_distance: f64,
    /// `d(x, y)` or `M_s(x, y)`.
    pub argument_distance: f64,
    /// `J(theta(image_distance), theta(argument_distance))`.
    pub j_value: f64,
    /// `j_value - c`.
    pub margin: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContractionCertificate {
    condition: ContractionCondition,
    c: f64,
    tolerance: Tolerance,
    map_images: Vec<usize>,
    records: Vec<PairRecord>,
    witnesses: Vec<PairRecord>,
}

impl ContractionCertificate {
    pub fn condition(&self) -> ContractionCondition {
        self.condition
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn tolerance(&self) -> Tolerance {
        self.tolerance
    }

    /// No qualifying pair has `margin < -tol`.
    pub fn certified(&self) -> bool {
        self.witnesses.is_empty()
    }

    /// All qualifying pairs, in `(x_index, y_index)` order.
    pub fn records(&self) -> &[PairRecord] {
        &self.records
    }

    /// Qualifying pairs with `margin < -tol`, in `(x_index, y_index)` order.
    pub fn witnesses(&self) -> &[PairRecord] {
        &self.witnesses
    }

    /// `None` when no pair qualifies (vacuous certificate).
    pub fn min_margin(&self) -> Option<f64> {
        self.records.iter().map(|r| r.margin).reduce(f64::min)
    }

    pub fn min_j_value(&self) -> Option<f64> {
        self.records.iter().map(|r| r.j_value).reduce(f64::min)
    }

    /// Whether the certificate was produced for this map on a space of this size.
    pub fn matches(&self, space: &FiniteBMetricSpace, map: &SelfMap) -> bool {
        space.len() == self.map_images.len() && map.images() == self.map_images.as_slice()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CertifyError {
    MapSizeMismatch {
        points: usize,
        map: usize,
    },
    /// `d(x, y) = 0` while `d(Sx, Sy) > 0`; impossible for a function.
    Inconsistent {
        x: String,
        y: String,
    },
    Evaluation {
        x: String,
        y: String,
        error: DomainError,
    },
    NonFinite {
        x: String,
        y: String,
    },
}

impl fmt::Display for CertifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertifyError::MapSizeMismatch { points, map } => {
                write!(f, "map has {map} entries but the space has {points} points")
            }
            CertifyError::Inconsistent { x, y } => write!(
                f,
                "internal inconsistency at ({x}, {y}): zero argument distance with positive image distance"
            ),
            CertifyError::Evaluation { x, y, error } => {
                write!(f, "cannot evaluate pair ({x}, {y}): {error}")
            }
            CertifyError::NonFinite { x, y } => write!(f, "non-finite J value at pair ({x}, {y})"),
        }
    }
}

impl core::error::Error for CertifyError {}

/// `M_s` by point index.
pub fn ms_index(space: &FiniteBMetricSpace, map: &SelfMap, x: usize, y: usize) -> f64 {
    let (sx, sy) = (map.apply(x), map.apply(y));
    let cross = (space.d(sx, y) + space.d(x, sy)) / (2.0 * space.coefficient());
    space
        .d(x, y)
        .max(space.d(x, sx))
        .max(space.d(y, sy))
        .max(cross)
}

/// `M_s(x, y)` for labelled points.
pub fn compute_ms(
    space: &FiniteBMetricSpace,
    map: &SelfMap,
    x: &str,
    y: &str,
) -> Result<f64, SpaceError> {
    Ok(ms_index(space, map, space.index_of(x)?, space.index_of(y)?))
}

pub fn certify_basic(
    space: &FiniteBMetricSpace,
    map: &SelfMap,
    suite: &FunctionSuite,
) -> Result<ContractionCertificate, CertifyError> {
    certify(
        space,
        map,
        suite,
        ContractionCondition::Basic,
        Tolerance::default(),
    )
}

pub fn certify_generalized(
    space: &FiniteBMetricSpace,
    map: &SelfMap,
    suite: &FunctionSuite,
) -> Result<ContractionCertificate, CertifyError> {
    certify(
        space,
        map,
        suite,
        ContractionCondition::Generalized,
        Tolerance::default(),
    )
}

/// Sweeps every ordered pair; pairs with `d(Sx, Sy) = 0` are skipped.
pub fn certify(
    space: &FiniteBMetricSpace,
    map: &SelfMap,
    suite: &FunctionSuite,
    condition: ContractionCondition,
    tol: Tolerance,
) -> Result<ContractionCertificate, CertifyError> {
    if map.len() != space.len() {
        return Err(CertifyError::MapSizeMismatch {
            points: space.len(),
            map: map.len(),
        });
    }
    let c = suite.c();
    let mut records = Vec::new();
    for x in 0..space.len() {
        for y in 0..space.len() {
            let image = space.d(map.apply(x), map.apply(y));
            if image <= 0.0 {
                continue;
            }
            let labels = || (String::from(space.label(x)), String::from(space.label(y)));
            let argument = match condition {
                ContractionCondition::Basic => space.d(x, y),
                ContractionCondition::Generalized => ms_index(space, map, x, y),
            };
            if argument <= 0.0 {
                let (x, y) = labels();
                return Err(CertifyError::Inconsistent { x, y });
            }
            let j_value = suite.contraction_value(image, argument).map_err(|error| {
                let (x, y) = labels();
                CertifyError::Evaluation { x, y, error }
            })?;
            if !j_value.is_finite() {
                let (x, y) = labels();
                return Err(CertifyError::NonFinite { x, y });
            }
            let (xl, yl) = labels();
            records.push(PairRecord {
                x: xl,
                y: yl,
                x_index: x,
                y_index: y,
                image_distance: image,
                argument_distance: argument,
                j_value,
                margin: j_value - c,
            });
        }
    }
    let witnesses = records
        .iter()
        .filter(|r| r.margin < -tol.relative())
        .cloned()
        .collect();
    Ok(ContractionCertificate {
        condition,
        c,
        tolerance: tol,
        map_images: map.images().to_vec(),
        records,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demos;
    use alloc::vec;

    const SQRT3: f64 = 1.7320508075688772;

    #[test]
    fn first_example_basic_certified() {
        let space = demos::example_a_space();
        let map = demos::example_map(&space);
        let cert = certify_basic(&space, &map, &demos::example_a_suite()).unwrap();
        assert!(cert.certified());
        assert_eq!(cert.records().len(), 6);
        let expected = 5.0 / (2.0 * SQRT3);
        for r in cert.records() {
            assert!((r.j_value - expected).abs() < 1e-12);
            assert_eq!((r.image_distance, r.argument_distance), (1.0, 4.0));
        }
        assert!((cert.min_margin().unwrap() - 0.443376).abs() < 1e-6);
        let pairs: Vec<_> = cert
            .records()
            .iter()
            .map(|r| (r.x.as_str(), r.y.as_str()))
            .collect();
        assert_eq!(
            pairs,
            vec![
                ("1", "4"),
                ("2", "4"),
                ("3", "4"),
                ("4", "1"),
                ("4", "2"),
                ("4", "3")
            ]
        );
    }

    #[test]
    fn second_example_basic_fails_generalized_passes() {
        let space = demos::example_b_space();
        let map = demos::example_map(&space);
        let suite = demos::example_b_suite();

        let basic = certify_basic(&space, &map, &suite).unwrap();
        assert!(!basic.certified());
        let w = &basic.witnesses()[0];
        assert_eq!((w.x.as_str(), w.y.as_str()), ("2", "4"));
        assert!((w.j_value - 5.0 / 6.0).abs() < 1e-12);
        assert!((w.margin - (5.0 / 6.0 - 1.0)).abs() < 1e-12);
        // (1,4) and (4,1) pass at 16/6; the four pairs with 2 or 3 fail.
        assert_eq!(basic.witnesses().len(), 4);

        let general = certify_generalized(&space, &map, &suite).unwrap();
        assert!(general.certified());
        assert_eq!(general.records().len(), 6);
        for r in general.records() {
            assert_eq!(r.argument_distance, 15.0);
            assert!((r.j_value - 16.0 / 6.0).abs() < 1e-12);
        }
    }

    #[test]
    fn ms_values() {
        let space = demos::example_b_space();
        let map = demos::example_map(&space);
        assert_eq!(compute_ms(&space, &map, "4", "1").unwrap(), 15.0);
        assert_eq!(compute_ms(&space, &map, "2", "4").unwrap(), 15.0);
        assert_eq!(compute_ms(&space, &map, "3", "3").unwrap(), 0.0);
        assert!(compute_ms(&space, &map, "3", "x").is_err());
        // d(2,1) = 3 dominates the cross term (d(3,1) + d(2,3)) / 6
        let i = space.index_of("2").unwrap();
        let j = space.index_of("1").unwrap();
        assert_eq!(ms_index(&space, &map, i, j), 3.0);
    }

    #[test]
    fn vacuous_and_identity() {
        let space = demos::example_a_space();
        let suite = demos::example_a_suite();
        let constant = SelfMap::constant(&space, 0).unwrap();
        for condition in [
            ContractionCondition::Basic,
            ContractionCondition::Generalized,
        ] {
            let cert = certify(&space, &constant, &suite, condition, Tolerance::default()).unwrap();
            assert!(cert.certified());
            assert!(cert.records().is_empty());
            assert_eq!(cert.min_margin(), None);
        }
        // identity: every distinct pair qualifies with J = 1/k < 1
        let identity = SelfMap::identity(&space);
        let cert = certify_basic(&space, &identity, &suite).unwrap();
        assert!(!cert.certified());
        assert_eq!(cert.records().len(), 12);
        assert_eq!(cert.witnesses().len(), 12);
    }

    #[test]
    fn boundary_margin_is_tolerated() {
        // 2-point space d = 1, constant-ish suite where J hits c exactly
        let d = crate::DistanceMatrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap();
        let space = FiniteBMetricSpace::new(["p", "q"], d, 1.0).unwrap();
        let swap = SelfMap::from_indices(&space, vec![1, 0]).unwrap();
        let suite = FunctionSuite::affine_ratio(1.0).unwrap();
        let cert = certify_basic(&space, &swap, &suite).unwrap();
        assert_eq!(cert.min_margin(), Some(0.0));
        assert!(cert.certified());
    }

    #[test]
    fn exponential_overflow_is_reported() {
        let d = crate::DistanceMatrix::from_rows(&[[0.0, 800.0], [800.0, 0.0]]).unwrap();
        let space = FiniteBMetricSpace::new(["p", "q"], d, 1.0).unwrap();
        let swap = SelfMap::from_indices(&space, vec![1, 0]).unwrap();
        let mut suite = FunctionSuite::affine_ratio(2.0).unwrap();
        suite.theta = crate::ThetaFunction::Exponential;
        assert!(matches!(
            certify_basic(&space, &swap, &suite),
            Err(CertifyError::Evaluation { .. })
        ));
    }
}
