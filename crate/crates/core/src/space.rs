//! Finite b-metric spaces: distance tables, axiom validation and the least
//! admissible coefficient.
//!
//! A distance table `d` on `n` points is a b-metric with coefficient `s >= 1`
//! when
//!
//! * (i)   `d[i][j] == 0` exactly when `i == j`,
//! * (ii)  `d[i][j] == d[j][i]`,
//! * (iii) `d[i][k] <= s * (d[i][j] + d[j][k])` for every triple.
//!
//! Axiom (i) is compared exactly against `0.0`; (ii) and (iii) use a
//! [`Tolerance`].

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::tol::Tolerance;

/// Square table of finite distances, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl DistanceMatrix {
    /// Builds a matrix from rows. Every row must have the same length as the
    /// number of rows and every entry must be finite.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self, SpaceError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(SpaceError::NotSquare {
                    row: i,
                    expected: n,
                    found: row.len(),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(SpaceError::NonFinite { row: i, col: j });
                }
                entries.push(v);
            }
        }
        Ok(DistanceMatrix { n, entries })
    }

    /// Side length.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    /// Simultaneous row/column permutation: entry `(i, j)` of the result is
    /// entry `(perm[i], perm[j])` of `self`.
    ///
    /// Panics if `perm` is not a permutation of `0..len()`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        let mut seen = alloc::vec![false; self.n];
        for &p in perm {
            assert!(p < self.n && !seen[p], "not a permutation");
            seen[p] = true;
        }
        let mut entries = Vec::with_capacity(self.entries.len());
        for &pi in perm {
            for &pj in perm {
                entries.push(self.get(pi, pj));
            }
        }
        DistanceMatrix { n: self.n, entries }
    }

    /// Multiplies every entry by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        DistanceMatrix {
            n: self.n,
            entries: self.entries.iter().map(|v| v * factor).collect(),
        }
    }
}

/// The three b-metric axioms, ordered as listed in the module docs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    /// `d(x, y) = 0` iff `x = y`.
    Identity,
    /// `d(x, y) = d(y, x)`.
    Symmetry,
    /// `d(x, z) <= s (d(x, y) + d(y, z))`.
    Triangle,
}

impl Axiom {
    pub fn id(&self) -> &'static str {
        match self {
            Axiom::Identity => "i",
            Axiom::Symmetry => "ii",
            Axiom::Triangle => "iii",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Axiom::Identity => "identity",
            Axiom::Symmetry => "symmetry",
            Axiom::Triangle => "b-triangle",
        };
        write!(f, "axiom ({}) {}", self.id(), name)
    }
}

/// One failed axiom instance.
///
/// `indices` has one entry for a nonzero diagonal, two for an off-diagonal
/// zero or an asymmetric pair, and three `(x, y, z)` for the b-triangle.
/// For the b-triangle `lhs = d[x][z]` and `rhs = s * (d[x][y] + d[y][z])`.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub axiom: Axiom,
    pub indices: Vec<usize>,
    pub lhs: f64,
    pub rhs: f64,
}

/// Outcome of [`validate_axioms`]. Passes iff there are no violations.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// All violations, sorted by axiom and then lexicographically by index tuple.
    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    /// Lexicographically first violation of the given axiom.
    pub fn first(&self, axiom: Axiom) -> Option<&Violation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }

    pub fn fails(&self, axiom: Axiom) -> bool {
        self.first(axiom).is_some()
    }
}

/// Checks all three axioms exhaustively with the default tolerance.
pub fn validate_axioms(distances: &DistanceMatrix, coefficient: f64) -> ValidationReport {
    validate_axioms_with(distances, coefficient, Tolerance::default())
}

/// Checks all three axioms exhaustively. Every violation is reported.
pub fn validate_axioms_with(
    distances: &DistanceMatrix,
    coefficient: f64,
    tol: Tolerance,
) -> ValidationReport {
    let n = distances.len();
    let d = |i, j| distances.get(i, j);
    let mut violations = Vec::new();

    for i in 0..n {
        if d(i, i) != 0.0 {
            violations.push(Violation {
                axiom: Axiom::Identity,
                indices: alloc::vec![i],
                lhs: d(i, i),
                rhs: 0.0,
            });
        }
        for j in 0..n {
            if i != j && d(i, j) == 0.0 {
                violations.push(Violation {
                    axiom: Axiom::Identity,
                    indices: alloc::vec![i, j],
                    lhs: 0.0,
                    rhs: 0.0,
                });
            }
        }
    }

    for i in 0..n {
        for j in i + 1..n {
            if !tol.close(d(i, j), d(j, i)) {
                violations.push(Violation {
                    axiom: Axiom::Symmetry,
                    indices: alloc::vec![i, j],
                    lhs: d(i, j),
                    rhs: d(j, i),
                });
            }
        }
    }

    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = d(x, z);
                let rhs = coefficient * (d(x, y) + d(y, z));
                if tol.exceeds(lhs, rhs) {
                    violations.push(Violation {
                        axiom: Axiom::Triangle,
                        indices: alloc::vec![x, y, z],
                        lhs,
                        rhs,
                    });
                }
            }
        }
    }

    violations.sort_by(|a, b| {
        a.axiom
            .cmp(&b.axiom)
            .then_with(|| a.indices.cmp(&b.indices))
    });
    ValidationReport { violations }
}

/// Least admissible coefficient together with the triple that attains it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoefficientBound {
    pub value: f64,
    /// Lexicographically first `(x, y, z)` attaining `value`; `None` when the
    /// bound is the floor `1`.
    pub triple: Option<[usize; 3]>,
}

/// `max(1, max d[x][z] / (d[x][y] + d[y][z]))` over ordered triples with
/// `x != z` and `y` distinct from both.
///
/// Expects a table satisfying axioms (i) and (ii). A zero denominator with a
/// positive numerator has no finite coefficient and is reported as an error.
pub fn minimal_coefficient(distances: &DistanceMatrix) -> Result<CoefficientBound, SpaceError> {
    let n = distances.len();
    let mut best = CoefficientBound {
        value: 1.0,
        triple: None,
    };
    for x in 0..n {
        for y in 0..n {
            if y == x {
                continue;
            }
            for z in 0..n {
                if z == x || z == y {
                    continue;
                }
                let num = distances.get(x, z);
                let den = distances.get(x, y) + distances.get(y, z);
                if den == 0.0 {
                    if num > 0.0 {
                        return Err(SpaceError::NoFiniteCoefficient { triple: [x, y, z] });
                    }
                    continue;
                }
                let ratio = num / den;
                if ratio > best.value {
                    best = CoefficientBound {
                        value: ratio,
                        triple: Some([x, y, z]),
                    };
                }
            }
        }
    }
    Ok(best)
}

/// A validated finite b-metric space. Immutable after construction.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteBMetricSpace {
    points: Vec<String>,
    index: BTreeMap<String, usize>,
    distances: DistanceMatrix,
    coefficient: f64,
}

impl FiniteBMetricSpace {
    /// Builds and validates a space with the default tolerance.
    pub fn new<S: Into<String>>(
        points: impl IntoIterator<Item = S>,
        distances: DistanceMatrix,
        coefficient: f64,
    ) -> Result<Self, SpaceError> {
        Self::with_tolerance(points, distances, coefficient, Tolerance::default())
    }

    pub fn with_tolerance<S: Into<String>>(
        points: impl IntoIterator<Item = S>,
        distances: DistanceMatrix,
        coefficient: f64,
        tol: Tolerance,
    ) -> Result<Self, SpaceError> {
        let points: Vec<String> = points.into_iter().map(Into::into).collect();
        if points.is_empty() {
            return Err(SpaceError::Empty);
        }
        if distances.len() != points.len() {
            return Err(SpaceError::DimensionMismatch {
                points: points.len(),
                side: distances.len(),
            });
        }
        if !(coefficient.is_finite() && coefficient >= 1.0) {
            return Err(SpaceError::InvalidCoefficient(coefficient));
        }
        let mut index = BTreeMap::new();
        for (i, p) in points.iter().enumerate() {
            if index.insert(p.clone(), i).is_some() {
                return Err(SpaceError::DuplicateLabel(p.clone()));
            }
        }
        let n = points.len();
        for i in 0..n {
            for j in 0..n {
                let v = distances.get(i, j);
                if v < 0.0 {
                    return Err(SpaceError::NegativeEntry {
                        row: i,
                        col: j,
                        value: v,
                    });
                }
            }
        }
        let report = validate_axioms_with(&distances, coefficient, tol);
        if !report.passed() {
            return Err(SpaceError::AxiomViolation(report));
        }
        Ok(FiniteBMetricSpace {
            points,
            index,
            distances,
            coefficient,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Always false: a space has at least one point.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn label(&self, i: usize) -> &str {
        &self.points[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize, SpaceError> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| SpaceError::UnknownLabel(label.into()))
    }

    /// Declared coefficient `s`.
    pub fn coefficient(&self) -> f64 {
        self.coefficient
    }

    pub fn distances(&self) -> &DistanceMatrix {
        &self.distances
    }

    /// Distance between two labelled points.
    pub fn distance(&self, x: &str, y: &str) -> Result<f64, SpaceError> {
        Ok(self.d(self.index_of(x)?, self.index_of(y)?))
    }

    /// Distance by point index.
    #[inline]
    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.distances.get(i, j)
    }

    pub fn minimal_coefficient(&self) -> CoefficientBound {
        // Axioms (i) and (ii) hold by construction, so every denominator is positive.
        minimal_coefficient(&self.distances).expect("validated space has a finite coefficient")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SpaceError {
    Empty,
    NotSquare {
        row: usize,
        expected: usize,
        found: usize,
    },
    NonFinite {
        row: usize,
        col: usize,
    },
    DimensionMismatch {
        points: usize,
        side: usize,
    },
    NegativeEntry {
        row: usize,
        col: usize,
        value: f64,
    },
    InvalidCoefficient(f64),
    DuplicateLabel(String),
    UnknownLabel(String),
    AxiomViolation(ValidationReport),
    NoFiniteCoefficient {
        triple: [usize; 3],
    },
}

impl fmt::Display for SpaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceError::Empty => write!(f, "a space needs at least one point"),
            SpaceError::NotSquare {
                row,
                expected,
                found,
            } => write!(
                f,
                "distance row {row} has {found} entries, expected {expected}"
            ),
            SpaceError::NonFinite { row, col } => {
                write!(f, "distance entry ({row}, {col}) is not finite")
            }
            SpaceError::DimensionMismatch { points, side } => write!(
                f,
                "{points} points but the distance matrix is {side}x{side}"
            ),
            SpaceError::NegativeEntry { row, col, value } => {
                write!(f, "distance entry ({row}, {col}) is negative: {value}")
            }
            SpaceError::InvalidCoefficient(s) => {
                write!(f, "coefficient must be finite and >= 1, got {s}")
            }
            SpaceError::DuplicateLabel(l) => write!(f, "duplicate point label {l:?}"),
            SpaceError::UnknownLabel(l) => write!(f, "unknown point label {l:?}"),
            SpaceError::AxiomViolation(report) => {
                let n = report.violations().len();
                match report.violations().first() {
                    Some(v) => write!(
                        f,
                        "{n} axiom violation(s); first: {} at {:?} ({} vs {})",
                        v.axiom, v.indices, v.lhs, v.rhs
                    ),
                    None => write!(f, "axiom violation"),
                }
            }
            SpaceError::NoFiniteCoefficient { triple } => write!(
                f,
                "no finite coefficient: zero denominator at triple {triple:?}"
            ),
        }
    }
}

impl core::error::Error for SpaceError {}
