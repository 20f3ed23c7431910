//! Picard iteration on a finite space, brute-force fixed points, and the
//! uniqueness check a certified contraction must pass.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::certify::{ContractionCertificate, ContractionCondition};
use crate::map::SelfMap;
use crate::space::{FiniteBMetricSpace, SpaceError};

/// How an orbit closes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    /// `visited[step]` is the first fixed point on the orbit.
    FixedPoint { point: usize, step: usize },
    /// The orbit enters a cycle of length `period >= 2` at `visited[entry]`.
    Cycle { period: usize, entry: usize },
}

/// Orbit `a_0, a_1 = S a_0, ...` up to the first repeated point.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub seed: usize,
    /// Distinct points in orbit order; `visited[n + 1] = S visited[n]`.
    pub visited: Vec<usize>,
    /// `r_n = d(a_n, a_{n+1})`, one per map application including the one
    /// that closes the orbit, so `step_distances.len() == visited.len()`.
    pub step_distances: Vec<f64>,
    pub outcome: Outcome,
}

impl Trajectory {
    pub fn fixed_point(&self) -> Option<usize> {
        match self.outcome {
            Outcome::FixedPoint { point, .. } => Some(point),
            Outcome::Cycle { .. } => None,
        }
    }

    /// `r_n` never increases.
    pub fn steps_non_increasing(&self) -> bool {
        self.step_distances.windows(2).all(|w| w[1] <= w[0])
    }

    /// `r_n` strictly decreases while positive, then stays at 0.
    pub fn steps_strictly_decreasing(&self) -> bool {
        self.step_distances
            .windows(2)
            .all(|w| w[1] < w[0] || (w[0] == 0.0 && w[1] == 0.0))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum IterateError {
    UnknownSeed(String),
    SeedOutOfRange(usize),
    MapSizeMismatch {
        points: usize,
        map: usize,
    },
    /// No repeat within `max_steps` map applications.
    Exhausted {
        max_steps: usize,
        visited: Vec<usize>,
    },
}

impl fmt::Display for IterateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IterateError::UnknownSeed(s) => write!(f, "unknown seed {s:?}"),
            IterateError::SeedOutOfRange(i) => write!(f, "seed index {i} out of range"),
            IterateError::MapSizeMismatch { points, map } => {
                write!(f, "map has {map} entries but the space has {points} points")
            }
            IterateError::Exhausted { max_steps, .. } => {
                write!(f, "no repeated point within {max_steps} steps")
            }
        }
    }
}

impl core::error::Error for IterateError {}

/// Default step budget, `|points| + 1`.
pub fn default_max_steps(space: &FiniteBMetricSpace) -> usize {
    space.len() + 1
}

/// Iterates `map` from the labelled seed until a point repeats.
pub fn picard_iterate(
    space: &FiniteBMetricSpace,
    map: &SelfMap,
    seed: &str,
    max_steps: usize,
) -> Result<Trajectory, IterateError> {
    let seed = space
        .index_of(seed)
        .map_err(|_| IterateError::UnknownSeed(seed.into()))?;
    picard_iterate_index(space, map, seed, max_steps)
}

/// Iterates from a seed index. At most `max_steps` map applications are made;
/// an `n`-point space always closes within `n`.
pub fn picard_iterate_index(
    space: &FiniteBMetricSpace,
    map: &SelfMap,
    seed: usize,
    max_steps: usize,
) -> Result<Trajectory, IterateError> {
    if map.len() != space.len() {
        return Err(IterateError::MapSizeMismatch {
            points: space.len(),
            map: map.len(),
        });
    }
    if seed >= space.len() {
        return Err(IterateError::SeedOutOfRange(seed));
    }
    // position of each point in `visited`, if seen
    let mut position: Vec<Option<usize>> = alloc::vec![None; space.len()];
    let mut visited = alloc::vec![seed];
    let mut step_distances = Vec::new();
    position[seed] = Some(0);
    let mut current = seed;
    for _ in 0..max_steps {
        let next = map.apply(current);
        step_distances.push(space.d(current, next));
        if let Some(entry) = position[next] {
            let outcome = if next == current {
                Outcome::FixedPoint {
                    point: current,
                    step: entry,
                }
            } else {
                Outcome::Cycle {
                    period: visited.len() - entry,
                    entry,
                }
            };
            return Ok(Trajectory {
                seed,
                visited,
                step_distances,
                outcome,
            });
        }
        position[next] = Some(visited.len());
        visited.push(next);
        current = next;
    }
    Err(IterateError::Exhausted { max_steps, visited })
}

/// Every point with `S p = p`, in point order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointReport {
    pub fixed_points: Vec<usize>,
}

impl FixedPointReport {
    pub fn unique(&self) -> bool {
        self.fixed_points.len() == 1
    }

    /// Whether the observed uniqueness agrees with what the certificate
    /// predicts: a certified contraction forces exactly one fixed point, an
    /// uncertified one predicts nothing.
    pub fn consistent_with(&self, certificate: &ContractionCertificate) -> Option<bool> {
        certificate.certified().then(|| self.unique())
    }
}

pub fn enumerate_fixed_points(space: &FiniteBMetricSpace, map: &SelfMap) -> FixedPointReport {
    FixedPointReport {
        fixed_points: (0..space.len().min(map.len()))
            .filter(|&p| map.apply(p) == p)
            .collect(),
    }
}

/// b-continuity of a self-map on a finite space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Continuity {
    pub holds: bool,
    pub justification: &'static str,
}

/// Always holds on a validated finite space: distinct points sit at least
/// `min_{x != y} d(x, y) > 0` apart, so a sequence with `d(a_n, a) -> 0`
/// equals `a` from some index on, and then `S a_n = S a` as well.
pub fn check_b_continuity(_space: &FiniteBMetricSpace, _map: &SelfMap) -> Continuity {
    Continuity {
        holds: true,
        justification:
            "finite space with positive separation: convergent sequences are eventually \
                        constant, so every self-map is b-continuous",
    }
}

/// What a certified contraction implies, checked against brute force.
#[derive(Clone, Debug, PartialEq)]
pub enum Consequence {
    /// Certificate not certified, or the continuity gate failed.
    NotApplicable(&'static str),
    /// Exactly one fixed point and every seed reaches it.
    Holds {
        fixed_point: usize,
        trajectories: Vec<Trajectory>,
    },
    /// A certified map violated the conclusion. Points at a bug or an
    /// invalid suite.
    Violated {
        fixed_points: Vec<usize>,
        offending_seed: Option<usize>,
    },
}

impl Consequence {
    pub fn violated(&self) -> bool {
        matches!(self, Consequence::Violated { .. })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ConsequenceError {
    CertificateMismatch,
    Iterate(IterateError),
}

impl fmt::Display for ConsequenceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConsequenceError::CertificateMismatch => {
                write!(f, "certificate was not produced for this space and map")
            }
            ConsequenceError::Iterate(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ConsequenceError {}

impl From<IterateError> for ConsequenceError {
    fn from(e: IterateError) -> Self {
        ConsequenceError::Iterate(e)
    }
}

/// For a certified certificate (generalized ones also need b-continuity),
/// checks that there is exactly one fixed point and that the orbit of every
/// seed ends there.
pub fn check_theorem_consequence(
    space: &FiniteBMetricSpace,
    map: &SelfMap,
    certificate: &ContractionCertificate,
) -> Result<Consequence, ConsequenceError> {
    if !certificate.matches(space, map) {
        return Err(ConsequenceError::CertificateMismatch);
    }
    if !certificate.certified() {
        return Ok(Consequence::NotApplicable("certificate not certified"));
    }
    if certificate.condition() == ContractionCondition::Generalized
        && !check_b_continuity(space, map).holds
    {
        return Ok(Consequence::NotApplicable("map is not b-continuous"));
    }
    let report = enumerate_fixed_points(space, map);
    let mut trajectories = Vec::with_capacity(space.len());
    for seed in 0..space.len() {
        trajectories.push(picard_iterate_index(
            space,
            map,
            seed,
            default_max_steps(space),
        )?);
    }
    if !report.unique() {
        let offending_seed = trajectories
            .iter()
            .find(|t| t.fixed_point().is_none())
            .map(|t| t.seed);
        return Ok(Consequence::Violated {
            fixed_points: report.fixed_points,
            offending_seed,
        });
    }
    let fixed_point = report.fixed_points[0];
    if let Some(t) = trajectories
        .iter()
        .find(|t| t.fixed_point() != Some(fixed_point))
    {
        return Ok(Consequence::Violated {
            fixed_points: report.fixed_points,
            offending_seed: Some(t.seed),
        });
    }
    Ok(Consequence::Holds {
        fixed_point,
        trajectories,
    })
}

/// Labels for a list of indices.
pub fn labels(space: &FiniteBMetricSpace, indices: &[usize]) -> Result<Vec<String>, SpaceError> {
    indices
        .iter()
        .map(|&i| {
            space
                .points()
                .get(i)
                .cloned()
                .ok_or_else(|| SpaceError::UnknownLabel(alloc::format!("#{i}")))
        })
        .collect()
}
