//! JSON file formats for spaces, maps and function suites.

use std::fmt;
use std::path::Path;

use bmfp_core::functions::{FcOperator, SimulationFunction, ThetaFunction};
use bmfp_core::{DistanceMatrix, FiniteBMetricSpace, FunctionSuite, SelfMap, Tolerance};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::Deserialize;

use crate::error::InputError;

/// A real parameter written either as a JSON number or as a string such as
/// `"sqrt(3)"` or `"1.5"`.
#[derive(Clone, Debug, PartialEq)]
pub struct Real {
    pub value: f64,
    /// Original spelling when given as a string.
    pub expr: Option<String>,
}

impl Real {
    pub fn parse(text: &str) -> Option<f64> {
        let t = text.trim();
        let v = match t.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
            Some(inner) => inner
                .trim()
                .parse::<f64>()
                .ok()
                .filter(|x| *x >= 0.0)?
                .sqrt(),
            None => t.parse::<f64>().ok()?,
        };
        v.is_finite().then_some(v)
    }
}

impl<'de> Deserialize<'de> for Real {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct RealVisitor;

        impl Visitor<'_> for RealVisitor {
            type Value = Real;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number or a string like \"sqrt(3)\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Real, E> {
                Ok(Real {
                    value: v,
                    expr: None,
                })
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Real, E> {
                self.visit_f64(v as f64)
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Real, E> {
                self.visit_f64(v as f64)
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Real, E> {
                Real::parse(v)
                    .map(|value| Real {
                        value,
                        expr: Some(v.to_string()),
                    })
                    .ok_or_else(|| E::custom(format!("cannot read {v:?} as a real number")))
            }
        }

        deserializer.deserialize_any(RealVisitor)
    }
}

/// Ordered `(key, value)` pairs of a JSON object, keeping duplicate keys.
#[derive(Debug, Default)]
struct Pairs(Vec<(String, String)>);

impl<'de> Deserialize<'de> for Pairs {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct PairsVisitor;

        impl<'de> Visitor<'de> for PairsVisitor {
            type Value = Pairs;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object mapping point labels to point labels")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Pairs, A::Error> {
                let mut out = Vec::new();
                while let Some((k, v)) = access.next_entry::<String, String>()? {
                    out.push((k, v));
                }
                Ok(Pairs(out))
            }
        }

        deserializer.deserialize_map(PairsVisitor)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpace {
    points: Vec<String>,
    distances: Vec<Vec<f64>>,
    coefficient: Option<Real>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMap {
    table: Pairs,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RawTheta {
    AffinePlusOne,
    Exponential,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RawFc {
    Ratio { c: Real },
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RawJ {
    ScaledRatio { k: Real },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSuite {
    theta: RawTheta,
    fc: RawFc,
    j: RawJ,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, InputError> {
    let text = std::fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| InputError::json(path, e))
}

/// A distance table as read from disk, before any axiom checks.
#[derive(Clone, Debug)]
pub struct Table {
    pub points: Vec<String>,
    pub distances: DistanceMatrix,
    pub coefficient: Option<Real>,
}

impl Table {
    /// Checks shape, labels and entry signs; the axioms are left to the caller.
    pub fn load(path: &Path) -> Result<Self, InputError> {
        let raw: RawSpace = read_json(path)?;
        if raw.points.is_empty() {
            return Err(InputError::invalid(path, "points list is empty"));
        }
        let mut seen = std::collections::BTreeSet::new();
        for p in &raw.points {
            if !seen.insert(p.as_str()) {
                return Err(InputError::invalid(
                    path,
                    format!("duplicate point label {p:?}"),
                ));
            }
        }
        if raw.distances.len() != raw.points.len() {
            return Err(InputError::invalid(
                path,
                format!(
                    "{} points but {} distance rows",
                    raw.points.len(),
                    raw.distances.len()
                ),
            ));
        }
        let distances = DistanceMatrix::from_rows(&raw.distances)
            .map_err(|e| InputError::invalid(path, e.to_string()))?;
        for i in 0..distances.len() {
            for j in 0..distances.len() {
                if distances.get(i, j) < 0.0 {
                    return Err(InputError::invalid(
                        path,
                        format!("distance entry ({i}, {j}) is negative"),
                    ));
                }
            }
        }
        Ok(Table {
            points: raw.points,
            distances,
            coefficient: raw.coefficient,
        })
    }

    /// The coefficient to use: the override if given, else the file's.
    pub fn coefficient_or(&self, path: &Path, over: Option<&Real>) -> Result<Real, InputError> {
        let s = over
            .or(self.coefficient.as_ref())
            .cloned()
            .ok_or_else(|| InputError::invalid(path, "no coefficient given"))?;
        if !(s.value.is_finite() && s.value >= 1.0) {
            return Err(InputError::invalid(
                path,
                format!("coefficient must be finite and >= 1, got {}", s.value),
            ));
        }
        Ok(s)
    }
}

/// A validated space plus the spelling of its coefficient.
#[derive(Clone, Debug)]
pub struct LoadedSpace {
    pub space: FiniteBMetricSpace,
    pub coefficient: Real,
}

pub fn load_space(path: &Path, tol: Tolerance) -> Result<LoadedSpace, InputError> {
    let table = Table::load(path)?;
    let coefficient = table.coefficient_or(path, None)?;
    let space =
        FiniteBMetricSpace::with_tolerance(table.points, table.distances, coefficient.value, tol)
            .map_err(|e| InputError::invalid(path, e.to_string()))?;
    Ok(LoadedSpace { space, coefficient })
}

pub fn load_map(path: &Path, space: &FiniteBMetricSpace) -> Result<SelfMap, InputError> {
    let raw: RawMap = read_json(path)?;
    SelfMap::from_pairs(space, raw.table.0).map_err(|e| InputError::invalid(path, e.to_string()))
}

/// A suite plus the spelling of its parameters.
#[derive(Clone, Debug)]
pub struct LoadedSuite {
    pub suite: FunctionSuite,
    pub c: Real,
    pub k: Real,
}

pub fn load_suite(path: &Path) -> Result<LoadedSuite, InputError> {
    let raw: RawSuite = read_json(path)?;
    let theta = match raw.theta {
        RawTheta::AffinePlusOne => ThetaFunction::AffinePlusOne,
        RawTheta::Exponential => ThetaFunction::Exponential,
    };
    let RawFc::Ratio { c } = raw.fc;
    let RawJ::ScaledRatio { k } = raw.j;
    let fc = FcOperator::ratio(c.value).map_err(|e| InputError::invalid(path, e.to_string()))?;
    let j = SimulationFunction::scaled_ratio(k.value)
        .map_err(|e| InputError::invalid(path, e.to_string()))?;
    Ok(LoadedSuite {
        suite: FunctionSuite::new(theta, fc, j),
        c,
        k,
    })
}
