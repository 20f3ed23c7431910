use std::path::Path;

use bmfp_core::functions::scaled_ratio_membership;
use bmfp_core::iterate::{default_max_steps, picard_iterate, picard_iterate_index};
use bmfp_core::space::{validate_axioms_with, Axiom};
use bmfp_core::{
    certify, enumerate_fixed_points, minimal_coefficient, ContractionCondition, Tolerance,
};

use crate::error::InputError;
use crate::input::{load_map, load_space, load_suite, Real, Table};
use crate::report::{
    CertificateOut, CertifyReport, CoefficientReport, Digits, FixedPointsReport, IterateReport,
    MembershipOut, SuiteOut, TrajectoryOut, ValidateReport, ViolationOut,
};

fn labelled(points: &[String], triple: Option<[usize; 3]>) -> Option<Vec<String>> {
    triple.map(|t| t.iter().map(|&i| points[i].clone()).collect())
}

pub fn validate(
    path: &Path,
    coefficient: Option<&Real>,
    tol: Tolerance,
    digits: Digits,
) -> Result<ValidateReport, InputError> {
    let table = Table::load(path)?;
    let s = table.coefficient_or(path, coefficient)?;
    let report = validate_axioms_with(&table.distances, s.value, tol);
    let bound = minimal_coefficient(&table.distances).ok();
    Ok(ValidateReport {
        command: "validate",
        coefficient: digits.round(s.value),
        coefficient_expr: s.expr,
        passed: report.passed(),
        minimal_coefficient: bound.map(|b| digits.round(b.value)),
        minimal_triple: bound.and_then(|b| labelled(&table.points, b.triple)),
        violations: ViolationOut::collect(&report, &table.points, digits),
        points: table.points,
    })
}

pub fn coefficient(
    path: &Path,
    tol: Tolerance,
    digits: Digits,
) -> Result<CoefficientReport, InputError> {
    let table = Table::load(path)?;
    let bound = minimal_coefficient(&table.distances).ok();
    // any coefficient works here; only axioms (i) and (ii) are kept
    let mut report = ViolationOut::collect(
        &validate_axioms_with(&table.distances, 1.0, tol),
        &table.points,
        digits,
    );
    report.retain(|v| v.axiom != Axiom::Triangle.id());
    let declared = table.coefficient.as_ref().map(|r| r.value);
    Ok(CoefficientReport {
        command: "coefficient",
        minimal_coefficient: bound.map(|b| digits.round(b.value)),
        minimal_triple: bound.and_then(|b| labelled(&table.points, b.triple)),
        declared: declared.map(|d| digits.round(d)),
        declared_admissible: declared.zip(bound).map(|(d, b)| tol.at_most(b.value, d)),
        violations: report,
        points: table.points,
    })
}

pub fn certify_cmd(
    space_path: &Path,
    map_path: &Path,
    suite_path: &Path,
    condition: ContractionCondition,
    tol: Tolerance,
    digits: Digits,
) -> Result<CertifyReport, InputError> {
    let loaded = load_space(space_path, tol)?;
    let space = &loaded.space;
    let map = load_map(map_path, space)?;
    let suite = load_suite(suite_path)?;
    let membership = MembershipOut::new(
        &suite.suite,
        scaled_ratio_membership(suite.suite.j.k(), space.coefficient()),
    );
    let cert = certify(space, &map, &suite.suite, condition, tol)?;
    Ok(CertifyReport {
        command: "certify",
        points: space.points().to_vec(),
        coefficient: digits.round(space.coefficient()),
        suite: SuiteOut::new(&suite.suite, Some(&suite.c), Some(&suite.k), digits),
        membership,
        certificate: CertificateOut::new(&cert, digits),
    })
}

pub fn iterate(
    space_path: &Path,
    map_path: &Path,
    seed: Option<&str>,
    max_steps: Option<usize>,
    tol: Tolerance,
    digits: Digits,
) -> Result<IterateReport, InputError> {
    let loaded = load_space(space_path, tol)?;
    let space = &loaded.space;
    let map = load_map(map_path, space)?;
    let max_steps = max_steps.unwrap_or_else(|| default_max_steps(space));
    let trajectories = match seed {
        Some(seed) => vec![picard_iterate(space, &map, seed, max_steps)?],
        None => (0..space.len())
            .map(|i| picard_iterate_index(space, &map, i, max_steps))
            .collect::<Result<_, _>>()?,
    };
    Ok(IterateReport {
        command: "iterate",
        max_steps,
        trajectories: trajectories
            .iter()
            .map(|t| TrajectoryOut::new(space, t, digits))
            .collect(),
    })
}

pub fn fixed_points(
    space_path: &Path,
    map_path: &Path,
    tol: Tolerance,
) -> Result<FixedPointsReport, InputError> {
    let loaded = load_space(space_path, tol)?;
    let space = &loaded.space;
    let map = load_map(map_path, space)?;
    let report = enumerate_fixed_points(space, &map);
    Ok(FixedPointsReport {
        command: "fixed-points",
        unique: report.unique(),
        fixed_points: report
            .fixed_points
            .iter()
            .map(|&i| space.label(i).to_string())
            .collect(),
    })
}
