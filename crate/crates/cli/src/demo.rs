//! The two embedded four-point examples, run end to end.

use bmfp_core::demos;
use bmfp_core::functions::scaled_ratio_membership;
use bmfp_core::iterate::{check_theorem_consequence, default_max_steps, picard_iterate_index};
use bmfp_core::space::validate_axioms_with;
use bmfp_core::{
    certify, enumerate_fixed_points, Consequence, ContractionCondition, FiniteBMetricSpace,
    FunctionSuite, Tolerance,
};

use crate::error::InputError;
use crate::input::Real;
use crate::report::{
    CertificateOut, ConsequenceOut, DemoReport, DemoSpaceOut, Digits, MembershipOut, OracleOut,
    SuiteOut, TrajectoryOut,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Example {
    A,
    B,
}

struct Setup {
    name: &'static str,
    space: FiniteBMetricSpace,
    /// Spelling of `s` and of `k`, which equals `s` in both examples.
    coefficient_expr: Option<&'static str>,
    suite: FunctionSuite,
    conditions: &'static [ContractionCondition],
}

fn setup(example: Example) -> Setup {
    match example {
        Example::A => Setup {
            name: "A",
            space: demos::example_a_space(),
            coefficient_expr: Some("sqrt(3)"),
            suite: demos::example_a_suite(),
            conditions: &[ContractionCondition::Basic],
        },
        Example::B => Setup {
            name: "B",
            space: demos::example_b_space(),
            coefficient_expr: None,
            suite: demos::example_b_suite(),
            conditions: &[
                ContractionCondition::Basic,
                ContractionCondition::Generalized,
            ],
        },
    }
}

/// validate, membership, certify, iterate from every seed, brute-force
/// oracle, then the uniqueness consequence of the last certificate.
pub fn run(example: Example, tol: Tolerance, digits: Digits) -> Result<DemoReport, InputError> {
    let Setup {
        name,
        space,
        coefficient_expr,
        suite,
        conditions,
    } = setup(example);
    let map = demos::example_map(&space);
    let label = |i: usize| space.label(i).to_string();
    let d = space.distances();
    let k_spelling = coefficient_expr.map(|e| Real {
        value: suite.j.k(),
        expr: Some(e.to_string()),
    });

    let axioms = validate_axioms_with(d, space.coefficient(), tol);
    let bound = space.minimal_coefficient();
    let membership = MembershipOut::new(
        &suite,
        scaled_ratio_membership(suite.j.k(), space.coefficient()),
    );

    let mut certificates = Vec::new();
    for &condition in conditions {
        certificates.push(certify(&space, &map, &suite, condition, tol)?);
    }
    let last = certificates.last().expect("at least one condition");

    let trajectories = (0..space.len())
        .map(|i| picard_iterate_index(&space, &map, i, default_max_steps(&space)))
        .collect::<Result<Vec<_>, _>>()?;
    let oracle = enumerate_fixed_points(&space, &map);

    let consequence = match check_theorem_consequence(&space, &map, last) {
        Ok(Consequence::Holds { fixed_point, .. }) => ConsequenceOut {
            status: "holds",
            fixed_point: Some(label(fixed_point)),
            offending_seed: None,
            reason: None,
        },
        Ok(Consequence::Violated { offending_seed, .. }) => ConsequenceOut {
            status: "violated",
            fixed_point: None,
            offending_seed: offending_seed.map(label),
            reason: None,
        },
        Ok(Consequence::NotApplicable(reason)) => ConsequenceOut {
            status: "not_applicable",
            fixed_point: None,
            offending_seed: None,
            reason: Some(reason),
        },
        Err(e) => return Err(InputError::Usage(e.to_string())),
    };

    Ok(DemoReport {
        command: "demo",
        example: name,
        space: DemoSpaceOut {
            points: space.points().to_vec(),
            distances: (0..space.len())
                .map(|i| d.row(i).iter().map(|&v| digits.round(v)).collect())
                .collect(),
            coefficient: digits.round(space.coefficient()),
            coefficient_expr,
            axioms_passed: axioms.passed(),
            minimal_coefficient: digits.round(bound.value),
            minimal_triple: bound.triple.map(|t| t.iter().map(|&i| label(i)).collect()),
        },
        suite: SuiteOut::new(&suite, None, k_spelling.as_ref(), digits),
        membership,
        certificates: certificates
            .iter()
            .map(|c| CertificateOut::new(c, digits))
            .collect(),
        trajectories: trajectories
            .iter()
            .map(|t| TrajectoryOut::new(&space, t, digits))
            .collect(),
        oracle: OracleOut {
            fixed_points: oracle.fixed_points.iter().map(|&i| label(i)).collect(),
            unique: oracle.unique(),
            consistent: oracle.consistent_with(last),
        },
        consequence,
    })
}
