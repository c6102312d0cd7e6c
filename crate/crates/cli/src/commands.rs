//! Command implementations. Every command maps an instance to exactly one
//! [`Report`]; exit codes are derived from the report alone.

use crate::error::CliError;
use crate::instance::{build_instance, Built, Instance};
use crate::report::{condition_list_json, window_condition_json, Report, Verdict};
use perdec_core::abelian::{check_window, generate_conditions, solve_window, WindowOutcome, WindowVerdict};
use perdec_core::condition::{check_condition, CheckMode, CheckOutcome};
use perdec_core::decompose::{
    decompose, m_bound, oracle_feasible, DecomposeOutcome, OracleOutcome, Ring,
};
use perdec_core::numeric::format_rational;
use perdec_core::{Action, FnVec};
use num_bigint::BigInt;
use num_traits::One;
use serde_json::json;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Auto,
    Constructive,
    Oracle,
}

pub fn run_validate(instance: &Instance) -> Result<Report, CliError> {
    let built = build_instance(instance)?;
    let mut report =
        Report::new(Verdict::Valid).with_diagnostic("instance_mode", json!(instance.mode_name()));
    match built {
        Built::Act { action, .. } => {
            report = report
                .with_diagnostic("carrier", json!(action.carrier_size()))
                .with_diagnostic("generators", json!(action.generator_count()))
                .with_diagnostic(
                    "orbits",
                    json!(action.full_orbit_partition().orbits.len()),
                );
        }
        Built::Window(instance) => {
            report = report
                .with_diagnostic("window", json!(instance.window))
                .with_diagnostic("periods", json!(instance.periods));
        }
        Built::Conditions { periods } => {
            report = report.with_diagnostic("periods", json!(periods.len()));
        }
    }
    Ok(report)
}

pub fn run_check(instance: &Instance, exhaustive: bool) -> Result<Report, CliError> {
    match build_instance(instance)? {
        Built::Act { action, f } => {
            let mode = if exhaustive {
                CheckMode::Exhaustive
            } else {
                CheckMode::Generator
            };
            let mode_name = if exhaustive { "exhaustive" } else { "generator" };
            match check_condition(&action, &f, mode)? {
                CheckOutcome::Pass(stats) => Ok(Report::new(Verdict::Decomposable)
                    .with_diagnostic("instance_mode", json!(instance.mode_name()))
                    .with_diagnostic("check_mode", json!(mode_name))
                    .with_diagnostic("orbits", json!(stats.orbits))
                    .with_diagnostic("partitions", json!(stats.partitions))
                    .with_diagnostic("chains_evaluated", json!(stats.chains_evaluated))
                    .with_diagnostic(
                        "chains_skipped_trivial",
                        json!(stats.chains_skipped_trivial),
                    )),
                CheckOutcome::Violation(certificate) => Ok(Report::new(Verdict::NotDecomposable)
                    .with_certificate(&certificate)
                    .with_diagnostic("instance_mode", json!(instance.mode_name()))
                    .with_diagnostic("check_mode", json!(mode_name))),
            }
        }
        Built::Window(window) => match check_window(&window)? {
            WindowVerdict::Pass { untestable } => Ok(Report::new(Verdict::ConditionsOnly)
                .with_diagnostic("instance_mode", json!(instance.mode_name()))
                .with_diagnostic(
                    "untestable",
                    json!(untestable
                        .iter()
                        .map(window_condition_json)
                        .collect::<Vec<_>>()),
                )),
            WindowVerdict::Violation {
                condition,
                witness,
                value,
            } => Ok(Report::new(Verdict::NotDecomposable)
                .with_diagnostic("instance_mode", json!(instance.mode_name()))
                .with_diagnostic(
                    "window_violation",
                    json!({
                        "condition": window_condition_json(&condition),
                        "witness": witness,
                        "value": format_rational(&value),
                    }),
                )),
        },
        Built::Conditions { .. } => Err(CliError::input(
            "check needs function values; use `conditions` for symbolic periods",
        )),
    }
}

fn decomposition_diagnostics(action: &Action, parts: &[FnVec], report: Report) -> Report {
    let all: Vec<usize> = (0..action.generator_count()).collect();
    let orbits = action.full_orbit_partition();
    let bounds: Vec<String> = orbits
        .orbits
        .iter()
        .map(|orbit| {
            m_bound(action, orbit, &all)
                .map(|b| b.value.to_string())
                .unwrap_or_else(|_| "?".to_string())
        })
        .collect();
    let max_denominator = parts
        .iter()
        .flat_map(|p| p.values().iter())
        .map(|v| v.denom().clone())
        .max()
        .unwrap_or_else(BigInt::one);
    report
        .with_diagnostic("m_bounds", json!(bounds))
        .with_diagnostic("max_denominator", json!(max_denominator.to_string()))
}

pub fn run_decompose(instance: &Instance, method: Method, ring: Ring) -> Result<Report, CliError> {
    match build_instance(instance)? {
        Built::Act { action, f } => match (method, ring) {
            (Method::Constructive, Ring::Integer) => Err(CliError::input(
                "integer decompositions are decided by the oracle; drop --constructive",
            )),
            (Method::Auto | Method::Constructive, Ring::Rational) => {
                match decompose(&action, &f)? {
                    DecomposeOutcome::Decomposed(decomposition) => {
                        let report = Report::new(Verdict::Decomposable)
                            .with_parts(decomposition.parts())
                            .with_diagnostic("instance_mode", json!(instance.mode_name()))
                            .with_diagnostic("route", json!("constructive"))
                            .with_diagnostic("ring", json!("rational"));
                        Ok(decomposition_diagnostics(
                            &action,
                            decomposition.parts(),
                            report,
                        ))
                    }
                    DecomposeOutcome::Violation(certificate) => {
                        Ok(Report::new(Verdict::NotDecomposable)
                            .with_certificate(&certificate)
                            .with_diagnostic("instance_mode", json!(instance.mode_name()))
                            .with_diagnostic("route", json!("constructive"))
                            .with_diagnostic("ring", json!("rational")))
                    }
                }
            }
            (Method::Oracle, _) | (Method::Auto, Ring::Integer) => {
                run_oracle_on_action(instance, &action, &f, ring)
            }
        },
        Built::Window(window) => {
            if method == Method::Constructive {
                return Err(CliError::input(
                    "window instances are solved by the linear oracle; drop --constructive",
                ));
            }
            let ring_name = ring_name(ring);
            match solve_window(&window, ring)? {
                WindowOutcome::Feasible(parts) => Ok(Report::new(Verdict::Decomposable)
                    .with_raw_parts(
                        parts
                            .iter()
                            .map(|p| p.iter().map(format_rational).collect())
                            .collect(),
                    )
                    .with_diagnostic("instance_mode", json!(instance.mode_name()))
                    .with_diagnostic("route", json!("window_oracle"))
                    .with_diagnostic("ring", json!(ring_name))),
                WindowOutcome::Infeasible => Ok(Report::new(Verdict::NotDecomposable)
                    .with_diagnostic("instance_mode", json!(instance.mode_name()))
                    .with_diagnostic("route", json!("window_oracle"))
                    .with_diagnostic("ring", json!(ring_name))),
            }
        }
        Built::Conditions { .. } => Err(CliError::input(
            "symbolic-period instances generate conditions only; use `conditions`",
        )),
    }
}

fn ring_name(ring: Ring) -> &'static str {
    match ring {
        Ring::Rational => "rational",
        Ring::Integer => "integer",
    }
}

fn run_oracle_on_action(
    instance: &Instance,
    action: &Action,
    f: &FnVec,
    ring: Ring,
) -> Result<Report, CliError> {
    match oracle_feasible(action, f, ring)? {
        OracleOutcome::Feasible(decomposition) => {
            let report = Report::new(Verdict::Decomposable)
                .with_parts(decomposition.parts())
                .with_diagnostic("instance_mode", json!(instance.mode_name()))
                .with_diagnostic("route", json!("oracle"))
                .with_diagnostic("ring", json!(ring_name(ring)));
            Ok(decomposition_diagnostics(
                action,
                decomposition.parts(),
                report,
            ))
        }
        OracleOutcome::Infeasible => Ok(Report::new(Verdict::NotDecomposable)
            .with_diagnostic("instance_mode", json!(instance.mode_name()))
            .with_diagnostic("route", json!("oracle"))
            .with_diagnostic("ring", json!(ring_name(ring)))),
    }
}

pub fn run_oracle(instance: &Instance, ring: Ring) -> Result<Report, CliError> {
    match build_instance(instance)? {
        Built::Act { action, f } => run_oracle_on_action(instance, &action, &f, ring),
        Built::Window(_) => run_decompose(instance, Method::Oracle, ring),
        Built::Conditions { .. } => Err(CliError::input(
            "symbolic-period instances generate conditions only; use `conditions`",
        )),
    }
}

pub fn run_conditions(instance: &Instance) -> Result<Report, CliError> {
    match build_instance(instance)? {
        Built::Conditions { periods } => {
            let list = generate_conditions(&periods)?;
            Ok(Report::new(Verdict::ConditionsOnly)
                .with_diagnostic("instance_mode", json!(instance.mode_name()))
                .with_diagnostic("conditions", condition_list_json(&list)))
        }
        _ => Err(CliError::input(
            "conditions needs a tf_conditions instance",
        )),
    }
}

/// Built-in demonstration instance: the four-point torus with three
/// order-two translations and f = [0, 1, 1, 1], which decomposes over the
/// rationals but not over the integers.
pub const DEMO_KLEIN: &str = include_str!("../fixtures/z2z2.json");

pub fn run_demo(name: &str) -> Result<Report, CliError> {
    if name != "z2z2" {
        return Err(CliError::input(format!(
            "unknown demo {name:?}; available: z2z2"
        )));
    }
    let instance = crate::instance::parse_instance(DEMO_KLEIN)
        .map_err(|e| CliError::internal(format!("bundled demo instance is invalid: {e}")))?;
    let check = run_check(&instance, false)?;
    let rational = run_decompose(&instance, Method::Auto, Ring::Rational)?;
    let integer = run_decompose(&instance, Method::Auto, Ring::Integer)?;
    let mut report = Report::new(rational.verdict);
    report.parts = rational.parts;
    report.certificate = rational.certificate;
    Ok(report
        .with_diagnostic("demo", json!(name))
        .with_diagnostic("check_verdict", json!(check.verdict))
        .with_diagnostic("integer_verdict", json!(integer.verdict)))
}
