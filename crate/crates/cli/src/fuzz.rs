//! Seeded cross-validation harness: generates random commuting instances,
//! runs the checker, the linear oracle and the constructive algorithm on
//! each, and demands that they agree and that every produced object
//! re-verifies. Given equal options the whole run is deterministic, down to
//! the summary hash.
//!
//! Commuting generators are only ever produced by constructions that commute
//! by design: translations on a finite abelian group, or powers of a single
//! random permutation.

use crate::instance::{Instance, JsonRat};
use crate::report::{Report, Verdict};
use num_bigint::BigInt;
use num_traits::One;
use perdec_core::abelian::{
    check_window, solve_window, WindowInstance, WindowOutcome, WindowVerdict,
};
use perdec_core::condition::{check_condition, CheckMode, CheckOutcome, FnVec};
use perdec_core::decompose::{
    decompose, m_bound, oracle_feasible, verify_decomposition, DecomposeOutcome, OracleOutcome,
    Ring, Verification,
};
use perdec_core::numeric::rat_int;
use perdec_core::Action;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzOptions {
    pub seed: u64,
    pub count: u64,
    pub max_carrier: usize,
    pub max_gens: usize,
}

impl Default for FuzzOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            count: 100,
            max_carrier: 40,
            max_gens: 4,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Disagreement {
    pub instance_seed: u64,
    pub reproducer: Instance,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct FuzzResult {
    pub options: FuzzOptions,
    pub agreements: u64,
    pub decomposable: u64,
    pub not_decomposable: u64,
    /// Sampled integer-line instances run alongside the action sweep.
    pub window_instances: u64,
    /// Windows where every condition was testable and passed, yet the
    /// linear solve is infeasible. Whether a long-enough window exactly
    /// characterizes decomposability on the whole line is open, so these
    /// are reported, not failed.
    pub window_findings: u64,
    pub outcome_hash: u64,
    pub disagreement: Option<Disagreement>,
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

fn fnv1a64(hash: u64, bytes: &[u8]) -> u64 {
    let mut h = hash;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01B3);
    }
    h
}

/// Random commuting action: translations on a random finite abelian group
/// or powers of one random permutation.
pub fn random_action(rng: &mut ChaCha8Rng, max_carrier: usize, max_gens: usize) -> Action {
    let gens = rng.gen_range(1..=max_gens.max(1));
    if rng.gen_bool(0.5) {
        let dims = rng.gen_range(1..=2usize);
        let mut moduli = Vec::with_capacity(dims);
        let mut carrier = 1usize;
        for _ in 0..dims {
            let limit = (max_carrier / carrier).clamp(1, 12) as u64;
            let m = rng.gen_range(1..=limit);
            carrier *= m as usize;
            moduli.push(m);
        }
        let periods: Vec<Vec<i64>> = (0..gens)
            .map(|_| {
                moduli
                    .iter()
                    .map(|&m| rng.gen_range(0..m as i64))
                    .collect()
            })
            .collect();
        perdec_core::abelian::finite_abelian_action(&moduli, &periods)
            .expect("generated moduli and periods are valid")
    } else {
        let m = rng.gen_range(2..=max_carrier.max(2));
        let mut base: Vec<usize> = (0..m).collect();
        for i in (1..m).rev() {
            base.swap(i, rng.gen_range(0..=i));
        }
        let generators: Vec<Vec<usize>> = (0..gens)
            .map(|_| {
                let exponent = rng.gen_range(0..m);
                let mut acc: Vec<usize> = (0..m).collect();
                for _ in 0..exponent {
                    acc = acc.iter().map(|&x| base[x]).collect();
                }
                acc
            })
            .collect();
        Action::validate(m, generators).expect("powers of one permutation commute")
    }
}

/// Random action plus a function: f is either a sum of invariant parts
/// (decomposable by construction), such a sum perturbed at one point, or
/// fully random.
pub fn generate_instance(
    rng: &mut ChaCha8Rng,
    max_carrier: usize,
    max_gens: usize,
) -> (Action, FnVec) {
    let action = random_action(rng, max_carrier, max_gens);
    let style = rng.gen_range(0..10u8);
    let f = if style < 5 {
        sum_of_invariant_parts(rng, &action)
    } else if style < 8 {
        let clean = sum_of_invariant_parts(rng, &action);
        let point = rng.gen_range(0..action.carrier_size());
        let delta = rat_int(rng.gen_range(1..=3i64));
        let mut values = clean.values().to_vec();
        values[point] += delta;
        FnVec::new(values)
    } else {
        FnVec::new(
            (0..action.carrier_size())
                .map(|_| rat_int(rng.gen_range(-3..=3i64)))
                .collect(),
        )
    };
    (action, f)
}

pub fn sum_of_invariant_parts(rng: &mut ChaCha8Rng, action: &Action) -> FnVec {
    let mut f = FnVec::zero(action.carrier_size());
    for j in 0..action.generator_count() {
        let cycles = action
            .orbit_partition(&[j])
            .expect("generator index in range");
        let values: Vec<_> = (0..cycles.orbits.len())
            .map(|_| rat_int(rng.gen_range(-4..=4i64)))
            .collect();
        let part = FnVec::new(
            (0..action.carrier_size())
                .map(|x| values[cycles.orbit_of[x]].clone())
                .collect(),
        );
        f = f.add(&part);
    }
    f
}

/// Runs all three routes on one instance and checks their agreement plus
/// every per-instance invariant. `Ok(true)` means decomposable.
pub fn evaluate_instance(action: &Action, f: &FnVec) -> Result<bool, String> {
    let checked =
        check_condition(action, f, CheckMode::Generator).map_err(|e| format!("checker: {e}"))?;
    let oracle =
        oracle_feasible(action, f, Ring::Rational).map_err(|e| format!("oracle: {e}"))?;
    let constructed = decompose(action, f).map_err(|e| format!("decompose: {e}"))?;

    match checked {
        CheckOutcome::Pass(_) => {
            let OracleOutcome::Feasible(oracle_decomposition) = oracle else {
                return Err("checker passed but the oracle is infeasible".into());
            };
            let DecomposeOutcome::Decomposed(decomposition) = constructed else {
                return Err("checker passed but the constructor failed".into());
            };
            for (label, d) in [
                ("oracle", &oracle_decomposition),
                ("constructive", &decomposition),
            ] {
                match verify_decomposition(action, f, d.parts())
                    .map_err(|e| format!("verify: {e}"))?
                {
                    Verification::Valid => {}
                    Verification::Invalid { reason, witness } => {
                        return Err(format!(
                            "{label} decomposition failed verification: {reason:?} at {witness}"
                        ));
                    }
                }
            }
            if f.is_multiple_of_unit(&BigInt::one()) {
                let all: Vec<usize> = (0..action.generator_count()).collect();
                for orbit in &action.full_orbit_partition().orbits {
                    let bound =
                        m_bound(action, orbit, &all).map_err(|e| format!("m_bound: {e}"))?;
                    for part in decomposition.parts() {
                        if !part.is_multiple_of_unit_on(&bound.value, orbit) {
                            return Err(format!(
                                "denominator bound {} violated on orbit {orbit:?}",
                                bound.value
                            ));
                        }
                    }
                }
            }
            Ok(true)
        }
        CheckOutcome::Violation(certificate) => {
            if !matches!(oracle, OracleOutcome::Infeasible) {
                return Err("checker found a violation but the oracle is feasible".into());
            }
            if !matches!(constructed, DecomposeOutcome::Violation(_)) {
                return Err("checker found a violation but the constructor succeeded".into());
            }
            if !certificate
                .verify(action, f)
                .map_err(|e| format!("certificate: {e}"))?
            {
                return Err("violation certificate failed re-verification".into());
            }
            Ok(false)
        }
    }
}

fn random_window(rng: &mut ChaCha8Rng) -> WindowInstance {
    let n = rng.gen_range(1..=3usize);
    let periods: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=6u64)).collect();
    let window = rng.gen_range(4..=24usize);
    let values = if rng.gen_bool(0.5) {
        let parts: Vec<Vec<_>> = periods
            .iter()
            .map(|&p| (0..p).map(|_| rat_int(rng.gen_range(-3..=3i64))).collect())
            .collect();
        perdec_core::abelian::window_values_from_parts(&parts, window)
    } else {
        (0..window)
            .map(|_| rat_int(rng.gen_range(-3..=3i64)))
            .collect()
    };
    WindowInstance::new(periods, window, values).expect("generated window is well-formed")
}

/// Window invariants: a violated condition refutes rational feasibility, and
/// integer feasibility implies rational feasibility. Returns whether the
/// instance is a pass-all-testable-yet-infeasible finding.
fn evaluate_window(instance: &WindowInstance) -> Result<(bool, bool), String> {
    let verdict = check_window(instance).map_err(|e| format!("check_window: {e}"))?;
    let rational = matches!(
        solve_window(instance, Ring::Rational).map_err(|e| format!("solve rational: {e}"))?,
        WindowOutcome::Feasible(_)
    );
    let integer_feasible = if instance.values.iter().all(|v| v.denom().is_one()) {
        matches!(
            solve_window(instance, Ring::Integer).map_err(|e| format!("solve integer: {e}"))?,
            WindowOutcome::Feasible(_)
        )
    } else {
        false
    };
    if integer_feasible && !rational {
        return Err("integer-feasible window is rationally infeasible".into());
    }
    match verdict {
        WindowVerdict::Violation { .. } => {
            if rational {
                return Err("violated window condition but the solve is feasible".into());
            }
            Ok((false, false))
        }
        WindowVerdict::Pass { untestable } => {
            let finding = untestable.is_empty() && !rational;
            Ok((rational, finding))
        }
    }
}

fn to_reproducer(action: &Action, f: &FnVec) -> Instance {
    Instance::FiniteAction {
        size: action.carrier_size(),
        perms: (0..action.generator_count())
            .map(|j| action.generator_perm(j).to_vec())
            .collect(),
        f: f.values().iter().map(|v| JsonRat(v.clone())).collect(),
    }
}

/// Shrinks a failing instance by dropping generators while the failure
/// persists.
fn minimize<F>(action: &Action, f: &FnVec, evaluate: &F) -> (Action, FnVec)
where
    F: Fn(&Action, &FnVec) -> Result<bool, String>,
{
    let mut action = action.clone();
    let f = f.clone();
    'outer: loop {
        for drop in 0..action.generator_count() {
            let remaining: Vec<Vec<usize>> = (0..action.generator_count())
                .filter(|&j| j != drop)
                .map(|j| action.generator_perm(j).to_vec())
                .collect();
            let Ok(candidate) = Action::validate(action.carrier_size(), remaining) else {
                continue;
            };
            if evaluate(&candidate, &f).is_err() {
                action = candidate;
                continue 'outer;
            }
        }
        return (action, f);
    }
}

pub fn run_fuzz(options: &FuzzOptions) -> FuzzResult {
    run_fuzz_with(options, evaluate_instance)
}

/// Harness core with a pluggable evaluator, used by tests to confirm that a
/// wrong verdict is caught and reported with a reproducer.
#[doc(hidden)]
pub fn run_fuzz_with<F>(options: &FuzzOptions, evaluate: F) -> FuzzResult
where
    F: Fn(&Action, &FnVec) -> Result<bool, String>,
{
    let mut agreements = 0u64;
    let mut decomposable = 0u64;
    let mut not_decomposable = 0u64;
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    let fail = |agreements, decomposable, not_decomposable, hash, seed, reproducer, detail| {
        FuzzResult {
            options: options.clone(),
            agreements,
            decomposable,
            not_decomposable,
            window_instances: 0,
            window_findings: 0,
            outcome_hash: hash,
            disagreement: Some(Disagreement {
                instance_seed: seed,
                reproducer,
                detail,
            }),
        }
    };
    for index in 0..options.count {
        let instance_seed = splitmix64(options.seed.wrapping_add(index));
        let mut rng = ChaCha8Rng::seed_from_u64(instance_seed);
        let (action, f) = generate_instance(&mut rng, options.max_carrier, options.max_gens);
        match evaluate(&action, &f) {
            Ok(is_decomposable) => {
                agreements += 1;
                if is_decomposable {
                    decomposable += 1;
                } else {
                    not_decomposable += 1;
                }
                hash = fnv1a64(
                    hash,
                    format!(
                        "{instance_seed}:{}",
                        if is_decomposable { "D" } else { "N" }
                    )
                    .as_bytes(),
                );
            }
            Err(detail) => {
                let (small_action, small_f) = minimize(&action, &f, &evaluate);
                return fail(
                    agreements,
                    decomposable,
                    not_decomposable,
                    hash,
                    instance_seed,
                    to_reproducer(&small_action, &small_f),
                    detail,
                );
            }
        }
    }

    // Window phase: one sampled integer-line instance per five action
    // instances, with its own derived seed stream.
    let window_count = options.count / 5;
    let mut window_findings = 0u64;
    for index in 0..window_count {
        let instance_seed = splitmix64((options.seed ^ 0x7769_6e64_6f77).wrapping_add(index));
        let mut rng = ChaCha8Rng::seed_from_u64(instance_seed);
        let window = random_window(&mut rng);
        match evaluate_window(&window) {
            Ok((feasible, finding)) => {
                if finding {
                    window_findings += 1;
                }
                hash = fnv1a64(
                    hash,
                    format!(
                        "{instance_seed}:w{}{}",
                        if feasible { "F" } else { "I" },
                        if finding { "!" } else { "" }
                    )
                    .as_bytes(),
                );
            }
            Err(detail) => {
                let reproducer = Instance::ZWindow {
                    periods: window.periods.clone(),
                    window: window.window,
                    f: window.values.iter().map(|v| JsonRat(v.clone())).collect(),
                };
                return fail(
                    agreements,
                    decomposable,
                    not_decomposable,
                    hash,
                    instance_seed,
                    reproducer,
                    detail,
                );
            }
        }
    }

    FuzzResult {
        options: options.clone(),
        agreements,
        decomposable,
        not_decomposable,
        window_instances: window_count,
        window_findings,
        outcome_hash: hash,
        disagreement: None,
    }
}

pub fn fuzz_report(result: &FuzzResult) -> Report {
    let base = |verdict| {
        Report::new(verdict)
            .with_diagnostic("seed", json!(result.options.seed))
            .with_diagnostic("count", json!(result.options.count))
            .with_diagnostic("max_carrier", json!(result.options.max_carrier))
            .with_diagnostic("max_gens", json!(result.options.max_gens))
            .with_diagnostic("agreements", json!(result.agreements))
            .with_diagnostic("decomposable", json!(result.decomposable))
            .with_diagnostic("not_decomposable", json!(result.not_decomposable))
            .with_diagnostic("window_instances", json!(result.window_instances))
            .with_diagnostic("window_findings", json!(result.window_findings))
            .with_diagnostic(
                "outcome_hash",
                json!(format!("{:016x}", result.outcome_hash)),
            )
    };
    match &result.disagreement {
        None => base(Verdict::Valid),
        Some(disagreement) => base(Verdict::Error)
            .with_diagnostic("kind", json!("internal"))
            .with_diagnostic("message", json!(disagreement.detail))
            .with_diagnostic("instance_seed", json!(disagreement.instance_seed))
            .with_diagnostic(
                "reproducer",
                serde_json::to_value(&disagreement.reproducer)
                    .expect("reproducer serializes"),
            ),
    }
}
