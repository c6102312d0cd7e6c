//! Constructive decomposition of a function into generator-invariant parts,
//! plus the machinery around it: the two-transformation lift, an independent
//! linear-algebra oracle, the denominator bound, and recombination of several
//! decompositions through a Bezout identity.

use crate::action::{Action, ActionError, GroupElement, OrbitPartition};
use crate::condition::{
    check_condition, difference, CheckMode, CheckOutcome, ConditionError, FnVec,
    ViolationCertificate,
};
use crate::numeric::{
    gauss_solve, hnf_solve_integer, IntegerSolution, LinearSolution, NumericError, Rat,
    RatMatrixSystem,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecomposeError {
    #[error("expected {expected} values/parts, got {actual}")]
    ShapeMismatch { expected: usize, actual: usize },
    #[error("value at point {point} is not an integer")]
    NonIntegerInput { point: usize },
    #[error("plan and decomposition list do not match")]
    PlanMismatch,
    #[error("Bezout coefficients do not combine to unity")]
    NotUnityCombination,
    #[error("internal invariant failure: {detail}")]
    InternalInvariantFailure { detail: String },
    #[error(transparent)]
    Condition(#[from] ConditionError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LiftError {
    #[error("right-hand side is not invariant under T (witness point {witness})")]
    NotTPeriodic { witness: usize },
    #[error("cycle through points {cycle_points:?} has nonzero sum {sum}")]
    PreconditionViolated { cycle_points: Vec<usize>, sum: Rat },
    #[error("expected {expected} values, got {actual}")]
    ShapeMismatch { expected: usize, actual: usize },
}

/// An ordered list of parts, one per generator; part `j` is invariant under
/// generator `j` and the parts sum pointwise to the decomposed function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    parts: Vec<FnVec>,
}

impl Decomposition {
    pub fn new(parts: Vec<FnVec>) -> Self {
        Self { parts }
    }

    pub fn parts(&self) -> &[FnVec] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<FnVec> {
        self.parts
    }

    pub fn sum(&self, len: usize) -> FnVec {
        self.parts
            .iter()
            .fold(FnVec::zero(len), |acc, p| acc.add(p))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecomposeOutcome {
    Decomposed(Decomposition),
    Violation(ViolationCertificate),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ring {
    Rational,
    Integer,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleOutcome {
    Feasible(Decomposition),
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verification {
    Valid,
    Invalid { reason: InvalidReason, witness: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvalidReason {
    PartNotInvariant { part: usize },
    SumMismatch,
}

/// Denominator bound for the constructive algorithm on one orbit: the
/// product of the restricted orders of all generators except the last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MBound {
    pub value: BigInt,
    pub trace: Vec<(usize, u64)>,
}

/// Multipliers and Bezout coefficients with `sum_i d_i * m_i = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BezoutPlan {
    pub multipliers: Vec<BigInt>,
    pub coefficients: Vec<BigInt>,
}

fn internal<S: Into<String>>(detail: S) -> DecomposeError {
    DecomposeError::InternalInvariantFailure {
        detail: detail.into(),
    }
}

/// Solves `Δ_T g = 0`, `Δ_S g = G` for commuting `T`, `S` and `T`-invariant
/// `G`, by passing to the quotient of `T`-cycles.
///
/// On the quotient, `S` induces a permutation; each of its cycles must have
/// zero sum of quotient values, otherwise no solution exists and the
/// offending cycle is reported. The solution fixes the value at each cycle's
/// representative (minimal point) and extends by partial sums.
pub fn solve_lift(
    action: &Action,
    t: &GroupElement,
    s: &GroupElement,
    g_rhs: &FnVec,
) -> Result<FnVec, LiftError> {
    let m = action.carrier_size();
    if g_rhs.len() != m {
        return Err(LiftError::ShapeMismatch {
            expected: m,
            actual: g_rhs.len(),
        });
    }
    if let Some(witness) = (0..m).find(|&x| g_rhs.value(t.apply(x)) != g_rhs.value(x)) {
        return Err(LiftError::NotTPeriodic { witness });
    }

    // Quotient by the cycles of T, ids ordered by minimal point.
    let mut quotient_of = vec![usize::MAX; m];
    let mut reps: Vec<usize> = Vec::new();
    for start in 0..m {
        if quotient_of[start] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(start);
        let mut x = start;
        while quotient_of[x] == usize::MAX {
            quotient_of[x] = id;
            x = t.apply(x);
        }
    }
    let class_count = reps.len();
    let quotient_values: Vec<Rat> = reps.iter().map(|&x| g_rhs.value(x).clone()).collect();
    let induced: Vec<usize> = reps.iter().map(|&x| quotient_of[s.apply(x)]).collect();

    let mut lifted = vec![Rat::zero(); class_count];
    let mut visited = vec![false; class_count];
    for start in 0..class_count {
        if visited[start] {
            continue;
        }
        let mut cycle = vec![start];
        visited[start] = true;
        let mut q = induced[start];
        while q != start {
            visited[q] = true;
            cycle.push(q);
            q = induced[q];
        }
        let sum: Rat = cycle
            .iter()
            .map(|&q| quotient_values[q].clone())
            .fold(Rat::zero(), |a, b| a + b);
        if !sum.is_zero() {
            return Err(LiftError::PreconditionViolated {
                cycle_points: cycle.iter().map(|&q| reps[q]).collect(),
                sum,
            });
        }
        // g(rep) = G(rep), then g(S q) = g(q) + G(q) along the cycle.
        lifted[start] = quotient_values[start].clone();
        for window in cycle.windows(2) {
            lifted[window[1]] = &lifted[window[0]] + &quotient_values[window[0]];
        }
    }

    Ok(FnVec::new(
        (0..m).map(|x| lifted[quotient_of[x]].clone()).collect(),
    ))
}

fn average_over_first(
    action: &Action,
    t1: &GroupElement,
    orbits: &OrbitPartition,
    orders: &[u64],
    g: &FnVec,
) -> FnVec {
    let mut values = vec![Rat::zero(); action.carrier_size()];
    for (orbit_id, orbit) in orbits.orbits.iter().enumerate() {
        let order = orders[orbit_id];
        let divisor = Rat::from_integer(BigInt::from(order));
        for &x in orbit {
            let mut sum = Rat::zero();
            let mut y = x;
            for _ in 0..order {
                sum += g.value(y);
                y = t1.apply(y);
            }
            values[x] = sum / &divisor;
        }
    }
    FnVec::new(values)
}

/// Inductive construction: peel off the first generator, decompose its
/// difference under the remaining ones, average each sub-part over the first
/// generator's cycles, lift the corrections, and recover the first part as
/// the remainder. Works per orbit of the current generator subset.
fn decompose_rec(action: &Action, gens: &[usize], f: &FnVec) -> Result<Vec<FnVec>, DecomposeError> {
    if gens.is_empty() {
        if f.is_zero() {
            return Ok(vec![]);
        }
        return Err(internal("nonzero function with no generators"));
    }
    let t1 = action.generator_element(gens[0]);
    if gens.len() == 1 {
        if !difference(action, &t1, f)?.is_zero() {
            return Err(internal(
                "single-generator case reached with a non-invariant function",
            ));
        }
        return Ok(vec![f.clone()]);
    }
    let orbits = action.orbit_partition(gens)?;
    let orders: Vec<u64> = orbits
        .orbits
        .iter()
        .map(|orbit| action.restricted_order(t1.perm(), orbit))
        .collect::<Result<_, _>>()?;

    let g = difference(action, &t1, f)?;
    let sub_parts = decompose_rec(action, &gens[1..], &g)?;

    let mut parts = vec![FnVec::zero(f.len()); gens.len()];
    let mut rest = FnVec::zero(f.len());
    for (offset, g_j) in sub_parts.iter().enumerate() {
        let averaged = average_over_first(action, &t1, &orbits, &orders, g_j);
        let correction = g_j.sub(&averaged);
        let t_j = action.generator_element(gens[offset + 1]);
        let f_j = solve_lift(action, &t_j, &t1, &correction)
            .map_err(|e| internal(format!("lift failed after a passing check: {e}")))?;
        rest = rest.add(&f_j);
        parts[offset + 1] = f_j;
    }
    parts[0] = f.sub(&rest);
    if !difference(action, &t1, &parts[0])?.is_zero() {
        return Err(internal("leading part is not invariant"));
    }
    Ok(parts)
}

/// Checks the decomposability condition first; on a pass, constructs a
/// decomposition and verifies it, otherwise returns the certificate.
pub fn decompose(action: &Action, f: &FnVec) -> Result<DecomposeOutcome, DecomposeError> {
    match check_condition(action, f, CheckMode::Generator)? {
        CheckOutcome::Violation(certificate) => Ok(DecomposeOutcome::Violation(certificate)),
        CheckOutcome::Pass(_) => {
            let gens: Vec<usize> = (0..action.generator_count()).collect();
            let parts = decompose_rec(action, &gens, f)?;
            match verify_decomposition(action, f, &parts)? {
                Verification::Valid => Ok(DecomposeOutcome::Decomposed(Decomposition { parts })),
                Verification::Invalid { reason, witness } => Err(internal(format!(
                    "constructed decomposition failed verification: {reason:?} at {witness}"
                ))),
            }
        }
    }
}

/// Valid iff part `j` is invariant under generator `j` for every `j` and the
/// parts sum pointwise to `f`.
pub fn verify_decomposition(
    action: &Action,
    f: &FnVec,
    parts: &[FnVec],
) -> Result<Verification, DecomposeError> {
    let m = action.carrier_size();
    if f.len() != m {
        return Err(DecomposeError::ShapeMismatch {
            expected: m,
            actual: f.len(),
        });
    }
    if parts.len() != action.generator_count() {
        return Err(DecomposeError::ShapeMismatch {
            expected: action.generator_count(),
            actual: parts.len(),
        });
    }
    for (j, part) in parts.iter().enumerate() {
        if part.len() != m {
            return Err(DecomposeError::ShapeMismatch {
                expected: m,
                actual: part.len(),
            });
        }
        let perm = action.generator_perm(j);
        if let Some(witness) = (0..m).find(|&x| part.value(perm[x]) != part.value(x)) {
            return Ok(Verification::Invalid {
                reason: InvalidReason::PartNotInvariant { part: j },
                witness,
            });
        }
    }
    for x in 0..m {
        let total: Rat = parts
            .iter()
            .map(|p| p.value(x).clone())
            .fold(Rat::zero(), |a, b| a + b);
        if total != *f.value(x) {
            return Ok(Verification::Invalid {
                reason: InvalidReason::SumMismatch,
                witness: x,
            });
        }
    }
    Ok(Verification::Valid)
}

/// Independent feasibility oracle: one unknown per generator per cycle of
/// that generator, one equation per carrier point, solved by exact Gaussian
/// elimination (rational) or Hermite normal form (integer).
pub fn oracle_feasible(
    action: &Action,
    f: &FnVec,
    ring: Ring,
) -> Result<OracleOutcome, DecomposeError> {
    let m = action.carrier_size();
    if f.len() != m {
        return Err(DecomposeError::ShapeMismatch {
            expected: m,
            actual: f.len(),
        });
    }
    if ring == Ring::Integer {
        if let Some(point) = (0..m).find(|&x| !f.value(x).denom().is_one()) {
            return Err(DecomposeError::NonIntegerInput { point });
        }
    }
    let n = action.generator_count();
    if n == 0 {
        return Ok(if f.is_zero() {
            OracleOutcome::Feasible(Decomposition { parts: vec![] })
        } else {
            OracleOutcome::Infeasible
        });
    }

    let cycles: Vec<OrbitPartition> = (0..n)
        .map(|j| action.orbit_partition(&[j]))
        .collect::<Result<_, _>>()?;
    let mut offsets = vec![0usize; n];
    let mut total = 0usize;
    for j in 0..n {
        offsets[j] = total;
        total += cycles[j].orbits.len();
    }

    let mut coeffs = vec![vec![Rat::zero(); total]; m];
    let mut rhs = vec![Rat::zero(); m];
    for x in 0..m {
        for j in 0..n {
            coeffs[x][offsets[j] + cycles[j].orbit_of[x]] += Rat::one();
        }
        rhs[x] = f.value(x).clone();
    }
    let system = RatMatrixSystem::new(coeffs, rhs)?;

    let solution: Option<Vec<Rat>> = match ring {
        Ring::Rational => match gauss_solve(&system) {
            LinearSolution::Feasible(sol) => Some(sol),
            LinearSolution::Infeasible => None,
        },
        Ring::Integer => match hnf_solve_integer(&system)? {
            IntegerSolution::Feasible(sol) => {
                Some(sol.into_iter().map(Rat::from_integer).collect())
            }
            IntegerSolution::Infeasible => None,
        },
    };
    let Some(solution) = solution else {
        return Ok(OracleOutcome::Infeasible);
    };

    let parts: Vec<FnVec> = (0..n)
        .map(|j| {
            FnVec::new(
                (0..m)
                    .map(|x| solution[offsets[j] + cycles[j].orbit_of[x]].clone())
                    .collect(),
            )
        })
        .collect();
    match verify_decomposition(action, f, &parts)? {
        Verification::Valid => Ok(OracleOutcome::Feasible(Decomposition { parts })),
        Verification::Invalid { reason, witness } => Err(internal(format!(
            "oracle witness failed verification: {reason:?} at {witness}"
        ))),
    }
}

/// Denominator bound on one orbit of the full group for the given generator
/// order: the product of the restricted orders of all generators but the
/// last, matching the recursion of the constructive algorithm.
pub fn m_bound(
    action: &Action,
    orbit: &[usize],
    gens: &[usize],
) -> Result<MBound, DecomposeError> {
    let mut value = BigInt::one();
    let mut trace = Vec::new();
    if !gens.is_empty() {
        for &g in &gens[..gens.len() - 1] {
            let order = action.restricted_order(action.generator_perm(g), orbit)?;
            value *= BigInt::from(order);
            trace.push((g, order));
        }
    }
    Ok(MBound { value, trace })
}

/// Combines several decompositions of the same function: part `j` of the
/// result is `sum_i d_i m_i * (part j of decomposition i)`. When every
/// `m_i * part` is integer-valued the result is integer-valued.
pub fn bezout_combine(
    decompositions: &[Decomposition],
    plan: &BezoutPlan,
) -> Result<Decomposition, DecomposeError> {
    if plan.multipliers.len() != decompositions.len()
        || plan.coefficients.len() != decompositions.len()
        || plan.multipliers.iter().any(|m| m.is_zero())
    {
        return Err(DecomposeError::PlanMismatch);
    }
    let unity: BigInt = plan
        .multipliers
        .iter()
        .zip(&plan.coefficients)
        .map(|(m, d)| m * d)
        .sum();
    if !unity.is_one() {
        return Err(DecomposeError::NotUnityCombination);
    }
    let first = decompositions
        .first()
        .ok_or(DecomposeError::NotUnityCombination)?;
    let part_count = first.parts.len();
    let len = first.parts.first().map_or(0, FnVec::len);
    for d in decompositions {
        if d.parts.len() != part_count || d.parts.iter().any(|p| p.len() != len) {
            return Err(DecomposeError::PlanMismatch);
        }
    }

    let mut parts = vec![FnVec::zero(len); part_count];
    for (i, decomposition) in decompositions.iter().enumerate() {
        let weight = Rat::from_integer(&plan.coefficients[i] * &plan.multipliers[i]);
        for (j, part) in decomposition.parts.iter().enumerate() {
            parts[j] = parts[j].add(&part.scale(&weight));
        }
    }
    Ok(Decomposition { parts })
}
