//! Difference operators and the orbit-wise decomposability check.
//!
//! The check runs over every orbit of the full group, every set partition of
//! the generator indices, and (per mode) either the canonical generator of
//! each block intersection or all of its elements. A failure is returned as a
//! re-verifiable [`ViolationCertificate`]; the scan order is fixed so the
//! first certificate is deterministic.

use crate::action::{
    enumerate_set_partitions, Action, ActionError, GroupElement, SetPartition,
    DEFAULT_PARTITION_CAP,
};
use crate::numeric::Rat;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConditionError {
    #[error("function has {actual} values, carrier has {expected} points")]
    ShapeMismatch { expected: usize, actual: usize },
    #[error(transparent)]
    Action(#[from] ActionError),
}

/// A carrier-indexed vector of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FnVec {
    values: Vec<Rat>,
}

impl FnVec {
    pub fn new(values: Vec<Rat>) -> Self {
        Self { values }
    }

    pub fn zero(len: usize) -> Self {
        Self {
            values: vec![Rat::zero(); len],
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, point: usize) -> &Rat {
        &self.values[point]
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn add(&self, other: &FnVec) -> FnVec {
        FnVec {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &FnVec) -> FnVec {
        FnVec {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, factor: &Rat) -> FnVec {
        FnVec {
            values: self.values.iter().map(|v| v * factor).collect(),
        }
    }

    /// True when every value is an integer multiple of `1/denominator`.
    pub fn is_multiple_of_unit(&self, denominator: &num_bigint::BigInt) -> bool {
        self.values
            .iter()
            .all(|v| (v * Rat::from_integer(denominator.clone())).denom() == &num_bigint::BigInt::from(1))
    }

    /// Same as [`is_multiple_of_unit`](Self::is_multiple_of_unit) but only at
    /// the given points (denominator bounds are per orbit).
    pub fn is_multiple_of_unit_on(&self, denominator: &num_bigint::BigInt, points: &[usize]) -> bool {
        points.iter().all(|&x| {
            (&self.values[x] * Rat::from_integer(denominator.clone())).denom()
                == &num_bigint::BigInt::from(1)
        })
    }
}

/// A certificate that the decomposability condition fails: re-evaluating the
/// iterated difference of `chosen` at `witness` reproduces `value != 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViolationCertificate {
    pub orbit_id: usize,
    pub partition: SetPartition,
    pub chosen: Vec<GroupElement>,
    pub witness: usize,
    pub value: Rat,
}

impl ViolationCertificate {
    /// Recomputes the iterated difference at the witness point.
    pub fn verify(&self, action: &Action, f: &FnVec) -> Result<bool, ConditionError> {
        let diff = iterated_difference(action, &self.chosen, f)?;
        Ok(!self.value.is_zero() && *diff.value(self.witness) == self.value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    /// One canonical generator of each block intersection (sufficient).
    Generator,
    /// Every element of each block intersection.
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckOutcome {
    Pass(CheckStats),
    Violation(ViolationCertificate),
}

/// Deterministic counters describing a completed check.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckStats {
    pub orbits: usize,
    pub partitions: usize,
    pub chains_evaluated: u64,
    pub chains_skipped_trivial: u64,
}

/// `result(x) = f(S(x)) - f(x)`.
pub fn difference(action: &Action, s: &GroupElement, f: &FnVec) -> Result<FnVec, ConditionError> {
    check_shape(action, f)?;
    if s.perm().len() != action.carrier_size() {
        return Err(ConditionError::ShapeMismatch {
            expected: action.carrier_size(),
            actual: s.perm().len(),
        });
    }
    Ok(FnVec {
        values: (0..action.carrier_size())
            .map(|x| f.value(s.apply(x)) - f.value(x))
            .collect(),
    })
}

/// Left fold of [`difference`] over the operator list; the operators commute,
/// so the result does not depend on their order.
pub fn iterated_difference(
    action: &Action,
    elements: &[GroupElement],
    f: &FnVec,
) -> Result<FnVec, ConditionError> {
    check_shape(action, f)?;
    let mut current = f.clone();
    for element in elements.iter().rev() {
        current = difference(action, element, &current)?;
    }
    Ok(current)
}

fn check_shape(action: &Action, f: &FnVec) -> Result<(), ConditionError> {
    if f.len() != action.carrier_size() {
        return Err(ConditionError::ShapeMismatch {
            expected: action.carrier_size(),
            actual: f.len(),
        });
    }
    Ok(())
}

/// Per-orbit view with local indices: permutations and values restricted to
/// the orbit's (sorted) points.
struct OrbitView {
    points: Vec<usize>,
    values: Vec<Rat>,
}

impl OrbitView {
    fn new(orbit: &[usize], f: &FnVec) -> Self {
        Self {
            points: orbit.to_vec(),
            values: orbit.iter().map(|&x| f.value(x).clone()).collect(),
        }
    }

    fn difference(&self, local_perm: &[usize], values: &[Rat]) -> Vec<Rat> {
        (0..values.len())
            .map(|i| &values[local_perm[i]] - &values[i])
            .collect()
    }

    /// Evaluates the chain on the orbit and returns the first nonzero point
    /// (local scan order = ascending carrier point).
    fn first_nonzero_of_chain(
        &self,
        action: &Action,
        chain: &[&GroupElement],
    ) -> Option<(usize, Rat)> {
        let mut current = self.values.clone();
        for element in chain.iter().rev() {
            let local = action.restrict_perm(element.perm(), &self.points);
            current = self.difference(&local, &current);
        }
        current
            .iter()
            .position(|v| !v.is_zero())
            .map(|i| (self.points[i], current[i].clone()))
    }
}

/// Checks the decomposability condition for `f` under `action`.
///
/// Scan order: orbits by minimal point, partitions in restricted-growth
/// order, block-element choices by ascending exponent, witnesses by point
/// index. Chains containing an identity operator are identically zero and
/// are skipped.
pub fn check_condition(
    action: &Action,
    f: &FnVec,
    mode: CheckMode,
) -> Result<CheckOutcome, ConditionError> {
    check_shape(action, f)?;
    let n = action.generator_count();
    let partitions = enumerate_set_partitions(n, DEFAULT_PARTITION_CAP)?;
    let orbits = action.full_orbit_partition();
    let mut stats = CheckStats {
        orbits: orbits.orbits.len(),
        partitions: partitions.len(),
        ..CheckStats::default()
    };

    for (orbit_id, orbit) in orbits.orbits.iter().enumerate() {
        let view = OrbitView::new(orbit, f);
        for partition in &partitions {
            if partition.blocks.is_empty() {
                // No generators: the empty chain is f itself, which must
                // vanish on the orbit.
                stats.chains_evaluated += 1;
                if let Some((witness, value)) = view.first_nonzero_of_chain(action, &[]) {
                    return Ok(CheckOutcome::Violation(ViolationCertificate {
                        orbit_id,
                        partition: partition.clone(),
                        chosen: vec![],
                        witness,
                        value,
                    }));
                }
                continue;
            }
            let canonical: Vec<GroupElement> = partition
                .blocks
                .iter()
                .map(|block| action.block_lcm_generator(orbit, block))
                .collect::<Result<_, _>>()?;

            match mode {
                CheckMode::Generator => {
                    if canonical.iter().any(|s| s.is_identity_on(orbit)) {
                        stats.chains_skipped_trivial += 1;
                        continue;
                    }
                    stats.chains_evaluated += 1;
                    let chain: Vec<&GroupElement> = canonical.iter().collect();
                    if let Some((witness, value)) = view.first_nonzero_of_chain(action, &chain) {
                        return Ok(CheckOutcome::Violation(ViolationCertificate {
                            orbit_id,
                            partition: partition.clone(),
                            chosen: canonical,
                            witness,
                            value,
                        }));
                    }
                }
                CheckMode::Exhaustive => {
                    // The intersection is cyclic: enumerate it as the powers
                    // of the canonical generator on this orbit.
                    let mut block_orders: Vec<u64> = Vec::with_capacity(canonical.len());
                    for s in &canonical {
                        block_orders.push(action.restricted_order(s.perm(), orbit)?);
                    }
                    if block_orders.contains(&1) {
                        // Some block intersection is trivial: every choice
                        // there is the identity.
                        stats.chains_skipped_trivial += 1;
                        continue;
                    }
                    // Odometer over nonidentity powers 1..order per block.
                    let mut exponents: Vec<u64> = vec![1; canonical.len()];
                    'tuples: loop {
                        let chain_owned: Vec<GroupElement> = canonical
                            .iter()
                            .zip(&exponents)
                            .map(|(s, &e)| action.power(s, e as i64))
                            .collect();
                        stats.chains_evaluated += 1;
                        let chain: Vec<&GroupElement> = chain_owned.iter().collect();
                        if let Some((witness, value)) = view.first_nonzero_of_chain(action, &chain)
                        {
                            return Ok(CheckOutcome::Violation(ViolationCertificate {
                                orbit_id,
                                partition: partition.clone(),
                                chosen: chain_owned,
                                witness,
                                value,
                            }));
                        }
                        for slot in (0..exponents.len()).rev() {
                            exponents[slot] += 1;
                            if exponents[slot] < block_orders[slot] {
                                continue 'tuples;
                            }
                            exponents[slot] = 1;
                        }
                        break;
                    }
                }
            }
        }
    }
    Ok(CheckOutcome::Pass(stats))
}
