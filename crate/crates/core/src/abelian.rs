//! Translation-system front ends: finite abelian groups compiled to actions,
//! commensurability classes and least common multiples for torsion-free
//! period vectors, generation of the nontrivial difference conditions for
//! symbolic real periods, and a sampled integer-line window mode.
//!
//! Period vectors are rational coordinates over an implicit basis of reals
//! that is linearly independent over the rationals; two periods are
//! commensurable exactly when the vectors are parallel, which makes the
//! real-line statements finitely decidable.

use crate::action::{enumerate_set_partitions, Action, ActionError, SetPartition, DEFAULT_PARTITION_CAP};
use crate::condition::FnVec;
use crate::numeric::{
    gauss_solve, hnf_solve_integer, rational_lcm, IntegerSolution, LinearSolution, NumericError,
    Rat, RatMatrixSystem,
};
use crate::decompose::Ring;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Guard on the carrier size of compiled finite abelian actions.
pub const MAX_CARRIER: usize = 1 << 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AbelianError {
    #[error("modulus {value} at position {index} is invalid")]
    BadModulus { index: usize, value: u64 },
    #[error("carrier would exceed {MAX_CARRIER} points")]
    CarrierTooLarge,
    #[error("period {index} has {actual} coordinates, expected {expected}")]
    ShapeMismatch {
        index: usize,
        expected: usize,
        actual: usize,
    },
    #[error("period {index} is zero")]
    ZeroPeriod { index: usize },
    #[error("period {index} is not parallel to the first period")]
    NotParallel { index: usize },
    #[error("no periods given")]
    EmptyInput,
    #[error("window instance is malformed: {reason}")]
    BadWindow { reason: String },
    #[error("value at window point {point} is not an integer")]
    NonIntegerInput { point: usize },
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// Rational coordinate vector of a period over a fixed rationally
/// independent basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PeriodVector {
    coords: Vec<Rat>,
}

impl PeriodVector {
    pub fn new(coords: Vec<Rat>) -> Self {
        Self { coords }
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, factor: &Rat) -> PeriodVector {
        PeriodVector {
            coords: self.coords.iter().map(|c| c * factor).collect(),
        }
    }

    /// The primitive integer vector in the same direction, sign-normalized
    /// so its first nonzero coordinate is positive.
    pub fn primitive(&self) -> Option<PeriodVector> {
        if self.is_zero() {
            return None;
        }
        let denom_lcm = self
            .coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coords
            .iter()
            .map(|c| c.numer() * (&denom_lcm / c.denom()))
            .collect();
        let content = ints
            .iter()
            .fold(BigInt::zero(), |acc, v| acc.gcd(v));
        let mut scaled: Vec<BigInt> = ints.iter().map(|v| v / &content).collect();
        if scaled
            .iter()
            .find(|v| !v.is_zero())
            .map(|v| v.is_negative())
            .unwrap_or(false)
        {
            for v in &mut scaled {
                *v = -std::mem::take(v);
            }
        }
        Some(PeriodVector {
            coords: scaled.into_iter().map(Rat::from_integer).collect(),
        })
    }

    /// The rational `q` with `self = q * other`, when it exists.
    pub fn ratio_to(&self, other: &PeriodVector) -> Option<Rat> {
        if self.dim() != other.dim() || other.is_zero() {
            return None;
        }
        let pivot = other.coords.iter().position(|c| !c.is_zero())?;
        let q = &self.coords[pivot] / &other.coords[pivot];
        let matches = self
            .coords
            .iter()
            .zip(&other.coords)
            .all(|(a, b)| *a == b * &q);
        if matches {
            Some(q)
        } else {
            None
        }
    }
}

/// Partition of period indices into commensurability classes, with one
/// primitive direction per class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommensurabilityClasses {
    pub classes: Vec<Vec<usize>>,
    pub primitives: Vec<PeriodVector>,
}

/// One surviving condition: a partition whose blocks are all internally
/// commensurable, with the per-block least common multiples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionEntry {
    pub partition: SetPartition,
    pub lcms: Vec<PeriodVector>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionList {
    pub entries: Vec<ConditionEntry>,
    pub trivial_count: usize,
}

/// Compiles translations on `Z_{m_1} x ... x Z_{m_d}` (row-major carrier
/// order) into a validated action with one generator per period.
pub fn finite_abelian_action(
    moduli: &[u64],
    periods: &[Vec<i64>],
) -> Result<Action, AbelianError> {
    if moduli.is_empty() {
        return Err(AbelianError::BadModulus { index: 0, value: 0 });
    }
    let mut carrier: usize = 1;
    for (index, &m) in moduli.iter().enumerate() {
        if m == 0 {
            return Err(AbelianError::BadModulus { index, value: m });
        }
        carrier = carrier
            .checked_mul(m as usize)
            .filter(|&c| c <= MAX_CARRIER)
            .ok_or(AbelianError::CarrierTooLarge)?;
    }
    let dims = moduli.len();
    let mut generators = Vec::with_capacity(periods.len());
    for (index, period) in periods.iter().enumerate() {
        if period.len() != dims {
            return Err(AbelianError::ShapeMismatch {
                index,
                expected: dims,
                actual: period.len(),
            });
        }
        let reduced: Vec<u64> = period
            .iter()
            .zip(moduli)
            .map(|(&p, &m)| p.rem_euclid(m as i64) as u64)
            .collect();
        let mut perm = vec![0usize; carrier];
        for (point, image) in perm.iter_mut().enumerate() {
            // Decode the row-major index, translate, re-encode.
            let mut rest = point;
            let mut coords = vec![0u64; dims];
            for axis in (0..dims).rev() {
                coords[axis] = (rest % moduli[axis] as usize) as u64;
                rest /= moduli[axis] as usize;
            }
            let mut encoded = 0usize;
            for axis in 0..dims {
                let c = (coords[axis] + reduced[axis]) % moduli[axis];
                encoded = encoded * moduli[axis] as usize + c as usize;
            }
            *image = encoded;
        }
        generators.push(perm);
    }
    Ok(Action::validate(carrier, generators)?)
}

/// Groups periods by commensurability: two nonzero vectors over a rationally
/// independent basis are commensurable exactly when they are parallel.
pub fn commensurability_classes(
    periods: &[PeriodVector],
) -> Result<CommensurabilityClasses, AbelianError> {
    for (index, p) in periods.iter().enumerate() {
        if p.is_zero() {
            return Err(AbelianError::ZeroPeriod { index });
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut primitives: Vec<PeriodVector> = Vec::new();
    for (index, p) in periods.iter().enumerate() {
        let primitive = p.primitive().expect("nonzero period has a primitive");
        match primitives.iter().position(|q| *q == primitive) {
            Some(class) => classes[class].push(index),
            None => {
                primitives.push(primitive);
                classes.push(vec![index]);
            }
        }
    }
    Ok(CommensurabilityClasses {
        classes,
        primitives,
    })
}

/// Least common multiple of pairwise-parallel periods: the generator of the
/// intersection of the cyclic groups they generate, `lcm(|q_1|,...,|q_k|)*v`
/// for the common primitive direction `v`.
pub fn vector_lcm(periods: &[PeriodVector]) -> Result<PeriodVector, AbelianError> {
    let first = periods.first().ok_or(AbelianError::EmptyInput)?;
    if first.is_zero() {
        return Err(AbelianError::ZeroPeriod { index: 0 });
    }
    let primitive = first.primitive().expect("nonzero period has a primitive");
    let mut lcm: Option<Rat> = None;
    for (index, p) in periods.iter().enumerate() {
        if p.is_zero() {
            return Err(AbelianError::ZeroPeriod { index });
        }
        let q = p
            .ratio_to(&primitive)
            .ok_or(AbelianError::NotParallel { index })?
            .abs();
        lcm = Some(match lcm {
            None => q,
            Some(current) => rational_lcm(&current, &q)?,
        });
    }
    Ok(primitive.scale(&lcm.expect("at least one period")))
}

/// Enumerates all generator-index partitions; emits those whose blocks are
/// all internally commensurable (with block lcm vectors) and counts the rest
/// as trivial. Entries with identical lcm multisets are deduplicated,
/// keeping the first in scan order.
pub fn generate_conditions(periods: &[PeriodVector]) -> Result<ConditionList, AbelianError> {
    for (index, p) in periods.iter().enumerate() {
        if p.is_zero() {
            return Err(AbelianError::ZeroPeriod { index });
        }
    }
    let partitions = enumerate_set_partitions(periods.len(), DEFAULT_PARTITION_CAP)?;
    let mut entries: Vec<ConditionEntry> = Vec::new();
    let mut seen: std::collections::HashSet<Vec<PeriodVector>> = std::collections::HashSet::new();
    let mut trivial_count = 0usize;
    'partitions: for partition in partitions {
        let mut lcms = Vec::with_capacity(partition.blocks.len());
        for block in &partition.blocks {
            let block_periods: Vec<PeriodVector> =
                block.iter().map(|&i| periods[i].clone()).collect();
            match vector_lcm(&block_periods) {
                Ok(lcm) => lcms.push(lcm),
                Err(AbelianError::NotParallel { .. }) => {
                    // An incommensurable block: the intersection is trivial
                    // and the condition holds vacuously.
                    trivial_count += 1;
                    continue 'partitions;
                }
                Err(other) => return Err(other),
            }
        }
        let mut key = lcms.clone();
        key.sort_by(|a, b| {
            let fmt = |v: &PeriodVector| {
                v.coords()
                    .iter()
                    .map(crate::numeric::format_rational)
                    .collect::<Vec<_>>()
            };
            fmt(a).cmp(&fmt(b))
        });
        if seen.insert(key) {
            entries.push(ConditionEntry { partition, lcms });
        }
    }
    Ok(ConditionList {
        entries,
        trivial_count,
    })
}

/// A function sampled on the first `window` points of the integer line,
/// with positive integer periods.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowInstance {
    pub periods: Vec<u64>,
    pub window: usize,
    pub values: Vec<Rat>,
}

impl WindowInstance {
    pub fn new(periods: Vec<u64>, window: usize, values: Vec<Rat>) -> Result<Self, AbelianError> {
        if window == 0 {
            return Err(AbelianError::BadWindow {
                reason: "window length must be at least 1".into(),
            });
        }
        if periods.contains(&0) {
            return Err(AbelianError::BadWindow {
                reason: "periods must be positive".into(),
            });
        }
        if values.len() != window {
            return Err(AbelianError::BadWindow {
                reason: format!("expected {} values, got {}", window, values.len()),
            });
        }
        Ok(Self {
            periods,
            window,
            values,
        })
    }
}

/// One window condition: a partition of the period indices with the integer
/// lcm of each block. All integer periods are pairwise commensurable, so no
/// partition is trivial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowCondition {
    pub partition: SetPartition,
    pub lcms: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WindowVerdict {
    /// Every testable condition vanished; conditions with no evaluable
    /// points are listed untestable.
    Pass { untestable: Vec<WindowCondition> },
    Violation {
        condition: WindowCondition,
        witness: usize,
        value: Rat,
    },
}

/// Evaluates each generated condition on every point where the whole
/// difference chain stays inside the window.
pub fn check_window(instance: &WindowInstance) -> Result<WindowVerdict, AbelianError> {
    let partitions = enumerate_set_partitions(instance.periods.len(), DEFAULT_PARTITION_CAP)?;
    let mut untestable = Vec::new();
    for partition in partitions {
        let lcms: Vec<u64> = partition
            .blocks
            .iter()
            .map(|block| {
                block
                    .iter()
                    .map(|&i| instance.periods[i])
                    .fold(1u64, |acc, p| acc.lcm(&p))
            })
            .collect();
        let condition = WindowCondition { partition, lcms };
        let span: u64 = condition.lcms.iter().sum();
        if span as usize >= instance.window {
            untestable.push(condition);
            continue;
        }
        let mut current = instance.values.clone();
        for &b in condition.lcms.iter().rev() {
            let b = b as usize;
            current = (0..current.len() - b)
                .map(|x| &current[x + b] - &current[x])
                .collect();
        }
        if let Some(witness) = current.iter().position(|v| !v.is_zero()) {
            let value = current[witness].clone();
            return Ok(WindowVerdict::Violation {
                condition,
                witness,
                value,
            });
        }
    }
    Ok(WindowVerdict::Pass { untestable })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WindowOutcome {
    /// One value vector of length `a_j` per period; their wrapped sums
    /// reproduce the window exactly.
    Feasible(Vec<Vec<Rat>>),
    Infeasible,
}

/// Linear feasibility on the window: unknowns are the residue values of each
/// part, one equation per window point.
pub fn solve_window(instance: &WindowInstance, ring: Ring) -> Result<WindowOutcome, AbelianError> {
    if ring == Ring::Integer {
        if let Some(point) = instance.values.iter().position(|v| !v.denom().is_one()) {
            return Err(AbelianError::NonIntegerInput { point });
        }
    }
    let mut offsets = Vec::with_capacity(instance.periods.len());
    let mut total = 0usize;
    for &p in &instance.periods {
        offsets.push(total);
        total += p as usize;
    }
    let mut coeffs = vec![vec![Rat::zero(); total]; instance.window];
    for (x, row) in coeffs.iter_mut().enumerate() {
        for (j, &p) in instance.periods.iter().enumerate() {
            row[offsets[j] + x % p as usize] += Rat::one();
        }
    }
    let system = RatMatrixSystem::new(coeffs, instance.values.clone())?;
    let solution = match ring {
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
    Ok(match solution {
        Some(solution) => WindowOutcome::Feasible(
            instance
                .periods
                .iter()
                .enumerate()
                .map(|(j, &p)| solution[offsets[j]..offsets[j] + p as usize].to_vec())
                .collect(),
        ),
        None => WindowOutcome::Infeasible,
    })
}

/// Assembles the window values of a sum of periodic parts; useful for tests
/// and the fuzz harness.
pub fn window_values_from_parts(parts: &[Vec<Rat>], window: usize) -> Vec<Rat> {
    (0..window)
        .map(|x| {
            parts
                .iter()
                .map(|part| part[x % part.len()].clone())
                .fold(Rat::zero(), |a, b| a + b)
        })
        .collect()
}

/// Convenience: window instance as an `FnVec` for shared assertions.
pub fn window_fnvec(instance: &WindowInstance) -> FnVec {
    FnVec::new(instance.values.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{rat, rat_int};

    fn pv(coords: &[i64]) -> PeriodVector {
        PeriodVector::new(coords.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn compiles_klein_translations() {
        let action =
            finite_abelian_action(&[2, 2], &[vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(action.generator_perm(0), &[2, 3, 0, 1]);
        assert_eq!(action.generator_perm(1), &[1, 0, 3, 2]);
        assert_eq!(action.generator_perm(2), &[3, 2, 1, 0]);
    }

    #[test]
    fn compiles_six_cycle_and_trivial() {
        let action = finite_abelian_action(&[6], &[vec![2], vec![3]]).unwrap();
        assert_eq!(action.generator_perm(0), &[2, 3, 4, 5, 0, 1]);
        assert_eq!(action.generator_perm(1), &[3, 4, 5, 0, 1, 2]);

        let trivial = finite_abelian_action(&[1], &[vec![5]]).unwrap();
        assert_eq!(trivial.carrier_size(), 1);

        assert_eq!(
            finite_abelian_action(&[0], &[]).unwrap_err(),
            AbelianError::BadModulus { index: 0, value: 0 }
        );
    }

    #[test]
    fn negative_periods_reduce_mod_moduli() {
        let action = finite_abelian_action(&[6], &[vec![-1]]).unwrap();
        assert_eq!(action.generator_perm(0), &[5, 0, 1, 2, 3, 4]);
    }

    #[test]
    fn classes_group_parallel_periods() {
        let classes =
            commensurability_classes(&[pv(&[1, 0]), pv(&[2, 0]), pv(&[0, 1])]).unwrap();
        assert_eq!(classes.classes, vec![vec![0, 1], vec![2]]);
        assert_eq!(classes.primitives[0], pv(&[1, 0]));

        let same = commensurability_classes(&[pv(&[3]), pv(&[3]), pv(&[3])]).unwrap();
        assert_eq!(same.classes, vec![vec![0, 1, 2]]);

        let single = commensurability_classes(&[pv(&[7, -2])]).unwrap();
        assert_eq!(single.classes, vec![vec![0]]);

        assert_eq!(
            commensurability_classes(&[pv(&[0, 0])]).unwrap_err(),
            AbelianError::ZeroPeriod { index: 0 }
        );
    }

    #[test]
    fn vector_lcm_examples() {
        assert_eq!(vector_lcm(&[pv(&[1, 0]), pv(&[2, 0])]).unwrap(), pv(&[2, 0]));
        assert_eq!(vector_lcm(&[pv(&[3])]).unwrap(), pv(&[3]));
        let halves = vec![
            PeriodVector::new(vec![rat(1, 2)]),
            PeriodVector::new(vec![rat(1, 3)]),
        ];
        assert_eq!(vector_lcm(&halves).unwrap(), pv(&[1]));
        assert_eq!(
            vector_lcm(&[pv(&[1, 0]), pv(&[0, 1])]).unwrap_err(),
            AbelianError::NotParallel { index: 1 }
        );
    }

    #[test]
    fn vector_lcm_is_integer_multiple_of_members() {
        let periods = [pv(&[2, 4]), pv(&[3, 6]), pv(&[-1, -2])];
        let lcm = vector_lcm(&periods).unwrap();
        for p in &periods {
            let q = lcm.ratio_to(p).unwrap();
            assert!(q.denom().is_one(), "lcm/{p:?} = {q} is not an integer");
        }
    }

    #[test]
    fn conditions_for_mixed_periods() {
        // Periods 1, 2 and an incommensurable third direction.
        let list =
            generate_conditions(&[pv(&[1, 0]), pv(&[2, 0]), pv(&[0, 1])]).unwrap();
        assert_eq!(list.trivial_count, 3);
        assert_eq!(list.entries.len(), 2);
        assert_eq!(
            list.entries[0].partition.blocks,
            vec![vec![0, 1], vec![2]]
        );
        assert_eq!(list.entries[0].lcms, vec![pv(&[2, 0]), pv(&[0, 1])]);
        assert_eq!(
            list.entries[1].partition.blocks,
            vec![vec![0], vec![1], vec![2]]
        );
        assert_eq!(
            list.entries[1].lcms,
            vec![pv(&[1, 0]), pv(&[2, 0]), pv(&[0, 1])]
        );
    }

    #[test]
    fn conditions_for_pairwise_incommensurable() {
        let list =
            generate_conditions(&[pv(&[1, 0, 0]), pv(&[0, 1, 0]), pv(&[0, 0, 1])]).unwrap();
        assert_eq!(list.entries.len(), 1);
        assert_eq!(
            list.entries[0].partition.blocks,
            vec![vec![0], vec![1], vec![2]]
        );
        assert_eq!(list.trivial_count, 4);

        let single = generate_conditions(&[pv(&[5])]).unwrap();
        assert_eq!(single.entries.len(), 1);
        assert_eq!(single.entries[0].lcms, vec![pv(&[5])]);
        assert_eq!(single.trivial_count, 0);
    }

    #[test]
    fn conditions_deduplicate_equal_lcm_multisets() {
        // Periods 1, 1, 2: the partitions {{0,1},{2}} and later ones with
        // the same lcm multiset {1, 2} collapse to the first occurrence.
        let list = generate_conditions(&[pv(&[1]), pv(&[1]), pv(&[2])]).unwrap();
        let multisets: Vec<Vec<PeriodVector>> = list
            .entries
            .iter()
            .map(|e| {
                let mut v = e.lcms.clone();
                v.sort_by_key(|p| format!("{:?}", p.coords()));
                v
            })
            .collect();
        let unique: std::collections::HashSet<_> =
            multisets.iter().map(|v| format!("{v:?}")).collect();
        assert_eq!(unique.len(), multisets.len());
        assert_eq!(list.trivial_count, 0);
    }

    #[test]
    fn all_integer_periods_have_no_trivial_partitions() {
        let list = generate_conditions(&[pv(&[2]), pv(&[3]), pv(&[4])]).unwrap();
        assert_eq!(list.trivial_count, 0);
        for entry in &list.entries {
            for (block, lcm) in entry.partition.blocks.iter().zip(&entry.lcms) {
                let expected = block.iter().map(|&i| [2u64, 3, 4][i]).fold(1, |a, b| a.lcm(&b));
                assert_eq!(lcm, &pv(&[expected as i64]));
            }
        }
    }

    fn identity_window(window: usize) -> WindowInstance {
        WindowInstance::new(
            vec![3, 3],
            window,
            (0..window as i64).map(rat_int).collect(),
        )
        .unwrap()
    }

    #[test]
    fn window_trap_catches_single_block_violation() {
        // The identity function satisfies the doubled-period condition at
        // every testable point, yet fails the merged single-block one.
        let verdict = check_window(&identity_window(10)).unwrap();
        let WindowVerdict::Violation {
            condition,
            witness,
            value,
        } = verdict
        else {
            panic!("expected a violation");
        };
        assert_eq!(condition.partition.blocks, vec![vec![0, 1]]);
        assert_eq!(condition.lcms, vec![3]);
        assert_eq!(witness, 0);
        assert_eq!(value, rat_int(3));
    }

    #[test]
    fn window_sum_of_periodics_passes_and_solves() {
        let parts = vec![
            vec![rat_int(1), rat_int(0)],
            vec![rat_int(1), rat_int(0), rat_int(0)],
        ];
        let values = window_values_from_parts(&parts, 12);
        let instance = WindowInstance::new(vec![2, 3], 12, values).unwrap();
        assert!(matches!(
            check_window(&instance).unwrap(),
            WindowVerdict::Pass { .. }
        ));
        for ring in [Ring::Rational, Ring::Integer] {
            let WindowOutcome::Feasible(parts) = solve_window(&instance, ring).unwrap() else {
                panic!("expected feasible in {ring:?}");
            };
            let rebuilt = window_values_from_parts(&parts, 12);
            assert_eq!(rebuilt, instance.values);
        }
    }

    #[test]
    fn tiny_window_is_untestable() {
        let instance = WindowInstance::new(vec![2, 3], 2, vec![rat_int(0), rat_int(5)]).unwrap();
        let WindowVerdict::Pass { untestable } = check_window(&instance).unwrap() else {
            panic!("expected pass");
        };
        assert_eq!(untestable.len(), 2);
    }

    #[test]
    fn window_identity_function_infeasible() {
        for window in [6, 7] {
            let instance = WindowInstance::new(
                vec![2, 3],
                window,
                (0..window as i64).map(rat_int).collect(),
            )
            .unwrap();
            for ring in [Ring::Rational, Ring::Integer] {
                assert_eq!(
                    solve_window(&instance, ring).unwrap(),
                    WindowOutcome::Infeasible,
                    "window {window}, {ring:?}"
                );
            }
        }
    }

    #[test]
    fn window_trap_is_infeasible_in_both_rings() {
        for ring in [Ring::Rational, Ring::Integer] {
            assert_eq!(
                solve_window(&identity_window(10), ring).unwrap(),
                WindowOutcome::Infeasible
            );
        }
    }

    #[test]
    fn window_rejects_fractional_integer_input() {
        let instance = WindowInstance::new(vec![2], 2, vec![rat(1, 2), rat_int(0)]).unwrap();
        assert_eq!(
            solve_window(&instance, Ring::Integer).unwrap_err(),
            AbelianError::NonIntegerInput { point: 0 }
        );
    }

    #[test]
    fn violation_refutes_feasibility_on_random_windows() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..40 {
            let n = rng.gen_range(1..=3usize);
            let periods: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=6u64)).collect();
            let window = rng.gen_range(4..=20usize);
            let values: Vec<Rat> = (0..window)
                .map(|_| rat_int(rng.gen_range(-3..=3i64)))
                .collect();
            let instance = WindowInstance::new(periods, window, values).unwrap();
            let feasible = matches!(
                solve_window(&instance, Ring::Rational).unwrap(),
                WindowOutcome::Feasible(_)
            );
            if feasible {
                assert!(
                    matches!(check_window(&instance).unwrap(), WindowVerdict::Pass { .. }),
                    "feasible window failed a condition: {instance:?}"
                );
            }
        }
    }
}
