//! Finite systems of pairwise-commuting invertible transformations.
//!
//! An [`Action`] is a validated carrier set together with commuting
//! permutations. The module provides orbit enumeration, cyclic subgroups and
//! their intersections (restricted to an orbit), and set-partition
//! enumeration in restricted-growth-string order.

use num_integer::Integer;
use thiserror::Error;

/// Default cap on the number of generator-index set partitions (Bell(8) = 4140).
pub const DEFAULT_PARTITION_CAP: usize = 8;
/// Default cap on the length of any cyclic-group scan.
pub const DEFAULT_SCAN_CAP: u64 = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ActionError {
    #[error("carrier must contain at least one point")]
    EmptyCarrier,
    #[error("generator {generator} has length {actual}, expected {expected}")]
    LengthMismatch {
        generator: usize,
        expected: usize,
        actual: usize,
    },
    #[error("generator {generator} maps outside the carrier at point {point}")]
    PointOutOfRange { generator: usize, point: usize },
    #[error("generator {generator} is not a bijection: image point {point} is duplicated")]
    NonBijective { generator: usize, point: usize },
    #[error("generators {first} and {second} do not commute at point {witness}")]
    NonCommuting {
        first: usize,
        second: usize,
        witness: usize,
    },
    #[error("generator subset is empty")]
    EmptySubset,
    #[error("generator index {index} out of range")]
    GeneratorIndex { index: usize },
    #[error("empty partition block")]
    EmptyBlock,
    #[error("cap exceeded: needed {needed}, cap {cap}")]
    CapExceeded { needed: u64, cap: u64 },
}

/// A finite carrier with pairwise-commuting bijective generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Action {
    carrier: usize,
    generators: Vec<Vec<usize>>,
    scan_cap: u64,
}

/// An element of the group generated by an action's generators: the composed
/// permutation together with the exponent word that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    perm: Vec<usize>,
    word: Vec<i64>,
}

impl GroupElement {
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn word(&self) -> &[i64] {
        &self.word
    }

    pub fn apply(&self, point: usize) -> usize {
        self.perm[point]
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Identity on the given orbit (the rest of the carrier is ignored).
    pub fn is_identity_on(&self, orbit: &[usize]) -> bool {
        orbit.iter().all(|&x| self.perm[x] == x)
    }
}

/// Disjoint orbits covering the carrier, ordered by minimal point; points
/// within an orbit are sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    pub orbits: Vec<Vec<usize>>,
    pub orbit_of: Vec<usize>,
}

/// A partition of the generator indices `{0..n-1}` into nonempty blocks,
/// each sorted ascending and blocks ordered by minimal element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetPartition {
    pub blocks: Vec<Vec<usize>>,
}

impl Action {
    /// Validates and constructs an action: every generator must be a
    /// length-`carrier` bijection and every pair must commute pointwise.
    pub fn validate(carrier: usize, generators: Vec<Vec<usize>>) -> Result<Self, ActionError> {
        if carrier == 0 {
            return Err(ActionError::EmptyCarrier);
        }
        for (g, perm) in generators.iter().enumerate() {
            if perm.len() != carrier {
                return Err(ActionError::LengthMismatch {
                    generator: g,
                    expected: carrier,
                    actual: perm.len(),
                });
            }
            let mut seen = vec![false; carrier];
            for &image in perm {
                if image >= carrier {
                    return Err(ActionError::PointOutOfRange {
                        generator: g,
                        point: image,
                    });
                }
                if seen[image] {
                    return Err(ActionError::NonBijective {
                        generator: g,
                        point: image,
                    });
                }
                seen[image] = true;
            }
        }
        for i in 0..generators.len() {
            for j in i + 1..generators.len() {
                for x in 0..carrier {
                    if generators[i][generators[j][x]] != generators[j][generators[i][x]] {
                        return Err(ActionError::NonCommuting {
                            first: i,
                            second: j,
                            witness: x,
                        });
                    }
                }
            }
        }
        Ok(Self {
            carrier,
            generators,
            scan_cap: DEFAULT_SCAN_CAP,
        })
    }

    pub fn carrier_size(&self) -> usize {
        self.carrier
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_perm(&self, index: usize) -> &[usize] {
        &self.generators[index]
    }

    pub fn scan_cap(&self) -> u64 {
        self.scan_cap
    }

    pub fn with_scan_cap(mut self, cap: u64) -> Self {
        self.scan_cap = cap;
        self
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            perm: (0..self.carrier).collect(),
            word: vec![0; self.generators.len()],
        }
    }

    pub fn generator_element(&self, index: usize) -> GroupElement {
        let mut word = vec![0i64; self.generators.len()];
        word[index] = 1;
        GroupElement {
            perm: self.generators[index].clone(),
            word,
        }
    }

    pub fn compose(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement {
            perm: b.perm.iter().map(|&x| a.perm[x]).collect(),
            word: a.word.iter().zip(&b.word).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        let mut perm = vec![0usize; self.carrier];
        for (x, &image) in a.perm.iter().enumerate() {
            perm[image] = x;
        }
        GroupElement {
            perm,
            word: a.word.iter().map(|&e| -e).collect(),
        }
    }

    pub fn power(&self, a: &GroupElement, exponent: i64) -> GroupElement {
        let base = if exponent < 0 { self.inverse(a) } else { a.clone() };
        let mut result = self.identity();
        for _ in 0..exponent.unsigned_abs() {
            result = self.compose(&result, &base);
        }
        result
    }

    /// The element `T_1^{w_1} ... T_n^{w_n}` for an exponent word.
    pub fn element_from_word(&self, word: &[i64]) -> Result<GroupElement, ActionError> {
        if word.len() != self.generators.len() {
            return Err(ActionError::LengthMismatch {
                generator: word.len(),
                expected: self.generators.len(),
                actual: word.len(),
            });
        }
        let mut result = self.identity();
        for (index, &exp) in word.iter().enumerate() {
            let factor = self.power(&self.generator_element(index), exp);
            result = self.compose(&result, &factor);
        }
        Ok(result)
    }

    /// Connected components of the carrier under the generators in `subset`.
    pub fn orbit_partition(&self, subset: &[usize]) -> Result<OrbitPartition, ActionError> {
        if subset.is_empty() {
            return Err(ActionError::EmptySubset);
        }
        for &index in subset {
            if index >= self.generators.len() {
                return Err(ActionError::GeneratorIndex { index });
            }
        }
        Ok(self.orbit_partition_unchecked(subset))
    }

    /// Orbits of the full generator set; with no generators every point is
    /// its own orbit.
    pub fn full_orbit_partition(&self) -> OrbitPartition {
        let all: Vec<usize> = (0..self.generators.len()).collect();
        self.orbit_partition_unchecked(&all)
    }

    fn orbit_partition_unchecked(&self, subset: &[usize]) -> OrbitPartition {
        let mut orbit_of = vec![usize::MAX; self.carrier];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for start in 0..self.carrier {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut queue = vec![start];
            orbit_of[start] = id;
            let mut members = vec![start];
            while let Some(x) = queue.pop() {
                for &g in subset {
                    // Forward images suffice: each generator has finite
                    // order, so its inverse is a forward power.
                    let y = self.generators[g][x];
                    if orbit_of[y] == usize::MAX {
                        orbit_of[y] = id;
                        members.push(y);
                        queue.push(y);
                    }
                }
            }
            members.sort_unstable();
            orbits.push(members);
        }
        OrbitPartition { orbits, orbit_of }
    }

    /// Order of `element` together with the powers `id, element, ...,
    /// element^(order-1)`.
    pub fn cyclic_subgroup(
        &self,
        element: &GroupElement,
    ) -> Result<(u64, Vec<GroupElement>), ActionError> {
        let mut powers = vec![self.identity()];
        let mut current = self.identity();
        loop {
            current = self.compose(&current, element);
            if current.is_identity() {
                let order = powers.len() as u64;
                return Ok((order, powers));
            }
            if powers.len() as u64 >= self.scan_cap {
                return Err(ActionError::CapExceeded {
                    needed: powers.len() as u64 + 1,
                    cap: self.scan_cap,
                });
            }
            powers.push(current.clone());
        }
    }

    /// Order of `perm` restricted to `orbit`: the lcm of the lengths of the
    /// cycles of `perm` inside the orbit.
    pub fn restricted_order(&self, perm: &[usize], orbit: &[usize]) -> Result<u64, ActionError> {
        let mut done = vec![false; orbit.len()];
        let pos = self.positions_in(orbit);
        let mut order: u64 = 1;
        for (i, &start) in orbit.iter().enumerate() {
            if done[i] {
                continue;
            }
            let mut len: u64 = 0;
            let mut x = start;
            loop {
                let local = pos[x].expect("orbit must be closed under the permutation");
                if done[local] {
                    break;
                }
                done[local] = true;
                len += 1;
                x = perm[x];
            }
            order = order.lcm(&len);
            if order > self.scan_cap {
                return Err(ActionError::CapExceeded {
                    needed: order,
                    cap: self.scan_cap,
                });
            }
        }
        Ok(order)
    }

    /// Lookup table: carrier point -> position within `orbit`, if any.
    fn positions_in(&self, orbit: &[usize]) -> Vec<Option<usize>> {
        let mut pos = vec![None; self.carrier];
        for (i, &x) in orbit.iter().enumerate() {
            pos[x] = Some(i);
        }
        pos
    }

    /// Restriction of a carrier permutation to an orbit, expressed in local
    /// positions. The orbit must be closed under the permutation.
    pub fn restrict_perm(&self, perm: &[usize], orbit: &[usize]) -> Vec<usize> {
        let pos = self.positions_in(orbit);
        orbit
            .iter()
            .map(|&x| pos[perm[x]].expect("orbit must be closed under the permutation"))
            .collect()
    }

    /// A generator of the intersection of the cyclic groups generated by the
    /// block's generators restricted to `orbit`.
    ///
    /// With `b1` the restriction of the lowest-index block generator, the
    /// result is `b1^t` for the minimal `t >= 1` such that `b1^t` lies in
    /// every other restricted cyclic group; that power generates the whole
    /// intersection. The identity is returned when the intersection is
    /// trivial.
    pub fn block_lcm_generator(
        &self,
        orbit: &[usize],
        block: &[usize],
    ) -> Result<GroupElement, ActionError> {
        if block.is_empty() {
            return Err(ActionError::EmptyBlock);
        }
        for &index in block {
            if index >= self.generators.len() {
                return Err(ActionError::GeneratorIndex { index });
            }
        }
        let lead = block[0];
        let b1 = self.restrict_perm(&self.generators[lead], orbit);
        let identity_local: Vec<usize> = (0..orbit.len()).collect();

        let mut member_sets: Vec<std::collections::HashSet<Vec<usize>>> = Vec::new();
        for &other in &block[1..] {
            let restricted = self.restrict_perm(&self.generators[other], orbit);
            let mut members = std::collections::HashSet::new();
            let mut current = identity_local.clone();
            loop {
                let inserted = members.insert(current.clone());
                if !inserted {
                    break;
                }
                if members.len() as u64 > self.scan_cap {
                    return Err(ActionError::CapExceeded {
                        needed: members.len() as u64,
                        cap: self.scan_cap,
                    });
                }
                current = compose_local(&restricted, &current);
            }
            member_sets.push(members);
        }

        let mut t: u64 = 1;
        let mut current = b1.clone();
        loop {
            if member_sets.iter().all(|set| set.contains(&current)) {
                let element = self.power(&self.generator_element(lead), t as i64);
                return Ok(element);
            }
            if t > self.scan_cap {
                return Err(ActionError::CapExceeded {
                    needed: t,
                    cap: self.scan_cap,
                });
            }
            current = compose_local(&b1, &current);
            t += 1;
        }
    }
}

fn compose_local(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

/// All partitions of `{0..n-1}` in restricted-growth-string order; `n = 0`
/// yields the single empty partition.
pub fn enumerate_set_partitions(n: usize, cap: usize) -> Result<Vec<SetPartition>, ActionError> {
    if n > cap {
        return Err(ActionError::CapExceeded {
            needed: n as u64,
            cap: cap as u64,
        });
    }
    if n == 0 {
        return Ok(vec![SetPartition { blocks: vec![] }]);
    }
    let mut result = Vec::new();
    let mut rgs = vec![0usize; n];
    let mut maxes = vec![0usize; n];
    loop {
        let block_count = maxes[n - 1] + 1;
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); block_count];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b].push(i);
        }
        result.push(SetPartition { blocks });

        // Advance to the next restricted growth string.
        let mut i = n;
        loop {
            if i <= 1 {
                return Ok(result);
            }
            i -= 1;
            if rgs[i] <= maxes[i - 1] {
                break;
            }
        }
        rgs[i] += 1;
        maxes[i] = maxes[i - 1].max(rgs[i]);
        for j in i + 1..n {
            rgs[j] = 0;
            maxes[j] = maxes[j - 1];
        }
    }
}
