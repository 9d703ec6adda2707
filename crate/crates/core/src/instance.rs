//! Problem data model.
//!
//! An [`Instance`] is the triple `(X, F, w)`: the ground set `X = {0, .., n-1}`,
//! an ordered family of subsets stored as fixed-capacity bitsets, and one
//! nonnegative finite weight per subset. Instances are immutable once built.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::Error;

/// Largest accepted ground set.
pub const MAX_ELEMENTS: usize = 4096;
/// Largest accepted family.
pub const MAX_SETS: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    n: usize,
    sets: Vec<FixedBitSet>,
    weights: Vec<f64>,
}

impl Instance {
    /// Builds and validates an instance from explicit element lists.
    ///
    /// Element order inside a list does not matter, but ids must be `< n` and
    /// must not repeat.
    pub fn new<S: AsRef<[usize]>>(n: usize, sets: &[S], weights: Vec<f64>) -> Result<Self, Error> {
        check_capacity(n, sets.len())?;
        if sets.len() != weights.len() {
            return Err(Error::LengthMismatch {
                sets: sets.len(),
                weights: weights.len(),
            });
        }
        let mut bits = Vec::with_capacity(sets.len());
        for (i, members) in sets.iter().enumerate() {
            let mut set = FixedBitSet::with_capacity(n);
            for &e in members.as_ref() {
                if e >= n {
                    return Err(Error::ElementOutOfRange { element: e, n });
                }
                if set.contains(e) {
                    return Err(Error::RepeatedElement { element: e, set: i });
                }
                set.insert(e);
            }
            bits.push(set);
        }
        check_weights(&weights)?;
        Ok(Instance {
            n,
            sets: bits,
            weights,
        })
    }

    /// Builds an instance from bitsets; members must be `< n`.
    pub fn from_bitsets(n: usize, sets: Vec<FixedBitSet>, weights: Vec<f64>) -> Result<Self, Error> {
        check_capacity(n, sets.len())?;
        if sets.len() != weights.len() {
            return Err(Error::LengthMismatch {
                sets: sets.len(),
                weights: weights.len(),
            });
        }
        let mut sets = sets;
        for set in &mut sets {
            if let Some(e) = set.ones().find(|&e| e >= n) {
                return Err(Error::ElementOutOfRange { element: e, n });
            }
            // equality compares capacities too, so pin every set to exactly n bits
            if set.len() != n {
                let mut resized = FixedBitSet::with_capacity(n);
                resized.extend(set.ones());
                *set = resized;
            }
        }
        check_weights(&weights)?;
        Ok(Instance { n, sets, weights })
    }

    /// Number of ground elements.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of sets.
    pub fn m(&self) -> usize {
        self.sets.len()
    }

    pub fn set(&self, i: usize) -> &FixedBitSet {
        &self.sets[i]
    }

    pub fn sets(&self) -> &[FixedBitSet] {
        &self.sets
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.weights[i]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Sum of the weights of `chosen`, accumulated in ascending index order.
    ///
    /// Every weight reported by this crate goes through this function, so two
    /// routes that pick the same sets always report bit-identical weights.
    pub fn weight_of(&self, chosen: &[usize]) -> f64 {
        let mut sorted = chosen.to_vec();
        sorted.sort_unstable();
        sorted.iter().fold(0.0, |acc, &i| acc + self.weights[i])
    }

    /// Whether the instance has no empty set and no two sets with equal content.
    pub fn is_normalized(&self) -> bool {
        normalize(self).1.len() == self.m()
    }
}

fn check_capacity(n: usize, m: usize) -> Result<(), Error> {
    if n > MAX_ELEMENTS {
        return Err(Error::Capacity {
            what: "element",
            got: n,
            limit: MAX_ELEMENTS,
        });
    }
    if m > MAX_SETS {
        return Err(Error::Capacity {
            what: "set",
            got: m,
            limit: MAX_SETS,
        });
    }
    Ok(())
}

fn check_weights(weights: &[f64]) -> Result<(), Error> {
    for (i, &w) in weights.iter().enumerate() {
        if !w.is_finite() || w < 0.0 || w.is_sign_negative() {
            return Err(Error::InvalidWeight { set: i, weight: w });
        }
    }
    Ok(())
}

/// Result of a solve: an optimal cover in original set indices, or a proof
/// that none exists.
#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Cover { chosen: Vec<usize>, weight: f64 },
    NoSolution,
}

impl Outcome {
    pub fn is_cover(&self) -> bool {
        matches!(self, Outcome::Cover { .. })
    }

    pub fn weight(&self) -> Option<f64> {
        match self {
            Outcome::Cover { weight, .. } => Some(*weight),
            Outcome::NoSolution => None,
        }
    }

    pub fn chosen(&self) -> Option<&[usize]> {
        match self {
            Outcome::Cover { chosen, .. } => Some(chosen),
            Outcome::NoSolution => None,
        }
    }
}

/// Drops empty sets and collapses sets with identical content to their
/// cheapest copy (lowest original index on ties).
///
/// Returns the reduced instance and, for each surviving set, its index in
/// `inst`. The map is strictly increasing, so ascending order is preserved.
pub fn normalize(inst: &Instance) -> (Instance, Vec<usize>) {
    let mut keep: BTreeMap<&FixedBitSet, usize> = BTreeMap::new();
    for (i, set) in inst.sets.iter().enumerate() {
        if set.is_clear() {
            continue;
        }
        keep.entry(set)
            .and_modify(|best| {
                if inst.weights[i] < inst.weights[*best] {
                    *best = i;
                }
            })
            .or_insert(i);
    }
    let mut map: Vec<usize> = keep.into_values().collect();
    map.sort_unstable();
    let reduced = Instance {
        n: inst.n,
        sets: map.iter().map(|&i| inst.sets[i].clone()).collect(),
        weights: map.iter().map(|&i| inst.weights[i]).collect(),
    };
    (reduced, map)
}

/// Whether `chosen` names pairwise disjoint sets whose union is the whole
/// ground set. Out-of-range or repeated indices make the answer `false`.
pub fn verify_cover(inst: &Instance, chosen: &[usize]) -> bool {
    let mut covered = FixedBitSet::with_capacity(inst.n);
    let mut seen = FixedBitSet::with_capacity(inst.m());
    for &i in chosen {
        if i >= inst.m() || seen.contains(i) {
            return false;
        }
        seen.insert(i);
        if !covered.is_disjoint(&inst.sets[i]) {
            return false;
        }
        covered.union_with(&inst.sets[i]);
    }
    covered.count_ones(..) == inst.n
}
