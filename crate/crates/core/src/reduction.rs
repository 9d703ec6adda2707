//! Maximum set packing through exact cover.
//!
//! A packing instance `S_1..S_m` over `x_1..x_n` becomes an exact cover
//! instance by giving every `S_i` a private gadget `T_i` of `n + 1` fresh
//! elements:
//!
//! - ground set: `x_1..x_n` followed by all gadget elements `t_ij`;
//! - sets: the singletons `{x_i}`, then `S_i ∪ T_i`, then the singletons `{t_ij}`.
//!
//! With unit weights a lightest cover uses as many `S_i ∪ T_i` as possible,
//! since each one replaces `n + 1` gadget singletons, and the packing sets it
//! uses are pairwise disjoint. A minimum cover therefore yields a maximum
//! packing.
//!
//! Id layout (stable, part of the on-disk form of reduced instances):
//! element `x_e` is `e`, element `t_ij` is `n + i(n+1) + j`; set `{x_e}` is
//! `e`, set `S_i ∪ T_i` is `n + i`, set `{t_ij}` is `n + m + i(n+1) + j`.

use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::{Error, Instance, Outcome};

/// Sets over elements `0..n`, each element used by at least one set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackingInstance {
    n: usize,
    sets: Vec<Vec<usize>>,
}

impl PackingInstance {
    /// Validates a packing instance. Members are sorted and deduplicated.
    pub fn new(n: usize, sets: Vec<Vec<usize>>) -> Result<Self, Error> {
        let mut used = FixedBitSet::with_capacity(n);
        let mut sets = sets;
        for set in &mut sets {
            set.sort_unstable();
            set.dedup();
            for &e in set.iter() {
                if e >= n {
                    return Err(Error::ElementOutOfRange { element: e, n });
                }
                used.insert(e);
            }
        }
        if let Some(e) = used.zeroes().next() {
            return Err(Error::UnusedElement(e));
        }
        Ok(PackingInstance { n, sets })
    }

    /// Drops elements that no set uses and renumbers the rest densely.
    /// Returns the instance and, for each new element id, its old id.
    pub fn compact(n: usize, sets: Vec<Vec<usize>>) -> Result<(Self, Vec<usize>), Error> {
        let mut used = FixedBitSet::with_capacity(n);
        for set in &sets {
            for &e in set {
                if e >= n {
                    return Err(Error::ElementOutOfRange { element: e, n });
                }
                used.insert(e);
            }
        }
        let old_ids: Vec<usize> = used.ones().collect();
        let mut new_id = alloc::vec![usize::MAX; n];
        for (new, &old) in old_ids.iter().enumerate() {
            new_id[old] = new;
        }
        let sets = sets
            .into_iter()
            .map(|s| s.into_iter().map(|e| new_id[e]).collect())
            .collect();
        Ok((PackingInstance::new(old_ids.len(), sets)?, old_ids))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }
}

/// An exact cover instance built from a packing instance.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedInstance {
    pub wmesc: Instance,
    packing_n: usize,
    packing_m: usize,
}

impl ReducedInstance {
    /// Set indices holding `S_i ∪ T_i`, in packing order.
    pub fn packing_range(&self) -> core::ops::Range<usize> {
        self.packing_n..self.packing_n + self.packing_m
    }

    /// Packing index of set `s`, if `s` is one of the `S_i ∪ T_i`.
    pub fn packing_index(&self, s: usize) -> Option<usize> {
        self.packing_range().contains(&s).then(|| s - self.packing_n)
    }

    pub fn packing_n(&self) -> usize {
        self.packing_n
    }

    pub fn packing_m(&self) -> usize {
        self.packing_m
    }
}

/// Builds the gadget instance. All weights are `1.0`, so minimum weight is
/// minimum cardinality.
pub fn reduce(pack: &PackingInstance) -> Result<ReducedInstance, Error> {
    let (n, m) = (pack.n(), pack.m());
    let gadget = n + 1;
    let elements = m
        .checked_mul(gadget)
        .and_then(|g| g.checked_add(n))
        .ok_or(Error::Parameter("reduced instance size overflows"))?;
    let set_count = elements + m;
    if elements > crate::MAX_ELEMENTS {
        return Err(Error::Capacity {
            what: "element",
            got: elements,
            limit: crate::MAX_ELEMENTS,
        });
    }
    if set_count > crate::MAX_SETS {
        return Err(Error::Capacity {
            what: "set",
            got: set_count,
            limit: crate::MAX_SETS,
        });
    }
    let t = |i: usize, j: usize| n + i * gadget + j;

    let mut sets: Vec<Vec<usize>> = Vec::with_capacity(set_count);
    sets.extend((0..n).map(|e| alloc::vec![e]));
    for (i, s) in pack.sets().iter().enumerate() {
        let mut members = s.clone();
        members.extend((0..gadget).map(|j| t(i, j)));
        sets.push(members);
    }
    for i in 0..m {
        sets.extend((0..gadget).map(|j| alloc::vec![t(i, j)]));
    }
    let wmesc = Instance::new(elements, &sets, alloc::vec![1.0; set_count])?;
    Ok(ReducedInstance {
        wmesc,
        packing_n: n,
        packing_m: m,
    })
}

/// Packing indices of the `S_i ∪ T_i` sets used by a cover, ascending.
pub fn extract_packing(reduced: &ReducedInstance, outcome: &Outcome) -> Result<Vec<usize>, Error> {
    let chosen = outcome.chosen().ok_or(Error::NoCover)?;
    let mut picked: Vec<usize> = chosen.iter().filter_map(|&s| reduced.packing_index(s)).collect();
    picked.sort_unstable();
    Ok(picked)
}

/// Size accounting of a cover of a reduced instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverCost {
    /// Number of chosen sets.
    pub size: usize,
    /// Chosen `S_i ∪ T_i` sets.
    pub packed: usize,
    /// Packing elements outside every chosen `S_i`.
    pub uncovered: usize,
}

impl CoverCost {
    /// `packed + (m - packed)(n + 1) + uncovered`: each unused gadget needs
    /// `n + 1` singletons and each uncovered packing element one.
    pub fn predicted(&self, pack: &PackingInstance) -> usize {
        self.packed + (pack.m() - self.packed) * (pack.n() + 1) + self.uncovered
    }

    pub fn holds(&self, pack: &PackingInstance) -> bool {
        self.size == self.predicted(pack)
    }
}

pub fn cover_cost(pack: &PackingInstance, reduced: &ReducedInstance, outcome: &Outcome) -> Result<CoverCost, Error> {
    let chosen = outcome.chosen().ok_or(Error::NoCover)?;
    let picked = extract_packing(reduced, outcome)?;
    let mut covered = FixedBitSet::with_capacity(pack.n());
    for &i in &picked {
        covered.extend(pack.sets()[i].iter().copied());
    }
    Ok(CoverCost {
        size: chosen.len(),
        packed: picked.len(),
        uncovered: pack.n() - covered.count_ones(..),
    })
}
