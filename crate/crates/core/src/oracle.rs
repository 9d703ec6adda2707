//! Exhaustive reference solvers.
//!
//! These enumerate sub-collections directly and share nothing with the
//! branch-and-reduce search beyond the instance type, so they serve as ground
//! truth in tests.

use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::reduction::PackingInstance;
use crate::{Error, Instance, Outcome};

/// Largest family [`brute_force`] accepts.
pub const BRUTE_FORCE_MAX_SETS: usize = 24;
/// Largest family [`brute_force_packing`] accepts.
pub const PACKING_MAX_SETS: usize = 20;

/// Minimum-weight exact cover by enumerating every sub-collection.
///
/// Ties are resolved to the lexicographically smallest index list. Weights
/// are summed in ascending index order.
pub fn brute_force(inst: &Instance) -> Result<Outcome, Error> {
    if inst.m() > BRUTE_FORCE_MAX_SETS {
        return Err(Error::Capacity {
            what: "oracle set",
            got: inst.m(),
            limit: BRUTE_FORCE_MAX_SETS,
        });
    }
    let mut walk = CoverWalk {
        inst,
        covered: FixedBitSet::with_capacity(inst.n()),
        picked: Vec::new(),
        best: None,
    };
    walk.visit(0, 0.0);
    Ok(match walk.best {
        Some((chosen, weight)) => Outcome::Cover { chosen, weight },
        None => Outcome::NoSolution,
    })
}

struct CoverWalk<'a> {
    inst: &'a Instance,
    covered: FixedBitSet,
    picked: Vec<usize>,
    best: Option<(Vec<usize>, f64)>,
}

impl CoverWalk<'_> {
    // Indices are added in ascending order, so `weight` is the ascending-order
    // sum of `picked`.
    fn visit(&mut self, next: usize, weight: f64) {
        if next == self.inst.m() {
            if self.covered.count_ones(..) == self.inst.n() {
                let better = match &self.best {
                    None => true,
                    Some((c, w)) => weight < *w || (weight == *w && self.picked < *c),
                };
                if better {
                    self.best = Some((self.picked.clone(), weight));
                }
            }
            return;
        }
        self.visit(next + 1, weight);
        let set = self.inst.set(next);
        if self.covered.is_disjoint(set) {
            self.covered.union_with(set);
            self.picked.push(next);
            self.visit(next + 1, weight + self.inst.weight(next));
            self.picked.pop();
            self.covered.difference_with(set);
        }
    }
}

/// Maximum-cardinality pairwise disjoint sub-collection, with the
/// lexicographically smallest index list among the maximum ones.
pub fn brute_force_packing(pack: &PackingInstance) -> Result<(usize, Vec<usize>), Error> {
    let m = pack.m();
    if m > PACKING_MAX_SETS {
        return Err(Error::Capacity {
            what: "oracle set",
            got: m,
            limit: PACKING_MAX_SETS,
        });
    }
    let bits: Vec<FixedBitSet> = pack
        .sets()
        .iter()
        .map(|s| {
            let mut b = FixedBitSet::with_capacity(pack.n());
            b.extend(s.iter().copied());
            b
        })
        .collect();
    let mut best: Vec<usize> = Vec::new();
    let mut found = false;
    let mut used = FixedBitSet::with_capacity(pack.n());
    let mut picked = Vec::new();
    packing_visit(&bits, 0, &mut used, &mut picked, &mut best, &mut found);
    Ok((best.len(), best))
}

fn packing_visit(
    bits: &[FixedBitSet],
    next: usize,
    used: &mut FixedBitSet,
    picked: &mut Vec<usize>,
    best: &mut Vec<usize>,
    found: &mut bool,
) {
    if next == bits.len() {
        if !*found || picked.len() > best.len() || (picked.len() == best.len() && *picked < *best) {
            *best = picked.clone();
            *found = true;
        }
        return;
    }
    packing_visit(bits, next + 1, used, picked, best, found);
    if used.is_disjoint(&bits[next]) {
        used.union_with(&bits[next]);
        picked.push(next);
        packing_visit(bits, next + 1, used, picked, best, found);
        picked.pop();
        used.difference_with(&bits[next]);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::tests::i0;
    use alloc::vec;

    #[test]
    fn running_example() {
        assert_eq!(brute_force(&i0()), Ok(Outcome::Cover { chosen: vec![0, 2], weight: 1.5 }));
    }

    #[test]
    fn empty_ground_set() {
        let inst = Instance::new(0, &[vec![]], vec![2.0]).unwrap();
        assert_eq!(brute_force(&inst), Ok(Outcome::Cover { chosen: vec![], weight: 0.0 }));
    }

    #[test]
    fn nothing_covers() {
        let inst = Instance::new(1, &[] as &[Vec<usize>], vec![]).unwrap();
        assert_eq!(brute_force(&inst), Ok(Outcome::NoSolution));
    }

    #[test]
    fn ties_resolve_lexicographically() {
        // {0,1}+{2} and {0}+{1,2} both weigh 2.0; [0,3] < [1,2]
        let inst = Instance::new(3, &[vec![0, 1], vec![0], vec![1, 2], vec![2]], vec![1.0, 1.0, 1.0, 1.0]).unwrap();
        assert_eq!(brute_force(&inst), Ok(Outcome::Cover { chosen: vec![0, 3], weight: 2.0 }));
    }

    #[test]
    fn capacity_guard() {
        let sets: Vec<Vec<usize>> = (0..25).map(|_| vec![0]).collect();
        let inst = Instance::new(1, &sets, vec![1.0; 25]).unwrap();
        assert!(matches!(brute_force(&inst), Err(Error::Capacity { .. })));
    }

    #[test]
    fn packing_examples() {
        let pack = PackingInstance::new(3, vec![vec![0, 1], vec![1, 2], vec![2]]).unwrap();
        assert_eq!(brute_force_packing(&pack), Ok((2, vec![0, 2])));
        let disjoint = PackingInstance::new(4, vec![vec![0], vec![1, 2], vec![3]]).unwrap();
        assert_eq!(brute_force_packing(&disjoint), Ok((3, vec![0, 1, 2])));
        let single = PackingInstance::new(2, vec![vec![0, 1]]).unwrap();
        assert_eq!(brute_force_packing(&single), Ok((1, vec![0])));
    }
}
