//! Seeded instance generators.
//!
//! All randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64(seed)`, which expands the seed with PCG32. Draws are taken
//! from `next_u64` and converted as follows so other implementations can
//! reproduce suites from a seed:
//!
//! - `unit()`: `(next_u64 >> 11) * 2^-53`, uniform in `[0, 1)`;
//! - `below(k)`: `(next_u64 * k) >> 64` on 128-bit integers, in `[0, k)`;
//! - shuffles are Fisher–Yates from the back: for `i = len-1 ..= 1`, swap
//!   `i` with `below(i + 1)`.
//!
//! Random mode: for each set in order, draw one `unit() < density` test per
//! element `0..n` (redrawing the whole set while it comes out empty), then its
//! weight `unit()`.
//!
//! Planted mode: shuffle `0..n`; the first `blocks` elements of the shuffle
//! seed one block each, every later element joins block `below(blocks)`.
//! Block weights are `0.5 * unit()` in block order, scaled by `0.99 / sum`
//! when their sum reaches 1. Each distractor then draws its own density
//! `q = density * (1 - unit())`, its members as in random mode with `q`, and
//! weight `1 + unit()`. Finally the list (blocks first) is shuffled.

use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Instance};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenMode {
    Random,
    Planted { blocks: usize, distractors: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub n: usize,
    pub m: usize,
    /// Membership probability in `(0, 1]`.
    pub density: f64,
    pub seed: u64,
    pub mode: GenMode,
}

impl GenSpec {
    pub fn random(n: usize, m: usize, density: f64, seed: u64) -> Self {
        GenSpec {
            n,
            m,
            density,
            seed,
            mode: GenMode::Random,
        }
    }

    pub fn planted(n: usize, blocks: usize, distractors: usize, density: f64, seed: u64) -> Self {
        GenSpec {
            n,
            m: blocks + distractors,
            density,
            seed,
            mode: GenMode::Planted { blocks, distractors },
        }
    }

    fn validate(&self) -> Result<(), Error> {
        if !(self.density > 0.0 && self.density <= 1.0) {
            return Err(Error::Parameter("density must lie in (0, 1]"));
        }
        if self.n == 0 && self.m > 0 {
            return Err(Error::Parameter("cannot draw nonempty sets over an empty ground set"));
        }
        if self.n > crate::MAX_ELEMENTS || self.m > crate::MAX_SETS {
            return Err(Error::Parameter("instance exceeds the capacity limits"));
        }
        Ok(())
    }
}

struct Draw(ChaCha8Rng);

impl Draw {
    fn new(seed: u64) -> Self {
        Draw(ChaCha8Rng::seed_from_u64(seed))
    }

    fn unit(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    fn below(&mut self, k: usize) -> usize {
        ((self.0.next_u64() as u128 * k as u128) >> 64) as usize
    }

    fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i + 1);
            items.swap(i, j);
        }
    }

    fn nonempty_subset(&mut self, n: usize, p: f64) -> Vec<usize> {
        loop {
            let members: Vec<usize> = (0..n).filter(|_| self.unit() < p).collect();
            if !members.is_empty() {
                return members;
            }
        }
    }
}

/// Independent-membership instance; see the module docs for the draw order.
pub fn gen_random(spec: &GenSpec) -> Result<Instance, Error> {
    if spec.mode != GenMode::Random {
        return Err(Error::Parameter("gen_random needs random mode"));
    }
    spec.validate()?;
    let mut rng = Draw::new(spec.seed);
    let mut sets = Vec::with_capacity(spec.m);
    let mut weights = Vec::with_capacity(spec.m);
    for _ in 0..spec.m {
        sets.push(rng.nonempty_subset(spec.n, spec.density));
        weights.push(rng.unit());
    }
    Instance::new(spec.n, &sets, weights)
}

/// Instance with a hidden partition whose total weight is below 1 while every
/// other set weighs at least 1, so the partition is the unique optimum up to
/// duplicate copies. Returns the instance and the partition's set indices,
/// ascending.
pub fn gen_planted(spec: &GenSpec) -> Result<(Instance, Vec<usize>), Error> {
    let GenMode::Planted { blocks, distractors } = spec.mode else {
        return Err(Error::Parameter("gen_planted needs planted mode"));
    };
    spec.validate()?;
    if blocks > spec.n {
        return Err(Error::Parameter("more blocks than elements"));
    }
    if blocks == 0 && spec.n > 0 {
        return Err(Error::Parameter("a nonempty ground set needs at least one block"));
    }
    if blocks + distractors != spec.m {
        return Err(Error::Parameter("blocks + distractors must equal m"));
    }
    let mut rng = Draw::new(spec.seed);

    let mut order: Vec<usize> = (0..spec.n).collect();
    rng.shuffle(&mut order);
    let mut parts: Vec<Vec<usize>> = alloc::vec![Vec::new(); blocks];
    for (k, &e) in order.iter().enumerate() {
        let b = if k < blocks { k } else { rng.below(blocks) };
        parts[b].push(e);
    }
    let mut block_weights: Vec<f64> = (0..blocks).map(|_| 0.5 * rng.unit()).collect();
    let total: f64 = block_weights.iter().sum();
    if total >= 1.0 {
        let scale = 0.99 / total;
        for w in &mut block_weights {
            *w *= scale;
        }
    }

    let mut entries: Vec<(Vec<usize>, f64, bool)> = parts
        .into_iter()
        .zip(block_weights)
        .map(|(mut s, w)| {
            s.sort_unstable();
            (s, w, true)
        })
        .collect();
    for _ in 0..distractors {
        let q = spec.density * (1.0 - rng.unit());
        let members = rng.nonempty_subset(spec.n, q);
        entries.push((members, 1.0 + rng.unit(), false));
    }
    rng.shuffle(&mut entries);

    let planted: Vec<usize> = entries
        .iter()
        .enumerate()
        .filter_map(|(i, e)| e.2.then_some(i))
        .collect();
    let sets: Vec<Vec<usize>> = entries.iter().map(|e| e.0.clone()).collect();
    let weights: Vec<f64> = entries.iter().map(|e| e.1).collect();
    Ok((Instance::new(spec.n, &sets, weights)?, planted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{normalize, solve, verify_cover, Outcome, SolveOptions};

    #[test]
    fn random_is_deterministic() {
        let spec = GenSpec::random(16, 12, 0.25, 7);
        assert_eq!(gen_random(&spec).unwrap(), gen_random(&spec).unwrap());
        assert_ne!(gen_random(&spec).unwrap(), gen_random(&GenSpec { seed: 8, ..spec }).unwrap());
    }

    #[test]
    fn random_sets_are_nonempty() {
        let inst = gen_random(&GenSpec::random(5, 40, 0.05, 3)).unwrap();
        assert!(inst.sets().iter().all(|s| !s.is_clear()));
        assert!(inst.weights().iter().all(|&w| (0.0..1.0).contains(&w)));
    }

    #[test]
    fn full_density_is_one_set_after_dedupe() {
        let inst = gen_random(&GenSpec::random(6, 5, 1.0, 11)).unwrap();
        let (norm, map) = normalize(&inst);
        assert_eq!(norm.m(), 1);
        let cheapest = inst.weights().iter().cloned().fold(f64::INFINITY, f64::min);
        assert_eq!(inst.weight(map[0]), cheapest);
        assert_eq!(solve(&inst, SolveOptions::default()).0.weight(), Some(cheapest));
    }

    #[test]
    fn planted_single_block() {
        let (inst, planted) = gen_planted(&GenSpec::planted(8, 1, 5, 0.3, 1)).unwrap();
        assert_eq!(planted.len(), 1);
        assert_eq!(inst.set(planted[0]).count_ones(..), 8);
        assert!(inst.weight(planted[0]) < 0.5);
        assert_eq!(solve(&inst, SolveOptions::default()).0.chosen(), Some(&planted[..]));
    }

    #[test]
    fn planted_cover_verifies_and_is_light() {
        for seed in 0..20 {
            let (inst, planted) = gen_planted(&GenSpec::planted(30, 6, 14, 0.3, seed)).unwrap();
            assert!(verify_cover(&inst, &planted));
            assert!(inst.weight_of(&planted) < 1.0);
            let others = (0..inst.m()).filter(|i| !planted.contains(i));
            assert!(others.into_iter().all(|i| inst.weight(i) >= 1.0));
        }
    }

    #[test]
    fn planted_rescales_heavy_blocks() {
        let (inst, planted) = gen_planted(&GenSpec::planted(40, 40, 0, 0.5, 5)).unwrap();
        assert!(inst.weight_of(&planted) < 1.0);
        let (out, _) = solve(&inst, SolveOptions::default());
        assert!(matches!(out, Outcome::Cover { .. }));
    }

    #[test]
    fn parameter_errors() {
        assert!(gen_planted(&GenSpec::planted(3, 4, 0, 0.5, 0)).is_err());
        assert!(gen_random(&GenSpec::random(3, 4, 0.0, 0)).is_err());
        assert!(gen_random(&GenSpec::random(3, 4, 1.5, 0)).is_err());
        assert!(gen_random(&GenSpec::random(0, 2, 0.5, 0)).is_err());
        assert!(gen_random(&GenSpec::planted(3, 1, 1, 0.5, 0)).is_err());
        let bad = GenSpec {
            m: 7,
            ..GenSpec::planted(5, 2, 3, 0.5, 0)
        };
        assert!(gen_planted(&bad).is_err());
    }
}
