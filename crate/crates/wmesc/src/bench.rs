//! Seeded leaf-count suites run without pruning.
//!
//! Trial `t` for family size `m` draws a random instance with `m` sets over
//! `n = max(4, m · [1/2, 1, 2][(t / 4) % 3])` elements (rounded down) and density
//! `[0.1, 0.2, 0.3, 0.5][t % 4]`, seeded by [`trial_seed`]. The search runs
//! with pruning off and its leaf count is audited against `1.30^m'`, where
//! `m'` is the number of sets left after normalization.

use std::fmt::Write as _;

use wmesc_core::analysis::{audit_leaves, LeafAudit};
use wmesc_core::generator::{gen_random, GenSpec};
use wmesc_core::solver::solve_normalized;
use wmesc_core::{normalize, Error, SolveOptions};

const DENSITIES: [f64; 4] = [0.1, 0.2, 0.3, 0.5];

pub fn trial_seed(seed: u64, m: usize, trial: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ ((m as u64) << 32) ^ trial as u64
}

pub fn trial_spec(seed: u64, m: usize, trial: usize) -> GenSpec {
    let n = match (trial / 4) % 3 {
        0 => m / 2,
        1 => m,
        _ => 2 * m,
    }
    .max(4);
    GenSpec::random(n, m, DENSITIES[trial % 4], trial_seed(seed, m, trial))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialResult {
    pub spec: GenSpec,
    /// Sets after normalization.
    pub m: usize,
    pub audit: LeafAudit,
}

pub fn run_trial(seed: u64, m: usize, trial: usize) -> Result<TrialResult, Error> {
    let spec = trial_spec(seed, m, trial);
    let inst = gen_random(&spec)?;
    let (norm, _) = normalize(&inst);
    let (_, stats) = solve_normalized(&norm, SolveOptions { prune: false });
    Ok(TrialResult {
        spec,
        m: norm.m(),
        audit: audit_leaves(stats.leaves, norm.m()),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub m: usize,
    pub trials: usize,
    pub max_leaves: u64,
    /// `1.30^m`.
    pub bound: f64,
    /// Largest `leaves / 1.299^m'` over the trials.
    pub max_ratio: f64,
    pub failures: usize,
}

impl BenchRow {
    pub fn pass(&self) -> bool {
        self.failures == 0
    }
}

pub fn run_bench(m_list: &[usize], trials: usize, seed: u64) -> Result<Vec<BenchRow>, Error> {
    m_list
        .iter()
        .map(|&m| {
            let mut row = BenchRow {
                m,
                trials,
                max_leaves: 0,
                bound: audit_leaves(0, m).bound,
                max_ratio: 0.0,
                failures: 0,
            };
            for t in 0..trials {
                let r = run_trial(seed, m, t)?;
                row.max_leaves = row.max_leaves.max(r.audit.leaves);
                row.max_ratio = row.max_ratio.max(r.audit.ratio);
                if !r.audit.pass {
                    row.failures += 1;
                }
            }
            Ok(row)
        })
        .collect()
}

pub fn format_bench(rows: &[BenchRow]) -> String {
    let mut out = String::from("# m trials max_leaves bound_1.30^m max_ratio_1.299^m result\n");
    for r in rows {
        writeln!(
            out,
            "{} {} {} {:.4} {:.6} {}",
            r.m,
            r.trials,
            r.max_leaves,
            r.bound,
            r.max_ratio,
            if r.pass() { "pass" } else { "fail" }
        )
        .unwrap();
    }
    out
}
