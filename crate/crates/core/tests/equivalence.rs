use proptest::collection::vec;
use proptest::prelude::*;

use wmesc_core::analysis::audit_leaf_bound;
use wmesc_core::generator::{gen_planted, gen_random, GenSpec};
use wmesc_core::oracle::brute_force;
use wmesc_core::solver::solve_normalized;
use wmesc_core::{normalize, solve, verify_cover, Instance, Outcome, SolveOptions};

const PRUNED: SolveOptions = SolveOptions { prune: true };
const UNPRUNED: SolveOptions = SolveOptions { prune: false };

/// Small instances with membership masks and weights drawn from a coarse
/// grid, so ties, duplicates and empty sets all show up.
fn small_instance() -> impl Strategy<Value = Instance> {
    (0usize..8, 0usize..12)
        .prop_flat_map(|(n, m)| (Just(n), vec(vec(any::<bool>(), n), m), vec(0u32..16, m)))
        .prop_map(|(n, masks, grid)| {
            let sets: Vec<Vec<usize>> = masks
                .iter()
                .map(|mask| mask.iter().enumerate().filter(|(_, &b)| b).map(|(e, _)| e).collect())
                .collect();
            let weights = grid.iter().map(|&g| g as f64 * 0.25).collect();
            Instance::new(n, &sets, weights).unwrap()
        })
}

fn real_weights() -> impl Strategy<Value = Instance> {
    (1usize..10, 1usize..13, 0.05f64..0.7, any::<u64>())
        .prop_map(|(n, m, p, seed)| gen_random(&GenSpec::random(n, m, p, seed)).unwrap())
}

fn check_against_oracle(inst: &Instance) -> Result<(), TestCaseError> {
    let want = brute_force(inst).unwrap();
    for opts in [PRUNED, UNPRUNED] {
        let (got, _) = solve(inst, opts);
        prop_assert_eq!(got.weight(), want.weight());
        if let Some(chosen) = got.chosen() {
            prop_assert!(verify_cover(inst, chosen));
            prop_assert_eq!(got.weight(), Some(inst.weight_of(chosen)));
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(600))]

    #[test]
    fn grid_weights_match_oracle(inst in small_instance()) {
        check_against_oracle(&inst)?;
    }

    #[test]
    fn real_weights_match_oracle(inst in real_weights()) {
        check_against_oracle(&inst)?;
    }

    #[test]
    fn normalization_preserves_optimum(inst in small_instance()) {
        let (norm, map) = normalize(&inst);
        let direct = brute_force(&inst).unwrap();
        let reduced = brute_force(&norm).unwrap();
        prop_assert_eq!(direct.weight(), reduced.weight());
        if let Some(chosen) = reduced.chosen() {
            let mapped: Vec<usize> = chosen.iter().map(|&i| map[i]).collect();
            prop_assert!(verify_cover(&inst, &mapped));
        }
        prop_assert_eq!(normalize(&norm), (norm.clone(), (0..norm.m()).collect::<Vec<_>>()));
    }

    #[test]
    fn unpruned_leaves_within_bound(inst in small_instance()) {
        let (norm, _) = normalize(&inst);
        let (_, stats) = solve_normalized(&norm, UNPRUNED);
        prop_assert!(stats.leaves >= 1);
        prop_assert!(stats.leaves <= stats.nodes);
        prop_assert!(stats.max_depth <= norm.m());
        prop_assert_eq!(stats.pruned, 0);
        let audit = audit_leaf_bound(&stats, norm.m());
        prop_assert!(audit.pass, "{} leaves for m = {}", stats.leaves, norm.m());
    }

    #[test]
    fn solve_is_deterministic(inst in real_weights()) {
        prop_assert_eq!(solve(&inst, PRUNED), solve(&inst, PRUNED));
        prop_assert_eq!(solve(&inst, UNPRUNED), solve(&inst, UNPRUNED));
    }

    #[test]
    fn pruning_keeps_the_reported_cover(inst in real_weights()) {
        let (a, sa) = solve(&inst, PRUNED);
        let (b, sb) = solve(&inst, UNPRUNED);
        prop_assert_eq!(a, b);
        prop_assert!(sa.nodes <= sb.nodes);
    }
}

#[test]
fn planted_small_instances_match_oracle() {
    for seed in 0..60 {
        let spec = GenSpec::planted(10, 3, 9, 0.3, seed);
        let (inst, planted) = gen_planted(&spec).unwrap();
        let (got, _) = solve(&inst, PRUNED);
        assert_eq!(got.chosen(), Some(&planted[..]), "seed {seed}");
        assert_eq!(brute_force(&inst).unwrap(), got);
    }
}

#[test]
fn oracle_reference_instance() {
    // n=16, m=12, p=0.25, seed=7
    let inst = gen_random(&GenSpec::random(16, 12, 0.25, 7)).unwrap();
    let want = brute_force(&inst).unwrap();
    assert_eq!(solve(&inst, PRUNED).0.weight(), want.weight());
}

#[test]
fn outcome_of_overlap_is_no_solution() {
    let inst = Instance::new(3, &[vec![0, 1], vec![1, 2]], vec![1.0, 1.0]).unwrap();
    assert_eq!(solve(&inst, UNPRUNED).0, Outcome::NoSolution);
    assert_eq!(brute_force(&inst).unwrap(), Outcome::NoSolution);
}
