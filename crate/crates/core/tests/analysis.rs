use proptest::collection::vec;
use proptest::prelude::*;

use wmesc_core::analysis::{characteristic_root, BranchingVector};

fn vector() -> impl Strategy<Value = Vec<(u32, u32)>> {
    vec((1u32..9, 1u32..4), 1..4)
}

#[test]
fn table_roots_meet_absolute_tolerance() {
    for e in wmesc_core::analysis::recurrence_table() {
        assert!(characteristic_root(&e.vector).residual <= 1e-12, "entry {}", e.id);
    }
}

proptest! {
    #[test]
    fn root_is_a_root(terms in vector()) {
        let bv = BranchingVector::new(&terms).unwrap();
        let r = characteristic_root(&bv);
        prop_assert!(r.root >= 1.0);
        let top = terms.iter().map(|&(d, _)| d).max().unwrap() as i32;
        prop_assert!(r.residual <= 1e-12 * r.root.powi(top));
        prop_assert_eq!(r.residual, bv.characteristic(r.root).abs());
    }

    #[test]
    fn more_children_never_lower_the_root(terms in vector(), pick in any::<prop::sample::Index>()) {
        let base = characteristic_root(&BranchingVector::new(&terms).unwrap()).root;
        let i = pick.index(terms.len());
        let mut more = terms.clone();
        more[i].1 += 1;
        prop_assert!(characteristic_root(&BranchingVector::new(&more).unwrap()).root >= base - 1e-12);
        if terms[i].0 > 1 {
            let mut shorter = terms.clone();
            shorter[i].0 -= 1;
            prop_assert!(characteristic_root(&BranchingVector::new(&shorter).unwrap()).root >= base - 1e-12);
        }
    }
}
