mod common;

use cartwreath::wreath::top_conjugate;
use cartwreath::{Permutation, WreathContext, WreathElement};
use common::*;
use proptest::prelude::*;

fn element(gamma: usize, k: usize) -> impl Strategy<Value = WreathElement> {
    (prop::collection::vec(perm_strategy(gamma), k), perm_strategy(k))
        .prop_map(|(base, top)| WreathElement::new(base, top).unwrap())
}

fn point(gamma: usize, k: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..gamma, k)
}

proptest! {
    #[test]
    fn action_matches_oracle(g in element(4, 3), phi in point(4, 3)) {
        let base: Vec<Vec<usize>> = g.base().iter().map(|f| f.images().to_vec()).collect();
        prop_assert_eq!(g.act(&phi).unwrap(), product_action_oracle(&base, g.top().images(), &phi));
    }

    #[test]
    fn right_action_law(a in element(3, 3), b in element(3, 3), phi in point(3, 3)) {
        let ab = a.multiply(&b).unwrap();
        prop_assert_eq!(ab.act(&phi).unwrap(), b.act(&a.act(&phi).unwrap()).unwrap());
        prop_assert!(a.multiply(&a.inverse()).unwrap().is_identity());
    }

    #[test]
    fn conjugation_identity(f in prop::collection::vec(perm_strategy(3), 4), h in perm_strategy(4)) {
        let top = WreathElement::pure_top(3, h.clone());
        let lhs = top.inverse().multiply(&WreathElement::pure_base(f.clone()).unwrap()).unwrap().multiply(&top).unwrap();
        prop_assert_eq!(lhs, WreathElement::pure_base(top_conjugate(&f, &h).unwrap()).unwrap());
    }

    #[test]
    fn materialize_decompose_round_trip(g in element(3, 3), h in element(3, 3)) {
        let ctx = WreathContext::new(3, 3).unwrap();
        let x = ctx.materialize(&g).unwrap();
        prop_assert_eq!(ctx.decompose(&x), Some(g.clone()));
        let y = ctx.materialize(&h).unwrap();
        prop_assert_eq!(ctx.materialize(&g.multiply(&h).unwrap()).unwrap(), x.then(&y));
    }
}

#[test]
fn non_members_are_rejected() {
    let ctx = WreathContext::new(2, 2).unwrap();
    // the 3-cycle on points 0,1,2 of {0,1}^2 breaks the coordinate partitions
    let x = Permutation::from_cycles(4, &[vec![0, 1, 2]]).unwrap();
    assert!(!ctx.contains(&x));
    assert_eq!(ctx.full_wreath_group(1000).unwrap().order().unwrap(), 8);
}
