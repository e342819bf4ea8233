mod common;

use brpic_core::stab::{brute_force_stabilizer, BruteForceOptions};
use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(config())]

    #[test]
    fn gl_action_is_a_linear_group_action((p, n, seed) in params()) {
        action_law(p, n, seed)?;
    }

    #[test]
    fn projection_is_equivariant_and_kills_delta((p, n, seed) in params()) {
        projection_equivariant(p, n, seed)?;
    }

    #[test]
    fn representatives_are_3_cocycles((p, n, seed) in params()) {
        cocycle_identity(p, n, seed)?;
    }

    #[test]
    fn radical_is_the_contraction_kernel((p, n, seed) in params()) {
        radical_subspace(p, n, seed)?;
    }

    #[test]
    fn sym3_reduction_is_well_defined(n in 1usize..=5, seed in any::<u64>()) {
        sym3_well_defined(n, seed)?;
    }
}

proptest! {
    #![proptest_config(proptest::test_runner::Config { cases: 12, ..config() })]

    #[test]
    fn small_stabilizers_are_subgroups(p in prop::sample::select(vec![2u32, 3]), n in 1usize..=3, seed in any::<u64>()) {
        let f = field(p);
        let w = random_class(f, n, &mut rng(seed));
        let opts = BruteForceOptions { workers: 2, keep_sample: true, ..Default::default() };
        let report = brute_force_stabilizer(&w, opts).unwrap();
        let elems = report.sample_matrices().unwrap();
        let order: usize = report.order.unwrap().try_into().unwrap();
        prop_assume!(order <= elems.len());
        let set: std::collections::HashSet<_> = elems.iter().copied().collect();
        for g in &elems {
            prop_assert!(set.contains(&g.mat_inverse().unwrap()));
            prop_assert_eq!(w.gl_act(g).unwrap(), w.clone());
        }
        for g in elems.iter().take(40) {
            for h in elems.iter().take(40) {
                prop_assert!(set.contains(&(*g * *h)));
            }
        }
        let single = brute_force_stabilizer(&w, BruteForceOptions { workers: 1, ..opts }).unwrap();
        prop_assert_eq!(single.order, Some(order.into()));
    }
}
