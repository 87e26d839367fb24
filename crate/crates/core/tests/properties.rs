use duocover_core::{
    build_family, covered_pair_graph, exhaustive_verify, graph_verify, independence_number, is_counterexample,
    is_witness, structural_verify, witness_block, Block, ConstructionParams, DesignFamily, Outcome, ProofIndex,
    QuerySubset, StructuralDefect, WitnessCase,
};
use proptest::prelude::*;

/// Applies the permutation `perm` (0-based images) to every block, keeping
/// tags: a construction over an arbitrary partition with arbitrary halves.
fn relabel(family: &DesignFamily, perm: &[u32]) -> DesignFamily {
    let blocks = family
        .blocks()
        .iter()
        .map(|b| Block::from_unsorted(b.members().iter().map(|&e| perm[e as usize - 1] + 1).collect()).unwrap())
        .collect();
    DesignFamily::with_tags(family.n(), family.k(), blocks, family.tags().to_vec()).unwrap()
}

fn arb_params() -> impl Strategy<Value = ConstructionParams> {
    (1u32..4, 1u32..4).prop_map(|(gh, th)| ConstructionParams::new(2 * gh, 2 * th).unwrap())
}

fn arb_family(max_n: u32) -> impl Strategy<Value = (DesignFamily, u32)> {
    (4..=max_n, 2u32..5, 2u32..5).prop_flat_map(move |(n, k, s)| {
        let k = k.min(n);
        let block = proptest::sample::subsequence((1..=n).collect::<Vec<_>>(), k as usize);
        proptest::collection::vec(block, 0..=12).prop_map(move |bs| {
            let blocks = bs.into_iter().map(|b| Block::new(b).unwrap()).collect();
            (DesignFamily::new(n, k, blocks).unwrap(), s.min(n))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn exhaustive_and_graph_agree((family, s) in arb_family(13)) {
        let ex = exhaustive_verify(&family, s).unwrap();
        let gr = graph_verify(&family, s, None).unwrap();
        prop_assert_eq!(ex.outcome, gr.outcome);
        for r in [&ex, &gr] {
            if let Some(c) = &r.counterexample {
                prop_assert_eq!(c.len() as u32, s);
                prop_assert!(is_counterexample(&family, c));
            }
        }
        let alpha = independence_number(&covered_pair_graph(&family), None).exact().unwrap().size() as u32;
        prop_assert_eq!(ex.outcome == Outcome::Holds, alpha < s);
    }

    #[test]
    fn relabeled_construction_still_certifies(
        params in arb_params(),
        perm_seed in proptest::collection::vec(any::<u32>(), 36),
    ) {
        let n = params.n() as usize;
        let mut perm: Vec<u32> = (0..n as u32).collect();
        // Fisher-Yates driven by the generated seeds.
        for i in (1..n).rev() {
            perm.swap(i, perm_seed[i] as usize % (i + 1));
        }
        let family = relabel(&build_family(&params), &perm);
        let s = params.guarantee_threshold();
        prop_assert_eq!(structural_verify(&family, s).unwrap().outcome, Outcome::Holds);
        prop_assert_eq!(graph_verify(&family, s, None).unwrap().outcome, Outcome::Holds);
        prop_assert_eq!(exhaustive_verify(&family, s).unwrap().outcome, Outcome::Holds);

        let below = structural_verify(&family, s - 1);
        if s > 2 {
            let below = below.unwrap();
            prop_assert_eq!(below.outcome, Outcome::Fails);
            prop_assert!(is_counterexample(&family, below.counterexample.as_ref().unwrap()));
            prop_assert_eq!(exhaustive_verify(&family, s - 1).unwrap().outcome, Outcome::Fails);
        }
    }

    #[test]
    fn witness_is_sound(
        params in arb_params(),
        picks in proptest::collection::btree_set(0u32..36, 1..8),
    ) {
        let family = build_family(&params);
        let index = ProofIndex::build(&family).unwrap().unwrap();
        let members: Vec<u32> = picks.into_iter().filter(|&p| p < params.n()).map(|p| p + 1).collect();
        prop_assume!(!members.is_empty());
        let subset = QuerySubset::new(members, params.n()).unwrap();
        match index.witness(&subset) {
            Ok(w) => {
                prop_assert!(is_witness(&family, &subset, w.block_index));
                let base_hit = family.blocks()[..params.group_count() as usize]
                    .iter()
                    .any(|b| b.intersection_len(subset.members()) >= 2);
                prop_assert_eq!(matches!(w.case, WitnessCase::BaseCollision { .. }), base_hit);
                prop_assert_eq!(witness_block(&family, &subset).unwrap(), w);
            }
            Err(_) => {
                prop_assert!((subset.len() as u32) < params.guarantee_threshold());
                prop_assert!(is_counterexample(&family, &subset));
            }
        }
    }
}

#[test]
fn methods_agree_on_every_small_construction_and_mutilation() {
    for (g, t) in [(2, 2), (2, 4), (4, 2), (2, 6), (4, 4)] {
        let params = ConstructionParams::new(g, t).unwrap();
        let family = build_family(&params);
        let threshold = params.guarantee_threshold();
        for s in 2..=threshold + 1 {
            let ex = exhaustive_verify(&family, s).unwrap();
            let gr = graph_verify(&family, s, None).unwrap();
            let st = structural_verify(&family, s).unwrap();
            assert_eq!(ex.outcome, gr.outcome, "g={g} t={t} s={s}");
            assert_eq!(ex.outcome, st.outcome, "g={g} t={t} s={s}");
        }
        for i in 0..family.len() {
            let cut = family.without_block(i);
            let ex = exhaustive_verify(&cut, threshold).unwrap();
            assert_eq!(ex.outcome, Outcome::Fails, "g={g} t={t} without {i}");
            assert_eq!(graph_verify(&cut, threshold, None).unwrap().outcome, Outcome::Fails);
            let st = structural_verify(&cut, threshold).unwrap();
            assert_eq!(st.outcome, Outcome::Fails);
            assert!(st.defect.is_some() && !matches!(st.defect, Some(StructuralDefect::BelowThreshold { .. })));
        }
    }
}
