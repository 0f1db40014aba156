use proptest::prelude::*;
use slimsell_core::repr::{spmv_step, ChunkedMatrix, SlimSellRepr};
use slimsell_core::semiring::{BfsSemiring, Boolean, Real, SelMax, Tropical};
use slimsell_core::{
    bfs_spmv, bfs_traditional, check_parents, BfsOptions, Graph, Schedule, Variant, INF,
};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec((0..n as u64, 0..n as u64), 0..=2 * n)
            .prop_map(move |edges| Graph::from_edges(n, edges).unwrap())
    })
}

fn options_strategy() -> impl Strategy<Value = (usize, usize, bool, Option<usize>, Schedule)> {
    (
        prop::sample::select(vec![1usize, 2, 4, 8, 16]),
        prop::sample::select(vec![1usize, 2, 4, 16, 1000]),
        any::<bool>(),
        prop::option::of(1usize..6),
        prop::sample::select(vec![Schedule::Static, Schedule::Dynamic]),
    )
}

/// Steps the BFS by hand and checks that carrying the input rows of every
/// chunk the skip predicate drops leaves the post-processed state unchanged.
fn check_skip_soundness<S: BfsSemiring>(
    r: &SlimSellRepr,
    s: &S,
    root: usize,
) -> Result<(), TestCaseError> {
    let l = ChunkedMatrix::<S>::layout(r);
    let mut state = s
        .init_state(l.n_padded, l.n, l.plan.inv_perm[root] as usize)
        .unwrap();
    for k in 1..=(l.n as u32 + 1) {
        let input = s.product_input(&state).to_vec();
        let full = spmv_step(r, s, &input, 0..l.n_chunks()).unwrap();
        let mut carried = full.clone();
        for chunk in 0..l.n_chunks() {
            if s.should_skip_chunk(&state, l.real_rows(chunk)) {
                let rows = l.chunk_rows(chunk);
                carried[rows.clone()].copy_from_slice(&input[rows]);
            }
        }
        let prev_x = state.x.clone();
        let mut skipped = state.clone();
        s.post_process(&mut state, full, k);
        s.post_process(&mut skipped, carried, k);
        prop_assert_eq!(s.product_input(&skipped), s.product_input(&state));
        prop_assert_eq!(&skipped.d, &state.d);
        prop_assert_eq!(&skipped.f, &state.f);
        prop_assert_eq!(&skipped.g, &state.g);
        prop_assert_eq!(&skipped.p, &state.p);
        if s.is_converged(&prev_x, &state) {
            return Ok(());
        }
    }
    prop_assert!(false, "did not converge");
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn every_variant_matches_the_queue_oracle(
        g in graph_strategy(64),
        (c, sigma, slimwork, slimchunk, schedule) in options_strategy(),
        root_pick in any::<prop::sample::Index>(),
    ) {
        let root = root_pick.index(g.n());
        let r = SlimSellRepr::build(&g, c, sigma).unwrap();
        let oracle = bfs_traditional(&g, root).unwrap();
        for variant in Variant::ALL {
            let opts = BfsOptions { slimwork, slimchunk, schedule, workers: 2, ..BfsOptions::new(variant) };
            let res = bfs_spmv(&r, root, &opts).unwrap();
            prop_assert_eq!(&res.d, &oracle.d, "{}", variant);
            prop_assert_eq!(res.iterations, oracle.iterations);
            prop_assert!(check_parents(&g, root, &res.d, &res.p).is_ok());
            if variant != Variant::SelMax {
                // derived parents use the same smallest-ID rule as the oracle
                prop_assert_eq!(&res.p, &oracle.p);
            }
            let frontiers: Vec<usize> = res.per_iter.iter().map(|s| s.frontier_size).collect();
            let expected: Vec<usize> = oracle.per_iter.iter().map(|s| s.frontier_size).collect();
            prop_assert_eq!(frontiers, expected);
        }
    }

    #[test]
    fn slimwork_is_transparent(g in graph_strategy(64), (c, sigma, _, slimchunk, _) in options_strategy(), root_pick in any::<prop::sample::Index>()) {
        let root = root_pick.index(g.n());
        let r = SlimSellRepr::build(&g, c, sigma).unwrap();
        for variant in Variant::ALL {
            let off = bfs_spmv(&r, root, &BfsOptions { slimchunk, ..BfsOptions::new(variant) }).unwrap();
            let on = bfs_spmv(&r, root, &BfsOptions { slimchunk, slimwork: true, ..BfsOptions::new(variant) }).unwrap();
            prop_assert_eq!(&on.d, &off.d);
            prop_assert_eq!(&on.p, &off.p);
            let work = |res: &slimsell_core::BfsResult| res.per_iter.iter().map(|s| s.columns_processed).sum::<usize>();
            prop_assert!(work(&on) <= work(&off));
            // skipped chunks only accumulate
            let processed: Vec<usize> = on.per_iter.iter().map(|s| s.chunks_processed).collect();
            prop_assert!(processed.windows(2).all(|w| w[1] <= w[0]));
        }
    }

    #[test]
    fn skipped_chunks_would_not_change(g in graph_strategy(48), (c, sigma, ..) in options_strategy(), root_pick in any::<prop::sample::Index>()) {
        let root = root_pick.index(g.n());
        let r = SlimSellRepr::build(&g, c, sigma).unwrap();
        check_skip_soundness(&r, &Tropical, root)?;
        check_skip_soundness(&r, &Boolean, root)?;
        check_skip_soundness(&r, &Real, root)?;
        check_skip_soundness(&r, &SelMax, root)?;
    }

    #[test]
    fn slimchunk_is_transparent(g in graph_strategy(64), (c, sigma, slimwork, ..) in options_strategy(), l in 1usize..20, root_pick in any::<prop::sample::Index>()) {
        let root = root_pick.index(g.n());
        let r = SlimSellRepr::build(&g, c, sigma).unwrap();
        for variant in Variant::ALL {
            let off = bfs_spmv(&r, root, &BfsOptions { slimwork, ..BfsOptions::new(variant) }).unwrap();
            let on = bfs_spmv(&r, root, &BfsOptions { slimwork, slimchunk: Some(l), ..BfsOptions::new(variant) }).unwrap();
            prop_assert_eq!(&on.d, &off.d);
            prop_assert_eq!(&on.p, &off.p);
            prop_assert!(on.per_iter.iter().all(|s| s.max_unit_cells <= l * c));
        }
    }

    #[test]
    fn work_counters_are_deterministic(g in graph_strategy(64), (c, sigma, slimwork, slimchunk, schedule) in options_strategy()) {
        let r = SlimSellRepr::build(&g, c, sigma).unwrap();
        for variant in Variant::ALL {
            let runs: Vec<_> = [1, 4, 8]
                .iter()
                .map(|&workers| {
                    let opts = BfsOptions { slimwork, slimchunk, schedule, workers, ..BfsOptions::new(variant) };
                    bfs_spmv(&r, 0, &opts).unwrap()
                })
                .collect();
            for res in &runs[1..] {
                prop_assert_eq!(&res.d, &runs[0].d);
                prop_assert_eq!(&res.p, &runs[0].p);
                let a: Vec<_> = res.per_iter.iter().map(|s| s.work()).collect();
                let b: Vec<_> = runs[0].per_iter.iter().map(|s| s.work()).collect();
                prop_assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn filter_and_parent_encodings(g in graph_strategy(48), c in prop::sample::select(vec![1usize, 2, 4, 8]), root_pick in any::<prop::sample::Index>()) {
        let root = root_pick.index(g.n());
        let r = SlimSellRepr::build(&g, c, g.n()).unwrap();
        let l = r.layout();
        let rootp = l.plan.inv_perm[root] as usize;

        let mut b = Boolean.init_state(l.n_padded, l.n, rootp).unwrap();
        for k in 1..=(l.n as u32 + 1) {
            let out = spmv_step(&r, &Boolean, &b.f, 0..l.n_chunks()).unwrap();
            Boolean.post_process(&mut b, out, k);
            for v in 0..l.n {
                prop_assert_eq!(b.g[v] == 1, b.d[v] == INF);
            }
            if Boolean.is_converged(&[], &b) {
                break;
            }
        }

        let mut s = SelMax.init_state(l.n_padded, l.n, rootp).unwrap();
        for k in 1..=(l.n as u32 + 1) {
            let out = spmv_step(&r, &SelMax, &s.x, 0..l.n_chunks()).unwrap();
            SelMax.post_process(&mut s, out, k);
            for v in 0..l.n {
                prop_assert!(s.x[v] == 0 || s.x[v] as usize == v + 1);
                prop_assert_eq!(s.p[v] != 0, s.d[v] != INF);
            }
            if SelMax.is_converged(&[], &s) {
                break;
            }
        }
    }
}

#[test]
fn eccentricity_bounds_iterations() {
    // a path of 10 has eccentricity 9 from an end and 5 from the middle
    let g = Graph::from_edges(10, (1..10u64).map(|v| (v - 1, v))).unwrap();
    let r = SlimSellRepr::build(&g, 4, 10).unwrap();
    for (root, ecc) in [(0usize, 9usize), (5, 5)] {
        for variant in Variant::ALL {
            let res = bfs_spmv(&r, root, &BfsOptions::new(variant)).unwrap();
            assert_eq!(res.iterations, ecc + 1, "{variant} root {root}");
        }
    }
}
