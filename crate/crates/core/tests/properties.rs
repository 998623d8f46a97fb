use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use twlist_core::construct::{peel, peel_and_color, PeelRecord};
use twlist_core::decomp::{lift_line, lift_total, normalize, root_and_annotate, validate};
use twlist_core::generate::{random_lists, random_partial_ktree, random_tree, KTreeParams};
use twlist_core::listcolor::bipartite_list_edge_color;
use twlist_core::treewidth::{treewidth_exact, treewidth_heuristic, ExactTreewidth};
use twlist_core::{check_coloring, line_graph, total_graph, ElementId, Graph, ListAssignment, Mode};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..=n * 2).prop_map(move |raw| {
            let mut pairs: Vec<(usize, usize)> =
                raw.into_iter().filter(|(u, v)| u != v).map(|(u, v)| (u.min(v), u.max(v))).collect();
            pairs.sort_unstable();
            pairs.dedup();
            Graph::new(n, &pairs).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn degrees_sum_to_twice_edges(g in arb_graph(12)) {
        prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.m());
        for v in 0..g.n() {
            prop_assert_eq!(g.degree(v), g.neighbors(v).len());
        }
    }

    #[test]
    fn derived_graph_sizes(g in arb_graph(10)) {
        let (l, _) = line_graph(&g);
        let pairs: usize = g.degrees().iter().map(|d| d * d.saturating_sub(1) / 2).sum();
        prop_assert_eq!((l.n(), l.m()), (g.m(), pairs));
        let (t, map) = total_graph(&g);
        prop_assert_eq!(t.n(), g.n() + g.m());
        prop_assert_eq!(t.m(), g.m() + pairs + 2 * g.m());
        prop_assert_eq!(map.len(), t.n());
    }

    #[test]
    fn heuristic_decompositions_validate(g in arb_graph(14)) {
        let (w, td) = treewidth_heuristic(&g);
        prop_assert_eq!(validate(&g, &td), Ok(w));
        if let Ok(ExactTreewidth::Found { width, decomposition }) = treewidth_exact(&g, 20, 30) {
            prop_assert!(width <= w);
            prop_assert_eq!(validate(&g, &decomposition), Ok(width));
        }
    }

    #[test]
    fn ktree_decompositions_normalize_and_lift(seed in any::<u64>(), k in 1usize..=3, n in 5usize..40) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, td) = random_partial_ktree(&mut rng, KTreeParams { n, k, hub_bias: 0.4, keep: 0.8 });
        prop_assert!(g.m() <= k * g.n());
        let norm = normalize(&g, &td).unwrap();
        prop_assert!(norm.num_nodes() <= g.n());
        prop_assert!(validate(&g, &norm).unwrap() <= k);
        let delta = g.max_degree();
        let (lg, _) = line_graph(&g);
        let ll = lift_line(&g, &td).unwrap();
        prop_assert!(validate(&lg, &ll).unwrap() + 1 <= ((k + 1) * delta).max(1));
        let (tg, _) = total_graph(&g);
        let lt = lift_total(&g, &td).unwrap();
        prop_assert!(validate(&tg, &lt).unwrap() + 1 <= (k + 1) * (delta + 1));
        let rooted = root_and_annotate(&norm, 0).unwrap();
        for v in 0..g.n() {
            let t = rooted.min_node[v].unwrap();
            prop_assert!(rooted.base.bag(t).contains(&v));
        }
    }

    #[test]
    fn galvin_on_complete_bipartite(seed in any::<u64>(), a in 1usize..=4, b in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pairs: Vec<(usize, usize)> = (0..a).flat_map(|x| (0..b).map(move |y| (x, a + y))).collect();
        let h = Graph::new(a + b, &pairs).unwrap();
        let d = a.max(b);
        let lists = random_lists(&mut rng, &h, Mode::Edge, d, 3 * d);
        let c = bipartite_list_edge_color(&h, &lists).unwrap();
        prop_assert_eq!(check_coloring(&h, Mode::Edge, &c, Some(&lists)), Ok(()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn constructive_edge_coloring_on_trees(seed in any::<u64>(), hub in 48usize..70, extra in 0usize..60) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_tree(&mut rng, hub + 1 + extra, hub);
        let d = g.max_degree();
        let lists = random_lists(&mut rng, &g, Mode::Edge, d, 2 * d);
        let out = peel_and_color(&g, 1, &lists, Mode::Edge).unwrap();
        prop_assert_eq!(check_coloring(&g, Mode::Edge, &out.coloring, Some(&lists)), Ok(()));
    }

    #[test]
    fn constructive_total_coloring_on_two_trees(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, _) = random_partial_ktree(&mut rng, KTreeParams { n: 300, k: 2, hub_bias: 0.9, keep: 0.95 });
        prop_assume!(g.max_degree() >= 128);
        let d = g.max_degree();
        let lists = random_lists(&mut rng, &g, Mode::Total, d + 1, 2 * d);
        let out = peel_and_color(&g, 2, &lists, Mode::Total).unwrap();
        prop_assert_eq!(check_coloring(&g, Mode::Total, &out.coloring, Some(&lists)), Ok(()));
    }

    #[test]
    fn peel_replays(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, _) = random_partial_ktree(&mut rng, KTreeParams { n: 300, k: 2, hub_bias: 0.9, keep: 1.0 });
        prop_assume!(g.max_degree() >= 128);
        let stack = peel(&g, 2, Mode::Edge).unwrap();
        let mut alive = stack.replay(&g);
        let residual = alive.iter().filter(|&&a| a).count();
        let removed: usize = stack.records.iter().map(|r| match r {
            PeelRecord::Edge(_) => 1,
            PeelRecord::Twin { twins, common, edges } => {
                assert_eq!(twins.len(), 3);
                assert!(common.len() <= 3);
                edges.len()
            }
        }).sum();
        prop_assert_eq!(residual + removed, g.m());
        for r in stack.records.iter().rev() {
            match r {
                PeelRecord::Edge(e) => { prop_assert!(!alive[*e]); alive[*e] = true; }
                PeelRecord::Twin { edges, .. } => for &e in edges { prop_assert!(!alive[e]); alive[e] = true; },
            }
        }
        prop_assert!(alive.iter().all(|&a| a));
    }
}

#[test]
fn lists_outside_the_graph_are_rejected() {
    let g = Graph::new(2, &[(0, 1)]).unwrap();
    let mut l = ListAssignment::new();
    l.insert(ElementId::Edge(3), [1]).unwrap();
    assert!(l.check(&g).is_err());
}
