mod common;

use proptest::prelude::*;
use rand::Rng;
use strongtree::decomp::{
    bags_containing, helly_intersection, induces_subtree, line_graph, line_graph_markov_tree,
    minimum_covering_subfamily, retraction, validate_markov_tree, validate_tree_decomposition, BagSubfamily,
    SpanningTreeSelector,
};
use strongtree::error::Error;
use strongtree::graph::{trees, Graph, VertexSet};
use strongtree::random;
use strongtree::strong::{validate_strong, Payload, StrongDecomposition};

/// Every spanning tree of `g`, as edge lists, by subset enumeration.
fn spanning_trees(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    let edges = g.edges();
    let need = g.n().saturating_sub(1);
    let mut out = Vec::new();
    let mut pick = Vec::new();
    fn go(
        i: usize,
        edges: &[(usize, usize)],
        need: usize,
        n: usize,
        pick: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if pick.len() == need {
            if Graph::new(n, pick.iter().copied()).unwrap().is_tree() {
                out.push(pick.clone());
            }
            return;
        }
        if edges.len() - i < need - pick.len() {
            return;
        }
        pick.push(edges[i]);
        go(i + 1, edges, need, n, pick, out);
        pick.pop();
        go(i + 1, edges, need, n, pick, out);
    }
    go(0, edges, need, g.n(), &mut pick, &mut out);
    out
}

#[test]
fn every_spanning_tree_of_every_line_graph_is_a_decomposition() {
    let mut checked = 0;
    for n in 2..=8 {
        for t in trees(n) {
            let lg = line_graph(&t);
            let all = spanning_trees(&lg);
            assert!(!all.is_empty());
            for st in all {
                let m = line_graph_markov_tree(&t, &SpanningTreeSelector::Explicit(st)).unwrap();
                let d = strongtree::decomp::TreeDecomposition::new(t.clone(), m.clone());
                assert!(validate_tree_decomposition(&d).ok, "{t} {m:?}");
                let sd = StrongDecomposition::new(0, t.clone(), Payload::Base { base: m });
                assert!(validate_strong(&sd).ok);
                checked += 1;
            }
        }
    }
    // Cayley-type counts: star K_{1,7} alone contributes 7^5 spanning trees of K_7
    assert!(checked > 16807, "{checked}");
}

#[test]
fn explicit_selector_rejects_non_spanning_edges() {
    let t = Graph::star(3);
    let err = line_graph_markov_tree(&t, &SpanningTreeSelector::Explicit(vec![(0, 1)])).unwrap_err();
    assert!(matches!(err, Error::BadSpanningTree(_)));
    let p = Graph::path(4);
    let err = line_graph_markov_tree(&p, &SpanningTreeSelector::Explicit(vec![(0, 2), (1, 2)])).unwrap_err();
    assert!(matches!(err, Error::BadSpanningTree(_)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bags_containing_each_element_form_a_subtree(seed in any::<u64>()) {
        let mut r = random::rng(seed);
        let m = random::random_markov_tree(&mut r, 8, 7);
        prop_assert!(validate_markov_tree(&m).ok);
        for v in 0..m.ground_size() {
            let f = bags_containing(&m, v).unwrap();
            prop_assert!(induces_subtree(&m, &f).unwrap());
        }
    }

    #[test]
    fn helly_matches_brute_force(seed in any::<u64>(), k in 1usize..5) {
        let mut r = random::rng(seed);
        let m = random::random_markov_tree(&mut r, 8, 3);
        let adj = adjacency(&m);
        let families: Vec<BagSubfamily> = (0..k)
            .map(|_| {
                let size = r.random_range(1..=m.bag_count());
                random::random_subtree(&mut r, &adj, size)
            })
            .collect();
        let plain: Vec<Vec<usize>> = families.iter().map(|f| f.as_slice().to_vec()).collect();
        prop_assert_eq!(helly_intersection(&m, &families).unwrap(), common::common_bag(&plain));
    }

    #[test]
    fn minimum_cover_is_the_unique_brute_force_minimum(seed in any::<u64>()) {
        let mut r = random::rng(seed);
        let m = random::random_markov_tree(&mut r, 8, 7);
        let n = m.ground_size();
        for mask in 1u32..(1 << n) {
            let u: VertexSet = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let single = m.bags().iter().any(|b| u.is_subset(b));
            match minimum_covering_subfamily(&m, &u) {
                Ok(f) => {
                    prop_assert!(!single);
                    let best = common::all_minimum_covers(&m, &u);
                    prop_assert_eq!(best.len(), 1);
                    prop_assert_eq!(f.as_slice(), &best[0][..]);
                }
                Err(Error::ContainedInSingleBag(_)) => prop_assert!(single),
                Err(e) => prop_assert!(false, "{}", e),
            }
        }
    }

    #[test]
    fn retractions_stay_valid(seed in any::<u64>(), size in 1usize..8) {
        let mut r = random::rng(seed);
        let d = random::random_decomposition(&mut r, 8, 7);
        let keep = random::random_subtree(&mut r, &adjacency(&d.markov), size);
        let ret = retraction(&d, &keep).unwrap();
        prop_assert!(validate_tree_decomposition(&ret.decomposition).ok);
        let union: VertexSet = ret.vertex_map.iter().copied().collect();
        let (induced, _) = d.host.induced_subgraph(&union).unwrap();
        prop_assert_eq!(&ret.decomposition.host, &induced);
        for (j, &b) in ret.bag_map.iter().enumerate() {
            let back = ret.decomposition.markov.bag(j).map(&ret.vertex_map);
            prop_assert_eq!(&back, d.markov.bag(b));
        }
    }
}

fn adjacency(m: &strongtree::decomp::MarkovTree) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); m.bag_count()];
    for &(a, b) in m.tree_edges() {
        adj[a].push(b);
        adj[b].push(a);
    }
    adj
}
