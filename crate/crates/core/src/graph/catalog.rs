//! Small graphs up to isomorphism, for exhaustive sweeps.

use super::{find_isomorphism_pinned, Graph};
use std::collections::BTreeMap;

/// One representative per isomorphism class of graphs on `n` vertices
/// satisfying `keep`, in order of first appearance by edge bitmask.
fn unlabeled(n: usize, keep: impl Fn(&Graph) -> bool) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    assert!(pairs.len() < 32, "catalog limited to graphs on at most 8 vertices");
    let all = (0u32..(1u32 << pairs.len())).map(|mask| {
        Graph::new(
            n,
            pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e),
        )
        .expect("pairs are distinct")
    });
    distinct(all.filter(|g| keep(g)))
}

/// First representative of each isomorphism class, in input order.
fn distinct(graphs: impl Iterator<Item = Graph>) -> Vec<Graph> {
    let mut buckets: BTreeMap<(usize, usize, Vec<usize>), Vec<usize>> = BTreeMap::new();
    let mut reps: Vec<Graph> = Vec::new();
    for g in graphs {
        let mut degrees: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
        degrees.sort_unstable();
        let bucket = buckets.entry((g.n(), g.edge_count(), degrees)).or_default();
        let seen = bucket
            .iter()
            .any(|&i| find_isomorphism_pinned(&reps[i], &g, &[]).expect("empty pin").is_some());
        if !seen {
            bucket.push(reps.len());
            reps.push(g);
        }
    }
    reps
}

/// Connected graphs on exactly `n` vertices with at least one edge.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    unlabeled(n, |g| g.edge_count() > 0 && g.is_connected())
}

/// All graphs on exactly `n` vertices with at least one edge.
pub fn graphs_with_edges(n: usize) -> Vec<Graph> {
    unlabeled(n, |g| g.edge_count() > 0)
}

/// Forests on exactly `n` vertices (including the edgeless one).
pub fn forests(n: usize) -> Vec<Graph> {
    unlabeled(n, Graph::is_forest)
}

/// Trees on exactly `n` vertices, grown leaf by leaf from smaller trees.
pub fn trees(n: usize) -> Vec<Graph> {
    match n {
        0 => return Vec::new(),
        1 => return vec![Graph::empty(1)],
        _ => {}
    }
    let grown = trees(n - 1).into_iter().flat_map(|t| {
        (0..t.n()).map(move |v| Graph::new(n, t.edges().iter().copied().chain([(v, n - 1)])).expect("new leaf edge"))
    });
    distinct(grown)
}
