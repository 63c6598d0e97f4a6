//! Seeded random instances for property sweeps.

use crate::decomp::{BagSubfamily, MarkovTree, TreeDecomposition};
use crate::dist::SparseDistribution;
use crate::graph::{Graph, VertexSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Edges of a uniformly attached random tree on `n` vertices.
pub fn random_tree(rng: &mut impl Rng, n: usize) -> Vec<(usize, usize)> {
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    (1..n).map(|i| (labels[rng.random_range(0..i)], labels[i])).collect()
}

fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    adj
}

/// A random connected set of at most `size` tree nodes, grown from a random start.
pub fn random_subtree(rng: &mut impl Rng, adj: &[Vec<usize>], size: usize) -> BagSubfamily {
    let start = rng.random_range(0..adj.len());
    let mut chosen = vec![start];
    let mut frontier: Vec<usize> = adj[start].clone();
    while chosen.len() < size && !frontier.is_empty() {
        let next = frontier.swap_remove(rng.random_range(0..frontier.len()));
        if chosen.contains(&next) {
            continue;
        }
        chosen.push(next);
        frontier.extend(adj[next].iter().copied().filter(|y| !chosen.contains(y)));
    }
    BagSubfamily::new(chosen)
}

/// A Markov tree with `1..=max_bags` bags over a ground set of `1..=max_ground`
/// elements. Each element occupies a random subtree; no bag is left empty.
pub fn random_markov_tree(rng: &mut impl Rng, max_bags: usize, max_ground: usize) -> MarkovTree {
    let bags = rng.random_range(1..=max_bags);
    let ground = rng.random_range(1..=max_ground);
    let tree = random_tree(rng, bags);
    let adj = adjacency(bags, &tree);
    let mut homes: Vec<BagSubfamily> = (0..ground)
        .map(|_| {
            let size = rng.random_range(1..=bags);
            random_subtree(rng, &adj, size)
        })
        .collect();
    for b in 0..bags {
        if homes.iter().any(|h| h.contains(b)) {
            continue;
        }
        let v = rng.random_range(0..ground);
        let path = crate::decomp::shortest_path(&adj, homes[v].as_slice(), &[b]).expect("tree is connected");
        homes[v] = homes[v].union(&BagSubfamily::new(path));
    }
    let bag_sets = (0..bags)
        .map(|b| (0..ground).filter(|&v| homes[v].contains(b)).collect())
        .collect();
    MarkovTree::new(ground, bag_sets, tree)
}

/// A tree decomposition whose host takes each pair inside a common bag as an
/// edge with probability one half.
pub fn random_decomposition(rng: &mut impl Rng, max_bags: usize, max_ground: usize) -> TreeDecomposition {
    let markov = random_markov_tree(rng, max_bags, max_ground);
    let n = markov.ground_size();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let together = markov.bags().iter().any(|b| b.contains(u) && b.contains(v));
            if together && rng.random_bool(0.5) {
                edges.push((u, v));
            }
        }
    }
    TreeDecomposition::new(Graph::new(n, edges).expect("simple graph"), markov)
}

/// A distribution on `index_set` with `1..=max_atoms` random atoms of random
/// integer weight.
pub fn random_joint(
    rng: &mut impl Rng,
    index_set: &VertexSet,
    target_size: usize,
    max_atoms: usize,
) -> SparseDistribution {
    let atoms = rng.random_range(1..=max_atoms);
    let mut weights: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
    for _ in 0..atoms {
        let key = (0..index_set.len()).map(|_| rng.random_range(0..target_size)).collect();
        *weights.entry(key).or_default() += rng.random_range(1..=9);
    }
    SparseDistribution::from_weights(index_set.clone(), target_size, weights).expect("positive weights")
}

/// Bag distributions that agree on every overlap: the marginals of one random
/// joint over the ground set.
pub fn consistent_bag_dists(
    rng: &mut impl Rng,
    m: &MarkovTree,
    target_size: usize,
    max_atoms: usize,
) -> Vec<SparseDistribution> {
    let joint = random_joint(rng, &VertexSet::range(m.ground_size()), target_size, max_atoms);
    m.bags()
        .iter()
        .map(|b| joint.marginal(b).expect("bag inside ground set"))
        .collect()
}

/// Two distributions on `A ∪ B` and `B ∪ C` that agree on the shared block `B`.
pub fn random_glue_pair(
    rng: &mut impl Rng,
    max_block: usize,
    target_size: usize,
) -> (SparseDistribution, SparseDistribution) {
    let sizes: Vec<usize> = (0..3).map(|_| rng.random_range(0..=max_block)).collect();
    let total = sizes.iter().sum::<usize>();
    let joint = random_joint(rng, &VertexSet::range(total), target_size, 12);
    let left: VertexSet = (0..sizes[0] + sizes[1]).collect();
    let right: VertexSet = (sizes[0]..total).collect();
    (
        joint.marginal(&left).expect("subset"),
        joint.marginal(&right).expect("subset"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::{induces_subtree, validate_markov_tree, validate_tree_decomposition};

    #[test]
    fn generated_structures_are_valid() {
        let mut r = rng(7);
        for _ in 0..200 {
            let m = random_markov_tree(&mut r, 6, 6);
            assert!(validate_markov_tree(&m).ok, "{m:?}");
            assert!(m.bags().iter().all(|b| !b.is_empty()));
            let d = random_decomposition(&mut r, 8, 7);
            assert!(validate_tree_decomposition(&d).ok);
            let adj = m.adjacency();
            let s = random_subtree(&mut r, &adj, 3);
            assert!(induces_subtree(&m, &s).unwrap());
        }
    }

    #[test]
    fn same_seed_same_instances() {
        let a: Vec<_> = (0..5)
            .map({
                let mut r = rng(11);
                move |_| random_markov_tree(&mut r, 6, 6)
            })
            .collect();
        let b: Vec<_> = (0..5)
            .map({
                let mut r = rng(11);
                move |_| random_markov_tree(&mut r, 6, 6)
            })
            .collect();
        assert_eq!(a, b);
    }

    #[test]
    fn glue_pairs_agree_on_the_shared_block() {
        let mut r = rng(3);
        for _ in 0..50 {
            let (p, q) = random_glue_pair(&mut r, 2, 3);
            let shared = p.index_set().intersection(q.index_set());
            assert_eq!(p.marginal(&shared).unwrap(), q.marginal(&shared).unwrap());
        }
    }
}
