//! Brute-force oracles shared by the integration tests. They avoid the
//! library's own subtree and path routines.
#![allow(dead_code)]

use strongtree::decomp::MarkovTree;
use strongtree::graph::VertexSet;

/// Whether the bags in `mask` form a nonempty connected piece of the tree.
pub fn connected_mask(m: &MarkovTree, mask: u32) -> bool {
    let Some(start) = (0..m.bag_count()).find(|&b| mask >> b & 1 == 1) else {
        return false;
    };
    let mut reached = 1u32 << start;
    loop {
        let mut grew = false;
        for &(a, b) in m.tree_edges() {
            let (ia, ib) = (reached >> a & 1 == 1, reached >> b & 1 == 1);
            if ia != ib && mask >> a & 1 == 1 && mask >> b & 1 == 1 {
                reached |= 1 << a | 1 << b;
                grew = true;
            }
        }
        if !grew {
            return reached == mask;
        }
    }
}

pub fn bags_of(mask: u32, count: usize) -> Vec<usize> {
    (0..count).filter(|&b| mask >> b & 1 == 1).collect()
}

/// Every connected bag family of minimum size whose union contains `u`.
pub fn all_minimum_covers(m: &MarkovTree, u: &VertexSet) -> Vec<Vec<usize>> {
    let count = m.bag_count();
    let mut best: Vec<Vec<usize>> = Vec::new();
    let mut best_size = usize::MAX;
    for mask in 1u32..(1 << count) {
        if !connected_mask(m, mask) {
            continue;
        }
        let size = mask.count_ones() as usize;
        if size > best_size {
            continue;
        }
        let covered = u
            .iter()
            .all(|v| (0..count).any(|b| mask >> b & 1 == 1 && m.bag(b).contains(v)));
        if !covered {
            continue;
        }
        if size < best_size {
            best_size = size;
            best.clear();
        }
        best.push(bags_of(mask, count));
    }
    best
}

/// The lowest bag in every family, if the families are all connected and
/// pairwise intersecting; found by scanning bags directly.
pub fn common_bag(families: &[Vec<usize>]) -> Option<usize> {
    let pairwise = families
        .iter()
        .enumerate()
        .all(|(i, a)| families[i + 1..].iter().all(|b| a.iter().any(|x| b.contains(x))));
    if !pairwise {
        return None;
    }
    let max = families.iter().flatten().max().copied().unwrap_or(0);
    (0..=max).find(|b| families.iter().all(|f| f.contains(b)))
}
