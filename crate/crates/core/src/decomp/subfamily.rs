use super::{shortest_path, BagSubfamily, MarkovTree};
use crate::error::{Error, Result};
use crate::graph::VertexSet;

/// `F(v)`: the bags containing `v`. On a valid Markov tree this always
/// induces a subtree.
pub fn bags_containing(m: &MarkovTree, v: usize) -> Result<BagSubfamily> {
    if v >= m.ground_size() {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            n: m.ground_size(),
        });
    }
    Ok(BagSubfamily::new(
        m.bags()
            .iter()
            .enumerate()
            .filter(|(_, b)| b.contains(v))
            .map(|(i, _)| i),
    ))
}

/// Whether `family` is nonempty and connected in the decomposition tree.
pub fn induces_subtree(m: &MarkovTree, family: &BagSubfamily) -> Result<bool> {
    if let Some(&bag) = family.as_slice().iter().find(|&&b| b >= m.bag_count()) {
        return Err(Error::BagOutOfRange {
            bag,
            count: m.bag_count(),
        });
    }
    let Some(&start) = family.as_slice().first() else {
        return Ok(false);
    };
    let adj = m.adjacency();
    let mut seen = vec![false; m.bag_count()];
    seen[start] = true;
    let mut stack = vec![start];
    let mut reached = 1;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] && family.contains(y) {
                seen[y] = true;
                reached += 1;
                stack.push(y);
            }
        }
    }
    Ok(reached == family.len())
}

/// For subtrees of the decomposition tree: if they pairwise intersect, the
/// lowest bag index common to all of them; if some pair is disjoint, `None`.
pub fn helly_intersection(m: &MarkovTree, families: &[BagSubfamily]) -> Result<Option<usize>> {
    for f in families {
        if !induces_subtree(m, f)? {
            return Err(Error::NotASubtree(f.as_slice().to_vec()));
        }
    }
    for (i, a) in families.iter().enumerate() {
        for b in &families[i + 1..] {
            if a.intersection(b).is_empty() {
                return Ok(None);
            }
        }
    }
    let common = families
        .iter()
        .fold(BagSubfamily::new(0..m.bag_count()), |acc, f| acc.intersection(f));
    // pairwise-intersecting subtrees of a tree share a node
    debug_assert!(!common.is_empty() || !m.is_well_formed_tree());
    Ok(common.as_slice().first().copied())
}

/// The unique smallest connected bag family whose union covers `u`, for `u`
/// not contained in any single bag.
///
/// Grows the family one vertex at a time: while the bags containing all of
/// `u_1..u_i` still intersect, nothing is chosen; at the first `u_i` that
/// breaks the intersection the family becomes the tree path from the common
/// bags to `F(u_i)`, and every later `u_j` not yet covered adds the tree path
/// from the current family to `F(u_j)`.
pub fn minimum_covering_subfamily(m: &MarkovTree, u: &VertexSet) -> Result<BagSubfamily> {
    if u.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    let mut families = Vec::with_capacity(u.len());
    for v in u.iter() {
        let f = bags_containing(m, v)?;
        if f.is_empty() {
            return Err(Error::Uncovered(v));
        }
        families.push(f);
    }
    let adj = m.adjacency();
    let mut rest = families.iter();
    let mut common = rest.next().expect("u is nonempty").clone();
    let mut current: Option<BagSubfamily> = None;
    for f in rest {
        match &mut current {
            None => {
                let next = common.intersection(f);
                if next.is_empty() {
                    let path = shortest_path(&adj, common.as_slice(), f.as_slice())
                        .ok_or_else(|| Error::InvalidStructure("decomposition tree is disconnected".into()))?;
                    current = Some(BagSubfamily::new(path));
                } else {
                    common = next;
                }
            }
            Some(cur) => {
                if cur.intersection(f).is_empty() {
                    let path = shortest_path(&adj, cur.as_slice(), f.as_slice())
                        .ok_or_else(|| Error::InvalidStructure("decomposition tree is disconnected".into()))?;
                    *cur = cur.union(&BagSubfamily::new(path));
                }
            }
        }
    }
    current.ok_or_else(|| Error::ContainedInSingleBag(u.as_slice().to_vec()))
}
