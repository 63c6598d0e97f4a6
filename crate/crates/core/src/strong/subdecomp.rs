use super::{Payload, StrongDecomposition};
use crate::decomp::{
    bags_containing, minimum_covering_subfamily, retraction, BagSubfamily, MarkovTree, TreeDecomposition,
};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use serde::{Deserialize, Serialize};

/// A sub-decomposition together with the map from its host vertices to the
/// host vertices of the decomposition it was cut from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubDecomposition {
    pub decomposition: StrongDecomposition,
    /// `relabel[i]` is the original vertex of sub-decomposition vertex `i`.
    pub relabel: Vec<usize>,
}

/// The minimum sub-decomposition of `sd` containing `u`.
///
/// When the bags containing each vertex of `u` have no common bag, the result
/// keeps the level and retracts to the minimum covering subfamily, keeping each
/// surviving bag's child. Otherwise `u` lies in a single bag and the result is
/// the minimum sub-decomposition inside the child of the lowest such bag; at
/// level 0 that is the single edge bag itself.
pub fn minimum_subdecomposition(sd: &StrongDecomposition, u: &VertexSet) -> Result<SubDecomposition> {
    let common = common_bags(sd, u)?;
    match common.as_slice().first() {
        Some(&x) => descend(sd, u, x, &mut |child, local| {
            minimum_subdecomposition(child, local).map(|s| vec![s])
        })
        .map(|mut v| v.pop().expect("one result")),
        None => spread(sd, u),
    }
}

/// Every result [`minimum_subdecomposition`] could return if the bag holding
/// `u` were chosen freely at each level instead of taking the lowest index.
pub fn all_minimum_subdecompositions(sd: &StrongDecomposition, u: &VertexSet) -> Result<Vec<SubDecomposition>> {
    let common = common_bags(sd, u)?;
    if common.is_empty() {
        return Ok(vec![spread(sd, u)?]);
    }
    let mut out = Vec::new();
    for &x in common.as_slice() {
        out.extend(descend(sd, u, x, &mut all_minimum_subdecompositions)?);
    }
    Ok(out)
}

fn common_bags(sd: &StrongDecomposition, u: &VertexSet) -> Result<BagSubfamily> {
    if u.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    let markov = sd.markov();
    let mut common = BagSubfamily::new(0..markov.bag_count());
    for v in u.iter() {
        let f = bags_containing(markov, v)?;
        if f.is_empty() {
            return Err(Error::Uncovered(v));
        }
        common = common.intersection(&f);
    }
    Ok(common)
}

/// `u` lies inside bag `x`.
fn descend(
    sd: &StrongDecomposition,
    u: &VertexSet,
    x: usize,
    recurse: &mut dyn FnMut(&StrongDecomposition, &VertexSet) -> Result<Vec<SubDecomposition>>,
) -> Result<Vec<SubDecomposition>> {
    let bag = sd.markov().bag(x);
    match sd.payload() {
        Payload::Base { .. } => {
            let host = Graph::complete(2);
            let base = MarkovTree::new(2, vec![VertexSet::range(2)], []);
            Ok(vec![SubDecomposition {
                decomposition: StrongDecomposition::new(0, host, Payload::Base { base }),
                relabel: bag.as_slice().to_vec(),
            }])
        }
        Payload::Composite { children, .. } => {
            let child = children
                .get(x)
                .ok_or_else(|| Error::InvalidStructure(format!("bag {x} has no child decomposition")))?;
            let local: VertexSet = u.iter().map(|v| bag.position(v).expect("u inside bag")).collect();
            let subs = recurse(child, &local)?;
            Ok(subs
                .into_iter()
                .map(|s| SubDecomposition {
                    relabel: s.relabel.iter().map(|&i| bag.as_slice()[i]).collect(),
                    decomposition: s.decomposition,
                })
                .collect())
        }
    }
}

/// `u` is not inside any single bag.
fn spread(sd: &StrongDecomposition, u: &VertexSet) -> Result<SubDecomposition> {
    let family = minimum_covering_subfamily(sd.markov(), u)?;
    let r = retraction(&sd.tree_decomposition(), &family)?;
    let TreeDecomposition { host, markov } = r.decomposition;
    let payload = match sd.payload() {
        Payload::Base { .. } => Payload::Base { base: markov },
        Payload::Composite { children, .. } => {
            let kept = r
                .bag_map
                .iter()
                .map(|&b| {
                    children
                        .get(b)
                        .cloned()
                        .ok_or_else(|| Error::InvalidStructure(format!("bag {b} has no child decomposition")))
                })
                .collect::<Result<Vec<_>>>()?;
            Payload::Composite {
                decomp: TreeDecomposition::new(host.clone(), markov),
                children: kept,
            }
        }
    };
    Ok(SubDecomposition {
        decomposition: StrongDecomposition::new(sd.level(), host, payload),
        relabel: r.vertex_map,
    })
}
