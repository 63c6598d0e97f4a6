//! Recursive k-strong tree decompositions.
//!
//! Level 0 decomposes a tree by its edges, arranged along a spanning tree of
//! the line graph. Level `k > 0` is a tree decomposition whose every bag `X`
//! carries a level `k-1` decomposition of the induced subgraph `H[X]`, such
//! that for each decomposition-tree edge `XY` the graph `H[X ∩ Y]` is a forest
//! and the minimum sub-decompositions of the two children containing `X ∩ Y`
//! are isomorphic by a map fixing `X ∩ Y` pointwise.
//!
//! Child hosts use local vertex labels: vertex `i` of the child of bag `X` is
//! the `i`-th smallest element of `X`.

mod iso;
mod subdecomp;

pub use iso::{strong_isomorphism, StrongIsomorphism};
pub use subdecomp::{all_minimum_subdecompositions, minimum_subdecomposition, SubDecomposition};

use crate::decomp::validate::{decomposition_violations, markov_violations};
use crate::decomp::{line_graph_markov_tree, MarkovTree, SpanningTreeSelector, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::report::{ValidationReport, Violation, ViolationKind};
use serde::{Deserialize, Serialize};
use serde_json::json;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Payload {
    /// Level 0: bags are the host's edges.
    Base { base: MarkovTree },
    /// Level `k > 0`: one child per bag, in bag order.
    Composite {
        decomp: TreeDecomposition,
        children: Vec<StrongDecomposition>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StrongDecomposition {
    level: usize,
    host: Graph,
    payload: Payload,
}

impl StrongDecomposition {
    /// Unchecked; see [`validate_strong`].
    pub fn new(level: usize, host: Graph, payload: Payload) -> Self {
        StrongDecomposition { level, host, payload }
    }

    /// The level-0 decomposition of a tree.
    pub fn base(tree: Graph, choose: &SpanningTreeSelector) -> Result<Self> {
        let base = line_graph_markov_tree(&tree, choose)?;
        Ok(StrongDecomposition::new(0, tree, Payload::Base { base }))
    }

    /// A decomposition one level above `children`, which must be given in bag
    /// order. The level is taken from the first child.
    pub fn composite(host: Graph, markov: MarkovTree, children: Vec<StrongDecomposition>) -> Result<Self> {
        let level = children
            .first()
            .map(|c| c.level + 1)
            .ok_or_else(|| Error::InvalidStructure("composite decomposition needs at least one bag".into()))?;
        let decomp = TreeDecomposition::new(host.clone(), markov);
        Ok(StrongDecomposition::new(
            level,
            host,
            Payload::Composite { decomp, children },
        ))
    }

    /// Builds each child from the induced subgraph of its bag (in local labels).
    pub fn from_bags(
        host: Graph,
        markov: MarkovTree,
        mut child: impl FnMut(usize, &Graph) -> Result<StrongDecomposition>,
    ) -> Result<Self> {
        let children = markov
            .bags()
            .iter()
            .enumerate()
            .map(|(i, bag)| {
                let (sub, _) = host.induced_subgraph(bag)?;
                child(i, &sub)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::composite(host, markov, children)
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// The underlying graph.
    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn payload(&self) -> &Payload {
        &self.payload
    }

    /// The bag structure at this level.
    pub fn markov(&self) -> &MarkovTree {
        match &self.payload {
            Payload::Base { base } => base,
            Payload::Composite { decomp, .. } => &decomp.markov,
        }
    }

    /// Per-bag children; empty at level 0.
    pub fn children(&self) -> &[StrongDecomposition] {
        match &self.payload {
            Payload::Base { .. } => &[],
            Payload::Composite { children, .. } => children,
        }
    }

    /// The tree decomposition at this level. At level 0 this pairs the host
    /// tree with its edge bags.
    pub fn tree_decomposition(&self) -> TreeDecomposition {
        match &self.payload {
            Payload::Base { base } => TreeDecomposition::new(self.host.clone(), base.clone()),
            Payload::Composite { decomp, .. } => decomp.clone(),
        }
    }

    /// Every nested decomposition, this one first, depth-first in bag order.
    pub fn nested(&self) -> Vec<&StrongDecomposition> {
        let mut out = vec![self];
        for c in self.children() {
            out.extend(c.nested());
        }
        out
    }
}

pub fn underlying_graph(sd: &StrongDecomposition) -> &Graph {
    sd.host()
}

/// Checks every level recursively. Violations inside children carry the bag
/// indices leading to them in `path`.
pub fn validate_strong(sd: &StrongDecomposition) -> ValidationReport {
    ValidationReport::from_violations(strong_violations(sd))
}

fn strong_violations(sd: &StrongDecomposition) -> Vec<Violation> {
    match &sd.payload {
        Payload::Base { base } => base_violations(sd, base),
        Payload::Composite { decomp, children } => composite_violations(sd, decomp, children),
    }
}

fn base_violations(sd: &StrongDecomposition, base: &MarkovTree) -> Vec<Violation> {
    let mut out = Vec::new();
    let host = &sd.host;
    if sd.level != 0 {
        out.push(Violation::new(
            ViolationKind::PayloadMismatch,
            json!({"level": sd.level, "payload": "base"}),
        ));
    }
    if !host.is_tree() || host.edge_count() == 0 {
        out.push(Violation::new(
            ViolationKind::BaseNotTree,
            json!({"vertices": host.n(), "edges": host.edge_count()}),
        ));
    }
    if base.ground_size() != host.n() {
        out.push(Violation::new(
            ViolationKind::HostMismatch,
            json!({"ground_size": base.ground_size(), "host_vertices": host.n()}),
        ));
    }
    let mut bags: Vec<&VertexSet> = base.bags().iter().collect();
    bags.sort();
    let edges: Vec<VertexSet> = host
        .edges()
        .iter()
        .map(|&(u, v)| VertexSet::new(vec![u, v]).expect("u < v"))
        .collect();
    if bags.len() != edges.len() || bags.iter().zip(&edges).any(|(a, b)| *a != b) {
        out.push(Violation::new(
            ViolationKind::BaseBagsMismatch,
            json!({"bags": base.bags(), "edges": edges}),
        ));
    }
    for &(a, b) in base.tree_edges() {
        if a < base.bag_count() && b < base.bag_count() && base.bag(a).intersection(base.bag(b)).is_empty() {
            out.push(Violation::new(ViolationKind::NotLineGraphEdge, json!({"edge": [a, b]})));
        }
    }
    out.extend(markov_violations(base));
    out
}

fn composite_violations(
    sd: &StrongDecomposition,
    decomp: &TreeDecomposition,
    children: &[StrongDecomposition],
) -> Vec<Violation> {
    let mut out = Vec::new();
    let host = &sd.host;
    let markov = &decomp.markov;
    if sd.level == 0 {
        out.push(Violation::new(
            ViolationKind::PayloadMismatch,
            json!({"level": 0, "payload": "composite"}),
        ));
    }
    if decomp.host != *host {
        out.push(Violation::new(
            ViolationKind::HostMismatch,
            json!({"reason": "decomposition host differs"}),
        ));
    }
    out.extend(decomposition_violations(decomp));
    if children.len() != markov.bag_count() {
        out.push(Violation::new(
            ViolationKind::ChildCount,
            json!({"bags": markov.bag_count(), "children": children.len()}),
        ));
    }

    // condition 1: children decompose the induced subgraphs
    for (i, (bag, child)) in markov.bags().iter().zip(children).enumerate() {
        if child.level + 1 != sd.level {
            out.push(Violation::new(
                ViolationKind::ChildLevel,
                json!({"bag": i, "expected": sd.level.saturating_sub(1), "found": child.level}),
            ));
        }
        match host.induced_subgraph(bag) {
            Ok((induced, _)) if induced == child.host => {}
            Ok((induced, _)) => out.push(Violation::new(
                ViolationKind::ChildHost,
                json!({"bag": i, "expected": induced, "found": child.host}),
            )),
            Err(e) => out.push(Violation::new(
                ViolationKind::ChildHost,
                json!({"bag": i, "error": e.to_string()}),
            )),
        }
        for mut v in strong_violations(child) {
            v.path.insert(0, i);
            out.push(v);
        }
    }

    for &(a, b) in markov.tree_edges() {
        if a >= markov.bag_count() || b >= markov.bag_count() {
            continue;
        }
        let shared = markov.bag(a).intersection(markov.bag(b));
        // condition 2
        match host.induced_subgraph(&shared) {
            Ok((g, _)) if !g.is_forest() => out.push(Violation::new(
                ViolationKind::IntersectionNotForest,
                json!({"edge": [a, b], "shared": shared}),
            )),
            _ => {}
        }
        // condition 3
        if shared.is_empty() || a >= children.len() || b >= children.len() {
            continue;
        }
        if let Some(v) = pinned_subdecomposition_check(markov, children, a, b, &shared) {
            out.push(v);
        }
    }
    out
}

fn pinned_subdecomposition_check(
    markov: &MarkovTree,
    children: &[StrongDecomposition],
    a: usize,
    b: usize,
    shared: &VertexSet,
) -> Option<Violation> {
    let (bag_a, bag_b) = (markov.bag(a), markov.bag(b));
    let local =
        |bag: &VertexSet| -> VertexSet { shared.iter().map(|v| bag.position(v).expect("shared ⊆ bag")).collect() };
    let sub = |i: usize, bag: &VertexSet| {
        minimum_subdecomposition(&children[i], &local(bag)).map_err(|e| {
            Violation::new(
                ViolationKind::SubdecompositionFailed,
                json!({"edge": [a, b], "bag": i, "error": e.to_string()}),
            )
        })
    };
    let sub_a = match sub(a, bag_a) {
        Ok(s) => s,
        Err(v) => return Some(v),
    };
    let sub_b = match sub(b, bag_b) {
        Ok(s) => s,
        Err(v) => return Some(v),
    };
    let global_b: Vec<usize> = sub_b.relabel.iter().map(|&x| bag_b.as_slice()[x]).collect();
    let pin: Vec<(usize, usize)> = sub_a
        .relabel
        .iter()
        .enumerate()
        .filter_map(|(i, &x)| {
            let g = bag_a.as_slice()[x];
            if !shared.contains(g) {
                return None;
            }
            global_b.iter().position(|&y| y == g).map(|j| (i, j))
        })
        .collect();
    let witness = json!({
        "edge": [a, b],
        "shared": shared,
        "levels": [sub_a.decomposition.level, sub_b.decomposition.level],
        "hosts": [&sub_a.decomposition.host, &sub_b.decomposition.host],
    });
    if pin.len() != shared.len() {
        return Some(Violation::new(ViolationKind::NoPinnedIsomorphism, witness));
    }
    match strong_isomorphism(&sub_a.decomposition, &sub_b.decomposition, &pin) {
        Ok(Some(_)) => None,
        Ok(None) | Err(Error::LevelMismatch(..)) => Some(Violation::new(ViolationKind::NoPinnedIsomorphism, witness)),
        Err(e) => Some(Violation::new(
            ViolationKind::SubdecompositionFailed,
            json!({"edge": [a, b], "error": e.to_string()}),
        )),
    }
}
