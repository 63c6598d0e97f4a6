//! Markov trees and tree decompositions.
//!
//! A Markov tree is a family of bags over a ground set `0..k` together with a
//! tree on the bag indices such that the bags cover the ground set and every
//! bag on the tree path between `A` and `B` contains `A ∩ B`. A tree
//! decomposition is a Markov tree over the vertices of a host graph whose bags
//! also cover every host edge.

mod subfamily;
pub(crate) mod validate;

pub use subfamily::{bags_containing, helly_intersection, induces_subtree, minimum_covering_subfamily};
pub use validate::{validate_markov_tree, validate_tree_decomposition};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

#[derive(Serialize, Deserialize)]
struct MarkovTreeRepr {
    ground_size: usize,
    bags: Vec<VertexSet>,
    tree: Vec<[usize; 2]>,
}

/// A family of bags over `0..ground_size` plus a tree on the bag indices.
///
/// Construction only normalises the tree edge list; the Markov conditions are
/// checked by [`validate_markov_tree`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "MarkovTreeRepr", into = "MarkovTreeRepr")]
pub struct MarkovTree {
    ground_size: usize,
    bags: Vec<VertexSet>,
    tree: Vec<(usize, usize)>,
}

impl From<MarkovTreeRepr> for MarkovTree {
    fn from(r: MarkovTreeRepr) -> Self {
        MarkovTree::new(r.ground_size, r.bags, r.tree.into_iter().map(|[a, b]| (a, b)))
    }
}

impl From<MarkovTree> for MarkovTreeRepr {
    fn from(m: MarkovTree) -> Self {
        MarkovTreeRepr {
            ground_size: m.ground_size,
            bags: m.bags,
            tree: m.tree.into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }
}

impl MarkovTree {
    pub fn new(ground_size: usize, bags: Vec<VertexSet>, tree: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut tree: Vec<(usize, usize)> = tree.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        tree.sort_unstable();
        MarkovTree {
            ground_size,
            bags,
            tree,
        }
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn bags(&self) -> &[VertexSet] {
        &self.bags
    }

    pub fn bag(&self, i: usize) -> &VertexSet {
        &self.bags[i]
    }

    pub fn bag_count(&self) -> usize {
        self.bags.len()
    }

    pub fn tree_edges(&self) -> &[(usize, usize)] {
        &self.tree
    }

    /// The decomposition tree as a graph on bag indices.
    pub fn tree_graph(&self) -> Result<Graph> {
        Graph::new(self.bags.len(), self.tree.iter().copied())
    }

    /// Tree structure is sound: edges in range, simple, connected, acyclic.
    pub fn is_well_formed_tree(&self) -> bool {
        matches!(self.tree_graph(), Ok(g) if g.is_tree())
    }

    pub(crate) fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.tree {
            if a < adj.len() && b < adj.len() {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        for a in &mut adj {
            a.sort_unstable();
            a.dedup();
        }
        adj
    }

    /// Bag indices on the tree path from `from` to `to`, inclusive.
    /// Requires a well-formed tree.
    pub fn path(&self, from: usize, to: usize) -> Vec<usize> {
        shortest_path(&self.adjacency(), &[from], &[to]).expect("tree is connected")
    }

    pub fn union_of(&self, family: &[usize]) -> VertexSet {
        family.iter().flat_map(|&i| self.bags[i].iter()).collect()
    }
}

/// BFS from all of `sources` (lowest index first) until a node of `targets`
/// is reached; returns the path from the source end to the target end.
pub(crate) fn shortest_path(adj: &[Vec<usize>], sources: &[usize], targets: &[usize]) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; adj.len()];
    let mut seen = vec![false; adj.len()];
    let mut is_target = vec![false; adj.len()];
    for &t in targets {
        is_target[t] = true;
    }
    let mut queue = VecDeque::new();
    let mut srcs = sources.to_vec();
    srcs.sort_unstable();
    for s in srcs {
        if !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(x) = queue.pop_front() {
        if is_target[x] {
            let mut path = vec![x];
            let mut cur = x;
            while parent[cur] != usize::MAX {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    None
}

/// A tree decomposition of `host`: a Markov tree over `V(host)` whose bags
/// also cover every edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TreeDecomposition {
    pub host: Graph,
    pub markov: MarkovTree,
}

impl TreeDecomposition {
    pub fn new(host: Graph, markov: MarkovTree) -> Self {
        TreeDecomposition { host, markov }
    }
}

/// A sorted list of bag indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BagSubfamily(Vec<usize>);

impl BagSubfamily {
    pub fn new(bags: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = bags.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        BagSubfamily(v)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, bag: usize) -> bool {
        self.0.binary_search(&bag).is_ok()
    }

    pub fn intersection(&self, other: &BagSubfamily) -> BagSubfamily {
        BagSubfamily(self.0.iter().copied().filter(|&b| other.contains(b)).collect())
    }

    pub fn union(&self, other: &BagSubfamily) -> BagSubfamily {
        BagSubfamily::new(self.0.iter().chain(other.0.iter()).copied())
    }
}

/// Result of [`retraction`]: the smaller decomposition with the maps back to
/// the original vertex and bag indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Retraction {
    pub decomposition: TreeDecomposition,
    /// `vertex_map[i]` is the original host vertex of new vertex `i`.
    pub vertex_map: Vec<usize>,
    /// `bag_map[j]` is the original index of new bag `j`.
    pub bag_map: Vec<usize>,
}

/// Restricts `d` to the subtree `keep`, i.e. the result of repeatedly deleting
/// leaves outside `keep`. The host becomes the subgraph induced on the union
/// of the kept bags, relabelled in sorted order.
pub fn retraction(d: &TreeDecomposition, keep: &BagSubfamily) -> Result<Retraction> {
    if !induces_subtree(&d.markov, keep)? {
        return Err(Error::NotASubtree(keep.as_slice().to_vec()));
    }
    let union = d.markov.union_of(keep.as_slice());
    let (host, vertex_map) = d.host.induced_subgraph(&union)?;
    let bags = keep
        .as_slice()
        .iter()
        .map(|&b| {
            d.markov
                .bag(b)
                .iter()
                .map(|v| union.position(v).expect("bag inside union"))
                .collect()
        })
        .collect();
    let tree = d.markov.tree_edges().iter().filter_map(|&(a, b)| {
        let pa = keep.as_slice().binary_search(&a).ok()?;
        let pb = keep.as_slice().binary_search(&b).ok()?;
        Some((pa, pb))
    });
    let markov = MarkovTree::new(union.len(), bags, tree);
    Ok(Retraction {
        decomposition: TreeDecomposition::new(host, markov),
        vertex_map,
        bag_map: keep.as_slice().to_vec(),
    })
}

/// How to choose a spanning tree of a line graph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub enum SpanningTreeSelector {
    /// Breadth-first from the smallest edge, neighbours in index order.
    #[default]
    BreadthFirst,
    /// Caller-supplied tree edges on edge indices (positions in `t.edges()`).
    Explicit(Vec<(usize, usize)>),
}

/// The line graph of `t`; vertex `i` is the edge `t.edges()[i]`.
pub fn line_graph(t: &Graph) -> Graph {
    let e = t.edges();
    let pairs = (0..e.len()).flat_map(|i| (i + 1..e.len()).map(move |j| (i, j)));
    Graph::new(
        e.len(),
        pairs.filter(|&(i, j)| {
            let (a, b) = e[i];
            let (c, d) = e[j];
            a == c || a == d || b == c || b == d
        }),
    )
    .expect("line graph is simple")
}

/// The level-0 structure of a tree `t`: one bag per edge (in sorted edge
/// order) and a spanning tree of the line graph.
pub fn line_graph_markov_tree(t: &Graph, choose: &SpanningTreeSelector) -> Result<MarkovTree> {
    if t.edge_count() == 0 {
        return Err(Error::Edgeless);
    }
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    let lg = line_graph(t);
    let bags: Vec<VertexSet> = t
        .edges()
        .iter()
        .map(|&(u, v)| VertexSet::new(vec![u, v]).expect("u < v"))
        .collect();
    let tree = match choose {
        SpanningTreeSelector::BreadthFirst => {
            let mut seen = vec![false; lg.n()];
            seen[0] = true;
            let mut queue = VecDeque::from([0]);
            let mut tree = Vec::new();
            while let Some(x) = queue.pop_front() {
                for &y in lg.neighbors(x) {
                    if !seen[y] {
                        seen[y] = true;
                        tree.push((x, y));
                        queue.push_back(y);
                    }
                }
            }
            tree
        }
        SpanningTreeSelector::Explicit(edges) => {
            if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| !lg.has_edge(a, b)) {
                return Err(Error::BadSpanningTree(format!(
                    "({a}, {b}) is not an edge of the line graph"
                )));
            }
            let candidate =
                Graph::new(lg.n(), edges.iter().copied()).map_err(|e| Error::BadSpanningTree(e.to_string()))?;
            if !candidate.is_tree() {
                return Err(Error::BadSpanningTree("edges do not form a spanning tree".into()));
            }
            edges.clone()
        }
    };
    Ok(MarkovTree::new(t.n(), bags, tree))
}
