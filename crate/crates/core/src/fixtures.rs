//! Bundled example decompositions and the JSON document kinds shared with the
//! command-line front end.

use crate::decomp::{
    validate_markov_tree, validate_tree_decomposition, MarkovTree, SpanningTreeSelector, TreeDecomposition,
};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::report::ValidationReport;
use crate::strong::{validate_strong, StrongDecomposition};
use serde_json::Value;
use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

/// Any JSON document the tools accept, recognised by its top-level keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Graph(Graph),
    MarkovTree(MarkovTree),
    TreeDecomposition(TreeDecomposition),
    Strong(StrongDecomposition),
}

impl Document {
    pub fn parse(text: &str) -> Result<Document> {
        let value: Value = serde_json::from_str(text)?;
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Json("expected a JSON object".into()))?;
        let doc = if obj.contains_key("level") {
            Document::Strong(serde_json::from_value(value)?)
        } else if obj.contains_key("markov") {
            Document::TreeDecomposition(serde_json::from_value(value)?)
        } else if obj.contains_key("ground_size") {
            Document::MarkovTree(serde_json::from_value(value)?)
        } else if obj.contains_key("edges") {
            Document::Graph(serde_json::from_value(value)?)
        } else {
            return Err(Error::Json("unrecognised document kind".into()));
        };
        Ok(doc)
    }

    pub fn load(path: &Path) -> Result<Document> {
        Document::parse(&fs::read_to_string(path)?)
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Document::Graph(_) => "graph",
            Document::MarkovTree(_) => "markov_tree",
            Document::TreeDecomposition(_) => "tree_decomposition",
            Document::Strong(_) => "strong_decomposition",
        }
    }

    /// Runs the validator matching the document kind. Graphs are valid once
    /// parsed.
    pub fn validate(&self) -> ValidationReport {
        match self {
            Document::Graph(_) => ValidationReport::from_violations(Vec::new()),
            Document::MarkovTree(m) => validate_markov_tree(m),
            Document::TreeDecomposition(d) => validate_tree_decomposition(d),
            Document::Strong(sd) => validate_strong(sd),
        }
    }

    pub fn to_json(&self) -> String {
        let text = match self {
            Document::Graph(g) => serde_json::to_string_pretty(g),
            Document::MarkovTree(m) => serde_json::to_string_pretty(m),
            Document::TreeDecomposition(d) => serde_json::to_string_pretty(d),
            Document::Strong(sd) => serde_json::to_string_pretty(sd),
        };
        text.expect("documents serialise") + "\n"
    }
}

/// Named documents from one directory, each parsed and validated.
#[derive(Debug, Clone, Default)]
pub struct FixtureBundle {
    pub documents: BTreeMap<String, Document>,
}

impl FixtureBundle {
    /// Loads every `*.json` file directly inside `dir`, keyed by file stem.
    /// Fails on the first document that does not parse or validate.
    pub fn load(dir: &Path) -> Result<FixtureBundle> {
        let mut documents = BTreeMap::new();
        for entry in fs::read_dir(dir)? {
            let path = entry?.path();
            if path.extension().and_then(|e| e.to_str()) != Some("json") {
                continue;
            }
            let name = path
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or_default()
                .to_string();
            let doc = Document::load(&path).map_err(|e| Error::InvalidStructure(format!("{name}: {e}")))?;
            let report = doc.validate();
            if !report.ok {
                return Err(Error::InvalidStructure(format!("{name}: {:?}", report.kinds())));
            }
            documents.insert(name, doc);
        }
        Ok(FixtureBundle { documents })
    }

    pub fn strong(&self) -> impl Iterator<Item = (&str, &StrongDecomposition)> {
        self.documents.iter().filter_map(|(k, d)| match d {
            Document::Strong(sd) => Some((k.as_str(), sd)),
            _ => None,
        })
    }
}

fn set(v: &[usize]) -> VertexSet {
    VertexSet::new(v.to_vec()).expect("sorted fixture bag")
}

fn base(t: &Graph) -> StrongDecomposition {
    StrongDecomposition::base(t.clone(), &SpanningTreeSelector::BreadthFirst).expect("fixture tree")
}

/// 1-strong decomposition of a 4-cycle `0-1-2-3-0` with bags `{0,1,2}` and `{0,2,3}`.
fn c4_of(host: &Graph) -> StrongDecomposition {
    let markov = MarkovTree::new(4, vec![set(&[0, 1, 2]), set(&[0, 2, 3])], [(0, 1)]);
    StrongDecomposition::from_bags(host.clone(), markov, |_, sub| Ok(base(sub))).expect("c4 fixture")
}

pub fn edge() -> StrongDecomposition {
    base(&Graph::complete(2))
}

pub fn path3() -> StrongDecomposition {
    base(&Graph::path(3))
}

pub fn path4() -> StrongDecomposition {
    base(&Graph::path(4))
}

pub fn star3() -> StrongDecomposition {
    base(&Graph::star(3))
}

pub fn c4() -> StrongDecomposition {
    c4_of(&Graph::cycle(4))
}

/// `K_{2,3}` with parts `{0,1}` and `{2,3,4}`; one bag per vertex of the larger part.
pub fn k23() -> StrongDecomposition {
    let markov = MarkovTree::new(
        5,
        vec![set(&[0, 1, 2]), set(&[0, 1, 3]), set(&[0, 1, 4])],
        [(0, 1), (1, 2)],
    );
    StrongDecomposition::from_bags(Graph::complete_bipartite(2, 3), markov, |_, sub| Ok(base(sub)))
        .expect("k23 fixture")
}

/// Path `0-1-2-3` with overlapping bags `{0,1,2}` and `{1,2,3}`.
pub fn path4_overlap() -> StrongDecomposition {
    let markov = MarkovTree::new(4, vec![set(&[0, 1, 2]), set(&[1, 2, 3])], [(0, 1)]);
    StrongDecomposition::from_bags(Graph::path(4), markov, |_, sub| Ok(base(sub))).expect("path4 fixture")
}

/// Two 4-cycles `0-1-2-3` and `0-1-4-5` sharing the edge `{0,1}`.
pub fn book_graph() -> Graph {
    Graph::new(6, [(0, 1), (1, 2), (2, 3), (0, 3), (1, 4), (4, 5), (0, 5)]).expect("book graph")
}

/// 2-strong: the two square bags, each carrying the 1-strong 4-cycle decomposition.
pub fn book() -> StrongDecomposition {
    let markov = MarkovTree::new(6, vec![set(&[0, 1, 2, 3]), set(&[0, 1, 4, 5])], [(0, 1)]);
    StrongDecomposition::from_bags(book_graph(), markov, |_, sub| Ok(c4_of(sub))).expect("book fixture")
}

/// Every valid bundled decomposition, by file stem.
pub fn positive() -> Vec<(&'static str, StrongDecomposition)> {
    vec![
        ("edge", edge()),
        ("path3", path3()),
        ("path4", path4()),
        ("star3", star3()),
        ("c4", c4()),
        ("k23", k23()),
        ("path4_overlap", path4_overlap()),
        ("book", book()),
    ]
}

/// Target graphs shipped alongside the decompositions.
pub fn targets() -> Vec<(&'static str, Graph)> {
    vec![
        ("k2", Graph::complete(2)),
        ("k3", Graph::complete(3)),
        ("p3", Graph::path(3)),
        ("c4", Graph::cycle(4)),
        ("edgeless3", Graph::empty(3)),
    ]
}

/// `{0,1} - {2} - {0,3}`: element 0 skips the middle bag.
pub fn broken_running_intersection() -> MarkovTree {
    MarkovTree::new(4, vec![set(&[0, 1]), set(&[2]), set(&[0, 3])], [(0, 1), (1, 2)])
}

/// A path of bags `{0,1},{1,2},{2,3}` over the 4-cycle; edge `{0,3}` is uncovered.
pub fn c4_uncovered_edge() -> TreeDecomposition {
    let markov = MarkovTree::new(4, vec![set(&[0, 1]), set(&[1, 2]), set(&[2, 3])], [(0, 1), (1, 2)]);
    TreeDecomposition::new(Graph::cycle(4), markov)
}

/// The 4-cycle fixture with the second child replaced by the path `0-1-2`,
/// which is not the subgraph induced on its bag and whose minimum
/// sub-decomposition over the shared vertices is a single edge.
pub fn c4_bad_child() -> StrongDecomposition {
    let markov = MarkovTree::new(4, vec![set(&[0, 1, 2]), set(&[0, 2, 3])], [(0, 1)]);
    let children = vec![path3(), path3()];
    StrongDecomposition::composite(Graph::cycle(4), markov, children).expect("two children")
}

/// 5-cycle with bags `{0,1,2}` and `{0,2,3,4}`: the minimum sub-decompositions
/// over `{0,2}` are paths of different lengths.
pub fn c5_mismatched() -> StrongDecomposition {
    let markov = MarkovTree::new(5, vec![set(&[0, 1, 2]), set(&[0, 2, 3, 4])], [(0, 1)]);
    StrongDecomposition::from_bags(Graph::cycle(5), markov, |_, sub| Ok(base(sub))).expect("c5 fixture")
}

/// Triangle with two identical bags; the shared set induces a cycle.
pub fn doubled_triangle() -> StrongDecomposition {
    let k3 = Graph::complete(3);
    let markov = MarkovTree::new(3, vec![set(&[0, 1, 2]), set(&[0, 1, 2])], [(0, 1)]);
    let children = vec![path3(), path3()];
    StrongDecomposition::composite(k3, markov, children).expect("two children")
}

pub const MALFORMED_JSON: &str = "{\"n\": 3, \"edges\": [[0, 1], [1,\n";

/// Documents that must fail validation, by file stem.
pub fn negative() -> Vec<(&'static str, Document)> {
    vec![
        (
            "broken_running_intersection",
            Document::MarkovTree(broken_running_intersection()),
        ),
        ("c4_uncovered_edge", Document::TreeDecomposition(c4_uncovered_edge())),
        ("c4_bad_child", Document::Strong(c4_bad_child())),
        ("c5_mismatched", Document::Strong(c5_mismatched())),
        ("doubled_triangle", Document::Strong(doubled_triangle())),
    ]
}

/// Writes the bundled fixtures as `dir/*.json`, `dir/targets/*.json` and
/// `dir/negative/*.json`.
pub fn write_all(dir: &Path) -> Result<()> {
    for (sub, docs) in rendered() {
        let d = dir.join(sub);
        fs::create_dir_all(&d)?;
        for (name, text) in docs {
            fs::write(d.join(name), text)?;
        }
    }
    Ok(())
}

/// Every bundled file as `(subdirectory, [(file name, contents)])`.
pub fn rendered() -> Vec<(&'static str, Vec<(String, String)>)> {
    let positive = positive()
        .into_iter()
        .map(|(n, sd)| (format!("{n}.json"), Document::Strong(sd).to_json()))
        .collect();
    let targets = targets()
        .into_iter()
        .map(|(n, g)| (format!("{n}.json"), Document::Graph(g).to_json()))
        .collect();
    let mut negative: Vec<(String, String)> = negative()
        .into_iter()
        .map(|(n, d)| (format!("{n}.json"), d.to_json()))
        .collect();
    negative.push(("malformed.json".into(), MALFORMED_JSON.into()));
    vec![("", positive), ("targets", targets), ("negative", negative)]
}
