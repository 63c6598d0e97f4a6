use super::{MarkovTree, TreeDecomposition};
use crate::report::{ValidationReport, Violation, ViolationKind};
use serde_json::json;

/// Checks that the bags cover `0..ground_size` and satisfy the running
/// intersection condition along the tree. A malformed tree is reported on its
/// own and suppresses the path-based checks.
pub fn validate_markov_tree(m: &MarkovTree) -> ValidationReport {
    ValidationReport::from_violations(markov_violations(m))
}

pub(crate) fn markov_violations(m: &MarkovTree) -> Vec<Violation> {
    let mut out = Vec::new();
    let count = m.bag_count();
    if count == 0 {
        out.push(Violation::new(
            ViolationKind::MalformedTree,
            json!({"reason": "no bags"}),
        ));
    }
    for &(a, b) in m.tree_edges() {
        if a >= count || b >= count {
            out.push(Violation::new(
                ViolationKind::MalformedTree,
                json!({"reason": "tree edge names a missing bag", "edge": [a, b]}),
            ));
        }
    }
    let tree_ok = out.is_empty() && {
        match m.tree_graph() {
            Ok(g) if g.is_tree() => true,
            Ok(g) => {
                let reason = if g.is_forest() { "disconnected" } else { "cycle" };
                out.push(Violation::new(ViolationKind::MalformedTree, json!({"reason": reason})));
                false
            }
            Err(e) => {
                out.push(Violation::new(
                    ViolationKind::MalformedTree,
                    json!({"reason": e.to_string()}),
                ));
                false
            }
        }
    };

    let mut covered = vec![false; m.ground_size()];
    for (i, bag) in m.bags().iter().enumerate() {
        for v in bag.iter() {
            match covered.get_mut(v) {
                Some(c) => *c = true,
                None => out.push(Violation::new(
                    ViolationKind::ElementOutOfRange,
                    json!({"bag": i, "element": v}),
                )),
            }
        }
    }
    for (v, _) in covered.iter().enumerate().filter(|(_, &c)| !c) {
        out.push(Violation::new(ViolationKind::UncoveredElement, json!({"element": v})));
    }

    if tree_ok {
        for a in 0..count {
            for b in a + 1..count {
                let shared = m.bag(a).intersection(m.bag(b));
                if shared.is_empty() {
                    continue;
                }
                for c in m.path(a, b) {
                    let missing = shared.difference(m.bag(c));
                    if !missing.is_empty() {
                        out.push(Violation::new(
                            ViolationKind::RunningIntersection,
                            json!({"a": a, "b": b, "c": c, "missing": missing}),
                        ));
                    }
                }
            }
        }
    }
    out
}

/// Markov-tree checks over `V(host)` plus coverage of every host edge.
pub fn validate_tree_decomposition(d: &TreeDecomposition) -> ValidationReport {
    ValidationReport::from_violations(decomposition_violations(d))
}

pub(crate) fn decomposition_violations(d: &TreeDecomposition) -> Vec<Violation> {
    let mut out = Vec::new();
    if d.markov.ground_size() != d.host.n() {
        out.push(Violation::new(
            ViolationKind::HostMismatch,
            json!({"ground_size": d.markov.ground_size(), "host_vertices": d.host.n()}),
        ));
    }
    out.extend(markov_violations(&d.markov));
    for &(u, v) in d.host.edges() {
        if !d.markov.bags().iter().any(|b| b.contains(u) && b.contains(v)) {
            out.push(Violation::new(ViolationKind::UncoveredEdge, json!({"edge": [u, v]})));
        }
    }
    out
}
