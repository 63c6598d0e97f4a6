use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// Decomposition tree has a cycle, is disconnected, or names a bad bag.
    MalformedTree,
    /// A bag mentions an element outside the ground set.
    ElementOutOfRange,
    UncoveredElement,
    /// `A ∩ B ⊄ C` for some `C` on the tree path from `A` to `B`.
    RunningIntersection,
    UncoveredEdge,
    HostMismatch,
    /// Level 0 carries child decompositions, or a higher level carries none.
    PayloadMismatch,
    /// Level-0 host is not a tree, or has no edges.
    BaseNotTree,
    /// Level-0 bags are not exactly the edges of the host.
    BaseBagsMismatch,
    /// Level-0 tree joins two edge-bags that share no vertex.
    NotLineGraphEdge,
    ChildCount,
    ChildLevel,
    /// A child does not decompose the subgraph induced on its bag.
    ChildHost,
    /// `H[X ∩ Y]` contains a cycle.
    IntersectionNotForest,
    /// No isomorphism fixing `X ∩ Y` between the minimum sub-decompositions.
    NoPinnedIsomorphism,
    SubdecompositionFailed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub witness: Value,
    /// Bag indices leading from the outermost decomposition to the failure.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub path: Vec<usize>,
}

impl Violation {
    pub fn new(kind: ViolationKind, witness: Value) -> Self {
        Violation {
            kind,
            witness,
            path: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn from_violations(violations: Vec<Violation>) -> Self {
        ValidationReport {
            ok: violations.is_empty(),
            violations,
        }
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    pub fn kinds(&self) -> Vec<ViolationKind> {
        self.violations.iter().map(|v| v.kind).collect()
    }
}
