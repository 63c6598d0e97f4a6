//! Associated distributions on `Hom(H, G)` and the desk-scale checks built on
//! them.

use crate::dist::{
    entropy_identity, format_rational, glue_markov_tree, log2_rational, EntropyIdentity, SparseDistribution,
};
use crate::error::{Error, Result};
use crate::graph::{hom_count, is_homomorphism, is_isomorphism, Graph, VertexSet, DEFAULT_HOM_CAP};
use crate::strong::{minimum_subdecomposition, StrongDecomposition, StrongIsomorphism};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Pow;
use serde::{Serialize, Serializer};
use std::collections::{BTreeMap, VecDeque};

fn require_edges(g: &Graph) -> Result<()> {
    if g.edge_count() == 0 {
        return Err(Error::TargetEdgeless);
    }
    Ok(())
}

fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// `2|E(g)| / |V(g)|^2`.
pub fn edge_density(g: &Graph) -> BigRational {
    ratio(2 * g.edge_count(), g.n() * g.n())
}

/// The tree-indexed random walk on `g`: the smallest edge of `t` lands on a
/// uniform ordered edge of `g`, then every other vertex, in breadth-first
/// order from that edge, moves to a uniform neighbour of its parent's image.
pub fn brw_distribution(t: &Graph, g: &Graph) -> Result<SparseDistribution> {
    if t.edge_count() == 0 {
        return Err(Error::Edgeless);
    }
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    require_edges(g)?;
    let within_cap = u32::try_from(t.n())
        .ok()
        .and_then(|e| (g.n() as u128).checked_pow(e))
        .is_some_and(|b| b <= DEFAULT_HOM_CAP);
    if !within_cap {
        return Err(Error::SizeCap {
            source_n: t.n(),
            target: g.n(),
            cap: DEFAULT_HOM_CAP,
        });
    }

    let (a, b) = t.edges()[0];
    let mut seen = vec![false; t.n()];
    seen[a] = true;
    seen[b] = true;
    let mut steps = Vec::new();
    let mut queue = VecDeque::from([a, b]);
    while let Some(p) = queue.pop_front() {
        for &v in t.neighbors(p) {
            if !seen[v] {
                seen[v] = true;
                steps.push((v, p));
                queue.push_back(v);
            }
        }
    }

    let root = ratio(1, 2 * g.edge_count());
    let mut partial: Vec<(Vec<usize>, BigRational)> = Vec::new();
    for &(x, y) in g.edges() {
        for (ia, ib) in [(x, y), (y, x)] {
            let mut key = vec![usize::MAX; t.n()];
            key[a] = ia;
            key[b] = ib;
            partial.push((key, root.clone()));
        }
    }
    for &(v, p) in &steps {
        let mut next = Vec::with_capacity(partial.len() * 2);
        for (key, w) in partial {
            let from = key[p];
            let step = ratio(1, g.degree(from));
            for &x in g.neighbors(from) {
                let mut k = key.clone();
                k[v] = x;
                next.push((k, &w * &step));
            }
        }
        partial = next;
    }
    let mass: BTreeMap<Vec<usize>, BigRational> = partial.into_iter().collect();
    SparseDistribution::new(VertexSet::range(t.n()), g.n(), mass)
}

/// The distribution on `Hom(host, target)` associated with a strong
/// decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssociatedDistribution {
    pub level: usize,
    pub host: Graph,
    pub target: Graph,
    pub dist: SparseDistribution,
}

/// One gluing of child distributions along a decomposition tree.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GluingStep {
    /// Bag indices from the outermost decomposition to the glued one.
    pub path: Vec<usize>,
    pub identity: EntropyIdentity,
}

/// Level 0 is the tree walk; level `k` glues the children's distributions,
/// moved onto their bags, along the decomposition tree. Disagreeing marginals
/// on a bag intersection are an error carrying the tree edge.
pub fn associated_distribution(sd: &StrongDecomposition, g: &Graph) -> Result<AssociatedDistribution> {
    associated_with_trace(sd, g).map(|(a, _)| a)
}

/// [`associated_distribution`] together with the entropy identity evaluated
/// at every gluing, innermost first.
pub fn associated_with_trace(sd: &StrongDecomposition, g: &Graph) -> Result<(AssociatedDistribution, Vec<GluingStep>)> {
    require_edges(g)?;
    let mut steps = Vec::new();
    let dist = build(sd, g, &mut Vec::new(), &mut steps)?;
    for (key, _) in dist.atoms() {
        if !is_homomorphism(sd.host(), g, key) {
            return Err(Error::NotAHomomorphism(key.clone()));
        }
    }
    let assoc = AssociatedDistribution {
        level: sd.level(),
        host: sd.host().clone(),
        target: g.clone(),
        dist,
    };
    Ok((assoc, steps))
}

fn build(
    sd: &StrongDecomposition,
    g: &Graph,
    path: &mut Vec<usize>,
    steps: &mut Vec<GluingStep>,
) -> Result<SparseDistribution> {
    if sd.level() == 0 {
        return brw_distribution(sd.host(), g);
    }
    let markov = sd.markov();
    if sd.children().len() != markov.bag_count() {
        return Err(Error::InvalidStructure(format!(
            "{} children for {} bags",
            sd.children().len(),
            markov.bag_count()
        )));
    }
    let mut bag_dists = Vec::with_capacity(markov.bag_count());
    for (i, child) in sd.children().iter().enumerate() {
        path.push(i);
        let local = build(child, g, path, steps)?;
        path.pop();
        bag_dists.push(local.relabel(markov.bag(i).as_slice())?);
    }
    let joint = glue_markov_tree(markov, &bag_dists)?;
    steps.push(GluingStep {
        path: path.clone(),
        identity: entropy_identity(markov, &bag_dists, &joint)?,
    });
    Ok(joint)
}

/// Outcome of comparing two exact distributions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub ok: bool,
    pub support_size: usize,
    /// First differing atom as `(key, left, right)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub difference: Option<(Vec<usize>, String, String)>,
}

impl Comparison {
    fn of(left: &SparseDistribution, right: &SparseDistribution) -> Comparison {
        let difference = left
            .first_difference(right)
            .map(|(k, a, b)| (k, format_rational(&a), format_rational(&b)));
        Comparison {
            ok: difference.is_none() && left.index_set() == right.index_set(),
            support_size: left.support_size(),
            difference,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProjectionReport {
    pub u: VertexSet,
    pub level: usize,
    /// Host vertices of the minimum sub-decomposition.
    pub vertices: Vec<usize>,
    pub comparison: Comparison,
}

/// Compares the marginal of the full associated distribution on the vertices
/// of the minimum sub-decomposition containing `u` with that sub-decomposition's
/// own associated distribution.
pub fn projection_consistency_check(sd: &StrongDecomposition, g: &Graph, u: &VertexSet) -> Result<ProjectionReport> {
    let sub = minimum_subdecomposition(sd, u)?;
    let own = associated_distribution(&sub.decomposition, g)?
        .dist
        .relabel(&sub.relabel)?;
    let full = associated_distribution(sd, g)?.dist;
    let marginal = full.marginal(own.index_set())?;
    Ok(ProjectionReport {
        u: u.clone(),
        level: sub.decomposition.level(),
        vertices: sub.relabel,
        comparison: Comparison::of(&marginal, &own),
    })
}

/// Checks `dist(sd2)(y) = dist(sd1)(y ∘ φ)` for every `y`.
pub fn isomorphism_transport_check(
    sd1: &StrongDecomposition,
    sd2: &StrongDecomposition,
    phi: &StrongIsomorphism,
    g: &Graph,
) -> Result<Comparison> {
    if !is_isomorphism(sd1.host(), sd2.host(), &phi.vertex_map) {
        return Err(Error::InvalidStructure("vertex map is not a host isomorphism".into()));
    }
    let d1 = associated_distribution(sd1, g)?.dist;
    let d2 = associated_distribution(sd2, g)?.dist;
    let mass = d1
        .atoms()
        .map(|(key, p)| {
            let mut moved = vec![0; key.len()];
            for (v, &x) in key.iter().enumerate() {
                moved[phi.vertex_map[v]] = x;
            }
            (moved, p.clone())
        })
        .collect();
    let transported = SparseDistribution::new(VertexSet::range(sd2.host().n()), g.n(), mass)?;
    Ok(Comparison::of(&d2, &transported))
}

/// `Δ(g) · |V(g)| ≤ 4 |E(g)|`.
pub fn degree_condition(g: &Graph) -> bool {
    g.max_degree() * g.n() <= 4 * g.edge_count()
}

fn require_degree_condition(g: &Graph) -> Result<()> {
    if !degree_condition(g) {
        return Err(Error::DegreeCondition {
            max_degree: g.max_degree(),
            n: g.n(),
            edges: g.edge_count(),
        });
    }
    Ok(())
}

fn serialize_rational<S: Serializer>(p: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Repr {
        num: String,
        den: String,
    }
    Repr {
        num: p.numer().to_string(),
        den: p.denom().to_string(),
    }
    .serialize(s)
}

fn serialize_bits<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    let rounded: f64 = format!("{x:.12}").parse().expect("formatted float parses");
    s.serialize_f64(rounded)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForestBound {
    pub hom_count: u128,
    #[serde(serialize_with = "serialize_rational")]
    pub bound: BigRational,
    pub ok: bool,
}

/// `hom(f, g) ≤ 2^{e(f)} · n^{v(f)} · (2e(g)/n²)^{e(f)}` for a forest `f`.
pub fn forest_hom_bound_check(f: &Graph, g: &Graph) -> Result<ForestBound> {
    if !f.is_forest() {
        return Err(Error::NotAForest);
    }
    require_degree_condition(g)?;
    if g.n() == 0 {
        return Err(Error::EmptySource);
    }
    let hom = hom_count(f, g)?;
    let ef = f.edge_count() as u32;
    let bound = BigRational::from_integer(BigInt::from(2).pow(ef) * BigInt::from(g.n()).pow(f.n() as u32))
        * edge_density(g).pow(ef as i32);
    let ok = BigRational::from_integer(BigInt::from(hom)) <= bound;
    Ok(ForestBound {
        hom_count: hom,
        bound,
        ok,
    })
}

/// `hom(h, g) / n^{v(h)} - (2e(g)/n²)^{e(h)}`.
pub fn sidorenko_check(h: &Graph, g: &Graph) -> Result<BigRational> {
    require_edges(g)?;
    let hom = hom_count(h, g)?;
    let density = ratio(BigInt::from(hom), BigInt::from(g.n()).pow(h.n() as u32));
    Ok(density - edge_density(g).pow(h.edge_count() as i32))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    #[serde(serialize_with = "serialize_bits")]
    pub entropy_bits: f64,
    /// `e(H)·log2(2e(G)/n²) + v(H)·log2 n`, taken as one logarithm of the exact product.
    #[serde(serialize_with = "serialize_bits")]
    pub rhs_bits: f64,
    #[serde(serialize_with = "serialize_bits")]
    pub log_hom_bits: f64,
    pub hom_count: u128,
    pub degree_ok: bool,
    /// Whether the entropy reaches `rhs_bits`; informational only.
    pub entropy_at_least_rhs: bool,
    #[serde(serialize_with = "serialize_rational")]
    pub sidorenko_gap: BigRational,
}

/// [`entropy_bound_report`] without requiring the degree condition, which is
/// recorded in `degree_ok` instead.
pub fn bound_report(sd: &StrongDecomposition, g: &Graph) -> Result<BoundReport> {
    let assoc = associated_distribution(sd, g)?;
    bound_report_for(&assoc)
}

/// The report for an already computed associated distribution.
pub fn bound_report_for(assoc: &AssociatedDistribution) -> Result<BoundReport> {
    let (h, g) = (&assoc.host, &assoc.target);
    let entropy_bits = assoc.dist.entropy().bits();
    let rhs =
        edge_density(g).pow(h.edge_count() as i32) * BigRational::from_integer(BigInt::from(g.n()).pow(h.n() as u32));
    let rhs_bits = log2_rational(&rhs);
    let hom = hom_count(h, g)?;
    let log_hom_bits = (hom as f64).log2();
    if entropy_bits > log_hom_bits + 1e-9 {
        return Err(Error::InvalidStructure(format!(
            "entropy {entropy_bits} exceeds log2 of the homomorphism count {log_hom_bits}"
        )));
    }
    let sidorenko_gap = sidorenko_check(h, g)?;
    Ok(BoundReport {
        entropy_bits,
        rhs_bits,
        log_hom_bits,
        hom_count: hom,
        degree_ok: degree_condition(g),
        entropy_at_least_rhs: entropy_bits + 1e-9 >= rhs_bits,
        sidorenko_gap,
    })
}

/// Entropy of the associated distribution against the homomorphism count and
/// the edge-density bound. Requires the degree condition on `g`.
pub fn entropy_bound_report(sd: &StrongDecomposition, g: &Graph) -> Result<BoundReport> {
    require_edges(g)?;
    require_degree_condition(g)?;
    bound_report(sd, g)
}
