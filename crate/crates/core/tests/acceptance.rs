//! Acceptance gate. Runs every criterion at its stated tolerance, prints one
//! line per criterion and exits non-zero if any fails.

mod common;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};
use strongtree::decomp::{
    bags_containing, helly_intersection, induces_subtree, minimum_covering_subfamily, retraction, validate_markov_tree,
    BagSubfamily, MarkovTree, TreeDecomposition,
};
use strongtree::dist::{entropy_identity, glue_markov_tree, glue_pair, junction_factorization, SparseDistribution};
use strongtree::error::Error;
use strongtree::fixtures::{Document, FixtureBundle};
use strongtree::graph::{connected_graphs, forests, graphs_with_edges, hom_count, Graph, VertexSet};
use strongtree::random;
use strongtree::sidorenko::{
    associated_distribution, degree_condition, entropy_bound_report, forest_hom_bound_check,
    isomorphism_transport_check, projection_consistency_check, sidorenko_check,
};
use strongtree::strong::{strong_isomorphism, StrongDecomposition};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    ensure(start.elapsed() < limit, || {
        format!("took {:.2?}, limit {limit:?}", start.elapsed())
    })
}

struct Instance {
    markov: MarkovTree,
    bags: Vec<SparseDistribution>,
}

fn markov_instances() -> Vec<Instance> {
    let mut r = random::rng(0x5eed_0001);
    (0..60)
        .map(|_| {
            let markov = random::random_markov_tree(&mut r, 6, 6);
            let target = r.random_range(2..=4);
            let bags = random::consistent_bag_dists(&mut r, &markov, target, 12);
            Instance { markov, bags }
        })
        .collect()
}

fn fixture_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures"))
}

fn bundled() -> Vec<(String, StrongDecomposition)> {
    let bundle = FixtureBundle::load(fixture_dir()).expect("bundled fixtures load and validate");
    bundle.strong().map(|(n, sd)| (n.to_string(), sd.clone())).collect()
}

fn targets_up_to(n: usize) -> Vec<Graph> {
    (2..=n).flat_map(connected_graphs).collect()
}

fn c1_entropy_identity(instances: &[Instance]) -> Outcome {
    let start = Instant::now();
    let mut worst = 0f64;
    for (i, inst) in instances.iter().enumerate() {
        let joint = glue_markov_tree(&inst.markov, &inst.bags).map_err(|e| format!("instance {i}: {e}"))?;
        let id = entropy_identity(&inst.markov, &inst.bags, &joint).map_err(|e| e.to_string())?;
        worst = worst.max(id.error());
        ensure(id.error() <= 1e-9, || format!("instance {i}: error {:.3e}", id.error()))?;
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!(
        "{} instances, max error {worst:.2e} bits, {:.2?}",
        instances.len(),
        start.elapsed()
    ))
}

fn c2_order_independence(instances: &[Instance]) -> Outcome {
    for (i, inst) in instances.iter().enumerate() {
        let glued = glue_markov_tree(&inst.markov, &inst.bags).map_err(|e| e.to_string())?;
        let closed = junction_factorization(&inst.markov, &inst.bags).map_err(|e| e.to_string())?;
        ensure(glued == closed, || {
            format!("instance {i}: first difference {:?}", glued.first_difference(&closed))
        })?;
    }
    Ok(format!("{} instances equal atom for atom", instances.len()))
}

fn c3_coupling() -> Outcome {
    let mut r = random::rng(0x5eed_0003);
    let mut atoms = 0;
    let pairs = 60;
    for i in 0..pairs {
        let (p12, p23) = random::random_glue_pair(&mut r, 2, 3);
        let q = glue_pair(&p12, &p23).map_err(|e| e.to_string())?;
        let shared = p12.index_set().intersection(p23.index_set());
        let m = p12.marginal(&shared).map_err(|e| e.to_string())?;
        let pos = |s: &VertexSet| -> Vec<usize> { s.iter().map(|v| q.index_set().position(v).unwrap()).collect() };
        let (i12, i23, i2) = (pos(p12.index_set()), pos(p23.index_set()), pos(&shared));
        for (key, mass) in q.atoms() {
            let pick = |idx: &[usize]| -> Vec<usize> { idx.iter().map(|&j| key[j]).collect() };
            ensure(
                mass * m.mass(&pick(&i2)) == p12.mass(&pick(&i12)) * p23.mass(&pick(&i23)),
                || format!("pair {i}: identity fails at {key:?}"),
            )?;
            atoms += 1;
        }
        let reproduce = q.marginal(p12.index_set()).ok().as_ref() == Some(&p12)
            && q.marginal(p23.index_set()).ok().as_ref() == Some(&p23);
        ensure(reproduce, || format!("pair {i}: marginals not reproduced"))?;
    }
    Ok(format!("{pairs} pairs, {atoms} atoms checked exactly"))
}

fn c4_subtree_marginals(instances: &[Instance]) -> Outcome {
    let mut subtrees = 0;
    let mut used = 0;
    for (i, inst) in instances.iter().enumerate().filter(|(_, x)| x.markov.bag_count() <= 5) {
        used += 1;
        let m = &inst.markov;
        let joint = glue_markov_tree(m, &inst.bags).map_err(|e| e.to_string())?;
        let d = TreeDecomposition::new(Graph::empty(m.ground_size()), m.clone());
        for mask in 1u32..(1 << m.bag_count()) {
            if !common::connected_mask(m, mask) {
                continue;
            }
            let ret =
                retraction(&d, &BagSubfamily::new(common::bags_of(mask, m.bag_count()))).map_err(|e| e.to_string())?;
            let local: Vec<SparseDistribution> = ret
                .bag_map
                .iter()
                .enumerate()
                .map(|(j, &b)| inst.bags[b].relabel(ret.decomposition.markov.bag(j).as_slice()))
                .collect::<Result<_, Error>>()
                .map_err(|e| e.to_string())?;
            let sub = glue_markov_tree(&ret.decomposition.markov, &local)
                .and_then(|s| s.relabel(&ret.vertex_map))
                .map_err(|e| e.to_string())?;
            let marginal = joint.marginal(sub.index_set()).map_err(|e| e.to_string())?;
            ensure(marginal == sub, || format!("instance {i}, subtree {:?}", ret.bag_map))?;
            subtrees += 1;
        }
    }
    Ok(format!("{used} instances, {subtrees} subtrees"))
}

fn c5_minimum_subfamily() -> Outcome {
    let start = Instant::now();
    let mut r = random::rng(0x5eed_0005);
    let mut sets = 0;
    let count = 120;
    for i in 0..count {
        let d = random::random_decomposition(&mut r, 8, 7);
        let m = &d.markov;
        let n = m.ground_size();
        for mask in 1u32..(1 << n) {
            let u: VertexSet = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let single = m.bags().iter().any(|b| u.is_subset(b));
            match minimum_covering_subfamily(m, &u) {
                Ok(f) => {
                    let best = common::all_minimum_covers(m, &u);
                    ensure(best.len() == 1, || {
                        format!("instance {i}, u={u}: {} minimum covers", best.len())
                    })?;
                    ensure(f.as_slice() == best[0].as_slice(), || {
                        format!("instance {i}, u={u}: {f:?} vs {:?}", best[0])
                    })?;
                    sets += 1;
                }
                Err(Error::ContainedInSingleBag(_)) if single => {}
                Err(e) => return Err(format!("instance {i}, u={u}: {e}")),
            }
        }
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!(
        "{count} decompositions, {sets} spread vertex sets, {:.2?}",
        start.elapsed()
    ))
}

fn c6_appendix(instances: &[Instance]) -> Outcome {
    let mut r = random::rng(0x5eed_0006);
    let mut trees: Vec<MarkovTree> = instances.iter().map(|x| x.markov.clone()).collect();
    trees.extend((0..100).map(|_| random::random_decomposition(&mut r, 8, 7).markov));
    for (i, m) in trees.iter().enumerate() {
        ensure(validate_markov_tree(m).ok, || format!("tree {i} invalid"))?;
        for v in 0..m.ground_size() {
            let f = bags_containing(m, v).map_err(|e| e.to_string())?;
            ensure(induces_subtree(m, &f).unwrap_or(false), || {
                format!("tree {i}: F({v}) = {f:?} not a subtree")
            })?;
        }
    }
    let families_checked = 150;
    let mut intersecting = 0;
    for i in 0..families_checked {
        let m = random::random_markov_tree(&mut r, 8, 2);
        let mut adj = vec![Vec::new(); m.bag_count()];
        for &(a, b) in m.tree_edges() {
            adj[a].push(b);
            adj[b].push(a);
        }
        let k = r.random_range(1..=4);
        let fams: Vec<BagSubfamily> = (0..k)
            .map(|_| {
                let size = r.random_range(1..=m.bag_count());
                random::random_subtree(&mut r, &adj, size)
            })
            .collect();
        let plain: Vec<Vec<usize>> = fams.iter().map(|f| f.as_slice().to_vec()).collect();
        let got = helly_intersection(&m, &fams).map_err(|e| e.to_string())?;
        let want = common::common_bag(&plain);
        ensure(got == want, || format!("family {i}: {got:?} vs {want:?}"))?;
        intersecting += usize::from(got.is_some());
    }
    Ok(format!(
        "{} trees subtree-checked, {families_checked} Helly families ({intersecting} intersecting)",
        trees.len()
    ))
}

fn c7_c4_on_triangle() -> Outcome {
    let bundle = FixtureBundle::load(fixture_dir()).map_err(|e| e.to_string())?;
    let Some(Document::Strong(c4)) = bundle.documents.get("c4") else {
        return Err("c4 fixture missing".into());
    };
    let k3 = Graph::complete(3);
    let a = associated_distribution(c4, &k3).map_err(|e| e.to_string())?;
    let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let light = a.dist.atoms().filter(|(_, p)| **p == q(1, 24)).count();
    let heavy = a.dist.atoms().filter(|(_, p)| **p == q(1, 12)).count();
    ensure(a.dist.support_size() == 18 && light == 12 && heavy == 6, || {
        format!("atoms {} ({light} of 1/24, {heavy} of 1/12)", a.dist.support_size())
    })?;
    let r = entropy_bound_report(c4, &k3).map_err(|e| e.to_string())?;
    ensure((r.entropy_bits - 0.5 * 288f64.log2()).abs() <= 1e-9, || {
        format!("entropy {}", r.entropy_bits)
    })?;
    ensure((r.entropy_bits - 4.0849625007).abs() <= 1e-9, || {
        format!("entropy {}", r.entropy_bits)
    })?;
    ensure((r.log_hom_bits - 4.1699250014).abs() <= 1e-9, || {
        format!("log hom {}", r.log_hom_bits)
    })?;
    ensure(r.rhs_bits == 4.0, || format!("rhs {}", r.rhs_bits))?;
    ensure(r.sidorenko_gap == q(2, 81), || format!("gap {}", r.sidorenko_gap))?;
    Ok(format!(
        "18 atoms (12 x 1/24, 6 x 1/12), H = {:.10}, log2 hom = {:.10}, rhs = {}, gap = {}",
        r.entropy_bits, r.log_hom_bits, r.rhs_bits, r.sidorenko_gap
    ))
}

fn c8_commutes(fixtures: &[(String, StrongDecomposition)]) -> Outcome {
    let targets = [Graph::complete(2), Graph::complete(3), Graph::path(3), Graph::cycle(4)];
    let mut checks = 0;
    for (name, sd) in fixtures {
        let m = sd.markov();
        let mut sets: Vec<VertexSet> = m.bags().to_vec();
        for a in 0..m.bag_count() {
            for b in a + 1..m.bag_count() {
                let s = m.bag(a).intersection(m.bag(b));
                if !s.is_empty() {
                    sets.push(s);
                }
            }
        }
        sets.sort();
        sets.dedup();
        for g in &targets {
            for u in &sets {
                let r = projection_consistency_check(sd, g, u).map_err(|e| format!("{name} u={u}: {e}"))?;
                ensure(r.comparison.ok, || {
                    format!("{name} on {g}, u={u}: {:?}", r.comparison.difference)
                })?;
                checks += 1;
            }
        }
    }
    let (_, c4) = fixtures.iter().find(|(n, _)| n == "c4").ok_or("c4 fixture missing")?;
    let (x, y) = (&c4.children()[0], &c4.children()[1]);
    // shared vertices 0 and 2 sit at local 0,2 in the first bag and 0,1 in the second
    let phi = strong_isomorphism(x, y, &[(0, 0), (2, 1)])
        .map_err(|e| e.to_string())?
        .ok_or("no pinned isomorphism between the c4 children")?;
    for g in &targets {
        let t = isomorphism_transport_check(x, y, &phi, g).map_err(|e| e.to_string())?;
        ensure(t.ok, || format!("transport on {g}: {:?}", t.difference))?;
    }
    Ok(format!(
        "{checks} projection checks over {} fixtures, transport on {} targets",
        fixtures.len(),
        targets.len()
    ))
}

fn c9_sidorenko_sweep(fixtures: &[(String, StrongDecomposition)]) -> Outcome {
    let start = Instant::now();
    let targets = targets_up_to(5);
    let mut min_gap: Option<BigRational> = None;
    for (name, sd) in fixtures {
        for g in &targets {
            let gap = sidorenko_check(sd.host(), g).map_err(|e| e.to_string())?;
            ensure(!gap.is_negative(), || format!("{name} on {g}: gap {gap}"))?;
            if min_gap.as_ref().is_none_or(|m| gap < *m) {
                min_gap = Some(gap);
            }
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!(
        "{} fixtures x {} connected targets, min gap {}, {:.2?}",
        fixtures.len(),
        targets.len(),
        min_gap.unwrap_or_else(BigRational::zero),
        start.elapsed()
    ))
}

fn c10_forest_bound() -> Outcome {
    let start = Instant::now();
    let fs: Vec<Graph> = (1..=5).flat_map(forests).collect();
    let targets: Vec<Graph> = (1..=5)
        .flat_map(|n| std::iter::once(Graph::empty(n)).chain(graphs_with_edges(n)))
        .filter(degree_condition)
        .collect();
    for f in &fs {
        for g in &targets {
            let r = forest_hom_bound_check(f, g).map_err(|e| e.to_string())?;
            ensure(r.ok, || format!("{f} into {g}: {} > {}", r.hom_count, r.bound))?;
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!(
        "{} forests x {} targets, {:.2?}",
        fs.len(),
        targets.len(),
        start.elapsed()
    ))
}

fn c11_support_bound(fixtures: &[(String, StrongDecomposition)]) -> Outcome {
    let targets = targets_up_to(5);
    let mut tightest = f64::INFINITY;
    let mut pairs = 0;
    for (name, sd) in fixtures {
        for g in &targets {
            let a = associated_distribution(sd, g).map_err(|e| format!("{name} on {g}: {e}"))?;
            let h = a.dist.entropy().bits();
            let hom = hom_count(sd.host(), g).map_err(|e| e.to_string())?;
            let bound = (hom as f64).log2();
            ensure(h <= bound + 1e-9, || format!("{name} on {g}: H = {h} > {bound}"))?;
            tightest = tightest.min(bound - h);
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs, smallest slack {tightest:.3e} bits"))
}

fn run(label: &str, f: impl FnOnce() -> Outcome) -> bool {
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    match outcome {
        Ok(detail) => {
            println!("PASS  {label}: {detail}");
            true
        }
        Err(detail) => {
            println!("FAIL  {label}: {detail}");
            false
        }
    }
}

fn main() -> ExitCode {
    let instances = markov_instances();
    let fixtures = bundled();
    let results = [
        run("[1] entropy identity", || c1_entropy_identity(&instances)),
        run("[2] order independence", || c2_order_independence(&instances)),
        run("[3] conditional coupling", c3_coupling),
        run("[4] markov subtrees", || c4_subtree_marginals(&instances)),
        run("[5] minimum subfamily", c5_minimum_subfamily),
        run("[6] subtree and helly", || c6_appendix(&instances)),
        run("[7] c4 on k3", c7_c4_on_triangle),
        run("[8] projection and transport", || c8_commutes(&fixtures)),
        run("[9] sidorenko sweep", || c9_sidorenko_sweep(&fixtures)),
        run("[10] forest bound", c10_forest_bound),
        run("[11] support bound", || c11_support_bound(&fixtures)),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
