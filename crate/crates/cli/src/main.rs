use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use strongtree::decomp::{minimum_covering_subfamily, validate_markov_tree, MarkovTree};
use strongtree::dist::{entropy_identity, glue_markov_tree, junction_factorization, SparseDistribution};
use strongtree::error::Error;
use strongtree::fixtures::Document;
use strongtree::graph::{connected_graphs, hom_count, Graph, VertexSet};
use strongtree::random;
use strongtree::sidorenko::{
    associated_distribution, bound_report_for, degree_condition, entropy_bound_report, sidorenko_check,
};
use strongtree::strong::{minimum_subdecomposition, validate_strong, StrongDecomposition};

/// Largest target size accepted by `sidorenko-sweep`.
const MAX_SWEEP_VERTICES: usize = 6;

#[derive(Parser)]
#[command(
    name = "strongtree",
    version,
    about = "Strong tree decompositions and associated distributions"
)]
struct Cli {
    /// Output format for reports on standard output.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a graph, Markov tree, tree decomposition or strong decomposition.
    Validate { path: PathBuf },
    /// Build the associated distribution of a strong decomposition on a target graph.
    Assoc {
        decomp: PathBuf,
        target: PathBuf,
        /// Where to write the distribution; standard output carries the report.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Glue per-bag distributions along a Markov tree.
    Glue {
        markov: PathBuf,
        /// One distribution file per bag, in bag order.
        #[arg(required = true)]
        bags: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimum sub-decomposition containing a vertex set.
    MinSubdec {
        decomp: PathBuf,
        /// Comma-separated vertices, e.g. `0,2`.
        #[arg(long, value_delimiter = ',', required = true)]
        u: Vec<usize>,
    },
    /// Sidorenko gap of the decomposed graph against every connected target up to a size.
    SidorenkoSweep {
        decomp: PathBuf,
        #[arg(long, default_value_t = 5)]
        max_n: usize,
    },
    /// Entropy, homomorphism and edge-density bounds for one target.
    EntropyReport { decomp: PathBuf, target: PathBuf },
    /// Seeded randomized sweep of the gluing and covering properties.
    RandomCheck {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        count: usize,
    },
}

struct Failure {
    code: u8,
    body: Value,
}

impl Failure {
    fn input(msg: impl ToString) -> Self {
        Failure {
            code: 2,
            body: json!({"error": msg.to_string()}),
        }
    }

    fn semantic(body: Value) -> Self {
        Failure { code: 1, body }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Json(_) | Error::Io(_) => Failure::input(e),
            _ => Failure::semantic(json!({"error": e.to_string()})),
        }
    }
}

type Outcome = Result<Value, Failure>;

fn emit(value: &impl Serialize) -> String {
    serde_json::to_string_pretty(value).expect("reports serialise") + "\n"
}

fn load(path: &Path) -> Result<Document, Failure> {
    Document::load(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    match load(path)? {
        Document::Graph(g) => Ok(g),
        other => Err(Failure::input(format!(
            "{}: expected a graph, found a {}",
            path.display(),
            other.kind()
        ))),
    }
}

/// Parses and validates a strong decomposition.
fn load_strong(path: &Path) -> Result<StrongDecomposition, Failure> {
    let sd = match load(path)? {
        Document::Strong(sd) => sd,
        other => {
            return Err(Failure::input(format!(
                "{}: expected a strong decomposition, found a {}",
                path.display(),
                other.kind()
            )))
        }
    };
    let report = validate_strong(&sd);
    if !report.ok {
        return Err(Failure::semantic(
            json!({"error": "invalid strong decomposition", "report": report}),
        ));
    }
    Ok(sd)
}

fn load_distribution(path: &Path) -> Result<SparseDistribution, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn write_out(out: Option<&Path>, value: &impl Serialize) -> Result<Option<String>, Failure> {
    match out {
        Some(p) => {
            fs::write(p, emit(value)).map_err(|e| Failure::input(format!("{}: {e}", p.display())))?;
            Ok(Some(p.display().to_string()))
        }
        None => Ok(None),
    }
}

fn cmd_validate(path: &Path) -> Outcome {
    let doc = load(path)?;
    let report = doc.validate();
    let body = json!({"kind": doc.kind(), "ok": report.ok, "violations": report.violations});
    if report.ok {
        Ok(body)
    } else {
        Err(Failure::semantic(body))
    }
}

fn cmd_assoc(decomp: &Path, target: &Path, out: Option<&Path>) -> Outcome {
    let sd = load_strong(decomp)?;
    let g = load_graph(target)?;
    let assoc = associated_distribution(&sd, &g)?;
    let report = bound_report_for(&assoc)?;
    let written = write_out(out, &assoc.dist)?;
    let mut body = json!({"atoms": assoc.dist.support_size(), "report": report});
    match written {
        Some(p) => body["distribution_file"] = json!(p),
        None => body["distribution"] = serde_json::to_value(&assoc.dist).expect("serialisable"),
    }
    Ok(body)
}

fn cmd_glue(markov: &Path, bags: &[PathBuf], out: Option<&Path>) -> Outcome {
    let m: MarkovTree = match load(markov)? {
        Document::MarkovTree(m) => m,
        Document::TreeDecomposition(d) => d.markov,
        other => {
            return Err(Failure::input(format!(
                "{}: expected a Markov tree, found a {}",
                markov.display(),
                other.kind()
            )))
        }
    };
    let report = validate_markov_tree(&m);
    if !report.ok {
        return Err(Failure::semantic(
            json!({"error": "invalid Markov tree", "report": report}),
        ));
    }
    let dists = bags
        .iter()
        .map(|p| load_distribution(p))
        .collect::<Result<Vec<_>, _>>()?;
    let joint = glue_markov_tree(&m, &dists)?;
    let identity = entropy_identity(&m, &dists, &joint)?;
    let written = write_out(out, &joint)?;
    let mut body = json!({"atoms": joint.support_size(), "entropy_identity": identity});
    match written {
        Some(p) => body["distribution_file"] = json!(p),
        None => body["distribution"] = serde_json::to_value(&joint).expect("serialisable"),
    }
    Ok(body)
}

fn cmd_min_subdec(decomp: &Path, u: &[usize]) -> Outcome {
    let sd = load_strong(decomp)?;
    let u: VertexSet = u.iter().copied().collect();
    let sub = minimum_subdecomposition(&sd, &u)?;
    Ok(json!({
        "u": u,
        "level": sub.decomposition.level(),
        "underlying_graph": sub.decomposition.host(),
        "relabel": sub.relabel,
        "decomposition": sub.decomposition,
    }))
}

#[derive(Serialize)]
struct SweepRow {
    target: Graph,
    hom_count: u128,
    gap_num: String,
    gap_den: String,
    nonnegative: bool,
    degree_ok: bool,
}

fn cmd_sweep(decomp: &Path, max_n: usize) -> Outcome {
    if max_n > MAX_SWEEP_VERTICES {
        return Err(Failure::input(format!(
            "--max-n {max_n} exceeds the limit of {MAX_SWEEP_VERTICES} target vertices"
        )));
    }
    let sd = load_strong(decomp)?;
    let h = sd.host();
    let mut rows = Vec::new();
    for g in (2..=max_n).flat_map(connected_graphs) {
        let gap = sidorenko_check(h, &g)?;
        rows.push(SweepRow {
            hom_count: hom_count(h, &g)?,
            gap_num: gap.numer().to_string(),
            gap_den: gap.denom().to_string(),
            nonnegative: *gap.numer() >= 0.into(),
            degree_ok: degree_condition(&g),
            target: g,
        });
    }
    let all = rows.iter().all(|r| r.nonnegative);
    let body = json!({"host": h, "targets": rows.len(), "all_nonnegative": all, "rows": rows});
    if all {
        Ok(body)
    } else {
        Err(Failure::semantic(body))
    }
}

fn cmd_entropy_report(decomp: &Path, target: &Path) -> Outcome {
    let sd = load_strong(decomp)?;
    let g = load_graph(target)?;
    Ok(serde_json::to_value(entropy_bound_report(&sd, &g)?).expect("serialisable"))
}

fn cmd_random_check(seed: u64, count: usize) -> Outcome {
    let mut rng = random::rng(seed);
    let mut worst = 0f64;
    let mut mismatches = Vec::new();
    let mut covers = 0;
    for i in 0..count {
        let m = random::random_markov_tree(&mut rng, 6, 6);
        let bags = random::consistent_bag_dists(&mut rng, &m, 3, 12);
        let joint = glue_markov_tree(&m, &bags)?;
        if joint != junction_factorization(&m, &bags)? {
            mismatches.push(json!({"instance": i, "check": "closed form"}));
        }
        worst = worst.max(entropy_identity(&m, &bags, &joint)?.error());
        let n = m.ground_size();
        for mask in 1u32..(1 << n) {
            let u: VertexSet = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            match minimum_covering_subfamily(&m, &u) {
                Ok(_) => covers += 1,
                Err(Error::ContainedInSingleBag(_)) => {}
                Err(e) => mismatches.push(json!({"instance": i, "check": "cover", "error": e.to_string()})),
            }
        }
    }
    let ok = mismatches.is_empty() && worst <= 1e-9;
    let body = json!({
        "seed": seed,
        "instances": count,
        "max_entropy_identity_error": worst,
        "covers_computed": covers,
        "ok": ok,
        "failures": mismatches,
    });
    if ok {
        Ok(body)
    } else {
        Err(Failure::semantic(body))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let Format::Json = cli.format;
    let outcome = match &cli.command {
        Command::Validate { path } => cmd_validate(path),
        Command::Assoc { decomp, target, out } => cmd_assoc(decomp, target, out.as_deref()),
        Command::Glue { markov, bags, out } => cmd_glue(markov, bags, out.as_deref()),
        Command::MinSubdec { decomp, u } => cmd_min_subdec(decomp, u),
        Command::SidorenkoSweep { decomp, max_n } => cmd_sweep(decomp, *max_n),
        Command::EntropyReport { decomp, target } => cmd_entropy_report(decomp, target),
        Command::RandomCheck { seed, count } => cmd_random_check(*seed, *count),
    };
    match outcome {
        Ok(body) => {
            print!("{}", emit(&body));
            ExitCode::SUCCESS
        }
        Err(f) => {
            print!("{}", emit(&f.body));
            ExitCode::from(f.code)
        }
    }
}
