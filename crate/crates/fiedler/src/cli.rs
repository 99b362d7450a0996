//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use fiedler_core::bounds::{basic_diameter_bound, bound_report, BoundKind};
use fiedler_core::heuristics::{compare_families, edge_augmentation};
use fiedler_core::search::{
    enumerate_cubic, enumerate_graphs, enumerate_trees, maximize_lambda2, verify_conjecture_cubic,
    verify_conjecture_k2, verify_conjecture_tree2, Sampling, SearchOutcome, Verdict, VerificationReport,
    TIE_TOL,
};
use fiedler_core::spectral::{algebraic_connectivity, consensus_decay_rate, fiedler_vector};
use fiedler_core::trees::{branches, composed_tree_bound, find_splitting_vertex, is_well_balanced, split_spectral_bound};
use fiedler_core::{graph6, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::output::{num, nums, opt_num, write_record, write_table, Format};
use crate::parallel::{thread_count, Parallel};
use crate::source::{load_graph, read_graph6_file};

#[derive(Parser, Debug)]
#[command(name = "fiedler", version, about = "Algebraic connectivity of graphs: spectra, bounds and exhaustive searches")]
struct Cli {
    /// Output format [default: json, csv for augment and compare]
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Worker threads for searches [default: $FIEDLER_THREADS or all cores]
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Report wall time
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// λ₂ of a graph, optionally with its Fiedler vector
    Lambda2 {
        /// `named:NAME`, a graph6 file, or a graph6 string
        graph: String,
        #[arg(long)]
        vector: bool,
    },
    /// Every applicable upper bound on λ₂
    Bounds { graph: String },
    /// Splitting vertex and spectral bounds of a tree
    TreeSplit { graph: String },
    /// Stream a family as graph6, or find its λ₂ maximizers
    Enumerate(EnumerateArgs),
    /// Exhaustive or sampled checks of λ₂ extremality claims
    Verify {
        #[command(subcommand)]
        check: Check,
    },
    /// Greedy Fiedler-vector edge augmentation from the empty graph
    Augment {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        m: usize,
    },
    /// Augmentation against complete bipartite and random regular graphs
    Compare {
        #[arg(short)]
        n: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        m_list: Vec<usize>,
    },
    /// Fit the decay rate of du/dt = -Lu and compare it with λ₂
    Consensus {
        graph: String,
        /// Seed for the uniform initial loads
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Integration horizon [default: 20/λ₂]
        #[arg(long)]
        t_end: Option<f64>,
        /// RK4 step [default: 0.1/(2Δ)]
        #[arg(long)]
        dt: Option<f64>,
    },
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    /// Report the λ₂ maximizers instead of listing the family
    #[arg(long, global = true)]
    max_lambda2: bool,
    #[command(subcommand)]
    family: Family,
}

#[derive(Subcommand, Debug)]
enum Family {
    /// Free trees with bounded maximum degree
    Trees {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        d: usize,
    },
    /// Connected cubic graphs
    Cubic {
        #[arg(short)]
        n: usize,
    },
    /// Connected graphs with a given size and minimum degree
    Graphs {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        min_degree: usize,
    },
    /// Graphs listed in a graph6 file
    File { path: PathBuf },
}

#[derive(Subcommand, Debug)]
enum Check {
    /// λ₂ ≤ 2 on n vertices, 2(n−2) edges, minimum degree 2
    K2 {
        #[arg(short)]
        n: usize,
    },
    /// The Bethe tree maximizes λ₂ among trees of its order and degree
    Tree2 {
        #[arg(short)]
        d: usize,
        #[arg(short = 'K')]
        k: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Order and diameter bounds for cubic graphs
    Cubic {
        #[arg(short = 'K')]
        k: usize,
    },
}

struct Ctx<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    format: Option<Format>,
    timing: bool,
    threads: Option<usize>,
    start: Instant,
}

impl Ctx<'_> {
    fn record(&mut self, mut rec: Map<String, Value>) -> Result<()> {
        if self.timing {
            rec.insert("wall_time_s".into(), num(self.start.elapsed().as_secs_f64()));
        }
        write_record(self.out, self.format.unwrap_or(Format::Json), &rec)?;
        Ok(())
    }

    fn table(&mut self, headers: &[&str], rows: &[Vec<Value>]) -> Result<()> {
        write_table(self.out, self.format.unwrap_or(Format::Csv), headers, rows)?;
        self.stderr_timing()
    }

    fn stderr_timing(&mut self) -> Result<()> {
        if self.timing {
            writeln!(self.err, "wall_time_s={:.3}", self.start.elapsed().as_secs_f64())?;
        }
        Ok(())
    }

    fn driver(&self) -> Parallel {
        Parallel::new(thread_count(self.threads))
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code: 0 on success, 1 on usage or input
/// errors, and for `verify` 2 on a failed and 3 on a sampled check.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let mut ctx = Ctx { out, err, format: cli.format, timing: cli.timing, threads: cli.threads, start: Instant::now() };
    match dispatch(cli.command, &mut ctx) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(ctx.err, "error: {e:#}");
            1
        }
    }
}

fn dispatch(cmd: Command, ctx: &mut Ctx) -> Result<i32> {
    match cmd {
        Command::Lambda2 { graph, vector } => lambda2_cmd(ctx, &graph, vector)?,
        Command::Bounds { graph } => bounds_cmd(ctx, &graph)?,
        Command::TreeSplit { graph } => tree_split_cmd(ctx, &graph)?,
        Command::Enumerate(args) => enumerate_cmd(ctx, args)?,
        Command::Verify { check } => return verify_cmd(ctx, check),
        Command::Augment { n, m } => augment_cmd(ctx, n, m)?,
        Command::Compare { n, m_list } => compare_cmd(ctx, n, &m_list)?,
        Command::Consensus { graph, seed, t_end, dt } => consensus_cmd(ctx, &graph, seed, t_end, dt)?,
    }
    Ok(0)
}

fn header(command: &str, spec: &str, g: &Graph) -> Map<String, Value> {
    let mut rec = Map::new();
    rec.insert("command".into(), json!(command));
    rec.insert("graph".into(), json!(spec));
    rec.insert("graph6".into(), json!(graph6::encode(g)));
    rec.insert("n".into(), json!(g.n()));
    rec.insert("m".into(), json!(g.m()));
    rec
}

fn lambda2_cmd(ctx: &mut Ctx, spec: &str, vector: bool) -> Result<()> {
    let g = load_graph(spec)?;
    let mut rec = header("lambda2", spec, &g);
    if vector {
        let f = fiedler_vector(&g)?;
        rec.insert("lambda2".into(), num(f.value));
        rec.insert("residual".into(), num(f.residual));
        rec.insert("vector".into(), nums(&f.vector));
    } else {
        rec.insert("lambda2".into(), num(algebraic_connectivity(&g)?));
    }
    ctx.record(rec)
}

fn bounds_cmd(ctx: &mut Ctx, spec: &str) -> Result<()> {
    let g = load_graph(spec)?;
    let report = bound_report(&g)?;
    let mut rec = header("bounds", spec, &g);
    rec.insert("lambda2".into(), num(report.lambda2));
    let mut entries = Vec::new();
    for e in &report.entries {
        let mut value = e.value;
        let mut note = Value::Null;
        if e.name == "tree_precise" && value.is_none() && g.is_tree() {
            value = Some(basic_diameter_bound(&g)?);
            note = json!("substituted basic_diameter");
        }
        let attained = value.is_some_and(|v| (v - report.lambda2).abs() <= TIE_TOL);
        entries.push(json!({
            "name": e.name,
            "kind": match e.kind { BoundKind::Certified => "certified", BoundKind::Reference => "reference" },
            "applicable": value.is_some(),
            "value": opt_num(value),
            "attained": attained,
            "note": note,
        }));
    }
    rec.insert("bounds".into(), Value::Array(entries));
    rec.insert("tightest".into(), report.tightest().map_or(Value::Null, |e| json!(e.name)));
    ctx.record(rec)
}

fn tree_split_cmd(ctx: &mut Ctx, spec: &str) -> Result<()> {
    let t = load_graph(spec)?;
    if !t.is_tree() {
        bail!("{spec} is not a tree");
    }
    let s = find_splitting_vertex(&t)?;
    let mut rec = header("tree-split", spec, &t);
    rec.insert("lambda2".into(), num(fiedler_core::search::lambda2(&t)?));
    rec.insert("vertex".into(), json!(s.vertex));
    rec.insert("component_sizes".into(), json!(s.component_sizes));
    rec.insert("walk".into(), json!(s.walk));
    let mut br = branches(&t, s.vertex);
    br.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    let split = if br.len() >= 2 { Some(split_spectral_bound(&t, s.vertex, br[0].0, br[1].0)?) } else { None };
    rec.insert("split_bound".into(), opt_num(split));
    if t.n() >= 3 {
        let (balanced, witness) = is_well_balanced(&t)?;
        rec.insert("well_balanced".into(), json!(balanced));
        rec.insert("balance_witness".into(), json!(witness));
        rec.insert("composed_bound".into(), num(composed_tree_bound(&t)?));
    }
    ctx.record(rec)
}

fn family(f: &Family) -> Result<(Box<dyn Iterator<Item = Graph> + Send>, String)> {
    Ok(match *f {
        Family::Trees { n, d } => (Box::new(enumerate_trees(n, d)?), format!("trees n={n} max_degree<={d}")),
        Family::Cubic { n } => (Box::new(enumerate_cubic(n)?.into_iter()), format!("connected cubic graphs n={n}")),
        Family::Graphs { n, m, min_degree } => (
            Box::new(enumerate_graphs(n, m, min_degree)?.into_iter()),
            format!("connected graphs n={n} m={m} min_degree>={min_degree}"),
        ),
        Family::File { ref path } => (Box::new(read_graph6_file(path)?.into_iter()), format!("file {}", path.display())),
    })
}

fn outcome_fields(rec: &mut Map<String, Value>, o: &SearchOutcome) {
    rec.insert("family".into(), json!(o.family));
    rec.insert("enumerated".into(), json!(o.enumerated));
    rec.insert("best_lambda2".into(), num(o.best_lambda2));
    rec.insert("maximizer_count".into(), json!(o.maximizers.len()));
    let m: Vec<Value> = o.maximizers.iter().map(|x| json!({"graph6": x.graph6, "lambda2": num(x.lambda2)})).collect();
    rec.insert("maximizers".into(), Value::Array(m));
}

fn enumerate_cmd(ctx: &mut Ctx, args: EnumerateArgs) -> Result<()> {
    let (graphs, desc) = family(&args.family)?;
    if args.max_lambda2 {
        let outcome = maximize_lambda2(graphs, &desc, &ctx.driver()).context("empty family")?;
        let mut rec = Map::new();
        rec.insert("command".into(), json!("enumerate"));
        outcome_fields(&mut rec, &outcome);
        return ctx.record(rec);
    }
    for g in graphs {
        writeln!(ctx.out, "{}", graph6::encode(&g))?;
    }
    ctx.stderr_timing()
}

fn verify_cmd(ctx: &mut Ctx, check: Check) -> Result<i32> {
    let driver = ctx.driver();
    let report: VerificationReport = match check {
        Check::K2 { n } => verify_conjecture_k2(n, &driver)?,
        Check::Tree2 { d, k, samples, seed } => verify_conjecture_tree2(d, k, Sampling { samples, seed }, &driver)?,
        Check::Cubic { k } => verify_conjecture_cubic(k, &driver)?,
    };
    let mut rec = Map::new();
    rec.insert("command".into(), json!("verify"));
    rec.insert("check".into(), json!(report.conjecture));
    rec.insert("verdict".into(), json!(report.verdict.label()));
    rec.insert("exhaustive".into(), json!(report.exhaustive));
    rec.insert("reference".into(), num(report.reference));
    rec.insert("witness".into(), json!(report.witness));
    rec.insert("note".into(), json!(report.note));
    outcome_fields(&mut rec, &report.outcome);
    ctx.record(rec)?;
    Ok(match report.verdict {
        Verdict::Pass => 0,
        Verdict::Fail => 2,
        Verdict::Sampled => 3,
    })
}

fn augment_cmd(ctx: &mut Ctx, n: usize, m: usize) -> Result<()> {
    let trace = edge_augmentation(n, m)?;
    let rows: Vec<Vec<Value>> = trace
        .steps
        .iter()
        .enumerate()
        .map(|(k, s)| vec![json!(k + 1), json!(s.edge.0), json!(s.edge.1), num(s.lambda2)])
        .collect();
    ctx.table(&["step", "i", "j", "lambda2"], &rows)
}

fn compare_cmd(ctx: &mut Ctx, n: usize, m_list: &[usize]) -> Result<()> {
    let rows: Vec<Vec<Value>> = compare_families(n, m_list)?
        .into_iter()
        .map(|r| {
            let reg = r.regular.as_ref();
            vec![
                json!(r.m),
                num(r.augmented),
                json!(r.b),
                opt_num(r.bipartite),
                json!(reg.map(|s| s.d)),
                opt_num(reg.map(|s| s.mean)),
                opt_num(reg.map(|s| s.min)),
                opt_num(reg.map(|s| s.max)),
                json!(r.flags),
            ]
        })
        .collect();
    let headers = ["m", "augmented", "b", "bipartite", "regular_d", "regular_mean", "regular_min", "regular_max", "flags"];
    ctx.table(&headers, &rows)
}

fn consensus_cmd(ctx: &mut Ctx, spec: &str, seed: u64, t_end: Option<f64>, dt: Option<f64>) -> Result<()> {
    let g = load_graph(spec)?;
    if !g.is_connected() {
        bail!("{spec} is disconnected");
    }
    let l2 = algebraic_connectivity(&g)?;
    let t_end = t_end.unwrap_or(20.0 / l2);
    let dt = dt.unwrap_or(0.1 / (2.0 * g.max_degree() as f64));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u0: Vec<f64> = (0..g.n()).map(|_| rng.gen::<f64>()).collect();
    let fit = consensus_decay_rate(&g, &u0, t_end, dt)?;
    let rel = (fit.rate - l2).abs() / l2;
    let mut rec = header("consensus", spec, &g);
    rec.insert("seed".into(), json!(seed));
    rec.insert("t_end".into(), num(t_end));
    rec.insert("dt".into(), num(dt));
    rec.insert("lambda2".into(), num(l2));
    rec.insert("rate".into(), num(fit.rate));
    rec.insert("fit_residual".into(), num(fit.rel_err));
    rec.insert("samples".into(), json!(fit.samples));
    rec.insert("relative_difference".into(), num(rel));
    rec.insert("within_2_percent".into(), json!(rel <= 0.02));
    ctx.record(rec)
}
