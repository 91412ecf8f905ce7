use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mwis_bench::{lattice_scoring, run_benchmark, solve_one, write_outputs, Backend, BenchError, BenchRunConfig};
use mwis_core::graph::{erdos_renyi, GraphFile};
use mwis_core::gls::{gls_map, GlsOptions, RankingPolicy};
use mwis_core::lattice::{build_lattice, LatticeKind, LatticeLayout, LayoutFile, DEFAULT_SPACING};
use mwis_core::rydberg::{
    default_mis_schedule, evolve, sample, stable_dt, AnnealSchedule, RydbergRegister, ScheduleFile, DEFAULT_DT,
};
use mwis_core::WeightedGraph;
use serde::Serialize;
use serde_json::json;

#[derive(Parser)]
#[command(name = "mwis", version, about = "Lattice-decomposition MWIS solver and benchmark harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a seeded Erdős–Rényi graph as JSON.
    Generate {
        #[arg(short, long)]
        n: usize,
        #[arg(short, long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve one graph with one backend and print the solution.
    Solve {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value = "beam+exact")]
        backend: Backend,
        /// Bench config supplying beam, sa and quantum parameters.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a sweep described by a bench config file.
    Bench {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Replaces the configured backend list; repeatable.
        #[arg(long = "backend")]
        backends: Vec<Backend>,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Map a graph onto a layout from one start vertex.
    Map {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        layout: LayoutArgs,
        #[arg(long, default_value_t = 0)]
        start: usize,
        #[arg(long, value_enum, default_value_t = Policy::Default)]
        policy: Policy,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Anneal a register and print sampled bitstring counts.
    Emulate {
        /// Inline atom coordinates in µm, e.g. "0,0;5,0;10,0".
        #[arg(long, conflicts_with = "layout")]
        atoms: Option<String>,
        /// Layout JSON; one atom per site.
        #[arg(long)]
        layout: Option<PathBuf>,
        /// Comma-separated detuning weights, one per atom. Default all 1.
        #[arg(long)]
        weights: Option<String>,
        #[arg(long, conflicts_with = "total_time")]
        schedule: Option<PathBuf>,
        /// Duration of the default schedule in µs.
        #[arg(long)]
        total_time: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_DT)]
        dt: f64,
        #[arg(long, default_value_t = 1000)]
        shots: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compare layouts by the size of the GLS subgraphs they admit.
    ScoreLattices {
        #[arg(long, default_value_t = 50)]
        graphs: usize,
        #[arg(short, long, default_value_t = 40)]
        n: usize,
        #[arg(short, long, default_value_t = 0.5)]
        p: f64,
        /// Start vertices per graph.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        rows: usize,
        #[arg(long, default_value_t = 6)]
        cols: usize,
        #[arg(long, default_value_t = DEFAULT_SPACING)]
        spacing: f64,
        #[arg(long, value_enum, default_value_t = Policy::LowDegree)]
        policy: Policy,
    },
}

#[derive(Args)]
struct LayoutArgs {
    /// Layout JSON; overrides the generated layout options.
    #[arg(long)]
    layout: Option<PathBuf>,
    #[arg(long, default_value = "triangular")]
    kind: LatticeKind,
    #[arg(long, default_value_t = 6)]
    rows: usize,
    #[arg(long, default_value_t = 6)]
    cols: usize,
    #[arg(long, default_value_t = DEFAULT_SPACING)]
    spacing: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Policy {
    /// Mapped neighbors, then higher degree.
    Default,
    /// Mapped neighbors, then lower degree (the beam solver's default).
    LowDegree,
}

impl Policy {
    fn ranking(self) -> RankingPolicy {
        match self {
            Policy::Default => RankingPolicy::default(),
            Policy::LowDegree => RankingPolicy::low_degree_first(),
        }
    }
}

enum Failure {
    /// Bad input: exit 2.
    Config(String),
    /// Some backend runs failed: exit 3.
    Partial(String),
    /// Anything else: exit 1.
    Run(String),
}

impl From<BenchError> for Failure {
    fn from(e: BenchError) -> Self {
        if e.is_config() {
            Failure::Config(e.to_string())
        } else {
            Failure::Run(e.to_string())
        }
    }
}

impl From<mwis_core::Error> for Failure {
    fn from(e: mwis_core::Error) -> Self {
        Failure::Config(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Config(format!("cannot read {}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    serde_json::from_str(&read(path)?).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))
}

fn emit(text: &str, out: Option<&Path>) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, format!("{text}\n"))
            .map_err(|e| Failure::Run(format!("cannot write {}: {e}", path.display()))),
        None => match writeln!(std::io::stdout().lock(), "{text}") {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::Run(e.to_string())),
            _ => Ok(()),
        },
    }
}

fn pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output serialization cannot fail")
}

fn load_graph(path: &Path) -> CliResult<WeightedGraph> {
    let file: GraphFile = parse_json(path)?;
    Ok(WeightedGraph::from_file(&file)?)
}

fn load_layout(args: &LayoutArgs) -> CliResult<LatticeLayout> {
    match &args.layout {
        Some(path) => {
            let file: LayoutFile = parse_json(path)?;
            Ok(file.to_layout()?)
        }
        None => Ok(build_lattice(args.kind, args.rows, args.cols, args.spacing)?),
    }
}

fn parse_floats(text: &str) -> CliResult<Vec<f64>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Failure::Config(format!("'{t}' is not a number")))
        })
        .collect()
}

fn parse_atoms(text: &str) -> CliResult<Vec<[f64; 2]>> {
    text.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|t| match parse_floats(t)?.as_slice() {
            &[x, y] => Ok([x, y]),
            _ => Err(Failure::Config(format!("atom '{t}' needs two coordinates"))),
        })
        .collect()
}

fn load_config(path: Option<&Path>) -> CliResult<BenchRunConfig> {
    match path {
        Some(p) => Ok(BenchRunConfig::from_file(p)?),
        None => Ok(BenchRunConfig::default()),
    }
}

fn cmd_generate(n: usize, p: f64, seed: u64, out: Option<&Path>) -> CliResult<()> {
    let g = erdos_renyi(n, p, seed)?;
    emit(&g.to_json(), out)
}

fn cmd_solve(graph: &Path, backend: Backend, config: Option<&Path>, seed: u64) -> CliResult<()> {
    let g = load_graph(graph)?;
    let cfg = load_config(config)?;
    let solved = solve_one(&cfg, backend, &g, seed).map_err(|e| Failure::Partial(e.to_string()))?;
    let doc = json!({
        "backend": backend.to_string(),
        "weight": solved.set.total_weight(),
        "size": solved.set.len(),
        "vertices": solved.set.members(),
        "largest_subgraph": solved.largest_subgraph,
    });
    emit(&pretty(&doc), None)
}

fn cmd_bench(
    config: Option<&Path>,
    seed: Option<u64>,
    out: Option<PathBuf>,
    backends: Vec<Backend>,
    threads: Option<usize>,
) -> CliResult<()> {
    let mut cfg = load_config(config)?;
    if let Some(s) = seed {
        cfg.seed = s;
    }
    if let Some(o) = out {
        cfg.output = o;
    }
    if !backends.is_empty() {
        cfg.backends = backends;
    }
    if threads.is_some() {
        cfg.threads = threads;
    }
    cfg.validate()?;
    let result = run_benchmark(&cfg)?;
    write_outputs(&cfg.output, &cfg, &result).map_err(|e| Failure::Run(e.to_string()))?;
    let failures = result.failures();
    eprintln!(
        "{} records written to {} ({failures} failed)",
        result.records.len(),
        cfg.output.display()
    );
    if failures > 0 {
        return Err(Failure::Partial(format!("{failures} backend runs failed")));
    }
    Ok(())
}

fn cmd_map(graph: &Path, layout: &LayoutArgs, start: usize, policy: Policy, out: Option<&Path>) -> CliResult<()> {
    let g = load_graph(graph)?;
    let lattice = load_layout(layout)?;
    let options = GlsOptions {
        policy: policy.ranking(),
        max_size: None,
    };
    let mapping = gls_map(&g, &lattice, start, options)?;
    let file = mapping.to_file(
        Some(graph.display().to_string()),
        layout.layout.as_ref().map(|p| p.display().to_string()),
    );
    emit(&pretty(&file), out)
}

#[allow(clippy::too_many_arguments)]
fn cmd_emulate(
    atoms: Option<&str>,
    layout: Option<&Path>,
    weights: Option<&str>,
    schedule: Option<&Path>,
    total_time: Option<f64>,
    dt: f64,
    shots: usize,
    seed: u64,
) -> CliResult<()> {
    let positions = match (atoms, layout) {
        (Some(a), _) => parse_atoms(a)?,
        (None, Some(path)) => parse_json::<LayoutFile>(path)?.coords,
        (None, None) => return Err(Failure::Config("give --atoms or --layout".into())),
    };
    let weights = match weights {
        Some(w) => parse_floats(w)?,
        None => vec![1.0; positions.len()],
    };
    let register = RydbergRegister::new(positions, weights)?;
    let schedule: AnnealSchedule = match schedule {
        Some(path) => parse_json::<ScheduleFile>(path)?.to_schedule()?,
        None => default_mis_schedule(total_time.unwrap_or(4.0))?,
    };
    if !(dt > 0.0) {
        return Err(Failure::Config(format!("dt = {dt} must be positive")));
    }
    let state = evolve(&register, &schedule, dt.min(stable_dt(&register, &schedule)))?;
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for s in sample(&state, shots, seed)? {
        *counts.entry(s).or_default() += 1;
    }
    let mut rows: Vec<(usize, usize)> = counts.into_iter().collect();
    rows.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    let atoms_n = register.len();
    // character i is atom i
    let bits = |b: usize| (0..atoms_n).map(|i| if b >> i & 1 == 1 { '1' } else { '0' }).collect::<String>();
    let doc = json!({
        "atoms": atoms_n,
        "shots": shots,
        "counts": rows.iter().map(|&(b, c)| json!({"bitstring": bits(b), "count": c})).collect::<Vec<_>>(),
    });
    emit(&pretty(&doc), None)
}

#[allow(clippy::too_many_arguments)]
fn cmd_score(
    graphs: usize,
    n: usize,
    p: f64,
    samples: usize,
    seed: u64,
    rows: usize,
    cols: usize,
    spacing: f64,
    policy: Policy,
) -> CliResult<()> {
    let ensemble = (0..graphs)
        .map(|i| erdos_renyi(n, p, mwis_core::seed::mix(seed, &[i as u64])))
        .collect::<mwis_core::Result<Vec<_>>>()?;
    let layouts = LatticeKind::ALL
        .iter()
        .map(|&k| Ok((k.name().to_string(), build_lattice(k, rows, cols, spacing)?)))
        .collect::<mwis_core::Result<Vec<_>>>()?;
    let options = GlsOptions {
        policy: policy.ranking(),
        max_size: None,
    };
    let scores = lattice_scoring(&ensemble, &layouts, samples, seed, &options)?;
    emit(&pretty(&scores), None)
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Generate { n, p, seed, out } => cmd_generate(n, p, seed, out.as_deref()),
        Command::Solve {
            graph,
            backend,
            config,
            seed,
        } => cmd_solve(&graph, backend, config.as_deref(), seed),
        Command::Bench {
            config,
            seed,
            out,
            backends,
            threads,
        } => cmd_bench(config.as_deref(), seed, out, backends, threads),
        Command::Map {
            graph,
            layout,
            start,
            policy,
            out,
        } => cmd_map(&graph, &layout, start, policy, out.as_deref()),
        Command::Emulate {
            atoms,
            layout,
            weights,
            schedule,
            total_time,
            dt,
            shots,
            seed,
        } => cmd_emulate(
            atoms.as_deref(),
            layout.as_deref(),
            weights.as_deref(),
            schedule.as_deref(),
            total_time,
            dt,
            shots,
            seed,
        ),
        Command::ScoreLattices {
            graphs,
            n,
            p,
            samples,
            seed,
            rows,
            cols,
            spacing,
            policy,
        } => cmd_score(graphs, n, p, samples, seed, rows, cols, spacing, policy),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Partial(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Run(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
