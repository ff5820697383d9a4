use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use cubis::bench::{self, BenchManifest, BenchRow};
use cubis::solver::NeighborFloor;
use cubis::{
    brute_force_max_clique, load_graph, reference_bk_max_clique, solve, CoreDecomposition,
    EdgeListSource, Error, Format, Graph, SolveConfig,
};

const EXIT_IO: u8 = 1;
const EXIT_MISMATCH: u8 = 2;
const EXIT_INVARIANT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "cubis",
    version,
    about = "Exact maximum clique for large sparse graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one graph and print its report.
    Solve(SolveArgs),
    /// Print the core-number ladder of a graph.
    Cores(InputArgs),
    /// Brute-force clique number, for small verification graphs.
    Oracle(OracleArgs),
    /// Run every graph in a manifest and print one row per network.
    Bench(BenchArgs),
}

#[derive(Args)]
struct InputArgs {
    path: PathBuf,
    /// Input format; inferred from the extension when omitted.
    #[arg(long, value_parser = parse_format)]
    format: Option<Format>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SolverFlags {
    /// Use `>=` instead of `>` in the early-termination tests.
    #[arg(long)]
    inclusive_bounds: bool,
    /// Skip the per-node assessment before CUBIS-2.
    #[arg(long)]
    no_further_pruning: bool,
    /// Assess band nodes against neighbours of at least their own core.
    #[arg(long)]
    own_core_filter: bool,
}

impl SolverFlags {
    fn apply(&self, mut cfg: SolveConfig) -> SolveConfig {
        if self.inclusive_bounds {
            cfg.strict_bounds = false;
        }
        if self.no_further_pruning {
            cfg.further_pruning = false;
        }
        if self.own_core_filter {
            cfg.neighbor_floor = NeighborFloor::OwnCore;
        }
        cfg
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value_t = 1)]
    topl: usize,
    #[command(flatten)]
    flags: SolverFlags,
    /// Also run the reference Bron–Kerbosch and report both times.
    #[arg(long)]
    baseline: bool,
    /// Network name for the report; defaults to the file stem.
    #[arg(long)]
    name: Option<String>,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value_t = cubis::search::DEFAULT_ORACLE_GUARD)]
    guard: usize,
}

#[derive(Args)]
struct BenchArgs {
    manifest: PathBuf,
    /// Comma-separated topL values; each entry runs once per value.
    #[arg(long, value_delimiter = ',')]
    sweep_topl: Vec<usize>,
    #[command(flatten)]
    flags: SolverFlags,
    #[arg(long, conflicts_with = "jsonl")]
    csv: bool,
    #[arg(long)]
    jsonl: bool,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn load(input: &InputArgs) -> Result<Graph, Error> {
    let mut src = EdgeListSource::new(&input.path);
    if let Some(f) = input.format {
        src = src.with_format(f);
    }
    load_graph(&src)
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        Error::Invariant(_) => ExitCode::from(EXIT_INVARIANT),
        _ => ExitCode::from(EXIT_IO),
    }
}

fn cmd_solve(args: &SolveArgs) -> ExitCode {
    let graph = match load(&args.input) {
        Ok(g) => g,
        Err(e) => return fail(&e),
    };
    let cfg = args.flags.apply(SolveConfig {
        topl: args.topl,
        ..SolveConfig::default()
    });
    let solution = match solve(&graph, &cfg) {
        Ok(s) => s,
        Err(e) => return fail(&e),
    };
    let name = args.name.clone().unwrap_or_else(|| stem(&args.input.path));
    let report = solution.report.with_network(name);
    if args.input.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", bench::render_report(&report));
    }

    if args.baseline {
        let t = Instant::now();
        let reference = reference_bk_max_clique(&graph);
        let seconds = t.elapsed().as_secs_f64();
        if args.input.json {
            println!(
                "{}",
                json!({"baseline": {"omega": reference.len(), "seconds": seconds}})
            );
        } else {
            println!("baseline     omega {} in {:.3} s", reference.len(), seconds);
        }
        if reference.len() != report.omega {
            eprintln!(
                "error: baseline found omega {} but solver found {}",
                reference.len(),
                report.omega
            );
            return ExitCode::from(EXIT_INVARIANT);
        }
    }
    ExitCode::SUCCESS
}

fn cmd_cores(args: &InputArgs) -> ExitCode {
    let graph = match load(args) {
        Ok(g) => g,
        Err(e) => return fail(&e),
    };
    let d = CoreDecomposition::compute(&graph);
    let counts: Vec<(u32, usize)> = d
        .ladder()
        .iter()
        .enumerate()
        .map(|(k, &c)| (c, d.nodes_at(k).len()))
        .collect();
    if args.json {
        let counts: Vec<_> = counts
            .iter()
            .map(|&(core, nodes)| json!({"core": core, "nodes": nodes}))
            .collect();
        println!(
            "{}",
            json!({
                "n": graph.node_count(),
                "m": graph.edge_count(),
                "c_max": d.c_max(),
                "ladder": d.ladder(),
                "counts": counts,
            })
        );
    } else {
        println!("nodes   {}", graph.node_count());
        println!("edges   {}", graph.edge_count());
        match d.c_max() {
            Some(c) => println!("c_max   {c}"),
            None => println!("c_max   null"),
        }
        println!("ladder  {:?}", d.ladder());
        println!("core  nodes");
        for (core, nodes) in counts {
            println!("{core:>4}  {nodes}");
        }
    }
    ExitCode::SUCCESS
}

fn cmd_oracle(args: &OracleArgs) -> ExitCode {
    let graph = match load(&args.input) {
        Ok(g) => g,
        Err(e) => return fail(&e),
    };
    let clique = match brute_force_max_clique(&graph, args.guard) {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };
    let labels: Vec<String> = clique
        .members()
        .iter()
        .map(|&v| graph.label(v).into_owned())
        .collect();
    if args.input.json {
        println!("{}", json!({"omega": clique.len(), "clique": labels}));
    } else {
        println!("omega   {}", clique.len());
        println!("clique  {}", labels.join(" "));
    }
    ExitCode::SUCCESS
}

fn cmd_bench(args: &BenchArgs) -> ExitCode {
    let manifest = match BenchManifest::load(&args.manifest) {
        Ok(m) => m,
        Err(e) => return fail(&e),
    };
    let base = args.flags.apply(manifest.defaults.clone());
    let topls = if args.sweep_topl.is_empty() {
        vec![base.topl]
    } else {
        args.sweep_topl.clone()
    };
    if topls.contains(&0) {
        eprintln!("error: topl values must be at least 1");
        return ExitCode::from(EXIT_IO);
    }

    if args.csv {
        println!("{}", bench::CSV_HEADER);
    }
    let mut rows: Vec<BenchRow> = Vec::new();
    for entry in &manifest.entries {
        for &topl in &topls {
            let cfg = SolveConfig {
                topl,
                ..base.clone()
            };
            let row = bench::run_entry(entry, &cfg);
            if args.csv {
                println!("{}", bench::csv_row(&row));
            } else if args.jsonl {
                println!("{}", bench::jsonl_row(&row));
            }
            rows.push(row);
        }
    }
    if !args.csv && !args.jsonl {
        print!("{}", bench::render_table(&rows));
    }
    match bench::exit_code(&rows) {
        0 => ExitCode::SUCCESS,
        2 => ExitCode::from(EXIT_MISMATCH),
        3 => ExitCode::from(EXIT_INVARIANT),
        _ => ExitCode::from(EXIT_IO),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_IO } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match &cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Cores(args) => cmd_cores(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::Bench(args) => cmd_bench(args),
    }
}
