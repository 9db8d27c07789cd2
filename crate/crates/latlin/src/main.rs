//! Command-line front end: single runs, exhaustive verification, batch
//! benches and graph generation. Exit status 0 on success, 1 when a
//! verification property is violated, 2 on configuration errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use latlin::algorithms::{
    default_init, program_by_name, random_init, smp_program, SmpInstance, SmpInstanceFile,
};
use latlin::bench::{aggregate, run_trials, BenchConfig, CSV_HEADER};
use latlin::engine::{move_budget, run, Daemon, ReadModel, RunConfig};
use latlin::export::{colour_count, summarize, TraceRecord};
use latlin::state::{flag_state, colour_state, proposal_state, Membership};
use latlin::verify::{
    explore, lattice_dot, verify_partition, Restriction, VerifyOptions, DEFAULT_CAPACITY,
};
use latlin::{Graph, GlobalState, NodeProgram, StateVariant};

#[derive(Parser)]
#[command(name = "latlin", version, about = "lattice-traversing graph algorithm simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one algorithm once and print a summary.
    Run(RunArgs),
    /// Exhaustively verify the lattice partition on a small instance.
    Verify(VerifyArgs),
    /// Run seeded batches on random graphs and emit CSV rows.
    Bench(BenchArgs),
    /// Generate a random graph file.
    Gen(GenArgs),
}

#[derive(Args)]
struct GraphSource {
    /// Edge-list file (see README for the format).
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Random graph as n,m,seed.
    #[arg(long, value_name = "N,M,SEED")]
    random: Option<String>,
    /// Stable-marriage instance JSON (algorithm `smp` only).
    #[arg(long)]
    instance: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    /// Algorithm: mds, mds-ell, gc, vc, vc-dist, smp, naive-vc.
    #[arg(long)]
    alg: String,
    #[command(flatten)]
    source: GraphSource,
    /// all-in, all-out, canonical, random[:seed], or a comma list.
    #[arg(long, default_value = "canonical")]
    init: String,
    #[arg(long, default_value = "central")]
    daemon: Daemon,
    /// fresh or amr.
    #[arg(long, default_value = "fresh")]
    read_model: String,
    /// Staleness bound for amr reads.
    #[arg(long, default_value_t = 3)]
    lag: u32,
    /// Fast-forward a node's read cursors when it acts.
    #[arg(long)]
    refresh_on_act: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Move cap; defaults to four times the budget.
    #[arg(long)]
    max_moves: Option<u64>,
    /// Colour cap for gc init validation and random inits.
    #[arg(long)]
    cap: Option<u32>,
    /// Emit the trace record as JSON instead of the summary.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    alg: String,
    #[command(flatten)]
    source: GraphSource,
    /// Colour cap for the enumerated colouring domain.
    #[arg(long)]
    cap: Option<u32>,
    /// State-space capacity.
    #[arg(long, default_value_t = DEFAULT_CAPACITY)]
    capacity: u64,
    /// Restrict to states whose membership vector is a dominating set
    /// (two-phase program).
    #[arg(long)]
    feasible_only: bool,
    /// Write the per-class Hasse diagrams as DOT.
    #[arg(long)]
    dot: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    alg: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "central")]
    daemon: Daemon,
    #[arg(long, default_value = "fresh")]
    read_model: String,
    #[arg(long, default_value_t = 3)]
    lag: u32,
    #[arg(long)]
    cap: Option<u32>,
    /// Write CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

impl std::str::FromStr for ReadModelArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fresh" => Ok(ReadModelArg::Fresh),
            "amr" => Ok(ReadModelArg::Amr),
            other => Err(format!("unknown read model {other:?} (fresh|amr)")),
        }
    }
}

enum ReadModelArg {
    Fresh,
    Amr,
}

fn read_model(kind: &str, lag: u32, refresh_on_act: bool) -> Result<ReadModel> {
    match kind.parse::<ReadModelArg>().map_err(|e| anyhow!(e))? {
        ReadModelArg::Fresh => Ok(ReadModel::Fresh),
        ReadModelArg::Amr => Ok(ReadModel::Amr {
            lag,
            refresh_on_act,
        }),
    }
}

/// Loaded program plus the graph it runs on.
struct Loaded {
    graph: Graph,
    program: Box<dyn NodeProgram>,
}

fn load(alg: &str, source: &GraphSource, cap: Option<u32>) -> Result<Loaded> {
    if alg == "smp" {
        let path = source
            .instance
            .as_ref()
            .ok_or_else(|| anyhow!("algorithm smp needs --instance"))?;
        let text = fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        let file: SmpInstanceFile = serde_json::from_str(&text).context("parsing instance")?;
        let inst = SmpInstance::from_file(file)?;
        let graph = inst.carrier_graph();
        return Ok(Loaded {
            graph,
            program: Box::new(smp_program(inst)),
        });
    }
    let graph = match (&source.graph, &source.random) {
        (Some(path), None) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let parsed = Graph::parse_edge_list(&text)?;
            if parsed.duplicate_edges > 0 {
                eprintln!(
                    "warning: collapsed {} duplicate edge line(s)",
                    parsed.duplicate_edges
                );
            }
            parsed.graph
        }
        (None, Some(spec)) => {
            let parts: Vec<&str> = spec.split(',').collect();
            let [n, m, seed] = parts.as_slice() else {
                bail!("--random expects n,m,seed");
            };
            Graph::random(n.trim().parse()?, m.trim().parse()?, seed.trim().parse()?)?
        }
        _ => bail!("provide exactly one of --graph or --random"),
    };
    let program = program_by_name(alg, &graph, cap).map_err(|e| anyhow!(e))?;
    Ok(Loaded { graph, program })
}

fn parse_init(spec: &str, loaded: &Loaded, seed: u64) -> Result<GlobalState> {
    let Loaded { graph, program } = loaded;
    let n = graph.node_count();
    match spec {
        "canonical" => Ok(default_init(program.as_ref(), graph, seed)),
        "random" => Ok(random_init(program.as_ref(), graph, seed)),
        "all-in" | "all-out" => {
            if program.variant() != StateVariant::Flag {
                bail!("{} applies to membership-flag algorithms only", spec);
            }
            let st = if spec == "all-in" {
                Membership::In
            } else {
                Membership::Out
            };
            Ok(flag_state(&vec![st; n]))
        }
        other => {
            if let Some(s) = other.strip_prefix("random:") {
                return Ok(random_init(program.as_ref(), graph, s.parse()?));
            }
            let fields: Vec<&str> = other.split(',').map(str::trim).collect();
            if fields.len() != n {
                bail!("init lists {} values for {} nodes", fields.len(), n);
            }
            match program.variant() {
                StateVariant::Flag => {
                    let mut flags = Vec::new();
                    for f in &fields {
                        flags.push(match f.to_ascii_uppercase().as_str() {
                            "IN" => Membership::In,
                            "OUT" => Membership::Out,
                            _ => bail!("expected IN/OUT, got {f:?}"),
                        });
                    }
                    Ok(flag_state(&flags))
                }
                StateVariant::Colour => {
                    let colours: Vec<u32> = fields
                        .iter()
                        .map(|f| f.parse())
                        .collect::<Result<_, _>>()?;
                    Ok(colour_state(&colours))
                }
                StateVariant::Proposal => {
                    let ranks: Vec<u32> = fields
                        .iter()
                        .map(|f| f.parse())
                        .collect::<Result<_, _>>()?;
                    Ok(proposal_state(&ranks))
                }
                _ => bail!("list inits are not supported for this algorithm; use canonical"),
            }
        }
    }
}

fn cmd_run(args: &RunArgs) -> Result<ExitCode> {
    let loaded = load(&args.alg, &args.source, args.cap)?;
    let init = parse_init(&args.init, &loaded, args.seed ^ 0x5eed)?;
    let cfg = RunConfig {
        daemon: args.daemon,
        read_model: read_model(&args.read_model, args.lag, args.refresh_on_act)?,
        seed: args.seed,
        max_moves: args.max_moves,
    };
    let trace = run(loaded.program.as_ref(), &loaded.graph, &init, &cfg)?;
    let budget = move_budget(loaded.program.as_ref(), &loaded.graph);
    if args.json {
        let record = TraceRecord::new(loaded.program.as_ref(), &loaded.graph, &cfg, &trace);
        println!("{}", serde_json::to_string_pretty(&record)?);
    } else {
        println!(
            "{}",
            summarize(loaded.program.as_ref(), &loaded.graph, &trace, &budget)
        );
        if loaded.program.variant() == StateVariant::Colour {
            println!("colours used: {}", colour_count(trace.final_state()));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode> {
    let loaded = load(&args.alg, &args.source, args.cap)?;
    let prog = loaded.program.as_ref();
    let g = &loaded.graph;
    let restriction = if let Some(init) = prog.canonical_init(g) {
        Restriction::ReachableFrom(init)
    } else if args.feasible_only {
        fn feasible(g: &Graph, s: &GlobalState) -> bool {
            g.nodes().all(|i| {
                s.local(i).membership() == Some(Membership::In)
                    || g.neighbors(i)
                        .iter()
                        .any(|&j| s.local(j).membership() == Some(Membership::In))
            })
        }
        Restriction::Filter(feasible)
    } else {
        Restriction::Full
    };
    let space = explore(prog, g, restriction, args.capacity)?;
    let opts = VerifyOptions {
        colour_cap: (prog.variant() == StateVariant::Colour)
            .then(|| args.cap.unwrap_or_else(|| latlin::algorithms::default_colour_cap(g))),
        ..VerifyOptions::default()
    };
    let report = verify_partition(prog, g, &space, &opts);
    if let Some(path) = &args.dot {
        fs::write(path, lattice_dot(&space, &report))?;
    }
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!(
            "{} states, {} lattice class(es); disjoint={} exhaustive={} suprema_optimal={}",
            report.state_count, report.w, report.disjoint, report.exhaustive,
            report.suprema_optimal
        );
        for (k, class) in report.classes.iter().enumerate() {
            println!(
                "  class {k}: {} state(s), supremum {} (optimal: {}, meet/join closed: {})",
                class.members.len(),
                class.supremum,
                class.supremum_optimal,
                class.meet_join_closed
            );
        }
        if report.unsolvable > 0 {
            println!("  {} state(s) end with an exhausted proposer", report.unsolvable);
        }
        for w in &report.revisit_violations {
            println!(
                "  revisit: node {} returns to {} starting from {}",
                w.node, w.revisited, w.start
            );
        }
        for s in &report.daemon_mismatches {
            println!("  daemon-dependent endpoint from {s}");
        }
        for s in &report.divergent {
            println!("  diverged from {s}");
        }
    }
    Ok(if report.has_violations() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_bench(args: &BenchArgs) -> Result<ExitCode> {
    if args.alg == "smp" {
        bail!("bench runs graph algorithms; smp has no graph source");
    }
    // Validate the algorithm name early against a probe graph.
    let probe = Graph::random(2.max(args.n.min(4)), 0, 0)?;
    program_by_name(&args.alg, &probe, args.cap).map_err(|e| anyhow!(e))?;
    let cfg = BenchConfig {
        alg: args.alg.clone(),
        n: args.n,
        m: args.m,
        trials: args.trials,
        seed: args.seed,
        daemon: args.daemon,
        read_model: read_model(&args.read_model, args.lag, false)?,
        colour_cap: args.cap,
    };
    let rows = run_trials(&cfg)?;
    let mut text = String::from(CSV_HEADER);
    text.push('\n');
    for row in &rows {
        text.push_str(&row.csv());
        text.push('\n');
    }
    if args.json {
        println!("{}", serde_json::to_string_pretty(&rows)?);
    } else if let Some(path) = &args.out {
        fs::write(path, &text)?;
        let (mean_moves, mean_wall) = aggregate(&rows);
        println!(
            "{} trials written to {}; mean moves {:.2}, mean wall {:.3} ms",
            rows.len(),
            path.display(),
            mean_moves,
            mean_wall
        );
    } else {
        print!("{text}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_gen(args: &GenArgs) -> Result<ExitCode> {
    let g = Graph::random(args.n, args.m, args.seed)?;
    fs::write(&args.out, g.to_edge_list())?;
    println!(
        "wrote {} ({} nodes, {} edges)",
        args.out.display(),
        g.node_count(),
        g.edge_count()
    );
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Gen(args) => cmd_gen(args),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
