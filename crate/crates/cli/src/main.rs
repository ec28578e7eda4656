mod input;
mod solve;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kcut::io::{ResultRecord, SizeField};

use crate::solve::{Failure, Solver};

#[derive(Parser)]
#[command(
    name = "kcut",
    version,
    about = "Minimum k-way edge cuts of bounded size"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug)]
pub struct InputArgs {
    /// Graph file in `p edge` format; `-` reads standard input
    pub graph: Option<PathBuf>,
    /// Generate the instance instead: grid:WxH, gridsub:WxH,PCT, cycle:N,
    /// complete:N, random:N,M, tree:N,EXTRA, blobs:A,B
    #[arg(long, conflicts_with = "graph")]
    pub generate: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Rotation system file (`r <v> <edge ids...>` lines)
    #[arg(long)]
    pub embedding: Option<PathBuf>,
}

#[derive(Args, Clone, Debug)]
pub struct SolveArgs {
    /// Number of components required
    #[arg(long)]
    pub k: Option<usize>,
    /// Largest cut size considered; defaults to a greedy upper bound
    #[arg(long)]
    pub s: Option<usize>,
    /// Engine thresholds: paper, tight, or custom:p=..,q=..,d=..,h=..[,t=..]
    #[arg(long, default_value = "paper")]
    pub profile: String,
    /// Solve exhaustively once the enumeration count is at most this
    #[arg(long)]
    pub enum_budget: Option<u64>,
    /// Worker threads; more than one enables the parallel phases
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Exhaustive enumeration
    Oracle {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        solve: SolveArgs,
        /// Print the powercut table for these 1-based terminals instead
        #[arg(long, value_delimiter = ',')]
        terminals: Option<Vec<u32>>,
    },
    /// Recursive reduction engine
    Fpt {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        solve: SolveArgs,
        /// Print the powercut table for these 1-based terminals instead
        #[arg(long, value_delimiter = ',')]
        terminals: Option<Vec<u32>>,
    },
    /// Dynamic programming over a tree decomposition
    Dp {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        solve: SolveArgs,
        /// Decomposition file (`b`/`t` lines); min-fill heuristic otherwise
        #[arg(long)]
        decomposition: Option<PathBuf>,
    },
    /// Planar pipeline; needs an embedding
    Planar {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        solve: SolveArgs,
    },
    /// Minimum cut separating every listed pair
    Paircut {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        solve: SolveArgs,
        /// 1-based pairs, e.g. `1-4,2-3`
        #[arg(long, value_delimiter = ',', required = true)]
        pairs: Vec<String>,
        #[arg(long, default_value = "fpt")]
        solver: Solver,
    },
    /// Repeated timed runs; with --generate each run uses the next seed
    Bench {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        solve: SolveArgs,
        #[arg(long, default_value = "fpt")]
        solver: Solver,
        #[arg(long, default_value_t = 5)]
        runs: u64,
    },
    /// Run several solvers and compare sizes
    Crosscheck {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        solve: SolveArgs,
        /// Solvers to compare; defaults to every applicable one
        #[arg(long, value_delimiter = ',')]
        solver: Option<Vec<Solver>>,
    },
    /// Write a generated instance
    Generate {
        /// Same syntax as --generate
        spec: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Graph output path; standard output otherwise
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where to write the rotation system, if the generator has one
        #[arg(long)]
        embedding_out: Option<PathBuf>,
    },
}

fn emit(record: &ResultRecord) {
    println!(
        "{}",
        serde_json::to_string(record).expect("records serialise")
    );
    let size = match &record.size {
        SizeField::Size(n) => format!("size {n}"),
        SizeField::Infeasible => format!("no cut of at most {} edges", record.s),
        SizeField::Pigeonhole => format!("pigeonhole: k = {} > s + 1", record.k),
    };
    let check = if record.verified {
        "verified"
    } else {
        "FAILED verification"
    };
    eprintln!(
        "{}: {size} (k={}, s={}) in {} us, {check}",
        record.solver, record.k, record.s, record.micros
    );
}

fn exit_for(record: &ResultRecord) -> u8 {
    if !record.verified {
        return 2;
    }
    match record.size {
        SizeField::Size(_) => 0,
        SizeField::Infeasible => 3,
        SizeField::Pigeonhole => 4,
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Oracle {
            input,
            solve,
            terminals,
        } => kway_or_table(Solver::Oracle, &input, &solve, terminals),
        Command::Fpt {
            input,
            solve,
            terminals,
        } => kway_or_table(Solver::Fpt, &input, &solve, terminals),
        Command::Dp {
            input,
            solve,
            decomposition,
        } => {
            let inst = input::load(&input)?;
            let td = decomposition
                .map(|p| input::load_decomposition(&p))
                .transpose()?;
            let record = solve::kway(Solver::Dp, &inst, &solve, td.as_ref())?;
            emit(&record);
            Ok(exit_for(&record))
        }
        Command::Planar { input, solve } => {
            let inst = input::load(&input)?;
            let record = solve::kway(Solver::Planar, &inst, &solve, None)?;
            emit(&record);
            Ok(exit_for(&record))
        }
        Command::Paircut {
            input,
            solve,
            pairs,
            solver,
        } => {
            let inst = input::load(&input)?;
            let pairs = input::parse_pairs(&pairs, &inst.graph)?;
            let record = solve::paircut(solver, &inst, &pairs, &solve)?;
            emit(&record);
            Ok(exit_for(&record))
        }
        Command::Bench {
            input,
            solve,
            solver,
            runs,
        } => {
            let mut micros = Vec::new();
            let mut code = 0;
            for r in 0..runs {
                let seeded = InputArgs {
                    seed: input.seed + r,
                    ..input.clone()
                };
                let inst = input::load(&seeded)?;
                let mut record = solve::kway(solver, &inst, &solve, None)?;
                let shape = format!(
                    "n={} m={}",
                    inst.graph.vertex_count(),
                    inst.graph.edge_count()
                );
                record.note = Some(match record.note.take() {
                    Some(old) => format!("{shape} {old}"),
                    None => shape,
                });
                emit(&record);
                micros.push(record.micros);
                code = code.max(exit_for(&record));
            }
            if !micros.is_empty() {
                let mean = micros.iter().sum::<u64>() / micros.len() as u64;
                eprintln!(
                    "bench: {} runs, mean {mean} us, min {} us, max {} us",
                    micros.len(),
                    micros.iter().min().unwrap(),
                    micros.iter().max().unwrap()
                );
            }
            Ok(code)
        }
        Command::Crosscheck {
            input,
            solve,
            solver,
        } => {
            let inst = input::load(&input)?;
            let solvers = solver.unwrap_or_else(|| {
                let mut all = vec![Solver::Oracle, Solver::Fpt, Solver::Dp];
                if inst.embedding.is_some() && inst.graph.is_connected() {
                    all.push(Solver::Planar);
                }
                all
            });
            if solvers.len() < 2 {
                return Err(Failure::Input(
                    "crosscheck needs at least two solvers".into(),
                ));
            }
            let mut records = Vec::new();
            for sv in solvers {
                let record = solve::kway(sv, &inst, &solve, None)?;
                emit(&record);
                records.push(record);
            }
            let sizes: Vec<Option<usize>> = records
                .iter()
                .map(|r| match r.size {
                    SizeField::Size(n) => Some(n),
                    _ => None,
                })
                .collect();
            if sizes.iter().any(|x| *x != sizes[0]) {
                let listing: Vec<String> = records
                    .iter()
                    .zip(&sizes)
                    .map(|(r, x)| format!("{}={x:?}", r.solver))
                    .collect();
                return Err(Failure::Internal(format!(
                    "solvers disagree: {}",
                    listing.join(", ")
                )));
            }
            eprintln!("crosscheck: {} solvers agree", records.len());
            Ok(records.iter().map(exit_for).max().unwrap_or(0))
        }
        Command::Generate {
            spec,
            seed,
            out,
            embedding_out,
        } => {
            input::write_generated(&spec, seed, out.as_deref(), embedding_out.as_deref())?;
            Ok(0)
        }
    }
}

fn kway_or_table(
    solver: Solver,
    input: &InputArgs,
    solve: &SolveArgs,
    terminals: Option<Vec<u32>>,
) -> Result<u8, Failure> {
    let inst = input::load(input)?;
    match terminals {
        Some(ts) => {
            let ts = input::parse_terminals(&ts, &inst.graph)?;
            for record in solve::table(solver, &inst, &ts, solve)? {
                println!(
                    "{}",
                    serde_json::to_string(&record).expect("records serialise")
                );
            }
            Ok(0)
        }
        None => {
            let record = solve::kway(solver, &inst, solve, None)?;
            emit(&record);
            Ok(exit_for(&record))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}
