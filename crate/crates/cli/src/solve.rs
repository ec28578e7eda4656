use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use kcut::fpt::{
    constants_from, kway_cut_with, ConstantsProfile, EngineConfig, EngineStats, Overrides,
    ProfileMode,
};
use kcut::io::{kway_cut_disconnected, ProblemInstance, ResultRecord, SizeField};
use kcut::planar::{greedy_upper_bound, planar_kway_cut};
use kcut::powercut::{
    best_pair_cut, exhaustive_powercut, min_kway_exhaustive, powercut_edge_bound, PowercutTable,
};
use kcut::treewidth::{dp_kway_cut, heuristic_tree_decomposition, TreeDecomposition};
use kcut::{Cut, Error, MultiGraph, VertexId};
use serde::Serialize;

use crate::SolveArgs;

#[derive(Debug)]
pub enum Failure {
    Input(String),
    Internal(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Internal(_) => 2,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) => write!(f, "{m}"),
            Failure::Internal(m) => write!(f, "internal: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) => Failure::Internal(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Solver {
    Oracle,
    Fpt,
    Dp,
    Planar,
}

impl Solver {
    fn name(self) -> &'static str {
        match self {
            Solver::Oracle => "oracle",
            Solver::Fpt => "fpt",
            Solver::Dp => "dp",
            Solver::Planar => "planar",
        }
    }
}

impl FromStr for Solver {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "oracle" => Ok(Solver::Oracle),
            "fpt" => Ok(Solver::Fpt),
            "dp" => Ok(Solver::Dp),
            "planar" => Ok(Solver::Planar),
            _ => Err(format!("unknown solver {s:?} (oracle, fpt, dp, planar)")),
        }
    }
}

pub fn init_threads(jobs: usize) -> Result<(), Failure> {
    if jobs == 0 {
        return Err(Failure::Input("--jobs must be at least 1".into()));
    }
    // a second call finds the pool already built, which is fine
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build_global();
    Ok(())
}

fn parse_custom(spec: &str, s: usize, terminal_count: usize) -> Result<ConstantsProfile, Failure> {
    let bad = |m: String| Failure::Input(format!("profile {spec:?}: {m}"));
    let (mut t, mut p, mut q, mut d, mut h) = (None, None, None, None, None);
    for field in spec.split(',') {
        let (name, value) = field
            .split_once('=')
            .ok_or_else(|| bad(format!("expected name=value, got {field:?}")))?;
        let value: u64 = value
            .parse()
            .map_err(|_| bad(format!("bad number {value:?}")))?;
        match name {
            "t" => t = Some(value as usize),
            "p" => p = Some(value),
            "q" => q = Some(value),
            "d" => d = Some(value),
            "h" => h = Some(value),
            _ => return Err(bad(format!("unknown field {name:?}"))),
        }
    }
    let need = |x: Option<u64>, n: &str| x.ok_or_else(|| bad(format!("missing {n}")));
    let cap = t.unwrap_or((2 * s).max(terminal_count));
    let overrides = Overrides {
        t,
        p: need(p, "p")?,
        q: need(q, "q")?,
        d: need(d, "d")?,
        h: need(h, "h")?,
        p_bound: powercut_edge_bound(s, cap),
    };
    Ok(constants_from(
        s,
        terminal_count,
        ProfileMode::Custom,
        Some(overrides),
    )?)
}

fn engine_config(
    args: &SolveArgs,
    s: usize,
    terminal_count: usize,
) -> Result<EngineConfig, Failure> {
    let profile = match args.profile.as_str() {
        "paper" => ConstantsProfile::paper(s, terminal_count)?,
        "tight" => ConstantsProfile::tight(s, terminal_count)?,
        other => match other.strip_prefix("custom:") {
            Some(spec) => parse_custom(spec, s, terminal_count)?,
            None => return Err(Failure::Input(format!("unknown profile {other:?}"))),
        },
    };
    let mut config = EngineConfig::new(profile);
    if let Some(b) = args.enum_budget {
        config = config.with_budget(b);
    }
    config.parallel = args.jobs > 1;
    Ok(config)
}

fn profile_label(args: &SolveArgs) -> String {
    match args.profile.split_once(':') {
        Some((mode, _)) => mode.to_string(),
        None => args.profile.clone(),
    }
}

fn size_of(cut: Option<&Cut>, k: usize, s: usize) -> SizeField {
    match cut {
        Some(c) => SizeField::Size(c.len()),
        None if k > s + 1 => SizeField::Pigeonhole,
        None => SizeField::Infeasible,
    }
}

fn check(record: ResultRecord) -> Result<ResultRecord, Failure> {
    if !record.verified {
        return Err(Failure::Internal(format!(
            "{} reported a cut that fails verification",
            record.solver
        )));
    }
    Ok(record)
}

/// Default bound: the greedy cut, or every edge when `k` exceeds `n`.
fn bound_for(g: &MultiGraph, k: usize) -> Result<usize, Failure> {
    if k > g.vertex_count() {
        return Ok(g.edge_count());
    }
    Ok(greedy_upper_bound(g, k)?.0)
}

pub fn kway(
    solver: Solver,
    inst: &ProblemInstance,
    args: &SolveArgs,
    td: Option<&TreeDecomposition>,
) -> Result<ResultRecord, Failure> {
    init_threads(args.jobs)?;
    let g = &inst.graph;
    let k = args
        .k
        .ok_or_else(|| Failure::Input("--k is required".into()))?;
    if k == 0 {
        return Err(Failure::Input("--k must be at least 1".into()));
    }
    let start = Instant::now();
    let mut note = None;
    let mut profile = None;
    let (s, cut) = match solver {
        Solver::Planar => {
            let rot = inst
                .embedding
                .as_ref()
                .ok_or_else(|| Failure::Input("planar needs an embedding".into()))?;
            let out = planar_kway_cut(g, rot, k, args.s, args.jobs > 1)?;
            let wide = out.wide_classes();
            if !wide.is_empty() {
                note = Some(format!("classes {wide:?} exceed width 6q = {}", 6 * out.q));
            }
            (out.s, out.cut)
        }
        Solver::Oracle => {
            let s = args.s.map_or_else(|| bound_for(g, k), Ok)?;
            (
                s,
                kway_cut_disconnected(g, k, s, |c, j, s| Ok(min_kway_exhaustive(c, j, s)))?,
            )
        }
        Solver::Dp => {
            let s = args.s.map_or_else(|| bound_for(g, k), Ok)?;
            let cut = match td {
                Some(td) => {
                    if !g.is_connected() {
                        return Err(Failure::Input(
                            "a decomposition file needs a connected graph".into(),
                        ));
                    }
                    dp_kway_cut(g, k, s, td)?
                }
                None => kway_cut_disconnected(g, k, s, |c, j, s| {
                    dp_kway_cut(c, j, s, &heuristic_tree_decomposition(c))
                })?,
            };
            (s, cut)
        }
        Solver::Fpt => {
            let s = args.s.map_or_else(|| bound_for(g, k), Ok)?;
            let mut stats: Vec<EngineStats> = Vec::new();
            if s > 0 {
                engine_config(args, s, 0)?;
            }
            let cut = kway_cut_disconnected(g, k, s, |c, j, s| {
                let (outcome, st) = kway_cut_with(c, j, s, |s| {
                    engine_config(args, s, 0).map_err(|f| Error::InvalidParams(f.to_string()))
                })?;
                stats.push(st);
                Ok(outcome.cut().cloned())
            })?;
            profile = Some(profile_label(args));
            if !stats.is_empty() {
                note = Some(serde_json::to_string(&stats).expect("stats serialise"));
            }
            (s, cut)
        }
    };
    let micros = start.elapsed().as_micros() as u64;
    let size = size_of(cut.as_ref(), k, s);
    let mut record = ResultRecord::new(solver.name(), g, k, s, size, cut.as_ref(), micros);
    record.profile = profile;
    record.note = note;
    check(record)
}

pub fn paircut(
    solver: Solver,
    inst: &ProblemInstance,
    pairs: &[(VertexId, VertexId)],
    args: &SolveArgs,
) -> Result<ResultRecord, Failure> {
    init_threads(args.jobs)?;
    let g = &inst.graph;
    if let Some(&(a, _)) = pairs.iter().find(|(a, b)| a == b) {
        return Err(Failure::Input(format!(
            "pair joins vertex {} to itself",
            a.0 + 1
        )));
    }
    let s = args.s.unwrap_or(g.edge_count());
    let mut terminals: Vec<VertexId> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    terminals.sort();
    terminals.dedup();
    let start = Instant::now();
    let table = table_for(solver, g, &terminals, s, args)?;
    let cut = best_pair_cut(&table, pairs);
    let micros = start.elapsed().as_micros() as u64;
    if let Some(c) = &cut {
        let labels = g.components(c.edges())?;
        if let Some((a, b)) = pairs.iter().find(|&&(a, b)| labels.same(a, b)) {
            return Err(Failure::Internal(format!(
                "pair cut leaves {} and {} together",
                a.0 + 1,
                b.0 + 1
            )));
        }
    }
    let size = match &cut {
        Some(c) => SizeField::Size(c.len()),
        None => SizeField::Infeasible,
    };
    let mut record = ResultRecord::new(solver.name(), g, 2, s, size, cut.as_ref(), micros);
    if solver == Solver::Fpt {
        record.profile = Some(profile_label(args));
    }
    check(record)
}

fn table_for(
    solver: Solver,
    g: &MultiGraph,
    terminals: &[VertexId],
    s: usize,
    args: &SolveArgs,
) -> Result<PowercutTable, Failure> {
    match solver {
        Solver::Oracle => Ok(exhaustive_powercut(g, terminals, s)?),
        Solver::Fpt => {
            let config = engine_config(args, s, terminals.len())?;
            Ok(kcut::fpt::fpt_powercut_with(g, terminals, &config)?.0)
        }
        other => Err(Failure::Input(format!(
            "{} does not compute powercut tables",
            other.name()
        ))),
    }
}

/// One powercut table entry, vertices 1-based.
#[derive(Serialize)]
pub struct TableRecord {
    solver: &'static str,
    j: usize,
    blocks: Vec<Vec<u32>>,
    size: Option<usize>,
    edges: Vec<u32>,
}

pub fn table(
    solver: Solver,
    inst: &ProblemInstance,
    terminals: &[VertexId],
    args: &SolveArgs,
) -> Result<Vec<TableRecord>, Failure> {
    init_threads(args.jobs)?;
    let s = args
        .s
        .ok_or_else(|| Failure::Input("--s is required for a powercut table".into()))?;
    let table = table_for(solver, &inst.graph, terminals, s, args)?;
    Ok(table
        .iter()
        .map(|(key, cut)| TableRecord {
            solver: solver.name(),
            j: key.j(),
            blocks: key
                .blocks()
                .iter()
                .map(|b| b.iter().map(|v| v.0 + 1).collect())
                .collect(),
            size: cut.map(Cut::len),
            edges: cut
                .map(|c| c.edges().iter().map(|e| e.0).collect())
                .unwrap_or_default(),
        })
        .collect())
}
