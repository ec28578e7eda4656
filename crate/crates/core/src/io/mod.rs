//! Text formats, instance generators, result records, and k-way cuts of
//! disconnected graphs.

pub mod generate;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{MultiGraph, VertexId};
use crate::planar::RotationSystem;
use crate::powercut::{verify_cut, Cut};

pub use generate::{generate, GeneratorKind};

#[derive(Clone, Debug)]
pub struct ProblemInstance {
    pub graph: MultiGraph,
    pub embedding: Option<RotationSystem>,
    pub terminals: Vec<VertexId>,
    pub pairs: Vec<(VertexId, VertexId)>,
    pub k: Option<usize>,
    pub s: Option<usize>,
}

impl ProblemInstance {
    pub fn new(graph: MultiGraph) -> Self {
        ProblemInstance {
            graph,
            embedding: None,
            terminals: Vec::new(),
            pairs: Vec::new(),
            k: None,
            s: None,
        }
    }
}

/// Reads `p edge <n> <m>` followed by `m` lines `e <u> <v>` (1-based).
/// Edge ids follow file order; repeated lines give parallel edges.
pub fn parse_graph(text: &str) -> Result<MultiGraph> {
    let mut graph: Option<(MultiGraph, usize)> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        match toks.first().copied() {
            None | Some("c") => {}
            Some("p") => {
                if graph.is_some() {
                    return Err(Error::parse(line, "second header"));
                }
                let [_, "edge", n, m] = toks[..] else {
                    return Err(Error::parse(line, "expected `p edge <n> <m>`"));
                };
                let n: usize = n
                    .parse()
                    .map_err(|_| Error::parse(line, "bad vertex count"))?;
                let m: usize = m
                    .parse()
                    .map_err(|_| Error::parse(line, "bad edge count"))?;
                graph = Some((MultiGraph::new(n), m));
            }
            Some("e") => {
                let Some((g, _)) = graph.as_mut() else {
                    return Err(Error::parse(line, "edge before header"));
                };
                let [_, u, v] = toks[..] else {
                    return Err(Error::parse(line, "expected `e <u> <v>`"));
                };
                let n = g.vertex_space();
                let vertex = |tok: &str| -> Result<VertexId> {
                    match tok.parse::<usize>() {
                        Ok(x) if (1..=n).contains(&x) => Ok(VertexId(x as u32 - 1)),
                        _ => Err(Error::parse(
                            line,
                            format!("vertex {tok:?} out of range 1..={n}"),
                        )),
                    }
                };
                let (u, v) = (vertex(u)?, vertex(v)?);
                if u == v {
                    return Err(Error::parse(
                        line,
                        format!("self-loop at vertex {}", u.0 + 1),
                    ));
                }
                g.add_edge(u, v)?;
            }
            Some(other) => return Err(Error::parse(line, format!("unknown line type {other:?}"))),
        }
    }
    let (g, m) = graph.ok_or_else(|| Error::parse(1, "missing `p edge` header"))?;
    if g.edge_space() != m {
        return Err(Error::parse(
            text.lines().count().max(1),
            format!("header promises {m} edges, found {}", g.edge_space()),
        ));
    }
    Ok(g)
}

/// Writes the original edge list of `g` in id order.
pub fn serialize_graph(g: &MultiGraph) -> String {
    let mut out = format!("p edge {} {}\n", g.vertex_space(), g.edge_space());
    for i in 0..g.edge_space() {
        let (a, b) = g.original_endpoints(crate::EdgeId(i as u32));
        out.push_str(&format!("e {} {}\n", a.0 + 1, b.0 + 1));
    }
    out
}

/// Minimum k-way cut of a possibly disconnected graph. `solve(c, j, s)`
/// must return the minimum cut of at most `s` edges leaving at least `j`
/// components of the connected graph `c`. Per-component answers for
/// `j <= min(s + 1, k)` are combined by a knapsack over the components.
pub fn kway_cut_disconnected(
    g: &MultiGraph,
    k: usize,
    s: usize,
    mut solve: impl FnMut(&MultiGraph, usize, usize) -> Result<Option<Cut>>,
) -> Result<Option<Cut>> {
    if k == 0 {
        return Err(Error::InvalidParams("k must be at least 1".into()));
    }
    let labels = g.components(&[])?;
    let c = labels.count();
    if c == 1 {
        return solve(g, k, s);
    }
    if c >= k {
        return Ok(Some(Cut::empty()));
    }
    let mut parts: Vec<(Vec<crate::EdgeId>, VertexId)> = Vec::new();
    let mut index = vec![usize::MAX; c];
    for &v in g.vertices() {
        let l = labels.label_of(v).unwrap() as usize;
        if index[l] == usize::MAX {
            index[l] = parts.len();
            parts.push((Vec::new(), v));
        }
    }
    for e in g.edges() {
        let (a, _) = g.endpoints(e);
        parts[index[labels.label_of(a).unwrap() as usize]].0.push(e);
    }
    // best[x] is the smallest combined cut giving x components, capped at k
    let mut best: Vec<Option<Cut>> = vec![None; k + 1];
    best[0] = Some(Cut::empty());
    for (edges, anchor) in parts {
        let comp = g.edge_subgraph(&edges, Some(anchor))?;
        let mut options = vec![(1, Cut::empty())];
        for j in 2..=(s + 1).min(k).min(comp.vertex_count()) {
            if let Some(cut) = solve(&comp, j, s)? {
                options.push((j, cut));
            }
        }
        let mut next: Vec<Option<Cut>> = vec![None; k + 1];
        for (x, acc) in best.iter().enumerate() {
            let Some(acc) = acc else { continue };
            for (j, cut) in &options {
                if acc.len() + cut.len() > s {
                    continue;
                }
                let y = (x + j).min(k);
                let merged = acc.union(cut);
                if next[y].as_ref().is_none_or(|old| merged < *old) {
                    next[y] = Some(merged);
                }
            }
        }
        best = next;
    }
    Ok(best[k].take())
}

/// The reported size: a number, or why there is none.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SizeField {
    Size(usize),
    Infeasible,
    Pigeonhole,
}

impl Serialize for SizeField {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SizeField::Size(n) => ser.serialize_u64(*n as u64),
            SizeField::Infeasible => ser.serialize_str("infeasible(>s)"),
            SizeField::Pigeonhole => ser.serialize_str("pigeonhole"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ResultRecord {
    pub solver: String,
    pub k: usize,
    pub s: usize,
    pub size: SizeField,
    pub edges: Vec<u32>,
    pub micros: u64,
    /// Verdict of an independent [`verify_cut`] run; `true` when no cut
    /// is reported.
    pub verified: bool,
    pub profile: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ResultRecord {
    pub fn new(
        solver: &str,
        g: &MultiGraph,
        k: usize,
        s: usize,
        size: SizeField,
        cut: Option<&Cut>,
        micros: u64,
    ) -> Self {
        let verified = cut.is_none_or(|c| verify_cut(g, c, k, s).ok);
        ResultRecord {
            solver: solver.to_string(),
            k,
            s,
            size,
            edges: cut
                .map(|c| c.edges().iter().map(|e| e.0).collect())
                .unwrap_or_default(),
            micros,
            verified,
            profile: None,
            note: None,
        }
    }
}
