use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph, VertexId};

/// An edge end: `2 e + end`, where end 0 sits at the first original
/// endpoint of `e` and end 1 at the second.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart(pub u32);

impl Dart {
    pub fn new(e: EdgeId, end: u32) -> Self {
        Dart(2 * e.0 + end)
    }

    pub fn edge(self) -> EdgeId {
        EdgeId(self.0 / 2)
    }

    pub fn end(self) -> u32 {
        self.0 & 1
    }

    pub fn rev(self) -> Self {
        Dart(self.0 ^ 1)
    }
}

/// Clockwise order of edge ends around each vertex of the original graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationSystem {
    order: Vec<Vec<Dart>>,
}

impl RotationSystem {
    /// Builds a rotation from per-vertex clockwise edge lists. Every edge of
    /// `g` must appear exactly once around each of its endpoints.
    pub fn new(g: &MultiGraph, lists: &[(VertexId, Vec<EdgeId>)]) -> Result<Self> {
        let n = g.vertex_space();
        let mut order = vec![Vec::new(); n];
        let mut seen: BTreeSet<Dart> = BTreeSet::new();
        for (v, edges) in lists {
            if v.index() >= n {
                return Err(Error::UnknownVertex(*v));
            }
            if !order[v.index()].is_empty() {
                return Err(Error::InvalidEmbedding(format!("vertex {v} listed twice")));
            }
            for &e in edges {
                if e.index() >= g.edge_space() {
                    return Err(Error::UnknownEdge(e));
                }
                let (a, b) = g.original_endpoints(e);
                let end = if a == *v {
                    0
                } else if b == *v {
                    1
                } else {
                    return Err(Error::InvalidEmbedding(format!(
                        "edge {e} does not touch {v}"
                    )));
                };
                let d = Dart::new(e, end);
                if !seen.insert(d) {
                    return Err(Error::InvalidEmbedding(format!("edge {e} repeated at {v}")));
                }
                order[v.index()].push(d);
            }
        }
        for e in g.edges() {
            for end in 0..2 {
                if !seen.contains(&Dart::new(e, end)) {
                    return Err(Error::InvalidEmbedding(format!(
                        "edge {e} missing at one end"
                    )));
                }
            }
        }
        Ok(RotationSystem { order })
    }

    /// Clockwise edge list of `v`.
    pub fn around(&self, v: VertexId) -> Vec<EdgeId> {
        self.order[v.index()].iter().map(|d| d.edge()).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.order.len()
    }

    /// Per-vertex position of each dart in its rotation, restricted to the
    /// live edges of `g`.
    fn successor(&self, g: &MultiGraph) -> Vec<Dart> {
        let mut succ = vec![Dart(u32::MAX); 2 * g.edge_space()];
        for list in &self.order {
            let live: Vec<Dart> = list
                .iter()
                .copied()
                .filter(|d| g.is_live(d.edge()))
                .collect();
            for (i, &d) in live.iter().enumerate() {
                succ[d.0 as usize] = live[(i + 1) % live.len()];
            }
        }
        succ
    }
}

/// Faces as dart cycles, traced with `next(d) = succ(rev(d))` over the
/// live edges of `g`. Requires `g` connected and checks Euler's formula.
/// Vertices of `g` must be unmerged.
pub fn faces_from_rotation(g: &MultiGraph, rot: &RotationSystem) -> Result<Vec<Vec<Dart>>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if rot.vertex_count() != g.vertex_space() {
        return Err(Error::InvalidEmbedding(
            "rotation is for another graph".into(),
        ));
    }
    let succ = rot.successor(g);
    let mut visited = vec![false; 2 * g.edge_space()];
    let mut faces = Vec::new();
    for e in g.edges() {
        for end in 0..2 {
            let start = Dart::new(e, end);
            if visited[start.0 as usize] {
                continue;
            }
            let mut face = Vec::new();
            let mut d = start;
            while !visited[d.0 as usize] {
                visited[d.0 as usize] = true;
                face.push(d);
                d = succ[d.rev().0 as usize];
            }
            if d != start {
                return Err(Error::InvalidEmbedding(
                    "face traversal did not close".into(),
                ));
            }
            faces.push(face);
        }
    }
    let (n, m) = (g.vertex_count() as i64, g.edge_count() as i64);
    let f = if m == 0 { 1 } else { faces.len() as i64 };
    if n - m + f != 2 {
        return Err(Error::InvalidEmbedding(format!(
            "Euler check fails: {n} - {m} + {f} != 2"
        )));
    }
    Ok(faces)
}

/// Parses `r <v> <e1> <e2> ...` lines (vertices 1-based, edge ids
/// 0-based, clockwise); `c` lines are comments.
pub fn parse_embedding(g: &MultiGraph, text: &str) -> Result<RotationSystem> {
    let mut lists = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut toks = raw.split_whitespace();
        match toks.next() {
            None | Some("c") => {}
            Some("r") => {
                let v: u32 = toks
                    .next()
                    .and_then(|t| t.parse().ok())
                    .filter(|&v| v >= 1)
                    .ok_or_else(|| Error::parse(line, "expected a 1-based vertex"))?;
                let edges = toks
                    .map(|t| {
                        t.parse::<u32>()
                            .map(EdgeId)
                            .map_err(|_| Error::parse(line, format!("bad edge id {t:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                lists.push((VertexId(v - 1), edges));
            }
            Some(other) => return Err(Error::parse(line, format!("unknown line type {other:?}"))),
        }
    }
    RotationSystem::new(g, &lists)
}

pub fn serialize_embedding(rot: &RotationSystem) -> String {
    let mut out = String::new();
    for (v, list) in rot.order.iter().enumerate() {
        if list.is_empty() {
            continue;
        }
        out.push_str(&format!("r {}", v + 1));
        for d in list {
            out.push_str(&format!(" {}", d.edge().0));
        }
        out.push('\n');
    }
    out
}
