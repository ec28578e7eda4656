//! Planar k-way cuts by contraction decomposition: edges are split into
//! `q = s + 1` classes by dual BFS depth, and a cut of at most `s` edges
//! avoids some class, so it survives contracting that class. Each
//! contracted graph is solved by the tree-decomposition DP.

pub mod rotation;

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph, VertexId};
use crate::powercut::Cut;
use crate::treewidth::{dp_kway_cut, heuristic_tree_decomposition};

pub use rotation::{
    faces_from_rotation, parse_embedding, serialize_embedding, Dart, RotationSystem,
};

/// Faces with one dual edge per primal edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    pub faces: Vec<Vec<Dart>>,
    /// `edge_faces[e]` holds the faces on the two sides of edge `e`;
    /// `None` for edges not in the graph.
    pub edge_faces: Vec<Option<(usize, usize)>>,
}

impl DualGraph {
    pub fn face_count(&self) -> usize {
        self.faces.len()
    }
}

pub fn dual_graph(g: &MultiGraph, rot: &RotationSystem) -> Result<DualGraph> {
    let faces = faces_from_rotation(g, rot)?;
    let mut face_of = vec![usize::MAX; 2 * g.edge_space()];
    for (f, darts) in faces.iter().enumerate() {
        for d in darts {
            face_of[d.0 as usize] = f;
        }
    }
    let mut edge_faces = vec![None; g.edge_space()];
    for e in g.edges() {
        edge_faces[e.index()] = Some((
            face_of[Dart::new(e, 0).0 as usize],
            face_of[Dart::new(e, 1).0 as usize],
        ));
    }
    Ok(DualGraph { faces, edge_faces })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeLevelPartition {
    pub q: usize,
    /// `(edge, level)` for every edge, in edge order.
    pub levels: Vec<(EdgeId, usize)>,
    /// `classes[i]` holds the edges with level congruent to `i` mod `q`.
    pub classes: Vec<Vec<EdgeId>>,
}

/// Splits the edges into `q` classes by `level(e) = max` of the dual BFS
/// depths of the two faces of `e`, rooted at the face of the lowest edge
/// end.
pub fn klein_partition(
    g: &MultiGraph,
    rot: &RotationSystem,
    q: usize,
) -> Result<EdgeLevelPartition> {
    if q == 0 {
        return Err(Error::InvalidParams("q must be at least 1".into()));
    }
    let dual = dual_graph(g, rot)?;
    let mut classes = vec![Vec::new(); q];
    let Some(first) = g.edges().next() else {
        return Ok(EdgeLevelPartition {
            q,
            levels: Vec::new(),
            classes,
        });
    };
    let mut adj = vec![Vec::new(); dual.face_count()];
    for e in g.edges() {
        let (f1, f2) = dual.edge_faces[e.index()].unwrap();
        adj[f1].push(f2);
        adj[f2].push(f1);
    }
    let root = dual.edge_faces[first.index()].unwrap().0;
    let mut depth = vec![usize::MAX; dual.face_count()];
    depth[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(f) = queue.pop_front() {
        for &h in &adj[f] {
            if depth[h] == usize::MAX {
                depth[h] = depth[f] + 1;
                queue.push_back(h);
            }
        }
    }
    let mut levels = Vec::with_capacity(g.edge_count());
    for e in g.edges() {
        let (f1, f2) = dual.edge_faces[e.index()].unwrap();
        let level = depth[f1].max(depth[f2]);
        levels.push((e, level));
        classes[level % q].push(e);
    }
    Ok(EdgeLevelPartition { q, levels, classes })
}

/// Removes all edges at a vertex of smallest remaining degree, `k - 1`
/// times. Each step isolates one more vertex, so the cut leaves at least
/// `k` components.
pub fn greedy_upper_bound(g: &MultiGraph, k: usize) -> Result<(usize, Cut)> {
    if k == 0 {
        return Err(Error::InvalidParams("k must be at least 1".into()));
    }
    if k > g.vertex_count() {
        return Err(Error::InvalidParams(format!(
            "k = {k} exceeds the {} vertices",
            g.vertex_count()
        )));
    }
    let mut removed = vec![false; g.vertex_space()];
    let mut cut = Vec::new();
    for _ in 1..k {
        let degree = |v: VertexId| {
            g.incident(v)
                .iter()
                .filter(|&&e| !removed[g.other_end(e, v).index()])
                .count()
        };
        let v = g
            .vertices()
            .iter()
            .copied()
            .filter(|v| !removed[v.index()])
            .min_by_key(|&v| (degree(v), v))
            .expect("fewer than k vertices removed");
        cut.extend(
            g.incident(v)
                .iter()
                .copied()
                .filter(|&e| !removed[g.other_end(e, v).index()]),
        );
        removed[v.index()] = true;
    }
    let cut = Cut::new(cut);
    Ok((cut.len(), cut))
}

pub fn is_simple(g: &MultiGraph) -> bool {
    g.vertices()
        .iter()
        .all(|&v| g.neighbor_count(v) == g.degree(v))
}

/// Per-class report of the contracted graph's decomposition width.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub class: usize,
    pub contracted_edges: usize,
    pub width: usize,
    pub cut_size: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlanarOutcome {
    pub cut: Option<Cut>,
    pub s: usize,
    pub q: usize,
    pub classes: Vec<ClassReport>,
}

impl PlanarOutcome {
    /// Classes whose width exceeds `6 q`.
    pub fn wide_classes(&self) -> Vec<usize> {
        self.classes
            .iter()
            .filter(|c| c.width > 6 * self.q)
            .map(|c| c.class)
            .collect()
    }
}

/// The default bound: `5(k-1)` on simple graphs, the greedy bound otherwise.
pub fn default_bound(g: &MultiGraph, k: usize) -> Result<usize> {
    if is_simple(g) {
        Ok(5 * k.saturating_sub(1))
    } else {
        Ok(greedy_upper_bound(g, k)?.0)
    }
}

pub fn planar_kway_cut(
    g: &MultiGraph,
    rot: &RotationSystem,
    k: usize,
    s: Option<usize>,
    parallel: bool,
) -> Result<PlanarOutcome> {
    if k == 0 {
        return Err(Error::InvalidParams("k must be at least 1".into()));
    }
    let s = match s {
        Some(s) => s,
        None => default_bound(g, k)?,
    };
    let q = s + 1;
    let partition = klein_partition(g, rot, q)?;
    let solve = |(i, class): (usize, &Vec<EdgeId>)| -> Result<(ClassReport, Option<Cut>)> {
        let h = g.contract(class)?;
        let td = heuristic_tree_decomposition(&h);
        let cut = dp_kway_cut(&h, k, s, &td)?;
        Ok((
            ClassReport {
                class: i,
                contracted_edges: class.len(),
                width: td.width(),
                cut_size: cut.as_ref().map(Cut::len),
            },
            cut,
        ))
    };
    let results: Vec<(ClassReport, Option<Cut>)> = if parallel {
        partition
            .classes
            .par_iter()
            .enumerate()
            .map(solve)
            .collect::<Result<_>>()?
    } else {
        partition
            .classes
            .iter()
            .enumerate()
            .map(solve)
            .collect::<Result<_>>()?
    };
    let cut = results.iter().filter_map(|(_, c)| c.clone()).min();
    Ok(PlanarOutcome {
        cut,
        s,
        q,
        classes: results.into_iter().map(|(r, _)| r).collect(),
    })
}
