//! Bounded edge-connectivity: sparse certificates from edge-disjoint
//! spanning forests, and unit-capacity minimum cuts capped at `s + 1`
//! augmenting paths.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{DisjointSets, EdgeId, MultiGraph, VertexId};
use crate::powercut::Cut;

/// Edge-disjoint maximal spanning forests peeled off greedily in edge-id
/// order, plus the edges left over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestStack {
    pub forests: Vec<Vec<EdgeId>>,
    pub outside: Vec<EdgeId>,
}

pub fn spanning_forests(g: &MultiGraph, s: usize) -> ForestStack {
    let mut remaining = g.edge_list();
    let mut forests = Vec::with_capacity(s);
    for _ in 0..s {
        let mut dsu = DisjointSets::new(g.vertex_space());
        let mut forest = Vec::new();
        remaining.retain(|&e| {
            let (a, b) = g.endpoints(e);
            if dsu.union(a.index(), b.index()) {
                forest.push(e);
                false
            } else {
                true
            }
        });
        forests.push(forest);
    }
    ForestStack {
        forests,
        outside: remaining,
    }
}

/// Contracts every edge outside `s` edge-disjoint maximal spanning
/// forests. The endpoints of such an edge are joined by `s + 1`
/// edge-disjoint paths, so no cut of at most `s` edges separates them.
pub fn sparsify(g: &MultiGraph, s: usize) -> MultiGraph {
    let stack = spanning_forests(g, s);
    g.contract(&stack.outside)
        .expect("forest peeling only yields live edges")
}

/// Whether the engine should sparsify: `m >= 2 s n`.
pub fn needs_sparsify(g: &MultiGraph, s: usize) -> bool {
    g.edge_count() >= 2 * s * g.vertex_count()
}

/// A minimum cut together with the residual-reachable side of the flow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinCut {
    pub cut: Cut,
    /// Representatives of `g` on the source side.
    pub source_side: Vec<VertexId>,
}

/// Minimum `X`-`Y` edge cut if its size is at most `s`, otherwise `None`.
pub fn bounded_mincut(
    g: &MultiGraph,
    xs: &[VertexId],
    ys: &[VertexId],
    s: usize,
) -> Result<Option<Cut>> {
    Ok(bounded_mincut_sides(g, xs, ys, s)?.map(|m| m.cut))
}

pub fn bounded_mincut_sides(
    g: &MultiGraph,
    xs: &[VertexId],
    ys: &[VertexId],
    s: usize,
) -> Result<Option<MinCut>> {
    if xs.is_empty() || ys.is_empty() {
        return Err(Error::InvalidParams(
            "terminal sets must be nonempty".into(),
        ));
    }
    for &v in xs.iter().chain(ys) {
        if !g.contains_vertex(v) {
            return Err(Error::UnknownVertex(v));
        }
    }
    let mut xr: Vec<VertexId> = xs.iter().map(|&v| g.resolve(v)).collect();
    let mut yr: Vec<VertexId> = ys.iter().map(|&v| g.resolve(v)).collect();
    xr.sort_unstable();
    xr.dedup();
    yr.sort_unstable();
    yr.dedup();
    if xr.iter().any(|v| yr.binary_search(v).is_ok()) {
        return Err(Error::SetsOverlap);
    }
    // Super terminals by temporary identification.
    let mut pairs: Vec<(VertexId, VertexId)> = xr[1..].iter().map(|&v| (xr[0], v)).collect();
    pairs.extend(yr[1..].iter().map(|&v| (yr[0], v)));
    let q = g.identify(&pairs)?;
    let source = q.resolve(xr[0]);
    let sink = q.resolve(yr[0]);

    let mut flow = vec![0i8; q.edge_space()];
    let mut parent: Vec<Option<EdgeId>> = vec![None; q.vertex_space()];
    let mut seen = vec![false; q.vertex_space()];
    let mut value = 0;
    loop {
        let reached = residual_bfs(&q, source, Some(sink), &flow, &mut seen, &mut parent);
        if !reached {
            break;
        }
        value += 1;
        if value > s {
            return Ok(None);
        }
        let mut v = sink;
        while v != source {
            let e = parent[v.index()].expect("path edge");
            let (a, _) = q.endpoints(e);
            let from = q.other_end(e, v);
            if from == a {
                flow[e.index()] += 1;
            } else {
                flow[e.index()] -= 1;
            }
            v = from;
        }
    }
    // `seen` holds the residual-reachable set of the final search.
    let cut: Vec<EdgeId> = q
        .edges()
        .filter(|&e| {
            let (a, b) = q.endpoints(e);
            seen[a.index()] != seen[b.index()]
        })
        .collect();
    debug_assert_eq!(cut.len(), value);
    let source_side = g
        .vertices()
        .iter()
        .copied()
        .filter(|&v| seen[q.resolve(v).index()])
        .collect();
    Ok(Some(MinCut {
        cut: Cut::new(cut),
        source_side,
    }))
}

fn residual_bfs(
    q: &MultiGraph,
    source: VertexId,
    sink: Option<VertexId>,
    flow: &[i8],
    seen: &mut [bool],
    parent: &mut [Option<EdgeId>],
) -> bool {
    seen.iter_mut().for_each(|x| *x = false);
    seen[source.index()] = true;
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        for &e in q.incident(v) {
            let (a, _) = q.endpoints(e);
            let f = flow[e.index()];
            let residual = if v == a { 1 - f } else { 1 + f };
            if residual <= 0 {
                continue;
            }
            let w = q.other_end(e, v);
            if seen[w.index()] {
                continue;
            }
            seen[w.index()] = true;
            parent[w.index()] = Some(e);
            if Some(w) == sink {
                return true;
            }
            queue.push_back(w);
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(u32, u32)]) -> MultiGraph {
        MultiGraph::from_edges(n, edges).unwrap()
    }

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    #[test]
    fn tree_is_one_forest() {
        let g = graph(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]);
        let st = spanning_forests(&g, 1);
        assert_eq!(st.forests[0].len(), 4);
        assert!(st.outside.is_empty());
        assert_eq!(sparsify(&g, 1).stamp(), g.stamp());
    }

    #[test]
    fn parallel_bundle_peels() {
        let g = graph(2, &[(0, 1); 5]);
        let st = spanning_forests(&g, 2);
        assert_eq!(st.forests, vec![vec![EdgeId(0)], vec![EdgeId(1)]]);
        assert_eq!(st.outside.len(), 3);
        let h = sparsify(&g, 2);
        assert_eq!(h.vertex_count(), 1);
        assert_eq!(h.edge_count(), 0);
    }

    #[test]
    fn c4_two_forests() {
        let g = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let st = spanning_forests(&g, 2);
        assert_eq!(st.forests[0].len(), 3);
        assert_eq!(st.forests[1].len(), 1);
        assert!(st.outside.is_empty());
    }

    #[test]
    fn mincut_examples() {
        let p3 = graph(3, &[(0, 1), (1, 2)]);
        let c = bounded_mincut(&p3, &[v(0)], &[v(2)], 1).unwrap().unwrap();
        assert_eq!(c, Cut::new(vec![EdgeId(0)]));

        let k4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(bounded_mincut(&k4, &[v(0)], &[v(1)], 2).unwrap(), None);
        assert_eq!(
            bounded_mincut(&k4, &[v(0)], &[v(1)], 3)
                .unwrap()
                .unwrap()
                .len(),
            3
        );

        let blobs = graph(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)]);
        let c = bounded_mincut(&blobs, &[v(0)], &[v(5)], 1)
            .unwrap()
            .unwrap();
        assert_eq!(c, Cut::new(vec![EdgeId(6)]));
    }

    #[test]
    fn overlapping_sets_rejected() {
        let g = graph(3, &[(0, 1), (1, 2)])
            .identify(&[(v(0), v(2))])
            .unwrap();
        assert_eq!(
            bounded_mincut(&g, &[v(0)], &[v(2)], 1),
            Err(Error::SetsOverlap)
        );
    }

    #[test]
    fn source_side_is_connected_and_closed() {
        let g = graph(
            6,
            &[
                (0, 1),
                (1, 2),
                (2, 0),
                (3, 4),
                (4, 5),
                (5, 3),
                (2, 3),
                (1, 4),
            ],
        );
        let m = bounded_mincut_sides(&g, &[v(0)], &[v(5)], 2)
            .unwrap()
            .unwrap();
        assert_eq!(m.cut.len(), 2);
        // the residual-reachable side is the minimum cut closest to the source
        assert_eq!(m.source_side, vec![v(0)]);
        let m = bounded_mincut_sides(&g, &[v(0), v(1), v(2)], &[v(5)], 2)
            .unwrap()
            .unwrap();
        assert_eq!(m.source_side, vec![v(0), v(1), v(2)]);
        assert_eq!(m.cut, Cut::new(vec![EdgeId(6), EdgeId(7)]));
    }

    #[test]
    fn vertex_sets_act_as_super_terminals() {
        // C6 with X = {0, 1}, Y = {3, 4}: two disjoint paths.
        let g = graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        let c = bounded_mincut(&g, &[v(0), v(1)], &[v(3), v(4)], 2)
            .unwrap()
            .unwrap();
        assert_eq!(c.len(), 2);
    }
}
