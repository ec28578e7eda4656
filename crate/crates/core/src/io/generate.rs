use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph, VertexId};
use crate::io::ProblemInstance;
use crate::planar::RotationSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    Grid {
        w: usize,
        h: usize,
    },
    Cycle {
        n: usize,
    },
    Complete {
        n: usize,
    },
    RandomConnected {
        n: usize,
        m: usize,
    },
    TreePlusEdges {
        n: usize,
        extra: usize,
    },
    TwoBlobsBridged {
        a: usize,
        b: usize,
    },
    /// A random edge subset of a `w x h` grid, each edge kept with
    /// probability `keep_percent / 100`.
    GridSubgraph {
        w: usize,
        h: usize,
        keep_percent: u32,
    },
}

/// Window from which a tree-plus-edges vertex draws its parent, and the
/// farthest reach of an extra edge. Both keep the instances long and thin.
const TREE_WINDOW: usize = 4;
const CHORD_REACH: usize = 9;

pub fn generate(kind: GeneratorKind, seed: u64) -> Result<ProblemInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match kind {
        GeneratorKind::Grid { w, h } => grid(w, h, 100, &mut rng),
        GeneratorKind::GridSubgraph { w, h, keep_percent } => {
            grid(w, h, keep_percent.min(100), &mut rng)
        }
        GeneratorKind::Cycle { n } => cycle(n),
        GeneratorKind::Complete { n } => {
            let mut edges = Vec::new();
            for a in 0..n as u32 {
                for b in a + 1..n as u32 {
                    edges.push((a, b));
                }
            }
            plain(n, &edges)
        }
        GeneratorKind::RandomConnected { n, m } => {
            if n == 0 || m + 1 < n || (n == 1 && m > 0) {
                return Err(Error::InvalidParams(format!(
                    "no connected loopless graph with {n} vertices and {m} edges"
                )));
            }
            let mut edges: Vec<(u32, u32)> =
                (1..n as u32).map(|i| (rng.random_range(0..i), i)).collect();
            while edges.len() < m {
                let a = rng.random_range(0..n as u32);
                let b = rng.random_range(0..n as u32);
                if a != b {
                    edges.push((a.min(b), a.max(b)));
                }
            }
            plain(n, &edges)
        }
        GeneratorKind::TreePlusEdges { n, extra } => {
            if n < 2 && extra > 0 {
                return Err(Error::InvalidParams("extra edges need two vertices".into()));
            }
            let n32 = n as u32;
            let mut edges: Vec<(u32, u32)> = (1..n32)
                .map(|i| (rng.random_range(i.saturating_sub(TREE_WINDOW as u32)..i), i))
                .collect();
            for _ in 0..extra {
                let a = rng.random_range(0..n32 - 1);
                let b = (a + rng.random_range(1..=CHORD_REACH as u32)).min(n32 - 1);
                edges.push((a, b));
            }
            plain(n, &edges)
        }
        GeneratorKind::TwoBlobsBridged { a, b } => {
            if a == 0 || b == 0 {
                return Err(Error::InvalidParams("blobs need a vertex each".into()));
            }
            let mut edges = Vec::new();
            for (off, size) in [(0, a as u32), (a as u32, b as u32)] {
                for x in 0..size {
                    for y in x + 1..size {
                        edges.push((off + x, off + y));
                    }
                }
            }
            edges.push((a as u32 - 1, a as u32));
            plain(a + b, &edges)
        }
    }
}

fn plain(n: usize, edges: &[(u32, u32)]) -> Result<ProblemInstance> {
    Ok(ProblemInstance::new(MultiGraph::from_edges(n, edges)?))
}

fn cycle(n: usize) -> Result<ProblemInstance> {
    if n < 3 {
        return Err(Error::InvalidParams(
            "a simple cycle needs 3 vertices".into(),
        ));
    }
    let n32 = n as u32;
    let edges: Vec<(u32, u32)> = (0..n32).map(|i| (i, (i + 1) % n32)).collect();
    let g = MultiGraph::from_edges(n, &edges)?;
    let lists: Vec<(VertexId, Vec<EdgeId>)> = (0..n32)
        .map(|i| (VertexId(i), vec![EdgeId(i), EdgeId((i + n32 - 1) % n32)]))
        .collect();
    let rot = RotationSystem::new(&g, &lists)?;
    let mut inst = ProblemInstance::new(g);
    inst.embedding = Some(rot);
    Ok(inst)
}

/// Row-major grid; around each vertex the order is up, right, down, left.
fn grid(w: usize, h: usize, keep_percent: u32, rng: &mut ChaCha8Rng) -> Result<ProblemInstance> {
    if w == 0 || h == 0 {
        return Err(Error::InvalidParams("grid sides must be positive".into()));
    }
    let id = |x: usize, y: usize| (y * w + x) as u32;
    let mut g = MultiGraph::new(w * h);
    // right[v], down[v]: edge leaving v in that direction
    let mut right = vec![None; w * h];
    let mut down = vec![None; w * h];
    for y in 0..h {
        for x in 0..w {
            let v = id(x, y);
            if x + 1 < w && rng.random_range(0..100) < keep_percent {
                right[v as usize] = Some(g.add_edge(VertexId(v), VertexId(id(x + 1, y)))?);
            }
            if y + 1 < h && rng.random_range(0..100) < keep_percent {
                down[v as usize] = Some(g.add_edge(VertexId(v), VertexId(id(x, y + 1)))?);
            }
        }
    }
    let mut lists = Vec::with_capacity(w * h);
    for y in 0..h {
        for x in 0..w {
            let v = id(x, y) as usize;
            let up = (y > 0).then(|| down[id(x, y - 1) as usize]).flatten();
            let left = (x > 0).then(|| right[id(x - 1, y) as usize]).flatten();
            let around: Vec<EdgeId> = [up, right[v], down[v], left]
                .into_iter()
                .flatten()
                .collect();
            lists.push((VertexId(v as u32), around));
        }
    }
    let rot = RotationSystem::new(&g, &lists)?;
    let mut inst = ProblemInstance::new(g);
    inst.embedding = Some(rot);
    Ok(inst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::serialize_graph;
    use crate::planar::faces_from_rotation;

    #[test]
    fn grid_and_cycle() {
        let g = generate(GeneratorKind::Grid { w: 3, h: 3 }, 0).unwrap();
        assert_eq!((g.graph.vertex_count(), g.graph.edge_count()), (9, 12));
        assert_eq!(
            faces_from_rotation(&g.graph, g.embedding.as_ref().unwrap())
                .unwrap()
                .len(),
            5
        );
        let c = generate(GeneratorKind::Cycle { n: 5 }, 0).unwrap();
        assert_eq!(c.graph.edge_count(), 5);
        assert_eq!(
            faces_from_rotation(&c.graph, c.embedding.as_ref().unwrap())
                .unwrap()
                .len(),
            2
        );
    }

    #[test]
    fn deterministic_under_seed() {
        for kind in [
            GeneratorKind::RandomConnected { n: 30, m: 50 },
            GeneratorKind::TreePlusEdges { n: 100, extra: 10 },
            GeneratorKind::GridSubgraph {
                w: 5,
                h: 5,
                keep_percent: 60,
            },
        ] {
            let a = serialize_graph(&generate(kind, 7).unwrap().graph);
            let b = serialize_graph(&generate(kind, 7).unwrap().graph);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn infeasible_parameters() {
        assert!(generate(GeneratorKind::RandomConnected { n: 5, m: 3 }, 0).is_err());
        assert!(generate(GeneratorKind::Cycle { n: 2 }, 0).is_err());
        assert!(generate(GeneratorKind::Grid { w: 0, h: 3 }, 0).is_err());
    }

    #[test]
    fn random_connected_is_connected() {
        let g = generate(GeneratorKind::RandomConnected { n: 40, m: 60 }, 3)
            .unwrap()
            .graph;
        assert!(g.is_connected());
        assert_eq!(g.edge_count(), 60);
    }

    #[test]
    fn single_chord_leaves_other_tree_edges_as_bridges() {
        let g = generate(GeneratorKind::TreePlusEdges { n: 2000, extra: 1 }, 11)
            .unwrap()
            .graph;
        let chord = EdgeId(1999);
        let (a, b) = g.original_endpoints(chord);
        let parent = |v: VertexId| g.original_endpoints(EdgeId(v.0 - 1)).0;
        // tree path between the chord's ends: climb from the larger end
        let (mut x, mut y) = (a.max(b), a.min(b));
        let mut on_cycle = vec![false; 1999];
        while x != y {
            if x > y {
                on_cycle[x.index() - 1] = true;
                x = parent(x);
            } else {
                on_cycle[y.index() - 1] = true;
                y = parent(y);
            }
        }
        for e in g.edges() {
            let bridge = g.components(&[e]).unwrap().count() > 1;
            let expected = e != chord && !on_cycle[e.index()];
            assert_eq!(bridge, expected, "{e}");
        }
    }

    #[test]
    fn blobs() {
        let g = generate(GeneratorKind::TwoBlobsBridged { a: 4, b: 5 }, 0)
            .unwrap()
            .graph;
        assert_eq!(g.edge_count(), 6 + 10 + 1);
        let cut = crate::powercut::min_kway_exhaustive(&g, 2, 1).unwrap();
        assert_eq!(cut.edges(), &[EdgeId(16)]);
    }

    #[test]
    fn grid_subgraphs_embed() {
        for seed in 0..20 {
            let inst = generate(
                GeneratorKind::GridSubgraph {
                    w: 4,
                    h: 4,
                    keep_percent: 70,
                },
                seed,
            )
            .unwrap();
            let rot = inst.embedding.unwrap();
            // faces are only defined per connected piece
            if inst.graph.is_connected() {
                assert!(faces_from_rotation(&inst.graph, &rot).is_ok());
            }
        }
    }
}
