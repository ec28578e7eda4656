//! Minimum k-way cut by dynamic programming over a tree decomposition.
//!
//! The raw decomposition is walked bottom-up as if it were a nice one:
//! vertices are introduced and forgotten one at a time, children with
//! equal bags are joined, and every edge is introduced exactly once, just
//! before the first of its endpoints is forgotten. A state records how the
//! bag is split among components of the processed subgraph and how many
//! components no longer touch the bag (capped at `k`); it maps to the
//! smallest cut of at most `s` edges realising it.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph, VertexId};
use crate::powercut::Cut;
use crate::treewidth::decomposition::{validate_decomposition, TreeDecomposition};

/// Restricted-growth labels of the bag vertices (in bag order) and the
/// closed-component count.
pub type StateKey = (Vec<u8>, usize);

#[derive(Clone, Debug)]
struct Table {
    bag: Vec<VertexId>,
    states: HashMap<StateKey, Cut>,
}

fn canonical(labels: &mut [u8]) {
    let mut map = [u8::MAX; 256];
    let mut next = 0u8;
    for l in labels.iter_mut() {
        if map[*l as usize] == u8::MAX {
            map[*l as usize] = next;
            next += 1;
        }
        *l = map[*l as usize];
    }
}

fn offer(states: &mut HashMap<StateKey, Cut>, key: StateKey, cut: Cut) {
    match states.get(&key) {
        Some(old) if *old <= cut => {}
        _ => {
            states.insert(key, cut);
        }
    }
}

struct Dp<'a> {
    g: &'a MultiGraph,
    k: usize,
    s: usize,
    introduced: Vec<bool>,
}

impl Dp<'_> {
    fn leaf(&self) -> Table {
        let mut states = HashMap::new();
        states.insert((Vec::new(), 0), Cut::empty());
        Table {
            bag: Vec::new(),
            states,
        }
    }

    fn introduce_vertex(&self, t: Table, v: VertexId) -> Table {
        let pos = t.bag.binary_search(&v).unwrap_err();
        let mut bag = t.bag;
        bag.insert(pos, v);
        let mut states = HashMap::with_capacity(t.states.len());
        for ((labels, closed), cut) in t.states {
            let fresh = labels.iter().max().map_or(0, |m| m + 1);
            let mut labels = labels;
            labels.insert(pos, fresh);
            canonical(&mut labels);
            states.insert((labels, closed), cut);
        }
        Table { bag, states }
    }

    fn introduce_edge(&self, t: Table, e: EdgeId) -> Table {
        let (a, b) = self.g.endpoints(e);
        let ia = t.bag.binary_search(&a).expect("edge end in bag");
        let ib = t.bag.binary_search(&b).expect("edge end in bag");
        let mut states = HashMap::with_capacity(t.states.len());
        for ((labels, closed), cut) in t.states {
            if cut.len() < self.s {
                let mut with = cut.edges().to_vec();
                with.push(e);
                offer(&mut states, (labels.clone(), closed), Cut::new(with));
            }
            let (la, lb) = (labels[ia], labels[ib]);
            let mut merged = labels;
            for l in merged.iter_mut() {
                if *l == lb {
                    *l = la;
                }
            }
            canonical(&mut merged);
            offer(&mut states, (merged, closed), cut);
        }
        Table { bag: t.bag, states }
    }

    fn forget(&mut self, mut t: Table, v: VertexId) -> Table {
        let mut pending: Vec<EdgeId> = self
            .g
            .incident(v)
            .iter()
            .copied()
            .filter(|e| !self.introduced[e.index()])
            .collect();
        pending.sort_unstable();
        pending.dedup();
        for e in pending {
            self.introduced[e.index()] = true;
            t = self.introduce_edge(t, e);
        }
        let pos = t.bag.binary_search(&v).expect("forgotten vertex in bag");
        let mut bag = t.bag;
        bag.remove(pos);
        let mut states = HashMap::with_capacity(t.states.len());
        for ((labels, closed), cut) in t.states {
            let l = labels[pos];
            let alone = labels.iter().filter(|&&x| x == l).count() == 1;
            let closed = if alone {
                (closed + 1).min(self.k)
            } else {
                closed
            };
            let mut labels = labels;
            labels.remove(pos);
            canonical(&mut labels);
            offer(&mut states, (labels, closed), cut);
        }
        Table { bag, states }
    }

    fn join(&self, x: Table, y: Table) -> Table {
        debug_assert_eq!(x.bag, y.bag);
        let mut states = HashMap::new();
        for ((lx, cx), cutx) in &x.states {
            for ((ly, cy), cuty) in &y.states {
                if cutx.len() + cuty.len() > self.s {
                    continue;
                }
                // the finest partition coarser than both
                let n = lx.len();
                let mut parent: Vec<usize> = (0..n).collect();
                fn find(p: &mut [usize], i: usize) -> usize {
                    let mut r = i;
                    while p[r] != r {
                        r = p[r];
                    }
                    p[i] = r;
                    r
                }
                for labels in [lx, ly] {
                    let mut first = [usize::MAX; 256];
                    for (i, &l) in labels.iter().enumerate() {
                        if first[l as usize] == usize::MAX {
                            first[l as usize] = i;
                        } else {
                            let (a, b) =
                                (find(&mut parent, first[l as usize]), find(&mut parent, i));
                            parent[a.max(b)] = a.min(b);
                        }
                    }
                }
                let mut labels: Vec<u8> = (0..n).map(|i| find(&mut parent, i) as u8).collect();
                canonical(&mut labels);
                let closed = (cx + cy).min(self.k);
                offer(&mut states, (labels, closed), cutx.union(cuty));
            }
        }
        Table { bag: x.bag, states }
    }

    /// Moves a table from its bag to `target` by forgetting and then
    /// introducing vertices.
    fn transition(&mut self, mut t: Table, target: &[VertexId]) -> Table {
        let drop: Vec<VertexId> = t
            .bag
            .iter()
            .copied()
            .filter(|v| target.binary_search(v).is_err())
            .collect();
        for v in drop {
            t = self.forget(t, v);
        }
        for &v in target {
            if t.bag.binary_search(&v).is_err() {
                t = self.introduce_vertex(t, v);
            }
        }
        t
    }
}

/// Table of one decomposition node over the subgraph processed below and
/// at it.
#[derive(Clone, Debug)]
pub struct NodeTable {
    pub node: usize,
    pub bag: Vec<VertexId>,
    /// Edges introduced in the subtree so far.
    pub edges: Vec<EdgeId>,
    /// Vertices of the subtree's bags.
    pub vertices: Vec<VertexId>,
    pub states: Vec<(StateKey, Cut)>,
}

fn run(
    g: &MultiGraph,
    k: usize,
    s: usize,
    td: &TreeDecomposition,
    mut trace: Option<&mut Vec<NodeTable>>,
) -> Result<Option<Cut>> {
    if k == 0 {
        return Err(Error::InvalidParams("k must be at least 1".into()));
    }
    validate_decomposition(g, td)?;
    if td.bags().iter().any(|b| b.len() > 255) {
        return Err(Error::InvalidParams(
            "bags above 255 vertices are not supported".into(),
        ));
    }
    let adj = td.neighbours();
    // iterative post-order from node 0
    let mut order = Vec::with_capacity(td.len());
    let mut parent = vec![usize::MAX; td.len()];
    let mut stack = vec![0usize];
    let mut seen = vec![false; td.len()];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        order.push(x);
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                parent[y] = x;
                stack.push(y);
            }
        }
    }
    let mut dp = Dp {
        g,
        k,
        s,
        introduced: vec![false; g.edge_space()],
    };
    let mut done: Vec<Option<Table>> = vec![None; td.len()];
    let mut below: Vec<Vec<VertexId>> = vec![Vec::new(); td.len()];
    for &x in order.iter().rev() {
        let bag = &td.bags()[x];
        let mut acc: Option<Table> = None;
        let mut verts: Vec<VertexId> = bag.clone();
        for &c in &adj[x] {
            if c == parent[x] {
                continue;
            }
            let child = done[c].take().expect("child processed first");
            verts.append(&mut below[c]);
            let moved = dp.transition(child, bag);
            acc = Some(match acc {
                None => moved,
                Some(a) => dp.join(a, moved),
            });
        }
        let table = match acc {
            Some(t) => t,
            None => {
                let leaf = dp.leaf();
                dp.transition(leaf, bag)
            }
        };
        verts.sort_unstable();
        verts.dedup();
        if let Some(tr) = trace.as_deref_mut() {
            let mut states: Vec<(StateKey, Cut)> = table
                .states
                .iter()
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect();
            states.sort();
            tr.push(NodeTable {
                node: x,
                bag: table.bag.clone(),
                edges: g
                    .edges()
                    .filter(|e| {
                        let (a, b) = g.endpoints(*e);
                        dp.introduced[e.index()]
                            && verts.binary_search(&a).is_ok()
                            && verts.binary_search(&b).is_ok()
                    })
                    .collect(),
                vertices: verts.clone(),
                states,
            });
        }
        below[x] = verts;
        done[x] = Some(table);
    }
    let root = done[0].take().expect("root processed");
    let root = dp.transition(root, &[]);
    if g.edges().any(|e| !dp.introduced[e.index()]) {
        return Err(Error::Internal("an edge was never introduced".into()));
    }
    Ok(root
        .states
        .into_iter()
        .filter(|((_, closed), _)| *closed >= k)
        .map(|(_, c)| c)
        .min())
}

/// Smallest cut of at most `s` edges leaving at least `k` components.
pub fn dp_kway_cut(
    g: &MultiGraph,
    k: usize,
    s: usize,
    td: &TreeDecomposition,
) -> Result<Option<Cut>> {
    run(g, k, s, td, None)
}

/// As [`dp_kway_cut`], also returning the table of every node.
pub fn dp_trace(
    g: &MultiGraph,
    k: usize,
    s: usize,
    td: &TreeDecomposition,
) -> Result<(Option<Cut>, Vec<NodeTable>)> {
    let mut trace = Vec::new();
    let cut = run(g, k, s, td, Some(&mut trace))?;
    Ok((cut, trace))
}
