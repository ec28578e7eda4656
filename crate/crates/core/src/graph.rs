//! Contraction-safe multigraph with persistent edge identities.
//!
//! Vertices and edges carry dense integer ids. Identifying vertices never
//! renames an edge: an edge whose endpoints end up in the same class is
//! retired as a loop, every other edge keeps its id. The quotient map sends
//! each original vertex to the smallest original id of its class, so the
//! representative of a class is stable under further identifications of
//! unrelated classes.

use std::collections::hash_map::DefaultHasher;
use std::collections::VecDeque;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::powercut::TerminalPartition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// Union-find over a dense index space. Unions keep the smaller index as
/// the root so that roots double as canonical representatives.
#[derive(Clone, Debug)]
pub struct DisjointSets {
    parent: Vec<u32>,
}

impl DisjointSets {
    pub fn new(len: usize) -> Self {
        DisjointSets {
            parent: (0..len as u32).collect(),
        }
    }

    pub fn find(&mut self, i: usize) -> usize {
        let mut root = i;
        while self.parent[root] as usize != root {
            root = self.parent[root] as usize;
        }
        let mut cur = i;
        while self.parent[cur] as usize != root {
            let next = self.parent[cur] as usize;
            self.parent[cur] = root as u32;
            cur = next;
        }
        root
    }

    /// Makes `i` a singleton root again. Callers must reset every member of
    /// a set they intend to reuse.
    pub fn parent_reset(&mut self, i: usize) {
        self.parent[i] = i as u32;
    }

    /// Returns false when `a` and `b` were already in the same set.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo as u32;
        true
    }
}

/// Component labels of a graph, indexed by representative vertex id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentLabeling {
    label: Vec<u32>,
    rep: Vec<VertexId>,
    count: usize,
}

impl ComponentLabeling {
    pub const NONE: u32 = u32::MAX;

    pub fn count(&self) -> usize {
        self.count
    }

    /// Component index of `v` (resolved through the quotient), or `None`
    /// if `v` is not a vertex of the labelled graph.
    pub fn label_of(&self, v: VertexId) -> Option<u32> {
        let r = *self.rep.get(v.index())?;
        match self.label[r.index()] {
            Self::NONE => None,
            l => Some(l),
        }
    }

    pub fn same(&self, a: VertexId, b: VertexId) -> bool {
        matches!((self.label_of(a), self.label_of(b)), (Some(x), Some(y)) if x == y)
    }
}

#[derive(Clone, Debug)]
pub struct MultiGraph {
    ends: Arc<Vec<[VertexId; 2]>>,
    rep: Vec<VertexId>,
    member: Vec<bool>,
    verts: Vec<VertexId>,
    live: Vec<bool>,
    edge_count: usize,
    adj: Vec<Vec<EdgeId>>,
    retired: Vec<EdgeId>,
}

impl MultiGraph {
    /// A graph on vertices `0..n` with no edges.
    pub fn new(n: usize) -> Self {
        MultiGraph {
            ends: Arc::new(Vec::new()),
            rep: (0..n as u32).map(VertexId).collect(),
            member: vec![true; n],
            verts: (0..n as u32).map(VertexId).collect(),
            live: Vec::new(),
            edge_count: 0,
            adj: vec![Vec::new(); n],
            retired: Vec::new(),
        }
    }

    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let mut g = MultiGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(VertexId(u), VertexId(v))?;
        }
        Ok(g)
    }

    /// Adds an edge between two live vertices; the new id is the next
    /// unused one. Self-loops are rejected.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId> {
        let u = self.live_vertex(u)?;
        let v = self.live_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let id = EdgeId(self.ends.len() as u32);
        Arc::make_mut(&mut self.ends).push([u, v]);
        self.live.push(true);
        self.edge_count += 1;
        self.adj[u.index()].push(id);
        self.adj[v.index()].push(id);
        Ok(id)
    }

    fn live_vertex(&self, v: VertexId) -> Result<VertexId> {
        match self.rep.get(v.index()) {
            Some(&r) if self.member[r.index()] => Ok(r),
            _ => Err(Error::UnknownVertex(v)),
        }
    }

    /// Size of the original vertex id space.
    pub fn vertex_space(&self) -> usize {
        self.rep.len()
    }

    /// Size of the edge id space (live, retired and foreign edges alike).
    pub fn edge_space(&self) -> usize {
        self.ends.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.verts.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Live representatives in increasing order.
    pub fn vertices(&self) -> &[VertexId] {
        &self.verts
    }

    /// Live edge ids in increasing order.
    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.live
            .iter()
            .enumerate()
            .filter(|(_, &l)| l)
            .map(|(i, _)| EdgeId(i as u32))
    }

    pub fn edge_list(&self) -> Vec<EdgeId> {
        self.edges().collect()
    }

    pub fn retired_loops(&self) -> &[EdgeId] {
        &self.retired
    }

    pub fn is_live(&self, e: EdgeId) -> bool {
        self.live.get(e.index()).copied().unwrap_or(false)
    }

    /// Whether `v` (an original id) belongs to this graph.
    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.live_vertex(v).is_ok()
    }

    /// Representative of `v` under the quotient.
    #[inline]
    pub fn resolve(&self, v: VertexId) -> VertexId {
        self.rep[v.index()]
    }

    /// Endpoints of `e` as originally inserted.
    pub fn original_endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        let [a, b] = self.ends[e.index()];
        (a, b)
    }

    /// Current endpoints of `e`, i.e. representatives of the originals.
    #[inline]
    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        let [a, b] = self.ends[e.index()];
        (self.rep[a.index()], self.rep[b.index()])
    }

    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.endpoints(e);
        if a == v {
            b
        } else {
            a
        }
    }

    /// Live edges incident to the representative `v`.
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.adj[self.rep[v.index()].index()]
    }

    /// Degree counted with multiplicity of parallel edges.
    pub fn degree(&self, v: VertexId) -> usize {
        self.incident(v).len()
    }

    /// Number of distinct neighbours.
    pub fn neighbor_count(&self, v: VertexId) -> usize {
        let v = self.resolve(v);
        let mut ns: Vec<VertexId> = self
            .incident(v)
            .iter()
            .map(|&e| self.other_end(e, v))
            .collect();
        ns.sort_unstable();
        ns.dedup();
        ns.len()
    }

    fn check_edges(&self, edges: &[EdgeId]) -> Result<()> {
        match edges.iter().find(|&&e| !self.is_live(e)) {
            Some(&e) => Err(Error::UnknownEdge(e)),
            None => Ok(()),
        }
    }

    /// Connected components with the edges of `removed` treated as absent.
    pub fn components(&self, removed: &[EdgeId]) -> Result<ComponentLabeling> {
        self.check_edges(removed)?;
        let mut gone = vec![false; self.ends.len()];
        for &e in removed {
            gone[e.index()] = true;
        }
        Ok(self.components_masked(&gone))
    }

    /// Like [`components`](Self::components), with removal given as a mask
    /// over the edge id space. Ids outside the live set are ignored.
    pub fn components_masked(&self, gone: &[bool]) -> ComponentLabeling {
        let mut label = vec![ComponentLabeling::NONE; self.rep.len()];
        let mut count = 0u32;
        let mut queue = VecDeque::new();
        for &s in &self.verts {
            if label[s.index()] != ComponentLabeling::NONE {
                continue;
            }
            label[s.index()] = count;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &e in &self.adj[v.index()] {
                    if gone.get(e.index()).copied().unwrap_or(false) {
                        continue;
                    }
                    let w = self.other_end(e, v);
                    if label[w.index()] == ComponentLabeling::NONE {
                        label[w.index()] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        ComponentLabeling {
            label,
            rep: self.rep.clone(),
            count: count as usize,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.components_masked(&[]).count() <= 1
    }

    /// Number of components `j` of `G - cut` and the partition it induces
    /// on `terminals`.
    pub fn induced_partition(
        &self,
        cut: &[EdgeId],
        terminals: &[VertexId],
    ) -> Result<TerminalPartition> {
        for &t in terminals {
            self.live_vertex(t)?;
        }
        let labels = self.components(cut)?;
        Ok(TerminalPartition::from_labels(
            labels.count(),
            terminals,
            |t| labels.label_of(t).unwrap_or(ComponentLabeling::NONE),
        ))
    }

    /// Quotient graph identifying every pair in `pairs`.
    pub fn identify(&self, pairs: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut g = self.clone();
        g.identify_mut(pairs)?;
        Ok(g)
    }

    pub fn identify_mut(&mut self, pairs: &[(VertexId, VertexId)]) -> Result<()> {
        let mut resolved = Vec::with_capacity(pairs.len());
        for &(a, b) in pairs {
            resolved.push((self.live_vertex(a)?, self.live_vertex(b)?));
        }
        self.merge_resolved(&resolved);
        Ok(())
    }

    /// Quotient graph contracting every edge of `edges`.
    pub fn contract(&self, edges: &[EdgeId]) -> Result<Self> {
        let mut g = self.clone();
        g.contract_mut(edges)?;
        Ok(g)
    }

    pub fn contract_mut(&mut self, edges: &[EdgeId]) -> Result<()> {
        self.check_edges(edges)?;
        let pairs: Vec<_> = edges.iter().map(|&e| self.endpoints(e)).collect();
        self.merge_resolved(&pairs);
        Ok(())
    }

    fn merge_resolved(&mut self, pairs: &[(VertexId, VertexId)]) {
        if pairs.iter().all(|(a, b)| a == b) {
            return;
        }
        let mut dsu = DisjointSets::new(self.rep.len());
        let mut touched = Vec::new();
        for &(a, b) in pairs {
            if dsu.union(a.index(), b.index()) {
                touched.push(a);
                touched.push(b);
            }
        }
        touched.sort_unstable();
        touched.dedup();
        // Classes are closed under the old quotient, so a representative
        // maps to the smallest representative in its new class, which is
        // also the smallest original id there.
        for r in self.rep.iter_mut() {
            *r = VertexId(dsu.find(r.index()) as u32);
        }
        let mut merged_adj: Vec<(VertexId, Vec<EdgeId>)> = Vec::new();
        for &v in &touched {
            let root = VertexId(dsu.find(v.index()) as u32);
            let list = std::mem::take(&mut self.adj[v.index()]);
            if root != v {
                self.member[v.index()] = false;
            }
            merged_adj.push((root, list));
        }
        for (root, list) in merged_adj {
            for e in list {
                if !self.live[e.index()] {
                    continue;
                }
                let (a, b) = self.endpoints(e);
                if a == b {
                    self.live[e.index()] = false;
                    self.edge_count -= 1;
                    self.retired.push(e);
                } else {
                    self.adj[root.index()].push(e);
                }
            }
        }
        for &v in &touched {
            let root = VertexId(dsu.find(v.index()) as u32);
            if root == v {
                let list = &mut self.adj[v.index()];
                list.sort_unstable();
                list.dedup();
            }
        }
        let member = &self.member;
        self.verts.retain(|v| member[v.index()]);
    }

    /// The subgraph formed by `edges` (live edges of `self`) and their
    /// endpoints, sharing this graph's quotient and edge ids. An empty edge
    /// set yields the single vertex `anchor`, when given.
    pub fn edge_subgraph(&self, edges: &[EdgeId], anchor: Option<VertexId>) -> Result<Self> {
        self.check_edges(edges)?;
        let n = self.rep.len();
        let mut member = vec![false; n];
        let mut live = vec![false; self.ends.len()];
        let mut adj = vec![Vec::new(); n];
        let mut count = 0;
        let mut sorted = edges.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for &e in &sorted {
            let (a, b) = self.endpoints(e);
            live[e.index()] = true;
            count += 1;
            member[a.index()] = true;
            member[b.index()] = true;
            adj[a.index()].push(e);
            adj[b.index()].push(e);
        }
        if let Some(v) = anchor {
            member[self.live_vertex(v)?.index()] = true;
        }
        let verts = (0..n as u32)
            .map(VertexId)
            .filter(|v| member[v.index()])
            .collect();
        Ok(MultiGraph {
            ends: Arc::clone(&self.ends),
            rep: self.rep.clone(),
            member,
            verts,
            live,
            edge_count: count,
            adj,
            retired: Vec::new(),
        })
    }

    /// Removes the vertex `v` and its incident edges. The removed edges are
    /// not retired; they simply leave this graph.
    pub fn without_vertex(&self, v: VertexId) -> Result<Self> {
        let v = self.live_vertex(v)?;
        let mut g = self.clone();
        for e in std::mem::take(&mut g.adj[v.index()]) {
            let w = g.other_end(e, v);
            g.live[e.index()] = false;
            g.edge_count -= 1;
            g.adj[w.index()].retain(|&f| f != e);
        }
        g.member[v.index()] = false;
        g.verts.retain(|&x| x != v);
        Ok(g)
    }

    /// A fingerprint of the live structure (edge ids with current
    /// endpoints and the vertex set).
    pub fn stamp(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.verts.hash(&mut h);
        for e in self.edges() {
            e.hash(&mut h);
            self.endpoints(e).hash(&mut h);
        }
        h.finish()
    }
}
