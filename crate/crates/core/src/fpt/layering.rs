//! Kernel and layer construction around a start vertex.
//!
//! The kernel `H_0` is grown breadth-first from `v0` to `h` vertices. Layer
//! `H_i` starts with every unused edge touching `V(H_{<i})` and then grows
//! each of its components, smallest vertex first, until the component has
//! `q` vertices (big) or no unused edge leaves it (limited). With an apex
//! `r`, layers are built in `G - r` and each layer additionally receives
//! the edges from `r` to the vertices it introduced; components holding
//! `r` count as big.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::fpt::constants::ConstantsProfile;
use crate::graph::{DisjointSets, EdgeId, MultiGraph, VertexId};

const UNSEEN: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerComponent {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    pub big: bool,
}

impl LayerComponent {
    pub fn min_vertex(&self) -> VertexId {
        self.vertices[0]
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Layer {
    pub edges: Vec<EdgeId>,
    /// Vertices first reached by this layer.
    pub new_vertices: Vec<VertexId>,
    pub components: Vec<LayerComponent>,
}

#[derive(Clone, Debug)]
pub struct Layering {
    pub v0: VertexId,
    pub apex: Option<VertexId>,
    pub kernel: Vec<EdgeId>,
    pub kernel_vertices: Vec<VertexId>,
    /// `layers[i - 1]` is `H_i`.
    pub layers: Vec<Layer>,
    q: u64,
}

#[derive(Clone, Debug)]
pub enum LayeringOutcome {
    /// The layers reach every vertex; the caller should solve exhaustively.
    Exhausted,
    Built(Layering),
}

impl Layering {
    pub fn layer(&self, i: usize) -> &Layer {
        &self.layers[i - 1]
    }

    /// Edges of `H_{<=i}`.
    pub fn block_edges(&self, i: usize) -> Vec<EdgeId> {
        let mut edges = self.kernel.clone();
        for l in &self.layers[..i] {
            edges.extend_from_slice(&l.edges);
        }
        edges.sort_unstable();
        edges
    }

    /// Vertices of `H_{<=i}`.
    pub fn block_vertices(&self, i: usize) -> Vec<VertexId> {
        let mut vs: BTreeSet<VertexId> = self.kernel_vertices.iter().copied().collect();
        for l in &self.layers[..i] {
            for c in &l.components {
                vs.extend(c.vertices.iter().copied());
            }
        }
        vs.into_iter().collect()
    }

    pub fn big_threshold(&self) -> u64 {
        self.q
    }
}

/// A pruned layer: the big components of a layer, ordered by smallest
/// vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrunedLayer {
    pub components: Vec<LayerComponent>,
}

impl PrunedLayer {
    pub fn vertices(&self) -> Vec<VertexId> {
        let mut vs: Vec<VertexId> = self
            .components
            .iter()
            .flat_map(|c| c.vertices.iter().copied())
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn edges(&self) -> Vec<EdgeId> {
        let mut es: Vec<EdgeId> = self
            .components
            .iter()
            .flat_map(|c| c.edges.iter().copied())
            .collect();
        es.sort_unstable();
        es
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

/// Components of the subgraph formed by `edges`, plus `extra` as a vertex
/// even when no edge touches it.
fn components_of(
    g: &MultiGraph,
    edges: &[EdgeId],
    extra: Option<VertexId>,
    q: u64,
    apex: Option<VertexId>,
) -> Vec<LayerComponent> {
    let mut local: BTreeMap<VertexId, usize> = BTreeMap::new();
    for &e in edges {
        let (a, b) = g.endpoints(e);
        let n = local.len();
        local.entry(a).or_insert(n);
        let n = local.len();
        local.entry(b).or_insert(n);
    }
    if let Some(x) = extra {
        let n = local.len();
        local.entry(x).or_insert(n);
    }
    let mut dsu = DisjointSets::new(local.len());
    for &e in edges {
        let (a, b) = g.endpoints(e);
        dsu.union(local[&a], local[&b]);
    }
    let mut groups: BTreeMap<usize, LayerComponent> = BTreeMap::new();
    for (&v, &i) in &local {
        groups
            .entry(dsu.find(i))
            .or_insert_with(|| LayerComponent {
                vertices: Vec::new(),
                edges: Vec::new(),
                big: false,
            })
            .vertices
            .push(v);
    }
    for &e in edges {
        let (a, _) = g.endpoints(e);
        groups.get_mut(&dsu.find(local[&a])).unwrap().edges.push(e);
    }
    let mut comps: Vec<LayerComponent> = groups
        .into_values()
        .map(|mut c| {
            c.vertices.sort_unstable();
            c.edges.sort_unstable();
            c.big = c.vertices.len() as u64 >= q
                || apex.is_some_and(|r| c.vertices.binary_search(&r).is_ok());
            c
        })
        .collect();
    comps.sort_by_key(|c| c.vertices[0]);
    comps
}

/// Start vertex and the size of its component in `rest`: the smallest
/// vertex, or with an apex the smallest neighbour of the apex whose
/// component in `G - r` has at least `h` vertices (falling back to the
/// smallest neighbour).
fn start_vertex(
    g: &MultiGraph,
    rest: &MultiGraph,
    apex: Option<VertexId>,
    h: u64,
) -> Result<(VertexId, u64)> {
    let Some(r) = apex else {
        let v0 = rest
            .vertices()
            .first()
            .copied()
            .ok_or_else(|| Error::Internal("layering on an empty graph".into()))?;
        return Ok((v0, rest.vertex_count() as u64));
    };
    let mut nbrs: Vec<VertexId> = g.incident(r).iter().map(|&e| g.other_end(e, r)).collect();
    nbrs.sort_unstable();
    nbrs.dedup();
    let first = *nbrs
        .first()
        .ok_or_else(|| Error::Internal("apex without neighbours".into()))?;
    let labels = rest.components_masked(&[]);
    let mut sizes: BTreeMap<u32, u64> = BTreeMap::new();
    for &v in rest.vertices() {
        *sizes.entry(labels.label_of(v).unwrap()).or_default() += 1;
    }
    let size = |v: VertexId| sizes[&labels.label_of(v).unwrap()];
    let v0 = nbrs.into_iter().find(|&v| size(v) >= h).unwrap_or(first);
    Ok((v0, size(v0)))
}

pub fn build_layering(
    g: &MultiGraph,
    profile: &ConstantsProfile,
    apex: Option<VertexId>,
) -> Result<LayeringOutcome> {
    let apex = apex.map(|r| g.resolve(r));
    let rest = match apex {
        Some(r) => g.without_vertex(r)?,
        None => g.clone(),
    };
    if rest.vertex_count() == 0 {
        return Ok(LayeringOutcome::Exhausted);
    }
    let (v0, reach) = start_vertex(g, &rest, apex, profile.h)?;
    if reach < profile.h && apex.is_some() {
        // every block behind the apex is smaller than the kernel
        return Ok(LayeringOutcome::Exhausted);
    }
    let q = profile.q;
    let nv = g.vertex_space();
    let mut level = vec![UNSEEN; nv];
    let mut covered: Vec<VertexId> = Vec::new();
    // 0 free, 1 taken by an earlier layer, 2 in the layer under construction
    let mut state = vec![0u8; g.edge_space()];

    // kernel
    let target = profile.h.min(rest.vertex_count() as u64) as usize;
    let mut queue = VecDeque::from([v0]);
    level[v0.index()] = 0;
    let mut kernel_vertices = vec![v0];
    'bfs: while let Some(v) = queue.pop_front() {
        let mut nbrs: Vec<VertexId> = rest
            .incident(v)
            .iter()
            .map(|&e| rest.other_end(e, v))
            .collect();
        nbrs.sort_unstable();
        nbrs.dedup();
        for w in nbrs {
            if kernel_vertices.len() >= target {
                break 'bfs;
            }
            if level[w.index()] == UNSEEN {
                level[w.index()] = 0;
                kernel_vertices.push(w);
                queue.push_back(w);
            }
        }
    }
    kernel_vertices.sort_unstable();
    let mut kernel = Vec::new();
    for &v in &kernel_vertices {
        for &e in rest.incident(v) {
            let w = rest.other_end(e, v);
            if level[w.index()] == 0 && state[e.index()] == 0 {
                state[e.index()] = 1;
                kernel.push(e);
            }
        }
    }
    covered.extend_from_slice(&kernel_vertices);
    if let Some(r) = apex {
        for &e in g.incident(r) {
            if level[g.other_end(e, r).index()] == 0 {
                kernel.push(e);
            }
        }
        kernel_vertices.push(r);
        kernel_vertices.sort_unstable();
    }
    kernel.sort_unstable();

    let mut layers = Vec::new();
    let mut dsu = DisjointSets::new(nv);
    let mut size = vec![1u64; nv];
    for i in 1..=profile.layers() {
        let mut edges = Vec::new();
        let mut in_layer: BTreeSet<VertexId> = BTreeSet::new();
        for &v in &covered {
            for &e in rest.incident(v) {
                if state[e.index()] == 0 {
                    state[e.index()] = 2;
                    edges.push(e);
                    let (a, b) = rest.endpoints(e);
                    in_layer.insert(a);
                    in_layer.insert(b);
                }
            }
        }
        if edges.is_empty() && apex.is_none() {
            break;
        }
        for &v in &in_layer {
            dsu.parent_reset(v.index());
            size[v.index()] = 1;
        }
        let mut new_vertices = Vec::new();
        for &v in &in_layer {
            if level[v.index()] == UNSEEN {
                level[v.index()] = i as u32;
                new_vertices.push(v);
            }
        }
        for &e in &edges {
            let (a, b) = rest.endpoints(e);
            union_sized(&mut dsu, &mut size, a, b);
        }
        let mut candidates = in_layer.clone();
        while let Some(&x) = candidates.iter().next() {
            let root = dsu.find(x.index());
            if size[root] >= q {
                candidates.remove(&x);
                continue;
            }
            let free = rest
                .incident(x)
                .iter()
                .copied()
                .filter(|e| state[e.index()] == 0)
                .min();
            let Some(e) = free else {
                candidates.remove(&x);
                continue;
            };
            state[e.index()] = 2;
            edges.push(e);
            let y = rest.other_end(e, x);
            if in_layer.insert(y) {
                dsu.parent_reset(y.index());
                size[y.index()] = 1;
                candidates.insert(y);
                if level[y.index()] == UNSEEN {
                    level[y.index()] = i as u32;
                    new_vertices.push(y);
                }
            }
            union_sized(&mut dsu, &mut size, x, y);
        }
        for &e in &edges {
            state[e.index()] = 1;
        }
        covered.extend_from_slice(&new_vertices);
        new_vertices.sort_unstable();
        edges.sort_unstable();
        let mut with_apex = edges.clone();
        if let Some(r) = apex {
            for &e in g.incident(r) {
                let w = g.other_end(e, r);
                if new_vertices.binary_search(&w).is_ok() {
                    with_apex.push(e);
                }
            }
            with_apex.sort_unstable();
        }
        let components = components_of(g, &with_apex, apex, q, apex);
        layers.push(Layer {
            edges: with_apex,
            new_vertices,
            components,
        });
    }

    if rest.vertices().iter().all(|v| level[v.index()] != UNSEEN) {
        return Ok(LayeringOutcome::Exhausted);
    }
    if layers.len() < profile.layers() {
        return Err(Error::Internal(
            "layers ran out before reaching every vertex".into(),
        ));
    }
    Ok(LayeringOutcome::Built(Layering {
        v0,
        apex,
        kernel,
        kernel_vertices,
        layers,
        q,
    }))
}

fn union_sized(dsu: &mut DisjointSets, size: &mut [u64], a: VertexId, b: VertexId) {
    let ra = dsu.find(a.index());
    let rb = dsu.find(b.index());
    if ra != rb {
        let total = size[ra] + size[rb];
        dsu.union(ra, rb);
        size[dsu.find(ra)] = total;
    }
}

/// Big components of layer `i`, with the separation and size properties
/// checked against `g`.
pub fn prune_layer(g: &MultiGraph, layering: &Layering, i: usize) -> Result<PrunedLayer> {
    if i == 0 || i > layering.layers.len() {
        return Err(Error::InvalidParams(format!(
            "layer index {i} out of range"
        )));
    }
    let components: Vec<LayerComponent> = layering
        .layer(i)
        .components
        .iter()
        .filter(|c| c.big)
        .cloned()
        .collect();
    for c in &components {
        let holds_apex = layering
            .apex
            .is_some_and(|r| c.vertices.binary_search(&r).is_ok());
        if !holds_apex && (c.vertices.len() as u64) < layering.q {
            return Err(Error::Internal(format!(
                "pruned component at {} has {} < q vertices",
                c.min_vertex(),
                c.vertices.len()
            )));
        }
    }
    let pruned = PrunedLayer { components };
    let block_vertices = layering.block_vertices(i);
    let block_edges = layering.block_edges(i);
    let pruned_vertices = pruned.vertices();
    for &v in &block_vertices {
        if pruned_vertices.binary_search(&v).is_ok() {
            continue;
        }
        if let Some(&e) = g
            .incident(v)
            .iter()
            .find(|e| block_edges.binary_search(e).is_err())
        {
            return Err(Error::Internal(format!(
                "edge {e} leaves the block at {v} outside the pruned layer"
            )));
        }
    }
    Ok(pruned)
}
