//! The reduction loop: sparsify, split off good separations, identify
//! pairs of high-degree vertices, and contract kernel edges unused by the
//! local powercuts of the layers. Small graphs are solved exhaustively.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::connectivity::{bounded_mincut_sides, needs_sparsify, spanning_forests, MinCut};
use crate::error::{Error, Result};
use crate::fpt::constants::ConstantsProfile;
use crate::fpt::layering::{build_layering, prune_layer, Layering, LayeringOutcome, PrunedLayer};
use crate::graph::{EdgeId, MultiGraph, VertexId};
use crate::powercut::{
    best_pair_cut, canonical_terminals, enumeration_count, exhaustive_powercut, kway_from_table,
    pair_terminals, verify_cut, Cut, PowercutTable,
};

pub const DEFAULT_ENUM_BUDGET: u64 = 10_000_000;
pub const DEFAULT_LOCAL_CEILING: u64 = 1_000_000_000;

#[derive(Clone, Copy, Debug)]
pub struct EngineConfig {
    pub profile: ConstantsProfile,
    /// Solve exhaustively once `sum_{i <= s} C(m, i)` is at most this.
    pub enum_budget: u64,
    /// Largest enumeration allowed for a local layer table.
    pub local_ceiling: u64,
    pub parallel: bool,
}

impl EngineConfig {
    pub fn new(profile: ConstantsProfile) -> Self {
        EngineConfig {
            profile,
            enum_budget: DEFAULT_ENUM_BUDGET,
            local_ceiling: DEFAULT_LOCAL_CEILING,
            parallel: true,
        }
    }

    pub fn paper(s: usize, terminal_count: usize) -> Result<Self> {
        Ok(Self::new(ConstantsProfile::paper(s, terminal_count)?))
    }

    pub fn with_budget(mut self, enum_budget: u64) -> Self {
        self.enum_budget = enum_budget;
        self
    }
}

/// Counters for each kind of reduction step.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EngineStats {
    pub sparsifications: u64,
    pub exhaustive_solves: u64,
    pub high_degree_identifications: u64,
    pub high_degree_separations: u64,
    pub apex_separations: u64,
    pub layerings: u64,
    pub layer_separations: u64,
    pub kernel_contractions: u64,
    pub fallbacks: u64,
    pub max_depth: u64,
}

/// An edge partition into connected sides `a` and `b` meeting in `shared`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub a_edges: Vec<EdgeId>,
    pub b_edges: Vec<EdgeId>,
    pub a_vertices: Vec<VertexId>,
    pub b_vertices: Vec<VertexId>,
    pub shared: Vec<VertexId>,
}

impl Separation {
    /// Splits `g` along a minimum cut: `a` is the source side with the cut
    /// edges attached, `b` the remainder.
    pub fn from_mincut(g: &MultiGraph, mc: &MinCut) -> Self {
        let mut side = vec![false; g.vertex_space()];
        for &v in &mc.source_side {
            side[v.index()] = true;
        }
        let mut a_edges = Vec::new();
        let mut b_edges = Vec::new();
        let mut shared = Vec::new();
        for e in g.edges() {
            let (x, y) = g.endpoints(e);
            match (side[x.index()], side[y.index()]) {
                (true, true) => a_edges.push(e),
                (false, false) => b_edges.push(e),
                (true, false) => {
                    a_edges.push(e);
                    shared.push(y);
                }
                (false, true) => {
                    a_edges.push(e);
                    shared.push(x);
                }
            }
        }
        shared.sort_unstable();
        shared.dedup();
        let mut a_vertices = mc.source_side.clone();
        a_vertices.extend_from_slice(&shared);
        a_vertices.sort_unstable();
        let b_vertices = g
            .vertices()
            .iter()
            .copied()
            .filter(|v| !side[v.index()])
            .collect();
        Separation {
            a_edges,
            b_edges,
            a_vertices,
            b_vertices,
            shared,
        }
    }

    pub fn is_good(&self, profile: &ConstantsProfile) -> bool {
        self.shared.len() <= profile.s
            && self.a_vertices.len() as u64 >= profile.q
            && self.b_vertices.len() as u64 >= profile.q
    }
}

/// Vertices with at least `d` distinct neighbours.
pub fn find_high_degree(g: &MultiGraph, profile: &ConstantsProfile) -> Vec<VertexId> {
    g.vertices()
        .iter()
        .copied()
        .filter(|&v| g.neighbor_count(v) as u64 >= profile.d)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HighDegreeStep {
    Identify(VertexId, VertexId),
    Separate(Separation),
}

pub fn handle_two_high_degree(
    g: &MultiGraph,
    u: VertexId,
    v: VertexId,
    profile: &ConstantsProfile,
) -> Result<HighDegreeStep> {
    match bounded_mincut_sides(g, &[u], &[v], profile.s)? {
        None => Ok(HighDegreeStep::Identify(u, v)),
        Some(mc) => {
            let sep = Separation::from_mincut(g, &mc);
            if !sep.is_good(profile) {
                return Err(Error::Internal(format!(
                    "separation between high-degree {u} and {v} is not good"
                )));
            }
            Ok(HighDegreeStep::Separate(sep))
        }
    }
}

/// When every component of `G - r` is smaller than `h`, the apex is an
/// articulation point with no kernel-sized block behind it. Groups those
/// components, smallest vertex first, into a good separation meeting in
/// `{r}` if one exists.
pub fn apex_split(
    g: &MultiGraph,
    r: VertexId,
    profile: &ConstantsProfile,
) -> Result<Option<Separation>> {
    let r = g.resolve(r);
    let rest = g.without_vertex(r)?;
    let labels = rest.components_masked(&[]);
    if labels.count() < 2 {
        return Ok(None);
    }
    let mut sizes = vec![0u64; labels.count()];
    for &v in rest.vertices() {
        sizes[labels.label_of(v).unwrap() as usize] += 1;
    }
    if sizes.iter().any(|&c| c >= profile.h) {
        return Ok(None);
    }
    // labels in order of first vertex
    let mut order = Vec::new();
    for &v in rest.vertices() {
        let l = labels.label_of(v).unwrap();
        if !order.contains(&l) {
            order.push(l);
        }
    }
    let mut in_a = vec![false; labels.count()];
    let mut a_size = 1;
    for l in order {
        if a_size >= profile.q {
            break;
        }
        in_a[l as usize] = true;
        a_size += sizes[l as usize];
    }
    let b_size = g.vertex_count() as u64 + 1 - a_size;
    if a_size < profile.q || b_size < profile.q {
        return Ok(None);
    }
    let side_a = |v: VertexId| v != r && in_a[labels.label_of(v).unwrap() as usize];
    let (mut a_edges, mut b_edges) = (Vec::new(), Vec::new());
    for e in g.edges() {
        let (x, y) = g.endpoints(e);
        if side_a(x) || side_a(y) {
            a_edges.push(e);
        } else {
            b_edges.push(e);
        }
    }
    let (mut a_vertices, mut b_vertices): (Vec<VertexId>, Vec<VertexId>) = g
        .vertices()
        .iter()
        .copied()
        .filter(|&v| v != r)
        .partition(|&v| side_a(v));
    a_vertices.push(r);
    a_vertices.sort_unstable();
    b_vertices.push(r);
    b_vertices.sort_unstable();
    let sep = Separation {
        a_edges,
        b_edges,
        a_vertices,
        b_vertices,
        shared: vec![r],
    };
    debug_assert!(sep.is_good(profile));
    Ok(Some(sep))
}

/// First pair of consecutive pruned components joined by at most `s`
/// edge-disjoint paths, turned into a good separation.
pub fn consecutive_connectivity_check(
    g: &MultiGraph,
    pruned: &PrunedLayer,
    profile: &ConstantsProfile,
) -> Result<Option<Separation>> {
    for pair in pruned.components.windows(2) {
        let Some(mc) = bounded_mincut_sides(g, &pair[0].vertices, &pair[1].vertices, profile.s)?
        else {
            continue;
        };
        let sep = Separation::from_mincut(g, &mc);
        if !sep.is_good(profile) {
            return Err(Error::Internal(format!(
                "separation between pruned components at {} and {} is not good",
                pair[0].min_vertex(),
                pair[1].min_vertex()
            )));
        }
        return Ok(Some(sep));
    }
    Ok(None)
}

/// The block `H_{<=i}` with the pruned layer identified into a single
/// articulation vertex, and its terminals.
pub fn collapsed_block(
    g: &MultiGraph,
    terminals: &[VertexId],
    layering: &Layering,
    i: usize,
) -> Result<(MultiGraph, Vec<VertexId>)> {
    let pruned = prune_layer(g, layering, i)?;
    let pv = pruned.vertices();
    let Some(&vi) = pv.first() else {
        return Err(Error::Internal(format!("pruned layer {i} is empty")));
    };
    let block_vertices = layering.block_vertices(i);
    let mut block = g.edge_subgraph(&layering.block_edges(i), Some(layering.v0))?;
    let pairs: Vec<(VertexId, VertexId)> = pv[1..].iter().map(|&x| (vi, x)).collect();
    block.identify_mut(&pairs)?;
    let mut terms = vec![block.resolve(vi)];
    for &t in terminals {
        let r = g.resolve(t);
        if block_vertices.binary_search(&r).is_ok() {
            terms.push(block.resolve(r));
        }
    }
    Ok((block, canonical_terminals(&terms)))
}

pub fn collapse_and_local_powercut(
    g: &MultiGraph,
    terminals: &[VertexId],
    layering: &Layering,
    i: usize,
    s: usize,
    ceiling: u64,
) -> Result<PowercutTable> {
    let (block, terms) = collapsed_block(g, terminals, layering, i)?;
    let count = enumeration_count(block.edge_count(), s);
    if count > ceiling {
        return Err(Error::ProfileMismatch(format!(
            "local block {i} needs {count} enumeration steps, ceiling is {ceiling}"
        )));
    }
    exhaustive_powercut(&block, &terms, s)
}

/// Kernel edges used by none of the local tables.
pub fn contractible_kernel_edges(tables: &[PowercutTable], kernel: &[EdgeId]) -> Vec<EdgeId> {
    let used: BTreeSet<EdgeId> = tables.iter().flat_map(|t| t.distinct_edges()).collect();
    kernel
        .iter()
        .copied()
        .filter(|e| !used.contains(e))
        .collect()
}

struct Engine {
    config: EngineConfig,
    stats: EngineStats,
}

impl Engine {
    fn exhaustive(&mut self, g: &MultiGraph, terminals: &[VertexId]) -> Result<PowercutTable> {
        self.stats.exhaustive_solves += 1;
        exhaustive_powercut(g, terminals, self.config.profile.s)
    }

    fn solve(
        &mut self,
        input: &MultiGraph,
        terminals: &[VertexId],
        depth: u64,
    ) -> Result<PowercutTable> {
        let profile = self.config.profile;
        let s = profile.s;
        self.stats.max_depth = self.stats.max_depth.max(depth);
        let mut g = input.clone();
        loop {
            if needs_sparsify(&g, s) {
                let stack = spanning_forests(&g, s);
                if !stack.outside.is_empty() {
                    g.contract_mut(&stack.outside)?;
                    self.stats.sparsifications += 1;
                }
            }
            if enumeration_count(g.edge_count(), s) <= self.config.enum_budget {
                return self.exhaustive(&g, terminals);
            }
            let before = (g.vertex_count(), g.edge_count());
            let high = find_high_degree(&g, &profile);
            if high.len() >= 2 {
                match handle_two_high_degree(&g, high[0], high[1], &profile)? {
                    HighDegreeStep::Identify(u, v) => {
                        g.identify_mut(&[(u, v)])?;
                        self.stats.high_degree_identifications += 1;
                    }
                    HighDegreeStep::Separate(sep) => {
                        self.stats.high_degree_separations += 1;
                        self.recurse(&mut g, terminals, &sep, depth)?;
                    }
                }
            } else if let Some(sep) = match high.first() {
                Some(&r) => apex_split(&g, r, &profile)?,
                None => None,
            } {
                self.stats.apex_separations += 1;
                self.recurse(&mut g, terminals, &sep, depth)?;
            } else {
                let layering = match build_layering(&g, &profile, high.first().copied())? {
                    LayeringOutcome::Exhausted => return self.exhaustive(&g, terminals),
                    LayeringOutcome::Built(l) => l,
                };
                self.stats.layerings += 1;
                if let Some(sep) = self.first_layer_separation(&g, &layering)? {
                    self.stats.layer_separations += 1;
                    self.recurse(&mut g, terminals, &sep, depth)?;
                } else {
                    let tables = self.local_tables(&g, terminals, &layering)?;
                    let f = contractible_kernel_edges(&tables, &layering.kernel);
                    g.contract_mut(&f)?;
                    self.stats.kernel_contractions += 1;
                }
            }
            if (g.vertex_count(), g.edge_count()) == before {
                self.stats.fallbacks += 1;
                return self.exhaustive(&g, terminals);
            }
        }
    }

    fn first_layer_separation(
        &self,
        g: &MultiGraph,
        layering: &Layering,
    ) -> Result<Option<Separation>> {
        for i in 1..=layering.layers.len() {
            let pruned = prune_layer(g, layering, i)?;
            if let Some(sep) = consecutive_connectivity_check(g, &pruned, &self.config.profile)? {
                return Ok(Some(sep));
            }
        }
        Ok(None)
    }

    fn local_tables(
        &self,
        g: &MultiGraph,
        terminals: &[VertexId],
        layering: &Layering,
    ) -> Result<Vec<PowercutTable>> {
        let s = self.config.profile.s;
        let ceiling = self.config.local_ceiling;
        let run = |i| collapse_and_local_powercut(g, terminals, layering, i, s, ceiling);
        let range = 1..=layering.layers.len();
        if self.config.parallel {
            range.into_par_iter().map(run).collect()
        } else {
            range.map(run).collect()
        }
    }

    /// Solves the side of `sep` holding fewer terminals and contracts the
    /// side edges its table does not use.
    fn recurse(
        &mut self,
        g: &mut MultiGraph,
        terminals: &[VertexId],
        sep: &Separation,
        depth: u64,
    ) -> Result<()> {
        let resolved: BTreeSet<VertexId> = terminals.iter().map(|&t| g.resolve(t)).collect();
        let count = |vs: &[VertexId]| vs.iter().filter(|v| resolved.contains(v)).count();
        let a_key = (
            count(&sep.a_vertices),
            sep.a_vertices.len(),
            sep.a_vertices[0],
        );
        let b_key = (
            count(&sep.b_vertices),
            sep.b_vertices.len(),
            sep.b_vertices[0],
        );
        let (edges, vertices) = if a_key <= b_key {
            (&sep.a_edges, &sep.a_vertices)
        } else {
            (&sep.b_edges, &sep.b_vertices)
        };
        let mut side_terms: Vec<VertexId> = sep.shared.clone();
        side_terms.extend(vertices.iter().copied().filter(|v| resolved.contains(v)));
        let side_terms = canonical_terminals(&side_terms);
        if side_terms.len() > self.config.profile.t {
            return Err(Error::Internal(format!(
                "side needs {} terminals, capacity is {}",
                side_terms.len(),
                self.config.profile.t
            )));
        }
        let side = g.edge_subgraph(edges, None)?;
        let table = self.solve(&side, &side_terms, depth + 1)?;
        let used = table.distinct_edges();
        let unused: Vec<EdgeId> = edges
            .iter()
            .copied()
            .filter(|e| !used.contains(e))
            .collect();
        g.contract_mut(&unused)
    }
}

/// Powercut of `(g, terminals, s)` with the default (`paper`) profile.
pub fn fpt_powercut(g: &MultiGraph, terminals: &[VertexId], s: usize) -> Result<PowercutTable> {
    let config = EngineConfig::paper(s, canonical_terminals(terminals).len())?;
    Ok(fpt_powercut_with(g, terminals, &config)?.0)
}

pub fn fpt_powercut_with(
    g: &MultiGraph,
    terminals: &[VertexId],
    config: &EngineConfig,
) -> Result<(PowercutTable, EngineStats)> {
    for &t in terminals {
        if !g.contains_vertex(t) {
            return Err(Error::UnknownVertex(t));
        }
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let terminals = canonical_terminals(terminals);
    if terminals.len() > config.profile.t {
        return Err(Error::TooManyTerminals {
            got: terminals.len(),
            capacity: config.profile.t,
        });
    }
    let mut engine = Engine {
        config: *config,
        stats: EngineStats::default(),
    };
    let table = engine.solve(g, &terminals, 0)?;
    Ok((table.with_stamp(g.stamp()), engine.stats))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "cut", rename_all = "lowercase")]
pub enum KwayOutcome {
    Found(Cut),
    /// No cut of at most `s` edges leaves `k` components.
    Infeasible,
    /// `k > s + 1`: no cut of at most `s` edges can leave `k` components.
    Pigeonhole,
}

impl KwayOutcome {
    pub fn cut(&self) -> Option<&Cut> {
        match self {
            KwayOutcome::Found(c) => Some(c),
            _ => None,
        }
    }
}

/// Minimum k-way cut of at most `s` edges with the default (`paper`) profile.
pub fn kway_cut(g: &MultiGraph, k: usize, s: usize) -> Result<KwayOutcome> {
    kway_cut_with(g, k, s, |s| {
        Ok(EngineConfig::new(ConstantsProfile::paper(s, 0)?))
    })
    .map(|(o, _)| o)
}

/// As [`kway_cut`], with the engine configuration chosen per `s`.
pub fn kway_cut_with(
    g: &MultiGraph,
    k: usize,
    s: usize,
    config: impl Fn(usize) -> Result<EngineConfig>,
) -> Result<(KwayOutcome, EngineStats)> {
    if k == 0 {
        return Err(Error::InvalidParams("k must be at least 1".into()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if k == 1 {
        return Ok((KwayOutcome::Found(Cut::empty()), EngineStats::default()));
    }
    if k > s + 1 {
        return Ok((KwayOutcome::Pigeonhole, EngineStats::default()));
    }
    let (table, stats) = fpt_powercut_with(g, &[], &config(s)?)?;
    let outcome = match kway_from_table(&table, k)? {
        None => KwayOutcome::Infeasible,
        Some(cut) => {
            let check = verify_cut(g, &cut, k, s);
            if !check.ok {
                return Err(Error::Internal(format!(
                    "reported cut failed verification: {}",
                    check.reason.unwrap_or_default()
                )));
            }
            KwayOutcome::Found(cut)
        }
    };
    Ok((outcome, stats))
}

/// Minimum cut of at most `s` edges splitting every pair, via the engine.
pub fn fpt_pair_cut(
    g: &MultiGraph,
    pairs: &[(VertexId, VertexId)],
    s: usize,
) -> Result<Option<Cut>> {
    let terminals = pair_terminals(pairs)?;
    let table = fpt_powercut(g, &terminals, s)?;
    Ok(best_pair_cut(&table, pairs))
}
