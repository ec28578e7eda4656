//! Powercut tables and the exhaustive reference solver.
//!
//! A powercut of `(G, T, s)` stores, for every component count `j <= s + 1`
//! and every partition `P` of the terminals into `j` sets (some possibly
//! empty), a minimum-cardinality cut of at most `s` edges leaving exactly
//! `j` components that split `T` exactly as `P`. Equal-size cuts are broken
//! towards the lexicographically smallest sorted edge-id sequence.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::ops::ControlFlow;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DisjointSets, EdgeId, MultiGraph, VertexId};

/// A partition of a terminal set into `j` sets, of which `j - blocks.len()`
/// are empty. Blocks are sorted internally and ordered by first element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TerminalPartition {
    j: usize,
    blocks: Vec<Vec<VertexId>>,
}

impl TerminalPartition {
    pub fn new(j: usize, blocks: Vec<Vec<VertexId>>) -> Result<Self> {
        let mut blocks: Vec<Vec<VertexId>> = blocks
            .into_iter()
            .filter(|b| !b.is_empty())
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        blocks.sort();
        let mut seen = BTreeSet::new();
        if !blocks.iter().flatten().all(|v| seen.insert(*v)) {
            return Err(Error::InvalidParams("partition blocks overlap".into()));
        }
        if blocks.len() > j {
            return Err(Error::InvalidParams(format!(
                "{} nonempty blocks do not fit in j = {j}",
                blocks.len()
            )));
        }
        Ok(TerminalPartition { j, blocks })
    }

    /// The partition with `j` sets, all empty.
    pub fn empty(j: usize) -> Self {
        TerminalPartition {
            j,
            blocks: Vec::new(),
        }
    }

    /// Groups `terminals` by `label`, in a graph with `j` components.
    pub(crate) fn from_labels(
        j: usize,
        terminals: &[VertexId],
        mut label: impl FnMut(VertexId) -> u32,
    ) -> Self {
        let mut groups: BTreeMap<u32, Vec<VertexId>> = BTreeMap::new();
        for &t in terminals {
            groups.entry(label(t)).or_default().push(t);
        }
        let mut blocks: Vec<Vec<VertexId>> = groups
            .into_values()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        blocks.sort();
        TerminalPartition { j, blocks }
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn blocks(&self) -> &[Vec<VertexId>] {
        &self.blocks
    }

    pub fn empty_blocks(&self) -> usize {
        self.j - self.blocks.len()
    }

    /// Whether `a` and `b` lie in different sets.
    pub fn separates(&self, a: VertexId, b: VertexId) -> bool {
        let block = |v| self.blocks.iter().position(|bl| bl.contains(&v));
        block(a) != block(b)
    }

    /// Every key `(j, P)` with `1 <= j <= s + 1` over `terminals`.
    pub fn all_keys(terminals: &[VertexId], s: usize) -> Vec<TerminalPartition> {
        let terms = canonical_terminals(terminals);
        let mut partitions = Vec::new();
        set_partitions(&terms, &mut partitions);
        let mut keys = Vec::new();
        for j in 1..=s + 1 {
            for p in &partitions {
                if p.len() <= j {
                    keys.push(TerminalPartition {
                        j,
                        blocks: p.clone(),
                    });
                }
            }
        }
        keys.sort();
        keys
    }
}

/// All set partitions of `items` as canonical block lists.
fn set_partitions(items: &[VertexId], out: &mut Vec<Vec<Vec<VertexId>>>) {
    fn go(
        items: &[VertexId],
        idx: usize,
        cur: &mut Vec<Vec<VertexId>>,
        out: &mut Vec<Vec<Vec<VertexId>>>,
    ) {
        if idx == items.len() {
            let mut p = cur.clone();
            p.sort();
            out.push(p);
            return;
        }
        for b in 0..cur.len() {
            cur[b].push(items[idx]);
            go(items, idx + 1, cur, out);
            cur[b].pop();
        }
        cur.push(vec![items[idx]]);
        go(items, idx + 1, cur, out);
        cur.pop();
    }
    go(items, 0, &mut Vec::new(), out);
}

pub(crate) fn canonical_terminals(terminals: &[VertexId]) -> Vec<VertexId> {
    let mut t = terminals.to_vec();
    t.sort_unstable();
    t.dedup();
    t
}

/// A sorted set of edge ids. Cuts order by size, then lexicographically.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Cut {
    edges: Vec<EdgeId>,
}

impl Cut {
    pub fn new(mut edges: Vec<EdgeId>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        Cut { edges }
    }

    pub fn empty() -> Self {
        Cut::default()
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn union(&self, other: &Cut) -> Cut {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Cut::new(edges)
    }
}

impl Ord for Cut {
    fn cmp(&self, other: &Self) -> Ordering {
        self.edges
            .len()
            .cmp(&other.edges.len())
            .then_with(|| self.edges.cmp(&other.edges))
    }
}

impl PartialOrd for Cut {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowercutTable {
    terminals: Vec<VertexId>,
    s: usize,
    entries: BTreeMap<TerminalPartition, Option<Cut>>,
    graph_stamp: u64,
}

impl PowercutTable {
    /// A table with every key present and infeasible.
    pub fn infeasible(terminals: &[VertexId], s: usize, graph_stamp: u64) -> Self {
        let terminals = canonical_terminals(terminals);
        let entries = TerminalPartition::all_keys(&terminals, s)
            .into_iter()
            .map(|k| (k, None))
            .collect();
        PowercutTable {
            terminals,
            s,
            entries,
            graph_stamp,
        }
    }

    pub(crate) fn with_stamp(mut self, graph_stamp: u64) -> Self {
        self.graph_stamp = graph_stamp;
        self
    }

    pub fn terminals(&self) -> &[VertexId] {
        &self.terminals
    }

    pub fn size_bound(&self) -> usize {
        self.s
    }

    pub fn graph_stamp(&self) -> u64 {
        self.graph_stamp
    }

    /// `None` when the key is unknown, `Some(None)` when infeasible.
    pub fn entry(&self, key: &TerminalPartition) -> Option<Option<&Cut>> {
        self.entries.get(key).map(Option::as_ref)
    }

    pub fn get(&self, key: &TerminalPartition) -> Option<&Cut> {
        self.entries.get(key).and_then(Option::as_ref)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TerminalPartition, Option<&Cut>)> {
        self.entries.iter().map(|(k, v)| (k, v.as_ref()))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Keeps the smaller of the stored and offered cut. Returns false for
    /// unknown keys.
    pub fn offer(&mut self, key: &TerminalPartition, cut: Cut) -> bool {
        match self.entries.get_mut(key) {
            Some(slot) => {
                if slot.as_ref().is_none_or(|c| cut < *c) {
                    *slot = Some(cut);
                }
                true
            }
            None => false,
        }
    }

    /// Distinct edges over all stored cuts.
    pub fn distinct_edges(&self) -> BTreeSet<EdgeId> {
        self.entries
            .values()
            .flatten()
            .flat_map(|c| c.edges().iter().copied())
            .collect()
    }

    pub fn feasible_count(&self) -> usize {
        self.entries.values().filter(|c| c.is_some()).count()
    }

    /// Whether both tables store cuts of equal size under every key.
    pub fn same_sizes(&self, other: &PowercutTable) -> bool {
        self.entries.len() == other.entries.len()
            && self.entries.iter().all(|(k, v)| {
                other
                    .entries
                    .get(k)
                    .is_some_and(|w| v.as_ref().map(Cut::len) == w.as_ref().map(Cut::len))
            })
    }
}

/// `sum_{i <= s} C(m, i)`, saturating.
pub fn enumeration_count(m: usize, s: usize) -> u64 {
    let mut total: u64 = 0;
    let mut term: u128 = 1;
    for i in 0..=s.min(m) {
        if i > 0 {
            term = term * (m - i + 1) as u128 / i as u128;
        }
        total = total.saturating_add(term.min(u64::MAX as u128) as u64);
    }
    total
}

/// Upper bound on the distinct edges of a powercut with `terminals`
/// terminals: `s` times the number of keys with `j >= 2`.
pub fn powercut_edge_bound(s: usize, terminals: usize) -> u64 {
    // Stirling numbers of the second kind, row `terminals`.
    let mut row = vec![1u64];
    for n in 1..=terminals {
        let mut next = vec![0u64; n + 1];
        for k in 1..=n {
            let stay = if k < row.len() {
                row[k].saturating_mul(k as u64)
            } else {
                0
            };
            next[k] = stay.saturating_add(row[k - 1]);
        }
        row = next;
    }
    let mut keys: u64 = 0;
    for j in 2..=s + 1 {
        let upto: u64 = row
            .iter()
            .take(j + 1)
            .fold(0u64, |a, &b| a.saturating_add(b));
        keys = keys.saturating_add(upto);
    }
    keys.saturating_mul(s as u64)
}

/// Local, densely indexed copy of a graph used by the enumeration loops.
pub(crate) struct Compact {
    pub n: usize,
    pub edges: Vec<(u32, u32)>,
    pub ids: Vec<EdgeId>,
    index: Vec<u32>,
}

impl Compact {
    pub fn new(g: &MultiGraph) -> Self {
        let mut index = vec![u32::MAX; g.vertex_space()];
        for (i, &v) in g.vertices().iter().enumerate() {
            index[v.index()] = i as u32;
        }
        let ids = g.edge_list();
        let edges = ids
            .iter()
            .map(|&e| {
                let (a, b) = g.endpoints(e);
                (index[a.index()], index[b.index()])
            })
            .collect();
        Compact {
            n: g.vertex_count(),
            edges,
            ids,
            index,
        }
    }

    /// Local index of an original vertex id, after the quotient.
    pub fn local(&self, g: &MultiGraph, v: VertexId) -> u32 {
        self.index[g.resolve(v).index()]
    }

    /// Component roots with the edges at positions `removed` deleted.
    pub fn components(&self, removed: &[usize], dsu: &mut DisjointSets) -> usize {
        *dsu = DisjointSets::new(self.n);
        let mut count = self.n;
        let mut r = 0;
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if r < removed.len() && removed[r] == i {
                r += 1;
                continue;
            }
            if dsu.union(a as usize, b as usize) {
                count -= 1;
            }
        }
        count
    }
}

/// Visits all index subsets of `0..m` with at most `s` elements, by size
/// and then lexicographically.
pub(crate) fn for_each_subset<B>(
    m: usize,
    s: usize,
    mut visit: impl FnMut(&[usize]) -> ControlFlow<B>,
) -> Option<B> {
    for size in 0..=s.min(m) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            if let ControlFlow::Break(b) = visit(&idx) {
                return Some(b);
            }
            // advance to the next combination
            let mut i = size;
            let advanced = loop {
                if i == 0 {
                    break false;
                }
                i -= 1;
                if idx[i] < m - size + i {
                    break true;
                }
            };
            if !advanced {
                break;
            }
            idx[i] += 1;
            for j in i + 1..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    None
}

/// Exhaustive powercut of `(g, terminals, s)`. Terminal ids may be any
/// original vertex ids of `g`; the table is keyed by them as given.
pub fn exhaustive_powercut(
    g: &MultiGraph,
    terminals: &[VertexId],
    s: usize,
) -> Result<PowercutTable> {
    for &t in terminals {
        if !g.contains_vertex(t) {
            return Err(Error::UnknownVertex(t));
        }
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut table = PowercutTable::infeasible(terminals, s, g.stamp());
    let compact = Compact::new(g);
    let terms = table.terminals.clone();
    let local: Vec<u32> = terms.iter().map(|&t| compact.local(g, t)).collect();
    let total = table.entries.len();
    let mut filled = 0;
    let mut dsu = DisjointSets::new(compact.n);
    for_each_subset(compact.edges.len(), s, |subset| {
        let j = compact.components(subset, &mut dsu);
        if j > s + 1 {
            return ControlFlow::Continue(());
        }
        let key = TerminalPartition::from_labels(j, &terms, |t| {
            let i = terms.binary_search(&t).unwrap();
            dsu.find(local[i] as usize) as u32
        });
        if let Some(slot) = table.entries.get_mut(&key) {
            if slot.is_none() {
                *slot = Some(Cut::new(subset.iter().map(|&i| compact.ids[i]).collect()));
                filled += 1;
                if filled == total {
                    return ControlFlow::Break(());
                }
            }
        }
        ControlFlow::Continue(())
    });
    Ok(table)
}

/// The entry `(k, all sets empty)` of a terminal-free table.
pub fn kway_from_table(table: &PowercutTable, k: usize) -> Result<Option<Cut>> {
    if !table.terminals.is_empty() {
        return Err(Error::InvalidParams(
            "k-way extraction needs a terminal-free table".into(),
        ));
    }
    if k > table.s + 1 {
        return Err(Error::Pigeonhole { k, s: table.s });
    }
    if k == 0 {
        return Err(Error::InvalidParams("k must be at least 1".into()));
    }
    Ok(table.get(&TerminalPartition::empty(k)).cloned())
}

/// Smallest cut of at most `s` edges leaving at least `k` components,
/// found by enumeration in increasing size. Works on disconnected graphs.
pub fn min_kway_exhaustive(g: &MultiGraph, k: usize, s: usize) -> Option<Cut> {
    let compact = Compact::new(g);
    let mut dsu = DisjointSets::new(compact.n);
    for_each_subset(compact.edges.len(), s, |subset| {
        if compact.components(subset, &mut dsu) >= k {
            ControlFlow::Break(Cut::new(subset.iter().map(|&i| compact.ids[i]).collect()))
        } else {
            ControlFlow::Continue(())
        }
    })
}

/// Minimum cut over the keys of `table` that separate every pair.
pub fn best_pair_cut(table: &PowercutTable, pairs: &[(VertexId, VertexId)]) -> Option<Cut> {
    table
        .iter()
        .filter(|(k, _)| pairs.iter().all(|&(a, b)| k.separates(a, b)))
        .filter_map(|(_, c)| c.cloned())
        .min()
}

/// Minimum cut of at most `s` edges splitting every pair.
pub fn pair_cut(g: &MultiGraph, pairs: &[(VertexId, VertexId)], s: usize) -> Result<Option<Cut>> {
    let terminals = pair_terminals(pairs)?;
    let table = exhaustive_powercut(g, &terminals, s)?;
    Ok(best_pair_cut(&table, pairs))
}

pub(crate) fn pair_terminals(pairs: &[(VertexId, VertexId)]) -> Result<Vec<VertexId>> {
    let mut terminals = Vec::with_capacity(2 * pairs.len());
    for &(a, b) in pairs {
        if a == b {
            return Err(Error::UnseparablePair(a));
        }
        terminals.push(a);
        terminals.push(b);
    }
    Ok(canonical_terminals(&terminals))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutCheck {
    pub ok: bool,
    pub size: usize,
    pub components: usize,
    pub reason: Option<String>,
}

/// Independent re-validation of a claimed k-way cut.
pub fn verify_cut(g: &MultiGraph, cut: &Cut, k: usize, s: usize) -> CutCheck {
    let size = cut.len();
    if let Some(&e) = cut.edges().iter().find(|&&e| !g.is_live(e)) {
        return CutCheck {
            ok: false,
            size,
            components: 0,
            reason: Some(format!("edge {e} is not live")),
        };
    }
    let components = g.components(cut.edges()).map(|c| c.count()).unwrap_or(0);
    let reason = if size > s {
        Some(format!("{size} edges exceed the bound {s}"))
    } else if components < k {
        Some(format!("{components} components, {k} required"))
    } else {
        None
    };
    CutCheck {
        ok: reason.is_none(),
        size,
        components,
        reason,
    }
}
