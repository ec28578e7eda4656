use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{DisjointSets, EdgeId, MultiGraph, VertexId};

/// A tree of bags. Node indices are positions in `bags`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    bags: Vec<Vec<VertexId>>,
    tree: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn new(bags: Vec<Vec<VertexId>>, tree: Vec<(usize, usize)>) -> Self {
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        TreeDecomposition { bags, tree }
    }

    pub fn bags(&self) -> &[Vec<VertexId>] {
        &self.bags
    }

    pub fn tree_edges(&self) -> &[(usize, usize)] {
        &self.tree
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    /// Largest bag size minus one.
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(Vec::len)
            .max()
            .unwrap_or(1)
            .saturating_sub(1)
    }

    pub(crate) fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.tree {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotATree,
    UnknownVertex(VertexId),
    UncoveredVertex(VertexId),
    UncoveredEdge(EdgeId),
    DisconnectedOccurrences(VertexId),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotATree => write!(f, "bags do not form a tree"),
            Violation::UnknownVertex(v) => write!(f, "bag holds unknown vertex {v}"),
            Violation::UncoveredVertex(v) => write!(f, "vertex {v} is in no bag"),
            Violation::UncoveredEdge(e) => write!(f, "no bag holds both ends of edge {e}"),
            Violation::DisconnectedOccurrences(v) => {
                write!(f, "bags holding vertex {v} are not connected")
            }
        }
    }
}

impl From<Violation> for Error {
    fn from(v: Violation) -> Self {
        Error::InvalidDecomposition(v.to_string())
    }
}

/// Checks the tree shape, vertex and edge coverage, and that the bags
/// holding each vertex form a subtree. Reports the first violation found.
pub fn validate_decomposition(g: &MultiGraph, td: &TreeDecomposition) -> Result<(), Violation> {
    let n = td.len();
    if n == 0 || td.tree.len() != n - 1 {
        return Err(Violation::NotATree);
    }
    let mut dsu = DisjointSets::new(n);
    for &(a, b) in &td.tree {
        if a >= n || b >= n || !dsu.union(a, b) {
            return Err(Violation::NotATree);
        }
    }
    let mut nodes_with = vec![0usize; g.vertex_space()];
    for bag in &td.bags {
        for &v in bag {
            if !g.contains_vertex(v) || g.resolve(v) != v {
                return Err(Violation::UnknownVertex(v));
            }
            nodes_with[v.index()] += 1;
        }
    }
    for &v in g.vertices() {
        if nodes_with[v.index()] == 0 {
            return Err(Violation::UncoveredVertex(v));
        }
    }
    let sets: Vec<BTreeSet<VertexId>> = td
        .bags
        .iter()
        .map(|b| b.iter().copied().collect())
        .collect();
    for e in g.edges() {
        let (a, b) = g.endpoints(e);
        if !sets.iter().any(|s| s.contains(&a) && s.contains(&b)) {
            return Err(Violation::UncoveredEdge(e));
        }
    }
    // occurrences of v induce a subforest; it is a tree iff it has one
    // edge fewer than nodes
    let mut links = vec![0usize; g.vertex_space()];
    for &(a, b) in &td.tree {
        for v in sets[a].intersection(&sets[b]) {
            links[v.index()] += 1;
        }
    }
    for &v in g.vertices() {
        if links[v.index()] + 1 != nodes_with[v.index()] {
            return Err(Violation::DisconnectedOccurrences(v));
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EliminationRule {
    MinFill,
    MinDegree,
}

/// Decomposition from the min-fill elimination ordering.
pub fn heuristic_tree_decomposition(g: &MultiGraph) -> TreeDecomposition {
    elimination_decomposition(g, EliminationRule::MinFill)
}

/// Eliminates vertices greedily by `rule` (ties by fewer neighbours, then
/// smaller id). Each eliminated vertex contributes the bag of itself and
/// its neighbours at that time, hung below the bag of its earliest
/// eliminated neighbour. Disconnected parts are chained together.
pub fn elimination_decomposition(g: &MultiGraph, rule: EliminationRule) -> TreeDecomposition {
    let nv = g.vertex_space();
    let mut adj: Vec<BTreeSet<VertexId>> = vec![BTreeSet::new(); nv];
    for e in g.edges() {
        let (a, b) = g.endpoints(e);
        adj[a.index()].insert(b);
        adj[b.index()].insert(a);
    }
    let fill = |adj: &[BTreeSet<VertexId>], v: VertexId| -> usize {
        let ns: Vec<VertexId> = adj[v.index()].iter().copied().collect();
        let mut missing = 0;
        for (i, &a) in ns.iter().enumerate() {
            for &b in &ns[i + 1..] {
                if !adj[a.index()].contains(&b) {
                    missing += 1;
                }
            }
        }
        missing
    };
    let mut alive = vec![false; nv];
    let mut score = vec![0usize; nv];
    for &v in g.vertices() {
        alive[v.index()] = true;
        if rule == EliminationRule::MinFill {
            score[v.index()] = fill(&adj, v);
        }
    }
    let mut order = Vec::with_capacity(g.vertex_count());
    let mut bags = Vec::with_capacity(g.vertex_count());
    for _ in 0..g.vertex_count() {
        let v = g
            .vertices()
            .iter()
            .copied()
            .filter(|v| alive[v.index()])
            .min_by_key(|v| {
                let deg = adj[v.index()].len();
                match rule {
                    EliminationRule::MinFill => (score[v.index()], deg, *v),
                    EliminationRule::MinDegree => (deg, 0, *v),
                }
            })
            .expect("a live vertex remains");
        let ns: Vec<VertexId> = adj[v.index()].iter().copied().collect();
        for (i, &a) in ns.iter().enumerate() {
            adj[a.index()].remove(&v);
            for &b in &ns[i + 1..] {
                adj[a.index()].insert(b);
                adj[b.index()].insert(a);
            }
        }
        alive[v.index()] = false;
        adj[v.index()].clear();
        if rule == EliminationRule::MinFill {
            let mut touched: BTreeSet<VertexId> = ns.iter().copied().collect();
            for &a in &ns {
                touched.extend(adj[a.index()].iter().copied());
            }
            for w in touched {
                score[w.index()] = fill(&adj, w);
            }
        }
        let mut bag = ns;
        bag.push(v);
        order.push(v);
        bags.push(bag);
    }
    let mut position = vec![usize::MAX; nv];
    for (i, &v) in order.iter().enumerate() {
        position[v.index()] = i;
    }
    let mut tree = Vec::new();
    let mut roots = Vec::new();
    for (i, bag) in bags.iter().enumerate() {
        let parent = bag
            .iter()
            .map(|v| position[v.index()])
            .filter(|&p| p > i)
            .min();
        match parent {
            Some(p) => tree.push((i, p)),
            None => roots.push(i),
        }
    }
    for w in roots.windows(2) {
        tree.push((w[0], w[1]));
    }
    if bags.is_empty() {
        bags.push(Vec::new());
    }
    TreeDecomposition::new(bags, tree)
}

/// Parses `b <id> <v...>` and `t <id> <id>` lines, with optional `c`
/// comments and an `s td` header. Ids and vertices are 1-based.
pub fn parse_decomposition(text: &str) -> Result<TreeDecomposition> {
    let mut bags: Vec<Option<Vec<VertexId>>> = Vec::new();
    let mut tree = Vec::new();
    let one_based = |tok: &str, line: usize| -> Result<usize> {
        let x: usize = tok
            .parse()
            .map_err(|_| Error::parse(line, format!("expected a number, got {tok:?}")))?;
        x.checked_sub(1)
            .ok_or_else(|| Error::parse(line, "ids are 1-based"))
    };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut toks = raw.split_whitespace();
        match toks.next() {
            None | Some("c") | Some("s") => {}
            Some("b") => {
                let id = one_based(
                    toks.next()
                        .ok_or_else(|| Error::parse(line, "missing bag id"))?,
                    line,
                )?;
                let vs = toks
                    .map(|t| one_based(t, line).map(|v| VertexId(v as u32)))
                    .collect::<Result<Vec<_>>>()?;
                if bags.len() <= id {
                    bags.resize(id + 1, None);
                }
                if bags[id].replace(vs).is_some() {
                    return Err(Error::parse(line, format!("bag {} defined twice", id + 1)));
                }
            }
            Some("t") => {
                let a = toks
                    .next()
                    .ok_or_else(|| Error::parse(line, "missing tree edge end"))?;
                let b = toks
                    .next()
                    .ok_or_else(|| Error::parse(line, "missing tree edge end"))?;
                tree.push((one_based(a, line)?, one_based(b, line)?));
            }
            Some(other) => return Err(Error::parse(line, format!("unknown line type {other:?}"))),
        }
    }
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| {
            b.ok_or_else(|| Error::InvalidDecomposition(format!("bag {} is missing", i + 1)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TreeDecomposition::new(bags, tree))
}

pub fn serialize_decomposition(td: &TreeDecomposition, n: usize) -> String {
    let mut out = format!("s td {} {} {}\n", td.len(), td.width() + 1, n);
    for (i, bag) in td.bags.iter().enumerate() {
        out.push_str(&format!("b {}", i + 1));
        for v in bag {
            out.push_str(&format!(" {}", v.0 + 1));
        }
        out.push('\n');
    }
    for &(a, b) in &td.tree {
        out.push_str(&format!("t {} {}\n", a + 1, b + 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(u32, u32)]) -> MultiGraph {
        MultiGraph::from_edges(n, edges).unwrap()
    }

    fn cycle(n: u32) -> MultiGraph {
        graph(
            n as usize,
            &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>(),
        )
    }

    #[test]
    fn heuristic_widths() {
        let tree = graph(6, &[(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)]);
        let k4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        for (g, w) in [(tree, 1), (k4, 3), (cycle(6), 2)] {
            for rule in [EliminationRule::MinFill, EliminationRule::MinDegree] {
                let td = elimination_decomposition(&g, rule);
                assert_eq!(validate_decomposition(&g, &td), Ok(()));
                assert_eq!(td.width(), w);
            }
        }
    }

    #[test]
    fn violations_are_named() {
        let p3 = graph(3, &[(0, 1), (1, 2)]);
        let v = |i| VertexId(i);
        let ok = TreeDecomposition::new(vec![vec![v(0), v(1)], vec![v(1), v(2)]], vec![(0, 1)]);
        assert_eq!(validate_decomposition(&p3, &ok), Ok(()));
        let no_edge = TreeDecomposition::new(vec![vec![v(0)], vec![v(1), v(2)]], vec![(0, 1)]);
        assert_eq!(
            validate_decomposition(&p3, &no_edge),
            Err(Violation::UncoveredEdge(EdgeId(0)))
        );
        let split = TreeDecomposition::new(
            vec![vec![v(0), v(1)], vec![v(2)], vec![v(1), v(2)]],
            vec![(0, 1), (1, 2)],
        );
        assert_eq!(
            validate_decomposition(&p3, &split),
            Err(Violation::DisconnectedOccurrences(v(1)))
        );
        let cyclic = TreeDecomposition::new(
            vec![vec![v(0), v(1)], vec![v(1), v(2)]],
            vec![(0, 1), (1, 0)],
        );
        assert_eq!(
            validate_decomposition(&p3, &cyclic),
            Err(Violation::NotATree)
        );
        let missing = TreeDecomposition::new(vec![vec![v(0), v(1)]], vec![]);
        assert_eq!(
            validate_decomposition(&p3, &missing),
            Err(Violation::UncoveredVertex(v(2)))
        );
    }

    #[test]
    fn disconnected_parts_are_chained() {
        let g = graph(5, &[(0, 1), (2, 3)]);
        let td = heuristic_tree_decomposition(&g);
        assert_eq!(validate_decomposition(&g, &td), Ok(()));
    }

    #[test]
    fn text_round_trip() {
        let g = cycle(5);
        let td = heuristic_tree_decomposition(&g);
        let text = serialize_decomposition(&td, 5);
        assert_eq!(parse_decomposition(&text).unwrap(), td);
        assert!(parse_decomposition("b 1 0\n").is_err());
        assert!(parse_decomposition("b 2 1\n").is_err());
        assert!(parse_decomposition("x\n").is_err());
    }
}
