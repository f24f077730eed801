//! Small simple graphs stored as one adjacency word per vertex.
//!
//! Everything in the crate works on graphs of at most [`MAX_VERTICES`]
//! vertices, which lets a vertex set be a single `u32`.

mod canon;
mod colouring;
mod enumerate;
mod equality;
mod generators;
mod graph6;

use std::fmt;

use thiserror::Error;

pub use canon::{canonical_key, CanonicalKey, EXHAUSTIVE_CANON_LIMIT};
pub(crate) use canon::canonical_permutation;
pub use colouring::{
    chromatic_number, independent_partitions, Partition, PARTITION_ENUMERATION_LIMIT,
};
pub use enumerate::{enumerate_graphs, ENUMERATION_LIMIT};
pub use equality::{contains_p4, equality_exception_predicate, is_turan_2r_r, k23_subgraph_keys};
pub use generators::{generate, turan_parts, Family};
pub use graph6::{emit_graph6, parse_graph6};

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph order {0} is outside 1..={MAX_VERTICES}")]
    InvalidOrder(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("malformed graph6 header byte {0:#04x}")]
    MalformedHeader(u8),
    #[error("graph6 long form (n > 62) is not supported")]
    LongForm,
    #[error("graph6 body byte {0:#04x} is outside the printable range")]
    MalformedBody(u8),
    #[error("graph6 body truncated: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("graph6 body has {found} bytes, expected {expected}")]
    TrailingBytes { expected: usize, found: usize },
    #[error("graph6 padding bits are not zero")]
    NonZeroPadding,
    #[error("graph6 encodes {0} vertices, capacity is {MAX_VERTICES}")]
    Capacity(usize),
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
    #[error("operation supports at most {limit} vertices, graph has {n}")]
    TooLarge { n: usize, limit: usize },
    #[error("edge list: {0}")]
    EdgeList(String),
}

/// A set of vertices `< 32`, one bit per vertex.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u32);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 32 {
            VertexSet(u32::MAX)
        } else {
            VertexSet((1u32 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < 32 && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << v);
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Lowest member, if any.
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;
    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
#[derive(Clone)]
pub struct VertexIter(u32);

impl Iterator for VertexIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for VertexIter {}

/// A finite simple undirected graph on vertices `0..n`, `1 <= n <= 32`.
///
/// Unused adjacency words are always zero, so the derived equality is
/// labelled graph equality.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: [u32; MAX_VERTICES],
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n == 0 || n > MAX_VERTICES {
            return Err(GraphError::InvalidOrder(n));
        }
        Ok(Graph {
            n,
            adj: [0; MAX_VERTICES],
        })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from raw adjacency words, checking every invariant.
    pub fn from_adjacency(adj: &[u32]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(adj.len())?;
        let n = adj.len();
        for (v, &row) in adj.iter().enumerate() {
            if n < 32 && row >> n != 0 {
                let vertex = (32 - (row >> n).leading_zeros()) as usize + n - 1;
                return Err(GraphError::VertexOutOfRange { vertex, n });
            }
            if row >> v & 1 == 1 {
                return Err(GraphError::SelfLoop(v));
            }
            for u in VertexSet(row) {
                if adj[u] >> v & 1 == 0 {
                    return Err(GraphError::InvalidParams(format!(
                        "adjacency not symmetric at ({v}, {u})"
                    )));
                }
            }
            g.adj[v] = row;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
        Ok(())
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn neighbours(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    /// Adjacency words for vertices `0..n`.
    #[inline]
    pub fn adjacency(&self) -> &[u32] {
        &self.adj[..self.n]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency().iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, ordered by `v` then `u`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for v in 0..self.n {
            for u in 0..v {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_independent(&self, set: VertexSet) -> bool {
        set.iter().all(|v| self.adj[v] & set.0 == 0)
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = VertexSet::singleton(0);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier {
                next = next.union(self.neighbours(v));
            }
            frontier = next.difference(seen);
            seen = seen.union(next);
        }
        seen == self.vertices()
    }

    /// The graph induced on `keep`, relabelled to `0..|keep|` in increasing
    /// order. Returns `None` for an empty vertex set.
    pub fn induced(&self, keep: VertexSet) -> Option<(Graph, Vec<usize>)> {
        let old: Vec<usize> = keep.intersection(self.vertices()).iter().collect();
        if old.is_empty() {
            return None;
        }
        let mut g = Graph::empty(old.len()).ok()?;
        for (i, &u) in old.iter().enumerate() {
            for (j, &v) in old.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.adj[i] |= 1 << j;
                    g.adj[j] |= 1 << i;
                }
            }
        }
        Some((g, old))
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length must equal order");
        let mut g = Graph {
            n: self.n,
            adj: [0; MAX_VERTICES],
        };
        for (u, v) in self.edges() {
            g.adj[perm[u]] |= 1 << perm[v];
            g.adj[perm[v]] |= 1 << perm[u];
        }
        g
    }

    /// Disjoint union with `extra` isolated vertices appended.
    pub fn with_isolated(&self, extra: usize) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(self.n + extra)?;
        g.adj[..self.n].copy_from_slice(self.adjacency());
        Ok(g)
    }

    /// Parses the `u v` per line edge-list format. An optional first line
    /// holding a single integer fixes the vertex count; otherwise it is one
    /// more than the largest vertex mentioned. `#` starts a comment.
    pub fn from_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut order = None;
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let parse = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| GraphError::EdgeList(format!("line {}: bad integer {s:?}", lineno + 1)))
            };
            match fields.as_slice() {
                [n] if edges.is_empty() && order.is_none() => order = Some(parse(n)?),
                [u, v] => edges.push((parse(u)?, parse(v)?)),
                _ => {
                    return Err(GraphError::EdgeList(format!(
                        "line {}: expected \"u v\"",
                        lineno + 1
                    )))
                }
            }
        }
        let n = match order {
            Some(n) => n,
            None => edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0),
        };
        Graph::from_edges(n, edges)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({} {:?})", emit_graph6(self), self.edges())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&emit_graph6(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_set_basics() {
        let s: VertexSet = [0, 3, 5].into_iter().collect();
        assert_eq!(s.len(), 3);
        assert!(s.contains(3) && !s.contains(4));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 3, 5]);
        assert_eq!(s.first(), Some(0));
        assert_eq!(VertexSet::full(32).len(), 32);
    }

    #[test]
    fn invalid_orders_rejected() {
        assert_eq!(Graph::empty(0), Err(GraphError::InvalidOrder(0)));
        assert_eq!(Graph::empty(33), Err(GraphError::InvalidOrder(33)));
        assert!(Graph::empty(32).is_ok());
    }

    #[test]
    fn edge_validation() {
        let mut g = Graph::empty(3).unwrap();
        assert_eq!(g.add_edge(1, 1), Err(GraphError::SelfLoop(1)));
        assert!(matches!(g.add_edge(0, 3), Err(GraphError::VertexOutOfRange { .. })));
        g.add_edge(0, 2).unwrap();
        assert!(g.has_edge(2, 0));
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn from_adjacency_checks_symmetry() {
        assert!(Graph::from_adjacency(&[0b10, 0b00]).is_err());
        assert!(Graph::from_adjacency(&[0b10, 0b01]).is_ok());
        assert_eq!(Graph::from_adjacency(&[0b01]), Err(GraphError::SelfLoop(0)));
    }

    #[test]
    fn induced_subgraph_relabels() {
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let (h, map) = p4.induced([1, 2, 3].into_iter().collect()).unwrap();
        assert_eq!(map, vec![1, 2, 3]);
        assert_eq!(h.edges(), vec![(0, 1), (1, 2)]);
        assert!(p4.induced(VertexSet::EMPTY).is_none());
    }

    #[test]
    fn connectivity() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(!g.is_connected());
        assert!(Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap().is_connected());
    }

    #[test]
    fn edge_list_format() {
        let g = Graph::from_edge_list("# a path\n0 1\n1 2\n").unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.edge_count(), 2);
        let h = Graph::from_edge_list("5\n0 1\n").unwrap();
        assert_eq!(h.order(), 5);
        assert!(Graph::from_edge_list("0 1 2\n").is_err());
    }
}
