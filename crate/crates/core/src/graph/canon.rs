//! Canonical labelling by exhaustive search.
//!
//! The canonical form is the lexicographically smallest graph6 string over
//! all relabellings that place vertices in non-increasing degree order. That
//! candidate set is closed under isomorphism, so the minimum is a complete
//! invariant; restricting to degree-sorted labellings only shrinks the search.
//! Columns of the graph6 bit string are fixed one at a time, which lets a
//! partial labelling be discarded as soon as its prefix exceeds the best one.

use std::fmt;

use super::{emit_graph6, Graph, GraphError};

/// Exhaustive canonicalisation is refused above this order.
pub const EXHAUSTIVE_CANON_LIMIT: usize = 10;

/// Canonical graph6 string of an isomorphism class.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(pub String);

impl CanonicalKey {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.0)
    }
}

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    /// Required degree at each new label position.
    slot_degree: Vec<usize>,
    /// `order[i]` = original vertex given label `i`.
    order: Vec<usize>,
    used: u32,
    /// Column `i` of the current labelling, bit `i-1-j` set iff labels `j`, `i` adjacent.
    cols: Vec<u32>,
    best_cols: Vec<u32>,
    best_order: Vec<usize>,
    have_best: bool,
}

impl Search<'_> {
    fn run(&mut self, depth: usize) {
        if depth == self.n {
            if !self.have_best || self.cols < self.best_cols {
                self.best_cols.copy_from_slice(&self.cols);
                self.best_order.copy_from_slice(&self.order);
                self.have_best = true;
            }
            return;
        }
        for v in 0..self.n {
            if self.used >> v & 1 == 1 || self.g.degree(v) != self.slot_degree[depth] {
                continue;
            }
            let mut col = 0u32;
            for j in 0..depth {
                if self.g.has_edge(self.order[j], v) {
                    col |= 1 << (depth - 1 - j);
                }
            }
            // The best labelling can change inside the previous sibling's
            // subtree, so the prefix comparison is redone for every candidate.
            if self.have_best
                && self.cols[..depth] == self.best_cols[..depth]
                && col > self.best_cols[depth]
            {
                continue;
            }
            self.order[depth] = v;
            self.cols[depth] = col;
            self.used |= 1 << v;
            self.run(depth + 1);
            self.used &= !(1 << v);
        }
    }
}

/// Canonical labelling permutation: `perm[v]` is the new label of `v`.
pub(crate) fn canonical_permutation(g: &Graph) -> Result<Vec<usize>, GraphError> {
    let n = g.order();
    if n > EXHAUSTIVE_CANON_LIMIT {
        return Err(GraphError::TooLarge { n, limit: EXHAUSTIVE_CANON_LIMIT });
    }
    let mut slot_degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    slot_degree.sort_unstable_by(|a, b| b.cmp(a));
    let mut search = Search {
        g,
        n,
        slot_degree,
        order: vec![0; n],
        used: 0,
        cols: vec![0; n],
        best_cols: vec![0; n],
        best_order: vec![0; n],
        have_best: false,
    };
    search.run(0);
    let mut perm = vec![0; n];
    for (label, &v) in search.best_order.iter().enumerate() {
        perm[v] = label;
    }
    Ok(perm)
}

pub fn canonical_key(g: &Graph) -> Result<CanonicalKey, GraphError> {
    let perm = canonical_permutation(g)?;
    Ok(CanonicalKey(emit_graph6(&g.permuted(&perm))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    #[test]
    fn relabelled_paths_agree() {
        let a = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let b = Graph::from_edges(4, [(1, 3), (3, 0), (0, 2)]).unwrap();
        assert_eq!(canonical_key(&a).unwrap(), canonical_key(&b).unwrap());
    }

    #[test]
    fn empty_and_complete_differ() {
        let e3 = generate(&Family::Empty(3)).unwrap();
        let k3 = generate(&Family::Complete(3)).unwrap();
        assert_ne!(canonical_key(&e3).unwrap(), canonical_key(&k3).unwrap());
    }

    #[test]
    fn same_degree_sequence_not_isomorphic() {
        // C6 and two disjoint triangles are both 2-regular.
        let c6 = generate(&Family::Cycle(6)).unwrap();
        let tt = Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_ne!(canonical_key(&c6).unwrap(), canonical_key(&tt).unwrap());
    }

    #[test]
    fn labelled_graphs_on_four_vertices_give_eleven_keys() {
        // Brute force: all 2^6 labelled graphs on 4 vertices.
        let pairs: Vec<(usize, usize)> = (1..4).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
        let mut keys = std::collections::BTreeSet::new();
        for mask in 0u32..1 << pairs.len() {
            let g = Graph::from_edges(
                4,
                pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e),
            )
            .unwrap();
            keys.insert(canonical_key(&g).unwrap());
        }
        assert_eq!(keys.len(), 11);
    }

    #[test]
    fn canonical_graph_is_a_fixed_point() {
        let g = generate(&Family::SeparatingExample).unwrap();
        let key = canonical_key(&g).unwrap();
        let again = canonical_key(&crate::graph::parse_graph6(key.as_str()).unwrap()).unwrap();
        assert_eq!(key, again);
    }

    #[test]
    fn refuses_large_graphs() {
        let g = Graph::empty(11).unwrap();
        assert!(matches!(canonical_key(&g), Err(GraphError::TooLarge { .. })));
    }
}
