use super::{Graph, GraphError, VertexSet, MAX_VERTICES};

/// Named graph families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Empty(usize),
    Complete(usize),
    Path(usize),
    Cycle(usize),
    CompleteBipartite(usize, usize),
    /// `Turan(n, r)`: complete `r`-partite graph on `n` vertices with parts as
    /// equal as possible, larger parts first, in contiguous vertex blocks.
    Turan(usize, usize),
    CompleteMultipartite(Vec<usize>),
    /// `K_{r,r}` minus a perfect matching; left side `0..r`, right `r..2r`,
    /// `i` unmatched with `r + i`.
    KrrMinusMatching(usize),
    TuranMinusEdges {
        n: usize,
        r: usize,
        removed: Vec<(usize, usize)>,
    },
    /// Four-cycle `0-1-2-3` with pendant `4` on vertex `0` and isolated `5`.
    SeparatingExample,
}

fn invalid(msg: impl Into<String>) -> GraphError {
    GraphError::InvalidParams(msg.into())
}

/// Part sizes for the Turán graph `T(n, r)`, larger parts first.
pub(crate) fn turan_sizes(n: usize, r: usize) -> Result<Vec<usize>, GraphError> {
    if r == 0 || n == 0 {
        return Err(invalid("turan needs n >= 1 and r >= 1"));
    }
    if r > n {
        return Err(invalid(format!("turan needs r <= n, got n={n}, r={r}")));
    }
    let (q, rem) = (n / r, n % r);
    Ok((0..r).map(|i| if i < rem { q + 1 } else { q }).collect())
}

/// Contiguous vertex blocks for the given part sizes.
pub(crate) fn blocks(sizes: &[usize]) -> Vec<VertexSet> {
    let mut start = 0;
    sizes
        .iter()
        .map(|&s| {
            let set = VertexSet((VertexSet::full(start + s).bits()) & !VertexSet::full(start).bits());
            start += s;
            set
        })
        .collect()
}

/// Vertex classes of `generate(&Family::Turan(n, r))`.
pub fn turan_parts(n: usize, r: usize) -> Result<Vec<VertexSet>, GraphError> {
    Ok(blocks(&turan_sizes(n, r)?))
}

fn multipartite(sizes: &[usize]) -> Result<Graph, GraphError> {
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(invalid("multipartite sizes must be positive"));
    }
    let n: usize = sizes.iter().sum();
    if n > MAX_VERTICES {
        return Err(invalid(format!("sizes sum to {n} > {MAX_VERTICES}")));
    }
    let parts = blocks(sizes);
    let mut g = Graph::empty(n)?;
    for (i, a) in parts.iter().enumerate() {
        for b in &parts[i + 1..] {
            for u in *a {
                for v in *b {
                    g.add_edge(u, v)?;
                }
            }
        }
    }
    Ok(g)
}

pub fn generate(family: &Family) -> Result<Graph, GraphError> {
    match *family {
        Family::Empty(n) => Graph::empty(n),
        Family::Complete(n) => {
            let mut g = Graph::empty(n)?;
            for v in 0..n {
                for u in 0..v {
                    g.add_edge(u, v)?;
                }
            }
            Ok(g)
        }
        Family::Path(n) => Graph::from_edges(n, (1..n).map(|v| (v - 1, v))),
        Family::Cycle(n) => {
            if n < 3 {
                return Err(invalid("cycle needs n >= 3"));
            }
            Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
        }
        Family::CompleteBipartite(a, b) => multipartite(&[a, b]),
        Family::Turan(n, r) => multipartite(&turan_sizes(n, r)?),
        Family::CompleteMultipartite(ref sizes) => multipartite(sizes),
        Family::KrrMinusMatching(r) => {
            if r == 0 {
                return Err(invalid("k_rr_minus_matching needs r >= 1"));
            }
            let mut g = multipartite(&[r, r])?;
            for i in 0..r {
                g.remove_edge(i, r + i)?;
            }
            Ok(g)
        }
        Family::TuranMinusEdges { n, r, ref removed } => {
            let mut g = multipartite(&turan_sizes(n, r)?)?;
            for &(u, v) in removed {
                if !g.has_edge(u, v) {
                    return Err(invalid(format!("edge {u}-{v} is not in T({n},{r})")));
                }
                g.remove_edge(u, v)?;
            }
            Ok(g)
        }
        Family::SeparatingExample => Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn turan_6_3() {
        let g = generate(&Family::Turan(6, 3)).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.edge_count(), 12);
        for (a, b) in [(0, 1), (2, 3), (4, 5)] {
            assert!(!g.has_edge(a, b));
        }
        assert!(g.has_edge(0, 2) && g.has_edge(1, 5));
    }

    #[test]
    fn turan_larger_parts_first() {
        assert_eq!(turan_sizes(7, 3).unwrap(), vec![3, 2, 2]);
        let g = generate(&Family::Turan(7, 3)).unwrap();
        assert!(!g.has_edge(0, 2) && g.has_edge(2, 3));
        assert!(generate(&Family::Turan(2, 3)).is_err());
        assert!(generate(&Family::Turan(3, 0)).is_err());
    }

    #[test]
    fn separating_example_shape() {
        let g = generate(&Family::SeparatingExample).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.edges(), vec![(0, 1), (1, 2), (0, 3), (2, 3), (0, 4)]);
        assert_eq!(g.degree(5), 0);
    }

    #[test]
    fn krr_minus_matching_3_is_a_six_cycle() {
        let g = generate(&Family::KrrMinusMatching(3)).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.edge_count(), 6);
        assert!((0..6).all(|v| g.degree(v) == 2));
        assert!(g.is_connected());
    }

    #[test]
    fn simple_families() {
        assert_eq!(generate(&Family::Complete(5)).unwrap().edge_count(), 10);
        assert_eq!(generate(&Family::Path(4)).unwrap().edge_count(), 3);
        assert_eq!(generate(&Family::Cycle(5)).unwrap().edge_count(), 5);
        assert!(generate(&Family::Cycle(2)).is_err());
        assert_eq!(generate(&Family::CompleteBipartite(2, 3)).unwrap().edge_count(), 6);
        assert!(generate(&Family::CompleteMultipartite(vec![20, 13])).is_err());
        assert!(generate(&Family::CompleteMultipartite(vec![2, 0])).is_err());
    }

    #[test]
    fn turan_minus_edges_rejects_non_edges() {
        let g = generate(&Family::TuranMinusEdges { n: 6, r: 3, removed: vec![(0, 2)] }).unwrap();
        assert_eq!(g.edge_count(), 11);
        assert!(generate(&Family::TuranMinusEdges { n: 6, r: 3, removed: vec![(0, 1)] }).is_err());
    }
}
