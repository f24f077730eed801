use std::collections::BTreeMap;

use super::{canonical_key, parse_graph6, CanonicalKey, Graph, GraphError};

/// Largest order accepted by [`enumerate_graphs`].
pub const ENUMERATION_LIMIT: usize = 8;

/// One representative per isomorphism class of graphs on `n` vertices.
///
/// Representatives are the canonical labelled forms, ordered by edge count
/// and then by canonical graph6. Classes of order `n` are produced by
/// attaching a new vertex, with every possible neighbourhood, to each class of
/// order `n - 1` and deduplicating by canonical key.
pub fn enumerate_graphs(n: usize) -> Result<Vec<Graph>, GraphError> {
    if n == 0 || n > ENUMERATION_LIMIT {
        return Err(GraphError::InvalidParams(format!(
            "enumeration supports 1 <= n <= {ENUMERATION_LIMIT}, got {n}"
        )));
    }
    let mut level: Vec<Graph> = vec![Graph::empty(1)?];
    for order in 2..=n {
        let mut seen: BTreeMap<(usize, CanonicalKey), Graph> = BTreeMap::new();
        for base in &level {
            let grown = base.with_isolated(1)?;
            let new_vertex = order - 1;
            for nbrs in 0u32..1 << new_vertex {
                let mut g = grown;
                for u in super::VertexSet(nbrs) {
                    g.add_edge(u, new_vertex)?;
                }
                let key = canonical_key(&g)?;
                seen.entry((g.edge_count(), key)).or_insert(g);
            }
        }
        level = seen
            .into_keys()
            .map(|(_, key)| parse_graph6(key.as_str()))
            .collect::<Result<_, _>>()?;
    }
    Ok(level)
}
