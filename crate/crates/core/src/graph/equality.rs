use std::collections::BTreeSet;
use std::sync::OnceLock;

use super::{canonical_key, generate, CanonicalKey, Family, Graph, GraphError, VertexSet};

/// Whether `g` contains the path on four vertices as a (not necessarily
/// induced) subgraph.
pub fn contains_p4(g: &Graph) -> bool {
    // A P4 is a middle edge b-c with a further neighbour a of b and d of c,
    // all four distinct.
    for (b, c) in g.edges() {
        let left = g.neighbours(b).difference(VertexSet::singleton(c));
        let right = g.neighbours(c).difference(VertexSet::singleton(b));
        for a in left {
            if !right.difference(VertexSet::singleton(a)).is_empty() {
                return true;
            }
        }
    }
    false
}

/// Canonical keys of every connected subgraph of `K_{2,3}` that contains a P4.
pub fn k23_subgraph_keys() -> &'static BTreeSet<CanonicalKey> {
    static KEYS: OnceLock<BTreeSet<CanonicalKey>> = OnceLock::new();
    KEYS.get_or_init(|| {
        let k23 = generate(&Family::CompleteBipartite(2, 3)).expect("K_{2,3} is valid");
        let mut keys = BTreeSet::new();
        for verts in 1u32..1 << 5 {
            let Some((host, _)) = k23.induced(VertexSet(verts)) else { continue };
            let edges = host.edges();
            for mask in 0u32..1 << edges.len() {
                let chosen = edges
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e);
                let g = Graph::from_edges(host.order(), chosen).expect("subgraph of a valid graph");
                if g.is_connected() && contains_p4(&g) {
                    keys.insert(canonical_key(&g).expect("order at most 5"));
                }
            }
        }
        keys
    })
}

/// Whether `g` is isomorphic to `T(2r, r)` for some `r >= 1`.
pub fn is_turan_2r_r(g: &Graph) -> Result<bool, GraphError> {
    let n = g.order();
    if n % 2 == 1 {
        return Ok(false);
    }
    // T(2r, r) is (2r - 2)-regular; cheap rejection before canonicalising.
    if (0..n).any(|v| g.degree(v) != n - 2) {
        return Ok(false);
    }
    let turan = generate(&Family::Turan(n, n / 2))?;
    Ok(canonical_key(g)? == canonical_key(&turan)?)
}

/// The graphs for which `chi_g - chi = floor(n/2) - 1` is expected: order at
/// most 3, `T(2r, r)`, or a connected subgraph of `K_{2,3}` containing a P4.
pub fn equality_exception_predicate(g: &Graph) -> Result<bool, GraphError> {
    if g.order() <= 3 {
        return Ok(true);
    }
    if is_turan_2r_r(g)? {
        return Ok(true);
    }
    if g.order() > 5 {
        return Ok(false);
    }
    Ok(k23_subgraph_keys().contains(&canonical_key(g)?))
}
