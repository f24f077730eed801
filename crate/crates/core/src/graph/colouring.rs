use super::{Graph, GraphError, VertexSet};

/// Full partition enumeration is refused above this order.
pub const PARTITION_ENUMERATION_LIMIT: usize = 8;

/// Exact chromatic number by DSATUR-ordered backtracking, trying palettes of
/// increasing size.
pub fn chromatic_number(g: &Graph) -> usize {
    let n = g.order();
    if g.edge_count() == 0 {
        return 1;
    }
    let mut colour = vec![0usize; n];
    for k in 2..=n {
        if dsatur_colourable(g, k, &mut colour, 0, 0) {
            return k;
        }
    }
    n
}

/// Colours still-uncoloured vertices with at most `k` colours, `colour[v] = 0`
/// meaning uncoloured. `used` is the largest colour in use; new colours are
/// only introduced as `used + 1`, which removes colour permutations.
fn dsatur_colourable(g: &Graph, k: usize, colour: &mut [usize], coloured: usize, used: usize) -> bool {
    let n = g.order();
    if coloured == n {
        return true;
    }
    // Pick the uncoloured vertex with the most distinct neighbour colours,
    // ties broken by uncoloured degree, then lowest index.
    let mut best = None;
    let mut best_key = (0usize, 0usize);
    for v in 0..n {
        if colour[v] != 0 {
            continue;
        }
        let mut seen = 0u64;
        let mut free_deg = 0;
        for u in g.neighbours(v) {
            if colour[u] == 0 {
                free_deg += 1;
            } else {
                seen |= 1 << colour[u];
            }
        }
        let key = (seen.count_ones() as usize, free_deg);
        if best.is_none() || key > best_key {
            best = Some((v, seen));
            best_key = key;
        }
    }
    let (v, seen) = best.expect("an uncoloured vertex exists");
    for c in 1..=k.min(used + 1) {
        if seen >> c & 1 == 1 {
            continue;
        }
        colour[v] = c;
        if dsatur_colourable(g, k, colour, coloured + 1, used.max(c)) {
            colour[v] = 0;
            return true;
        }
    }
    colour[v] = 0;
    false
}

/// An ordered partition of `V(G)` into non-empty independent sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    classes: Vec<VertexSet>,
}

impl Partition {
    pub fn new(g: &Graph, classes: Vec<VertexSet>) -> Result<Self, GraphError> {
        let mut union = VertexSet::EMPTY;
        for (i, &c) in classes.iter().enumerate() {
            if c.is_empty() {
                return Err(GraphError::InvalidParams(format!("class {i} is empty")));
            }
            if !c.is_disjoint(union) {
                return Err(GraphError::InvalidParams(format!("class {i} overlaps an earlier class")));
            }
            if !g.is_independent(c) {
                return Err(GraphError::InvalidParams(format!("class {i} is not independent")));
            }
            union = union.union(c);
        }
        if union != g.vertices() {
            return Err(GraphError::InvalidParams("classes do not cover every vertex".into()));
        }
        Ok(Partition { classes })
    }

    pub fn classes(&self) -> &[VertexSet] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, v: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(v))
    }

    /// Class sizes in non-increasing order.
    pub fn size_sequence(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.classes.iter().map(|c| c.len()).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }
}

/// Every partition of `V(G)` into at most `max_p` independent sets, each once.
///
/// Classes are ordered by their smallest vertex; partitions come out in the
/// order of their restricted-growth strings.
pub fn independent_partitions(g: &Graph, max_p: usize) -> Result<Vec<Partition>, GraphError> {
    let n = g.order();
    if n > PARTITION_ENUMERATION_LIMIT {
        return Err(GraphError::TooLarge { n, limit: PARTITION_ENUMERATION_LIMIT });
    }
    let mut out = Vec::new();
    let mut classes: Vec<VertexSet> = Vec::new();
    grow(g, 0, max_p, &mut classes, &mut out);
    Ok(out)
}

fn grow(g: &Graph, v: usize, max_p: usize, classes: &mut Vec<VertexSet>, out: &mut Vec<Partition>) {
    if v == g.order() {
        out.push(Partition { classes: classes.clone() });
        return;
    }
    let nbrs = g.neighbours(v);
    for i in 0..classes.len() {
        if classes[i].is_disjoint(nbrs) {
            classes[i].insert(v);
            grow(g, v + 1, max_p, classes, out);
            classes[i].remove(v);
        }
    }
    if classes.len() < max_p {
        classes.push(VertexSet::singleton(v));
        grow(g, v + 1, max_p, classes, out);
        classes.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    #[test]
    fn small_chromatic_numbers() {
        assert_eq!(chromatic_number(&generate(&Family::Complete(4)).unwrap()), 4);
        assert_eq!(chromatic_number(&generate(&Family::Cycle(5)).unwrap()), 3);
        assert_eq!(chromatic_number(&generate(&Family::Cycle(6)).unwrap()), 2);
        assert_eq!(chromatic_number(&generate(&Family::Turan(6, 3)).unwrap()), 3);
        assert_eq!(chromatic_number(&generate(&Family::Empty(3)).unwrap()), 1);
        assert_eq!(chromatic_number(&generate(&Family::SeparatingExample).unwrap()), 2);
    }

    #[test]
    fn partitions_of_e2_and_k2() {
        let e2 = generate(&Family::Empty(2)).unwrap();
        let parts = independent_partitions(&e2, 2).unwrap();
        let got: Vec<Vec<VertexSet>> = parts.iter().map(|p| p.classes().to_vec()).collect();
        assert_eq!(
            got,
            vec![vec![VertexSet(0b11)], vec![VertexSet(0b01), VertexSet(0b10)]]
        );
        let k2 = generate(&Family::Complete(2)).unwrap();
        let parts = independent_partitions(&k2, 2).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].classes(), &[VertexSet(0b01), VertexSet(0b10)]);
    }

    /// All set partitions of `0..n` via labelings in `0..n`, normalised by
    /// first occurrence and deduplicated.
    fn set_partitions_bruteforce(n: usize) -> Vec<Vec<VertexSet>> {
        let mut seen = std::collections::BTreeSet::new();
        let total = n.pow(n as u32);
        for mut code in 0..total {
            let mut classes = vec![VertexSet::EMPTY; n];
            for v in 0..n {
                classes[code % n].insert(v);
                code /= n;
            }
            let mut cls: Vec<VertexSet> = classes.into_iter().filter(|c| !c.is_empty()).collect();
            cls.sort_by_key(|c| c.first());
            seen.insert(cls);
        }
        seen.into_iter().collect()
    }

    #[test]
    fn c4_partition_count_matches_bruteforce() {
        let c4 = generate(&Family::Cycle(4)).unwrap();
        let all = set_partitions_bruteforce(4);
        assert_eq!(all.len(), 15);
        let expected = all.iter().filter(|p| p.iter().all(|&c| c4.is_independent(c))).count();
        assert_eq!(independent_partitions(&c4, 4).unwrap().len(), expected);
    }

    #[test]
    fn max_p_limits_class_count() {
        let e3 = generate(&Family::Empty(3)).unwrap();
        assert_eq!(independent_partitions(&e3, 3).unwrap().len(), 5);
        assert_eq!(independent_partitions(&e3, 1).unwrap().len(), 1);
        assert!(independent_partitions(&e3, 2).unwrap().iter().all(|p| p.len() <= 2));
    }

    #[test]
    fn partition_validation() {
        let p4 = generate(&Family::Path(4)).unwrap();
        assert!(Partition::new(&p4, vec![VertexSet(0b0101), VertexSet(0b1010)]).is_ok());
        assert!(Partition::new(&p4, vec![VertexSet(0b0011), VertexSet(0b1100)]).is_err());
        assert!(Partition::new(&p4, vec![VertexSet(0b0101)]).is_err());
        let p = Partition::new(&p4, vec![VertexSet(0b0001), VertexSet(0b1010), VertexSet(0b0100)]).unwrap();
        assert_eq!(p.size_sequence(), vec![2, 1, 1]);
        assert_eq!(p.class_of(3), Some(1));
    }
}
