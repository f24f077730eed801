//! Verification suites over enumerated small graphs, backed by a
//! persistent invariant cache.

mod cache;
mod report;
mod suites;

use std::collections::HashMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::game::{GameError, MarkedSelection, Move, MovePrefix, Play};
use crate::graph::{
    canonical_key, canonical_permutation, chromatic_number, Graph, GraphError, VertexSet, EXHAUSTIVE_CANON_LIMIT,
};
use crate::solver::{game_chromatic, game_chromatic_blanks, marking_number, SolveError};
use crate::strategies::StrategyError;

pub use cache::{CacheError, InvariantCache};
pub use report::{TheoremReport, Witness, WitnessKind, CSV_HEADER};
pub use suites::{imagination_instance, ImaginationInstance};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
    #[error(transparent)]
    Cache(#[from] CacheError),
    #[error("{0}")]
    Range(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Invariant {
    Chi,
    ChiG,
    ChiGb,
    Marking,
}

impl Invariant {
    pub fn name(self) -> &'static str {
        match self {
            Invariant::Chi => "chi",
            Invariant::ChiG => "chi_g",
            Invariant::ChiGb => "chi_gb",
            Invariant::Marking => "m",
        }
    }

    pub fn parse(s: &str) -> Option<Invariant> {
        match s {
            "chi" => Some(Invariant::Chi),
            "chi_g" => Some(Invariant::ChiG),
            "chi_gb" => Some(Invariant::ChiGb),
            "m" | "marking" => Some(Invariant::Marking),
            _ => None,
        }
    }
}

/// One invariant evaluation. Marked classes and prefix only matter for `ChiGb`.
#[derive(Clone, Debug)]
pub struct Query {
    pub graph: Graph,
    pub invariant: Invariant,
    pub marked: MarkedSelection,
    pub prefix: MovePrefix,
}

impl Query {
    pub fn new(graph: Graph, invariant: Invariant) -> Self {
        Query {
            graph,
            invariant,
            marked: MarkedSelection::none(),
            prefix: MovePrefix::empty(),
        }
    }

    pub fn blanks(graph: Graph, marked: MarkedSelection, prefix: MovePrefix) -> Self {
        Query {
            graph,
            invariant: Invariant::ChiGb,
            marked,
            prefix,
        }
    }

    /// Cache key: graph6 of the canonically relabelled graph, invariant name,
    /// and the marked classes and prefix in the new labels.
    fn cache_key(&self) -> Result<(String, String, String), VerifyError> {
        let n = self.graph.order();
        let perm: Vec<usize> = if n <= EXHAUSTIVE_CANON_LIMIT {
            canonical_permutation(&self.graph)?
        } else {
            (0..n).collect()
        };
        let g = self.graph.permuted(&perm);
        let mut params = Vec::new();
        if self.invariant == Invariant::ChiGb {
            if !self.marked.is_empty() {
                let classes: Vec<VertexSet> = self
                    .marked
                    .classes()
                    .iter()
                    .map(|c| c.iter().map(|v| perm[v]).collect())
                    .collect();
                params.push(format!("D={}", MarkedSelection::new(&g, classes)?.to_text()));
            }
            if !self.prefix.is_empty() {
                let moves: Vec<String> = self
                    .prefix
                    .moves()
                    .iter()
                    .map(|m| {
                        let mv = Move { vertex: perm[m.vertex], play: m.play };
                        match mv.play {
                            Play::Colour(c) => format!("{}:{c}", mv.vertex),
                            Play::Blank(None) => format!("{}:b", mv.vertex),
                            Play::Blank(Some(i)) => format!("{}:b{i}", mv.vertex),
                            Play::Mark => format!("{}:m", mv.vertex),
                        }
                    })
                    .collect();
                params.push(format!("P={}", moves.join("/")));
            }
        }
        Ok((g.to_string(), self.invariant.name().to_string(), params.join(" ")))
    }

    fn compute(&self) -> Result<String, VerifyError> {
        let value = match self.invariant {
            Invariant::Chi => Some(chromatic_number(&self.graph)),
            Invariant::ChiG => Some(game_chromatic(&self.graph)),
            Invariant::Marking => Some(marking_number(&self.graph)),
            Invariant::ChiGb => match game_chromatic_blanks(&self.graph, &self.marked, &self.prefix) {
                Ok(v) => Some(v),
                Err(SolveError::NoWinningPalette) => None,
                Err(e) => return Err(e.into()),
            },
        };
        Ok(value.map_or_else(|| "none".to_string(), |v| v.to_string()))
    }
}

fn parse_value(s: &str) -> Option<usize> {
    s.parse().ok()
}

/// Runs suites and evaluates invariants, consulting and filling a cache.
#[derive(Debug, Default)]
pub struct Verifier {
    cache: InvariantCache,
}

impl Verifier {
    pub fn new(cache: InvariantCache) -> Self {
        Verifier { cache }
    }

    pub fn cache(&self) -> &InvariantCache {
        &self.cache
    }

    pub fn into_cache(self) -> InvariantCache {
        self.cache
    }

    /// Values for every query, in order; `None` means no palette size wins.
    /// Missing values are computed in parallel and then recorded in order.
    pub fn evaluate(&mut self, queries: &[Query]) -> Result<Vec<Option<usize>>, VerifyError> {
        let keys: Vec<(String, String, String)> =
            queries.par_iter().map(Query::cache_key).collect::<Result<_, _>>()?;
        let mut first_of: HashMap<&(String, String, String), usize> = HashMap::new();
        let mut missing = Vec::new();
        for (i, key) in keys.iter().enumerate() {
            if self.cache.get(&key.0, &key.1, &key.2).is_none() && !first_of.contains_key(key) {
                first_of.insert(key, i);
                missing.push(i);
            }
        }
        let computed: Vec<String> =
            missing.par_iter().map(|&i| queries[i].compute()).collect::<Result<_, _>>()?;
        for (&i, value) in missing.iter().zip(&computed) {
            let (g, inv, params) = &keys[i];
            self.cache.put(g, inv, params, value)?;
        }
        Ok(keys
            .iter()
            .map(|(g, inv, params)| self.cache.get(g, inv, params).and_then(parse_value))
            .collect())
    }

    /// Convenience for a single query.
    pub fn value(&mut self, query: Query) -> Result<Option<usize>, VerifyError> {
        Ok(self.evaluate(std::slice::from_ref(&query))?[0])
    }
}

/// Canonical graph6 for reports, falling back to the labelled encoding.
pub(crate) fn display_key(g: &Graph) -> String {
    canonical_key(g).map(|k| k.0).unwrap_or_else(|_| g.to_string())
}
