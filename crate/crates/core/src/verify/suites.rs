use std::collections::BTreeSet;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{display_key, Invariant, Query, TheoremReport, Verifier, VerifyError, WitnessKind};
use crate::game::{
    apply_move, legal_moves, replay_prefix, status, GameSpec, GameState, MarkedSelection, MovePrefix, Play,
};
use crate::graph::{
    canonical_key, enumerate_graphs, equality_exception_predicate, generate, independent_partitions,
    is_turan_2r_r, turan_parts, Family, Graph, Partition, VertexSet, ENUMERATION_LIMIT,
};
use crate::solver::{solve_fixed_k, Winner};
use crate::strategies::{blank_echo_strategy, greedy_strategy, verify_strategy};

fn require(ok: bool, msg: impl FnOnce() -> String) -> Result<(), VerifyError> {
    if ok {
        Ok(())
    } else {
        Err(VerifyError::Range(msg()))
    }
}

fn sets_text(sets: &[VertexSet]) -> String {
    sets.iter()
        .map(|c| c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";")
}

/// Every spanning subgraph of `g` (all edge subsets), optionally excluding `g`.
fn spanning_subgraphs(g: &Graph, proper: bool) -> Vec<Graph> {
    let edges = g.edges();
    let all = 1u64 << edges.len();
    (0..all)
        .filter(|&mask| !proper || mask != all - 1)
        .map(|mask| {
            let chosen = edges.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
            Graph::from_edges(g.order(), chosen).expect("subgraph of a valid graph")
        })
        .collect()
}

/// One representative per isomorphism class, first occurrence kept.
fn distinct_up_to_isomorphism(graphs: Vec<Graph>) -> Result<Vec<Graph>, VerifyError> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for g in graphs {
        if seen.insert(canonical_key(&g)?) {
            out.push(g);
        }
    }
    Ok(out)
}

/// Sub-selections of `classes`, as (selected classes, count).
fn class_subsets(classes: &[VertexSet]) -> impl Iterator<Item = Vec<VertexSet>> + '_ {
    (0u32..1 << classes.len()).map(move |mask| {
        classes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &c)| c)
            .collect()
    })
}

/// A `chi_gb` upper-bound instance.
struct BoundItem {
    graph: Graph,
    marked: MarkedSelection,
    prefix: MovePrefix,
    bound: i64,
    params: String,
    extra: String,
}

impl BoundItem {
    fn simple(graph: Graph, bound: i64, extra: String) -> Self {
        BoundItem {
            graph,
            marked: MarkedSelection::none(),
            prefix: MovePrefix::empty(),
            bound,
            params: String::new(),
            extra,
        }
    }
}

/// Result of a batch of bound checks.
#[derive(Default)]
struct BoundSummary {
    tight: usize,
    max_value: usize,
}

impl Verifier {
    fn check_bounds(&mut self, report: &mut TheoremReport, items: &[BoundItem]) -> Result<BoundSummary, VerifyError> {
        let queries: Vec<Query> = items
            .iter()
            .map(|it| Query::blanks(it.graph, it.marked.clone(), it.prefix.clone()))
            .collect();
        let values = self.evaluate(&queries)?;
        let mut summary = BoundSummary::default();
        for (it, value) in items.iter().zip(values) {
            let extra = if it.extra.is_empty() { String::new() } else { format!(" {}", it.extra) };
            match value {
                None => report.witness(
                    WitnessKind::Failure,
                    it.graph.to_string(),
                    it.params.clone(),
                    format!("chi_gb=none bound={}{extra}", it.bound),
                ),
                Some(v) => {
                    summary.max_value = summary.max_value.max(v);
                    if v as i64 > it.bound {
                        report.witness(
                            WitnessKind::Failure,
                            it.graph.to_string(),
                            it.params.clone(),
                            format!("chi_gb={v} bound={}{extra}", it.bound),
                        );
                    } else if v as i64 == it.bound {
                        summary.tight += 1;
                    }
                }
            }
        }
        report.instances += items.len() as u64;
        Ok(summary)
    }

    fn chi_values(&mut self, graphs: &[Graph], inv: Invariant) -> Result<Vec<usize>, VerifyError> {
        let queries: Vec<Query> = graphs.iter().map(|&g| Query::new(g, inv)).collect();
        Ok(self
            .evaluate(&queries)?
            .into_iter()
            .map(|v| v.expect("plain invariants always have a value"))
            .collect())
    }

    /// `chi_g - chi <= floor(n/2) - 1` over every graph of order `n`.
    pub fn check_basic_bound(&mut self, n: usize) -> Result<TheoremReport, VerifyError> {
        require((2..=ENUMERATION_LIMIT).contains(&n), || format!("basic bound needs 2 <= n <= {ENUMERATION_LIMIT}"))?;
        let start = Instant::now();
        let graphs = enumerate_graphs(n)?;
        let mut report = TheoremReport::new(
            format!("basic-bound n={n}"),
            format!("all {} isomorphism classes of order {n}", graphs.len()),
        );
        let chi = self.chi_values(&graphs, Invariant::Chi)?;
        let chi_g = self.chi_values(&graphs, Invariant::ChiG)?;
        let bound = (n / 2) as i64 - 1;
        let mut max_diff = i64::MIN;
        for ((g, &c), &cg) in graphs.iter().zip(&chi).zip(&chi_g) {
            let diff = cg as i64 - c as i64;
            max_diff = max_diff.max(diff);
            let values = format!("chi={c} chi_g={cg} diff={diff}");
            if diff > bound {
                report.witness(WitnessKind::Failure, g.to_string(), "", values);
            } else if diff == bound {
                report.witness(WitnessKind::Equality, g.to_string(), "", values);
            }
        }
        report.instances = graphs.len() as u64;
        report.notes.push(format!("bound floor(n/2) - 1 = {bound}"));
        report.notes.push(format!("max chi_g - chi = {max_diff}"));
        report.runtime = start.elapsed();
        Ok(report)
    }

    /// Computed equality set of the basic bound against the predicted one.
    pub fn classify_equality(&mut self, n: usize) -> Result<TheoremReport, VerifyError> {
        require((4..=ENUMERATION_LIMIT).contains(&n), || format!("equality classification needs 4 <= n <= {ENUMERATION_LIMIT}"))?;
        let start = Instant::now();
        let graphs = enumerate_graphs(n)?;
        let mut report = TheoremReport::new(
            format!("equality n={n}"),
            format!("all {} isomorphism classes of order {n}", graphs.len()),
        );
        let chi = self.chi_values(&graphs, Invariant::Chi)?;
        let chi_g = self.chi_values(&graphs, Invariant::ChiG)?;
        let bound = (n / 2) as i64 - 1;
        let mut computed = 0;
        for ((g, &c), &cg) in graphs.iter().zip(&chi).zip(&chi_g) {
            let equal = cg as i64 - c as i64 == bound;
            let predicted = equality_exception_predicate(g)?;
            let values = format!("chi={c} chi_g={cg} predicted={predicted}");
            computed += usize::from(equal);
            match (equal, predicted) {
                (true, true) => report.witness(WitnessKind::Equality, g.to_string(), "", values),
                (false, false) => {}
                _ => report.witness(WitnessKind::Failure, g.to_string(), "", values),
            }
        }
        report.instances = graphs.len() as u64;
        report.notes.push(format!("equality set size {computed}"));
        report.runtime = start.elapsed();
        Ok(report)
    }

    /// `chi_gb(G; D) <= p + floor(n/2) - 2` for partitions into `p`
    /// independent sets with `D` some of the classes. Exhaustive for
    /// `n <= 5`, otherwise `budget` instances drawn with `seed`.
    pub fn check_main_theorem(&mut self, n: usize, budget: usize, seed: u64) -> Result<TheoremReport, VerifyError> {
        require((2..=7).contains(&n), || "main theorem check needs 2 <= n <= 7".into())?;
        let start = Instant::now();
        let graphs = enumerate_graphs(n)?;
        let partitions: Vec<Vec<Partition>> =
            graphs.par_iter().map(|g| independent_partitions(g, n)).collect::<Result<_, _>>()?;
        let turan: Vec<bool> = graphs.iter().map(is_turan_2r_r).collect::<Result<_, _>>()?;
        let admissible = |gi: usize, s: usize| s >= 1 || (n >= 6 && !turan[gi]);
        let item = |gi: usize, p: &Partition, d: Vec<VertexSet>| -> Result<BoundItem, VerifyError> {
            let g = graphs[gi];
            let params = format!("C={} D={}", sets_text(p.classes()), sets_text(&d));
            Ok(BoundItem {
                graph: g,
                marked: MarkedSelection::new(&g, d)?,
                prefix: MovePrefix::empty(),
                bound: (p.len() + n / 2) as i64 - 2,
                params,
                extra: format!("p={}", p.len()),
            })
        };
        let mut items = Vec::new();
        let mut report;
        if n <= 5 {
            report = TheoremReport::new(
                format!("main-theorem n={n}"),
                format!("every graph of order {n}, every independent partition, every admissible set of marked classes"),
            );
            for (gi, parts) in partitions.iter().enumerate() {
                for p in parts {
                    for d in class_subsets(p.classes()) {
                        if admissible(gi, d.len()) {
                            items.push(item(gi, p, d)?);
                        }
                    }
                }
            }
        } else {
            report = TheoremReport::new(
                format!("main-theorem n={n}"),
                format!("{budget} sampled (graph, partition, marked classes) instances of order {n}"),
            );
            report.seed = Some(seed);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut attempts = 0;
            while items.len() < budget && attempts < budget.saturating_mul(50).max(100) {
                attempts += 1;
                let gi = rng.gen_range(0..graphs.len());
                let p = partitions[gi].choose(&mut rng).expect("every graph has a partition");
                let mask: u32 = rng.gen_range(0..1u32 << p.len());
                let d: Vec<VertexSet> =
                    p.classes().iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &c)| c).collect();
                if admissible(gi, d.len()) {
                    items.push(item(gi, p, d)?);
                }
            }
            report.notes.push(format!("{attempts} draws for {} admissible instances", items.len()));
            if items.len() < budget {
                report.notes.push(format!("sampling fell short of the budget {budget}"));
            }
        }
        let summary = self.check_bounds(&mut report, &items)?;
        report.notes.push(format!("tight instances: {}", summary.tight));
        report.runtime = start.elapsed();
        Ok(report)
    }

    /// Graphs with at most `ceil(k/2)` vertices of degree `>= k` have
    /// `chi_gb <= k`, and the greedy strategy wins with `k` colours.
    pub fn check_lemma_greedy(&mut self, n_max: usize, k_max: usize) -> Result<TheoremReport, VerifyError> {
        require((1..=7).contains(&n_max), || "greedy check needs 1 <= n_max <= 7".into())?;
        let start = Instant::now();
        let mut report = TheoremReport::new(
            format!("greedy n<={n_max} k<={k_max}"),
            format!("every graph of order at most {n_max} and every k <= {k_max} with at most ceil(k/2) vertices of degree >= k"),
        );
        let mut cases = Vec::new();
        for n in 1..=n_max {
            for g in enumerate_graphs(n)? {
                for k in 0..=k_max {
                    let heavy = (0..n).filter(|&v| g.degree(v) >= k).count();
                    if heavy <= k.div_ceil(2) {
                        cases.push((g, k));
                    }
                }
            }
        }
        let items: Vec<BoundItem> =
            cases.iter().map(|&(g, k)| BoundItem::simple(g, k as i64, format!("k={k}"))).collect();
        self.check_bounds(&mut report, &items)?;
        let outcomes: Vec<(bool, Option<MovePrefix>, u64, Winner)> = cases
            .par_iter()
            .map(|&(g, k)| -> Result<_, VerifyError> {
                let spec = GameSpec::blanks(g, k, MarkedSelection::none())?;
                let verdict = verify_strategy(&spec, None, &greedy_strategy(k), &MovePrefix::empty())?;
                let solver = solve_fixed_k(&spec, &MovePrefix::empty())?;
                Ok((verdict.wins_all_lines, verdict.counterexample_trace, verdict.lines_explored, solver))
            })
            .collect::<Result<_, _>>()?;
        let mut lines = 0;
        for (&(g, k), (wins, trace, explored, solver)) in cases.iter().zip(outcomes) {
            lines += explored;
            if !wins {
                let line = trace.map(|t| t.to_trace().trim_end().replace('\n', "/")).unwrap_or_default();
                report.witness(WitnessKind::Failure, g.to_string(), format!("k={k}"), format!("greedy loses: {line}"));
            } else if solver != Winner::Maker {
                report.witness(WitnessKind::Failure, g.to_string(), format!("k={k}"), "greedy wins but solver says breaker");
            }
        }
        report.notes.push(format!("{} (graph, k) cases, {lines} strategy lines explored", cases.len()));
        report.runtime = start.elapsed();
        Ok(report)
    }

    /// Base cases 1 to 7; see the crate README for the statements.
    pub fn check_lemma_base(&mut self, part: u8) -> Result<TheoremReport, VerifyError> {
        let start = Instant::now();
        let mut report;
        let items: Vec<BoundItem> = match part {
            1 | 2 | 7 => {
                let orders: Vec<usize> = match part {
                    1 => vec![6],
                    2 => vec![7],
                    _ => (2..=5).collect(),
                };
                let mut graphs = Vec::new();
                for &n in &orders {
                    for g in enumerate_graphs(n)? {
                        if part == 1 && is_turan_2r_r(&g)? {
                            continue;
                        }
                        graphs.push(g);
                    }
                }
                report = TheoremReport::new(
                    format!("base part {part}"),
                    match part {
                        1 => "every graph of order 6 except T(6,3): chi_gb <= chi + 1".to_string(),
                        2 => "every graph of order 7: chi_gb <= chi + 1".to_string(),
                        _ => "every graph of order 2 to 5: chi_gb <= chi + floor(n/2) - 1".to_string(),
                    },
                );
                let chi = self.chi_values(&graphs, Invariant::Chi)?;
                graphs
                    .iter()
                    .zip(chi)
                    .map(|(&g, c)| {
                        let slack = if part == 7 { g.order() / 2 - 1 } else { 1 };
                        BoundItem::simple(g, (c + slack) as i64, format!("chi={c}"))
                    })
                    .collect()
            }
            3 => {
                report = TheoremReport::new(
                    "base part 3",
                    "proper spanning subgraphs of T(6,3), up to isomorphism: chi_gb <= 4",
                );
                let graphs = distinct_up_to_isomorphism(spanning_subgraphs(&generate(&Family::Turan(6, 3))?, true))?;
                graphs.into_iter().map(|g| BoundItem::simple(g, 4, String::new())).collect()
            }
            4 => {
                report = TheoremReport::new(
                    "base part 4",
                    "spanning subgraphs of K_{2,4}, up to isomorphism: chi_gb <= 3",
                );
                let graphs =
                    distinct_up_to_isomorphism(spanning_subgraphs(&generate(&Family::CompleteBipartite(2, 4))?, false))?;
                graphs.into_iter().map(|g| BoundItem::simple(g, 3, String::new())).collect()
            }
            5 | 6 => {
                let n = usize::from(part) - 3;
                report = TheoremReport::new(
                    format!("base part {part}"),
                    format!("every graph of order {n}, independent partition and non-empty set of marked classes: chi_gb <= p - 1"),
                );
                let mut items = Vec::new();
                for g in enumerate_graphs(n)? {
                    for p in independent_partitions(&g, n)? {
                        for d in class_subsets(p.classes()).filter(|d| !d.is_empty()) {
                            items.push(BoundItem {
                                graph: g,
                                marked: MarkedSelection::new(&g, d.clone())?,
                                prefix: MovePrefix::empty(),
                                bound: p.len() as i64 - 1,
                                params: format!("C={} D={}", sets_text(p.classes()), sets_text(&d)),
                                extra: format!("p={}", p.len()),
                            });
                        }
                    }
                }
                items
            }
            other => return Err(VerifyError::Range(format!("base part must be 1..=7, got {other}"))),
        };
        let summary = self.check_bounds(&mut report, &items)?;
        report.notes.push(format!("tight instances: {}, largest chi_gb: {}", summary.tight, summary.max_value));
        report.runtime = start.elapsed();
        Ok(report)
    }

    /// `chi_gb(G; D_1..D_s) <= 2r - s - 1` for spanning subgraphs of
    /// `T(2r, r)` with `D` some of the Turán parts, plus the blank-echo
    /// strategy against every Breaker line.
    pub fn check_annotated_turan(&mut self, r_max: usize) -> Result<TheoremReport, VerifyError> {
        require((2..=3).contains(&r_max), || "annotated Turán check needs r_max in 2..=3".into())?;
        let start = Instant::now();
        let mut report = TheoremReport::new(
            format!("annotated-turan r<={r_max}"),
            "every spanning subgraph of T(2r,r) and every set of marked parts, r = 2..=r_max",
        );
        let mut items = Vec::new();
        let mut strategy_cases = Vec::new();
        for r in 2..=r_max {
            let turan = generate(&Family::Turan(2 * r, r))?;
            let parts = turan_parts(2 * r, r)?;
            for g in spanning_subgraphs(&turan, false) {
                for d in class_subsets(&parts) {
                    let s = d.len();
                    let bound = (2 * r - s - 1) as i64;
                    let marked = MarkedSelection::new(&g, d.clone())?;
                    if s >= 1 && (r == 2 || g == turan) {
                        strategy_cases.push((g, marked.clone(), 2 * r - s - 1));
                    }
                    items.push(BoundItem {
                        graph: g,
                        marked,
                        prefix: MovePrefix::empty(),
                        bound,
                        params: format!("D={}", sets_text(&d)),
                        extra: format!("r={r} s={s}"),
                    });
                }
            }
        }
        let summary = self.check_bounds(&mut report, &items)?;
        let verdicts: Vec<_> = strategy_cases
            .par_iter()
            .map(|(g, marked, k)| -> Result<_, VerifyError> {
                let spec = GameSpec::blanks(*g, *k, marked.clone())?;
                Ok(verify_strategy(&spec, None, &blank_echo_strategy(), &MovePrefix::empty())?)
            })
            .collect::<Result<_, _>>()?;
        for ((g, marked, k), verdict) in strategy_cases.iter().zip(verdicts) {
            if !verdict.wins_all_lines {
                let line = verdict
                    .counterexample_trace
                    .map(|t| t.to_trace().trim_end().replace('\n', "/"))
                    .unwrap_or_default();
                report.witness(
                    WitnessKind::Failure,
                    g.to_string(),
                    format!("D={} k={k}", marked.to_text()),
                    format!("blank-echo loses: {line}"),
                );
            }
        }
        report.notes.push(format!("tight instances: {}", summary.tight));
        report.notes.push(format!(
            "blank-echo verified on {} cases (all subgraphs for r = 2, T(6,3) itself for r = 3), s >= 1, k = 2r - s - 1",
            strategy_cases.len()
        ));
        report.runtime = start.elapsed();
        Ok(report)
    }

    /// Inequality `chi_gb(G; E | P) <= chi_gb(G'; D', E') + |X|` on random
    /// instances with `n <= 6` and prefixes of `2t <= 4` moves.
    pub fn check_imagination(&mut self, samples: usize, seed: u64) -> Result<TheoremReport, VerifyError> {
        let start = Instant::now();
        let mut report = TheoremReport::new(
            "imagination",
            format!("{samples} sampled instances, 2 <= n <= 6, t <= 2"),
        );
        report.seed = Some(seed);
        let graphs: Vec<Vec<Graph>> = (0..=6).map(|n| if n < 2 { Ok(Vec::new()) } else { enumerate_graphs(n) }).collect::<Result<_, _>>()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut instances = Vec::new();
        let mut attempts = 0;
        while instances.len() < samples && attempts < samples.saturating_mul(50).max(100) {
            attempts += 1;
            if let Some(inst) = sample_imagination(&graphs, &mut rng)? {
                instances.push(inst);
            }
        }
        let mut queries = Vec::new();
        for inst in &instances {
            queries.push(inst.lhs_query());
            queries.push(inst.rhs_query()?);
        }
        let values = self.evaluate(&queries)?;
        let mut tight = 0;
        for (inst, pair) in instances.iter().zip(values.chunks(2)) {
            let x = inst.used_colours();
            let params = inst.describe();
            match (pair[0], pair[1]) {
                (Some(lhs), Some(rhs)) if lhs <= rhs + x => tight += usize::from(lhs == rhs + x),
                (lhs, rhs) => report.witness(
                    WitnessKind::Failure,
                    inst.graph.to_string(),
                    params,
                    format!("lhs={lhs:?} rhs={rhs:?} |X|={x}"),
                ),
            }
        }
        report.instances = instances.len() as u64;
        report.notes.push(format!("{attempts} draws for {} instances", instances.len()));
        if instances.len() < samples {
            report.notes.push("sampling fell short of the requested count".into());
        }
        report.notes.push(format!("tight instances: {tight}"));
        report.runtime = start.elapsed();
        Ok(report)
    }

    /// Exact `m(T(r^2, r))` against `r(r - 1)`.
    pub fn check_marking(&mut self, r: usize) -> Result<TheoremReport, VerifyError> {
        require((2..=4).contains(&r), || "marking check needs 2 <= r <= 4".into())?;
        let start = Instant::now();
        let n = r * r;
        let g = generate(&Family::Turan(n, r))?;
        let mut report = TheoremReport::new(format!("marking r={r}"), format!("T({n},{r})"));
        let m = self.value(Query::new(g, Invariant::Marking))?.expect("marking number exists");
        let chi = self.value(Query::new(g, Invariant::Chi))?.expect("chromatic number exists");
        let values = format!("m={m} chi={chi} m-chi={} r(r-1)={} r(r-2)={}", m as i64 - chi as i64, r * (r - 1), r * (r - 2));
        let kind = if m >= r * (r - 1) { WitnessKind::Data } else { WitnessKind::Failure };
        report.witness(kind, display_key(&g), "", values);
        report.instances = 1;
        report.runtime = start.elapsed();
        Ok(report)
    }

    /// `(chi, chi_g, chi_gb)` for every graph of order at most `n_max`, the
    /// separating example's values, and every graph with `chi_gb > chi_g`.
    pub fn separation_report(&mut self, n_max: usize) -> Result<TheoremReport, VerifyError> {
        require((1..=7).contains(&n_max), || "separation report needs 1 <= n_max <= 7".into())?;
        let start = Instant::now();
        let mut report = TheoremReport::new(
            format!("separation n<={n_max}"),
            format!("every graph of order at most {n_max}, plus the four-cycle with pendant edge and isolated vertex"),
        );
        let mut graphs = Vec::new();
        for n in 1..=n_max {
            graphs.extend(enumerate_graphs(n)?);
        }
        let example = generate(&Family::SeparatingExample)?;
        graphs.push(example);
        let chi = self.chi_values(&graphs, Invariant::Chi)?;
        let chi_g = self.chi_values(&graphs, Invariant::ChiG)?;
        let blanks: Vec<Query> = graphs.iter().map(|&g| Query::blanks(g, MarkedSelection::none(), MovePrefix::empty())).collect();
        let chi_gb: Vec<usize> = self.evaluate(&blanks)?.into_iter().map(|v| v.expect("chi_gb exists")).collect();
        let last = graphs.len() - 1;
        let mut separated = 0;
        for i in 0..last {
            let (c, cg, cgb) = (chi[i], chi_g[i], chi_gb[i]);
            let values = format!("chi={c} chi_g={cg} chi_gb={cgb}");
            if c > cg || cg > cgb {
                report.witness(WitnessKind::Failure, graphs[i].to_string(), "", format!("ordering violated: {values}"));
            } else if cgb > cg {
                separated += 1;
                report.witness(WitnessKind::Data, graphs[i].to_string(), "", values);
            }
        }
        let triple = (chi[last], chi_g[last], chi_gb[last]);
        report.notes.push(format!(
            "four-cycle + pendant + isolated vertex: (chi, chi_g, chi_gb) = ({}, {}, {})",
            triple.0, triple.1, triple.2
        ));
        if triple != (2, 2, 3) {
            report.witness(
                WitnessKind::Failure,
                example.to_string(),
                "",
                format!("chi={} chi_g={} chi_gb={} expected 2 2 3", triple.0, triple.1, triple.2),
            );
        }
        report.notes.push(format!("{separated} graphs with chi_gb > chi_g"));
        report.instances = graphs.len() as u64;
        report.runtime = start.elapsed();
        Ok(report)
    }
}

/// An instance of the imagination inequality: a board `G` with classes `E`
/// marked for blanks, a prefix `P` of `2t` moves, and sets `D_i` each
/// holding every vertex that `P` gave colour `c_i`.
#[derive(Clone, Debug)]
pub struct ImaginationInstance {
    pub graph: Graph,
    pub e_classes: MarkedSelection,
    pub prefix: MovePrefix,
    /// `(c_i, D_i)` pairs.
    pub d_classes: Vec<(u8, VertexSet)>,
    state: GameState,
}

/// Validates the hypotheses and builds an instance. The prefix is replayed
/// with `n` colours available.
pub fn imagination_instance(
    graph: Graph,
    e_classes: MarkedSelection,
    prefix: MovePrefix,
    d_classes: Vec<(u8, VertexSet)>,
) -> Result<ImaginationInstance, VerifyError> {
    let bad = |msg: String| Err(VerifyError::Range(msg));
    if prefix.len() % 2 == 1 {
        return bad("the prefix must have an even number of moves".into());
    }
    let k = graph.order().max(prefix.max_colour());
    let spec = GameSpec::blanks(graph, k, e_classes.clone())?;
    let state = replay_prefix(&spec, &prefix)?;
    let mut taken = e_classes.union_of(e_classes.all_active());
    let mut colours = BTreeSet::new();
    for &(c, d) in &d_classes {
        if !colours.insert(c) {
            return bad(format!("colour {c} is used for two sets"));
        }
        let coloured = state.coloured_with(c);
        if coloured.is_empty() {
            return bad(format!("colour {c} was not played in the prefix"));
        }
        if d.is_empty() || !coloured.is_subset(d) {
            return bad(format!("set for colour {c} must contain every vertex of that colour"));
        }
        if !graph.is_independent(d) || !d.is_disjoint(taken) || !d.is_subset(graph.vertices()) {
            return bad(format!("set for colour {c} must be independent and disjoint from the other sets"));
        }
        taken = taken.union(d);
    }
    Ok(ImaginationInstance { graph, e_classes, prefix, d_classes, state })
}

impl ImaginationInstance {
    /// `|X|`, the number of distinct colours in the prefix.
    pub fn used_colours(&self) -> usize {
        self.state.used_colours().count_ones() as usize
    }

    /// `G' = G - U` with the reduced classes `D'` then `E'`, empty ones dropped.
    pub fn reduced(&self) -> Result<Option<(Graph, MarkedSelection)>, VerifyError> {
        let keep = self.state.unplayed();
        let Some((g2, old)) = self.graph.induced(keep) else {
            return Ok(None);
        };
        let relabel = |set: VertexSet| -> VertexSet {
            old.iter().enumerate().filter(|(_, &v)| set.contains(v)).map(|(i, _)| i).collect()
        };
        let mut classes: Vec<VertexSet> = self.d_classes.iter().map(|&(_, d)| relabel(d)).collect();
        for (j, &e) in self.e_classes.classes().iter().enumerate() {
            if self.state.is_active(j) {
                classes.push(relabel(e));
            }
        }
        classes.retain(|c| !c.is_empty());
        Ok(Some((g2, MarkedSelection::new(&g2, classes)?)))
    }

    pub fn lhs_query(&self) -> Query {
        Query::blanks(self.graph, self.e_classes.clone(), self.prefix.clone())
    }

    /// Requires at least one unplayed vertex.
    pub fn rhs_query(&self) -> Result<Query, VerifyError> {
        let (g2, marked) = self
            .reduced()?
            .ok_or_else(|| VerifyError::Range("the prefix plays every vertex".into()))?;
        Ok(Query::blanks(g2, marked, MovePrefix::empty()))
    }

    fn describe(&self) -> String {
        let d: Vec<String> = self.d_classes.iter().map(|(c, d)| format!("{c}:{}", sets_text(&[*d]))).collect();
        format!(
            "E={} P={} D={}",
            self.e_classes.to_text(),
            self.prefix.to_trace().trim_end().replace('\n', "/"),
            d.join(";")
        )
    }
}

/// Draws one instance, or `None` if the draw violates a hypothesis.
fn sample_imagination(graphs: &[Vec<Graph>], rng: &mut ChaCha8Rng) -> Result<Option<ImaginationInstance>, VerifyError> {
    let n = rng.gen_range(2..=6);
    let g = *graphs[n].choose(rng).expect("graphs of every order exist");
    let t = rng.gen_range(0..=2usize);
    if 2 * t >= n {
        return Ok(None);
    }
    let parts = independent_partitions(&g, n)?;
    let part = parts.choose(rng).expect("a partition exists");
    let mut e = Vec::new();
    for &c in part.classes() {
        if e.len() < 2 && rng.gen_bool(0.35) {
            e.push(c);
        }
    }
    let e_classes = MarkedSelection::new(&g, e)?;
    let spec = GameSpec::blanks(g, n, e_classes.clone())?;
    let mut state = GameState::initial(&spec);
    let mut moves = Vec::new();
    for _ in 0..2 * t {
        if status(&spec, &state).is_terminal() {
            return Ok(None);
        }
        let fresh = state.used_colours().count_ones() as u8 + 1;
        let options: Vec<_> = legal_moves(&spec, &state)?
            .into_iter()
            .filter(|m| !matches!(m.play, Play::Colour(c) if c > fresh))
            .collect();
        let mv = *options.choose(rng).expect("an ongoing game has moves");
        state = apply_move(&spec, &state, mv)?;
        moves.push(mv);
    }
    let mut taken = e_classes.union_of(e_classes.all_active());
    let mut d_classes = Vec::new();
    let unplayed: Vec<usize> = state.unplayed().iter().collect();
    for c in 1..=state.used_colours().count_ones() as u8 {
        let base = state.coloured_with(c);
        if !rng.gen_bool(0.5) || !base.is_disjoint(taken) {
            continue;
        }
        let mut d = base;
        let mut order = unplayed.clone();
        order.shuffle(rng);
        for v in order {
            if rng.gen_bool(0.5) && !taken.contains(v) && g.neighbours(v).is_disjoint(d) {
                d.insert(v);
            }
        }
        taken = taken.union(d);
        d_classes.push((c, d));
    }
    Ok(Some(imagination_instance(g, e_classes, MovePrefix(moves), d_classes)?))
}
