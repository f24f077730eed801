//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use chromagame::game::{apply_move, legal_moves, status, GameSpec, GameState, MarkedSelection, MovePrefix, Player, Status};
use chromagame::graph::{
    canonical_key, emit_graph6, enumerate_graphs, generate, independent_partitions, parse_graph6, turan_parts, Family,
    Graph, VertexSet,
};
use chromagame::solver::{game_chromatic_blanks, win_profile, Solver};
use chromagame::strategies::{blank_echo_strategy, verify_strategy};
use chromagame::verify::{TheoremReport, Verifier, WitnessKind};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn(&mut Verifier) -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn passed(report: &TheoremReport) -> Result<(), String> {
    ensure(report.passed, || report.render_text())
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took <= limit, || format!("took {took:?}, limit {limit:?}"))
}

fn key(g: &Graph) -> String {
    canonical_key(g).unwrap().0
}

fn equality_keys(report: &TheoremReport) -> Vec<String> {
    report
        .witnesses_of(WitnessKind::Equality)
        .map(|w| key(&parse_graph6(&w.graph6).unwrap()))
        .collect()
}

fn basic_bound(v: &mut Verifier) -> Outcome {
    let start = Instant::now();
    let mut graphs = 0;
    for n in 2..=6 {
        let r = v.check_basic_bound(n).map_err(|e| e.to_string())?;
        passed(&r)?;
        graphs += r.instances;
    }
    ensure(graphs == 207, || format!("{graphs} graphs instead of 207"))?;
    within(start, Duration::from_secs(600))?;
    Ok(format!("207 graphs, {:?}", start.elapsed()))
}

fn equality(v: &mut Verifier) -> Outcome {
    let mut sizes = Vec::new();
    for n in 4..=6 {
        let r = v.classify_equality(n).map_err(|e| e.to_string())?;
        passed(&r)?;
        let keys = equality_keys(&r);
        if n == 5 {
            let k23 = key(&generate(&Family::CompleteBipartite(2, 3)).unwrap());
            ensure(keys.contains(&k23), || "K_{2,3} missing from the n=5 equality set".into())?;
        }
        if n == 6 {
            let t63 = key(&generate(&Family::Turan(6, 3)).unwrap());
            ensure(keys == [t63], || format!("n=6 equality set {keys:?}"))?;
        }
        sizes.push(format!("n={n}: {}", keys.len()));
    }
    Ok(format!("equality sets match ({})", sizes.join(", ")))
}

fn extended_order_seven(v: &mut Verifier) -> Outcome {
    let start = Instant::now();
    let r = v.check_basic_bound(7).map_err(|e| e.to_string())?;
    passed(&r)?;
    ensure(r.instances == 1044, || format!("{} graphs", r.instances))?;
    let max_one = r.notes.iter().any(|n| n == "max chi_g - chi = 1");
    ensure(max_one, || format!("{:?}", r.notes))?;
    within(start, Duration::from_secs(7200))?;
    Ok(format!("1044 graphs, max chi_g - chi = 1, {:?}", start.elapsed()))
}

fn separation_example(v: &mut Verifier) -> Outcome {
    let r = v.separation_report(6).map_err(|e| e.to_string())?;
    passed(&r)?;
    let note = r.notes.iter().find(|n| n.contains("(2, 2, 3)"));
    ensure(note.is_some(), || format!("{:?}", r.notes))?;
    Ok("(chi, chi_g, chi_gb) = (2, 2, 3)".into())
}

fn degenerate_marked(v: &mut Verifier) -> Outcome {
    for n in 1..=6 {
        let g = Graph::empty(n).unwrap();
        let all = MarkedSelection::new(&g, vec![g.vertices()]).unwrap();
        let value = game_chromatic_blanks(&g, &all, &MovePrefix::empty()).map_err(|e| e.to_string())?;
        ensure(value == 0, || format!("E_{n} with V marked: {value}"))?;
    }
    let e2 = Graph::empty(2).unwrap();
    let one = MarkedSelection::new(&e2, vec![VertexSet::singleton(0)]).unwrap();
    let value = game_chromatic_blanks(&e2, &one, &MovePrefix::empty()).map_err(|e| e.to_string())?;
    ensure(value == 1, || format!("E_2 with one vertex marked: {value}"))?;
    for part in [5, 6] {
        passed(&v.check_lemma_base(part).map_err(|e| e.to_string())?)?;
    }
    Ok("edgeless with V marked = 0, E_2 with {x} = 1, orders 2 and 3 within p - 1".into())
}

fn greedy(v: &mut Verifier) -> Outcome {
    let start = Instant::now();
    let r = v.check_lemma_greedy(6, 6).map_err(|e| e.to_string())?;
    passed(&r)?;
    within(start, Duration::from_secs(900))?;
    Ok(format!("{} (graph, k) cases, {:?}", r.instances, start.elapsed()))
}

fn annotated_turan(v: &mut Verifier) -> Outcome {
    let r = v.check_annotated_turan(3).map_err(|e| e.to_string())?;
    passed(&r)?;
    let t42 = generate(&Family::Turan(4, 2)).unwrap();
    let parts = turan_parts(4, 2).unwrap();
    for classes in [vec![parts[0]], vec![parts[1]], parts.clone()] {
        let s = classes.len();
        let marked = MarkedSelection::new(&t42, classes).unwrap();
        let spec = GameSpec::blanks(t42, 3 - s, marked).unwrap();
        let verdict = verify_strategy(&spec, None, &blank_echo_strategy(), &MovePrefix::empty()).map_err(|e| e.to_string())?;
        ensure(verdict.wins_all_lines, || format!("blank-echo loses on T(4,2), s={s}: {:?}", verdict.counterexample_trace))?;
    }
    Ok(format!("{} instances; blank-echo wins on T(4,2) for s = 1, 2", r.instances))
}

fn base_three_four(v: &mut Verifier) -> Outcome {
    let three = v.check_lemma_base(3).map_err(|e| e.to_string())?;
    passed(&three)?;
    let four = v.check_lemma_base(4).map_err(|e| e.to_string())?;
    passed(&four)?;
    Ok(format!(
        "{} subgraphs of T(6,3) within 4, {} subgraphs of K_{{2,4}} within 3",
        three.instances, four.instances
    ))
}

fn main_theorem(v: &mut Verifier) -> Outcome {
    let mut exhaustive = 0;
    for n in 2..=5 {
        let r = v.check_main_theorem(n, 0, 1).map_err(|e| e.to_string())?;
        passed(&r)?;
        exhaustive += r.instances;
    }
    let sampled = v.check_main_theorem(6, 500, 1).map_err(|e| e.to_string())?;
    passed(&sampled)?;
    ensure(sampled.instances >= 500, || format!("only {} samples", sampled.instances))?;
    Ok(format!("{exhaustive} exhaustive instances, {} samples at n = 6 (seed 1)", sampled.instances))
}

fn imagination(v: &mut Verifier) -> Outcome {
    let r = v.check_imagination(200, 1).map_err(|e| e.to_string())?;
    passed(&r)?;
    ensure(r.instances >= 100, || format!("only {} instances", r.instances))?;
    Ok(format!("{} instances (seed 1)", r.instances))
}

fn marking(v: &mut Verifier) -> Outcome {
    let start = Instant::now();
    let mut values = Vec::new();
    for r in [2, 3] {
        let report = v.check_marking(r).map_err(|e| e.to_string())?;
        passed(&report)?;
        values.push(report.witnesses[0].values.clone());
    }
    within(start, Duration::from_secs(60))?;
    Ok(values.join("; "))
}

/// Plain minimax over the rules engine.
fn naive_maker_wins(spec: &GameSpec, state: &GameState) -> bool {
    match status(spec, state) {
        Status::MakerWin => true,
        Status::BreakerWin => false,
        Status::Ongoing => {
            let maker = state.mover() == Player::Maker;
            let any = legal_moves(spec, state)
                .unwrap()
                .into_iter()
                .any(|mv| naive_maker_wins(spec, &apply_move(spec, state, mv).unwrap()) == maker);
            any == maker
        }
    }
}

fn properties(v: &mut Verifier) -> Outcome {
    let start = Instant::now();
    // k-monotonicity of the blanks game.
    let mut profiles = 0;
    for n in 1..=6 {
        for g in enumerate_graphs(n).unwrap() {
            let spec = GameSpec::blanks(g, 0, MarkedSelection::none()).unwrap();
            let profile = win_profile(&spec, &MovePrefix::empty()).map_err(|e| e.to_string())?;
            ensure(profile.is_upward_closed(), || format!("{g}: {:?}", profile.profile))?;
            profiles += 1;
        }
    }
    // chi <= chi_g <= chi_gb.
    passed(&v.separation_report(6).map_err(|e| e.to_string())?)?;
    // Marking classes never hurts Maker.
    let mut marked_cases = 0;
    for n in 1..=5 {
        for g in enumerate_graphs(n).unwrap() {
            let bare = game_chromatic_blanks(&g, &MarkedSelection::none(), &MovePrefix::empty()).unwrap();
            for p in independent_partitions(&g, n).unwrap() {
                let sel = MarkedSelection::new(&g, p.classes().to_vec()).unwrap();
                let marked = game_chromatic_blanks(&g, &sel, &MovePrefix::empty()).unwrap();
                ensure(marked <= bare, || format!("{g} {}: {marked} > {bare}", sel.to_text()))?;
                marked_cases += 1;
            }
        }
    }
    // Memoized solver against naive minimax.
    let mut oracle_cases = 0;
    for n in 1..=4 {
        for g in enumerate_graphs(n).unwrap() {
            let parts = independent_partitions(&g, n).unwrap();
            for k in 0..=n {
                let mut specs = vec![GameSpec::plain(g, k).unwrap(), GameSpec::marking(g, k).unwrap()];
                specs.push(GameSpec::blanks(g, k, MarkedSelection::none()).unwrap());
                for p in &parts {
                    specs.push(GameSpec::blanks(g, k, MarkedSelection::new(&g, p.classes().to_vec()).unwrap()).unwrap());
                }
                for spec in specs {
                    let init = GameState::initial(&spec);
                    let fast = Solver::new(&spec).maker_wins(&init);
                    ensure(fast == naive_maker_wins(&spec, &init), || format!("{g} k={k} {:?}", spec.variant()))?;
                    oracle_cases += 1;
                }
            }
        }
    }
    // graph6 round trips and label-independent keys.
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut relabelled = 0;
    for n in 1..=7 {
        for g in enumerate_graphs(n).unwrap() {
            ensure(parse_graph6(&emit_graph6(&g)).ok() == Some(g), || format!("{g} does not round-trip"))?;
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let h = g.permuted(&perm);
            ensure(key(&g) == key(&h), || format!("{g} and {h} get different keys"))?;
            relabelled += 1;
        }
    }
    within(start, Duration::from_secs(600))?;
    Ok(format!(
        "{profiles} profiles, {marked_cases} marked cases, {oracle_cases} oracle specs, {relabelled} round trips, {:?}",
        start.elapsed()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("basic bound, 2 <= n <= 6", basic_bound),
        ("equality classification, n = 4, 5, 6", equality),
        ("order 7 difference at most 1", extended_order_seven),
        ("separating example values", separation_example),
        ("degenerate marked classes", degenerate_marked),
        ("greedy degree condition", greedy),
        ("annotated Turan bound and blank-echo", annotated_turan),
        ("subgraphs of T(6,3) and K_{2,4}", base_three_four),
        ("marked-class bound, exhaustive and sampled", main_theorem),
        ("imagination inequality", imagination),
        ("marking game on T(r^2, r)", marking),
        ("property suites", properties),
    ];
    let mut verifier = Verifier::default();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(|| check(&mut verifier)))
            .unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {}", i + 1, why.trim_end().replace('\n', " | "));
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
