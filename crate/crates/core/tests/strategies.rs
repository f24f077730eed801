use chromagame::game::{apply_move, legal_moves, status, GameSpec, GameState, MarkedSelection, Move, MovePrefix, Player};
use chromagame::graph::{enumerate_graphs, independent_partitions, Graph, Partition};
use chromagame::solver::{solve_fixed_k, Winner};
use chromagame::strategies::{
    blank_echo_strategy, copy_breaker_strategy, greedy_strategy, scripted_opening, verify_strategy, Context, Strategy,
};
use chromagame::verify::Verifier;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn copy_breaker_wins_on_three_two_two_partitions() {
    let mut pairs = 0;
    for g in enumerate_graphs(7).unwrap() {
        for p in independent_partitions(&g, 3).unwrap() {
            if p.size_sequence() != [3, 2, 2] {
                continue;
            }
            let big = p.classes().iter().find(|c| c.len() == 3).unwrap();
            let opening = vec![Move::colour(big.first().unwrap(), 1)];
            let strategy = scripted_opening(opening, Box::new(copy_breaker_strategy(Box::new(greedy_strategy(4)))));
            let spec = GameSpec::blanks(g, 4, MarkedSelection::none()).unwrap();
            let verdict = verify_strategy(&spec, Some(&p), &strategy, &MovePrefix::empty()).unwrap();
            assert!(verdict.wins_all_lines, "{g} {:?}: {:?}", p.classes(), verdict.counterexample_trace);
            pairs += 1;
        }
    }
    assert_eq!(pairs, 4251);
}

fn random_selection(g: &Graph, p: &Partition, rng: &mut ChaCha8Rng) -> MarkedSelection {
    let classes = p.classes().iter().copied().filter(|_| rng.gen_bool(0.4)).collect();
    MarkedSelection::new(g, classes).unwrap()
}

/// Random Breaker against each strategy; every Maker move must be legal.
#[test]
fn strategies_only_play_legal_moves() {
    let graphs: Vec<Graph> = (1..=6).flat_map(|n| enumerate_graphs(n).unwrap()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut maker_moves = 0;
    for playout in 0..10_000 {
        let g = *graphs.choose(&mut rng).unwrap();
        let n = g.order();
        let k = rng.gen_range(1..=n);
        let parts = independent_partitions(&g, n).unwrap();
        let p = parts.choose(&mut rng).unwrap();
        let (spec, strategy): (GameSpec, Box<dyn Strategy>) = match playout % 4 {
            0 => (GameSpec::plain(g, k).unwrap(), Box::new(greedy_strategy(k))),
            1 => (
                GameSpec::blanks(g, k, random_selection(&g, p, &mut rng)).unwrap(),
                Box::new(copy_breaker_strategy(Box::new(greedy_strategy(k)))),
            ),
            2 => (
                GameSpec::plain(g, k).unwrap(),
                Box::new(scripted_opening(vec![Move::colour(0, 1)], Box::new(greedy_strategy(k)))),
            ),
            _ => (GameSpec::blanks(g, k, random_selection(&g, p, &mut rng)).unwrap(), Box::new(blank_echo_strategy())),
        };
        let mut state = GameState::initial(&spec);
        let mut trace = Vec::new();
        while !status(&spec, &state).is_terminal() {
            let mv = if state.mover() == Player::Maker {
                let ctx = Context { spec: &spec, state: &state, trace: &trace, partition: Some(p) };
                maker_moves += 1;
                strategy.next_move(&ctx).unwrap()
            } else {
                *legal_moves(&spec, &state).unwrap().choose(&mut rng).unwrap()
            };
            state = apply_move(&spec, &state, mv)
                .unwrap_or_else(|e| panic!("{} played {mv:?} on {g} after {trace:?}: {e}", strategy.name()));
            trace.push(mv);
        }
    }
    assert!(maker_moves > 10_000);
}

#[test]
fn greedy_lemma_up_to_order_six() {
    let report = Verifier::default().check_lemma_greedy(6, 6).unwrap();
    assert!(report.passed, "{}", report.render_text());
    assert!(report.instances > 500);
}

#[test]
fn strategy_wins_imply_solver_wins() {
    for g in enumerate_graphs(5).unwrap() {
        for k in 1..=4 {
            let spec = GameSpec::blanks(g, k, MarkedSelection::none()).unwrap();
            let verdict = verify_strategy(&spec, None, &greedy_strategy(k), &MovePrefix::empty()).unwrap();
            if verdict.wins_all_lines {
                assert_eq!(solve_fixed_k(&spec, &MovePrefix::empty()).unwrap(), Winner::Maker, "{g} k={k}");
            }
        }
    }
}
