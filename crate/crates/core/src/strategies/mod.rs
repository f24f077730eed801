//! Executable Maker strategies and an exhaustive-adversary verifier.
//!
//! Wherever a strategy leaves a choice open it takes the lowest vertex index,
//! then the lowest colour.

use std::collections::HashMap;

use thiserror::Error;

use crate::game::{
    apply_move, legal_moves, replay_prefix, status, GameError, GameSpec, GameState, Move, MovePrefix, Play,
    Player, Status, Variant,
};
use crate::graph::{Partition, VertexSet};
use crate::solver::{optimal_move, SolveError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrategyError {
    #[error("this strategy needs a partition of the vertex set")]
    MissingPartition,
    #[error("this strategy does not apply to the {0} variant")]
    VariantMismatch(&'static str),
    #[error("no move available: {0}")]
    NoMove(String),
    #[error("strategy {strategy} proposed {mv:?} after {trace:?}: {reason}")]
    IllegalMove {
        strategy: String,
        trace: Vec<Move>,
        mv: Move,
        reason: String,
    },
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Solver(#[from] SolveError),
}

/// Everything a strategy may look at when choosing Maker's move.
#[derive(Clone, Copy)]
pub struct Context<'a> {
    pub spec: &'a GameSpec,
    pub state: &'a GameState,
    /// All moves so far, prefix included.
    pub trace: &'a [Move],
    pub partition: Option<&'a Partition>,
}

impl Context<'_> {
    /// Breaker's most recent move, if Breaker made the previous move.
    fn breaker_last(&self) -> Option<Move> {
        if self.trace.len().is_multiple_of(2) {
            self.trace.last().copied()
        } else {
            None
        }
    }

    /// Number of Maker moves already made.
    fn maker_turns_taken(&self) -> usize {
        self.state.moves_made().div_ceil(2)
    }
}

/// A deterministic rule for Maker's moves.
pub trait Strategy {
    fn name(&self) -> String;

    fn next_move(&self, ctx: &Context<'_>) -> Result<Move, StrategyError>;

    /// True if the move depends only on the position, not on the trace.
    fn position_determined(&self) -> bool {
        false
    }
}

fn legal_colours(ctx: &Context<'_>, v: usize) -> Vec<u8> {
    let g = ctx.spec.graph();
    let blocked: u64 = g
        .neighbours(v)
        .iter()
        .filter_map(|u| ctx.state.colour_of(u))
        .fold(0, |acc, c| acc | 1 << c);
    (1..=ctx.spec.k() as u8).filter(|&c| blocked >> c & 1 == 0).collect()
}

fn is_unplayed(ctx: &Context<'_>, v: usize) -> bool {
    ctx.state.unplayed().contains(v)
}

/// Lowest-index colourable vertex of `among` with its lowest legal colour.
fn lowest_colour_move(ctx: &Context<'_>, among: VertexSet) -> Option<Move> {
    among
        .iter()
        .filter(|&v| is_unplayed(ctx, v))
        .find_map(|v| legal_colours(ctx, v).first().map(|&c| Move::colour(v, c)))
}

fn first_legal(ctx: &Context<'_>) -> Result<Move, StrategyError> {
    legal_moves(ctx.spec, ctx.state)?
        .into_iter()
        .next()
        .ok_or_else(|| StrategyError::NoMove("no legal move".into()))
}

/// Colours a vertex of degree at least `k` on each of Maker's first
/// `ceil(k/2)` turns, then plays the lowest colourable vertex.
#[derive(Clone, Debug)]
pub struct Greedy {
    pub k: usize,
}

pub fn greedy_strategy(k: usize) -> Greedy {
    Greedy { k }
}

impl Strategy for Greedy {
    fn name(&self) -> String {
        format!("greedy({})", self.k)
    }

    fn next_move(&self, ctx: &Context<'_>) -> Result<Move, StrategyError> {
        if ctx.spec.variant() == Variant::Marking {
            return Err(StrategyError::VariantMismatch("marking"));
        }
        let g = ctx.spec.graph();
        if ctx.maker_turns_taken() < self.k.div_ceil(2) {
            let heavy: VertexSet = g.vertices().iter().filter(|&v| g.degree(v) >= self.k).collect();
            if let Some(mv) = lowest_colour_move(ctx, heavy) {
                return Ok(mv);
            }
        }
        match lowest_colour_move(ctx, g.vertices()) {
            Some(mv) => Ok(mv),
            None => first_legal(ctx),
        }
    }

    fn position_determined(&self) -> bool {
        true
    }
}

/// Plays in the partition class of Breaker's last move: Breaker's colour if
/// it fits, else a colour already used in that class, else an unused colour.
pub struct CopyBreaker {
    pub fallback: Box<dyn Strategy>,
}

pub fn copy_breaker_strategy(fallback: Box<dyn Strategy>) -> CopyBreaker {
    CopyBreaker { fallback }
}

impl CopyBreaker {
    fn copy(&self, ctx: &Context<'_>, partition: &Partition) -> Option<Move> {
        let last = ctx.breaker_last()?;
        let class = partition.classes()[partition.class_of(last.vertex)?];
        let open: Vec<usize> = class.iter().filter(|&v| is_unplayed(ctx, v)).collect();
        if open.is_empty() {
            return None;
        }
        let fits = |c: u8| open.iter().find(|&&v| legal_colours(ctx, v).contains(&c)).map(|&v| Move::colour(v, c));
        if let Play::Colour(c) = last.play {
            if let Some(mv) = fits(c) {
                return Some(mv);
            }
        }
        let mut in_class: Vec<u8> = class.iter().filter_map(|v| ctx.state.colour_of(v)).collect();
        in_class.sort_unstable();
        in_class.dedup();
        if let Some(mv) = in_class.into_iter().find_map(fits) {
            return Some(mv);
        }
        let used = ctx.state.used_colours();
        (1..=ctx.spec.k() as u8).filter(|&c| used >> c & 1 == 0).find_map(fits)
    }
}

impl Strategy for CopyBreaker {
    fn name(&self) -> String {
        format!("copy-breaker({})", self.fallback.name())
    }

    fn next_move(&self, ctx: &Context<'_>) -> Result<Move, StrategyError> {
        let partition = ctx.partition.ok_or(StrategyError::MissingPartition)?;
        if ctx.spec.variant() == Variant::Marking {
            return Err(StrategyError::VariantMismatch("marking"));
        }
        match self.copy(ctx, partition) {
            Some(mv) => Ok(mv),
            None => self.fallback.next_move(ctx),
        }
    }
}

/// Plays fixed moves on Maker's first turns, then hands over. A scripted
/// move that is illegal when its turn comes is skipped.
pub struct Scripted {
    pub opening: Vec<Move>,
    pub then: Box<dyn Strategy>,
}

pub fn scripted_opening(opening: Vec<Move>, then: Box<dyn Strategy>) -> Scripted {
    Scripted { opening, then }
}

impl Strategy for Scripted {
    fn name(&self) -> String {
        format!("scripted({} moves, then {})", self.opening.len(), self.then.name())
    }

    fn next_move(&self, ctx: &Context<'_>) -> Result<Move, StrategyError> {
        if let Some(&mv) = self.opening.get(ctx.maker_turns_taken()) {
            if apply_move(ctx.spec, ctx.state, mv).is_ok() {
                return Ok(mv);
            }
        }
        self.then.next_move(ctx)
    }
}

/// While a marked class is active, blanks in the class of Breaker's last
/// move, or else in the lowest active class; afterwards plays optimally.
#[derive(Clone, Debug, Default)]
pub struct BlankEcho;

pub fn blank_echo_strategy() -> BlankEcho {
    BlankEcho
}

impl Strategy for BlankEcho {
    fn name(&self) -> String {
        "blank-echo".into()
    }

    fn next_move(&self, ctx: &Context<'_>) -> Result<Move, StrategyError> {
        if ctx.spec.variant() != Variant::WithBlanks {
            return Err(StrategyError::VariantMismatch(ctx.spec.variant().name()));
        }
        let marked = ctx.spec.marked();
        let unplayed = ctx.state.unplayed();
        let open_class = |i: usize| ctx.state.is_active(i) && !marked.classes()[i].is_disjoint(unplayed);
        let echo = ctx
            .breaker_last()
            .and_then(|mv| marked.class_containing(mv.vertex))
            .filter(|&i| open_class(i));
        let target = echo.or_else(|| (0..marked.len()).find(|&i| open_class(i)));
        if let Some(i) = target {
            let v = marked.classes()[i].intersection(unplayed).first().expect("class has an unplayed vertex");
            return Ok(Move::blank(v));
        }
        Ok(optimal_move(ctx.spec, ctx.state)?)
    }
}

/// Outcome of checking a strategy against every Breaker reply.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrategyVerdict {
    pub wins_all_lines: bool,
    /// A full game, prefix included, that Breaker wins against the strategy.
    pub counterexample_trace: Option<MovePrefix>,
    pub lines_explored: u64,
}

struct Verifier<'a> {
    spec: &'a GameSpec,
    partition: Option<&'a Partition>,
    strategy: &'a dyn Strategy,
    trace: Vec<Move>,
    lines: u64,
    memo: Option<HashMap<GameState, bool>>,
}

impl Verifier<'_> {
    /// True iff Maker, following the strategy, wins from `state`; on a loss
    /// `self.trace` holds the losing line.
    fn explore(&mut self, state: &GameState) -> Result<bool, StrategyError> {
        match status(self.spec, state) {
            Status::MakerWin => {
                self.lines += 1;
                return Ok(true);
            }
            Status::BreakerWin => {
                self.lines += 1;
                return Ok(false);
            }
            Status::Ongoing => {}
        }
        if let Some(&known) = self.memo.as_ref().and_then(|m| m.get(state)) {
            if known {
                self.lines += 1;
                return Ok(true);
            }
        }
        let won = match state.mover() {
            Player::Maker => {
                let ctx = Context {
                    spec: self.spec,
                    state,
                    trace: &self.trace,
                    partition: self.partition,
                };
                let mv = self.strategy.next_move(&ctx)?;
                let next = apply_move(self.spec, state, mv).map_err(|e| StrategyError::IllegalMove {
                    strategy: self.strategy.name(),
                    trace: self.trace.clone(),
                    mv,
                    reason: e.to_string(),
                })?;
                self.trace.push(mv);
                let won = self.explore(&next)?;
                if won {
                    self.trace.pop();
                }
                won
            }
            Player::Breaker => {
                let mut won = true;
                for mv in legal_moves(self.spec, state)? {
                    let next = apply_move(self.spec, state, mv)?;
                    self.trace.push(mv);
                    if !self.explore(&next)? {
                        won = false;
                        break;
                    }
                    self.trace.pop();
                }
                won
            }
        };
        if let Some(m) = self.memo.as_mut() {
            m.insert(state.clone(), won);
        }
        Ok(won)
    }
}

/// Plays `strategy` for Maker against every Breaker line after `prefix`.
pub fn verify_strategy(
    spec: &GameSpec,
    partition: Option<&Partition>,
    strategy: &dyn Strategy,
    prefix: &MovePrefix,
) -> Result<StrategyVerdict, StrategyError> {
    let state = replay_prefix(spec, prefix)?;
    let mut v = Verifier {
        spec,
        partition,
        strategy,
        trace: prefix.moves().to_vec(),
        lines: 0,
        memo: strategy.position_determined().then(HashMap::new),
    };
    let won = v.explore(&state)?;
    Ok(StrategyVerdict {
        wins_all_lines: won,
        counterexample_trace: (!won).then_some(MovePrefix(v.trace)),
        lines_explored: v.lines,
    })
}
