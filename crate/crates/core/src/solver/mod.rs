//! Exact game values by memoized AND/OR search.
//!
//! Positions are keyed with colours relabelled by first appearance, so
//! positions that differ only by a permutation of colour ids share a memo
//! entry. Move generation likewise tries only one representative unused
//! colour. Tables are per palette size and the key omits the mover, which is
//! determined by the number of played vertices.

use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::game::{
    self, replay_prefix, Cell, GameError, GameSpec, GameState, Move, MovePrefix, Player, Variant,
};
use crate::graph::{canonical_key, Graph, EXHAUSTIVE_CANON_LIMIT};

/// Default bound on memo entries per table.
pub const DEFAULT_MEMO_CAP: usize = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("no palette size lets Maker win after this prefix")]
    NoWinningPalette,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Winner {
    Maker,
    Breaker,
}

impl Winner {
    pub fn name(self) -> &'static str {
        match self {
            Winner::Maker => "maker",
            Winner::Breaker => "breaker",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub memo_hits: u64,
    pub distinct_states: u64,
}

impl SearchStats {
    fn absorb(&mut self, other: SearchStats) {
        self.nodes += other.nodes;
        self.memo_hits += other.memo_hits;
        self.distinct_states += other.distinct_states;
    }
}

/// Win/lose per palette size, the least winning size, and search totals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    /// `profile[k]` is true iff Maker wins with `k` colours.
    pub profile: Vec<bool>,
    pub value: Option<usize>,
    pub stats: SearchStats,
}

impl SolveResult {
    /// Whether the profile never goes from win back to loss.
    pub fn is_upward_closed(&self) -> bool {
        self.profile.windows(2).all(|w| !w[0] || w[1])
    }
}

/// Colour-normalised position identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalStateKey([u64; 4]);

const UNPLAYED: u8 = 0;
const BLANK: u8 = 62;
const MARK: u8 = 63;

#[derive(Clone, Copy)]
struct Node {
    /// 0 unplayed, colour id, `BLANK` or `MARK`.
    cells: [u8; 32],
    unplayed: u32,
    /// Active classes that still have unplayed vertices.
    active: u32,
    moves: u32,
}

impl Node {
    fn maker_to_move(&self) -> bool {
        self.moves.is_multiple_of(2)
    }
}

/// A search instance for one rules variant and palette size.
pub struct Solver {
    n: usize,
    adj: [u32; 32],
    variant: Variant,
    k: usize,
    classes: Vec<u32>,
    memo: FxHashMap<CanonicalStateKey, bool>,
    memo_cap: usize,
    stats: SearchStats,
}

impl Solver {
    pub fn new(spec: &GameSpec) -> Solver {
        Solver::with_memo_cap(spec, DEFAULT_MEMO_CAP)
    }

    /// Past `cap` entries the table stops growing and search continues unmemoized.
    pub fn with_memo_cap(spec: &GameSpec, cap: usize) -> Solver {
        let g = spec.graph();
        let mut adj = [0u32; 32];
        for (v, a) in adj.iter_mut().enumerate().take(g.order()) {
            *a = g.neighbours(v).bits();
        }
        Solver {
            n: g.order(),
            adj,
            variant: spec.variant(),
            k: spec.k(),
            classes: spec.marked().classes().iter().map(|c| c.bits()).collect(),
            memo: FxHashMap::default(),
            memo_cap: cap,
            stats: SearchStats::default(),
        }
    }

    pub fn stats(&self) -> SearchStats {
        self.stats
    }

    /// Whether Maker wins from `state` under optimal play.
    pub fn maker_wins(&mut self, state: &GameState) -> bool {
        let node = self.node_from(state);
        self.search(&node)
    }

    fn node_from(&self, state: &GameState) -> Node {
        let mut cells = [UNPLAYED; 32];
        for (v, cell) in state.assignment().iter().enumerate() {
            cells[v] = match *cell {
                Cell::Unplayed => UNPLAYED,
                Cell::Coloured(c) => c,
                Cell::Blanked => BLANK,
                Cell::Marked => MARK,
            };
        }
        let unplayed = state.unplayed().bits();
        let mut node = Node {
            cells,
            unplayed,
            active: state.active(),
            moves: state.moves_made() as u32,
        };
        self.normalise_active(&mut node);
        node
    }

    fn normalise_active(&self, node: &mut Node) {
        for (i, &c) in self.classes.iter().enumerate() {
            if c & node.unplayed == 0 {
                node.active &= !(1 << i);
            }
        }
    }

    fn active_union(&self, node: &Node) -> u32 {
        self.classes
            .iter()
            .enumerate()
            .filter(|(i, _)| node.active >> i & 1 == 1)
            .fold(0, |acc, (_, &c)| acc | c)
    }

    fn blocked(&self, node: &Node, v: usize) -> u64 {
        let mut mask = 0u64;
        let mut nb = self.adj[v] & !node.unplayed;
        while nb != 0 {
            let u = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            let c = node.cells[u];
            if c != BLANK && c != MARK {
                mask |= 1 << c;
            }
        }
        mask
    }

    fn palette(&self) -> u64 {
        ((1u64 << self.k) - 1) << 1
    }

    fn marked_set(&self, node: &Node) -> u32 {
        (0..self.n).filter(|&v| node.cells[v] == MARK).fold(0, |acc, v| acc | 1 << v)
    }

    /// Exact verdict for positions that are decided without search: `Some(true)`
    /// if Maker has won or cannot lose, `Some(false)` if Breaker has won or a
    /// vertex can never be played.
    fn settled(&self, node: &Node) -> Option<bool> {
        if node.unplayed == 0 {
            return Some(true);
        }
        let k = self.k as u32;
        let mut all_safe = true;
        let mut unplayed = node.unplayed;
        if self.variant == Variant::Marking {
            let marked = self.marked_set(node);
            while unplayed != 0 {
                let v = unplayed.trailing_zeros() as usize;
                unplayed &= unplayed - 1;
                let m = (self.adj[v] & marked).count_ones();
                if m >= k {
                    return Some(false);
                }
                if m + (self.adj[v] & node.unplayed).count_ones() >= k {
                    all_safe = false;
                }
            }
            return if all_safe { Some(true) } else { None };
        }
        let open = self.active_union(node);
        let palette = self.palette();
        while unplayed != 0 {
            let v = unplayed.trailing_zeros() as usize;
            unplayed &= unplayed - 1;
            let blocked = self.blocked(node, v) & palette;
            if blocked == palette && open >> v & 1 == 0 {
                // Never colourable, and only Breaker could blank it.
                return Some(false);
            }
            if blocked.count_ones() + (self.adj[v] & node.unplayed).count_ones() >= k {
                all_safe = false;
            }
        }
        if all_safe {
            Some(true)
        } else {
            None
        }
    }

    fn key(&self, node: &Node) -> CanonicalStateKey {
        let mut relabel = [0u8; 64];
        let mut next = 1u8;
        let mut words = [0u64; 4];
        for v in 0..self.n {
            let c = node.cells[v];
            let code = match c {
                UNPLAYED => 0,
                BLANK | MARK => c,
                _ => {
                    if relabel[c as usize] == 0 {
                        relabel[c as usize] = next;
                        next += 1;
                    }
                    relabel[c as usize]
                }
            } as u64;
            let bit = 6 * v;
            words[bit / 64] |= code << (bit % 64);
            if bit % 64 > 58 {
                words[bit / 64 + 1] |= code >> (64 - bit % 64);
            }
        }
        words[3] = node.active as u64;
        CanonicalStateKey(words)
    }

    fn children(&self, node: &Node) -> Vec<Node> {
        let mut out = Vec::new();
        let palette = self.palette();
        let used = (0..self.n)
            .filter(|&v| node.unplayed >> v & 1 == 0)
            .fold(0u64, |acc, v| match node.cells[v] {
                BLANK | MARK => acc,
                c => acc | 1 << c,
            })
            & palette;
        let fresh = palette & !used;
        let fresh = if fresh == 0 { 0 } else { fresh & fresh.wrapping_neg() };
        let open = self.active_union(node);
        let maker = node.maker_to_move();
        let marked = if self.variant == Variant::Marking { self.marked_set(node) } else { 0 };
        let mut unplayed = node.unplayed;
        while unplayed != 0 {
            let v = unplayed.trailing_zeros() as usize;
            unplayed &= unplayed - 1;
            let mut play = |cell: u8, removed: Option<usize>| {
                let mut child = *node;
                child.cells[v] = cell;
                child.unplayed &= !(1 << v);
                child.moves += 1;
                if let Some(i) = removed {
                    child.active &= !(1 << i);
                }
                self.normalise_active(&mut child);
                out.push(child);
            };
            if self.variant == Variant::Marking {
                if ((self.adj[v] & marked).count_ones() as usize) < self.k {
                    play(MARK, None);
                }
                continue;
            }
            let mut options = (used | fresh) & !self.blocked(node, v);
            while options != 0 {
                let c = options.trailing_zeros() as u8;
                options &= options - 1;
                play(c, None);
            }
            if self.variant != Variant::WithBlanks {
                continue;
            }
            if maker {
                if open >> v & 1 == 1 {
                    play(BLANK, None);
                }
            } else {
                play(BLANK, None);
                for (i, &c) in self.classes.iter().enumerate() {
                    if node.active >> i & 1 == 1 && c >> v & 1 == 0 {
                        play(BLANK, Some(i));
                    }
                }
            }
        }
        out
    }

    fn search(&mut self, node: &Node) -> bool {
        self.stats.nodes += 1;
        if let Some(w) = self.settled(node) {
            return w;
        }
        let key = self.key(node);
        if let Some(&w) = self.memo.get(&key) {
            self.stats.memo_hits += 1;
            return w;
        }
        let maker = node.maker_to_move();
        let children = self.children(node);
        let mut result = !maker;
        for child in &children {
            if self.search(child) == maker {
                result = maker;
                break;
            }
        }
        if children.is_empty() {
            result = false;
        }
        if self.memo.len() < self.memo_cap {
            self.memo.insert(key, result);
            self.stats.distinct_states += 1;
        }
        result
    }
}

/// Colour-normalised key of a position.
pub fn canonical_state_key(spec: &GameSpec, state: &GameState) -> CanonicalStateKey {
    let solver = Solver::with_memo_cap(spec, 0);
    let node = solver.node_from(state);
    solver.key(&node)
}

fn winner(maker_wins: bool) -> Winner {
    if maker_wins {
        Winner::Maker
    } else {
        Winner::Breaker
    }
}

/// Optimal-play winner after `prefix`, with search statistics.
pub fn solve_fixed_k_with_stats(spec: &GameSpec, prefix: &MovePrefix) -> Result<(Winner, SearchStats), SolveError> {
    let state = replay_prefix(spec, prefix)?;
    let mut solver = Solver::new(spec);
    let w = solver.maker_wins(&state);
    Ok((winner(w), solver.stats()))
}

pub fn solve_fixed_k(spec: &GameSpec, prefix: &MovePrefix) -> Result<Winner, SolveError> {
    solve_fixed_k_with_stats(spec, prefix).map(|(w, _)| w)
}

/// One line describing a solve: graph, variant, k, winner, nodes, memo hits.
pub fn stats_line(spec: &GameSpec, winner: Winner, stats: &SearchStats) -> String {
    let g = spec.graph();
    let key = if g.order() <= EXHAUSTIVE_CANON_LIMIT {
        canonical_key(g).map(|k| k.0).unwrap_or_else(|_| g.to_string())
    } else {
        g.to_string()
    };
    format!(
        "{key} {} k={} winner={} nodes={} memo_hits={}",
        spec.variant().name(),
        spec.k(),
        winner.name(),
        stats.nodes,
        stats.memo_hits
    )
}

/// Solves every palette size from 0 up to `max(n, largest prefix colour)`;
/// the `k` of `spec` is ignored. Sizes at which the prefix cannot be played
/// count as losses.
pub fn win_profile(spec: &GameSpec, prefix: &MovePrefix) -> Result<SolveResult, SolveError> {
    let top = spec.graph().order().max(prefix.max_colour());
    replay_prefix(&spec.with_k(top)?, prefix)?;
    let mut profile = Vec::with_capacity(top + 1);
    let mut stats = SearchStats::default();
    let plain_floor = if spec.variant() == Variant::Plain && prefix.is_empty() {
        crate::graph::chromatic_number(spec.graph())
    } else {
        0
    };
    for k in 0..=top {
        let at_k = spec.with_k(k)?;
        let Ok(state) = replay_prefix(&at_k, prefix) else {
            profile.push(false);
            continue;
        };
        if k < plain_floor {
            // A Maker win is a proper colouring of the whole graph.
            profile.push(false);
            continue;
        }
        let mut solver = Solver::new(&at_k);
        profile.push(solver.maker_wins(&state));
        stats.absorb(solver.stats());
    }
    let value = profile.iter().position(|&w| w);
    Ok(SolveResult { profile, value, stats })
}

/// Least palette size with a Maker win, scanning upward and stopping at the
/// first win.
fn least_winning_k(spec: &GameSpec, prefix: &MovePrefix, from: usize) -> Result<usize, SolveError> {
    let top = spec.graph().order().max(prefix.max_colour());
    replay_prefix(&spec.with_k(top)?, prefix)?;
    for k in from..=top {
        let at_k = spec.with_k(k)?;
        let Ok(state) = replay_prefix(&at_k, prefix) else { continue };
        if Solver::new(&at_k).maker_wins(&state) {
            return Ok(k);
        }
    }
    Err(SolveError::NoWinningPalette)
}

/// `chi_g`: least `k` with a Maker win in the plain game.
pub fn game_chromatic(g: &Graph) -> usize {
    let spec = GameSpec::plain(*g, 0).expect("palette 0 is valid");
    least_winning_k(&spec, &MovePrefix::empty(), crate::graph::chromatic_number(g))
        .expect("Maker always wins with n colours")
}

/// `chi_gb` with the given marked classes, after `prefix`.
pub fn game_chromatic_blanks(g: &Graph, marked: &game::MarkedSelection, prefix: &MovePrefix) -> Result<usize, SolveError> {
    let spec = GameSpec::blanks(*g, 0, marked.clone())?;
    least_winning_k(&spec, prefix, 0)
}

/// `m(G)`: least `k` with a Maker win in the marking game.
pub fn marking_number(g: &Graph) -> usize {
    let spec = GameSpec::marking(*g, 0).expect("palette 0 is valid");
    least_winning_k(&spec, &MovePrefix::empty(), 0).expect("Maker always wins with n marks allowed")
}

/// First legal move, in rules-engine order, that keeps a win for the mover;
/// `None` if the mover is lost.
pub fn best_move(spec: &GameSpec, state: &GameState) -> Result<Option<Move>, SolveError> {
    let moves = game::legal_moves(spec, state)?;
    let mover = state.mover();
    let mut solver = Solver::new(spec);
    for mv in moves {
        let next = game::apply_move(spec, state, mv)?;
        let maker_wins = match game::status(spec, &next) {
            game::Status::MakerWin => true,
            game::Status::BreakerWin => false,
            game::Status::Ongoing => solver.maker_wins(&next),
        };
        if maker_wins == (mover == Player::Maker) {
            return Ok(Some(mv));
        }
    }
    Ok(None)
}

/// Like [`best_move`], but falls back to the first legal move when the mover
/// is lost.
pub fn optimal_move(spec: &GameSpec, state: &GameState) -> Result<Move, SolveError> {
    if let Some(mv) = best_move(spec, state)? {
        return Ok(mv);
    }
    game::legal_moves(spec, state)?.into_iter().next().ok_or(SolveError::Game(GameError::Terminal))
}
