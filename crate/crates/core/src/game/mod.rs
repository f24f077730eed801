//! Rules engines for the three games.
//!
//! * `Plain`: players alternately colour vertices properly from `1..=k`,
//!   Maker first; Maker wins iff every vertex gets coloured.
//! * `WithBlanks`: Breaker may also blank any unplayed vertex, which removes
//!   it from the game. Vertices in *active* marked classes may be blanked by
//!   either player, and they keep the game alive while unplayed. A Breaker
//!   blank may also deactivate one active class not containing the blanked
//!   vertex.
//! * `Marking`: players alternately mark vertices with at most `k - 1` marked
//!   neighbours; Maker wins iff everything gets marked.

mod trace;

use thiserror::Error;

use crate::graph::{Graph, VertexSet};

pub use trace::{format_move, parse_move_line, parse_trace, TraceError};

/// Largest palette size.
pub const MAX_COLOURS: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Plain,
    WithBlanks,
    Marking,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Plain => "plain",
            Variant::WithBlanks => "blanks",
            Variant::Marking => "marking",
        }
    }

    pub fn is_colouring(self) -> bool {
        !matches!(self, Variant::Marking)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Player {
    Maker,
    Breaker,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::Maker => Player::Breaker,
            Player::Breaker => Player::Maker,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error("invalid game specification: {0}")]
    InvalidSpec(String),
    #[error("the game is already over")]
    Terminal,
    #[error("malformed move: {0}")]
    Malformed(String),
    #[error("illegal move: {0}")]
    Illegal(String),
    #[error("prefix move {index}: {source}")]
    Prefix {
        index: usize,
        #[source]
        source: Box<GameError>,
    },
}

/// Disjoint non-empty independent sets `D_1, .., D_s` marked for blanks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MarkedSelection {
    classes: Vec<VertexSet>,
}

impl MarkedSelection {
    pub fn none() -> Self {
        MarkedSelection::default()
    }

    pub fn new(g: &Graph, classes: Vec<VertexSet>) -> Result<Self, GameError> {
        let mut union = VertexSet::EMPTY;
        for (i, &c) in classes.iter().enumerate() {
            if c.is_empty() {
                return Err(GameError::InvalidSpec(format!("marked class {i} is empty")));
            }
            if !c.is_subset(g.vertices()) {
                return Err(GameError::InvalidSpec(format!("marked class {i} has vertices outside the graph")));
            }
            if !g.is_independent(c) {
                return Err(GameError::InvalidSpec(format!("marked class {i} is not independent")));
            }
            if !c.is_disjoint(union) {
                return Err(GameError::InvalidSpec(format!("marked class {i} overlaps an earlier class")));
            }
            union = union.union(c);
        }
        Ok(MarkedSelection { classes })
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

    /// Index bitmask with every class active.
    pub fn all_active(&self) -> u32 {
        if self.classes.len() >= 32 {
            u32::MAX
        } else {
            (1u32 << self.classes.len()) - 1
        }
    }

    /// Union of the classes whose index bit is set in `active`.
    pub fn union_of(&self, active: u32) -> VertexSet {
        self.classes
            .iter()
            .enumerate()
            .filter(|(i, _)| active >> i & 1 == 1)
            .fold(VertexSet::EMPTY, |acc, (_, &c)| acc.union(c))
    }

    pub fn class_containing(&self, v: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(v))
    }

    /// Parses `"0,1;2,3"`: classes separated by `;`, vertices by `,`.
    pub fn parse(g: &Graph, text: &str) -> Result<Self, GameError> {
        let mut classes = Vec::new();
        for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let mut set = VertexSet::EMPTY;
            for tok in part.split(',').map(str::trim) {
                let v: usize = tok
                    .parse()
                    .map_err(|_| GameError::InvalidSpec(format!("bad vertex {tok:?} in marked classes")))?;
                if v >= g.order() {
                    return Err(GameError::InvalidSpec(format!("marked vertex {v} out of range")));
                }
                set.insert(v);
            }
            classes.push(set);
        }
        MarkedSelection::new(g, classes)
    }

    /// Inverse of [`MarkedSelection::parse`].
    pub fn to_text(&self) -> String {
        self.classes
            .iter()
            .map(|c| c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// Rules variant, board, palette size and marked classes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GameSpec {
    graph: Graph,
    variant: Variant,
    k: usize,
    marked: MarkedSelection,
}

impl GameSpec {
    pub fn new(graph: Graph, variant: Variant, k: usize) -> Result<Self, GameError> {
        if k > MAX_COLOURS {
            return Err(GameError::InvalidSpec(format!("palette size {k} exceeds {MAX_COLOURS}")));
        }
        Ok(GameSpec {
            graph,
            variant,
            k,
            marked: MarkedSelection::none(),
        })
    }

    pub fn plain(graph: Graph, k: usize) -> Result<Self, GameError> {
        GameSpec::new(graph, Variant::Plain, k)
    }

    pub fn blanks(graph: Graph, k: usize, marked: MarkedSelection) -> Result<Self, GameError> {
        GameSpec::new(graph, Variant::WithBlanks, k)?.with_marked(marked)
    }

    pub fn marking(graph: Graph, k: usize) -> Result<Self, GameError> {
        GameSpec::new(graph, Variant::Marking, k)
    }

    pub fn with_marked(mut self, marked: MarkedSelection) -> Result<Self, GameError> {
        if !marked.is_empty() && self.variant != Variant::WithBlanks {
            return Err(GameError::InvalidSpec("marked classes need the blanks variant".into()));
        }
        // Re-validate against this graph.
        self.marked = MarkedSelection::new(&self.graph, marked.classes)?;
        Ok(self)
    }

    /// Same rules with a different palette size.
    pub fn with_k(&self, k: usize) -> Result<Self, GameError> {
        if k > MAX_COLOURS {
            return Err(GameError::InvalidSpec(format!("palette size {k} exceeds {MAX_COLOURS}")));
        }
        let mut s = self.clone();
        s.k = k;
        Ok(s)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn marked(&self) -> &MarkedSelection {
        &self.marked
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Play {
    Colour(u8),
    /// A blank, optionally deactivating the marked class with this index
    /// (an index into the spec's marked-class list).
    Blank(Option<usize>),
    Mark,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Move {
    pub vertex: usize,
    pub play: Play,
}

impl Move {
    pub fn colour(vertex: usize, c: u8) -> Move {
        Move { vertex, play: Play::Colour(c) }
    }

    pub fn blank(vertex: usize) -> Move {
        Move { vertex, play: Play::Blank(None) }
    }

    pub fn blank_removing(vertex: usize, class: usize) -> Move {
        Move { vertex, play: Play::Blank(Some(class)) }
    }

    pub fn mark(vertex: usize) -> Move {
        Move { vertex, play: Play::Mark }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cell {
    Unplayed,
    Coloured(u8),
    Blanked,
    Marked,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GameState {
    assignment: Vec<Cell>,
    /// Bit `i` set iff marked class `i` is still active.
    active: u32,
    moves_made: usize,
}

impl GameState {
    pub fn initial(spec: &GameSpec) -> GameState {
        GameState {
            assignment: vec![Cell::Unplayed; spec.graph.order()],
            active: spec.marked.all_active(),
            moves_made: 0,
        }
    }

    pub fn assignment(&self) -> &[Cell] {
        &self.assignment
    }

    pub fn cell(&self, v: usize) -> Cell {
        self.assignment[v]
    }

    pub fn active(&self) -> u32 {
        self.active
    }

    pub fn is_active(&self, class: usize) -> bool {
        class < 32 && self.active >> class & 1 == 1
    }

    pub fn moves_made(&self) -> usize {
        self.moves_made
    }

    pub fn mover(&self) -> Player {
        if self.moves_made.is_multiple_of(2) {
            Player::Maker
        } else {
            Player::Breaker
        }
    }

    pub fn unplayed(&self) -> VertexSet {
        self.assignment
            .iter()
            .enumerate()
            .filter(|(_, c)| **c == Cell::Unplayed)
            .map(|(v, _)| v)
            .collect()
    }

    pub fn colour_of(&self, v: usize) -> Option<u8> {
        match self.assignment[v] {
            Cell::Coloured(c) => Some(c),
            _ => None,
        }
    }

    /// Vertices holding colour `c`.
    pub fn coloured_with(&self, c: u8) -> VertexSet {
        self.assignment
            .iter()
            .enumerate()
            .filter(|(_, cell)| **cell == Cell::Coloured(c))
            .map(|(v, _)| v)
            .collect()
    }

    /// Distinct colours in use, as a bitmask over colour ids.
    pub fn used_colours(&self) -> u64 {
        self.assignment.iter().fold(0, |acc, cell| match cell {
            Cell::Coloured(c) => acc | 1 << c,
            _ => acc,
        })
    }
}

/// Colours `1..=k` blocked at `v` by its coloured neighbours, as a bitmask.
fn blocked_colours(spec: &GameSpec, state: &GameState, v: usize) -> u64 {
    spec.graph
        .neighbours(v)
        .iter()
        .fold(0, |acc, u| match state.assignment[u] {
            Cell::Coloured(c) => acc | 1 << c,
            _ => acc,
        })
}

fn palette(k: usize) -> u64 {
    ((1u64 << k) - 1) << 1
}

fn is_colourable(spec: &GameSpec, state: &GameState, v: usize) -> bool {
    palette(spec.k) & !blocked_colours(spec, state, v) != 0
}

fn marked_neighbours(spec: &GameSpec, state: &GameState, v: usize) -> usize {
    spec.graph
        .neighbours(v)
        .iter()
        .filter(|&u| state.assignment[u] == Cell::Marked)
        .count()
}

fn is_markable(spec: &GameSpec, state: &GameState, v: usize) -> bool {
    marked_neighbours(spec, state, v) < spec.k
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Ongoing,
    MakerWin,
    BreakerWin,
}

impl Status {
    pub fn is_terminal(self) -> bool {
        self != Status::Ongoing
    }
}

/// Game status, evaluated before the mover moves.
pub fn status(spec: &GameSpec, state: &GameState) -> Status {
    let unplayed = state.unplayed();
    if unplayed.is_empty() {
        return Status::MakerWin;
    }
    match spec.variant {
        Variant::Marking => {
            if unplayed.iter().any(|v| is_markable(spec, state, v)) {
                Status::Ongoing
            } else {
                Status::BreakerWin
            }
        }
        Variant::Plain | Variant::WithBlanks => {
            if unplayed.iter().any(|v| is_colourable(spec, state, v)) {
                return Status::Ongoing;
            }
            let open = spec.marked.union_of(state.active);
            if spec.variant == Variant::WithBlanks && !unplayed.is_disjoint(open) {
                Status::Ongoing
            } else {
                Status::BreakerWin
            }
        }
    }
}

/// Every legal move in a non-terminal state, ordered by vertex, then colour,
/// then plain blank, then blanks removing classes in index order.
pub fn legal_moves(spec: &GameSpec, state: &GameState) -> Result<Vec<Move>, GameError> {
    if status(spec, state).is_terminal() {
        return Err(GameError::Terminal);
    }
    let mut out = Vec::new();
    let mover = state.mover();
    let open = spec.marked.union_of(state.active);
    for v in state.unplayed() {
        match spec.variant {
            Variant::Marking => {
                if is_markable(spec, state, v) {
                    out.push(Move::mark(v));
                }
            }
            Variant::Plain | Variant::WithBlanks => {
                let free = palette(spec.k) & !blocked_colours(spec, state, v);
                for c in 1..=spec.k as u8 {
                    if free >> c & 1 == 1 {
                        out.push(Move::colour(v, c));
                    }
                }
                if spec.variant != Variant::WithBlanks {
                    continue;
                }
                match mover {
                    Player::Maker => {
                        if open.contains(v) {
                            out.push(Move::blank(v));
                        }
                    }
                    Player::Breaker => {
                        out.push(Move::blank(v));
                        for (i, class) in spec.marked.classes.iter().enumerate() {
                            if state.is_active(i) && !class.contains(v) {
                                out.push(Move::blank_removing(v, i));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

fn check_well_formed(spec: &GameSpec, mv: &Move) -> Result<(), GameError> {
    let n = spec.graph.order();
    if mv.vertex >= n {
        return Err(GameError::Malformed(format!("vertex {} out of range 0..{n}", mv.vertex)));
    }
    match (spec.variant, mv.play) {
        (Variant::Marking, Play::Mark) => Ok(()),
        (Variant::Marking, _) => Err(GameError::Malformed("the marking game only has mark moves".into())),
        (_, Play::Mark) => Err(GameError::Malformed("mark moves only exist in the marking game".into())),
        (_, Play::Colour(c)) if c == 0 || c as usize > spec.k => {
            Err(GameError::Malformed(format!("colour {c} outside palette 1..={}", spec.k)))
        }
        (Variant::Plain, Play::Blank(_)) => Err(GameError::Malformed("the plain game has no blanks".into())),
        (_, Play::Blank(Some(i))) if i >= spec.marked.len() => {
            Err(GameError::Malformed(format!("no marked class with index {i}")))
        }
        _ => Ok(()),
    }
}

/// Checks legality of `mv` without building the full move list; the error
/// names the violated rule.
fn check_legal(spec: &GameSpec, state: &GameState, mv: &Move) -> Result<(), GameError> {
    check_well_formed(spec, mv)?;
    if status(spec, state).is_terminal() {
        return Err(GameError::Terminal);
    }
    let v = mv.vertex;
    if state.assignment[v] != Cell::Unplayed {
        return Err(GameError::Illegal(format!("vertex {v} has already been played")));
    }
    match mv.play {
        Play::Colour(c) => {
            if blocked_colours(spec, state, v) >> c & 1 == 1 {
                return Err(GameError::Illegal(format!("a neighbour of {v} already has colour {c}")));
            }
        }
        Play::Mark => {
            if !is_markable(spec, state, v) {
                return Err(GameError::Illegal(format!(
                    "vertex {v} has {} marked neighbours, limit is {}",
                    marked_neighbours(spec, state, v),
                    spec.k.saturating_sub(1)
                )));
            }
        }
        Play::Blank(removal) => match state.mover() {
            Player::Maker => {
                if removal.is_some() {
                    return Err(GameError::Illegal("only Breaker may remove a marked class".into()));
                }
                if !spec.marked.union_of(state.active).contains(v) {
                    return Err(GameError::Illegal(format!(
                        "Maker may only blank inside an active marked class; {v} is not in one"
                    )));
                }
            }
            Player::Breaker => {
                if let Some(i) = removal {
                    if !state.is_active(i) {
                        return Err(GameError::Illegal(format!("marked class {i} is no longer active")));
                    }
                    if spec.marked.classes[i].contains(v) {
                        return Err(GameError::Illegal(format!("class {i} contains the blanked vertex {v}")));
                    }
                }
            }
        },
    }
    Ok(())
}

pub fn apply_move(spec: &GameSpec, state: &GameState, mv: Move) -> Result<GameState, GameError> {
    check_legal(spec, state, &mv)?;
    let mut next = state.clone();
    next.assignment[mv.vertex] = match mv.play {
        Play::Colour(c) => Cell::Coloured(c),
        Play::Blank(removal) => {
            if let Some(i) = removal {
                next.active &= !(1 << i);
            }
            Cell::Blanked
        }
        Play::Mark => Cell::Marked,
    };
    next.moves_made += 1;
    Ok(next)
}

/// An opening that every play of the game must start with.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MovePrefix(pub Vec<Move>);

impl MovePrefix {
    pub fn empty() -> Self {
        MovePrefix(Vec::new())
    }

    pub fn moves(&self) -> &[Move] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest colour id the prefix uses, 0 if none.
    pub fn max_colour(&self) -> usize {
        self.0
            .iter()
            .filter_map(|m| match m.play {
                Play::Colour(c) => Some(c as usize),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn to_trace(&self) -> String {
        let mut out = String::new();
        for (i, mv) in self.0.iter().enumerate() {
            let mover = if i % 2 == 0 { Player::Maker } else { Player::Breaker };
            out.push_str(&format_move(mover, mv));
            out.push('\n');
        }
        out
    }
}

/// Plays `prefix` from the initial state. Every move must be legal, and no
/// move may be played after the game has ended.
pub fn replay_prefix(spec: &GameSpec, prefix: &MovePrefix) -> Result<GameState, GameError> {
    let mut state = GameState::initial(spec);
    for (index, &mv) in prefix.0.iter().enumerate() {
        state = apply_move(spec, &state, mv).map_err(|e| GameError::Prefix { index, source: Box::new(e) })?;
    }
    Ok(state)
}
