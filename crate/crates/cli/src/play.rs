//! Terminal play against the solver.

use std::io::{self, BufRead, Write};

use chromagame::game::{apply_move, format_move, parse_move_line, status, Cell, GameSpec, GameState, Player, Status};
use chromagame::solver::{optimal_move, SolveError};

fn player_name(p: Player) -> &'static str {
    match p {
        Player::Maker => "maker",
        Player::Breaker => "breaker",
    }
}

fn board(spec: &GameSpec, state: &GameState) -> String {
    let g = spec.graph();
    let mut out = String::new();
    for v in 0..g.order() {
        let nbrs: Vec<String> = g.neighbours(v).iter().map(|u| u.to_string()).collect();
        let cell = match state.cell(v) {
            Cell::Unplayed => ".".to_string(),
            Cell::Coloured(c) => c.to_string(),
            Cell::Blanked => "blank".to_string(),
            Cell::Marked => "marked".to_string(),
        };
        out.push_str(&format!("  {v} [{cell}] -- {}\n", nbrs.join(" ")));
    }
    if !spec.marked().is_empty() {
        let active: Vec<String> = (0..spec.marked().len())
            .filter(|&i| state.is_active(i))
            .map(|i| {
                let c: Vec<String> = spec.marked().classes()[i].iter().map(|v| v.to_string()).collect();
                format!("{i}={{{}}}", c.join(","))
            })
            .collect();
        out.push_str(&format!("  active classes: {}\n", active.join(" ")));
    }
    out
}

/// Runs the game to the end; the human's moves come from `input` as
/// `<vertex> <colour|blank|blank-i|mark>`. Returns the final status, or
/// `Ongoing` if the input ends or says `quit`.
pub fn play<R: BufRead, W: Write>(spec: &GameSpec, human: Player, mut input: R, mut out: W) -> Result<Status, PlayError> {
    let mut state = GameState::initial(spec);
    writeln!(out, "{} game, k = {}, you are {}", spec.variant().name(), spec.k(), player_name(human))?;
    loop {
        let st = status(spec, &state);
        if st.is_terminal() {
            write!(out, "{}", board(spec, &state))?;
            let winner = if st == Status::MakerWin { Player::Maker } else { Player::Breaker };
            writeln!(out, "{} wins", player_name(winner))?;
            return Ok(st);
        }
        if state.mover() == human {
            write!(out, "{}", board(spec, &state))?;
            write!(out, "your move> ")?;
            out.flush()?;
            let mut line = String::new();
            if input.read_line(&mut line)? == 0 || line.trim() == "quit" {
                writeln!(out)?;
                return Ok(Status::Ongoing);
            }
            let text = line.trim();
            if text.is_empty() {
                continue;
            }
            let who = if human == Player::Maker { "M" } else { "B" };
            let mv = match parse_move_line(&format!("{who} {text}")) {
                Ok((_, mv)) => mv,
                Err(msg) => {
                    writeln!(out, "cannot read move: {msg}")?;
                    continue;
                }
            };
            match apply_move(spec, &state, mv) {
                Ok(next) => state = next,
                Err(e) => writeln!(out, "illegal: {e}")?,
            }
        } else {
            let mv = optimal_move(spec, &state)?;
            writeln!(out, "engine: {}", format_move(state.mover(), &mv))?;
            state = apply_move(spec, &state, mv).map_err(SolveError::from)?;
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum PlayError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Solve(#[from] SolveError),
}
