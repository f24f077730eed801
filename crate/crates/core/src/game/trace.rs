//! Line-oriented move traces.
//!
//! One move per line: `<M|B> <vertex> <action>`, where the action is a colour
//! number, `blank`, `blank-<class>` or `mark`. Empty lines and `#` comments
//! are ignored.

use thiserror::Error;

use super::{Move, MovePrefix, Play, Player};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TraceError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: expected a move by {expected:?}")]
    WrongPlayer { line: usize, expected: Player },
}

pub fn format_move(mover: Player, mv: &Move) -> String {
    let who = match mover {
        Player::Maker => 'M',
        Player::Breaker => 'B',
    };
    let action = match mv.play {
        Play::Colour(c) => c.to_string(),
        Play::Blank(None) => "blank".to_string(),
        Play::Blank(Some(i)) => format!("blank-{i}"),
        Play::Mark => "mark".to_string(),
    };
    format!("{who} {} {action}", mv.vertex)
}

/// Parses a single trace line into its player and move.
pub fn parse_move_line(text: &str) -> Result<(Player, Move), String> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    let [who, vertex, action] = toks[..] else {
        return Err(format!("expected three fields, found {}", toks.len()));
    };
    let player = match who {
        "M" | "m" => Player::Maker,
        "B" | "b" => Player::Breaker,
        other => return Err(format!("unknown player {other:?}")),
    };
    let vertex: usize = vertex.parse().map_err(|_| format!("bad vertex {vertex:?}"))?;
    let play = match action {
        "blank" => Play::Blank(None),
        "mark" => Play::Mark,
        a if a.starts_with("blank-") => {
            let idx = &a["blank-".len()..];
            Play::Blank(Some(idx.parse().map_err(|_| format!("bad class index {idx:?}"))?))
        }
        a => Play::Colour(a.parse().map_err(|_| format!("bad action {a:?}"))?),
    };
    Ok((player, Move { vertex, play }))
}

/// Parses a whole trace. Players must alternate, starting with Maker.
pub fn parse_trace(text: &str) -> Result<MovePrefix, TraceError> {
    let mut moves = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (player, mv) = parse_move_line(line).map_err(|msg| TraceError::Syntax { line: i + 1, msg })?;
        let expected = if moves.len() % 2 == 0 { Player::Maker } else { Player::Breaker };
        if player != expected {
            return Err(TraceError::WrongPlayer { line: i + 1, expected });
        }
        moves.push(mv);
    }
    Ok(MovePrefix(moves))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let p = MovePrefix(vec![
            Move::colour(0, 1),
            Move::blank_removing(3, 0),
            Move::blank(2),
            Move::blank(4),
        ]);
        let text = p.to_trace();
        assert_eq!(text, "M 0 1\nB 3 blank-0\nM 2 blank\nB 4 blank\n");
        assert_eq!(parse_trace(&text).unwrap(), p);
    }

    #[test]
    fn marks_and_comments() {
        let p = parse_trace("# opening\nM 2 mark\n\nB 0 mark  # reply\n").unwrap();
        assert_eq!(p.moves(), &[Move::mark(2), Move::mark(0)]);
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(matches!(parse_trace("B 0 1"), Err(TraceError::WrongPlayer { line: 1, .. })));
        assert!(matches!(parse_trace("M 0"), Err(TraceError::Syntax { line: 1, .. })));
        assert!(matches!(parse_trace("M x 1"), Err(TraceError::Syntax { .. })));
        assert!(matches!(parse_trace("M 0 red"), Err(TraceError::Syntax { .. })));
        assert!(matches!(parse_trace("M 0 blank-x"), Err(TraceError::Syntax { .. })));
        assert!(matches!(parse_trace("M 0 1\nM 1 2"), Err(TraceError::WrongPlayer { line: 2, .. })));
    }
}
