//! Text persistence of an arena and its verdict cache.
//!
//! ```text
//! GAMEDB v1
//! 0 := {|}
//! 1 := {0|}
//! 2 := {0|0}
//! MEMO
//! 2 1f
//! ```
//!
//! Node lines list option ids and appear in id order. The optional `MEMO`
//! section holds the nonzero verdict flag bytes, in hex, by id.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::arena::{Arena, ArenaError, GameId};
use crate::relations::RelationMemo;
use crate::session::Session;

pub const HEADER: &str = "GAMEDB v1";
const MEMO: &str = "MEMO";

#[derive(Debug, Error)]
pub enum DbError {
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error(transparent)]
    Arena(#[from] ArenaError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn format_err<T>(line: usize, message: impl Into<String>) -> Result<T, DbError> {
    Err(DbError::Format {
        line,
        message: message.into(),
    })
}

fn join(ids: &[GameId]) -> String {
    ids.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(",")
}

/// Serializes every node of the session's arena and its verdict cache.
pub fn to_text(session: &mut Session) -> String {
    let (arena, memo) = session.frozen();
    let mut out = String::with_capacity(arena.len() * 16);
    out.push_str(HEADER);
    out.push('\n');
    for g in arena.ids() {
        let node = arena.node(g);
        writeln!(out, "{g} := {{{}|{}}}", join(node.left), join(node.right)).expect("writing to a string");
    }
    let flags = memo.snapshot();
    if flags.iter().any(|&f| f != 0) {
        out.push_str(MEMO);
        out.push('\n');
        for (i, f) in flags.iter().enumerate().filter(|(_, &f)| f != 0) {
            writeln!(out, "{i} {f:x}").expect("writing to a string");
        }
    }
    out
}

fn parse_ids(text: &str, line: usize) -> Result<Vec<GameId>, DbError> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|t| match t.parse::<u32>() {
            Ok(n) => Ok(GameId::from_index(n as usize)),
            Err(_) => format_err(line, format!("bad id `{t}`")),
        })
        .collect()
}

/// Rebuilds a session from [`to_text`] output. Nodes are re-interned in
/// order and must land on the ids recorded in the file.
pub fn from_text(text: &str, budget: usize) -> Result<Session, DbError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    match lines.next() {
        Some((_, HEADER)) => {}
        _ => return format_err(1, format!("expected header `{HEADER}`")),
    }
    let mut arena = Arena::with_budget(budget);
    let mut flags: Vec<u8> = Vec::new();
    let mut in_memo = false;
    let mut expected_id = 0usize;
    for (n, line) in lines {
        if line == MEMO && !in_memo {
            in_memo = true;
            flags = vec![0; arena.len()];
            continue;
        }
        if in_memo {
            let Some((id, f)) = line.split_once(' ') else {
                return format_err(n, "expected `<id> <flags>`");
            };
            let id: usize = match id.parse() {
                Ok(i) if i < flags.len() => i,
                _ => return format_err(n, format!("bad memo id `{id}`")),
            };
            match u8::from_str_radix(f, 16) {
                Ok(v) => flags[id] = v,
                Err(_) => return format_err(n, format!("bad flags `{f}`")),
            }
            continue;
        }
        let Some((id, form)) = line.split_once(" := ") else {
            return format_err(n, "expected `<id> := {<left>|<right>}`");
        };
        if id.parse::<usize>().ok() != Some(expected_id) {
            return format_err(n, format!("expected id {expected_id}, found `{id}`"));
        }
        let Some(body) = form.strip_prefix('{').and_then(|f| f.strip_suffix('}')) else {
            return format_err(n, "options must be enclosed in braces");
        };
        let Some((l, r)) = body.split_once('|') else {
            return format_err(n, "missing `|`");
        };
        let (left, right) = (parse_ids(l, n)?, parse_ids(r, n)?);
        if let Some(bad) = left.iter().chain(&right).find(|g| g.index() >= expected_id) {
            return format_err(n, format!("option {bad} is not defined before node {expected_id}"));
        }
        let got = arena.intern(&left, &right)?;
        if got.index() != expected_id {
            return format_err(n, format!("node duplicates id {got}"));
        }
        expected_id += 1;
    }
    if expected_id == 0 {
        return format_err(2, "no nodes");
    }
    let memo = if in_memo {
        RelationMemo::from_snapshot(&flags)
    } else {
        RelationMemo::new()
    };
    Ok(Session::from_parts(arena, memo))
}

pub fn save(session: &mut Session, path: &Path) -> Result<(), DbError> {
    std::fs::write(path, to_text(session))?;
    Ok(())
}

pub fn load(path: &Path, budget: usize) -> Result<Session, DbError> {
    from_text(&std::fs::read_to_string(path)?, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arena::DEFAULT_NODE_BUDGET;

    #[test]
    fn round_trip_is_byte_identical() {
        let mut s = Session::new();
        let forms = s.enumerate_forms(2).unwrap();
        for &g in &forms[..40] {
            s.outcome(g);
        }
        let text = to_text(&mut s);
        let mut back = from_text(&text, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(to_text(&mut back), text);
        assert_eq!(back.arena().len(), s.arena().len());
    }

    #[test]
    fn rejects_bad_input() {
        let bad = [
            "",
            "GAMEDB v2\n0 := {|}\n",
            "GAMEDB v1\n1 := {|}\n",
            "GAMEDB v1\n0 := {|}\n1 := {|}\n",
            "GAMEDB v1\n0 := {|}\n1 := {1|}\n",
            "GAMEDB v1\n0 := {|}\n1 := 0|\n",
            "GAMEDB v1\n0 := {|}\nMEMO\n7 1\n",
        ];
        for text in bad {
            assert!(from_text(text, DEFAULT_NODE_BUDGET).is_err(), "{text:?}");
        }
    }
}
