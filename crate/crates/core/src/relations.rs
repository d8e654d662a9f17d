//! Outcomes, iterative zeroness, and the relation verdict cache.
//!
//! [`RelationMemo`] holds one byte of flags per interned game. Flags are only
//! ever set, never cleared, and every flag is a pure function of the game, so
//! concurrent readers sharing one memo always agree with a sequential run.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, AtomicU8, Ordering};

use serde::{Deserialize, Serialize};

use crate::arena::{Arena, GameId, Player};

/// Who wins under optimal normal play.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Outcome {
    LeftWins,
    RightWins,
    FirstWins,
    SecondWins,
}

impl Outcome {
    /// From whether Left, resp. Right, wins when moving first.
    pub fn from_first_moves(left_wins_first: bool, right_wins_first: bool) -> Self {
        match (left_wins_first, right_wins_first) {
            (true, true) => Outcome::FirstWins,
            (true, false) => Outcome::LeftWins,
            (false, true) => Outcome::RightWins,
            (false, false) => Outcome::SecondWins,
        }
    }

    /// Outcome of the negated game.
    pub fn mirror(self) -> Self {
        match self {
            Outcome::LeftWins => Outcome::RightWins,
            Outcome::RightWins => Outcome::LeftWins,
            other => other,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Outcome::LeftWins => "LeftWins",
            Outcome::RightWins => "RightWins",
            Outcome::FirstWins => "FirstWins",
            Outcome::SecondWins => "SecondWins",
        };
        f.write_str(s)
    }
}

/// Relations the engine can decide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// Extensional equality of forms, i.e. id equality.
    #[serde(rename = "iso")]
    Isomorphism,
    /// `G - H` is iteratively zero.
    #[serde(rename = "iter")]
    IterEq,
    /// `G - H` is a second-player win.
    #[serde(rename = "conway")]
    ConwayEq,
}

impl Relation {
    pub fn name(self) -> &'static str {
        match self {
            Relation::Isomorphism => "iso",
            Relation::IterEq => "iter",
            Relation::ConwayEq => "conway",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Relation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "iso" => Ok(Relation::Isomorphism),
            "iter" => Ok(Relation::IterEq),
            "conway" => Ok(Relation::ConwayEq),
            _ => Err(format!("unknown relation `{s}` (expected iso, iter or conway)")),
        }
    }
}

const LEFT_KNOWN: u8 = 1;
const LEFT_WINS: u8 = 1 << 1;
const RIGHT_KNOWN: u8 = 1 << 2;
const RIGHT_WINS: u8 = 1 << 3;
const IZ_KNOWN: u8 = 1 << 4;
const IZ: u8 = 1 << 5;

/// Per-game cache of first-move wins and iterative zeroness.
#[derive(Debug, Default)]
pub struct RelationMemo {
    cells: Vec<AtomicU8>,
    hits: AtomicU64,
}

impl Clone for RelationMemo {
    fn clone(&self) -> Self {
        RelationMemo {
            cells: self
                .cells
                .iter()
                .map(|c| AtomicU8::new(c.load(Ordering::Relaxed)))
                .collect(),
            hits: AtomicU64::new(self.hits()),
        }
    }
}

impl RelationMemo {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of games covered.
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn hits(&self) -> u64 {
        self.hits.load(Ordering::Relaxed)
    }

    /// Extends the memo to cover every game of `arena`.
    pub fn sync(&mut self, arena: &Arena) {
        if self.cells.len() < arena.len() {
            self.cells.resize_with(arena.len(), || AtomicU8::new(0));
        }
    }

    /// Forgets all cached verdicts.
    pub fn clear(&mut self) {
        self.cells.iter_mut().for_each(|c| *c.get_mut() = 0);
        *self.hits.get_mut() = 0;
    }

    /// Raw flag bytes, one per game, for persistence.
    pub fn snapshot(&self) -> Vec<u8> {
        self.cells.iter().map(|c| c.load(Ordering::Relaxed)).collect()
    }

    /// Inverse of [`RelationMemo::snapshot`].
    pub fn from_snapshot(bytes: &[u8]) -> Self {
        RelationMemo {
            cells: bytes.iter().map(|&b| AtomicU8::new(b)).collect(),
            hits: AtomicU64::new(0),
        }
    }

    fn flags(&self, g: GameId) -> u8 {
        match self.cells.get(g.index()) {
            Some(c) => c.load(Ordering::Relaxed),
            None => panic!(
                "relation memo covers {} games but {g} was queried; sync it first",
                self.cells.len()
            ),
        }
    }

    fn set(&self, g: GameId, bits: u8) {
        self.cells[g.index()].fetch_or(bits, Ordering::Relaxed);
    }

    fn hit(&self) {
        self.hits.fetch_add(1, Ordering::Relaxed);
    }

    /// Whether `player` wins `g` when moving first: some option of theirs
    /// is not a first-move win for the opponent.
    pub fn wins_moving_first(&self, arena: &Arena, player: Player, g: GameId) -> bool {
        let (known, wins) = match player {
            Player::Left => (LEFT_KNOWN, LEFT_WINS),
            Player::Right => (RIGHT_KNOWN, RIGHT_WINS),
        };
        let flags = self.flags(g);
        if flags & known != 0 {
            self.hit();
            return flags & wins != 0;
        }
        let result = arena
            .options(player, g)
            .iter()
            .any(|&o| !self.wins_moving_first(arena, player.opponent(), o));
        self.set(g, if result { known | wins } else { known });
        result
    }

    pub fn outcome(&self, arena: &Arena, g: GameId) -> Outcome {
        Outcome::from_first_moves(
            self.wins_moving_first(arena, Player::Left, g),
            self.wins_moving_first(arena, Player::Right, g),
        )
    }

    /// Every Left option has an iteratively zero Right reply and every
    /// Right option an iteratively zero Left reply. Vacuous for `0`.
    pub fn is_iteratively_zero(&self, arena: &Arena, g: GameId) -> bool {
        let flags = self.flags(g);
        if flags & IZ_KNOWN != 0 {
            self.hit();
            return flags & IZ != 0;
        }
        let answered = |player: Player| {
            arena.options(player, g).iter().all(|&o| {
                arena
                    .options(player.opponent(), o)
                    .iter()
                    .any(|&reply| self.is_iteratively_zero(arena, reply))
            })
        };
        let result = answered(Player::Left) && answered(Player::Right);
        self.set(g, if result { IZ_KNOWN | IZ } else { IZ_KNOWN });
        result
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants;

    fn memo(arena: &Arena) -> RelationMemo {
        let mut m = RelationMemo::new();
        m.sync(arena);
        m
    }

    #[test]
    fn first_move_wins() {
        let mut a = Arena::new();
        let one = constants::integer(&mut a, 1).unwrap();
        let star = constants::star(&mut a).unwrap();
        let m = memo(&a);
        assert!(!m.wins_moving_first(&a, Player::Left, GameId::ZERO));
        assert!(m.wins_moving_first(&a, Player::Left, one));
        assert!(m.wins_moving_first(&a, Player::Right, star));
    }

    #[test]
    fn basic_outcomes() {
        let mut a = Arena::new();
        let star = constants::star(&mut a).unwrap();
        let one = constants::integer(&mut a, 1).unwrap();
        let minus_one = constants::integer(&mut a, -1).unwrap();
        let m = memo(&a);
        assert_eq!(m.outcome(&a, GameId::ZERO), Outcome::SecondWins);
        assert_eq!(m.outcome(&a, star), Outcome::FirstWins);
        assert_eq!(m.outcome(&a, one), Outcome::LeftWins);
        assert_eq!(m.outcome(&a, minus_one), Outcome::RightWins);
    }

    #[test]
    fn zero_is_iteratively_zero() {
        let a = Arena::new();
        assert!(memo(&a).is_iteratively_zero(&a, GameId::ZERO));
    }

    #[test]
    fn snapshot_round_trip() {
        let mut a = Arena::new();
        let star = constants::star(&mut a).unwrap();
        let m = memo(&a);
        m.outcome(&a, star);
        let restored = RelationMemo::from_snapshot(&m.snapshot());
        assert_eq!(restored.snapshot(), m.snapshot());
        assert_eq!(restored.outcome(&a, star), Outcome::FirstWins);
        assert!(restored.hits() > 0);
    }

    #[test]
    fn relation_names_round_trip() {
        for r in [Relation::Isomorphism, Relation::IterEq, Relation::ConwayEq] {
            assert_eq!(r.name().parse::<Relation>().unwrap(), r);
        }
        assert!("approx".parse::<Relation>().is_err());
    }
}
