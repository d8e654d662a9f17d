//! One arena plus the caches layered on top of it.

use serde::{Deserialize, Serialize};

use crate::arena::{Arena, ArenaError, GameId, Player, DEFAULT_NODE_BUDGET};
use crate::constants::{self, ConstantError};
use crate::par::{self, Execution};
use crate::relations::{Outcome, Relation, RelationMemo};

/// Counters attached to verdict reports.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SessionStats {
    pub nodes_created: u64,
    pub cache_hits: u64,
}

/// The option sets of `lhs` and `rhs` match under `relation`, yet the
/// relation fails on the games themselves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityViolation {
    pub relation: Relation,
    pub lhs: GameId,
    pub rhs: GameId,
}

/// A relation verdict with the work it took.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerdictReport {
    pub relation: Relation,
    pub lhs: GameId,
    pub rhs: GameId,
    pub verdict: bool,
    pub stats: VerdictStats,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerdictStats {
    pub nodes_created: u64,
    pub cache_hits: u64,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone)]
pub struct Session {
    arena: Arena,
    memo: RelationMemo,
    pub(crate) class_flags: Vec<u8>,
    execution: Execution,
}

impl Default for Session {
    fn default() -> Self {
        Self::new()
    }
}

impl Session {
    pub fn new() -> Self {
        Self::with_budget(DEFAULT_NODE_BUDGET)
    }

    pub fn with_budget(budget: usize) -> Self {
        Self::from_parts(Arena::with_budget(budget), RelationMemo::new())
    }

    pub fn from_parts(arena: Arena, mut memo: RelationMemo) -> Self {
        memo.sync(&arena);
        Session {
            arena,
            memo,
            class_flags: Vec::new(),
            execution: Execution::default(),
        }
    }

    pub fn arena(&self) -> &Arena {
        &self.arena
    }

    pub fn arena_mut(&mut self) -> &mut Arena {
        &mut self.arena
    }

    pub fn memo(&self) -> &RelationMemo {
        &self.memo
    }

    pub fn execution(&self) -> Execution {
        self.execution
    }

    pub fn set_execution(&mut self, execution: Execution) {
        self.execution = execution;
    }

    pub fn stats(&self) -> SessionStats {
        let a = self.arena.stats();
        SessionStats {
            nodes_created: a.nodes_created,
            cache_hits: a.memo_hits + self.memo.hits(),
        }
    }

    /// Drops every cached verdict and operation result. Interned forms stay.
    pub fn clear_caches(&mut self) {
        self.memo.clear();
        self.class_flags.clear();
        self.arena.clear_operation_memos();
    }

    /// The arena together with a memo covering all of it, for read-only use.
    pub fn frozen(&mut self) -> (&Arena, &RelationMemo) {
        self.memo.sync(&self.arena);
        (&self.arena, &self.memo)
    }

    pub fn intern(&mut self, left: &[GameId], right: &[GameId]) -> Result<GameId, ArenaError> {
        self.arena.intern(left, right)
    }

    pub fn constant(&mut self, name: &str) -> Result<GameId, ConstantError> {
        constants::constant(&mut self.arena, name)
    }

    pub fn neg(&mut self, g: GameId) -> Result<GameId, ArenaError> {
        self.arena.neg(g)
    }

    pub fn add(&mut self, g: GameId, h: GameId) -> Result<GameId, ArenaError> {
        self.arena.add(g, h)
    }

    pub fn sub(&mut self, g: GameId, h: GameId) -> Result<GameId, ArenaError> {
        self.arena.sub(g, h)
    }

    pub fn product(&mut self, g: GameId, h: GameId) -> Result<GameId, ArenaError> {
        self.arena.product(g, h)
    }

    pub fn birthday(&self, g: GameId) -> u32 {
        self.arena.birthday(g)
    }

    pub fn enumerate_forms(&mut self, max_birthday: u32) -> Result<Vec<GameId>, ArenaError> {
        self.arena.enumerate_forms(max_birthday)
    }

    pub fn wins_moving_first(&mut self, player: Player, g: GameId) -> bool {
        let (arena, memo) = self.frozen();
        memo.wins_moving_first(arena, player, g)
    }

    pub fn outcome(&mut self, g: GameId) -> Outcome {
        let (arena, memo) = self.frozen();
        memo.outcome(arena, g)
    }

    pub fn is_iteratively_zero(&mut self, g: GameId) -> bool {
        let (arena, memo) = self.frozen();
        memo.is_iteratively_zero(arena, g)
    }

    /// `g ≤ h`: Left, moving second, wins `h - g`.
    pub fn conway_leq(&mut self, g: GameId, h: GameId) -> Result<bool, ArenaError> {
        let d = self.arena.sub(h, g)?;
        Ok(matches!(self.outcome(d), Outcome::SecondWins | Outcome::LeftWins))
    }

    /// `g ≤ h` and not `h ≤ g`.
    pub fn conway_lt(&mut self, g: GameId, h: GameId) -> Result<bool, ArenaError> {
        Ok(self.conway_leq(g, h)? && !self.conway_leq(h, g)?)
    }

    pub fn conway_eq(&mut self, g: GameId, h: GameId) -> Result<bool, ArenaError> {
        let d = self.arena.sub(g, h)?;
        Ok(self.outcome(d) == Outcome::SecondWins)
    }

    pub fn iter_eq(&mut self, g: GameId, h: GameId) -> Result<bool, ArenaError> {
        let d = self.arena.sub(g, h)?;
        Ok(self.is_iteratively_zero(d))
    }

    pub fn relation(&mut self, relation: Relation, g: GameId, h: GameId) -> Result<bool, ArenaError> {
        match relation {
            Relation::Isomorphism => Ok(g == h),
            Relation::IterEq => self.iter_eq(g, h),
            Relation::ConwayEq => self.conway_eq(g, h),
        }
    }

    pub fn verdict_report(&mut self, relation: Relation, g: GameId, h: GameId) -> Result<VerdictReport, ArenaError> {
        let started = std::time::Instant::now();
        let before = self.stats();
        let verdict = self.relation(relation, g, h)?;
        let after = self.stats();
        Ok(VerdictReport {
            relation,
            lhs: g,
            rhs: h,
            verdict,
            stats: VerdictStats {
                nodes_created: after.nodes_created.saturating_sub(before.nodes_created),
                cache_hits: after.cache_hits.saturating_sub(before.cache_hits),
                elapsed_ms: started.elapsed().as_millis() as u64,
            },
        })
    }

    /// Decides `relation` on many pairs. Differences are built first, on
    /// this thread; the verdicts are then evaluated according to the
    /// session's [`Execution`] mode.
    pub fn relation_batch(&mut self, relation: Relation, pairs: &[(GameId, GameId)]) -> Result<Vec<bool>, ArenaError> {
        if relation == Relation::Isomorphism {
            return Ok(pairs.iter().map(|(g, h)| g == h).collect());
        }
        let diffs = pairs
            .iter()
            .map(|&(g, h)| self.arena.sub(g, h))
            .collect::<Result<Vec<_>, _>>()?;
        let execution = self.execution;
        let (arena, memo) = self.frozen();
        Ok(par::map(execution, &diffs, |&d| match relation {
            Relation::IterEq => memo.is_iteratively_zero(arena, d),
            _ => memo.outcome(arena, d) == Outcome::SecondWins,
        }))
    }

    /// Iterative zeroness of many games, evaluated per the execution mode.
    pub fn iteratively_zero_batch(&mut self, games: &[GameId]) -> Vec<bool> {
        let execution = self.execution;
        let (arena, memo) = self.frozen();
        par::map(execution, games, |&g| memo.is_iteratively_zero(arena, g))
    }

    /// Outcomes of many games, evaluated per the execution mode.
    pub fn outcome_batch(&mut self, games: &[GameId]) -> Vec<Outcome> {
        let execution = self.execution;
        let (arena, memo) = self.frozen();
        par::map(execution, games, |&g| memo.outcome(arena, g))
    }

    /// Checks one instance of option-regularity: when every option of each
    /// game is related to some option of the same side of the other, the
    /// games themselves must be related.
    pub fn option_regularity_violation(
        &mut self,
        relation: Relation,
        g: GameId,
        h: GameId,
    ) -> Result<Option<RegularityViolation>, ArenaError> {
        for player in [Player::Left, Player::Right] {
            let gs = self.arena.options(player, g).to_vec();
            let hs = self.arena.options(player, h).to_vec();
            if !self.covered(relation, &gs, &hs)? || !self.covered(relation, &hs, &gs)? {
                return Ok(None);
            }
        }
        if self.relation(relation, g, h)? {
            Ok(None)
        } else {
            Ok(Some(RegularityViolation {
                relation,
                lhs: g,
                rhs: h,
            }))
        }
    }

    fn covered(&mut self, relation: Relation, xs: &[GameId], ys: &[GameId]) -> Result<bool, ArenaError> {
        for &x in xs {
            let mut found = false;
            for &y in ys {
                if self.relation(relation, x, y)? {
                    found = true;
                    break;
                }
            }
            if !found {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conway_order_basics() {
        let mut s = Session::new();
        let one = s.constant("1").unwrap();
        let star = s.constant("*").unwrap();
        let half = s.constant("1/2").unwrap();
        assert!(s.conway_leq(GameId::ZERO, one).unwrap());
        assert!(!s.conway_leq(star, GameId::ZERO).unwrap());
        assert!(!s.conway_leq(GameId::ZERO, star).unwrap());
        assert!(s.conway_leq(half, one).unwrap());
        assert!(s.conway_lt(half, one).unwrap());
        assert!(!s.conway_lt(one, one).unwrap());
    }

    #[test]
    fn batch_matches_single_queries() {
        let mut s = Session::new();
        let forms = s.enumerate_forms(1).unwrap();
        let pairs: Vec<_> = forms.iter().flat_map(|&g| forms.iter().map(move |&h| (g, h))).collect();
        for relation in [Relation::Isomorphism, Relation::IterEq, Relation::ConwayEq] {
            let batch = s.relation_batch(relation, &pairs).unwrap();
            for (&(g, h), &v) in pairs.iter().zip(&batch) {
                assert_eq!(s.relation(relation, g, h).unwrap(), v);
            }
        }
    }

    #[test]
    fn regularity_holds_for_identical_forms() {
        let mut s = Session::new();
        let one = s.constant("1").unwrap();
        let two = s.constant("2").unwrap();
        let one_plus_one = s.add(one, one).unwrap();
        assert_eq!(
            s.option_regularity_violation(Relation::IterEq, one_plus_one, two)
                .unwrap(),
            None
        );
    }
}
