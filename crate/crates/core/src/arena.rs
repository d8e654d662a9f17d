//! Hash-consed storage for finite game forms.
//!
//! Every form lives in a single append-only [`Arena`]. Option lists are
//! sorted and deduplicated before interning, and children are always interned
//! before their parents, so two forms receive the same [`GameId`] exactly when
//! they are extensionally equal (recursively the same option sets).

use std::fmt;
use std::hash::{BuildHasher, Hash, Hasher};

use hashbrown::HashTable;
use rustc_hash::{FxBuildHasher, FxHashMap};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default cap on the number of interned nodes.
pub const DEFAULT_NODE_BUDGET: usize = 5_000_000;

/// Handle to an interned game form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GameId(u32);

impl GameId {
    /// The empty game `{|}`. Always the first node of every arena.
    pub const ZERO: GameId = GameId(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(index: usize) -> Self {
        GameId(u32::try_from(index).expect("game index exceeds u32 range"))
    }
}

impl fmt::Display for GameId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArenaError {
    #[error("node budget of {budget} exhausted while building {context}")]
    BudgetExceeded { budget: usize, context: &'static str },
    #[error("game id {0} is not interned in this arena")]
    UnknownId(GameId),
}

/// Left or Right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Player {
    Left,
    Right,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Left => Player::Right,
            Player::Right => Player::Left,
        }
    }
}

/// Borrowed view of one interned node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GameNode<'a> {
    pub left: &'a [GameId],
    pub right: &'a [GameId],
}

impl GameNode<'_> {
    pub fn options(&self, player: Player) -> &[GameId] {
        match player {
            Player::Left => self.left,
            Player::Right => self.right,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Span {
    start: usize,
    left: u32,
    right: u32,
    birthday: u32,
}

impl Span {
    fn left_range(&self) -> std::ops::Range<usize> {
        self.start..self.start + self.left as usize
    }

    fn right_range(&self) -> std::ops::Range<usize> {
        let mid = self.start + self.left as usize;
        mid..mid + self.right as usize
    }
}

/// Construction counters, reported alongside relation verdicts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ArenaStats {
    pub nodes_created: u64,
    pub memo_hits: u64,
}

/// Append-only table of game forms plus the memo tables of the structural
/// operations (negation, sum, Conway product).
#[derive(Clone)]
pub struct Arena {
    spans: Vec<Span>,
    opts: Vec<GameId>,
    table: HashTable<GameId>,
    hasher: FxBuildHasher,
    budget: usize,
    neg_memo: Vec<u32>,
    add_memo: FxHashMap<(GameId, GameId), GameId>,
    product_memo: FxHashMap<(GameId, GameId), GameId>,
    stats: ArenaStats,
}

const UNKNOWN: u32 = u32::MAX;

fn unordered(a: GameId, b: GameId) -> (GameId, GameId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn hash_sides(hasher: &FxBuildHasher, left: &[GameId], right: &[GameId]) -> u64 {
    let mut state = hasher.build_hasher();
    left.hash(&mut state);
    right.hash(&mut state);
    state.finish()
}

impl Default for Arena {
    fn default() -> Self {
        Self::new()
    }
}

impl fmt::Debug for Arena {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Arena")
            .field("nodes", &self.spans.len())
            .field("budget", &self.budget)
            .finish()
    }
}

impl Arena {
    pub fn new() -> Self {
        Self::with_budget(DEFAULT_NODE_BUDGET)
    }

    pub fn with_budget(budget: usize) -> Self {
        let mut arena = Arena {
            spans: Vec::new(),
            opts: Vec::new(),
            table: HashTable::new(),
            hasher: FxBuildHasher,
            budget: budget.max(1),
            neg_memo: Vec::new(),
            add_memo: FxHashMap::default(),
            product_memo: FxHashMap::default(),
            stats: ArenaStats::default(),
        };
        let zero = arena
            .intern_sorted(Vec::new(), Vec::new(), "zero")
            .expect("budget admits the zero game");
        debug_assert_eq!(zero, GameId::ZERO);
        arena
    }

    pub fn len(&self) -> usize {
        self.spans.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spans.is_empty()
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn set_budget(&mut self, budget: usize) {
        self.budget = budget.max(1);
    }

    pub fn stats(&self) -> ArenaStats {
        self.stats
    }

    pub fn contains(&self, g: GameId) -> bool {
        g.index() < self.spans.len()
    }

    /// All interned ids in ascending order.
    pub fn ids(&self) -> impl ExactSizeIterator<Item = GameId> + '_ {
        (0..self.spans.len()).map(GameId::from_index)
    }

    pub fn node(&self, g: GameId) -> GameNode<'_> {
        let span = self.spans[g.index()];
        GameNode {
            left: &self.opts[span.left_range()],
            right: &self.opts[span.right_range()],
        }
    }

    pub fn left(&self, g: GameId) -> &[GameId] {
        &self.opts[self.spans[g.index()].left_range()]
    }

    pub fn right(&self, g: GameId) -> &[GameId] {
        &self.opts[self.spans[g.index()].right_range()]
    }

    pub fn options(&self, player: Player, g: GameId) -> &[GameId] {
        match player {
            Player::Left => self.left(g),
            Player::Right => self.right(g),
        }
    }

    /// `0` for the empty game, otherwise one more than the largest option birthday.
    pub fn birthday(&self, g: GameId) -> u32 {
        self.spans[g.index()].birthday
    }

    /// Looks up a node without creating it.
    pub fn find(&self, left: &[GameId], right: &[GameId]) -> Option<GameId> {
        let mut left = left.to_vec();
        let mut right = right.to_vec();
        normalize(&mut left);
        normalize(&mut right);
        self.find_normalized(&left, &right)
    }

    /// Like [`Arena::find`], for option lists that are already strictly ascending.
    pub fn find_normalized(&self, left: &[GameId], right: &[GameId]) -> Option<GameId> {
        debug_assert!(left.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(right.windows(2).all(|w| w[0] < w[1]));
        let hash = hash_sides(&self.hasher, left, right);
        self.table
            .find(hash, |&id| {
                let node = self.node(id);
                node.left == left && node.right == right
            })
            .copied()
    }

    /// Interns the form `{left | right}`. Option order and duplicates are
    /// irrelevant; the same option sets always yield the same id.
    pub fn intern(&mut self, left: &[GameId], right: &[GameId]) -> Result<GameId, ArenaError> {
        for &g in left.iter().chain(right) {
            if !self.contains(g) {
                return Err(ArenaError::UnknownId(g));
            }
        }
        self.intern_sorted(left.to_vec(), right.to_vec(), "intern")
    }

    fn intern_sorted(
        &mut self,
        mut left: Vec<GameId>,
        mut right: Vec<GameId>,
        context: &'static str,
    ) -> Result<GameId, ArenaError> {
        normalize(&mut left);
        normalize(&mut right);
        let hash = hash_sides(&self.hasher, &left, &right);
        let spans = &self.spans;
        let opts = &self.opts;
        let found = self.table.find(hash, |&id| {
            let span = spans[id.index()];
            &opts[span.left_range()] == left.as_slice() && &opts[span.right_range()] == right.as_slice()
        });
        if let Some(&id) = found {
            return Ok(id);
        }
        if self.spans.len() >= self.budget {
            return Err(ArenaError::BudgetExceeded {
                budget: self.budget,
                context,
            });
        }
        let birthday = left
            .iter()
            .chain(&right)
            .map(|&g| self.spans[g.index()].birthday + 1)
            .max()
            .unwrap_or(0);
        let id = GameId::from_index(self.spans.len());
        self.spans.push(Span {
            start: self.opts.len(),
            left: left.len() as u32,
            right: right.len() as u32,
            birthday,
        });
        self.opts.extend_from_slice(&left);
        self.opts.extend_from_slice(&right);
        self.neg_memo.push(UNKNOWN);
        let spans = &self.spans;
        let opts = &self.opts;
        let hasher = &self.hasher;
        self.table.insert_unique(hash, id, |&other| {
            let span = spans[other.index()];
            hash_sides(hasher, &opts[span.left_range()], &opts[span.right_range()])
        });
        self.stats.nodes_created += 1;
        Ok(id)
    }

    /// Swaps the roles of Left and Right throughout the form.
    pub fn neg(&mut self, g: GameId) -> Result<GameId, ArenaError> {
        let cached = self.neg_memo[g.index()];
        if cached != UNKNOWN {
            self.stats.memo_hits += 1;
            return Ok(GameId(cached));
        }
        let span = self.spans[g.index()];
        let mut left = Vec::with_capacity(span.right as usize);
        for i in span.right_range() {
            let gr = self.opts[i];
            left.push(self.neg(gr)?);
        }
        let mut right = Vec::with_capacity(span.left as usize);
        for i in span.left_range() {
            let gl = self.opts[i];
            right.push(self.neg(gl)?);
        }
        let result = self.intern_sorted(left, right, "negation")?;
        self.neg_memo[g.index()] = result.0;
        Ok(result)
    }

    /// Disjunctive sum: a move is a move in exactly one component.
    pub fn add(&mut self, g: GameId, h: GameId) -> Result<GameId, ArenaError> {
        let key = unordered(g, h);
        if let Some(&sum) = self.add_memo.get(&key) {
            self.stats.memo_hits += 1;
            return Ok(sum);
        }
        let (gs, hs) = (self.spans[g.index()], self.spans[h.index()]);
        let mut left = Vec::with_capacity((gs.left + hs.left) as usize);
        let mut right = Vec::with_capacity((gs.right + hs.right) as usize);
        for i in gs.left_range() {
            let gl = self.opts[i];
            left.push(self.add(gl, h)?);
        }
        for i in hs.left_range() {
            let hl = self.opts[i];
            left.push(self.add(g, hl)?);
        }
        for i in gs.right_range() {
            let gr = self.opts[i];
            right.push(self.add(gr, h)?);
        }
        for i in hs.right_range() {
            let hr = self.opts[i];
            right.push(self.add(g, hr)?);
        }
        let sum = self.intern_sorted(left, right, "sum")?;
        if self.add_memo.len() >= self.memo_cap() {
            self.add_memo.clear();
        }
        self.add_memo.insert(key, sum);
        Ok(sum)
    }

    /// `g - h`, that is `g + (-h)`.
    pub fn sub(&mut self, g: GameId, h: GameId) -> Result<GameId, ArenaError> {
        let minus_h = self.neg(h)?;
        self.add(g, minus_h)
    }

    /// Conway product. Left options come from same-side option pairs,
    /// Right options from mixed pairs, each of the shape
    /// `a·h + g·b - a·b`.
    pub fn product(&mut self, g: GameId, h: GameId) -> Result<GameId, ArenaError> {
        let key = unordered(g, h);
        if let Some(&p) = self.product_memo.get(&key) {
            self.stats.memo_hits += 1;
            return Ok(p);
        }
        let (gs, hs) = (self.spans[g.index()], self.spans[h.index()]);
        let mut left = Vec::new();
        let mut right = Vec::new();
        for i in gs.left_range() {
            for j in hs.left_range() {
                let (a, b) = (self.opts[i], self.opts[j]);
                left.push(self.product_option(g, h, a, b)?);
            }
        }
        for i in gs.right_range() {
            for j in hs.right_range() {
                let (a, b) = (self.opts[i], self.opts[j]);
                left.push(self.product_option(g, h, a, b)?);
            }
        }
        for i in gs.left_range() {
            for j in hs.right_range() {
                let (a, b) = (self.opts[i], self.opts[j]);
                right.push(self.product_option(g, h, a, b)?);
            }
        }
        for i in gs.right_range() {
            for j in hs.left_range() {
                let (a, b) = (self.opts[i], self.opts[j]);
                right.push(self.product_option(g, h, a, b)?);
            }
        }
        let p = self.intern_sorted(left, right, "product")?;
        if self.product_memo.len() >= self.memo_cap() {
            self.product_memo.clear();
        }
        self.product_memo.insert(key, p);
        Ok(p)
    }

    // a·h + g·b - a·b, where a is an option of g and b an option of h.
    fn product_option(&mut self, g: GameId, h: GameId, a: GameId, b: GameId) -> Result<GameId, ArenaError> {
        let ah = self.product(a, h)?;
        let gb = self.product(g, b)?;
        let ab = self.product(a, b)?;
        let partial = self.add(ah, gb)?;
        self.sub(partial, ab)
    }

    /// Copies `g` from another arena into this one, returning its id here.
    /// `memo` maps ids of `source` to ids of `self` and may be reused across
    /// calls with the same pair of arenas.
    pub fn import(
        &mut self,
        source: &Arena,
        g: GameId,
        memo: &mut FxHashMap<GameId, GameId>,
    ) -> Result<GameId, ArenaError> {
        if let Some(&id) = memo.get(&g) {
            return Ok(id);
        }
        let node = source.node(g);
        let mut left = Vec::with_capacity(node.left.len());
        for &x in node.left {
            left.push(self.import(source, x, memo)?);
        }
        let mut right = Vec::with_capacity(node.right.len());
        for &x in node.right {
            right.push(self.import(source, x, memo)?);
        }
        let id = self.intern_sorted(left, right, "import")?;
        memo.insert(g, id);
        Ok(id)
    }

    /// `g` together with every hereditary option, ascending by id.
    pub fn subpositions(&self, g: GameId) -> Vec<GameId> {
        let mut seen = vec![false; g.index() + 1];
        let mut stack = vec![g];
        seen[g.index()] = true;
        let mut out = Vec::new();
        while let Some(x) = stack.pop() {
            out.push(x);
            let node = self.node(x);
            for &o in node.left.iter().chain(node.right) {
                if !seen[o.index()] {
                    seen[o.index()] = true;
                    stack.push(o);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Every form of birthday at most `max_birthday`, in a fixed order that
    /// does not depend on what the arena already holds: layer `n + 1` lists
    /// the pairs `(left mask, right mask)` of subsets of layer `n`, left mask
    /// outermost, bit `i` selecting the `i`-th game of layer `n`.
    pub fn enumerate_forms(&mut self, max_birthday: u32) -> Result<Vec<GameId>, ArenaError> {
        let mut layer = vec![GameId::ZERO];
        for _ in 0..max_birthday {
            layer = self.subset_pairs(&layer)?;
        }
        Ok(layer)
    }

    fn subset_pairs(&mut self, base: &[GameId]) -> Result<Vec<GameId>, ArenaError> {
        let exhausted = ArenaError::BudgetExceeded {
            budget: self.budget,
            context: "form enumeration",
        };
        // 4^|base| forms; refuse up front rather than half-building the layer
        let subsets = u32::try_from(base.len())
            .ok()
            .and_then(|n| 1usize.checked_shl(n))
            .ok_or_else(|| exhausted.clone())?;
        let total = subsets.checked_mul(subsets).ok_or_else(|| exhausted.clone())?;
        if total > self.budget {
            return Err(exhausted);
        }
        let pick = |mask: usize| -> Vec<GameId> {
            base.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &g)| g)
                .collect()
        };
        let mut out = Vec::with_capacity(total);
        for lmask in 0..subsets {
            for rmask in 0..subsets {
                out.push(self.intern_sorted(pick(lmask), pick(rmask), "form enumeration")?);
            }
        }
        Ok(out)
    }

    // Sum and product memos are flushed once they hold this many entries.
    fn memo_cap(&self) -> usize {
        self.budget.saturating_mul(2).max(1 << 16)
    }

    /// Drops the neg/sum/product memo tables. Nodes are untouched.
    pub fn clear_operation_memos(&mut self) {
        self.neg_memo.iter_mut().for_each(|m| *m = UNKNOWN);
        self.add_memo.clear();
        self.product_memo.clear();
    }
}

fn normalize(options: &mut Vec<GameId>) {
    options.sort_unstable();
    options.dedup();
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_is_first() {
        let mut a = Arena::new();
        assert_eq!(a.intern(&[], &[]).unwrap(), GameId::ZERO);
        assert_eq!(a.birthday(GameId::ZERO), 0);
    }

    #[test]
    fn intern_is_idempotent_and_order_free() {
        let mut a = Arena::new();
        let one = a.intern(&[GameId::ZERO], &[]).unwrap();
        assert_eq!(a.intern(&[GameId::ZERO], &[]).unwrap(), one);
        let star = a.intern(&[GameId::ZERO], &[GameId::ZERO]).unwrap();
        let g = a.intern(&[star, one, GameId::ZERO, one], &[]).unwrap();
        let h = a.intern(&[GameId::ZERO, one, star], &[]).unwrap();
        assert_eq!(g, h);
        assert_eq!(a.left(g), &[GameId::ZERO, one, star]);
        assert_eq!(a.find(&[one, GameId::ZERO, star], &[]), Some(g));
        assert_eq!(a.find(&[], &[one]), None);
    }

    #[test]
    fn unknown_ids_are_rejected() {
        let mut a = Arena::new();
        let err = a.intern(&[GameId::from_index(7)], &[]).unwrap_err();
        assert_eq!(err, ArenaError::UnknownId(GameId::from_index(7)));
    }

    #[test]
    fn budget_is_enforced() {
        let mut a = Arena::with_budget(3);
        let one = a.intern(&[GameId::ZERO], &[]).unwrap();
        let _two = a.intern(&[one], &[]).unwrap();
        // re-interning an existing node never costs budget
        assert_eq!(a.intern(&[GameId::ZERO], &[]).unwrap(), one);
        let err = a.intern(&[GameId::ZERO, one], &[]).unwrap_err();
        assert!(matches!(err, ArenaError::BudgetExceeded { budget: 3, .. }));
        assert_eq!(a.len(), 3);
    }

    #[test]
    fn birthdays() {
        let mut a = Arena::new();
        let one = a.intern(&[GameId::ZERO], &[]).unwrap();
        let star = a.intern(&[GameId::ZERO], &[GameId::ZERO]).unwrap();
        let two_o = a.intern(&[GameId::ZERO, one], &[]).unwrap();
        assert_eq!(a.birthday(star), 1);
        assert_eq!(a.birthday(two_o), 2);
    }

    #[test]
    fn subpositions_walk_the_dag() {
        let mut a = Arena::new();
        assert_eq!(a.subpositions(GameId::ZERO), vec![GameId::ZERO]);
        let one = a.intern(&[GameId::ZERO], &[]).unwrap();
        let star = a.intern(&[GameId::ZERO], &[GameId::ZERO]).unwrap();
        let two_o = a.intern(&[GameId::ZERO, one], &[]).unwrap();
        assert_eq!(a.subpositions(star), vec![GameId::ZERO, star]);
        assert_eq!(a.subpositions(two_o), vec![GameId::ZERO, one, two_o]);
    }

    #[test]
    fn enumeration_counts() {
        let mut a = Arena::new();
        assert_eq!(a.enumerate_forms(0).unwrap().len(), 1);
        assert_eq!(a.enumerate_forms(1).unwrap().len(), 4);
        let day2 = a.enumerate_forms(2).unwrap();
        assert_eq!(day2.len(), 256);
        let mut sorted = day2.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 256);
        assert!(matches!(a.enumerate_forms(3), Err(ArenaError::BudgetExceeded { .. })));
    }

    #[test]
    fn enumeration_is_closed_under_options() {
        let mut a = Arena::new();
        let day2 = a.enumerate_forms(2).unwrap();
        for &g in &day2 {
            let node = a.node(g);
            for o in node.left.iter().chain(node.right) {
                assert!(day2.contains(o));
            }
        }
    }

    #[test]
    fn neg_of_zero_and_star() {
        let mut a = Arena::new();
        assert_eq!(a.neg(GameId::ZERO).unwrap(), GameId::ZERO);
        let star = a.intern(&[GameId::ZERO], &[GameId::ZERO]).unwrap();
        assert_eq!(a.neg(star).unwrap(), star);
        let one = a.intern(&[GameId::ZERO], &[]).unwrap();
        let minus_one = a.neg(one).unwrap();
        assert_eq!(a.right(minus_one), &[GameId::ZERO]);
        assert!(a.left(minus_one).is_empty());
    }

    #[test]
    fn one_plus_one_is_two() {
        let mut a = Arena::new();
        let one = a.intern(&[GameId::ZERO], &[]).unwrap();
        let two = a.intern(&[one], &[]).unwrap();
        assert_eq!(a.add(one, one).unwrap(), two);
    }

    #[test]
    fn star_times_star() {
        let mut a = Arena::new();
        let star = a.intern(&[GameId::ZERO], &[GameId::ZERO]).unwrap();
        assert_eq!(a.product(star, star).unwrap(), star);
        assert_eq!(a.product(star, GameId::ZERO).unwrap(), GameId::ZERO);
    }

    #[test]
    fn product_budget_failure_is_reported() {
        let mut a = Arena::with_budget(40);
        let forms = a.enumerate_forms(1).unwrap();
        let big = a.intern(&forms, &forms).unwrap();
        match a.product(big, big) {
            Err(ArenaError::BudgetExceeded { budget, context }) => {
                assert_eq!(budget, 40);
                assert!(!context.is_empty());
            }
            other => panic!("expected a budget failure, got {other:?}"),
        }
        assert!(a.len() <= 40);
    }
}
