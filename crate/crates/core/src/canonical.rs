//! Reduced representatives modulo iterative equivalence.
//!
//! A form is *reduced* when all of its options are reduced and it is not
//! iteratively equivalent to any of its second options (an option of one of
//! its options). Two reduced forms are iteratively equivalent exactly when
//! they are the same form, so once both sides are reduced an `iter_eq` query
//! is an id comparison.
//!
//! Replacing options by iteratively equivalent ones yields an iteratively
//! equivalent form, and the relation respects sums and negation. Sums and
//! products are therefore reduced bottom-up, option by option, without ever
//! building the unreduced form. The product recursion runs over the original
//! operands and only the option sums are taken on reduced pieces.

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::arena::{Arena, ArenaError, GameId};

const UNKNOWN: u32 = u32::MAX;

/// Default number of memoized sums or products kept before a memo is flushed.
pub const DEFAULT_MEMO_CAP: usize = 1 << 26;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ReduceStats {
    pub collapses: u64,
    pub sums: u64,
    pub products: u64,
    pub flushes: u64,
}

/// Memoized reducer. Reduced forms are interned in the arena it is used with;
/// one canonicalizer must always be paired with the same arena.
#[derive(Debug)]
pub struct IterCanonicalizer {
    reduced: Vec<u32>,
    sums: FxHashMap<u64, GameId>,
    products: FxHashMap<u64, GameId>,
    memo_cap: usize,
    stats: ReduceStats,
    spare: Vec<Vec<GameId>>,
    signatures: Vec<Option<(u64, u64)>>,
}

impl Default for IterCanonicalizer {
    fn default() -> Self {
        Self::new()
    }
}

fn pair_key(a: GameId, b: GameId) -> u64 {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    (lo.index() as u64) << 32 | hi.index() as u64
}

impl IterCanonicalizer {
    pub fn new() -> Self {
        Self::with_memo_cap(DEFAULT_MEMO_CAP)
    }

    pub fn with_memo_cap(memo_cap: usize) -> Self {
        IterCanonicalizer {
            reduced: Vec::new(),
            sums: FxHashMap::default(),
            products: FxHashMap::default(),
            memo_cap: memo_cap.max(1),
            stats: ReduceStats::default(),
            spare: Vec::new(),
            signatures: Vec::new(),
        }
    }

    pub fn stats(&self) -> ReduceStats {
        self.stats
    }

    /// Forgets everything, including which nodes are known to be reduced.
    pub fn clear(&mut self) {
        self.reduced.clear();
        self.signatures.clear();
        self.clear_memos();
    }

    /// Drops the sum and product memos. Lookups in a small memo are much
    /// cheaper, so batch callers flush between unrelated queries.
    pub fn clear_memos(&mut self) {
        self.sums.clear();
        self.products.clear();
    }

    fn known(&self, g: GameId) -> Option<GameId> {
        match self.reduced.get(g.index()) {
            Some(&r) if r != UNKNOWN => Some(GameId::from_index(r as usize)),
            _ => None,
        }
    }

    fn record(&mut self, g: GameId, r: GameId) {
        if self.reduced.len() <= g.index() {
            self.reduced.resize(g.index() + 1, UNKNOWN);
        }
        self.reduced[g.index()] = r.index() as u32;
    }

    /// The reduced form iteratively equivalent to `g`.
    pub fn reduce(&mut self, arena: &mut Arena, g: GameId) -> Result<GameId, ArenaError> {
        if let Some(r) = self.known(g) {
            return Ok(r);
        }
        let node = arena.node(g);
        let (left, right) = (node.left.to_vec(), node.right.to_vec());
        let mut l = self.spare.pop().unwrap_or_default();
        for x in left {
            l.push(self.reduce(arena, x)?);
        }
        let mut r = self.spare.pop().unwrap_or_default();
        for x in right {
            r.push(self.reduce(arena, x)?);
        }
        let out = self.collapse(arena, l, r)?;
        self.record(g, out);
        Ok(out)
    }

    pub fn iter_eq(&mut self, arena: &mut Arena, g: GameId, h: GameId) -> Result<bool, ArenaError> {
        Ok(self.reduce(arena, g)? == self.reduce(arena, h)?)
    }

    /// Reduced form of `a + b` for reduced `a` and `b`.
    #[inline]
    pub fn sum(&mut self, arena: &mut Arena, a: GameId, b: GameId) -> Result<GameId, ArenaError> {
        if a == GameId::ZERO {
            return Ok(b);
        }
        if b == GameId::ZERO {
            return Ok(a);
        }
        match self.sums.get(&pair_key(a, b)) {
            Some(&s) => Ok(s),
            None => self.sum_uncached(arena, a, b),
        }
    }

    #[inline(never)]
    fn sum_uncached(&mut self, arena: &mut Arena, a: GameId, b: GameId) -> Result<GameId, ArenaError> {
        self.stats.sums += 1;
        let mut left = self.spare.pop().unwrap_or_default();
        let mut right = self.spare.pop().unwrap_or_default();
        for i in 0..arena.left(a).len() {
            let x = arena.left(a)[i];
            left.push(self.sum(arena, x, b)?);
        }
        for i in 0..arena.left(b).len() {
            let x = arena.left(b)[i];
            left.push(self.sum(arena, a, x)?);
        }
        for i in 0..arena.right(a).len() {
            let x = arena.right(a)[i];
            right.push(self.sum(arena, x, b)?);
        }
        for i in 0..arena.right(b).len() {
            let x = arena.right(b)[i];
            right.push(self.sum(arena, a, x)?);
        }
        let s = self.collapse(arena, left, right)?;
        if self.sums.len() >= self.memo_cap {
            self.sums.clear();
            self.stats.flushes += 1;
        }
        self.sums.insert(pair_key(a, b), s);
        Ok(s)
    }

    /// Reduced form iteratively equivalent to the Conway product `g·h`.
    /// The operands need not be reduced.
    pub fn product(&mut self, arena: &mut Arena, g: GameId, h: GameId) -> Result<GameId, ArenaError> {
        if g == GameId::ZERO || h == GameId::ZERO {
            return Ok(GameId::ZERO);
        }
        let key = pair_key(g, h);
        if let Some(&p) = self.products.get(&key) {
            return Ok(p);
        }
        self.stats.products += 1;
        let gn = arena.node(g);
        let (gl, gr) = (gn.left.to_vec(), gn.right.to_vec());
        let hn = arena.node(h);
        let (hl, hr) = (hn.left.to_vec(), hn.right.to_vec());
        let mut left = self.spare.pop().unwrap_or_default();
        let mut right = self.spare.pop().unwrap_or_default();
        for (xs, ys, to_left) in [(&gl, &hl, true), (&gr, &hr, true), (&gl, &hr, false), (&gr, &hl, false)] {
            for &a in xs {
                for &b in ys {
                    let o = self.product_option(arena, g, h, a, b)?;
                    if to_left {
                        left.push(o);
                    } else {
                        right.push(o);
                    }
                }
            }
        }
        let p = self.collapse(arena, left, right)?;
        if self.products.len() >= self.memo_cap {
            self.products.clear();
            self.stats.flushes += 1;
        }
        self.products.insert(key, p);
        Ok(p)
    }

    fn product_option(
        &mut self,
        arena: &mut Arena,
        g: GameId,
        h: GameId,
        a: GameId,
        b: GameId,
    ) -> Result<GameId, ArenaError> {
        let ah = self.product(arena, a, h)?;
        let gb = self.product(arena, g, b)?;
        let ab = self.product(arena, a, b)?;
        let partial = self.sum(arena, ah, gb)?;
        let minus_ab = arena.neg(ab)?;
        self.sum(arena, partial, minus_ab)
    }

    // Takes reduced options in any order and recycles both buffers.
    fn collapse(
        &mut self,
        arena: &mut Arena,
        mut left: Vec<GameId>,
        mut right: Vec<GameId>,
    ) -> Result<GameId, ArenaError> {
        left.sort_unstable();
        left.dedup();
        right.sort_unstable();
        right.dedup();
        let out = self.collapse_normalized(arena, &left, &right);
        left.clear();
        right.clear();
        self.spare.push(left);
        self.spare.push(right);
        out
    }

    fn collapse_normalized(
        &mut self,
        arena: &mut Arena,
        left: &[GameId],
        right: &[GameId],
    ) -> Result<GameId, ArenaError> {
        let existing = arena.find_normalized(left, right);
        if let Some(r) = existing.and_then(|n| self.known(n)) {
            return Ok(r);
        }
        if let Some(c) = self.collapse_target(arena, left, right) {
            self.stats.collapses += 1;
            if let Some(n) = existing {
                self.record(n, c);
            }
            return Ok(c);
        }
        let n = match existing {
            Some(n) => n,
            None => arena.intern(left, right)?,
        };
        self.record(n, n);
        Ok(n)
    }

    /// The second option of `{left | right}` it is iteratively equivalent
    /// to, if any. All options must be reduced.
    ///
    /// For reduced `c`, the form is equivalent to `c` exactly when every Left
    /// option either has `c` as a Right option or is itself a Left option of
    /// `c`, dually for Right options, and `c` has no options the form lacks.
    /// An option of maximal birthday cannot be an option of `c`, so `c` is
    /// among its replies.
    fn collapse_target(&mut self, arena: &Arena, left: &[GameId], right: &[GameId]) -> Option<GameId> {
        let pivot_left = left.iter().map(|&x| (arena.birthday(x), x)).max();
        let pivot_right = right.iter().map(|&x| (arena.birthday(x), x)).max();
        let candidates = match (pivot_left, pivot_right) {
            (None, None) => return None,
            (Some((_, o)), None) => arena.right(o),
            (None, Some((_, o))) => arena.left(o),
            (Some((bl, ol)), Some((br, or))) => {
                if bl >= br {
                    arena.right(ol)
                } else {
                    arena.left(or)
                }
            }
        };
        let (sl, sr) = (signature(left), signature(right));
        candidates.iter().copied().find(|&c| {
            let (cl_sig, cr_sig) = self.signatures_of(arena, c);
            if cl_sig & !sl != 0 || cr_sig & !sr != 0 {
                return false;
            }
            covers(left, arena.left(c), |x| arena.right(x).binary_search(&c).is_ok())
                && covers(right, arena.right(c), |x| arena.left(x).binary_search(&c).is_ok())
        })
    }

    fn signatures_of(&mut self, arena: &Arena, c: GameId) -> (u64, u64) {
        if self.signatures.len() <= c.index() {
            self.signatures.resize(c.index() + 1, None);
        }
        *self.signatures[c.index()].get_or_insert_with(|| (signature(arena.left(c)), signature(arena.right(c))))
    }
}

// `own` is a subset of `options`, and every option outside it passes `reply`.
// Both lists are sorted.
fn covers(options: &[GameId], own: &[GameId], reply: impl Fn(GameId) -> bool) -> bool {
    let mut own = own.iter().peekable();
    for &x in options {
        if own.next_if_eq(&&x).is_none() && !reply(x) {
            return false;
        }
    }
    own.peek().is_none()
}

// One bit per id; a subset's signature is covered by the superset's.
fn signature(ids: &[GameId]) -> u64 {
    ids.iter().fold(0, |acc, g| {
        acc | 1u64 << ((g.index() as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15) >> 58)
    })
}
