//! Numbers, impartial games and sets-as-games.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arena::{ArenaError, GameId};
use crate::session::Session;

const NUMBER_KNOWN: u8 = 1;
const NUMBER: u8 = 1 << 1;
const IMPARTIAL_KNOWN: u8 = 1 << 2;
const IMPARTIAL: u8 = 1 << 3;
const SET_KNOWN: u8 = 1 << 4;
const SET: u8 = 1 << 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TaxonomyError {
    #[error("{0} is not a set")]
    NotASet(GameId),
    #[error("numeral index must be nonnegative, got {0}")]
    Negative(i64),
    #[error(transparent)]
    Arena(#[from] ArenaError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GameClassFlags {
    pub id: GameId,
    pub birthday: u32,
    pub is_number: bool,
    pub is_impartial: bool,
    pub is_set: bool,
}

impl Session {
    fn class_bits(&self, g: GameId) -> u8 {
        self.class_flags.get(g.index()).copied().unwrap_or(0)
    }

    fn set_class_bits(&mut self, g: GameId, bits: u8) {
        if self.class_flags.len() <= g.index() {
            self.class_flags.resize(g.index() + 1, 0);
        }
        self.class_flags[g.index()] |= bits;
    }

    /// Every subposition has each Left option strictly below each Right
    /// option in the Conway order.
    pub fn is_number(&mut self, g: GameId) -> Result<bool, ArenaError> {
        let bits = self.class_bits(g);
        if bits & NUMBER_KNOWN != 0 {
            return Ok(bits & NUMBER != 0);
        }
        let left = self.arena().left(g).to_vec();
        let right = self.arena().right(g).to_vec();
        let mut result = true;
        for &x in left.iter().chain(&right) {
            if !self.is_number(x)? {
                result = false;
                break;
            }
        }
        'pairs: for &l in &left {
            if !result {
                break;
            }
            for &r in &right {
                if !self.conway_lt(l, r)? {
                    result = false;
                    break 'pairs;
                }
            }
        }
        self.set_class_bits(g, if result { NUMBER_KNOWN | NUMBER } else { NUMBER_KNOWN });
        Ok(result)
    }

    /// Both players have the same options, hereditarily.
    pub fn is_impartial(&mut self, g: GameId) -> bool {
        let bits = self.class_bits(g);
        if bits & IMPARTIAL_KNOWN != 0 {
            return bits & IMPARTIAL != 0;
        }
        let left = self.arena().left(g).to_vec();
        let result = left == self.arena().right(g) && left.iter().all(|&x| self.is_impartial(x));
        self.set_class_bits(
            g,
            if result {
                IMPARTIAL_KNOWN | IMPARTIAL
            } else {
                IMPARTIAL_KNOWN
            },
        );
        result
    }

    /// Right has no option in any subposition.
    pub fn is_set(&mut self, g: GameId) -> bool {
        let bits = self.class_bits(g);
        if bits & SET_KNOWN != 0 {
            return bits & SET != 0;
        }
        let left = self.arena().left(g).to_vec();
        let result = self.arena().right(g).is_empty() && left.iter().all(|&x| self.is_set(x));
        self.set_class_bits(g, if result { SET_KNOWN | SET } else { SET_KNOWN });
        result
    }

    pub fn flags(&mut self, g: GameId) -> Result<GameClassFlags, ArenaError> {
        Ok(GameClassFlags {
            id: g,
            birthday: self.birthday(g),
            is_number: self.is_number(g)?,
            is_impartial: self.is_impartial(g),
            is_set: self.is_set(g),
        })
    }

    /// The set `{s | }` with the given elements.
    pub fn set_from_elements(&mut self, elements: &[GameId]) -> Result<GameId, TaxonomyError> {
        if let Some(&bad) = elements.iter().find(|&&e| !self.is_set(e)) {
            return Err(TaxonomyError::NotASet(bad));
        }
        Ok(self.intern(elements, &[])?)
    }

    /// `0`, `{0|}`, `{{0|}|}`, ...
    pub fn zermelo(&mut self, n: i64) -> Result<GameId, TaxonomyError> {
        if n < 0 {
            return Err(TaxonomyError::Negative(n));
        }
        let mut g = GameId::ZERO;
        for _ in 0..n {
            g = self.intern(&[g], &[])?;
        }
        Ok(g)
    }

    /// `n` as the set of all smaller von Neumann numerals.
    pub fn von_neumann(&mut self, n: i64) -> Result<GameId, TaxonomyError> {
        if n < 0 {
            return Err(TaxonomyError::Negative(n));
        }
        let mut elements = Vec::new();
        for _ in 0..n {
            let next = self.intern(&elements, &[])?;
            elements.push(next);
        }
        Ok(self.intern(&elements, &[])?)
    }

    /// Least ordinal above the ranks of all elements.
    pub fn von_neumann_rank(&mut self, g: GameId) -> Result<u32, TaxonomyError> {
        if !self.is_set(g) {
            return Err(TaxonomyError::NotASet(g));
        }
        // for a set this is exactly the birthday
        Ok(self.birthday(g))
    }

    /// All sets of birthday at most `max_birthday`, in interning order.
    pub fn enumerate_sets(&mut self, max_birthday: u32) -> Result<Vec<GameId>, ArenaError> {
        self.enumerate_by_subsets(max_birthday, false)
    }

    /// All impartial games of birthday at most `max_birthday`.
    pub fn enumerate_impartial(&mut self, max_birthday: u32) -> Result<Vec<GameId>, ArenaError> {
        self.enumerate_by_subsets(max_birthday, true)
    }

    fn enumerate_by_subsets(&mut self, max_birthday: u32, mirrored: bool) -> Result<Vec<GameId>, ArenaError> {
        let mut layer = vec![GameId::ZERO];
        for _ in 0..max_birthday {
            if layer.len() >= usize::BITS as usize || 1usize << layer.len() > self.arena().budget() {
                return Err(ArenaError::BudgetExceeded {
                    budget: self.arena().budget(),
                    context: "subset enumeration",
                });
            }
            let mut next = Vec::with_capacity(1 << layer.len());
            for mask in 0..1usize << layer.len() {
                let opts: Vec<GameId> = (0..layer.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| layer[i])
                    .collect();
                let right: &[GameId] = if mirrored { &opts } else { &[] };
                next.push(self.intern(&opts, right)?);
            }
            layer = next;
        }
        Ok(layer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers() {
        let mut s = Session::new();
        for name in ["0", "1", "1/2", "-2"] {
            let g = s.constant(name).unwrap();
            assert!(s.is_number(g).unwrap(), "{name}");
        }
        let star = s.constant("*").unwrap();
        assert!(!s.is_number(star).unwrap());
        let star_star = s.intern(&[star], &[star]).unwrap();
        assert!(!s.is_number(star_star).unwrap());
    }

    #[test]
    fn impartial_and_sets() {
        let mut s = Session::new();
        let star = s.constant("*").unwrap();
        let one = s.constant("1").unwrap();
        let minus_one = s.constant("-1").unwrap();
        let two_circ = s.constant("2o").unwrap();
        assert!(s.is_impartial(GameId::ZERO) && s.is_impartial(star));
        assert!(!s.is_impartial(one));
        assert!(s.is_set(two_circ) && s.is_set(one));
        assert!(!s.is_set(star) && !s.is_set(minus_one));
    }

    #[test]
    fn numerals() {
        let mut s = Session::new();
        let two = s.constant("2").unwrap();
        let two_circ = s.constant("2o").unwrap();
        assert_eq!(s.zermelo(2).unwrap(), two);
        assert_eq!(s.von_neumann(2).unwrap(), two_circ);
        assert_eq!(s.zermelo(0).unwrap(), GameId::ZERO);
        assert_eq!(s.von_neumann(0).unwrap(), GameId::ZERO);
        assert_eq!(s.zermelo(-1), Err(TaxonomyError::Negative(-1)));
        let z3 = s.zermelo(3).unwrap();
        assert_eq!(s.von_neumann_rank(z3).unwrap(), 3);
        assert_eq!(s.von_neumann_rank(two_circ).unwrap(), 2);
    }

    #[test]
    fn set_construction() {
        let mut s = Session::new();
        let one = s.constant("1").unwrap();
        let star = s.constant("*").unwrap();
        assert_eq!(s.set_from_elements(&[]).unwrap(), GameId::ZERO);
        assert_eq!(s.set_from_elements(&[GameId::ZERO]).unwrap(), one);
        let two_circ = s.constant("2o").unwrap();
        assert_eq!(s.set_from_elements(&[GameId::ZERO, one]).unwrap(), two_circ);
        assert_eq!(s.set_from_elements(&[star]), Err(TaxonomyError::NotASet(star)));
        assert_eq!(s.von_neumann_rank(star), Err(TaxonomyError::NotASet(star)));
    }

    #[test]
    fn small_class_counts() {
        let mut s = Session::new();
        let counts: Vec<_> = (0..4).map(|n| s.enumerate_sets(n).unwrap().len()).collect();
        assert_eq!(counts, [1, 2, 4, 16]);
        let counts: Vec<_> = (0..4).map(|n| s.enumerate_impartial(n).unwrap().len()).collect();
        assert_eq!(counts, [1, 2, 4, 16]);
    }
}
