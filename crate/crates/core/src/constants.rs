//! Named games used throughout the examples and suites.

use thiserror::Error;

use crate::arena::{Arena, ArenaError, GameId};

/// Names accepted by [`constant`] besides integer literals.
pub const NAMED: &[&str] = &["*", "1/2", "2o", "2°", "G_ex", "K_half", "K_bullet", "K_rm", "M3"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstantError {
    #[error("unknown constant `{0}`")]
    Unknown(String),
    #[error(transparent)]
    Arena(#[from] ArenaError),
}

/// Integer `n`: `{n-1|}` above zero, `{|n+1}` below.
pub fn integer(arena: &mut Arena, n: i64) -> Result<GameId, ArenaError> {
    let mut g = GameId::ZERO;
    for _ in 0..n.unsigned_abs() {
        g = if n > 0 {
            arena.intern(&[g], &[])?
        } else {
            arena.intern(&[], &[g])?
        };
    }
    Ok(g)
}

pub fn star(arena: &mut Arena) -> Result<GameId, ArenaError> {
    arena.intern(&[GameId::ZERO], &[GameId::ZERO])
}

pub fn half(arena: &mut Arena) -> Result<GameId, ArenaError> {
    let one = integer(arena, 1)?;
    arena.intern(&[GameId::ZERO], &[one])
}

/// `{0, 1 |}`
pub fn two_circ(arena: &mut Arena) -> Result<GameId, ArenaError> {
    let one = integer(arena, 1)?;
    arena.intern(&[GameId::ZERO, one], &[])
}

/// `{-1, 0 | 0, 1}`
pub fn g_ex(arena: &mut Arena) -> Result<GameId, ArenaError> {
    let one = integer(arena, 1)?;
    let minus_one = integer(arena, -1)?;
    arena.intern(&[minus_one, GameId::ZERO], &[GameId::ZERO, one])
}

/// `1/2 + 1/2 - 1`
pub fn k_half(arena: &mut Arena) -> Result<GameId, ArenaError> {
    let h = half(arena)?;
    let one = integer(arena, 1)?;
    let hh = arena.add(h, h)?;
    arena.sub(hh, one)
}

/// `{0 | K_half || 0 | 0}`
pub fn k_bullet(arena: &mut Arena) -> Result<GameId, ArenaError> {
    let k = k_half(arena)?;
    let left = arena.intern(&[GameId::ZERO], &[k])?;
    let right = star(arena)?;
    arena.intern(&[left], &[right])
}

/// `G_ex + *`
pub fn k_rm(arena: &mut Arena) -> Result<GameId, ArenaError> {
    let g = g_ex(arena)?;
    let s = star(arena)?;
    arena.add(g, s)
}

/// `{-3 |}`
pub fn m3(arena: &mut Arena) -> Result<GameId, ArenaError> {
    let minus_three = integer(arena, -3)?;
    arena.intern(&[minus_three], &[])
}

/// Looks up a named game or an integer literal such as `3` or `-2`.
pub fn constant(arena: &mut Arena, name: &str) -> Result<GameId, ConstantError> {
    let g = match name {
        "*" => star(arena)?,
        "1/2" => half(arena)?,
        "2o" | "2°" => two_circ(arena)?,
        "G_ex" => g_ex(arena)?,
        "K_half" => k_half(arena)?,
        "K_bullet" => k_bullet(arena)?,
        "K_rm" => k_rm(arena)?,
        "M3" => m3(arena)?,
        _ => match name.parse::<i64>() {
            Ok(n) => integer(arena, n)?,
            Err(_) => return Err(ConstantError::Unknown(name.to_string())),
        },
    };
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_constants() {
        let mut a = Arena::new();
        assert_eq!(constant(&mut a, "0").unwrap(), GameId::ZERO);
        let one = constant(&mut a, "1").unwrap();
        assert_eq!(
            constant(&mut a, "2o").unwrap(),
            a.intern(&[GameId::ZERO, one], &[]).unwrap()
        );
        assert_eq!(constant(&mut a, "2°").unwrap(), constant(&mut a, "2o").unwrap());
        let two = constant(&mut a, "2").unwrap();
        assert_eq!(a.left(two), &[one]);
        let m1 = constant(&mut a, "-1").unwrap();
        assert_eq!(a.right(m1), &[GameId::ZERO]);
    }

    #[test]
    fn k_bullet_shape() {
        let mut a = Arena::new();
        let kb = constant(&mut a, "K_bullet").unwrap();
        let k = constant(&mut a, "K_half").unwrap();
        let s = constant(&mut a, "*").unwrap();
        let inner = a.find(&[GameId::ZERO], &[k]).unwrap();
        assert_eq!(a.left(kb), &[inner]);
        assert_eq!(a.right(kb), &[s]);
    }

    #[test]
    fn unknown_name() {
        let mut a = Arena::new();
        assert_eq!(constant(&mut a, "K_nope"), Err(ConstantError::Unknown("K_nope".into())));
    }
}
