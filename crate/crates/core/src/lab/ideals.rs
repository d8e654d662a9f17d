use crate::arena::{ArenaError, GameId};
use crate::constants;
use crate::lab::report::{Suite, SuiteReport};
use crate::relations::Outcome;
use crate::session::Session;

/// Bounded closure experiments: impartial games under sums and products,
/// numbers under the ring operations, and the failure of sets to be closed
/// under products. Impartial games and sets range up to `max_birthday`;
/// numbers up to `min(max_birthday, 2)`.
pub fn ideal_experiments(session: &mut Session, max_birthday: u32) -> Result<SuiteReport, ArenaError> {
    let mut suite = Suite::new("ideals");
    let forms = session.enumerate_forms(max_birthday.min(2))?;
    let impartial = session.enumerate_impartial(max_birthday)?;

    for &g in &impartial {
        for &h in &impartial {
            let s = session.add(g, h)?;
            let v = session.is_impartial(s);
            suite.check("impartial-sum", &[g, h], v);
        }
    }
    let small_impartial: Vec<GameId> = impartial
        .iter()
        .copied()
        .filter(|&h| session.birthday(h) <= max_birthday.min(2))
        .collect();
    for &g in &forms {
        for &h in &small_impartial {
            let p = session.product(g, h)?;
            let v = session.is_impartial(p);
            suite.check("impartial-absorbs-product", &[g, h], v);
        }
    }

    let mut numbers = Vec::new();
    for &g in &forms {
        if session.is_number(g)? {
            numbers.push(g);
        }
    }
    suite.finding("numbers", numbers.len());
    for &g in &numbers {
        let n = session.neg(g)?;
        let v = session.is_number(n)?;
        suite.check("number-neg", &[g], v);
        for &h in &numbers {
            let s = session.add(g, h)?;
            let v = session.is_number(s)?;
            suite.check("number-sum", &[g, h], v);
            let p = session.product(g, h)?;
            let v = session.is_number(p)?;
            suite.check("number-product", &[g, h], v);
            if session.outcome(g) == Outcome::SecondWins {
                suite.check_eq("zero-number-absorbs", &[g, h], Outcome::SecondWins, session.outcome(p));
            }
        }
    }

    let two_circ = constants::two_circ(session.arena_mut())?;
    let square = session.product(two_circ, two_circ)?;
    let double = session.add(two_circ, two_circ)?;
    let one = constants::integer(session.arena_mut(), 1)?;
    let double_minus_one = session.sub(double, one)?;
    let expected = session.intern(&[GameId::ZERO, two_circ, double_minus_one], &[])?;
    suite.check_eq("set-square-form", &[two_circ], expected, square);
    let v = session.iter_eq(square, double)?;
    suite.check_eq("set-square-vs-double", &[square, double], false, v);
    let v = session.is_set(square);
    suite.check_eq("set-square-is-set", &[square], false, v);
    let sets = session.enumerate_sets(max_birthday)?;
    suite.finding("sets", sets.len());
    for &s in &sets {
        let v = session.iter_eq(s, square)?;
        suite.check_eq("set-square-not-a-set", &[s, square], false, v);
        let rank = session.von_neumann_rank(s).expect("enumerated sets are sets");
        let numeral = session.von_neumann(rank as i64).expect("rank is nonnegative");
        let v = session.conway_eq(s, numeral)?;
        suite.check("set-rank-collapse", &[s, numeral], v);
    }
    for &g in &sets {
        for &h in &sets {
            let sum = session.add(g, h)?;
            let v = session.is_set(sum);
            suite.check("set-sum", &[g, h], v);
            let v = session.iter_eq(g, h)?;
            suite.check_eq("set-rigidity", &[g, h], g == h, v);
        }
    }
    for n in 0..=max_birthday as i64 {
        let z = session.zermelo(n).expect("n is nonnegative");
        let vn = session.von_neumann(n).expect("n is nonnegative");
        let v = session.conway_eq(z, vn)?;
        suite.check("zermelo=c-von-neumann", &[z, vn], v);
    }
    let z = session.zermelo(2).expect("2 is nonnegative");
    let vn = session.von_neumann(2).expect("2 is nonnegative");
    let v = session.iter_eq(z, vn)?;
    suite.check_eq("zermelo-vs-von-neumann-iter", &[z, vn], false, v);
    Ok(suite.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounded_experiments_pass() {
        let mut s = Session::new();
        let r = ideal_experiments(&mut s, 3).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.checks["set-square-not-a-set"], 16);
        assert_eq!(r.checks["set-rigidity"], 256);
    }
}
