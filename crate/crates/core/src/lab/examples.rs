use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arena::{ArenaError, GameId};
use crate::constants;
use crate::lab::report::{Suite, SuiteReport};
use crate::refute::gro_tsen_refute;
use crate::relations::{Outcome, RelationMemo};
use crate::session::Session;

const SPOT_SEED: u64 = 1;
const SPOT_ADDENDS: usize = 8;

fn named(session: &mut Session, name: &str) -> Result<GameId, ArenaError> {
    session.constant(name).map_err(|e| match e {
        constants::ConstantError::Arena(e) => e,
        constants::ConstantError::Unknown(_) => unreachable!("built-in name"),
    })
}

/// The worked examples and counterexamples: iterative zeroness of small
/// forms, the product failing to respect Conway equivalence, zero divisors,
/// numbers, sets and numerals, and the `{-3|}` multiplier example.
pub fn example_suite(session: &mut Session) -> Result<SuiteReport, ArenaError> {
    let mut suite = Suite::new("examples");
    let zero = GameId::ZERO;
    let one = named(session, "1")?;
    let two = named(session, "2")?;
    let minus_one = named(session, "-1")?;
    let star = named(session, "*")?;
    let half = named(session, "1/2")?;
    let two_circ = named(session, "2o")?;
    let g_ex = named(session, "G_ex")?;
    let k_half = named(session, "K_half")?;
    let k_bullet = named(session, "K_bullet")?;
    let k_rm = named(session, "K_rm")?;
    let m3 = named(session, "M3")?;

    let a = session.intern(&[minus_one], &[two_circ])?;
    let v = session.is_iteratively_zero(a);
    suite.check_eq("iz(-1|2o)", &[a], true, v);
    let b = session.intern(&[minus_one], &[two])?;
    let v = session.is_iteratively_zero(b);
    suite.check_eq("iz(-1|2)", &[b], false, v);

    suite.check_eq(
        "outcome(K_half)",
        &[k_half],
        Outcome::SecondWins,
        session.outcome(k_half),
    );
    let v = session.is_iteratively_zero(k_half);
    suite.check_eq("iz(K_half)", &[k_half], false, v);
    suite.check_eq(
        "outcome(K_bullet)",
        &[k_bullet],
        Outcome::SecondWins,
        session.outcome(k_bullet),
    );
    let v = session.is_iteratively_zero(k_bullet);
    suite.check_eq("iz(K_bullet)", &[k_bullet], false, v);

    suite.check_eq("outcome(K_rm)", &[k_rm], Outcome::SecondWins, session.outcome(k_rm));
    let p = session.product(star, star)?;
    suite.check_eq("star*star", &[star], star, p);
    let p = session.product(g_ex, star)?;
    let expected = session.intern(&[zero, star], &[zero, star])?;
    suite.check_eq("G_ex*star", &[g_ex, star], expected, p);
    let square = session.product(k_rm, k_rm)?;
    suite.check_eq(
        "outcome(K_rm*K_rm)",
        &[k_rm],
        Outcome::FirstWins,
        session.outcome(square),
    );

    let p = session.product(two, star)?;
    let v = session.iter_eq(p, zero)?;
    suite.check_eq("2*star~0", &[two, star], true, v);
    let v = session.iter_eq(two, zero)?;
    suite.check_eq("2~0", &[two], false, v);
    let v = session.iter_eq(star, zero)?;
    suite.check_eq("star~0", &[star], false, v);
    let hh = session.add(half, half)?;
    let v = session.iter_eq(hh, one)?;
    suite.check_eq("1/2+1/2~1", &[hh, one], false, v);
    let v = session.conway_eq(hh, one)?;
    suite.check_eq("1/2+1/2=c1", &[hh, one], true, v);
    for g in [zero, one, half, two, minus_one] {
        let v = session.is_number(g)?;
        suite.check_eq("is-number", &[g], true, v);
    }
    let v = session.is_number(star)?;
    suite.check_eq("is-number", &[star], false, v);
    let star_star = session.intern(&[star], &[star])?;
    let v = session.is_number(star_star)?;
    suite.check_eq("is-number({*|*})", &[star_star], false, v);
    let v = session.iter_eq(star_star, zero)?;
    suite.check_eq("{*|*}~0", &[star_star], true, v);

    let day2 = session.enumerate_forms(2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(SPOT_SEED);
    let addends: Vec<GameId> = (0..SPOT_ADDENDS).map(|_| day2[rng.gen_range(0..day2.len())]).collect();
    let pairs: Vec<(GameId, GameId)> = day2.iter().flat_map(|&g| day2.iter().map(move |&h| (g, h))).collect();
    let conway = session.relation_batch(crate::Relation::ConwayEq, &pairs)?;
    for (&(g, h), equal) in pairs.iter().zip(conway) {
        if !equal || g >= h {
            continue;
        }
        for &k in &addends {
            let gk = session.add(g, k)?;
            let hk = session.add(h, k)?;
            suite.check_eq(
                "conway-outcome-invariance",
                &[g, h, k],
                session.outcome(gk),
                session.outcome(hk),
            );
        }
    }

    let square = session.product(two_circ, two_circ)?;
    let double = session.add(two_circ, two_circ)?;
    let double_minus_one = session.sub(double, one)?;
    let expected = session.intern(&[zero, two_circ, double_minus_one], &[])?;
    suite.check_eq("2o*2o", &[two_circ], expected, square);
    let v = session.iter_eq(square, double)?;
    suite.check_eq("2o*2o~2o+2o", &[square, double], false, v);
    let sets = session.enumerate_sets(3)?;
    for &s in &sets {
        let v = session.iter_eq(s, square)?;
        suite.check_eq("set~2o*2o", &[s, square], false, v);
        let rank = session.von_neumann_rank(s).expect("enumerated sets are sets");
        let numeral = session.von_neumann(rank as i64).expect("rank is nonnegative");
        let v = session.conway_eq(s, numeral)?;
        suite.check_eq("rank-collapse", &[s, numeral], true, v);
    }
    for n in 0..=3 {
        let z = session.zermelo(n).expect("n is nonnegative");
        let vn = session.von_neumann(n).expect("n is nonnegative");
        let v = session.conway_eq(z, vn)?;
        suite.check_eq("zermelo=c-von-neumann", &[z, vn], true, v);
    }
    let v = session.iter_eq(two, two_circ)?;
    suite.check_eq("2~2o", &[two, two_circ], false, v);

    let multiplier = session.intern(&[zero], &[zero, star])?;
    let witness = gro_tsen_refute(session, m3, zero, &[multiplier])?;
    let found = witness.as_ref().map(|w| w.games[0]);
    suite.check_eq("grotsen(M3,0)", &[m3, zero], Some(multiplier), found);
    if let Some(w) = witness {
        let mut cold = Session::from_parts(session.arena().clone(), RelationMemo::new());
        let v = w.replay(&mut cold, m3, zero)?;
        suite.check("grotsen(M3,0)-replays", &[m3, zero, multiplier], v);
    }
    let mut factors = Vec::new();
    for &h in &day2 {
        if session.is_number(h)? {
            factors.push(h);
        }
    }
    factors.extend(session.enumerate_impartial(3)?);
    for h in factors {
        let p = session.product(m3, h)?;
        suite.check_eq("M3*H=c0", &[m3, h], Outcome::SecondWins, session.outcome(p));
    }
    Ok(suite.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_examples_pass() {
        let mut s = Session::new();
        let r = example_suite(&mut s).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.checks["set~2o*2o"], 16);
    }
}
