use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::arena::{ArenaError, GameId};
use crate::lab::classify::classify;
use crate::lab::report::{Suite, SuiteReport};
use crate::lab::ring::EXHAUSTIVE_LIMIT;
use crate::refute::gro_tsen_refute;
use crate::relations::{Outcome, Relation};
use crate::session::Session;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LemmaConfig {
    pub seed: u64,
    /// Seeded `(G, H)` draws for absorption when the full product is too large.
    pub absorption_samples: usize,
    /// Seeded quadruples for compatibility with sums.
    pub sum_samples: usize,
}

impl Default for LemmaConfig {
    fn default() -> Self {
        LemmaConfig {
            seed: 1,
            absorption_samples: 1000,
            sum_samples: 1000,
        }
    }
}

/// Closure and cancellation laws of iteratively zero games, absorption by
/// products, the refinement chain between the relations, and compatibility
/// of iterative equivalence with sums.
pub fn lemma_suite(session: &mut Session, config: &LemmaConfig) -> Result<SuiteReport, ArenaError> {
    let mut suite = Suite::seeded("lemmas", config.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let day1 = session.enumerate_forms(1)?;
    let day2 = session.enumerate_forms(2)?;
    let impartial = session.enumerate_impartial(3)?;

    for &g in &day2 {
        let o = session.outcome(g);
        let n = session.neg(g)?;
        let mirrored = session.outcome(n);
        suite.check_eq("outcome-mirror", &[g], o.mirror(), mirrored);
        let iz = session.is_iteratively_zero(g);
        if iz {
            suite.check_eq("zero-is-second-win", &[g], Outcome::SecondWins, o);
        }
        let neg_iz = session.is_iteratively_zero(n);
        suite.check_eq("negation-keeps-zero", &[g], iz, neg_iz);
        let d = session.sub(g, g)?;
        let v = session.is_iteratively_zero(d);
        suite.check("self-difference-zero", &[g], v);
    }

    let mut impartial_universe: Vec<GameId> = day2.iter().copied().filter(|&g| session.is_impartial(g)).collect();
    impartial_universe.extend(&impartial);
    impartial_universe.sort_unstable();
    impartial_universe.dedup();
    for &g in &impartial_universe {
        let iz = session.is_iteratively_zero(g);
        let second = session.outcome(g) == Outcome::SecondWins;
        suite.check_eq("impartial-zero-iff-second-win", &[g], second, iz);
    }

    let zeros: Vec<GameId> = day2
        .iter()
        .copied()
        .filter(|&g| session.is_iteratively_zero(g))
        .collect();
    suite.finding("iterativelyZeroAtDay2", zeros.len());
    for &g in &zeros {
        for &h in &zeros {
            let s = session.add(g, h)?;
            let v = session.is_iteratively_zero(s);
            suite.check("zero-sum", &[g, h], v);
        }
    }

    for &h in &zeros {
        for &g in &day2 {
            let s = session.add(g, h)?;
            if session.is_iteratively_zero(s) {
                let v = session.is_iteratively_zero(g);
                suite.check("zero-cancellation", &[g, h], v);
            }
        }
    }

    let absorption: Vec<(GameId, GameId)> = if zeros.len() * day2.len() <= EXHAUSTIVE_LIMIT {
        zeros.iter().flat_map(|&g| day2.iter().map(move |&h| (g, h))).collect()
    } else {
        let mut pairs: Vec<_> = zeros.iter().flat_map(|&g| day1.iter().map(move |&h| (g, h))).collect();
        pairs.extend(
            (0..config.absorption_samples)
                .map(|_| (zeros[rng.gen_range(0..zeros.len())], day2[rng.gen_range(0..day2.len())])),
        );
        pairs
    };
    for (g, h) in absorption {
        let p = session.product(g, h)?;
        let v = session.is_iteratively_zero(p);
        suite.check("absorption", &[g, h], v);
    }

    let iter_classes = classify(session, &day2, Relation::IterEq, "")?;
    let mut class_of: FxHashMap<GameId, usize> = FxHashMap::default();
    for (i, class) in iter_classes.classes.iter().enumerate() {
        for &g in class {
            class_of.insert(g, i);
        }
    }
    let pairs: Vec<(GameId, GameId)> = day2.iter().flat_map(|&g| day2.iter().map(move |&h| (g, h))).collect();
    let iter = session.relation_batch(Relation::IterEq, &pairs)?;
    let conway = session.relation_batch(Relation::ConwayEq, &pairs)?;
    for (i, &(g, h)) in pairs.iter().enumerate() {
        if g == h {
            suite.check("refines-iso-iter", &[g, h], iter[i]);
        }
        if iter[i] {
            suite.check("refines-iter-conway", &[g, h], conway[i]);
        }
        suite.check_eq("iter-matches-classes", &[g, h], class_of[&g] == class_of[&h], iter[i]);
    }
    for class in iter_classes.classes.iter().filter(|c| c.len() > 1) {
        for &g in class {
            for &h in class {
                if g != h {
                    let w = gro_tsen_refute(session, g, h, &day2)?;
                    suite.check("refines-iter-grotsen", &[g, h], w.is_none());
                }
            }
        }
    }

    let classes = &iter_classes.classes;
    for _ in 0..config.sum_samples {
        let a = &classes[rng.gen_range(0..classes.len())];
        let b = &classes[rng.gen_range(0..classes.len())];
        let (g, h) = (a[rng.gen_range(0..a.len())], a[rng.gen_range(0..a.len())]);
        let (k, j) = (b[rng.gen_range(0..b.len())], b[rng.gen_range(0..b.len())]);
        let lhs = session.add(g, k)?;
        let rhs = session.add(h, j)?;
        let v = session.iter_eq(lhs, rhs)?;
        suite.check("respects-sum", &[g, h, k, j], v);
    }
    Ok(suite.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemmas_hold() {
        let mut s = Session::new();
        let config = LemmaConfig {
            sum_samples: 50,
            ..LemmaConfig::default()
        };
        let r = lemma_suite(&mut s, &config).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.checks["self-difference-zero"], 256);
    }
}
