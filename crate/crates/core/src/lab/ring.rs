use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::arena::{Arena, ArenaError, GameId};
use crate::canonical::IterCanonicalizer;
use crate::lab::classify::classify;
use crate::lab::report::{Suite, SuiteReport};
use crate::par;
use crate::relations::Relation;
use crate::session::Session;

/// Instance counts up to this size are checked exhaustively.
pub const EXHAUSTIVE_LIMIT: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RingConfig {
    pub max_birthday: u32,
    pub triple_samples: usize,
    pub well_defined_samples: usize,
    pub seed: u64,
}

impl Default for RingConfig {
    fn default() -> Self {
        RingConfig {
            max_birthday: 2,
            triple_samples: 500,
            well_defined_samples: 500,
            seed: 1,
        }
    }
}

/// Seeded uniform triples over `universe`.
pub fn sample_triples(universe: &[GameId], count: usize, rng: &mut ChaCha8Rng) -> Vec<[GameId; 3]> {
    let mut pick = || universe[rng.gen_range(0..universe.len())];
    (0..count).map(|_| [pick(), pick(), pick()]).collect()
}

fn all_triples(universe: &[GameId]) -> Vec<[GameId; 3]> {
    let mut out = Vec::with_capacity(universe.len().pow(3));
    for &g in universe {
        for &h in universe {
            for &k in universe {
                out.push([g, h, k]);
            }
        }
    }
    out
}

/// Verdicts of one triple, decided on reduced forms in a private arena.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct TripleVerdict {
    distributive: bool,
    associative: bool,
}

fn reduced_triple(base: &Arena, [g, h, k]: [GameId; 3]) -> Result<TripleVerdict, ArenaError> {
    let mut arena = Arena::with_budget(base.budget());
    let mut ids = FxHashMap::default();
    let g = arena.import(base, g, &mut ids)?;
    let h = arena.import(base, h, &mut ids)?;
    let k = arena.import(base, k, &mut ids)?;
    let mut canon = IterCanonicalizer::new();

    let g_plus_h = arena.add(g, h)?;
    let lhs = canon.product(&mut arena, g_plus_h, k)?;
    let gk = canon.product(&mut arena, g, k)?;
    let hk = canon.product(&mut arena, h, k)?;
    let rhs = canon.sum(&mut arena, gk, hk)?;
    let distributive = lhs == rhs;

    canon.clear_memos();
    let gh = arena.product(g, h)?;
    let hk = arena.product(h, k)?;
    let lhs = canon.product(&mut arena, gh, k)?;
    let rhs = canon.product(&mut arena, g, hk)?;
    Ok(TripleVerdict {
        distributive,
        associative: lhs == rhs,
    })
}

/// Ring laws on game forms: additive laws and the structural product laws
/// at id level, distributivity and associativity of the product modulo
/// iterative equivalence, and well-definedness of the product on classes.
pub fn check_ring_axioms(session: &mut Session, config: &RingConfig) -> Result<SuiteReport, ArenaError> {
    let mut suite = Suite::seeded("ring-axioms", config.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let universe = session.enumerate_forms(config.max_birthday)?;
    let one = session.constant("1").map_err(|_| ArenaError::UnknownId(GameId::ZERO))?;
    suite.finding("universeSize", universe.len());

    for &g in &universe {
        let sum = session.add(g, GameId::ZERO)?;
        suite.check_eq("add-identity", &[g], g, sum);
        let n = session.neg(g)?;
        let nn = session.neg(n)?;
        suite.check_eq("neg-involution", &[g], g, nn);
        let d = session.sub(g, g)?;
        let inverse = session.is_iteratively_zero(d);
        suite.check("add-inverse", &[g], inverse);
        let p = session.product(g, GameId::ZERO)?;
        suite.check_eq("mul-zero", &[g], GameId::ZERO, p);
        let p = session.product(g, one)?;
        suite.check_eq("mul-identity", &[g], g, p);
    }

    if universe.len().pow(2) <= EXHAUSTIVE_LIMIT {
        for &g in &universe {
            for &h in &universe {
                id_pair_laws(session, &mut suite, g, h)?;
            }
        }
    } else {
        for [g, h, _] in sample_triples(&universe, EXHAUSTIVE_LIMIT, &mut rng) {
            id_pair_laws(session, &mut suite, g, h)?;
        }
    }

    let small = session.enumerate_forms(config.max_birthday.min(1))?;
    let exhaustive = all_triples(&small);
    let sampled = if small.len() == universe.len() {
        Vec::new()
    } else if universe.len().pow(3) <= EXHAUSTIVE_LIMIT {
        all_triples(&universe)
    } else {
        sample_triples(&universe, config.triple_samples, &mut rng)
    };
    suite.finding("exhaustiveTriples", exhaustive.len());
    suite.finding("sampledTriples", sampled.len());

    for &[g, h, k] in exhaustive.iter().chain(&sampled) {
        let gh = session.add(g, h)?;
        let lhs = session.add(gh, k)?;
        let hk = session.add(h, k)?;
        let rhs = session.add(g, hk)?;
        suite.check_eq("add-associativity", &[g, h, k], lhs, rhs);
    }

    // the small triples also go through the interned differences
    for &[g, h, k] in &exhaustive {
        let g_plus_h = session.add(g, h)?;
        let lhs = session.product(g_plus_h, k)?;
        let gk = session.product(g, k)?;
        let hk = session.product(h, k)?;
        let rhs = session.add(gk, hk)?;
        let v = session.iter_eq(lhs, rhs)?;
        suite.check("distributivity-direct", &[g, h, k], v);
        let gh = session.product(g, h)?;
        let lhs = session.product(gh, k)?;
        let rhs = session.product(g, hk)?;
        let v = session.iter_eq(lhs, rhs)?;
        suite.check("associativity-direct", &[g, h, k], v);
    }

    let triples: Vec<[GameId; 3]> = exhaustive.iter().chain(&sampled).copied().collect();
    let execution = session.execution();
    let (base, _) = session.frozen();
    let verdicts = par::map(execution, &triples, |&t| reduced_triple(base, t));
    for (t, verdict) in triples.iter().zip(verdicts) {
        let verdict = verdict?;
        suite.check("distributivity", t, verdict.distributive);
        suite.check("associativity", t, verdict.associative);
    }

    well_definedness(session, &mut suite, &universe, config.well_defined_samples, &mut rng)?;
    Ok(suite.finish())
}

fn id_pair_laws(session: &mut Session, suite: &mut Suite, g: GameId, h: GameId) -> Result<(), ArenaError> {
    let gh = session.add(g, h)?;
    let hg = session.add(h, g)?;
    suite.check_eq("add-commutativity", &[g, h], gh, hg);
    let neg_sum = session.neg(gh)?;
    let ng = session.neg(g)?;
    let nh = session.neg(h)?;
    let sum_neg = session.add(ng, nh)?;
    suite.check_eq("neg-additive", &[g, h], neg_sum, sum_neg);
    let p = session.product(g, h)?;
    let q = session.product(h, g)?;
    suite.check_eq("mul-commutativity", &[g, h], p, q);
    let np = session.neg(p)?;
    let pn = session.product(ng, h)?;
    suite.check_eq("mul-neg", &[g, h], np, pn);
    Ok(())
}

fn well_definedness(
    session: &mut Session,
    suite: &mut Suite,
    universe: &[GameId],
    samples: usize,
    rng: &mut ChaCha8Rng,
) -> Result<(), ArenaError> {
    let classes = classify(session, universe, Relation::IterEq, "")?;
    let mut class_of = FxHashMap::default();
    for class in &classes.classes {
        for &g in class {
            class_of.insert(g, class.as_slice());
        }
    }
    let exhaustive = universe.len().pow(2) <= EXHAUSTIVE_LIMIT && samples >= universe.len().pow(2);
    let instances: Vec<(GameId, GameId)> = if exhaustive {
        universe
            .iter()
            .flat_map(|&g| universe.iter().map(move |&k| (g, k)))
            .collect()
    } else {
        (0..samples)
            .map(|_| {
                (
                    universe[rng.gen_range(0..universe.len())],
                    universe[rng.gen_range(0..universe.len())],
                )
            })
            .collect()
    };
    for (g, k) in instances {
        let class = class_of[&g];
        let others: Vec<GameId> = class.iter().copied().filter(|&x| x != g).collect();
        let h = if others.is_empty() {
            g
        } else {
            others[rng.gen_range(0..others.len())]
        };
        let gk = session.product(g, k)?;
        let hk = session.product(h, k)?;
        let v = session.iter_eq(gk, hk)?;
        suite.check("well-definedness", &[g, h, k], v);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn day_one_ring_laws() {
        let mut s = Session::new();
        let config = RingConfig {
            max_birthday: 1,
            ..RingConfig::default()
        };
        let r = check_ring_axioms(&mut s, &config).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.checks["distributivity"], 64);
        assert_eq!(r.checks["add-associativity"], 64);
        assert_eq!(r.checks["associativity-direct"], 64);
    }

    #[test]
    fn reduced_and_direct_routes_agree() {
        let mut s = Session::new();
        let u = s.enumerate_forms(1).unwrap();
        for t in all_triples(&u) {
            let v = reduced_triple(s.arena(), t).unwrap();
            assert!(v.distributive && v.associative);
        }
    }
}
