use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;

use crate::arena::{ArenaError, GameId, Player};
use crate::lab::classify::classify;
use crate::lab::report::{Suite, SuiteReport};
use crate::relations::Relation;
use crate::session::Session;

/// Looks for violations of option-regularity over all unordered pairs of
/// `universe`. The relation is first tabulated on every pair of options,
/// then each pair whose option sets match is tested.
pub fn option_regularity_scan(
    session: &mut Session,
    universe: &[GameId],
    relation: Relation,
) -> Result<SuiteReport, ArenaError> {
    let mut suite = Suite::new(&format!("option-regularity-{relation}"));
    let check = format!("option-regular-{relation}");
    let mut options: Vec<GameId> = universe
        .iter()
        .flat_map(|&g| session.arena().node(g).left.iter().chain(session.arena().node(g).right))
        .copied()
        .collect();
    options.sort_unstable();
    options.dedup();
    let index: FxHashMap<GameId, usize> = options.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let pairs: Vec<(GameId, GameId)> = options
        .iter()
        .flat_map(|&a| options.iter().map(move |&b| (a, b)))
        .collect();
    let table = session.relation_batch(relation, &pairs)?;
    let related = |a: GameId, b: GameId| table[index[&a] * options.len() + index[&b]];
    let covered = |xs: &[GameId], ys: &[GameId]| xs.iter().all(|&x| ys.iter().any(|&y| related(x, y)));

    let mut matched = Vec::new();
    for (i, &g) in universe.iter().enumerate() {
        for &h in &universe[i..] {
            let arena = session.arena();
            let ok = [Player::Left, Player::Right].into_iter().all(|p| {
                let (gs, hs) = (arena.options(p, g), arena.options(p, h));
                covered(gs, hs) && covered(hs, gs)
            });
            if ok {
                matched.push((g, h));
            }
        }
    }
    let verdicts = session.relation_batch(relation, &matched)?;
    for (&(g, h), v) in matched.iter().zip(verdicts) {
        suite.check(&check, &[g, h], v);
    }
    suite.finding(
        &format!("pairsScanned-{relation}"),
        universe.len() * (universe.len() + 1) / 2,
    );
    suite.finding(&format!("matchedPairs-{relation}"), matched.len());
    Ok(suite.finish())
}

fn swap_side(
    rng: &mut ChaCha8Rng,
    options: &[GameId],
    class_of: &FxHashMap<GameId, usize>,
    classes: &[Vec<GameId>],
) -> Vec<GameId> {
    let mut out: Vec<GameId> = options
        .iter()
        .map(|g| *classes[class_of[g]].choose(rng).expect("classes are nonempty"))
        .collect();
    if let Some(&g) = options.choose(rng) {
        if rng.gen_bool(0.5) {
            out.push(*classes[class_of[&g]].choose(rng).expect("classes are nonempty"));
        }
    }
    out
}

/// Seeded pairs one birthday above `universe` whose options are matched by
/// construction: `H` replaces each option of `G` by a random member of its
/// class and may repeat one class. Options are drawn mostly from classes
/// with more than one member. Each pair must be related.
pub fn class_swap_check(
    session: &mut Session,
    universe: &[GameId],
    relation: Relation,
    samples: usize,
    seed: u64,
) -> Result<SuiteReport, ArenaError> {
    let mut suite = Suite::seeded(&format!("class-swap-{relation}"), seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let report = classify(session, universe, relation, "")?;
    let class_of: FxHashMap<GameId, usize> = report
        .classes
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.iter().map(move |&g| (g, i)))
        .collect();
    let shared: Vec<GameId> = report
        .classes
        .iter()
        .filter(|c| c.len() > 1)
        .flatten()
        .copied()
        .collect();
    let pick = |rng: &mut ChaCha8Rng| {
        let from = if !shared.is_empty() && rng.gen_bool(0.75) {
            &shared
        } else {
            universe
        };
        *from.choose(rng).expect("universe is nonempty")
    };
    let mut pairs = Vec::with_capacity(samples);
    for _ in 0..samples {
        if universe.is_empty() {
            break;
        }
        let left: Vec<GameId> = (0..rng.gen_range(0..=3)).map(|_| pick(&mut rng)).collect();
        let right: Vec<GameId> = (0..rng.gen_range(0..=3)).map(|_| pick(&mut rng)).collect();
        let g = session.intern(&left, &right)?;
        let hl = swap_side(&mut rng, &left, &class_of, &report.classes);
        let hr = swap_side(&mut rng, &right, &class_of, &report.classes);
        let h = session.intern(&hl, &hr)?;
        pairs.push((g, h));
    }
    let distinct = pairs.iter().filter(|(g, h)| g != h).count();
    let verdicts = session.relation_batch(relation, &pairs)?;
    let check = format!("option-regular-{relation}-swapped");
    for (&(g, h), v) in pairs.iter().zip(verdicts) {
        suite.check(&check, &[g, h], v);
    }
    suite.finding(&format!("distinctSwappedPairs-{relation}"), distinct);
    Ok(suite.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scan_agrees_with_single_pair_check() {
        let mut s = Session::new();
        let u = s.enumerate_forms(1).unwrap();
        for relation in [Relation::IterEq, Relation::ConwayEq] {
            let r = option_regularity_scan(&mut s, &u, relation).unwrap();
            assert!(r.passed());
            let mut matched = 0;
            for (i, &g) in u.iter().enumerate() {
                for &h in &u[i..] {
                    assert_eq!(s.option_regularity_violation(relation, g, h).unwrap(), None);
                    matched += 1;
                }
            }
            assert!(r.checks_run <= matched);
        }
    }

    #[test]
    fn swapped_pairs_are_related() {
        let mut s = Session::new();
        let u = s.enumerate_forms(2).unwrap();
        for relation in [Relation::IterEq, Relation::ConwayEq] {
            let r = class_swap_check(&mut s, &u, relation, 200, 7).unwrap();
            assert!(r.passed(), "{:?}", r.failures);
            assert_eq!(r.checks_run, 200);
            assert!(
                r.findings[&format!("distinctSwappedPairs-{relation}")]
                    .as_u64()
                    .unwrap()
                    > 50
            );
        }
    }
}
