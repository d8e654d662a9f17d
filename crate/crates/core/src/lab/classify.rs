use std::time::Instant;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::arena::{ArenaError, GameId};
use crate::relations::Relation;
use crate::session::Session;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassReport {
    pub relation_name: String,
    pub universe_description: String,
    pub universe_size: usize,
    pub class_count: usize,
    /// Minimum-id member of each class, ascending.
    pub representatives: Vec<GameId>,
    /// Every class in ascending id order, ordered by representative.
    pub classes: Vec<Vec<GameId>>,
    pub pairs_tested: u64,
    pub elapsed_ms: u64,
}

/// Partitions `universe` into classes of `relation`. Each game is compared
/// against one member of every class found so far, so the relation must be
/// an equivalence.
pub fn classify(
    session: &mut Session,
    universe: &[GameId],
    relation: Relation,
    description: &str,
) -> Result<ClassReport, ArenaError> {
    let started = Instant::now();
    let mut seen = std::collections::HashSet::new();
    let games: Vec<GameId> = universe.iter().copied().filter(|g| seen.insert(*g)).collect();
    let mut classes = UnionFind::<usize>::new(games.len());
    let mut roots: Vec<usize> = Vec::new();
    let mut pairs_tested = 0u64;
    for (i, &g) in games.iter().enumerate() {
        let pairs: Vec<_> = roots.iter().map(|&r| (g, games[r])).collect();
        pairs_tested += pairs.len() as u64;
        let verdicts = session.relation_batch(relation, &pairs)?;
        match verdicts.iter().position(|&v| v) {
            Some(k) => {
                classes.union(roots[k], i);
            }
            None => roots.push(i),
        }
    }
    let labels = classes.into_labeling();
    let mut grouped: Vec<Vec<GameId>> = Vec::new();
    let mut slot = vec![usize::MAX; games.len()];
    for (i, &g) in games.iter().enumerate() {
        let root = labels[i];
        if slot[root] == usize::MAX {
            slot[root] = grouped.len();
            grouped.push(Vec::new());
        }
        grouped[slot[root]].push(g);
    }
    grouped.iter_mut().for_each(|c| c.sort_unstable());
    grouped.sort();
    Ok(ClassReport {
        relation_name: relation.name().to_string(),
        universe_description: description.to_string(),
        universe_size: games.len(),
        class_count: grouped.len(),
        representatives: grouped.iter().map(|c| c[0]).collect(),
        classes: grouped,
        pairs_tested,
        elapsed_ms: started.elapsed().as_millis() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn day_one_counts() {
        let mut s = Session::new();
        let u = s.enumerate_forms(1).unwrap();
        let iso = classify(&mut s, &u, Relation::Isomorphism, "b<=1").unwrap();
        assert_eq!(iso.class_count, 4);
        let conway = classify(&mut s, &u, Relation::ConwayEq, "b<=1").unwrap();
        assert_eq!(conway.class_count, 4);
        assert_eq!(conway.representatives, iso.representatives);
    }

    #[test]
    fn order_does_not_matter() {
        let mut s = Session::new();
        let u = s.enumerate_forms(2).unwrap();
        let mut rev = u.clone();
        rev.reverse();
        let a = classify(&mut s, &u, Relation::ConwayEq, "").unwrap();
        let b = classify(&mut s, &rev, Relation::ConwayEq, "").unwrap();
        assert_eq!(a.classes, b.classes);
    }
}
