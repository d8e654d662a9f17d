use serde::Serialize;

use crate::arena::{ArenaError, GameId};
use crate::lab::report::{Suite, SuiteReport};
use crate::refute::{gro_tsen_refute, RefutationWitness};
use crate::relations::RelationMemo;
use crate::session::Session;

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
struct Separation {
    lhs: GameId,
    rhs: GameId,
    witness: RefutationWitness,
}

/// Looks for multipliers separating pairs of `universe` that are not
/// iteratively equivalent. Separated pairs are listed with their witness,
/// each replayed on a copy of the arena with an empty verdict cache; the
/// remaining pairs are listed as unresolved, with no claim about them.
pub fn open_problem_probe(
    session: &mut Session,
    universe: &[GameId],
    pool: &[GameId],
) -> Result<SuiteReport, ArenaError> {
    let mut suite = Suite::new("probe");
    let mut separated = Vec::new();
    let mut unresolved = Vec::new();
    let mut excluded = 0u64;
    for (i, &g) in universe.iter().enumerate() {
        for &h in &universe[i + 1..] {
            if session.iter_eq(g, h)? {
                excluded += 1;
                continue;
            }
            match gro_tsen_refute(session, g, h, pool)? {
                Some(witness) => {
                    let mut cold = Session::from_parts(session.arena().clone(), RelationMemo::new());
                    let v = witness.replay(&mut cold, g, h)?;
                    suite.check("witness-replays", &[g, h], v);
                    separated.push(Separation {
                        lhs: g,
                        rhs: h,
                        witness,
                    });
                }
                None => unresolved.push([g, h]),
            }
        }
    }
    suite.finding("excludedIterEq", excluded);
    suite.finding("separated", separated);
    suite.finding("unresolved", unresolved);
    Ok(suite.finish())
}
