//! Bounded refuters for the multiplicative equivalences.
//!
//! Both relations quantify over all games, so the engine can only search a
//! finite pool for a separating context. A returned witness is a proof of
//! non-equivalence; `None` proves nothing.

use std::fmt;

use log::warn;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arena::{ArenaError, GameId};
use crate::relations::Outcome;
use crate::session::Session;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessKind {
    /// A game `K` with `GK` and `HK` of different outcome.
    Multiplier,
    /// A term `t` with `t(G)` and `t(H)` of different outcome.
    Term,
}

/// Context built from one distinguished variable `x` and pool games.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Var,
    /// Index into the witness' game list.
    Arg(usize),
    Neg(Box<Term>),
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
}

impl Term {
    pub fn depth(&self) -> usize {
        match self {
            Term::Var | Term::Arg(_) => 0,
            Term::Neg(t) => 1 + t.depth(),
            Term::Add(a, b) | Term::Mul(a, b) => 1 + a.depth() + b.depth(),
        }
    }

    /// Evaluates with `x := var` and `Arg(i) := args[i]`.
    pub fn eval(&self, session: &mut Session, var: GameId, args: &[GameId]) -> Result<GameId, ArenaError> {
        Ok(match self {
            Term::Var => var,
            Term::Arg(i) => args[*i],
            Term::Neg(t) => {
                let v = t.eval(session, var, args)?;
                session.neg(v)?
            }
            Term::Add(a, b) => {
                let (va, vb) = (a.eval(session, var, args)?, b.eval(session, var, args)?);
                session.add(va, vb)?
            }
            Term::Mul(a, b) => {
                let (va, vb) = (a.eval(session, var, args)?, b.eval(session, var, args)?);
                session.product(va, vb)?
            }
        })
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var => write!(f, "x"),
            Term::Arg(i) => write!(f, "a{i}"),
            Term::Neg(t) => write!(f, "-({t})"),
            Term::Add(a, b) => write!(f, "({a} + {b})"),
            Term::Mul(a, b) => write!(f, "({a}·{b})"),
        }
    }
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RefutationWitness {
    pub kind: WitnessKind,
    /// For a multiplier, `K` and possibly an addend `L`; for a term, its
    /// arguments in order.
    pub games: Vec<GameId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub term: Option<Term>,
    pub observed_outcomes: (Outcome, Outcome),
}

impl RefutationWitness {
    /// Recomputes both outcomes in `session`; true when they still differ
    /// and match the recorded pair.
    pub fn replay(&self, session: &mut Session, g: GameId, h: GameId) -> Result<bool, ArenaError> {
        let (tg, th) = match (&self.kind, &self.term) {
            (WitnessKind::Multiplier, _) => {
                let k = self.games[0];
                let (mut gk, mut hk) = (session.product(g, k)?, session.product(h, k)?);
                if let Some(&l) = self.games.get(1) {
                    gk = session.add(gk, l)?;
                    hk = session.add(hk, l)?;
                }
                (gk, hk)
            }
            (WitnessKind::Term, Some(t)) => (t.eval(session, g, &self.games)?, t.eval(session, h, &self.games)?),
            (WitnessKind::Term, None) => return Ok(false),
        };
        let observed = (session.outcome(tg), session.outcome(th));
        Ok(observed.0 != observed.1 && observed == self.observed_outcomes)
    }
}

/// Searches `pool`, in the given order, for `K` with `GK ≢c HK`. When `GK`
/// and `HK` have the same outcome the witness also carries `L = -HK`, so
/// that `GK + L` and `HK + L` have different outcomes.
/// Candidates whose products exceed the node budget are skipped with a
/// warning.
pub fn gro_tsen_refute(
    session: &mut Session,
    g: GameId,
    h: GameId,
    pool: &[GameId],
) -> Result<Option<RefutationWitness>, ArenaError> {
    if g == h {
        return Ok(None);
    }
    for &k in pool {
        let products = session.product(g, k).and_then(|gk| Ok((gk, session.product(h, k)?)));
        let (gk, hk) = match products {
            Ok(p) => p,
            Err(e @ ArenaError::BudgetExceeded { .. }) => {
                warn!("skipping multiplier {k}: {e}");
                continue;
            }
            Err(e) => return Err(e),
        };
        match session.conway_eq(gk, hk) {
            Ok(true) => {}
            Ok(false) => {
                let mut games = vec![k];
                let mut observed = (session.outcome(gk), session.outcome(hk));
                if observed.0 == observed.1 {
                    let l = session.neg(hk)?;
                    let gkl = session.add(gk, l)?;
                    let hkl = session.add(hk, l)?;
                    observed = (session.outcome(gkl), session.outcome(hkl));
                    games.push(l);
                }
                return Ok(Some(RefutationWitness {
                    kind: WitnessKind::Multiplier,
                    games,
                    term: None,
                    observed_outcomes: observed,
                }));
            }
            Err(e @ ArenaError::BudgetExceeded { .. }) => warn!("skipping multiplier {k}: {e}"),
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

/// Operations a context may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct OpSet {
    pub add: bool,
    pub neg: bool,
    pub mul: bool,
}

impl OpSet {
    pub const ALL: OpSet = OpSet {
        add: true,
        neg: true,
        mul: true,
    };
    pub const SUM: OpSet = OpSet {
        add: true,
        neg: false,
        mul: false,
    };

    /// Parses a string over the characters `+`, `-` and `*` or `·`.
    pub fn parse(s: &str) -> Option<OpSet> {
        let mut ops = OpSet::default();
        for c in s.chars() {
            match c {
                '+' => ops.add = true,
                '-' | '−' => ops.neg = true,
                '*' | '·' | '.' => ops.mul = true,
                ',' | ' ' => {}
                _ => return None,
            }
        }
        Some(ops)
    }
}

/// Default cap on the number of enumerated contexts.
pub const DEFAULT_TERM_CAP: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RefuteError {
    #[error(transparent)]
    Arena(#[from] ArenaError),
    #[error("context enumeration stopped at the cap of {cap} terms without a witness")]
    TermCap { cap: usize },
}

#[derive(Debug, Clone)]
struct Node {
    term: Term,
    depth: usize,
    vars: usize,
    values: (GameId, GameId),
    args: Vec<GameId>,
}

#[derive(Debug, Clone, Copy)]
enum Step {
    Neg(usize),
    Add(usize, usize),
    Mul(usize, usize),
}

/// Enumerates contexts over `ops` with one variable, at most `max_depth`
/// operation nodes and constants from `pool`, and returns the first whose
/// outcomes at `g` and `h` differ. Shallower contexts come first; within a
/// depth, contexts with fewer occurrences of the variable come first.
/// Negation is unary; subtraction is the sum with a negated term. Sums and
/// products are enumerated up to commutativity.
pub fn equiv_s_refute(
    session: &mut Session,
    g: GameId,
    h: GameId,
    ops: OpSet,
    max_depth: usize,
    pool: &[GameId],
    term_cap: usize,
) -> Result<Option<RefutationWitness>, RefuteError> {
    let mut nodes: Vec<Node> = Vec::new();
    let mut by_depth: Vec<Vec<usize>> = vec![Vec::new(); max_depth + 1];
    let var = Node {
        term: Term::Var,
        depth: 0,
        vars: 1,
        values: (g, h),
        args: Vec::new(),
    };
    if let Some(w) = separates(session, &var)? {
        return Ok(Some(w));
    }
    let leaves = std::iter::once(var).chain(pool.iter().map(|&k| Node {
        term: Term::Arg(0),
        depth: 0,
        vars: 0,
        values: (k, k),
        args: vec![k],
    }));
    for node in leaves {
        push(&mut nodes, &mut by_depth, node, term_cap)?;
    }
    for depth in 1..=max_depth {
        let mut steps = Vec::new();
        if ops.neg {
            steps.extend(by_depth[depth - 1].iter().map(|&i| Step::Neg(i)));
        }
        for (enabled, is_mul) in [(ops.add, false), (ops.mul, true)] {
            if !enabled {
                continue;
            }
            for left_depth in 0..depth {
                let right_depth = depth - 1 - left_depth;
                if left_depth > right_depth {
                    continue;
                }
                let (lefts, rights) = (&by_depth[left_depth], &by_depth[right_depth]);
                for (li, &i) in lefts.iter().enumerate() {
                    let start = if left_depth == right_depth { li } else { 0 };
                    for &j in &rights[start..] {
                        steps.push(if is_mul { Step::Mul(i, j) } else { Step::Add(i, j) });
                    }
                }
            }
        }
        let vars = |step: &Step| match *step {
            Step::Neg(i) => nodes[i].vars,
            Step::Add(i, j) | Step::Mul(i, j) => nodes[i].vars + nodes[j].vars,
        };
        if depth == max_depth {
            steps.retain(|s| vars(s) > 0);
        }
        steps.sort_by_key(vars);
        for step in steps {
            let Some(node) = build(session, &nodes, step, depth)? else {
                continue;
            };
            if let Some(w) = separates(session, &node)? {
                return Ok(Some(w));
            }
            push(&mut nodes, &mut by_depth, node, term_cap)?;
        }
    }
    Ok(None)
}

fn push(nodes: &mut Vec<Node>, by_depth: &mut [Vec<usize>], node: Node, term_cap: usize) -> Result<(), RefuteError> {
    if nodes.len() >= term_cap {
        return Err(RefuteError::TermCap { cap: term_cap });
    }
    by_depth[node.depth].push(nodes.len());
    nodes.push(node);
    Ok(())
}

fn build(session: &mut Session, nodes: &[Node], step: Step, depth: usize) -> Result<Option<Node>, RefuteError> {
    if let Step::Neg(i) = step {
        let child = &nodes[i];
        let built = session
            .neg(child.values.0)
            .and_then(|a| Ok((a, session.neg(child.values.1)?)));
        let term = Term::Neg(Box::new(child.term.clone()));
        let Some(values) = skip_on_budget(built, &term)? else {
            return Ok(None);
        };
        return Ok(Some(Node {
            term,
            depth,
            vars: child.vars,
            values,
            args: child.args.clone(),
        }));
    }
    let (i, j, is_mul) = match step {
        Step::Add(i, j) => (i, j, false),
        Step::Mul(i, j) => (i, j, true),
        Step::Neg(_) => unreachable!(),
    };
    let (a, b) = (&nodes[i], &nodes[j]);
    let shifted = Box::new(shift_args(&b.term, a.args.len()));
    let (term, built) = if is_mul {
        let built = session
            .product(a.values.0, b.values.0)
            .and_then(|x| Ok((x, session.product(a.values.1, b.values.1)?)));
        (Term::Mul(Box::new(a.term.clone()), shifted), built)
    } else {
        let built = session
            .add(a.values.0, b.values.0)
            .and_then(|x| Ok((x, session.add(a.values.1, b.values.1)?)));
        (Term::Add(Box::new(a.term.clone()), shifted), built)
    };
    let Some(values) = skip_on_budget(built, &term)? else {
        return Ok(None);
    };
    let mut args = a.args.clone();
    args.extend_from_slice(&b.args);
    Ok(Some(Node {
        term,
        depth,
        vars: a.vars + b.vars,
        values,
        args,
    }))
}

fn shift_args(t: &Term, offset: usize) -> Term {
    match t {
        Term::Var => Term::Var,
        Term::Arg(i) => Term::Arg(i + offset),
        Term::Neg(a) => Term::Neg(Box::new(shift_args(a, offset))),
        Term::Add(a, b) => Term::Add(Box::new(shift_args(a, offset)), Box::new(shift_args(b, offset))),
        Term::Mul(a, b) => Term::Mul(Box::new(shift_args(a, offset)), Box::new(shift_args(b, offset))),
    }
}

fn skip_on_budget<T>(built: Result<T, ArenaError>, term: &Term) -> Result<Option<T>, RefuteError> {
    match built {
        Ok(v) => Ok(Some(v)),
        Err(e @ ArenaError::BudgetExceeded { .. }) => {
            warn!("skipping context {term}: {e}");
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

fn separates(session: &mut Session, node: &Node) -> Result<Option<RefutationWitness>, RefuteError> {
    if node.vars == 0 {
        return Ok(None);
    }
    let outcomes = (session.outcome(node.values.0), session.outcome(node.values.1));
    if outcomes.0 == outcomes.1 {
        return Ok(None);
    }
    Ok(Some(RefutationWitness {
        kind: WitnessKind::Term,
        games: node.args.clone(),
        term: Some(node.term.clone()),
        observed_outcomes: outcomes,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_games_are_never_separated() {
        let mut s = Session::new();
        let pool = s.enumerate_forms(1).unwrap();
        let star = s.constant("*").unwrap();
        assert_eq!(gro_tsen_refute(&mut s, star, star, &pool).unwrap(), None);
    }

    #[test]
    fn star_and_zero_split_by_the_variable() {
        let mut s = Session::new();
        let star = s.constant("*").unwrap();
        let pool = s.enumerate_forms(1).unwrap();
        let w = equiv_s_refute(&mut s, star, GameId::ZERO, OpSet::SUM, 1, &pool, DEFAULT_TERM_CAP)
            .unwrap()
            .unwrap();
        assert_eq!(w.term, Some(Term::Var));
        assert_eq!(w.observed_outcomes, (Outcome::FirstWins, Outcome::SecondWins));
        assert!(w.replay(&mut s, star, GameId::ZERO).unwrap());
    }

    #[test]
    fn term_cap_is_reported() {
        let mut s = Session::new();
        let one = s.constant("1").unwrap();
        let two = s.constant("2").unwrap();
        let pool = s.enumerate_forms(2).unwrap();
        let err = equiv_s_refute(&mut s, one, two, OpSet::ALL, 2, &pool, 50).unwrap_err();
        assert_eq!(err, RefuteError::TermCap { cap: 50 });
    }

    #[test]
    fn op_set_parsing() {
        assert_eq!(OpSet::parse("+-*"), Some(OpSet::ALL));
        assert_eq!(OpSet::parse("+"), Some(OpSet::SUM));
        assert_eq!(OpSet::parse("/"), None);
    }

    #[test]
    fn term_display_and_depth() {
        let t = Term::Add(
            Box::new(Term::Mul(Box::new(Term::Var), Box::new(Term::Arg(0)))),
            Box::new(Term::Arg(1)),
        );
        assert_eq!(t.to_string(), "((x·a0) + a1)");
        assert_eq!(t.depth(), 2);
    }
}
