//! Class counts recomputed from plain trees, without the arena.
//!
//! A position `(g, h)` stands for `g - h`: Left moves to `(gL, h)` or
//! `(g, hR)`, Right moves to `(gR, h)` or `(g, hL)`.

use std::collections::HashMap;
use std::rc::Rc;

use gameforms::{GameId, Relation, Session};

#[derive(Debug)]
struct Tree {
    left: Vec<Rc<Tree>>,
    right: Vec<Rc<Tree>>,
}

type Key = (*const Tree, *const Tree);

fn key(g: &Rc<Tree>, h: &Rc<Tree>) -> Key {
    (Rc::as_ptr(g), Rc::as_ptr(h))
}

fn left_moves(g: &Rc<Tree>, h: &Rc<Tree>) -> Vec<(Rc<Tree>, Rc<Tree>)> {
    let a = g.left.iter().map(|x| (x.clone(), h.clone()));
    let b = h.right.iter().map(|y| (g.clone(), y.clone()));
    a.chain(b).collect()
}

fn right_moves(g: &Rc<Tree>, h: &Rc<Tree>) -> Vec<(Rc<Tree>, Rc<Tree>)> {
    let a = g.right.iter().map(|x| (x.clone(), h.clone()));
    let b = h.left.iter().map(|y| (g.clone(), y.clone()));
    a.chain(b).collect()
}

#[derive(Default)]
struct Oracle {
    left_first: HashMap<Key, bool>,
    right_first: HashMap<Key, bool>,
    zero: HashMap<Key, bool>,
}

impl Oracle {
    fn left_wins_first(&mut self, g: &Rc<Tree>, h: &Rc<Tree>) -> bool {
        if let Some(&v) = self.left_first.get(&key(g, h)) {
            return v;
        }
        let v = left_moves(g, h).iter().any(|(a, b)| !self.right_wins_first(a, b));
        self.left_first.insert(key(g, h), v);
        v
    }

    fn right_wins_first(&mut self, g: &Rc<Tree>, h: &Rc<Tree>) -> bool {
        if let Some(&v) = self.right_first.get(&key(g, h)) {
            return v;
        }
        let v = right_moves(g, h).iter().any(|(a, b)| !self.left_wins_first(a, b));
        self.right_first.insert(key(g, h), v);
        v
    }

    fn conway_eq(&mut self, g: &Rc<Tree>, h: &Rc<Tree>) -> bool {
        !self.left_wins_first(g, h) && !self.right_wins_first(g, h)
    }

    fn iteratively_zero(&mut self, g: &Rc<Tree>, h: &Rc<Tree>) -> bool {
        if let Some(&v) = self.zero.get(&key(g, h)) {
            return v;
        }
        let v = left_moves(g, h)
            .iter()
            .all(|(a, b)| right_moves(a, b).iter().any(|(c, d)| self.iteratively_zero(c, d)))
            && right_moves(g, h)
                .iter()
                .all(|(a, b)| left_moves(a, b).iter().any(|(c, d)| self.iteratively_zero(c, d)));
        self.zero.insert(key(g, h), v);
        v
    }
}

fn subsets(items: &[Rc<Tree>]) -> Vec<Vec<Rc<Tree>>> {
    (0..1u32 << items.len())
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, t)| t.clone())
                .collect()
        })
        .collect()
}

fn next_day(prev: &[Rc<Tree>]) -> Vec<Rc<Tree>> {
    let sides = subsets(prev);
    let mut out = Vec::new();
    for l in &sides {
        for r in &sides {
            out.push(Rc::new(Tree {
                left: l.clone(),
                right: r.clone(),
            }));
        }
    }
    out
}

fn intern(session: &mut Session, t: &Tree) -> GameId {
    let l: Vec<GameId> = t.left.iter().map(|x| intern(session, x)).collect();
    let r: Vec<GameId> = t.right.iter().map(|x| intern(session, x)).collect();
    session.intern(&l, &r).unwrap()
}

/// Number of distinct rows of an equivalence matrix, after checking that it
/// is reflexive, symmetric and transitive.
fn class_count(m: &[Vec<bool>]) -> usize {
    let n = m.len();
    for i in 0..n {
        assert!(m[i][i]);
        for j in 0..n {
            assert_eq!(m[i][j], m[j][i]);
            if m[i][j] {
                assert_eq!(m[i], m[j], "not transitive at {i}, {j}");
            }
        }
    }
    let mut rows: Vec<&Vec<bool>> = m.iter().collect();
    rows.sort();
    rows.dedup();
    rows.len()
}

#[test]
fn day_two_counts_from_trees() {
    let day0 = vec![Rc::new(Tree {
        left: vec![],
        right: vec![],
    })];
    let day1 = next_day(&day0);
    let day2 = next_day(&day1);
    assert_eq!(day1.len(), 4);
    assert_eq!(day2.len(), 256);

    let mut oracle = Oracle::default();
    let n = day2.len();
    let mut conway = vec![vec![false; n]; n];
    let mut iter = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            conway[i][j] = oracle.conway_eq(&day2[i], &day2[j]);
            iter[i][j] = oracle.iteratively_zero(&day2[i], &day2[j]);
        }
    }
    assert_eq!(class_count(&conway), 22);
    assert_eq!(class_count(&iter), 241);

    let mut session = Session::new();
    let ids: Vec<GameId> = day2.iter().map(|t| intern(&mut session, t)).collect();
    let mut sorted = ids.clone();
    sorted.sort_unstable();
    sorted.dedup();
    assert_eq!(sorted.len(), 256);
    let pairs: Vec<(GameId, GameId)> = ids.iter().flat_map(|&g| ids.iter().map(move |&h| (g, h))).collect();
    let lib_conway = session.relation_batch(Relation::ConwayEq, &pairs).unwrap();
    let lib_iter = session.relation_batch(Relation::IterEq, &pairs).unwrap();
    for (k, &(g, h)) in pairs.iter().enumerate() {
        let (i, j) = (k / n, k % n);
        assert_eq!(lib_conway[k], conway[i][j], "conway {g} {h}");
        assert_eq!(lib_iter[k], iter[i][j], "iter {g} {h}");
    }
}
