use gameforms::constants::NAMED;
use gameforms::notation::{self, parse};
use gameforms::Session;

mod common;
use common::NEGATIVE_CORPUS;

#[test]
fn negative_corpus_is_rejected_with_positions() {
    assert!(NEGATIVE_CORPUS.len() >= 20);
    for &(text, column) in NEGATIVE_CORPUS {
        match parse(text) {
            Ok(e) => panic!("{text:?} parsed as {e:?}"),
            Err(e) => assert_eq!(e.column, column, "{text:?}: {e}"),
        }
    }
}

#[test]
fn print_then_parse_is_identity() {
    let mut s = Session::new();
    let mut games = s.enumerate_forms(2).unwrap();
    for name in NAMED {
        games.push(s.constant(name).unwrap());
    }
    for g in games {
        let text = notation::print(s.arena(), g);
        assert_eq!(notation::printed_len(s.arena(), g), text.chars().count() as u64);
        assert_eq!(notation::eval_str(&mut s, &text).unwrap(), g, "{text}");
    }
}

#[test]
fn spec_examples() {
    let mut s = Session::new();
    let kb = s.constant("K_bullet").unwrap();
    assert_eq!(
        notation::eval_str(&mut s, "let K = 1/2 + 1/2 - 1 in {0|K||0|0}").unwrap(),
        kb
    );
    let two_circ = s.constant("2o").unwrap();
    assert_eq!(notation::eval_str(&mut s, "{0,1|}").unwrap(), two_circ);
    let two_star = notation::eval_str(&mut s, "(1+1)·*").unwrap();
    assert!(s.iter_eq(two_star, gameforms::GameId::ZERO).unwrap());
    let a = notation::eval_str(&mut s, "2 − 1").unwrap();
    let one = s.constant("1").unwrap();
    let (two, minus_one) = (s.constant("2").unwrap(), s.constant("-1").unwrap());
    assert_eq!(a, s.add(two, minus_one).unwrap());
    assert!(s.conway_eq(a, one).unwrap());
}
