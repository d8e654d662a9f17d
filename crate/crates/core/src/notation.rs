//! Brace notation for game forms.
//!
//! ```text
//! expr  := "let" NAME "=" expr "in" expr | sum
//! sum   := prod (("+" | "-") prod)*
//! prod  := unary (("·" | ".") unary)*
//! unary := "-" unary | atom
//! atom  := INT | "1/2" | "*" | "2o" | "2°" | NAME | "(" expr ")" | game
//! game  := "{" items "}"
//! ```
//!
//! Inside braces, items are separated by commas and by runs of bars. The
//! longest run splits Left from Right; shorter runs group their side into a
//! nested game, so `{0|K||0|0}` reads as `{ {0|K} | {0|0} }`.

use std::fmt;

use thiserror::Error;

use crate::arena::{Arena, ArenaError, GameId};
use crate::constants::{self, ConstantError};
use crate::session::Session;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    BraceGame(Vec<Expr>, Vec<Expr>),
    Name(String),
    IntLit(i64),
    Half,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Let(String, Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {column}: {message}")]
pub struct ParseError {
    /// 1-based character column of the offending input.
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unbound name `{0}`")]
    Unbound(String),
    #[error(transparent)]
    Arena(#[from] ArenaError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(i64),
    Half,
    Name(String),
    Let,
    In,
    Eq,
    Plus,
    Minus,
    Dot,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Bars(usize),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Half => f.write_str("`1/2`"),
            Tok::Name(s) => write!(f, "`{s}`"),
            Tok::Let => f.write_str("`let`"),
            Tok::In => f.write_str("`in`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Dot => f.write_str("`·`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Bars(n) => write!(f, "`{}`", "|".repeat(*n)),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn err<T>(column: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        column,
        message: message.into(),
    })
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '=' => Some(Tok::Eq),
            '+' => Some(Tok::Plus),
            '-' | '−' => Some(Tok::Minus),
            '·' | '.' => Some(Tok::Dot),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            ',' => Some(Tok::Comma),
            '*' => Some(Tok::Name("*".into())),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, col));
            i += 1;
        } else if c == '|' {
            let start = i;
            while i < chars.len() && chars[i] == '|' {
                i += 1;
            }
            out.push((Tok::Bars(i - start), col));
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            if i < chars.len() && (chars[i] == 'o' || chars[i] == '°') {
                if digits != "2" || chars.get(i + 1).is_some_and(|&c| is_ident_char(c)) {
                    return err(col, format!("unknown numeral `{digits}{}`", chars[i]));
                }
                out.push((Tok::Name("2o".into()), col));
                i += 1;
            } else if i < chars.len() && chars[i] == '/' {
                let den_start = i + 1;
                let mut j = den_start;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let den: String = chars[den_start..j].iter().collect();
                if digits != "1" || den != "2" {
                    return err(
                        col,
                        format!("unsupported fraction `{digits}/{den}`, only 1/2 is available"),
                    );
                }
                out.push((Tok::Half, col));
                i = j;
            } else if i < chars.len() && is_ident_char(chars[i]) {
                return err(i + 1, format!("unexpected `{}` after number", chars[i]));
            } else {
                match digits.parse::<i64>() {
                    Ok(n) => out.push((Tok::Int(n), col)),
                    Err(_) => return err(col, format!("integer `{digits}` is too large")),
                }
            }
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            out.push((
                match word.as_str() {
                    "let" => Tok::Let,
                    "in" => Tok::In,
                    _ => Tok::Name(word),
                },
                col,
            ));
        } else {
            return err(col, format!("unexpected character `{c}`"));
        }
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    scope: Vec<String>,
}

/// One piece of a brace group: an option expression or a separator.
enum Item {
    Elem(Expr, usize),
    Comma(usize),
    Bars(usize, usize),
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn column(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            err(self.column(), format!("expected {want}, found {}", self.peek()))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Let {
            self.bump();
            let col = self.column();
            let name = match self.bump().0 {
                Tok::Name(n) if n != "*" => n,
                other => return err(col, format!("expected a name after `let`, found {other}")),
            };
            self.expect(Tok::Eq)?;
            let value = self.expr()?;
            self.expect(Tok::In)?;
            self.scope.push(name.clone());
            let body = self.expr();
            self.scope.pop();
            return Ok(Expr::Let(name, Box::new(value), Box::new(body?)));
        }
        let mut lhs = self.product()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Dot {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let (tok, col) = self.bump();
        match tok {
            Tok::Int(n) => Ok(Expr::IntLit(n)),
            Tok::Half => Ok(Expr::Half),
            Tok::Name(n) => {
                if self.scope.contains(&n) || constants::NAMED.contains(&n.as_str()) {
                    Ok(Expr::Name(n))
                } else {
                    err(col, format!("unbound name `{n}`"))
                }
            }
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::LBrace => self.brace(col),
            other => err(col, format!("expected a game, found {other}")),
        }
    }

    fn brace(&mut self, open: usize) -> Result<Expr, ParseError> {
        let mut items = Vec::new();
        loop {
            let col = self.column();
            match self.peek() {
                Tok::RBrace => {
                    self.bump();
                    break;
                }
                Tok::End => return err(open, "unclosed `{`"),
                Tok::Comma => {
                    self.bump();
                    items.push(Item::Comma(col));
                }
                Tok::Bars(n) => {
                    let n = *n;
                    self.bump();
                    items.push(Item::Bars(n, col));
                }
                _ => items.push(Item::Elem(self.expr()?, col)),
            }
        }
        let (left, right) = split_group(items, open)?;
        Ok(Expr::BraceGame(left, right))
    }
}

fn split_group(items: Vec<Item>, open: usize) -> Result<(Vec<Expr>, Vec<Expr>), ParseError> {
    let widest = items
        .iter()
        .filter_map(|i| match i {
            Item::Bars(n, _) => Some(*n),
            _ => None,
        })
        .max();
    let Some(widest) = widest else {
        return err(open, "game has no `|` separating Left from Right");
    };
    let mut parts: Vec<Vec<Item>> = vec![Vec::new()];
    for item in items {
        match item {
            Item::Bars(n, col) if n == widest => {
                if parts.len() == 2 {
                    return err(
                        col,
                        format!("second `{}` splits the game into more than two sides", "|".repeat(n)),
                    );
                }
                parts.push(Vec::new());
            }
            other => parts.last_mut().expect("nonempty").push(other),
        }
    }
    let right = parts.pop().expect("two parts");
    let left = parts.pop().expect("two parts");
    Ok((side(left, open)?, side(right, open)?))
}

// A side with bars of its own is a single nested game.
fn side(items: Vec<Item>, open: usize) -> Result<Vec<Expr>, ParseError> {
    if items.iter().any(|i| matches!(i, Item::Bars(..))) {
        let (l, r) = split_group(items, open)?;
        return Ok(vec![Expr::BraceGame(l, r)]);
    }
    let mut out = Vec::new();
    let mut expecting = true;
    let mut last_comma = open;
    for item in items {
        match item {
            Item::Elem(e, col) => {
                if !expecting {
                    return err(col, "missing `,` between options");
                }
                out.push(e);
                expecting = false;
            }
            Item::Comma(col) => {
                if expecting {
                    return err(col, "empty option before `,`");
                }
                expecting = true;
                last_comma = col;
            }
            Item::Bars(..) => unreachable!("handled above"),
        }
    }
    if expecting && !out.is_empty() {
        return err(last_comma, "trailing `,`");
    }
    Ok(out)
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        scope: Vec::new(),
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return err(p.column(), format!("unexpected {} after expression", p.peek()));
    }
    Ok(e)
}

/// Fully braced form with options in id order.
pub fn print(arena: &Arena, g: GameId) -> String {
    let mut out = String::new();
    write_form(arena, g, &mut out);
    out
}

fn write_form(arena: &Arena, g: GameId, out: &mut String) {
    out.push('{');
    for (i, &x) in arena.left(g).iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write_form(arena, x, out);
    }
    out.push('|');
    for (i, &x) in arena.right(g).iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write_form(arena, x, out);
    }
    out.push('}');
}

/// Length in characters of [`print`], saturating, without building it.
pub fn printed_len(arena: &Arena, g: GameId) -> u64 {
    let subs = arena.subpositions(g);
    let mut len: Vec<u64> = vec![0; g.index() + 1];
    for x in subs {
        let opts = arena.left(x).iter().chain(arena.right(x));
        let commas = (arena.left(x).len().saturating_sub(1) + arena.right(x).len().saturating_sub(1)) as u64;
        let inner = opts.fold(0u64, |acc, o| acc.saturating_add(len[o.index()]));
        len[x.index()] = inner.saturating_add(commas).saturating_add(3);
    }
    len[g.index()]
}

pub fn evaluate(session: &mut Session, expr: &Expr) -> Result<GameId, EvalError> {
    let mut env = Vec::new();
    eval(session, expr, &mut env)
}

fn eval(session: &mut Session, expr: &Expr, env: &mut Vec<(String, GameId)>) -> Result<GameId, EvalError> {
    Ok(match expr {
        Expr::BraceGame(l, r) => {
            let mut left = Vec::with_capacity(l.len());
            for e in l {
                left.push(eval(session, e, env)?);
            }
            let mut right = Vec::with_capacity(r.len());
            for e in r {
                right.push(eval(session, e, env)?);
            }
            session.intern(&left, &right)?
        }
        Expr::Name(n) => match env.iter().rev().find(|(k, _)| k == n) {
            Some(&(_, g)) => g,
            None => match session.constant(n) {
                Ok(g) => g,
                Err(ConstantError::Arena(e)) => return Err(e.into()),
                Err(ConstantError::Unknown(_)) => return Err(EvalError::Unbound(n.clone())),
            },
        },
        Expr::IntLit(n) => constants::integer(session.arena_mut(), *n)?,
        Expr::Half => constants::half(session.arena_mut())?,
        Expr::Neg(e) => {
            let g = eval(session, e, env)?;
            session.neg(g)?
        }
        Expr::Add(a, b) => {
            let (a, b) = (eval(session, a, env)?, eval(session, b, env)?);
            session.add(a, b)?
        }
        Expr::Sub(a, b) => {
            let (a, b) = (eval(session, a, env)?, eval(session, b, env)?);
            session.sub(a, b)?
        }
        Expr::Mul(a, b) => {
            let (a, b) = (eval(session, a, env)?, eval(session, b, env)?);
            session.product(a, b)?
        }
        Expr::Let(name, value, body) => {
            let v = eval(session, value, env)?;
            env.push((name.clone(), v));
            let out = eval(session, body, env);
            env.pop();
            out?
        }
    })
}

/// Parses and evaluates in one step.
pub fn eval_str(session: &mut Session, text: &str) -> Result<GameId, NotationError> {
    let expr = parse(text)?;
    Ok(evaluate(session, &expr)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NotationError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(s: &mut Session, text: &str) -> GameId {
        eval_str(s, text).unwrap()
    }

    #[test]
    fn basic_forms() {
        let mut s = Session::new();
        assert_eq!(parse("{|}").unwrap(), Expr::BraceGame(vec![], vec![]));
        assert_eq!(ev(&mut s, "{|}"), GameId::ZERO);
        let two_circ = s.constant("2o").unwrap();
        assert_eq!(ev(&mut s, "{0,1|}"), two_circ);
        assert_eq!(ev(&mut s, "2°"), two_circ);
        let two = s.constant("2").unwrap();
        assert_eq!(ev(&mut s, "1+1"), two);
        assert_eq!(ev(&mut s, "-0"), GameId::ZERO);
    }

    #[test]
    fn multi_bar() {
        let mut s = Session::new();
        let kb = s.constant("K_bullet").unwrap();
        assert_eq!(ev(&mut s, "let K = 1/2 + 1/2 - 1 in {0|K||0|0}"), kb);
        assert_eq!(ev(&mut s, "{0|K_half||0|0}"), kb);
        assert_eq!(ev(&mut s, "{{0|K_half}|{0|0}}"), kb);
    }

    #[test]
    fn precedence() {
        assert_eq!(
            parse("1+2·3").unwrap(),
            Expr::Add(
                Box::new(Expr::IntLit(1)),
                Box::new(Expr::Mul(Box::new(Expr::IntLit(2)), Box::new(Expr::IntLit(3))))
            )
        );
        assert_eq!(
            parse("-1.*").unwrap(),
            Expr::Mul(
                Box::new(Expr::Neg(Box::new(Expr::IntLit(1)))),
                Box::new(Expr::Name("*".into()))
            )
        );
    }

    #[test]
    fn errors_carry_columns() {
        let e = parse("{0|1|2}").unwrap_err();
        assert_eq!(e.column, 5);
        let e = parse("{0|1").unwrap_err();
        assert_eq!(e.column, 1);
        let e = parse("let x = 1 in y").unwrap_err();
        assert_eq!(e.column, 14);
        assert!(e.message.contains("unbound"));
    }

    #[test]
    fn printing() {
        let mut s = Session::new();
        let star = s.constant("*").unwrap();
        assert_eq!(print(s.arena(), GameId::ZERO), "{|}");
        assert_eq!(print(s.arena(), star), "{{|}|{|}}");
        let kb = s.constant("K_bullet").unwrap();
        assert_eq!(printed_len(s.arena(), kb), print(s.arena(), kb).chars().count() as u64);
    }
}
