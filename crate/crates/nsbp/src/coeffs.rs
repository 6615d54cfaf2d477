//! Recurrence coefficients b₀–b₁₇ and d₁–d₇ as literal expression tables.
//!
//! Each entry is kept verbatim in the implicit-multiplication notation of the
//! source (juxtaposition multiplies, `^` takes an integer exponent, `m` is an
//! alias of `n`). A small parser turns them into expression trees that can be
//! evaluated over any scalar field, so the same table serves exact rationals,
//! floats, dual numbers and Laurent series.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    K,
    N,
    Alpha,
    C,
    Beta,
    T,
    BigT,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(i64),
    Var(Var),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> std::result::Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let ch = cs[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let lit: String = cs[st..i].iter().collect();
            out.push(Tok::Num(lit.parse().map_err(|_| format!("bad number {lit}"))?));
        } else if ch.is_ascii_alphabetic() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_alphabetic() {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*/^()".contains(ch) {
            out.push(Tok::Op(ch));
            i += 1;
        } else {
            return Err(format!("unexpected character {ch:?} at {i}"));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> std::result::Result<Expr, String> {
        let mut lhs = if self.eat('-') {
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Op('(')))
    }

    fn term(&mut self) -> std::result::Result<Expr, String> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
            } else if self.starts_factor() {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> std::result::Result<Expr, String> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(e)) => {
                    self.pos += 1;
                    let e = e as i32;
                    return Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }));
                }
                other => return Err(format!("integer exponent expected, found {other:?}")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> std::result::Result<Expr, String> {
        let tok = self.toks.get(self.pos).cloned();
        self.pos += 1;
        match tok {
            Some(Tok::Num(v)) => Ok(Expr::Num(v)),
            Some(Tok::Ident(name)) => Ok(Expr::Var(match name.as_str() {
                "k" => Var::K,
                "n" | "m" => Var::N,
                "alpha" => Var::Alpha,
                "c" => Var::C,
                "beta" => Var::Beta,
                "t" => Var::T,
                "T" => Var::BigT,
                _ => return Err(format!("unknown symbol {name}")),
            })),
            Some(Tok::Op('(')) => {
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err("unbalanced parenthesis".into());
                }
                Ok(e)
            }
            Some(Tok::Op('-')) => Ok(Expr::Neg(Box::new(self.factor()?))),
            other => Err(format!("unexpected token {other:?}")),
        }
    }
}

/// Parses one coefficient expression.
pub fn parse(src: &str) -> std::result::Result<Expr, String> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(format!("trailing input at token {}", p.pos));
    }
    Ok(e)
}

/// Values for the symbols of the tables. `t` and `T` only enter b₄ and b₅.
#[derive(Clone, Debug)]
pub struct Vars<S> {
    pub k: S,
    pub n: S,
    pub alpha: S,
    pub c: S,
    pub beta: S,
    pub t: Option<S>,
    pub big_t: Option<S>,
}

impl<S: Scalar> Vars<S> {
    pub fn new(k: S, n: S, alpha: S, c: S, beta: S) -> Self {
        Vars { k, n, alpha, c, beta, t: None, big_t: None }
    }

    pub fn with_times(mut self, t: S, big_t: S) -> Self {
        self.t = Some(t);
        self.big_t = Some(big_t);
        self
    }
}

pub fn eval<S: Scalar>(e: &Expr, v: &Vars<S>) -> Result<S> {
    Ok(match e {
        Expr::Num(x) => S::from_i64(*x),
        Expr::Var(var) => match var {
            Var::K => v.k.clone(),
            Var::N => v.n.clone(),
            Var::Alpha => v.alpha.clone(),
            Var::C => v.c.clone(),
            Var::Beta => v.beta.clone(),
            Var::T => v.t.clone().ok_or_else(|| Error::Unsupported("coefficient needs t".into()))?,
            Var::BigT => v.big_t.clone().ok_or_else(|| Error::Unsupported("coefficient needs T".into()))?,
        },
        Expr::Neg(a) => -eval(a, v)?,
        Expr::Add(a, b) => eval(a, v)? + eval(b, v)?,
        Expr::Sub(a, b) => eval(a, v)? - eval(b, v)?,
        Expr::Mul(a, b) => eval(a, v)? * eval(b, v)?,
        Expr::Div(a, b) => eval(a, v)? / eval(b, v)?,
        Expr::Pow(a, p) => eval(a, v)?.powi(*p as i64),
    })
}

fn parsed() -> &'static HashMap<&'static str, Expr> {
    static P: OnceLock<HashMap<&'static str, Expr>> = OnceLock::new();
    P.get_or_init(|| {
        TABLE
            .iter()
            .map(|(name, src)| (*name, parse(src).unwrap_or_else(|e| panic!("{name}: {e}"))))
            .collect()
    })
}

/// Literal source text of a coefficient, e.g. `source("d3")`.
pub fn source(name: &str) -> Option<&'static str> {
    TABLE.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn names() -> impl Iterator<Item = &'static str> {
    TABLE.iter().map(|(n, _)| *n)
}

pub fn named<S: Scalar>(name: &str, v: &Vars<S>) -> Result<S> {
    let e = parsed()
        .get(name)
        .ok_or_else(|| Error::Unsupported(format!("no coefficient named {name}")))?;
    eval(e, v)
}

/// b_i, i ∈ 0..=17.
pub fn b<S: Scalar>(i: usize, v: &Vars<S>) -> Result<S> {
    named(&format!("b{i}"), v)
}

/// d_i, i ∈ 1..=7; these never involve t or T.
pub fn d<S: Scalar>(i: usize, v: &Vars<S>) -> S {
    named(&format!("d{i}"), v).expect("d coefficients depend on k, n, alpha, c only")
}


const TABLE: [(&str, &str); 25] = [
    ("b0", r#"((2 alpha (4 k+13)-c (k+4) (- alpha ^2+k^2+5 k- alpha n+6))/( beta ^2))"#),
    ("b1", r#"((1)/( beta c))(156 alpha -12 alpha ^3 c^2+48 alpha c^2+3 alpha c^2 k^4+7 c^2 k^4 n+27 alpha c^2 k^3+69 c^2 k^3 n -3 alpha ^3 c^2 k^2+84 alpha c^2 k^2-4 alpha c^2 k^2 n^2-7 alpha ^2 c^2 k^2 n+242 c^2 k^2 n-15 alpha ^3 c^2 k +108 alpha c^2 k-22 alpha c^2 k n^2-37 alpha ^2 c^2 k n+360 c^2 k n-24 alpha c^2 n^2-36 alpha ^2 c^2 n +192 c^2 n-24 alpha ^2 c+11 c k^4+81 c k^3-11 alpha ^2 c k^2-28 alpha c k^2 n+202 c k^2 -41 alpha ^2 c k-130 alpha c k n+192 c k-132 alpha c n+48 c+32 alpha k^2+152 alpha k)"#),
    ("b2", r#"((3 )/(c))(c^2 (k^2+6 k+8) (- alpha ^2+k^2+6 k-m^2-2 alpha m+9)+2 c (k+4) * (5 alpha +2 alpha k+4 k m+11 m)+2 (10 k^2+57 k+80) )"#),
    ("b3", r#"-6 beta"#),
    ("b4", r#"2 (t-T)^2 (-24 alpha c+ alpha c k^4+3 c k^4 n+6 alpha c k^3+27 c k^3 n- alpha ^3 c k^2+5 alpha c k^2 - alpha ^2 c k^2 n+84 c k^2 n-4 alpha ^3 c k-18 alpha c k-4 alpha ^2 c k n+108 c k n+48 c n+24 k^4 +198 k^3-8 alpha ^2 k^2+582 k^2-26 alpha ^2 k+720 k+312)"#),
    ("b5", r#"-((2 (t-T)^2 beta )/(c (k+2)))(c (24 alpha +4 alpha k^2+21 k^2 n+19 alpha k+108 k n+132 n)-c^2 (k+4) * (-3 alpha ^2+2 k^3+16 k^2-2 alpha ^2 k-3 k n^2-5 alpha k n+42 k-6 n^2-9 alpha n+36) -6 (k+2) (4 k+13))"#),
    ("b6", r#"3 alpha beta c^3 (k-1) k^2 (k+1) ((k-1)^2- alpha ^2)"#),
    ("b7", r#"beta ^2 c^2 k (k+1) (-2 alpha ^3- alpha ^4 c+2 c k^4-2 c k^3+5 alpha ^2 c k^2+13 alpha c k^2 n- alpha ^2 c k -6 alpha c k n- alpha ^3 c n-4 alpha k^2+3 alpha k)"#),
    ("b8", r#"beta ^3 c (k+1) (-4 alpha + alpha ^3 c^2+ alpha c^2 k^3+8 c^2 k^3 n-2 alpha c^2 k^2-4 c^2 k^2 n+2 alpha ^3 c^2 k + alpha c^2 k+4 alpha c^2 k n^2+6 alpha ^2 c^2 k n-4 c^2 k n+2 alpha c^2 n^2+3 alpha ^2 c^2 n+10 c k^3 -2 c k^2+ alpha c k n-8 c k+2 alpha c n-5 alpha k)"#),
    ("b9", r#"- beta ^4 c^2 k (k+2) ( alpha ^2 c- alpha +2 c k^2-2 c k+ alpha c n)"#),
    ("b10", r#"c k (k+1) n (2 alpha ^3+ alpha ^4 c+4 c k^4-4 c k^3-5 alpha ^2 c k^2-7 alpha c k^2 n+4 alpha ^2 c k+3 alpha c k n + alpha ^3 c n-2 alpha k^2)"#),
    ("b11", r#"- beta (k+1) n (-4 alpha +2 c^2 k^3 n+2 c^2 k^2 n+ alpha c^2 k n^2+ alpha ^2 c^2 k n-4 c^2 k n +2 alpha c^2 n^2+2 alpha ^2 c^2 n-2 alpha ^2 c+16 c k^3-8 c k^2-4 alpha ^2 c k+7 alpha c k n-8 c k +2 alpha c n-8 alpha k)"#),
    ("b12", r#"beta ^2 c^2 k (k+1) (k^2- alpha ^2) ( alpha - alpha ^2 c+c k^2+c k- alpha c n)"#),
    ("b13", r#"beta ^3 c (k+1) (-2 alpha - alpha ^3 c^2+2 alpha c^2 k^3+4 c^2 k^3 n+3 alpha c^2 k^2+6 c^2 k^2 n-2 alpha ^3 c^2 k + alpha c^2 k-4 alpha c^2 k n^2-6 alpha ^2 c^2 k n+2 c^2 k n-2 alpha c^2 n^2-3 alpha ^2 c^2 n+3 alpha ^2 c+5 c k^3 +9 c k^2+3 alpha ^2 c k+8 alpha c k n+4 c k+4 alpha c n-4 alpha k)"#),
    ("b14", r#"beta ^4 (-c^2) k (k+2) (4 alpha - alpha ^2 c+c k^2+c k- alpha c n)"#),
    ("b15", r#"c k (k+1) n (k^2- alpha ^2) (- alpha + alpha ^2 c+2 c k^2+2 c k+ alpha c n)"#),
    ("b16", r#"beta (-(k+1)) n (-2 alpha +3 alpha c^2 k^3+c^2 k^3 n+6 alpha c^2 k^2+3 c^2 k^2 n-3 alpha ^3 c^2 k +3 alpha c^2 k-4 alpha c^2 k n^2-7 alpha ^2 c^2 k n+2 c^2 k n-2 alpha c^2 n^2-2 alpha ^2 c^2 n+2 alpha ^2 c +8 c k^3+12 c k^2+4 alpha ^2 c k+8 alpha c k n+4 c k+4 alpha c n-4 alpha k)"#),
    ("b17", r#"6 alpha beta ^2 c k (2 k+3) n"#),
    ("d1", r#"c (k+1) (2 k+1) (c k- alpha c-c n-c-1) (-2 alpha c^2+c^2 k^3-3 c^2 k^2 n-5 c^2 k^2 - alpha ^2 c^2 k+ alpha c^2 k+2 c^2 k n^2+ alpha c^2 k n+9 c^2 k n+8 c^2 k-2 c^2 n^2-2 alpha c^2 n -6 c^2 n-4 c^2+2 alpha c-3 c k^2-3 alpha c k+5 c k-2 c-2 k+2)"#),
    ("d2", r#"2 (k-1) (k+1) (k-n-1) (k-n- alpha -2) (k-n- alpha -1)^2 (k-n- alpha ) * (k+n+ alpha ) c^5+(k-n- alpha -1) (2 k^6-15 n k^5-14 alpha k^5-18 k^5+58 n^2 k^4 +22 alpha ^2 k^4+94 n k^4+77 n alpha k^4+62 alpha k^4+42 k^4-63 n^3 k^3-10 alpha ^3 k^3-192 n^2 k^3 -77 n alpha ^2 k^3-58 alpha ^2 k^3-157 n k^3-130 n^2 alpha k^3-233 n alpha k^3-82 alpha k^3+18 n^4 k^2 -34 k^3+112 n^3 k^2+15 n alpha ^3 k^2+14 alpha ^3 k^2+166 n^2 k^2+48 n^2 alpha ^2 k^2+112 n alpha ^2 k^2 +38 alpha ^2 k^2 +78 n k^2+51 n^3 alpha k^2+210 n^2 alpha k^2+176 n alpha k^2+30 alpha k^2+4 k^2-12 n^4 k -21 n^3 k-n alpha ^3 k+2 alpha ^3 k-14 n^2 alpha ^2 k+9 n alpha ^2 k+10 alpha ^2 k+12 n k-25 n^3 alpha k -14 n^2 alpha k+18 n alpha k+8 alpha k+4 k-6 n^4-28 n^3-4 n alpha ^3-6 alpha ^3-32 n^2-14 n^2 alpha ^2 -32 n alpha ^2-12 alpha ^2-12 n-16 n^3 alpha -54 n^2 alpha -36 n alpha -4 alpha ) c^4-(14 k^6-92 n k^5 -46 alpha k^5-70 k^5+148 n^2 k^4+50 alpha ^2 k^4+339 n k^4+192 n alpha k^4+174 alpha k^4+128 k^4 -120 n^3 k^3-18 alpha ^3 k^3-401 n^2 k^3-144 n alpha ^2 k^3-134 alpha ^2 k^3-422 n k^3-264 n^2 alpha k^3 -510 n alpha k^3-228 alpha k^3-104 k^3+14 n^4 k^2+188 n^3 k^2+44 n alpha ^3 k^2+84 n^2 alpha ^2 k^2 +306 n^2 k^2+30 alpha ^3 k^2+231 n alpha ^2 k^2+106 alpha ^2 k^2+179 n k^2+54 n^3 alpha k^2+385 n alpha k^2 +395 n^2 alpha k^2+112 alpha k^2+34 k^2-12 n^4 k-38 n^3 k-8 n alpha ^3 k-6 alpha ^3 k-22 n^2 alpha ^2 k -13 n^2 k-31 n alpha ^2 k-10 alpha ^2 k+14 n k-26 n^3 alpha k-59 n^2 alpha k-25 n alpha k-6 alpha k-2k -2 n^4-30 n^3-6 n alpha ^3-6 alpha ^3-40 n^2-10 n^2 alpha ^2-32 n alpha ^2-12 alpha ^2-18 n-56 n^2 alpha -6 n^3 alpha -40 n alpha -6 alpha ) c^3+(14 k^5-35 n k^4-28 alpha k^4-52 k^4+27 n^2 k^3+14 alpha ^2 k^3 +64 n k^3+38 n alpha k^3+78 alpha k^3+72 k^3+30 n^3 k^2-14 n^2 k^2-63 n alpha ^2 k^2-26 alpha ^2 k^2 -33 n k^2-15 n^2 alpha k^2-89 n alpha k^2-70 alpha k^2-44 k^2-20 n^3 k-7 n^2 k+21 n alpha ^2 k +10 alpha ^2 k+10 n k-5 n^2 alpha k+35 n alpha k+18 alpha k+10 k-10 n^3-6 n^2+12 n alpha ^2 +2 alpha ^2-6 n- 2 n^2 alpha +4 n alpha +2 alpha ) c^2-2 (2 k^4+10 n k^3-2 alpha k^3-6 k^3-8 n^2 k^2 +22 n alpha k^2-9 n k^2+4 alpha k^2+6 k^2+6 n^2 k-3 n k-11 n alpha k-2 alpha k-2 k + 2 n^2+2 n-6 n alpha ) c-4 (k-1) (3 k+1) n"#),
    ("d3", r#"((1)/(2)) (k-1) (k+1) (k-n- alpha -2) (k-n- alpha -1) (k-n- alpha ) (k+n+ alpha ) * (k^2+2 n k+ alpha k+k-2 n^2-4 n-2 n alpha -2 alpha -2) c^5+((1)/(2)) (2 k^7-24 n k^6 -12 alpha k^6-25 k^6+52 n^2 k^5+8 alpha ^2 k^5+102 n k^5+54 n alpha k^5+49 alpha k^5+55 k^5 -8 n^3 k^4+12 alpha ^3 k^4-121 n^2 k^4+34 n alpha ^2 k^4+11 alpha ^2 k^4-126 n k^4+14 n^2 alpha k^4 -82 n alpha k^4-44 alpha k^4-33 k^4-42 n^4 k^3-10 alpha ^4 k^3-76 n^3 k^3-78 n alpha ^3 k^3-49 alpha ^3 k^3 +15 n^2 k^3-168 n^2 alpha ^2 k^3-210 n alpha ^2 k^3-57 alpha ^2 k^3+26 n k^3-142 n^3 alpha k^3 -237 n^2 alpha k^3-76 n alpha k^3-9 alpha k^3-9 k^3+20 n^5 k^2+108 n^4 k^2+14 n alpha ^4 k^2 +14 alpha ^4 k^2+162 n^3 k^2+62 n^2 alpha ^3 k^2+124 n alpha ^3 k^2+44 alpha ^3 k^2+107 n^2 k^2 +102 n^3 alpha ^2 k^2+314 n^2 alpha ^2 k^2+228 n alpha ^2 k^2+39 alpha ^2 k^2+38 n k^2+74 n^4 alpha k^2 +312 n^3 alpha k^2+346 n^2 alpha k^2+142 n alpha k^2+16 alpha k^2+10 k^2-12 n^5 k-30 n^4 k -2 n alpha ^4 k+2 alpha ^4 k-32 n^3 k-18 n^2 alpha ^3 k+8 n alpha ^3 k+9 alpha ^3 k-35 n^2 k-42 n^3 alpha ^2 k -20 n^2 alpha ^2 k+22 n alpha ^2 k+9 alpha ^2 k-16 n k-38 n^4 alpha k-56 n^3 alpha k-19 n^2 alpha k-10 n alpha k -8 n^5-36 n^4-4 n alpha ^4-6 alpha ^4-46 n^3-20 n^2 alpha ^3-42 n alpha ^3-16 alpha ^3-36 n^3 alpha ^2 -18 n^2-102 n^2 alpha ^2-70 n alpha ^2-10 alpha ^2-28 n^4 alpha -102 n^3 alpha - 100 n^2 alpha -28 n alpha ) c^4 -((1)/(2)) (27 k^6-64 n k^5-33 alpha k^5-87 k^5+35 n^2 k^4-27 alpha ^2 k^4+156 n k^4+20 n alpha k^4 +44 alpha k^4+87 k^4+106 n^3 k^3+33 alpha ^3 k^3+53 n^2 k^3+166 n alpha ^2 k^3+87 alpha ^2 k^3-92 n k^3 +239 n^2 alpha k^3+132 n alpha k^3+5 alpha k^3-25 k^3-32 n^4 k^2-216 n^3 k^2-38 n alpha ^3 k^2 -44 alpha ^3 k^2-185 n^2 k^2-72 n^2 alpha ^2 k^2-252 n alpha ^2 k^2-79 alpha ^2 k^2-32 n k^2-66 n^3 alpha k^2 -388 n^2 alpha k^2-236 n alpha k^2-24 alpha k^2-2 k^2+24 n^4 k+66 n^3 k+10 n alpha ^3 k+3 alpha ^3 k +67 n^2 k+32 n^2 alpha ^2 k+22 n alpha ^2 k+9 alpha ^2 k+32 n k+46 n^3 alpha k+73 n^2 alpha k+48 n alpha k +8 alpha k+8 n^4+44 n^3+4 n alpha ^3+8 alpha ^3+30 n^2+8 n^2 alpha ^2+40 n alpha ^2+10 alpha ^2+12 n^3 alpha + 68 n^2 alpha +32 n alpha ) c^3+(12 k^5-14 n k^4+12 alpha k^4-23 k^4-47 n^2 k^3-24 alpha ^2 k^3 +16 n k^3-65 n alpha k^3-30 alpha k^3+17 k^3-14 n^3 k^2+48 n^2 k^2+25 n alpha ^2 k^2+33 alpha ^2 k^2 +n k^2-7 n^2 alpha k^2+92 n alpha k^2+25 alpha k^2-7 k^2+8 n^3 k+n^2 k-9 n alpha ^2 k-6 alpha ^2 k -6 n k+5 n^2 alpha k-12 n alpha k-6 alpha k+k+6 n^3-2 n^2-4 n alpha ^2-3 alpha ^2+3 n-9 n alpha + 6 n^2 alpha - alpha ) c^2+(4 k^4-16 n k^3-16 alpha k^3-7 k^3-17 n^2 k^2+19 n k^2+16 n alpha k^2 +23 alpha k^2+4 k^2+12 n^2 k-2 n k-7 n alpha k-6 alpha k-k+5 n^2-n-5 n alpha - alpha ) c -2 (k-1) (2 k^2-2 n k-k-n)"#),
    ("d4", r#"((1)/(2)) n (-2 alpha c^2+c^2 k^3-3 c^2 k^2 n-5 c^2 k^2- alpha ^2 c^2 k+ alpha c^2 k+2 c^2 k n^2+ alpha c^2 k n +9 c^2 k n+8 c^2 k-2 c^2 n^2-2 alpha c^2 n-6 c^2 n-4 c^2+2 alpha c-3 c k^2-3 alpha c k+5 c k -2 c-2 k+2) ( alpha ^2 c^2+ alpha c^2+c^2 k^3-2 alpha c^2 k^2-2 c^2 k^2 n+ alpha ^2 c^2 k- alpha c^2 k +c^2 k n^2+2 alpha c^2 k n-c^2 k n-c^2 k+c^2 n^2+2 alpha c^2 n+c^2 n+ alpha c-3 c k^2 +3 alpha c k+9 c k n+c k +3 c n+2 k)"#),
    ("d5", r#"c^4 (k-1) (k+1) (n+1) (k- alpha -1) (k- alpha -n-1) (k- alpha -n) ( alpha +k+n) +c^3 (n+1) (k- alpha -1) (-2 alpha ^2- alpha +2 k^4-6 alpha k^3-3 k^3 n-5 k^3+4 alpha ^2 k^2 +7 alpha k^2+10 k^2 n^2+23 alpha k^2 n+5 k^2 n+2 k^2-2 alpha ^2 k-6 k n^2-11 alpha k n-k n+k - 4 n^2-8 alpha n-n)-c^2 (k-1) (n+1) ( alpha ^2+ alpha +5 k^3-10 alpha k^2-11 k^2 n-6 k^2 +5 alpha ^2 k+5 alpha k+23 alpha k n+8 k n+k+7 alpha n+3 n) +2 c (k^2-k) (n+1) (k- alpha -1)"#),
    ("d6", r#"(k-1) (k+1) (k- alpha -1) (k-n- alpha -2) (k-n- alpha -1) (k-n- alpha ) * (k+ alpha -1) (k+n+ alpha ) c^5+(k-1) (k- alpha -1) (k^5-8 n k^4-7 alpha k^4-10 k^4 +24 n^2 k^3+5 alpha ^2 k^3+32 n k^3+29 n alpha k^3+19 alpha k^3+13 k^3-16 n^3 k^2+7 alpha ^3 k^2 -53 n^2 k^2+10 n alpha ^2 k^2+2 alpha ^2 k^2-30 n k^2-13 n^2 alpha k^2-45 n alpha k^2-8 alpha k^2-2 k^2 -n^4 k-6 alpha ^4 k+8 n^3 k-31 n alpha ^3 k-7 alpha ^3 k+17 n^2 k-45 n^2 alpha ^2 k-32 n alpha ^2 k+ alpha ^2 k +4 n k-21 n^3 alpha k-17 n^2 alpha k+8 n alpha k-2 k-n^4-4 alpha ^4+4 n^3-17 n alpha ^3-6 alpha ^3 +14 n^2-23 n^2 alpha ^2-18 n alpha ^2+2 alpha ^2+6 n-11 n^3 alpha -8 n^2 alpha +12 n alpha +2 alpha ) c^4 -(8 k^6-30 n k^5-16 alpha k^5-33 k^5+26 n^2 k^4-6 alpha ^2 k^4+114 n k^4+27 n alpha k^4 +38 alpha k^4+50 k^4+5 n^3 k^3+28 alpha ^3 k^3-59 n^2 k^3+72 n alpha ^2 k^3+37 alpha ^2 k^3-159 n k^3 +34 n^2 alpha k^3-31 n alpha k^3-33 alpha k^3-36 k^3-14 alpha ^4 k^2-7 n^3 k^2-69 n alpha ^3 k^2-50 alpha ^3 k^2 +37 n^2 k^2-72 n^2 alpha ^2 k^2-173 n alpha ^2 k^2-33 alpha ^2 k^2+85 n k^2-17 n^3 alpha k^2-75 n^2 alpha k^2 -n alpha k^2+19 alpha k^2+14 k^2+8 alpha ^4 k-n^3 k+42 n alpha ^3 k+10 alpha ^3 k-n^2 k+44 n^2 alpha ^2 k +49 n alpha ^2 k-3 alpha ^2 k+n k+10 n^3 alpha k+16 n^2 alpha k-n alpha k-7 alpha k-3 k+6 alpha ^4+3 n^3 +27 n alpha ^3+12 alpha ^3-3 n^2+28 n^2 alpha ^2+48 n alpha ^2+5 alpha ^2-11 n+7 n^3 alpha +25 n^2 alpha +6 n alpha - alpha ) c^3+(k-1) (5 k^4-8 n k^3+6 alpha k^3-4 k^3-21 n^2 k^2-27 alpha ^2 k^2-8 n k^2 -53 n alpha k^2-23 alpha k^2+3 k^2+16 alpha ^3 k+14 n^2 k+61 n alpha ^2 k+23 alpha ^2 k+12 n k +33 n^2 alpha k+70 n alpha k+5 alpha k-4 k+4 alpha ^3+7 n^2+19 n alpha ^2+6 alpha ^2+4 n+27 n alpha +11 n^2 alpha +2 alpha ) c^2+(k-1) (k- alpha -1) (3 k^2-19 n k-9 alpha k-3 k-5 n- alpha ) c -2 (k-1) k (k- alpha -1)"#),
    ("d7", r#"-((1)/(2)) k (k+1) (k- alpha -1) (k-n- alpha -2) (k-n- alpha -1) (k-n- alpha ) (k+ alpha -1) * (k+n+ alpha ) c^5+((1)/(2)) (k- alpha -1) (k+ alpha -1)(k^5+5 n k^4+5 alpha k^4+5 k^4 -25 n^2 k^3-13 alpha ^2 k^3-23 n k^3-38 n alpha k^3-17 alpha k^3-8 k^3+19 n^3 k^2+7 alpha ^3 k^2 +35 n^2 k^2+33 n alpha ^2 k^2+9 alpha ^2 k^2+12 n k^2+45 n^2 alpha k^2+44 n alpha k^2+2 alpha k^2+7 n^3 k +3 alpha ^3 k+18 n^2 k+13 n alpha ^2 k+8 alpha ^2 k+6 n k+17 n^2 alpha k+26 n alpha k+2 alpha k-2 n^3 -2 alpha ^3-2 n^2-6 n alpha ^2-2 alpha ^2 -6 n^2 alpha -4 n alpha ) c^4+((1)/(2)) (13 k^6-42 n k^5-32 alpha k^5 -50 k^5+57 n^2 k^4+6 alpha ^2 k^4+139 n k^4+80 n alpha k^4+85 alpha k^4+64 k^4-10 n^3 k^3 +32 alpha ^3 k^3-149 n^2 k^3+50 n alpha ^2 k^3-7 alpha ^2 k^3-161 n k^3+8 n^2 alpha k^3-166 n alpha k^3 -71 alpha k^3-28 k^3-19 alpha ^4 k^2+18 n^3 k^2-88 n alpha ^3 k^2-29 alpha ^3 k^2+109 n^2 k^2 -65 n^2 alpha ^2 k^2-67 n alpha ^2 k^2+8 alpha ^2 k^2+63 n k^2-14 n^3 alpha k^2-32 n^2 alpha k^2+72 n alpha k^2 +13 alpha k^2-k^2+ alpha ^4 k-6 n^3 k+10 n alpha ^3 k-7 alpha ^3 k+n^2 k+11 n^2 alpha ^2 k-13 n alpha ^2 k + alpha ^2 k+11 n k+8 n^3 alpha k+8 n^2 alpha k+22 n alpha k+7 alpha k+2 k+6 alpha ^4-2 n^3+22 n alpha ^3 +6 alpha ^3-18 n^2+18 n^2 alpha ^2+16 n alpha ^2-2 alpha ^2-10 n+6 n^3 alpha + 16 n^2 alpha -8 n alpha -2 alpha ) c^3 -((1)/(2)) (k- alpha -1) (13 k^4-41 n k^3+12 alpha k^3-24 k^3-20 n^2 k^2-25 alpha ^2 k^2+58 n k^2 -93 n alpha k^2-7 alpha k^2+15 k^2+12 n^2 k+11 alpha ^2 k-9 n k+43 n alpha k-3 alpha k-4 k+8 n^2 + 6 alpha ^2-8 n+26 n alpha ) c^2-(k- alpha -1) (2 k^3-17 n k^2-8 alpha k^2-k+12 n k +6 alpha k-k^2+5 n+ alpha ) c+2 (k-1) k (k- alpha -1)"#),
];
