//! Expression mini-language for command-line input.
//!
//! Generators `x1..xn`, `y1..yn`, `d1..dn`, rational literals (`3`, `-1/2`),
//! `+`, `-`, `*`, `^` with a nonnegative integer exponent, and parentheses.
//! Juxtaposition multiplies, so the canonical renderings (`x1 x2 * (d1 + 1/2*d2)`)
//! parse back. A trailing `[prec p]` or `[exact]` stamp sets the precision.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{MultiIndex, Rational};
use crate::pbw::{UElem, UEnv};
use crate::phase::{HElem, PhaseSpace};
use crate::series::{Series, EXACT};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Rational),
    /// `('x' | 'y' | 'd', 0-based index)`
    Gen(char, usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Gen(char, usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn perr(col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line: 1, col, msg: msg.into() }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = src.chars().collect();
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
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, col));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((Tok::Int(digits.parse().expect("digits")), col));
        } else if matches!(c, 'x' | 'y' | 'd') {
            i += 1;
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(perr(col, format!("`{c}` needs an index, as in `{c}1`")));
            }
            let idx: usize = chars[start..i].iter().collect::<String>().parse().map_err(|_| perr(col, "index too large"))?;
            if idx == 0 {
                return Err(perr(col, "generator indices start at 1"));
            }
            out.push((Tok::Gen(c, idx - 1), col));
        } else {
            return Err(perr(col, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, c)| *c)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.term()?)));
        }
        let mut lhs = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
                }
                Some(Tok::Int(_) | Tok::Gen(..) | Tok::LParen) => {
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let col = self.col();
            match self.bump() {
                Some(Tok::Int(e)) => {
                    let e: u32 = e.try_into().map_err(|_| perr(col, "exponent too large"))?;
                    return Ok(Expr::Pow(Box::new(base), e));
                }
                _ => return Err(perr(col, "expected an integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let col = self.col();
        match self.bump() {
            Some(Tok::Int(a)) => {
                if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    let c2 = self.col();
                    match self.bump() {
                        Some(Tok::Int(b)) if !b.is_zero() => Ok(Expr::Num(Rational::new(a, b))),
                        Some(Tok::Int(_)) => Err(perr(c2, "zero denominator")),
                        _ => Err(perr(c2, "expected a denominator")),
                    }
                } else {
                    Ok(Expr::Num(Rational::from_integer(a)))
                }
            }
            Some(Tok::Gen(c, i)) => Ok(Expr::Gen(c, i)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                let c2 = self.col();
                match self.bump() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(perr(c2, "expected `)`")),
                }
            }
            Some(t) => Err(perr(col, format!("unexpected {}", describe(&t)))),
            None => Err(perr(col, "unexpected end of input")),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Plus => "`+`",
        Tok::Minus => "`-`",
        Tok::Star => "`*`",
        Tok::Slash => "`/`",
        Tok::Caret => "`^`",
        Tok::RParen => "`)`",
        _ => "token",
    }
}

/// Splits off a trailing precision stamp.
fn split_stamp(src: &str) -> Result<(&str, Option<i64>)> {
    let t = src.trim_end();
    if !t.ends_with(']') {
        return Ok((src, None));
    }
    let open = t.rfind('[').ok_or_else(|| perr(t.len(), "unmatched `]`"))?;
    let inner = t[open + 1..t.len() - 1].trim();
    let p = if inner == "exact" {
        EXACT
    } else if let Some(v) = inner.strip_prefix("prec") {
        v.trim().parse::<i64>().map_err(|_| perr(open + 1, "bad precision stamp"))?
    } else {
        return Err(perr(open + 1, "expected `[prec p]` or `[exact]`"));
    };
    Ok((&t[..open], Some(p)))
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr> {
        Self::parse_stamped(src).map(|(e, _)| e)
    }

    /// Parses and returns the precision stamp, if any.
    pub fn parse_stamped(src: &str) -> Result<(Expr, Option<i64>)> {
        let (body, stamp) = split_stamp(src)?;
        let toks = lex(body)?;
        if toks.is_empty() {
            return Err(perr(1, "empty expression"));
        }
        let mut p = Parser { toks, pos: 0, end: body.chars().count() + 1 };
        let e = p.expr()?;
        if p.pos < p.toks.len() {
            return Err(perr(p.col(), "unexpected trailing input"));
        }
        Ok((e, stamp))
    }

    fn check_index(&self, n: usize) -> Result<()> {
        match self {
            Expr::Gen(c, i) if *i >= n => Err(Error::Domain(format!("{c}{} out of range for dimension {n}", i + 1))),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.check_index(n)?;
                b.check_index(n)
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.check_index(n),
            _ => Ok(()),
        }
    }

    fn fold<T: Clone>(
        &self,
        num: &dyn Fn(&Rational) -> T,
        gen: &dyn Fn(char, usize) -> Result<T>,
        add: &dyn Fn(&T, &T) -> T,
        mul: &dyn Fn(&T, &T) -> T,
    ) -> Result<T> {
        let rec = |e: &Expr| e.fold(num, gen, add, mul);
        Ok(match self {
            Expr::Num(q) => num(q),
            Expr::Gen(c, i) => gen(*c, *i)?,
            Expr::Add(a, b) => add(&rec(a)?, &rec(b)?),
            Expr::Sub(a, b) => add(&rec(a)?, &mul(&num(&-Rational::one()), &rec(b)?)),
            Expr::Neg(a) => mul(&num(&-Rational::one()), &rec(a)?),
            Expr::Mul(a, b) => mul(&rec(a)?, &rec(b)?),
            Expr::Pow(a, e) => {
                let base = rec(a)?;
                let mut acc = num(&Rational::one());
                for _ in 0..*e {
                    acc = mul(&acc, &base);
                }
                acc
            }
        })
    }

    /// Value in the phase space, left normal form. `y` enters through its
    /// left form, known to the phase-space precision.
    pub fn eval_h(&self, ps: &PhaseSpace) -> Result<HElem> {
        self.check_index(ps.dim())?;
        self.fold(
            &|q| ps.scalar(q.clone()),
            &|c, i| {
                Ok(match c {
                    'x' => ps.x(i),
                    'y' => ps.y(i),
                    _ => ps.d(i),
                })
            },
            &|a, b| a.add(b),
            &|a, b| ps.mul(a, b),
        )
    }

    /// Value in `U(g)`; only `x` generators are allowed.
    pub fn eval_u(&self, u: &UEnv) -> Result<UElem> {
        let n = u.dim();
        self.check_index(n)?;
        self.fold(
            &|q| UElem::monomial(MultiIndex::zero(n), q.clone()),
            &|c, i| match c {
                'x' => Ok(UElem::gen(n, i)),
                _ => Err(Error::Domain(format!("`{c}{}` is not in U(g); use x1..x{n}", i + 1))),
            },
            &|a, b| a.add(b),
            &|a, b| u.mul(a, b),
        )
    }

    /// Value in the series ring; only `d` generators are allowed.
    pub fn eval_series(&self, n: usize, prec: i64) -> Result<Series> {
        self.check_index(n)?;
        self.fold(
            &|q| Series::constant(n, q.clone(), prec),
            &|c, i| match c {
                'd' => Ok(Series::var(n, i, prec)),
                _ => Err(Error::Domain(format!("`{c}{}` is not a series; use d1..d{n}", i + 1))),
            },
            &|a, b| a.add(b),
            &|a, b| a.mul(b),
        )
    }
}

/// Parses an element of the phase space, honouring a precision stamp.
pub fn parse_h(ps: &PhaseSpace, src: &str) -> Result<HElem> {
    let (e, stamp) = Expr::parse_stamped(src)?;
    let h = e.eval_h(ps)?;
    Ok(match stamp {
        Some(p) => h.truncate(p),
        None => h,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::lie::LieAlgebra;

    #[test]
    fn precedence_and_juxtaposition() {
        let e = Expr::parse("x1 x2 * (d1 + 1/2*d2) - 3").unwrap();
        let ps = PhaseSpace::new(LieAlgebra::heisenberg3(), 4);
        let h = e.eval_h(&ps).unwrap();
        let direct = ps
            .mul(&ps.mul(&ps.x(0), &ps.x(1)), &ps.d(0).add(&ps.d(1).scale(&rat(1, 2))))
            .sub(&ps.scalar(rat(3, 1)));
        assert!(h.first_difference(&direct, 4).is_none());
    }

    #[test]
    fn errors_carry_columns() {
        match Expr::parse("x1 + * d2") {
            Err(Error::Parse { col, .. }) => assert_eq!(col, 6),
            other => panic!("{other:?}"),
        }
        assert!(matches!(Expr::parse("x0"), Err(Error::Parse { .. })));
        assert!(matches!(Expr::parse("(x1"), Err(Error::Parse { .. })));
        assert!(matches!(Expr::parse("1/0"), Err(Error::Parse { .. })));
        let ps = PhaseSpace::new(LieAlgebra::sl2(), 3);
        assert!(matches!(Expr::parse("x4").unwrap().eval_h(&ps), Err(Error::Domain(_))));
    }

    #[test]
    fn round_trip() {
        let ps = PhaseSpace::new(LieAlgebra::sl2(), 4);
        for src in ["y1 y2", "x1 d2 + d3 x1", "(d1 - d2)^2 x3", "-1/3*y3 + x2^2"] {
            let h = parse_h(&ps, src).unwrap();
            let back = parse_h(&ps, &h.render_stamped().replace('\n', " ")).unwrap();
            assert!(h.first_difference(&back, h.prec()).is_none(), "{src}: {}", h.render());
            assert_eq!(back.prec(), h.prec());
        }
    }

    #[test]
    fn series_and_u() {
        let s = Expr::parse("d1^2 - 2*d1*d2").unwrap().eval_series(2, 3).unwrap();
        assert_eq!(s.render(), "d1^2 - 2*d1*d2");
        let u = UEnv::new(LieAlgebra::sl2());
        let v = Expr::parse("x2 x1").unwrap().eval_u(&u).unwrap();
        assert_eq!(v, u.mul(&UElem::gen(3, 1), &UElem::gen(3, 0)));
        assert!(Expr::parse("d1").unwrap().eval_u(&u).is_err());
    }
}
