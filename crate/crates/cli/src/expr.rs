//! Value expressions over `Q(β)`: rationals and decimals, `b` (or `β`) for
//! the base, `+ - * / ^`, parentheses. Juxtaposition multiplies, so `3b/2`
//! and `2(b+1)` work. Exponents are integers and may be negative.

use betaint::{FieldElement, PisotBase};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    Beta,
    Op(char),
    Open,
    Close,
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, String> {
    let cs: Vec<(usize, char)> = s.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let (pos, c) = cs[i];
        match c {
            ' ' | '\t' => {}
            '0'..='9' | '.' => {
                let start = i;
                while i + 1 < cs.len() && (cs[i + 1].1.is_ascii_digit() || cs[i + 1].1 == '.') {
                    i += 1;
                }
                let text: String = cs[start..=i].iter().map(|&(_, c)| c).collect();
                out.push((pos, Tok::Num(decimal(&text).ok_or_else(|| format!("bad number '{text}' at {pos}"))?)));
            }
            'b' | 'β' => out.push((pos, Tok::Beta)),
            '+' | '-' | '*' | '/' | '^' => out.push((pos, Tok::Op(c))),
            '−' => out.push((pos, Tok::Op('-'))),
            '(' => out.push((pos, Tok::Open)),
            ')' => out.push((pos, Tok::Close)),
            _ => return Err(format!("unexpected '{c}' at {pos}")),
        }
        i += 1;
    }
    Ok(out)
}

fn decimal(text: &str) -> Option<BigRational> {
    let (int, frac) = match text.split_once('.') {
        Some((a, b)) => (a, b),
        None => (text, ""),
    };
    if (int.is_empty() && frac.is_empty()) || frac.contains('.') {
        return None;
    }
    let digits = format!("{int}{frac}");
    let num: BigInt = digits.parse().ok()?;
    let den = num_traits::pow(BigInt::from(10), frac.len());
    Some(BigRational::new(num, den))
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    base: &'a PisotBase,
    len: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.len, |&(p, _)| p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn expr(&mut self) -> Result<FieldElement, String> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.bump();
            let rhs = self.term()?;
            acc = if c == '+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<FieldElement, String> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Op(c @ ('*' | '/'))) => {
                    let c = *c;
                    self.bump();
                    let at = self.pos();
                    let rhs = self.unary()?;
                    acc = if c == '*' {
                        acc * rhs
                    } else {
                        acc.checked_div(&rhs).map_err(|e| format!("{e} at {at}"))?
                    };
                }
                Some(Tok::Num(_) | Tok::Beta | Tok::Open) => acc = acc * self.power()?,
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<FieldElement, String> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.bump();
                Ok(-self.unary()?)
            }
            Some(Tok::Op('+')) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<FieldElement, String> {
        let at = self.pos();
        let x = self.primary()?;
        if self.peek() != Some(&Tok::Op('^')) {
            return Ok(x);
        }
        self.bump();
        let e = self.exponent()?;
        x.pow(e).map_err(|e| format!("{e} at {at}"))
    }

    fn exponent(&mut self) -> Result<i64, String> {
        let at = self.pos();
        let (neg, paren) = match self.peek() {
            Some(Tok::Open) => {
                self.bump();
                (self.eat_minus(), true)
            }
            _ => (self.eat_minus(), false),
        };
        let e = match self.bump() {
            Some(Tok::Num(q)) if q.is_integer() => q.to_integer().to_i64().ok_or("exponent too large")?,
            _ => return Err(format!("expected an integer exponent at {at}")),
        };
        if paren && self.bump() != Some(Tok::Close) {
            return Err(format!("unclosed exponent at {at}"));
        }
        Ok(if neg { -e } else { e })
    }

    fn eat_minus(&mut self) -> bool {
        let m = self.peek() == Some(&Tok::Op('-'));
        if m {
            self.bump();
        }
        m
    }

    fn primary(&mut self) -> Result<FieldElement, String> {
        let at = self.pos();
        match self.bump() {
            Some(Tok::Num(q)) => Ok(FieldElement::from_rational(self.base.field(), q)),
            Some(Tok::Beta) => Ok(self.base.beta()),
            Some(Tok::Open) => {
                let x = self.expr()?;
                match self.bump() {
                    Some(Tok::Close) => Ok(x),
                    _ => Err(format!("unclosed parenthesis at {at}")),
                }
            }
            Some(t) => Err(format!("unexpected {t:?} at {at}")),
            None => Err("unexpected end of expression".into()),
        }
    }
}

pub fn parse_value(s: &str, base: &PisotBase) -> Result<FieldElement, String> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err("empty expression".into());
    }
    let mut p = Parser {
        toks,
        at: 0,
        base,
        len: s.len(),
    };
    let x = p.expr()?;
    if p.at < p.toks.len() {
        return Err(format!("trailing input at {}", p.pos()));
    }
    Ok(x)
}

/// An interval such as `[0, b)` or `(-1, 1+b]`.
pub fn parse_window(s: &str, base: &PisotBase) -> Result<betaint::capset::Window, String> {
    let s = s.trim();
    let (Some(open), Some(close)) = (s.chars().next(), s.chars().last()) else {
        return Err("empty window".into());
    };
    if s.chars().count() < 2 {
        return Err(format!("malformed window: {s}"));
    }
    let closed_lo = match open {
        '[' => true,
        '(' => false,
        _ => return Err(format!("window must start with '[' or '(': {s}")),
    };
    let closed_hi = match close {
        ']' => true,
        ')' => false,
        _ => return Err(format!("window must end with ']' or ')': {s}")),
    };
    let inner = &s[open.len_utf8()..s.len() - close.len_utf8()];
    let (lo, hi) = inner.split_once(',').ok_or("window needs two endpoints separated by ','")?;
    let lo = parse_value(lo, base)?;
    let hi = parse_value(hi, base)?;
    betaint::capset::Window::new(lo, hi, closed_lo, closed_hi).map_err(|e| e.to_string())
}
