//! Parser for the canonical text form produced by the `Display` impls.
//!
//! Accepts `*` or `·` between factors and arbitrary whitespace.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::monomial::Monomial;
use super::poly::{Coefficient, LPoly};
use super::var::{Family, VarKey};
use super::weight::Weight;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Star,
    Caret,
    Plus,
    Minus,
    Slash,
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '(' | ')' | '[' | ']' | ',' | '*' | '·' | '^' | '+' | '-' | '/' => {
                out.push((
                    pos,
                    match c {
                        '(' => Tok::LParen,
                        ')' => Tok::RParen,
                        '[' => Tok::LBrack,
                        ']' => Tok::RBrack,
                        ',' => Tok::Comma,
                        '^' => Tok::Caret,
                        '+' => Tok::Plus,
                        '-' => Tok::Minus,
                        '/' => Tok::Slash,
                        _ => Tok::Star,
                    },
                ));
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].1.is_ascii_digit() {
                    j += 1;
                }
                out.push((pos, Tok::Int(chars[i..j].iter().map(|x| x.1).collect())));
                i = j;
            }
            c if c.is_ascii_alphabetic() => {
                let mut j = i;
                while j < chars.len() && chars[j].1.is_ascii_alphanumeric() {
                    j += 1;
                }
                let mut word: String = chars[i..j].iter().map(|x| x.1).collect();
                if word == "l" && j < chars.len() && matches!(chars[j].1, '+' | '-') {
                    word.push(chars[j].1);
                    j += 1;
                }
                out.push((pos, Tok::Ident(word)));
                i = j;
            }
            _ => {
                return Err(Error::Parse {
                    pos,
                    msg: format!("unexpected character {c:?}"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn new(s: &str) -> Result<Self> {
        Ok(Self {
            toks: lex(s)?,
            at: 0,
            end: s.len(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|t| t.0).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|t| t.1.clone());
        self.at += 1;
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        if self.eat(&t) {
            Ok(())
        } else {
            self.err(format!("expected {t:?}"))
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        match self.next() {
            Some(Tok::Int(s)) => Ok(s.parse().unwrap()),
            _ => {
                self.at -= 1;
                self.err("expected integer")
            }
        }
    }

    fn signed_i64(&mut self) -> Result<i64> {
        let neg = self.eat(&Tok::Minus);
        let v = self.int()?;
        let v: i64 = match i64::try_from(v) {
            Ok(v) => v,
            Err(_) => return self.err("integer out of range"),
        };
        Ok(if neg { -v } else { v })
    }

    fn done(&self) -> bool {
        self.at >= self.toks.len()
    }

    fn weight(&mut self) -> Result<Weight> {
        self.expect(Tok::LBrack)?;
        let mut w = Weight::zero();
        if self.eat(&Tok::RBrack) {
            return Ok(w);
        }
        let mut first = true;
        loop {
            let neg = if self.eat(&Tok::Minus) {
                true
            } else {
                if !first && !self.eat(&Tok::Plus) {
                    break;
                }
                if first {
                    self.eat(&Tok::Plus);
                }
                false
            };
            first = false;
            let mut c = BigRational::one();
            if let Some(Tok::Int(_)) = self.peek() {
                let n = self.int()?;
                let d = if self.eat(&Tok::Slash) {
                    self.int()?
                } else {
                    BigInt::one()
                };
                if d == BigInt::from(0) {
                    return self.err("zero denominator");
                }
                c = BigRational::new(n, d);
                if !self.eat(&Tok::Star) {
                    if c == BigRational::from_integer(0.into()) && self.peek() == Some(&Tok::RBrack) {
                        continue;
                    }
                    return self.err("expected '*' before weight symbol");
                }
            }
            match self.next() {
                Some(Tok::Ident(s)) if s.starts_with('w') && s.len() > 1 => {
                    let Ok(i) = s[1..].parse::<u32>() else {
                        self.at -= 1;
                        return self.err("bad weight symbol");
                    };
                    if neg {
                        c = -c;
                    }
                    w.add_coord(i, c);
                }
                _ => {
                    self.at -= 1;
                    return self.err("expected weight symbol wN");
                }
            }
        }
        self.expect(Tok::RBrack)?;
        Ok(w)
    }

    fn var(&mut self) -> Result<VarKey> {
        let Some(Tok::Ident(name)) = self.next() else {
            self.at -= 1;
            return self.err("expected variable");
        };
        let Some(family) = Family::from_symbol(&name) else {
            self.at -= 1;
            return self.err(format!("unknown variable family {name:?}"));
        };
        self.expect(Tok::LParen)?;
        let node = self.signed_i64()?;
        self.expect(Tok::Comma)?;
        let shift = self.signed_i64()?;
        self.expect(Tok::RParen)?;
        if node < 0 || node > u32::MAX as i64 {
            return self.err("node out of range");
        }
        Ok(VarKey::new(family, node as u32, shift))
    }

    /// Parses one term; returns (coefficient, monomial).
    fn term(&mut self) -> Result<(BigInt, Monomial)> {
        let mut coeff = BigInt::one();
        let mut mono = Monomial::one();
        loop {
            match self.peek() {
                Some(Tok::Int(_)) => coeff *= self.int()?,
                Some(Tok::LBrack) => {
                    let w = self.weight()?;
                    mono.mul_weight(&w);
                }
                Some(Tok::Ident(_)) => {
                    let k = self.var()?;
                    let e = if self.eat(&Tok::Caret) { self.signed_i64()? } else { 1 };
                    mono.mul_var(k, e);
                }
                _ => return self.err("expected factor"),
            }
            if !self.eat(&Tok::Star) {
                break;
            }
        }
        Ok((coeff, mono))
    }

    fn poly(&mut self) -> Result<Vec<(BigInt, Monomial)>> {
        let mut out = Vec::new();
        let mut neg = self.eat(&Tok::Minus);
        if !neg {
            self.eat(&Tok::Plus);
        }
        loop {
            let (c, m) = self.term()?;
            out.push((if neg { -c } else { c }, m));
            if self.eat(&Tok::Plus) {
                neg = false;
            } else if self.eat(&Tok::Minus) {
                neg = true;
            } else {
                break;
            }
        }
        if !self.done() {
            return self.err("trailing input");
        }
        Ok(out)
    }
}

pub fn parse_weight(s: &str) -> Result<Weight> {
    let mut p = Parser::new(s)?;
    let w = p.weight()?;
    if !p.done() {
        return p.err("trailing input");
    }
    Ok(w)
}

pub fn parse_monomial(s: &str) -> Result<Monomial> {
    let mut p = Parser::new(s)?;
    let (c, m) = p.term()?;
    if !p.done() {
        return p.err("trailing input");
    }
    if !c.is_one() {
        return Err(Error::Parse {
            pos: 0,
            msg: "monomial carries a coefficient".into(),
        });
    }
    Ok(m)
}

pub fn parse_poly<C: Coefficient>(s: &str) -> Result<LPoly<C>> {
    let mut p = Parser::new(s)?;
    let terms = p.poly()?;
    let mut out = LPoly::zero();
    for (c, m) in terms {
        let c = C::from_str_radix(&c.to_string(), 10).map_err(|_| Error::Parse {
            pos: 0,
            msg: format!("coefficient {c} does not fit"),
        })?;
        out.add_term(m, c);
    }
    Ok(out)
}

impl<C: Coefficient> std::str::FromStr for LPoly<C> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_poly(s)
    }
}

impl std::str::FromStr for Monomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_monomial(s)
    }
}

impl std::str::FromStr for Weight {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_weight(s)
    }
}
