//! Recursive-descent parser for the expression grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-'? atom ('^' signed_int)?
//! atom   := rational_literal | identifier | '(' expr ')'
//! ```
//!
//! Literals are integers or finite decimals (`0.25` is `1/4`). A unary minus
//! binds looser than `^`, so `-x^2` is `-(x^2)`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

use super::{Chart, Expr, Rational};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' | '.' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                out.push((Tok::Num(parse_decimal(&src[start..i], start)?), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(src[start..i].to_string()), start));
                continue;
            }
            other => {
                return Err(Error::Syntax {
                    pos: start,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((tok, start));
        i += 1;
    }
    Ok(out)
}

fn parse_decimal(text: &str, pos: usize) -> Result<Rational> {
    let bad = || Error::Syntax {
        pos,
        msg: format!("malformed number `{text}`"),
    };
    let (int_part, frac_part) = match text.split_once('.') {
        Some((a, b)) => (a, b),
        None => (text, ""),
    };
    if (int_part.is_empty() && frac_part.is_empty()) || frac_part.contains('.') {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let n: BigInt = digits.parse().map_err(|_| bad())?;
    let scale = num_traits::pow(BigInt::from(10), frac_part.len());
    Ok(Rational::new(n, scale))
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    chart: &'a Chart,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc + self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc * self.factor()?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let at = self.offset();
                    if let Some(Tok::Num(n)) = self.peek() {
                        if n.is_zero() {
                            return Err(Error::Syntax {
                                pos: at,
                                msg: "division by the literal zero".into(),
                            });
                        }
                    }
                    let rhs = self.factor()?;
                    acc = acc.checked_div(&rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let negate = if self.peek() == Some(&Tok::Minus) {
            self.bump();
            true
        } else {
            false
        };
        let base = self.atom()?;
        let value = if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let exp = self.signed_int()?;
            base.pow(exp)?
        } else {
            base
        };
        Ok(if negate { -value } else { value })
    }

    fn signed_int(&mut self) -> Result<i64> {
        let at = self.offset();
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.bump();
            true
        } else {
            false
        };
        match self.bump() {
            Some(Tok::Num(n)) if n.is_integer() => {
                let v: i64 = n.to_integer().try_into().map_err(|_| Error::Syntax {
                    pos: at,
                    msg: "exponent out of range".into(),
                })?;
                Ok(if neg { -v } else { v })
            }
            _ => Err(Error::Syntax {
                pos: at,
                msg: "expected an integer exponent".into(),
            }),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Num(n)) => Ok(Expr::constant(n)),
            Some(Tok::Ident(name)) => match self.chart.index_of(&name) {
                Some(i) => Ok(Expr::var(i)),
                None => Err(Error::UnknownIdentifier { name, pos: at }),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(Error::Syntax {
                        pos: self.toks.get(self.pos - 1).map(|(_, p)| *p).unwrap_or(self.end),
                        msg: "expected `)`".into(),
                    }),
                }
            }
            Some(t) => Err(Error::Syntax {
                pos: at,
                msg: format!("unexpected token {t:?}"),
            }),
            None => Err(Error::Syntax {
                pos: at,
                msg: "unexpected end of input".into(),
            }),
        }
    }
}

/// Parses `source` into a canonical expression over `chart`.
pub fn parse(source: &str, chart: &Chart) -> Result<Expr> {
    let toks = tokenize(source)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: source.len(),
        chart,
    };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(Error::Syntax {
            pos: p.offset(),
            msg: "trailing input".into(),
        });
    }
    Ok(e)
}

impl Expr {
    /// See [`parse`].
    pub fn parse(source: &str, chart: &Chart) -> Result<Expr> {
        parse(source, chart)
    }
}
