//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' INTEGER)?
//! atom   := INTEGER | IDENT | '(' expr ')'
//! ```
//!
//! Multiplication is always explicit, so `xy` is the single identifier `xy`.
//! Positions in errors are 1-based character columns.

use super::poly::{Poly, RingRef};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::iter::Enumerate<std::str::Chars<'a>>>,
}

impl Lexer<'_> {
    fn tokens(source: &str) -> Result<Vec<(Tok, usize)>> {
        let mut lx = Lexer {
            chars: source.chars().enumerate().peekable(),
        };
        let mut out = Vec::new();
        loop {
            let (tok, pos) = lx.next_token()?;
            let end = tok == Tok::End;
            out.push((tok, pos));
            if end {
                return Ok(out);
            }
        }
    }

    fn next_token(&mut self) -> Result<(Tok, usize)> {
        while matches!(self.chars.peek(), Some((_, c)) if c.is_whitespace()) {
            self.chars.next();
        }
        let Some((i, c)) = self.chars.next() else {
            return Ok((Tok::End, usize::MAX));
        };
        let pos = i + 1;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            c if c.is_ascii_digit() => {
                let mut s = c.to_string();
                while let Some(&(_, d)) = self.chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    s.push(d);
                    self.chars.next();
                }
                Tok::Int(s)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = c.to_string();
                while let Some(&(_, d)) = self.chars.peek() {
                    if !(d.is_ascii_alphanumeric() || d == '_') {
                        break;
                    }
                    s.push(d);
                    self.chars.next();
                }
                Tok::Ident(s)
            }
            other => {
                return Err(Error::Syntax {
                    pos,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        };
        Ok((tok, pos))
    }
}

struct Parser<'r> {
    ring: &'r RingRef,
    tokens: Vec<(Tok, usize)>,
    at: usize,
    end_pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.tokens[self.at].0
    }

    fn pos(&self) -> usize {
        match self.tokens[self.at].1 {
            usize::MAX => self.end_pos,
            p => p,
        }
    }

    fn bump(&mut self) -> Tok {
        let t = self.tokens[self.at].0.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?)?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = acc.mul(&self.unary()?)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.bump() {
            Tok::Int(digits) => {
                let e: u64 = digits.parse().unwrap_or(u64::MAX);
                base.pow(e)
            }
            Tok::Minus => Err(Error::NegativeExponent { pos }),
            _ => Err(Error::Syntax {
                pos,
                msg: "expected a nonnegative integer exponent".into(),
            }),
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(digits) => {
                let k = self.ring.field();
                let c = digits.bytes().fold(0u32, |acc, d| {
                    k.reduce_u64(acc as u64 * 10 + (d - b'0') as u64)
                });
                Ok(Poly::constant(self.ring, c as u64))
            }
            Tok::Ident(name) => match self.ring.var_index(&name) {
                Some(i) => Ok(Poly::var(self.ring, i)),
                None => Err(Error::UnknownIdentifier { name, pos }),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                if self.bump() != Tok::RParen {
                    return Err(Error::Syntax {
                        pos: self.tokens[self.at.saturating_sub(1)].1.min(self.end_pos),
                        msg: "expected `)`".into(),
                    });
                }
                Ok(inner)
            }
            Tok::End => Err(Error::Syntax {
                pos: self.end_pos,
                msg: "unexpected end of input".into(),
            }),
            other => Err(Error::Syntax {
                pos,
                msg: format!("unexpected {}", describe(&other)),
            }),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(s) => format!("number `{s}`"),
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::End => "end of input".into(),
    }
}

/// Parses `source` into a canonical polynomial of `ring`.
pub fn parse_poly(source: &str, ring: &RingRef) -> Result<Poly> {
    let tokens = Lexer::tokens(source)?;
    let mut parser = Parser {
        ring,
        tokens,
        at: 0,
        end_pos: source.chars().count() + 1,
    };
    let out = parser.expr()?;
    if *parser.peek() != Tok::End {
        let t = parser.peek().clone();
        return parser.syntax(format!("expected operator, found {}", describe(&t)));
    }
    Ok(out)
}
