//! ASCII notation: `w^(w*2)+w^2*3+w+7`.
//!
//! ```text
//! expr := term ('+' term)*
//! term := 'w' ('^' atom)? ('*' nat)? | nat
//! atom := nat | 'w' | '(' expr ')'
//! ```
//!
//! Sums are ordinal sums, so `1+w` parses to `w`. Formatting always emits the
//! normal form; exponents are parenthesized unless they are a natural or `w`.

use super::Ordinal;
use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

const MAX_NESTING: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

pub fn parse_ordinal(input: &str) -> Result<Ordinal, ParseError> {
    let mut p = Parser {
        chars: input.chars().collect(),
        pos: 0,
        depth: 0,
    };
    p.skip_ws();
    if p.peek().is_none() {
        return Err(p.error("empty input"));
    }
    let value = p.expr()?;
    p.skip_ws();
    if p.peek().is_some() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    depth: usize,
}

impl Parser {
    fn error(&self, message: &str) -> ParseError {
        ParseError {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Ordinal, ParseError> {
        let mut acc = self.term()?;
        while self.eat('+') {
            let t = self.term()?;
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    fn is_omega(c: char) -> bool {
        c == 'w' || c == 'ω'
    }

    fn term(&mut self) -> Result<Ordinal, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if Self::is_omega(c) => {
                self.pos += 1;
                let exponent = if self.eat('^') {
                    self.atom()?
                } else {
                    Ordinal::one()
                };
                let coefficient = if self.eat('*') {
                    self.skip_ws();
                    self.nat()?
                } else {
                    BigUint::one()
                };
                Ok(Ordinal::monomial(exponent, coefficient))
            }
            Some(c) if c.is_ascii_digit() => Ok(Ordinal::nat(self.nat()?)),
            Some(_) => Err(self.error("expected 'w' or a natural number")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn atom(&mut self) -> Result<Ordinal, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(Ordinal::nat(self.nat()?)),
            Some(c) if Self::is_omega(c) => {
                self.pos += 1;
                Ok(Ordinal::omega())
            }
            Some('(') => {
                self.pos += 1;
                self.depth += 1;
                if self.depth > MAX_NESTING {
                    return Err(self.error("exponent nesting too deep"));
                }
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                self.depth -= 1;
                Ok(e)
            }
            Some(_) => Err(self.error("expected exponent: natural, 'w' or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn nat(&mut self) -> Result<BigUint, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a natural number"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits
            .parse::<BigUint>()
            .map_err(|_| ParseError {
                position: start,
                message: "invalid natural number".into(),
            })
    }
}

pub fn format_ordinal(x: &Ordinal) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let parts: Vec<String> = x
        .terms()
        .iter()
        .map(|t| {
            if t.exponent.is_zero() {
                return t.coefficient.to_string();
            }
            let mut s = String::from("w");
            if t.exponent != Ordinal::one() {
                s.push('^');
                s.push_str(&format_exponent(&t.exponent));
            }
            if !t.coefficient.is_one() {
                s.push('*');
                s.push_str(&t.coefficient.to_string());
            }
            s
        })
        .collect();
    parts.join("+")
}

fn format_exponent(e: &Ordinal) -> String {
    if e.is_finite() || *e == Ordinal::omega() {
        format_ordinal(e)
    } else {
        format!("({})", format_ordinal(e))
    }
}
