//! Text forms of polynomials.
//!
//! Two forms are accepted on input:
//! - human: `x^6-x^5+x^3+1`, optional spaces, integer coefficients reduced
//!   mod 3 (`2x^2`, `2*x^2`), variable `x` (or `t`/`θ`);
//! - list: `1,0,0,1,0,2,1`, ascending-degree digits in `{0,1,2}`.
//!
//! Output uses the human form with `-` for the residue 2.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf3::Gf3;
use crate::poly::Poly;

/// Parses either text form.
pub fn parse_poly(text: &str) -> Result<Poly> {
    if text.contains(',') {
        parse_list(text)
    } else {
        parse_human(text)
    }
}

/// Parses the comma-separated ascending-degree list form.
pub fn parse_list(text: &str) -> Result<Poly> {
    let mut coeffs = Vec::new();
    let mut pos = 0;
    for field in text.split(',') {
        let trimmed = field.trim();
        let offset = pos + field.find(trimmed).unwrap_or(0);
        match trimmed {
            "0" => coeffs.push(Gf3::ZERO),
            "1" => coeffs.push(Gf3::ONE),
            "2" => coeffs.push(Gf3::TWO),
            "" => {
                return Err(Error::Parse {
                    pos: offset,
                    msg: "empty list entry".into(),
                })
            }
            other => {
                return Err(Error::Parse {
                    pos: offset,
                    msg: format!("expected a digit in {{0,1,2}}, found {other:?}"),
                })
            }
        }
        pos += field.len() + 1;
    }
    Ok(Poly::new(coeffs))
}

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    at: usize,
    src: &'a str,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.at < self.chars.len() && self.chars[self.at].1.is_whitespace() {
            self.at += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.at).map(|c| c.1)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map_or(self.src.len(), |c| c.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn number(&mut self) -> Option<u64> {
        self.skip_ws();
        let start = self.at;
        let mut v: u64 = 0;
        while let Some(&(_, c)) = self.chars.get(self.at) {
            match c.to_digit(10) {
                Some(d) => {
                    v = v.saturating_mul(10).saturating_add(d as u64);
                    self.at += 1;
                }
                None => break,
            }
        }
        (self.at > start).then_some(v)
    }
}

fn is_var(c: char) -> bool {
    matches!(c, 'x' | 'X' | 't' | 'θ')
}

/// Parses the human form, e.g. `x^6 - x^5 + x^3 + 1`.
pub fn parse_human(text: &str) -> Result<Poly> {
    let mut cur = Cursor {
        chars: text.char_indices().collect(),
        at: 0,
        src: text,
    };
    if cur.peek().is_none() {
        return cur.err("empty polynomial");
    }
    let mut terms: Vec<(usize, i64)> = Vec::new();
    let mut first = true;
    while cur.peek().is_some() {
        let sign = match cur.peek() {
            Some('+') => {
                cur.at += 1;
                1
            }
            Some('-') => {
                cur.at += 1;
                -1
            }
            _ if first => 1,
            _ => return cur.err("expected '+' or '-'"),
        };
        first = false;
        let coef = cur.number();
        if coef.is_some() && cur.peek() == Some('*') {
            cur.at += 1;
            if !cur.peek().is_some_and(is_var) {
                return cur.err("expected variable after '*'");
            }
        }
        let degree = if cur.peek().is_some_and(is_var) {
            cur.at += 1;
            if cur.peek() == Some('^') {
                cur.at += 1;
                match cur.number() {
                    Some(d) if d <= 1 << 20 => d as usize,
                    Some(_) => return cur.err("exponent too large"),
                    None => return cur.err("expected exponent after '^'"),
                }
            } else {
                1
            }
        } else if coef.is_some() {
            0
        } else {
            return cur.err("expected a coefficient or the variable");
        };
        let c = (coef.unwrap_or(1) % 3) as i64;
        terms.push((degree, sign * c));
    }
    Ok(Poly::from_terms(&terms))
}

/// Ascending-degree list form, e.g. `1,0,0,1,0,2,1`; the zero polynomial is `0`.
pub fn format_list(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    p.coeffs()
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = *c == Gf3::TWO;
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (false, true) => f.write_str("-")?,
                (false, false) => f.write_str("+")?,
                (true, false) => {}
            }
            first = false;
            match d {
                0 => f.write_str("1")?,
                1 => f.write_str("x")?,
                _ => write!(f, "x^{d}")?,
            }
        }
        Ok(())
    }
}
