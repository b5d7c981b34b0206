//! Text form of polynomials.
//!
//! ```text
//! poly   := '0' | term ('+' term)*
//! term   := factor ('*' factor)*
//! factor := 'a' pow? | 'b' pow? | '1'
//! pow    := '^' uint
//! ```
//!
//! Whitespace is ignored. Terms are summed mod 2, so `a + a` parses to zero.
//! [`render`] writes the normal form: highest degree first, and within a
//! degree the a-exponent descending, as in `a^2*b + a*b^2`.

use thiserror::Error;

use crate::poly::{BiPoly, HomogPoly};
use crate::DEFAULT_DEGREE_CAP;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {position}: expected {expected}")]
    Syntax {
        position: usize,
        expected: &'static str,
    },
    #[error("term at byte {position} has degree {degree}, above the cap {cap}")]
    DegreeCap { position: usize, degree: u64, cap: u32 },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { position, .. } | ParseError::DegreeCap { position, .. } => *position,
        }
    }
}

/// Parse with the default degree cap.
pub fn parse(text: &str) -> Result<BiPoly, ParseError> {
    parse_with_cap(text, DEFAULT_DEGREE_CAP)
}

pub fn parse_with_cap(text: &str, cap: u32) -> Result<BiPoly, ParseError> {
    Parser {
        src: text.as_bytes(),
        pos: 0,
        cap,
    }
    .poly()
}

/// Parse a polynomial that must be a single nonzero homogeneous form.
pub fn parse_homog(text: &str) -> Result<HomogPoly, ParseError> {
    let f = parse(text)?;
    f.as_homogeneous().cloned().ok_or(ParseError::Syntax {
        position: 0,
        expected: "a nonzero homogeneous polynomial",
    })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    cap: u32,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, expected: &'static str) -> ParseError {
        ParseError::Syntax {
            position: self.pos,
            expected,
        }
    }

    fn poly(&mut self) -> Result<BiPoly, ParseError> {
        if self.peek() == Some(b'0') {
            self.pos += 1;
            return match self.peek() {
                None => Ok(BiPoly::zero()),
                Some(_) => Err(self.err("end of input after '0'")),
            };
        }
        let mut out = BiPoly::zero();
        loop {
            let (a_exp, b_exp) = self.term()?;
            out.add_homog(&HomogPoly::monomial(a_exp, b_exp));
            match self.peek() {
                None => return Ok(out),
                Some(b'+') => self.pos += 1,
                Some(_) => return Err(self.err("'+', '*' or end of input")),
            }
        }
    }

    fn term(&mut self) -> Result<(u32, u32), ParseError> {
        let start = {
            self.skip_ws();
            self.pos
        };
        let (mut a_exp, mut b_exp) = (0u64, 0u64);
        loop {
            match self.peek() {
                Some(b'a') => {
                    self.pos += 1;
                    a_exp += self.pow()?;
                }
                Some(b'b') => {
                    self.pos += 1;
                    b_exp += self.pow()?;
                }
                Some(b'1') => self.pos += 1,
                _ => return Err(self.err("'a', 'b' or '1'")),
            }
            let degree = a_exp + b_exp;
            if degree > self.cap as u64 {
                return Err(ParseError::DegreeCap {
                    position: start,
                    degree,
                    cap: self.cap,
                });
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((a_exp as u32, b_exp as u32));
            }
        }
    }

    fn pow(&mut self) -> Result<u64, ParseError> {
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        self.skip_ws();
        let digits_start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(self.err("an unsigned exponent after '^'"));
        }
        std::str::from_utf8(&self.src[digits_start..self.pos])
            .ok()
            .and_then(|s| s.parse::<u64>().ok())
            .filter(|&e| e <= u32::MAX as u64)
            .ok_or(ParseError::DegreeCap {
                position: digits_start,
                degree: u64::MAX,
                cap: self.cap,
            })
    }
}

fn monomial_text(a_exp: u32, b_exp: u32) -> String {
    let factor = |name: char, exp: u32| match exp {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{exp}")),
    };
    let parts: Vec<String> = [factor('a', a_exp), factor('b', b_exp)]
        .into_iter()
        .flatten()
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

fn render_terms<'a>(out: &mut String, forms: impl Iterator<Item = &'a HomogPoly>) {
    for f in forms {
        let mut terms: Vec<(u32, u32)> = f.monomials().collect();
        terms.reverse();
        for (a_exp, b_exp) in terms {
            if !out.is_empty() {
                out.push_str(" + ");
            }
            out.push_str(&monomial_text(a_exp, b_exp));
        }
    }
}

pub fn render(f: &BiPoly) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    render_terms(&mut out, f.components().rev());
    out
}

pub fn render_homog(f: &HomogPoly) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    render_terms(&mut out, std::iter::once(f));
    out
}
