//! Recursive-descent parser for the ASCII formula syntax.
//!
//! Quantifiers are spelled `Ex`/`Ax` (optionally `Ex<t` with a simple or
//! parenthesized bound), connectives `~ & | ->`, atoms `t = t` and `t < t`.
//! Numerals abbreviate successor chains. Uppercase `E`, `A`, `S` are
//! reserved, so variables are lowercase identifiers and never collide with
//! them.

use super::{Formula, Term};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormulaParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for FormulaParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at byte {}: {}", self.position, self.message)
    }
}

impl std::error::Error for FormulaParseError {}

// Numerals expand to successor chains, so an unchecked huge literal would
// allocate a node per unit.
const MAX_NUMERAL: u64 = 65_535;
const MAX_DEPTH: u32 = 2_000;

pub fn parse_formula(text: &str) -> Result<Formula, FormulaParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        depth: 0,
    };
    let formula = p.formula()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(formula)
}

/// Like [`parse_formula`], but rejects formulas with free variables.
pub fn parse_closed_formula(text: &str) -> Result<Formula, FormulaParseError> {
    let formula = parse_formula(text)?;
    let free = formula.free_vars();
    if !free.is_empty() {
        let names: Vec<&str> = free.iter().map(|s| s.as_str()).collect();
        return Err(FormulaParseError {
            position: 0,
            message: format!("unbound variables: {}", names.join(", ")),
        });
    }
    Ok(formula)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    depth: u32,
}

impl<'a> Parser<'a> {
    fn error(&self, message: &str) -> FormulaParseError {
        FormulaParseError {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), FormulaParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn enter(&mut self) -> Result<(), FormulaParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            Err(self.error("nesting too deep"))
        } else {
            Ok(())
        }
    }

    fn leave(&mut self) {
        self.depth -= 1;
    }

    // formula := or ('->' formula)?   with '->' right-associative
    fn formula(&mut self) -> Result<Formula, FormulaParseError> {
        self.enter()?;
        let left = self.or_level()?;
        self.skip_ws();
        let result = if self.peek() == Some(b'-') && self.src.get(self.pos + 1) == Some(&b'>') {
            self.pos += 2;
            let right = self.formula()?;
            Ok(left.imp(right))
        } else {
            Ok(left)
        };
        self.leave();
        result
    }

    fn or_level(&mut self) -> Result<Formula, FormulaParseError> {
        let mut acc = self.and_level()?;
        loop {
            self.skip_ws();
            if self.eat(b'|') {
                acc = acc.or(self.and_level()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn and_level(&mut self) -> Result<Formula, FormulaParseError> {
        let mut acc = self.unary()?;
        loop {
            self.skip_ws();
            if self.eat(b'&') {
                acc = acc.and(self.unary()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Formula, FormulaParseError> {
        self.enter()?;
        let result = self.unary_inner();
        self.leave();
        result
    }

    fn unary_inner(&mut self) -> Result<Formula, FormulaParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'~') => {
                self.pos += 1;
                Ok(self.unary()?.not())
            }
            Some(q @ (b'E' | b'A')) => {
                self.pos += 1;
                self.skip_ws();
                let var = self.ident()?;
                let bound = if self.eat(b'<') {
                    Some(self.prim_term()?)
                } else {
                    None
                };
                let body = self.unary()?;
                Ok(match (q, bound) {
                    (b'E', None) => Formula::exists(&var, body),
                    (b'A', None) => Formula::forall(&var, body),
                    (b'E', Some(t)) => Formula::bounded_exists(&var, t, body),
                    (b'A', Some(t)) => Formula::bounded_forall(&var, t, body),
                    _ => unreachable!("q is E or A"),
                })
            }
            Some(b'(') => {
                // '(' opens either a grouped formula or a parenthesized term
                // inside an atom; try the formula reading first and fall back.
                let start = self.pos;
                let start_depth = self.depth;
                let as_formula: Result<Formula, FormulaParseError> = (|| {
                    self.expect(b'(')?;
                    let inner = self.formula()?;
                    self.skip_ws();
                    self.expect(b')')?;
                    Ok(inner)
                })();
                match as_formula {
                    Ok(f) => Ok(f),
                    Err(formula_err) => {
                        // A failed reading bailed out of enter/leave pairs.
                        self.pos = start;
                        self.depth = start_depth;
                        match self.atom() {
                            Ok(f) => Ok(f),
                            // Report whichever reading got further.
                            Err(atom_err) => {
                                if atom_err.position >= formula_err.position {
                                    Err(atom_err)
                                } else {
                                    Err(formula_err)
                                }
                            }
                        }
                    }
                }
            }
            _ => self.atom(),
        }
    }

    // atom := term ('=' | '<') term
    fn atom(&mut self) -> Result<Formula, FormulaParseError> {
        let left = self.term()?;
        self.skip_ws();
        match self.peek() {
            Some(b'=') => {
                self.pos += 1;
                Ok(Formula::Eq(left, self.term()?))
            }
            Some(b'<') => {
                self.pos += 1;
                Ok(Formula::Lt(left, self.term()?))
            }
            _ => Err(self.error("expected '=' or '<' after term")),
        }
    }

    fn term(&mut self) -> Result<Term, FormulaParseError> {
        self.enter()?;
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'+') {
                self.pos += 1;
                acc = acc.add(self.factor()?);
            } else {
                self.leave();
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Term, FormulaParseError> {
        let mut acc = self.prim_term()?;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                acc = acc.mul(self.prim_term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn prim_term(&mut self) -> Result<Term, FormulaParseError> {
        self.enter()?;
        let result = self.prim_term_inner();
        self.leave();
        result
    }

    fn prim_term_inner(&mut self) -> Result<Term, FormulaParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'0'..=b'9') => {
                let start = self.pos;
                while matches!(self.peek(), Some(b'0'..=b'9')) {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
                let value: u64 = text.parse().map_err(|_| FormulaParseError {
                    position: start,
                    message: "numeral too large".to_string(),
                })?;
                if value > MAX_NUMERAL {
                    return Err(FormulaParseError {
                        position: start,
                        message: "numeral too large".to_string(),
                    });
                }
                Ok(Term::numeral(value))
            }
            Some(b'S') => {
                self.pos += 1;
                self.skip_ws();
                self.expect(b'(')?;
                let inner = self.term()?;
                self.skip_ws();
                self.expect(b')')?;
                Ok(Term::Succ(Box::new(inner)))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.term()?;
                self.skip_ws();
                self.expect(b')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_lowercase() => Ok(Term::Var(self.ident()?)),
            _ => Err(self.error("expected a term")),
        }
    }

    fn ident(&mut self) -> Result<String, FormulaParseError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_lowercase() => {}
            _ => return Err(self.error("expected a variable name")),
        }
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_lowercase() || c.is_ascii_digit() || c == b'\'')
        {
            self.pos += 1;
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii identifier")
            .to_string())
    }
}
