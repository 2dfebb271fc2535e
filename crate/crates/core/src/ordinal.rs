//! Ordinal notations below epsilon_0 in Cantor normal form.
//!
//! A value is a sum `w^b1*c1 + ... + w^bn*cn` with the exponents `b1 > ... > bn`
//! themselves ordinals of the same shape and every coefficient a positive
//! integer. Zero is the empty sum. Structural equality coincides with ordinal
//! equality, and the derived lexicographic comparison on (exponent, coefficient)
//! pairs is the ordinal order.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// One summand `w^exp * coeff`.
// exp is an arbitrary Ordinal; coeff is >= 1 everywhere a Term exists.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Term {
    pub(crate) exp: Ordinal,
    pub(crate) coeff: BigUint,
}

/// An ordinal below epsilon_0 in Cantor normal form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Ordinal {
    // Strictly decreasing exponents, recursively normal; empty list is zero.
    terms: Vec<Term>,
}

/// Classification used by fundamental sequences and walk stepping.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum OrdinalKind {
    Zero,
    Successor,
    Limit,
}

/// A structural violation of Cantor normal form.
#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum NormalFormError {
    #[error("term {index} has coefficient 0")]
    ZeroCoefficient { index: usize },
    #[error("term {index} does not descend: exponents must strictly decrease")]
    ExponentOrder { index: usize },
}

/// Why a piece of CNF text was rejected.
#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum ParseErrorKind {
    #[error("syntax: {0}")]
    Syntax(String),
    #[error("not in normal form: {0}")]
    NotNormal(#[from] NormalFormError),
}

/// Parse failure with the byte offset where it was detected.
#[derive(Clone, PartialEq, Eq, Debug, Error)]
#[error("{kind} at byte {position}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Ordinal::from_u64(1)
    }

    pub fn omega() -> Self {
        Ordinal {
            terms: vec![Term { exp: Ordinal::one(), coeff: BigUint::one() }],
        }
    }

    pub fn from_u64(n: u64) -> Self {
        Ordinal::from_biguint(BigUint::from(n))
    }

    pub fn from_biguint(n: BigUint) -> Self {
        if n.is_zero() {
            Ordinal::zero()
        } else {
            Ordinal { terms: vec![Term { exp: Ordinal::zero(), coeff: n }] }
        }
    }

    /// Builds an ordinal from (exponent, coefficient) pairs, leading term first,
    /// rejecting anything that is not already in normal form.
    pub fn from_terms(pairs: Vec<(Ordinal, BigUint)>) -> Result<Self, NormalFormError> {
        let terms: Vec<Term> =
            pairs.into_iter().map(|(exp, coeff)| Term { exp, coeff }).collect();
        let o = Ordinal { terms };
        o.validate()?;
        Ok(o)
    }

    // Internal constructor for terms already known to be normal.
    pub(crate) fn from_term_vec(terms: Vec<Term>) -> Self {
        let o = Ordinal { terms };
        debug_assert!(o.validate().is_ok());
        o
    }

    pub(crate) fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Re-checks the normal-form invariants. Always passes for values built by
    /// this module's constructors; exposed so tests can audit every operation.
    pub fn validate(&self) -> Result<(), NormalFormError> {
        for (index, t) in self.terms.iter().enumerate() {
            if t.coeff.is_zero() {
                return Err(NormalFormError::ZeroCoefficient { index });
            }
            t.exp.validate()?;
            if index > 0 && self.terms[index - 1].exp <= t.exp {
                return Err(NormalFormError::ExponentOrder { index });
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for 0, 1, 2, ... (at most one term, with exponent 0).
    pub fn is_finite(&self) -> bool {
        match self.terms.as_slice() {
            [] => true,
            [t] => t.exp.is_zero(),
            _ => false,
        }
    }

    /// The value as a plain natural number, when finite and small enough.
    pub fn as_u64(&self) -> Option<u64> {
        if !self.is_finite() {
            return None;
        }
        if self.is_zero() {
            return Some(0);
        }
        u64::try_from(&self.terms[0].coeff).ok()
    }

    pub fn leading_exponent(&self) -> Option<&Ordinal> {
        self.terms.first().map(|t| &t.exp)
    }

    /// Coefficient of `w^exp` in the normal form, zero when absent.
    pub fn coeff_of(&self, exp: &Ordinal) -> BigUint {
        self.terms
            .iter()
            .find(|t| t.exp == *exp)
            .map(|t| t.coeff.clone())
            .unwrap_or_else(BigUint::zero)
    }

    pub fn kind(&self) -> OrdinalKind {
        match self.terms.last() {
            None => OrdinalKind::Zero,
            Some(t) if t.exp.is_zero() => OrdinalKind::Successor,
            Some(_) => OrdinalKind::Limit,
        }
    }

    /// For a successor, the ordinal one below it.
    pub fn predecessor(&self) -> Option<Ordinal> {
        if self.kind() != OrdinalKind::Successor {
            return None;
        }
        let mut terms = self.terms.clone();
        let last = terms.last_mut().expect("successor has a last term");
        last.coeff -= 1u32;
        if last.coeff.is_zero() {
            terms.pop();
        }
        Some(Ordinal::from_term_vec(terms))
    }

    /// Ordinal sum. Trailing terms of `self` below the leading exponent of `b`
    /// are absorbed; equal leading exponents merge by adding coefficients.
    // By-reference on purpose: operands are bignum-backed and noncommutative,
    // so the consuming operator trait is a poor fit.
    #[allow(clippy::should_implement_trait)]
    pub fn add(&self, b: &Ordinal) -> Ordinal {
        let Some(lead) = b.terms.first() else {
            return self.clone();
        };
        let keep = self.terms.iter().take_while(|t| t.exp > lead.exp);
        let mut terms: Vec<Term> = keep.cloned().collect();
        let merged = self.terms.get(terms.len()).filter(|t| t.exp == lead.exp);
        match merged {
            Some(t) => {
                terms.push(Term { exp: lead.exp.clone(), coeff: &t.coeff + &lead.coeff });
                terms.extend(b.terms[1..].iter().cloned());
            }
            None => terms.extend(b.terms.iter().cloned()),
        }
        Ordinal::from_term_vec(terms)
    }

    /// Ordinal product, distributing over the right argument: for `self` with
    /// leading term `w^b1*c1` and `g > 0`, `self * w^g*d = w^(b1+g)*d`, while
    /// the finite part d of `b` contributes `w^b1*(c1*d)` followed by the rest
    /// of `self`.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(&self, b: &Ordinal) -> Ordinal {
        let Some(lead) = self.terms.first() else {
            return Ordinal::zero();
        };
        let mut acc = Ordinal::zero();
        for t in &b.terms {
            let piece = if t.exp.is_zero() {
                let mut terms = self.terms.clone();
                terms[0].coeff = &lead.coeff * &t.coeff;
                Ordinal::from_term_vec(terms)
            } else {
                Ordinal::from_term_vec(vec![Term {
                    exp: lead.exp.add(&t.exp),
                    coeff: t.coeff.clone(),
                }])
            };
            acc = acc.add(&piece);
        }
        acc
    }

    /// `w^exponent`; in particular `omega_pow(0) = 1`.
    pub fn omega_pow(exponent: &Ordinal) -> Ordinal {
        Ordinal::from_term_vec(vec![Term { exp: exponent.clone(), coeff: BigUint::one() }])
    }

    /// The height-k tower: `omega_tower(1) = w`, `omega_tower(k+1) = w^omega_tower(k)`.
    ///
    /// Panics when `k` is 0; the tower starts at height 1.
    pub fn omega_tower(k: u32) -> Ordinal {
        assert!(k >= 1, "tower height starts at 1");
        let mut t = Ordinal::omega();
        for _ in 1..k {
            t = Ordinal::omega_pow(&t);
        }
        t
    }

    /// True when every top-level exponent is finite, i.e. the value is below w^w.
    pub fn below_omega_omega(&self) -> bool {
        self.terms.iter().all(|t| t.exp.is_finite())
    }

    /// True when the value is below the height-k tower.
    ///
    /// Panics when `k` is 0.
    pub fn below_omega_tower(&self, k: u32) -> bool {
        *self < Ordinal::omega_tower(k)
    }

    /// Finite size measure: the largest integer appearing anywhere (as a
    /// coefficient or as a finite exponent's value) plus the total number of
    /// terms at every level. Each norm-bounded set of notations is finite.
    pub fn norm(&self) -> BigUint {
        self.max_integer() + BigUint::from(self.total_terms())
    }

    fn max_integer(&self) -> BigUint {
        let mut best = BigUint::zero();
        for t in &self.terms {
            if t.coeff > best {
                best = t.coeff.clone();
            }
            if t.exp.is_finite() {
                let v = t.exp.coeff_of(&Ordinal::zero());
                if v > best {
                    best = v;
                }
            }
            let inner = t.exp.max_integer();
            if inner > best {
                best = inner;
            }
        }
        best
    }

    pub(crate) fn total_terms(&self) -> u64 {
        self.terms.iter().map(|t| 1 + t.exp.total_terms()).sum()
    }

    /// Every notation strictly below `bound` whose norm is at most `max_norm`,
    /// in ascending order.
    pub fn enumerate_below(bound: &Ordinal, max_norm: u64) -> Vec<Ordinal> {
        let limit = BigUint::from(max_norm);
        let mut out = gen_norm_bounded(max_norm as usize, max_norm);
        out.retain(|x| x.norm() <= limit && x < bound);
        out.sort();
        out
    }

    pub fn parse_cnf(text: &str) -> Result<Self, ParseError> {
        let mut p = Parser { s: text.as_bytes(), pos: 0 };
        p.skip_ws();
        let o = p.parse_ordinal()?;
        p.skip_ws();
        if p.pos < p.s.len() {
            return Err(p.syntax("unexpected trailing input"));
        }
        Ok(o)
    }

    /// Canonical text form; `parse_cnf` inverts it exactly.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        // Lexicographic on (exponent, coefficient) pairs; a proper prefix is
        // smaller. Valid because exponents strictly decrease within each side.
        for (a, b) in self.terms.iter().zip(other.terms.iter()) {
            match a.exp.cmp(&b.exp).then_with(|| a.coeff.cmp(&b.coeff)) {
                Ordering::Equal => {}
                non_eq => return non_eq,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::from_u64(n)
    }
}

impl FromStr for Ordinal {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ordinal::parse_cnf(s)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if t.exp.is_zero() {
                write!(f, "{}", t.coeff)?;
                continue;
            }
            if t.exp == Ordinal::one() {
                f.write_str("w")?;
            } else if t.exp == Ordinal::omega() {
                f.write_str("w^w")?;
            } else if t.exp.is_finite() {
                write!(f, "w^{}", t.exp.terms[0].coeff)?;
            } else {
                write!(f, "w^({})", t.exp)?;
            }
            if !t.coeff.is_one() {
                write!(f, "*{}", t.coeff)?;
            }
        }
        Ok(())
    }
}

impl Serialize for Ordinal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Ordinal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

// All notations with at most `budget` terms in total and coefficients up to
// `cmax`, each produced exactly once as leading term plus smaller-headed tail.
fn gen_norm_bounded(budget: usize, cmax: u64) -> Vec<Ordinal> {
    let mut out = vec![Ordinal::zero()];
    if budget == 0 || cmax == 0 {
        return out;
    }
    for e in gen_norm_bounded(budget - 1, cmax) {
        let cost = 1 + e.total_terms() as usize;
        if cost > budget {
            continue;
        }
        for tail in gen_norm_bounded(budget - cost, cmax) {
            let fits_below = match tail.leading_exponent() {
                None => true,
                Some(lead) => lead < &e,
            };
            if !fits_below {
                continue;
            }
            for c in 1..=cmax {
                let mut terms = vec![Term { exp: e.clone(), coeff: BigUint::from(c) }];
                terms.extend(tail.terms().iter().cloned());
                out.push(Ordinal::from_term_vec(terms));
            }
        }
    }
    out
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek() == Some(b' ') {
            self.pos += 1;
        }
    }

    fn syntax(&self, msg: &str) -> ParseError {
        ParseError { position: self.pos, kind: ParseErrorKind::Syntax(msg.to_string()) }
    }

    fn not_normal(&self, at: usize, err: NormalFormError) -> ParseError {
        ParseError { position: at, kind: ParseErrorKind::NotNormal(err) }
    }

    fn parse_ordinal(&mut self) -> Result<Ordinal, ParseError> {
        let mut terms: Vec<Term> = Vec::new();
        loop {
            self.skip_ws();
            let start = self.pos;
            let index = terms.len();
            let spelled_as_number = self.peek().is_some_and(|c| c.is_ascii_digit());
            let term = self.parse_term()?;
            if term.coeff.is_zero() {
                // A bare "0" is the zero ordinal only when it stands alone.
                if index == 0 && spelled_as_number && !self.next_is_plus() {
                    return Ok(Ordinal::zero());
                }
                return Err(self.not_normal(start, NormalFormError::ZeroCoefficient { index }));
            }
            if let Some(prev) = terms.last() {
                if prev.exp <= term.exp {
                    return Err(self.not_normal(start, NormalFormError::ExponentOrder { index }));
                }
            }
            terms.push(term);
            if !self.next_is_plus() {
                return Ok(Ordinal::from_term_vec(terms));
            }
            self.skip_ws();
            self.pos += 1;
        }
    }

    fn next_is_plus(&self) -> bool {
        let mut i = self.pos;
        while self.s.get(i) == Some(&b' ') {
            i += 1;
        }
        self.s.get(i) == Some(&b'+')
    }

    fn parse_term(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.parse_nat()?;
                Ok(Term { exp: Ordinal::zero(), coeff: n })
            }
            Some(b'w') => {
                self.pos += 1;
                let mut exp = Ordinal::one();
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    exp = self.parse_power()?;
                }
                let mut coeff = BigUint::one();
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    coeff = self.parse_nat()?;
                }
                Ok(Term { exp, coeff })
            }
            _ => Err(self.syntax("expected a term: a natural number or \"w\"")),
        }
    }

    fn parse_power(&mut self) -> Result<Ordinal, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.parse_nat()?;
                Ok(Ordinal::from_biguint(n))
            }
            Some(b'w') => {
                self.pos += 1;
                Ok(Ordinal::omega())
            }
            Some(b'(') => {
                self.pos += 1;
                self.skip_ws();
                let o = self.parse_ordinal()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.syntax("expected \")\""));
                }
                self.pos += 1;
                Ok(o)
            }
            _ => Err(self.syntax("expected an exponent: a natural number, \"w\", or \"(\"")),
        }
    }

    fn parse_nat(&mut self) -> Result<BigUint, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits = &self.s[start..self.pos];
        if digits.is_empty() {
            return Err(self.syntax("expected digits"));
        }
        if digits.len() > 1 && digits[0] == b'0' {
            return Err(ParseError {
                position: start,
                kind: ParseErrorKind::Syntax("leading zero in number".to_string()),
            });
        }
        let text = std::str::from_utf8(digits).expect("digits are ASCII");
        Ok(text.parse().expect("digit string parses"))
    }
}
