//! Dickson's lemma over tuples of naturals: bad-sequence detection, minimal
//! bases of up-closed sets, and an ordinal rank below w^k that strictly
//! shrinks every time a bad sequence grows.
//!
//! The rank of a state is the lexicographic order type of what is still
//! outside the up-closure of the elements seen so far. Appending a fresh
//! element removes a nonempty upward cone from that set, so the order type
//! must drop; the sequence of ranks is a descent trace below w^w.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ordinal::{Ordinal, Term};

/// A tuple of exponents, one per variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u64>);

#[derive(Clone, Copy, PartialEq, Eq, Debug, Error)]
pub enum DicksonError {
    #[error("dimension mismatch")]
    DimensionMismatch,
    #[error("not an antichain: element {i} divides element {j}")]
    NotAntichain { i: usize, j: usize },
    #[error("not a bad sequence: element {i} divides element {j}")]
    NotBad { i: usize, j: usize },
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
#[error("bad monomial text: {0}")]
pub struct MonomialParseError(String);

impl Monomial {
    pub fn new(exponents: Vec<u64>) -> Result<Self, DicksonError> {
        if exponents.is_empty() {
            return Err(DicksonError::DimensionMismatch);
        }
        Ok(Monomial(exponents))
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u64] {
        &self.0
    }

    fn first(&self) -> u64 {
        self.0[0]
    }

    // The tuple without its first coordinate; only meaningful for k >= 2.
    fn tail(&self) -> Monomial {
        Monomial(self.0[1..].to_vec())
    }
}

/// True iff `u` divides `v`: every coordinate of `u` is at most the matching
/// coordinate of `v`.
pub fn product_leq(u: &Monomial, v: &Monomial) -> Result<bool, DicksonError> {
    if u.dimension() != v.dimension() {
        return Err(DicksonError::DimensionMismatch);
    }
    Ok(u.0.iter().zip(&v.0).all(|(a, b)| a <= b))
}

/// The componentwise-minimal elements of the input's up-closure: an antichain
/// generating the same up-closed set, in lexicographic order, duplicates gone.
pub fn minimal_basis(vectors: &[Monomial]) -> Result<Vec<Monomial>, DicksonError> {
    if let Some(first) = vectors.first() {
        if vectors.iter().any(|v| v.dimension() != first.dimension()) {
            return Err(DicksonError::DimensionMismatch);
        }
    }
    let mut kept: Vec<Monomial> = Vec::new();
    for v in vectors {
        if kept.contains(v) {
            continue;
        }
        let dominated = vectors
            .iter()
            .any(|u| u != v && product_leq(u, v).expect("dimensions checked"));
        if !dominated {
            kept.push(v.clone());
        }
    }
    kept.sort_by(|a, b| a.0.cmp(&b.0));
    kept.dedup();
    Ok(kept)
}

/// Rank of everything in dimension k outside the up-closure of `minimal`,
/// an ordinal that shrinks strictly whenever the up-closure grows.
///
/// Computed by recursion on the first coordinate. The residual's sections
/// there shrink as the coordinate grows and freeze at X0, the largest first
/// coordinate in `minimal`; the frozen section repeats forever and is worth
/// its own rank times w, while each section before X0 is worth only its
/// surplus over the frozen one (a crescent, see below). Contributions are
/// combined with the commutative coefficient-wise sum rather than ordinary
/// ordinal addition: a plain left-to-right sum lets a later limit swallow an
/// earlier section's finite surplus, and a rank that ignores part of the
/// state cannot decrease every time. Base dimension: a finite segment
/// length, or w when unconstrained.
pub fn residual_order_type(minimal: &[Monomial], k: usize) -> Result<Ordinal, DicksonError> {
    if k == 0 || minimal.iter().any(|m| m.dimension() != k) {
        return Err(DicksonError::DimensionMismatch);
    }
    for i in 0..minimal.len() {
        for j in 0..minimal.len() {
            if i != j && product_leq(&minimal[i], &minimal[j]).expect("dimension checked") {
                return Err(DicksonError::NotAntichain { i, j });
            }
        }
    }
    let origin = Monomial(vec![0; k]);
    Ok(crescent(&[origin], minimal, k))
}

// Coefficient-wise ordinal sum: merge the two normal forms, adding the
// coefficients of equal exponents. Commutative and strictly monotone in both
// arguments, which is what makes the rank sensitive to every section.
fn nat_add(a: &Ordinal, b: &Ordinal) -> Ordinal {
    let mut merged: Vec<Term> = Vec::with_capacity(a.terms().len() + b.terms().len());
    let (mut i, mut j) = (0, 0);
    let (ta, tb) = (a.terms(), b.terms());
    while i < ta.len() || j < tb.len() {
        if j == tb.len() || (i < ta.len() && ta[i].exp > tb[j].exp) {
            merged.push(ta[i].clone());
            i += 1;
        } else if i == ta.len() || tb[j].exp > ta[i].exp {
            merged.push(tb[j].clone());
            j += 1;
        } else {
            merged.push(Term {
                exp: ta[i].exp.clone(),
                coeff: ta[i].coeff.clone() + tb[j].coeff.clone(),
            });
            i += 1;
            j += 1;
        }
    }
    Ordinal::from_term_vec(merged)
}

fn componentwise_max(u: &Monomial, v: &Monomial) -> Monomial {
    Monomial(u.0.iter().zip(&v.0).map(|(a, b)| *a.max(b)).collect())
}

// Basis of the tails of `basis` elements whose first coordinate is <= x:
// the section of the up-closure at first coordinate x, one dimension down.
fn section_basis(basis: &[Monomial], x: u64) -> Vec<Monomial> {
    let tails: Vec<Monomial> =
        basis.iter().filter(|m| m.first() <= x).map(|m| m.tail()).collect();
    minimal_basis(&tails).expect("uniform dimension")
}

// Basis of up(a) intersected with up(b): pairwise componentwise maxima.
fn intersection_basis(a: &[Monomial], b: &[Monomial]) -> Vec<Monomial> {
    let mut joins = Vec::with_capacity(a.len() * b.len());
    for u in a {
        for v in b {
            joins.push(componentwise_max(u, v));
        }
    }
    minimal_basis(&joins).expect("uniform dimension")
}

/// Rank of the crescent up(bp) \ up(bq). Callers keep up(bq) inside up(bp);
/// the residual itself is the crescent under bp = {origin}.
///
/// Dimension 1: the crescent is the segment [p, q), worth q - p, or w when
/// bq is empty. Higher dimensions: the stable section (at X0, the largest
/// first coordinate in either basis) recurs forever and contributes its rank
/// times w; each earlier section contributes the crescent lying strictly
/// above the stable floor, namely up(section of bp, floored at up(bq-stable))
/// minus up(section of bq). Flooring at the stable part is what keeps the
/// repeated tail from being counted once per section.
fn crescent(bp: &[Monomial], bq: &[Monomial], k: usize) -> Ordinal {
    debug_assert!(bp.iter().all(|m| m.dimension() == k));
    debug_assert!(bq.iter().all(|m| m.dimension() == k));
    debug_assert!(
        bq.iter().all(|v| bp.iter().any(|u| product_leq(u, v).unwrap())),
        "crescent caller must keep up(bq) inside up(bp)"
    );
    if bp.is_empty() {
        return Ordinal::zero();
    }
    if k == 1 {
        let p = bp[0].first();
        return match bq.first() {
            None => Ordinal::omega(),
            Some(q) => Ordinal::from_u64(q.first() - p),
        };
    }
    let stable_at =
        bp.iter().chain(bq.iter()).map(|m| m.first()).max().expect("bp is nonempty");
    let bp_stable = section_basis(bp, stable_at);
    let bq_stable = section_basis(bq, stable_at);
    let mut total = Ordinal::omega().mul(&crescent(&bp_stable, &bq_stable, k - 1));
    for x in 0..stable_at {
        let floor = intersection_basis(&section_basis(bp, x), &bq_stable);
        let surplus = crescent(&floor, &section_basis(bq, x), k - 1);
        total = nat_add(&total, &surplus);
    }
    total
}

/// A bad sequence under construction: the elements so far, the minimal basis
/// of their up-closure, and the rank after each element.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MonomialState {
    k: usize,
    sequence: Vec<Monomial>,
    minimal: Vec<Monomial>,
    ranks: Vec<Ordinal>,
}

/// Outcome of offering an element to a bad sequence. The offered state is
/// never touched; acceptance hands back a new one.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Extend {
    Accepted(MonomialState),
    Rejected { index: usize },
}

impl MonomialState {
    pub fn new(k: usize) -> Result<Self, DicksonError> {
        if k == 0 {
            return Err(DicksonError::DimensionMismatch);
        }
        Ok(MonomialState { k, sequence: Vec::new(), minimal: Vec::new(), ranks: Vec::new() })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn sequence(&self) -> &[Monomial] {
        &self.sequence
    }

    pub fn minimal(&self) -> &[Monomial] {
        &self.minimal
    }

    pub fn ranks(&self) -> &[Ordinal] {
        &self.ranks
    }
}

/// Offers `v` to the sequence: rejected (with the index of the earliest
/// divisor already present) when some element divides it, otherwise accepted
/// with the basis refreshed and the new, strictly smaller rank appended.
pub fn extend_bad(state: &MonomialState, v: &Monomial) -> Result<Extend, DicksonError> {
    if v.dimension() != state.k {
        return Err(DicksonError::DimensionMismatch);
    }
    for (index, u) in state.sequence.iter().enumerate() {
        if product_leq(u, v)? {
            return Ok(Extend::Rejected { index });
        }
    }
    let mut next = state.clone();
    next.sequence.push(v.clone());
    let mut with_v = next.minimal.clone();
    with_v.push(v.clone());
    next.minimal = minimal_basis(&with_v)?;
    next.ranks.push(residual_order_type(&next.minimal, next.k)?);
    Ok(Extend::Accepted(next))
}

/// Ranks every prefix of a bad sequence. The list strictly descends and
/// stays below w^k, so it can be handed to the descent checker as-is.
pub fn rank_bad_sequence(seq: &[Monomial], k: usize) -> Result<Vec<Ordinal>, DicksonError> {
    if k == 0 || seq.iter().any(|m| m.dimension() != k) {
        return Err(DicksonError::DimensionMismatch);
    }
    for j in 1..seq.len() {
        for i in 0..j {
            if product_leq(&seq[i], &seq[j])? {
                return Err(DicksonError::NotBad { i, j });
            }
        }
    }
    let mut ranks = Vec::with_capacity(seq.len());
    let mut basis: Vec<Monomial> = Vec::new();
    for m in seq {
        basis.push(m.clone());
        basis = minimal_basis(&basis)?;
        ranks.push(residual_order_type(&basis, k)?);
    }
    Ok(ranks)
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Monomial {
    type Err = MonomialParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|rest| rest.strip_suffix(')'))
            .ok_or_else(|| MonomialParseError(format!("expected \"(a,b,...)\", got {s:?}")))?;
        let mut exponents = Vec::new();
        for piece in inner.split(',') {
            let e = piece
                .trim()
                .parse::<u64>()
                .map_err(|e| MonomialParseError(format!("bad coordinate {piece:?}: {e}")))?;
            exponents.push(e);
        }
        Monomial::new(exponents)
            .map_err(|_| MonomialParseError("a monomial needs at least one coordinate".into()))
    }
}

impl Serialize for Monomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
