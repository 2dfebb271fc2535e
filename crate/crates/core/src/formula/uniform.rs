//! Uniformization: turning an existential formula into one that picks a
//! single witness, plus the pairing machinery and the bounded-model report
//! that checks the construction mechanically.
//!
//! Codes are Cantor pairs. The selector for phi = Ey theta(x, y) says "some
//! code z decodes to (x, y) with theta(x, y), and no smaller code decodes to
//! any theta pair". It therefore holds for at most one x outright, which is
//! what the uniqueness clause of the report verifies.

use super::eval::{eval_bounded, EvalError};
use super::{fresh_name, Formula, Level, Term};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum UniformizeError {
    #[error("not an existential formula with a leading unbounded quantifier")]
    NotSigma,
    #[error("variable '{0}' is not free in the formula")]
    VariableNotFree(String),
    #[error("the formula must have no unbounded quantifiers")]
    NotDelta0,
    #[error("unexpected free variable '{0}'")]
    StrayVariable(String),
    #[error("the evaluation scale cannot decide the report exactly")]
    InsufficientBound,
    #[error("evaluation failed: {0}")]
    Eval(#[from] EvalError),
}

/// Cantor pairing: (a, b) goes to (a+b)(a+b+1)/2 + b.
pub fn pair(a: u64, b: u64) -> u64 {
    let s = a as u128 + b as u128;
    let z = s * (s + 1) / 2 + b as u128;
    u64::try_from(z).expect("pair code exceeds 64 bits")
}

pub fn proj1(z: u64) -> u64 {
    unpair(z).0
}

pub fn proj2(z: u64) -> u64 {
    unpair(z).1
}

fn unpair(z: u64) -> (u64, u64) {
    let z = z as u128;
    let s = (isqrt(8 * z + 1) - 1) / 2;
    let b = z - s * (s + 1) / 2;
    ((s - b) as u64, b as u64)
}

fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    // Newton from an upper bound lands on the floor square root.
    let mut x = 1u128 << ((128 - n.leading_zeros()).div_ceil(2));
    loop {
        let y = (x + n / x) / 2;
        if y >= x {
            return x;
        }
        x = y;
    }
}

// The code-decomposition formula: "code splits as the pair (a, b) and body
// holds". The decomposition pins s = a + b through its triangular window, so
// evaluation walks s upward past O(sqrt(code)) cheap failures, and the inner
// searches are bounded by s rather than by the code.
fn decode(code: Term, s: &str, b: &str, a: &str, body: Formula) -> Formula {
    let sv = Term::var(s);
    let bv = Term::var(b);
    let av = Term::var(a);
    let twice_code = Term::numeral(2).mul(code.clone());
    let window_low = Formula::Lt(
        sv.clone().mul(sv.clone().add(Term::numeral(1))),
        twice_code.clone().add(Term::numeral(1)),
    );
    let window_high = Formula::Lt(
        twice_code.clone(),
        sv.clone()
            .add(Term::numeral(1))
            .mul(sv.clone().add(Term::numeral(2))),
    );
    let split_b = Formula::Eq(
        twice_code,
        sv.clone()
            .mul(sv.clone().add(Term::numeral(1)))
            .add(Term::numeral(2).mul(bv.clone())),
    );
    let split_a = Formula::Eq(av.add(bv), sv.clone());
    let find_a = Formula::bounded_exists(a, sv.clone().add(Term::numeral(1)), split_a.and(body));
    let find_b = Formula::bounded_exists(b, sv.add(Term::numeral(1)), split_b.and(find_a));
    Formula::bounded_exists(
        s,
        code.add(Term::numeral(1)),
        window_low.and(window_high).and(find_b),
    )
}

// Builds the selector for theta with designated variables x (kept free) and
// y (the witness slot). No freeness demands on either: a theta without x
// yields a selector that distinguishes a single x anyway.
fn build_selector(theta: &Formula, x: &str, y: &str) -> Formula {
    let mut taken = theta.all_vars();
    taken.insert(x.to_string());
    taken.insert(y.to_string());
    let grab = |base: &str, taken: &mut std::collections::BTreeSet<String>| {
        let name = fresh_name(base, taken);
        taken.insert(name.clone());
        name
    };
    let z = grab("z", &mut taken);
    let w = grab("w", &mut taken);
    let s = grab("s", &mut taken);
    let b = grab("b", &mut taken);
    let a = grab("a", &mut taken);

    let theta_ab = theta
        .substitute(x, &Term::var(&a))
        .substitute(y, &Term::var(&b));
    let first_is_x = decode(
        Term::var(&z),
        &s,
        &b,
        &a,
        Formula::Eq(Term::var(&a), Term::var(x)),
    );
    let holds_here = decode(Term::var(&z), &s, &b, &a, theta_ab.clone());
    let none_smaller = Formula::bounded_exists(
        &w,
        Term::var(&z),
        decode(Term::var(&w), &s, &b, &a, theta_ab),
    )
    .not();
    Formula::exists(&z, first_is_x.and(holds_here).and(none_smaller))
}

// Strips the leading unbounded existential block, reading through double
// negations and the not-forall-not spelling.
fn peel_existentials(phi: &Formula) -> (Vec<String>, Formula) {
    let mut vars = Vec::new();
    let mut cur = phi.clone();
    loop {
        match cur {
            Formula::Exists(v, body) => {
                vars.push(v);
                cur = *body;
            }
            Formula::Not(inner) => match *inner {
                Formula::Not(body) => cur = *body,
                Formula::Forall(v, body) => match *body {
                    Formula::Not(core) => {
                        vars.push(v);
                        cur = *core;
                    }
                    other => {
                        cur = Formula::forall(&v, other).not();
                        break;
                    }
                },
                other => {
                    cur = other.not();
                    break;
                }
            },
            other => {
                cur = other;
                break;
            }
        }
    }
    (vars, cur)
}

/// Rewrites an existential formula so it holds for at most one value of `x`,
/// preserving its level. The leading existential block (however many
/// variables) collapses into one coded witness.
pub fn uniformize(phi: &Formula, x: &str) -> Result<Formula, UniformizeError> {
    let Level::Sigma(level) = phi.classify() else {
        return Err(UniformizeError::NotSigma);
    };
    if !phi.free_vars().contains(x) {
        return Err(UniformizeError::VariableNotFree(x.to_string()));
    }
    let (mut vars, matrix) = peel_existentials(phi);
    if vars.is_empty() {
        return Err(UniformizeError::NotSigma);
    }
    // The matrix must carry no existential burden of its own: its
    // universal-first rank caps at one below the formula's level.
    let (_, matrix_pi) = matrix.ranks();
    if matrix_pi > level - 1 {
        return Err(UniformizeError::NotSigma);
    }

    // Fuse a multi-variable block into a single coded witness, innermost
    // pair first.
    let mut theta = matrix;
    while vars.len() > 1 {
        let inner = vars.pop().expect("len > 1");
        let outer = vars.pop().expect("len > 1");
        let mut taken = theta.all_vars();
        taken.insert(x.to_string());
        taken.extend(vars.iter().cloned());
        let fused = fresh_name("y", &taken);
        taken.insert(fused.clone());
        let s = fresh_name("s", &taken);
        taken.insert(s.clone());
        let b = fresh_name("b", &taken);
        taken.insert(b.clone());
        let a = fresh_name("a", &taken);
        let renamed = if outer == inner {
            // The outer binder was shadowed and binds nothing.
            theta.substitute(&inner, &Term::var(&b))
        } else {
            theta
                .substitute(&outer, &Term::var(&a))
                .substitute(&inner, &Term::var(&b))
        };
        theta = decode(Term::var(&fused), &s, &b, &a, renamed);
        vars.push(fused);
    }
    let y = vars.pop().expect("nonempty");
    Ok(build_selector(&theta, x, &y))
}

/// The mechanical report on the selector built from a quantifier-free theta
/// over x and y, evaluated over {0, .., n-1} with x ranging below `x_limit`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct UniformizationReport {
    pub item1: bool,
    pub item2: bool,
    pub item3: bool,
    #[serde(rename = "X")]
    pub x_limit: u64,
    #[serde(rename = "N")]
    pub n_limit: u64,
    pub theta: String,
}

/// Checks the three selector properties for `theta` (quantifier-free, free
/// variables within {x, y}): selection implies existence, at most one x is
/// selected, and existence somewhere below `x_limit` implies selection
/// somewhere below it.
///
/// The third item is only meaningful when the scale can exhibit the least
/// witness code: if some x below `x_limit` has a visible witness but the
/// least theta code overall either exceeds `n` or projects to an x at or
/// above `x_limit`, the report refuses instead of approximating.
pub fn check_uniformization(
    theta: &Formula,
    x_limit: u64,
    n: u64,
) -> Result<UniformizationReport, UniformizeError> {
    if theta.classify() != Level::Delta0 {
        return Err(UniformizeError::NotDelta0);
    }
    for v in theta.free_vars() {
        if v != "x" && v != "y" {
            return Err(UniformizeError::StrayVariable(v));
        }
    }
    let selector = build_selector(theta, "x", "y");
    let plain = Formula::exists("y", theta.clone());

    let mut selected = Vec::with_capacity(x_limit as usize);
    let mut holds = Vec::with_capacity(x_limit as usize);
    for x0 in 0..x_limit {
        let assignment: HashMap<String, u64> = [("x".to_string(), x0)].into();
        selected.push(eval_bounded(&selector, &assignment, n)?);
        holds.push(eval_bounded(&plain, &assignment, n)?);
    }

    let item1 = selected
        .iter()
        .zip(holds.iter())
        .all(|(sel, hold)| !sel || *hold);
    let item2 = selected.iter().filter(|sel| **sel).count() <= 1;
    let exists_below = holds.iter().any(|hold| *hold);
    let item3 = if !exists_below {
        true
    } else {
        // The least code overall decides whether the scale suffices: it must
        // lie below n and project into the x window.
        let least_code = (0..n).find_map(|z| {
            let (a0, b0) = unpair(z);
            let assignment: HashMap<String, u64> =
                [("x".to_string(), a0), ("y".to_string(), b0)].into();
            match eval_bounded(theta, &assignment, n) {
                Ok(true) => Some(Ok(z)),
                Ok(false) => None,
                Err(e) => Some(Err(e)),
            }
        });
        match least_code {
            None => return Err(UniformizeError::InsufficientBound),
            Some(Err(e)) => return Err(UniformizeError::Eval(e)),
            Some(Ok(z)) if proj1(z) >= x_limit => {
                return Err(UniformizeError::InsufficientBound)
            }
            Some(Ok(_)) => selected.iter().any(|sel| *sel),
        }
    };

    Ok(UniformizationReport {
        item1,
        item2,
        item3,
        x_limit,
        n_limit: n,
        theta: theta.to_string(),
    })
}
