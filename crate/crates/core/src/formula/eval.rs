//! Truth evaluation over an initial segment of the naturals.
//!
//! Unbounded quantifiers range over {0, .., n-1}; bounded quantifiers use
//! their own syntactic bound, whatever its value. Term arithmetic is exact
//! 64-bit with overflow reported rather than wrapped.

use super::{Formula, Term};
use std::collections::HashMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum EvalError {
    UnassignedVariable(String),
    Overflow,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::UnassignedVariable(v) => write!(f, "variable '{v}' has no value"),
            EvalError::Overflow => write!(f, "term value exceeds 64 bits"),
        }
    }
}

impl std::error::Error for EvalError {}

struct Env<'a> {
    base: &'a HashMap<String, u64>,
    scope: Vec<(String, u64)>,
}

impl Env<'_> {
    fn lookup(&self, var: &str) -> Result<u64, EvalError> {
        for (name, value) in self.scope.iter().rev() {
            if name == var {
                return Ok(*value);
            }
        }
        self.base
            .get(var)
            .copied()
            .ok_or_else(|| EvalError::UnassignedVariable(var.to_string()))
    }
}

fn term_value(t: &Term, env: &Env<'_>) -> Result<u64, EvalError> {
    // Successor chains unwind iteratively so numerals cost one addition.
    let mut succs = 0u64;
    let mut t = t;
    while let Term::Succ(inner) = t {
        succs += 1;
        t = inner;
    }
    let core = match t {
        Term::Zero => 0,
        Term::Var(v) => env.lookup(v)?,
        Term::Add(a, b) => term_value(a, env)?
            .checked_add(term_value(b, env)?)
            .ok_or(EvalError::Overflow)?,
        Term::Mul(a, b) => term_value(a, env)?
            .checked_mul(term_value(b, env)?)
            .ok_or(EvalError::Overflow)?,
        Term::Succ(_) => unreachable!("successors unwound above"),
    };
    core.checked_add(succs).ok_or(EvalError::Overflow)
}

fn eval(f: &Formula, env: &mut Env<'_>, n: u64) -> Result<bool, EvalError> {
    match f {
        Formula::Eq(a, b) => Ok(term_value(a, env)? == term_value(b, env)?),
        Formula::Lt(a, b) => Ok(term_value(a, env)? < term_value(b, env)?),
        Formula::Not(inner) => Ok(!eval(inner, env, n)?),
        Formula::And(a, b) => Ok(eval(a, env, n)? && eval(b, env, n)?),
        Formula::Or(a, b) => Ok(eval(a, env, n)? || eval(b, env, n)?),
        Formula::Imp(a, b) => Ok(!eval(a, env, n)? || eval(b, env, n)?),
        Formula::Exists(v, body) => quantify(v, 0..n, body, env, n, true),
        Formula::Forall(v, body) => quantify(v, 0..n, body, env, n, false),
        Formula::BoundedExists(v, t, body) => {
            let bound = term_value(t, env)?;
            quantify(v, 0..bound, body, env, n, true)
        }
        Formula::BoundedForall(v, t, body) => {
            let bound = term_value(t, env)?;
            quantify(v, 0..bound, body, env, n, false)
        }
    }
}

fn quantify(
    var: &str,
    range: std::ops::Range<u64>,
    body: &Formula,
    env: &mut Env<'_>,
    n: u64,
    existential: bool,
) -> Result<bool, EvalError> {
    env.scope.push((var.to_string(), 0));
    let result = (|| {
        for value in range {
            env.scope.last_mut().expect("pushed above").1 = value;
            if eval(body, env, n)? == existential {
                return Ok(existential);
            }
        }
        Ok(!existential)
    })();
    env.scope.pop();
    result
}

/// Evaluates `f` with unbounded quantifiers cut off at `n`.
pub fn eval_bounded(
    f: &Formula,
    assignment: &HashMap<String, u64>,
    n: u64,
) -> Result<bool, EvalError> {
    let mut env = Env {
        base: assignment,
        scope: Vec::new(),
    };
    eval(f, &mut env, n)
}
