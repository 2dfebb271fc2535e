//! Strict-descent traces, the least-m window search, fundamental sequences,
//! and canonical walks that march any notation down to zero.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ordinal::{Ordinal, OrdinalKind, Term};

/// Outcome of checking a sequence against strict descent and a bound.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceStatus {
    Valid,
    ViolationAt(usize),
}

/// A recorded sequence together with the bound it was checked under.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DescentTrace {
    pub bound: Ordinal,
    pub entries: Vec<Ordinal>,
    pub status: TraceStatus,
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum DescentError {
    #[error("no entry ever enters the window")]
    NoWitness,
    #[error("fundamental sequences are defined only at limits")]
    NotALimit,
    #[error("step sequence exhausted after {} entries", .partial.entries.len())]
    StepsExhausted { partial: DescentTrace },
}

/// Checks that `seq` descends strictly and stays below `bound`. Violations are
/// reported as data: the status names the first offending index, preferring a
/// bound breach over a non-descent at the same position.
pub fn check_strict_descent(seq: &[Ordinal], bound: &Ordinal) -> DescentTrace {
    let mut status = TraceStatus::Valid;
    for (i, x) in seq.iter().enumerate() {
        if x >= bound || (i > 0 && x >= &seq[i - 1]) {
            status = TraceStatus::ViolationAt(i);
            break;
        }
    }
    DescentTrace { bound: bound.clone(), entries: seq.to_vec(), status }
}

/// The least m such that some entry of `f` is below `alpha + w^n*m`, or
/// `NoWitness` when no m works at all.
///
/// Only the smallest entry matters: some f(i) is in the window exactly when
/// min(f) is. A witness exists for some m iff min(f) < alpha + w^(n+1),
/// because the windows are cofinal in that limit. When one exists, write
/// c for the coefficient of w^n in min(f) and a for the coefficient of w^n
/// in alpha; the least m is forced to be c - a + 1 unless m = 0 already
/// works, so c + 2 bounds the search and the answer is computed directly.
pub fn least_m(f: &[Ordinal], alpha: &Ordinal, n: u64) -> Result<BigUint, DescentError> {
    let Some(min) = f.iter().min() else {
        return Err(DescentError::NoWitness);
    };
    if min < alpha {
        return Ok(BigUint::zero());
    }
    let above = Ordinal::omega_pow(&Ordinal::from_biguint(BigUint::from(n) + 1u32));
    if *min >= alpha.add(&above) {
        return Err(DescentError::NoWitness);
    }
    let exp = Ordinal::from_u64(n);
    let c = min.coeff_of(&exp);
    let a = alpha.coeff_of(&exp);
    // min >= alpha and min < alpha + w^(n+1) force min and alpha to agree
    // above exponent n, so c >= a and the window first opens at c - a + 1.
    debug_assert!(c >= a);
    Ok(c - a + 1u32)
}

/// The n-th member of the fundamental sequence assigned to a limit:
/// peel one copy of the last term `w^e`; for successor e this leaves
/// `gamma + w^(e-1)*n`, for limit e it leaves `gamma + w^(e[n])`.
pub fn fundamental(a: &Ordinal, n: u64) -> Result<Ordinal, DescentError> {
    if a.kind() != OrdinalKind::Limit {
        return Err(DescentError::NotALimit);
    }
    let (last, head) = a.terms().split_last().expect("limits are nonzero");
    let mut out: Vec<Term> = head.to_vec();
    let peeled = &last.coeff - 1u32;
    if !peeled.is_zero() {
        out.push(Term { exp: last.exp.clone(), coeff: peeled });
    }
    match last.exp.kind() {
        OrdinalKind::Successor => {
            if n > 0 {
                let down = last.exp.predecessor().expect("successor exponent");
                out.push(Term { exp: down, coeff: BigUint::from(n) });
            }
        }
        OrdinalKind::Limit => {
            let inner = fundamental(&last.exp, n)?;
            out.push(Term { exp: inner, coeff: BigUint::one() });
        }
        OrdinalKind::Zero => unreachable!("a limit's last exponent is positive"),
    }
    Ok(Ordinal::from_term_vec(out))
}

/// Walks from `start` to zero: successors step to their predecessor, limits
/// step to `fundamental(cur, s)` consuming the next step value s. The walk
/// provably terminates; the only failure is running out of step values, which
/// returns the partial trace inside the error.
pub fn canonical_walk(start: &Ordinal, steps: &[u64]) -> Result<DescentTrace, DescentError> {
    let bound = start.add(&Ordinal::one());
    let mut entries = vec![start.clone()];
    let mut consumed = 0usize;
    loop {
        let cur = entries.last().expect("never empty");
        let next = match cur.kind() {
            OrdinalKind::Zero => break,
            OrdinalKind::Successor => cur.predecessor().expect("successor"),
            OrdinalKind::Limit => {
                let Some(&s) = steps.get(consumed) else {
                    return Err(DescentError::StepsExhausted {
                        partial: check_strict_descent(&entries, &bound),
                    });
                };
                consumed += 1;
                fundamental(cur, s).expect("current entry is a limit")
            }
        };
        entries.push(next);
    }
    Ok(check_strict_descent(&entries, &bound))
}
