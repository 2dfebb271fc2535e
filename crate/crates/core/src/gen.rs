//! Deterministic random generation for test corpora: ordinals in normal
//! form, quantifier-free formulas over x and y, and formulas using the whole
//! syntax. A fixed in-crate generator keeps the streams identical across
//! platforms and library versions, so frozen seeds stay meaningful.

use crate::formula::{Formula, Term};
use crate::ordinal::Ordinal;
use num_bigint::BigUint;

/// The splitmix64 generator: one u64 of state, full 64-bit output.
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform-enough draw from {0, .., n-1}; the modulo bias is irrelevant
    /// at corpus sizes.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "empty range");
        self.next_u64() % n
    }
}

/// A normal-form ordinal with exponent towers at most `depth` high and
/// small coefficients.
pub fn random_ordinal(rng: &mut SplitMix64, depth: u32) -> Ordinal {
    if depth == 0 {
        return Ordinal::from_u64(rng.below(10));
    }
    let n_terms = rng.below(4);
    let mut exps: Vec<Ordinal> = (0..n_terms)
        .map(|_| random_ordinal(rng, depth - 1))
        .collect();
    // Normal form: strictly decreasing exponents.
    exps.sort();
    exps.dedup();
    exps.reverse();
    let terms = exps
        .into_iter()
        .map(|exp| crate::ordinal::Term {
            exp,
            coeff: BigUint::from(1 + rng.below(9)),
        })
        .collect();
    Ordinal::from_term_vec(terms)
}

fn random_term(rng: &mut SplitMix64, scope: &[String], depth: u32) -> Term {
    let pick_leaf = depth == 0 || rng.below(3) == 0;
    if pick_leaf {
        if !scope.is_empty() && rng.below(2) == 0 {
            let v = &scope[rng.below(scope.len() as u64) as usize];
            Term::var(v)
        } else {
            Term::numeral(rng.below(13))
        }
    } else {
        match rng.below(3) {
            0 => Term::Succ(Box::new(random_term(rng, scope, depth - 1))),
            1 => random_term(rng, scope, depth - 1).add(random_term(rng, scope, depth - 1)),
            _ => random_term(rng, scope, depth - 1).mul(random_term(rng, scope, depth - 1)),
        }
    }
}

fn random_atom(rng: &mut SplitMix64, scope: &[String]) -> Formula {
    let a = random_term(rng, scope, 2);
    let b = random_term(rng, scope, 2);
    if rng.below(2) == 0 {
        Formula::Eq(a, b)
    } else {
        Formula::Lt(a, b)
    }
}

fn random_quantifier_free(
    rng: &mut SplitMix64,
    scope: &mut Vec<String>,
    depth: u32,
    next_fresh: &mut u32,
) -> Formula {
    if depth == 0 || rng.below(4) == 0 {
        return random_atom(rng, scope);
    }
    match rng.below(6) {
        0 => random_quantifier_free(rng, scope, depth - 1, next_fresh).not(),
        1 => random_quantifier_free(rng, scope, depth - 1, next_fresh)
            .and(random_quantifier_free(rng, scope, depth - 1, next_fresh)),
        2 => random_quantifier_free(rng, scope, depth - 1, next_fresh)
            .or(random_quantifier_free(rng, scope, depth - 1, next_fresh)),
        3 => random_quantifier_free(rng, scope, depth - 1, next_fresh)
            .imp(random_quantifier_free(rng, scope, depth - 1, next_fresh)),
        which => {
            // A bounded quantifier over a fresh variable; the bound term is
            // built in the enclosing scope.
            let bound = random_term(rng, scope, 1);
            let var = format!("u{next_fresh}");
            *next_fresh += 1;
            scope.push(var.clone());
            let body = random_quantifier_free(rng, scope, depth - 1, next_fresh);
            scope.pop();
            if which == 4 {
                Formula::bounded_exists(&var, bound, body)
            } else {
                Formula::bounded_forall(&var, bound, body)
            }
        }
    }
}

/// A quantifier-free (bounded quantifiers allowed) formula whose free
/// variables lie within {x, y}. Always classifies at the bottom level.
pub fn random_delta0(rng: &mut SplitMix64) -> Formula {
    let mut scope = vec!["x".to_string(), "y".to_string()];
    let mut next_fresh = 0;
    random_quantifier_free(rng, &mut scope, 3, &mut next_fresh)
}

/// A formula over the whole syntax, unbounded quantifiers included.
pub fn random_formula(rng: &mut SplitMix64) -> Formula {
    let mut scope = vec!["x".to_string(), "y".to_string()];
    let mut next_fresh = 0;
    random_full(rng, &mut scope, 3, &mut next_fresh)
}

fn random_full(
    rng: &mut SplitMix64,
    scope: &mut Vec<String>,
    depth: u32,
    next_fresh: &mut u32,
) -> Formula {
    if depth == 0 || rng.below(4) == 0 {
        return random_atom(rng, scope);
    }
    match rng.below(8) {
        0 => random_full(rng, scope, depth - 1, next_fresh).not(),
        1 => random_full(rng, scope, depth - 1, next_fresh)
            .and(random_full(rng, scope, depth - 1, next_fresh)),
        2 => random_full(rng, scope, depth - 1, next_fresh)
            .or(random_full(rng, scope, depth - 1, next_fresh)),
        3 => random_full(rng, scope, depth - 1, next_fresh)
            .imp(random_full(rng, scope, depth - 1, next_fresh)),
        which @ (4 | 5) => {
            let bound = random_term(rng, scope, 1);
            let var = format!("u{next_fresh}");
            *next_fresh += 1;
            scope.push(var.clone());
            let body = random_full(rng, scope, depth - 1, next_fresh);
            scope.pop();
            if which == 4 {
                Formula::bounded_exists(&var, bound, body)
            } else {
                Formula::bounded_forall(&var, bound, body)
            }
        }
        which => {
            let var = format!("u{next_fresh}");
            *next_fresh += 1;
            scope.push(var.clone());
            let body = random_full(rng, scope, depth - 1, next_fresh);
            scope.pop();
            if which == 6 {
                Formula::exists(&var, body)
            } else {
                Formula::forall(&var, body)
            }
        }
    }
}
