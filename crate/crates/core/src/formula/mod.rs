//! First-order arithmetic formulas: terms over 0/S/+/*, comparisons,
//! connectives, quantifiers bounded and unbounded, with syntactic
//! classification into the usual levels.
//!
//! Levels are computed as a pair of ranks (least k such that the formula
//! counts as existential-first at k, and dually), driven bottom-up without
//! rewriting to prenex form. Bounded quantifiers are transparent, negation
//! swaps the ranks, and an unbounded quantifier lifts its own side to at
//! least 1 while pushing the opposite side one higher.

mod eval;
mod parse;
mod uniform;

pub use eval::{eval_bounded, EvalError};
pub use parse::{parse_closed_formula, parse_formula, FormulaParseError};
pub use uniform::{
    check_uniformization, pair, proj1, proj2, uniformize, UniformizationReport, UniformizeError,
};

use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Term {
    Zero,
    Var(String),
    Succ(Box<Term>),
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Formula {
    Eq(Term, Term),
    Lt(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
    BoundedExists(String, Term, Box<Formula>),
    BoundedForall(String, Term, Box<Formula>),
}

/// Syntactic complexity: no unbounded quantifiers, or an existential-first
/// alternation depth, or a universal-first one.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Level {
    Delta0,
    Sigma(u32),
    Pi(u32),
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Delta0 => write!(f, "Delta0"),
            Level::Sigma(k) => write!(f, "Sigma({k})"),
            Level::Pi(k) => write!(f, "Pi({k})"),
        }
    }
}

impl Term {
    pub fn numeral(n: u64) -> Term {
        let mut t = Term::Zero;
        for _ in 0..n {
            t = Term::Succ(Box::new(t));
        }
        t
    }

    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    // Syntax builders; the nodes denote terms, they do not compute.
    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: Term) -> Term {
        Term::Add(Box::new(self), Box::new(other))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Term) -> Term {
        Term::Mul(Box::new(self), Box::new(other))
    }

    // The numeral value when the term is a bare successor chain over zero.
    fn as_numeral(&self) -> Option<u64> {
        let mut n = 0u64;
        let mut t = self;
        loop {
            match t {
                Term::Zero => return Some(n),
                Term::Succ(inner) => {
                    n += 1;
                    t = inner;
                }
                _ => return None,
            }
        }
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Zero => {}
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Succ(t) => t.collect_vars(out),
            Term::Add(a, b) | Term::Mul(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    fn substitute(&self, var: &str, replacement: &Term) -> Term {
        match self {
            Term::Zero => Term::Zero,
            Term::Var(v) => {
                if v == var {
                    replacement.clone()
                } else {
                    self.clone()
                }
            }
            Term::Succ(t) => Term::Succ(Box::new(t.substitute(var, replacement))),
            Term::Add(a, b) => Term::Add(
                Box::new(a.substitute(var, replacement)),
                Box::new(b.substitute(var, replacement)),
            ),
            Term::Mul(a, b) => Term::Mul(
                Box::new(a.substitute(var, replacement)),
                Box::new(b.substitute(var, replacement)),
            ),
        }
    }
}

impl Formula {
    // Connective builder, not boolean negation of a value.
    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Formula {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, other: Formula) -> Formula {
        Formula::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Formula) -> Formula {
        Formula::Or(Box::new(self), Box::new(other))
    }

    pub fn imp(self, other: Formula) -> Formula {
        Formula::Imp(Box::new(self), Box::new(other))
    }

    pub fn exists(var: &str, body: Formula) -> Formula {
        Formula::Exists(var.to_string(), Box::new(body))
    }

    pub fn forall(var: &str, body: Formula) -> Formula {
        Formula::Forall(var.to_string(), Box::new(body))
    }

    pub fn bounded_exists(var: &str, bound: Term, body: Formula) -> Formula {
        Formula::BoundedExists(var.to_string(), bound, Box::new(body))
    }

    pub fn bounded_forall(var: &str, bound: Term, body: Formula) -> Formula {
        Formula::BoundedForall(var.to_string(), bound, Box::new(body))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        let term_free = |t: &Term, bound: &[String], out: &mut BTreeSet<String>| {
            let mut vars = BTreeSet::new();
            t.collect_vars(&mut vars);
            for v in vars {
                if !bound.contains(&v) {
                    out.insert(v);
                }
            }
        };
        match self {
            Formula::Eq(a, b) | Formula::Lt(a, b) => {
                term_free(a, bound, out);
                term_free(b, bound, out);
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Exists(v, f) | Formula::Forall(v, f) => {
                bound.push(v.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
            Formula::BoundedExists(v, t, f) | Formula::BoundedForall(v, t, f) => {
                // The bound term is outside the binder's scope.
                term_free(t, bound, out);
                bound.push(v.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Replaces free occurrences of `var` by `replacement`, renaming bound
    /// variables that would capture a variable of the replacement.
    pub fn substitute(&self, var: &str, replacement: &Term) -> Formula {
        let mut incoming = BTreeSet::new();
        replacement.collect_vars(&mut incoming);
        self.subst_inner(var, replacement, &incoming)
    }

    fn subst_inner(&self, var: &str, replacement: &Term, incoming: &BTreeSet<String>) -> Formula {
        let binder = |v: &String,
                      bound: Option<&Term>,
                      body: &Formula,
                      rebuild: &dyn Fn(String, Option<Term>, Formula) -> Formula| {
            let new_bound = bound.map(|t| t.substitute(var, replacement));
            if v == var {
                // The binder shadows the substituted variable.
                return rebuild(v.clone(), new_bound, (*body).clone());
            }
            if incoming.contains(v) {
                let fresh = fresh_name(v, &{
                    let mut taken = body.all_vars();
                    taken.extend(incoming.iter().cloned());
                    taken.insert(var.to_string());
                    taken
                });
                let renamed = body.subst_inner(v, &Term::Var(fresh.clone()), &BTreeSet::new());
                rebuild(fresh, new_bound, renamed.subst_inner(var, replacement, incoming))
            } else {
                rebuild(v.clone(), new_bound, body.subst_inner(var, replacement, incoming))
            }
        };
        match self {
            Formula::Eq(a, b) => {
                Formula::Eq(a.substitute(var, replacement), b.substitute(var, replacement))
            }
            Formula::Lt(a, b) => {
                Formula::Lt(a.substitute(var, replacement), b.substitute(var, replacement))
            }
            Formula::Not(f) => f.subst_inner(var, replacement, incoming).not(),
            Formula::And(a, b) => a
                .subst_inner(var, replacement, incoming)
                .and(b.subst_inner(var, replacement, incoming)),
            Formula::Or(a, b) => a
                .subst_inner(var, replacement, incoming)
                .or(b.subst_inner(var, replacement, incoming)),
            Formula::Imp(a, b) => a
                .subst_inner(var, replacement, incoming)
                .imp(b.subst_inner(var, replacement, incoming)),
            Formula::Exists(v, f) => binder(v, None, f, &|v, _, body| {
                Formula::Exists(v, Box::new(body))
            }),
            Formula::Forall(v, f) => binder(v, None, f, &|v, _, body| {
                Formula::Forall(v, Box::new(body))
            }),
            Formula::BoundedExists(v, t, f) => binder(v, Some(t), f, &|v, t, body| {
                Formula::BoundedExists(v, t.expect("bound carried through"), Box::new(body))
            }),
            Formula::BoundedForall(v, t, f) => binder(v, Some(t), f, &|v, t, body| {
                Formula::BoundedForall(v, t.expect("bound carried through"), Box::new(body))
            }),
        }
    }

    fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_all_vars(&mut out);
        out
    }

    fn collect_all_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Eq(a, b) | Formula::Lt(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Formula::Not(f) => f.collect_all_vars(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_all_vars(out);
                b.collect_all_vars(out);
            }
            Formula::Exists(v, f) | Formula::Forall(v, f) => {
                out.insert(v.clone());
                f.collect_all_vars(out);
            }
            Formula::BoundedExists(v, t, f) | Formula::BoundedForall(v, t, f) => {
                out.insert(v.clone());
                t.collect_vars(out);
                f.collect_all_vars(out);
            }
        }
    }

    /// The minimal syntactic level. Reported as the existential side when the
    /// two ranks tie (such a formula is both, and nothing downstream
    /// distinguishes the two readings of a tie).
    pub fn classify(&self) -> Level {
        let (sigma, pi) = self.ranks();
        if sigma == 0 && pi == 0 {
            Level::Delta0
        } else if sigma <= pi {
            Level::Sigma(sigma)
        } else {
            Level::Pi(pi)
        }
    }

    // (least existential-first rank, least universal-first rank)
    fn ranks(&self) -> (u32, u32) {
        match self {
            Formula::Eq(..) | Formula::Lt(..) => (0, 0),
            Formula::Not(f) => {
                let (s, p) = f.ranks();
                (p, s)
            }
            Formula::And(a, b) | Formula::Or(a, b) => {
                let (sa, pa) = a.ranks();
                let (sb, pb) = b.ranks();
                (sa.max(sb), pa.max(pb))
            }
            Formula::Imp(a, b) => {
                let (sa, pa) = a.ranks();
                let (sb, pb) = b.ranks();
                (pa.max(sb), sa.max(pb))
            }
            Formula::Exists(_, f) => {
                let (s, _) = f.ranks();
                let s = s.max(1);
                (s, s + 1)
            }
            Formula::Forall(_, f) => {
                let (_, p) = f.ranks();
                let p = p.max(1);
                (p + 1, p)
            }
            Formula::BoundedExists(_, _, f) | Formula::BoundedForall(_, _, f) => f.ranks(),
        }
    }
}

pub(crate) fn fresh_name(base: &str, taken: &BTreeSet<String>) -> String {
    if !taken.contains(base) {
        return base.to_string();
    }
    for i in 1.. {
        let candidate = format!("{base}{i}");
        if !taken.contains(&candidate) {
            return candidate;
        }
    }
    unreachable!("the candidate stream is infinite")
}

/// An instance of the induction scheme for `matrix` along `var`:
/// (matrix[0] and forall var (matrix -> matrix[var+1])) -> forall var matrix.
pub fn induction_instance(matrix: &Formula, var: &str) -> Formula {
    let base = matrix.substitute(var, &Term::Zero);
    let step = Formula::forall(
        var,
        matrix
            .clone()
            .imp(matrix.substitute(var, &Term::Succ(Box::new(Term::var(var))))),
    );
    base.and(step).imp(Formula::forall(var, matrix.clone()))
}

/// An instance of the bounding (collection) scheme:
/// (forall u < bound, exists v, matrix) -> exists cap (forall u < bound,
/// exists v < cap, matrix).
pub fn bounding_instance(matrix: &Formula, u: &str, v: &str, bound: &Term) -> Formula {
    let mut taken = matrix.all_vars();
    let mut bound_vars = BTreeSet::new();
    bound.collect_vars(&mut bound_vars);
    taken.extend(bound_vars);
    taken.insert(u.to_string());
    taken.insert(v.to_string());
    let cap = fresh_name("c", &taken);
    let premise = Formula::bounded_forall(u, bound.clone(), Formula::exists(v, matrix.clone()));
    let conclusion = Formula::exists(
        &cap,
        Formula::bounded_forall(
            u,
            bound.clone(),
            Formula::bounded_exists(v, Term::var(&cap), matrix.clone()),
        ),
    );
    premise.imp(conclusion)
}

// Term rendering: `*` binds tighter than `+`, successor chains over zero
// print as numerals, other successors as S(t). Both operators parse
// left-associatively, so right-nested operands keep their parentheses and
// rendering stays injective.
fn render_term(t: &Term, parens_add: bool, parens_mul: bool, out: &mut String) {
    if let Some(n) = t.as_numeral() {
        out.push_str(&n.to_string());
        return;
    }
    match t {
        Term::Zero => out.push('0'),
        Term::Var(v) => out.push_str(v),
        Term::Succ(inner) => {
            out.push_str("S(");
            render_term(inner, false, false, out);
            out.push(')');
        }
        Term::Add(a, b) => {
            if parens_add {
                out.push('(');
            }
            render_term(a, false, false, out);
            out.push_str(" + ");
            render_term(b, true, false, out);
            if parens_add {
                out.push(')');
            }
        }
        Term::Mul(a, b) => {
            if parens_mul {
                out.push('(');
            }
            render_term(a, true, false, out);
            out.push_str(" * ");
            render_term(b, true, true, out);
            if parens_mul {
                out.push(')');
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        render_term(self, false, false, &mut out);
        f.write_str(&out)
    }
}

// A quantifier bound sits directly after `<`, so compound bounds need
// parentheses to keep the rendering reparseable.
fn render_bound(t: &Term) -> String {
    if t.as_numeral().is_none() && matches!(t, Term::Add(..) | Term::Mul(..)) {
        format!("({t})")
    } else {
        t.to_string()
    }
}

// Connective precedence for rendering and parsing: `->` is 1 and associates
// to the right, `|` is 2, `&` is 3, negation and quantifiers are 4.
fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Imp(..) => 1,
        Formula::Or(..) => 2,
        Formula::And(..) => 3,
        _ => 4,
    }
}

fn render_formula(f: &Formula, min_prec: u8, out: &mut String) {
    let prec = precedence(f);
    let parens = prec < min_prec;
    if parens {
        out.push('(');
    }
    match f {
        Formula::Eq(a, b) => {
            out.push_str(&format!("{a} = {b}"));
        }
        Formula::Lt(a, b) => {
            out.push_str(&format!("{a} < {b}"));
        }
        Formula::Not(inner) => {
            out.push('~');
            render_formula(inner, 4, out);
        }
        Formula::And(a, b) => {
            render_formula(a, 3, out);
            out.push_str(" & ");
            render_formula(b, 4, out);
        }
        Formula::Or(a, b) => {
            render_formula(a, 2, out);
            out.push_str(" | ");
            render_formula(b, 3, out);
        }
        Formula::Imp(a, b) => {
            render_formula(a, 2, out);
            out.push_str(" -> ");
            render_formula(b, 1, out);
        }
        Formula::Exists(v, body) => {
            out.push_str(&format!("E{v} ("));
            render_formula(body, 0, out);
            out.push(')');
        }
        Formula::Forall(v, body) => {
            out.push_str(&format!("A{v} ("));
            render_formula(body, 0, out);
            out.push(')');
        }
        Formula::BoundedExists(v, t, body) => {
            out.push_str(&format!("E{v}<{} (", render_bound(t)));
            render_formula(body, 0, out);
            out.push(')');
        }
        Formula::BoundedForall(v, t, body) => {
            out.push_str(&format!("A{v}<{} (", render_bound(t)));
            render_formula(body, 0, out);
            out.push(')');
        }
    }
    if parens {
        out.push(')');
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        render_formula(self, 0, &mut out);
        f.write_str(&out)
    }
}
