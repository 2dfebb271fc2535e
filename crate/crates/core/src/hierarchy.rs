//! Ackermann evaluation with an ordinal termination witness, plus the Hardy
//! and fast-growing hierarchies driven by fundamental sequences.
//!
//! Every function here walks a recurrence whose value grows by one per step,
//! so anything beyond desk scale is cut off by an explicit, configurable cap
//! rather than silently attempted. A cap trip is a statement about cost, not
//! a wrong answer.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::descent::fundamental;
use crate::ordinal::{Ordinal, OrdinalKind};

/// Guards for the Ackermann evaluators. `max_m`/`max_n` bound the arguments
/// (any n is allowed strictly below `max_m`); `max_nodes` additionally bounds
/// the size of a recorded call tree.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct AckCaps {
    pub max_m: u64,
    pub max_n: u64,
    pub max_nodes: u64,
}

impl Default for AckCaps {
    fn default() -> Self {
        AckCaps { max_m: 3, max_n: 12, max_nodes: 1_000_000 }
    }
}

/// Guards for the fast-growing hierarchy: any n up to level `max_k`, plus the
/// fringe of level `max_k + 1` for n at most `boundary_n`, all under a shared
/// step budget.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FgCaps {
    pub max_k: u64,
    pub boundary_n: u64,
    pub fuel: u64,
}

impl Default for FgCaps {
    fn default() -> Self {
        FgCaps { max_k: 2, boundary_n: 2, fuel: 100_000_000 }
    }
}

pub const DEFAULT_HARDY_FUEL: u64 = 10_000_000;

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum HierarchyError {
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("the index ordinal must be below w^w")]
    NotBelowOmegaOmega,
}

/// One recorded Ackermann call: its arguments, its value, its termination
/// measure, and the calls it made, in evaluation order.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CallTree {
    pub m: u64,
    pub n: u64,
    pub value: u64,
    pub measure: Ordinal,
    pub children: Vec<CallTree>,
}

/// Verdict of re-checking a call tree, with the path of child indices from
/// the root to the first node that fails.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceCheck {
    Valid,
    BadEdge(Vec<usize>),
    BadValue(Vec<usize>),
    BadMeasure(Vec<usize>),
}

/// The measure w*m + n that every recursive Ackermann call strictly shrinks.
pub fn ack_measure(m: u64, n: u64) -> Ordinal {
    Ordinal::omega().mul(&Ordinal::from_u64(m)).add(&Ordinal::from_u64(n))
}

pub fn ackermann(m: u64, n: u64) -> Result<u64, HierarchyError> {
    ackermann_with(&AckCaps::default(), m, n)
}

/// Iterative Ackermann evaluation over an explicit stack of pending levels.
pub fn ackermann_with(caps: &AckCaps, m: u64, n: u64) -> Result<u64, HierarchyError> {
    check_ack_guard(caps, m, n)?;
    let mut pending = vec![m];
    let mut acc = n;
    while let Some(level) = pending.pop() {
        if level == 0 {
            acc = acc
                .checked_add(1)
                .ok_or_else(|| HierarchyError::CapExceeded("value exceeds u64".into()))?;
        } else if acc == 0 {
            acc = 1;
            pending.push(level - 1);
        } else {
            acc -= 1;
            pending.push(level - 1);
            pending.push(level);
        }
    }
    Ok(acc)
}

pub fn ackermann_traced(m: u64, n: u64) -> Result<CallTree, HierarchyError> {
    ackermann_traced_with(&AckCaps::default(), m, n)
}

/// Records the complete call tree. Nothing is shared or memoized: the tree is
/// the whole witness, so its size is held under `caps.max_nodes`.
pub fn ackermann_traced_with(caps: &AckCaps, m: u64, n: u64) -> Result<CallTree, HierarchyError> {
    check_ack_guard(caps, m, n)?;
    let mut budget = caps.max_nodes;
    build_call_tree(m, n, &mut budget)
}

fn check_ack_guard(caps: &AckCaps, m: u64, n: u64) -> Result<(), HierarchyError> {
    if m < caps.max_m || (m == caps.max_m && n <= caps.max_n) {
        Ok(())
    } else {
        Err(HierarchyError::CapExceeded(format!(
            "ackermann({m}, {n}) is out of range: need m < {} or m = {} with n <= {}",
            caps.max_m, caps.max_m, caps.max_n
        )))
    }
}

fn build_call_tree(m: u64, n: u64, budget: &mut u64) -> Result<CallTree, HierarchyError> {
    if *budget == 0 {
        return Err(HierarchyError::CapExceeded("trace node budget exhausted".into()));
    }
    *budget -= 1;
    let measure = ack_measure(m, n);
    if m == 0 {
        return Ok(CallTree { m, n, value: n + 1, measure, children: Vec::new() });
    }
    if n == 0 {
        let child = build_call_tree(m - 1, 1, budget)?;
        let value = child.value;
        return Ok(CallTree { m, n, value, measure, children: vec![child] });
    }
    let inner = build_call_tree(m, n - 1, budget)?;
    let outer = build_call_tree(m - 1, inner.value, budget)?;
    let value = outer.value;
    Ok(CallTree { m, n, value, measure, children: vec![inner, outer] })
}

/// Independently re-checks a call tree: stored measures, strict measure
/// decrease along every edge, and each value against the recurrence shape.
/// The first failure in preorder wins.
pub fn validate_trace(t: &CallTree) -> TraceCheck {
    let mut path = Vec::new();
    validate_node(t, &mut path)
}

fn validate_node(t: &CallTree, path: &mut Vec<usize>) -> TraceCheck {
    if t.measure != ack_measure(t.m, t.n) {
        return TraceCheck::BadMeasure(path.clone());
    }
    let shape_ok = match (t.m, t.n, t.children.as_slice()) {
        (0, n, []) => t.value == n + 1,
        (m, 0, [c]) if m > 0 => c.m == m - 1 && c.n == 1 && t.value == c.value,
        (m, n, [c1, c2]) if m > 0 && n > 0 => {
            c1.m == m && c1.n == n - 1 && c2.m == m - 1 && c2.n == c1.value && t.value == c2.value
        }
        _ => false,
    };
    if !shape_ok {
        return TraceCheck::BadValue(path.clone());
    }
    for (i, child) in t.children.iter().enumerate() {
        path.push(i);
        if child.measure >= t.measure {
            return TraceCheck::BadEdge(path.clone());
        }
        let verdict = validate_node(child, path);
        if verdict != TraceCheck::Valid {
            return verdict;
        }
        path.pop();
    }
    TraceCheck::Valid
}

pub fn hardy(a: &Ordinal, n: u64) -> Result<u64, HierarchyError> {
    hardy_with_fuel(a, n, DEFAULT_HARDY_FUEL)
}

/// Hardy hierarchy: H_0(n) = n, H_(a+1)(n) = H_a(n+1), and at a limit
/// H_a(n) = H_(a[n])(n). Each rewrite costs one unit of fuel.
pub fn hardy_with_fuel(a: &Ordinal, n: u64, fuel: u64) -> Result<u64, HierarchyError> {
    if !a.below_omega_omega() {
        return Err(HierarchyError::NotBelowOmegaOmega);
    }
    let mut cur = a.clone();
    let mut val = n;
    let mut left = fuel;
    loop {
        let kind = cur.kind();
        if kind == OrdinalKind::Zero {
            return Ok(val);
        }
        if left == 0 {
            return Err(HierarchyError::CapExceeded(format!(
                "hardy fuel ({fuel} steps) exhausted"
            )));
        }
        left -= 1;
        if kind == OrdinalKind::Successor {
            cur = cur.predecessor().expect("successor");
            val = val
                .checked_add(1)
                .ok_or_else(|| HierarchyError::CapExceeded("value exceeds u64".into()))?;
        } else {
            cur = fundamental(&cur, val).expect("limit");
        }
    }
}

pub fn fast_growing(k: u64, n: u64) -> Result<u64, HierarchyError> {
    fast_growing_with(&FgCaps::default(), k, n)
}

/// Fast-growing hierarchy: F_0(n) = n+1 and F_(k+1)(n) = F_k applied n+1
/// times to n. Fuel is charged per base application, which for these levels
/// tracks the value itself, so the budget is an honest cost bound.
pub fn fast_growing_with(caps: &FgCaps, k: u64, n: u64) -> Result<u64, HierarchyError> {
    let in_range = k <= caps.max_k || (k == caps.max_k + 1 && n <= caps.boundary_n);
    if !in_range {
        return Err(HierarchyError::CapExceeded(format!(
            "fast_growing({k}, {n}) is out of range: need k <= {} or k = {} with n <= {}",
            caps.max_k,
            caps.max_k + 1,
            caps.boundary_n
        )));
    }
    let mut left = caps.fuel;
    fg(k, n, caps.fuel, &mut left)
}

fn fg(k: u64, n: u64, fuel: u64, left: &mut u64) -> Result<u64, HierarchyError> {
    if k == 0 {
        if *left == 0 {
            return Err(HierarchyError::CapExceeded(format!(
                "fast-growing fuel ({fuel} steps) exhausted"
            )));
        }
        *left -= 1;
        return n
            .checked_add(1)
            .ok_or_else(|| HierarchyError::CapExceeded("value exceeds u64".into()));
    }
    let mut x = n;
    for _ in 0..=n {
        x = fg(k - 1, x, fuel, left)?;
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Ordinal {
        s.parse().expect(s)
    }

    // Textbook double recursion, kept tiny and obviously right, as the
    // reference the evaluators must reproduce.
    fn naive_ackermann(m: u64, n: u64) -> u64 {
        if m == 0 {
            n + 1
        } else if n == 0 {
            naive_ackermann(m - 1, 1)
        } else {
            naive_ackermann(m - 1, naive_ackermann(m, n - 1))
        }
    }

    #[test]
    fn ackermann_matches_the_naive_recursion() {
        assert_eq!(ackermann(0, 5).unwrap(), 6);
        assert_eq!(ackermann(2, 3).unwrap(), 9);
        assert_eq!(ackermann(3, 3).unwrap(), 61);
        for m in 0..=3u64 {
            for n in 0..=5u64 {
                assert_eq!(ackermann(m, n).unwrap(), naive_ackermann(m, n), "A({m},{n})");
            }
        }
        assert_eq!(ackermann(2, 1000).unwrap(), 2003);
    }

    #[test]
    fn ackermann_guard_trips_out_of_range() {
        assert!(matches!(ackermann(4, 0), Err(HierarchyError::CapExceeded(_))));
        assert!(matches!(ackermann(3, 13), Err(HierarchyError::CapExceeded(_))));
        assert_eq!(ackermann(3, 8).unwrap(), 2045);
        let tight = AckCaps { max_m: 2, max_n: 3, max_nodes: 1_000 };
        assert!(matches!(ackermann_with(&tight, 2, 4), Err(HierarchyError::CapExceeded(_))));
        assert_eq!(ackermann_with(&tight, 1, 100).unwrap(), 102);
    }

    #[test]
    fn traced_roots_match_and_leaves_are_bare() {
        for m in 0..=3u64 {
            for n in 0..=4u64 {
                let tree = ackermann_traced(m, n).unwrap();
                assert_eq!(tree.value, ackermann(m, n).unwrap(), "A({m},{n})");
            }
        }
        let leaf = ackermann_traced(0, 9).unwrap();
        assert!(leaf.children.is_empty());
        assert_eq!(leaf.value, 10);
    }

    #[test]
    fn the_three_call_unfolding_of_one_one() {
        let t = ackermann_traced(1, 1).unwrap();
        assert_eq!(t.measure, o("w + 1"));
        assert_eq!(t.value, 3);
        assert_eq!(t.children.len(), 2);
        assert_eq!(t.children[0].measure, o("w"));
        assert_eq!(t.children[0].value, 2);
        assert_eq!(t.children[1].measure, o("2"));
        for c in &t.children {
            assert!(c.measure < t.measure);
        }
    }

    #[test]
    fn validate_accepts_freshly_built_trees() {
        let t = ackermann_traced(2, 2).unwrap();
        assert_eq!(t.measure, o("w*2 + 2"));
        assert_eq!(validate_trace(&t), TraceCheck::Valid);
        assert_eq!(validate_trace(&ackermann_traced(2, 3).unwrap()), TraceCheck::Valid);
        assert_eq!(validate_trace(&ackermann_traced(3, 3).unwrap()), TraceCheck::Valid);
    }

    #[test]
    fn validate_pinpoints_tampering() {
        let mut t = ackermann_traced(2, 2).unwrap();
        t.value += 1;
        assert_eq!(validate_trace(&t), TraceCheck::BadValue(vec![]));

        // Still descending, but no longer w*m + n for the child's own labels.
        let mut t = ackermann_traced(1, 1).unwrap();
        t.children[1].measure = o("3");
        assert_eq!(validate_trace(&t), TraceCheck::BadMeasure(vec![1]));

        // A child measure at or above the parent breaks the edge before the
        // walk ever reaches the child's own checks.
        let mut t = ackermann_traced(1, 1).unwrap();
        t.children[0].measure = o("w*2");
        assert_eq!(validate_trace(&t), TraceCheck::BadEdge(vec![0]));

        // Relabeling a child breaks the parent's recurrence shape first.
        let mut t = ackermann_traced(2, 2).unwrap();
        t.children[1].m = 2;
        t.children[1].n = 2;
        t.children[1].measure = o("w*2 + 2");
        assert_eq!(validate_trace(&t), TraceCheck::BadValue(vec![]));

        // A deep defect surfaces at its parent, the first preorder node whose
        // recurrence no longer adds up.
        let mut t = ackermann_traced(2, 2).unwrap();
        t.children[0].children[1].value += 2;
        assert_eq!(validate_trace(&t), TraceCheck::BadValue(vec![0]));
    }

    #[test]
    fn node_budget_stops_runaway_traces() {
        let caps = AckCaps { max_nodes: 10, ..AckCaps::default() };
        assert!(matches!(
            ackermann_traced_with(&caps, 2, 3),
            Err(HierarchyError::CapExceeded(_))
        ));
    }

    #[test]
    fn call_tree_serializes_with_flat_fields() {
        let t = ackermann_traced(1, 0).unwrap();
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(
            json,
            r#"{"m":1,"n":0,"value":2,"measure":"w","children":[{"m":0,"n":1,"value":2,"measure":"1","children":[]}]}"#
        );
        let back: CallTree = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
        assert_eq!(validate_trace(&back), TraceCheck::Valid);
    }

    #[test]
    fn hardy_identities() {
        assert_eq!(hardy(&Ordinal::zero(), 9).unwrap(), 9);
        for n in 0..=6u64 {
            assert_eq!(hardy(&o("w"), n).unwrap(), 2 * n, "H_w({n})");
        }
        assert_eq!(hardy(&o("w^2"), 2).unwrap(), 8);
        for n in 0..=4u64 {
            for k in 1..=3u64 {
                let a = Ordinal::omega().mul(&Ordinal::from_u64(k));
                assert_eq!(hardy(&a, n).unwrap(), (1 << k) * n, "H_(w*{k})({n})");
            }
        }
    }

    #[test]
    fn hardy_successor_law() {
        // Indexes like w^2*2 overrun any reasonable fuel for n >= 3; a cap
        // trip on both sides is the expected behavior there, and the two
        // sides' step counts differ by exactly one, so their ok-ness agrees.
        // Small fuel keeps the trips cheap without getting near any pair's
        // actual step count.
        let fuel = 200_000;
        let mut computed = 0;
        for a in Ordinal::enumerate_below(&o("w^3"), 5) {
            for n in 0..=3u64 {
                let up = a.add(&Ordinal::one());
                let lhs = hardy_with_fuel(&up, n, fuel);
                let rhs = hardy_with_fuel(&a, n + 1, fuel);
                assert_eq!(lhs.is_ok(), rhs.is_ok(), "H_({a}+1)({n})");
                if let (Ok(l), Ok(r)) = (lhs, rhs) {
                    assert_eq!(l, r, "H_({a}+1)({n})");
                    computed += 1;
                }
            }
        }
        assert!(computed >= 40, "only {computed} pairs landed in range");
    }

    #[test]
    fn hardy_guards() {
        assert_eq!(hardy(&o("w^w"), 2), Err(HierarchyError::NotBelowOmegaOmega));
        assert!(matches!(
            hardy_with_fuel(&o("w^3"), 3, 1_000),
            Err(HierarchyError::CapExceeded(_))
        ));
        // H_(w^2)(2) rewrites exactly nine times on its way to 8.
        assert_eq!(hardy_with_fuel(&o("w^2"), 2, 9).unwrap(), 8);
        assert!(matches!(
            hardy_with_fuel(&o("w^2"), 2, 8),
            Err(HierarchyError::CapExceeded(_))
        ));
    }

    #[test]
    fn fast_growing_identities() {
        assert_eq!(fast_growing(0, 7).unwrap(), 8);
        for n in 0..=8u64 {
            assert_eq!(fast_growing(1, n).unwrap(), 2 * n + 1, "F_1({n})");
        }
        assert_eq!(fast_growing(2, 2).unwrap(), 23);
        assert_eq!(fast_growing(3, 0).unwrap(), 1);
        assert_eq!(fast_growing(3, 1).unwrap(), 2047);
    }

    #[test]
    fn fast_growing_guards_and_fuel() {
        assert!(matches!(fast_growing(4, 0), Err(HierarchyError::CapExceeded(_))));
        assert!(matches!(fast_growing(3, 3), Err(HierarchyError::CapExceeded(_))));
        // In range by level, infeasible by cost: the fuel answers for it.
        let caps = FgCaps { fuel: 1_000_000, ..FgCaps::default() };
        assert!(matches!(
            fast_growing_with(&caps, 3, 2),
            Err(HierarchyError::CapExceeded(_))
        ));
    }

    #[test]
    fn faster_levels_dominate() {
        for k in 0..=1u64 {
            for n in 1..=6u64 {
                assert!(fast_growing(k + 1, n).unwrap() > fast_growing(k, n).unwrap());
            }
        }
        for n in 1..=6u64 {
            assert!(fast_growing(2, n).unwrap() > fast_growing(1, n).unwrap());
        }
        assert!(fast_growing(3, 1).unwrap() > fast_growing(2, 1).unwrap());
    }

    #[test]
    fn measures_live_below_omega_squared() {
        for m in 0..=3u64 {
            for n in 0..=5u64 {
                let mu = ack_measure(m, n);
                assert!(mu < o("w^2"));
                assert!(mu.below_omega_omega());
            }
        }
        assert_eq!(ack_measure(0, 0), Ordinal::zero());
        assert_eq!(ack_measure(2, 0), o("w*2"));
        assert_eq!(ack_measure(0, 4), o("4"));
    }
}
