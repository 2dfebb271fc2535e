//! Ordinal notations below epsilon_0 and the machinery they support:
//! strict-descent traces, fundamental sequences, the Ackermann/Hardy/
//! fast-growing hierarchies with termination witnesses, Dickson's lemma
//! with an ordinal rank for bad sequences, and a small first-order
//! arithmetic formula lab with a bounded-model evaluator.

pub mod descent;
pub mod dickson;
pub mod formula;
pub mod gen;
pub mod hierarchy;
pub mod ordinal;

pub use ordinal::{Ordinal, OrdinalKind};
