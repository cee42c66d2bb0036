//! Exact sparse elements of `QSym` (bases `M`, `F`) and `Sym` (bases `m, e, p, h, s`).
//!
//! `m` is the canonical form inside `Sym` and `M` inside `QSym`; every other
//! basis is reached through cached transition matrices.

mod qsym;
mod sym;
mod transition;

use std::fmt;

pub use qsym::{QSymBasis, QSymElement};
pub use sym::{SymBasis, SymElement};
pub use transition::transition_matrix;

use crate::arith::Rational;

/// Outcome of a positivity test: either every coefficient is nonnegative or
/// the first key (in key order) with a negative coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Positivity<K> {
    Positive,
    Negative { key: K, coeff: Rational },
}

impl<K> Positivity<K> {
    pub fn is_positive(&self) -> bool {
        matches!(self, Positivity::Positive)
    }
}

impl<K: fmt::Display> fmt::Display for Positivity<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Positivity::Positive => write!(f, "positive"),
            Positivity::Negative { key, coeff } => write!(f, "negative at {key} ({coeff})"),
        }
    }
}
