//! Exact engine for chromatic and Redei-Berge symmetric functions.
//!
//! The crate works over exact rationals throughout and covers:
//!
//! * [`combinat`]: partitions, compositions, set partitions and the partition lattice;
//! * [`symfn`]: `Sym` in the `m, e, p, h, s` bases and `QSym` in the `M, F` bases;
//! * [`ncsym`]: symmetric functions in noncommuting variables (`m, e, p, h`);
//! * [`structures`]: graphs, digraphs, posets and the constructions on them;
//! * [`invariants`]: `X_G`, `U_X`, `Y_G`, `W_X` and their specializations;
//! * [`decomp`]: the bags-of-sticks breakdown, path covers and cover polynomials;
//! * [`verify`]: named exhaustive verification suites.
//!
//! Vertex and element indices are 0-based in the Rust API; every text and
//! JSON encoding is 1-based.

pub mod arith;
pub mod combinat;
pub mod decomp;
pub mod error;
pub mod invariants;
pub mod json;
pub mod ncsym;
pub mod par;
pub mod structures;
pub mod symfn;
pub mod verify;

pub use arith::{BiPolynomial, Rational, UniPolynomial};
pub use combinat::{Composition, IntPartition, PositionSubset, SetPartition};
pub use error::{Error, Result};
pub use ncsym::{NCSymBasis, NCSymElement};
pub use par::Exec;
pub use structures::{Digraph, Graph, Poset};
pub use symfn::{QSymBasis, QSymElement, SymBasis, SymElement};
