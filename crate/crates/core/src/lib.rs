//! Pseudo-polynomial functions over finite distributive lattices.
//!
//! The crate represents a finite distributive lattice `Y` as a ∪/∩-closed
//! family of subsets of a finite universe, evaluates lattice polynomial
//! functions and Sugeno integrals in disjunctive normal form, and, for a
//! tabulated function `f: X1 × … × Xn → Y`, decides whether `f` factors as
//! `p(φ1(x1), …, φn(xn))` and enumerates every such factorization.

pub mod chains;
pub mod cli;
pub mod crosscheck;
pub mod factorization;
pub mod io;
pub mod lattice;
pub mod oracle;
pub mod polynomial;
pub mod report;
pub mod samples;

pub use factorization::{FunctionTable, PhiBounds, PhiVector};
pub use lattice::{Lattice, Subset, Universe};
pub use polynomial::Polynomial;
