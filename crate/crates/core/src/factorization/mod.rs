//! Deciding pseudo-polynomiality of a tabulated function and enumerating all
//! of its factorizations `f(x) = p(φ1(x1), …, φn(xn))`.
//!
//! The pipeline is:
//!
//! 1. [`check_boundary`] (or [`infer_bounds`] when no designated elements are
//!    given) establishes `f(x_k^0) ≤ f(x) ≤ f(x_k^1)`.
//! 2. [`phi_bounds`] computes the least and greatest admissible inner maps
//!    `Φk−`, `Φk+`; [`is_pseudo_polynomial`] checks `Φk− ≤ Φk+`.
//! 3. Every inner map between them works with [`p0`]; for a fixed choice,
//!    [`interpolation_bounds`] gives the least and greatest outer polynomial,
//!    and [`enumerate_factorizations`] walks all pairs.

use std::fmt;

use thiserror::Error;

use crate::lattice::{Lattice, LatticeError, Subset};
use crate::polynomial::{Polynomial, PolynomialError};

mod boundary;
mod enumerate;
mod interpolation;
mod phi;
mod table;

pub use boundary::{check_boundary, infer_bounds, resolve_bounds, BoundsResolution, InferredBounds};
pub use enumerate::{
    collect_factorizations, count_factorizations, enumerate_factorizations, phi_candidates, Counts, Enumeration,
    FactorizationIter,
};
pub use interpolation::{interpolation_bounds, p0, verify_factorization, InterpolationBounds, Route, Verification};
pub use phi::{
    check_phi_admissible, check_pseudo_median_decomposable, is_pseudo_polynomial, median_solve_check, phi_bounds,
    phi_trace, PhiTrace, TraceTerm,
};
pub use table::{Domain, DomainBounds, FunctionTable, Tuples};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("invalid table: {0}")]
    InvalidTable(String),
    #[error("coordinate {} has no designated elements", coordinate + 1)]
    BoundsMissing { coordinate: usize },
    #[error("boundary condition violated: {0}")]
    BoundaryViolated(BoundaryWitness),
    #[error("inner map violates its boundary condition: {0}")]
    Bc1Violated(Bc1Witness),
    #[error("inner map is not admissible: {0}")]
    PhiNotAdmissible(AdmissibilityWitness),
    #[error("function is not pseudo-polynomial")]
    NotPseudoPolynomial(PseudoPolyWitness),
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("inner map for coordinate {} has {got} values, domain has {expected}", coordinate + 1)]
    DomainMismatch { coordinate: usize, expected: usize, got: usize },
    #[error("enumeration cap of {cap} factorizations exceeded")]
    CapExceeded { cap: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("verification routes disagree on {0}")]
    RouteDisagreement(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Polynomial(#[from] PolynomialError),
}

/// Outcome of a check that carries a witness when it fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Verdict<V> {
        match self {
            Verdict::Holds => Verdict::Holds,
            Verdict::Fails(w) => Verdict::Fails(f(w)),
        }
    }
}

/// Which side of a two-sided inequality failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Lower,
    Upper,
}

/// `f(x_k^0) ≰ f(x)` (lower) or `f(x) ≰ f(x_k^1)` (upper).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryWitness {
    pub coordinate: usize,
    pub tuple: Vec<usize>,
    pub side: Side,
    pub value: Subset,
    pub bound: Subset,
}

impl fmt::Display for BoundaryWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = match self.side {
            Side::Lower => "f(x_k^0) ≰ f(x)",
            Side::Upper => "f(x) ≰ f(x_k^1)",
        };
        write!(f, "coordinate {} at tuple {:?}: {side}", self.coordinate + 1, self.tuple)
    }
}

/// `φk(0) ≰ φk(a)` (lower) or `φk(a) ≰ φk(1)` (upper).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bc1Witness {
    pub coordinate: usize,
    pub point: usize,
    pub side: Side,
}

impl fmt::Display for Bc1Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = match self.side {
            Side::Lower => "φ(0) ≰ φ(a)",
            Side::Upper => "φ(a) ≰ φ(1)",
        };
        write!(f, "coordinate {} at point #{}: {side}", self.coordinate + 1, self.point)
    }
}

/// `Φk−(a) ≰ φk(a)` (lower) or `φk(a) ≰ Φk+(a)` (upper).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityWitness {
    pub coordinate: usize,
    pub point: usize,
    pub side: Side,
    pub phi: Subset,
    pub bound: Subset,
}

impl fmt::Display for AdmissibilityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = match self.side {
            Side::Lower => "Φ−(a) ≰ φ(a)",
            Side::Upper => "φ(a) ≰ Φ+(a)",
        };
        write!(f, "coordinate {} at point #{}: {side}", self.coordinate + 1, self.point)
    }
}

/// A joinand of `Φk−(a)` that exceeds a meetand of `Φk+(a)`:
/// `cl(f(y) ∧ ¬f(y_k^0)) ≰ int(f(x) ∨ ¬f(x_k^1))` with `x_k = y_k = a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiOrderWitness {
    pub coordinate: usize,
    pub point: usize,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub joinand: Subset,
    pub meetand: Subset,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PseudoPolyWitness {
    Boundary(BoundaryWitness),
    PhiOrder(PhiOrderWitness),
}

/// `f(x) ≠ med(f(x_k^0), φk(x_k), f(x_k^1))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MedianWitness {
    pub coordinate: usize,
    pub tuple: Vec<usize>,
    pub expected: Subset,
    pub got: Subset,
}

/// `f(x) ≠ p(φ(x))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleWitness {
    pub tuple: Vec<usize>,
    pub expected: Subset,
    pub got: Subset,
}

/// One inner map per coordinate, `maps[k][a] = φk(a)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhiVector {
    maps: Vec<Vec<Subset>>,
}

impl PhiVector {
    pub fn new(maps: Vec<Vec<Subset>>) -> Self {
        PhiVector { maps }
    }

    pub fn maps(&self) -> &[Vec<Subset>] {
        &self.maps
    }

    pub fn map(&self, k: usize) -> &[Subset] {
        &self.maps[k]
    }

    pub fn get(&self, k: usize, a: usize) -> Subset {
        self.maps[k][a]
    }

    pub fn set(&mut self, k: usize, a: usize, value: Subset) {
        self.maps[k][a] = value;
    }

    pub fn arity(&self) -> usize {
        self.maps.len()
    }

    /// `φ(x)` for the tuple at `index` of `table`.
    pub fn apply(&self, table: &FunctionTable, index: usize) -> Vec<Subset> {
        (0..self.maps.len()).map(|k| self.maps[k][table.coord(index, k)]).collect()
    }

    /// Checks shape and carrier membership against `table`.
    pub fn validate(&self, table: &FunctionTable) -> Result<(), FactorError> {
        if self.maps.len() != table.arity() {
            return Err(FactorError::ArityMismatch { expected: table.arity(), got: self.maps.len() });
        }
        for (k, m) in self.maps.iter().enumerate() {
            if m.len() != table.domain(k).len() {
                return Err(FactorError::DomainMismatch {
                    coordinate: k,
                    expected: table.domain(k).len(),
                    got: m.len(),
                });
            }
            for &v in m {
                table.lattice().check(v)?;
            }
        }
        Ok(())
    }

    /// `φk(0) ≤ φk(a) ≤ φk(1)` for every coordinate and point.
    pub fn check_bc1(&self, bounds: &[DomainBounds]) -> Verdict<Bc1Witness> {
        for (k, m) in self.maps.iter().enumerate() {
            let (lo, hi) = (m[bounds[k].zero], m[bounds[k].one]);
            for (a, &v) in m.iter().enumerate() {
                if !lo.is_subset(v) {
                    return Verdict::Fails(Bc1Witness { coordinate: k, point: a, side: Side::Lower });
                }
                if !v.is_subset(hi) {
                    return Verdict::Fails(Bc1Witness { coordinate: k, point: a, side: Side::Upper });
                }
            }
        }
        Verdict::Holds
    }
}

/// The extremal inner maps `Φ−` and `Φ+`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiBounds {
    pub minus: PhiVector,
    pub plus: PhiVector,
}

impl PhiBounds {
    /// `Φk−(a) ≤ Φk+(a)` everywhere.
    pub fn is_ordered(&self) -> bool {
        self.minus.maps().iter().zip(self.plus.maps()).all(|(lo, hi)| lo.iter().zip(hi).all(|(a, b)| a.is_subset(*b)))
    }

    /// Carrier elements between `Φk−(a)` and `Φk+(a)`, in carrier order.
    pub fn interval(&self, lattice: &Lattice, k: usize, a: usize) -> Vec<Subset> {
        let (lo, hi) = (self.minus.get(k, a), self.plus.get(k, a));
        lattice.elements().iter().copied().filter(|y| lo.is_subset(*y) && y.is_subset(hi)).collect()
    }
}

/// A candidate decomposition `f = p ∘ φ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub phi: PhiVector,
    pub p: Polynomial,
    pub verified: bool,
}
