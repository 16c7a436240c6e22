//! Specializations for a carrier that is a finite chain.
//!
//! On a chain every atom of the universe has a rank, the level of the
//! first chain element containing it. Closure and interior then reduce to a
//! maximum and a minimum over ranks, and the extremal inner maps can be read
//! off from how each value sits inside `[f(x_k^0), f(x_k^1)]`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::factorization::{
    check_boundary, BoundaryWitness, DomainBounds, FactorError, FunctionTable, PhiBounds, PhiVector, Verdict,
};
use crate::lattice::{Lattice, Subset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("the lattice is not a chain: {a} and {b} are incomparable")]
    NotAChain { a: String, b: String },
    #[error(transparent)]
    Factor(#[from] FactorError),
}

/// A chain carrier `[0] ⊂ [1] ⊂ … ⊂ [m]` with the rank of each atom.
#[derive(Debug, Clone)]
pub struct ChainContext<'a> {
    lattice: &'a Lattice,
    levels: Vec<Subset>,
    rank: Vec<usize>,
}

impl<'a> ChainContext<'a> {
    pub fn new(lattice: &'a Lattice) -> Result<Self, ChainError> {
        let levels = lattice.elements().to_vec();
        for w in levels.windows(2) {
            if !w[0].is_subset(w[1]) {
                return Err(ChainError::NotAChain { a: lattice.name(w[0]), b: lattice.name(w[1]) });
            }
        }
        let atoms = lattice.universe().len();
        let mut rank = vec![0; atoms];
        for (atom, r) in rank.iter_mut().enumerate() {
            *r = levels.iter().position(|l| l.contains(atom)).expect("the top element is the universe");
        }
        Ok(ChainContext { lattice, levels, rank })
    }

    pub fn lattice(&self) -> &Lattice {
        self.lattice
    }

    /// Number of steps `m` in the chain.
    pub fn height(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn element(&self, level: usize) -> Subset {
        self.levels[level]
    }

    /// The `k` with `s = [k]`.
    pub fn level(&self, s: Subset) -> Option<usize> {
        self.levels.iter().position(|&l| l == s)
    }

    fn level_of(&self, s: Subset) -> usize {
        self.level(s).expect("element of the chain")
    }
}

/// `cl(S) = [max rank over S]`, with the empty maximum taken as 0.
pub fn chain_closure(ctx: &ChainContext<'_>, s: Subset) -> Subset {
    let level = s.atoms().filter(|&a| a < ctx.rank.len()).map(|a| ctx.rank[a]).max().unwrap_or(0);
    ctx.levels[level]
}

/// `int(S) = [min rank over the complement of S, minus 1]`, or the top when
/// `S` covers the universe.
pub fn chain_interior(ctx: &ChainContext<'_>, s: Subset) -> Subset {
    let level = (0..ctx.rank.len()).filter(|&a| !s.contains(a)).map(|a| ctx.rank[a] - 1).min().unwrap_or(ctx.height());
    ctx.levels[level]
}

/// Values `f(x)` with `x_k = a`, grouped by where they sit in
/// `[f(x_k^0), f(x_k^1)]`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WluSets {
    /// `f(x_k^0) < f(x) < f(x_k^1)`
    pub w: BTreeSet<Subset>,
    /// `f(x_k^0) < f(x) = f(x_k^1)`
    pub l: BTreeSet<Subset>,
    /// `f(x_k^0) = f(x) < f(x_k^1)`
    pub u: BTreeSet<Subset>,
}

fn require_chain_boundary(f: &FunctionTable) -> Result<(ChainContext<'_>, Vec<DomainBounds>), ChainError> {
    let ctx = ChainContext::new(f.lattice())?;
    let bounds = f.require_bounds()?;
    if let Verdict::Fails(w) = check_boundary(f)? {
        return Err(FactorError::BoundaryViolated(w).into());
    }
    Ok((ctx, bounds))
}

fn wlu_unchecked(f: &FunctionTable, b: DomainBounds, k: usize, a: usize) -> WluSets {
    let mut sets = WluSets::default();
    for idx in f.slice_indices(k, a) {
        let v = f.value_at(idx);
        let lo = f.value_at(f.substitute(idx, k, b.zero));
        let hi = f.value_at(f.substitute(idx, k, b.one));
        match (lo != v, v != hi) {
            (true, true) => sets.w.insert(v),
            (true, false) => sets.l.insert(v),
            (false, true) => sets.u.insert(v),
            (false, false) => false,
        };
    }
    sets
}

pub fn wlu_sets(f: &FunctionTable, k: usize, a: usize) -> Result<WluSets, ChainError> {
    let (_, bounds) = require_chain_boundary(f)?;
    Ok(wlu_unchecked(f, bounds[k], k, a))
}

/// `W`, `L`, `U` for every coordinate and point.
pub fn all_wlu_sets(f: &FunctionTable) -> Result<Vec<Vec<WluSets>>, ChainError> {
    let (_, bounds) = require_chain_boundary(f)?;
    Ok((0..f.arity()).map(|k| (0..f.domain(k).len()).map(|a| wlu_unchecked(f, bounds[k], k, a)).collect()).collect())
}

/// `Φk−(a) = ⋁L ∨ ⋁W` and `Φk+(a) = ⋀U ∧ ⋀W`.
pub fn chain_phi_bounds(f: &FunctionTable) -> Result<PhiBounds, ChainError> {
    let (ctx, bounds) = require_chain_boundary(f)?;
    let (bottom, top) = (ctx.element(0), ctx.element(ctx.height()));
    let mut minus = Vec::with_capacity(f.arity());
    let mut plus = Vec::with_capacity(f.arity());
    for (k, &b) in bounds.iter().enumerate() {
        let mut lo = Vec::new();
        let mut hi = Vec::new();
        for a in 0..f.domain(k).len() {
            let s = wlu_unchecked(f, b, k, a);
            lo.push(s.l.iter().chain(&s.w).copied().max().unwrap_or(bottom));
            hi.push(s.u.iter().chain(&s.w).copied().min().unwrap_or(top));
        }
        minus.push(lo);
        plus.push(hi);
    }
    Ok(PhiBounds { minus: PhiVector::new(minus), plus: PhiVector::new(plus) })
}

/// Conditions (a) `W ⊆ {φk(a)}`, (b) `φk(a) ≥ ⋁L`, (c) `φk(a) ≤ ⋀U`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuffConditions {
    pub a: bool,
    pub b: bool,
    pub c: bool,
}

impl SuffConditions {
    pub fn all(&self) -> bool {
        self.a && self.b && self.c
    }
}

/// The three conditions at every coordinate and point; all of them hold
/// exactly when `Φ− ≤ φ ≤ Φ+`.
pub fn suff_conditions(f: &FunctionTable, phi: &PhiVector) -> Result<Vec<Vec<SuffConditions>>, ChainError> {
    phi.validate(f)?;
    let (_, bounds) = require_chain_boundary(f)?;
    Ok((0..f.arity())
        .map(|k| {
            (0..f.domain(k).len())
                .map(|a| {
                    let s = wlu_unchecked(f, bounds[k], k, a);
                    let v = phi.get(k, a);
                    SuffConditions {
                        a: s.w.iter().all(|&w| w == v),
                        b: s.l.iter().all(|l| l.is_subset(v)),
                        c: s.u.iter().all(|u| v.is_subset(*u)),
                    }
                })
                .collect()
        })
        .collect())
}

/// `f(x_k^0) < f(x)` and `f(y) < f(y_k^1)` with `x_k = y_k = a`, yet
/// `f(x) ≰ f(y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainOrderWitness {
    pub coordinate: usize,
    pub point: usize,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainWitness {
    Boundary(BoundaryWitness),
    Order(ChainOrderWitness),
}

/// Pseudo-polynomiality on a chain: the boundary condition plus, for all
/// `k`, `a` and `x`, `y` with `x_k = y_k = a`,
/// `f(x_k^0) < f(x)` and `f(y) < f(y_k^1)` imply `f(x) ≤ f(y)`.
pub fn chain_characterization(f: &FunctionTable) -> Result<Verdict<ChainWitness>, ChainError> {
    let ctx = ChainContext::new(f.lattice())?;
    let bounds = f.require_bounds()?;
    if let Verdict::Fails(w) = check_boundary(f)? {
        return Ok(Verdict::Fails(ChainWitness::Boundary(w)));
    }
    for (k, &b) in bounds.iter().enumerate() {
        for a in 0..f.domain(k).len() {
            let slice: Vec<usize> = f.slice_indices(k, a).collect();
            let raised: Vec<usize> =
                slice.iter().copied().filter(|&i| f.value_at(f.substitute(i, k, b.zero)) != f.value_at(i)).collect();
            let lowered: Vec<usize> =
                slice.iter().copied().filter(|&i| f.value_at(i) != f.value_at(f.substitute(i, k, b.one))).collect();
            for &xi in &raised {
                for &yi in &lowered {
                    if ctx.level_of(f.value_at(xi)) > ctx.level_of(f.value_at(yi)) {
                        return Ok(Verdict::Fails(ChainWitness::Order(ChainOrderWitness {
                            coordinate: k,
                            point: a,
                            x: f.tuple_of(xi),
                            y: f.tuple_of(yi),
                        })));
                    }
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Designated elements read off `Φk−` (minimum) and `Φk+` (maximum).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InferredDesignated {
    pub zero: usize,
    pub one: usize,
    /// Every point where `Φk−` is minimal, in declared order.
    pub zero_candidates: Vec<usize>,
    /// Every point where `Φk+` is maximal, in declared order.
    pub one_candidates: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeBounds {
    pub bounds: PhiBounds,
    /// Present only when the carrier is a chain.
    pub designated: Option<Vec<InferredDesignated>>,
}

/// `Φk−(a) = ⋁_{x_k=a, h∈Xk} cl(f(x) ∧ ¬f(x_k^h))` and dually `Φk+`, which
/// need no designated elements.
pub fn free_phi_bounds(f: &FunctionTable) -> FreeBounds {
    let y = f.lattice();
    let mut minus = Vec::with_capacity(f.arity());
    let mut plus = Vec::with_capacity(f.arity());
    for k in 0..f.arity() {
        let size = f.domain(k).len();
        let mut lo = vec![y.bottom(); size];
        let mut hi = vec![y.top(); size];
        for idx in 0..f.len() {
            let a = f.coord(idx, k);
            let v = f.value_at(idx);
            for h in 0..size {
                let other = f.value_at(f.substitute(idx, k, h));
                lo[a] = lo[a].union(y.closure(v.intersection(y.complement(other))));
                hi[a] = hi[a].intersection(y.interior(v.union(y.complement(other))));
            }
        }
        minus.push(lo);
        plus.push(hi);
    }
    let bounds = PhiBounds { minus: PhiVector::new(minus), plus: PhiVector::new(plus) };
    let designated = ChainContext::new(y).ok().map(|ctx| {
        (0..f.arity())
            .map(|k| {
                let lo: Vec<usize> = bounds.minus.map(k).iter().map(|&s| ctx.level_of(s)).collect();
                let hi: Vec<usize> = bounds.plus.map(k).iter().map(|&s| ctx.level_of(s)).collect();
                let min = *lo.iter().min().expect("domains are nonempty");
                let max = *hi.iter().max().expect("domains are nonempty");
                let zero_candidates: Vec<usize> = (0..lo.len()).filter(|&a| lo[a] == min).collect();
                let one_candidates: Vec<usize> = (0..hi.len()).filter(|&a| hi[a] == max).collect();
                InferredDesignated { zero: zero_candidates[0], one: one_candidates[0], zero_candidates, one_candidates }
            })
            .collect()
    });
    FreeBounds { bounds, designated }
}
