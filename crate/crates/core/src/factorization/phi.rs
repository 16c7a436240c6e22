use crate::lattice::{median_of, Lattice, Subset};

use super::boundary::check_boundary;
use super::{
    AdmissibilityWitness, DomainBounds, FactorError, FunctionTable, MedianWitness, PhiBounds, PhiOrderWitness,
    PhiVector, PseudoPolyWitness, Side, Verdict,
};

/// `cl(f(x) ∧ ¬f(x_k^0))`, the joinand of `Φk−` contributed by `x`.
fn joinand(f: &FunctionTable, idx: usize, k: usize, b: DomainBounds) -> Subset {
    let y = f.lattice();
    y.closure(f.value_at(idx).intersection(y.complement(f.value_at(f.substitute(idx, k, b.zero)))))
}

/// `int(f(x) ∨ ¬f(x_k^1))`, the meetand of `Φk+` contributed by `x`.
fn meetand(f: &FunctionTable, idx: usize, k: usize, b: DomainBounds) -> Subset {
    let y = f.lattice();
    y.interior(f.value_at(idx).union(y.complement(f.value_at(f.substitute(idx, k, b.one)))))
}

pub(crate) fn compute_phi_bounds(f: &FunctionTable, bounds: &[DomainBounds]) -> PhiBounds {
    let top = f.lattice().top();
    let mut minus = Vec::with_capacity(f.arity());
    let mut plus = Vec::with_capacity(f.arity());
    for (k, &b) in bounds.iter().enumerate() {
        let size = f.domain(k).len();
        let mut lo = vec![Subset::EMPTY; size];
        let mut hi = vec![top; size];
        for idx in 0..f.len() {
            let a = f.coord(idx, k);
            lo[a] = lo[a].union(joinand(f, idx, k, b));
            hi[a] = hi[a].intersection(meetand(f, idx, k, b));
        }
        minus.push(lo);
        plus.push(hi);
    }
    PhiBounds { minus: PhiVector::new(minus), plus: PhiVector::new(plus) }
}

fn require_boundary(f: &FunctionTable) -> Result<Vec<DomainBounds>, FactorError> {
    let bounds = f.require_bounds()?;
    if let Verdict::Fails(w) = check_boundary(f)? {
        return Err(FactorError::BoundaryViolated(w));
    }
    Ok(bounds)
}

/// `Φk−(a) = ⋁_{x_k=a} cl(f(x) ∧ ¬f(x_k^0))` and
/// `Φk+(a) = ⋀_{x_k=a} int(f(x) ∨ ¬f(x_k^1))`.
pub fn phi_bounds(f: &FunctionTable) -> Result<PhiBounds, FactorError> {
    let bounds = require_boundary(f)?;
    Ok(compute_phi_bounds(f, &bounds))
}

/// One joinand/meetand of a `Φ` value, kept for display.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceTerm {
    pub tuple: Vec<usize>,
    /// `f(x)`
    pub value: Subset,
    /// `f(x_k^0)` for `Φ−`, `f(x_k^1)` for `Φ+`.
    pub reference: Subset,
    /// `f(x) ∧ ¬f(x_k^0)` or `f(x) ∨ ¬f(x_k^1)`, before closure/interior.
    pub raw: Subset,
    pub reduced: Subset,
}

/// Step-by-step evaluation of `Φk−(a)` (side `Lower`) or `Φk+(a)` (side `Upper`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiTrace {
    pub coordinate: usize,
    pub point: usize,
    pub side: Side,
    pub terms: Vec<TraceTerm>,
    pub result: Subset,
}

impl PhiTrace {
    /// Renders e.g. `int(B∨B̄)∧int(B∨D̄)=int(V)∧int(D̄)=V∧N=N`.
    pub fn expression(&self, y: &Lattice) -> String {
        let (op, wrap, inner) = match self.side {
            Side::Lower => ("∨", "cl", "∧"),
            Side::Upper => ("∧", "int", "∨"),
        };
        let formal: Vec<String> = self
            .terms
            .iter()
            .map(|t| format!("{wrap}({}{inner}{})", y.name(t.value), overline(&y.name(t.reference))))
            .collect();
        let raw: Vec<String> = self.terms.iter().map(|t| format!("{wrap}({})", y.describe(t.raw))).collect();
        let reduced: Vec<String> = self.terms.iter().map(|t| y.name(t.reduced)).collect();
        format!("{}={}={}={}", formal.join(op), raw.join(op), reduced.join(op), y.name(self.result))
    }

    /// `Φ2+(E) = …` with domain names.
    pub fn render(&self, f: &FunctionTable) -> String {
        let sign = match self.side {
            Side::Lower => "−",
            Side::Upper => "+",
        };
        format!(
            "Φ{}{}({}) = {}",
            self.coordinate + 1,
            sign,
            f.domain(self.coordinate).elements[self.point],
            self.expression(f.lattice())
        )
    }
}

fn overline(name: &str) -> String {
    name.chars().flat_map(|c| [c, '\u{0304}']).collect()
}

pub fn phi_trace(f: &FunctionTable, k: usize, a: usize, side: Side) -> Result<PhiTrace, FactorError> {
    let bounds = require_boundary(f)?;
    if k >= f.arity() || a >= f.domain(k).len() {
        return Err(FactorError::PreconditionViolated(format!("no point #{a} in coordinate {}", k + 1)));
    }
    let y = f.lattice();
    let b = bounds[k];
    let mut terms = Vec::new();
    let mut result = match side {
        Side::Lower => y.bottom(),
        Side::Upper => y.top(),
    };
    for idx in f.slice_indices(k, a) {
        let value = f.value_at(idx);
        let (reference, raw, reduced) = match side {
            Side::Lower => {
                let r = f.value_at(f.substitute(idx, k, b.zero));
                let raw = value.intersection(y.complement(r));
                (r, raw, y.closure(raw))
            }
            Side::Upper => {
                let r = f.value_at(f.substitute(idx, k, b.one));
                let raw = value.union(y.complement(r));
                (r, raw, y.interior(raw))
            }
        };
        result = match side {
            Side::Lower => result.union(reduced),
            Side::Upper => result.intersection(reduced),
        };
        terms.push(TraceTerm { tuple: f.tuple_of(idx), value, reference, raw, reduced });
    }
    Ok(PhiTrace { coordinate: k, point: a, side, terms, result })
}

/// Decides pseudo-polynomiality: the boundary condition plus `Φk− ≤ Φk+`.
///
/// A failing order condition is witnessed by a joinand of `Φk−(a)` that is
/// not below some meetand of `Φk+(a)`.
pub fn is_pseudo_polynomial(f: &FunctionTable) -> Result<Verdict<PseudoPolyWitness>, FactorError> {
    let bounds = f.require_bounds()?;
    if let Verdict::Fails(w) = check_boundary(f)? {
        return Ok(Verdict::Fails(PseudoPolyWitness::Boundary(w)));
    }
    let phi = compute_phi_bounds(f, &bounds);
    if phi.is_ordered() {
        return Ok(Verdict::Holds);
    }
    for (k, &b) in bounds.iter().enumerate() {
        for a in 0..f.domain(k).len() {
            if phi.minus.get(k, a).is_subset(phi.plus.get(k, a)) {
                continue;
            }
            let slice: Vec<usize> = f.slice_indices(k, a).collect();
            for &yi in &slice {
                let j = joinand(f, yi, k, b);
                for &xi in &slice {
                    let m = meetand(f, xi, k, b);
                    if !j.is_subset(m) {
                        return Ok(Verdict::Fails(PseudoPolyWitness::PhiOrder(PhiOrderWitness {
                            coordinate: k,
                            point: a,
                            x: f.tuple_of(xi),
                            y: f.tuple_of(yi),
                            joinand: j,
                            meetand: m,
                        })));
                    }
                }
            }
        }
    }
    unreachable!("Φ− ≰ Φ+ implies some joinand exceeds some meetand")
}

/// `Φk− ≤ φk ≤ Φk+` for every coordinate.
pub fn check_phi_admissible(f: &FunctionTable, phi: &PhiVector) -> Result<Verdict<AdmissibilityWitness>, FactorError> {
    phi.validate(f)?;
    let bounds = require_boundary(f)?;
    if let Verdict::Fails(w) = phi.check_bc1(&bounds) {
        return Err(FactorError::Bc1Violated(w));
    }
    Ok(admissibility(&compute_phi_bounds(f, &bounds), phi))
}

pub(crate) fn admissibility(bounds: &PhiBounds, phi: &PhiVector) -> Verdict<AdmissibilityWitness> {
    for k in 0..phi.arity() {
        for (a, &v) in phi.map(k).iter().enumerate() {
            let lo = bounds.minus.get(k, a);
            if !lo.is_subset(v) {
                return Verdict::Fails(AdmissibilityWitness {
                    coordinate: k,
                    point: a,
                    side: Side::Lower,
                    phi: v,
                    bound: lo,
                });
            }
            let hi = bounds.plus.get(k, a);
            if !v.is_subset(hi) {
                return Verdict::Fails(AdmissibilityWitness {
                    coordinate: k,
                    point: a,
                    side: Side::Upper,
                    phi: v,
                    bound: hi,
                });
            }
        }
    }
    Verdict::Holds
}

/// `f(x) = med(f(x_k^0), φk(x_k), f(x_k^1))` for every `k` and `x`.
///
/// The boundary condition of `φ` is not checked here.
pub fn check_pseudo_median_decomposable(
    f: &FunctionTable,
    phi: &PhiVector,
) -> Result<Verdict<MedianWitness>, FactorError> {
    phi.validate(f)?;
    let bounds = f.require_bounds()?;
    for (k, &b) in bounds.iter().enumerate() {
        for idx in 0..f.len() {
            let expected = f.value_at(idx);
            let got = median_of(
                f.value_at(f.substitute(idx, k, b.zero)),
                phi.get(k, f.coord(idx, k)),
                f.value_at(f.substitute(idx, k, b.one)),
            );
            if got != expected {
                return Ok(Verdict::Fails(MedianWitness { coordinate: k, tuple: f.tuple_of(idx), expected, got }));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// For `u ≤ m ≤ w`: `med(u, v, w) = m` iff `m ∧ ¬u ≤ v ≤ m ∨ ¬w`.
/// Returns the right-hand interval test.
pub fn median_solve_check(y: &Lattice, u: Subset, m: Subset, w: Subset, v: Subset) -> Result<bool, FactorError> {
    for e in [u, m, w, v] {
        y.check(e)?;
    }
    if !u.is_subset(m) || !m.is_subset(w) {
        return Err(FactorError::PreconditionViolated(format!(
            "expected {} ≤ {} ≤ {}",
            y.name(u),
            y.name(m),
            y.name(w)
        )));
    }
    let lower = m.intersection(y.complement(u));
    let upper = m.union(y.complement(w));
    Ok(lower.is_subset(v) && v.is_subset(upper))
}
