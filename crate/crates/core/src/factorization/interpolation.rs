use crate::lattice::Subset;
use crate::polynomial::Polynomial;

use super::boundary::check_boundary;
use super::phi::{admissibility, check_phi_admissible, compute_phi_bounds};
use super::{
    AdmissibilityWitness, Bc1Witness, DomainBounds, FactorError, FunctionTable, PhiVector, TupleWitness, Verdict,
};

/// The polynomial with raw coefficients `f(1̂_I)`, which factors `f` with
/// every admissible inner map.
pub fn p0(f: &FunctionTable) -> Result<Polynomial, FactorError> {
    let bounds = f.require_bounds()?;
    if let Verdict::Fails(w) = check_boundary(f)? {
        return Err(FactorError::BoundaryViolated(w));
    }
    Ok(p0_unchecked(f, &bounds))
}

pub(crate) fn p0_unchecked(f: &FunctionTable, bounds: &[DomainBounds]) -> Polynomial {
    let raw: Vec<Subset> = (0..1u32 << f.arity()).map(|m| f.value_at(f.corner_index(bounds, m))).collect();
    Polynomial::from_dense(f.lattice(), f.arity(), &raw).expect("table values lie in the carrier")
}

/// Least and greatest solutions of `p(e_I) = f(1̂_I)` for a fixed inner map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterpolationBounds {
    pub lower: Polynomial,
    pub upper: Polynomial,
    /// `c_I− = cl(f(1̂_I) ∧ ⋀_{i∉I} ¬a_i)` before canonicalization.
    pub c_minus: Vec<Subset>,
    /// `c_I+ = int(f(1̂_I) ∨ ⋁_{i∈I} ¬b_i)` before canonicalization.
    pub c_plus: Vec<Subset>,
}

pub fn interpolation_bounds(f: &FunctionTable, phi: &PhiVector) -> Result<InterpolationBounds, FactorError> {
    if let Verdict::Fails(w) = check_phi_admissible(f, phi)? {
        return Err(FactorError::PhiNotAdmissible(w));
    }
    let bounds = f.require_bounds()?;
    Ok(compute_interpolation_bounds(f, &bounds, phi))
}

pub(crate) fn interpolation_coefficients(
    f: &FunctionTable,
    bounds: &[DomainBounds],
    phi: &PhiVector,
) -> (Vec<Subset>, Vec<Subset>) {
    let y = f.lattice();
    let n = f.arity();
    let not_a: Vec<Subset> = (0..n).map(|i| y.complement(phi.get(i, bounds[i].zero))).collect();
    let not_b: Vec<Subset> = (0..n).map(|i| y.complement(phi.get(i, bounds[i].one))).collect();
    let mut c_minus = Vec::with_capacity(1 << n);
    let mut c_plus = Vec::with_capacity(1 << n);
    for mask in 0..1u32 << n {
        let corner = f.value_at(f.corner_index(bounds, mask));
        let mut meet = corner;
        let mut join = corner;
        for i in 0..n {
            if mask >> i & 1 == 1 {
                join = join.union(not_b[i]);
            } else {
                meet = meet.intersection(not_a[i]);
            }
        }
        c_minus.push(y.closure(meet));
        c_plus.push(y.interior(join));
    }
    (c_minus, c_plus)
}

pub(crate) fn compute_interpolation_bounds(
    f: &FunctionTable,
    bounds: &[DomainBounds],
    phi: &PhiVector,
) -> InterpolationBounds {
    let (c_minus, c_plus) = interpolation_coefficients(f, bounds, phi);
    let y = f.lattice();
    let lower = Polynomial::from_dense(y, f.arity(), &c_minus).expect("closures lie in the carrier");
    let upper = Polynomial::from_dense(y, f.arity(), &c_plus).expect("interiors lie in the carrier");
    InterpolationBounds { lower, upper, c_minus, c_plus }
}

/// Which verification route produced the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// `p(e_I) = f(1̂_I)` on the `2^n` corners, cross-checked exhaustively.
    Interpolation,
    /// Pointwise comparison on every tuple.
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub holds: bool,
    pub route: Route,
    /// First tuple with `f(x) ≠ p(φ(x))`.
    pub tuple_witness: Option<TupleWitness>,
    /// Set when `φ` lies outside `[Φ−, Φ+]`.
    pub admissibility: Option<AdmissibilityWitness>,
    /// Set when `φ` violates its boundary condition.
    pub bc1: Option<Bc1Witness>,
}

/// Checks `f = p ∘ φ`.
///
/// The exhaustive comparison always runs. When `f` satisfies the boundary
/// condition and `φ` is admissible, the corner test `p(e_I) = f(1̂_I)` runs as
/// well and the two must agree; an inadmissible `φ` must fail pointwise.
pub fn verify_factorization(f: &FunctionTable, phi: &PhiVector, p: &Polynomial) -> Result<Verification, FactorError> {
    phi.validate(f)?;
    if p.arity() != f.arity() {
        return Err(FactorError::ArityMismatch { expected: f.arity(), got: p.arity() });
    }
    for &c in p.coeffs() {
        f.lattice().check(c)?;
    }
    let bounds = f.require_bounds()?;
    let tuple_witness = (0..f.len()).find_map(|idx| {
        let got = p.eval(&phi.apply(f, idx));
        let expected = f.value_at(idx);
        (got != expected).then(|| TupleWitness { tuple: f.tuple_of(idx), expected, got })
    });
    let pointwise = tuple_witness.is_none();
    let bc1 = phi.check_bc1(&bounds).witness().cloned();
    let mut route = Route::Exhaustive;
    let mut admissibility_witness = None;
    if bc1.is_none() && check_boundary(f)?.holds() {
        match admissibility(&compute_phi_bounds(f, &bounds), phi) {
            Verdict::Holds => {
                let corners = corner_test(f, &bounds, phi, p);
                if corners != pointwise {
                    return Err(FactorError::RouteDisagreement(format!(
                        "corner test says {corners}, exhaustive check says {pointwise}"
                    )));
                }
                route = Route::Interpolation;
            }
            Verdict::Fails(w) => {
                if pointwise {
                    return Err(FactorError::RouteDisagreement(
                        "inadmissible inner map factors the table pointwise".into(),
                    ));
                }
                admissibility_witness = Some(w);
            }
        }
    }
    Ok(Verification {
        holds: pointwise && bc1.is_none(),
        route,
        tuple_witness,
        admissibility: admissibility_witness,
        bc1,
    })
}

/// `p(e_I) = f(1̂_I)` for all `I`, where `e_I` takes `φi(1)` on `I` and `φi(0)` elsewhere.
pub(crate) fn corner_test(f: &FunctionTable, bounds: &[DomainBounds], phi: &PhiVector, p: &Polynomial) -> bool {
    let n = f.arity();
    (0..1u32 << n).all(|mask| {
        let e: Vec<Subset> =
            (0..n).map(|i| phi.get(i, if mask >> i & 1 == 1 { bounds[i].one } else { bounds[i].zero })).collect();
        p.eval(&e) == f.value_at(f.corner_index(bounds, mask))
    })
}
