use super::{BoundaryWitness, DomainBounds, FactorError, FunctionTable, Side, Verdict};

/// Checks `f(x_k^0) ≤ f(x) ≤ f(x_k^1)` for all `k` and `x`.
///
/// Coordinates are scanned in order, tuples row-major, the lower inequality
/// before the upper one; the first failure is returned.
pub fn check_boundary(f: &FunctionTable) -> Result<Verdict<BoundaryWitness>, FactorError> {
    let bounds = f.require_bounds()?;
    for (k, b) in bounds.iter().enumerate() {
        if let Some(w) = coordinate_violation(f, k, *b) {
            return Ok(Verdict::Fails(w));
        }
    }
    Ok(Verdict::Holds)
}

fn coordinate_violation(f: &FunctionTable, k: usize, b: DomainBounds) -> Option<BoundaryWitness> {
    for idx in 0..f.len() {
        let v = f.value_at(idx);
        let lo = f.value_at(f.substitute(idx, k, b.zero));
        if !lo.is_subset(v) {
            return Some(BoundaryWitness {
                coordinate: k,
                tuple: f.tuple_of(idx),
                side: Side::Lower,
                value: v,
                bound: lo,
            });
        }
        let hi = f.value_at(f.substitute(idx, k, b.one));
        if !v.is_subset(hi) {
            return Some(BoundaryWitness {
                coordinate: k,
                tuple: f.tuple_of(idx),
                side: Side::Upper,
                value: v,
                bound: hi,
            });
        }
    }
    None
}

/// Every designated pair satisfying the boundary condition, per coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InferredBounds {
    pub per_coordinate: Vec<Vec<DomainBounds>>,
}

impl InferredBounds {
    /// True when some coordinate admits no pair, so `f` is not pseudo-polynomial.
    pub fn is_infeasible(&self) -> bool {
        self.per_coordinate.iter().any(Vec::is_empty)
    }

    pub fn assignment_count(&self) -> usize {
        self.per_coordinate.iter().map(Vec::len).product()
    }

    /// All full assignments (cartesian product), first coordinate slowest.
    pub fn assignments(&self) -> Vec<Vec<DomainBounds>> {
        if self.is_infeasible() {
            return Vec::new();
        }
        let mut out = vec![Vec::new()];
        for cands in &self.per_coordinate {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    cands.iter().map(move |c| {
                        let mut v = prefix.clone();
                        v.push(*c);
                        v
                    })
                })
                .collect();
        }
        out
    }
}

/// All ordered pairs `(z0, z1)`, `z0 ≠ z1`, for which each coordinate
/// satisfies the boundary condition. Declared bounds are ignored.
pub fn infer_bounds(f: &FunctionTable) -> InferredBounds {
    let per_coordinate = (0..f.arity())
        .map(|k| {
            let size = f.domain(k).len();
            let mut pairs = Vec::new();
            for zero in 0..size {
                for one in 0..size {
                    let b = DomainBounds { zero, one };
                    if zero != one && coordinate_violation(f, k, b).is_none() {
                        pairs.push(b);
                    }
                }
            }
            pairs
        })
        .collect();
    InferredBounds { per_coordinate }
}

#[derive(Debug, Clone)]
pub enum BoundsResolution {
    /// Every coordinate has designated elements (declared or uniquely inferred).
    Resolved(FunctionTable),
    /// Some undeclared coordinates admit several pairs; an explicit choice is needed.
    Ambiguous(Vec<(usize, Vec<DomainBounds>)>),
    /// Some undeclared coordinate admits no pair at all.
    Infeasible { coordinate: usize },
}

/// Keeps declared bounds and infers the missing ones where that is unambiguous.
pub fn resolve_bounds(f: &FunctionTable) -> Result<BoundsResolution, FactorError> {
    let inferred = infer_bounds(f);
    let mut chosen = Vec::with_capacity(f.arity());
    let mut ambiguous = Vec::new();
    for k in 0..f.arity() {
        if let Some(b) = f.bounds(k) {
            chosen.push(b);
            continue;
        }
        let cands = &inferred.per_coordinate[k];
        match cands.len() {
            0 => return Ok(BoundsResolution::Infeasible { coordinate: k }),
            1 => chosen.push(cands[0]),
            _ => {
                ambiguous.push((k, cands.clone()));
                chosen.push(cands[0]);
            }
        }
    }
    if !ambiguous.is_empty() {
        return Ok(BoundsResolution::Ambiguous(ambiguous));
    }
    Ok(BoundsResolution::Resolved(f.with_bounds(&chosen)?))
}
