use crate::lattice::Subset;
use crate::polynomial::MonotoneFamilies;

use super::interpolation::{corner_test, interpolation_coefficients};
use super::phi::{compute_phi_bounds, is_pseudo_polynomial};
use super::{DomainBounds, FactorError, Factorization, FunctionTable, PhiBounds, PhiVector, Verdict};

/// All maps `φk` with `Φk−(a) ≤ φk(a) ≤ Φk+(a)` pointwise that also satisfy
/// `φk(0) ≤ φk(a) ≤ φk(1)`, per coordinate, in lexicographic order (points
/// in declared order, values in carrier order).
pub fn phi_candidates(f: &FunctionTable, phi: &PhiBounds, bounds: &[DomainBounds]) -> Vec<Vec<Vec<Subset>>> {
    (0..f.arity())
        .map(|k| {
            let size = f.domain(k).len();
            let intervals: Vec<Vec<Subset>> = (0..size).map(|a| phi.interval(f.lattice(), k, a)).collect();
            let b = bounds[k];
            // Designated points first so every other point can be pruned against them.
            let mut order = vec![b.zero, b.one];
            order.extend((0..size).filter(|&a| a != b.zero && a != b.one));
            let mut out = Vec::new();
            let mut current = vec![Subset::EMPTY; size];
            extend_map(&intervals, &order, 0, b, &mut current, &mut out);
            out.sort();
            out
        })
        .collect()
}

fn extend_map(
    intervals: &[Vec<Subset>],
    order: &[usize],
    depth: usize,
    b: DomainBounds,
    current: &mut Vec<Subset>,
    out: &mut Vec<Vec<Subset>>,
) {
    if depth == order.len() {
        out.push(current.clone());
        return;
    }
    let a = order[depth];
    for &v in &intervals[a] {
        let ok = match depth {
            0 => true,
            1 => current[b.zero].is_subset(v),
            _ => current[b.zero].is_subset(v) && v.is_subset(current[b.one]),
        };
        if ok {
            current[a] = v;
            extend_map(intervals, order, depth + 1, b, current, out);
        }
    }
}

/// Lazy, restartable stream of every factorization of a pseudo-polynomial
/// table.
///
/// Inner-map vectors are visited in lexicographic order with the first
/// coordinate slowest; for each, outer polynomials between `p−` and `p+`
/// follow in coefficient bitmask order.
pub struct FactorizationIter<'a> {
    table: &'a FunctionTable,
    bounds: Vec<DomainBounds>,
    candidates: Vec<Vec<Vec<Subset>>>,
    odometer: Option<Vec<usize>>,
    current: Option<(PhiVector, MonotoneFamilies<'a>)>,
    verify: bool,
}

impl<'a> FactorizationIter<'a> {
    fn new(
        table: &'a FunctionTable,
        bounds: Vec<DomainBounds>,
        candidates: Vec<Vec<Vec<Subset>>>,
        verify: bool,
    ) -> Self {
        let odometer = if candidates.iter().any(Vec::is_empty) { None } else { Some(vec![0; candidates.len()]) };
        FactorizationIter { table, bounds, candidates, odometer, current: None, verify }
    }

    /// Number of admissible inner-map vectors.
    pub fn phi_vector_count(&self) -> usize {
        self.candidates.iter().map(Vec::len).product()
    }

    pub fn candidates(&self) -> &[Vec<Vec<Subset>>] {
        &self.candidates
    }

    fn next_phi(&mut self) -> Option<PhiVector> {
        let odo = self.odometer.as_mut()?;
        let phi = PhiVector::new(odo.iter().enumerate().map(|(k, &i)| self.candidates[k][i].clone()).collect());
        let mut k = odo.len();
        loop {
            if k == 0 {
                self.odometer = None;
                break;
            }
            k -= 1;
            odo[k] += 1;
            if odo[k] < self.candidates[k].len() {
                break;
            }
            odo[k] = 0;
        }
        Some(phi)
    }
}

impl Iterator for FactorizationIter<'_> {
    type Item = Factorization;

    fn next(&mut self) -> Option<Factorization> {
        loop {
            if let Some((phi, families)) = self.current.as_mut() {
                if let Some(p) = families.next() {
                    let verified = if self.verify {
                        corner_test(self.table, &self.bounds, phi, &p)
                            && (0..self.table.len())
                                .all(|i| p.eval(&phi.apply(self.table, i)) == self.table.value_at(i))
                    } else {
                        false
                    };
                    return Some(Factorization { phi: phi.clone(), p, verified });
                }
                self.current = None;
            }
            let phi = self.next_phi()?;
            let (lo, hi) = interpolation_coefficients(self.table, &self.bounds, &phi);
            let families = MonotoneFamilies::new(self.table.lattice(), self.table.arity(), lo, hi);
            self.current = Some((phi, families));
        }
    }
}

/// Stream of all factorizations; each one is verified before it is yielded.
pub fn enumerate_factorizations(f: &FunctionTable) -> Result<FactorizationIter<'_>, FactorError> {
    iter_with(f, true)
}

fn iter_with(f: &FunctionTable, verify: bool) -> Result<FactorizationIter<'_>, FactorError> {
    let bounds = f.require_bounds()?;
    if let Verdict::Fails(w) = is_pseudo_polynomial(f)? {
        return Err(FactorError::NotPseudoPolynomial(w));
    }
    let phi = compute_phi_bounds(f, &bounds);
    let candidates = phi_candidates(f, &phi, &bounds);
    Ok(FactorizationIter::new(f, bounds, candidates, verify))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Counts {
    pub phi_vectors: usize,
    pub total: usize,
    pub capped: bool,
}

/// Exact counts without materializing or verifying factorizations.
pub fn count_factorizations(f: &FunctionTable) -> Result<Counts, FactorError> {
    let it = iter_with(f, false)?;
    let phi_vectors = it.phi_vector_count();
    Ok(Counts { phi_vectors, total: it.count(), capped: false })
}

#[derive(Debug, Clone)]
pub struct Enumeration {
    pub factorizations: Vec<Factorization>,
    pub counts: Counts,
    /// `|[Φk−(a), Φk+(a)]|` per coordinate and point.
    pub interval_sizes: Vec<Vec<usize>>,
    /// Product of the interval sizes: an upper bound on the inner-map vectors.
    pub phi_upper_bound: u128,
}

impl Enumeration {
    /// Turns a capped enumeration into [`FactorError::CapExceeded`].
    pub fn strict(self, cap: usize) -> Result<Self, FactorError> {
        if self.counts.capped {
            Err(FactorError::CapExceeded { cap })
        } else {
            Ok(self)
        }
    }
}

/// Materializes up to `cap` factorizations (all of them when `cap` is `None`).
/// When more exist, `counts.capped` is set and `counts.total` equals `cap`.
pub fn collect_factorizations(f: &FunctionTable, cap: Option<usize>) -> Result<Enumeration, FactorError> {
    let mut it = enumerate_factorizations(f)?;
    let bounds = f.require_bounds()?;
    let phi = compute_phi_bounds(f, &bounds);
    let interval_sizes: Vec<Vec<usize>> = (0..f.arity())
        .map(|k| (0..f.domain(k).len()).map(|a| phi.interval(f.lattice(), k, a).len()).collect())
        .collect();
    let phi_upper_bound = interval_sizes.iter().flatten().fold(1u128, |acc, &s| acc.saturating_mul(s as u128));
    let phi_vectors = it.phi_vector_count();
    let mut factorizations = Vec::new();
    let mut capped = false;
    loop {
        if cap.is_some_and(|c| factorizations.len() >= c) {
            capped = it.next().is_some();
            break;
        }
        match it.next() {
            Some(fz) => factorizations.push(fz),
            None => break,
        }
    }
    let total = factorizations.len();
    Ok(Enumeration { factorizations, counts: Counts { phi_vectors, total, capped }, interval_sizes, phi_upper_bound })
}
