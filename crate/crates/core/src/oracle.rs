//! Brute-force ground truth for small instances.
//!
//! Nothing here touches the extremal inner maps or the interpolation
//! bounds: polynomials are enumerated as all canonical monotone coefficient
//! families, and inner maps by backtracking over carrier values.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::factorization::{Domain, DomainBounds, FactorError, FunctionTable, PhiVector};
use crate::lattice::{Lattice, Subset};
use crate::polynomial::Polynomial;
use crate::samples::{airline_lattice, chain_lattice, power_set_lattice};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance exceeds oracle limits: {0}")]
    ExceedsLimits(String),
    #[error("search space of {size} exceeds the cap of {cap}")]
    CapExceeded { size: u128, cap: u128 },
    #[error("invalid limits: {0}")]
    InvalidLimits(String),
    #[error(transparent)]
    Factor(#[from] FactorError),
}

/// Size limits for instances the oracle accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InstanceLimits {
    pub max_arity: usize,
    pub max_domain: usize,
    pub max_lattice: usize,
    /// Upper bound on `|Y|^(2^n) · |Y|^(Σ|Xk|)`.
    pub search_cap: u128,
}

impl Default for InstanceLimits {
    fn default() -> Self {
        InstanceLimits { max_arity: 2, max_domain: 3, max_lattice: 6, search_cap: 1_000_000_000_000 }
    }
}

impl InstanceLimits {
    pub fn new(max_arity: usize, max_domain: usize, max_lattice: usize) -> Result<Self, OracleError> {
        if max_arity == 0 || max_domain < 2 || max_lattice == 0 {
            return Err(OracleError::InvalidLimits(format!(
                "need n ≥ 1, |Xk| ≥ 2, |Y| ≥ 1; got {max_arity},{max_domain},{max_lattice}"
            )));
        }
        Ok(InstanceLimits { max_arity, max_domain, max_lattice, ..Default::default() })
    }

    pub fn check(&self, f: &FunctionTable) -> Result<(), OracleError> {
        if f.arity() > self.max_arity {
            return Err(OracleError::ExceedsLimits(format!("arity {} > {}", f.arity(), self.max_arity)));
        }
        if let Some(d) = f.domains().iter().find(|d| d.len() > self.max_domain) {
            return Err(OracleError::ExceedsLimits(format!("|{}| = {} > {}", d.name, d.len(), self.max_domain)));
        }
        if f.lattice().len() > self.max_lattice {
            return Err(OracleError::ExceedsLimits(format!("|Y| = {} > {}", f.lattice().len(), self.max_lattice)));
        }
        Ok(())
    }
}

impl FromStr for InstanceLimits {
    type Err = OracleError;

    /// Parses `n,x,y`.
    fn from_str(s: &str) -> Result<Self, OracleError> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let nums: Result<Vec<usize>, _> = parts.iter().map(|p| p.parse::<usize>()).collect();
        match nums {
            Ok(v) if v.len() == 3 => InstanceLimits::new(v[0], v[1], v[2]),
            _ => Err(OracleError::InvalidLimits(format!("expected n,x,y, got {s:?}"))),
        }
    }
}

impl fmt::Display for InstanceLimits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.max_arity, self.max_domain, self.max_lattice)
    }
}

fn power(base: usize, exp: usize) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc.saturating_mul(base as u128))
}

/// Every polynomial function of arity `n`, as canonical coefficient families
/// in lexicographic order of carrier positions by mask.
pub fn enumerate_all_polynomials(lattice: &Lattice, n: usize, cap: u128) -> Result<Vec<Polynomial>, OracleError> {
    if n > 6 {
        return Err(OracleError::ExceedsLimits(format!("arity {n} > 6")));
    }
    let size = power(lattice.len(), 1 << n);
    if size > cap {
        return Err(OracleError::CapExceeded { size, cap });
    }
    let mut out = Vec::new();
    let mut coeffs = vec![Subset::EMPTY; 1 << n];
    fill_family(lattice, n, 0, &mut coeffs, &mut out);
    Ok(out)
}

fn fill_family(lattice: &Lattice, n: usize, mask: usize, coeffs: &mut Vec<Subset>, out: &mut Vec<Polynomial>) {
    if mask == coeffs.len() {
        out.push(Polynomial::from_canonical_unchecked(n, coeffs.clone()));
        return;
    }
    for &v in lattice.elements() {
        let monotone = (0..n).filter(|i| mask >> i & 1 == 1).all(|i| coeffs[mask & !(1 << i)].is_subset(v));
        if monotone {
            coeffs[mask] = v;
            fill_family(lattice, n, mask + 1, coeffs, out);
        }
    }
}

struct Search<'a> {
    f: &'a FunctionTable,
    bounds: Vec<DomainBounds>,
    /// `(k, a)` in assignment order.
    order: Vec<(usize, usize)>,
    maps: Vec<Vec<Subset>>,
    assigned: Vec<Vec<bool>>,
}

impl Search<'_> {
    /// Every constraint that became decidable by assigning `(k, a)`.
    fn consistent(&self, p: &Polynomial, k: usize, a: usize) -> bool {
        let b = self.bounds[k];
        let v = self.maps[k][a];
        if self.assigned[k][b.zero] && !self.maps[k][b.zero].is_subset(v) {
            return false;
        }
        if self.assigned[k][b.one] && !v.is_subset(self.maps[k][b.one]) {
            return false;
        }
        if a == b.zero || a == b.one {
            for c in 0..self.maps[k].len() {
                if self.assigned[k][c] {
                    let w = self.maps[k][c];
                    if (a == b.zero && !v.is_subset(w)) || (a == b.one && !w.is_subset(v)) {
                        return false;
                    }
                }
            }
        }
        let n = self.f.arity();
        let mut args = vec![Subset::EMPTY; n];
        'tuples: for idx in self.f.slice_indices(k, a) {
            for (j, arg) in args.iter_mut().enumerate() {
                let c = self.f.coord(idx, j);
                if !self.assigned[j][c] {
                    continue 'tuples;
                }
                *arg = self.maps[j][c];
            }
            if p.eval(&args) != self.f.value_at(idx) {
                return false;
            }
        }
        true
    }

    fn run(&mut self, p: &Polynomial, depth: usize, out: &mut BTreeSet<(PhiVector, Polynomial)>) {
        if depth == self.order.len() {
            out.insert((PhiVector::new(self.maps.clone()), p.clone()));
            return;
        }
        let (k, a) = self.order[depth];
        self.assigned[k][a] = true;
        for &v in self.f.lattice().elements() {
            self.maps[k][a] = v;
            if self.consistent(p, k, a) {
                self.run(p, depth + 1, out);
            }
        }
        self.assigned[k][a] = false;
    }
}

/// All `(φ, p)` with every `φk` satisfying `φk(0) ≤ φk(a) ≤ φk(1)` and
/// `f = p ∘ φ` on every tuple.
pub fn brute_force_factorizations(
    f: &FunctionTable,
    limits: &InstanceLimits,
) -> Result<BTreeSet<(PhiVector, Polynomial)>, OracleError> {
    limits.check(f)?;
    let bounds = f.require_bounds()?;
    let y = f.lattice();
    let points: usize = f.domains().iter().map(Domain::len).sum();
    let size = power(y.len(), 1 << f.arity()).saturating_mul(power(y.len(), points));
    if size > limits.search_cap {
        return Err(OracleError::CapExceeded { size, cap: limits.search_cap });
    }
    let polys = enumerate_all_polynomials(y, f.arity(), limits.search_cap)?;
    let per_coordinate: Vec<Vec<usize>> = bounds
        .iter()
        .enumerate()
        .map(|(k, b)| {
            let mut o = vec![b.zero, b.one];
            o.extend((0..f.domain(k).len()).filter(|&a| a != b.zero && a != b.one));
            o
        })
        .collect();
    let longest = per_coordinate.iter().map(Vec::len).max().unwrap_or(0);
    let order: Vec<(usize, usize)> = (0..longest)
        .flat_map(|j| per_coordinate.iter().enumerate().filter_map(move |(k, o)| o.get(j).map(|&a| (k, a))))
        .collect();
    let mut search = Search {
        f,
        bounds,
        order,
        maps: f.domains().iter().map(|d| vec![Subset::EMPTY; d.len()]).collect(),
        assigned: f.domains().iter().map(|d| vec![false; d.len()]).collect(),
    };
    let mut out = BTreeSet::new();
    for p in &polys {
        search.run(p, 0, &mut out);
    }
    Ok(out)
}

/// The lattices random instances draw from, restricted to `|Y| ≤ max`.
pub fn instance_lattices(max: usize) -> Vec<Arc<Lattice>> {
    let pool: Vec<Lattice> = vec![chain_lattice(2), chain_lattice(3), airline_lattice(), power_set_lattice(2)];
    let mut fit: Vec<Arc<Lattice>> = pool.into_iter().filter(|y| y.len() <= max).map(Arc::new).collect();
    if fit.is_empty() {
        fit.push(Arc::new(chain_lattice(max.max(1) - 1)));
    }
    fit
}

/// A reproducible random table for `seed`.
///
/// The generator is ChaCha8 seeded with `seed`. It picks a lattice from
/// [`instance_lattices`], uses arity `max_arity` and domain sizes drawn from
/// `2..=max_domain`, and designates the first and last point of each domain.
/// Half of the instances are compositions `p ∘ φ` with a random polynomial
/// and a random inner map satisfying its boundary condition, a third of
/// which get one cell overwritten; the rest are uniform random tables.
pub fn random_instance(seed: u64, limits: &InstanceLimits) -> FunctionTable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lattices = instance_lattices(limits.max_lattice);
    let y = lattices.choose(&mut rng).expect("pool is nonempty").clone();
    let n = limits.max_arity;
    let domains: Vec<Domain> = (0..n)
        .map(|k| {
            let size = rng.gen_range(2..=limits.max_domain.max(2));
            Domain::new(format!("X{}", k + 1), (0..size).map(|a| format!("{}{}", (b'a' + k as u8) as char, a)))
                .with_bounds(0, size - 1)
        })
        .collect();
    let elems = y.elements().to_vec();
    let pick = |rng: &mut ChaCha8Rng, pool: &[Subset]| *pool.choose(rng).expect("carrier is nonempty");
    let sizes: Vec<usize> = domains.iter().map(Domain::len).collect();
    let total: usize = sizes.iter().product();
    let values: Vec<Subset> = if rng.gen_bool(0.5) {
        let raw: Vec<Subset> = (0..1usize << n).map(|_| pick(&mut rng, &elems)).collect();
        let p = Polynomial::from_dense(&y, n, &raw).expect("carrier values");
        let maps: Vec<Vec<Subset>> = sizes
            .iter()
            .map(|&s| {
                let lo = pick(&mut rng, &elems);
                let above: Vec<Subset> = elems.iter().copied().filter(|e| lo.is_subset(*e)).collect();
                let hi = pick(&mut rng, &above);
                let between: Vec<Subset> = above.iter().copied().filter(|e| e.is_subset(hi)).collect();
                let mut m: Vec<Subset> = (0..s).map(|_| pick(&mut rng, &between)).collect();
                m[0] = lo;
                m[s - 1] = hi;
                m
            })
            .collect();
        let mut vals: Vec<Subset> = crate::factorization::Tuples::new(&sizes)
            .map(|t| p.eval(&t.iter().enumerate().map(|(k, &a)| maps[k][a]).collect::<Vec<_>>()))
            .collect();
        if rng.gen_range(0..3) == 0 {
            let cell = rng.gen_range(0..total);
            vals[cell] = pick(&mut rng, &elems);
        }
        vals
    } else {
        (0..total).map(|_| pick(&mut rng, &elems)).collect()
    };
    FunctionTable::new(y, domains, values).expect("generated tables are well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::{enumerate_factorizations, is_pseudo_polynomial};
    use crate::samples::airline_table;

    const CAP: u128 = 1 << 40;

    #[test]
    fn polynomial_counts() {
        assert_eq!(enumerate_all_polynomials(&airline_lattice(), 0, CAP).unwrap().len(), 5);
        assert_eq!(enumerate_all_polynomials(&chain_lattice(1), 1, CAP).unwrap().len(), 3);
        assert_eq!(enumerate_all_polynomials(&chain_lattice(2), 1, CAP).unwrap().len(), 6);
        let two = enumerate_all_polynomials(&chain_lattice(1), 1, CAP).unwrap();
        let coeffs: Vec<Vec<Subset>> = two.iter().map(|p| p.coeffs().to_vec()).collect();
        let (o, i) = (Subset::EMPTY, Subset::full(1));
        assert_eq!(coeffs, vec![vec![o, o], vec![o, i], vec![i, i]]);
        assert!(matches!(
            enumerate_all_polynomials(&airline_lattice(), 2, 100),
            Err(OracleError::CapExceeded { size: 625, cap: 100 })
        ));
    }

    #[test]
    fn polynomials_are_distinct_functions() {
        let y = power_set_lattice(2);
        let all = enumerate_all_polynomials(&y, 2, CAP).unwrap();
        let mut tables = BTreeSet::new();
        for p in &all {
            let mut t = Vec::new();
            for &a in y.elements() {
                for &b in y.elements() {
                    t.push(p.eval(&[a, b]));
                }
            }
            assert!(tables.insert(t));
        }
    }

    #[test]
    fn airline_matches_engine() {
        let f = airline_table(true);
        let brute = brute_force_factorizations(&f, &InstanceLimits::new(2, 4, 5).unwrap()).unwrap();
        assert_eq!(brute.len(), 3);
        let engine: BTreeSet<(PhiVector, Polynomial)> =
            enumerate_factorizations(&f).unwrap().map(|fz| (fz.phi, fz.p)).collect();
        assert_eq!(brute, engine);
        assert!(matches!(
            brute_force_factorizations(&f, &InstanceLimits::default()),
            Err(OracleError::ExceedsLimits(_))
        ));
    }

    #[test]
    fn constant_table_has_factorizations() {
        let y = Arc::new(chain_lattice(2));
        let c = Subset::full(1);
        let f = FunctionTable::from_fn(y, vec![Domain::new("X", ["a", "b"]).with_bounds(0, 1)], |_| c).unwrap();
        let brute = brute_force_factorizations(&f, &InstanceLimits::default()).unwrap();
        assert!(!brute.is_empty());
        assert!(brute.iter().any(|(_, p)| *p == Polynomial::constant(c, 1)));
    }

    #[test]
    fn non_pseudo_polynomial_table_has_none() {
        let y = Arc::new(chain_lattice(2));
        let vals = [0, 0, 0, 2, 2, 2].iter().map(|&v| Subset::full(v)).collect();
        let x1 = Domain::new("X1", ["0", "m", "1"]).with_bounds(0, 2);
        let x2 = Domain::new("X2", ["0", "1"]).with_bounds(0, 1);
        let f = FunctionTable::new(y, vec![x1, x2], vals).unwrap();
        assert!(!is_pseudo_polynomial(&f).unwrap().holds());
        assert!(brute_force_factorizations(&f, &InstanceLimits::default()).unwrap().is_empty());
    }

    #[test]
    fn random_instances_are_deterministic() {
        let limits = InstanceLimits::default();
        for seed in [0, 7, 12345] {
            let (a, b) = (random_instance(seed, &limits), random_instance(seed, &limits));
            assert_eq!(a.values(), b.values());
            assert_eq!(a.domains(), b.domains());
            assert_eq!(a.lattice().elements(), b.lattice().elements());
        }
    }

    #[test]
    fn seed_sweep_covers_both_classes() {
        let limits = InstanceLimits::default();
        let verdicts: Vec<bool> =
            (1..=200).map(|s| is_pseudo_polynomial(&random_instance(s, &limits)).unwrap().holds()).collect();
        assert!(verdicts.iter().any(|&v| v));
        assert!(verdicts.iter().any(|&v| !v));
    }

    #[test]
    fn tiny_limits_reach_every_table() {
        let limits = InstanceLimits::new(1, 2, 2).unwrap();
        let tables: BTreeSet<Vec<Subset>> = (0..200).map(|s| random_instance(s, &limits).values().to_vec()).collect();
        assert_eq!(tables.len(), 4);
    }

    #[test]
    fn limits_parse() {
        let l: InstanceLimits = "2,3,6".parse().unwrap();
        assert_eq!(l, InstanceLimits::default());
        assert_eq!(l.to_string(), "2,3,6");
        assert!("2,3".parse::<InstanceLimits>().is_err());
        assert!("0,3,6".parse::<InstanceLimits>().is_err());
    }
}
