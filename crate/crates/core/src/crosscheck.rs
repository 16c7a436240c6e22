//! Engine versus brute force on seeded random instances.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;

use crate::factorization::{
    collect_factorizations, interpolation_bounds, is_pseudo_polynomial, p0, FactorError, FunctionTable, PhiVector,
};
use crate::lattice::Subset;
use crate::oracle::{brute_force_factorizations, random_instance, InstanceLimits, OracleError};
use crate::polynomial::Polynomial;

/// Result of comparing one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseOutcome {
    pub seed: u64,
    pub lattice_size: usize,
    pub domain_sizes: Vec<usize>,
    pub pseudo_polynomial: bool,
    pub engine_count: usize,
    pub oracle_count: usize,
    /// Pseudo-polynomial exactly when the oracle finds a factorization.
    pub verdict_agrees: bool,
    pub sets_agree: bool,
    /// Some factorization has a Sugeno outer polynomial (vacuous when none exist).
    pub sugeno_found: bool,
    /// `p− ≤ p ≤ p+` on the corners, the corner values of `p±` are `c±`,
    /// and `p0` lies between them.
    pub interpolation_laws: bool,
    pub error: Option<String>,
}

impl CaseOutcome {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.verdict_agrees && self.sets_agree && self.sugeno_found && self.interpolation_laws
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompareSummary {
    pub seeds: (u64, u64),
    pub limits: String,
    pub cases: usize,
    pub pseudo_polynomial: usize,
    pub non_pseudo_polynomial: usize,
    pub factorizations: usize,
    pub passed: bool,
    pub failures: Vec<CaseOutcome>,
}

fn corner_args(f: &FunctionTable, mask: u32) -> Vec<Subset> {
    let y = f.lattice();
    (0..f.arity()).map(|i| if mask >> i & 1 == 1 { y.top() } else { y.bottom() }).collect()
}

fn interpolation_laws_hold(f: &FunctionTable, pairs: &BTreeSet<(PhiVector, Polynomial)>) -> Result<bool, FactorError> {
    let q = p0(f)?;
    for (phi, p) in pairs {
        let ib = interpolation_bounds(f, phi)?;
        for mask in 0..1u32 << f.arity() {
            let e = corner_args(f, mask);
            let (lo, mid, hi, base) = (ib.lower.eval(&e), p.eval(&e), ib.upper.eval(&e), q.eval(&e));
            let i = mask as usize;
            if !(lo.is_subset(mid) && mid.is_subset(hi) && lo.is_subset(base) && base.is_subset(hi)) {
                return Ok(false);
            }
            if lo != ib.c_minus[i] || hi != ib.c_plus[i] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn compare_table(f: &FunctionTable, limits: &InstanceLimits) -> Result<CaseOutcome, OracleError> {
    let pseudo = is_pseudo_polynomial(f)?.holds();
    let brute = brute_force_factorizations(f, limits)?;
    let engine: BTreeSet<(PhiVector, Polynomial)> = if pseudo {
        let all = collect_factorizations(f, None)?;
        if !all.factorizations.iter().all(|fz| fz.verified) {
            return Err(FactorError::RouteDisagreement("an enumerated factorization failed verification".into()).into());
        }
        all.factorizations.into_iter().map(|fz| (fz.phi, fz.p)).collect()
    } else {
        BTreeSet::new()
    };
    let y = f.lattice();
    let interpolation_laws = !pseudo || interpolation_laws_hold(f, &engine)?;
    Ok(CaseOutcome {
        seed: 0,
        lattice_size: y.len(),
        domain_sizes: f.sizes(),
        pseudo_polynomial: pseudo,
        engine_count: engine.len(),
        oracle_count: brute.len(),
        verdict_agrees: pseudo == !brute.is_empty(),
        sets_agree: engine == brute,
        sugeno_found: brute.is_empty() || brute.iter().any(|(_, p)| p.is_sugeno(y)),
        interpolation_laws,
        error: None,
    })
}

/// Compares engine and oracle on an arbitrary table within `limits`.
pub fn compare_instance(f: &FunctionTable, limits: &InstanceLimits) -> CaseOutcome {
    compare_table(f, limits).unwrap_or_else(|e| CaseOutcome {
        seed: 0,
        lattice_size: f.lattice().len(),
        domain_sizes: f.sizes(),
        pseudo_polynomial: false,
        engine_count: 0,
        oracle_count: 0,
        verdict_agrees: false,
        sets_agree: false,
        sugeno_found: false,
        interpolation_laws: false,
        error: Some(e.to_string()),
    })
}

pub fn compare_seed(seed: u64, limits: &InstanceLimits) -> CaseOutcome {
    let f = random_instance(seed, limits);
    CaseOutcome { seed, ..compare_instance(&f, limits) }
}

/// Compares every seed in `seeds` in parallel; outcomes are in seed order.
pub fn compare_seeds(seeds: RangeInclusive<u64>, limits: &InstanceLimits) -> Vec<CaseOutcome> {
    let seeds: Vec<u64> = seeds.collect();
    seeds.par_iter().map(|&s| compare_seed(s, limits)).collect()
}

pub fn summarize(seeds: RangeInclusive<u64>, limits: &InstanceLimits, outcomes: &[CaseOutcome]) -> CompareSummary {
    let pseudo = outcomes.iter().filter(|o| o.pseudo_polynomial).count();
    let failures: Vec<CaseOutcome> = outcomes.iter().filter(|o| !o.passed()).cloned().collect();
    CompareSummary {
        seeds: (*seeds.start(), *seeds.end()),
        limits: limits.to_string(),
        cases: outcomes.len(),
        pseudo_polynomial: pseudo,
        non_pseudo_polynomial: outcomes.len() - pseudo,
        factorizations: outcomes.iter().map(|o| o.oracle_count).sum(),
        passed: failures.is_empty(),
        failures,
    }
}
