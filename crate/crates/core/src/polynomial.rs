//! Lattice polynomial functions in disjunctive normal form.
//!
//! An `n`-ary polynomial is stored by its coefficient family
//! `d_I = p(𝟏_I)` for every `I ⊆ [n]`, indexed by bitmask (bit `i-1` stands
//! for variable `i`). The family is always kept canonical:
//! `d_I = ⋁_{J⊆I} d_J`, i.e. monotone under inclusion. Evaluation is
//! `p(y) = ⋁_I (d_I ∧ ⋀_{i∈I} y_i)`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::lattice::{Lattice, LatticeError, Subset};

/// Hard cap on the arity; coefficient families are dense `2^n` arrays.
pub const MAX_ARITY: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolynomialError {
    #[error("arity {0} exceeds the supported maximum of {MAX_ARITY}")]
    ArityTooLarge(usize),
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("variable set {0:#b} is out of range for the arity")]
    VariableOutOfRange(u32),
    #[error("unary bounds not ordered: {s} ≰ {t}")]
    BoundsNotOrdered { s: String, t: String },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// An `n`-ary lattice polynomial function in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial {
    arity: usize,
    coeffs: Vec<Subset>,
}

impl Polynomial {
    /// Canonicalizes an arbitrary coefficient family; missing entries are `0`.
    pub fn from_raw_coeffs(
        lattice: &Lattice,
        arity: usize,
        raw: impl IntoIterator<Item = (u32, Subset)>,
    ) -> Result<Self, PolynomialError> {
        if arity > MAX_ARITY {
            return Err(PolynomialError::ArityTooLarge(arity));
        }
        let mut coeffs = vec![Subset::EMPTY; 1 << arity];
        for (mask, c) in raw {
            if (mask as usize) >= coeffs.len() {
                return Err(PolynomialError::VariableOutOfRange(mask));
            }
            lattice.check(c)?;
            coeffs[mask as usize] = coeffs[mask as usize].union(c);
        }
        Ok(Self::canonicalize(arity, coeffs))
    }

    /// Dense variant of [`Polynomial::from_raw_coeffs`], `raw[I]` for each bitmask.
    pub fn from_dense(lattice: &Lattice, arity: usize, raw: &[Subset]) -> Result<Self, PolynomialError> {
        if arity > MAX_ARITY {
            return Err(PolynomialError::ArityTooLarge(arity));
        }
        if raw.len() != 1 << arity {
            return Err(PolynomialError::ArityMismatch { expected: 1 << arity, got: raw.len() });
        }
        Self::from_raw_coeffs(lattice, arity, raw.iter().enumerate().map(|(i, &c)| (i as u32, c)))
    }

    /// Wraps a family already known to be canonical and inside the carrier.
    pub(crate) fn from_canonical_unchecked(arity: usize, coeffs: Vec<Subset>) -> Self {
        debug_assert_eq!(coeffs.len(), 1 << arity);
        debug_assert!(is_monotone_family(arity, &coeffs));
        Polynomial { arity, coeffs }
    }

    fn canonicalize(arity: usize, mut coeffs: Vec<Subset>) -> Self {
        // Zeta transform over the subset lattice with ∨.
        for i in 0..arity {
            let bit = 1 << i;
            for mask in 0..coeffs.len() {
                if mask & bit != 0 {
                    coeffs[mask] = coeffs[mask].union(coeffs[mask ^ bit]);
                }
            }
        }
        Polynomial { arity, coeffs }
    }

    pub fn constant(value: Subset, arity: usize) -> Self {
        Polynomial { arity, coeffs: vec![value; 1 << arity] }
    }

    /// `p(y) = s ∨ (t ∧ y)`, i.e. `med(s, y, t)`.
    pub fn unary_median_form(lattice: &Lattice, s: Subset, t: Subset) -> Result<Self, PolynomialError> {
        lattice.check(s)?;
        lattice.check(t)?;
        if !s.is_subset(t) {
            return Err(PolynomialError::BoundsNotOrdered { s: lattice.name(s), t: lattice.name(t) });
        }
        Ok(Polynomial { arity: 1, coeffs: vec![s, t] })
    }

    /// The `n`-ary projection `p(y) = y_i` (1-based `i`).
    pub fn projection(lattice: &Lattice, arity: usize, i: usize) -> Result<Self, PolynomialError> {
        if i == 0 || i > arity {
            return Err(PolynomialError::VariableOutOfRange(i as u32));
        }
        let bit = 1usize << (i - 1);
        let coeffs = (0..1usize << arity).map(|m| if m & bit != 0 { lattice.top() } else { Subset::EMPTY }).collect();
        Ok(Polynomial { arity, coeffs })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Canonical coefficients `d_I = p(𝟏_I)`, indexed by bitmask.
    pub fn coeffs(&self) -> &[Subset] {
        &self.coeffs
    }

    pub fn coeff(&self, mask: u32) -> Subset {
        self.coeffs[mask as usize]
    }

    /// Evaluates with argument checking.
    pub fn evaluate(&self, lattice: &Lattice, args: &[Subset]) -> Result<Subset, PolynomialError> {
        if args.len() != self.arity {
            return Err(PolynomialError::ArityMismatch { expected: self.arity, got: args.len() });
        }
        for &a in args {
            lattice.check(a)?;
        }
        Ok(self.eval(args))
    }

    /// Evaluates without checking that the arguments lie in the carrier.
    pub fn eval(&self, args: &[Subset]) -> Subset {
        debug_assert_eq!(args.len(), self.arity);
        // meets[I] = ⋀_{i∈I} y_i, built from I without its lowest bit.
        let size = self.coeffs.len();
        let mut small = [Subset(u64::MAX); 64];
        let mut large = Vec::new();
        let meets: &mut [Subset] = if size <= small.len() {
            &mut small[..size]
        } else {
            large.resize(size, Subset(u64::MAX));
            &mut large
        };
        let mut acc = self.coeffs[0];
        for mask in 1..size {
            let low = mask.trailing_zeros() as usize;
            meets[mask] = meets[mask & (mask - 1)].intersection(args[low]);
            acc = acc.union(self.coeffs[mask].intersection(meets[mask]));
        }
        acc
    }

    /// `p(0) = 0` and `p(1) = 1`.
    pub fn is_sugeno(&self, lattice: &Lattice) -> bool {
        self.coeffs[0] == lattice.bottom() && self.coeffs[self.coeffs.len() - 1] == lattice.top()
    }

    /// Equality of polynomial functions on `Y^n`.
    pub fn equals(&self, other: &Polynomial) -> Result<bool, PolynomialError> {
        if self.arity != other.arity {
            return Err(PolynomialError::ArityMismatch { expected: self.arity, got: other.arity });
        }
        Ok(self.coeffs == other.coeffs)
    }

    /// Pointwise order `p ≤ q`, decided on coefficients.
    pub fn leq(&self, other: &Polynomial) -> Result<bool, PolynomialError> {
        if self.arity != other.arity {
            return Err(PolynomialError::ArityMismatch { expected: self.arity, got: other.arity });
        }
        Ok(self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a.is_subset(*b)))
    }

    /// Fixes every argument except the `k`-th (0-based) and returns the
    /// resulting unary polynomial.
    pub fn restrict_to(&self, lattice: &Lattice, k: usize, fixed: &[Subset]) -> Polynomial {
        let mut args = fixed.to_vec();
        args[k] = lattice.bottom();
        let s = self.eval(&args);
        args[k] = lattice.top();
        let t = self.eval(&args);
        Polynomial { arity: 1, coeffs: vec![s, t] }
    }

    /// Irredundant-ish DNF rendering, e.g. `(N ∧ y1) ∨ (y1 ∧ y2)`.
    pub fn to_dnf_string(&self, lattice: &Lattice) -> String {
        let top = lattice.top();
        let mut terms = Vec::new();
        for mask in 0..self.coeffs.len() {
            let c = self.coeffs[mask];
            if c.is_empty() {
                continue;
            }
            let dominated = (0..self.arity).any(|i| mask >> i & 1 == 1 && self.coeffs[mask ^ (1 << i)] == c);
            if dominated {
                continue;
            }
            let mut parts = Vec::new();
            if c != top || mask == 0 {
                parts.push(lattice.name(c));
            }
            for i in 0..self.arity {
                if mask >> i & 1 == 1 {
                    parts.push(format!("y{}", i + 1));
                }
            }
            terms.push(parts);
        }
        match terms.len() {
            0 => lattice.name(Subset::EMPTY),
            1 => terms[0].join(" ∧ "),
            _ => terms
                .iter()
                .map(|t| if t.len() > 1 { format!("({})", t.join(" ∧ ")) } else { t[0].clone() })
                .collect::<Vec<_>>()
                .join(" ∨ "),
        }
    }

    /// Coefficients keyed by comma-separated 1-based variable lists
    /// (`""`, `"1"`, `"1,2"`, …), named by the lattice.
    pub fn named_coeffs(&self, lattice: &Lattice) -> BTreeMap<u32, (String, String)> {
        (0..self.coeffs.len() as u32).map(|m| (m, (mask_key(m), lattice.name(self.coeffs[m as usize])))).collect()
    }
}

/// `"1,3"` for the bitmask `0b101`.
pub fn mask_key(mask: u32) -> String {
    (0..32).filter(|i| mask >> i & 1 == 1).map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
}

/// Inverse of [`mask_key`].
pub fn parse_mask_key(key: &str, arity: usize) -> Option<u32> {
    let key = key.trim();
    if key.is_empty() {
        return Some(0);
    }
    let mut mask = 0u32;
    for part in key.split(',') {
        let i: usize = part.trim().parse().ok()?;
        if i == 0 || i > arity {
            return None;
        }
        mask |= 1 << (i - 1);
    }
    Some(mask)
}

pub fn is_monotone_family(arity: usize, coeffs: &[Subset]) -> bool {
    (0..coeffs.len()).all(|m| (0..arity).all(|i| m >> i & 1 == 0 || coeffs[m ^ (1 << i)].is_subset(coeffs[m])))
}

/// Iterator over all canonical families `d` with `lo_I ≤ d_I ≤ hi_I`,
/// `d_I ∈ Y`, in lexicographic bitmask order (carrier order per position).
pub struct MonotoneFamilies<'a> {
    lattice: &'a Lattice,
    arity: usize,
    lo: Vec<Subset>,
    hi: Vec<Subset>,
    current: Vec<Subset>,
    // candidate lists and cursor per position on the DFS stack
    stack: Vec<(Vec<Subset>, usize)>,
    started: bool,
    done: bool,
}

impl<'a> MonotoneFamilies<'a> {
    pub fn new(lattice: &'a Lattice, arity: usize, lo: Vec<Subset>, hi: Vec<Subset>) -> Self {
        let size = 1usize << arity;
        assert_eq!(lo.len(), size);
        assert_eq!(hi.len(), size);
        MonotoneFamilies {
            lattice,
            arity,
            lo,
            hi,
            current: vec![Subset::EMPTY; size],
            stack: Vec::with_capacity(size),
            started: false,
            done: false,
        }
    }

    fn candidates(&self, mask: usize) -> Vec<Subset> {
        let mut floor = self.lo[mask];
        for i in 0..self.arity {
            if mask >> i & 1 == 1 {
                floor = floor.union(self.current[mask ^ (1 << i)]);
            }
        }
        let ceil = self.hi[mask];
        self.lattice.elements().iter().copied().filter(|y| floor.is_subset(*y) && y.is_subset(ceil)).collect()
    }

    /// Extends the stack to full depth choosing first candidates; returns
    /// false if some position has no candidate, leaving the stack partial.
    fn descend(&mut self) -> bool {
        let size = self.current.len();
        while self.stack.len() < size {
            let pos = self.stack.len();
            let cands = self.candidates(pos);
            if cands.is_empty() {
                return false;
            }
            self.current[pos] = cands[0];
            self.stack.push((cands, 0));
        }
        true
    }

    /// Moves to the next sibling at the deepest position that has one.
    fn advance(&mut self) -> bool {
        while let Some((cands, idx)) = self.stack.last_mut() {
            if *idx + 1 < cands.len() {
                *idx += 1;
                let v = cands[*idx];
                let pos = self.stack.len() - 1;
                self.current[pos] = v;
                return true;
            }
            self.stack.pop();
        }
        false
    }
}

impl Iterator for MonotoneFamilies<'_> {
    type Item = Polynomial;

    fn next(&mut self) -> Option<Polynomial> {
        if self.done {
            return None;
        }
        if self.started && !self.advance() {
            self.done = true;
            return None;
        }
        self.started = true;
        loop {
            if self.descend() {
                return Some(Polynomial::from_canonical_unchecked(self.arity, self.current.clone()));
            }
            if !self.advance() {
                self.done = true;
                return None;
            }
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| format!("{:#x}", c.bits())).collect();
        write!(f, "Polynomial/{}[{}]", self.arity, parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Universe;

    fn airline() -> Lattice {
        let u = Universe::numbered(3).unwrap();
        Lattice::from_subsets(
            u,
            [("B", Subset(0)), ("N", Subset(1)), ("D", Subset(2)), ("G", Subset(3)), ("V", Subset(7))],
        )
        .unwrap()
    }

    fn chain(levels: usize) -> Lattice {
        let u = Universe::numbered(levels - 1).unwrap();
        Lattice::from_subsets(u, (0..levels).map(|k| (k.to_string(), Subset::full(k)))).unwrap()
    }

    fn p0(y: &Lattice) -> Polynomial {
        let e = |n| y.element(n).unwrap();
        Polynomial::from_raw_coeffs(y, 2, [(0, e("B")), (1, e("N")), (2, e("B")), (3, e("V"))]).unwrap()
    }

    #[test]
    fn airline_p0_values() {
        let y = airline();
        let e = |n| y.element(n).unwrap();
        let p = p0(&y);
        assert_eq!(p.coeffs(), &[e("B"), e("N"), e("B"), e("V")]);
        assert_eq!(p.evaluate(&y, &[e("G"), e("V")]).unwrap(), e("G"));
        assert_eq!(p.evaluate(&y, &[e("V"), e("N")]).unwrap(), e("N"));
        assert!(p.is_sugeno(&y));
        assert_eq!(p.to_dnf_string(&y), "(N ∧ y1) ∨ (y1 ∧ y2)");
    }

    #[test]
    fn canonicalization_joins_lower_coefficients() {
        let y = airline();
        let e = |n| y.element(n).unwrap();
        let p = Polynomial::from_raw_coeffs(&y, 1, [(0, e("G")), (1, e("N"))]).unwrap();
        assert_eq!(p.coeffs(), &[e("G"), e("G")]);
        let zero = Polynomial::from_raw_coeffs(&y, 2, []).unwrap();
        assert_eq!(zero, Polynomial::constant(Subset::EMPTY, 2));
        assert!(matches!(
            Polynomial::from_raw_coeffs(&y, 1, [(0, Subset(4))]),
            Err(PolynomialError::Lattice(LatticeError::ForeignElement(_)))
        ));
        assert!(matches!(Polynomial::from_raw_coeffs(&y, 21, []), Err(PolynomialError::ArityTooLarge(21))));
    }

    #[test]
    fn sugeno_test() {
        let y = airline();
        let med = Polynomial::from_raw_coeffs(&y, 3, [(3, y.top()), (5, y.top()), (6, y.top())]).unwrap();
        assert!(med.is_sugeno(&y));
        for &a in y.elements() {
            for &b in y.elements() {
                for &c in y.elements() {
                    assert_eq!(med.eval(&[a, b, c]), y.median(a, b, c).unwrap());
                }
            }
        }
        let g = y.element("G").unwrap();
        assert!(!Polynomial::constant(g, 2).is_sugeno(&y));
        for &v in y.elements() {
            assert_eq!(p0(&y).eval(&[v, v]), v);
        }
    }

    #[test]
    fn unary_median_form_examples() {
        let y = airline();
        let e = |n| y.element(n).unwrap();
        let id = Polynomial::unary_median_form(&y, e("B"), e("V")).unwrap();
        for &v in y.elements() {
            assert_eq!(id.eval(&[v]), v);
        }
        let u = Polynomial::unary_median_form(&y, e("N"), e("V")).unwrap();
        assert_eq!(u.eval(&[e("D")]), e("G"));
        let c = Polynomial::unary_median_form(&y, e("D"), e("D")).unwrap();
        assert!(y.elements().iter().all(|&v| c.eval(&[v]) == e("D")));
        assert!(matches!(
            Polynomial::unary_median_form(&y, e("N"), e("D")),
            Err(PolynomialError::BoundsNotOrdered { .. })
        ));
    }

    #[test]
    fn equality_examples() {
        let y = airline();
        let e = |n| y.element(n).unwrap();
        // (y1 ∧ N) ∨ (y1 ∧ y2) written with raw coefficients {1}:N, {1,2}:V
        let q = Polynomial::from_raw_coeffs(&y, 2, [(1, e("N")), (3, e("V"))]).unwrap();
        assert!(p0(&y).equals(&q).unwrap());
        let mut raised = p0(&y).coeffs().to_vec();
        raised[1] = e("G");
        let r = Polynomial::from_dense(&y, 2, &raised).unwrap();
        assert!(!p0(&y).equals(&r).unwrap());
        assert!(Polynomial::constant(e("N"), 0).equals(&Polynomial::constant(e("N"), 0)).unwrap());
        assert!(!Polynomial::constant(e("N"), 0).equals(&Polynomial::constant(e("D"), 0)).unwrap());
        assert!(p0(&y).equals(&Polynomial::constant(e("N"), 1)).is_err());
    }

    #[test]
    fn monotone_family_counts_on_chains() {
        let two = chain(2);
        let all = |l: &Lattice, n: usize| {
            MonotoneFamilies::new(l, n, vec![l.bottom(); 1 << n], vec![l.top(); 1 << n]).count()
        };
        assert_eq!(all(&two, 0), 2);
        assert_eq!(all(&two, 1), 3);
        assert_eq!(all(&chain(3), 1), 6);
        // monotone Boolean functions of 2 variables
        assert_eq!(all(&two, 2), 6);
    }

    #[test]
    fn empty_interval_yields_nothing() {
        let y = chain(3);
        let lo = vec![Subset::full(2), Subset::full(2)];
        let hi = vec![Subset::full(2), Subset::full(1)];
        assert_eq!(MonotoneFamilies::new(&y, 1, lo, hi).count(), 0);
    }

    #[test]
    fn mask_keys_round_trip() {
        assert_eq!(mask_key(0), "");
        assert_eq!(mask_key(0b101), "1,3");
        assert_eq!(parse_mask_key("1,3", 3), Some(0b101));
        assert_eq!(parse_mask_key("4", 3), None);
    }

    #[test]
    fn restriction_matches_unary_median_form() {
        let y = airline();
        let p = p0(&y);
        for &z in y.elements() {
            let u = p.restrict_to(&y, 1, &[z, Subset::EMPTY]);
            for &v in y.elements() {
                assert_eq!(u.eval(&[v]), p.eval(&[z, v]));
                assert_eq!(u.eval(&[v]), y.median(u.coeff(0), v, u.coeff(1)).unwrap());
            }
        }
    }
}
