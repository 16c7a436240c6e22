use std::collections::HashSet;
use std::sync::Arc;

use crate::lattice::{Lattice, Subset};
use crate::polynomial::MAX_ARITY;

use super::FactorError;

/// Designated elements `0_{Xk}` and `1_{Xk}`, as indices into the domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DomainBounds {
    pub zero: usize,
    pub one: usize,
}

/// A named finite set `Xk` with optional designated elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Domain {
    pub name: String,
    pub elements: Vec<String>,
    pub bounds: Option<DomainBounds>,
}

impl Domain {
    pub fn new<S: Into<String>>(name: impl Into<String>, elements: impl IntoIterator<Item = S>) -> Self {
        Domain { name: name.into(), elements: elements.into_iter().map(Into::into).collect(), bounds: None }
    }

    pub fn with_bounds(mut self, zero: usize, one: usize) -> Self {
        self.bounds = Some(DomainBounds { zero, one });
        self
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, element: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == element)
    }
}

/// A total function `f: X1 × … × Xn → Y`, stored row-major (last coordinate
/// varies fastest).
#[derive(Debug, Clone)]
pub struct FunctionTable {
    lattice: Arc<Lattice>,
    domains: Vec<Domain>,
    values: Vec<Subset>,
    strides: Vec<usize>,
}

impl FunctionTable {
    pub fn new(lattice: Arc<Lattice>, domains: Vec<Domain>, values: Vec<Subset>) -> Result<Self, FactorError> {
        if domains.is_empty() || domains.len() > MAX_ARITY {
            return Err(FactorError::InvalidTable(format!(
                "number of coordinates must be between 1 and {MAX_ARITY}, got {}",
                domains.len()
            )));
        }
        for d in &domains {
            if d.len() < 2 {
                return Err(FactorError::InvalidTable(format!("domain `{}` needs at least two elements", d.name)));
            }
            let mut seen = HashSet::new();
            for e in &d.elements {
                if !seen.insert(e.as_str()) {
                    return Err(FactorError::InvalidTable(format!("duplicate element `{e}` in domain `{}`", d.name)));
                }
            }
            if let Some(b) = d.bounds {
                if b.zero >= d.len() || b.one >= d.len() || b.zero == b.one {
                    return Err(FactorError::InvalidTable(format!(
                        "designated elements of `{}` must be two distinct members",
                        d.name
                    )));
                }
            }
        }
        let mut strides = vec![1usize; domains.len()];
        for k in (0..domains.len() - 1).rev() {
            strides[k] = strides[k + 1]
                .checked_mul(domains[k + 1].len())
                .ok_or_else(|| FactorError::InvalidTable("table too large".into()))?;
        }
        let size = strides[0]
            .checked_mul(domains[0].len())
            .ok_or_else(|| FactorError::InvalidTable("table too large".into()))?;
        if values.len() != size {
            return Err(FactorError::InvalidTable(format!("expected {size} values, got {}", values.len())));
        }
        for &v in &values {
            lattice.check(v)?;
        }
        Ok(FunctionTable { lattice, domains, values, strides })
    }

    /// Tabulates `f` over the product of `domains`.
    pub fn from_fn(
        lattice: Arc<Lattice>,
        domains: Vec<Domain>,
        mut f: impl FnMut(&[usize]) -> Subset,
    ) -> Result<Self, FactorError> {
        let sizes: Vec<usize> = domains.iter().map(Domain::len).collect();
        let values = Tuples::new(&sizes).map(|x| f(&x)).collect();
        Self::new(lattice, domains, values)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn lattice_arc(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn arity(&self) -> usize {
        self.domains.len()
    }

    pub fn domains(&self) -> &[Domain] {
        &self.domains
    }

    pub fn domain(&self, k: usize) -> &Domain {
        &self.domains[k]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.domains.iter().map(Domain::len).collect()
    }

    pub fn values(&self) -> &[Subset] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn index_of(&self, tuple: &[usize]) -> usize {
        tuple.iter().zip(&self.strides).map(|(x, s)| x * s).sum()
    }

    pub fn tuple_of(&self, index: usize) -> Vec<usize> {
        (0..self.arity()).map(|k| self.coord(index, k)).collect()
    }

    /// `k`-th component of the tuple at `index`.
    pub fn coord(&self, index: usize, k: usize) -> usize {
        index / self.strides[k] % self.domains[k].len()
    }

    /// Index of `x_k^a`: the tuple at `index` with its `k`-th component set to `a`.
    pub fn substitute(&self, index: usize, k: usize, a: usize) -> usize {
        index - self.coord(index, k) * self.strides[k] + a * self.strides[k]
    }

    pub fn value(&self, tuple: &[usize]) -> Subset {
        self.values[self.index_of(tuple)]
    }

    pub fn value_at(&self, index: usize) -> Subset {
        self.values[index]
    }

    /// Indices of all tuples whose `k`-th component is `a`, ascending.
    pub fn slice_indices(&self, k: usize, a: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.values.len()).filter(move |&i| self.coord(i, k) == a)
    }

    pub fn tuples(&self) -> Tuples {
        Tuples::new(&self.sizes())
    }

    pub fn bounds(&self, k: usize) -> Option<DomainBounds> {
        self.domains[k].bounds
    }

    pub fn has_bounds(&self) -> bool {
        self.domains.iter().all(|d| d.bounds.is_some())
    }

    pub fn require_bounds(&self) -> Result<Vec<DomainBounds>, FactorError> {
        self.domains
            .iter()
            .enumerate()
            .map(|(k, d)| d.bounds.ok_or(FactorError::BoundsMissing { coordinate: k }))
            .collect()
    }

    /// Copy of the table with the given designated elements.
    pub fn with_bounds(&self, bounds: &[DomainBounds]) -> Result<Self, FactorError> {
        if bounds.len() != self.arity() {
            return Err(FactorError::ArityMismatch { expected: self.arity(), got: bounds.len() });
        }
        let mut domains = self.domains.clone();
        for (d, &b) in domains.iter_mut().zip(bounds) {
            d.bounds = Some(b);
        }
        Self::new(self.lattice.clone(), domains, self.values.clone())
    }

    /// Index of `1̂_I`: component `1_{Xi}` for `i ∈ I`, `0_{Xi}` otherwise.
    pub fn corner_index(&self, bounds: &[DomainBounds], mask: u32) -> usize {
        (0..self.arity())
            .map(|i| {
                let b = bounds[i];
                let a = if mask >> i & 1 == 1 { b.one } else { b.zero };
                a * self.strides[i]
            })
            .sum()
    }

    pub fn format_tuple(&self, tuple: &[usize]) -> String {
        let parts: Vec<&str> = tuple.iter().enumerate().map(|(k, &x)| self.domains[k].elements[x].as_str()).collect();
        format!("({})", parts.join(","))
    }
}

/// Odometer over a product of index ranges, last coordinate fastest.
pub struct Tuples {
    sizes: Vec<usize>,
    current: Option<Vec<usize>>,
}

impl Tuples {
    pub fn new(sizes: &[usize]) -> Self {
        let current = if sizes.contains(&0) { None } else { Some(vec![0; sizes.len()]) };
        Tuples { sizes: sizes.to_vec(), current }
    }
}

impl Iterator for Tuples {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().unwrap();
        let mut k = cur.len();
        loop {
            if k == 0 {
                self.current = None;
                break;
            }
            k -= 1;
            cur[k] += 1;
            if cur[k] < self.sizes[k] {
                break;
            }
            cur[k] = 0;
        }
        Some(out)
    }
}
