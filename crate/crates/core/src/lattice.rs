//! Finite distributive lattices embedded in a power set.
//!
//! A [`Lattice`] is a family of subsets of a finite [`Universe`] that contains
//! `∅` and `U` and is closed under union and intersection. Meet is
//! intersection, join is union, and the family induces a closure operator
//! ([`Lattice::closure`]) and an interior operator ([`Lattice::interior`]) on
//! arbitrary subsets of the universe.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

/// Largest supported universe; subsets are stored as `u64` bit vectors.
pub const MAX_ATOMS: usize = 64;

/// Universes up to this size get precomputed closure/interior tables.
const TABLE_MAX_ATOMS: usize = 16;
/// Upper bound on `2^|U| * |Y|` work spent building those tables.
const TABLE_BUDGET: usize = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("duplicate atom `{0}` in universe")]
    DuplicateAtom(String),
    #[error("universe has {0} atoms, at most {MAX_ATOMS} are supported")]
    TooManyAtoms(usize),
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("elements `{0}` and `{1}` denote the same subset")]
    DuplicateElement(String, String),
    #[error("family is not closed: {a} {op} {b} is missing")]
    NotClosed { a: String, b: String, op: SetOp },
    #[error("family must contain both the empty set and the whole universe")]
    MissingBounds,
    #[error("{0} is not an element of the lattice")]
    ForeignElement(String),
    #[error("unknown lattice element `{0}`")]
    UnknownElement(String),
    #[error("not a partial order: {0}")]
    NotAPartialOrder(PosetViolation),
}

/// The set operation whose result was missing from a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetOp {
    Union,
    Intersection,
}

impl fmt::Display for SetOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetOp::Union => f.write_str("∪"),
            SetOp::Intersection => f.write_str("∩"),
        }
    }
}

/// Witness that a relation fails to be a partial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PosetViolation {
    UnknownElement(String),
    Antisymmetry(String, String),
    Transitivity(String, String, String),
}

impl fmt::Display for PosetViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PosetViolation::UnknownElement(e) => write!(f, "unknown element `{e}`"),
            PosetViolation::Antisymmetry(a, b) => {
                write!(f, "{a} ≤ {b} and {b} ≤ {a} but {a} ≠ {b}")
            }
            PosetViolation::Transitivity(a, b, c) => {
                write!(f, "{a} ≤ {b} and {b} ≤ {c} but not {a} ≤ {c}")
            }
        }
    }
}

/// A subset of the universe, as a characteristic bit vector.
///
/// Bit `i` is set iff atom `i` of the universe belongs to the set. Ordering
/// is by `(cardinality, bits)`, which is the canonical carrier order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(size: usize) -> Subset {
        if size >= 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << size) - 1)
        }
    }

    pub fn singleton(atom: usize) -> Subset {
        Subset(1u64 << atom)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, atom: usize) -> bool {
        self.0 >> atom & 1 == 1
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn is_subset(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Atom indices in ascending order.
    pub fn atoms(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..64).filter(move |i| bits >> i & 1 == 1)
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.len(), self.0).cmp(&(other.len(), other.0))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// The finite set `U` whose power set hosts the lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Universe {
    atoms: Vec<String>,
    index: HashMap<String, usize>,
}

impl Universe {
    pub fn new<S: Into<String>>(atoms: impl IntoIterator<Item = S>) -> Result<Self, LatticeError> {
        let atoms: Vec<String> = atoms.into_iter().map(Into::into).collect();
        if atoms.len() > MAX_ATOMS {
            return Err(LatticeError::TooManyAtoms(atoms.len()));
        }
        let mut index = HashMap::with_capacity(atoms.len());
        for (i, a) in atoms.iter().enumerate() {
            if index.insert(a.clone(), i).is_some() {
                return Err(LatticeError::DuplicateAtom(a.clone()));
            }
        }
        Ok(Universe { atoms, index })
    }

    /// Universe `{1, …, m}` with atoms named by their number.
    pub fn numbered(m: usize) -> Result<Self, LatticeError> {
        Universe::new((1..=m).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn atom_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.atoms.len())
    }

    pub fn subset<S: AsRef<str>>(&self, names: impl IntoIterator<Item = S>) -> Result<Subset, LatticeError> {
        let mut bits = 0u64;
        for n in names {
            let n = n.as_ref();
            let i = self.atom_index(n).ok_or_else(|| LatticeError::UnknownAtom(n.to_string()))?;
            bits |= 1 << i;
        }
        Ok(Subset(bits))
    }

    pub fn atom_names(&self, s: Subset) -> Vec<&str> {
        s.atoms().filter(|&i| i < self.atoms.len()).map(|i| self.atoms[i].as_str()).collect()
    }

    /// `{a,b}` rendering of a raw subset.
    pub fn format_subset(&self, s: Subset) -> String {
        format!("{{{}}}", self.atom_names(s).join(","))
    }
}

/// A finite partial order, given by its elements and a generating set of
/// `≤` pairs. Reflexive pairs are implied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    pub elems: Vec<String>,
    pub leq: Vec<(String, String)>,
}

/// A finite distributive lattice as a ∪/∩-closed family of subsets.
#[derive(Debug, Clone)]
pub struct Lattice {
    universe: Universe,
    carrier: Vec<Subset>,
    names: Vec<String>,
    index: HashMap<Subset, usize>,
    name_index: HashMap<String, usize>,
    cl_table: Option<Vec<Subset>>,
    int_table: Option<Vec<Subset>>,
}

impl Lattice {
    /// Builds the lattice whose carrier is exactly the given named family.
    ///
    /// Fails instead of closing the family; see [`close_family`].
    pub fn from_subsets<S: Into<String>>(
        universe: Universe,
        named_sets: impl IntoIterator<Item = (S, Subset)>,
    ) -> Result<Self, LatticeError> {
        let full = universe.full();
        let mut entries: Vec<(Subset, String)> = Vec::new();
        let mut seen_names = HashMap::new();
        let mut seen_sets: HashMap<Subset, String> = HashMap::new();
        for (name, set) in named_sets {
            let name = name.into();
            if !set.is_subset(full) {
                let extra = set.0 & !full.0;
                return Err(LatticeError::UnknownAtom(format!("#{}", extra.trailing_zeros())));
            }
            if seen_names.insert(name.clone(), ()).is_some() {
                return Err(LatticeError::DuplicateName(name));
            }
            if let Some(prev) = seen_sets.insert(set, name.clone()) {
                return Err(LatticeError::DuplicateElement(prev, name));
            }
            entries.push((set, name));
        }
        if !seen_sets.contains_key(&Subset::EMPTY) || !seen_sets.contains_key(&full) {
            return Err(LatticeError::MissingBounds);
        }
        for (i, &(a, ref an)) in entries.iter().enumerate() {
            for &(b, ref bn) in &entries[i + 1..] {
                for (op, r) in [(SetOp::Union, a.union(b)), (SetOp::Intersection, a.intersection(b))] {
                    if !seen_sets.contains_key(&r) {
                        return Err(LatticeError::NotClosed { a: an.clone(), b: bn.clone(), op });
                    }
                }
            }
        }
        entries.sort();
        let (carrier, names): (Vec<_>, Vec<_>) = entries.into_iter().unzip();
        Ok(Self::assemble(universe, carrier, names))
    }

    /// Builds the lattice from an unnamed family; elements get `{a,b}` names.
    pub fn from_family(universe: Universe, family: impl IntoIterator<Item = Subset>) -> Result<Self, LatticeError> {
        let sets: BTreeSet<Subset> = family.into_iter().collect();
        let named: Vec<(String, Subset)> = sets.into_iter().map(|s| (universe.format_subset(s), s)).collect();
        Self::from_subsets(universe, named)
    }

    /// The lattice of down-sets of a finite poset (Birkhoff).
    pub fn from_join_irreducibles(poset: &Poset) -> Result<Self, LatticeError> {
        let universe = Universe::new(poset.elems.iter().cloned())?;
        let n = universe.len();
        let mut below = vec![vec![false; n]; n];
        for (i, row) in below.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in &poset.leq {
            let ia = universe
                .atom_index(a)
                .ok_or_else(|| LatticeError::NotAPartialOrder(PosetViolation::UnknownElement(a.clone())))?;
            let ib = universe
                .atom_index(b)
                .ok_or_else(|| LatticeError::NotAPartialOrder(PosetViolation::UnknownElement(b.clone())))?;
            below[ia][ib] = true;
        }
        let name = |i: usize| universe.atoms()[i].clone();
        for a in 0..n {
            for b in 0..n {
                if a != b && below[a][b] && below[b][a] {
                    return Err(LatticeError::NotAPartialOrder(PosetViolation::Antisymmetry(name(a), name(b))));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if !below[a][b] {
                    continue;
                }
                for c in 0..n {
                    if below[b][c] && !below[a][c] {
                        return Err(LatticeError::NotAPartialOrder(PosetViolation::Transitivity(
                            name(a),
                            name(b),
                            name(c),
                        )));
                    }
                }
            }
        }
        // Down-sets are exactly the unions of principal down-sets.
        let principal: Vec<Subset> =
            (0..n).map(|p| Subset((0..n).filter(|&q| below[q][p]).fold(0, |acc, q| acc | 1 << q))).collect();
        let mut family: BTreeSet<Subset> = BTreeSet::from([Subset::EMPTY]);
        let mut frontier = vec![Subset::EMPTY];
        while let Some(s) = frontier.pop() {
            for &d in &principal {
                let t = s.union(d);
                if family.insert(t) {
                    frontier.push(t);
                }
            }
        }
        Self::from_family(universe, family)
    }

    fn assemble(universe: Universe, carrier: Vec<Subset>, names: Vec<String>) -> Self {
        let index = carrier.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let name_index = names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        let mut lattice = Lattice { universe, carrier, names, index, name_index, cl_table: None, int_table: None };
        let m = lattice.universe.len();
        if m <= TABLE_MAX_ATOMS && (1usize << m).saturating_mul(lattice.carrier.len()) <= TABLE_BUDGET {
            let cl = (0..1u64 << m).map(|s| lattice.closure_scan(Subset(s))).collect();
            let int = (0..1u64 << m).map(|s| lattice.interior_scan(Subset(s))).collect();
            lattice.cl_table = Some(cl);
            lattice.int_table = Some(int);
        }
        lattice
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    /// Carrier in canonical `(cardinality, bits)` order.
    pub fn elements(&self) -> &[Subset] {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn bottom(&self) -> Subset {
        Subset::EMPTY
    }

    pub fn top(&self) -> Subset {
        self.universe.full()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.index.contains_key(&s)
    }

    /// Position of an element in the canonical carrier order.
    pub fn position(&self, s: Subset) -> Option<usize> {
        self.index.get(&s).copied()
    }

    pub fn element(&self, name: &str) -> Result<Subset, LatticeError> {
        self.name_index
            .get(name)
            .map(|&i| self.carrier[i])
            .ok_or_else(|| LatticeError::UnknownElement(name.to_string()))
    }

    /// Display name of a carrier element, `{a,b}` for raw subsets.
    pub fn name(&self, s: Subset) -> String {
        match self.index.get(&s) {
            Some(&i) => self.names[i].clone(),
            None => self.universe.format_subset(s),
        }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Names a raw subset: `y` for carrier elements, `ȳ` for complements of
    /// carrier elements, `{a,b}` otherwise.
    pub fn describe(&self, s: Subset) -> String {
        if let Some(&i) = self.index.get(&s) {
            return self.names[i].clone();
        }
        if let Some(&i) = self.index.get(&self.complement(s)) {
            return overline(&self.names[i]);
        }
        self.universe.format_subset(s)
    }

    pub fn check(&self, s: Subset) -> Result<Subset, LatticeError> {
        if self.contains(s) {
            Ok(s)
        } else {
            Err(LatticeError::ForeignElement(self.universe.format_subset(s)))
        }
    }

    pub fn leq(&self, a: Subset, b: Subset) -> bool {
        a.is_subset(b)
    }

    pub fn meet(&self, a: Subset, b: Subset) -> Result<Subset, LatticeError> {
        Ok(self.check(a)?.intersection(self.check(b)?))
    }

    pub fn join(&self, a: Subset, b: Subset) -> Result<Subset, LatticeError> {
        Ok(self.check(a)?.union(self.check(b)?))
    }

    /// `U \ S`; not necessarily a carrier element.
    pub fn complement(&self, s: Subset) -> Subset {
        Subset(!s.0 & self.top().0)
    }

    /// Least carrier element containing `s`.
    pub fn closure(&self, s: Subset) -> Subset {
        match &self.cl_table {
            Some(t) => t[(s.0 & self.top().0) as usize],
            None => self.closure_scan(s),
        }
    }

    /// Greatest carrier element contained in `s`.
    pub fn interior(&self, s: Subset) -> Subset {
        match &self.int_table {
            Some(t) => t[(s.0 & self.top().0) as usize],
            None => self.interior_scan(s),
        }
    }

    fn closure_scan(&self, s: Subset) -> Subset {
        self.carrier.iter().filter(|y| s.is_subset(**y)).fold(self.top(), |acc, &y| acc.intersection(y))
    }

    fn interior_scan(&self, s: Subset) -> Subset {
        self.carrier.iter().filter(|y| y.is_subset(s)).fold(Subset::EMPTY, |acc, &y| acc.union(y))
    }

    pub fn median(&self, a: Subset, b: Subset, c: Subset) -> Result<Subset, LatticeError> {
        self.check(a)?;
        self.check(b)?;
        self.check(c)?;
        Ok(median_of(a, b, c))
    }

    /// Whether the carrier is totally ordered by inclusion.
    pub fn is_chain(&self) -> bool {
        self.carrier.windows(2).all(|w| w[0].is_subset(w[1]))
    }

    /// Join-irreducible elements ordered by inclusion.
    pub fn join_irreducibles(&self) -> Vec<Subset> {
        self.carrier
            .iter()
            .copied()
            .filter(|&j| {
                !j.is_empty()
                    && self
                        .carrier
                        .iter()
                        .filter(|&&y| y != j && y.is_subset(j))
                        .fold(Subset::EMPTY, |acc, &y| acc.union(y))
                        != j
            })
            .collect()
    }

    /// The poset of join-irreducibles, named by carrier names.
    pub fn join_irreducible_poset(&self) -> Poset {
        let jis = self.join_irreducibles();
        let elems = jis.iter().map(|&j| self.name(j)).collect();
        let mut leq = Vec::new();
        for &a in &jis {
            for &b in &jis {
                if a != b && a.is_subset(b) {
                    leq.push((self.name(a), self.name(b)));
                }
            }
        }
        Poset { elems, leq }
    }
}

/// `(a∧b)∨(b∧c)∨(c∧a)` on raw subsets.
pub fn median_of(a: Subset, b: Subset, c: Subset) -> Subset {
    Subset((a.0 & b.0) | (b.0 & c.0) | (c.0 & a.0))
}

/// Smallest ∪/∩-closed family containing `sets`, `∅` and `U`.
///
/// Convenience only: [`Lattice::from_subsets`] never closes its input.
pub fn close_family(universe: &Universe, sets: impl IntoIterator<Item = Subset>) -> BTreeSet<Subset> {
    let full = universe.full();
    let mut family: BTreeSet<Subset> = sets.into_iter().map(|s| s.intersection(full)).collect();
    family.insert(Subset::EMPTY);
    family.insert(full);
    loop {
        let current: Vec<Subset> = family.iter().copied().collect();
        let mut grew = false;
        for (i, &a) in current.iter().enumerate() {
            for &b in &current[i + 1..] {
                grew |= family.insert(a.union(b));
                grew |= family.insert(a.intersection(b));
            }
        }
        if !grew {
            return family;
        }
    }
}

fn overline(name: &str) -> String {
    let mut out = String::with_capacity(name.len() * 2);
    for ch in name.chars() {
        out.push(ch);
        out.push('\u{0304}');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn airline() -> Lattice {
        let u = Universe::numbered(3).unwrap();
        let s = |v: &[&str]| u.subset(v.iter().copied()).unwrap();
        let family =
            vec![("B", s(&[])), ("N", s(&["1"])), ("D", s(&["2"])), ("G", s(&["1", "2"])), ("V", s(&["1", "2", "3"]))];
        Lattice::from_subsets(u.clone(), family).unwrap()
    }

    fn el(l: &Lattice, n: &str) -> Subset {
        l.element(n).unwrap()
    }

    #[test]
    fn airline_embedding_reproduces_closure_interior_values() {
        let y = airline();
        let c = |n: &str| y.complement(el(&y, n));
        assert_eq!(y.closure(c("D")), el(&y, "V"));
        assert_eq!(y.closure(c("N")), el(&y, "V"));
        assert_eq!(y.closure(c("G")), el(&y, "V"));
        assert_eq!(y.interior(c("D")), el(&y, "N"));
        assert_eq!(y.interior(c("N")), el(&y, "D"));
        assert_eq!(y.interior(c("G")), el(&y, "B"));
        for &e in y.elements() {
            assert_eq!(y.closure(e), e);
            assert_eq!(y.interior(e), e);
        }
        assert_eq!(y.closure(Subset::singleton(2)), el(&y, "V"));
    }

    #[test]
    fn meet_join_complement_examples() {
        let y = airline();
        let (b, n, d, g, v) = (el(&y, "B"), el(&y, "N"), el(&y, "D"), el(&y, "G"), el(&y, "V"));
        assert_eq!(y.meet(n, d).unwrap(), b);
        assert_eq!(y.meet(b, v).unwrap(), b);
        assert_eq!(y.join(n, d).unwrap(), g);
        assert_eq!(y.join(g, v).unwrap(), v);
        assert_eq!(y.complement(g), Subset::singleton(2));
        assert!(!y.contains(y.complement(g)));
        assert_eq!(y.complement(b), v);
        assert_eq!(y.complement(v), b);
        assert!(matches!(y.meet(n, Subset::singleton(2)), Err(LatticeError::ForeignElement(_))));
    }

    #[test]
    fn median_examples() {
        let y = airline();
        let (b, n, d, g, v) = (el(&y, "B"), el(&y, "N"), el(&y, "D"), el(&y, "G"), el(&y, "V"));
        assert_eq!(y.median(n, d, v).unwrap(), g);
        assert_eq!(y.median(b, d, v).unwrap(), d);
        assert_eq!(y.median(n, n, d).unwrap(), n);
        assert!(y.median(n, d, Subset::singleton(2)).is_err());
    }

    #[test]
    fn degenerate_and_invalid_families() {
        let u = Universe::new(Vec::<String>::new()).unwrap();
        let one = Lattice::from_subsets(u, [("0", Subset::EMPTY)]).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one.bottom(), one.top());
        assert_eq!(one.closure(Subset::EMPTY), Subset::EMPTY);

        let u = Universe::numbered(2).unwrap();
        let err =
            Lattice::from_subsets(u.clone(), [("a", Subset::EMPTY), ("b", Subset(1)), ("c", Subset(2))]).unwrap_err();
        assert_eq!(err, LatticeError::MissingBounds);

        let err = Lattice::from_subsets(
            u.clone(),
            [("a", Subset::EMPTY), ("b", Subset(1)), ("c", Subset(2)), ("t", Subset(3))],
        );
        assert!(err.is_ok());

        let u3 = Universe::numbered(3).unwrap();
        let err = Lattice::from_subsets(u3, [("0", Subset(0)), ("a", Subset(1)), ("b", Subset(2)), ("1", Subset(7))])
            .unwrap_err();
        assert!(matches!(err, LatticeError::NotClosed { op: SetOp::Union, .. }));

        assert!(matches!(Universe::new(["x", "x"]), Err(LatticeError::DuplicateAtom(_))));
    }

    #[test]
    fn join_irreducible_construction() {
        let anti = Poset { elems: vec!["a".into(), "b".into()], leq: vec![] };
        assert_eq!(Lattice::from_join_irreducibles(&anti).unwrap().len(), 4);

        let air = Poset {
            elems: vec!["n".into(), "d".into(), "v".into()],
            leq: vec![("n".into(), "v".into()), ("d".into(), "v".into())],
        };
        let y = Lattice::from_join_irreducibles(&air).unwrap();
        let expected: Vec<Subset> = [0b000, 0b001, 0b010, 0b011, 0b111].map(Subset).to_vec();
        assert_eq!(y.elements(), expected.as_slice());

        let chain = Poset {
            elems: vec!["a".into(), "b".into(), "c".into()],
            leq: vec![("a".into(), "b".into()), ("b".into(), "c".into()), ("a".into(), "c".into())],
        };
        let y = Lattice::from_join_irreducibles(&chain).unwrap();
        assert_eq!(y.len(), 4);
        assert!(y.is_chain());
    }

    #[test]
    fn partial_order_violations_are_reported() {
        let cyc = Poset {
            elems: vec!["a".into(), "b".into()],
            leq: vec![("a".into(), "b".into()), ("b".into(), "a".into())],
        };
        assert!(matches!(
            Lattice::from_join_irreducibles(&cyc),
            Err(LatticeError::NotAPartialOrder(PosetViolation::Antisymmetry(_, _)))
        ));
        let intrans = Poset {
            elems: vec!["a".into(), "b".into(), "c".into()],
            leq: vec![("a".into(), "b".into()), ("b".into(), "c".into())],
        };
        assert_eq!(
            Lattice::from_join_irreducibles(&intrans).unwrap_err(),
            LatticeError::NotAPartialOrder(PosetViolation::Transitivity("a".into(), "b".into(), "c".into()))
        );
    }

    #[test]
    fn close_family_adds_missing_joins() {
        let u = Universe::numbered(3).unwrap();
        let fam = close_family(&u, [Subset(1), Subset(2)]);
        assert_eq!(fam.into_iter().collect::<Vec<_>>(), [0, 1, 2, 3, 7].map(Subset).to_vec());
    }

    #[test]
    fn describe_names_complements() {
        let y = airline();
        assert_eq!(y.describe(y.complement(el(&y, "D"))), "D\u{0304}");
        assert_eq!(y.describe(el(&y, "N")), "N");
    }
}
