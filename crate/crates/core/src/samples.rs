//! Small lattices and tables used by tests, the generator and the CLI.

use std::sync::Arc;

use crate::factorization::{Domain, FunctionTable};
use crate::lattice::{Lattice, Subset, Universe};

/// The five-element lattice `B < N, D < G < V` with `N`, `D` incomparable,
/// embedded in `𝒫({1,2,3})` as `B=∅, N={1}, D={2}, G={1,2}, V={1,2,3}`.
pub fn airline_lattice() -> Lattice {
    let u = Universe::numbered(3).expect("valid universe");
    Lattice::from_subsets(
        u,
        [("B", Subset(0b000)), ("N", Subset(0b001)), ("D", Subset(0b010)), ("G", Subset(0b011)), ("V", Subset(0b111))],
    )
    .expect("airline family is closed")
}

/// Chain `{[0], [1], …, [m]}` in `𝒫([m])`, elements named `0..=m`.
pub fn chain_lattice(m: usize) -> Lattice {
    let u = Universe::numbered(m).expect("valid universe");
    Lattice::from_subsets(u, (0..=m).map(|k| (k.to_string(), Subset::full(k)))).expect("chains are closed")
}

/// The full power set of `{1, …, m}`.
pub fn power_set_lattice(m: usize) -> Lattice {
    let u = Universe::numbered(m).expect("valid universe");
    Lattice::from_family(u, (0..1u64 << m).map(Subset)).expect("power sets are closed")
}

/// The fictitious airline evaluation: four airlines × {economy, first}.
pub fn airline_table(with_bounds: bool) -> FunctionTable {
    let y = Arc::new(airline_lattice());
    let mut x1 = Domain::new("X1", ["A1", "A2", "A3", "A4"]);
    let mut x2 = Domain::new("X2", ["E", "F"]);
    if with_bounds {
        x1 = x1.with_bounds(0, 3);
        x2 = x2.with_bounds(0, 1);
    }
    let rows = ["B", "B", "B", "D", "N", "G", "N", "V"];
    let values = rows.iter().map(|n| y.element(n).expect("known element")).collect();
    FunctionTable::new(y, vec![x1, x2], values).expect("valid table")
}
