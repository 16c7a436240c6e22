#![allow(dead_code)]

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pseudopoly::factorization::{Domain, FunctionTable, Tuples};
use pseudopoly::samples::{airline_lattice, chain_lattice, power_set_lattice};
use pseudopoly::{Lattice, PhiVector, Polynomial, Subset};

pub fn domains(sizes: &[usize]) -> Vec<Domain> {
    sizes
        .iter()
        .enumerate()
        .map(|(k, &s)| {
            Domain::new(format!("X{}", k + 1), (0..s).map(|a| format!("{}{a}", (b'a' + k as u8) as char)))
                .with_bounds(0, s - 1)
        })
        .collect()
}

/// Table over the chain `{[0], …, [m]}` with values given as levels.
pub fn chain_table(m: usize, sizes: &[usize], levels: &[usize]) -> FunctionTable {
    let y = Arc::new(chain_lattice(m));
    FunctionTable::new(y, domains(sizes), levels.iter().map(|&v| Subset::full(v)).collect()).unwrap()
}

/// Every table with the given shape over the `m`-chain.
pub fn all_chain_tables(m: usize, sizes: &[usize]) -> impl Iterator<Item = FunctionTable> + '_ {
    let cells: usize = sizes.iter().product();
    let count = (m + 1).pow(cells as u32);
    (0..count).map(move |mut code| {
        let mut levels = vec![0; cells];
        for v in levels.iter_mut().rev() {
            *v = code % (m + 1);
            code /= m + 1;
        }
        chain_table(m, sizes, &levels)
    })
}

/// `p ∘ φ` with `φ` satisfying its boundary condition, or a uniform table.
pub fn random_table(rng: &mut ChaCha8Rng, y: Arc<Lattice>, sizes: &[usize], composed: bool) -> FunctionTable {
    let e = y.elements().to_vec();
    let n = sizes.len();
    let cells: usize = sizes.iter().product();
    let values = if composed {
        let raw: Vec<Subset> = (0..1 << n).map(|_| *e.choose(rng).unwrap()).collect();
        let p = Polynomial::from_dense(&y, n, &raw).unwrap();
        let maps = random_bc1_maps(rng, &y, sizes);
        Tuples::new(sizes)
            .map(|t| p.eval(&t.iter().enumerate().map(|(k, &a)| maps[k][a]).collect::<Vec<_>>()))
            .collect()
    } else {
        (0..cells).map(|_| *e.choose(rng).unwrap()).collect()
    };
    FunctionTable::new(y, domains(sizes), values).unwrap()
}

/// Inner maps with `φk(first) ≤ φk(a) ≤ φk(last)`.
pub fn random_bc1_maps(rng: &mut ChaCha8Rng, y: &Lattice, sizes: &[usize]) -> Vec<Vec<Subset>> {
    let e = y.elements();
    sizes
        .iter()
        .map(|&s| {
            let lo = *e.choose(rng).unwrap();
            let above: Vec<Subset> = e.iter().copied().filter(|v| lo.is_subset(*v)).collect();
            let hi = *above.choose(rng).unwrap();
            let mid: Vec<Subset> = above.iter().copied().filter(|v| v.is_subset(hi)).collect();
            let mut m: Vec<Subset> = (0..s).map(|_| *mid.choose(rng).unwrap()).collect();
            m[0] = lo;
            m[s - 1] = hi;
            m
        })
        .collect()
}

pub fn random_chain_instance(seed: u64, max_m: usize, sizes: &[usize]) -> FunctionTable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = rng.gen_range(1..=max_m);
    let composed = rng.gen_bool(0.5);
    random_table(&mut rng, Arc::new(chain_lattice(m)), sizes, composed)
}

/// An order-preserving table on chain-ordered domains (first point lowest):
/// `f(x) = ⋁_{z ≤ x} g(z)` for random `g`.
pub fn order_preserving_instance(seed: u64) -> FunctionTable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = [chain_lattice(2), chain_lattice(4), airline_lattice(), power_set_lattice(2), power_set_lattice(3)];
    let y = Arc::new(pool.choose(&mut rng).unwrap().clone());
    let n = rng.gen_range(1..=3);
    let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(2..=4)).collect();
    let e = y.elements().to_vec();
    let tuples: Vec<Vec<usize>> = Tuples::new(&sizes).collect();
    let g: Vec<Subset> =
        tuples.iter().map(|_| if rng.gen_bool(0.3) { *e.choose(&mut rng).unwrap() } else { y.bottom() }).collect();
    let values = tuples
        .iter()
        .map(|x| {
            tuples
                .iter()
                .zip(&g)
                .filter(|(z, _)| z.iter().zip(x).all(|(a, b)| a <= b))
                .fold(y.bottom(), |acc, (_, &v)| acc.union(v))
        })
        .collect();
    FunctionTable::new(y, domains(&sizes), values).unwrap()
}

/// Every inner-map vector satisfying the boundary condition for the
/// declared designated elements.
pub fn all_bc1_phis(f: &FunctionTable) -> Vec<PhiVector> {
    let e = f.lattice().elements().to_vec();
    let per: Vec<Vec<Vec<Subset>>> = (0..f.arity())
        .map(|k| {
            let b = f.bounds(k).unwrap();
            let s = f.domain(k).len();
            let mut out = Vec::new();
            let mut idx = vec![0usize; s];
            loop {
                let m: Vec<Subset> = idx.iter().map(|&i| e[i]).collect();
                if m.iter().all(|v| m[b.zero].is_subset(*v) && v.is_subset(m[b.one])) {
                    out.push(m);
                }
                let mut j = s;
                loop {
                    if j == 0 {
                        return out;
                    }
                    j -= 1;
                    idx[j] += 1;
                    if idx[j] < e.len() {
                        break;
                    }
                    idx[j] = 0;
                }
            }
        })
        .collect();
    let mut result = vec![vec![]];
    for choices in per {
        result = result
            .into_iter()
            .flat_map(|prefix: Vec<Vec<Subset>>| {
                choices.iter().map(move |c| {
                    let mut p = prefix.clone();
                    p.push(c.clone());
                    p
                })
            })
            .collect();
    }
    result.into_iter().map(PhiVector::new).collect()
}

pub fn is_order_preserving(m: &[Subset]) -> bool {
    m.windows(2).all(|w| w[0].is_subset(w[1]))
}
