mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pseudopoly::chains::{chain_characterization, chain_phi_bounds, free_phi_bounds, suff_conditions};
use pseudopoly::factorization::{
    check_boundary, check_phi_admissible, check_pseudo_median_decomposable, enumerate_factorizations,
    is_pseudo_polynomial, median_solve_check, p0, phi_bounds, verify_factorization,
};
use pseudopoly::oracle::{brute_force_factorizations, enumerate_all_polynomials, random_instance, InstanceLimits};
use pseudopoly::samples::{airline_lattice, chain_lattice, power_set_lattice};
use pseudopoly::{Lattice, PhiVector, Polynomial};

fn small_lattices() -> Vec<Arc<Lattice>> {
    vec![Arc::new(chain_lattice(2)), Arc::new(airline_lattice()), Arc::new(power_set_lattice(2))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Admissible ⟺ p0 works ⟺ some polynomial works, for every inner map
    /// satisfying its boundary condition.
    #[test]
    fn admissibility_three_way_equivalence(seed in any::<u64>(), l in 0usize..3, composed in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = common::random_table(&mut rng, small_lattices()[l].clone(), &[2, 2], composed);
        prop_assume!(check_boundary(&f).unwrap().holds());
        let q = p0(&f).unwrap();
        let polys = enumerate_all_polynomials(f.lattice(), 2, u128::MAX).unwrap();
        for phi in common::all_bc1_phis(&f) {
            let admissible = check_phi_admissible(&f, &phi).unwrap().holds();
            let with_p0 = verify_factorization(&f, &phi, &q).unwrap().holds;
            let any = polys.iter().any(|p| verify_factorization(&f, &phi, p).unwrap().holds);
            prop_assert_eq!(admissible, with_p0);
            prop_assert_eq!(admissible, any);
        }
    }

    /// Median decomposability for some inner map ⟺ a factorization exists,
    /// and it forces the boundary condition.
    #[test]
    fn median_decomposability_matches_oracle(seed in any::<u64>(), l in 0usize..3, composed in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = common::random_table(&mut rng, small_lattices()[l].clone(), &[2, 3], composed);
        let decomposable = common::all_bc1_phis(&f)
            .iter()
            .any(|phi| check_pseudo_median_decomposable(&f, phi).unwrap().holds());
        let brute = brute_force_factorizations(&f, &InstanceLimits::default()).unwrap();
        prop_assert_eq!(decomposable, !brute.is_empty());
        if decomposable {
            prop_assert!(check_boundary(&f).unwrap().holds());
        }
        if is_pseudo_polynomial(&f).unwrap().holds() {
            let phi = phi_bounds(&f).unwrap();
            prop_assert!(check_pseudo_median_decomposable(&f, &phi.minus).unwrap().holds());
            prop_assert!(check_pseudo_median_decomposable(&f, &phi.plus).unwrap().holds());
        }
    }

    #[test]
    fn enumeration_is_deterministic_and_verifiable(seed in 0u64..10_000) {
        let f = random_instance(seed, &InstanceLimits::default());
        prop_assume!(is_pseudo_polynomial(&f).unwrap().holds());
        let a: Vec<(PhiVector, Polynomial)> = enumerate_factorizations(&f).unwrap().map(|z| (z.phi, z.p)).collect();
        let b: Vec<(PhiVector, Polynomial)> = enumerate_factorizations(&f).unwrap().map(|z| (z.phi, z.p)).collect();
        prop_assert_eq!(&a, &b);
        let unique: BTreeSet<_> = a.iter().cloned().collect();
        prop_assert_eq!(unique.len(), a.len());
        for (phi, p) in &a {
            prop_assert!(verify_factorization(&f, phi, p).unwrap().holds);
        }
    }

    #[test]
    fn chain_specializations_agree(seed in any::<u64>()) {
        let f = common::random_chain_instance(seed, 5, &[3, 3]);
        let generic = is_pseudo_polynomial(&f).unwrap().holds();
        prop_assert_eq!(chain_characterization(&f).unwrap().holds(), generic);
        if check_boundary(&f).unwrap().holds() {
            let phi = phi_bounds(&f).unwrap();
            prop_assert_eq!(&chain_phi_bounds(&f).unwrap(), &phi);
            prop_assert_eq!(&free_phi_bounds(&f).bounds, &phi);
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
            let candidate = PhiVector::new(common::random_bc1_maps(&mut rng, f.lattice(), &f.sizes()));
            let suff = suff_conditions(&f, &candidate).unwrap().iter().flatten().all(|c| c.all());
            prop_assert_eq!(suff, check_phi_admissible(&f, &candidate).unwrap().holds());
        }
    }

    #[test]
    fn order_preserving_tables_have_order_preserving_bounds(seed in any::<u64>()) {
        let f = common::order_preserving_instance(seed);
        prop_assert!(check_boundary(&f).unwrap().holds());
        let phi = phi_bounds(&f).unwrap();
        for k in 0..f.arity() {
            prop_assert!(common::is_order_preserving(phi.minus.map(k)));
            prop_assert!(common::is_order_preserving(phi.plus.map(k)));
        }
    }
}

#[test]
fn median_interval_test_on_small_lattices() {
    for y in small_lattices() {
        let e = y.elements();
        for &u in e {
            for &m in e {
                for &w in e {
                    if !(u.is_subset(m) && m.is_subset(w)) {
                        continue;
                    }
                    for &v in e {
                        let direct = y.median(u, v, w).unwrap() == m;
                        assert_eq!(median_solve_check(&y, u, m, w, v).unwrap(), direct);
                    }
                }
            }
        }
    }
}

#[test]
fn every_two_by_two_chain_table_agrees() {
    for m in 1..=3 {
        for f in common::all_chain_tables(m, &[2, 2]) {
            let generic = is_pseudo_polynomial(&f).unwrap().holds();
            assert_eq!(chain_characterization(&f).unwrap().holds(), generic);
            if check_boundary(&f).unwrap().holds() {
                let phi = phi_bounds(&f).unwrap();
                assert!(phi.is_ordered());
                assert_eq!(chain_phi_bounds(&f).unwrap(), phi);
            }
        }
    }
}
