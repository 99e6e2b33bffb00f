mod common;

use proptest::prelude::*;

use normlike::action::ActionOracle;
use normlike::groups::small_groups;
use normlike::theorems::{self, feasibility, OracleMode, OracleOutcome, Status};
use normlike::{arith, FiniteAbelianGroup, GroupTable};

/// The sweep over |A| <= 40 lives in the acceptance suite; this one covers
/// the orders above it.
#[test]
fn exclusions_never_contradict_the_search_up_to_order_64() {
    let oracle = ActionOracle::default();
    let groups: Vec<GroupTable> = small_groups().iter().map(|s| s.build().unwrap()).collect();
    for a in common::abelian_groups(64).into_iter().filter(|a| a.order() > 40) {
        for g in &groups {
            let v = feasibility(g, &a, OracleMode::Always, &oracle)
                .unwrap_or_else(|e| panic!("{} on {a}: {e}", g.label()));
            if v.status == Status::Excluded {
                assert_ne!(v.oracle, OracleOutcome::Witness);
            }
        }
    }
}

#[test]
fn every_degree_has_a_feasible_class_group() {
    let oracle = ActionOracle::default();
    for n in 2..=8usize {
        let g = GroupTable::cyclic(n).unwrap();
        let v = feasibility(&g, &FiniteAbelianGroup::trivial(), OracleMode::Always, &oracle).unwrap();
        assert_eq!(v.status, Status::FeasibleWitness);
        assert!(v.witness_action().unwrap().is_some());
    }
}

proptest! {
    #[test]
    fn prime_class_number_rule(n in 1u64..=200, p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 17, 19, 23])) {
        let excluded = theorems::prime_class_number_test(n, p).unwrap();
        let admits = n % p == 0 || (1..=n).any(|d| n % d == 0 && d > 1 && (p - 1) % d == 0);
        prop_assert_eq!(excluded, !admits);
    }

    #[test]
    fn least_prime_bound(n in 2u64..=500, h in 1u64..=500) {
        let q = (2..=n).find(|d| n % d == 0).unwrap();
        prop_assert_eq!(theorems::min_order_test(n, h), h > 1 && h < q);
    }

    #[test]
    fn unique_involution_means_cyclic_two_sylow(f in prop::collection::vec(1u64..=16, 0..=3)) {
        let a = FiniteAbelianGroup::new(&f).unwrap();
        let involutions = a.elements().filter(|x| x.order() == 2).count();
        let s = a.sylow(2);
        prop_assert_eq!(involutions == 1, s.is_cyclic() && !s.is_trivial());
        prop_assert_eq!(theorems::unique_involution_test(3, &a).unwrap(), involutions == 1);
    }

    #[test]
    fn sylow_congruence_implies_orbit_congruence(p in prop::sample::select(vec![2u64, 3, 5, 7]), h in 1u64..=2000) {
        let a = FiniteAbelianGroup::cyclic(h).unwrap();
        // |A| is a product of its prime-power parts, so all parts = 1 mod p forces |A| = 1 mod p
        if !theorems::sylow_congruence_test(p, 1, &a).unwrap() {
            let coprime: u64 = arith::factorize(h).iter().filter(|(q, _)| *q != p).map(|(q, e)| q.pow(*e)).product();
            prop_assert_eq!(coprime % p, 1 % p);
            prop_assert!(!theorems::congruence_test(p, 1, h).unwrap());
        }
    }
}
