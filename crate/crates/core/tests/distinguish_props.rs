//! Euler-factor expansion and the eigenvalue distinguishers on generated
//! profiles.

use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use siegel_hecke::distinguish::{
    compare_profiles, compare_tpr, forward_profile, forward_tpr_profile, recover_weight_sum_case_i,
    EigenvalueProfile, Verdict,
};
use siegel_hecke::euler::{
    build_euler_factor, check_odd_vanishing, generating_rhs, identity_residual, solve_tpr,
    vanishing_tp, Identity,
};
use siegel_hecke::hecke::Weight;
use siegel_hecke::Prime;

fn prime(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-40i64..=40, 1i64..=5).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn weight2() -> impl Strategy<Value = Weight> {
    (3i64..=12, 0i64..=6).prop_map(|(l2, d)| Weight::new(vec![l2 + d, l2]).unwrap())
}

fn small_prime() -> impl Strategy<Value = Prime> {
    prop::sample::select(vec![2u64, 3, 5, 7]).prop_map(prime)
}

#[test]
fn generating_identity_holds_to_twice_rmax() {
    for p in [2u64, 3, 5] {
        let p = prime(p);
        let r_max = 8;
        let order = 2 * r_max;
        let table = solve_tpr(p, order).unwrap();
        let lhs = build_euler_factor(p)
            .reversed_series(order)
            .checked_mul(&table.as_series())
            .unwrap();
        assert_eq!(lhs, generating_rhs(p, order), "p={p}");
    }
}

#[test]
fn ap3_vanishes_for_three_primes() {
    for p in [2u64, 3, 5] {
        for l2 in 3..=8 {
            for l1 in l2..=l2 + 4 {
                let w = Weight::new(vec![l1, l2]).unwrap();
                assert!(
                    identity_residual(Identity::Ap3, &w, prime(p))
                        .unwrap()
                        .is_zero(),
                    "{w}, p={p}"
                );
            }
        }
    }
}

#[test]
fn odd_entries_vanish_without_tp() {
    for p in [2u64, 3, 5, 7] {
        assert!(check_odd_vanishing(prime(p), 10).unwrap());
        let t = solve_tpr(prime(p), 12)
            .unwrap()
            .substitute(&vanishing_tp())
            .unwrap();
        for r in (1..=12).step_by(2) {
            assert!(t.get(r).unwrap().is_zero());
        }
        assert!(!t.get(4).unwrap().is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn profile_file_round_trip(p in small_prime(), w in weight2(), a in rational(), t1 in rational()) {
        let f = forward_profile(p, &w, a, &[t1]).unwrap();
        let text = f.to_string();
        let back: EigenvalueProfile = text.parse().unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn distinct_weight_sums_are_never_consistent(
        p in small_prime(), wf in weight2(), wg in weight2(), a in rational(), t1 in rational()
    ) {
        prop_assume!(wf.sum() != wg.sum());
        let f = forward_profile(p, &wf, a.clone(), std::slice::from_ref(&t1)).unwrap();
        let g = forward_profile(p, &wg, a, &[t1]).unwrap();
        let v = compare_profiles(&f, &g, &wf, &wg).unwrap();
        prop_assert!(v.is_distinguished(), "{}", v);
        // Canonical witness order: the same call gives the same witness.
        prop_assert_eq!(compare_profiles(&f, &g, &wf, &wg).unwrap(), v);
        prop_assert!(compare_profiles(&g, &f, &wg, &wf).unwrap().is_distinguished());
    }

    #[test]
    fn tpr_engine_is_reflexive_and_recovers_the_sum(
        p in small_prime(), w in weight2(), a1 in rational(), a2 in rational()
    ) {
        let f = forward_tpr_profile(p, &w, a1.clone(), a2.clone(), 6).unwrap();
        let g = forward_tpr_profile(p, &w, a1.clone(), a2, 6).unwrap();
        prop_assert_eq!(compare_tpr(&f, &g, &w, &w).unwrap(), Verdict::ProfilesEqualConsistent);
        if !a1.is_zero() {
            prop_assert_eq!(recover_weight_sum_case_i(&f).unwrap(), w.sum());
        }
    }

    #[test]
    fn tpr_engine_separates_sums(
        p in small_prime(), wf in weight2(), wg in weight2(), a1 in rational(), a2 in rational(), zero in any::<bool>()
    ) {
        prop_assume!(wf.sum() != wg.sum());
        let a1 = if zero { BigRational::zero() } else { a1 };
        let f = forward_tpr_profile(p, &wf, a1.clone(), a2.clone(), 6).unwrap();
        let g = forward_tpr_profile(p, &wg, a1, a2, 6).unwrap();
        let v = compare_tpr(&f, &g, &wf, &wg).unwrap();
        prop_assert!(v.is_distinguished(), "{}", v);
    }
}
