mod common;

use common::oracle_sums;
use proptest::prelude::*;
use twistlab_core::arith::{primes_upto, valuation};
use twistlab_core::density::{
    asymptotic_bound, density_report, prime_sum_2mod3, s1_sum_with, s2_sum_with, SumPath,
    TestFunction,
};

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1e-300)
}

#[test]
fn sums_match_oracle_double_loop() {
    for &(x, sigma) in &[(200.0, 0.5), (200.0, 1.0), (300.0, 1.0), (300.0, 0.8)] {
        let (o1, o2) = oracle_sums(x, sigma);
        let s1 = s1_sum_with(x, sigma, SumPath::ResidueClass).unwrap().value;
        let s2 = s2_sum_with(x, sigma, SumPath::ResidueClass).unwrap().value;
        assert!(close(s1, o1), "S1 at ({x}, {sigma}): {s1} vs {o1}");
        assert!(close(s2, o2), "S2 at ({x}, {sigma}): {s2} vs {o2}");
    }
}

#[test]
fn residue_class_path_is_bit_identical_to_per_d() {
    for &(x, sigma) in &[(300.0, 1.0), (2000.0, 0.7)] {
        let a = s1_sum_with(x, sigma, SumPath::ResidueClass).unwrap();
        let b = s1_sum_with(x, sigma, SumPath::PerD).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.budget.to_bits(), b.budget.to_bits());
        let a = s2_sum_with(x, sigma, SumPath::ResidueClass).unwrap();
        let b = s2_sum_with(x, sigma, SumPath::PerD).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
    }
}

#[test]
fn empty_prime_ranges_give_zero() {
    let s1 = s1_sum_with(1e3, 0.05, SumPath::ResidueClass).unwrap();
    let s2 = s2_sum_with(1e3, 0.05, SumPath::ResidueClass).unwrap();
    assert_eq!((s1.value, s1.budget, s2.value, s2.budget), (0.0, 0.0, 0.0, 0.0));
    assert_eq!(prime_sum_2mod3(1e3, 0.05).unwrap(), 0.0);
}

#[test]
fn domain_errors() {
    assert!(s1_sum_with(5.0, 1.0, SumPath::ResidueClass).is_err());
    assert!(TestFunction::new(-0.1).is_err());
    assert!(density_report(1e3, 0.0).is_err());
}

#[test]
fn prime_sum_increases_toward_target() {
    let xs = [1e2, 1e3, 1e4, 1e5, 1e6];
    let vals: Vec<f64> = xs.iter().map(|&x| prime_sum_2mod3(x, 1.0).unwrap()).collect();
    for w in vals.windows(2) {
        assert!(w[0] < w[1], "{vals:?}");
    }
    assert!(*vals.last().unwrap() < 1.0 / 16.0);
}

#[test]
fn numeric_fourier_matches_phihat() {
    for &sigma in &[0.3, 1.0] {
        let tf = TestFunction::new(sigma).unwrap();
        for &u in &[0.0, 0.1, 0.25, sigma / 2.0, sigma * 0.9, sigma + 0.2] {
            let n = tf.numeric_phihat(u);
            assert!((n - tf.phihat(u)).abs() < 1e-6, "sigma {sigma} u {u}: {n}");
        }
    }
}

#[test]
fn report_is_reproducible_and_ordered() {
    let a = density_report(1e4, 0.3).unwrap();
    let b = density_report(1e4, 0.3).unwrap();
    assert_eq!(a, b);
    assert!(a.bound_low <= a.bound_high);
    assert!(a.s2_over_phi0().abs() <= 6.0);
    assert!(!a.out_of_regime);
    assert!(density_report(1e3, 0.5).unwrap().out_of_regime);
}

proptest! {
    #[test]
    fn phi_nonnegative_and_phihat_supported(sigma in 0.01f64..3.0, x in -50.0f64..50.0) {
        let tf = TestFunction::new(sigma).unwrap();
        prop_assert!(tf.phi(x) >= 0.0);
        prop_assert_eq!(tf.phihat(sigma + x.abs() + 1e-9), 0.0);
        prop_assert!((tf.phihat(0.0) / tf.phi0() - 1.0 / sigma).abs() < 1e-12 / sigma);
    }

    #[test]
    fn asymptotic_minus_six_over_sigma(sigma in 1e-3f64..10.0) {
        prop_assert!((asymptotic_bound(sigma).unwrap() - 6.0 / sigma - 0.25).abs() < 1e-12);
    }

    #[test]
    fn high_power_budget_only_when_needed(d in 1u64..5000) {
        // p^6 | d+3 for p >= 5 needs d >= 15622, so below that no Weil budget beyond p in {2,3}
        prop_assert!(primes_upto(100).into_iter().filter(|&p| p >= 5)
            .all(|p| valuation((d + 3) as i128, p) < 6));
    }
}
