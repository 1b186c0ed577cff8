use proptest::prelude::*;
use twistlab_core::arith::{factorize, is_squarefree};
use twistlab_core::conductor::{
    build_family_picture, conductor_known_part, exponent_at_prime, mean_log_conductor,
    tame_exponent,
};
use twistlab_core::stats::squarefree_enum;

fn bad_primes(d: i64) -> Vec<u64> {
    let mut ps: Vec<u64> = factorize(d as i128 * (d as i128 + 3))
        .into_iter()
        .map(|(p, _)| p)
        .filter(|&p| p >= 5)
        .collect();
    ps.sort_unstable();
    ps
}

#[test]
fn rule_matches_tame_formula_up_to_1e4() {
    for d in (1i64..=10_000).filter(|&d| d != 3 && is_squarefree(d)) {
        for p in bad_primes(d) {
            let (pic, act) = build_family_picture(d, p).unwrap();
            let tame = tame_exponent(&pic, &act, 2).unwrap().n_tame;
            assert_eq!(tame, exponent_at_prime(d, p).unwrap() as i64, "d={d} p={p}");
        }
    }
}

#[test]
fn spot_values() {
    assert_eq!(exponent_at_prime(5, 5).unwrap(), 2);
    assert_eq!(exponent_at_prime(2, 5).unwrap(), 4);
    assert_eq!(exponent_at_prime(15622, 5).unwrap(), 0);
    assert_eq!(exponent_at_prime(1, 7).unwrap(), 0);
    assert!(exponent_at_prime(1, 3).is_err());
    assert!(exponent_at_prime(4, 5).is_err());
}

#[test]
fn mean_log_conductor_trend() {
    for x in [1e3, 1e4, 1e5] {
        let s = squarefree_enum(x).unwrap();
        let (lo, hi) = mean_log_conductor(&s.members).unwrap();
        assert!(lo <= hi);
        assert!(lo <= 6.0 * f64::ln(x), "X = {x}: {lo}");
    }
}

proptest! {
    #[test]
    fn exponents_in_range_and_radical_divides(d in 1i64..200_000) {
        prop_assume!(d != 3 && is_squarefree(d));
        let known = conductor_known_part(d).unwrap();
        for &(p, e) in &known.factors {
            prop_assert!(e == 2 || e == 4);
            prop_assert!((d as i128 * (d as i128 + 3)) % p as i128 == 0);
        }
        for p in [5u64, 7, 11, 13] {
            if (d as i128 * (d as i128 + 3)) % p as i128 != 0 {
                prop_assert_eq!(exponent_at_prime(d, p).unwrap(), 0);
            }
        }
    }
}
