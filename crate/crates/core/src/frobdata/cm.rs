use crate::arith::{isqrt, primes_upto};

/// a_p(E_0) for y^2 = x^3 + 1 and a prime p >= 5.
///
/// For p = 1 mod 3 write p = A^2 + 3B^2 with A = 1 mod 3; then a_p = 2A.
/// Supersingular otherwise.
pub fn ap_e0(p: u64) -> i64 {
    if p % 3 != 1 {
        return 0;
    }
    let mut b = 1u64;
    while 3 * b * b < p {
        let r = p - 3 * b * b;
        let a = isqrt(r);
        if a * a == r {
            let a = a as i64;
            return 2 * if a.rem_euclid(3) == 1 { a } else { -a };
        }
        b += 1;
    }
    unreachable!("p = 1 mod 3 is represented by x^2 + 3y^2")
}

/// a_p(E_0) for every prime 5 <= p <= n, ascending.
pub fn ap_e0_table(n: u64) -> Vec<(u64, i64)> {
    primes_upto(n)
        .into_iter()
        .filter(|&p| p >= 5)
        .map(|p| (p, ap_e0(p)))
        .collect()
}
