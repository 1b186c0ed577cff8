//! Invariant suites shared by the command line and the Python bindings.

use crate::arith::{is_squarefree, primes_upto};
use crate::conductor::{build_family_picture, exponent_at_prime, tame_exponent};
use crate::error::{Error, Result};
use crate::family::{
    build_typeb, fd_disc_identity, fd_integral_disc_identity, verify_h36,
    verify_quadratic_factorization, verify_two_cubic_factorization, CurveSpec,
};
use crate::ffcount::{count_points, trace_ap};
use crate::frobdata::{euler_factor_good, euler_factor_oracle, infer_twist_kernel};
use crate::stats::{table1, table2};

/// Frozen bound on the Table 2 deviations; the measured maximum over 5 <= p <= 199 is 1.75.
pub const TABLE2_BOUND: f64 = 2.0;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

fn odd_primes_from5(pmax: u64) -> Vec<u64> {
    primes_upto(pmax).into_iter().filter(|&p| p >= 5).collect()
}

/// Squarefree 1 <= d <= dmax with d != 3.
pub fn family_range(dmax: u64) -> Vec<i64> {
    (1..=dmax as i64).filter(|&d| d != 3 && is_squarefree(d)).collect()
}

/// Table 1 exactness for 5 <= p <= pmax, and the Table 2 deviation bound for p <= min(pmax, 199).
pub fn tables(pmax: u64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for p in odd_primes_from5(pmax) {
        let rows = table1(p)?;
        let bad: Vec<String> = rows
            .iter()
            .filter(|r| r.measured != r.predicted)
            .map(|r| format!("{} measured {} predicted {}", r.class_label(), r.measured, r.predicted))
            .collect();
        out.push(Check::new(format!("table1_p{p}"), bad.is_empty(), bad.join("; ")));
        if p <= 199 {
            let worst = table2(p)?.iter().map(|r| r.deviation.abs()).fold(0.0, f64::max);
            out.push(Check::new(
                format!("table2_p{p}"),
                worst <= TABLE2_BOUND,
                format!("max deviation {worst}"),
            ));
        }
    }
    Ok(out)
}

/// FastTable against the brute-force oracle over squarefree d <= dmax and good p <= pmax.
pub fn euler(dmax: u64, pmax: u64) -> Result<Vec<Check>> {
    let primes = odd_primes_from5(pmax);
    let mut out = Vec::new();
    for d in family_range(dmax) {
        let k = infer_twist_kernel(d)?;
        let mut bad = Vec::new();
        let mut n = 0;
        for &p in &primes {
            if d % p as i64 == 0 || (d + 3) % p as i64 == 0 {
                continue;
            }
            let fast = euler_factor_good(d, p, &k)?;
            let slow = euler_factor_oracle(d, p)?;
            n += 1;
            if (fast.a1, fast.a2) != (slow.a1, slow.a2) {
                bad.push(format!("p={p} fast ({},{}) oracle ({},{})", fast.a1, fast.a2, slow.a1, slow.a2));
            }
        }
        let detail = if bad.is_empty() { format!("{n} primes") } else { bad.join("; ") };
        out.push(Check::new(format!("euler_d{d}"), bad.is_empty(), detail));
    }
    Ok(out)
}

/// exponent_at_prime against the tame formula on the generated cluster data, plus spot values.
pub fn conductor(dmax: u64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (d, p, want) in [(5i64, 5u64, 2u32), (2, 5, 4), (15622, 5, 0)] {
        let got = exponent_at_prime(d, p)?;
        out.push(Check::new(format!("spot_d{d}_p{p}"), got == want, format!("{got} (want {want})")));
    }
    let mut bad = Vec::new();
    let mut n = 0usize;
    for d in family_range(dmax) {
        let mut ps: Vec<u64> = crate::arith::factorize(d as i128 * (d as i128 + 3))
            .into_iter()
            .map(|(q, _)| q)
            .filter(|&q| q >= 5)
            .collect();
        ps.sort_unstable();
        for p in ps {
            let rule = exponent_at_prime(d, p)?;
            let (pic, act) = build_family_picture(d, p)?;
            let tame = tame_exponent(&pic, &act, 2)?.n_tame;
            n += 1;
            if tame != rule as i64 {
                bad.push(format!("d={d} p={p} rule {rule} tame {tame}"));
            }
        }
    }
    let detail = if bad.is_empty() { format!("{n} (d,p) pairs") } else { bad.join("; ") };
    out.push(Check::new(format!("tame_vs_rule_dmax{dmax}"), bad.is_empty(), detail));
    Ok(out)
}

/// count(TypeB(d), p) = p + 1 - a_p(E_{d^4}) - a_p(E_{d^5}).
pub fn typeb_count_identity(d: i64, p: u64) -> Result<bool> {
    let f = build_typeb(d)?.reduce_mod(p)?;
    let n = count_points(&f, 1)?.count as i64;
    let e4 = CurveSpec::Ed4(d).polynomial()?.reduce_mod(p)?;
    let e5 = CurveSpec::Ed5(d).polynomial()?.reduce_mod(p)?;
    let to_i = |m: &crate::poly::ModPoly| m.coeffs().iter().map(|&c| c as i64).collect::<Vec<_>>();
    let a4 = trace_ap(&to_i(&e4), p)?;
    let a5 = trace_ap(&to_i(&e5), p)?;
    Ok(n == p as i64 + 1 - a4 - a5)
}

/// Squarefree d with |d| <= 60 crossed with primes 5..97 where p does not divide d(d^2 - 9).
fn factorization_pairs() -> impl Iterator<Item = (i64, u64)> {
    (-60i64..=60)
        .filter(|&d| !matches!(d, 0 | 3 | -3) && is_squarefree(d))
        .flat_map(|d| odd_primes_from5(97).into_iter().map(move |p| (d, p)))
        .filter(|&(d, p)| (d * (d + 3) * (d - 3)) % p as i64 != 0)
}

/// Applies a factorization check; `Ok(None)` when it does not apply at (d, p).
pub fn factorization_check(
    f: fn(i64, u64) -> Result<bool>,
    d: i64,
    p: u64,
) -> Result<Option<bool>> {
    match f(d, p) {
        Ok(b) => Ok(Some(b)),
        Err(Error::Inapplicable(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn identities() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let mut bad = Vec::new();
    for d in (-200i64..=200).filter(|&d| !matches!(d, 0 | 3 | -3)) {
        if !fd_disc_identity(d)? || !fd_integral_disc_identity(d)? {
            bad.push(d.to_string());
        }
    }
    out.push(Check::new("disc_fd_abs_d_le_200", bad.is_empty(), bad.join(" ")));
    out.push(Check::new("h36_roots", verify_h36(), ""));

    let mut bad = Vec::new();
    let mut n = 0;
    for d in family_range(30) {
        for p in odd_primes_from5(199) {
            let pi = p as i64;
            if d % pi == 0 || (d + 1) % pi == 0 || (d + 3) % pi == 0 {
                continue;
            }
            n += 1;
            if !typeb_count_identity(d, p)? {
                bad.push(format!("d={d} p={p}"));
            }
        }
    }
    let detail = if bad.is_empty() { format!("{n} pairs") } else { bad.join("; ") };
    out.push(Check::new("typeb_point_counts", bad.is_empty(), detail));

    let (mut applied, mut bad) = (0, Vec::new());
    for (d, p) in factorization_pairs() {
        if applied >= 100 {
            break;
        }
        for (name, f) in [
            ("quadratic", verify_quadratic_factorization as fn(i64, u64) -> Result<bool>),
            ("two_cubic", verify_two_cubic_factorization),
        ] {
            if let Some(ok) = factorization_check(f, d, p)? {
                applied += 1;
                if !ok {
                    bad.push(format!("{name} d={d} p={p}"));
                }
            }
        }
    }
    out.push(Check::new(
        "factorizations",
        bad.is_empty() && applied > 0,
        if bad.is_empty() { format!("{applied} applicable checks") } else { bad.join("; ") },
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        assert!(all_passed(&tables(60).unwrap()));
        assert!(all_passed(&euler(10, 60).unwrap()));
        assert!(all_passed(&conductor(200).unwrap()));
    }

    #[test]
    fn typeb_identity_examples() {
        assert!(typeb_count_identity(1, 7).unwrap());
        assert!(typeb_count_identity(5, 13).unwrap());
    }
}
