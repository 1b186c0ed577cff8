//! Tame conductor exponents from cluster pictures, and the family's conductor.

mod cluster;

pub use cluster::{tame_exponent, Cluster, ClusterPicture, ClusterRef, InertiaAction, TameResult};

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::One;

use crate::arith::{factorize, is_prime, is_squarefree, valuation};
use crate::error::{Error, Result};

fn check_family_d(d: i64) -> Result<()> {
    if matches!(d, 0 | 3 | -3) || !is_squarefree(d) {
        return Err(Error::Domain(format!("need squarefree d not in {{0, 3, -3}}, got {d}")));
    }
    Ok(())
}

fn check_p(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::Usage(format!("{p} is not prime")));
    }
    if p < 5 {
        return Err(Error::Unsupported(format!("p = {p}: only bracketed")));
    }
    Ok(())
}

/// Conductor exponent rule at p >= 5 from ord_p(d) and ord_p(d+3).
fn exponent_rule(ord_d: u32, ord_d3: u32) -> u32 {
    if ord_d > 0 {
        2
    } else if ord_d3 == 0 || ord_d3 % 6 == 0 {
        0
    } else {
        4
    }
}

pub fn exponent_at_prime(d: i64, p: u64) -> Result<u32> {
    check_family_d(d)?;
    check_p(p)?;
    let ord = |n: i64| if n % p as i64 == 0 { valuation(n as i128, p) } else { 0 };
    Ok(exponent_rule(ord(d), ord(d + 3)))
}

/// Cluster picture and inertia data at a bad prime p >= 5.
pub fn build_family_picture(d: i64, p: u64) -> Result<(ClusterPicture, InertiaAction)> {
    if matches!(d, 0 | 3 | -3) {
        return Err(Error::Domain(format!("C_d is undefined at d = {d}")));
    }
    check_p(p)?;
    let pi = p as i64;
    let six = |depth: Rational64, lc: i64| {
        ClusterPicture::new(
            6,
            vec![Cluster {
                leaves: (0..6).collect(),
                depth,
            }],
            lc,
        )
    };
    let (pic, orbits): (_, Vec<Vec<usize>>) = if d % pi == 0 {
        let k = valuation(d as i128, p) as i64;
        let orbits = if k % 2 == 1 {
            vec![vec![0, 1], vec![2, 3], vec![4, 5]]
        } else {
            (0..6).map(|l| vec![l]).collect()
        };
        (six(Rational64::new(k, 2), 0)?, orbits)
    } else if (d + 3) % pi == 0 {
        let k = valuation((d + 3) as i128, p) as i64;
        let orbits = if k % 3 != 0 {
            vec![vec![0, 1, 2], vec![3, 4, 5]]
        } else {
            (0..6).map(|l| vec![l]).collect()
        };
        (six(Rational64::new(k, 3), -k)?, orbits)
    } else {
        return Err(Error::Usage(format!("p = {p} is good for d = {d}")));
    };
    let act = InertiaAction {
        leaf_orbits: orbits,
        cluster_orbits: vec![vec![0]],
        index_two_adic: vec![0],
    };
    Ok((pic, act))
}

/// Integer with its prime factorization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredInt {
    pub factors: Vec<(u64, u32)>,
}

impl FactoredInt {
    pub fn value(&self) -> BigInt {
        self.factors
            .iter()
            .fold(BigInt::one(), |acc, &(p, e)| acc * BigInt::from(p).pow(e))
    }

    pub fn ln(&self) -> f64 {
        self.factors
            .iter()
            .map(|&(p, e)| e as f64 * (p as f64).ln())
            .sum()
    }
}

/// 26 log 2 + 21 log 3: the caps on the 2- and 3-parts.
pub fn log_cap_23() -> f64 {
    26.0 * 2f64.ln() + 21.0 * 3f64.ln()
}

/// Product of p^{e_p} over p >= 5.
pub fn conductor_known_part(d: i64) -> Result<FactoredInt> {
    check_family_d(d)?;
    let mut primes: Vec<u64> = factorize(d as i128)
        .into_iter()
        .chain(factorize(d as i128 + 3))
        .map(|(p, _)| p)
        .filter(|&p| p >= 5)
        .collect();
    primes.sort_unstable();
    primes.dedup();
    let mut factors = Vec::new();
    for p in primes {
        let e = exponent_at_prime(d, p)?;
        if e > 0 {
            factors.push((p, e));
        }
    }
    Ok(FactoredInt { factors })
}

pub fn log_conductor_bracket(d: i64) -> Result<(f64, f64)> {
    let known = conductor_known_part(d)?.ln();
    Ok((known, known + log_cap_23()))
}

/// The bound c d^4 (d+3)^4 of the statement, without the constant.
pub fn conductor_bound_statement(d: i64) -> BigInt {
    BigInt::from(d).pow(4) * BigInt::from(d + 3).pow(4)
}

/// The bound C d^2 (d+3)^4 used in the main proof, without the constant.
pub fn conductor_bound_proof(d: i64) -> BigInt {
    BigInt::from(d).pow(2) * BigInt::from(d + 3).pow(4)
}

/// Mean of log(known part) over a set of d, using a smallest-prime-factor sieve.
pub fn mean_log_conductor(ds: &[u64]) -> Result<(f64, f64)> {
    if ds.is_empty() {
        return Ok((0.0, log_cap_23()));
    }
    let top = *ds.iter().max().unwrap() as usize + 4;
    let spf = spf_sieve(top);
    let logs: Vec<f64> = ds
        .iter()
        .map(|&d| {
            let mut acc = 0.0;
            for (n, is_d) in [(d, true), (d + 3, false)] {
                let mut m = n as usize;
                while m > 1 {
                    let q = spf[m];
                    let mut k = 0;
                    while m % q == 0 {
                        m /= q;
                        k += 1;
                    }
                    if q >= 5 {
                        let e = if is_d { exponent_rule(k, 0) } else { exponent_rule(0, k) };
                        acc += e as f64 * (q as f64).ln();
                    }
                }
            }
            acc
        })
        .collect();
    let mean = crate::density::neumaier_sum(logs.iter().copied()) / ds.len() as f64;
    Ok((mean, mean + log_cap_23()))
}

fn spf_sieve(n: usize) -> Vec<usize> {
    let mut spf: Vec<usize> = (0..=n).collect();
    let mut i = 2;
    while i * i <= n {
        if spf[i] == i {
            let mut j = i * i;
            while j <= n {
                if spf[j] == j {
                    spf[j] = i;
                }
                j += i;
            }
        }
        i += 1;
    }
    spf
}
