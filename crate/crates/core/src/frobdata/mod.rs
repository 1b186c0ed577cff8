//! Residue degrees, the twist-kernel character and Euler factors at good primes.

mod cm;
mod kernel;

pub use cm::{ap_e0, ap_e0_table};
pub use kernel::{candidate_classes, canonical_class, infer_twist_kernel, TwistKernel};

use log::warn;

use crate::arith::{check_prime_ge5, mul_mod, valuation};
use crate::error::{Error, Result};
use crate::family::{build_fd, build_gd};
use crate::ffcount::{cubic_split_type, genus2_a1a2, legendre, SplitType};

/// I(p) = (f_L, f_K, f_M).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FrobeniusProfile {
    pub fl: u32,
    pub fk: u32,
    pub fm: u32,
}

impl std::fmt::Display for FrobeniusProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.fl, self.fk, self.fm)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    FastTable,
    Oracle,
}

impl Source {
    pub fn as_str(self) -> &'static str {
        match self {
            Source::FastTable => "FastTable",
            Source::Oracle => "Oracle",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EulerData {
    pub a1: i64,
    pub a2: i64,
    pub profile: FrobeniusProfile,
    pub source: Source,
}

impl EulerData {
    /// a_{p^2} = a1^2 - a2.
    pub fn a_p2(&self) -> i64 {
        self.a1 * self.a1 - self.a2
    }
}

pub fn f_m(p: u64) -> u32 {
    if p % 3 == 1 {
        1
    } else {
        2
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    a / num_integer::gcd(a, b) * b
}

/// fK from the splitting type of g_d and p mod 3.
pub fn f_k(split: SplitType, p: u64) -> u32 {
    lcm(split.order(), f_m(p))
}

/// Checks p >= 5 prime with p not dividing d(d+3).
pub fn check_good(d: i64, p: u64) -> Result<()> {
    check_prime_ge5(p)?;
    if matches!(d, 0 | 3 | -3) {
        return Err(Error::Domain(format!("C_d is undefined at d = {d}")));
    }
    let pi = p as i64;
    if d % pi == 0 || (d + 3) % pi == 0 {
        return Err(Error::BadPrime { d, p });
    }
    Ok(())
}

/// (fK, fM) at an unramified prime.
pub fn residue_degrees(d: i64, p: u64) -> Result<(u32, u32)> {
    check_prime_ge5(p)?;
    let pi = p as i64;
    if d % pi == 0 || (d + 3) % pi == 0 {
        return Err(Error::Inapplicable(format!("p = {p} ramifies for d = {d}")));
    }
    let split = cubic_split_type(&build_gd(d)?, p)?;
    Ok((f_k(split, p), f_m(p)))
}

/// Table row (a_{p,1}, a_{p,2}) for a profile; `None` for rows outside the family.
pub fn table_row(pr: FrobeniusProfile, a: i64, p: u64) -> Option<(i64, i64)> {
    let p = p as i64;
    Some(match (pr.fl, pr.fk, pr.fm) {
        (1, 1, 1) => (-2 * a, a * a + 2 * p),
        (2, 1, 1) => (2 * a, a * a + 2 * p),
        (2, 2, 1) => (0, -a * a + 2 * p),
        (3, 3, 1) => (a, a * a - p),
        (6, 3, 1) => (-a, a * a - p),
        (2, 2, 2) => (0, 2 * p),
        (6, 6, 2) => (0, -p),
        _ => return None,
    })
}

/// a_{p^2} = a1^2 - a2 for a residue-degree pair; the L/K sign cancels.
pub fn a_p2_from_degrees(fk: u32, fm: u32, a: i64, p: u64) -> Option<i64> {
    let pr = FrobeniusProfile { fl: fk, fk, fm };
    table_row(pr, a, p).map(|(a1, a2)| a1 * a1 - a2)
}

/// Brute-force Euler data at a good prime; the profile's fL is read off the counts.
pub fn euler_factor_oracle(d: i64, p: u64) -> Result<EulerData> {
    check_good(d, p)?;
    let f = build_fd(d)?.reduce_mod(p)?;
    let (a1, a2) = genus2_a1a2(&f)?;
    let (fk, fm) = residue_degrees(d, p)?;
    let a = ap_e0(p);
    let fl = if fk % 2 == 1 {
        let plus = table_row(FrobeniusProfile { fl: fk, fk, fm }, a, p).unwrap();
        if plus == (a1, a2) {
            fk
        } else {
            2 * fk
        }
    } else {
        fk
    };
    Ok(EulerData {
        a1,
        a2,
        profile: FrobeniusProfile { fl, fk, fm },
        source: Source::Oracle,
    })
}

/// Euler data from the residue-degree table, given the split type of g_d mod p.
pub fn euler_from_split(
    d: i64,
    p: u64,
    split: SplitType,
    kernel: &TwistKernel,
) -> Result<EulerData> {
    let fk = f_k(split, p);
    let fm = f_m(p);
    let fl = if fk % 2 == 1 {
        match kernel.epsilon(p) {
            1 => fk,
            -1 => 2 * fk,
            _ => {
                warn!("kernel character vanishes at d = {d}, p = {p}; using oracle");
                return euler_factor_oracle(d, p);
            }
        }
    } else {
        fk
    };
    let profile = FrobeniusProfile { fl, fk, fm };
    match table_row(profile, ap_e0(p), p) {
        Some((a1, a2)) => Ok(EulerData {
            a1,
            a2,
            profile,
            source: Source::FastTable,
        }),
        None => {
            warn!("unreachable row {profile} at d = {d}, p = {p}; using oracle");
            euler_factor_oracle(d, p)
        }
    }
}

pub fn euler_factor_good(d: i64, p: u64, kernel: &TwistKernel) -> Result<EulerData> {
    check_good(d, p)?;
    if kernel.d != d {
        return Err(Error::Usage(format!(
            "kernel belongs to d = {}, not {d}",
            kernel.d
        )));
    }
    let split = cubic_split_type(&build_gd(d)?, p)?;
    euler_from_split(d, p, split, kernel)
}

/// lambda_p = -a1/sqrt(p).
pub fn lambda_p(e: &EulerData, p: u64) -> f64 {
    -(e.a1 as f64) / (p as f64).sqrt()
}

/// lambda_{p^2} = (a1^2 - a2)/p.
pub fn lambda_p2(e: &EulerData, p: u64) -> f64 {
    e.a_p2() as f64 / p as f64
}

/// Treatment of a bad prime in the density sums.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BadLambda {
    Zero,
    /// Skipped; |lambda_p| <= bound_p and |lambda_{p^2}| <= bound_p2.
    OmittedBounded {
        bound_p: f64,
        bound_p2: f64,
        high_power: bool,
    },
}

pub const BOUND_P_DIVIDES_D: (f64, f64) = (2.0, 3.0);
pub const BOUND_WEIL: (f64, f64) = (4.0, 10.0);

pub fn bad_prime_lambda(d: i64, p: u64) -> Result<BadLambda> {
    check_prime_ge5(p)?;
    let pi = p as i64;
    if d % pi == 0 {
        let (bound_p, bound_p2) = BOUND_P_DIVIDES_D;
        return Ok(BadLambda::OmittedBounded {
            bound_p,
            bound_p2,
            high_power: false,
        });
    }
    if (d + 3) % pi != 0 {
        return Err(Error::Usage(format!("p = {p} is good for d = {d}")));
    }
    if valuation((d + 3) as i128, p) >= 6 {
        let (bound_p, bound_p2) = BOUND_WEIL;
        Ok(BadLambda::OmittedBounded {
            bound_p,
            bound_p2,
            high_power: true,
        })
    } else {
        Ok(BadLambda::Zero)
    }
}

/// f_d splits completely over F_p (counting a root at infinity for the quintic
/// reduction) iff g_d splits and 3 is a square mod p.
pub fn verify_fd_split_consistency(d: i64, p: u64) -> Result<bool> {
    check_good(d, p)?;
    let f = build_fd(d)?.reduce_mod(p)?;
    let roots = f.roots().len() + usize::from(f.degree() == Some(5));
    let lhs = roots == 6;
    let rhs = cubic_split_type(&build_gd(d)?, p)? == SplitType::Split3 && legendre(3, p)? == 1;
    Ok(lhs == rhs)
}

/// Split type of g_d for every residue d mod p (None at d = 0, -3), via
/// kappa = (d-3)/(d+3) and g_d(t) = 0 iff 4t^3 - 3t = kappa.
pub fn split_type_table(p: u64) -> Vec<Option<SplitType>> {
    let mut hits = vec![0u8; p as usize];
    for t in 0..p {
        let k = (4 * mul_mod(t, mul_mod(t, t, p), p) + 3 * (p - t)) % p;
        hits[k as usize] += 1;
    }
    (0..p)
        .map(|d| {
            if d == 0 || d == p - 3 {
                return None;
            }
            let kappa = mul_mod((d + p - 3) % p, crate::arith::inv_mod((d + 3) % p, p), p);
            Some(match hits[kappa as usize] {
                3 => SplitType::Split3,
                1 => SplitType::OneRoot,
                _ => SplitType::Irreducible,
            })
        })
        .collect()
}
