use rayon::prelude::*;

use crate::arith::{primes_upto, reduce_i64, valuation};
use crate::error::Result;
use crate::ffcount::{QrTable, SplitType};
use crate::frobdata::{
    a_p2_from_degrees, ap_e0, euler_factor_good, euler_factor_oracle, f_k, f_m,
    infer_twist_kernel, residue_degrees, split_type_table, table_row, FrobeniusProfile,
    TwistKernel, BOUND_P_DIVIDES_D, BOUND_WEIL,
};
use crate::stats::squarefree_enum;

use super::{check_x, neumaier_sum, prime_limit, TestFunction};

/// How per-prime inner sums over d are formed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumPath {
    /// Euler data tabulated once per residue class of d mod p.
    ResidueClass,
    /// Euler data recomputed for each (d, p).
    PerD,
}

/// A density sum and the bound on the terms it skipped.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SumOutcome {
    pub value: f64,
    pub budget: f64,
}

/// Exact integer inner sum over d for one prime, with skipped-term counts.
#[derive(Clone, Copy, Debug, Default)]
struct PrimeInner {
    sum: i128,
    skipped_pd: u64,
    skipped_high: u64,
}

enum Bad {
    Good,
    Zero,
    DividesD,
    HighPower,
}

fn classify(d: u64, p: u64) -> Bad {
    if d % p == 0 {
        Bad::DividesD
    } else if (d + 3) % p == 0 {
        if valuation((d + 3) as i128, p) >= 6 {
            Bad::HighPower
        } else {
            Bad::Zero
        }
    } else {
        Bad::Good
    }
}

/// Outer sum over primes in ascending order: value and budget.
fn combine(
    primes: &[u64],
    inner: &[PrimeInner],
    n_set: usize,
    lx: f64,
    value_w: impl Fn(u64) -> f64,
    budget_w: impl Fn(u64, &PrimeInner) -> f64,
) -> SumOutcome {
    let scale = 2.0 / (n_set as f64 * lx);
    let value = neumaier_sum(
        primes
            .iter()
            .zip(inner)
            .map(|(&p, s)| scale * value_w(p) * s.sum as f64),
    );
    let budget = neumaier_sum(primes.iter().zip(inner).map(|(&p, s)| scale * budget_w(p, s)));
    SumOutcome { value, budget }
}

fn kernels(ds: &[u64]) -> Result<Vec<TwistKernel>> {
    ds.par_iter().map(|&d| infer_twist_kernel(d as i64)).collect()
}

/// a_{p,1} for d at p from the split table and the kernel sign.
fn a1_fast(d: u64, p: u64, split: SplitType, a: i64, k: &TwistKernel, qr: &QrTable) -> Result<i64> {
    let fk = f_k(split, p);
    let fm = f_m(p);
    let fl = if fk % 2 == 1 {
        match qr.chi(reduce_i64(k.m, p)) {
            1 => fk,
            -1 => 2 * fk,
            _ => return Ok(euler_factor_oracle(d as i64, p)?.a1),
        }
    } else {
        fk
    };
    match table_row(FrobeniusProfile { fl, fk, fm }, a, p) {
        Some((a1, _)) => Ok(a1),
        None => Ok(euler_factor_oracle(d as i64, p)?.a1),
    }
}

pub fn s1_sum(x: f64, sigma: f64) -> Result<f64> {
    Ok(s1_sum_with(x, sigma, SumPath::ResidueClass)?.value)
}

/// S1 = 2/(|S| log X) sum_d sum_p lambda_p(C_d) log p / sqrt p * phihat(log p / log X).
pub fn s1_sum_with(x: f64, sigma: f64, path: SumPath) -> Result<SumOutcome> {
    check_x(x)?;
    let tf = TestFunction::new(sigma)?;
    let set = squarefree_enum(x)?;
    let ds = &set.members;
    let lx = x.ln();
    let primes = primes_upto(prime_limit(x, sigma));
    let need_kernels = primes.iter().any(|&p| p % 3 == 1);
    let ks = if need_kernels { kernels(ds)? } else { Vec::new() };

    let inner: Vec<PrimeInner> = primes
        .par_iter()
        .map(|&p| -> Result<PrimeInner> {
            let mut acc = PrimeInner::default();
            if p < 5 {
                acc.skipped_high = ds.len() as u64;
                return Ok(acc);
            }
            let split = (path == SumPath::ResidueClass && p % 3 == 1).then(|| split_type_table(p));
            let qr = split.as_ref().map(|_| QrTable::new(p));
            let a = ap_e0(p);
            for (i, &d) in ds.iter().enumerate() {
                match classify(d, p) {
                    Bad::DividesD => acc.skipped_pd += 1,
                    Bad::HighPower => acc.skipped_high += 1,
                    Bad::Zero => {}
                    Bad::Good => {
                        let a1 = match (path, &split) {
                            // every fM = 2 row has a_{p,1} = 0
                            (SumPath::ResidueClass, None) => 0,
                            (SumPath::ResidueClass, Some(tab)) => {
                                let s = tab[(d % p) as usize].expect("good residue");
                                a1_fast(d, p, s, a, &ks[i], qr.as_ref().unwrap())?
                            }
                            (SumPath::PerD, _) => {
                                if p % 3 == 1 {
                                    euler_factor_good(d as i64, p, &ks[i])?.a1
                                } else {
                                    let empty = TwistKernel { d: d as i64, m: 1, verified_primes: vec![] };
                                    euler_factor_good(d as i64, p, &empty)?.a1
                                }
                            }
                        };
                        acc.sum -= a1 as i128;
                    }
                }
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;

    let (bp, _) = BOUND_P_DIVIDES_D;
    let (bw, _) = BOUND_WEIL;
    Ok(combine(
        &primes,
        &inner,
        ds.len(),
        lx,
        |p| {
            let lp = (p as f64).ln();
            lp / p as f64 * tf.phihat(lp / lx)
        },
        |p, s| {
            let lp = (p as f64).ln();
            let w = lp / (p as f64).sqrt() * tf.phihat(lp / lx);
            w * (bp * s.skipped_pd as f64 + bw * s.skipped_high as f64)
        },
    ))
}

pub fn s2_sum(x: f64, sigma: f64) -> Result<f64> {
    Ok(s2_sum_with(x, sigma, SumPath::ResidueClass)?.value)
}

/// S2 = 2/(|S| log X) sum_d sum_p lambda_{p^2}(C_d) log p / p * phihat(2 log p / log X).
pub fn s2_sum_with(x: f64, sigma: f64, path: SumPath) -> Result<SumOutcome> {
    check_x(x)?;
    let tf = TestFunction::new(sigma)?;
    let set = squarefree_enum(x)?;
    let ds = &set.members;
    let lx = x.ln();
    let primes = primes_upto(prime_limit(x, sigma / 2.0));

    let inner: Vec<PrimeInner> = primes
        .par_iter()
        .map(|&p| -> Result<PrimeInner> {
            let mut acc = PrimeInner::default();
            if p < 5 {
                acc.skipped_high = ds.len() as u64;
                return Ok(acc);
            }
            let a = ap_e0(p);
            let fm = f_m(p);
            let by_class: Option<Vec<i64>> = (path == SumPath::ResidueClass).then(|| {
                split_type_table(p)
                    .into_iter()
                    .map(|s| s.map_or(0, |s| a_p2_from_degrees(f_k(s, p), fm, a, p).unwrap()))
                    .collect()
            });
            for &d in ds {
                match classify(d, p) {
                    Bad::DividesD => acc.skipped_pd += 1,
                    Bad::HighPower => acc.skipped_high += 1,
                    Bad::Zero => {}
                    Bad::Good => {
                        let ap2 = match &by_class {
                            Some(t) => t[(d % p) as usize],
                            None => {
                                let (fk, fm) = residue_degrees(d as i64, p)?;
                                a_p2_from_degrees(fk, fm, a, p).unwrap()
                            }
                        };
                        acc.sum += ap2 as i128;
                    }
                }
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;

    let (_, bp) = BOUND_P_DIVIDES_D;
    let (_, bw) = BOUND_WEIL;
    Ok(combine(
        &primes,
        &inner,
        ds.len(),
        lx,
        |p| {
            let lp = (p as f64).ln();
            lp / (p as f64 * p as f64) * tf.phihat(2.0 * lp / lx)
        },
        |p, s| {
            let lp = (p as f64).ln();
            let w = lp / p as f64 * tf.phihat(2.0 * lp / lx);
            w * (bp * s.skipped_pd as f64 + bw * s.skipped_high as f64)
        },
    ))
}
