use std::collections::BTreeSet;

use crate::arith::{is_prime, squarefree_part};
use crate::error::{Error, Result};
use crate::family::build_fd;
use crate::ffcount::{genus2_a1, legendre};

use super::{ap_e0, residue_degrees, table_row, FrobeniusProfile};

/// Quadratic character of L_d/K_d, recorded as a squarefree m with eps(p) = (m/p).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistKernel {
    pub d: i64,
    pub m: i64,
    pub verified_primes: Vec<u64>,
}

impl TwistKernel {
    pub fn epsilon(&self, p: u64) -> i8 {
        legendre(self.m as i128, p).expect("p is an odd prime")
    }
}

const MIN_PRIMES: usize = 8;
const MAX_PRIMES: usize = 400;

/// Representative of m modulo <-3, d> and squares: smallest |.|, positive on ties.
pub fn canonical_class(m: i128, d: i64) -> i128 {
    let d = d as i128;
    [m, -3 * m, d * m, -3 * d * m]
        .into_iter()
        .map(squarefree_part)
        .min_by_key(|&x| (x.unsigned_abs(), x < 0))
        .unwrap()
}

/// Classes generated by -1, 2, d - 3, d + 3 modulo <-3, d>. The trivial class stays in:
/// it is the answer whenever -2(d+3) already lies in <-3, d> (e.g. d = 6).
pub fn candidate_classes(d: i64) -> Vec<i64> {
    let gens = [-1i128, 2, (d - 3) as i128, (d + 3) as i128];
    let mut out = BTreeSet::new();
    for mask in 0u32..16 {
        let m: i128 = (0..4)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| squarefree_part(gens[i]))
            .product();
        out.insert(canonical_class(squarefree_part(m), d) as i64);
    }
    out.into_iter().collect()
}

/// eps(p) read off the oracle a1 at a prime with fK odd.
fn observed_epsilon(d: i64, p: u64, fk: u32) -> Result<i8> {
    let f = build_fd(d)?.reduce_mod(p)?;
    let a1 = genus2_a1(&f)?;
    let a = ap_e0(p);
    for (eps, fl) in [(1i8, fk), (-1, 2 * fk)] {
        let row = table_row(FrobeniusProfile { fl, fk, fm: 1 }, a, p)
            .expect("odd fK rows are reachable");
        if row.0 == a1 {
            return Ok(eps);
        }
    }
    Err(Error::Inconsistent(format!(
        "oracle a1 = {a1} matches no table row at d = {d}, p = {p}"
    )))
}

/// Infers the L_d/K_d character by matching oracle a1 at primes p = 1 mod 3 with fK odd.
pub fn infer_twist_kernel(d: i64) -> Result<TwistKernel> {
    if d == 0 || d == 3 || d == -3 || !crate::arith::is_squarefree(d) {
        return Err(Error::Domain(format!("twist kernel needs squarefree d not in {{0, 3}}, got {d}")));
    }
    let mut survivors = candidate_classes(d);
    let bad = 2 * (d as i128 * d as i128 - 9) * d as i128;
    let mut used = Vec::new();
    let mut p = 5u64;
    while used.len() < MAX_PRIMES {
        p += 2;
        if p % 3 != 1 || !is_prime(p) || bad % p as i128 == 0 {
            continue;
        }
        let (fk, _) = residue_degrees(d, p)?;
        if fk % 2 == 0 {
            continue;
        }
        let eps = observed_epsilon(d, p, fk)?;
        survivors.retain(|&m| legendre(m as i128, p).unwrap() == eps);
        used.push(p);
        if used.len() >= MIN_PRIMES && survivors.len() <= 1 {
            break;
        }
    }
    if survivors.len() != 1 {
        return Err(Error::InferenceAmbiguous {
            d,
            survivors: survivors.len(),
        });
    }
    Ok(TwistKernel {
        d,
        m: survivors[0],
        verified_primes: used,
    })
}
