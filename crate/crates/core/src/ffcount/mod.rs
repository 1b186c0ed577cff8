//! Finite-field arithmetic and the brute-force point-counting oracle.

mod field;

pub use field::{FpElem, QrTable, QuadExtElem};

use crate::arith::{check_prime_ge5, is_prime, pow_mod, smallest_nonresidue};
use crate::error::{Error, Result};
use crate::poly::{ExactPoly, ModPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SplitType {
    Split3,
    OneRoot,
    Irreducible,
}

impl SplitType {
    /// Order of Frobenius in S3.
    pub fn order(self) -> u32 {
        match self {
            SplitType::Split3 => 1,
            SplitType::OneRoot => 2,
            SplitType::Irreducible => 3,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SplitType::Split3 => "split",
            SplitType::OneRoot => "lin_quad",
            SplitType::Irreducible => "irred",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PointCount {
    pub q: u64,
    pub count: u64,
}

/// Largest prime the oracle accepts; keeps products inside u64.
const ORACLE_PMAX: u64 = 1 << 31;

pub fn legendre(a: i128, p: u64) -> Result<i8> {
    if p < 3 || !is_prime(p) {
        return Err(Error::Usage(format!("legendre needs an odd prime, got {p}")));
    }
    let r = a.rem_euclid(p as i128) as u64;
    Ok(match pow_mod(r, (p - 1) / 2, p) {
        0 => 0,
        1 => 1,
        _ => -1,
    })
}

/// Sum of legendre(f(t), p) over t in F_p.
pub fn char_sum(f: &[i64], p: u64) -> Result<i64> {
    check_prime_ge5(p)?;
    let f = ModPoly::from_i64(f, p);
    let qr = QrTable::new(p);
    Ok((0..p).map(|t| qr.chi(f.eval(t)) as i64).sum())
}

fn check_model(f: &ModPoly) -> Result<usize> {
    let p = f.p();
    check_prime_ge5(p)?;
    if p >= ORACLE_PMAX {
        return Err(Error::Usage(format!("p = {p} too large for the oracle")));
    }
    let deg = f.degree().unwrap_or(0);
    if !matches!(deg, 3 | 5 | 6) {
        return Err(Error::DegenerateModel(format!("degree {deg} mod {p}")));
    }
    if f.discriminant() == Some(0) {
        return Err(Error::DegenerateModel(format!("zero discriminant mod {p}")));
    }
    Ok(deg)
}

/// Points on the smooth projective model of y^2 = F(x) over F_{p^ext}.
pub fn count_points(f: &ModPoly, ext: u32) -> Result<PointCount> {
    let deg = check_model(f)?;
    let p = f.p();
    let qr = QrTable::new(p);
    match ext {
        1 => {
            let affine: i64 = (0..p).map(|x| 1 + qr.chi(f.eval(x)) as i64).sum();
            let inf = if deg == 6 { 1 + qr.chi(f.leading()) as i64 } else { 1 };
            Ok(PointCount {
                q: p,
                count: (affine + inf) as u64,
            })
        }
        2 => {
            let affine = affine_count_ext2(f, &qr);
            // every element of F_p^x is a square in F_{p^2}
            let inf = if deg == 6 { 2 } else { 1 };
            Ok(PointCount {
                q: p * p,
                count: (affine + inf) as u64,
            })
        }
        _ => Err(Error::Usage(format!("extension degree {ext} not supported"))),
    }
}

fn affine_count_ext2(f: &ModPoly, qr: &QrTable) -> i64 {
    let p = f.p();
    let nu = smallest_nonresidue(p);
    let c = f.coeffs();
    let mut total: i64 = 0;
    for a in 0..p {
        for b in 0..p {
            // Horner in F_p[w]/(w^2 - nu)
            let (mut x0, mut x1) = (*c.last().unwrap(), 0u64);
            for &ci in c.iter().rev().skip(1) {
                let y0 = (x0 * a % p + nu * (x1 * b % p)) % p;
                let y1 = (x0 * b + x1 * a) % p;
                x0 = (y0 + ci) % p;
                x1 = y1;
            }
            if x0 == 0 && x1 == 0 {
                total += 1;
            } else {
                let norm = (x0 * x0 % p + p - nu * (x1 * x1 % p) % p) % p;
                total += 1 + qr.chi(norm) as i64;
            }
        }
    }
    total
}

/// Trace of Frobenius of y^2 = E(x), E a cubic with integer coefficients.
pub fn trace_ap(e: &[i64], p: u64) -> Result<i64> {
    let f = ModPoly::from_i64(e, p);
    if f.degree() != Some(3) {
        check_prime_ge5(p)?;
        return Err(Error::DegenerateModel(format!("cubic degenerates mod {p}")));
    }
    let n = count_points(&f, 1)?;
    Ok(p as i64 + 1 - n.count as i64)
}

/// a_{p,1} alone, from the F_p count.
pub fn genus2_a1(f: &ModPoly) -> Result<i64> {
    if !matches!(f.degree(), Some(5 | 6)) {
        return Err(Error::DegenerateModel(format!("not a genus 2 model mod {}", f.p())));
    }
    let n1 = count_points(f, 1)?.count as i64;
    Ok(n1 - f.p() as i64 - 1)
}

/// (a_{p,1}, a_{p,2}) from counts over F_p and F_{p^2}.
pub fn genus2_a1a2(f: &ModPoly) -> Result<(i64, i64)> {
    let a1 = genus2_a1(f)?;
    let p = f.p() as i64;
    let n2 = count_points(f, 2)?.count as i64;
    let twice = a1 * a1 - (p * p + 1 - n2);
    if twice % 2 != 0 {
        return Err(Error::Inconsistent(format!(
            "non-integral a2 at p = {p} (2*a2 = {twice})"
        )));
    }
    Ok((a1, twice / 2))
}

/// Splitting type of a rational cubic mod p, by root count.
pub fn cubic_split_type(g: &ExactPoly, p: u64) -> Result<SplitType> {
    check_prime_ge5(p)?;
    let gm = g.reduce_mod(p)?;
    if gm.degree() != Some(3) || gm.discriminant() == Some(0) {
        return Err(Error::DegenerateModel(format!("cubic not separable of degree 3 mod {p}")));
    }
    Ok(match gm.roots().len() {
        3 => SplitType::Split3,
        1 => SplitType::OneRoot,
        0 => SplitType::Irreducible,
        n => return Err(Error::Inconsistent(format!("separable cubic with {n} roots"))),
    })
}
