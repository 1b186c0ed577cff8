//! Exact rational/integer polynomials and their reductions mod p.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{inv_mod, mul_mod, pow_mod};
use crate::error::{Error, Result};

/// Polynomial over Q, coefficients indexed by degree, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactPoly {
    coeffs: Vec<BigRational>,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl ExactPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ExactPoly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| int(x)).collect())
    }

    pub fn zero() -> Self {
        ExactPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `x + c`
    pub fn linear(c: BigRational) -> Self {
        Self::new(vec![c, BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(BigRational::one()), |acc, _| acc.mul(self))
    }

    /// Substitute `x -> g(x)`.
    pub fn compose(&self, g: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| acc.mul(g).add(&Self::constant(c.clone())))
    }

    /// Euclidean remainder.
    pub fn rem(&self, m: &Self) -> Self {
        let dm = m.degree().expect("division by zero polynomial");
        let lc = m.leading();
        let mut r = self.coeffs.clone();
        while r.len() > dm && !r.is_empty() {
            let k = r.len() - 1 - dm;
            let q = r.last().unwrap() / &lc;
            for (j, c) in m.coeffs.iter().enumerate() {
                r[k + j] -= &q * c;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Self::new(r)
    }

    pub fn resultant(&self, o: &Self) -> BigRational {
        let (Some(m), Some(n)) = (self.degree(), o.degree()) else {
            return BigRational::zero();
        };
        if n == 0 {
            return pow_rat(&o.leading(), m);
        }
        if m < n {
            let r = o.resultant(self);
            return if (m * n) % 2 == 1 { -r } else { r };
        }
        let r = self.rem(o);
        let Some(dr) = r.degree() else {
            return BigRational::zero();
        };
        let mut out = pow_rat(&o.leading(), m - dr) * o.resultant(&r);
        if (m * n) % 2 == 1 {
            out = -out;
        }
        out
    }

    pub fn discriminant(&self) -> Result<BigRational> {
        let n = match self.degree() {
            Some(n) if n >= 2 => n,
            _ => return Err(Error::Domain("discriminant needs degree >= 2".into())),
        };
        let r = self.resultant(&self.derivative()) / self.leading();
        Ok(if (n * (n - 1) / 2) % 2 == 1 { -r } else { r })
    }

    /// Rational roots, by the rational-root theorem on the cleared integer polynomial.
    pub fn rational_roots(&self) -> Vec<BigRational> {
        let ip = IntPoly::clear_denominators(self);
        let c = ip.coeffs();
        let Some(k) = c.iter().position(|x| !x.is_zero()) else {
            return Vec::new();
        };
        let mut roots = Vec::new();
        if k > 0 {
            roots.push(BigRational::zero());
        }
        let a0 = c[k].abs();
        let an = c.last().unwrap().abs();
        let divisors = |n: &BigInt| -> Vec<BigInt> {
            let n = n.to_u64().expect("rational root search limited to u64 coefficients");
            (1..=n).filter(|q| n % q == 0).map(BigInt::from).collect()
        };
        for num in divisors(&a0) {
            for den in divisors(&an) {
                if !num.gcd(&den).is_one() {
                    continue;
                }
                for s in [1, -1] {
                    let x = BigRational::new(&num * s, den.clone());
                    if self.eval(&x).is_zero() && !roots.contains(&x) {
                        roots.push(x);
                    }
                }
            }
        }
        roots
    }

    /// Reduction mod p; fails when a denominator vanishes.
    pub fn reduce_mod(&self, p: u64) -> Result<ModPoly> {
        let pb = BigInt::from(p);
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let den = c.denom().mod_floor(&pb).to_u64().unwrap();
            if den == 0 {
                return Err(Error::NotReducible { p });
            }
            let num = c.numer().mod_floor(&pb).to_u64().unwrap();
            out.push(mul_mod(num, inv_mod(den, p), p));
        }
        Ok(ModPoly::new(out, p))
    }
}

fn pow_rat(x: &BigRational, e: usize) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * x)
}

impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Polynomial over Z, coefficients indexed by degree. Content is not normalized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn to_exact(&self) -> ExactPoly {
        ExactPoly::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Multiply through by the lcm of denominators.
    pub fn clear_denominators(f: &ExactPoly) -> Self {
        let l = f
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        IntPoly::new(
            f.coeffs()
                .iter()
                .map(|c| (c * &l).to_integer())
                .collect(),
        )
    }

    pub fn reduce_mod(&self, p: u64) -> ModPoly {
        let pb = BigInt::from(p);
        ModPoly::new(
            self.coeffs
                .iter()
                .map(|c| c.mod_floor(&pb).to_u64().unwrap())
                .collect(),
            p,
        )
    }
}

/// Polynomial over F_p with reduced coefficients, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPoly {
    coeffs: Vec<u64>,
    p: u64,
}

impl ModPoly {
    pub fn new(coeffs: Vec<u64>, p: u64) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ModPoly { coeffs, p }
    }

    pub fn from_i64(c: &[i64], p: u64) -> Self {
        Self::new(c.iter().map(|&x| crate::arith::reduce_i64(x, p)).collect(), p)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (mul_mod(acc, x, p) + c) % p)
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod(c, i as u64 % p, p))
                .collect(),
            p,
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.p;
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Self::new(Vec::new(), p);
        }
        let mut out = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        Self::new(out, p)
    }

    pub fn scale(&self, k: u64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| mul_mod(c, k, self.p)).collect(), self.p)
    }

    fn rem(&self, m: &Self) -> Self {
        let p = self.p;
        let dm = m.degree().expect("division by zero polynomial");
        let inv = inv_mod(m.leading(), p);
        let mut r = self.coeffs.clone();
        while r.len() > dm && !r.is_empty() {
            let k = r.len() - 1 - dm;
            let q = mul_mod(*r.last().unwrap(), inv, p);
            for (j, &c) in m.coeffs.iter().enumerate() {
                r[k + j] = (r[k + j] + p - mul_mod(q, c, p)) % p;
            }
            r.pop();
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        Self::new(r, p)
    }

    pub fn resultant(&self, o: &Self) -> u64 {
        let p = self.p;
        let (Some(m), Some(n)) = (self.degree(), o.degree()) else {
            return 0;
        };
        let neg = |x: u64| (p - x) % p;
        if n == 0 {
            return pow_mod(o.leading(), m as u64, p);
        }
        if m < n {
            let r = o.resultant(self);
            return if (m * n) % 2 == 1 { neg(r) } else { r };
        }
        let r = self.rem(o);
        let Some(dr) = r.degree() else {
            return 0;
        };
        let out = mul_mod(pow_mod(o.leading(), (m - dr) as u64, p), o.resultant(&r), p);
        if (m * n) % 2 == 1 {
            neg(out)
        } else {
            out
        }
    }

    /// Discriminant of the polynomial at its actual degree mod p.
    pub fn discriminant(&self) -> Option<u64> {
        let n = self.degree().filter(|&n| n >= 1)?;
        if n == 1 {
            return Some(1);
        }
        let p = self.p;
        let r = mul_mod(self.resultant(&self.derivative()), inv_mod(self.leading(), p), p);
        Some(if (n * (n - 1) / 2) % 2 == 1 { (p - r) % p } else { r })
    }

    /// Roots in F_p by enumeration.
    pub fn roots(&self) -> Vec<u64> {
        (0..self.p).filter(|&x| self.eval(x) == 0).collect()
    }
}
