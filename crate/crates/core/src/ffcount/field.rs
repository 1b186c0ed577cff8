use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::{inv_mod, mul_mod, pow_mod, smallest_nonresidue};

/// Element of F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FpElem {
    value: u64,
    p: u64,
}

impl FpElem {
    pub fn new(value: i128, p: u64) -> Self {
        FpElem {
            value: value.rem_euclid(p as i128) as u64,
            p,
        }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn pow(self, e: u64) -> Self {
        FpElem {
            value: pow_mod(self.value, e, self.p),
            p: self.p,
        }
    }

    pub fn inv(self) -> Option<Self> {
        (!self.is_zero()).then(|| FpElem {
            value: inv_mod(self.value, self.p),
            p: self.p,
        })
    }

    pub fn legendre(self) -> i8 {
        match pow_mod(self.value, (self.p - 1) / 2, self.p) {
            0 => 0,
            1 => 1,
            _ => -1,
        }
    }
}

impl Add for FpElem {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        FpElem {
            value: (self.value + o.value) % self.p,
            p: self.p,
        }
    }
}

impl Sub for FpElem {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        FpElem {
            value: (self.value + self.p - o.value) % self.p,
            p: self.p,
        }
    }
}

impl Mul for FpElem {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        FpElem {
            value: mul_mod(self.value, o.value, self.p),
            p: self.p,
        }
    }
}

impl Neg for FpElem {
    type Output = Self;
    fn neg(self) -> Self {
        FpElem {
            value: (self.p - self.value) % self.p,
            p: self.p,
        }
    }
}

/// `a + b*sqrt(nu)` in F_{p^2}, nu the smallest nonresidue mod p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadExtElem {
    pub a: FpElem,
    pub b: FpElem,
    pub nu: FpElem,
}

impl QuadExtElem {
    pub fn new(a: FpElem, b: FpElem) -> Self {
        let p = a.modulus();
        QuadExtElem {
            a,
            b,
            nu: FpElem::new(smallest_nonresidue(p) as i128, p),
        }
    }

    pub fn from_base(a: FpElem) -> Self {
        Self::new(a, FpElem::new(0, a.modulus()))
    }

    pub fn is_zero(self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn norm(self) -> FpElem {
        self.a * self.a - self.nu * self.b * self.b
    }

    /// Nonzero z is a square in F_{p^2} iff its norm is a square in F_p.
    pub fn is_square(self) -> bool {
        self.is_zero() || self.norm().legendre() == 1
    }
}

impl Add for QuadExtElem {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        QuadExtElem {
            a: self.a + o.a,
            b: self.b + o.b,
            nu: self.nu,
        }
    }
}

impl Mul for QuadExtElem {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        QuadExtElem {
            a: self.a * o.a + self.nu * self.b * o.b,
            b: self.a * o.b + self.b * o.a,
            nu: self.nu,
        }
    }
}

/// Quadratic character table for F_p.
pub struct QrTable {
    chi: Vec<i8>,
}

impl QrTable {
    pub fn new(p: u64) -> Self {
        let mut chi = vec![-1i8; p as usize];
        chi[0] = 0;
        for x in 1..=(p - 1) / 2 {
            chi[mul_mod(x, x, p) as usize] = 1;
        }
        QrTable { chi }
    }

    #[inline]
    pub fn chi(&self, x: u64) -> i8 {
        self.chi[x as usize]
    }
}
