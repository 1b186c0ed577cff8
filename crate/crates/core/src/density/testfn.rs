use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Fejer pair: phi(x) = sin^2(pi sigma x)/(2 pi x)^2, phihat(u) = (sigma - |u|)/4 on [-sigma, sigma].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TestFunction {
    sigma: f64,
}

impl TestFunction {
    pub fn new(sigma: f64) -> Result<Self> {
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::Domain(format!("sigma must be positive, got {sigma}")));
        }
        Ok(TestFunction { sigma })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn phi(&self, x: f64) -> f64 {
        if x == 0.0 {
            return self.phi0();
        }
        let s = (PI * self.sigma * x).sin();
        let w = 2.0 * PI * x;
        s * s / (w * w)
    }

    pub fn phi0(&self) -> f64 {
        self.sigma * self.sigma / 4.0
    }

    pub fn phihat(&self, u: f64) -> f64 {
        let a = u.abs();
        if a >= self.sigma {
            0.0
        } else {
            (self.sigma - a) / 4.0
        }
    }

    /// Fourier transform of phi at u, numerically: composite Simpson on [0, A]
    /// with A = 1000, plus the asymptotic tail of each cosine term.
    pub fn numeric_phihat(&self, u: f64) -> f64 {
        const A: f64 = 1000.0;
        const STEPS_PER_UNIT: usize = 2048;
        let n = (A as usize) * STEPS_PER_UNIT;
        let h = A / n as f64;
        let g = |x: f64| self.phi(x) * (2.0 * PI * u * x).cos();
        let mut acc = g(0.0) + g(A);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * g(i as f64 * h);
        }
        let body = acc * h / 3.0;
        // sin^2(pi s x) cos(2 pi u x) = cos(2pi u x)/2 - cos(2pi(u+s)x)/4 - cos(2pi(u-s)x)/4
        let tail_cos = |b: f64| {
            if b == 0.0 {
                1.0 / A
            } else {
                -(b * A).sin() / (b * A * A)
            }
        };
        let s = self.sigma;
        let tail = (0.5 * tail_cos(2.0 * PI * u)
            - 0.25 * tail_cos(2.0 * PI * (u + s))
            - 0.25 * tail_cos(2.0 * PI * (u - s)))
            / (4.0 * PI * PI);
        2.0 * (body + tail)
    }
}
