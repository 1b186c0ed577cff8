//! Exact constructors for the curves of the family and symbolic identity checks.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::arith::{check_prime_ge5, mul_mod, sqrt_mod};
use crate::error::{Error, Result};
use crate::ffcount::legendre;
use crate::poly::{int, rat, ExactPoly, IntPoly, ModPoly};

fn check_cd_param(d: i64) -> Result<()> {
    if matches!(d, 0 | 3 | -3) {
        return Err(Error::Domain(format!("C_d is undefined at d = {d}")));
    }
    Ok(())
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// The parameters (u, v, s, z) = (1, d, 2/(d+3), (d-3)/(d+3)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyConstants {
    pub d: i64,
    pub u: BigRational,
    pub v: BigRational,
    pub s: BigRational,
    pub z: BigRational,
}

impl FamilyConstants {
    pub fn new(d: i64) -> Result<Self> {
        if d == -3 {
            return Err(Error::Domain("s, z undefined at d = -3".into()));
        }
        Ok(FamilyConstants {
            d,
            u: int(1),
            v: int(d),
            s: rat(2, d + 3),
            z: rat(d - 3, d + 3),
        })
    }

    /// u^3 - z^2 = 3 s^2 v.
    pub fn satisfies_relation(&self) -> bool {
        let three = int(3);
        &self.u * &self.u * &self.u - &self.z * &self.z == three * &self.s * &self.s * &self.v
    }
}

/// f_d, via the general sextic 27z x^6 - 162sv x^5 - 135vz x^4 + 180sv^2 x^3
/// + 45v^2 z x^2 - 18sv^3 x - v^3 z.
pub fn build_fd(d: i64) -> Result<ExactPoly> {
    check_cd_param(d)?;
    let FamilyConstants { v, s, z, .. } = FamilyConstants::new(d)?;
    let v2 = &v * &v;
    let v3 = &v2 * &v;
    Ok(ExactPoly::new(vec![
        -(&v3 * &z),
        int(-18) * &s * &v3,
        int(45) * &v2 * &z,
        int(180) * &s * &v2,
        int(-135) * &v * &z,
        int(-162) * &s * &v,
        int(27) * &z,
    ]))
}

/// (d+3)^2 f_d with integer coefficients.
pub fn build_fd_integral(d: i64) -> Result<IntPoly> {
    check_cd_param(d)?;
    let (d, e) = (big(d), big(d * d - 9));
    let d2 = &d * &d;
    let d3 = &d2 * &d;
    let t = &d + 3;
    Ok(IntPoly::new(vec![
        -(&d3 * &e),
        big(-36) * &d3 * &t,
        big(45) * &d2 * &e,
        big(360) * &d2 * &t,
        big(-135) * &d * &e,
        big(-324) * &d * &t,
        big(27) * &e,
    ]))
}

/// g_d = x^3 - (3/4)x - (d-3)/(4(d+3)); alpha_d is a root.
pub fn build_gd(d: i64) -> Result<ExactPoly> {
    if d == -3 {
        return Err(Error::Domain("g_d undefined at d = -3".into()));
    }
    Ok(ExactPoly::new(vec![
        -rat(d - 3, 4 * (d + 3)),
        rat(-3, 4),
        int(0),
        int(1),
    ]))
}

/// Resolvent x^3 + 12d/(d-3) x^2 - 4d x - 16d^2/(3(d-3)) whose roots give the quadratic factors.
pub fn build_resolvent(d: i64) -> Result<ExactPoly> {
    check_cd_param(d)?;
    Ok(ExactPoly::new(vec![
        -rat(16 * d * d, 3 * (d - 3)),
        int(-4 * d),
        rat(12 * d, d - 3),
        int(1),
    ]))
}

/// Type-B sextic, coefficientwise as displayed.
pub fn build_typeb(d: i64) -> Result<ExactPoly> {
    if d == 0 {
        return Err(Error::Domain("type B needs d != 0".into()));
    }
    let e = d * d + d;
    let o = d * d - d;
    Ok(ExactPoly::new(vec![
        rat(27 * e, 2),
        int(81 * o),
        rat(405 * e, 2),
        int(270 * o),
        rat(405 * e, 2),
        int(81 * o),
        rat(27 * e, 2),
    ]))
}

/// Type-B sextic equals (27d/2)((x-1)^6 + d(x+1)^6).
pub fn typeb_identity(d: i64) -> Result<bool> {
    let f = build_typeb(d)?;
    let xm = ExactPoly::from_i64(&[-1, 1]).pow(6);
    let xp = ExactPoly::from_i64(&[1, 1]).pow(6).scale(&int(d));
    Ok(f == xm.add(&xp).scale(&rat(27 * d, 2)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CurveSpec {
    Cd(i64),
    TypeB(i64),
    E0,
    E1,
    E2,
    C1,
    Ed4(i64),
    Ed5(i64),
}

impl CurveSpec {
    pub fn genus(self) -> u32 {
        match self {
            CurveSpec::Cd(_) | CurveSpec::TypeB(_) | CurveSpec::C1 => 2,
            _ => 1,
        }
    }

    pub fn polynomial(self) -> Result<ExactPoly> {
        match self {
            CurveSpec::Cd(d) => build_fd(d),
            CurveSpec::TypeB(d) => build_typeb(d),
            CurveSpec::E0 => Ok(ExactPoly::from_i64(&[1, 0, 0, 1])),
            CurveSpec::E1 => Ok(ExactPoly::from_i64(&[0, -3, 0, 1])),
            CurveSpec::E2 => Ok(ExactPoly::from_i64(&[0, 18, 0, -2])),
            CurveSpec::C1 => Ok(ExactPoly::from_i64(&[0, 18, 0, -42, 0, 24])),
            CurveSpec::Ed4(d) | CurveSpec::Ed5(d) => {
                if d == 0 {
                    return Err(Error::Domain("E_{d^k} needs d != 0".into()));
                }
                let k = if matches!(self, CurveSpec::Ed4(_)) { 4 } else { 5 };
                let c = big(216) * num_traits::pow(big(d), k);
                Ok(ExactPoly::new(vec![
                    BigRational::from_integer(c),
                    int(0),
                    int(0),
                    int(1),
                ]))
            }
        }
    }
}

fn check_good_cd(d: i64, p: u64) -> Result<()> {
    check_cd_param(d)?;
    check_prime_ge5(p)?;
    let pi = p as i64;
    if d % pi == 0 || (d + 3) % pi == 0 {
        return Err(Error::BadPrime { d, p });
    }
    Ok(())
}

fn inapplicable_if_divides_dm3(d: i64, p: u64) -> Result<()> {
    if (d - 3) % p as i64 == 0 {
        return Err(Error::Inapplicable(format!("p = {p} divides d - 3 = {}", d - 3)));
    }
    Ok(())
}

/// Checks f_d = c6 * prod (x^2 + r x - d/3) mod p over the resolvent roots r,
/// together with disc(resolvent) = 2^8 d^3 (d+3)^4 / (d-3)^4.
pub fn verify_quadratic_factorization(d: i64, p: u64) -> Result<bool> {
    check_good_cd(d, p)?;
    inapplicable_if_divides_dm3(d, p)?;
    let res = build_resolvent(d)?.reduce_mod(p)?;
    let roots = res.roots();
    if roots.len() != 3 {
        return Err(Error::Inapplicable(format!(
            "resolvent has {} roots mod {p}",
            roots.len()
        )));
    }
    let fd = build_fd(d)?.reduce_mod(p)?;
    let c6 = fd.leading();
    let minus_d3 = ExactPoly::constant(-rat(d, 3)).reduce_mod(p)?;
    let k = minus_d3.coeffs().first().copied().unwrap_or(0);
    let prod = roots
        .iter()
        .fold(ModPoly::new(vec![c6], p), |acc, &r| {
            acc.mul(&ModPoly::new(vec![k, r, 1], p))
        });
    let want_disc = ExactPoly::constant(
        rat(256, 1) * int(d).pow(3) * int(d + 3).pow(4) / int(d - 3).pow(4),
    )
    .reduce_mod(p)?;
    let disc_ok = res.discriminant() == Some(want_disc.coeffs().first().copied().unwrap_or(0));
    Ok(prod == fd && disc_ok)
}

/// Checks f_d = c6 * (cubic+)(cubic-) mod p with sqrt(3d) replaced by either square root.
/// The display omits the leading constant c6 = 27(d-3)/(d+3).
pub fn verify_two_cubic_factorization(d: i64, p: u64) -> Result<bool> {
    check_good_cd(d, p)?;
    inapplicable_if_divides_dm3(d, p)?;
    if legendre(3 * d as i128, p)? != 1 {
        return Err(Error::Inapplicable(format!("3d is not a square mod {p}")));
    }
    let r = sqrt_mod(crate::arith::reduce_i64(3 * d, p), p).expect("square has a root");
    let fd = build_fd(d)?.reduce_mod(p)?;
    let to_p = |q: BigRational| -> Result<u64> {
        Ok(ExactPoly::constant(q)
            .reduce_mod(p)?
            .coeffs()
            .first()
            .copied()
            .unwrap_or(0))
    };
    let base = to_p(rat(6 * d, d - 3))?;
    let slope = to_p(rat(d + 3, d - 3))?;
    let dd = to_p(int(d))?;
    let d9 = to_p(rat(d, 9))?;
    let cubic = |root: u64| {
        let a = (base + mul_mod(slope, root, p)) % p;
        ModPoly::new(vec![mul_mod(d9, a, p), (p - dd) % p, (p - a) % p, 1], p)
    };
    let mut ok = true;
    for root in [r, (p - r) % p] {
        let other = (p - root) % p;
        let prod = cubic(root).mul(&cubic(other)).scale(fd.leading());
        ok &= prod == fd;
    }
    Ok(ok)
}

/// The ring class polynomial H_{-36}(x) = x^2 - 153542016x - 1790957481984.
pub const H36: [i128; 3] = [-1_790_957_481_984, -153_542_016, 1];
/// j-values 76771008 +/- 44330496 sqrt(3), stored as (a, b).
pub const J_RHO_SIGMA: (i128, i128) = (76_771_008, 44_330_496);

/// Evaluates H_{-36} at a + b sqrt(3) in Z[sqrt 3], returning (real, sqrt3-part).
pub fn h36_at(a: i128, b: i128) -> (i128, i128) {
    let sq = (a * a + 3 * b * b, 2 * a * b);
    (
        sq.0 + H36[1] * a + H36[0],
        sq.1 + H36[1] * b,
    )
}

pub fn verify_h36() -> bool {
    let (a, b) = J_RHO_SIGMA;
    h36_at(a, b) == (0, 0) && h36_at(a, -b) == (0, 0)
}

/// Rational-root test for g_d.
pub fn gd_has_rational_root(d: i64) -> Result<bool> {
    Ok(!build_gd(d)?.rational_roots().is_empty())
}

/// Checks the discriminant of f_d against 2^26 3^21 d^15.
pub fn fd_disc_identity(d: i64) -> Result<bool> {
    let want = int(2).pow(26) * int(3).pow(21) * int(d).pow(15);
    Ok(build_fd(d)?.discriminant()? == want)
}

/// Checks disc((d+3)^2 f_d) = 2^26 3^21 d^15 (d+3)^20.
pub fn fd_integral_disc_identity(d: i64) -> Result<bool> {
    let want = int(2).pow(26) * int(3).pow(21) * int(d).pow(15) * int(d + 3).pow(20);
    Ok(build_fd_integral(d)?.to_exact().discriminant()? == want)
}

/// The integral model is (d+3)^2 f_d coefficientwise.
pub fn fd_integral_matches(d: i64) -> Result<bool> {
    let scaled = build_fd(d)?.scale(&int((d + 3) * (d + 3)));
    Ok(build_fd_integral(d)?.to_exact() == scaled
        && scaled.coeffs().iter().all(|c| c.denom().is_one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn fd_matches_monic_display() {
        // 27(d-3)/(d+3) (x^6 - 12d/(d-3) x^5 - 5d x^4 + 40d^2/(3(d-3)) x^3 + 5d^2/3 x^2
        //   - 4d^3/(3(d-3)) x - d^3/27)
        for d in [1i64, 2, 5, -7, 11, 30] {
            let monic = ExactPoly::new(vec![
                -rat(d * d * d, 27),
                -rat(4 * d * d * d, 3 * (d - 3)),
                rat(5 * d * d, 3),
                rat(40 * d * d, 3 * (d - 3)),
                int(-5 * d),
                -rat(12 * d, d - 3),
                int(1),
            ]);
            let want = monic.scale(&rat(27 * (d - 3), d + 3));
            assert_eq!(build_fd(d).unwrap(), want, "d = {d}");
        }
    }

    #[test]
    fn fd_examples() {
        assert_eq!(build_fd(1).unwrap().leading(), rat(-27, 2));
        assert!(matches!(build_fd(0), Err(Error::Domain(_))));
        assert!(build_fd(3).is_err() && build_fd(-3).is_err());
        assert_eq!(build_fd_integral(1).unwrap().coeffs()[0], big(8));
        assert!(build_fd_integral(-3).is_err());
    }

    #[test]
    fn gd_mod7_at_d1() {
        let g = build_gd(1).unwrap().reduce_mod(7).unwrap();
        assert_eq!(g.coeffs(), &[1, 1, 0, 1]);
    }

    #[test]
    fn gd_discriminant_differs_from_display_by_four() {
        for d in [1i64, 2, 7, 100] {
            let disc = build_gd(d).unwrap().discriminant().unwrap();
            assert_eq!(disc, rat(81 * d, 4 * (d + 3) * (d + 3)));
        }
    }

    #[test]
    fn constants_relation() {
        for d in -20..20 {
            if d != -3 {
                assert!(FamilyConstants::new(d).unwrap().satisfies_relation());
            }
        }
    }

    #[test]
    fn typeb_examples() {
        assert!(typeb_identity(5).unwrap());
        assert!(build_typeb(1).unwrap().coeff(5).is_zero());
    }

    #[test]
    fn h36_examples() {
        assert!(verify_h36());
        assert_eq!(H36[0], -1_790_957_481_984);
        assert_eq!(2 * J_RHO_SIGMA.0, -H36[1]);
    }

    #[test]
    fn factorization_inapplicable_cases() {
        // legendre(2, 11) = -1
        assert!(matches!(
            verify_quadratic_factorization(2, 11),
            Err(Error::Inapplicable(_))
        ));
        // 13 | (16 - 3)
        assert!(matches!(
            verify_quadratic_factorization(16, 13),
            Err(Error::Inapplicable(_))
        ));
        // legendre(3, 7) = -1
        assert!(matches!(
            verify_two_cubic_factorization(1, 7),
            Err(Error::Inapplicable(_))
        ));
    }

    #[test]
    fn two_cubic_global_square() {
        for p in crate::arith::primes_upto(200).into_iter().filter(|&p| p >= 5) {
            match verify_two_cubic_factorization(12, p) {
                Ok(ok) => assert!(ok, "p = {p}"),
                Err(Error::BadPrime { .. }) | Err(Error::Inapplicable(_)) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }
}
