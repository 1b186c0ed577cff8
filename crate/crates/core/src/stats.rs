//! Square-free enumeration, the sieve check and the two F_p counting tables.

use log::debug;

use crate::arith::{check_prime_ge5, mul_mod};
use crate::error::{Error, Result};
use crate::family::CurveSpec;
use crate::ffcount::{genus2_a1, trace_ap, QrTable, SplitType};
use crate::frobdata::split_type_table;
use crate::poly::ModPoly;

/// Square-free integers 0 < d < X, without d = 3.
#[derive(Clone, Debug, PartialEq)]
pub struct SquarefreeSet {
    pub x: f64,
    pub members: Vec<u64>,
}

impl SquarefreeSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Exclusive upper end of S(X) as an integer bound.
fn upper(x: f64) -> u64 {
    x.ceil() as u64
}

pub fn squarefree_enum(x: f64) -> Result<SquarefreeSet> {
    if !(x >= 2.0) {
        return Err(Error::Domain(format!("squarefree_enum needs X >= 2, got {x}")));
    }
    let n = upper(x);
    let mut sf = vec![true; n as usize];
    let mut q = 2u64;
    while q * q < n {
        let mut m = q * q;
        while m < n {
            sf[m as usize] = false;
            m += q * q;
        }
        q += 1;
    }
    let members: Vec<u64> = (1..n)
        .filter(|&d| (d as f64) < x && sf[d as usize] && d != 3)
        .collect();
    if n > 3 {
        debug!("S({x}): d = 3 excluded");
    }
    Ok(SquarefreeSet { x, members })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table1Row {
    pub p: u64,
    pub legendre_d: i8,
    pub split: SplitType,
    pub measured: i64,
    pub predicted: i64,
    pub deviation: i64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table2Row {
    pub p: u64,
    pub legendre_d: i8,
    /// legendre(-2(d^2-9), p), with 0 (d = 3 mod p) counted as -1.
    pub legendre_e: i8,
    pub split: SplitType,
    pub measured: i64,
    pub predicted: f64,
    pub deviation: f64,
}

impl Table1Row {
    pub fn class_label(&self) -> String {
        format!("{}|{:+}|{}", self.p % 3, self.legendre_d, self.split.label())
    }
}

impl Table2Row {
    pub fn class_label(&self) -> String {
        format!("{:+}|{:+}|{}", self.legendre_d, self.legendre_e, self.split.label())
    }
}

const SPLITS: [SplitType; 3] = [SplitType::Split3, SplitType::Irreducible, SplitType::OneRoot];

/// Table 1 main terms; combinations the S3 structure forbids are 0.
fn table1_formula(p: u64, leg: i8, split: SplitType) -> i64 {
    let p = p as i64;
    let one = p % 3 == 1;
    match (leg, split) {
        (1, SplitType::Split3) => (p - if one { 7 } else { 5 }) / 6,
        (1, SplitType::Irreducible) => (if one { p - 1 } else { p + 1 }) / 3,
        (-1, SplitType::OneRoot) => (p - if one { 1 } else { 3 }) / 2,
        _ => 0,
    }
}

/// Table 1 by one pass over residues (kappa parametrization).
pub fn table1(p: u64) -> Result<Vec<Table1Row>> {
    check_prime_ge5(p)?;
    let split = split_type_table(p);
    let qr = QrTable::new(p);
    let mut counts = [[0i64; 3]; 2];
    for d in 1..p {
        let Some(s) = split[d as usize] else { continue };
        let li = usize::from(qr.chi(d) == -1);
        counts[li][SPLITS.iter().position(|&x| x == s).unwrap()] += 1;
    }
    let mut rows = Vec::with_capacity(6);
    for (li, leg) in [1i8, -1].into_iter().enumerate() {
        for (si, &s) in SPLITS.iter().enumerate() {
            let predicted = table1_formula(p, leg, s);
            let measured = counts[li][si];
            rows.push(Table1Row {
                p,
                legendre_d: leg,
                split: s,
                measured,
                predicted,
                deviation: (measured - predicted).abs(),
            });
        }
    }
    Ok(rows)
}

/// a_p(E_1), a_p(E_2), a_p(C_1) with a_p(C_1) = -a_{p,1}(C_1).
pub fn auxiliary_traces(p: u64) -> Result<(i64, i64, i64)> {
    let coeffs = |c: CurveSpec| -> Vec<i64> {
        c.polynomial()
            .unwrap()
            .coeffs()
            .iter()
            .map(|x| x.to_integer().try_into().unwrap())
            .collect()
    };
    let e1 = trace_ap(&coeffs(CurveSpec::E1), p)?;
    let e2 = trace_ap(&coeffs(CurveSpec::E2), p)?;
    let c1 = -genus2_a1(&ModPoly::from_i64(&coeffs(CurveSpec::C1), p))?;
    Ok((e1, e2, c1))
}

/// Table 2 rows in the order (+,+,split), (+,-,split), (+,+,irred), (+,-,irred),
/// (-,+,lin*quad), (-,-,lin*quad).
pub fn table2(p: u64) -> Result<Vec<Table2Row>> {
    check_prime_ge5(p)?;
    let (e1, e2, c1) = match auxiliary_traces(p) {
        Ok(t) => t,
        Err(Error::DegenerateModel(m)) => {
            debug!("table2 skips p = {p}: {m}");
            return Ok(Vec::new());
        }
        Err(e) => return Err(e),
    };
    let split = split_type_table(p);
    let qr = QrTable::new(p);
    let classes: [(i8, i8, SplitType); 6] = [
        (1, 1, SplitType::Split3),
        (1, -1, SplitType::Split3),
        (1, 1, SplitType::Irreducible),
        (1, -1, SplitType::Irreducible),
        (-1, 1, SplitType::OneRoot),
        (-1, -1, SplitType::OneRoot),
    ];
    let mut counts = [0i64; 6];
    for d in 1..p {
        let Some(s) = split[d as usize] else { continue };
        let ld = qr.chi(d);
        let e = (mul_mod(d, d, p) + p - 9 % p) % p;
        let le = if qr.chi(mul_mod(2 * (p - 1) % p, e, p)) == 1 { 1 } else { -1 };
        if let Some(i) = classes.iter().position(|&c| c == (ld, le, s)) {
            counts[i] += 1;
        }
    }
    let (pf, e1, e2, c1) = (p as f64, e1 as f64, e2 as f64, c1 as f64);
    let main = [
        (pf - e1 - c1) / 12.0,
        (pf + e1 + c1) / 12.0,
        pf / 6.0 - e2 / 4.0 + e1 / 12.0 + c1 / 12.0,
        pf / 6.0 + e2 / 4.0 - e1 / 12.0 - c1 / 12.0,
        pf / 4.0 + e2 / 4.0,
        pf / 4.0 - e2 / 4.0,
    ];
    Ok(classes
        .iter()
        .zip(counts)
        .zip(main)
        .map(|((&(ld, le, s), measured), predicted)| Table2Row {
            p,
            legendre_d: ld,
            legendre_e: le,
            split: s,
            measured,
            predicted,
            deviation: (measured as f64 - predicted).abs(),
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// 1/(1 - p^-2), the local density of squarefree integers prime to p.
    Minus,
    /// 1/(1 + p^-2), the alternative normalization.
    Plus,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SieveCheck {
    pub p: u64,
    pub a: Vec<u64>,
    pub x: f64,
    pub set_size: usize,
    pub measured: usize,
    pub predicted_minus: f64,
    pub predicted_plus: f64,
    pub deviation_minus: f64,
    pub deviation_plus: f64,
    /// min deviation / ((1 + |A|) sqrt X).
    pub constant: f64,
}

impl SieveCheck {
    pub fn better(&self) -> Normalization {
        if self.deviation_minus <= self.deviation_plus {
            Normalization::Minus
        } else {
            Normalization::Plus
        }
    }
}

pub fn sieve_check(p: u64, a: &[u64], x: f64) -> Result<SieveCheck> {
    check_prime_ge5(p)?;
    if a.iter().any(|&r| r % p == 0) {
        return Err(Error::Domain("A must lie in F_p^x".into()));
    }
    if x < p as f64 {
        return Err(Error::Domain(format!("sieve_check needs X >= p, got X = {x}")));
    }
    let mut a: Vec<u64> = a.iter().map(|r| r % p).collect();
    a.sort_unstable();
    a.dedup();
    let s = squarefree_enum(x)?;
    let measured = s
        .members
        .iter()
        .filter(|&&d| a.binary_search(&(d % p)).is_ok())
        .count();
    let base = a.len() as f64 / p as f64 * s.len() as f64;
    let q = 1.0 / (p as f64 * p as f64);
    let predicted_minus = base / (1.0 - q);
    let predicted_plus = base / (1.0 + q);
    let deviation_minus = (measured as f64 - predicted_minus).abs();
    let deviation_plus = (measured as f64 - predicted_plus).abs();
    Ok(SieveCheck {
        p,
        x,
        set_size: s.len(),
        measured,
        predicted_minus,
        predicted_plus,
        deviation_minus,
        deviation_plus,
        constant: deviation_minus.min(deviation_plus) / ((1.0 + a.len() as f64) * x.sqrt()),
        a,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_enum(100.0).unwrap().len(), 60);
        assert_eq!(squarefree_enum(2.0).unwrap().members, vec![1]);
        assert!(squarefree_enum(1.0).is_err());
    }

    fn triple(rows: &[Table1Row]) -> (i64, i64, i64) {
        let get = |l: i8, s: SplitType| {
            rows.iter()
                .find(|r| r.legendre_d == l && r.split == s)
                .unwrap()
                .measured
        };
        (
            get(1, SplitType::Split3),
            get(1, SplitType::Irreducible),
            get(-1, SplitType::OneRoot),
        )
    }

    #[test]
    fn table1_examples() {
        assert_eq!(triple(&table1(7).unwrap()), (0, 2, 3));
        assert_eq!(triple(&table1(5).unwrap()), (0, 2, 1));
        let r13 = table1(13).unwrap();
        assert_eq!(triple(&r13), (1, 4, 6));
        assert_eq!(r13.iter().map(|r| r.measured).sum::<i64>(), 11);
    }

    #[test]
    fn table2_sums_to_p_minus_2() {
        let rows = table2(7).unwrap();
        assert_eq!(rows.len(), 6);
        assert_eq!(rows.iter().map(|r| r.measured).sum::<i64>(), 5);
    }

    #[test]
    fn sieve_complement() {
        let s = squarefree_enum(2000.0).unwrap();
        let zero = s.members.iter().filter(|&&d| d % 7 == 0).count();
        let c = sieve_check(7, &[1, 2, 3, 4, 5, 6], 2000.0).unwrap();
        assert_eq!(c.measured, s.len() - zero);
        assert!(sieve_check(7, &[0], 2000.0).is_err());
        assert!(sieve_check(11, &[1], 13.0).is_ok());
    }
}
