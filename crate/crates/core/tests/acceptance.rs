//! One PASS/FAIL line per acceptance criterion. Criteria listed in `KNOWN_UNATTAINABLE`
//! are computed and reported like the rest; they do not fail the process (see the ledger).

mod common;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use twistlab_core::arith::{is_squarefree, primes_upto};
use twistlab_core::conductor::{build_family_picture, exponent_at_prime, tame_exponent};
use twistlab_core::density::{
    asymptotic_bound, prime_sum_2mod3, rs_decay_checks, s1_sum_with, s2_sum_with, SumPath,
    TestFunction, RS_DECAY_BAND,
};
use twistlab_core::family::{
    fd_disc_identity, fd_integral_disc_identity, verify_h36, verify_quadratic_factorization,
    verify_two_cubic_factorization,
};
use twistlab_core::frobdata::{euler_factor_good, euler_factor_oracle, infer_twist_kernel};
use twistlab_core::stats::{sieve_check, table1, table2, Normalization};
use twistlab_core::verify::{factorization_check, typeb_count_identity, TABLE2_BOUND};

const KNOWN_UNATTAINABLE: [u32; 2] = [8, 9];

#[derive(PartialEq, Eq)]
enum Verdict {
    Pass,
    Fail,
    Unverifiable,
    Info,
}

struct Report {
    unexpected: Vec<u32>,
}

impl Report {
    fn line(&mut self, n: u32, v: Verdict, msg: String) {
        let tag = match v {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Unverifiable => "UNVERIFIABLE",
            Verdict::Info => "INFO",
        };
        println!("criterion {n:>2}: {tag} {msg}");
        if v == Verdict::Fail && !KNOWN_UNATTAINABLE.contains(&n) {
            self.unexpected.push(n);
        }
    }

    fn check(&mut self, n: u32, ok: bool, msg: String) {
        self.line(n, if ok { Verdict::Pass } else { Verdict::Fail }, msg);
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn primes_from5(pmax: u64) -> Vec<u64> {
    primes_upto(pmax).into_iter().filter(|&p| p >= 5).collect()
}

fn family(dmax: i64) -> Vec<i64> {
    (1..=dmax).filter(|&d| d != 3 && is_squarefree(d)).collect()
}

fn good(d: i64, p: u64) -> bool {
    d % p as i64 != 0 && (d + 3) % p as i64 != 0
}

fn criterion1(r: &mut Report) {
    let (bad, t) = timed(|| {
        primes_from5(499)
            .into_iter()
            .filter(|&p| table1(p).unwrap().iter().any(|row| row.measured != row.predicted))
            .collect::<Vec<_>>()
    });
    r.check(1, bad.is_empty() && t < Duration::from_secs(5), format!("table 1 exact for 5 <= p <= 499, mismatches {bad:?}, {t:.2?}"));
}

/// Mismatch count of fast against oracle over one d.
fn euler_mismatches(d: i64, primes: &[u64]) -> usize {
    let k = infer_twist_kernel(d).unwrap();
    primes
        .iter()
        .filter(|&&p| good(d, p))
        .filter(|&&p| {
            let f = euler_factor_good(d, p, &k).unwrap();
            let o = euler_factor_oracle(d, p).unwrap();
            (f.a1, f.a2) != (o.a1, o.a2)
        })
        .count()
}

fn criterion2(r: &mut Report) {
    let ds = family(50);
    let primes = primes_from5(199);
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        timed(|| pool.install(|| ds.par_iter().map(|&d| euler_mismatches(d, &primes)).sum::<usize>()))
    };
    let (bad, t1) = run(1);
    r.check(2, bad == 0 && t1 < Duration::from_secs(120), format!("fast == oracle for d <= 50, p <= 199: {bad} mismatches, single thread {t1:.2?}"));
    let cores = std::thread::available_parallelism().map_or(1, |n| n.get());
    if cores < 4 {
        r.line(2, Verdict::Unverifiable, format!("speedup on 4 workers: only {cores} core(s) available"));
    } else {
        let (_, t4) = run(4);
        let s = t1.as_secs_f64() / t4.as_secs_f64();
        r.check(2, s >= 3.0, format!("speedup on 4 workers {s:.2}x"));
    }
}

fn criterion3(r: &mut Report) {
    let (mut nonzero, mut n662, mut bad662) = (0, 0, 0);
    for d in family(50) {
        let k = infer_twist_kernel(d).unwrap();
        for p in primes_from5(199).into_iter().filter(|&p| good(d, p)) {
            let e = euler_factor_good(d, p, &k).unwrap();
            if p % 3 == 2 && e.a1 != 0 {
                nonzero += 1;
            }
            if (e.profile.fl, e.profile.fk, e.profile.fm) == (6, 6, 2) {
                n662 += 1;
                let o = euler_factor_oracle(d, p).unwrap();
                if (o.a1, o.a2) != (0, -(p as i64)) {
                    bad662 += 1;
                }
            }
        }
    }
    r.check(
        3,
        nonzero == 0 && bad662 == 0 && n662 > 0,
        format!("a1 = 0 at p = 2 mod 3 ({nonzero} exceptions); I(p) = (6,6,2) gives 1 - pt^2 + p^2t^4 in {}/{n662} cases", n662 - bad662),
    );
}

fn criterion4(r: &mut Report) {
    let (worst, t) = timed(|| {
        primes_from5(199)
            .into_iter()
            .flat_map(|p| table2(p).unwrap())
            .map(|row| row.deviation)
            .fold(0.0f64, f64::max)
    });
    r.check(4, worst <= TABLE2_BOUND && t < Duration::from_secs(30), format!("table 2 max deviation {worst:.4} (bound {TABLE2_BOUND}), {t:.2?}"));
}

fn criterion5(r: &mut Report) {
    let ((pairs, bad), t) = timed(|| {
        let (mut pairs, mut bad) = (0, 0);
        for d in family(10_000) {
            for (p, _) in twistlab_core::arith::factorize(d as i128 * (d as i128 + 3)) {
                if p < 5 {
                    continue;
                }
                let (pic, act) = build_family_picture(d, p).unwrap();
                pairs += 1;
                if tame_exponent(&pic, &act, 2).unwrap().n_tame != exponent_at_prime(d, p).unwrap() as i64 {
                    bad += 1;
                }
            }
        }
        (pairs, bad)
    });
    let spots = [(5, 5, 2), (2, 5, 4), (15622, 5, 0)]
        .iter()
        .all(|&(d, p, e)| exponent_at_prime(d, p).unwrap() == e);
    r.check(5, bad == 0 && spots && t < Duration::from_secs(30), format!("rule == tame formula on {pairs} (d,p) pairs, {bad} mismatches, spot values ok = {spots}, {t:.2?}"));
}

fn criterion6(r: &mut Report) {
    let (ok, t) = timed(|| {
        let disc = (-200i64..=200)
            .filter(|d| ![0, 3, -3].contains(d))
            .all(|d| fd_disc_identity(d).unwrap() && fd_integral_disc_identity(d).unwrap());
        let typeb = family(30).into_iter().all(|d| {
            primes_from5(199)
                .into_iter()
                .filter(|&p| good(d, p) && (d + 1) % p as i64 != 0)
                .all(|p| typeb_count_identity(d, p).unwrap())
        });
        let mut rng = ChaCha8Rng::seed_from_u64(0x7e57);
        let primes = primes_from5(499);
        let (mut applied, mut fact) = (0, true);
        while applied < 100 {
            let d: i64 = rng.gen_range(-500..=500);
            let p = primes[rng.gen_range(0..primes.len())];
            if [0, 3, -3].contains(&d) || !good(d, p) {
                continue;
            }
            let f = if rng.gen_bool(0.5) { verify_quadratic_factorization } else { verify_two_cubic_factorization };
            if let Some(b) = factorization_check(f, d, p).unwrap() {
                applied += 1;
                fact &= b;
            }
        }
        (disc, typeb, verify_h36(), fact)
    });
    let (disc, typeb, h36, fact) = ok;
    r.check(
        6,
        disc && typeb && h36 && fact && t < Duration::from_secs(60),
        format!("disc {disc}, type B counts {typeb}, H_-36 {h36}, 100 random factorizations {fact}, {t:.2?}"),
    );
}

fn criterion7(r: &mut Report) {
    let (worst, t) = timed(|| {
        let mut worst = 0.0f64;
        for &(x, sigma) in &[(200.0, 0.5), (200.0, 1.0), (300.0, 1.0), (300.0, 0.6)] {
            let (o1, o2) = common::oracle_sums(x, sigma);
            let s1 = s1_sum_with(x, sigma, SumPath::ResidueClass).unwrap().value;
            let s2 = s2_sum_with(x, sigma, SumPath::ResidueClass).unwrap().value;
            for (a, b) in [(s1, o1), (s2, o2)] {
                worst = worst.max((a - b).abs() / a.abs().max(b.abs()).max(1e-300));
            }
        }
        worst
    });
    r.check(7, worst <= 1e-12 && t < Duration::from_secs(60), format!("S1, S2 vs oracle double loop, max relative error {worst:.2e}, {t:.2?}"));
}

fn criterion8(r: &mut Report) {
    let band = 0.15;
    let phi0 = TestFunction::new(1.0).unwrap().phi0();
    let (vals, t) = timed(|| {
        [1e4, 1e5, 1e6]
            .iter()
            .map(|&x| s2_sum_with(x, 1.0, SumPath::ResidueClass).unwrap().value / phi0)
            .collect::<Vec<_>>()
    });
    let dist: Vec<f64> = vals.iter().map(|v| (v + 0.25).abs()).collect();
    let monotone = dist.windows(2).all(|w| w[1] < w[0]);
    let last = *dist.last().unwrap();
    r.check(
        8,
        monotone && last <= band && t < Duration::from_secs(1200),
        format!("S2/phi(0) at X = 1e4, 1e5, 1e6: {vals:.4?}, monotone toward -1/4 = {monotone}, final |dev| {last:.4} vs band {band}, {t:.2?}"),
    );
}

fn criterion9(r: &mut Report) {
    let ps = prime_sum_2mod3(1e6, 1.0).unwrap();
    let rel = (ps - 1.0 / 16.0).abs() * 16.0;
    let (rs, t) = timed(|| rs_decay_checks(1e6, 1.0).unwrap());
    let rs_ok = rs.max_abs() <= RS_DECAY_BAND && rs.contrast_2mod3 != 0.0;
    r.check(
        9,
        rel <= 0.15 && rs_ok,
        format!(
            "prime_sum_2mod3(1e6, 1) = {ps:.5}, {:.1}% from 1/16; rs sums [{:.2e}, {:.2e}, {:.2e}, {:.2e}] within {RS_DECAY_BAND} = {rs_ok}, contrast {:.4}, {t:.2?}",
            100.0 * rel, rs.e0_e1, rs.e0_e2, rs.e0_c1, rs.e0_sq_minus_2p, rs.contrast_2mod3
        ),
    );
}

fn criterion10(r: &mut Report) {
    let exact = asymptotic_bound(1.0 / 3.0).unwrap() == 18.25;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let worst = (0..100)
        .map(|_| {
            let s: f64 = rng.gen_range(1e-3..10.0);
            (asymptotic_bound(s).unwrap() - 6.0 / s - 0.25).abs()
        })
        .fold(0.0f64, f64::max);
    r.check(10, exact && worst <= 1e-12, format!("asymptotic_bound(1/3) == 18.25: {exact}; max |bound - 6/sigma - 1/4| {worst:.1e}"));
}

fn criterion11(r: &mut Report) {
    let parts: Vec<String> = [5u64, 7, 11]
        .iter()
        .map(|&p| {
            let c = sieve_check(p, &[1], 1e6).unwrap();
            let which = match c.better() {
                Normalization::Minus => "1/(1-p^-2)",
                Normalization::Plus => "1/(1+p^-2)",
            };
            format!("p={p}: measured {} dev(-) {:.1} dev(+) {:.1} -> {which}", c.measured, c.deviation_minus, c.deviation_plus)
        })
        .collect();
    r.line(11, Verdict::Info, parts.join("; "));
}

fn main() {
    let mut r = Report { unexpected: Vec::new() };
    criterion1(&mut r);
    criterion2(&mut r);
    criterion3(&mut r);
    criterion4(&mut r);
    criterion5(&mut r);
    criterion6(&mut r);
    criterion7(&mut r);
    criterion8(&mut r);
    criterion9(&mut r);
    criterion10(&mut r);
    criterion11(&mut r);
    if r.unexpected.is_empty() {
        println!("acceptance: no failures outside the documented unattainable set {KNOWN_UNATTAINABLE:?}");
    } else {
        println!("acceptance: unexpected failures {:?}", r.unexpected);
        std::process::exit(1);
    }
}
