use twistlab_core::arith::primes_upto;
use twistlab_core::density::TestFunction;
use twistlab_core::family::build_fd;
use twistlab_core::ffcount::{genus2_a1, genus2_a1a2};
use twistlab_core::stats::squarefree_enum;

/// Direct double loop over (d, p) using only the point-count oracle.
pub fn oracle_sums(x: f64, sigma: f64) -> (f64, f64) {
    let tf = TestFunction::new(sigma).unwrap();
    let lx = x.ln();
    let ds = squarefree_enum(x).unwrap().members;
    let (mut s1, mut s2) = (0.0, 0.0);
    let p1 = (x.powf(sigma) + 1e-9).floor() as u64;
    let p2 = (x.powf(sigma / 2.0) + 1e-9).floor() as u64;
    for p in primes_upto(p1).into_iter().filter(|&p| p >= 5) {
        let lp = (p as f64).ln();
        for &d in &ds {
            if d % p == 0 || (d + 3) % p == 0 {
                continue;
            }
            let f = build_fd(d as i64).unwrap().reduce_mod(p).unwrap();
            let a1 = genus2_a1(&f).unwrap();
            s1 += -(a1 as f64) * lp / p as f64 * tf.phihat(lp / lx);
            if p <= p2 {
                let (a1, a2) = genus2_a1a2(&f).unwrap();
                s2 += (a1 * a1 - a2) as f64 * lp / (p * p) as f64 * tf.phihat(2.0 * lp / lx);
            }
        }
    }
    let w = 2.0 / (ds.len() as f64 * lx);
    (w * s1, w * s2)
}

