use pyo3::exceptions::{PyIOError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use twistlab_core::{conductor, density, family, ffcount, frobdata, poly, stats, verify, Error};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Io(e) => PyIOError::new_err(e.to_string()),
        Error::Inconsistent(_) | Error::InferenceAmbiguous { .. } | Error::CacheCorrupt { .. } => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

type Res<T> = PyResult<T>;

fn lift<T>(r: twistlab_core::Result<T>) -> Res<T> {
    r.map_err(to_py)
}

#[pyclass(frozen, get_all, module = "twistlab")]
struct EulerData {
    d: i64,
    p: u64,
    profile: (u32, u32, u32),
    ap_e0: i64,
    a1: i64,
    a2: i64,
    lambda_p: f64,
    lambda_p2: f64,
    source: String,
}

#[pymethods]
impl EulerData {
    /// Zeta numerator coefficients [1, a1, a2, p a1, p^2].
    fn zeta_numerator(&self) -> Vec<i64> {
        let p = self.p as i64;
        vec![1, self.a1, self.a2, p * self.a1, p * p]
    }

    fn __repr__(&self) -> String {
        format!(
            "EulerData(d={}, p={}, I={:?}, a1={}, a2={}, source={})",
            self.d, self.p, self.profile, self.a1, self.a2, self.source
        )
    }
}

#[pyclass(frozen, module = "twistlab")]
struct TestFunction(density::TestFunction);

#[pymethods]
impl TestFunction {
    #[new]
    fn new(sigma: f64) -> Res<Self> {
        Ok(TestFunction(lift(density::TestFunction::new(sigma))?))
    }

    #[getter]
    fn sigma(&self) -> f64 {
        self.0.sigma()
    }

    fn phi(&self, x: f64) -> f64 {
        self.0.phi(x)
    }

    fn phihat(&self, u: f64) -> f64 {
        self.0.phihat(u)
    }

    fn phi0(&self) -> f64 {
        self.0.phi0()
    }
}

#[pyclass(frozen, get_all, module = "twistlab")]
struct DensityReport {
    x: f64,
    sigma: f64,
    s1: f64,
    s2: f64,
    phi0: f64,
    mean_log_conductor_low: f64,
    mean_log_conductor_high: f64,
    bound_low: f64,
    bound_high: f64,
    skipped_budget: f64,
    out_of_regime: bool,
}

#[pymethods]
impl DensityReport {
    fn s2_over_phi0(&self) -> f64 {
        self.s2 / self.phi0
    }

    fn __repr__(&self) -> String {
        format!(
            "DensityReport(X={}, sigma={}, S1={}, S2={}, bound=[{}, {}])",
            self.x, self.sigma, self.s1, self.s2, self.bound_low, self.bound_high
        )
    }
}

/// Coefficients of f_d (constant term first) as exact fraction strings.
#[pyfunction]
fn build_fd(d: i64) -> Res<Vec<String>> {
    Ok(lift(family::build_fd(d))?.coeffs().iter().map(|c| c.to_string()).collect())
}

#[pyfunction]
fn build_gd(d: i64) -> Res<Vec<String>> {
    Ok(lift(family::build_gd(d))?.coeffs().iter().map(|c| c.to_string()).collect())
}

/// Point count of y^2 = f(x) over F_{p^ext}, coefficients constant term first.
#[pyfunction]
#[pyo3(signature = (coeffs, p, ext = 1))]
fn count_points(coeffs: Vec<i64>, p: u64, ext: u32) -> Res<u64> {
    let f = poly::ModPoly::from_i64(&coeffs, p);
    Ok(lift(ffcount::count_points(&f, ext))?.count)
}

#[pyfunction]
fn trace_ap(coeffs: Vec<i64>, p: u64) -> Res<i64> {
    lift(ffcount::trace_ap(&coeffs, p))
}

#[pyfunction]
fn ap_e0(p: u64) -> i64 {
    frobdata::ap_e0(p)
}

/// Squarefree m with eps(p) = (m/p) for the quadratic character of L_d/K_d.
#[pyfunction]
fn twist_kernel(d: i64) -> Res<i64> {
    Ok(lift(frobdata::infer_twist_kernel(d))?.m)
}

#[pyfunction]
#[pyo3(signature = (d, p, oracle = false))]
fn euler_factor(d: i64, p: u64, oracle: bool) -> Res<EulerData> {
    let e = if oracle {
        lift(frobdata::euler_factor_oracle(d, p))?
    } else {
        lift(frobdata::check_good(d, p))?;
        let k = lift(frobdata::infer_twist_kernel(d))?;
        lift(frobdata::euler_factor_good(d, p, &k))?
    };
    Ok(EulerData {
        d,
        p,
        profile: (e.profile.fl, e.profile.fk, e.profile.fm),
        ap_e0: frobdata::ap_e0(p),
        a1: e.a1,
        a2: e.a2,
        lambda_p: frobdata::lambda_p(&e, p),
        lambda_p2: frobdata::lambda_p2(&e, p),
        source: e.source.as_str().to_string(),
    })
}

#[pyfunction]
fn exponent_at_prime(d: i64, p: u64) -> Res<u32> {
    lift(conductor::exponent_at_prime(d, p))
}

#[pyfunction]
fn log_conductor_bracket(d: i64) -> Res<(f64, f64)> {
    lift(conductor::log_conductor_bracket(d))
}

/// Table 1 rows as (class, measured, predicted).
#[pyfunction]
fn table1(p: u64) -> Res<Vec<(String, i64, i64)>> {
    Ok(lift(stats::table1(p))?
        .into_iter()
        .map(|r| (r.class_label(), r.measured, r.predicted))
        .collect())
}

/// Table 2 rows as (class, measured, main term).
#[pyfunction]
fn table2(p: u64) -> Res<Vec<(String, i64, f64)>> {
    Ok(lift(stats::table2(p))?
        .into_iter()
        .map(|r| (r.class_label(), r.measured, r.predicted))
        .collect())
}

/// (measured, predicted with 1/(1-p^-2), predicted with 1/(1+p^-2)).
#[pyfunction]
fn sieve_check(p: u64, a: Vec<u64>, x: f64) -> Res<(usize, f64, f64)> {
    let s = lift(stats::sieve_check(p, &a, x))?;
    Ok((s.measured, s.predicted_minus, s.predicted_plus))
}

#[pyfunction]
fn s1_sum(x: f64, sigma: f64) -> Res<f64> {
    lift(density::s1_sum(x, sigma))
}

#[pyfunction]
fn s2_sum(x: f64, sigma: f64) -> Res<f64> {
    lift(density::s2_sum(x, sigma))
}

#[pyfunction]
fn prime_sum_2mod3(x: f64, sigma: f64) -> Res<f64> {
    lift(density::prime_sum_2mod3(x, sigma))
}

/// (E0*E1, E0*E2, E0*C1, a^2 - 2p over p = 1 mod 3, contrast over p = 2 mod 3).
#[pyfunction]
fn rs_decay_checks(x: f64, sigma: f64) -> Res<(f64, f64, f64, f64, f64)> {
    let r = lift(density::rs_decay_checks(x, sigma))?;
    Ok((r.e0_e1, r.e0_e2, r.e0_c1, r.e0_sq_minus_2p, r.contrast_2mod3))
}

#[pyfunction]
fn density_report(x: f64, sigma: f64) -> Res<DensityReport> {
    let r = lift(density::density_report(x, sigma))?;
    Ok(DensityReport {
        x: r.x,
        sigma: r.sigma,
        s1: r.s1,
        s2: r.s2,
        phi0: r.phi0,
        mean_log_conductor_low: r.mean_log_conductor_low,
        mean_log_conductor_high: r.mean_log_conductor_high,
        bound_low: r.bound_low,
        bound_high: r.bound_high,
        skipped_budget: r.skipped_budget,
        out_of_regime: r.out_of_regime,
    })
}

#[pyfunction]
fn rank_bound(x: f64, sigma: f64) -> Res<(f64, f64)> {
    lift(density::rank_bound(x, sigma))
}

#[pyfunction]
fn asymptotic_bound(sigma: f64) -> Res<f64> {
    lift(density::asymptotic_bound(sigma))
}

/// Runs a verification suite and returns (name, passed, detail) triples.
#[pyfunction]
#[pyo3(signature = (suite, dmax = 50, pmax = 199))]
fn run_verify(suite: &str, dmax: u64, pmax: u64) -> Res<Vec<(String, bool, String)>> {
    let checks = match suite {
        "tables" => verify::tables(pmax),
        "euler" => verify::euler(dmax, pmax),
        "conductor" => verify::conductor(dmax),
        "identities" => verify::identities(),
        other => return Err(PyValueError::new_err(format!("unknown suite {other:?}"))),
    };
    Ok(lift(checks)?.into_iter().map(|c| (c.name, c.passed, c.detail)).collect())
}

#[pymodule]
fn twistlab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<EulerData>()?;
    m.add_class::<TestFunction>()?;
    m.add_class::<DensityReport>()?;
    m.add_function(wrap_pyfunction!(build_fd, m)?)?;
    m.add_function(wrap_pyfunction!(build_gd, m)?)?;
    m.add_function(wrap_pyfunction!(count_points, m)?)?;
    m.add_function(wrap_pyfunction!(trace_ap, m)?)?;
    m.add_function(wrap_pyfunction!(ap_e0, m)?)?;
    m.add_function(wrap_pyfunction!(twist_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(euler_factor, m)?)?;
    m.add_function(wrap_pyfunction!(exponent_at_prime, m)?)?;
    m.add_function(wrap_pyfunction!(log_conductor_bracket, m)?)?;
    m.add_function(wrap_pyfunction!(table1, m)?)?;
    m.add_function(wrap_pyfunction!(table2, m)?)?;
    m.add_function(wrap_pyfunction!(sieve_check, m)?)?;
    m.add_function(wrap_pyfunction!(s1_sum, m)?)?;
    m.add_function(wrap_pyfunction!(s2_sum, m)?)?;
    m.add_function(wrap_pyfunction!(prime_sum_2mod3, m)?)?;
    m.add_function(wrap_pyfunction!(rs_decay_checks, m)?)?;
    m.add_function(wrap_pyfunction!(density_report, m)?)?;
    m.add_function(wrap_pyfunction!(rank_bound, m)?)?;
    m.add_function(wrap_pyfunction!(asymptotic_bound, m)?)?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    Ok(())
}
