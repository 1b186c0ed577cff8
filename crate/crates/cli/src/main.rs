use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Number, Value};
use twistlab_core::cache::CacheDir;
use twistlab_core::conductor::{
    conductor_bound_proof, conductor_bound_statement, conductor_known_part, exponent_at_prime,
    log_conductor_bracket,
};
use twistlab_core::density::{density_report, DensityReport};
use twistlab_core::frobdata::{
    ap_e0, euler_factor_good, euler_factor_oracle, lambda_p, lambda_p2, EulerData,
};
use twistlab_core::stats::{sieve_check, table1, table2, Normalization};
use twistlab_core::verify::{self, Check};
use twistlab_core::Error;

#[derive(Parser)]
#[command(name = "twistlab", version, about = "Arithmetic of the twist family C_d of y^2 = x^6 + 1")]
struct Cli {
    /// Cache directory (default: $TWISTLAB_CACHE, else ./.twistlab-cache)
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Euler factor data of C_d at a good prime
    Euler {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long)]
        p: u64,
        /// Force brute-force point counting
        #[arg(long)]
        oracle: bool,
    },
    /// Run an invariant suite; exit 0 iff every check passes
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Conductor exponents and log-conductor bracket of C_d
    Conductor {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
    },
    /// One-level density report
    Density(DensityArgs),
    /// Average-rank bound bracket
    Rankbound(DensityArgs),
    /// Squarefree counts in residue classes against both sieve normalizations
    Sieve {
        #[arg(long)]
        p: u64,
        /// Residues mod p, comma separated
        #[arg(long, value_delimiter = ',', default_value = "1")]
        a: Vec<u64>,
        #[arg(long, value_parser = parse_real)]
        xmax: f64,
    },
}

#[derive(Subcommand)]
enum Suite {
    Tables {
        #[arg(long, default_value_t = 499)]
        pmax: u64,
        /// Also write the per-class rows as CSV
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Euler {
        #[arg(long, default_value_t = 50)]
        dmax: u64,
        #[arg(long, default_value_t = 199)]
        pmax: u64,
    },
    Conductor {
        #[arg(long, default_value_t = 10_000)]
        dmax: u64,
    },
    Identities,
}

#[derive(Args)]
struct DensityArgs {
    #[arg(long, value_parser = parse_real)]
    xmax: f64,
    #[arg(long, value_parser = parse_real)]
    sigma: f64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Accepts forms like 1e5 and 0.3.
fn parse_real(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("not a number: {s}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("not finite: {s}"))
    }
}

enum Fail {
    Usage(String),
    Check(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconsistent(_) | Error::InferenceAmbiguous { .. } => Fail::Check(e.to_string()),
            _ => Fail::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Fail {
    fn from(e: std::io::Error) -> Self {
        Fail::Usage(e.to_string())
    }
}

/// 17 significant digits.
fn real(x: f64) -> Value {
    if x.is_finite() {
        Value::Number(Number::from_str(&format!("{x:.16e}")).expect("valid float literal"))
    } else {
        Value::Null
    }
}

fn real_str(x: f64) -> String {
    format!("{x:.16e}")
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Fail> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Fail::Usage(format!("{}: {e}", p.display()))),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn euler_json(d: i64, p: u64, e: &EulerData) -> Value {
    json!({
        "d": d,
        "p": p,
        "I": [e.profile.fl, e.profile.fk, e.profile.fm],
        "ap_E0": ap_e0(p),
        "a1": e.a1,
        "a2": e.a2,
        "lambda_p": real(lambda_p(e, p)),
        "lambda_p2": real(lambda_p2(e, p)),
        "source": e.source.as_str(),
    })
}

fn print_checks(checks: &[Check]) -> Result<bool, Fail> {
    let mut s = String::from("check,result,detail\n");
    for c in checks {
        let detail = c.detail.replace(',', ";");
        s.push_str(&format!("{},{},{}\n", c.name, if c.passed { "PASS" } else { "FAIL" }, detail));
    }
    emit(None, &s)?;
    Ok(verify::all_passed(checks))
}

fn table_rows_csv(pmax: u64) -> Result<String, Fail> {
    let mut s = String::from("p,class,measured,predicted,deviation\n");
    for p in twistlab_core::arith::primes_upto(pmax).into_iter().filter(|&p| p >= 5) {
        for r in table1(p)? {
            s.push_str(&format!("{},T1:{},{},{},{}\n", p, r.class_label(), r.measured, r.predicted, r.deviation));
        }
        if p <= 199 {
            for r in table2(p)? {
                s.push_str(&format!(
                    "{},T2:{},{},{},{}\n",
                    p,
                    r.class_label(),
                    r.measured,
                    real_str(r.predicted),
                    real_str(r.deviation)
                ));
            }
        }
    }
    Ok(s)
}

fn density_json(r: &DensityReport) -> Value {
    json!({
        "X": real(r.x),
        "sigma": real(r.sigma),
        "S1": real(r.s1),
        "S2": real(r.s2),
        "meanlogN_low": real(r.mean_log_conductor_low),
        "meanlogN_high": real(r.mean_log_conductor_high),
        "bound_low": real(r.bound_low),
        "bound_high": real(r.bound_high),
        "skipped_budget": real(r.skipped_budget),
        "phi0": real(r.phi0),
        "S2_over_phi0": real(r.s2_over_phi0()),
        "out_of_regime": r.out_of_regime,
    })
}

fn density_csv(r: &DensityReport) -> String {
    format!(
        "X,sigma,S1,S2,bound_high\n{},{},{},{},{}\n",
        real_str(r.x),
        real_str(r.sigma),
        real_str(r.s1),
        real_str(r.s2),
        real_str(r.bound_high)
    )
}

fn run(cli: Cli) -> Result<bool, Fail> {
    let cache = CacheDir::resolve(cli.cache_dir.as_deref());
    match cli.cmd {
        Cmd::Euler { d, p, oracle } => {
            let e = if oracle {
                euler_factor_oracle(d, p)?
            } else {
                twistlab_core::frobdata::check_good(d, p)?;
                let k = cache.twist_kernel(d)?;
                euler_factor_good(d, p, &k)?
            };
            emit(None, &pretty(&euler_json(d, p, &e)))?;
            Ok(true)
        }
        Cmd::Verify { suite } => {
            let checks = match suite {
                Suite::Tables { pmax, out } => {
                    if let Some(path) = out {
                        emit(Some(&path), &table_rows_csv(pmax)?)?;
                    }
                    verify::tables(pmax)?
                }
                Suite::Euler { dmax, pmax } => verify::euler(dmax, pmax)?,
                Suite::Conductor { dmax } => verify::conductor(dmax)?,
                Suite::Identities => verify::identities()?,
            };
            print_checks(&checks)
        }
        Cmd::Conductor { d } => {
            let known = conductor_known_part(d)?;
            let mut exps = Map::new();
            let bad = twistlab_core::arith::factorize(d as i128 * (d as i128 + 3));
            for (p, _) in bad.into_iter().filter(|&(p, _)| p >= 5) {
                exps.insert(p.to_string(), json!(exponent_at_prime(d, p)?));
            }
            let (lo, hi) = log_conductor_bracket(d)?;
            let v = json!({
                "d": d,
                "exponents": exps,
                "known_part": known.value().to_string(),
                "log_conductor_low": real(lo),
                "log_conductor_high": real(hi),
                "bound_statement": conductor_bound_statement(d).to_string(),
                "bound_proof": conductor_bound_proof(d).to_string(),
            });
            emit(None, &pretty(&v))?;
            Ok(true)
        }
        Cmd::Density(a) => {
            let r = density_report(a.xmax, a.sigma)?;
            match (a.format, a.out.as_deref()) {
                (Format::Csv, out) => emit(out, &density_csv(&r))?,
                (Format::Json, None) => emit(None, &pretty(&density_json(&r)))?,
                (Format::Json, Some(path)) => {
                    emit(Some(path), &pretty(&density_json(&r)))?;
                    emit(Some(&path.with_extension("csv")), &density_csv(&r))?;
                }
            }
            Ok(true)
        }
        Cmd::Rankbound(a) => {
            let r = density_report(a.xmax, a.sigma)?;
            let v = json!({
                "X": real(r.x),
                "sigma": real(r.sigma),
                "bound_low": real(r.bound_low),
                "bound_high": real(r.bound_high),
                "skipped_budget": real(r.skipped_budget),
                "asymptotic_bound": real(twistlab_core::density::asymptotic_bound(r.sigma)?),
                "out_of_regime": r.out_of_regime,
            });
            let text = match a.format {
                Format::Json => pretty(&v),
                Format::Csv => format!(
                    "X,sigma,bound_low,bound_high\n{},{},{},{}\n",
                    real_str(r.x),
                    real_str(r.sigma),
                    real_str(r.bound_low),
                    real_str(r.bound_high)
                ),
            };
            emit(a.out.as_deref(), &text)?;
            Ok(r.bound_low <= r.bound_high)
        }
        Cmd::Sieve { p, a, xmax } => {
            let s = sieve_check(p, &a, xmax)?;
            let v = json!({
                "p": s.p,
                "A": s.a,
                "X": real(s.x),
                "set_size": s.set_size,
                "measured": s.measured,
                "predicted_minus": real(s.predicted_minus),
                "predicted_plus": real(s.predicted_plus),
                "deviation_minus": real(s.deviation_minus),
                "deviation_plus": real(s.deviation_plus),
                "constant": real(s.constant),
                "better": match s.better() {
                    Normalization::Minus => "1/(1-p^-2)",
                    Normalization::Plus => "1/(1+p^-2)",
                },
            });
            emit(None, &pretty(&v))?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Fail::Check(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Fail::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
