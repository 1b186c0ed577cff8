//! Plain CSV caches: `p,ap` for elliptic traces, `p,a1,a2` for genus-2 Euler data,
//! `d,m,primes` for twist kernels. Files are replaced atomically.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::frobdata::{infer_twist_kernel, TwistKernel};

pub const CACHE_ENV: &str = "TWISTLAB_CACHE";
pub const DEFAULT_CACHE_DIR: &str = ".twistlab-cache";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheDir(PathBuf);

impl CacheDir {
    /// Flag, then $TWISTLAB_CACHE, then ./.twistlab-cache.
    pub fn resolve(flag: Option<&Path>) -> Self {
        let p = match flag {
            Some(p) => p.to_path_buf(),
            None => std::env::var_os(CACHE_ENV)
                .filter(|v| !v.is_empty())
                .map(PathBuf::from)
                .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR)),
        };
        CacheDir(p)
    }

    pub fn path(&self) -> &Path {
        &self.0
    }

    pub fn ap_file(&self, name: &str) -> PathBuf {
        self.0.join(format!("ap_{name}.csv"))
    }

    pub fn euler_file(&self, d: i64) -> PathBuf {
        self.0.join(format!("euler_d{d}.csv"))
    }

    pub fn kernel_file(&self) -> PathBuf {
        self.0.join("kernels.csv")
    }

    /// Kernel for d, read from the cache or inferred and recorded.
    pub fn twist_kernel(&self, d: i64) -> Result<TwistKernel> {
        let path = self.kernel_file();
        let mut rows: Vec<KernelRow> = if path.exists() { read_csv(&path, KERNEL_HEADER)? } else { Vec::new() };
        if let Some(r) = rows.iter().find(|r| r.d == d) {
            return Ok(TwistKernel {
                d,
                m: r.m,
                verified_primes: r.primes.clone(),
            });
        }
        let k = infer_twist_kernel(d)?;
        rows.push(KernelRow {
            d,
            m: k.m,
            primes: k.verified_primes.clone(),
        });
        rows.sort_by_key(|r| r.d);
        write_csv(&path, KERNEL_HEADER, &rows)?;
        Ok(k)
    }
}

pub const AP_HEADER: &str = "p,ap";
pub const EULER_HEADER: &str = "p,a1,a2";
const KERNEL_HEADER: &str = "d,m,primes";

/// One CSV record.
pub trait CsvRow: Sized {
    fn fields(&self) -> String;
    fn parse(cols: &[&str]) -> std::result::Result<Self, String>;
}

fn num<T: FromStr>(s: &str) -> std::result::Result<T, String> {
    s.parse().map_err(|_| format!("not an integer: {s:?}"))
}

fn arity(cols: &[&str], n: usize) -> std::result::Result<(), String> {
    if cols.len() == n {
        Ok(())
    } else {
        Err(format!("expected {n} fields, found {}", cols.len()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ApRow {
    pub p: u64,
    pub ap: i64,
}

impl CsvRow for ApRow {
    fn fields(&self) -> String {
        format!("{},{}", self.p, self.ap)
    }
    fn parse(cols: &[&str]) -> std::result::Result<Self, String> {
        arity(cols, 2)?;
        Ok(ApRow { p: num(cols[0])?, ap: num(cols[1])? })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EulerRow {
    pub p: u64,
    pub a1: i64,
    pub a2: i64,
}

impl CsvRow for EulerRow {
    fn fields(&self) -> String {
        format!("{},{},{}", self.p, self.a1, self.a2)
    }
    fn parse(cols: &[&str]) -> std::result::Result<Self, String> {
        arity(cols, 3)?;
        Ok(EulerRow { p: num(cols[0])?, a1: num(cols[1])?, a2: num(cols[2])? })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct KernelRow {
    d: i64,
    m: i64,
    primes: Vec<u64>,
}

impl CsvRow for KernelRow {
    fn fields(&self) -> String {
        let ps: Vec<String> = self.primes.iter().map(u64::to_string).collect();
        format!("{},{},{}", self.d, self.m, ps.join(" "))
    }
    fn parse(cols: &[&str]) -> std::result::Result<Self, String> {
        arity(cols, 3)?;
        let primes = cols[2]
            .split_whitespace()
            .map(num)
            .collect::<std::result::Result<_, _>>()?;
        Ok(KernelRow { d: num(cols[0])?, m: num(cols[1])?, primes })
    }
}

/// Reads a cache file; any deviation from the schema is reported with its line number.
pub fn read_csv<R: CsvRow>(path: &Path, header: &str) -> Result<Vec<R>> {
    let text = fs::read_to_string(path)?;
    let corrupt = |line: usize, msg: String| Error::CacheCorrupt {
        path: path.to_path_buf(),
        line,
        msg,
    };
    let body = text
        .strip_suffix('\n')
        .ok_or_else(|| corrupt(text.lines().count().max(1), "missing final newline".into()))?;
    let mut lines = body.split('\n').enumerate();
    match lines.next() {
        Some((_, h)) if h == header => {}
        Some((_, h)) => return Err(corrupt(1, format!("header {h:?}, expected {header:?}"))),
        None => return Err(corrupt(1, "empty file".into())),
    }
    lines
        .map(|(i, l)| {
            let cols: Vec<&str> = l.split(',').collect();
            R::parse(&cols).map_err(|m| corrupt(i + 1, m))
        })
        .collect()
}

/// Writes through a temporary file in the same directory, then renames over `path`.
pub fn write_csv<R: CsvRow>(path: &Path, header: &str, rows: &[R]) -> Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    let mut out = String::with_capacity(16 * (rows.len() + 1));
    out.push_str(header);
    out.push('\n');
    for r in rows {
        out.push_str(&r.fields());
        out.push('\n');
    }
    tmp.write_all(out.as_bytes())?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let f = dir.path().join("x.csv");
        let rows = vec![EulerRow { p: 5, a1: 0, a2: 10 }, EulerRow { p: 7, a1: -2, a2: 3 }];
        write_csv(&f, EULER_HEADER, &rows).unwrap();
        assert_eq!(fs::read_to_string(&f).unwrap(), "p,a1,a2\n5,0,10\n7,-2,3\n");
        assert_eq!(read_csv::<EulerRow>(&f, EULER_HEADER).unwrap(), rows);
        fs::write(&f, "p,a1,a2\n5,0,10\n7,x,3\n").unwrap();
        match read_csv::<EulerRow>(&f, EULER_HEADER) {
            Err(Error::CacheCorrupt { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        fs::write(&f, "p,a1,a2\n5,0,10\n\n").unwrap();
        assert!(matches!(read_csv::<EulerRow>(&f, EULER_HEADER), Err(Error::CacheCorrupt { line: 3, .. })));
    }

    #[test]
    fn kernel_cache_reuses_records() {
        let dir = tempfile::tempdir().unwrap();
        let c = CacheDir::resolve(Some(dir.path()));
        let k = c.twist_kernel(1).unwrap();
        assert_eq!(k.m, -2);
        let again = c.twist_kernel(1).unwrap();
        assert_eq!(k, again);
        let text = fs::read_to_string(c.kernel_file()).unwrap();
        assert!(text.starts_with("d,m,primes\n1,-2,"));
    }
}
