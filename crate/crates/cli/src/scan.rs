//! Characteristic rank against the conjectured formula, with an optional
//! on-disk cache keyed by `(k, n, engine version)`.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use ogc_core::presentation::{binary_t, charrank, conjecture_value};

use crate::args::Span;
use crate::commands::{grid, par_map};
use crate::error::CliResult;
use crate::Report;

pub const ENGINE_VERSION: &str = concat!("ogc ", env!("CARGO_PKG_VERSION"));

/// The known exceptions with their values.
pub const EXCEPTIONS: [(usize, usize, usize); 3] = [(5, 10, 10), (5, 11, 13), (6, 12, 13)];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Match,
    /// A listed exception with its listed value.
    Exception,
    /// `n < 2k`: governed by `crk(k, n) = crk(n - k, n)` rather than the formula.
    Dual,
    /// Outside `5 <= k <= 2^(t-1) < n`.
    Outside,
    Mismatch,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Match => "match",
            Status::Exception => "exception",
            Status::Dual => "dual",
            Status::Outside => "outside",
            Status::Mismatch => "MISMATCH",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Row {
    pub k: usize,
    pub n: usize,
    pub charrank: usize,
    pub conjecture: Option<usize>,
    pub status: Status,
    /// At `n = 2^t` with `5 <= k <= 2^t - 5`: whether `charrank <= 2^t - 2`.
    pub bound_holds: Option<bool>,
}

pub fn cache_key(k: usize, n: usize) -> String {
    let mut h = Sha256::new();
    h.update(format!("charrank|{ENGINE_VERSION}|{k}|{n}"));
    hex::encode(h.finalize())
}

fn cache_path(dir: &Path, k: usize, n: usize) -> PathBuf {
    dir.join(format!("{}.json", cache_key(k, n)))
}

fn cached(dir: &Path, k: usize, n: usize) -> Option<usize> {
    let s = fs::read_to_string(cache_path(dir, k, n)).ok()?;
    let v: Value = serde_json::from_str(&s).ok()?;
    (v["k"] == k && v["n"] == n && v["engine"] == ENGINE_VERSION).then(|| v["charrank"].as_u64())?.map(|c| c as usize)
}

fn store(dir: &Path, k: usize, n: usize, c: usize) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let path = cache_path(dir, k, n);
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    let body = json!({"k": k, "n": n, "engine": ENGINE_VERSION, "charrank": c});
    fs::write(&tmp, serde_json::to_string(&body).expect("serializable"))?;
    fs::rename(tmp, path)
}

/// Charrank through the cache in `dir`, if any.
pub fn charrank_cached(dir: Option<&Path>, k: usize, n: usize) -> CliResult<usize> {
    if let Some(c) = dir.and_then(|d| cached(d, k, n)) {
        return Ok(c);
    }
    let c = charrank(k, n)?;
    if let Some(d) = dir {
        store(d, k, n, c)?;
    }
    Ok(c)
}

/// `dual` is `crk(n - k, n)` when `n < 2k`; it must equal `c`.
pub fn classify(k: usize, n: usize, c: usize, dual: Option<usize>) -> Row {
    let t = binary_t(n);
    let conjecture = conjecture_value(k, n, t).ok();
    let status = if let Some(&(_, _, v)) = EXCEPTIONS.iter().find(|e| e.0 == k && e.1 == n) {
        if c == v {
            Status::Exception
        } else {
            Status::Mismatch
        }
    } else if n < 2 * k {
        if dual.is_some_and(|d| d != c) {
            Status::Mismatch
        } else {
            Status::Dual
        }
    } else {
        match conjecture {
            None => Status::Outside,
            Some(v) if v == c => Status::Match,
            Some(_) => Status::Mismatch,
        }
    };
    let bound_holds = (n.is_power_of_two() && k >= 5 && k + 5 <= n).then(|| c + 2 <= n);
    Row { k, n, charrank: c, conjecture, status, bound_holds }
}

pub fn scan_rows(k: Span, n: Span, jobs: usize, cache: Option<&Path>) -> CliResult<Vec<Row>> {
    let cases = grid(k, n)?;
    par_map(jobs, cases, |(k, n)| {
        let c = charrank_cached(cache, k, n)?;
        let dual = if n < 2 * k && n - k >= 2 { Some(charrank_cached(cache, n - k, n)?) } else { None };
        Ok(classify(k, n, c, dual))
    })
}

pub fn row_ok(r: &Row) -> bool {
    r.status != Status::Mismatch && r.bound_holds != Some(false)
}

pub fn run(k: Span, n: Span, jobs: usize) -> CliResult<Report> {
    let cache = std::env::var_os("OGC_CACHE_DIR").map(PathBuf::from);
    let rows = scan_rows(k, n, jobs, cache.as_deref())?;
    let mut text = String::from("k n charrank conjecture status bound\n");
    let mut out = Vec::new();
    for r in &rows {
        let conj = r.conjecture.map_or("-".to_string(), |v| v.to_string());
        let bound = match r.bound_holds {
            None => "-",
            Some(true) => "ok",
            Some(false) => "VIOLATED",
        };
        text.push_str(&format!("{} {} {} {conj} {} {bound}\n", r.k, r.n, r.charrank, r.status.name()));
        out.push(json!({
            "k": r.k, "n": r.n, "charrank": r.charrank, "conjecture": r.conjecture,
            "status": r.status.name(), "bound_holds": r.bound_holds,
        }));
    }
    let passed = rows.iter().all(row_ok);
    Ok(Report { text, json: json!({"pass": passed, "rows": out}), passed })
}
