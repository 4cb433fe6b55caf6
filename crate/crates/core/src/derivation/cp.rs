//! The convexity constant `c_p` in
//!
//! ```text
//! |ξ+η|^p ≥ |ξ|^p + p|ξ|^{p−2}ξ·η + c_p |η|^p                        (p ≥ 2)
//! |ξ+η|^p ≥ |ξ|^p + p|ξ|^{p−2}ξ·η + c_p |η|² / (|ξ| + |η|)^{2−p}      (1 < p < 2)
//! ```
//!
//! By rotation and scaling it suffices to take `ξ = (1, 0)` and
//! `η = t(cos θ, sin θ)`; the `ξ = 0` limit contributes the value 1.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};

const T_MIN: f64 = 1e-3;
const T_MAX: f64 = 1e3;

/// Grid resolution used by [`cp`].
pub const DEFAULT_GRID: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// `p ≥ 2`
    Degenerate,
    /// `1 < p < 2`
    Singular,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvexityConstant {
    pub p: f64,
    pub c_p: f64,
    pub regime: Regime,
}

/// Ratio at `ξ = (1,0)`, `η = t(cos θ, sin θ)`.
fn ratio(p: f64, t: f64, theta: f64) -> f64 {
    let c = theta.cos();
    // |ξ+η|^p − 1 computed without cancellation for small t
    let z = t * (2.0 * c + t);
    let lift = ((p / 2.0) * z.ln_1p()).exp_m1();
    let num = lift - p * t * c;
    if p >= 2.0 {
        num / t.powf(p)
    } else {
        num * (1.0 + t).powf(2.0 - p) / (t * t)
    }
}

/// Compass search on `(ln t, θ)` from a starting point.
fn refine(p: f64, mut lt: f64, mut th: f64) -> f64 {
    let (lt_lo, lt_hi) = (T_MIN.ln() - 4.0, T_MAX.ln() + 4.0);
    let eval = |lt: f64, th: f64| ratio(p, lt.exp(), th);
    let mut best = eval(lt, th);
    let mut step = 0.05;
    while step > 1e-12 {
        let mut moved = false;
        for (dl, dt) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
            let (nl, nt) = ((lt + dl).clamp(lt_lo, lt_hi), (th + dt).clamp(0.0, std::f64::consts::PI));
            let v = eval(nl, nt);
            if v < best {
                best = v;
                lt = nl;
                th = nt;
                moved = true;
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    best
}

/// Grid plus local-search minimisation of the convexity ratio.
pub fn estimate_cp(p: f64, grid: usize) -> Result<ConvexityConstant> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::InvalidExponent(p));
    }
    if grid < 100 {
        return Err(Error::Config(format!("grid resolution must be at least 100, got {grid}")));
    }
    let regime = if p >= 2.0 { Regime::Degenerate } else { Regime::Singular };
    let (l0, l1) = (T_MIN.ln(), T_MAX.ln());
    let mut candidates: Vec<(f64, f64, f64)> = Vec::with_capacity(grid * grid);
    for i in 0..grid {
        let lt = l0 + (l1 - l0) * i as f64 / (grid - 1) as f64;
        for j in 0..grid {
            let th = std::f64::consts::PI * j as f64 / (grid - 1) as f64;
            candidates.push((ratio(p, lt.exp(), th), lt, th));
        }
    }
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut c = 1.0f64;
    for &(v, lt, th) in candidates.iter().take(5) {
        c = c.min(v).min(refine(p, lt, th));
    }
    Ok(ConvexityConstant { p, c_p: c, regime })
}

fn global() -> &'static Mutex<CpCache> {
    static CACHE: OnceLock<Mutex<CpCache>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(CpCache::default()))
}

/// `c_p` at the default grid, computed once per process and exponent.
pub fn cp(p: f64) -> Result<f64> {
    if let Some(c) = global().lock().expect("c_p cache poisoned").get(p) {
        return Ok(c);
    }
    let c = estimate_cp(p, DEFAULT_GRID)?.c_p;
    global().lock().expect("c_p cache poisoned").insert(p, c);
    Ok(c)
}

/// `p → c_p` table stored as `p = c_p` lines; `#` starts a comment.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CpCache {
    entries: BTreeMap<u64, (f64, f64)>,
}

impl CpCache {
    pub fn get(&self, p: f64) -> Option<f64> {
        self.entries.get(&p.to_bits()).map(|e| e.1)
    }

    pub fn insert(&mut self, p: f64, c: f64) {
        self.entries.insert(p.to_bits(), (p, c));
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries ordered by `p`.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let mut v: Vec<_> = self.entries.values().copied().collect();
        v.sort_by(|a, b| a.0.total_cmp(&b.0));
        v.into_iter()
    }

    pub fn load(path: &Path) -> Result<Self> {
        std::fs::read_to_string(path)?.parse()
    }

    /// Writes the table atomically (temp file in the same directory, then rename).
    pub fn save(&self, path: &Path) -> Result<()> {
        let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        write!(tmp, "{self}")?;
        tmp.persist(path).map_err(|e| Error::Io(e.error))?;
        Ok(())
    }
}

impl fmt::Display for CpCache {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (p, c) in self.iter() {
            writeln!(f, "{p:?} = {c:?}")?;
        }
        Ok(())
    }
}

impl FromStr for CpCache {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = CpCache::default();
        for (lineno, line) in s.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = || Error::Config(format!("c_p cache line {}: expected 'p = c_p'", lineno + 1));
            let (k, v) = line.split_once('=').ok_or_else(bad)?;
            let p: f64 = k.trim().parse().map_err(|_| bad())?;
            let c: f64 = v.trim().parse().map_err(|_| bad())?;
            out.insert(p, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c2_is_one() {
        let c = estimate_cp(2.0, 100).unwrap();
        assert!((c.c_p - 1.0).abs() < 1e-9, "{}", c.c_p);
        assert_eq!(c.regime, Regime::Degenerate);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(estimate_cp(1.0, 200), Err(Error::InvalidExponent(_))));
        assert!(estimate_cp(3.0, 50).is_err());
    }

    #[test]
    fn ratio_matches_direct_formula() {
        for &(p, t, th) in &[(3.0, 0.7, 2.0), (1.5, 2.0, 0.3), (4.0, 0.05, 1.0)] {
            let (c, s) = (f64::cos(th), f64::sin(th));
            let sum = ((1.0 + t * c).powi(2) + (t * s).powi(2)).sqrt();
            let num = sum.powf(p) - 1.0 - p * t * c;
            let direct = if p >= 2.0 { num / t.powf(p) } else { num * (1.0 + t).powf(2.0 - p) / (t * t) };
            assert!((ratio(p, t, th) - direct).abs() < 1e-10 * direct.abs().max(1.0));
        }
    }

    #[test]
    fn cache_round_trip() {
        let mut c = CpCache::default();
        c.insert(1.5, 0.123456789);
        c.insert(2.0, 1.0);
        let text = c.to_string();
        assert_eq!(text, "1.5 = 0.123456789\n2.0 = 1.0\n");
        let back: CpCache = format!("# pinned\n{text}\n").parse().unwrap();
        assert_eq!(back, c);
        assert!("2.0 1.0".parse::<CpCache>().is_err());

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cp.txt");
        c.save(&path).unwrap();
        assert_eq!(CpCache::load(&path).unwrap(), c);
    }
}
