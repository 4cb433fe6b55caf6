//! Registry of weighted Hardy-type inequalities with boundary terms.
//!
//! Each entry pairs a weight `a` with a positive `u` and stores the closed
//! forms of the interior potential `b` (as a signed sum of terms) and of the
//! boundary weight `β` on every face of its domain. The closed forms were
//! derived by hand from the flux `a|∇u|^{p−2}∇u`; [`crate::derivation`]
//! re-derives them numerically for cross-checking.

mod cases;

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::derivation::{derive_potentials, DerivedPotentials};
use crate::error::{Error, Result};
use crate::field::{Field, MAX_DIM};
use crate::geometry::{Domain, Face};

/// Parameters shared by all entries; each entry reads the ones it needs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CaseParams {
    pub n: usize,
    pub p: f64,
    #[serde(rename = "R")]
    pub radius: f64,
    pub alpha: f64,
    pub gamma: f64,
    pub m: f64,
    pub s: f64,
    pub t: f64,
}

impl Default for CaseParams {
    fn default() -> Self {
        CaseParams { n: 3, p: 2.0, radius: 1.0, alpha: 0.0, gamma: 0.0, m: 0.0, s: 1.0, t: 1.0 }
    }
}

impl fmt::Display for CaseParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} p={} R={} alpha={} gamma={} m={} s={} t={}",
            self.n, self.p, self.radius, self.alpha, self.gamma, self.m, self.s, self.t
        )
    }
}

/// Optional overrides layered over an entry's defaults.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ParamOverrides {
    pub n: Option<usize>,
    pub p: Option<f64>,
    pub radius: Option<f64>,
    pub alpha: Option<f64>,
    pub gamma: Option<f64>,
    pub m: Option<f64>,
    pub s: Option<f64>,
    pub t: Option<f64>,
}

impl ParamOverrides {
    pub fn apply(&self, base: CaseParams) -> CaseParams {
        CaseParams {
            n: self.n.unwrap_or(base.n),
            p: self.p.unwrap_or(base.p),
            radius: self.radius.unwrap_or(base.radius),
            alpha: self.alpha.unwrap_or(base.alpha),
            gamma: self.gamma.unwrap_or(base.gamma),
            m: self.m.unwrap_or(base.m),
            s: self.s.unwrap_or(base.s),
            t: self.t.unwrap_or(base.t),
        }
    }

    /// Fields set in `other` take precedence.
    pub fn merge(self, other: ParamOverrides) -> ParamOverrides {
        ParamOverrides {
            n: other.n.or(self.n),
            p: other.p.or(self.p),
            radius: other.radius.or(self.radius),
            alpha: other.alpha.or(self.alpha),
            gamma: other.gamma.or(self.gamma),
            m: other.m.or(self.m),
            s: other.s.or(self.s),
            t: other.t.or(self.t),
        }
    }
}

/// How an interior term arises from the supersolution condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TermKind {
    /// Part of an exact identity `−∇·(a|∇u|^{p−2}∇u) = b u^{p−1}`.
    Equality,
    /// A lower bound obtained by dropping a nonnegative surplus.
    Supersolution,
}

/// One signed piece `constant·weight` of the interior potential.
#[derive(Debug, Clone)]
pub struct InteriorTerm {
    pub label: String,
    pub constant: f64,
    pub weight: Field,
    pub kind: TermKind,
}

impl InteriorTerm {
    pub fn field(&self) -> Field {
        if self.constant == 1.0 {
            self.weight.clone()
        } else {
            self.weight.clone() * self.constant
        }
    }
}

/// Closed-form `β` on one face.
#[derive(Debug, Clone)]
pub struct BoundaryTerm {
    pub face: Face,
    pub beta: Field,
    /// `β` blows up on the face itself; the term is only finite against test
    /// functions that vanish there.
    pub singular: bool,
}

/// A factor applied to every test function of an entry so that all integrals
/// stay finite (and Monte Carlo variances bounded) near singular faces.
#[derive(Debug, Clone)]
pub struct TestWeight {
    pub field: Field,
    pub vanishes_on: Vec<Face>,
    /// `|weight| ≤ C|x|^k` near the origin.
    pub origin_order: u32,
    pub description: &'static str,
}

/// Growth exponents `s` (integrand `~ |x|^{-s}`) at the origin for bounded,
/// smooth test functions multiplied by the entry's test weight.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OriginExponents {
    /// `b|φ|^p`.
    pub interior: f64,
    /// `a|∇φ|^p`; the remainder term follows this exponent plus `p` when `u`
    /// is singular at the origin.
    pub gradient: f64,
    /// `u ~ |x|^{-e}` near the origin (0 if `u` is regular there).
    pub u_growth: f64,
}

impl OriginExponents {
    pub const REGULAR: OriginExponents = OriginExponents { interior: 0.0, gradient: 0.0, u_growth: 0.0 };

    /// Exponent for a test function growing like `|x|^{-e}` (`e ≤ 0` means bounded).
    pub fn for_growth(&self, p: f64, e: f64) -> f64 {
        let e = e.max(0.0);
        let grad = if e > 0.0 { self.gradient + p * (e + 1.0) } else { self.gradient };
        let rem = if self.u_growth > 0.0 { grad.max(self.gradient + p) } else { grad };
        (self.interior + p * e).max(grad).max(rem).max(0.0)
    }
}

/// One fully populated inequality instance.
#[derive(Debug, Clone)]
pub struct HardyCase {
    pub id: &'static str,
    pub params: CaseParams,
    pub a: Field,
    pub u: Field,
    pub interior: Vec<InteriorTerm>,
    pub boundary: Vec<BoundaryTerm>,
    pub domain: Domain,
    pub hypothesis: &'static str,
    pub label: &'static str,
    pub notes: Vec<String>,
    pub origin: OriginExponents,
    pub test_weight: Option<TestWeight>,
    /// `(i, c)`: points with `x_{i+1} > c` are excluded from integration (u → 0 there).
    pub clip: Option<(usize, f64)>,
}

impl HardyCase {
    pub fn p(&self) -> f64 {
        self.params.p
    }

    /// Sum of the interior terms.
    pub fn b_closed(&self) -> Field {
        match self.interior.len() {
            0 => Field::constant(0.0),
            1 => self.interior[0].field(),
            _ => Field::affine(0.0, self.interior.iter().map(|t| (t.constant, t.weight.clone())).collect()),
        }
    }

    pub fn boundary_term(&self, face: Face) -> Option<&BoundaryTerm> {
        self.boundary.iter().find(|b| b.face == face)
    }

    /// True when every interior term is part of an exact identity.
    pub fn is_exact(&self) -> bool {
        self.interior.iter().all(|t| t.kind == TermKind::Equality)
    }

    pub fn potentials(&self) -> Result<DerivedPotentials> {
        Ok(derive_potentials(&self.a, &self.u, self.params.p, &self.domain)?.with_closed_b(&self.b_closed()))
    }

    /// Whether a point is excluded by [`HardyCase::clip`].
    #[inline]
    pub fn clipped(&self, x: &[f64]) -> bool {
        matches!(self.clip, Some((i, c)) if x[i] > c)
    }
}

/// Registry entry: hypothesis, defaults, constructor and parameter sampler.
pub struct CaseEntry {
    pub id: &'static str,
    pub hypothesis: &'static str,
    pub label: &'static str,
    defaults: fn(&mut CaseParams),
    valid: fn(&CaseParams) -> bool,
    construct: fn(&CaseParams) -> Result<HardyCase>,
    sampler: fn(&mut ChaCha8Rng) -> CaseParams,
}

impl fmt::Debug for CaseEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CaseEntry").field("id", &self.id).finish()
    }
}

impl CaseEntry {
    pub fn default_params(&self) -> CaseParams {
        let mut p = CaseParams::default();
        (self.defaults)(&mut p);
        p
    }

    fn basic_checks(&self, p: &CaseParams) -> Result<()> {
        let ok = (2..=MAX_DIM).contains(&p.n)
            && p.radius > 0.0
            && [p.p, p.radius, p.alpha, p.gamma, p.m, p.s, p.t].iter().all(|v| v.is_finite());
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameters {
                case: self.id.to_string(),
                hypothesis: format!("2≤n≤{MAX_DIM}, R>0 and finite parameters"),
            })
        }
    }

    pub fn is_valid(&self, p: &CaseParams) -> bool {
        self.basic_checks(p).is_ok() && (self.valid)(p)
    }

    /// Validates the hypothesis, then constructs the case.
    pub fn build(&self, p: &CaseParams) -> Result<HardyCase> {
        self.basic_checks(p)?;
        if !(self.valid)(p) {
            return Err(Error::InvalidParameters { case: self.id.to_string(), hypothesis: self.hypothesis.to_string() });
        }
        (self.construct)(p)
    }

    /// Constructs the case without checking the hypothesis (used for limiting
    /// cases such as `γ = 0`). Dimension and radius are still checked.
    pub fn build_unchecked(&self, p: &CaseParams) -> Result<HardyCase> {
        self.basic_checks(p)?;
        (self.construct)(p)
    }

    /// A deterministic parameter draw inside the hypothesis region.
    pub fn sample_params(&self, seed: u64, draw: u64) -> CaseParams {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(draw);
        loop {
            let mut p = (self.sampler)(&mut rng);
            p.radius = rng.gen_range(0.5..2.0);
            if self.is_valid(&p) {
                return p;
            }
        }
    }
}

/// All entries, in a fixed order.
pub fn registry() -> &'static [CaseEntry] {
    cases::ENTRIES
}

pub fn lookup(id: &str) -> Result<&'static CaseEntry> {
    registry()
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::Config(format!("unknown case '{id}'")))
}
