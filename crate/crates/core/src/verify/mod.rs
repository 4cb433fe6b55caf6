//! Assembling both sides of each inequality and judging them.
//!
//! For a case `(a, u, b, β)` and a test function `φ` the check is
//!
//! ```text
//! ∫ a|∇φ|^p  ≥  Σᵢ ∫ bᵢ|φ|^p  +  Σ_faces ∫ β|φ|^p dν  (+ remainder)
//! ```
//!
//! with every integral estimated from one shared set of sample points per
//! region, so correlated errors partly cancel in the margin.

mod hpw;
mod sharpness;
mod suite;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::HardyCase;
use crate::derivation::{cp, remainder_density};
use crate::error::{Error, Result};
use crate::field::MAX_DIM;
use crate::geometry::{self, Method, QuadratureResult, QuadratureSpec};

pub use hpw::{hpw_optimize, hpw_reports, hpw_suite, vertex_dominance, HpwDetail, HpwOptimum, HpwQuadratic, HpwVariant};
pub use sharpness::{estimate_best_constant, power_family, QuotientPoint, SharpnessReport, DEFAULT_EPSILONS};
pub use suite::{case_suite, origin_cutoff, test_function_suite, TestFunction, CUTOFF_FRACTION};

/// Monte Carlo standard errors are multiplied by this before comparison.
pub const ERROR_MULTIPLIER: f64 = 3.0;
/// Relative rounding allowance per term.
const ROUNDING: f64 = 1e-10;
/// Radial nodes used when an `mc` spec meets an origin singularity.
pub const SWITCH_RADIAL_NODES: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    /// Pass if `margin ≥ −E`, inconclusive down to `−2E`, fail below.
    pub fn judge(margin: f64, combined_error: f64) -> Verdict {
        if margin >= -combined_error {
            Verdict::Pass
        } else if margin >= -2.0 * combined_error {
            Verdict::Inconclusive
        } else {
            Verdict::Fail
        }
    }
}

/// Union-bound error of a set of estimates plus a rounding floor.
pub fn combined_error<'a>(terms: impl IntoIterator<Item = &'a QuadratureResult>) -> f64 {
    let (err, mag) = terms
        .into_iter()
        .fold((0.0, 0.0), |(e, m), r| (e + r.error_estimate, m + r.value.abs()));
    ERROR_MULTIPLIER * err + ROUNDING * mag
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedResult {
    pub label: String,
    #[serde(flatten)]
    pub result: QuadratureResult,
}

impl NamedResult {
    fn new(label: impl Into<String>, result: QuadratureResult) -> Self {
        NamedResult { label: label.into(), result }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub case_id: String,
    pub phi_id: String,
    pub lhs: QuadratureResult,
    pub rhs_interior: Vec<NamedResult>,
    pub rhs_boundary: Vec<NamedResult>,
    pub remainder: Option<QuadratureResult>,
    pub margin: f64,
    pub combined_error: f64,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hpw: Option<HpwDetail>,
}

impl VerificationReport {
    fn assemble(
        case_id: &str,
        phi_id: &str,
        lhs: QuadratureResult,
        rhs_interior: Vec<NamedResult>,
        rhs_boundary: Vec<NamedResult>,
        remainder: Option<QuadratureResult>,
        notes: Vec<String>,
    ) -> Self {
        let rhs = rhs_interior.iter().chain(&rhs_boundary).map(|t| &t.result).chain(remainder.as_ref());
        let margin = lhs.value - rhs.clone().map(|r| r.value).sum::<f64>();
        let e = combined_error(std::iter::once(&lhs).chain(rhs));
        VerificationReport {
            case_id: case_id.to_string(),
            phi_id: phi_id.to_string(),
            lhs,
            rhs_interior,
            rhs_boundary,
            remainder,
            margin,
            combined_error: e,
            verdict: Verdict::judge(margin, e),
            notes,
            hpw: None,
        }
    }

    /// The same report with the remainder dropped from the right-hand side.
    pub fn without_remainder(&self) -> VerificationReport {
        let mut r = VerificationReport::assemble(
            &self.case_id,
            &self.phi_id,
            self.lhs,
            self.rhs_interior.clone(),
            self.rhs_boundary.clone(),
            None,
            self.notes.clone(),
        );
        r.hpw = self.hpw.clone();
        r
    }

    /// Sum of all right-hand-side values (interior, boundary, remainder).
    pub fn rhs_total(&self) -> f64 {
        self.rhs_interior.iter().chain(&self.rhs_boundary).map(|t| t.result.value).sum::<f64>()
            + self.remainder.map_or(0.0, |r| r.value)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

impl SuiteSummary {
    pub fn of<'a>(reports: impl IntoIterator<Item = &'a VerificationReport>) -> Self {
        let mut s = SuiteSummary::default();
        for r in reports {
            match r.verdict {
                Verdict::Pass => s.pass += 1,
                Verdict::Fail => s.fail += 1,
                Verdict::Inconclusive => s.inconclusive += 1,
            }
        }
        s
    }

    pub fn total(&self) -> usize {
        self.pass + self.fail + self.inconclusive
    }
}

/// The interior rule actually used: an `mc` spec is replaced by a radial
/// product rule of the same budget when the integrands blow up at the origin.
pub(crate) fn interior_spec(q: &QuadratureSpec, exponent: f64, solid_origin: bool) -> (QuadratureSpec, Option<String>) {
    match q.method {
        Method::MonteCarlo { samples } if exponent > 0.0 && solid_origin => {
            let dirs = (samples / SWITCH_RADIAL_NODES).max(64);
            let r = QuadratureSpec::radial(SWITCH_RADIAL_NODES, dirs).with_seed(q.seed());
            let note = format!("interior rule switched to {r} (integrands grow like |x|^-{exponent:.4} at the origin)");
            (r, Some(note))
        }
        _ => (*q, None),
    }
}

pub(crate) fn abs_pow(v: f64, p: f64) -> f64 {
    if p == 2.0 {
        v * v
    } else {
        v.abs().powf(p)
    }
}

/// Both sides of the case's inequality for one test function.
pub fn verify_case(
    case: &HardyCase,
    phi: &TestFunction,
    q: &QuadratureSpec,
    include_remainder: bool,
) -> Result<VerificationReport> {
    let p = case.p();
    let d = &case.domain;
    let n = d.dim();
    let mut notes = Vec::new();

    let s = case.origin.for_growth(p, phi.growth);
    if s >= n as f64 {
        return Err(Error::SingularityUnhandled { exponent: s });
    }
    let (qi, note) = interior_spec(q, s, d.inner_radius() == 0.0);
    notes.extend(note);
    let c_p = if include_remainder { Some(cp(p)?) } else { None };

    let terms = &case.interior;
    let m = 1 + terms.len() + c_p.is_some() as usize;
    let f = |x: &[f64], out: &mut [f64]| -> Result<()> {
        if case.clipped(x) {
            out.fill(0.0);
            return Ok(());
        }
        let mut gphi = [0.0; MAX_DIM];
        let phiv = phi.phi.value_and_gradient(x, &mut gphi[..n])?;
        let g2: f64 = gphi[..n].iter().map(|g| g * g).sum();
        let av = case.a.value(x)?;
        out[0] = av * if p == 2.0 { g2 } else { g2.powf(p / 2.0) };
        let phip = abs_pow(phiv, p);
        for (i, t) in terms.iter().enumerate() {
            out[1 + i] = if phip == 0.0 { 0.0 } else { t.constant * t.weight.value(x)? * phip };
        }
        if let Some(c) = c_p {
            let mut gu = [0.0; MAX_DIM];
            let uv = case.u.value_and_gradient(x, &mut gu[..n])?;
            if !(uv > 0.0) {
                return Err(Error::NonPositiveU { value: uv, point: x.to_vec() });
            }
            out[m - 1] = c * remainder_density(p, av, uv, &gu[..n], phiv, &gphi[..n]);
        }
        Ok(())
    };
    let res = geometry::integrate_interior_terms(f, m, d, &qi, s)?;

    let rhs_interior = terms.iter().zip(&res[1..]).map(|(t, r)| NamedResult::new(t.label.clone(), *r)).collect();
    let remainder = c_p.map(|_| res[m - 1]);

    let mut rhs_boundary = Vec::new();
    for bt in &case.boundary {
        let label = bt.face.to_string();
        if bt.singular {
            if !phi.vanishes_on(bt.face) {
                return Err(Error::SingularPoint(format!(
                    "β is singular on {label} and test function '{}' does not vanish there",
                    phi.id
                )));
            }
            notes.push(format!("{label}: β is singular but φ vanishes there; term is 0"));
            rhs_boundary.push(NamedResult::new(label, QuadratureResult::exact(0.0)));
            continue;
        }
        let g = |x: &[f64]| -> Result<f64> {
            if case.clipped(x) {
                return Ok(0.0);
            }
            let phip = abs_pow(phi.phi.value(x)?, p);
            if phip == 0.0 {
                return Ok(0.0);
            }
            Ok(bt.beta.value(x)? * phip)
        };
        let r = geometry::integrate_boundary(g, d, bt.face, q, 0.0)?;
        rhs_boundary.push(NamedResult::new(label, r));
    }

    Ok(VerificationReport::assemble(case.id, &phi.id, res[0], rhs_interior, rhs_boundary, remainder, notes))
}

/// [`verify_case`] over [`case_suite`], in suite order.
pub fn verify_suite(case: &HardyCase, q: &QuadratureSpec, include_remainder: bool) -> Result<Vec<VerificationReport>> {
    case_suite(case).par_iter().map(|phi| verify_case(case, phi, q, include_remainder)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{lookup, CaseParams};
    use std::f64::consts::PI;

    fn mc(n: usize) -> QuadratureSpec {
        format!("mc:{n}:seed=3").parse().unwrap()
    }

    #[test]
    fn verdict_bands() {
        assert_eq!(Verdict::judge(0.5, 0.1), Verdict::Pass);
        assert_eq!(Verdict::judge(-0.1, 0.1), Verdict::Pass);
        assert_eq!(Verdict::judge(-0.15, 0.1), Verdict::Inconclusive);
        assert_eq!(Verdict::judge(-0.3, 0.1), Verdict::Fail);
    }

    #[test]
    fn power_bump_closed_form() {
        let case = lookup("power").unwrap().build(&CaseParams::default()).unwrap();
        let d = &case.domain;
        let phi = test_function_suite(d, 0).into_iter().find(|t| t.id == "bump1").unwrap();
        let rep = verify_case(&case, &phi, &mc(100_000), false).unwrap();
        assert!(rep.notes.iter().any(|n| n.contains("radial")));
        assert!((rep.lhs.value - 16.0 * PI / 5.0).abs() < 1e-6, "{}", rep.lhs.value);
        assert!((rep.rhs_interior[0].result.value - 8.0 * PI / 15.0).abs() < 1e-6);
        assert!(rep.rhs_boundary[0].result.value.abs() < 1e-12);
        assert!((rep.margin - (16.0 / 5.0 - 8.0 / 15.0) * PI).abs() < 1e-5);
        assert_eq!(rep.verdict, Verdict::Pass);
    }

    #[test]
    fn constant_function_identity() {
        // φ ≡ 1: LHS = 0 and the right side is exactly balanced by the remainder at p = 2
        let p = CaseParams { n: 2, ..CaseParams::default() };
        let case = lookup("exp-x1-c").unwrap().build(&p).unwrap();
        let one = TestFunction::new("one", crate::field::Field::constant(1.0));
        let rep = verify_case(&case, &one, &mc(200_000), true).unwrap();
        assert_eq!(rep.lhs.value, 0.0);
        assert!(rep.margin.abs() <= rep.combined_error, "{} vs {}", rep.margin, rep.combined_error);
        assert!(rep.without_remainder().margin > 0.0);
    }

    #[test]
    fn deterministic_reports() {
        let case = lookup("sinh").unwrap().build(&lookup("sinh").unwrap().default_params()).unwrap();
        let phi = &case_suite(&case)[5];
        let a = serde_json::to_string(&verify_case(&case, phi, &mc(20_000), true).unwrap()).unwrap();
        let b = serde_json::to_string(&verify_case(&case, phi, &mc(20_000), true).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn singular_face_requires_vanishing() {
        let case = lookup("halfball-x1r").unwrap().build(&CaseParams::default()).unwrap();
        let one = TestFunction::new("one", crate::field::Field::constant(1.0));
        assert!(verify_case(&case, &one, &mc(1000), false).is_err());
    }

    #[test]
    fn summary_counts() {
        let case = lookup("exp-sum-b").unwrap().build(&CaseParams::default()).unwrap();
        let reps = verify_suite(&case, &mc(4000), false).unwrap();
        let s = SuiteSummary::of(&reps);
        assert_eq!(s.total(), reps.len());
        assert!(reps.len() >= 20);
    }
    #[test]
    fn detects_inflated_constant() {
        let mut case = lookup("power").unwrap().build(&CaseParams::default()).unwrap();
        case.interior[0].constant *= 1.5;
        let reps = verify_suite(&case, &mc(50_000), false).unwrap();
        assert!(reps.iter().any(|r| r.verdict == Verdict::Fail));
    }
}
