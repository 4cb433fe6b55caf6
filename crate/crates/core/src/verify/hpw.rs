//! Product (uncertainty-type) inequalities from a one-parameter family of
//! supersolutions `u = e^{−α w(x)}` at `p = 2`, `a = 1`.
//!
//! Each family gives `∫|∇φ|² ≥ −κα²X + αY` for all real `α`, so
//! `∫|∇φ|² · X ≥ Y²/(4κ)`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::{interior_spec, test_function_suite, NamedResult, TestFunction, VerificationReport};
use crate::error::{Error, Result};
use crate::field::MAX_DIM;
use crate::geometry::{self, Domain, Face, QuadratureResult, QuadratureSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HpwVariant {
    /// `w = |x|²`
    Gaussian,
    /// `w = |x|`
    ExpRadial,
    /// `w = xₙ²`
    Xn2,
    /// `w = x_{n−1}² + xₙ²`
    Cylindrical,
}

impl HpwVariant {
    pub const ALL: [HpwVariant; 4] = [HpwVariant::Gaussian, HpwVariant::ExpRadial, HpwVariant::Xn2, HpwVariant::Cylindrical];

    pub fn id(&self) -> &'static str {
        match self {
            HpwVariant::Gaussian => "gaussian",
            HpwVariant::ExpRadial => "exp-radial",
            HpwVariant::Xn2 => "xn2",
            HpwVariant::Cylindrical => "cylindrical",
        }
    }

    /// Magnitude of the `α²` coefficient.
    pub fn kappa(&self) -> f64 {
        match self {
            HpwVariant::ExpRadial => 1.0,
            _ => 4.0,
        }
    }

    /// Weight of `X = ∫ w_X φ²`.
    fn x_weight(&self, x: &[f64]) -> f64 {
        let n = x.len();
        match self {
            HpwVariant::Gaussian => x.iter().map(|v| v * v).sum(),
            HpwVariant::ExpRadial => 1.0,
            HpwVariant::Xn2 => x[n - 1] * x[n - 1],
            HpwVariant::Cylindrical => x[n - 2] * x[n - 2] + x[n - 1] * x[n - 1],
        }
    }

    /// `Y = c_I ∫ w_I φ² + c_B ∫_∂ w_B φ² dν` as `(c_I, c_B)`.
    fn y_coefficients(&self, n: usize, radius: f64) -> (f64, f64) {
        match self {
            HpwVariant::Gaussian => (2.0 * n as f64, -2.0 * radius),
            HpwVariant::ExpRadial => (n as f64 - 1.0, -1.0),
            HpwVariant::Xn2 => (2.0, -2.0 / radius),
            HpwVariant::Cylindrical => (4.0, -2.0 / radius),
        }
    }

    fn y_interior_weight(&self, x: &[f64]) -> f64 {
        match self {
            HpwVariant::ExpRadial => 1.0 / geometry::norm(x),
            _ => 1.0,
        }
    }

    fn y_boundary_weight(&self, x: &[f64]) -> f64 {
        match self {
            HpwVariant::Gaussian | HpwVariant::ExpRadial => 1.0,
            _ => self.x_weight(x),
        }
    }

    fn origin_exponent(&self) -> f64 {
        match self {
            HpwVariant::ExpRadial => 1.0,
            _ => 0.0,
        }
    }
}

impl fmt::Display for HpwVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for HpwVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        HpwVariant::ALL
            .into_iter()
            .find(|v| v.id() == s)
            .ok_or_else(|| Error::Config(format!("unknown HPW variant '{s}' (expected gaussian, exp-radial, xn2 or cylindrical)")))
    }
}

/// `−κXα² + Yα + Z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HpwQuadratic {
    pub x: QuadratureResult,
    pub y: QuadratureResult,
    pub z: QuadratureResult,
    pub kappa: f64,
}

impl HpwQuadratic {
    pub fn at(&self, alpha: f64) -> f64 {
        -self.kappa * self.x.value * alpha * alpha + self.y.value * alpha + self.z.value
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HpwOptimum {
    pub alpha_star: f64,
    pub value: f64,
}

/// Maximises `−κXα² + Yα` over `α > 0`: the vertex `Y/(2κX)` when `Y > 0`,
/// otherwise the degenerate bound 0 at `α = 0`.
pub fn hpw_optimize(x: &QuadratureResult, y: &QuadratureResult, kappa: f64) -> Result<HpwOptimum> {
    if !(x.value > 0.0) {
        return Err(Error::NonPositiveX(x.value));
    }
    if !(kappa > 0.0) {
        return Err(Error::Config(format!("quadratic coefficient magnitude must be positive, got {kappa}")));
    }
    if y.value <= 0.0 {
        return Ok(HpwOptimum { alpha_star: 0.0, value: 0.0 });
    }
    Ok(HpwOptimum { alpha_star: y.value / (2.0 * kappa * x.value), value: y.value * y.value / (4.0 * kappa * x.value) })
}

/// Checks that the additive bound on `points` grid values of `α ∈ (0, 2α*]`
/// (or `(0, 1]` when `α* = 0`) never exceeds the optimum.
pub fn vertex_dominance(q: &HpwQuadratic, opt: &HpwOptimum, points: usize) -> bool {
    let top = if opt.alpha_star > 0.0 { 2.0 * opt.alpha_star } else { 1.0 };
    let best = opt.value + q.z.value;
    (1..=points).all(|j| {
        let a = top * j as f64 / points as f64;
        q.at(a) <= best + 1e-12 * best.abs().max(1.0)
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HpwDetail {
    pub variant: HpwVariant,
    pub dim: usize,
    pub radius: f64,
    pub gradient_energy: QuadratureResult,
    pub quadratic: HpwQuadratic,
    pub optimum: HpwOptimum,
    pub vertex_dominance: bool,
}

/// Grid size for the vertex-dominance check.
pub const DOMINANCE_GRID: usize = 50;

/// Both sides of `∫|∇φ|²·X ≥ Y²/(4κ)` on `B_R ⊂ ℝⁿ`.
pub fn hpw_suite(variant: HpwVariant, n: usize, radius: f64, phi: &TestFunction, q: &QuadratureSpec) -> Result<VerificationReport> {
    let d = Domain::ball(n, radius)?;
    let s = variant.origin_exponent();
    let (qi, note) = interior_spec(q, s, true);
    let f = |x: &[f64], out: &mut [f64]| -> Result<()> {
        let mut g = [0.0; MAX_DIM];
        let v = phi.phi.value_and_gradient(x, &mut g[..n])?;
        let v2 = v * v;
        out[0] = g[..n].iter().map(|t| t * t).sum();
        out[1] = variant.x_weight(x) * v2;
        out[2] = if v2 == 0.0 { 0.0 } else { variant.y_interior_weight(x) * v2 };
        Ok(())
    };
    let res = geometry::integrate_interior_terms(f, 3, &d, &qi, s)?;
    let b = geometry::integrate_boundary(
        |x: &[f64]| Ok(variant.y_boundary_weight(x) * phi.phi.value(x)?.powi(2)),
        &d,
        Face::Sphere,
        q,
        0.0,
    )?;
    let (ci, cb) = variant.y_coefficients(n, radius);
    let (l, xq) = (res[0], res[1]);
    let y = res[2].scaled(ci).plus(b.scaled(cb));
    let kappa = variant.kappa();
    let quadratic = HpwQuadratic { x: xq, y, z: QuadratureResult::exact(0.0), kappa };

    let lhs = QuadratureResult {
        value: l.value * xq.value,
        error_estimate: xq.value.abs() * l.error_estimate + l.value.abs() * xq.error_estimate,
        samples: l.samples,
    };
    let bound = QuadratureResult {
        value: y.value * y.value / (4.0 * kappa),
        error_estimate: y.value.abs() * y.error_estimate / (2.0 * kappa),
        samples: y.samples,
    };
    let mut notes: Vec<String> = note.into_iter().collect();
    let (optimum, dominance) = match hpw_optimize(&xq, &y, kappa) {
        Ok(o) => (o, vertex_dominance(&quadratic, &o, DOMINANCE_GRID)),
        Err(e) => {
            notes.push(e.to_string());
            (HpwOptimum { alpha_star: 0.0, value: 0.0 }, true)
        }
    };
    let mut rep = VerificationReport::assemble(
        &format!("hpw-{variant}"),
        &phi.id,
        lhs,
        vec![NamedResult::new("Y²/(4κ)", bound)],
        Vec::new(),
        None,
        notes,
    );
    rep.hpw = Some(HpwDetail {
        variant,
        dim: n,
        radius,
        gradient_energy: l,
        quadratic,
        optimum,
        vertex_dominance: dominance,
    });
    Ok(rep)
}

/// [`hpw_suite`] over the base test-function suite on `B_R`.
pub fn hpw_reports(variant: HpwVariant, n: usize, radius: f64, q: &QuadratureSpec) -> Result<Vec<VerificationReport>> {
    let d = Domain::ball(n, radius)?;
    test_function_suite(&d, 0).par_iter().map(|phi| hpw_suite(variant, n, radius, phi, q)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::Verdict;

    #[test]
    fn optimizer_examples() {
        let x = QuadratureResult::exact(1.0);
        let o = hpw_optimize(&x, &QuadratureResult::exact(2.0), 4.0).unwrap();
        assert_eq!((o.alpha_star, o.value), (0.25, 0.25));
        let o = hpw_optimize(&x, &QuadratureResult::exact(-1.0), 4.0).unwrap();
        assert_eq!(o.value, 0.0);
        assert!(matches!(hpw_optimize(&QuadratureResult::exact(0.0), &x, 4.0), Err(Error::NonPositiveX(_))));
    }

    #[test]
    fn gaussian_bump_closed_form() {
        // n = 2, R = 1, φ = 1 − |x|²: L = 2π, X = π/12, Y = 2·2·π/3, φ = 0 on the sphere
        let d = Domain::ball(2, 1.0).unwrap();
        let phi = test_function_suite(&d, 0).into_iter().find(|t| t.id == "bump1").unwrap();
        let q: QuadratureSpec = "mc:200000:seed=5".parse().unwrap();
        let rep = hpw_suite(HpwVariant::Gaussian, 2, 1.0, &phi, &q).unwrap();
        let h = rep.hpw.as_ref().unwrap();
        let pi = std::f64::consts::PI;
        assert!((h.gradient_energy.value - 2.0 * pi).abs() < 4.0 * h.gradient_energy.error_estimate + 1e-9);
        assert!((h.quadratic.x.value - pi / 12.0).abs() < 4.0 * h.quadratic.x.error_estimate + 1e-9);
        assert!((h.quadratic.y.value - 4.0 * pi / 3.0).abs() < 4.0 * h.quadratic.y.error_estimate + 1e-9);
        assert_eq!(rep.verdict, Verdict::Pass);
        assert!(h.vertex_dominance);
    }

    #[test]
    fn variants_parse() {
        for v in HpwVariant::ALL {
            assert_eq!(v.id().parse::<HpwVariant>().unwrap(), v);
        }
        assert!("gauss".parse::<HpwVariant>().is_err());
    }
}
