//! Interior potential `b` and boundary weight `β` generated by a weight pair `(a, u)`.
//!
//! For `p > 1`, a weight `a ≥ 0` and a positive `u`,
//!
//! ```text
//! b = −∇·(a|∇u|^{p−2}∇u) / u^{p−1}
//! β = a|∇u|^{p−2}∂_ν u / u^{p−1}
//! ```
//!
//! The divergence is expanded as
//! `∇a·|∇u|^{p−2}∇u + a[(p−2)|∇u|^{p−4}∇uᵀH∇u + |∇u|^{p−2}Δu]`
//! and evaluated from the analytic jets of `a` and `u`.

mod cp;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Order};
use crate::geometry::{self, Domain, Face, QuadratureResult, QuadratureSpec};

pub use cp::{cp, estimate_cp, ConvexityConstant, CpCache, Regime, DEFAULT_GRID};

/// Below this gradient norm the flux is treated as zero.
pub const GRAD_FLOOR: f64 = 1e-30;

/// Pointwise `b` and `β` for a weight pair on a domain.
#[derive(Debug, Clone)]
pub struct DerivedPotentials {
    a: Field,
    u: Field,
    p: f64,
    domain: Domain,
    b_closed: Option<Field>,
}

pub fn derive_potentials(a: &Field, u: &Field, p: f64, d: &Domain) -> Result<DerivedPotentials> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::InvalidExponent(p));
    }
    Ok(DerivedPotentials { a: a.clone(), u: u.clone(), p, domain: d.clone(), b_closed: None })
}

impl DerivedPotentials {
    /// Attaches a closed-form `b` so that [`DerivedPotentials::residual`] is available.
    pub fn with_closed_b(mut self, b: &Field) -> Self {
        self.b_closed = Some(b.clone());
        self
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    fn positive_u(&self, x: &[f64], u: f64) -> Result<f64> {
        if u > 0.0 {
            Ok(u)
        } else {
            Err(Error::NonPositiveU { value: u, point: x.to_vec() })
        }
    }

    /// `−∇·(a|∇u|^{p−2}∇u)` at `x`.
    pub fn neg_divergence(&self, x: &[f64]) -> Result<f64> {
        let aj = self.a.eval(x, Order::Gradient)?;
        let uj = self.u.eval(x, Order::Hessian)?;
        self.positive_u(x, uj.value)?;
        let p = self.p;
        let g = &uj.gradient;
        let h = uj.hessian.as_ref().expect("order 2 requested");
        let norm = g.iter().map(|v| v * v).sum::<f64>().sqrt();
        let lap: f64 = (0..g.len()).map(|i| h[i][i]).sum();
        if norm < GRAD_FLOOR {
            return Ok(if p == 2.0 { -aj.value * lap } else { 0.0 });
        }
        let np2 = norm.powf(p - 2.0);
        let grad_a_dot: f64 = aj.gradient.iter().zip(g).map(|(da, du)| da * du).sum::<f64>() * np2;
        let mut quad = 0.0;
        for i in 0..g.len() {
            for k in 0..g.len() {
                quad += g[i] * h[i][k] * g[k];
            }
        }
        let inner = (p - 2.0) * np2 / (norm * norm) * quad + np2 * lap;
        Ok(-(grad_a_dot + aj.value * inner))
    }

    /// Numerically derived interior potential at `x`.
    pub fn b(&self, x: &[f64]) -> Result<f64> {
        let u = self.positive_u(x, self.u.value(x)?)?;
        Ok(self.neg_divergence(x)? / u.powf(self.p - 1.0))
    }

    /// Boundary weight on `face` at `x`, using that face's outward normal.
    pub fn beta_on(&self, face: Face, x: &[f64]) -> Result<f64> {
        let nu = self.domain.normal_on(face, x);
        let a = self.a.value(x)?;
        let uj = self.u.eval(x, Order::Gradient)?;
        let u = self.positive_u(x, uj.value)?;
        let norm = uj.gradient.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm < GRAD_FLOOR {
            return Ok(0.0);
        }
        let dnu: f64 = uj.gradient.iter().zip(&nu).map(|(g, n)| g * n).sum();
        Ok(a * norm.powf(self.p - 2.0) * dnu / u.powf(self.p - 1.0))
    }

    /// Boundary weight at a point lying on exactly one face.
    pub fn beta(&self, x: &[f64]) -> Result<f64> {
        match self.domain.faces_at(x).as_slice() {
            [face] => self.beta_on(*face, x),
            [] => Err(Error::NotOnBoundary(x.to_vec())),
            _ => Err(Error::EdgePoint(x.to_vec())),
        }
    }

    /// `−∇·(a|∇u|^{p−2}∇u) − b_closed·u^{p−1}`, if a closed form was attached.
    pub fn residual(&self, x: &[f64]) -> Result<Option<f64>> {
        let Some(bc) = &self.b_closed else { return Ok(None) };
        let u = self.positive_u(x, self.u.value(x)?)?;
        Ok(Some(self.neg_divergence(x)? - bc.value(x)? * u.powf(self.p - 1.0)))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SupersolutionReport {
    pub min_residual: f64,
    pub median_residual: f64,
    pub tolerance: f64,
    pub samples: usize,
    pub pass: bool,
}

/// Van der Corput radical inverse in base `b`.
fn radical_inverse(mut i: u64, b: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    let inv = 1.0 / b as f64;
    while i > 0 {
        f *= inv;
        r += f * (i % b) as f64;
        i /= b;
    }
    r
}

const PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

/// Deterministic low-discrepancy interior points of `d`: a Halton sequence with
/// a seeded random shift, mapped to the bounding cube and filtered to `d`.
pub fn halton_points(d: &Domain, count: usize, seed: u64) -> Vec<Vec<f64>> {
    use rand::{Rng, SeedableRng};
    let n = d.dim();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let shift: Vec<f64> = (0..n).map(|_| rng.gen()).collect();
    let big_r = d.radius();
    let mut out = Vec::with_capacity(count);
    let mut i = 1u64;
    while out.len() < count {
        let mut x: Vec<f64> = (0..n)
            .map(|k| {
                let v = (radical_inverse(i, PRIMES[k]) + shift[k]).fract();
                big_r * (2.0 * v - 1.0)
            })
            .collect();
        i += 1;
        for &k in d.positive() {
            x[k] = x[k].abs();
        }
        if d.contains(&x) {
            out.push(x);
        }
    }
    out
}

/// Checks `−∇·(a|∇u|^{p−2}∇u) ≥ b_closed·u^{p−1}` at `m` quasi-random interior points.
///
/// Passes iff the minimum residual is at least `−1e−8·(1 + |median|)`.
pub fn check_supersolution(
    dp: &DerivedPotentials,
    b_closed: &Field,
    m: usize,
    seed: u64,
) -> Result<SupersolutionReport> {
    let dp = dp.clone().with_closed_b(b_closed);
    let mut res = Vec::with_capacity(m);
    for x in halton_points(dp.domain(), m.max(1), seed) {
        res.push(dp.residual(&x)?.expect("closed form attached"));
    }
    res.sort_by(f64::total_cmp);
    let min_residual = res[0];
    let median_residual = res[res.len() / 2];
    let tolerance = 1e-8 * (1.0 + median_residual.abs());
    Ok(SupersolutionReport {
        min_residual,
        median_residual,
        tolerance,
        samples: res.len(),
        pass: min_residual >= -tolerance,
    })
}

/// Integrand of the remainder term at one point, without the constant `c_p`.
///
/// With `w = φ/u`: `a|∇w|^p u^p` for `p ≥ 2`, and
/// `a|∇w|²u² / (|w∇u| + |∇w|u)^{2−p}` for `1 < p < 2` (0 where the denominator vanishes).
pub fn remainder_density(p: f64, a: f64, u: f64, grad_u: &[f64], phi: f64, grad_phi: &[f64]) -> f64 {
    let w = phi / u;
    let mut gw2 = 0.0;
    let mut gu2 = 0.0;
    for i in 0..grad_u.len() {
        let gw = (grad_phi[i] - w * grad_u[i]) / u;
        gw2 += gw * gw;
        gu2 += grad_u[i] * grad_u[i];
    }
    if p >= 2.0 {
        a * (gw2 * u * u).powf(p / 2.0)
    } else {
        let den = w.abs() * gu2.sqrt() + gw2.sqrt() * u;
        if den < GRAD_FLOOR {
            0.0
        } else {
            a * gw2 * u * u / den.powf(2.0 - p)
        }
    }
}

/// `c_p ∫ (remainder density) dx` over `d`.
#[allow(clippy::too_many_arguments)]
pub fn remainder_term(
    a: &Field,
    u: &Field,
    p: f64,
    c_p: f64,
    phi: &Field,
    d: &Domain,
    q: &QuadratureSpec,
    origin_exponent: f64,
) -> Result<QuadratureResult> {
    if !(p > 1.0) {
        return Err(Error::InvalidExponent(p));
    }
    let f = |x: &[f64]| -> Result<f64> {
        let av = a.value(x)?;
        let uj = u.eval(x, Order::Gradient)?;
        if uj.value <= 0.0 {
            return Err(Error::NonPositiveU { value: uj.value, point: x.to_vec() });
        }
        let pj = phi.eval(x, Order::Gradient)?;
        Ok(c_p * remainder_density(p, av, uj.value, &uj.gradient, pj.value, &pj.gradient))
    };
    geometry::integrate_interior(f, d, q, origin_exponent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn classical_hardy_potential() {
        let d = Domain::ball(3, 1.0).unwrap();
        let u = Field::radius().powf(-0.5);
        let dp = derive_potentials(&Field::constant(1.0), &u, 2.0, &d).unwrap();
        assert!((dp.b(&[1.0, 0.0, 0.0]).unwrap() - 0.25).abs() < 1e-14);
        assert!((dp.b(&[0.0, 0.3, 0.4]).unwrap() - 0.25 / 0.25).abs() < 1e-12);
    }

    #[test]
    fn power_boundary_coefficient() {
        let d = Domain::ball(3, 1.0).unwrap();
        let u = Field::radius().powf(-0.5);
        let dp = derive_potentials(&Field::constant(1.0), &u, 2.0, &d).unwrap();
        assert!((dp.beta(&[0.0, 0.6, 0.8]).unwrap() + 0.5).abs() < 1e-14);
        assert!(dp.beta(&[0.0, 0.1, 0.1]).is_err());
    }

    #[test]
    fn constant_u_gives_zero_potentials() {
        let d = Domain::ball(2, 1.0).unwrap();
        for p in [1.5, 2.0, 3.0] {
            let dp = derive_potentials(&Field::constant(1.0), &Field::constant(2.0), p, &d).unwrap();
            assert_eq!(dp.b(&[0.2, 0.1]).unwrap(), 0.0);
            assert_eq!(dp.beta(&[1.0, 0.0]).unwrap(), 0.0);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let d = Domain::ball(2, 1.0).unwrap();
        let one = Field::constant(1.0);
        assert!(matches!(derive_potentials(&one, &one, 1.0, &d), Err(Error::InvalidExponent(_))));
        let dp = derive_potentials(&one, &Field::coord(0), 2.0, &d).unwrap();
        assert!(matches!(dp.b(&[-0.5, 0.0]), Err(Error::NonPositiveU { .. })));
    }

    #[test]
    fn trivial_supersolution() {
        let d = Domain::ball(3, 1.0).unwrap();
        let one = Field::constant(1.0);
        let dp = derive_potentials(&one, &one, 2.0, &d).unwrap();
        let r = check_supersolution(&dp, &Field::constant(0.0), 100, 1).unwrap();
        assert!(r.pass);
        assert_eq!(r.min_residual, 0.0);
    }

    #[test]
    fn remainder_vanishes_for_extremal() {
        let d = Domain::ball(3, 1.0).unwrap();
        let u = Field::radius().powf(-0.5);
        let q = QuadratureSpec::radial(16, 32);
        let r = remainder_term(&Field::constant(1.0), &u, 2.0, 1.0, &u, &d, &q, 1.0).unwrap();
        assert!(r.value.abs() < 1e-12);
    }

    #[test]
    fn remainder_radial_oracle() {
        let rho = 1e-3;
        let d = Domain::ball(3, 1.0).unwrap().with_inner_radius(rho).unwrap();
        let u = Field::radius().powf(-0.5);
        let q: QuadratureSpec = "radial:32:mc:64".parse().unwrap();
        let r = remainder_term(&Field::constant(1.0), &u, 2.0, 1.0, &Field::constant(1.0), &d, &q, 0.0).unwrap();
        let exact = PI * (1.0 - rho);
        // ∫ r^{-2} over a shell is radial; the Legendre rule on [ρ, 1] is the only error source
        assert!((r.value - exact).abs() < 1e-6 * exact, "{} vs {exact}", r.value);
    }

    #[test]
    fn remainder_positive_when_ratio_varies() {
        let d = Domain::ball(2, 1.0).unwrap();
        let q: QuadratureSpec = "mc:2000:seed=3".parse().unwrap();
        let phi: Field = "add(1.0, x1)".parse().unwrap();
        for p in [1.5, 2.0, 3.0] {
            let r = remainder_term(&Field::constant(1.0), &Field::constant(1.0), p, 0.5, &phi, &d, &q, 0.0).unwrap();
            assert!(r.value > 0.0);
        }
    }
}
