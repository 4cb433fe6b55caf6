//! Balls in ℝⁿ cut by coordinate half-spaces, with interior and boundary
//! quadrature.
//!
//! A [`Domain`] is `{x : ρ < |x| < R, xᵢ > 0 for i ∈ P}`. Its boundary splits
//! into the spherical face `|x| = R`, one flat face `xᵢ = 0` per `i ∈ P`, and the
//! inner sphere `|x| = ρ` when `ρ > 0`.
//!
//! Two rules are available, selected by a [`QuadratureSpec`]:
//!
//! * `mc:N` samples N points uniformly (radius by inverse CDF, direction from
//!   normalised Gaussians, reflected into the admissible orthant).
//! * `radial:K:mc:D` samples D directions and integrates each ray with a
//!   K-node Gauss–Jacobi rule whose weight `r^{k-1-s}` absorbs an integrable
//!   origin singularity `r^{-s}`.
//!
//! Random numbers come from counter-based ChaCha streams, one stream per chunk
//! of samples, and chunks are reduced in index order. Results depend only on
//! the seed, never on the number of rayon workers.

mod rules;
mod spec;

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::MAX_DIM;

pub use spec::{Method, QuadratureSpec, DEFAULT_SEED};

/// Boundary samples closer than `EDGE_TOL·R` to another face are redrawn.
pub const EDGE_TOL: f64 = 1e-9;

const MC_CHUNK: usize = 4096;
const DIR_CHUNK: usize = 16;
const DISCRETISATION_DIRECTIONS: usize = 256;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Domain {
    dim: usize,
    radius: f64,
    /// 0-based indices of coordinates required to be positive, sorted.
    positive: Vec<usize>,
    inner_radius: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Face {
    Sphere,
    /// `x_{i+1} = 0` (0-based index).
    Flat(usize),
    InnerSphere,
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Face::Sphere => f.write_str("sphere"),
            Face::Flat(i) => write!(f, "flat:x{}", i + 1),
            Face::InnerSphere => f.write_str("inner-sphere"),
        }
    }
}

impl Serialize for Face {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub samples: usize,
}

impl QuadratureResult {
    pub fn exact(value: f64) -> Self {
        QuadratureResult { value, error_estimate: 0.0, samples: 0 }
    }

    /// `c·self`, error scaled by `|c|`.
    pub fn scaled(self, c: f64) -> Self {
        QuadratureResult { value: c * self.value, error_estimate: c.abs() * self.error_estimate, ..self }
    }

    /// Sum of two estimates with a union-bound error.
    pub fn plus(self, o: Self) -> Self {
        QuadratureResult {
            value: self.value + o.value,
            error_estimate: self.error_estimate + o.error_estimate,
            samples: self.samples.max(o.samples),
        }
    }
}

/// Volume of the unit ball in ℝᵏ.
pub fn unit_ball_volume(k: usize) -> f64 {
    match k {
        0 => 1.0,
        1 => 2.0,
        _ => 2.0 * std::f64::consts::PI / k as f64 * unit_ball_volume(k - 2),
    }
}

/// Surface area of the unit sphere S^{k−1} ⊂ ℝᵏ.
pub fn unit_sphere_area(k: usize) -> f64 {
    k as f64 * unit_ball_volume(k)
}

impl Domain {
    /// The open ball `B_R ⊂ ℝⁿ`.
    pub fn ball(dim: usize, radius: f64) -> Result<Self> {
        if !(2..=MAX_DIM).contains(&dim) {
            return Err(Error::InvalidDomain(format!("dimension {dim} outside 2..={MAX_DIM}")));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidDomain(format!("radius must be positive, got {radius}")));
        }
        Ok(Domain { dim, radius, positive: Vec::new(), inner_radius: 0.0 })
    }

    /// Requires `x_{i+1} > 0` for each 0-based index `i`.
    pub fn with_positive(mut self, coords: &[usize]) -> Result<Self> {
        for &i in coords {
            if i >= self.dim {
                return Err(Error::InvalidDomain(format!(
                    "constraint on x{} in dimension {}",
                    i + 1,
                    self.dim
                )));
            }
        }
        let mut p = coords.to_vec();
        p.sort_unstable();
        p.dedup();
        self.positive = p;
        Ok(self)
    }

    /// Removes the closed ball `|x| ≤ ρ`.
    pub fn with_inner_radius(mut self, rho: f64) -> Result<Self> {
        if !(rho >= 0.0 && rho < self.radius) {
            return Err(Error::InvalidDomain(format!(
                "inner radius {rho} must lie in [0, {})",
                self.radius
            )));
        }
        self.inner_radius = rho;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn inner_radius(&self) -> f64 {
        self.inner_radius
    }

    /// 0-based indices of the positivity constraints.
    pub fn positive(&self) -> &[usize] {
        &self.positive
    }

    fn orthant_factor(&self, count: usize) -> f64 {
        0.5f64.powi(count as i32)
    }

    pub fn volume(&self) -> f64 {
        let n = self.dim as i32;
        unit_ball_volume(self.dim)
            * (self.radius.powi(n) - self.inner_radius.powi(n))
            * self.orthant_factor(self.positive.len())
    }

    pub fn faces(&self) -> Vec<Face> {
        let mut out = vec![Face::Sphere];
        out.extend(self.positive.iter().map(|&i| Face::Flat(i)));
        if self.inner_radius > 0.0 {
            out.push(Face::InnerSphere);
        }
        out
    }

    fn check_face(&self, face: Face) -> Result<()> {
        match face {
            Face::Sphere => Ok(()),
            Face::Flat(i) if self.positive.contains(&i) => Ok(()),
            Face::InnerSphere if self.inner_radius > 0.0 => Ok(()),
            _ => Err(Error::InvalidDomain(format!("domain has no face {face}"))),
        }
    }

    /// (n−1)-dimensional measure of a face.
    pub fn face_measure(&self, face: Face) -> Result<f64> {
        self.check_face(face)?;
        let n = self.dim;
        let p = self.positive.len();
        Ok(match face {
            Face::Sphere => unit_sphere_area(n) * self.radius.powi(n as i32 - 1) * self.orthant_factor(p),
            Face::InnerSphere => {
                unit_sphere_area(n) * self.inner_radius.powi(n as i32 - 1) * self.orthant_factor(p)
            }
            Face::Flat(_) => {
                let k = n as i32 - 1;
                unit_ball_volume(n - 1)
                    * (self.radius.powi(k) - self.inner_radius.powi(k))
                    * self.orthant_factor(p - 1)
            }
        })
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        let r = norm(x);
        x.len() == self.dim
            && r < self.radius
            && r > self.inner_radius
            && self.positive.iter().all(|&i| x[i] > 0.0)
    }

    /// Faces on which `x` lies, to within `EDGE_TOL·R`.
    pub fn faces_at(&self, x: &[f64]) -> Vec<Face> {
        let tol = EDGE_TOL * self.radius;
        let r = norm(x);
        let mut out = Vec::new();
        if (r - self.radius).abs() <= tol {
            out.push(Face::Sphere);
        }
        for &i in &self.positive {
            if x[i].abs() <= tol {
                out.push(Face::Flat(i));
            }
        }
        if self.inner_radius > 0.0 && (r - self.inner_radius).abs() <= tol {
            out.push(Face::InnerSphere);
        }
        out
    }

    /// Outward unit normal at a boundary point lying on exactly one face.
    pub fn outward_normal(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.dim {
            return Err(Error::Dimension(format!(
                "point has {} coordinates, domain dimension is {}",
                x.len(),
                self.dim
            )));
        }
        let tol = EDGE_TOL * self.radius;
        let r = norm(x);
        let closure = r <= self.radius + tol
            && r >= self.inner_radius - tol
            && self.positive.iter().all(|&i| x[i] >= -tol);
        let faces = self.faces_at(x);
        match faces.as_slice() {
            [] => Err(Error::NotOnBoundary(x.to_vec())),
            _ if !closure => Err(Error::NotOnBoundary(x.to_vec())),
            [face] => Ok(self.normal_on(*face, x)),
            _ => Err(Error::EdgePoint(x.to_vec())),
        }
    }

    /// Outward normal of `face` evaluated at `x`, without checking that `x` lies on it.
    pub fn normal_on(&self, face: Face, x: &[f64]) -> Vec<f64> {
        match face {
            Face::Sphere => {
                let r = norm(x);
                x.iter().map(|v| v / r).collect()
            }
            Face::InnerSphere => {
                let r = norm(x);
                x.iter().map(|v| -v / r).collect()
            }
            Face::Flat(i) => {
                let mut e = vec![0.0; self.dim];
                e[i] = -1.0;
                e
            }
        }
    }
}

/// Euclidean norm.
pub fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// A k-dimensional ball (or spherical shell) embedded in ℝⁿ, the sampling
/// region behind every integral.
struct Region {
    n: usize,
    /// Ambient index frozen at 0 (flat faces).
    skip: Option<usize>,
    outer: f64,
    inner: f64,
    constrained: [bool; MAX_DIM],
    /// Sample the sphere `|x| = outer` instead of the solid ball.
    surface: bool,
    tol: f64,
    stream_tag: u64,
}

impl Region {
    fn interior(d: &Domain) -> Self {
        let mut constrained = [false; MAX_DIM];
        d.positive.iter().for_each(|&i| constrained[i] = true);
        Region {
            n: d.dim,
            skip: None,
            outer: d.radius,
            inner: d.inner_radius,
            constrained,
            surface: false,
            tol: EDGE_TOL * d.radius,
            stream_tag: 0,
        }
    }

    fn face(d: &Domain, face: Face) -> Self {
        let mut r = Self::interior(d);
        match face {
            Face::Sphere => {
                r.surface = true;
                r.stream_tag = 1;
            }
            Face::InnerSphere => {
                r.surface = true;
                r.outer = d.inner_radius;
                r.stream_tag = 2;
            }
            Face::Flat(i) => {
                r.skip = Some(i);
                r.constrained[i] = false;
                r.stream_tag = 3 + i as u64;
            }
        }
        r
    }

    /// Intrinsic dimension of the solid region (ambient n minus frozen coordinates).
    fn k(&self) -> usize {
        self.n - self.skip.is_some() as usize
    }

    fn constrained_count(&self) -> usize {
        self.constrained[..self.n].iter().filter(|&&c| c).count()
    }

    /// Area of the admissible part of the unit sphere in the region's span.
    fn direction_measure(&self) -> f64 {
        unit_sphere_area(self.k()) * 0.5f64.powi(self.constrained_count() as i32)
    }

    fn measure(&self) -> f64 {
        if self.surface {
            self.direction_measure() * self.outer.powi(self.k() as i32 - 1)
        } else {
            let k = self.k() as i32;
            unit_ball_volume(self.k()) * (self.outer.powi(k) - self.inner.powi(k))
                * 0.5f64.powi(self.constrained_count() as i32)
        }
    }

    fn rng(&self, seed: u64, chunk: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream((self.stream_tag << 40) | chunk as u64);
        rng
    }

    /// Writes a uniformly distributed admissible unit direction into `x`.
    fn direction(&self, rng: &mut ChaCha8Rng, x: &mut [f64]) {
        loop {
            let mut s = 0.0;
            for i in 0..self.n {
                if Some(i) == self.skip {
                    x[i] = 0.0;
                    continue;
                }
                let g: f64 = StandardNormal.sample(rng);
                x[i] = g;
                s += g * g;
            }
            if s == 0.0 {
                continue;
            }
            let inv = 1.0 / s.sqrt();
            let mut ok = true;
            for i in 0..self.n {
                x[i] *= inv;
                if self.constrained[i] {
                    x[i] = x[i].abs();
                    ok &= x[i] * self.outer > self.tol;
                }
            }
            if ok {
                return;
            }
        }
    }

    fn point(&self, rng: &mut ChaCha8Rng, x: &mut [f64]) {
        use rand::Rng;
        loop {
            self.direction(rng, x);
            let r = if self.surface {
                self.outer
            } else {
                let k = self.k() as i32;
                let (lo, hi) = (self.inner.powi(k), self.outer.powi(k));
                let u: f64 = rng.gen();
                (lo + (hi - lo) * u).powf(1.0 / k as f64)
            };
            if !self.surface
                && self.skip.is_some()
                && (r > self.outer - self.tol || (self.inner > 0.0 && r < self.inner + self.tol))
            {
                continue;
            }
            let mut ok = true;
            for i in 0..self.n {
                x[i] *= r;
                if self.constrained[i] {
                    ok &= x[i] > self.tol;
                }
            }
            if ok {
                return;
            }
        }
    }
}

#[derive(Clone)]
struct Moments {
    sum: Vec<f64>,
    sum_sq: Vec<f64>,
}

impl Moments {
    fn new(m: usize) -> Self {
        Moments { sum: vec![0.0; m], sum_sq: vec![0.0; m] }
    }

    fn push(&mut self, v: &[f64]) {
        for (t, &vi) in v.iter().enumerate() {
            self.sum[t] += vi;
            self.sum_sq[t] += vi * vi;
        }
    }

    fn merge(mut self, o: &Moments) -> Self {
        for t in 0..self.sum.len() {
            self.sum[t] += o.sum[t];
            self.sum_sq[t] += o.sum_sq[t];
        }
        self
    }

    /// Mean and standard error of the mean for `count` samples.
    fn mean_se(&self, t: usize, count: usize) -> (f64, f64) {
        let c = count as f64;
        let mean = self.sum[t] / c;
        let var = if count > 1 {
            ((self.sum_sq[t] - c * mean * mean) / (c - 1.0)).max(0.0)
        } else {
            0.0
        };
        (mean, (var / c).sqrt())
    }
}

fn check_finite(out: &[f64], x: &[f64]) -> Result<()> {
    match out.iter().find(|v| !v.is_finite()) {
        Some(&value) => Err(Error::NonFinite { value, point: x.to_vec() }),
        None => Ok(()),
    }
}

fn monte_carlo<F>(f: &F, m: usize, region: &Region, n_samples: usize, seed: u64) -> Result<Vec<QuadratureResult>>
where
    F: Fn(&[f64], &mut [f64]) -> Result<()> + Sync,
{
    if n_samples == 0 {
        return Err(Error::Config("sample count must be at least 1".into()));
    }
    let chunks = n_samples.div_ceil(MC_CHUNK);
    let partial: Vec<Moments> = (0..chunks)
        .into_par_iter()
        .map(|c| -> Result<Moments> {
            let mut rng = region.rng(seed, c);
            let mut acc = Moments::new(m);
            let mut x = [0.0; MAX_DIM];
            let mut out = vec![0.0; m];
            let count = MC_CHUNK.min(n_samples - c * MC_CHUNK);
            for _ in 0..count {
                region.point(&mut rng, &mut x[..region.n]);
                out.iter_mut().for_each(|o| *o = 0.0);
                f(&x[..region.n], &mut out)?;
                check_finite(&out, &x[..region.n])?;
                acc.push(&out);
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    let total = partial.iter().fold(Moments::new(m), |a, b| a.merge(b));
    let measure = region.measure();
    Ok((0..m)
        .map(|t| {
            let (mean, se) = total.mean_se(t, n_samples);
            QuadratureResult { value: measure * mean, error_estimate: measure * se, samples: n_samples }
        })
        .collect())
}

fn radial_product<F>(
    f: &F,
    m: usize,
    region: &Region,
    radial_nodes: usize,
    directions: usize,
    absorb: bool,
    origin_exponent: f64,
    seed: u64,
) -> Result<Vec<QuadratureResult>>
where
    F: Fn(&[f64], &mut [f64]) -> Result<()> + Sync,
{
    if directions == 0 {
        return Err(Error::Config("direction count must be at least 1".into()));
    }
    let k = region.k();
    let s = if absorb && region.inner == 0.0 { origin_exponent.max(0.0) } else { 0.0 };
    if s >= k as f64 {
        return Err(Error::SingularityUnhandled { exponent: origin_exponent });
    }
    let fine = rules::radial_rule(radial_nodes, k, s, region.inner, region.outer)?;
    let coarse = rules::radial_rule(rules::coarse_degree(radial_nodes), k, s, region.inner, region.outer)?;
    let chunks = directions.div_ceil(DIR_CHUNK);

    struct Partial {
        moments: Moments,
        delta: Vec<f64>,
    }

    let ray = |theta: &[f64], rule: &[(f64, f64)], g: &mut [f64], x: &mut [f64], out: &mut [f64]| -> Result<()> {
        g.iter_mut().for_each(|v| *v = 0.0);
        for &(r, w) in rule {
            for i in 0..theta.len() {
                x[i] = r * theta[i];
            }
            out.iter_mut().for_each(|o| *o = 0.0);
            f(&x[..theta.len()], out)?;
            check_finite(out, &x[..theta.len()])?;
            for t in 0..g.len() {
                g[t] += w * out[t];
            }
        }
        Ok(())
    };

    let partial: Vec<Partial> = (0..chunks)
        .into_par_iter()
        .map(|c| -> Result<Partial> {
            let mut rng = region.rng(seed, c);
            let mut acc = Partial { moments: Moments::new(m), delta: vec![0.0; m] };
            let mut theta = [0.0; MAX_DIM];
            let mut x = [0.0; MAX_DIM];
            let mut out = vec![0.0; m];
            let mut g = vec![0.0; m];
            let mut g_coarse = vec![0.0; m];
            let start = c * DIR_CHUNK;
            for j in start..(start + DIR_CHUNK).min(directions) {
                region.direction(&mut rng, &mut theta[..region.n]);
                let th = &theta[..region.n];
                ray(th, &fine, &mut g, &mut x, &mut out)?;
                acc.moments.push(&g);
                if j < DISCRETISATION_DIRECTIONS {
                    ray(th, &coarse, &mut g_coarse, &mut x, &mut out)?;
                    for t in 0..m {
                        acc.delta[t] += g[t] - g_coarse[t];
                    }
                }
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;

    let mut total = Moments::new(m);
    let mut delta = vec![0.0; m];
    for p in &partial {
        total = total.merge(&p.moments);
        for t in 0..m {
            delta[t] += p.delta[t];
        }
    }
    let dir_measure = region.direction_measure();
    let n_delta = directions.min(DISCRETISATION_DIRECTIONS) as f64;
    Ok((0..m)
        .map(|t| {
            let (mean, se) = total.mean_se(t, directions);
            QuadratureResult {
                value: dir_measure * mean,
                error_estimate: dir_measure * (se + (delta[t] / n_delta).abs()),
                samples: directions * radial_nodes,
            }
        })
        .collect())
}

fn integrate_region<F>(f: &F, m: usize, region: &Region, q: &QuadratureSpec, origin_exponent: f64) -> Result<Vec<QuadratureResult>>
where
    F: Fn(&[f64], &mut [f64]) -> Result<()> + Sync,
{
    let seed = q.seed();
    match q.method {
        Method::MonteCarlo { samples } => {
            if origin_exponent > 0.0 && region.inner == 0.0 && !region.surface {
                return Err(Error::SingularityUnhandled { exponent: origin_exponent });
            }
            monte_carlo(f, m, region, samples, seed)
        }
        Method::RadialProduct { radial_nodes, directions, absorb } => {
            if region.surface {
                monte_carlo(f, m, region, radial_nodes * directions, seed)
            } else {
                if origin_exponent > 0.0 && region.inner == 0.0 && !absorb {
                    return Err(Error::SingularityUnhandled { exponent: origin_exponent });
                }
                radial_product(f, m, region, radial_nodes, directions, absorb, origin_exponent, seed)
            }
        }
    }
}

/// Integrates several functions over the interior of `d` with shared sample points.
///
/// `f(x, out)` writes the `m` integrand values at `x`. `origin_exponent` is the
/// largest `s` such that some integrand grows like `|x|^{-s}` at the origin
/// (0 if none); it selects the radial weight of the product rule.
pub fn integrate_interior_terms<F>(
    f: F,
    m: usize,
    d: &Domain,
    q: &QuadratureSpec,
    origin_exponent: f64,
) -> Result<Vec<QuadratureResult>>
where
    F: Fn(&[f64], &mut [f64]) -> Result<()> + Sync,
{
    integrate_region(&f, m, &Region::interior(d), q, origin_exponent)
}

/// Integrates several functions over one boundary face of `d` with shared samples.
pub fn integrate_boundary_terms<F>(
    f: F,
    m: usize,
    d: &Domain,
    face: Face,
    q: &QuadratureSpec,
    origin_exponent: f64,
) -> Result<Vec<QuadratureResult>>
where
    F: Fn(&[f64], &mut [f64]) -> Result<()> + Sync,
{
    d.check_face(face)?;
    let region = Region::face(d, face);
    if region.surface {
        return integrate_region(&f, m, &region, q, 0.0);
    }
    integrate_region(&f, m, &region, q, origin_exponent)
}

pub fn integrate_interior<F>(f: F, d: &Domain, q: &QuadratureSpec, origin_exponent: f64) -> Result<QuadratureResult>
where
    F: Fn(&[f64]) -> Result<f64> + Sync,
{
    let g = |x: &[f64], out: &mut [f64]| -> Result<()> {
        out[0] = f(x)?;
        Ok(())
    };
    Ok(integrate_interior_terms(g, 1, d, q, origin_exponent)?[0])
}

pub fn integrate_boundary<F>(
    f: F,
    d: &Domain,
    face: Face,
    q: &QuadratureSpec,
    origin_exponent: f64,
) -> Result<QuadratureResult>
where
    F: Fn(&[f64]) -> Result<f64> + Sync,
{
    let g = |x: &[f64], out: &mut [f64]| -> Result<()> {
        out[0] = f(x)?;
        Ok(())
    };
    Ok(integrate_boundary_terms(g, 1, d, face, q, origin_exponent)?[0])
}

fn sample_region(region: &Region, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = region.rng(seed, 0);
    let mut buf = [0.0; MAX_DIM];
    (0..count)
        .map(|_| {
            region.point(&mut rng, &mut buf[..region.n]);
            buf[..region.n].to_vec()
        })
        .collect()
}

/// `count` uniform points on one face, away from its edges.
pub fn sample_boundary_points(d: &Domain, face: Face, count: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    d.check_face(face)?;
    Ok(sample_region(&Region::face(d, face), count, seed))
}
