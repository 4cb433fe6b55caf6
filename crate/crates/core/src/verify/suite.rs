use serde::Serialize;

use crate::catalog::HardyCase;
use crate::field::Field;
use crate::geometry::{Domain, Face};

/// Radius of the origin cutoff as a fraction of `R`.
pub const CUTOFF_FRACTION: f64 = 0.05;

/// A test function on a domain.
#[derive(Debug, Clone, Serialize)]
pub struct TestFunction {
    pub id: String,
    #[serde(serialize_with = "display")]
    pub phi: Field,
    pub vanishes_on: Vec<Face>,
    /// `φ = O(|x|^k)` at the origin.
    pub origin_order: u32,
    /// `φ ~ |x|^{-e}` at the origin; 0 for bounded functions.
    pub growth: f64,
}

fn display<S: serde::Serializer>(f: &Field, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(f)
}

impl TestFunction {
    pub fn new(id: impl Into<String>, phi: Field) -> Self {
        TestFunction { id: id.into(), phi, vanishes_on: Vec::new(), origin_order: 0, growth: 0.0 }
    }

    pub fn vanishing_on(mut self, faces: &[Face]) -> Self {
        for f in faces {
            if !self.vanishes_on.contains(f) {
                self.vanishes_on.push(*f);
            }
        }
        self
    }

    pub fn vanishes_on(&self, face: Face) -> bool {
        self.vanishes_on.contains(&face)
    }

    /// Multiplies by `factor`, which vanishes on `faces` and to order `order` at 0.
    pub fn times(mut self, factor: &Field, faces: &[Face], order: u32) -> Self {
        self.phi = self.phi * factor.clone();
        self.origin_order += order;
        self.growth -= order as f64;
        self.vanishing_on(faces)
    }

    /// Composes with the origin cutoff of order at least `k`.
    pub fn with_cutoff(self, k: u32, radius: f64, dim: usize) -> Self {
        if k == 0 {
            return self;
        }
        let order = 2 * k.div_ceil(2);
        let id = format!("{}*cut{order}", self.id);
        let mut t = self.times(&origin_cutoff(k, radius, dim), &[], order);
        t.id = id;
        t
    }
}

/// `(s/(1+s))^{⌈k/2⌉}` with `s = |x|²/ρ₀²`, `ρ₀ = 0.05R`: behaves like
/// `|x/ρ₀|^{2⌈k/2⌉}` near 0 and tends to 1 away from it.
pub fn origin_cutoff(k: u32, radius: f64, dim: usize) -> Field {
    let rho2 = (CUTOFF_FRACTION * radius).powi(2);
    let s = Field::norm_squared(dim) * (1.0 / rho2);
    let ratio = Field::quotient(s.clone(), s + 1.0);
    let j = k.div_ceil(2);
    if j == 1 {
        ratio
    } else {
        ratio.powf(j as f64)
    }
}

/// The base suite of 22 functions in `z = x/R`, each composed with the origin
/// cutoff when `k > 0`.
pub fn test_function_suite(d: &Domain, k: u32) -> Vec<TestFunction> {
    let n = d.dim();
    let rad = d.radius();
    let z = |i: usize| Field::coord(i) * (1.0 / rad);
    let zz = || Field::norm_squared(n) * (1.0 / (rad * rad));
    let one_minus_zz = || Field::affine(1.0, vec![(-1.0 / (rad * rad), Field::norm_squared(n))]);
    let bump = |j: u32| if j == 1 { one_minus_zz() } else { one_minus_zz().powf(j as f64) };
    let tilt = || z(0) * 0.5 + 1.0;
    let sphere = [Face::Sphere];

    let mut out = vec![TestFunction::new("one", Field::constant(1.0))];
    for j in 1..=4 {
        out.push(TestFunction::new(format!("bump{j}"), bump(j)).vanishing_on(&sphere));
    }
    for (name, s) in [("gauss0.5", 0.5), ("gauss1", 1.0), ("gauss2", 2.0)] {
        out.push(TestFunction::new(name, (zz() * (-1.0 / s)).exp()));
    }
    out.push(TestFunction::new("tilt-bump1", tilt() * bump(1)).vanishing_on(&sphere));
    out.push(TestFunction::new("tilt-bump2", tilt() * bump(2)).vanishing_on(&sphere));
    out.push(TestFunction::new("tilt-gauss", tilt() * (-zz()).exp()));
    out.push(TestFunction::new("affine", Field::affine(1.0, vec![(0.5, z(0)), (-1.0 / 3.0, z(1))])));
    out.push(TestFunction::new("exp-z1", z(0).exp()));
    out.push(TestFunction::new("cosh-z1z2", (z(0) + z(1)).cosh()));
    let shifted = Field::sum(
        std::iter::once((z(0) - 0.3).powf(2.0)).chain((1..n).map(|i| z(i).powf(2.0))).collect(),
    );
    out.push(TestFunction::new("shifted-gauss", (-shifted).exp()));
    out.push(TestFunction::new("quad-plus", zz() + 1.0));
    out.push(TestFunction::new("bump-exp", bump(1) * z(1).exp()).vanishing_on(&sphere));
    out.push(TestFunction::new("sinh-tilt", tilt().sinh()));
    out.push(TestFunction::new("rational", Field::quotient(Field::constant(1.0), zz() + 1.0)));
    out.push(TestFunction::new("log-shift", (z(0) + 2.0).ln()));
    out.push(TestFunction::new("mixed", (z(0) * z(1) + 1.0) * (zz() * -0.5).exp()));
    out.push(
        TestFunction::new("quartic", Field::affine(1.0, vec![(-1.0, zz().powf(2.0))])).vanishing_on(&sphere),
    );
    out.into_iter().map(|t| t.with_cutoff(k, rad, n)).collect()
}

/// Smallest even cutoff order making every integral finite for a function
/// growing like `|x|^{-e}`, or `None` if none up to `2n` suffices.
pub(crate) fn cutoff_order(case: &HardyCase, e: f64) -> Option<u32> {
    let n = case.domain.dim() as f64;
    (0..=case.domain.dim() as u32)
        .map(|j| 2 * j)
        .find(|&k| case.origin.for_growth(case.p(), e - k as f64) < n)
}

/// The suite used for one catalog case: every base function times the case's
/// test weight (if any), plus `u` itself (cut off at the origin when needed).
pub fn case_suite(case: &HardyCase) -> Vec<TestFunction> {
    let k = cutoff_order(case, 0.0).unwrap_or(0);
    let mut out = test_function_suite(&case.domain, k);
    let e = case.origin.u_growth;
    let mut u = TestFunction::new("u", case.u.clone());
    u.growth = e;
    if let Some(c) = cutoff_order(case, e).filter(|&c| c > 0) {
        u = u.with_cutoff(c, case.domain.radius(), case.domain.dim());
    }
    out.push(u);
    if let Some(w) = &case.test_weight {
        out = out.into_iter().map(|t| t.times(&w.field, &w.vanishes_on, w.origin_order)).collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;

    #[test]
    fn suite_shape() {
        let d = Domain::ball(3, 1.0).unwrap();
        let s = test_function_suite(&d, 0);
        assert!(s.len() >= 20);
        let one = s.iter().find(|t| t.id == "one").unwrap();
        assert_eq!(one.phi.value(&[0.3, 0.2, 0.1]).unwrap(), 1.0);
        let b1 = s.iter().find(|t| t.id == "bump1").unwrap();
        assert!(b1.vanishes_on(Face::Sphere));
        assert!(b1.phi.value(&[0.6, 0.8, 0.0]).unwrap().abs() < 1e-15);
        let mut ids: Vec<_> = s.iter().map(|t| t.id.clone()).collect();
        ids.dedup();
        assert_eq!(ids.len(), s.len());
    }

    #[test]
    fn cutoff_vanishes_to_order() {
        let d = Domain::ball(3, 2.0).unwrap();
        for t in test_function_suite(&d, 2) {
            let near = [1e-4, 0.0, 0.0];
            let v = t.phi.value(&near).unwrap();
            assert!((v / 1e-8).abs() < 1e3, "{}", t.id);
            assert_eq!(t.origin_order, 2);
        }
        let c = origin_cutoff(2, 1.0, 2);
        assert!((c.value(&[0.9, 0.0]).unwrap() - 1.0).abs() < 0.01);
    }

    #[test]
    fn power_u_needs_cutoff() {
        let case = lookup("power").unwrap().build(&Default::default()).unwrap();
        let suite = case_suite(&case);
        let u = suite.last().unwrap();
        assert_eq!(u.id, "u*cut2");
        assert!(case.origin.for_growth(2.0, u.growth) < 3.0);
        // bounded functions need nothing
        assert_eq!(cutoff_order(&case, 0.0), Some(0));
    }

    #[test]
    fn weighted_suites_vanish_on_singular_faces() {
        for id in ["halfball-x1r", "orthant", "log", "mazya"] {
            let case = lookup(id).unwrap().build(&lookup(id).unwrap().default_params()).unwrap();
            for t in case_suite(&case) {
                for b in case.boundary.iter().filter(|b| b.singular) {
                    assert!(t.vanishes_on(b.face), "{id}/{}", t.id);
                }
            }
        }
    }
}
