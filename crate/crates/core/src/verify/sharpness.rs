use serde::Serialize;

use super::{verify_case, TestFunction};
use crate::catalog::HardyCase;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::geometry::{Face, QuadratureSpec};

/// Default `ε` sequence for [`power_family`].
pub const DEFAULT_EPSILONS: [f64; 7] = [0.4, 0.2, 0.1, 0.05, 0.02, 0.01, 0.005];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuotientPoint {
    pub phi_id: String,
    pub quotient: f64,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SharpnessReport {
    pub case_id: String,
    pub term: String,
    /// The case's own constant for the selected term.
    pub constant: f64,
    pub quotients: Vec<QuotientPoint>,
    /// Running minimum over the family.
    pub min_quotient: f64,
}

/// `φ_ε = u·|x|^ε·(1 − |x/R|²)` for each `ε`, times the case's test weight.
pub fn power_family(case: &HardyCase, eps: &[f64]) -> Vec<TestFunction> {
    let n = case.domain.dim();
    let r = case.domain.radius();
    let bump = Field::affine(1.0, vec![(-1.0 / (r * r), Field::norm_squared(n))]);
    eps.iter()
        .map(|&e| {
            let phi = case.u.clone() * Field::radial_power(e) * bump.clone();
            let mut t = TestFunction::new(format!("eps={e}"), phi).vanishing_on(&[Face::Sphere]);
            t.growth = case.origin.u_growth - e;
            if let Some(w) = &case.test_weight {
                t = t.times(&w.field, &w.vanishes_on, w.origin_order);
            }
            t
        })
        .collect()
}

/// Quotients `(LHS − other terms)/∫ weight|φ|^p` for the interior term
/// `term`, one per family member, in family order. No extrapolation.
pub fn estimate_best_constant(
    case: &HardyCase,
    term: usize,
    family: &[TestFunction],
    q: &QuadratureSpec,
) -> Result<SharpnessReport> {
    let sel = case.interior.get(term).ok_or_else(|| {
        Error::Config(format!("case '{}' has {} interior terms; no term {term}", case.id, case.interior.len()))
    })?;
    if sel.constant == 0.0 {
        return Err(Error::DegenerateDenominator(0.0));
    }
    let mut quotients = Vec::with_capacity(family.len());
    for phi in family {
        let rep = verify_case(case, phi, q, false)?;
        let den = rep.rhs_interior[term].result.scaled(1.0 / sel.constant);
        if !(den.value > 0.0) {
            return Err(Error::DegenerateDenominator(den.value));
        }
        let mut num = rep.lhs.value;
        let mut num_err = rep.lhs.error_estimate;
        for (_, t) in rep.rhs_interior.iter().enumerate().filter(|(i, _)| *i != term) {
            num -= t.result.value;
            num_err += t.result.error_estimate;
        }
        for t in &rep.rhs_boundary {
            num -= t.result.value;
            num_err += t.result.error_estimate;
        }
        let qv = num / den.value;
        quotients.push(QuotientPoint {
            phi_id: phi.id.clone(),
            quotient: qv,
            error: (num_err + qv.abs() * den.error_estimate) / den.value,
        });
    }
    let min_quotient = quotients.iter().map(|p| p.quotient).fold(f64::INFINITY, f64::min);
    Ok(SharpnessReport { case_id: case.id.to_string(), term: sel.label.clone(), constant: sel.constant, quotients, min_quotient })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{lookup, CaseParams};

    /// Exact quotient for `r^{-e}(1 − r²)` on the unit ball in ℝ³ against `1/|x|²`.
    fn analytic(eps: f64) -> f64 {
        let e = 0.5 - eps;
        let d = 1.0 / (1.0 - 2.0 * e) - 2.0 / (3.0 - 2.0 * e) + 1.0 / (5.0 - 2.0 * e);
        e * e + (4.0 * e * (1.0 / (3.0 - 2.0 * e) - 1.0 / (5.0 - 2.0 * e)) + 4.0 / (5.0 - 2.0 * e)) / d
    }

    #[test]
    fn classical_quotients_match_closed_form() {
        let case = lookup("power").unwrap().build(&CaseParams::default()).unwrap();
        let q: QuadratureSpec = "radial:32:mc:64".parse().unwrap();
        let eps = [0.4, 0.2, 0.1, 0.05];
        let rep = estimate_best_constant(&case, 0, &power_family(&case, &eps), &q).unwrap();
        for (pt, &e) in rep.quotients.iter().zip(&eps) {
            assert!((pt.quotient - analytic(e)).abs() < 1e-8, "{e}: {} vs {}", pt.quotient, analytic(e));
            assert!(pt.quotient >= 0.25);
        }
        assert_eq!(rep.constant, 0.25);
    }

    #[test]
    fn constant_function_is_not_clamped() {
        let case = lookup("power").unwrap().build(&CaseParams::default()).unwrap();
        let one = TestFunction::new("one", Field::constant(1.0));
        let q: QuadratureSpec = "radial:16:mc:64".parse().unwrap();
        let rep = estimate_best_constant(&case, 0, &[one], &q).unwrap();
        // LHS = 0, boundary term −2π, denominator 4π
        assert!((rep.min_quotient - 0.5).abs() < 1e-9, "{}", rep.min_quotient);
    }

    #[test]
    fn degenerate_denominator() {
        let case = lookup("exp-x1-b").unwrap().build(&Default::default()).unwrap();
        let q: QuadratureSpec = "mc:100".parse().unwrap();
        assert!(estimate_best_constant(&case, 0, &[], &q).is_err());
    }
}
