//! Radial Gauss rules with cached nodes.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use gauss_quad::{GaussJacobi, GaussLegendre};

use crate::error::{Error, Result};

type Rule = Vec<(f64, f64)>;

fn cache() -> &'static Mutex<HashMap<(usize, u64), Rule>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u64), Rule>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Odd-degree Jacobi rules from the backing crate pin the middle node to 0,
/// which is only right for symmetric weights, so degrees are kept even.
fn even(k: usize) -> usize {
    (k + k % 2).max(2)
}

pub(super) fn coarse_degree(k: usize) -> usize {
    even(even(k) / 2)
}

/// Nodes and weights on [-1, 1] for the weight `(1+x)^beta`.
fn reference_rule(degree: usize, beta: f64) -> Result<Rule> {
    let key = (degree, beta.to_bits());
    if let Some(r) = cache().lock().expect("rule cache poisoned").get(&key) {
        return Ok(r.clone());
    }
    let rule: Rule = if beta == 0.0 {
        GaussLegendre::new(degree)
            .map_err(|e| Error::Config(format!("Gauss-Legendre rule: {e}")))?
            .as_node_weight_pairs()
            .to_vec()
    } else {
        GaussJacobi::new(degree, 0.0, beta)
            .map_err(|e| Error::Config(format!("Gauss-Jacobi rule: {e}")))?
            .as_node_weight_pairs()
            .to_vec()
    };
    cache().lock().expect("rule cache poisoned").insert(key, rule.clone());
    Ok(rule)
}

/// Pairs `(r_j, W_j)` with `Σ W_j g(r_j) ≈ ∫_{inner}^{outer} r^{k-1} g(r) dr`.
///
/// With `inner = 0` the weight `r^{k-1-s}` is integrated exactly, so `g` may
/// grow like `r^{-s}` at the origin.
pub(super) fn radial_rule(nodes: usize, k: usize, s: f64, inner: f64, outer: f64) -> Result<Rule> {
    let degree = even(nodes);
    let km1 = k as f64 - 1.0;
    if inner == 0.0 {
        let beta = km1 - s;
        let scale = (outer / 2.0).powf(beta + 1.0);
        Ok(reference_rule(degree, beta)?
            .into_iter()
            .map(|(x, w)| {
                let r = outer * (1.0 + x) / 2.0;
                (r, scale * w * r.powf(s))
            })
            .collect())
    } else {
        let half = (outer - inner) / 2.0;
        Ok(reference_rule(degree, 0.0)?
            .into_iter()
            .map(|(x, w)| {
                let r = inner + half * (1.0 + x);
                (r, half * w * r.powf(km1))
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_rule_integrates_singular_weights() {
        // ∫_0^2 r^{2} r^{-2.5} r^2 dr with k = 3, s = 2.5, g = r^{-2.5}·r^2
        let rule = radial_rule(16, 3, 2.5, 0.0, 2.0).unwrap();
        let approx: f64 = rule.iter().map(|(r, w)| w * r.powf(-0.5)).sum();
        let exact = 2f64.powf(2.0 - 0.5 + 1.0) / 2.5;
        assert!((approx - exact).abs() < 1e-12 * exact, "{approx} vs {exact}");
    }

    #[test]
    fn shell_rule_integrates_polynomials() {
        let rule = radial_rule(8, 4, 0.0, 0.5, 1.0).unwrap();
        let approx: f64 = rule.iter().map(|(r, w)| w * r * r).sum();
        let exact = (1.0 - 0.5f64.powi(6)) / 6.0;
        assert!((approx - exact).abs() < 1e-14);
    }

    #[test]
    fn degrees_stay_even() {
        assert_eq!(even(7), 8);
        assert_eq!(coarse_degree(256), 128);
        assert_eq!(coarse_degree(6), 4);
        assert_eq!(coarse_degree(2), 2);
    }
}
