//! Scalar fields on ℝⁿ as expression trees.
//!
//! Every weight, potential and test function in the crate is a [`Field`].
//! Evaluation applies the analytic first and second derivative rules of each
//! node at the query point, so values, gradients and Hessians are exact up to
//! rounding. Finite differences appear only in [`check_gradient`] and
//! [`check_hessian`], which exist to test the analytic rules.
//!
//! Fields print to and parse from a small prefix syntax, for example
//! `mul(pow(x1, 2.0), exp(x1))` or `pow(r, -0.5)`.

mod jet;
mod parse;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use jet::{Jet, Jet1, Jet2};

pub use jet::MAX_DIM;

/// Points closer than this to a node's singular set are rejected.
pub const EPS_SING: f64 = 1e-12;

/// Largest integer exponent dispatched to repeated multiplication.
const MAX_INT_EXPONENT: f64 = 1024.0;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Node {
    Const(f64),
    /// Coordinate `x_{i+1}` (stored 0-based).
    Coord(usize),
    /// `|x|`.
    Radius,
    /// `(x_k² + … + x_n²)^{1/2}`, stored with 0-based start index.
    TailRadius(usize),
    Sum(Vec<Field>),
    Product(Vec<Field>),
    Quotient(Field, Field),
    Pow(Field, f64),
    Exp(Field),
    Log(Field),
    Sinh(Field),
    Cosh(Field),
    Affine { offset: f64, terms: Vec<(f64, Field)> },
}

/// An immutable scalar field. Cloning is cheap; subtrees are shared.
#[derive(Clone, PartialEq)]
pub struct Field(Arc<Node>);

/// Which derivatives [`Field::eval`] should return.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Order {
    Value = 0,
    Gradient = 1,
    Hessian = 2,
}

/// Value and derivatives of a field at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldJet {
    pub value: f64,
    /// Empty for [`Order::Value`].
    pub gradient: Vec<f64>,
    /// Row-major n×n, present only for [`Order::Hessian`].
    pub hessian: Option<Vec<Vec<f64>>>,
}

impl FieldJet {
    pub fn laplacian(&self) -> Option<f64> {
        self.hessian
            .as_ref()
            .map(|h| (0..h.len()).map(|i| h[i][i]).sum())
    }
}

/// A set on which some node of a field is not (twice) differentiable or not
/// defined.
#[derive(Debug, Clone, PartialEq)]
pub enum SingularSet {
    /// `x_k = … = x_n = 0` (0-based `from`); `from = 0` is the origin.
    TailAxis { from: usize },
    /// Zero set of a subexpression (power base, log argument, denominator).
    ZeroOf(Field),
}

impl Field {
    fn new(node: Node) -> Self {
        Field(Arc::new(node))
    }

    pub(crate) fn node(&self) -> &Node {
        &self.0
    }

    pub fn constant(c: f64) -> Self {
        Self::new(Node::Const(c))
    }

    /// Coordinate `x_{i+1}` (`i` is 0-based).
    pub fn coord(i: usize) -> Self {
        Self::new(Node::Coord(i))
    }

    /// `r = |x|`.
    pub fn radius() -> Self {
        Self::new(Node::Radius)
    }

    /// `(x_{k+1}² + … + x_n²)^{1/2}` with 0-based `k`.
    pub fn tail_radius(k: usize) -> Self {
        Self::new(Node::TailRadius(k))
    }

    pub fn sum(terms: Vec<Field>) -> Self {
        Self::new(Node::Sum(terms))
    }

    pub fn product(factors: Vec<Field>) -> Self {
        Self::new(Node::Product(factors))
    }

    pub fn quotient(num: Field, den: Field) -> Self {
        Self::new(Node::Quotient(num, den))
    }

    pub fn affine(offset: f64, terms: Vec<(f64, Field)>) -> Self {
        Self::new(Node::Affine { offset, terms })
    }

    pub fn powf(&self, e: f64) -> Self {
        Self::new(Node::Pow(self.clone(), e))
    }

    pub fn exp(&self) -> Self {
        Self::new(Node::Exp(self.clone()))
    }

    pub fn ln(&self) -> Self {
        Self::new(Node::Log(self.clone()))
    }

    pub fn sinh(&self) -> Self {
        Self::new(Node::Sinh(self.clone()))
    }

    pub fn cosh(&self) -> Self {
        Self::new(Node::Cosh(self.clone()))
    }

    /// `x_1² + … + x_n²`, built from coordinates so it stays smooth at the origin.
    pub fn norm_squared(n: usize) -> Self {
        Self::sum((0..n).map(|i| Self::coord(i).powf(2.0)).collect())
    }

    /// `x_1 + … + x_n`.
    pub fn coord_sum(n: usize) -> Self {
        Self::affine(0.0, (0..n).map(|i| (1.0, Self::coord(i))).collect())
    }

    /// `|x|^e`, collapsing to the constant 1 when `e = 0`.
    pub fn radial_power(e: f64) -> Self {
        if e == 0.0 {
            Self::constant(1.0)
        } else {
            Self::radius().powf(e)
        }
    }

    /// Smallest dimension in which every coordinate referenced by the field exists.
    pub fn min_dim(&self) -> usize {
        match self.node() {
            Node::Const(_) | Node::Radius => 0,
            Node::Coord(i) | Node::TailRadius(i) => i + 1,
            Node::Sum(v) | Node::Product(v) => v.iter().map(Field::min_dim).max().unwrap_or(0),
            Node::Quotient(a, b) => a.min_dim().max(b.min_dim()),
            Node::Pow(a, _) | Node::Exp(a) | Node::Log(a) | Node::Sinh(a) | Node::Cosh(a) => {
                a.min_dim()
            }
            Node::Affine { terms, .. } => terms.iter().map(|(_, f)| f.min_dim()).max().unwrap_or(0),
        }
    }

    /// Union of the singular sets declared by the nodes of this field.
    pub fn singular_set(&self) -> Vec<SingularSet> {
        let mut out = Vec::new();
        self.collect_singular(&mut out);
        out
    }

    fn collect_singular(&self, out: &mut Vec<SingularSet>) {
        match self.node() {
            Node::Const(_) | Node::Coord(_) => {}
            Node::Radius => push_unique(out, SingularSet::TailAxis { from: 0 }),
            Node::TailRadius(k) => push_unique(out, SingularSet::TailAxis { from: *k }),
            Node::Sum(v) | Node::Product(v) => v.iter().for_each(|f| f.collect_singular(out)),
            Node::Affine { terms, .. } => terms.iter().for_each(|(_, f)| f.collect_singular(out)),
            Node::Quotient(a, b) => {
                a.collect_singular(out);
                b.collect_singular(out);
                push_unique(out, SingularSet::ZeroOf(b.clone()));
            }
            Node::Pow(a, e) => {
                a.collect_singular(out);
                if e.fract() != 0.0 || *e < 0.0 {
                    push_unique(out, SingularSet::ZeroOf(a.clone()));
                }
            }
            Node::Log(a) => {
                a.collect_singular(out);
                push_unique(out, SingularSet::ZeroOf(a.clone()));
            }
            Node::Exp(a) | Node::Sinh(a) | Node::Cosh(a) => a.collect_singular(out),
        }
    }

    /// Whether evaluation to the given order is rejected at `x` because `x`
    /// lies within [`EPS_SING`] of a singular set.
    pub fn is_singular_at(&self, x: &[f64], order: Order) -> bool {
        matches!(self.eval(x, order), Err(Error::SingularPoint(_)))
    }

    fn check_point(&self, x: &[f64]) -> Result<()> {
        if x.len() > MAX_DIM {
            return Err(Error::Dimension(format!(
                "point has {} coordinates, at most {MAX_DIM} supported",
                x.len()
            )));
        }
        let need = self.min_dim();
        if x.len() < need {
            return Err(Error::Dimension(format!(
                "field references coordinate {need} but point has {} coordinates",
                x.len()
            )));
        }
        Ok(())
    }

    /// Evaluates the field and the requested derivatives at `x`.
    pub fn eval(&self, x: &[f64], order: Order) -> Result<FieldJet> {
        self.check_point(x)?;
        let n = x.len();
        Ok(match order {
            Order::Value => FieldJet {
                value: eval_node::<f64>(self, x)?,
                gradient: Vec::new(),
                hessian: None,
            },
            Order::Gradient => {
                let j = eval_node::<Jet1>(self, x)?;
                FieldJet { value: j.v, gradient: j.g[..n].to_vec(), hessian: None }
            }
            Order::Hessian => {
                let j = eval_node::<Jet2>(self, x)?;
                FieldJet {
                    value: j.v,
                    gradient: j.g[..n].to_vec(),
                    hessian: Some((0..n).map(|i| j.h[i][..n].to_vec()).collect()),
                }
            }
        })
    }

    /// Value only. Cheaper than [`Field::eval`] with [`Order::Value`] since it
    /// skips the output allocation.
    #[inline]
    pub fn value(&self, x: &[f64]) -> Result<f64> {
        self.check_point(x)?;
        eval_node::<f64>(self, x)
    }

    /// Value, with the gradient written into `grad[..x.len()]`.
    #[inline]
    pub fn value_and_gradient(&self, x: &[f64], grad: &mut [f64]) -> Result<f64> {
        self.check_point(x)?;
        let j = eval_node::<Jet1>(self, x)?;
        let n = x.len();
        grad[..n].copy_from_slice(&j.g[..n]);
        Ok(j.v)
    }
}

fn push_unique(out: &mut Vec<SingularSet>, s: SingularSet) {
    if !out.contains(&s) {
        out.push(s);
    }
}

fn eval_node<J: Jet>(f: &Field, x: &[f64]) -> Result<J> {
    match f.node() {
        Node::Const(c) => Ok(J::constant(*c)),
        Node::Coord(i) => Ok(J::coord(x, *i)),
        Node::Radius => norm_jet(x, 0),
        Node::TailRadius(k) => norm_jet(x, *k),
        Node::Sum(terms) => {
            let mut acc = J::constant(0.0);
            for t in terms {
                acc = acc.add(eval_node::<J>(t, x)?);
            }
            Ok(acc)
        }
        Node::Product(factors) => {
            let mut acc = J::constant(1.0);
            for t in factors {
                acc = acc.mul(eval_node::<J>(t, x)?);
            }
            Ok(acc)
        }
        Node::Affine { offset, terms } => {
            let mut acc = J::constant(*offset);
            for (c, t) in terms {
                acc = acc.add(eval_node::<J>(t, x)?.scale(*c));
            }
            Ok(acc)
        }
        Node::Quotient(a, b) => {
            let den = eval_node::<J>(b, x)?;
            let v = den.value();
            if v.abs() < EPS_SING {
                return Err(Error::SingularPoint(format!("division by zero at {x:?}")));
            }
            let inv = den.chain(1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v));
            Ok(eval_node::<J>(a, x)?.mul(inv))
        }
        Node::Pow(base, e) => pow_jet(eval_node::<J>(base, x)?, *e, x),
        Node::Exp(a) => {
            let j = eval_node::<J>(a, x)?;
            let ev = j.value().exp();
            Ok(j.chain(ev, ev, ev))
        }
        Node::Log(a) => {
            let j = eval_node::<J>(a, x)?;
            let v = j.value();
            if v <= 0.0 {
                return Err(Error::DomainError(format!("log of non-positive argument {v} at {x:?}")));
            }
            if v < EPS_SING {
                return Err(Error::SingularPoint(format!("log argument {v} vanishes at {x:?}")));
            }
            Ok(j.chain(v.ln(), 1.0 / v, -1.0 / (v * v)))
        }
        Node::Sinh(a) => {
            let j = eval_node::<J>(a, x)?;
            let (s, c) = (j.value().sinh(), j.value().cosh());
            Ok(j.chain(s, c, s))
        }
        Node::Cosh(a) => {
            let j = eval_node::<J>(a, x)?;
            let (s, c) = (j.value().sinh(), j.value().cosh());
            Ok(j.chain(c, s, c))
        }
    }
}

#[inline]
fn norm_jet<J: Jet>(x: &[f64], start: usize) -> Result<J> {
    if start >= x.len() {
        return Err(Error::Dimension(format!(
            "partial radius starts at coordinate {} but point has {}",
            start + 1,
            x.len()
        )));
    }
    let r = x[start..].iter().map(|v| v * v).sum::<f64>().sqrt();
    if J::ORDER >= 1 && r < EPS_SING {
        return Err(Error::SingularPoint(format!(
            "radius from coordinate {} is not differentiable at {x:?}",
            start + 1
        )));
    }
    Ok(J::tail_norm(x, start, r))
}

#[inline]
fn pow_jet<J: Jet>(base: J, e: f64, x: &[f64]) -> Result<J> {
    let v = base.value();
    if e.fract() == 0.0 && e.abs() <= MAX_INT_EXPONENT {
        let k = e as i32;
        if k < 0 && v.abs() < EPS_SING {
            return Err(Error::SingularPoint(format!("negative power {k} of zero at {x:?}")));
        }
        let g0 = v.powi(k);
        let g1 = match k {
            0 => 0.0,
            1 => 1.0,
            _ => e * v.powi(k - 1),
        };
        let g2 = match k {
            0 | 1 => 0.0,
            2 => 2.0,
            _ => e * (e - 1.0) * v.powi(k - 2),
        };
        return Ok(base.chain(g0, g1, g2));
    }
    if v < -EPS_SING {
        return Err(Error::DomainError(format!(
            "real exponent {e} of negative base {v} at {x:?}"
        )));
    }
    if v.abs() <= EPS_SING {
        let order = J::ORDER;
        if e < 0.0 || (order >= 1 && e < 1.0) || (order >= 2 && e < 2.0) {
            return Err(Error::SingularPoint(format!(
                "power {e} of a vanishing base at {x:?}"
            )));
        }
        return Ok(base.chain(0.0, 0.0, 0.0));
    }
    let g0 = v.powf(e);
    let g1 = e * g0 / v;
    let g2 = e * (e - 1.0) * g0 / (v * v);
    Ok(base.chain(g0, g1, g2))
}

/// Max over components of `|analytic − central difference| / (1 + |analytic|)`.
pub fn check_gradient(field: &Field, x: &[f64], h: f64) -> Result<f64> {
    let jet = field.eval(x, Order::Gradient)?;
    let mut xp = x.to_vec();
    let mut worst: f64 = 0.0;
    for i in 0..x.len() {
        xp[i] = x[i] + h;
        let fp = field.value(&xp)?;
        xp[i] = x[i] - h;
        let fm = field.value(&xp)?;
        xp[i] = x[i];
        let fd = (fp - fm) / (2.0 * h);
        worst = worst.max((jet.gradient[i] - fd).abs() / (1.0 + jet.gradient[i].abs()));
    }
    Ok(worst)
}

/// Max over entries of `|analytic − second-order central difference| / (1 + |analytic|)`.
pub fn check_hessian(field: &Field, x: &[f64], h: f64) -> Result<f64> {
    let jet = field.eval(x, Order::Hessian)?;
    let hess = jet.hessian.expect("order 2 requested");
    let n = x.len();
    let mut worst: f64 = 0.0;
    let mut xp = x.to_vec();
    for i in 0..n {
        for k in 0..n {
            let fd = if i == k {
                xp[i] = x[i] + h;
                let fp = field.value(&xp)?;
                xp[i] = x[i] - h;
                let fm = field.value(&xp)?;
                xp[i] = x[i];
                (fp - 2.0 * jet.value + fm) / (h * h)
            } else {
                let mut corner = |si: f64, sk: f64| -> Result<f64> {
                    xp[i] = x[i] + si * h;
                    xp[k] = x[k] + sk * h;
                    let v = field.value(&xp);
                    xp[i] = x[i];
                    xp[k] = x[k];
                    v
                };
                let pp = corner(1.0, 1.0)?;
                let pm = corner(1.0, -1.0)?;
                let mp = corner(-1.0, 1.0)?;
                let mm = corner(-1.0, -1.0)?;
                (pp - pm - mp + mm) / (4.0 * h * h)
            };
            worst = worst.max((hess[i][k] - fd).abs() / (1.0 + hess[i][k].abs()));
        }
    }
    Ok(worst)
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({self})")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list(f: &mut fmt::Formatter<'_>, name: &str, items: &[Field]) -> fmt::Result {
            write!(f, "{name}(")?;
            for (i, it) in items.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{it}")?;
            }
            f.write_str(")")
        }
        match self.node() {
            Node::Const(c) => write!(f, "{c:?}"),
            Node::Coord(i) => write!(f, "x{}", i + 1),
            Node::Radius => f.write_str("r"),
            Node::TailRadius(k) => write!(f, "rtail({})", k + 1),
            Node::Sum(v) => list(f, "add", v),
            Node::Product(v) => list(f, "mul", v),
            Node::Quotient(a, b) => write!(f, "div({a}, {b})"),
            Node::Pow(a, e) => write!(f, "pow({a}, {e:?})"),
            Node::Exp(a) => write!(f, "exp({a})"),
            Node::Log(a) => write!(f, "log({a})"),
            Node::Sinh(a) => write!(f, "sinh({a})"),
            Node::Cosh(a) => write!(f, "cosh({a})"),
            Node::Affine { offset, terms } => {
                write!(f, "affine({offset:?}")?;
                for (c, t) in terms {
                    write!(f, ", {c:?}, {t}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse::parse(s)
    }
}

impl From<f64> for Field {
    fn from(c: f64) -> Self {
        Field::constant(c)
    }
}

impl Add for Field {
    type Output = Field;
    fn add(self, rhs: Field) -> Field {
        Field::sum(vec![self, rhs])
    }
}

impl Add<f64> for Field {
    type Output = Field;
    fn add(self, rhs: f64) -> Field {
        Field::affine(rhs, vec![(1.0, self)])
    }
}

impl Sub for Field {
    type Output = Field;
    fn sub(self, rhs: Field) -> Field {
        Field::affine(0.0, vec![(1.0, self), (-1.0, rhs)])
    }
}

impl Sub<f64> for Field {
    type Output = Field;
    fn sub(self, rhs: f64) -> Field {
        self + (-rhs)
    }
}

impl Mul for Field {
    type Output = Field;
    fn mul(self, rhs: Field) -> Field {
        Field::product(vec![self, rhs])
    }
}

impl Mul<f64> for Field {
    type Output = Field;
    fn mul(self, rhs: f64) -> Field {
        Field::affine(0.0, vec![(rhs, self)])
    }
}

impl Mul<Field> for f64 {
    type Output = Field;
    fn mul(self, rhs: Field) -> Field {
        rhs * self
    }
}

impl Div for Field {
    type Output = Field;
    fn div(self, rhs: Field) -> Field {
        Field::quotient(self, rhs)
    }
}

impl Neg for Field {
    type Output = Field;
    fn neg(self) -> Field {
        self * -1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn inverse_sqrt_radius_on_unit_vector() {
        let f = Field::radius().powf(-0.5);
        let j = f.eval(&[1.0, 0.0, 0.0], Order::Gradient).unwrap();
        assert_relative_eq!(j.value, 1.0);
        assert_relative_eq!(j.gradient[0], -0.5);
        assert_eq!(j.gradient[1], 0.0);
        assert_eq!(j.gradient[2], 0.0);
    }

    #[test]
    fn squared_radius_hessian_is_twice_identity() {
        let f = Field::radius().powf(2.0);
        let j = f.eval(&[1.0, 1.0, 1.0], Order::Hessian).unwrap();
        assert_relative_eq!(j.value, 3.0, epsilon = 1e-14);
        for g in &j.gradient {
            assert_relative_eq!(*g, 2.0, epsilon = 1e-14);
        }
        let h = j.hessian.unwrap();
        for i in 0..3 {
            for k in 0..3 {
                let want = if i == k { 2.0 } else { 0.0 };
                assert!((h[i][k] - want).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn power_sinh_weight_matches_finite_differences() {
        // |x|^α sinh^γ|x| with α = 1, γ = 2 at a unit point.
        let r = Field::radius();
        let f = r.clone().powf(1.0) * r.sinh().powf(2.0);
        let x = [0.6, 0.8];
        let j = f.eval(&x, Order::Gradient).unwrap();
        assert_relative_eq!(j.value, 1f64.sinh().powi(2), max_relative = 1e-12);
        assert_relative_eq!(j.value, 1.38109, max_relative = 1e-5);
        for i in 0..2 {
            let h = 1e-6;
            let mut xp = x;
            xp[i] += h;
            let mut xm = x;
            xm[i] -= h;
            let fd = (f.value(&xp).unwrap() - f.value(&xm).unwrap()) / (2.0 * h);
            assert_relative_eq!(j.gradient[i], fd, max_relative = 1e-6);
        }
    }

    #[test]
    fn gradient_checks() {
        let e = Field::coord(0).exp();
        assert!(check_gradient(&e, &[0.0; 4], 1e-6).unwrap() < 1e-9);

        let log = (Field::constant(1.0) / Field::coord(0)).ln();
        assert!(check_gradient(&log, &[0.5, 0.2, -0.1], 1e-6).unwrap() < 1e-8);

        let hardy_u = Field::radius().powf(-0.5);
        assert!(check_gradient(&hardy_u, &[0.3, 0.4, 0.0], 1e-6).unwrap() < 1e-6);
    }

    #[test]
    fn singular_points_are_errors_not_nan() {
        let f = Field::radius().powf(-0.5);
        assert!(matches!(f.value(&[0.0, 0.0]), Err(Error::SingularPoint(_))));
        assert!(matches!(f.value(&[1e-13, 0.0]), Err(Error::SingularPoint(_))));
        assert!(f.is_singular_at(&[0.0, 0.0], Order::Value));

        // r itself is continuous at 0 but has no gradient there
        assert_eq!(Field::radius().value(&[0.0, 0.0]).unwrap(), 0.0);
        assert!(Field::radius().eval(&[0.0, 0.0], Order::Gradient).is_err());

        let log = Field::coord(0).ln();
        assert!(matches!(log.value(&[-1.0]), Err(Error::DomainError(_))));
        assert!(matches!(log.value(&[1e-14]), Err(Error::SingularPoint(_))));

        let neg = Field::coord(0).powf(0.5);
        assert!(matches!(neg.value(&[-0.5]), Err(Error::DomainError(_))));
        // integer exponents accept negative bases
        assert_eq!(Field::coord(0).powf(3.0).value(&[-2.0]).unwrap(), -8.0);
    }

    #[test]
    fn vanishing_base_with_smooth_power_is_allowed() {
        let f = Field::coord(0).powf(2.5);
        let j = f.eval(&[0.0, 1.0], Order::Hessian).unwrap();
        assert_eq!(j.value, 0.0);
        assert_eq!(j.gradient, vec![0.0, 0.0]);
        let g = Field::coord(0).powf(1.5);
        assert!(g.eval(&[0.0, 1.0], Order::Gradient).is_ok());
        assert!(g.eval(&[0.0, 1.0], Order::Hessian).is_err());
    }

    #[test]
    fn singular_set_is_unioned() {
        let f = Field::radius().powf(-1.0) * (Field::constant(2.0) - Field::coord(0)).ln();
        let s = f.singular_set();
        assert!(s.contains(&SingularSet::TailAxis { from: 0 }));
        assert_eq!(s.len(), 3);
    }

    #[test]
    fn dimension_is_checked() {
        let f = Field::coord(3);
        assert!(matches!(f.value(&[1.0, 2.0]), Err(Error::Dimension(_))));
        assert!(f.value(&[0.0; 9]).is_err());
    }

    #[test]
    fn repeated_evaluation_is_bit_identical() {
        let f: Field = "mul(pow(r, -0.7), sinh(add(x1, x2)), exp(x3))".parse().unwrap();
        let x = [0.3, -0.2, 0.9];
        let a = f.eval(&x, Order::Hessian).unwrap();
        let b = f.eval(&x, Order::Hessian).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a, b);
    }
}
