use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{BoundaryTerm, CaseEntry, CaseParams, HardyCase, InteriorTerm, OriginExponents, TermKind, TestWeight};
use crate::error::Result;
use crate::field::Field;
use crate::geometry::{Domain, Face};

fn r() -> Field {
    Field::radius()
}

fn rpow(e: f64) -> Field {
    Field::radial_power(e)
}

/// `f^e`, collapsing `e = 0` to the constant 1 and `e = 1` to `f`.
fn pw(f: Field, e: f64) -> Field {
    if e == 0.0 {
        Field::constant(1.0)
    } else if e == 1.0 {
        f
    } else {
        f.powf(e)
    }
}

fn x(i: usize) -> Field {
    Field::coord(i)
}

fn eq(label: &str, constant: f64, weight: Field) -> InteriorTerm {
    InteriorTerm { label: label.to_string(), constant, weight, kind: TermKind::Equality }
}

fn sphere(beta: Field) -> BoundaryTerm {
    BoundaryTerm { face: Face::Sphere, beta, singular: false }
}

fn ball(p: &CaseParams) -> Result<Domain> {
    Domain::ball(p.n, p.radius)
}

fn base(id: &'static str, p: &CaseParams, a: Field, u: Field, domain: Domain) -> HardyCase {
    let entry = ENTRIES.iter().find(|e| e.id == id).expect("registered id");
    HardyCase {
        id,
        params: *p,
        a,
        u,
        interior: Vec::new(),
        boundary: Vec::new(),
        domain,
        hypothesis: entry.hypothesis,
        label: entry.label,
        notes: Vec::new(),
        origin: OriginExponents::REGULAR,
        test_weight: None,
        clip: None,
    }
}

fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo..hi)
}

fn dim(rng: &mut ChaCha8Rng, lo: usize, hi: usize) -> usize {
    rng.gen_range(lo..=hi)
}

fn keep(_: &mut CaseParams) {}

// 1. |x|^α weight with the power solution

fn power_valid(p: &CaseParams) -> bool {
    p.n as f64 + p.alpha > p.p && p.p > 1.0
}

fn power(p: &CaseParams) -> Result<HardyCase> {
    let k = (p.n as f64 + p.alpha - p.p) / p.p;
    let mut c = base("power", p, rpow(p.alpha), rpow(-k), ball(p)?);
    c.interior.push(eq("k^p |x|^(α−p)", k.powf(p.p), rpow(p.alpha - p.p)));
    c.boundary.push(sphere(Field::constant(-k.powf(p.p - 1.0) * p.radius.powf(p.alpha - p.p + 1.0))));
    c.origin = OriginExponents { interior: p.p - p.alpha, gradient: -p.alpha, u_growth: k };
    Ok(c)
}

fn power_sample(rng: &mut ChaCha8Rng) -> CaseParams {
    let n = dim(rng, 2, 6);
    let pp = uniform(rng, 1.2, 4.0);
    let alpha = uniform(rng, pp - n as f64 + 0.1, pp - n as f64 + 3.0);
    CaseParams { n, p: pp, alpha, ..CaseParams::default() }
}

// 2. |x|^α sinh^γ|x|

fn sinh_defaults(p: &mut CaseParams) {
    p.gamma = 1.0;
}

fn sinh_valid(p: &CaseParams) -> bool {
    p.gamma >= 0.0 && p.n as f64 + p.alpha + p.gamma > p.p && p.p > 1.0
}

fn sinh(p: &CaseParams) -> Result<HardyCase> {
    let k = (p.n as f64 + p.alpha + p.gamma - p.p) / p.p;
    let a = rpow(p.alpha) * pw(r().sinh(), p.gamma);
    let mut c = base("sinh", p, a, rpow(-k), ball(p)?);
    c.interior.push(InteriorTerm {
        label: "k^p |x|^(α−p) sinh^γ|x|".into(),
        constant: k.powf(p.p),
        weight: rpow(p.alpha - p.p) * pw(r().sinh(), p.gamma),
        kind: TermKind::Supersolution,
    });
    let beta = -k.powf(p.p - 1.0) * p.radius.sinh().powf(p.gamma) * p.radius.powf(p.alpha + 1.0 - p.p);
    c.boundary.push(sphere(Field::constant(beta)));
    c.origin = OriginExponents { interior: p.p - p.alpha - p.gamma, gradient: -p.alpha - p.gamma, u_growth: k };
    c.notes.push("the surplus k^(p−1) γ (|x|coth|x| − 1)|x|^(α−p) sinh^γ|x| ≥ 0 is dropped from b".into());
    Ok(c)
}

fn sinh_sample(rng: &mut ChaCha8Rng) -> CaseParams {
    let n = dim(rng, 2, 5);
    let pp = uniform(rng, 1.2, 3.5);
    let gamma = uniform(rng, 0.0, 2.0);
    let alpha = uniform(rng, pp - n as f64 - gamma + 0.1, pp - n as f64 - gamma + 2.5);
    CaseParams { n, p: pp, alpha, gamma, ..CaseParams::default() }
}

// 3./4. (s + t|x|^α)^γ / |x|^{pm}

fn gm_weight(p: &CaseParams) -> Field {
    Field::affine(p.s, vec![(p.t, rpow(p.alpha))])
}

fn gm_exponents(p: &CaseParams, c: f64, u_growth: f64) -> OriginExponents {
    let ag = if p.alpha < 0.0 { p.alpha * p.gamma } else { 0.0 };
    let interior = if c == 0.0 { 0.0 } else { p.m * p.p + p.p - ag };
    OriginExponents { interior, gradient: p.m * p.p - ag, u_growth }
}

fn gm_pos_defaults(p: &mut CaseParams) {
    p.alpha = 1.0;
    p.gamma = 1.0;
}

fn gm_pos_valid(p: &CaseParams) -> bool {
    p.s > 0.0 && p.t > 0.0 && p.alpha * p.gamma > 0.0 && p.p > 1.0 && p.p <= p.n as f64 - p.p * p.m
}

fn gm_positive(p: &CaseParams) -> Result<HardyCase> {
    let pm = p.p * p.m;
    let cc = (p.n as f64 - pm - p.p) / p.p;
    let g = gm_weight(p);
    let a = pw(g.clone(), p.gamma) * rpow(-pm);
    let mut c = base("gm-positive", p, a, rpow(-cc), ball(p)?);
    c.interior.push(eq("C^p g^γ |x|^(−pm−p)", cc.powf(p.p), pw(g.clone(), p.gamma) * rpow(-pm - p.p)));
    c.interior.push(eq(
        "C^(p−1) αγt g^(γ−1) |x|^(α−pm−p)",
        cc.powf(p.p - 1.0) * p.alpha * p.gamma * p.t,
        pw(g, p.gamma - 1.0) * rpow(p.alpha - pm - p.p),
    ));
    let gr = p.s + p.t * p.radius.powf(p.alpha);
    c.boundary.push(sphere(Field::constant(-cc.powf(p.p - 1.0) * gr.powf(p.gamma) * p.radius.powf(1.0 - pm - p.p))));
    c.origin = gm_exponents(p, cc, cc);
    c.notes.push("with the αγt cross term included, b is an exact identity rather than a lower bound".into());
    Ok(c)
}

fn gm_sample_common(rng: &mut ChaCha8Rng, same_sign: bool) -> CaseParams {
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let alpha = sign * uniform(rng, 0.5, 1.5);
    let gamma = if same_sign { sign } else { -sign } * uniform(rng, 0.5, 1.5);
    CaseParams {
        alpha,
        gamma,
        s: uniform(rng, 0.5, 2.0),
        t: uniform(rng, 0.5, 2.0),
        ..CaseParams::default()
    }
}

fn gm_pos_sample(rng: &mut ChaCha8Rng) -> CaseParams {
    let mut c = gm_sample_common(rng, true);
    c.n = dim(rng, 3, 6);
    c.p = uniform(rng, 1.2, 2.5);
    let m_max = (c.n as f64 - c.p) / c.p;
    c.m = uniform(rng, m_max - 1.5, m_max);
    c
}

fn gm_neg_defaults(p: &mut CaseParams) {
    p.alpha = 1.0;
    p.gamma = -1.0;
    p.m = -0.5;
}

fn gm_neg_valid(p: &CaseParams) -> bool {
    p.s > 0.0
        && p.t > 0.0
        && p.alpha * p.gamma < 0.0
        && p.p > 1.0
        && p.p <= p.n as f64 + p.alpha * p.gamma - p.p * p.m
}

fn gm_negative(p: &CaseParams) -> Result<HardyCase> {
    let pm = p.p * p.m;
    let ag = p.alpha * p.gamma;
    let cc = (p.n as f64 + ag - pm - p.p) / p.p;
    let g = gm_weight(p);
    let a = pw(g.clone(), p.gamma) * rpow(-pm);
    let mut c = base("gm-negative", p, a, rpow(-cc), ball(p)?);
    c.interior.push(eq("C'^p g^γ |x|^(−pm−p)", cc.powf(p.p), pw(g.clone(), p.gamma) * rpow(-pm - p.p)));
    c.interior.push(eq(
        "−C'^(p−1) αγs g^(γ−1) |x|^(−pm−p)",
        -cc.powf(p.p - 1.0) * ag * p.s,
        pw(g, p.gamma - 1.0) * rpow(-pm - p.p),
    ));
    let gr = p.s + p.t * p.radius.powf(p.alpha);
    c.boundary.push(sphere(Field::constant(-cc.powf(p.p - 1.0) * gr.powf(p.gamma) * p.radius.powf(1.0 - pm - p.p))));
    c.origin = gm_exponents(p, cc, cc);
    Ok(c)
}

fn gm_neg_sample(rng: &mut ChaCha8Rng) -> CaseParams {
    let mut c = gm_sample_common(rng, false);
    c.n = dim(rng, 3, 6);
    c.p = uniform(rng, 1.2, 2.5);
    let m_max = (c.n as f64 + c.alpha * c.gamma - c.p) / c.p;
    c.m = uniform(rng, m_max - 1.5, m_max);
    c
}

// 5. (1 + |x|^{p/(p−1)})^{α(p−1)}

fn q_exponent(p: f64) -> f64 {
    p / (p - 1.0)
}

fn h_field(p: f64) -> Field {
    Field::affine(1.0, vec![(1.0, rpow(q_exponent(p)))])
}

fn skrz_defaults(p: &mut CaseParams) {
    p.alpha = 2.0;
}

fn skrz_valid(p: &CaseParams) -> bool {
    p.p > 1.0 && p.p < p.n as f64 && p.alpha > 1.0
}

fn skrzypczak(p: &CaseParams) -> Result<HardyCase> {
    let h = h_field(p.p);
    let k = (p.p * (p.alpha - 1.0) / (p.p - 1.0)).powf(p.p - 1.0);
    let e = (p.alpha - 1.0) * (p.p - 1.0);
    let mut c = base("skrzypczak", p, pw(h.clone(), p.alpha * (p.p - 1.0)), pw(h.clone(), 1.0 - p.alpha), ball(p)?);
    c.interior.push(eq("nK h^((α−1)(p−1))", p.n as f64 * k, pw(h, e)));
    let hr = 1.0 + p.radius.powf(q_exponent(p.p));
    c.boundary.push(sphere(Field::constant(-k * p.radius * hr.powf(e))));
    c.notes.push("the flux a|∇u|^(p−2)∇u equals −K x, so b is constant times u^(1−p)".into());
    Ok(c)
}

fn skrz_sample(rng: &mut ChaCha8Rng) -> CaseParams {
    let n = dim(rng, 2, 6);
    let pp = uniform(rng, 1.2, (n as f64).min(4.0) - 0.05);
    CaseParams { n, p: pp, alpha: uniform(rng, 1.1, 3.0), ..CaseParams::default() }
}

// 6. |x|^α with u = (1 + |x|^{p/(p−1)})^{−(n+α−p)/p}

fn linearized_sobolev(p: &CaseParams) -> Result<HardyCase> {
    let nf = p.n as f64;
    let k = (nf + p.alpha - p.p) / p.p;
    let k1 = (nf + p.alpha - p.p) / (p.p - 1.0);
    let h = h_field(p.p);
    let mut c = base("linearized-sobolev", p, rpow(p.alpha), pw(h.clone(), -k), ball(p)?);
    c.interior.push(eq(
        "K^(p−1)(n+α)|x|^α h^(−p)",
        k1.powf(p.p - 1.0) * (nf + p.alpha),
        rpow(p.alpha) * pw(h, -p.p),
    ));
    let hr = 1.0 + p.radius.powf(q_exponent(p.p));
    c.boundary.push(sphere(Field::constant(
        -k1.powf(p.p - 1.0) * p.radius.powf(p.alpha + 1.0) * hr.powf(1.0 - p.p),
    )));
    let s = (-p.alpha).max(0.0);
    c.origin = OriginExponents { interior: s, gradient: s, u_growth: 0.0 };
    c.notes.push("β = −((n+α−p)/(p−1))^(p−1) R^(α+1) (1+R^(p/(p−1)))^(1−p), derived from the flux".into());
    Ok(c)
}

// 7.–9. exponential weights in x₁

fn exp_alpha_one(p: &mut CaseParams) {
    p.alpha = 1.0;
}

fn exp_x1_a_valid(p: &CaseParams) -> bool {
    p.alpha > 0.0 && p.p > 1.0
}

fn exp_x1(alpha: f64) -> Field {
    (x(0) * alpha).exp()
}

fn exp_x1_a(p: &CaseParams) -> Result<HardyCase> {
    let a = exp_x1(p.alpha) * (1.0 / p.alpha.powf(p.p - 1.0));
    let mut c = base("exp-x1-a", p, a, exp_x1(p.alpha), ball(p)?);
    c.interior.push(eq("−αp e^(αx₁)", -p.alpha * p.p, exp_x1(p.alpha)));
    c.boundary.push(sphere(x(0) * (1.0 / p.radius) * exp_x1(p.alpha)));
    Ok(c)
}

fn exp_x1_a_sample(rng: &mut ChaCha8Rng) -> CaseParams {
    CaseParams { n: dim(rng, 2, 6), p: uniform(rng, 1.2, 4.0), alpha: uniform(rng, 0.2, 2.0), ..CaseParams::default() }
}

fn p_valid(p: &CaseParams) -> bool {
    p.p > 1.0
}

fn exp_x1_b(p: &CaseParams) -> Result<HardyCase> {
    let a = exp_x1(p.alpha * (1.0 - p.p));
    let mut c = base("exp-x1-b", p, a.clone(), exp_x1(p.alpha), ball(p)?);
    let coeff = if p.alpha == 0.0 { 0.0 } else { p.alpha * p.alpha.abs().powf(p.p - 2.0) };
    c.boundary.push(sphere(x(0) * (coeff / p.radius) * a));
    Ok(c)
}

fn exp_x1_b_sample(rng: &mut ChaCha8Rng) -> CaseParams {
    CaseParams { n: dim(rng, 2, 6), p: uniform(rng, 1.2, 4.0), alpha: uniform(rng, -2.0, 2.0), ..CaseParams::default() }
}

fn exp_x1_c(p: &CaseParams) -> Result<HardyCase> {
    let a = exp_x1(-p.p);
    let mut c = base("exp-x1-c", p, a.clone(), exp_x1(1.0), ball(p)?);
    c.interior.push(eq("e^(−px₁)", 1.0, a.clone()));
    c.boundary.push(sphere(x(0) * (1.0 / p.radius) * a));
    Ok(c)
}

fn p_sample(rng: &mut ChaCha8Rng) -> CaseParams {
    CaseParams { n: dim(rng, 2, 6), p: uniform(rng, 1.2, 4.0), ..CaseParams::default() }
}

// 10./11. e^{x₁+⋯+xₙ}

fn exp_sum(n: usize) -> Field {
    Field::coord_sum(n).exp()
}

fn exp_sum_a(p: &CaseParams) -> Result<HardyCase> {
    let nf = p.n as f64;
    let mut c = base("exp-sum-a", p, Field::constant(1.0), exp_sum(p.n), ball(p)?);
    c.interior.push(eq("(1−p)n^(p/2)", (1.0 - p.p) * nf.powf(p.p / 2.0), Field::constant(1.0)));
    c.boundary.push(sphere(Field::coord_sum(p.n) * (nf.powf((p.p - 2.0) / 2.0) / p.radius)));
    c.notes.push("the interior constant (1−p)n^(p/2) is negative for every p > 1".into());
    Ok(c)
}

fn exp_sum_b(p: &CaseParams) -> Result<HardyCase> {
    let nf = p.n as f64;
    let e = exp_sum(p.n);
    let mut c = base("exp-sum-b", p, e.clone(), e.clone(), ball(p)?);
    c.interior.push(eq("−pn^(p/2) e^(Σx)", -p.p * nf.powf(p.p / 2.0), e.clone()));
    c.boundary.push(sphere(Field::coord_sum(p.n) * (nf.powf((p.p - 2.0) / 2.0) / p.radius) * e));
    Ok(c)
}

// 12. half ball, u = x₁|x|

fn p_two(p: &CaseParams) -> bool {
    p.p == 2.0
}

fn halfball(p: &CaseParams) -> Result<HardyCase> {
    let d = ball(p)?.with_positive(&[0])?;
    let mut c = base("halfball-x1r", p, Field::constant(1.0), x(0) * r(), d);
    c.interior.push(eq("−(n+1)|x|^(−2)", -(p.n as f64 + 1.0), rpow(-2.0)));
    c.boundary.push(sphere(Field::constant(2.0 / p.radius)));
    c.boundary.push(BoundaryTerm { face: Face::Flat(0), beta: x(0).powf(-1.0) * -1.0, singular: true });
    c.test_weight = Some(TestWeight {
        field: x(0) * (1.0 / p.radius),
        vanishes_on: vec![Face::Flat(0)],
        origin_order: 1,
        description: "x₁/R",
    });
    c.notes.push("β = 2/R on the sphere and −1/x₁ on the face x₁ = 0 (u vanishes there)".into());
    c.notes.push("test functions carry the factor x₁/R, so the flat-face term is exactly zero".into());
    Ok(c)
}

fn halfball_sample(rng: &mut ChaCha8Rng) -> CaseParams {
    CaseParams { n: dim(rng, 2, 6), p: 2.0, ..CaseParams::default() }
}

// 13. positive orthant

fn inv_square_sum(n: usize) -> Field {
    Field::sum((0..n).map(|i| x(i).powf(-2.0)).collect())
}

fn orthant(p: &CaseParams) -> Result<HardyCase> {
    let all: Vec<usize> = (0..p.n).collect();
    let d = ball(p)?.with_positive(&all)?;
    let sum = inv_square_sum(p.n);
    let u = Field::product((0..p.n).map(x).collect()).powf(1.0 / p.p);
    let mut c = base("orthant", p, pw(sum.clone(), (2.0 - p.p) / 2.0), u, d);
    c.interior.push(eq("p^(−p) Σxᵢ^(−2)", p.p.powf(-p.p), sum));
    c.boundary.push(sphere(Field::constant(p.n as f64 / (p.radius * p.p.powf(p.p - 1.0)))));
    for i in 0..p.n {
        c.boundary.push(BoundaryTerm {
            face: Face::Flat(i),
            beta: x(i).powf(-1.0) * -p.p.powf(1.0 - p.p),
            singular: true,
        });
    }
    c.origin = OriginExponents { interior: 0.0, gradient: (2.0 - p.p).max(0.0), u_growth: 0.0 };
    c.test_weight = Some(TestWeight {
        field: Field::product((0..p.n).map(|i| x(i) * (1.0 / p.radius)).collect()),
        vanishes_on: (0..p.n).map(Face::Flat).collect(),
        origin_order: p.n as u32,
        description: "Π xᵢ/R",
    });
    c.notes.push("β = n/(R p^(p−1)) on the sphere and −p^(1−p)/xᵢ on the face xᵢ = 0".into());
    Ok(c)
}

fn orthant_sample(rng: &mut ChaCha8Rng) -> CaseParams {
    CaseParams { n: dim(rng, 2, 5), p: uniform(rng, 1.2, 4.0), ..CaseParams::default() }
}

// 14. x₁^{p−1} with a logarithmic u

fn log_case(p: &CaseParams) -> Result<HardyCase> {
    let d = ball(p)?.with_positive(&[0])?;
    let cexp = (p.p - 1.0) / p.p;
    let l = Field::quotient(Field::constant(p.radius), x(0)).ln();
    let mut c = base("log", p, x(0).powf(p.p - 1.0), l.clone().powf(cexp), d);
    c.interior.push(eq("c^p x₁^(−1) L^(−p)", cexp.powf(p.p), x(0).powf(-1.0) * l.clone().powf(-p.p)));
    c.boundary.push(sphere(x(0) * (-cexp.powf(p.p - 1.0) / p.radius) * l.clone().powf(1.0 - p.p)));
    c.boundary.push(BoundaryTerm { face: Face::Flat(0), beta: l.powf(1.0 - p.p) * cexp.powf(p.p - 1.0), singular: true });
    c.test_weight = Some(TestWeight {
        field: x(0) * (1.0 / p.radius) * (Field::constant(1.0) - x(0) * (1.0 / p.radius)),
        vanishes_on: vec![Face::Flat(0)],
        origin_order: 1,
        description: "(x₁/R)(1 − x₁/R)",
    });
    c.clip = Some((0, p.radius * (1.0 - 1e-6)));
    c.notes.push("β = −c^(p−1)(x₁/R)L^(1−p) on the sphere, with c = (p−1)/p and L = log(R/x₁)".into());
    c.notes.push("on x₁ = 0, β = c^(p−1)L^(1−p) tends to 0".into());
    c.notes.push("points with x₁ > R(1 − 1e−6) are excluded (u → 0)".into());
    Ok(c)
}

// 15. xₙ^{p−1} with u = (x_{n−1}² + xₙ²)^{−1/(2p)}

fn mazya(p: &CaseParams) -> Result<HardyCase> {
    let n = p.n;
    let d = ball(p)?.with_positive(&[n - 1])?;
    let rho = Field::tail_radius(n - 2);
    let a = pw(x(n - 1), p.p - 1.0);
    let mut c = base("mazya", p, a.clone(), rho.clone().powf(-1.0 / p.p), d);
    c.interior.push(eq("p^(−p) xₙ^(p−1) ρ^(−p)", p.p.powf(-p.p), a.clone() * rho.clone().powf(-p.p)));
    c.boundary.push(sphere(a * (-1.0 / (p.radius * p.p.powf(p.p - 1.0))) * pw(rho, 2.0 - p.p)));
    c.boundary.push(BoundaryTerm { face: Face::Flat(n - 1), beta: Field::constant(0.0), singular: false });
    c.test_weight = Some(TestWeight {
        field: x(n - 1) * (1.0 / p.radius),
        vanishes_on: vec![Face::Flat(n - 1)],
        origin_order: 1,
        description: "xₙ/R",
    });
    c.notes.push("b = p^(−p) xₙ^(p−1) ρ^(−p) with ρ² = x_(n−1)² + xₙ², derived from the flux".into());
    c.notes.push("β = −xₙ^(p−1) ρ^(2−p)/(R p^(p−1)) on the sphere and 0 on xₙ = 0".into());
    Ok(c)
}

// 16. e^{α x₁²⋯xₙ²}, p = 2

fn gauss_prod_valid(p: &CaseParams) -> bool {
    p.alpha > 0.0 && p.p == 2.0
}

fn gaussian_product(p: &CaseParams) -> Result<HardyCase> {
    let n = p.n;
    let prod = Field::product((0..n).map(|i| x(i).powf(2.0)).collect());
    let e = (prod.clone() * p.alpha).exp();
    let u = (prod.clone() * -p.alpha).exp();
    let mut c = base("gaussian-product", p, e.clone(), u, ball(p)?);
    let partials = Field::sum(
        (0..n)
            .map(|i| Field::product((0..n).filter(|&j| j != i).map(|j| x(j).powf(2.0)).collect()))
            .collect(),
    );
    c.interior.push(eq("2α e^(αP) Σᵢ Π_(j≠i) xⱼ²", 2.0 * p.alpha, e.clone() * partials));
    c.boundary.push(sphere(prod * e * (-2.0 * p.alpha * n as f64 / p.radius)));
    Ok(c)
}

fn gauss_prod_sample(rng: &mut ChaCha8Rng) -> CaseParams {
    CaseParams { n: dim(rng, 2, 5), p: 2.0, alpha: uniform(rng, 0.1, 2.0), ..CaseParams::default() }
}

pub(super) static ENTRIES: &[CaseEntry] = &[
    CaseEntry {
        id: "power",
        hypothesis: "n+α>p>1",
        label: "power weight |x|^α",
        defaults: keep,
        valid: power_valid,
        construct: power,
        sampler: power_sample,
    },
    CaseEntry {
        id: "sinh",
        hypothesis: "γ≥0 and n+α+γ>p>1",
        label: "power times hyperbolic sine weight |x|^α sinh^γ|x|",
        defaults: sinh_defaults,
        valid: sinh_valid,
        construct: sinh,
        sampler: sinh_sample,
    },
    CaseEntry {
        id: "gm-positive",
        hypothesis: "s,t>0, αγ>0 and 1<p≤n−pm",
        label: "weight (s+t|x|^α)^γ/|x|^(pm) with αγ>0",
        defaults: gm_pos_defaults,
        valid: gm_pos_valid,
        construct: gm_positive,
        sampler: gm_pos_sample,
    },
    CaseEntry {
        id: "gm-negative",
        hypothesis: "s,t>0, αγ<0 and 1<p≤n+αγ−pm",
        label: "weight (s+t|x|^α)^γ/|x|^(pm) with αγ<0",
        defaults: gm_neg_defaults,
        valid: gm_neg_valid,
        construct: gm_negative,
        sampler: gm_neg_sample,
    },
    CaseEntry {
        id: "skrzypczak",
        hypothesis: "1<p<n and α>1",
        label: "weight (1+|x|^(p/(p−1)))^(α(p−1))",
        defaults: skrz_defaults,
        valid: skrz_valid,
        construct: skrzypczak,
        sampler: skrz_sample,
    },
    CaseEntry {
        id: "linearized-sobolev",
        hypothesis: "n+α>p>1",
        label: "power weight with the Sobolev bubble profile",
        defaults: keep,
        valid: power_valid,
        construct: linearized_sobolev,
        sampler: power_sample,
    },
    CaseEntry {
        id: "exp-x1-a",
        hypothesis: "α>0 and p>1",
        label: "weight e^(αx₁)/α^(p−1), u = e^(αx₁)",
        defaults: exp_alpha_one,
        valid: exp_x1_a_valid,
        construct: exp_x1_a,
        sampler: exp_x1_a_sample,
    },
    CaseEntry {
        id: "exp-x1-b",
        hypothesis: "p>1",
        label: "weight e^(α(1−p)x₁), u = e^(αx₁)",
        defaults: exp_alpha_one,
        valid: p_valid,
        construct: exp_x1_b,
        sampler: exp_x1_b_sample,
    },
    CaseEntry {
        id: "exp-x1-c",
        hypothesis: "p>1",
        label: "weight e^(−px₁), u = e^(x₁)",
        defaults: keep,
        valid: p_valid,
        construct: exp_x1_c,
        sampler: p_sample,
    },
    CaseEntry {
        id: "exp-sum-a",
        hypothesis: "p>1",
        label: "unit weight, u = e^(x₁+⋯+xₙ)",
        defaults: keep,
        valid: p_valid,
        construct: exp_sum_a,
        sampler: p_sample,
    },
    CaseEntry {
        id: "exp-sum-b",
        hypothesis: "p>1",
        label: "weight and u both e^(x₁+⋯+xₙ)",
        defaults: keep,
        valid: p_valid,
        construct: exp_sum_b,
        sampler: p_sample,
    },
    CaseEntry {
        id: "halfball-x1r",
        hypothesis: "p=2",
        label: "half ball x₁>0, u = x₁|x|",
        defaults: keep,
        valid: p_two,
        construct: halfball,
        sampler: halfball_sample,
    },
    CaseEntry {
        id: "orthant",
        hypothesis: "p>1",
        label: "positive orthant, u = (x₁⋯xₙ)^(1/p)",
        defaults: keep,
        valid: p_valid,
        construct: orthant,
        sampler: orthant_sample,
    },
    CaseEntry {
        id: "log",
        hypothesis: "p>1",
        label: "half ball x₁>0, weight x₁^(p−1), logarithmic u",
        defaults: keep,
        valid: p_valid,
        construct: log_case,
        sampler: orthant_sample,
    },
    CaseEntry {
        id: "mazya",
        hypothesis: "p>1",
        label: "half ball xₙ>0, weight xₙ^(p−1), u = (x_(n−1)²+xₙ²)^(−1/(2p))",
        defaults: keep,
        valid: p_valid,
        construct: mazya,
        sampler: orthant_sample,
    },
    CaseEntry {
        id: "gaussian-product",
        hypothesis: "α>0 and p=2",
        label: "weight e^(αx₁²⋯xₙ²), u = e^(−αx₁²⋯xₙ²)",
        defaults: exp_alpha_one,
        valid: gauss_prod_valid,
        construct: gaussian_product,
        sampler: gauss_prod_sample,
    },
];

#[cfg(test)]
mod tests {
    use super::super::lookup;
    use super::*;
    use crate::derivation::{check_supersolution, halton_points};
    use crate::geometry::sample_boundary_points;

    fn agree(case: &HardyCase, points: usize) {
        let dp = case.potentials().unwrap();
        let b = case.b_closed();
        for x in halton_points(&case.domain, points, 3) {
            let bn = dp.b(&x).unwrap();
            let bc = b.value(&x).unwrap();
            assert!((bn - bc).abs() <= 1e-6 * (1.0 + bc.abs()), "{} b at {x:?}: {bn} vs {bc}", case.id);
        }
        for bt in case.boundary.iter().filter(|b| !b.singular) {
            for x in sample_boundary_points(&case.domain, bt.face, points, 4).unwrap() {
                let bn = dp.beta_on(bt.face, &x).unwrap();
                let bc = bt.beta.value(&x).unwrap();
                assert!((bn - bc).abs() <= 1e-6 * (1.0 + bc.abs()), "{} β on {} at {x:?}: {bn} vs {bc}", case.id, bt.face);
            }
        }
    }

    #[test]
    fn closed_forms_match_derivation_at_defaults() {
        for e in ENTRIES {
            let case = e.build(&e.default_params()).unwrap();
            if case.is_exact() {
                agree(&case, 200);
            } else {
                let dp = case.potentials().unwrap();
                assert!(check_supersolution(&dp, &case.b_closed(), 200, 1).unwrap().pass, "{}", e.id);
            }
        }
    }

    #[test]
    fn sinh_surplus_is_positive() {
        let case = lookup("sinh").unwrap().build(&CaseParams { gamma: 1.0, ..CaseParams::default() }).unwrap();
        let dp = case.potentials().unwrap();
        let rep = check_supersolution(&dp, &case.b_closed(), 300, 2).unwrap();
        assert!(rep.pass);
        assert!(rep.min_residual > 0.0);
    }
    #[test]
    fn closed_forms_match_derivation_at_sampled_parameters() {
        for e in ENTRIES.iter().filter(|e| e.id != "sinh") {
            for draw in 0..4 {
                let params = e.sample_params(11, draw);
                agree(&e.build(&params).unwrap(), 60);
            }
        }
    }

    fn same_b_and_beta(x: &HardyCase, y: &HardyCase) {
        let (bx, by) = (x.b_closed(), y.b_closed());
        for pt in halton_points(&x.domain, 100, 5) {
            let (u, v) = (bx.value(&pt).unwrap(), by.value(&pt).unwrap());
            assert!((u - v).abs() <= 1e-10 * (1.0 + u.abs()), "{} vs {}: {u} {v}", x.id, y.id);
        }
        for pt in sample_boundary_points(&x.domain, Face::Sphere, 50, 6).unwrap() {
            let u = x.boundary_term(Face::Sphere).unwrap().beta.value(&pt).unwrap();
            let v = y.boundary_term(Face::Sphere).unwrap().beta.value(&pt).unwrap();
            assert!((u - v).abs() <= 1e-10 * (1.0 + u.abs()));
        }
    }

    #[test]
    fn sinh_with_zero_gamma_is_power() {
        let p = CaseParams { n: 4, p: 2.5, alpha: 0.3, gamma: 0.0, radius: 1.3, ..CaseParams::default() };
        let s = lookup("sinh").unwrap().build(&p).unwrap();
        let w = lookup("power").unwrap().build(&p).unwrap();
        same_b_and_beta(&s, &w);
    }

    #[test]
    fn gm_reductions_are_power() {
        // γ = 0 and m = −α'/p reproduce |x|^α'
        let (n, pp, a) = (5, 1.7, 0.6);
        let w = lookup("power").unwrap().build(&CaseParams { n, p: pp, alpha: a, ..CaseParams::default() }).unwrap();
        for id in ["gm-positive", "gm-negative"] {
            let g = CaseParams { n, p: pp, alpha: 1.0, gamma: 0.0, m: -a / pp, s: 1.0, t: 0.7, ..CaseParams::default() };
            same_b_and_beta(&lookup(id).unwrap().build_unchecked(&g).unwrap(), &w);
        }
        // t = 0, s = 1 also drops the weight
        let g = CaseParams { n, p: pp, alpha: 1.0, gamma: 2.0, m: -a / pp, s: 1.0, t: 0.0, ..CaseParams::default() };
        same_b_and_beta(&lookup("gm-positive").unwrap().build_unchecked(&g).unwrap(), &w);
    }

    #[test]
    fn hypotheses_reject_boundary_values() {
        let bad = [
            ("power", CaseParams { n: 2, p: 2.0, alpha: 0.0, ..CaseParams::default() }),
            ("halfball-x1r", CaseParams { p: 3.0, ..CaseParams::default() }),
            ("gaussian-product", CaseParams { alpha: 0.0, p: 2.0, ..CaseParams::default() }),
            ("skrzypczak", CaseParams { n: 3, p: 3.0, alpha: 2.0, ..CaseParams::default() }),
            ("exp-x1-a", CaseParams { alpha: -1.0, ..CaseParams::default() }),
        ];
        for (id, p) in bad {
            let err = lookup(id).unwrap().build(&p).unwrap_err();
            assert!(matches!(err, crate::Error::InvalidParameters { .. }), "{id}");
        }
    }
}
