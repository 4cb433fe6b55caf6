//! Monte Carlo and radial quadrature against integrals with known values.

use hardy_robin::field::{Field, Order};
use hardy_robin::geometry::{self, Domain, Face, QuadratureSpec};

fn main() -> hardy_robin::Result<()> {
    let mc = QuadratureSpec::monte_carlo(200_000).with_seed(1);
    println!("n  quantity            estimate      exact         z");
    for n in 2..=6 {
        let d = Domain::ball(n, 1.0)?;
        let half = geometry::integrate_interior(|x: &[f64]| Ok((geometry::norm(x) < 0.5) as u8 as f64), &d, &mc, 0.0)?;
        let exact = geometry::unit_ball_volume(n) * 0.5f64.powi(n as i32);
        row(n, "|B(R/2)|", half.value, exact, half.error_estimate);

        let s = geometry::integrate_boundary(|x: &[f64]| Ok(x[0] * x[0]), &d, Face::Sphere, &mc, 0.0)?;
        row(n, "sphere x1^2", s.value, geometry::unit_sphere_area(n) / n as f64, s.error_estimate);

        // r^{-1} is integrable for n ≥ 2; the radial rule handles the origin
        let radial: QuadratureSpec = "radial:32:mc:512".parse()?;
        let r = Field::radial_power(-1.0);
        let v = geometry::integrate_interior(|x: &[f64]| Ok(r.eval(x, Order::Value)?.value), &d, &radial, 1.0)?;
        row(n, "ball 1/|x|", v.value, geometry::unit_sphere_area(n) / (n as f64 - 1.0), v.error_estimate);
    }
    Ok(())
}

fn row(n: usize, what: &str, est: f64, exact: f64, se: f64) {
    let z = if se > 0.0 { (est - exact) / se } else { 0.0 };
    println!("{n}  {what:<18} {est:<13.6} {exact:<13.6} {z:+.2}");
}
