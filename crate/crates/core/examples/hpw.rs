//! Product inequalities: optimise the quadratic in α for each HPW variant.

use hardy_robin::geometry::QuadratureSpec;
use hardy_robin::verify::{hpw_reports, HpwVariant, SuiteSummary};

fn main() -> hardy_robin::Result<()> {
    let q: QuadratureSpec = "mc:50000:seed=5".parse()?;
    for v in HpwVariant::ALL {
        let reports = hpw_reports(v, 3, 1.0, &q)?;
        let first = reports[0].hpw.as_ref().expect("hpw detail");
        println!(
            "{:<12} κ = {:<5} α* = {:.4} on {}, vertex dominance {}",
            v.id(),
            v.kappa(),
            first.optimum.alpha_star,
            reports[0].phi_id,
            first.vertex_dominance
        );
        println!("             {:?}", SuiteSummary::of(&reports));
    }
    Ok(())
}
