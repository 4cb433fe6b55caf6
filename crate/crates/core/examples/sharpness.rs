//! Quotients approaching 1/4 for the inverse-square term in the unit ball of ℝ³.

use hardy_robin::catalog::{lookup, CaseParams};
use hardy_robin::geometry::QuadratureSpec;
use hardy_robin::verify::{estimate_best_constant, power_family, DEFAULT_EPSILONS};

fn main() -> hardy_robin::Result<()> {
    let params = CaseParams { n: 3, p: 2.0, alpha: 0.0, radius: 1.0, ..Default::default() };
    let case = lookup("power")?.build(&params)?;
    let q: QuadratureSpec = "radial:32:mc:256".parse()?;
    let rep = estimate_best_constant(&case, 0, &power_family(&case, &DEFAULT_EPSILONS), &q)?;
    println!("term {} with constant {}", rep.term, rep.constant);
    for pt in &rep.quotients {
        println!("{:<10} Q = {:.6} ± {:.1e}", pt.phi_id, pt.quotient, pt.error);
    }
    println!("min Q = {:.6}", rep.min_quotient);
    Ok(())
}
