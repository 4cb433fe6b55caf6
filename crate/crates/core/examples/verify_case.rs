//! Run the test-function suite of one entry and print a verdict table.
//!
//! cargo run --release --example verify_case -- exp-x1-c

use hardy_robin::catalog::lookup;
use hardy_robin::geometry::QuadratureSpec;
use hardy_robin::verify::{verify_suite, SuiteSummary};

fn main() -> hardy_robin::Result<()> {
    let id = std::env::args().nth(1).unwrap_or_else(|| "power".into());
    let entry = lookup(&id)?;
    let case = entry.build(&entry.default_params())?;
    let q: QuadratureSpec = "mc:50000:seed=3".parse()?;
    let reports = verify_suite(&case, &q, true)?;
    println!("{:<12} {:>12} {:>12} {:>12} {:>10}  verdict", "phi", "lhs", "rhs", "margin", "E");
    for r in &reports {
        println!(
            "{:<12} {:>12.5} {:>12.5} {:>12.4e} {:>10.2e}  {:?}",
            r.phi_id,
            r.lhs.value,
            r.rhs_total(),
            r.margin,
            r.combined_error,
            r.verdict
        );
    }
    println!("{:?}", SuiteSummary::of(&reports));
    Ok(())
}
