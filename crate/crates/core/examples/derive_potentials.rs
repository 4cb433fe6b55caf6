//! Numeric potentials of a catalog entry next to its closed forms.
//!
//! cargo run --example derive_potentials -- gm-negative

use hardy_robin::catalog::lookup;
use hardy_robin::derivation::{check_supersolution, halton_points};

fn main() -> hardy_robin::Result<()> {
    let id = std::env::args().nth(1).unwrap_or_else(|| "sinh".into());
    let entry = lookup(&id)?;
    let case = entry.build(&entry.default_params())?;
    let dp = case.potentials()?;
    let closed = case.b_closed();
    println!("{}: {} ({})", case.id, case.label, case.hypothesis);
    println!("{:<40} {:>14} {:>14}", "x", "b numeric", "b closed");
    for x in halton_points(&case.domain, 6, 0) {
        let pt: Vec<String> = x.iter().map(|v| format!("{v:+.3}")).collect();
        println!("{:<40} {:>14.8} {:>14.8}", pt.join(" "), dp.b(&x)?, closed.value(&x)?);
    }
    let rep = check_supersolution(&dp, &closed, 2000, 0)?;
    println!("supersolution: min residual {:.3e}, median {:.3e}, pass {}", rep.min_residual, rep.median_residual, rep.pass);
    Ok(())
}
