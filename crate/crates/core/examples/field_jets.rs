//! Parse a field, evaluate its exact jet, and compare with finite differences.
//!
//! cargo run --example field_jets -- "mul(pow(r, -0.5), exp(x1))" 0.3 -0.2 0.4

use hardy_robin::field::{check_gradient, check_hessian, Field, Order};

fn main() -> hardy_robin::Result<()> {
    let mut args = std::env::args().skip(1);
    let src = args.next().unwrap_or_else(|| "mul(pow(r, -0.5), exp(x1))".into());
    let mut x: Vec<f64> = args.map(|a| a.parse().expect("coordinate")).collect();
    if x.is_empty() {
        x = vec![0.3, -0.2, 0.4];
    }
    let f: Field = src.parse()?;
    let jet = f.eval(&x, Order::Hessian)?;
    println!("field     {f}");
    println!("value     {:.12}", jet.value);
    println!("gradient  {:?}", jet.gradient);
    println!("laplacian {:.12}", jet.laplacian().unwrap_or(f64::NAN));
    println!("fd gradient gap {:.2e}", check_gradient(&f, &x, 1e-5)?);
    println!("fd hessian gap  {:.2e}", check_hessian(&f, &x, 1e-4)?);
    Ok(())
}
