//! The convexity constant c_p across both regimes.

use hardy_robin::derivation::{estimate_cp, DEFAULT_GRID};

fn main() -> hardy_robin::Result<()> {
    println!("p     c_p        regime");
    for p in [1.05, 1.1, 1.25, 1.5, 1.75, 2.0, 2.5, 3.0, 4.0, 6.0] {
        let c = estimate_cp(p, DEFAULT_GRID)?;
        println!("{p:<5} {:<10.6} {:?}", c.c_p, c.regime);
    }
    Ok(())
}
