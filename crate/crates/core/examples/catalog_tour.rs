//! Every catalog entry with its defaults, terms and faces.

use hardy_robin::catalog::registry;

fn main() -> hardy_robin::Result<()> {
    for e in registry() {
        let case = e.build(&e.default_params())?;
        println!("{} [{}]  {}", e.id, e.hypothesis, e.label);
        println!("  a = {}", case.a);
        println!("  u = {}", case.u);
        for t in &case.interior {
            println!("  interior {:?} {} × {}", t.kind, t.constant, t.label);
        }
        for b in &case.boundary {
            println!("  boundary {:?}{} β = {}", b.face, if b.singular { " (singular)" } else { "" }, b.beta);
        }
        for n in &case.notes {
            println!("  note: {n}");
        }
    }
    Ok(())
}
