use ancestral::stats::extremal_shapes;

// Shapes with the most root and the most total configurations.
fn main() -> ancestral::Result<()> {
    for n in [5, 8, 12, 15] {
        let rep = extremal_shapes(n)?;
        println!("n = {n}");
        for (s, total) in &rep.root_maximizers {
            println!(
                "  most root configurations  {:>4} (total {total:>4})  {s}",
                rep.max_root
            );
        }
        for (s, root) in &rep.total_maximizers {
            println!(
                "  most total configurations {:>4} (root {root:>4})   {s}",
                rep.max_total
            );
        }
    }
    Ok(())
}
