//! Lists tree shapes and the sizes of the tree families built on them.
//!
//! `cargo run --example enumerate_shapes -- 6`

use ancestral::combinat::{catalan, factorial, labeled_topology_count};
use ancestral::tree::{enumerate_shapes, Shape};
use ancestral::weights::{lab, ouh, out};

fn main() -> ancestral::Result<()> {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(6);

    println!("size  shapes  ordered  histories  labeled");
    for k in 1..=n {
        println!(
            "{k:>4}  {:>6}  {:>7}  {:>9}  {:>7}",
            enumerate_shapes(k)?.len(),
            catalan(k - 1),
            factorial(k - 1),
            labeled_topology_count(k)
        );
    }

    println!("\nshapes with {n} leaves (canonical order)");
    for s in enumerate_shapes(n)? {
        let tag = if s == Shape::caterpillar(n) {
            "  caterpillar"
        } else if s == Shape::balanced(n) {
            "  balanced"
        } else {
            ""
        };
        println!(
            "{s:<32} lab {:>4} out {:>3} ouh {:>3}{tag}",
            lab(&s),
            out(&s),
            ouh(&s)
        );
    }
    Ok(())
}
