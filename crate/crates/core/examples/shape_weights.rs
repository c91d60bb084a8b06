//! Shape probabilities under the uniform and Yule models, computed through
//! ordered trees and through labeled topologies.

use ancestral::weights::{induced_distribution_via, split_probability, ModelId, Route};

fn main() -> ancestral::Result<()> {
    let n = 5;
    for model in ModelId::ALL {
        println!("{model}, n = {n}");
        let ordered = induced_distribution_via(n, model, Route::Ordered)?;
        let labeled = induced_distribution_via(n, model, Route::Labeled)?;
        for ((shape, p), (_, q)) in ordered.iter().zip(&labeled) {
            println!(
                "  {shape:<22} {p:>5}  {}",
                if p == q { "routes agree" } else { "MISMATCH" }
            );
        }
        let splits: Vec<String> = (1..n)
            .map(|j| split_probability(model, n, j).map(|p| p.to_string()))
            .collect::<Result<_, _>>()?;
        println!("  left subtree size 1..{}: {}", n - 1, splits.join(", "));
    }
    Ok(())
}
