//! Exact distribution of the total count over all shapes, and how close the
//! standardized log total comes to a normal law.

use ancestral::stats::{
    exact_correlation, exact_distribution, grid, max_normal_deviation, normal_cdf,
    standardized_log_cdf,
};
use ancestral::weights::ModelId;

fn main() -> ancestral::Result<()> {
    let n = 15;
    let points = grid(-3.0, 3.0, 0.5)?;
    for model in ModelId::ALL {
        let dist = exact_distribution(n, model)?;
        let (mean, var) = dist.log_total_moments();
        println!(
            "{model}, n = {n}: {} shapes, E[ln T] = {mean:.4}, Var[ln T] = {var:.4}, corr(T, R) = {:.4}",
            dist.entries.len(),
            exact_correlation(n, model)?
        );
        let cdf = standardized_log_cdf(&dist, &points)?;
        for &(y, f) in &cdf {
            println!("  y = {y:>4.1}  F = {f:.4}  Phi = {:.4}", normal_cdf(y));
        }
        let fine = standardized_log_cdf(&dist, &grid(-3.0, 3.0, 0.1)?)?;
        println!(
            "  largest gap on a 0.1 grid: {:.5}",
            max_normal_deviation(&fine)
        );
    }
    Ok(())
}
