//! Seeded random trees from both models and the sample moments of ln T / n.
//!
//! `cargo run --release --example monte_carlo -- 500 10000 20220101`

use ancestral::configs::config_counts;
use ancestral::stats::{monte_carlo_log_moments, sample_tree, stream_rng};
use ancestral::weights::ModelId;

fn main() -> ancestral::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().ok());
    let n = args.next().flatten().unwrap_or(200) as usize;
    let samples = args.next().flatten().unwrap_or(2000) as usize;
    let seed = args.next().flatten().unwrap_or(1);

    let mut rng = stream_rng(seed, 0);
    for model in ModelId::ALL {
        let t = sample_tree(8, model, &mut rng)?;
        let c = config_counts(t.ordered());
        println!(
            "a {model} tree with 8 leaves: {} (root {}, total {})",
            t.ordered(),
            c.root,
            c.total
        );
    }

    for model in ModelId::ALL {
        let run = monte_carlo_log_moments(n, model, samples, seed)?;
        println!(
            "{model}: n = {n}, {samples} samples, seed {seed} ({}): E[ln T]/n = {:.5} +- {:.5}, Var[ln T]/n = {:.5} +- {:.5}",
            run.generator,
            run.mean_log_t_per_n,
            run.se_mean_per_n,
            run.var_log_t_per_n,
            run.se_var_per_n
        );
    }
    Ok(())
}
