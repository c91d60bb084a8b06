//! Extrapolates growth rates and constants from long floating-point moment
//! sequences and compares them with their closed forms.

use ancestral::moments::{
    asymptotic_targets, estimate_exponential_order_ln, estimate_subexp_constant_ln, float_moments,
    uniform_correlation_limit,
};
use ancestral::weights::ModelId;

fn main() -> ancestral::Result<()> {
    let n_max = 2000;
    let uniform = float_moments(ModelId::Uniform, n_max)?;
    let yule = float_moments(ModelId::Yule, n_max)?;

    for target in asymptotic_targets() {
        let table = match target.model {
            ModelId::Uniform => &uniform,
            ModelId::Yule => &yule,
        };
        let seq = table.ln_sequence(target.statistic);
        let rate = estimate_exponential_order_ln(&seq)?;
        println!(
            "{:<26} rate {:.10} (closed form {:.10}, gap {:.1e})",
            target.name, rate.value, target.base, rate.gap
        );
        if let Some(c) = target.constant {
            let est = estimate_subexp_constant_ln(&seq, target.base)?;
            println!("{:<26} constant {:.8} (closed form {c:.8})", "", est.value);
        }
    }

    let rho = uniform.row(n_max).unwrap().rho_tr.unwrap();
    println!(
        "uniform correlation at n = {n_max}: {rho:.6}, limit {:.6}",
        uniform_correlation_limit()
    );
    Ok(())
}
