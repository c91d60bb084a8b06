//! Exact means, variances and correlation of the root and total counts.

use num_traits::ToPrimitive;

use ancestral::moments::{exact_moments, exhaustive_moments, Statistic};
use ancestral::weights::ModelId;

fn main() -> ancestral::Result<()> {
    for model in ModelId::ALL {
        let table = exact_moments(model, 40)?;
        println!("{model}");
        println!("   n  E[R]           E[T]           T/R      rho");
        for n in [2, 3, 4, 5, 8, 10, 20, 40] {
            let row = table.row(n).unwrap();
            println!(
                "{n:>4}  {:<13.6} {:<13.6} {:<8.5} {}",
                row.e_r.to_f64().unwrap(),
                row.e_t.to_f64().unwrap(),
                (&row.e_t / &row.e_r).to_f64().unwrap(),
                row.rho_tr.map_or("-".into(), |r| format!("{r:.5}"))
            );
        }
        let row = table.row(7).unwrap();
        println!(
            "  n = 7 exactly: E[T] = {}, Var[T] = {}; by enumeration E[T] = {}",
            row.e_t,
            row.var_t,
            exhaustive_moments(7, model, Statistic::T)?
        );
    }
    Ok(())
}
