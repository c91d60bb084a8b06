//! Exact power series: closed-form generating functions against the moment
//! recurrences, and the functional equations they satisfy.

use ancestral::moments::Statistic;
use ancestral::series::{
    catalan_gf, family_series, gf_uniform, gf_yule_r, verify_functional_systems,
    yule_expectation_series, UniformGf,
};
use ancestral::weights::ModelId;

fn main() -> ancestral::Result<()> {
    let order = 30;
    let c = catalan_gf(12)?;
    let first: Vec<String> = c.coeffs().iter().map(|x| x.to_string()).collect();
    println!("C(z) = {} + ...", first.join(", "));

    for which in UniformGf::ALL {
        let closed = gf_uniform(which, order)?;
        let rec = family_series(ModelId::Uniform, which.statistic(), order)?;
        println!(
            "uniform {:<3} closed form {} the recurrence to order {order}; z^10 coefficient {}",
            which.statistic().name(),
            if closed == rec {
                "equals"
            } else {
                "differs from"
            },
            closed.coeff(10)
        );
    }

    let yule = gf_yule_r(order)?;
    let rec = yule_expectation_series(Statistic::R, order)?;
    let rational = (1..=order).all(|n| yule.coeff(n).is_rational());
    let agrees = (1..=order).all(|n| &yule.coeff(n).a == rec.coeff(n));
    println!("yule R(z): sqrt3 parts cancel: {rational}, matches E[R_n]: {agrees}");
    println!("  z^6 coefficient {}", yule.coeff(6));

    for check in verify_functional_systems(order)? {
        println!(
            "{} {:<40} {}",
            check.system,
            check.equation,
            if check.holds() { "holds" } else { "FAILS" }
        );
    }
    Ok(())
}
