//! Gap-versus-envelope sweep: the normal-approximation error of the
//! standardized Poisson family against the explicit
//! `sqrt(pi)/(4 sqrt 2) lambda^{-1/2}` envelope, plus the semigroup
//! representation cross-check.
//!
//! ```bash
//! cargo run --release -p steinlab --example stein_bound
//! ```

use steinlab::stein::{c2b_envelope, family, stein_dirichlet_gap, stein_error, TimeQuadrature};

fn main() -> steinlab::Result<()> {
    let lambdas = [1.0, 4.0, 25.0, 100.0, 1e4];
    println!(
        "{:>16} {:>8} {:>14} {:>12} {:>6}",
        "function", "lambda", "gap", "bound", "ok"
    );
    for f in family::regression_family() {
        for &lambda in &lambdas {
            let gap = stein_error(&f, lambda)?;
            let bound = c2b_envelope(lambda);
            println!(
                "{:>16} {:>8} {:>14.6e} {:>12.6e} {:>6}",
                f.name(),
                lambda,
                gap.value,
                bound,
                gap.value.abs() <= bound + gap.budget.total()
            );
        }
    }

    println!("\nsemigroup representation vs direct evaluation:");
    let quad = TimeQuadrature::default();
    for name in ["sin-1", "arctan", "bump-pos2"] {
        let f = family::by_name(name)?;
        for lambda in [4.0, 25.0, 100.0] {
            let eq1 = stein_dirichlet_gap(&f, lambda, &quad)?;
            let direct = stein_error(&f, lambda)?;
            println!(
                "{name:>10} lambda {lambda:>5}: |semigroup - direct| = {:.3e}",
                (eq1.value - direct.value).abs()
            );
        }
    }

    // the pure cubic has gap exactly lambda^{-1/2}
    let cubic = family::cubic();
    println!("\npure cubic oracle:");
    for lambda in [4.0, 16.0, 64.0, 256.0] {
        let gap = stein_error(&cubic, lambda)?.value;
        println!(
            "lambda {lambda:>5}: gap {gap:.12} vs lambda^(-1/2) {:.12}",
            1.0 / lambda.sqrt()
        );
    }
    Ok(())
}
