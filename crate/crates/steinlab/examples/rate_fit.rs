//! Log-log regression of the empirical convergence rates: the raw gaps
//! decay like `lambda^{-1/2}`, the post-correction residuals at least
//! like `lambda^{-1}`.
//!
//! ```bash
//! cargo run --release -p steinlab --example rate_fit
//! ```

use steinlab::stein::{default_lambda_grid, family, fit_rate, stein_error, stein_report};

fn main() -> steinlab::Result<()> {
    let grid = default_lambda_grid();
    println!("raw gap exponents over lambda in {grid:?}:");
    for f in family::non_symmetric_family() {
        let pairs: Vec<(f64, f64)> = grid
            .iter()
            .map(|&l| Ok((l, stein_error(&f, l)?.value.abs())))
            .collect::<steinlab::Result<_>>()?;
        let fit = fit_rate(&pairs)?;
        println!(
            "{:>16}: exponent {:+.4}  intercept {:+.3}  max residual {:.2e}",
            f.name(),
            fit.exponent,
            fit.intercept,
            fit.max_abs_residual
        );
    }

    println!("\npost-correction residual exponents over lambda in [1e2, 1e3, 1e4]:");
    for f in family::regression_family() {
        let pairs: Vec<(f64, f64)> = [1e2, 1e3, 1e4]
            .iter()
            .map(|&l| Ok((l, stein_report(&f, l)?.residual.abs())))
            .collect::<steinlab::Result<_>>()?;
        let fit = fit_rate(&pairs)?;
        println!("{:>16}: exponent {:+.4}", f.name(), fit.exponent);
    }

    // the pure cubic is an exact power law
    let cubic = family::cubic();
    let pairs: Vec<(f64, f64)> = [4.0, 16.0, 64.0, 256.0]
        .iter()
        .map(|&l| Ok((l, stein_error(&cubic, l)?.value.abs())))
        .collect::<steinlab::Result<_>>()?;
    let fit = fit_rate(&pairs)?;
    println!(
        "\npure cubic: exponent {:+.12} (exact -0.5), max residual {:.1e}",
        fit.exponent, fit.max_abs_residual
    );
    Ok(())
}
