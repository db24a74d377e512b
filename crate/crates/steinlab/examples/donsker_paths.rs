//! Path space in action: counting paths, the compensated rescaling into
//! the fractional-smoothness space, Brownian sampling against the
//! covariance operator, and the paired functional rate experiment.
//!
//! ```bash
//! cargo run --release -p steinlab --example donsker_paths
//! ```

use steinlab::besov::{
    besov_inner, default_cylindrical_family, donsker_map, functional_rate_experiment,
    reconstruct_path, sample_brownian_path, sample_poisson_path, v_beta_quadratic_form,
    BesovVector, CountingPath, GridConfig,
};

fn main() -> steinlab::Result<()> {
    let cfg = GridConfig::new(256, 0.4)?;

    // a single atom at 1/2 maps to the path 1_{t >= 1/2} - t
    let single = CountingPath::new(vec![0.5])?;
    let embedded = donsker_map(&cfg, &single, 1.0)?;
    let back = reconstruct_path(&cfg, &embedded)?;
    println!(
        "T(delta at 0.5) reconstructed at t = 0.25 / 0.75: {:+.6} / {:+.6}",
        back[cfg.n / 4 - 1],
        back[3 * cfg.n / 4 - 1]
    );

    // a sampled configuration
    let path = sample_poisson_path(20.0, 42)?;
    println!(
        "Poisson(20) draw has {} atoms; N(1/2) = {}",
        path.atoms().len(),
        path.count_at(0.5)
    );
    let norm = besov_inner(
        &donsker_map(&cfg, &path, 20.0)?,
        &donsker_map(&cfg, &path, 20.0)?,
    )?;
    println!("squared norm of its embedding: {norm:.6}");

    // Brownian statistics against the covariance quadratic form
    let eta = BesovVector::new(vec![1.0; cfg.n]);
    let target = v_beta_quadratic_form(&cfg, eta.values())?;
    let trials = 20_000;
    let mut sum = 0.0;
    let mut sq = 0.0;
    for s in 0..trials {
        let b = sample_brownian_path(&cfg, 1_000_000 + s)?;
        let v = besov_inner(&eta, &b)?;
        sum += v;
        sq += v * v;
    }
    let mean = sum / trials as f64;
    let var = sq / trials as f64 - mean * mean;
    println!("Var(<eta, B>) over {trials} paths = {var:.6}  (quadratic form {target:.6})");

    // paired rate experiment on a reduced budget
    let family = default_cylindrical_family(&cfg)?;
    let exp = functional_rate_experiment(&cfg, &family, &[1e2, 1e3, 1e4], 20_000, 7)?;
    for cell in &exp.cells {
        println!(
            "lambda {:>7}: max family gap {:.4e} (stderr {:.1e}) via {}",
            cell.lambda, cell.gap, cell.stderr, cell.best_function
        );
    }
    println!(
        "fitted exponent {:+.4}, two-sigma band [{:+.4}, {:+.4}]",
        exp.fit.exponent, exp.exponent_band.0, exp.exponent_band.1
    );
    Ok(())
}
