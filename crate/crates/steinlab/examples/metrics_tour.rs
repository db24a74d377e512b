//! Tour of the probability metrics on one-dimensional laws.
//!
//! ```bash
//! cargo run --release -p steinlab --example metrics_tour
//! ```

use steinlab::metrics::{
    f_divergence, hellinger, kr_dual_lower_bound, total_variation, wasserstein1_1d,
    ConvexGenerator, ProbabilityLaw1D,
};
use steinlab::stein;

fn main() -> steinlab::Result<()> {
    let std_normal = ProbabilityLaw1D::gaussian(0.0, 1.0)?;
    let shifted = ProbabilityLaw1D::gaussian(1.0, 1.0)?;

    let kl = f_divergence(&ConvexGenerator::kullback_leibler(), &shifted, &std_normal)?;
    println!("KL( N(1,1) || N(0,1) )      = {kl:.12}   (closed form 0.5)");

    let b7 = ProbabilityLaw1D::bernoulli(0.7)?;
    let b4 = ProbabilityLaw1D::bernoulli(0.4)?;
    println!(
        "TV( Ber(0.7), Ber(0.4) )    = {:.12}   (enumeration 0.3)",
        total_variation(&b7, &b4)?
    );
    println!(
        "D_|t-1| same pair           = {:.12}   (twice the TV)",
        f_divergence(&ConvexGenerator::absolute_difference(), &b7, &b4)?
    );

    let h = hellinger(&std_normal, &shifted)?;
    let closed = (2.0 - 2.0 * (-0.125_f64).exp()).sqrt();
    println!("Hellinger(N(0,1), N(1,1))   = {h:.12}   (closed form {closed:.12})");

    println!(
        "W1( N(0,1), N(1,1) )        = {:.12}   (translation distance 1)",
        wasserstein1_1d(&std_normal, &shifted)?
    );

    // Poisson pair against the truncated half-sum
    let p1 = ProbabilityLaw1D::poisson(1.0)?;
    let p2 = ProbabilityLaw1D::poisson(2.0)?;
    println!(
        "TV( Poisson(1), Poisson(2)) = {:.12}",
        total_variation(&p1, &p2)?
    );

    // duality lower bound vs the analytic envelope at lambda = 4
    let image = ProbabilityLaw1D::rescaled_poisson_image(4.0)?;
    let family = vec![
        steinlab::gauss::functions::identity(),
        steinlab::gauss::functions::sine(1.0),
        stein::family::arctan(),
    ];
    let lower = kr_dual_lower_bound(&std_normal, &image, &family)?;
    let upper = stein::c2b_envelope(4.0);
    println!("duality lower bound at lambda=4: {lower:.6} <= analytic envelope {upper:.6}");
    Ok(())
}
