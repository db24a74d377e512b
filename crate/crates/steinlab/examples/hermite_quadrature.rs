//! Probabilists' Hermite polynomials and the Gauss-Hermite rule.
//!
//! ```bash
//! cargo run --release -p steinlab --example hermite_quadrature
//! ```

use steinlab::gauss::{adaptive_gauss_expectation, hermite, GaussHermiteRule};

fn main() -> steinlab::Result<()> {
    println!("H_3(2) = {}   (x^3 - 3x at 2)", hermite(3, 2.0)?);

    let rule = GaussHermiteRule::shared(64)?;
    println!("order-64 rule: sum of weights = {:.16}", {
        let s: f64 = rule.weights().iter().sum();
        s
    });
    println!("E[Y^2]  = {:.15}", rule.expectation(|x| x * x));
    println!(
        "<H2,H3> = {:+.3e}   (orthogonality)",
        rule.expectation(|x| hermite(2, x).unwrap() * hermite(3, x).unwrap())
    );
    println!(
        "<H3,H3> = {:.12}   (3! = 6)",
        rule.expectation(|x| hermite(3, x).unwrap().powi(2))
    );
    println!(
        "E[H3 Y^3] = {:.12} (x^3 = H3 + 3 H1)",
        rule.expectation(|x| hermite(3, x).unwrap() * x.powi(3))
    );

    // E|Y| has a kink at the origin, so the rule converges only slowly
    let target = (2.0 / std::f64::consts::PI).sqrt();
    for order in [64, 128, 256] {
        let v = GaussHermiteRule::shared(order)?.expectation(|x| x.abs());
        println!(
            "E|Y| at order {order:>3}: {v:.10}  (target {target:.10}, err {:.2e})",
            (v - target).abs()
        );
    }

    let adaptive = adaptive_gauss_expectation(|x| (0.7 * x).sin() + x * x)?;
    println!(
        "adaptive E[sin(0.7Y) + Y^2] = {:.13} at order {} (step gap {:.1e})",
        adaptive.value, adaptive.order, adaptive.error_estimate
    );
    Ok(())
}
