//! The discrete Dirichlet structure: birth-death generator with unit
//! service rate, forward-difference gradient, and its Poisson adjoint.
//!
//! ```bash
//! cargo run --release -p steinlab --example poisson_structure
//! ```

use steinlab::poisson::{
    discrete_adjoint, discrete_gradient, ibp_residual, mm_infinity_generator, poisson_expectation,
    DiscreteFunction, GrowthBound, PoissonLaw,
};

fn main() -> steinlab::Result<()> {
    let lambda = 2.0;
    let law = PoissonLaw::new(lambda)?;

    let square = DiscreteFunction::with_growth(|n| (n * n) as f64, GrowthBound { c: 1.0, p: 2.0 })?;
    let linear = DiscreteFunction::with_growth(|n| n as f64, GrowthBound { c: 1.0, p: 1.0 })?;

    println!(
        "E[N]        = {:.12}  (mean {lambda})",
        poisson_expectation(&linear, &law, 1e-12)?.value
    );
    let factorial = DiscreteFunction::with_growth(
        |n| (n * n) as f64 - n as f64,
        GrowthBound { c: 2.0, p: 2.0 },
    )?;
    println!(
        "E[N(N-1)]   = {:.12}  (lambda^2 = {})",
        poisson_expectation(&factorial, &law, 1e-12)?.value,
        lambda * lambda
    );

    // gradient and adjoint
    let grad = discrete_gradient(&square);
    println!("D(n^2)(3)   = {}  (2n + 1 at 3)", grad.eval(3));
    let adj = discrete_adjoint(&linear, &law);
    println!("D*(n)(0)    = {}  (boundary convention -G(0))", adj.eval(0));

    // integration by parts: E[DF G] = E[F D*G]
    println!(
        "ibp residual = {:.3e}",
        ibp_residual(&square, &linear, &law)?
    );

    // the generator drifts toward lambda and kills stationary expectations
    let lf = mm_infinity_generator(&linear, lambda);
    println!("L(n)(5)     = {}  (lambda - n at 5)", lf.eval(5));
    let cubic =
        DiscreteFunction::with_growth(|n| (n as f64).powi(3), GrowthBound { c: 1.0, p: 3.0 })?;
    let lcubic = mm_infinity_generator(&cubic, 4.0);
    let law4 = PoissonLaw::new(4.0)?;
    println!(
        "E[L n^3] under Poisson(4) = {:+.3e}  (stationarity)",
        poisson_expectation(&lcubic, &law4, 1e-12)?.value
    );

    // truncation certificate in action
    let tail = poisson_expectation(&cubic, &law4, 1e-10)?;
    println!(
        "E[n^3] = {:.10} summed over n in [{}, {}], truncation bound {:.1e}",
        tail.value, tail.first_term, tail.last_term, tail.truncation_bound
    );
    Ok(())
}
