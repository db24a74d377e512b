//! The Ornstein-Uhlenbeck semigroup through the Mehler average and its
//! interplay with the generator, the adjoint, and the Hermite basis.
//!
//! ```bash
//! cargo run --release -p steinlab --example mehler_semigroup
//! ```

use steinlab::gauss::{
    functions, gaussian_adjoint, hermite, mehler_apply, ou_generator, ou_kernel_time_integral,
    semigroup_derivative, GaussHermiteRule, TimeKernel,
};

fn main() -> steinlab::Result<()> {
    let rule = GaussHermiteRule::shared(128)?;

    // P_t x = e^{-t} x
    let id = functions::identity();
    let (t, x) = (0.7, 1.3);
    println!(
        "P_t id({x}) = {:.12} vs e^(-t) x = {:.12}",
        mehler_apply(&id, t, x, &rule)?,
        (-t).exp() * x
    );

    // eigenfunction relation P_t H_n = e^{-nt} H_n
    for n in [1u32, 3, 6] {
        let hn = functions::hermite_poly(n);
        let got = mehler_apply(&hn, t, x, &rule)?;
        let want = (-(n as f64) * t).exp() * hermite(n, x)?;
        println!("P_t H{n}({x}) = {got:+.9}  (e^(-{n}t) H{n} = {want:+.9})");
    }

    // generator and adjoint: L F = x F' - F'' = D*(F')
    let f = functions::sine(1.3);
    let fp = f.derivative_fn()?;
    println!(
        "L F(0.4) = {:+.12} = D* F'(0.4) = {:+.12}",
        ou_generator(&f, 0.4)?,
        gaussian_adjoint(&fp, 0.4)?
    );

    // commutation: (P_t F)' = e^{-t} P_t F'
    let lhs = semigroup_derivative(&f, t, x, 1, &rule)?;
    let rhs = (-t).exp() * mehler_apply(&fp, t, x, &rule)?;
    println!("(P_t F)'  = {lhs:+.12} vs e^(-t) P_t F' = {rhs:+.12}");

    // stationarity: E[L F] = 0 for polynomials
    let quartic = functions::monomial(4);
    println!(
        "E[L Y^4]  = {:+.3e}   (stationarity of the standard normal)",
        rule.expectation(|y| ou_generator(&quartic, y).unwrap())
    );

    // kernel time integrals behind the explicit bound constant
    println!(
        "time integral of the mixed kernel = {:.12} (pi/4 = {:.12})",
        ou_kernel_time_integral(TimeKernel::Mixed3),
        std::f64::consts::FRAC_PI_4
    );
    println!(
        "pure kernel with k = 2 diverges: {}",
        ou_kernel_time_integral(TimeKernel::Pure(2))
    );
    Ok(())
}
