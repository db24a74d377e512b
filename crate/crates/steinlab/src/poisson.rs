//! Poisson Dirichlet structure on the nonnegative integers.
//!
//! The generator is the M/M/infinity queue generator
//! `L F(n) = lambda (F(n+1) - F(n)) + n (F(n-1) - F(n))` with the boundary
//! convention `0 * F(-1) = 0`; its stationary law is Poisson(lambda). The
//! gradient is the forward difference `D F(n) = F(n+1) - F(n)` and the
//! adjoint for the Poisson scalar product is
//! `D* G(n) = (n / lambda) G(n-1) - G(n)`. With these definitions the
//! algebraic relation is `L = -lambda D* D`; the composition `D* D` alone
//! differs from `L` by that sign and scale factor.
//!
//! Expectations are exact truncated series: the truncation point comes from
//! the Chernoff tail bound `exp(-lambda h(n / lambda))`,
//! `h(u) = u ln u - u + 1`, multiplied by the declared growth envelope, and
//! each value carries its truncation bound.

use std::sync::Arc;

use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::numeric::KahanSum;

/// Poisson law with positive intensity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoissonLaw {
    lambda: f64,
}

impl PoissonLaw {
    pub fn new(lambda: f64) -> Result<Self> {
        if lambda.is_nan() || lambda <= 0.0 || !lambda.is_finite() {
            return Err(Error::InvalidLaw(format!(
                "Poisson intensity must be positive and finite, got {lambda}"
            )));
        }
        Ok(Self { lambda })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Probability mass at `n`, computed in log space so that intensities up
    /// to 1e6 stay inside f64 range.
    pub fn pmf(&self, n: u64) -> f64 {
        self.log_pmf(n).exp()
    }

    pub fn log_pmf(&self, n: u64) -> f64 {
        -self.lambda + n as f64 * self.lambda.ln() - ln_gamma(n as f64 + 1.0)
    }

    /// Chernoff bound on the tail beyond `n` (upper tail for `n >= lambda`,
    /// lower tail for `n <= lambda`).
    pub fn chernoff_tail(&self, n: u64) -> f64 {
        let u = n as f64 / self.lambda;
        (-self.lambda * cramer_rate(u)).exp()
    }
}

/// Cramer rate function `h(u) = u ln u - u + 1` of the unit Poisson law.
fn cramer_rate(u: f64) -> f64 {
    if u == 0.0 {
        1.0
    } else {
        u * u.ln() - u + 1.0
    }
}

/// Declared polynomial envelope `|F(n)| <= c (1 + n)^p`.
#[derive(Debug, Clone, Copy)]
pub struct GrowthBound {
    pub c: f64,
    pub p: f64,
}

impl GrowthBound {
    pub fn envelope(&self, n: f64) -> f64 {
        self.c * (1.0 + n).powf(self.p)
    }
}

type DiscreteEval = Arc<dyn Fn(u64) -> f64 + Send + Sync>;

/// A function on the nonnegative integers, optionally with a growth bound.
///
/// The growth bound, when declared, is checked on `n in [0, 200]` at
/// construction; expectation of an unbounded function without a declared
/// bound is a contract error.
#[derive(Clone)]
pub struct DiscreteFunction {
    eval: DiscreteEval,
    growth: Option<GrowthBound>,
}

impl std::fmt::Debug for DiscreteFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DiscreteFunction")
            .field("growth", &self.growth)
            .finish()
    }
}

impl DiscreteFunction {
    pub fn new(eval: impl Fn(u64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            eval: Arc::new(eval),
            growth: None,
        }
    }

    /// Declare and validate a growth bound on the probe range [0, 200].
    pub fn with_growth(
        eval: impl Fn(u64) -> f64 + Send + Sync + 'static,
        growth: GrowthBound,
    ) -> Result<Self> {
        let f = Self {
            eval: Arc::new(eval),
            growth: Some(growth),
        };
        f.validate_growth()?;
        Ok(f)
    }

    /// Bounded function: envelope `(sup, 0)`.
    pub fn bounded(eval: impl Fn(u64) -> f64 + Send + Sync + 'static, sup: f64) -> Result<Self> {
        Self::with_growth(eval, GrowthBound { c: sup, p: 0.0 })
    }

    fn from_parts(eval: DiscreteEval, growth: Option<GrowthBound>) -> Self {
        Self { eval, growth }
    }

    fn validate_growth(&self) -> Result<()> {
        if let Some(g) = self.growth {
            for n in 0..=200_u64 {
                let v = (self.eval)(n).abs();
                if v > g.envelope(n as f64) * (1.0 + 1e-12) {
                    return Err(Error::Contract(format!(
                        "growth bound violated at n = {n}: |F(n)| = {v:.6e} exceeds \
                         {:.6e}",
                        g.envelope(n as f64)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn eval(&self, n: u64) -> f64 {
        (self.eval)(n)
    }

    pub fn growth(&self) -> Option<GrowthBound> {
        self.growth
    }
}

/// A truncated-series expectation together with its truncation certificate.
#[derive(Debug, Clone, Copy)]
pub struct TailSum {
    pub value: f64,
    pub truncation_bound: f64,
    pub first_term: u64,
    pub last_term: u64,
}

/// Summation window `[lo, hi]` for an expectation under `law` of a function
/// with the given growth envelope: the smallest window around the mean where
/// the Chernoff-bound-times-envelope criterion keeps each truncated tail
/// below `tol / 2`. Returns `(lo, hi, truncation_bound)`.
pub fn truncation_window(
    law: &PoissonLaw,
    growth: GrowthBound,
    tol: f64,
) -> Result<(u64, u64, f64)> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let lambda = law.lambda();
    let half = 0.5 * tol;

    let mut hi = lambda.ceil() as u64;
    let mut hi_bound = law.chernoff_tail(hi) * growth.envelope(hi as f64);
    while hi_bound >= half {
        hi += 1;
        hi_bound = law.chernoff_tail(hi) * growth.envelope(hi as f64);
        if hi > lambda as u64 + 100_000_000 {
            return Err(Error::InvalidArgument(format!(
                "truncation search did not terminate for lambda = {lambda}, tol = {tol}"
            )));
        }
    }

    let mut lo = lambda.floor() as u64;
    let mut lo_bound = 0.0;
    while lo > 0 {
        let candidate = law.chernoff_tail(lo - 1) * growth.envelope(lambda.max(lo as f64));
        if candidate < half {
            lo_bound = candidate;
            break;
        }
        lo -= 1;
    }
    if lo == 0 {
        lo_bound = 0.0;
    }
    Ok((lo, hi, lo_bound + hi_bound))
}

/// `E[F(N)]` for `N ~ Poisson(lambda)` by exact summation over the
/// [`truncation_window`]; the returned value carries its truncation bound.
pub fn poisson_expectation(f: &DiscreteFunction, law: &PoissonLaw, tol: f64) -> Result<TailSum> {
    let growth = f.growth().ok_or_else(|| {
        Error::Contract("poisson_expectation requires a declared growth bound".into())
    })?;
    let (lo, hi, truncation_bound) = truncation_window(law, growth, tol)?;
    let mut acc = KahanSum::new();
    for n in lo..=hi {
        acc.add(f.eval(n) * law.pmf(n));
    }
    Ok(TailSum {
        value: acc.value(),
        truncation_bound,
        first_term: lo,
        last_term: hi,
    })
}

/// Forward difference `D F(n) = F(n+1) - F(n)`.
pub fn discrete_gradient(f: &DiscreteFunction) -> DiscreteFunction {
    let inner = f.eval.clone();
    let growth = f.growth().map(|g| GrowthBound {
        // |F(n+1)| <= c (2 + n)^p <= c 2^p (1 + n)^p
        c: g.c * (2f64.powf(g.p) + 1.0),
        p: g.p,
    });
    DiscreteFunction::from_parts(Arc::new(move |n| inner(n + 1) - inner(n)), growth)
}

/// Poisson adjoint `D* G(n) = (n / lambda) G(n-1) - G(n)`, with the
/// convention that the first term vanishes at `n = 0`.
pub fn discrete_adjoint(g: &DiscreteFunction, law: &PoissonLaw) -> DiscreteFunction {
    let inner = g.eval.clone();
    let lambda = law.lambda();
    let growth = g.growth().map(|gb| GrowthBound {
        c: gb.c * (1.0 + 1.0 / lambda),
        p: gb.p + 1.0,
    });
    DiscreteFunction::from_parts(
        Arc::new(move |n| {
            if n == 0 {
                -inner(0)
            } else {
                n as f64 / lambda * inner(n - 1) - inner(n)
            }
        }),
        growth,
    )
}

/// M/M/infinity generator
/// `L F(n) = lambda (F(n+1) - F(n)) + n (F(n-1) - F(n))`, `0 F(-1) = 0`.
pub fn mm_infinity_generator(f: &DiscreteFunction, lambda: f64) -> DiscreteFunction {
    let inner = f.eval.clone();
    let growth = f.growth().map(|g| GrowthBound {
        c: 2.0 * g.c * 2f64.powf(g.p) * (lambda + 1.0),
        p: g.p + 1.0,
    });
    DiscreteFunction::from_parts(
        Arc::new(move |n| {
            let up = lambda * (inner(n + 1) - inner(n));
            let down = if n == 0 {
                0.0
            } else {
                n as f64 * (inner(n - 1) - inner(n))
            };
            up + down
        }),
        growth,
    )
}

/// Residual of the integration-by-parts identity
/// `E[D F . G] = E[F . D* G]`; a property-test statistic expected below
/// 1e-10 for polynomially bounded inputs.
pub fn ibp_residual(f: &DiscreteFunction, g: &DiscreteFunction, law: &PoissonLaw) -> Result<f64> {
    if f.growth().is_none() || g.growth().is_none() {
        return Err(Error::Contract(
            "ibp_residual needs growth bounds on both functions".into(),
        ));
    }
    let tol = 1e-13;
    let df = discrete_gradient(f);
    let gstar = discrete_adjoint(g, law);
    let product_growth = |a: &DiscreteFunction, b: &DiscreteFunction| GrowthBound {
        c: a.growth().unwrap().c * b.growth().unwrap().c,
        p: a.growth().unwrap().p + b.growth().unwrap().p,
    };
    let lhs_fn = {
        let df_eval = df.eval.clone();
        let g_eval = g.eval.clone();
        DiscreteFunction::from_parts(
            Arc::new(move |n| df_eval(n) * g_eval(n)),
            Some(product_growth(&df, g)),
        )
    };
    let rhs_fn = {
        let f_eval = f.eval.clone();
        let gs_eval = gstar.eval.clone();
        DiscreteFunction::from_parts(
            Arc::new(move |n| f_eval(n) * gs_eval(n)),
            Some(product_growth(f, &gstar)),
        )
    };
    let lhs = poisson_expectation(&lhs_fn, law, tol)?;
    let rhs = poisson_expectation(&rhs_fn, law, tol)?;
    Ok((lhs.value - rhs.value).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn poly(coeffs: Vec<f64>) -> DiscreteFunction {
        let degree = coeffs.len().saturating_sub(1) as f64;
        let c: f64 = coeffs.iter().map(|a| a.abs()).sum::<f64>().max(1.0);
        DiscreteFunction::with_growth(
            move |n| {
                let x = n as f64;
                coeffs.iter().rev().fold(0.0, |acc, a| acc * x + a)
            },
            GrowthBound { c, p: degree },
        )
        .unwrap()
    }

    #[test]
    fn expectation_mean() {
        let law = PoissonLaw::new(3.0).unwrap();
        let f = poly(vec![0.0, 1.0]);
        let r = poisson_expectation(&f, &law, 1e-12).unwrap();
        assert_abs_diff_eq!(r.value, 3.0, epsilon = 1e-11);
        assert!(r.truncation_bound < 1e-12);
    }

    #[test]
    fn expectation_factorial_moment() {
        // E[N (N - 1)] = lambda^2, truncated-sum oracle
        let law = PoissonLaw::new(2.0).unwrap();
        let f = poly(vec![0.0, -1.0, 1.0]);
        let r = poisson_expectation(&f, &law, 1e-12).unwrap();
        assert_abs_diff_eq!(r.value, 4.0, epsilon = 1e-11);
    }

    #[test]
    fn expectation_third_central_moment() {
        let lambda = 5.0;
        let law = PoissonLaw::new(lambda).unwrap();
        let f = DiscreteFunction::with_growth(
            move |n| (n as f64 - lambda).powi(3),
            GrowthBound { c: 216.0, p: 3.0 },
        )
        .unwrap();
        let r = poisson_expectation(&f, &law, 1e-12).unwrap();
        assert_abs_diff_eq!(r.value, 5.0, epsilon = 1e-10);
    }

    #[test]
    fn expectation_large_lambda_stays_in_range() {
        let law = PoissonLaw::new(1e6).unwrap();
        let f = poly(vec![0.0, 1.0]);
        let r = poisson_expectation(&f, &law, 1e-9).unwrap();
        // the log-space pmf anchors three ~1.3e7 terms that cancel to O(1),
        // so ~5e-9 relative accuracy is the f64 limit at this intensity
        assert_abs_diff_eq!(r.value / 1e6, 1.0, epsilon = 5e-9);
        assert!(r.last_term - r.first_term < 40_000);
    }

    #[test]
    fn expectation_rejects_bad_inputs() {
        let law = PoissonLaw::new(1.0).unwrap();
        let f = poly(vec![1.0]);
        assert!(matches!(
            poisson_expectation(&f, &law, 0.0),
            Err(Error::InvalidArgument(_))
        ));
        let unbounded = DiscreteFunction::new(|n| n as f64);
        assert!(matches!(
            poisson_expectation(&unbounded, &law, 1e-10),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn growth_bound_violation_is_caught() {
        // 2^n outgrows every polynomial envelope on the probe range
        let bad =
            DiscreteFunction::with_growth(|n| 2f64.powi(n as i32), GrowthBound { c: 10.0, p: 3.0 });
        assert!(matches!(bad, Err(Error::Contract(_))));
    }

    #[test]
    fn truncation_is_sound_under_doubling() {
        let law = PoissonLaw::new(7.0).unwrap();
        let f = poly(vec![1.0, 0.0, 0.5, 0.25]);
        let coarse = poisson_expectation(&f, &law, 1e-6).unwrap();
        let fine = poisson_expectation(&f, &law, 1e-14).unwrap();
        assert!((coarse.value - fine.value).abs() <= coarse.truncation_bound);
    }

    #[test]
    fn gradient_examples() {
        let f = poly(vec![0.0, 1.0]);
        let df = discrete_gradient(&f);
        for n in 0..50 {
            assert_abs_diff_eq!(df.eval(n), 1.0);
        }
        let g = poly(vec![0.0, 0.0, 1.0]);
        let dg = discrete_gradient(&g);
        for n in 0..50 {
            assert_abs_diff_eq!(dg.eval(n), 2.0 * n as f64 + 1.0);
        }
        let ddg = discrete_gradient(&dg);
        for n in 0..50 {
            assert_abs_diff_eq!(ddg.eval(n), 2.0);
        }
    }

    #[test]
    fn adjoint_examples() {
        let law = PoissonLaw::new(2.0).unwrap();
        let one = poly(vec![1.0]);
        let a = discrete_adjoint(&one, &law);
        for n in 1..20 {
            assert_abs_diff_eq!(a.eval(n), n as f64 / 2.0 - 1.0);
        }
        // boundary convention at n = 0
        let g = poly(vec![3.0, 1.0]);
        let ag = discrete_adjoint(&g, &law);
        assert_abs_diff_eq!(ag.eval(0), -3.0);
    }

    #[test]
    fn adjoint_duality() {
        let law = PoissonLaw::new(2.0).unwrap();
        let f = poly(vec![0.0, 0.0, 1.0]);
        let g = poly(vec![0.0, 1.0]);
        let resid = ibp_residual(&f, &g, &law).unwrap();
        assert!(resid < 1e-10, "residual {resid}");
    }

    #[test]
    fn ibp_trivial_for_constants() {
        let law = PoissonLaw::new(3.5).unwrap();
        let one = poly(vec![1.0]);
        let resid = ibp_residual(&one, &one, &law).unwrap();
        assert!(resid < 1e-12);
    }

    #[test]
    fn generator_examples() {
        let lambda = 2.5;
        let f = poly(vec![0.0, 1.0]);
        let lf = mm_infinity_generator(&f, lambda);
        for n in 0..30 {
            assert_abs_diff_eq!(lf.eval(n), lambda - n as f64, epsilon = 1e-12);
        }
        let c = poly(vec![4.0]);
        let lc = mm_infinity_generator(&c, lambda);
        for n in 0..30 {
            assert_abs_diff_eq!(lc.eval(n), 0.0);
        }
    }

    #[test]
    fn generator_annihilates_poisson_expectations() {
        for lambda in [0.5, 1.0, 4.0, 25.0] {
            let law = PoissonLaw::new(lambda).unwrap();
            let f = poly(vec![0.0, 0.0, 0.0, 1.0]);
            let lf = mm_infinity_generator(&f, lambda);
            let r = poisson_expectation(&lf, &law, 1e-13).unwrap();
            assert!(r.value.abs() < 1e-9, "lambda {lambda}: {}", r.value);
        }
    }

    #[test]
    fn generator_is_negative_scaled_adjoint_composition() {
        // L = -lambda D* D pointwise; the bare composition D* D differs
        // from L by exactly that sign and lambda factor.
        let lambda = 3.0;
        let law = PoissonLaw::new(lambda).unwrap();
        let f = poly(vec![1.0, -2.0, 0.5, 0.125]);
        let lf = mm_infinity_generator(&f, lambda);
        let dstar_d = discrete_adjoint(&discrete_gradient(&f), &law);
        for n in 0..=100 {
            assert_abs_diff_eq!(lf.eval(n), -lambda * dstar_d.eval(n), epsilon = 1e-9);
        }
    }

    #[test]
    fn one_jump_identity_from_ibp() {
        // sqrt(lambda) E[F(Z_hat + 1/sqrt(lambda)) - F(Z_hat)] = E[Z_hat F(Z_hat)]
        // for F smooth composed with the rescaling map.
        for lambda in [4.0_f64, 25.0] {
            let law = PoissonLaw::new(lambda).unwrap();
            let root = lambda.sqrt();
            let smooth = |x: f64| (0.7 * x).sin();
            let lhs_fn = DiscreteFunction::bounded(
                move |n| {
                    let z = (n as f64 - lambda) / root;
                    root * (smooth(z + 1.0 / root) - smooth(z))
                },
                2.0 * root,
            )
            .unwrap();
            let rhs_fn = DiscreteFunction::with_growth(
                move |n| {
                    let z = (n as f64 - lambda) / root;
                    z * smooth(z)
                },
                GrowthBound {
                    c: 1.0 + root,
                    p: 1.0,
                },
            )
            .unwrap();
            let lhs = poisson_expectation(&lhs_fn, &law, 1e-13).unwrap().value;
            let rhs = poisson_expectation(&rhs_fn, &law, 1e-13).unwrap().value;
            assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-10);
        }
    }
}
