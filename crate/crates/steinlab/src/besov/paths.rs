//! Path samplers, the rescaled-Poisson embedding, and the functional rate
//! experiment on the discretized fractional-smoothness space.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson, StandardNormal};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};
use crate::gauss::SmoothTestFunction;
use crate::numeric::{splitmix64, KahanSum};
use crate::poisson::PoissonLaw;
use crate::stein::{fit_rate, RateFit};

use super::frac::{frac_derivative_left, frac_integral_left, solve_left_transpose, GridConfig};

/// A finite configuration of jump times strictly inside (0, 1), sorted.
/// Serializes as the flat array of jump times.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
#[serde(transparent)]
pub struct CountingPath {
    atoms: Vec<f64>,
}

impl CountingPath {
    pub fn new(mut atoms: Vec<f64>) -> Result<Self> {
        if atoms
            .iter()
            .any(|t| !t.is_finite() || *t <= 0.0 || *t >= 1.0)
        {
            return Err(Error::InvalidArgument(
                "counting-path atoms must lie strictly inside (0, 1)".into(),
            ));
        }
        atoms.sort_by(|a, b| a.partial_cmp(b).expect("atoms are finite"));
        Ok(Self { atoms })
    }

    pub fn atoms(&self) -> &[f64] {
        &self.atoms
    }

    /// `N(t)`: number of atoms in `[0, t]`.
    pub fn count_at(&self, t: f64) -> usize {
        self.atoms.partition_point(|&a| a <= t)
    }
}

/// An element of the fractional-smoothness space, stored through its
/// square-integrable derivative representative sampled at panel midpoints.
/// Serializes as the flat array of derivative samples.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
#[serde(transparent)]
pub struct BesovVector {
    values: Vec<f64>,
}

impl BesovVector {
    pub fn new(values: Vec<f64>) -> Self {
        Self { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Scalar product of the space: midpoint-rule L^2 pairing of the
/// derivative representatives.
pub fn besov_inner(f: &BesovVector, g: &BesovVector) -> Result<f64> {
    if f.len() != g.len() {
        return Err(Error::InvalidArgument(format!(
            "grid mismatch: {} vs {} panels",
            f.len(),
            g.len()
        )));
    }
    let h = 1.0 / f.len() as f64;
    let mut acc = KahanSum::new();
    for (a, b) in f.values().iter().zip(g.values()) {
        acc.add(a * b);
    }
    Ok(h * acc.value())
}

pub fn besov_norm(f: &BesovVector) -> f64 {
    besov_inner(f, f).expect("same grid").max(0.0).sqrt()
}

/// Embed grid samples of a path (values at the nodes `i/n`) into the
/// space by taking the discrete fractional derivative of order `beta`.
pub fn embed_path_samples(cfg: &GridConfig, samples: &[f64]) -> Result<BesovVector> {
    if samples.len() != cfg.n {
        return Err(Error::InvalidArgument(format!(
            "path has {} samples, grid has {} nodes",
            samples.len(),
            cfg.n
        )));
    }
    Ok(BesovVector::new(frac_derivative_left(cfg.beta, samples)?))
}

/// Reconstruct the node samples of the path represented by a vector.
pub fn reconstruct_path(cfg: &GridConfig, v: &BesovVector) -> Result<Vec<f64>> {
    frac_integral_left(cfg.beta, v.values())
}

/// The compensated rescaling map on counting paths:
/// `N -> (t -> (N(t) - lambda t) / sqrt(lambda))`, sampled at the grid
/// nodes and embedded through the fractional derivative.
pub fn donsker_map(cfg: &GridConfig, path: &CountingPath, lambda: f64) -> Result<BesovVector> {
    PoissonLaw::new(lambda)?;
    let root = lambda.sqrt();
    let h = cfg.panel_width();
    let samples: Vec<f64> = (1..=cfg.n)
        .map(|i| {
            let t = i as f64 * h;
            (path.count_at(t) as f64 - lambda * t) / root
        })
        .collect();
    embed_path_samples(cfg, &samples)
}

/// Poisson process of intensity `lambda` on [0, 1]: atom count is
/// Poisson(lambda), positions i.i.d. uniform; deterministic under the seed.
pub fn sample_poisson_path(lambda: f64, seed: u64) -> Result<CountingPath> {
    PoissonLaw::new(lambda)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = Poisson::new(lambda)
        .map_err(|e| Error::InvalidArgument(format!("poisson sampler: {e}")))?
        .sample(&mut rng) as usize;
    let mut atoms = Vec::with_capacity(count);
    while atoms.len() < count {
        let u: f64 = rng.gen();
        if u > 0.0 && u < 1.0 {
            atoms.push(u);
        }
    }
    CountingPath::new(atoms)
}

/// Brownian path on the grid: a Gaussian random walk with increment
/// variance equal to the panel width, embedded through the fractional
/// derivative; deterministic under the seed.
pub fn sample_brownian_path(cfg: &GridConfig, seed: u64) -> Result<BesovVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let root_h = cfg.panel_width().sqrt();
    let mut level = 0.0;
    let samples: Vec<f64> = (0..cfg.n)
        .map(|_| {
            let z: f64 = StandardNormal.sample(&mut rng);
            level += root_h * z;
            level
        })
        .collect();
    embed_path_samples(cfg, &samples)
}

/// A cylindrical path functional `F(omega) = phi(<eta, omega>)`, rescaled
/// so that `F` lies in the unit ball of twice-differentiable functionals
/// with bounded differentials: the scale is the max of `sup|phi|`,
/// `sup|phi'| * |eta|` and `sup|phi''| * |eta|^2` measured on the probe
/// grid.
#[derive(Debug, Clone)]
pub struct CylindricalFunctional {
    name: String,
    eta: BesovVector,
    phi: SmoothTestFunction,
    scale: f64,
}

impl CylindricalFunctional {
    pub fn new(name: impl Into<String>, eta: BesovVector, phi: SmoothTestFunction) -> Result<Self> {
        if phi.max_order() < 2 {
            return Err(Error::Contract(
                "cylindrical functionals need phi with two derivatives".into(),
            ));
        }
        let norm = besov_norm(&eta);
        let grid = crate::numeric::probe_grid();
        let sup = |k: usize| -> f64 {
            grid.iter()
                .map(|&x| phi.deriv(k, x).expect("order checked").abs())
                .fold(0.0, f64::max)
        };
        let scale = sup(0)
            .max(sup(1) * norm)
            .max(sup(2) * norm * norm)
            .max(1e-300);
        Ok(Self {
            name: name.into(),
            eta,
            phi,
            scale,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eta(&self) -> &BesovVector {
        &self.eta
    }

    /// Evaluate on an element of the space.
    pub fn eval(&self, omega: &BesovVector) -> Result<f64> {
        Ok(self.phi.eval(besov_inner(&self.eta, omega)?) / self.scale)
    }

    fn eval_statistic(&self, s: f64) -> f64 {
        self.phi.eval(s) / self.scale
    }
}

/// Default cylindrical family: three smooth directions paired with odd,
/// bounded profiles tuned to the direction's variance so the third-moment
/// response stays visible at large intensities.
pub fn default_cylindrical_family(cfg: &GridConfig) -> Result<Vec<CylindricalFunctional>> {
    let mids = cfg.midpoints();
    let etas: Vec<(String, Vec<f64>)> = vec![
        ("flat".into(), vec![1.0; cfg.n]),
        (
            "halfwave".into(),
            mids.iter()
                .map(|&x| (std::f64::consts::PI * x).sin())
                .collect(),
        ),
        (
            "parabolic".into(),
            mids.iter().map(|&x| 4.0 * x * (1.0 - x)).collect(),
        ),
    ];
    let mut family = Vec::new();
    for (name, eta_dot) in etas {
        let eta = BesovVector::new(eta_dot);
        let sigma2 = super::frac::v_beta_quadratic_form(cfg, eta.values())?;
        let a = 1.0 / sigma2.sqrt().max(1e-12);
        family.push(CylindricalFunctional::new(
            format!("sin/{name}"),
            eta.clone(),
            crate::gauss::functions::sine(a),
        )?);
        family.push(CylindricalFunctional::new(
            format!("tanh/{name}"),
            eta,
            tanh_profile(a),
        )?);
    }
    Ok(family)
}

fn tanh_profile(a: f64) -> SmoothTestFunction {
    use std::sync::Arc;
    SmoothTestFunction::new(
        format!("tanh-{a:.3}"),
        crate::gauss::NormClass::Unbounded,
        vec![
            Arc::new(move |x: f64| (a * x).tanh()),
            Arc::new(move |x: f64| a * (1.0 - (a * x).tanh().powi(2))),
            Arc::new(move |x: f64| {
                let t = (a * x).tanh();
                -2.0 * a * a * t * (1.0 - t * t)
            }),
        ],
    )
    .expect("tanh profile is valid")
}

/// One lambda cell of the rate experiment.
#[derive(Debug, Clone, serde::Serialize)]
pub struct RateCell {
    pub lambda: f64,
    /// Max over the family of |E F(T(N_lambda)) - E F(B)|.
    pub gap: f64,
    /// Monte Carlo standard error of the maximizing member's gap.
    pub stderr: f64,
    pub best_function: String,
}

/// Result of the functional rate experiment.
#[derive(Debug, Clone, serde::Serialize)]
pub struct RateExperiment {
    pub cells: Vec<RateCell>,
    pub fit: RateFit,
    /// Two-sigma confidence band for the fitted exponent, from the per-cell
    /// Monte Carlo errors propagated through the least-squares weights.
    pub exponent_band: (f64, f64),
}

/// Paired Monte Carlo estimate of
/// `max_F |E[F(T(N_lambda))] - E[F(B)]|` over a lambda grid, with a
/// log-log fit of the decay.
///
/// Pairing: both laws are driven by common per-panel uniforms (the
/// Poisson panel count through its inverse CDF, the Brownian increment
/// through the normal quantile), so each marginal is exact while the
/// difference estimator has strongly reduced variance. The Poisson side
/// samples per-panel counts, which is the law of the counting path
/// restricted to the grid.
pub fn functional_rate_experiment(
    cfg: &GridConfig,
    family: &[CylindricalFunctional],
    lambdas: &[f64],
    samples_per_lambda: usize,
    seed: u64,
) -> Result<RateExperiment> {
    if family.is_empty() {
        return Err(Error::InvalidArgument(
            "rate experiment needs a nonempty family".into(),
        ));
    }
    if lambdas.len() < 3 {
        return Err(Error::InvalidArgument(
            "rate experiment needs at least three lambda values".into(),
        ));
    }
    let n = cfg.n;
    let h = cfg.panel_width();
    let normal = Normal::new(0.0, 1.0).expect("standard normal");

    // Per-member statistic weights: S = <eta_dot, D_beta path>_h
    //   = (h L_beta^{-T} eta_dot) . path-samples, then telescoped to the
    // per-panel increments by tail sums.
    let tail_weights: Vec<Vec<f64>> = family
        .iter()
        .map(|f| {
            let mut omega = solve_left_transpose(cfg.beta, f.eta().values());
            for w in &mut omega {
                *w *= h;
            }
            let mut tails = vec![0.0; n];
            let mut acc = 0.0;
            for i in (0..n).rev() {
                acc += omega[i];
                tails[i] = acc;
            }
            tails
        })
        .collect();

    let mut cells = Vec::with_capacity(lambdas.len());
    for (li, &lambda) in lambdas.iter().enumerate() {
        PoissonLaw::new(lambda)?;
        let mean_count = lambda * h;
        let quantile_table = poisson_quantile_table(mean_count)?;
        let root_lambda = lambda.sqrt();
        let root_h = h.sqrt();

        let m = family.len();
        let mut diff_sum = vec![KahanSum::new(); m];
        let mut diff_sq_sum = vec![KahanSum::new(); m];
        let mut s_poisson = vec![0.0_f64; m];
        let mut s_brownian = vec![0.0_f64; m];

        for sample in 0..samples_per_lambda {
            let task = seed ^ splitmix64((li as u64) << 32 | sample as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(task);
            s_poisson.iter_mut().for_each(|v| *v = 0.0);
            s_brownian.iter_mut().for_each(|v| *v = 0.0);
            for j in 0..n {
                let u: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
                let count = poisson_quantile(&quantile_table, u);
                let dp = (count - mean_count) / root_lambda;
                let db = root_h * normal.inverse_cdf(u);
                for (k, tails) in tail_weights.iter().enumerate() {
                    s_poisson[k] += tails[j] * dp;
                    s_brownian[k] += tails[j] * db;
                }
            }
            for k in 0..m {
                let d = family[k].eval_statistic(s_poisson[k])
                    - family[k].eval_statistic(s_brownian[k]);
                diff_sum[k].add(d);
                diff_sq_sum[k].add(d * d);
            }
        }

        let ns = samples_per_lambda as f64;
        let mut best_gap = -1.0;
        let mut best_se = 0.0;
        let mut best_name = String::new();
        for k in 0..m {
            let mean = diff_sum[k].value() / ns;
            let var = (diff_sq_sum[k].value() / ns - mean * mean).max(0.0);
            let se = (var / ns).sqrt();
            if mean.abs() > best_gap {
                best_gap = mean.abs();
                best_se = se;
                best_name = family[k].name().to_string();
            }
        }
        if best_se > 0.5 * best_gap {
            return Err(Error::InconclusiveSampleSize(format!(
                "at lambda = {lambda} the Monte Carlo error {best_se:.3e} exceeds half \
                 the estimated gap {best_gap:.3e}; increase the sample budget"
            )));
        }
        cells.push(RateCell {
            lambda,
            gap: best_gap,
            stderr: best_se,
            best_function: best_name,
        });
    }

    let pairs: Vec<(f64, f64)> = cells.iter().map(|c| (c.lambda, c.gap)).collect();
    let fit = fit_rate(&pairs)?;
    // propagate per-cell log errors through the least-squares slope weights
    let xs: Vec<f64> = pairs.iter().map(|p| p.0.ln()).collect();
    let xbar = xs.iter().sum::<f64>() / xs.len() as f64;
    let sxx: f64 = xs.iter().map(|x| (x - xbar).powi(2)).sum();
    let slope_var: f64 = cells
        .iter()
        .zip(&xs)
        .map(|(c, x)| {
            let log_se = c.stderr / c.gap;
            ((x - xbar) / sxx * log_se).powi(2)
        })
        .sum();
    let half_band = 2.0 * slope_var.sqrt();
    let exponent_band = (fit.exponent - half_band, fit.exponent + half_band);
    Ok(RateExperiment {
        cells,
        fit,
        exponent_band,
    })
}

/// Cumulative Poisson probabilities up to the 1e-15 tail.
fn poisson_quantile_table(mean: f64) -> Result<Vec<f64>> {
    let law = PoissonLaw::new(mean)?;
    let mut cdf = Vec::new();
    let mut acc = 0.0;
    let mut k = 0u64;
    while acc < 1.0 - 1e-15 {
        acc += law.pmf(k);
        cdf.push(acc);
        k += 1;
        if k > (mean + 60.0 * (mean + 1.0).sqrt() + 60.0) as u64 {
            break;
        }
    }
    Ok(cdf)
}

fn poisson_quantile(cdf: &[f64], u: f64) -> f64 {
    cdf.partition_point(|&c| c < u) as f64
}

/// Statistic samples of `<eta, T(N_lambda)>` drawn through per-panel
/// counts; used by the distributional checks.
pub fn sample_rescaled_statistics(
    cfg: &GridConfig,
    eta: &BesovVector,
    lambda: f64,
    samples: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    PoissonLaw::new(lambda)?;
    let n = cfg.n;
    let h = cfg.panel_width();
    let mut omega = solve_left_transpose(cfg.beta, eta.values());
    for w in &mut omega {
        *w *= h;
    }
    let mut tails = vec![0.0; n];
    let mut acc = 0.0;
    for i in (0..n).rev() {
        acc += omega[i];
        tails[i] = acc;
    }
    let mean_count = lambda * h;
    let table = poisson_quantile_table(mean_count)?;
    let root_lambda = lambda.sqrt();
    let mut out = Vec::with_capacity(samples);
    for sample in 0..samples {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ splitmix64(sample as u64));
        let mut s = 0.0;
        for tail in tails.iter().take(n) {
            let u: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
            let count = poisson_quantile(&table, u);
            s += tail * (count - mean_count) / root_lambda;
        }
        out.push(s);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn cfg() -> GridConfig {
        GridConfig::new(256, 0.4).unwrap()
    }

    #[test]
    fn counting_path_validation_and_counts() {
        assert!(CountingPath::new(vec![0.5, 1.0]).is_err());
        assert!(CountingPath::new(vec![0.0]).is_err());
        let p = CountingPath::new(vec![0.7, 0.2]).unwrap();
        assert_eq!(p.atoms(), &[0.2, 0.7]);
        assert_eq!(p.count_at(0.1), 0);
        assert_eq!(p.count_at(0.2), 1);
        assert_eq!(p.count_at(0.9), 2);
    }

    #[test]
    fn inner_product_examples() {
        let c = cfg();
        let ones = BesovVector::new(vec![1.0; c.n]);
        assert_abs_diff_eq!(besov_inner(&ones, &ones).unwrap(), 1.0, epsilon = 1e-13);
        // orthogonality of full-period waves under the midpoint rule
        let mids = c.midpoints();
        let s = BesovVector::new(
            mids.iter()
                .map(|&x| (2.0 * std::f64::consts::PI * x).sin())
                .collect(),
        );
        let co = BesovVector::new(
            mids.iter()
                .map(|&x| (2.0 * std::f64::consts::PI * x).cos())
                .collect(),
        );
        assert!(besov_inner(&s, &co).unwrap().abs() < 1e-3);
        let short = BesovVector::new(vec![1.0; 64]);
        assert!(besov_inner(&ones, &short).is_err());
    }

    #[test]
    fn cauchy_schwarz_on_random_pairs() {
        let c = cfg();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..25 {
            let f = BesovVector::new((0..c.n).map(|_| rng.gen_range(-1.0..1.0)).collect());
            let g = BesovVector::new((0..c.n).map(|_| rng.gen_range(-1.0..1.0)).collect());
            let lhs = besov_inner(&f, &g).unwrap().abs();
            assert!(lhs <= besov_norm(&f) * besov_norm(&g) + 1e-12);
        }
    }

    #[test]
    fn donsker_map_examples() {
        let c = cfg();
        // one atom at 1/2, lambda = 1: the path is 1_{t >= 1/2} - t
        let p = CountingPath::new(vec![0.5]).unwrap();
        let v = donsker_map(&c, &p, 1.0).unwrap();
        let back = reconstruct_path(&c, &v).unwrap();
        for (i, node) in c.nodes().iter().enumerate() {
            let want = if *node >= 0.5 { 1.0 - node } else { -node };
            assert_abs_diff_eq!(back[i], want, epsilon = 1e-9);
        }
        // empty path, lambda = 4: the path is -2t
        let empty = CountingPath::new(vec![]).unwrap();
        let v = donsker_map(&c, &empty, 4.0).unwrap();
        let back = reconstruct_path(&c, &v).unwrap();
        for (i, node) in c.nodes().iter().enumerate() {
            assert_abs_diff_eq!(back[i], -2.0 * node, epsilon = 1e-9);
        }
    }

    #[test]
    fn samplers_are_deterministic_under_seed() {
        let c = cfg();
        let a = sample_poisson_path(10.0, 42).unwrap();
        let b = sample_poisson_path(10.0, 42).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, sample_poisson_path(10.0, 43).unwrap());
        let x = sample_brownian_path(&c, 7).unwrap();
        let y = sample_brownian_path(&c, 7).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn poisson_path_moments() {
        let lambda = 10.0;
        let trials = 20_000;
        let mut count_sum = 0.0;
        let mut count_sq = 0.0;
        for s in 0..trials {
            let p = sample_poisson_path(lambda, 1000 + s).unwrap();
            let k = p.atoms().len() as f64;
            count_sum += k;
            count_sq += k * k;
        }
        let mean = count_sum / trials as f64;
        let var = count_sq / trials as f64 - mean * mean;
        let se = (lambda / trials as f64).sqrt();
        assert!((mean - lambda).abs() < 3.0 * se, "mean {mean}");
        // variance of the count is lambda as well
        let se_var = lambda * (2.0 / trials as f64).sqrt() * 1.5;
        assert!((var - lambda).abs() < 3.0 * se_var, "var {var}");
    }

    #[test]
    fn brownian_terminal_variance() {
        let c = cfg();
        let trials = 20_000;
        let mut sum = 0.0;
        let mut sq = 0.0;
        for s in 0..trials {
            let v = sample_brownian_path(&c, 5000 + s).unwrap();
            let path = reconstruct_path(&c, &v).unwrap();
            let b1 = path[c.n - 1];
            sum += b1;
            sq += b1 * b1;
        }
        let mean = sum / trials as f64;
        let var = sq / trials as f64 - mean * mean;
        let se = (2.0 / trials as f64).sqrt();
        assert!((var - 1.0).abs() < 3.0 * se, "Var(B(1)) = {var}");
    }

    #[test]
    fn brownian_covariance_min_structure() {
        let c = cfg();
        let trials = 20_000;
        let mut acc = 0.0;
        for s in 0..trials {
            let v = sample_brownian_path(&c, 90_000 + s).unwrap();
            let path = reconstruct_path(&c, &v).unwrap();
            acc += path[c.n / 2 - 1] * path[c.n - 1];
        }
        let cov = acc / trials as f64;
        // Cov(B(1/2), B(1)) = 1/2; the product has variance ~ 3/4 here
        let se = (0.75_f64 / trials as f64).sqrt() * 3.0;
        assert!((cov - 0.5).abs() < 3.0 * se.max(0.01), "cov {cov}");
    }

    #[test]
    fn campbell_mecke_compensated_integral_is_centered() {
        // E[sum G(tau_i) - lambda int G] = 0 for a deterministic step G
        let lambda = 10.0;
        let g = |t: f64| {
            if t < 0.3 {
                1.0
            } else if t < 0.8 {
                -0.5
            } else {
                2.0
            }
        };
        let integral = 0.3 * 1.0 + 0.5 * (-0.5) + 0.2 * 2.0;
        let trials = 50_000;
        let mut sum = 0.0;
        let mut sq = 0.0;
        for s in 0..trials {
            let p = sample_poisson_path(lambda, 77_000 + s).unwrap();
            let stat: f64 = p.atoms().iter().map(|&t| g(t)).sum::<f64>() - lambda * integral;
            sum += stat;
            sq += stat * stat;
        }
        let mean = sum / trials as f64;
        let var = sq / trials as f64 - mean * mean;
        let se = (var / trials as f64).sqrt();
        assert!(mean.abs() < 3.0 * se, "mean {mean} vs se {se}");
    }

    #[test]
    fn cylindrical_functional_is_scaled_into_the_unit_ball() {
        let c = cfg();
        let family = default_cylindrical_family(&c).unwrap();
        assert_eq!(family.len(), 6);
        let omega = sample_brownian_path(&c, 3).unwrap();
        for f in &family {
            assert!(f.eval(&omega).unwrap().abs() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn rate_experiment_rejects_degenerate_input() {
        let c = cfg();
        let family = default_cylindrical_family(&c).unwrap();
        assert!(functional_rate_experiment(&c, &family, &[100.0, 1000.0], 100, 1).is_err());
        assert!(functional_rate_experiment(&c, &[], &[1e2, 1e3, 1e4], 100, 1).is_err());
    }

    #[test]
    fn linear_functional_gap_drowns_in_monte_carlo_noise() {
        // phi = clipped identity makes F linear in <eta, omega>; both laws
        // are centered, so the paired gap estimate sits inside 3 SE of zero
        let c = cfg();
        use std::sync::Arc;
        let clipped = SmoothTestFunction::new(
            "clipped-identity",
            crate::gauss::NormClass::Unbounded,
            vec![
                Arc::new(|x: f64| x.clamp(-50.0, 50.0)),
                Arc::new(|x: f64| if x.abs() < 50.0 { 1.0 } else { 0.0 }),
                Arc::new(|_| 0.0),
            ],
        )
        .unwrap();
        let eta = BesovVector::new(vec![1.0; c.n]);
        let f = CylindricalFunctional::new("linear", eta, clipped).unwrap();
        // the experiment itself refuses (gap below the noise floor), which
        // is the documented diagnostic for this degenerate family
        match functional_rate_experiment(&c, std::slice::from_ref(&f), &[1e2, 1e3, 1e4], 4_000, 3) {
            Err(Error::InconclusiveSampleSize(_)) => {}
            other => panic!("expected the inconclusive diagnostic, got {other:?}"),
        }
        // and the raw paired means are indeed MC-noise sized
        let stats = sample_rescaled_statistics(&c, f.eta(), 1e4, 4_000, 3).unwrap();
        let mean = stats.iter().sum::<f64>() / stats.len() as f64;
        let var = stats.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (stats.len() - 1) as f64;
        let se = (var / stats.len() as f64).sqrt();
        assert!(mean.abs() <= 4.0 * se, "mean {mean} vs se {se}");
    }

    #[test]
    fn donsker_statistic_is_nearly_gaussian_at_large_intensity() {
        // qualitative CLT: skewness and excess kurtosis of <eta, T(N)> at
        // lambda = 1e4 sit inside five Monte Carlo standard errors
        let c = cfg();
        let eta = BesovVector::new(vec![1.0; c.n]);
        let stats = sample_rescaled_statistics(&c, &eta, 1e4, 100_000, 99).unwrap();
        let n = stats.len() as f64;
        let mean = stats.iter().sum::<f64>() / n;
        let m2 = stats.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / n;
        let m3 = stats.iter().map(|s| (s - mean).powi(3)).sum::<f64>() / n;
        let m4 = stats.iter().map(|s| (s - mean).powi(4)).sum::<f64>() / n;
        let skew = m3 / m2.powf(1.5);
        let excess = m4 / (m2 * m2) - 3.0;
        assert!(skew.abs() < 0.05, "skewness {skew}");
        assert!(excess.abs() < 0.1, "excess kurtosis {excess}");
    }

    #[test]
    fn quantile_table_inverts_uniforms() {
        let table = poisson_quantile_table(3.0).unwrap();
        assert_eq!(poisson_quantile(&table, 1e-12), 0.0);
        // median of Poisson(3) is 3
        assert_eq!(poisson_quantile(&table, 0.5), 3.0);
        assert!(poisson_quantile(&table, 1.0 - 1e-12) > 10.0);
    }
}
