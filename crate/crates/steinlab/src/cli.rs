//! Command-line orchestration: configure experiments, run them
//! reproducibly, and persist JSON records plus flat CSV tables.
//!
//! Every run writes `<out>/<command>-<seed>.json` (the full record: config
//! echo, per-cell reports, fits) and `<out>/<command>-<seed>.csv` (one row
//! per cell with `gap`, `bound`, `edgeworth`, `residual`, `stderr` and the
//! error budget). Numeric cells always carry their budget column; pass/fail
//! logic compares against `bound + budget`, never raw floats. Identical
//! configurations produce byte-identical CSV output: cell order is fixed,
//! parallel sweeps collect in index order, and every sampled task derives
//! its seed from `seed XOR mix(task index)` so scheduling cannot reorder
//! randomness.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use crate::besov::{self, default_cylindrical_family, v_beta_operator, BesovVector, GridConfig};
use crate::error::{Error, Result};
use crate::gauss::{self, functions, GaussHermiteRule, TimeKernel};
use crate::metrics::{self, ConvexGenerator, ProbabilityLaw1D};
use crate::numeric::splitmix64;
use crate::poisson::{self, DiscreteFunction, GrowthBound, PoissonLaw};
use crate::stein::{self, family, LipBoundReading, TimeQuadrature};

/// Documented default seed; no entropy-sourced defaults anywhere.
pub const DEFAULT_SEED: u64 = 42;

/// Default sample budget for the Monte Carlo experiments.
pub const DEFAULT_SAMPLES: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Metrics,
    GaussianChecks,
    PoissonChecks,
    Stein,
    Edgeworth,
    Rate,
    Besov,
    FullReport,
}

impl CommandKind {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Metrics => "metrics",
            Self::GaussianChecks => "gaussian-checks",
            Self::PoissonChecks => "poisson-checks",
            Self::Stein => "stein",
            Self::Edgeworth => "edgeworth",
            Self::Rate => "rate",
            Self::Besov => "besov",
            Self::FullReport => "full-report",
        }
    }
}

/// Fully resolved run configuration. Flags override config-file keys,
/// which override the documented defaults; every resolution conflict is
/// recorded in `notes`.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: CommandKind,
    /// Lambda grid for the one-dimensional sweeps.
    pub lambdas: Vec<f64>,
    /// Lambda grid for the path-space experiment.
    pub besov_lambdas: Vec<f64>,
    pub beta: f64,
    pub grid: usize,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub out: PathBuf,
    /// Test-function names; empty means the documented default family.
    pub family: Vec<String>,
    pub notes: Vec<String>,
}

impl RunConfig {
    /// The documented defaults for a command.
    pub fn with_defaults(command: CommandKind) -> Self {
        Self {
            command,
            lambdas: stein::default_lambda_grid(),
            besov_lambdas: vec![100.0, 1000.0, 10_000.0],
            beta: 0.4,
            grid: 256,
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            tol: stein::DEFAULT_POISSON_TOL,
            out: PathBuf::from("out"),
            family: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn validate(&self) -> Result<()> {
        let beta_valid = self.beta > 0.0 && self.beta < 0.5;
        if !beta_valid {
            return Err(Error::Usage(format!(
                "--beta {} rejected: the smoothness index must satisfy 0 < beta < 1/2",
                self.beta
            )));
        }
        for grid in [&self.lambdas, &self.besov_lambdas] {
            if grid.is_empty() {
                return Err(Error::Usage("the lambda grid must be nonempty".into()));
            }
            for w in grid.windows(2) {
                if w[1] <= w[0] {
                    return Err(Error::Usage(format!(
                        "lambda grid must be strictly increasing, got {} after {}",
                        w[1], w[0]
                    )));
                }
            }
            if grid.iter().any(|&l| l <= 0.0) {
                return Err(Error::Usage("lambda values must be positive".into()));
            }
        }
        if self.grid < 64 || !self.grid.is_power_of_two() {
            return Err(Error::Usage(format!(
                "--grid {} rejected: need a power of two >= 64",
                self.grid
            )));
        }
        if self.samples == 0 {
            return Err(Error::Usage("--samples must be at least 1".into()));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::Usage("--tol must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "steinlab",
    about = "Reproducible sweeps over semigroup normal-approximation bounds, \
             Edgeworth corrections, probability metrics, and path-space rates",
    disable_help_subcommand = true
)]
struct CliArgs {
    #[command(subcommand)]
    command: Option<CliCommand>,
}

#[derive(Subcommand, Debug)]
enum CliCommand {
    /// Probability-metric cross-checks on one-dimensional laws
    Metrics(CommonArgs),
    /// Gaussian structure identities: Hermite, Mehler, generator, adjoint
    GaussianChecks(CommonArgs),
    /// Poisson structure identities: gradient, adjoint, generator
    PoissonChecks(CommonArgs),
    /// Gap-vs-bound sweep over the test family and lambda grid
    Stein(CommonArgs),
    /// First-order correction terms and residuals
    Edgeworth(CommonArgs),
    /// Log-log convergence-rate fits
    Rate(CommonArgs),
    /// Fractional operators, covariance check, and the path-space rate
    Besov(CommonArgs),
    /// Everything above in one record
    FullReport(CommonArgs),
}

impl CliCommand {
    fn kind(&self) -> CommandKind {
        match self {
            Self::Metrics(_) => CommandKind::Metrics,
            Self::GaussianChecks(_) => CommandKind::GaussianChecks,
            Self::PoissonChecks(_) => CommandKind::PoissonChecks,
            Self::Stein(_) => CommandKind::Stein,
            Self::Edgeworth(_) => CommandKind::Edgeworth,
            Self::Rate(_) => CommandKind::Rate,
            Self::Besov(_) => CommandKind::Besov,
            Self::FullReport(_) => CommandKind::FullReport,
        }
    }

    fn args(self) -> CommonArgs {
        match self {
            Self::Metrics(a)
            | Self::GaussianChecks(a)
            | Self::PoissonChecks(a)
            | Self::Stein(a)
            | Self::Edgeworth(a)
            | Self::Rate(a)
            | Self::Besov(a)
            | Self::FullReport(a) => a,
        }
    }
}

#[derive(Args, Debug, Default)]
struct CommonArgs {
    /// Comma-separated, strictly increasing lambda grid
    #[arg(long, value_delimiter = ',')]
    lambda: Option<Vec<f64>>,
    /// Smoothness index of the path space, 0 < beta < 1/2
    #[arg(long)]
    beta: Option<f64>,
    /// Grid panels on [0, 1]; power of two, at least 64
    #[arg(long)]
    grid: Option<usize>,
    /// Monte Carlo sample budget per lambda
    #[arg(long)]
    samples: Option<usize>,
    /// RNG seed (defaults to 42; never sourced from entropy)
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory for the JSON record and CSV table
    #[arg(long)]
    out: Option<PathBuf>,
    /// Truncation tolerance for the exact Poisson summations
    #[arg(long)]
    tol: Option<f64>,
    /// TOML config file; flags override its keys
    #[arg(long)]
    config: Option<PathBuf>,
    /// Test-function names (also accepted as --function)
    #[arg(long, visible_alias = "function", value_delimiter = ',')]
    family: Option<Vec<String>>,
}

#[derive(Debug, Default, serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    lambda: Option<Vec<f64>>,
    beta: Option<f64>,
    grid: Option<usize>,
    samples: Option<usize>,
    seed: Option<u64>,
    out: Option<PathBuf>,
    tol: Option<f64>,
    family: Option<Vec<String>>,
}

/// Parse command-line arguments (and the optional `--config` file) into a
/// validated [`RunConfig`]. Precedence: flags, then file keys, then the
/// documented defaults; conflicts are echoed into the config notes.
pub fn parse_config<I, T>(argv: I) -> Result<RunConfig>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = CliArgs::try_parse_from(argv).map_err(|e| match e.kind() {
        clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
            Error::Usage(e.to_string())
        }
        _ => Error::Usage(e.to_string()),
    })?;
    let (kind, args) = match cli.command {
        Some(c) => (c.kind(), c.args()),
        None => (CommandKind::FullReport, CommonArgs::default()),
    };
    let mut config = RunConfig::with_defaults(kind);

    let file: FileConfig = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Error::Usage(format!("cannot read config file {}: {e}", path.display()))
            })?;
            toml::from_str(&text).map_err(|e| {
                Error::Usage(format!("malformed config file {}: {e}", path.display()))
            })?
        }
        None => FileConfig::default(),
    };

    macro_rules! resolve {
        ($field:ident, $flag:expr, $file:expr, $apply:expr) => {
            match ($flag, $file) {
                (Some(f), Some(c)) => {
                    config.notes.push(format!(
                        "flag --{} overrides config-file value {:?}",
                        stringify!($field),
                        c
                    ));
                    $apply(f);
                }
                (Some(f), None) => $apply(f),
                (None, Some(c)) => $apply(c),
                (None, None) => {}
            }
        };
    }

    resolve!(
        lambda,
        args.lambda.clone(),
        file.lambda.clone(),
        |v: Vec<f64>| {
            config.lambdas = v.clone();
            config.besov_lambdas = v;
        }
    );
    resolve!(beta, args.beta, file.beta, |v| config.beta = v);
    resolve!(grid, args.grid, file.grid, |v| config.grid = v);
    resolve!(samples, args.samples, file.samples, |v| config.samples = v);
    resolve!(seed, args.seed, file.seed, |v| config.seed = v);
    resolve!(out, args.out.clone(), file.out.clone(), |v| config.out = v);
    resolve!(tol, args.tol, file.tol, |v| config.tol = v);
    resolve!(family, args.family.clone(), file.family.clone(), |v| {
        config.family = v
    });

    config.validate()?;
    Ok(config)
}

/// One flat report cell. `pass` is decided against `bound + budget` where
/// both sides are present.
#[derive(Debug, Clone, Serialize)]
pub struct Cell {
    pub group: String,
    pub case: String,
    pub lambda: Option<f64>,
    pub gap: Option<f64>,
    pub bound: Option<f64>,
    pub edgeworth: Option<f64>,
    pub residual: Option<f64>,
    pub stderr: Option<f64>,
    pub budget: Option<f64>,
    pub pass: bool,
}

impl Cell {
    fn check(group: &str, case: impl Into<String>, error: f64, tolerance: f64) -> Self {
        Cell {
            group: group.into(),
            case: case.into(),
            lambda: None,
            gap: Some(error),
            bound: Some(tolerance),
            edgeworth: None,
            residual: None,
            stderr: None,
            budget: Some(0.0),
            pass: error.abs() <= tolerance,
        }
    }
}

/// A named log-log fit in the JSON record.
#[derive(Debug, Clone, Serialize)]
pub struct NamedFit {
    pub case: String,
    pub exponent: f64,
    pub intercept: f64,
    pub max_abs_residual: f64,
    pub lambdas: Vec<f64>,
    /// Two-sigma band when the fit came from Monte Carlo cells.
    pub exponent_band: Option<(f64, f64)>,
}

/// Worst-case error budgets across all cells of a run.
#[derive(Debug, Default, Clone, Copy, Serialize)]
pub struct BudgetSummary {
    pub max_budget: f64,
    pub max_stderr: f64,
}

/// Full run record, serialized as the JSON artifact.
#[derive(Debug, Serialize)]
pub struct RunRecord {
    pub command: String,
    pub version: String,
    pub config: RunConfig,
    pub wall_clock_ms: u128,
    pub budget_summary: BudgetSummary,
    pub cells: Vec<Cell>,
    pub fits: Vec<NamedFit>,
    /// Per-cell full reports of the gap-versus-bound sweep, when the
    /// command produced them.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub stein_reports: Vec<stein::SteinBoundReport>,
    pub failures: Vec<String>,
}

fn resolve_family(config: &RunConfig) -> Result<Vec<gauss::SmoothTestFunction>> {
    if config.family.is_empty() {
        Ok(family::regression_family())
    } else {
        config.family.iter().map(|n| family::by_name(n)).collect()
    }
}

fn run_metrics(config: &RunConfig) -> Result<Vec<Cell>> {
    let mut cells = Vec::new();
    let g = "metrics";

    let p01 = ProbabilityLaw1D::gaussian(0.0, 1.0)?;
    let p11 = ProbabilityLaw1D::gaussian(1.0, 1.0)?;
    let kl = metrics::f_divergence(&ConvexGenerator::kullback_leibler(), &p11, &p01)?;
    cells.push(Cell::check(
        g,
        "kl-gaussian-shift-closed-form",
        kl - 0.5,
        1e-9,
    ));

    let b7 = ProbabilityLaw1D::bernoulli(0.7)?;
    let b4 = ProbabilityLaw1D::bernoulli(0.4)?;
    cells.push(Cell::check(
        g,
        "tv-bernoulli-enumeration",
        metrics::total_variation(&b7, &b4)? - 0.3,
        1e-12,
    ));
    let d_abs = metrics::f_divergence(&ConvexGenerator::absolute_difference(), &b7, &b4)?;
    cells.push(Cell::check(
        g,
        "abs-divergence-is-twice-tv",
        d_abs - 0.6,
        1e-12,
    ));

    let hel = metrics::hellinger(&p01, &p11)?;
    let hel_want = (2.0 - 2.0 * (-0.125_f64).exp()).sqrt();
    cells.push(Cell::check(
        g,
        "hellinger-gaussian-closed-form",
        hel - hel_want,
        1e-9,
    ));

    let w1 = metrics::wasserstein1_1d(&p01, &p11)?;
    cells.push(Cell::check(g, "w1-gaussian-translation", w1 - 1.0, 1e-8));
    let d0 = ProbabilityLaw1D::dirac(0.0)?;
    let d1 = ProbabilityLaw1D::dirac(1.0)?;
    cells.push(Cell::check(
        g,
        "w1-point-mass-translation",
        metrics::wasserstein1_1d(&d0, &d1)? - 1.0,
        1e-12,
    ));

    // Pinsker battery over seeded random pmf pairs on a common support
    let mut worst: f64 = f64::NEG_INFINITY;
    let mut state = config.seed;
    let mut uniform = move || {
        state = splitmix64(state.wrapping_add(1));
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    for _ in 0..1000 {
        let k = 2 + (uniform() * 6.0) as usize;
        let atoms: Vec<f64> = (0..k).map(|i| i as f64).collect();
        let draw = |u: &mut dyn FnMut() -> f64| -> Vec<f64> {
            let raw: Vec<f64> = (0..k).map(|_| -(1.0 - u()).ln().max(1e-12)).collect();
            let s: f64 = raw.iter().sum();
            raw.iter().map(|x| x / s).collect()
        };
        let p = ProbabilityLaw1D::pmf(atoms.clone(), draw(&mut uniform))?;
        let q = ProbabilityLaw1D::pmf(atoms, draw(&mut uniform))?;
        let tv = metrics::total_variation(&p, &q)?;
        let kl = metrics::f_divergence(&ConvexGenerator::kullback_leibler(), &p, &q)?;
        worst = worst.max(tv - (0.5 * kl).sqrt());
    }
    cells.push(Cell {
        group: g.into(),
        case: "pinsker-1000-random-pairs".into(),
        lambda: None,
        gap: Some(worst),
        bound: Some(1e-12),
        edgeworth: None,
        residual: None,
        stderr: None,
        budget: Some(0.0),
        pass: worst <= 1e-12,
    });

    // duality lower bound vs the explicit envelope at lambda = 4
    let image = ProbabilityLaw1D::rescaled_poisson_image(4.0)?;
    let fam = vec![
        functions::identity(),
        functions::sine(1.0),
        family::arctan(),
    ];
    let kr = metrics::kr_dual_lower_bound(&p01, &image, &fam)?;
    let envelope = stein::c2b_envelope(4.0);
    cells.push(Cell {
        group: g.into(),
        case: "kr-lower-bound-below-envelope".into(),
        lambda: Some(4.0),
        gap: Some(kr),
        bound: Some(envelope),
        edgeworth: None,
        residual: None,
        stderr: None,
        budget: Some(1e-10),
        pass: kr <= envelope + 1e-10,
    });

    // dual feasibility: family lower bound never exceeds W1
    let e1 = ProbabilityLaw1D::empirical(vec![-1.0, 0.0, 2.0])?;
    let e2 = ProbabilityLaw1D::empirical(vec![-0.5, 0.5, 1.0])?;
    let lip = family::lip_family();
    let lhs = metrics::kr_dual_lower_bound(&e1, &e2, &lip)?;
    let rhs = metrics::wasserstein1_1d(&e1, &e2)?;
    cells.push(Cell {
        group: g.into(),
        case: "kr-lip-feasible-for-w1".into(),
        lambda: None,
        gap: Some(lhs),
        bound: Some(rhs),
        edgeworth: None,
        residual: None,
        stderr: None,
        budget: Some(1e-10),
        pass: lhs <= rhs + 1e-10,
    });

    Ok(cells)
}

fn run_gaussian_checks(_config: &RunConfig) -> Result<Vec<Cell>> {
    let mut cells = Vec::new();
    let g = "gaussian";
    let rule = GaussHermiteRule::shared(128)?;

    let ortho = rule
        .expectation(|x| gauss::hermite(2, x).expect("deg") * gauss::hermite(3, x).expect("deg"));
    cells.push(Cell::check(g, "hermite-orthogonality-h2-h3", ortho, 1e-12));

    let mut eigen_worst: f64 = 0.0;
    for n in 1..=6u32 {
        let hn = functions::hermite_poly(n);
        for t in [0.2, 1.0, 3.0] {
            for x in [-1.2, 0.0, 0.9, 2.5] {
                let got = gauss::mehler_apply(&hn, t, x, &rule)?;
                let want = (-(n as f64) * t).exp() * gauss::hermite(n, x)?;
                eigen_worst = eigen_worst.max((got - want).abs());
            }
        }
    }
    cells.push(Cell::check(
        g,
        "hermite-eigenfunctions-n-le-6",
        eigen_worst,
        1e-9,
    ));

    let f = functions::sine(1.0);
    let fp = f.derivative_fn()?;
    let mut comm_worst: f64 = 0.0;
    for t in [0.1, 1.0, 5.0] {
        for x in [-1.0, 0.4, 2.0] {
            let lhs = gauss::semigroup_derivative(&f, t, x, 1, &rule)?;
            let rhs = (-t).exp() * gauss::mehler_apply(&fp, t, x, &rule)?;
            comm_worst = comm_worst.max((lhs - rhs).abs());
        }
    }
    cells.push(Cell::check(g, "commutation-dp-equals-pd", comm_worst, 1e-9));

    let gf = functions::monomial(2);
    let duality = {
        let lhs = rule.expectation(|x| f.deriv(1, x).expect("deriv") * gf.eval(x));
        let rhs =
            rule.expectation(|x| f.eval(x) * gauss::gaussian_adjoint(&gf, x).expect("adjoint"));
        (lhs - rhs).abs()
    };
    cells.push(Cell::check(
        g,
        "integration-by-parts-duality",
        duality,
        1e-10,
    ));

    let mut stat_worst: f64 = 0.0;
    for k in 1..=8u32 {
        let m = functions::monomial(k);
        stat_worst = stat_worst.max(
            rule.expectation(|x| gauss::ou_generator(&m, x).expect("generator"))
                .abs(),
        );
    }
    cells.push(Cell::check(
        g,
        "generator-stationarity-deg-le-8",
        stat_worst,
        1e-10,
    ));

    cells.push(Cell::check(
        g,
        "time-integral-mixed3-pi-over-4",
        gauss::ou_kernel_time_integral(TimeKernel::Mixed3) - std::f64::consts::FRAC_PI_4,
        1e-10,
    ));
    let divergent = gauss::ou_kernel_time_integral(TimeKernel::Pure(2));
    cells.push(Cell {
        group: g.into(),
        case: "time-integral-pure2-divergent".into(),
        lambda: None,
        gap: None,
        bound: None,
        edgeworth: None,
        residual: None,
        stderr: None,
        budget: None,
        pass: divergent.is_infinite(),
    });
    let factors = 0.5 * std::f64::consts::FRAC_PI_4 * (2.0 / std::f64::consts::PI).sqrt();
    cells.push(Cell::check(
        g,
        "bound-constant-three-factor-product",
        factors - stein::c2b_envelope(1.0),
        1e-12,
    ));

    Ok(cells)
}

fn run_poisson_checks(_config: &RunConfig) -> Result<Vec<Cell>> {
    let mut cells = Vec::new();
    let g = "poisson";

    let poly = |coeffs: Vec<f64>| -> Result<DiscreteFunction> {
        let degree = coeffs.len().saturating_sub(1) as f64;
        let c: f64 = coeffs.iter().map(|a| a.abs()).sum::<f64>().max(1.0);
        DiscreteFunction::with_growth(
            move |n| {
                let x = n as f64;
                coeffs.iter().rev().fold(0.0, |acc, a| acc * x + a)
            },
            GrowthBound { c, p: degree },
        )
    };

    let mut ibp_worst: f64 = 0.0;
    for lambda in [0.5, 2.0, 9.0] {
        let law = PoissonLaw::new(lambda)?;
        let f = poly(vec![0.0, 0.0, 1.0])?;
        let h = poly(vec![1.0, 1.0])?;
        ibp_worst = ibp_worst.max(poisson::ibp_residual(&f, &h, &law)?);
    }
    cells.push(Cell::check(
        g,
        "integration-by-parts-residual",
        ibp_worst,
        1e-10,
    ));

    // standardized monomials ((n - lambda)/sqrt(lambda))^d keep the
    // statistic O(1); raw monomials at degree 6 would drown the zero in
    // the roundoff of ~1e8-sized canceling terms
    let mut stat_worst: f64 = 0.0;
    for lambda in [0.5, 1.0, 4.0, 25.0] {
        let law = PoissonLaw::new(lambda)?;
        let root = lambda.sqrt();
        for degree in 1..=6i32 {
            // |(n - lambda)/sqrt(lambda)| <= (1 + n)(1 + lambda)/sqrt(lambda)
            let f = DiscreteFunction::with_growth(
                move |n| ((n as f64 - lambda) / root).powi(degree),
                GrowthBound {
                    c: ((1.0 + lambda) / root).powi(degree),
                    p: degree as f64,
                },
            )?;
            let lf = poisson::mm_infinity_generator(&f, lambda);
            stat_worst =
                stat_worst.max(poisson::poisson_expectation(&lf, &law, 1e-13)?.value.abs());
        }
    }
    cells.push(Cell::check(
        g,
        "generator-stationarity-deg-le-6",
        stat_worst,
        1e-9,
    ));

    // L = -lambda D* D pointwise on [0, 100]
    let lambda = 3.0;
    let law = PoissonLaw::new(lambda)?;
    let f = poly(vec![1.0, -2.0, 0.5, 0.125])?;
    let lf = poisson::mm_infinity_generator(&f, lambda);
    let dstar_d = poisson::discrete_adjoint(&poisson::discrete_gradient(&f), &law);
    let mut alg_worst: f64 = 0.0;
    for n in 0..=100u64 {
        alg_worst = alg_worst.max((lf.eval(n) + lambda * dstar_d.eval(n)).abs());
    }
    cells.push(Cell::check(
        g,
        "generator-equals-minus-lambda-adjoint-gradient",
        alg_worst,
        1e-9,
    ));

    // one-jump identity through the rescaling map
    let mut jump_worst: f64 = 0.0;
    for lambda in [4.0_f64, 25.0] {
        let law = PoissonLaw::new(lambda)?;
        let root = lambda.sqrt();
        let smooth = |x: f64| (0.7 * x).sin();
        let lhs_fn = DiscreteFunction::bounded(
            move |n| {
                let z = (n as f64 - lambda) / root;
                root * (smooth(z + 1.0 / root) - smooth(z))
            },
            2.0 * root,
        )?;
        let rhs_fn = DiscreteFunction::with_growth(
            move |n| {
                let z = (n as f64 - lambda) / root;
                z * smooth(z)
            },
            GrowthBound {
                c: 1.0 + root,
                p: 1.0,
            },
        )?;
        let lhs = poisson::poisson_expectation(&lhs_fn, &law, 1e-13)?.value;
        let rhs = poisson::poisson_expectation(&rhs_fn, &law, 1e-13)?.value;
        jump_worst = jump_worst.max((lhs - rhs).abs());
    }
    cells.push(Cell::check(g, "one-jump-identity", jump_worst, 1e-10));

    // truncation soundness: refining the tolerance moves the value by less
    // than the coarse truncation bound
    let law = PoissonLaw::new(7.0)?;
    let f = poly(vec![1.0, 0.0, 0.5, 0.25])?;
    let coarse = poisson::poisson_expectation(&f, &law, 1e-6)?;
    let fine = poisson::poisson_expectation(&f, &law, 1e-14)?;
    cells.push(Cell::check(
        g,
        "truncation-bound-soundness",
        (coarse.value - fine.value).abs(),
        coarse.truncation_bound,
    ));

    Ok(cells)
}

fn run_stein(config: &RunConfig) -> Result<(Vec<Cell>, Vec<stein::SteinBoundReport>)> {
    let fam = resolve_family(config)?;
    // parallel over cells; collect preserves the fixed (function, lambda)
    // order, so the table is deterministic regardless of scheduling
    let tasks: Vec<(&gauss::SmoothTestFunction, f64)> = fam
        .iter()
        .flat_map(|f| config.lambdas.iter().map(move |&l| (f, l)))
        .collect();
    let reports: Vec<stein::SteinBoundReport> = tasks
        .par_iter()
        .map(|&(f, lambda)| stein::stein_report(f, lambda))
        .collect::<Result<_>>()?;
    let mut cells: Vec<Cell> = reports
        .iter()
        .map(|report| Cell {
            group: "stein".into(),
            case: report.function.clone(),
            lambda: Some(report.lambda),
            gap: Some(report.observed_gap),
            bound: Some(report.upper_bound),
            edgeworth: Some(report.edgeworth_term),
            residual: Some(report.residual),
            stderr: None,
            budget: Some(report.truncation_bound + report.quadrature_error),
            pass: report.bound_holds(),
        })
        .collect();

    // semigroup-representation cross-validation at the affordable lambdas
    let quad = TimeQuadrature {
        poisson_tol: config.tol.min(1e-10),
        ..TimeQuadrature::default()
    };
    let small: Vec<f64> = config
        .lambdas
        .iter()
        .copied()
        .filter(|&l| l <= 128.0)
        .collect();
    let eq1_cells: Vec<Cell> = fam
        .par_iter()
        .flat_map(|f| small.par_iter().map(move |&l| (f, l)))
        .map(|(f, lambda)| -> Result<Cell> {
            let eq1 = stein::stein_dirichlet_gap(f, lambda, &quad)?;
            let direct = stein::stein_error(f, lambda)?;
            let diff = (eq1.value - direct.value).abs();
            let budget = eq1.budget.total() + direct.budget.total() + 1e-8;
            Ok(Cell {
                group: "eq1-crosscheck".into(),
                case: f.name().to_string(),
                lambda: Some(lambda),
                gap: Some(diff),
                bound: Some(1e-6),
                edgeworth: None,
                residual: None,
                stderr: None,
                budget: Some(budget),
                pass: diff <= 1e-6,
            })
        })
        .collect::<Result<_>>()?;
    cells.extend(eq1_cells);

    // both readings of the Lipschitz envelope, reported per lambda
    for f in family::lip_family() {
        for &lambda in &config.lambdas {
            let gap = stein::stein_error(&f, lambda)?;
            let per_lambda = stein::lip_envelope(lambda, LipBoundReading::InverseLambda);
            let per_sqrt = stein::lip_envelope(lambda, LipBoundReading::InverseSqrtLambda);
            cells.push(Cell {
                group: "lip-envelope".into(),
                case: format!(
                    "{}:inverse-lambda-holds={} inverse-sqrt-holds={}",
                    f.name(),
                    gap.value.abs() <= per_lambda + gap.budget.total(),
                    gap.value.abs() <= per_sqrt + gap.budget.total()
                ),
                lambda: Some(lambda),
                gap: Some(gap.value),
                bound: Some(per_sqrt),
                edgeworth: None,
                residual: None,
                stderr: None,
                budget: Some(gap.budget.total()),
                // the lambda^{-1/2} reading is the envelope that holds
                pass: gap.value.abs() <= per_sqrt + gap.budget.total(),
            });
        }
    }
    Ok((cells, reports))
}

fn run_edgeworth(config: &RunConfig) -> Result<Vec<Cell>> {
    let fam = resolve_family(config)?;
    let mut cells: Vec<Cell> = fam
        .par_iter()
        .flat_map(|f| config.lambdas.par_iter().map(move |&l| (f, l)))
        .map(|(f, lambda)| -> Result<Cell> {
            let report = stein::stein_report(f, lambda)?;
            Ok(Cell {
                group: "edgeworth".into(),
                case: report.function.clone(),
                lambda: Some(lambda),
                gap: Some(report.observed_gap),
                bound: Some(report.upper_bound),
                edgeworth: Some(report.edgeworth_term),
                residual: Some(report.residual),
                stderr: None,
                budget: Some(report.truncation_bound + report.quadrature_error),
                pass: report.bound_holds(),
            })
        })
        .collect::<Result<_>>()?;

    // the fixed-time second-order decomposition with its analytic envelope
    let quad = TimeQuadrature::default();
    for f in &fam {
        if f.max_order() < 3 {
            continue;
        }
        for &(lambda, t) in &[(25.0, 1.0), (100.0, 0.5)] {
            let d = stein::edgeworth_intermediate_gap(f, lambda, t, &quad)?;
            cells.push(Cell {
                group: "taylor-remainder".into(),
                case: format!("{}@t={t}", f.name()),
                lambda: Some(lambda),
                gap: Some(d.remainder),
                bound: Some(d.remainder_bound),
                edgeworth: Some(d.leading_term),
                residual: None,
                stderr: None,
                budget: Some(1e-9),
                pass: d.remainder.abs() <= d.remainder_bound + 1e-9,
            });
        }
    }
    Ok(cells)
}

fn run_rate(config: &RunConfig) -> Result<(Vec<Cell>, Vec<NamedFit>)> {
    let fam = if config.family.is_empty() {
        let mut fs = family::non_symmetric_family();
        fs.push(family::cubic());
        fs
    } else {
        resolve_family(config)?
    };
    let mut cells = Vec::new();
    let mut fits = Vec::new();
    for f in &fam {
        let mut pairs = Vec::new();
        for &lambda in &config.lambdas {
            let gap = stein::stein_error(f, lambda)?;
            cells.push(Cell {
                group: "rate".into(),
                case: f.name().to_string(),
                lambda: Some(lambda),
                gap: Some(gap.value.abs()),
                bound: None,
                edgeworth: None,
                residual: None,
                stderr: None,
                budget: Some(gap.budget.total()),
                pass: true,
            });
            pairs.push((lambda, gap.value.abs()));
        }
        let fit = stein::fit_rate(&pairs)?;
        fits.push(NamedFit {
            case: format!("gap:{}", f.name()),
            exponent: fit.exponent,
            intercept: fit.intercept,
            max_abs_residual: fit.max_abs_residual,
            lambdas: fit.lambdas,
            exponent_band: None,
        });
    }

    // decay of the residual after the first-order correction
    let residual_grid = [100.0, 1000.0, 10_000.0];
    for f in &fam {
        if f.name() == "cubic" {
            continue; // identically zero residual: nothing to fit
        }
        let mut pairs = Vec::new();
        for &lambda in &residual_grid {
            let r = stein::stein_report(f, lambda)?;
            pairs.push((lambda, r.residual.abs()));
        }
        if pairs.iter().all(|&(_, e)| e > 0.0) {
            let fit = stein::fit_rate(&pairs)?;
            fits.push(NamedFit {
                case: format!("residual:{}", f.name()),
                exponent: fit.exponent,
                intercept: fit.intercept,
                max_abs_residual: fit.max_abs_residual,
                lambdas: fit.lambdas,
                exponent_band: None,
            });
        }
    }
    Ok((cells, fits))
}

fn run_besov(config: &RunConfig) -> Result<(Vec<Cell>, Vec<NamedFit>)> {
    let cfg = GridConfig::new(config.grid, config.beta).map_err(|e| Error::Usage(e.to_string()))?;
    let mut cells = Vec::new();
    let g = "fractional";

    // inverse pair
    let n = cfg.n;
    let wave: Vec<f64> = cfg
        .midpoints()
        .iter()
        .map(|&x| (3.0 * x).cos() + 0.5 * x)
        .collect();
    let mut inv_worst: f64 = 0.0;
    for alpha in [0.1, 0.25, cfg.beta, 0.49] {
        let f = besov::frac_integral_left(alpha, &wave)?;
        let back = besov::frac_derivative_left(alpha, &f)?;
        inv_worst = inv_worst.max(
            wave.iter()
                .zip(&back)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max),
        );
    }
    cells.push(Cell::check(g, "inverse-pair-identity", inv_worst, 1e-10));

    // power-function probe at x = 1: I^{1/2} 1 = 2/sqrt(pi)
    let ones = vec![1.0; n];
    let half = besov::frac_integral_left(0.5, &ones)?;
    cells.push(Cell::check(
        g,
        "half-integral-of-one-at-x1",
        half[n - 1] - 2.0 / std::f64::consts::PI.sqrt(),
        1e-10,
    ));

    // composition error halves under grid refinement
    let comp_err = |m: usize| -> Result<f64> {
        let ones = vec![1.0; m];
        let inner = besov::frac_integral_left(0.4, &ones)?;
        let outer = besov::frac_integral_left(0.3, &inner)?;
        Ok((outer[m - 1] - 1.0 / statrs::function::gamma::gamma(1.7)).abs())
    };
    let e_n = comp_err(n)?;
    let e_2n = comp_err(2 * n)?;
    cells.push(Cell {
        group: g.into(),
        case: "semigroup-composition-order-one".into(),
        lambda: None,
        gap: Some(e_2n),
        bound: Some(0.6 * e_n),
        edgeworth: None,
        residual: None,
        stderr: None,
        budget: Some(0.0),
        pass: e_2n <= 0.6 * e_n,
    });

    // reflection identity, exact on the grid
    let refl: Vec<f64> = wave.iter().rev().copied().collect();
    let right = besov::frac_integral_right(cfg.beta, &wave)?;
    let left_refl = besov::frac_integral_left(cfg.beta, &refl)?;
    let refl_err = (0..n)
        .map(|i| (right[i] - left_refl[n - 1 - i]).abs())
        .fold(0.0, f64::max);
    cells.push(Cell::check(
        g,
        "right-integral-reflection-identity",
        refl_err,
        1e-13,
    ));

    // covariance operator diagnostics
    let op = v_beta_operator(&cfg)?;
    let asym = op.asymmetry.unwrap_or(0.0);
    cells.push(Cell::check(
        "vbeta",
        "asymmetry-before-symmetrization",
        asym,
        1e-2,
    ));
    let eig = op.matrix.clone().symmetric_eigenvalues();
    let max_eig = eig.iter().cloned().fold(f64::MIN, f64::max);
    let min_eig = eig.iter().cloned().fold(f64::MAX, f64::min);
    cells.push(Cell {
        group: "vbeta".into(),
        case: "positive-semidefinite".into(),
        lambda: None,
        gap: Some(min_eig),
        bound: Some(-1e-8 * max_eig),
        edgeworth: None,
        residual: None,
        stderr: None,
        budget: Some(0.0),
        pass: min_eig >= -1e-8 * max_eig,
    });

    // Monte Carlo covariance match for three fixed directions
    let mids = cfg.midpoints();
    let etas: Vec<(String, Vec<f64>)> = vec![
        ("flat".into(), vec![1.0; n]),
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
    let trials = config.samples;
    let stats: Vec<Vec<f64>> = (0..trials)
        .into_par_iter()
        .map(|s| -> Result<Vec<f64>> {
            let b =
                besov::sample_brownian_path(&cfg, config.seed ^ splitmix64(0xB0_0000 + s as u64))?;
            etas.iter()
                .map(|(_, e)| besov::besov_inner(&BesovVector::new(e.clone()), &b))
                .collect()
        })
        .collect::<Result<_>>()?;
    for (k, (name, eta_dot)) in etas.iter().enumerate() {
        let target = besov::v_beta_quadratic_form(&cfg, eta_dot)?;
        let mean = stats.iter().map(|row| row[k]).sum::<f64>() / trials as f64;
        let var =
            stats.iter().map(|row| (row[k] - mean).powi(2)).sum::<f64>() / (trials - 1) as f64;
        let se = var * (2.0 / (trials as f64 - 1.0)).sqrt();
        cells.push(Cell {
            group: "vbeta-covariance".into(),
            case: name.clone(),
            lambda: None,
            gap: Some(var - target),
            bound: Some(3.0 * se),
            edgeworth: None,
            residual: None,
            stderr: Some(se),
            budget: Some(0.0),
            pass: (var - target).abs() <= 3.0 * se,
        });
    }

    // paired functional rate experiment
    let fam = default_cylindrical_family(&cfg)?;
    let exp = besov::functional_rate_experiment(
        &cfg,
        &fam,
        &config.besov_lambdas,
        config.samples,
        config.seed,
    )?;
    for c in &exp.cells {
        cells.push(Cell {
            group: "functional-rate".into(),
            case: c.best_function.clone(),
            lambda: Some(c.lambda),
            gap: Some(c.gap),
            bound: None,
            edgeworth: None,
            residual: None,
            stderr: Some(c.stderr),
            budget: Some(0.0),
            pass: c.gap >= 0.0,
        });
    }
    let fits = vec![NamedFit {
        case: "functional-gap".into(),
        exponent: exp.fit.exponent,
        intercept: exp.fit.intercept,
        max_abs_residual: exp.fit.max_abs_residual,
        lambdas: exp.fit.lambdas.clone(),
        exponent_band: Some(exp.exponent_band),
    }];

    Ok((cells, fits))
}

/// Execute the configured command, write the JSON record and CSV table,
/// and return the record. Invariant violations still produce both files
/// (plus a `.failure.json`) and surface as a tolerance-exceeded error so
/// the binary can exit with status 3.
pub fn run(config: &RunConfig) -> Result<RunRecord> {
    let started = std::time::Instant::now();
    let mut cells = Vec::new();
    let mut fits = Vec::new();
    let mut stein_reports = Vec::new();
    let kind = config.command;
    let mut extend = |c: Vec<Cell>, f: Vec<NamedFit>| {
        cells.extend(c);
        fits.extend(f);
    };
    match kind {
        CommandKind::Metrics => extend(run_metrics(config)?, vec![]),
        CommandKind::GaussianChecks => extend(run_gaussian_checks(config)?, vec![]),
        CommandKind::PoissonChecks => extend(run_poisson_checks(config)?, vec![]),
        CommandKind::Stein => {
            let (c, reports) = run_stein(config)?;
            stein_reports = reports;
            extend(c, vec![]);
        }
        CommandKind::Edgeworth => extend(run_edgeworth(config)?, vec![]),
        CommandKind::Rate => {
            let (c, f) = run_rate(config)?;
            extend(c, f);
        }
        CommandKind::Besov => {
            let (c, f) = run_besov(config)?;
            extend(c, f);
        }
        CommandKind::FullReport => {
            extend(run_metrics(config)?, vec![]);
            extend(run_gaussian_checks(config)?, vec![]);
            extend(run_poisson_checks(config)?, vec![]);
            let (c, reports) = run_stein(config)?;
            stein_reports = reports;
            extend(c, vec![]);
            extend(run_edgeworth(config)?, vec![]);
            let (c, f) = run_rate(config)?;
            extend(c, f);
            let (c, f) = run_besov(config)?;
            extend(c, f);
        }
    }

    let failures: Vec<String> = cells
        .iter()
        .filter(|c| !c.pass)
        .map(|c| format!("{}/{} at lambda {:?}", c.group, c.case, c.lambda))
        .collect();
    let budget_summary = BudgetSummary {
        max_budget: cells.iter().filter_map(|c| c.budget).fold(0.0, f64::max),
        max_stderr: cells.iter().filter_map(|c| c.stderr).fold(0.0, f64::max),
    };
    let record = RunRecord {
        command: kind.name().into(),
        version: env!("CARGO_PKG_VERSION").into(),
        config: config.clone(),
        wall_clock_ms: started.elapsed().as_millis(),
        budget_summary,
        cells,
        fits,
        stein_reports,
        failures: failures.clone(),
    };
    write_outputs(&record, config)?;
    if !failures.is_empty() {
        return Err(Error::ToleranceExceeded {
            left: failures.len() as f64,
            right: 0.0,
            gap: failures.len() as f64,
            budget: 0.0,
            context: format!(
                "{} invariant violations: {}",
                failures.len(),
                failures.join("; ")
            ),
        });
    }
    Ok(record)
}

fn write_outputs(record: &RunRecord, config: &RunConfig) -> Result<()> {
    std::fs::create_dir_all(&config.out)
        .map_err(|e| Error::Usage(format!("output directory not writable: {e}")))?;
    let base = format!("{}-{}", record.command, config.seed);
    let json_path = config.out.join(format!("{base}.json"));
    let json = serde_json::to_string_pretty(record)
        .map_err(|e| Error::InvalidArgument(format!("record serialization failed: {e}")))?;
    std::fs::write(&json_path, json)?;
    write_csv(&config.out.join(format!("{base}.csv")), &record.cells)?;
    if !record.failures.is_empty() {
        let failure_path = config.out.join(format!("{base}.failure.json"));
        let payload = serde_json::json!({
            "command": record.command,
            "seed": config.seed,
            "failures": record.failures,
        });
        std::fs::write(
            &failure_path,
            serde_json::to_string_pretty(&payload).unwrap(),
        )?;
    }
    Ok(())
}

fn fmt_opt(v: Option<f64>) -> String {
    // Display for f64 prints the shortest representation that round-trips
    v.map(|x| format!("{x}")).unwrap_or_default()
}

fn write_csv(path: &Path, cells: &[Cell]) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_writer(Vec::new());
    w.write_record([
        "group",
        "case",
        "lambda",
        "gap",
        "bound",
        "edgeworth",
        "residual",
        "stderr",
        "budget",
        "pass",
    ])
    .map_err(csv_err)?;
    for c in cells {
        w.write_record([
            c.group.clone(),
            c.case.clone(),
            fmt_opt(c.lambda),
            fmt_opt(c.gap),
            fmt_opt(c.bound),
            fmt_opt(c.edgeworth),
            fmt_opt(c.residual),
            fmt_opt(c.stderr),
            fmt_opt(c.budget),
            c.pass.to_string(),
        ])
        .map_err(csv_err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::InvalidArgument(format!("csv buffer: {e}")))?;
    let mut file = std::fs::File::create(path)?;
    file.write_all(&bytes)?;
    Ok(())
}

fn csv_err(e: csv::Error) -> Error {
    Error::InvalidArgument(format!("csv write failed: {e}"))
}

/// Entry point used by the thin binary: parse, run, map errors onto exit
/// codes (0 success, 2 usage, 3 invariant violation, 1 internal).
pub fn main_from_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    // help and version are successful outcomes, not usage errors
    if let Err(e) = CliArgs::try_parse_from(argv.iter().cloned()) {
        use clap::error::ErrorKind;
        if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
            print!("{e}");
            return 0;
        }
    }
    let config = match parse_config(argv) {
        Ok(c) => c,
        Err(Error::Usage(msg)) => {
            eprintln!("{msg}");
            return 2;
        }
        Err(e) => {
            eprintln!("{e}");
            return 2;
        }
    };
    match run(&config) {
        Ok(record) => {
            println!(
                "{}: {} cells, {} fits, all invariants hold ({} ms); outputs in {}",
                record.command,
                record.cells.len(),
                record.fits.len(),
                record.wall_clock_ms,
                config.out.display()
            );
            0
        }
        Err(Error::ToleranceExceeded { context, .. }) => {
            eprintln!("invariant violation: {context}");
            3
        }
        Err(e) => {
            eprintln!("{e}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<RunConfig> {
        parse_config(std::iter::once("steinlab").chain(args.iter().copied()))
    }

    #[test]
    fn empty_argv_is_full_report_with_defaults() {
        let c = parse(&[]).unwrap();
        assert_eq!(c.command, CommandKind::FullReport);
        assert_eq!(c.seed, DEFAULT_SEED);
        assert_eq!(c.lambdas, stein::default_lambda_grid());
        assert_eq!(c.beta, 0.4);
        assert_eq!(c.grid, 256);
    }

    #[test]
    fn beta_constraint_is_cited() {
        let err = parse(&["besov", "--beta", "0.6"]).unwrap_err();
        match err {
            Error::Usage(msg) => assert!(msg.contains("beta < 1/2"), "{msg}"),
            other => panic!("expected usage error, got {other:?}"),
        }
    }

    #[test]
    fn lambda_list_parses_and_must_increase() {
        let c = parse(&["stein", "--lambda", "4,16,64,256", "--seed", "7"]).unwrap();
        assert_eq!(c.lambdas, vec![4.0, 16.0, 64.0, 256.0]);
        assert_eq!(c.seed, 7);
        assert!(parse(&["stein", "--lambda", "4,4,16"]).is_err());
        assert!(parse(&["stein", "--lambda", "16,4"]).is_err());
    }

    #[test]
    fn unknown_flag_is_a_usage_error() {
        assert!(matches!(
            parse(&["stein", "--bogus", "1"]),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn grid_must_be_power_of_two() {
        assert!(parse(&["besov", "--grid", "100"]).is_err());
        assert!(parse(&["besov", "--grid", "128"]).is_ok());
    }

    #[test]
    fn function_alias_selects_family() {
        let c = parse(&["rate", "--function", "cubic", "--lambda", "4,16,64,256"]).unwrap();
        assert_eq!(c.family, vec!["cubic".to_string()]);
    }

    #[test]
    fn config_file_precedence_flag_wins_and_notes_conflict() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        std::fs::write(&path, "beta = 0.25\nseed = 9\n").unwrap();
        let c = parse(&["besov", "--config", path.to_str().unwrap(), "--beta", "0.3"]).unwrap();
        assert_eq!(c.beta, 0.3); // flag wins
        assert_eq!(c.seed, 9); // file fills the rest
        assert!(c.notes.iter().any(|n| n.contains("overrides")));
    }

    #[test]
    fn malformed_config_file_names_the_problem() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.toml");
        std::fs::write(&path, "betta = 0.25\n").unwrap();
        let err = parse(&["besov", "--config", path.to_str().unwrap()]).unwrap_err();
        match err {
            Error::Usage(msg) => assert!(msg.contains("betta") || msg.contains("unknown")),
            other => panic!("expected usage error, got {other:?}"),
        }
    }

    #[test]
    fn metrics_command_runs_clean() {
        let dir = tempfile::tempdir().unwrap();
        let mut config = RunConfig::with_defaults(CommandKind::Metrics);
        config.out = dir.path().to_path_buf();
        let record = run(&config).unwrap();
        assert!(record.cells.iter().all(|c| c.pass));
        assert!(dir.path().join("metrics-42.json").exists());
        assert!(dir.path().join("metrics-42.csv").exists());
    }

    #[test]
    fn csv_is_byte_identical_across_reruns() {
        let dir1 = tempfile::tempdir().unwrap();
        let dir2 = tempfile::tempdir().unwrap();
        let mut c1 = RunConfig::with_defaults(CommandKind::PoissonChecks);
        c1.out = dir1.path().to_path_buf();
        let mut c2 = RunConfig::with_defaults(CommandKind::PoissonChecks);
        c2.out = dir2.path().to_path_buf();
        run(&c1).unwrap();
        run(&c2).unwrap();
        let a = std::fs::read(dir1.path().join("poisson-checks-42.csv")).unwrap();
        let b = std::fs::read(dir2.path().join("poisson-checks-42.csv")).unwrap();
        assert_eq!(a, b);
    }
}
