//! Gaussian Dirichlet structure on the real line.
//!
//! Probabilists' Hermite polynomials, Gauss-Hermite quadrature for the
//! standard normal measure, the Mehler form of the Ornstein-Uhlenbeck
//! semigroup `P_t F(x) = E[F(e^{-t} x + sqrt(1 - e^{-2t}) Y)]`, the positive
//! generator `L F = x F' - F''`, the adjoint `D* G = x G - G'`, and the
//! semigroup-derivative formulas that follow from Gaussian integration by
//! parts. With this orientation `L = D* D`, the Hermite polynomial `H_n` is
//! an eigenfunction with `P_t H_n = e^{-nt} H_n`, and the gradient commutes
//! through the semigroup as `D P_t = e^{-t} P_t D`.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::numeric::{kahan_sum, probe_grid, GaussLegendreRule, KahanSum};

/// Highest Hermite degree evaluated by the three-term recurrence before
/// floating-point cancellation becomes noticeable.
pub const MAX_HERMITE_DEGREE: u32 = 30;

/// Largest quadrature order the adaptive doubling is allowed to reach.
pub const MAX_QUADRATURE_ORDER: usize = 256;

/// Agreement threshold for the adaptive order doubling.
pub const ADAPTIVE_QUADRATURE_TOL: f64 = 1e-11;

/// Probabilists' Hermite polynomial `H_n(x)`.
///
/// Three-term recurrence `H_{n+1} = x H_n - n H_{n-1}` with `H_0 = 1`,
/// `H_1 = x`. Degrees above [`MAX_HERMITE_DEGREE`] are rejected.
pub fn hermite(n: u32, x: f64) -> Result<f64> {
    if n > MAX_HERMITE_DEGREE {
        return Err(Error::Range(format!(
            "hermite degree {n} exceeds the supported limit {MAX_HERMITE_DEGREE}"
        )));
    }
    if n == 0 {
        return Ok(1.0);
    }
    let mut prev = 1.0;
    let mut cur = x;
    for k in 1..n {
        let next = x * cur - k as f64 * prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Declared norm class of a test function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormClass {
    /// 1-Lipschitz: `sup |F'| <= 1`.
    Lip1,
    /// Unit ball of C^2_b: `max(sup|F|, sup|F'|, sup|F''|) <= 1`.
    C2bUnit,
    /// No uniform bound declared; a polynomial envelope may be attached.
    Unbounded,
}

/// Sup-norm information attached to a test function. `None` entries mean
/// "not declared".
#[derive(Debug, Clone, Copy, Default)]
pub struct DeclaredBounds {
    pub sup_f: Option<f64>,
    pub sup_d1: Option<f64>,
    pub sup_d2: Option<f64>,
}

type Evaluator = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A scalar test function with explicit derivative evaluators.
///
/// Construction validates the stated derivatives by a central finite
/// difference on the 33-point Chebyshev probe grid and, for the `C2bUnit`
/// class, checks the three sup-norms on the same grid.
#[derive(Clone)]
pub struct SmoothTestFunction {
    name: String,
    derivs: Vec<Evaluator>,
    norm_class: NormClass,
    bounds: DeclaredBounds,
    /// Optional polynomial envelope `|F(x)| <= c (1 + |x|)^p` for unbounded
    /// functions; consumed by the Poisson-side truncation analysis.
    poly_envelope: Option<(f64, f64)>,
}

impl std::fmt::Debug for SmoothTestFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SmoothTestFunction")
            .field("name", &self.name)
            .field("order", &(self.derivs.len() - 1))
            .field("norm_class", &self.norm_class)
            .finish()
    }
}

impl SmoothTestFunction {
    /// Build a test function from `derivs[0] = F`, `derivs[1] = F'`, ...
    pub fn new(
        name: impl Into<String>,
        norm_class: NormClass,
        derivs: Vec<Evaluator>,
    ) -> Result<Self> {
        let name = name.into();
        if derivs.is_empty() {
            return Err(Error::InvalidArgument(format!(
                "test function '{name}' needs at least the order-0 evaluator"
            )));
        }
        let grid = probe_grid();
        // Central difference check of each stated derivative. The probe
        // functions in scope are smooth enough that h = 1e-4 leaves the
        // O(h^2) truncation term well below the acceptance threshold.
        let h = 1e-4;
        for k in 1..derivs.len() {
            for &x in &grid {
                let fd = (derivs[k - 1](x + h) - derivs[k - 1](x - h)) / (2.0 * h);
                let stated = derivs[k](x);
                if (fd - stated).abs() > 1e-5 * (1.0 + stated.abs()) {
                    return Err(Error::Contract(format!(
                        "test function '{name}': derivative {k} disagrees with finite \
                         difference at x = {x:.4} (fd {fd:.6e}, stated {stated:.6e})"
                    )));
                }
            }
        }
        let mut bounds = DeclaredBounds::default();
        let sup_on_grid =
            |k: usize| -> f64 { grid.iter().map(|&x| derivs[k](x).abs()).fold(0.0, f64::max) };
        if norm_class == NormClass::C2bUnit {
            if derivs.len() < 3 {
                return Err(Error::Contract(format!(
                    "test function '{name}': C2b class requires derivatives up to order 2"
                )));
            }
            let (s0, s1, s2) = (sup_on_grid(0), sup_on_grid(1), sup_on_grid(2));
            let worst = s0.max(s1).max(s2);
            if worst > 1.0 + 1e-9 {
                return Err(Error::Contract(format!(
                    "test function '{name}': C2b unit-ball violated on probe grid \
                     (max sup-norm {worst:.6})"
                )));
            }
            bounds = DeclaredBounds {
                sup_f: Some(s0),
                sup_d1: Some(s1),
                sup_d2: Some(s2),
            };
        }
        if norm_class == NormClass::Lip1 {
            if derivs.len() < 2 {
                return Err(Error::Contract(format!(
                    "test function '{name}': Lip(1) class requires the first derivative"
                )));
            }
            let s1 = sup_on_grid(1);
            if s1 > 1.0 + 1e-9 {
                return Err(Error::Contract(format!(
                    "test function '{name}': Lip(1) violated on probe grid (sup|F'| = {s1:.6})"
                )));
            }
            bounds.sup_d1 = Some(s1);
        }
        Ok(Self {
            name,
            derivs,
            norm_class,
            bounds,
            poly_envelope: None,
        })
    }

    /// Attach a polynomial envelope `|F(x)| <= c (1 + |x|)^p`.
    pub fn with_poly_envelope(mut self, c: f64, p: f64) -> Self {
        self.poly_envelope = Some((c, p));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn norm_class(&self) -> NormClass {
        self.norm_class
    }

    pub fn bounds(&self) -> DeclaredBounds {
        self.bounds
    }

    pub fn poly_envelope(&self) -> Option<(f64, f64)> {
        self.poly_envelope
    }

    /// Highest derivative order available.
    pub fn max_order(&self) -> usize {
        self.derivs.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.derivs[0](x)
    }

    /// `k`-th derivative; `k = 0` is the function itself.
    pub fn deriv(&self, k: usize, x: f64) -> Result<f64> {
        self.derivs.get(k).map(|d| d(x)).ok_or_else(|| {
            Error::Contract(format!(
                "test function '{}' exposes derivatives up to order {}, requested {k}",
                self.name,
                self.max_order()
            ))
        })
    }

    /// The derivative as a standalone test function (declared bounds drop to
    /// whatever the construction checks can re-establish).
    pub fn derivative_fn(&self) -> Result<SmoothTestFunction> {
        if self.derivs.len() < 2 {
            return Err(Error::Contract(format!(
                "test function '{}' has no stated derivative",
                self.name
            )));
        }
        SmoothTestFunction::new(
            format!("{}'", self.name),
            NormClass::Unbounded,
            self.derivs[1..].to_vec(),
        )
    }
}

/// Gauss-Hermite rule in probabilists' normalization: the weights sum to one
/// and the rule integrates polynomials of degree `< 2 * order` exactly
/// against the standard normal law.
#[derive(Debug, Clone)]
pub struct GaussHermiteRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    order: usize,
}

impl GaussHermiteRule {
    /// Golub-Welsch nodes (eigenvalues of the Jacobi matrix with
    /// off-diagonal sqrt(k)), Newton-polished on the orthonormal recurrence,
    /// weights from the Christoffel function.
    pub fn new(order: usize) -> Result<Self> {
        if !(2..=MAX_QUADRATURE_ORDER).contains(&order) {
            return Err(Error::InvalidArgument(format!(
                "quadrature order {order} outside [2, {MAX_QUADRATURE_ORDER}]"
            )));
        }
        let jacobi = DMatrix::<f64>::from_fn(order, order, |i, j| {
            if i + 1 == j {
                (j as f64).sqrt()
            } else if j + 1 == i {
                (i as f64).sqrt()
            } else {
                0.0
            }
        });
        let mut nodes: Vec<f64> = jacobi.symmetric_eigenvalues().iter().copied().collect();
        nodes.sort_by(|a, b| a.partial_cmp(b).expect("hermite nodes are finite"));
        // Polish each node on p_n = 0 using p_n' = sqrt(n) p_{n-1}.
        for x in &mut nodes {
            for _ in 0..4 {
                let (pn, pn1) = orthonormal_hermite_pair(order, *x);
                let slope = (order as f64).sqrt() * pn1;
                if slope == 0.0 {
                    break;
                }
                let dx = pn / slope;
                *x -= dx;
                if dx.abs() < 1e-15 * (1.0 + x.abs()) {
                    break;
                }
            }
        }
        let weights: Vec<f64> = nodes
            .iter()
            .map(|&x| 1.0 / orthonormal_hermite_sq_sum(order, x))
            .collect();
        let rule = Self {
            nodes,
            weights,
            order,
        };
        rule.validate()?;
        Ok(rule)
    }

    fn validate(&self) -> Result<()> {
        let total = kahan_sum(self.weights.iter().copied());
        if (total - 1.0).abs() > 1e-13 {
            return Err(Error::Contract(format!(
                "Gauss-Hermite order {}: weights sum to {total:.16} instead of 1",
                self.order
            )));
        }
        let m1 = self.expectation(|x| x);
        let m3 = self.expectation(|x| x * x * x);
        if m1.abs() > 1e-12 || m3.abs() > 1e-12 {
            return Err(Error::Contract(format!(
                "Gauss-Hermite order {}: odd moments do not vanish (m1 {m1:.3e}, m3 {m3:.3e})",
                self.order
            )));
        }
        let m2 = self.expectation(|x| x * x);
        if (m2 - 1.0).abs() > 1e-12 {
            return Err(Error::Contract(format!(
                "Gauss-Hermite order {}: second moment {m2:.16} instead of 1",
                self.order
            )));
        }
        Ok(())
    }

    /// Shared, cached rule.
    pub fn shared(order: usize) -> Result<Arc<Self>> {
        static CACHE: OnceLock<Mutex<BTreeMap<usize, Arc<GaussHermiteRule>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
        let mut guard = cache.lock().expect("hermite cache poisoned");
        if let Some(rule) = guard.get(&order) {
            return Ok(rule.clone());
        }
        let rule = Arc::new(Self::new(order)?);
        guard.insert(order, rule.clone());
        Ok(rule)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `E[f(Y)]` for `Y` standard normal.
    pub fn expectation(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        let mut acc = KahanSum::new();
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc.add(w * f(x));
        }
        acc.value()
    }
}

/// Orthonormal probabilists' Hermite values `(p_n(x), p_{n-1}(x))`.
fn orthonormal_hermite_pair(n: usize, x: f64) -> (f64, f64) {
    let mut prev = 0.0_f64; // p_{-1}
    let mut cur = 1.0_f64; // p_0
    for k in 0..n {
        let next = (x * cur - (k as f64).sqrt() * prev) / ((k + 1) as f64).sqrt();
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

/// `sum_{k=0}^{n-1} p_k(x)^2`, the reciprocal Christoffel weight.
fn orthonormal_hermite_sq_sum(n: usize, x: f64) -> f64 {
    let mut prev = 0.0_f64;
    let mut cur = 1.0_f64;
    let mut acc = cur * cur;
    for k in 0..n - 1 {
        let next = (x * cur - (k as f64).sqrt() * prev) / ((k + 1) as f64).sqrt();
        prev = cur;
        cur = next;
        acc += cur * cur;
    }
    acc
}

/// Fixed-rule Gaussian expectation of a test function.
pub fn gauss_expectation(f: &SmoothTestFunction, rule: &GaussHermiteRule) -> f64 {
    rule.expectation(|x| f.eval(x))
}

/// Result of the adaptive order-doubling quadrature.
#[derive(Debug, Clone, Copy)]
pub struct AdaptiveQuad {
    pub value: f64,
    pub order: usize,
    /// Gap between the final two orders; an estimate, not a bound.
    pub error_estimate: f64,
}

/// Gaussian expectation with the default order (64) doubled until two
/// successive orders agree within 1e-11 or the order cap is reached.
pub fn adaptive_gauss_expectation(f: impl Fn(f64) -> f64) -> Result<AdaptiveQuad> {
    let mut order = 64;
    let mut prev = GaussHermiteRule::shared(order)?.expectation(&f);
    loop {
        let next_order = order * 2;
        if next_order > MAX_QUADRATURE_ORDER {
            return Ok(AdaptiveQuad {
                value: prev,
                order,
                error_estimate: f64::NAN,
            });
        }
        let next = GaussHermiteRule::shared(next_order)?.expectation(&f);
        let gap = (next - prev).abs();
        if gap <= ADAPTIVE_QUADRATURE_TOL {
            return Ok(AdaptiveQuad {
                value: next,
                order: next_order,
                error_estimate: gap,
            });
        }
        order = next_order;
        prev = next;
    }
}

/// Mehler evaluation of the Ornstein-Uhlenbeck semigroup:
/// `P_t F(x) = E[F(e^{-t} x + sqrt(1 - e^{-2t}) Y)]`.
///
/// At `t = 0` this returns `F(x)` exactly.
pub fn mehler_apply(
    f: &SmoothTestFunction,
    t: f64,
    x: f64,
    rule: &GaussHermiteRule,
) -> Result<f64> {
    if t < 0.0 {
        return Err(Error::Domain(format!(
            "mehler_apply requires t >= 0, got {t}"
        )));
    }
    if t == 0.0 {
        return Ok(f.eval(x));
    }
    let s = (-t).exp();
    let c = (1.0 - s * s).max(0.0).sqrt();
    Ok(rule.expectation(|y| f.eval(s * x + c * y)))
}

/// Same Mehler average for a plain closure.
pub fn mehler_apply_fn(
    f: impl Fn(f64) -> f64,
    t: f64,
    x: f64,
    rule: &GaussHermiteRule,
) -> Result<f64> {
    if t < 0.0 {
        return Err(Error::Domain(format!(
            "mehler_apply requires t >= 0, got {t}"
        )));
    }
    if t == 0.0 {
        return Ok(f(x));
    }
    let s = (-t).exp();
    let c = (1.0 - s * s).max(0.0).sqrt();
    Ok(rule.expectation(|y| f(s * x + c * y)))
}

/// Positive Ornstein-Uhlenbeck generator `L F(x) = x F'(x) - F''(x)`.
///
/// With this sign `L = D* D` and `E_P[L F] = 0` characterizes the standard
/// normal law; the semigroup satisfies `d/dt P_t F = -L P_t F`.
pub fn ou_generator(f: &SmoothTestFunction, x: f64) -> Result<f64> {
    if f.max_order() < 2 {
        return Err(Error::Contract(format!(
            "ou_generator requires derivatives up to order 2, '{}' exposes {}",
            f.name(),
            f.max_order()
        )));
    }
    Ok(x * f.deriv(1, x)? - f.deriv(2, x)?)
}

/// Gaussian divergence (adjoint of the derivative): `D* G(x) = x G(x) - G'(x)`.
pub fn gaussian_adjoint(g: &SmoothTestFunction, x: f64) -> Result<f64> {
    if g.max_order() < 1 {
        return Err(Error::Contract(format!(
            "gaussian_adjoint requires the first derivative, '{}' exposes none",
            g.name()
        )));
    }
    Ok(x * g.eval(x) - g.deriv(1, x)?)
}

/// `(P_t F)^{(k)}` through Gaussian integration by parts:
/// `(e^{-t} / sqrt(1 - e^{-2t}))^k  E[F(e^{-t} x + sqrt(1 - e^{-2t}) Y) y^k]`.
///
/// The formula is singular at `t = 0`; `k = 0` is rejected (use
/// [`mehler_apply`]). The display is stated for bounded `F`; evaluating it
/// for polynomially bounded `F` (the quadrature only needs `F` at the
/// scaled node positions) is an extension covered by the test battery.
pub fn semigroup_derivative(
    f: &SmoothTestFunction,
    t: f64,
    x: f64,
    k: u32,
    rule: &GaussHermiteRule,
) -> Result<f64> {
    if k == 0 {
        return Err(Error::Contract(
            "semigroup_derivative with k = 0 is mehler_apply; call that instead".into(),
        ));
    }
    if t == 0.0 {
        return Err(Error::Singularity(
            "the integration-by-parts kernel diverges at t = 0".into(),
        ));
    }
    if t < 0.0 {
        return Err(Error::Domain(format!(
            "semigroup_derivative requires t > 0, got {t}"
        )));
    }
    let s = (-t).exp();
    let c = (1.0 - s * s).sqrt();
    let factor = (s / c).powi(k as i32);
    Ok(factor * rule.expectation(|y| f.eval(s * x + c * y) * y.powi(k as i32)))
}

/// Mixed third-derivative form: two derivatives moved onto `F` through the
/// commutation relation and one integration by parts, so that
/// `(P_t F)^{(3)}(x) = e^{-3t} (1 - e^{-2t})^{-1/2} E[F''(...) Y]`.
///
/// Bounded by `e^{-3t} (1 - e^{-2t})^{-1/2} sup|F''| E|Y|` for `F` in C^2_b.
pub fn semigroup_third_derivative_mixed(
    f: &SmoothTestFunction,
    t: f64,
    x: f64,
    rule: &GaussHermiteRule,
) -> Result<f64> {
    if t <= 0.0 {
        return Err(Error::Singularity(format!(
            "mixed third-derivative kernel requires t > 0, got {t}"
        )));
    }
    if f.max_order() < 2 {
        return Err(Error::Contract(format!(
            "mixed third derivative needs F'', '{}' exposes order {}",
            f.name(),
            f.max_order()
        )));
    }
    let s = (-t).exp();
    let c = (1.0 - s * s).sqrt();
    let factor = s.powi(3) / c;
    let mean = rule.expectation(|y| {
        let arg = s * x + c * y;
        self_deriv2(f, arg) * y
    });
    Ok(factor * mean)
}

fn self_deriv2(f: &SmoothTestFunction, x: f64) -> f64 {
    f.deriv(2, x).expect("order checked by caller")
}

/// Which time kernel of the semigroup-derivative bound to integrate over
/// `[0, infinity)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimeKernel {
    /// `e^{-kt} (1 - e^{-2t})^{-k/2}`; integrable only for `k = 1`.
    Pure(u32),
    /// `e^{-3t} (1 - e^{-2t})^{-1/2}`, the mixed third-derivative kernel.
    Mixed3,
}

/// Time integral of the chosen kernel.
///
/// The substitution `s = e^{-t}` composed with `s = sin(theta)` turns the
/// mixed kernel into the polynomial `sin^2(theta)` on `[0, pi/2]`, so a
/// fixed Gauss-Legendre rule is exact up to roundoff; the integral is
/// `pi / 4`. The pure kernels diverge for `k >= 2` and `+infinity` is
/// returned without quadrature.
pub fn ou_kernel_time_integral(kernel: TimeKernel) -> f64 {
    let rule = GaussLegendreRule::shared(128);
    match kernel {
        TimeKernel::Pure(k) if k >= 2 => f64::INFINITY,
        TimeKernel::Pure(_) => {
            // integral of dtheta over [0, pi/2]
            rule.integrate(0.0, std::f64::consts::FRAC_PI_2, |_| 1.0)
        }
        TimeKernel::Mixed3 => rule.integrate(0.0, std::f64::consts::FRAC_PI_2, |theta| {
            theta.sin().powi(2)
        }),
    }
}

/// Convenience builders used in tests and in the regression family.
pub mod functions {
    use super::*;

    pub fn constant(c: f64) -> SmoothTestFunction {
        SmoothTestFunction::new(
            format!("const-{c}"),
            NormClass::Unbounded,
            vec![
                Arc::new(move |_| c),
                Arc::new(|_| 0.0),
                Arc::new(|_| 0.0),
                Arc::new(|_| 0.0),
            ],
        )
        .expect("constant function is valid")
    }

    pub fn identity() -> SmoothTestFunction {
        SmoothTestFunction::new(
            "identity",
            NormClass::Unbounded,
            vec![
                Arc::new(|x| x),
                Arc::new(|_| 1.0),
                Arc::new(|_| 0.0),
                Arc::new(|_| 0.0),
            ],
        )
        .expect("identity is valid")
        .with_poly_envelope(1.0, 1.0)
    }

    pub fn monomial(k: u32) -> SmoothTestFunction {
        let d0: Evaluator = Arc::new(move |x: f64| x.powi(k as i32));
        let d1: Evaluator = Arc::new(move |x: f64| k as f64 * x.powi(k as i32 - 1));
        let d2: Evaluator = Arc::new(move |x: f64| {
            if k >= 2 {
                (k * (k - 1)) as f64 * x.powi(k as i32 - 2)
            } else {
                0.0
            }
        });
        let d3: Evaluator = Arc::new(move |x: f64| {
            if k >= 3 {
                (k * (k - 1) * (k - 2)) as f64 * x.powi(k as i32 - 3)
            } else {
                0.0
            }
        });
        SmoothTestFunction::new(format!("x^{k}"), NormClass::Unbounded, vec![d0, d1, d2, d3])
            .expect("monomial is valid")
            .with_poly_envelope(1.0, k as f64)
    }

    pub fn hermite_poly(n: u32) -> SmoothTestFunction {
        let d0: Evaluator = Arc::new(move |x: f64| hermite(n, x).expect("degree checked"));
        // H_n' = n H_{n-1}
        let d1: Evaluator = Arc::new(move |x: f64| {
            if n == 0 {
                0.0
            } else {
                n as f64 * hermite(n - 1, x).expect("degree checked")
            }
        });
        let d2: Evaluator = Arc::new(move |x: f64| {
            if n < 2 {
                0.0
            } else {
                (n * (n - 1)) as f64 * hermite(n - 2, x).expect("degree checked")
            }
        });
        SmoothTestFunction::new(format!("H{n}"), NormClass::Unbounded, vec![d0, d1, d2])
            .expect("hermite polynomial is valid")
            .with_poly_envelope(hermite_envelope(n), n as f64)
    }

    fn hermite_envelope(n: u32) -> f64 {
        // crude but sound on [0, inf): sum of |coefficients| of H_n
        // bounded by n!! * 2^n; good enough for truncation control.
        let mut c = 1.0;
        for k in 1..=n {
            c *= 2.0 * k as f64;
        }
        c.max(1.0)
    }

    pub fn sine(a: f64) -> SmoothTestFunction {
        SmoothTestFunction::new(
            format!("sin-{a}"),
            NormClass::Unbounded,
            vec![
                Arc::new(move |x: f64| (a * x).sin()),
                Arc::new(move |x: f64| a * (a * x).cos()),
                Arc::new(move |x: f64| -a * a * (a * x).sin()),
                Arc::new(move |x: f64| -a * a * a * (a * x).cos()),
            ],
        )
        .expect("sine is valid")
    }
}
