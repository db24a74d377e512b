//! steinlab: a numerical laboratory for semigroup-based normal
//! approximation.
//!
//! The crate builds the two one-dimensional Dirichlet structures that drive
//! the Poisson-to-Gaussian comparison, the Ornstein-Uhlenbeck structure on
//! the real line ([`gauss`]) and the M/M/infinity structure on the integers
//! ([`poisson`]), and uses them to evaluate explicit approximation bounds,
//! first-order Edgeworth corrections, and empirical convergence rates
//! ([`stein`]). Probability metrics on one-dimensional laws live in
//! [`metrics`]; the Besov-Liouville discretization of the path-space
//! analogue (fractional operators, the rescaled-Poisson embedding and the
//! Brownian limit) lives in [`besov`]. The [`cli`] module drives
//! reproducible sweeps and writes JSON/CSV reports.
//!
//! Every example under `examples/` is a runnable tour of one capability:
//!
//! ```bash
//! cargo run -p steinlab --example stein_bound
//! ```

pub mod besov;
pub mod cli;
pub mod error;
pub mod gauss;
pub mod metrics;
pub mod numeric;
pub mod poisson;
pub mod stein;

pub use error::{Error, Result};
