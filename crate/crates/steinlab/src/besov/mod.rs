//! Discretized fractional-smoothness path space.
//!
//! The space of fractional integrals of order `beta < 1/2` of
//! square-integrable densities carries both the compensated, rescaled
//! Poisson paths and the Brownian limit law, so the two can be compared
//! through the same inner product. Elements are stored by their density
//! representative on `n` panels ([`BesovVector`]); the inner product is
//! the midpoint L^2 pairing of densities. [`frac`] builds the
//! product-integration discretizations of the left/right fractional
//! integrals, the exact-inverse fractional derivative, and the Wiener
//! covariance composition; [`paths`] provides the seeded samplers, the
//! compensated rescaling of counting paths, and the paired Monte Carlo
//! rate experiment for the functional convergence.

mod frac;
mod paths;

pub use frac::{
    frac_derivative_left, frac_integral_left, frac_integral_right, left_integral_condition,
    left_integral_operator, right_integral_operator, v_beta_operator, v_beta_quadratic_form,
    FractionalOperator, GridConfig, OperatorKind,
};
pub use paths::{
    besov_inner, besov_norm, default_cylindrical_family, donsker_map, embed_path_samples,
    functional_rate_experiment, reconstruct_path, sample_brownian_path, sample_poisson_path,
    sample_rescaled_statistics, BesovVector, CountingPath, CylindricalFunctional, RateCell,
    RateExperiment,
};
