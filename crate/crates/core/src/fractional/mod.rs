//! Caputo fractional-order numerics: Mittag-Leffler functions, exact
//! solutions of linear and special systems, and the fractional Adams method.

pub mod caputo;
pub mod cong;
pub mod fam;
pub mod gamma;
pub mod linear;
pub mod matrix;
pub mod mittag_leffler;
pub mod quad;
pub mod rk4;
pub mod system;

use thiserror::Error;

pub use caputo::{caputo_constant, caputo_power};
pub use cong::{cong_exact_solution, stable_manifold_coefficient};
pub use fam::{fam_solve, fam_solve_with, FamConfig};
pub use linear::solve_scalar_linear;
pub use matrix::ml_matrix;
pub use mittag_leffler::{ml, ml1, ml_real, MlError};
pub use rk4::rk4_solve;
pub use system::{FractionalSystem, Method, Rhs, Trajectory};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FractionalError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    MittagLeffler(#[from] MlError),
    #[error("quadrature did not converge at t={t} (error estimate {error:e})")]
    Quadrature { t: f64, error: f64 },
}
