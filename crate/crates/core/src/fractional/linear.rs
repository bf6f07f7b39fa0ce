//! Variation-of-constants solution of `D^α x = −λx + g(t)`.

use super::mittag_leffler::ml_real;
use super::quad::{integrate, QuadConfig};
use super::system::{Method, Trajectory};
use super::FractionalError;

/// Quadrature tolerance for the convolution integral.
const QUAD: QuadConfig = QuadConfig { abs_tol: 1e-13, rel_tol: 1e-11, max_intervals: 2000 };

/// `x(t) = x0·E_α(−λt^α) + ∫₀ᵗ τ^{α−1} E_{α,α}(−λτ^α) g(t−τ) dτ` on `grid`.
///
/// With `τ = u^{1/α}` the weight `τ^{α−1}dτ` becomes `du/α`, which removes the
/// endpoint singularity before quadrature.
pub fn solve_scalar_linear(
    alpha: f64,
    lambda: f64,
    g: &dyn Fn(f64) -> f64,
    x0: f64,
    grid: &[f64],
) -> Result<Trajectory, FractionalError> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(FractionalError::InvalidParameter(format!("alpha must lie in (0,1], got {alpha}")));
    }
    if grid.first() != Some(&0.0) || grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(FractionalError::InvalidParameter("grid must start at 0 and increase strictly".into()));
    }
    let mut states = Vec::with_capacity(grid.len());
    for &t in grid {
        let hom = x0 * ml_real(alpha, 1.0, -lambda * t.powf(alpha))?;
        let mut failure = None;
        let upper = t.powf(alpha);
        let r = integrate(
            |u| match ml_real(alpha, alpha, -lambda * u) {
                Ok(e) => e * g(t - u.powf(1.0 / alpha)),
                Err(e) => {
                    failure.get_or_insert(e);
                    0.0
                }
            },
            0.0,
            upper,
            QUAD,
        );
        if let Some(e) = failure {
            return Err(e.into());
        }
        if !r.converged {
            return Err(FractionalError::Quadrature { t, error: r.error });
        }
        states.push(vec![hom + r.value / alpha]);
    }
    let h = if grid.len() > 1 { grid[1] - grid[0] } else { 0.0 };
    let uniform = grid.windows(2).all(|w| ((w[1] - w[0]) - h).abs() <= 1e-12 * h.max(1.0));
    Ok(Trajectory {
        t: grid.to_vec(),
        states,
        method: Method::Exact,
        h: if uniform { h } else { 0.0 },
        alpha,
        blow_up: None,
        labels: vec!["x".into()],
    })
}
