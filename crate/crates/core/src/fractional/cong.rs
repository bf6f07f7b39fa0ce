//! Exact solution of the half-order system
//! `D^{1/2} x = x − y²`, `D^{1/2} y = −y`, and its would-be stable-manifold constant.

use super::mittag_leffler::ml_real;
use super::quad::{integrate, integrate_breaks, QuadConfig};
use super::system::{Method, Trajectory};
use super::FractionalError;

const HALF: f64 = 0.5;

fn e_half(x: f64) -> Result<f64, FractionalError> {
    Ok(ml_real(HALF, 1.0, x)?)
}

fn e_half_half(x: f64) -> Result<f64, FractionalError> {
    Ok(ml_real(HALF, HALF, x)?)
}

/// `(x(t), y(t))` for `x(0) = c1`, `y(0) = c2`:
///
/// `y = c2·E_{1/2}(−√t)`,
/// `x = c1·E_{1/2}(√t) − c2² ∫₀ᵗ (t−s)^{−1/2} E_{1/2,1/2}(√(t−s)) E_{1/2}(−√s)² ds`.
///
/// The convolution is evaluated with `t − s = u²`, which turns it into
/// `2 ∫₀^{√t} E_{1/2,1/2}(u) E_{1/2}(−√(t−u²))² du`.
pub fn cong_exact_solution(c1: f64, c2: f64, grid: &[f64]) -> Result<Trajectory, FractionalError> {
    if grid.first() != Some(&0.0) || grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(FractionalError::InvalidParameter("grid must start at 0 and increase strictly".into()));
    }
    let cfg = QuadConfig { abs_tol: 1e-300, rel_tol: 1e-12, max_intervals: 2000 };
    let mut states = Vec::with_capacity(grid.len());
    for &t in grid {
        let st = t.sqrt();
        let y = c2 * e_half(-st)?;
        let conv = if c2 == 0.0 || t == 0.0 {
            0.0
        } else {
            let mut failure = None;
            let mut f = |u: f64| {
                let r = e_half_half(u).and_then(|a| Ok(a * e_half(-(t - u * u).max(0.0).sqrt())?.powi(2)));
                r.unwrap_or_else(|e| {
                    failure.get_or_insert(e);
                    0.0
                })
            };
            // The integrand has a square-root corner at u = √t.
            let r = integrate_breaks(&mut f, &[0.0, 0.5 * st, 0.9 * st, st], cfg);
            if let Some(e) = failure {
                return Err(e);
            }
            if !r.converged {
                return Err(FractionalError::Quadrature { t, error: r.error });
            }
            2.0 * r.value
        };
        let x = c1 * e_half(st)? - c2 * c2 * conv;
        states.push(vec![x, y]);
    }
    let h = if grid.len() > 1 { grid[1] - grid[0] } else { 0.0 };
    Ok(Trajectory {
        t: grid.to_vec(),
        states,
        method: Method::Exact,
        h,
        alpha: HALF,
        blow_up: None,
        labels: vec!["x".into(), "y".into()],
    })
}

/// Upper limit of the `s`-integral; the omitted tail is below `e^{−100}`.
pub const STABLE_MANIFOLD_CUTOFF: f64 = 100.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StableManifoldCoefficient {
    pub value: f64,
    pub quadrature_error: f64,
    /// Bound on `∫_{100}^∞ e^{−s} E_{1/2}(−√s)² ds`, from `0 < E_{1/2}(−√s) ≤ 1`.
    pub tail_bound: f64,
}

/// `∫₀^∞ e^{−s} E_{1/2}(−√s)² ds`, evaluated with `s = u²` on `[0, 10]`.
pub fn stable_manifold_coefficient() -> Result<StableManifoldCoefficient, FractionalError> {
    let mut failure = None;
    let cfg = QuadConfig { abs_tol: 1e-16, rel_tol: 1e-13, max_intervals: 2000 };
    let r = integrate(
        |u| match e_half(-u) {
            Ok(e) => 2.0 * u * (-u * u).exp() * e * e,
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        },
        0.0,
        STABLE_MANIFOLD_CUTOFF.sqrt(),
        cfg,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(StableManifoldCoefficient {
        value: r.value,
        quadrature_error: r.error,
        tail_bound: (-STABLE_MANIFOLD_CUTOFF).exp(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_is_four_over_pi_minus_one() {
        let c = stable_manifold_coefficient().unwrap();
        assert!((c.value - (4.0 / std::f64::consts::PI - 1.0)).abs() < 1e-12, "{}", c.value);
        assert!(c.tail_bound < 1e-40);
    }

    #[test]
    fn integrand_at_zero_is_one() {
        assert_eq!(e_half(0.0).unwrap().powi(2) * (0f64).exp(), 1.0);
    }

    #[test]
    fn zero_data_stays_at_origin() {
        let g: Vec<f64> = (0..5).map(|i| i as f64).collect();
        let tr = cong_exact_solution(0.0, 0.0, &g).unwrap();
        assert!(tr.states.iter().all(|s| s == &vec![0.0, 0.0]));
    }

    #[test]
    fn no_forcing_when_c2_vanishes() {
        let g: Vec<f64> = (0..5).map(|i| i as f64 * 0.5).collect();
        let tr = cong_exact_solution(0.3, 0.0, &g).unwrap();
        for (t, s) in tr.t.iter().zip(&tr.states) {
            assert_eq!(s[0], 0.3 * e_half(t.sqrt()).unwrap());
            assert_eq!(s[1], 0.0);
        }
    }

    #[test]
    fn matches_high_precision_reference() {
        // x(t) for c1 = -(4/π - 1), c2 = 1 from 40-digit quadrature
        let c1 = -(4.0 / std::f64::consts::PI - 1.0);
        let tr = cong_exact_solution(c1, 1.0, &[0.0, 1.0, 5.0, 10.0, 20.0]).unwrap();
        let want = [c1, -2.737_201_3, -162.107_23, -24_073.937, -5.302_652_7e8];
        for (s, w) in tr.states.iter().zip(want) {
            assert!(((s[0] - w) / w).abs() < 1e-7, "{} vs {w}", s[0]);
        }
    }
}
