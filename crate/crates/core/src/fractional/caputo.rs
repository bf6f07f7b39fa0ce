//! Closed-form Caputo derivatives and Riemann–Liouville integrals of monomials.

use super::gamma::gamma;
use super::FractionalError;

/// `D^α t^p = Γ(p+1)/Γ(p+1−α) · t^{p−α}` for `p > 0`, `t > 0`.
pub fn caputo_power(alpha: f64, p: f64, t: f64) -> Result<f64, FractionalError> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(FractionalError::InvalidParameter(format!("alpha must lie in (0,1], got {alpha}")));
    }
    if !(p > 0.0) {
        return Err(FractionalError::InvalidParameter(format!("exponent must be positive, got {p}")));
    }
    if p - alpha <= -1.0 {
        return Err(FractionalError::InvalidParameter(format!("p - alpha = {} <= -1", p - alpha)));
    }
    if !(t > 0.0) {
        return Err(FractionalError::InvalidParameter(format!("t must be positive, got {t}")));
    }
    Ok(gamma(p + 1.0) / gamma(p + 1.0 - alpha) * t.powf(p - alpha))
}

/// The Caputo derivative of a constant.
pub fn caputo_constant() -> f64 {
    0.0
}

/// `I^β t^p = Γ(p+1)/Γ(p+1+β) · t^{p+β}` for `β ≥ 0`, `p > −1`.
pub fn rl_integral_power(beta: f64, p: f64, t: f64) -> Result<f64, FractionalError> {
    if !(beta >= 0.0) || !(p > -1.0) || !(t >= 0.0) {
        return Err(FractionalError::InvalidParameter(format!("need beta >= 0, p > -1, t >= 0; got {beta}, {p}, {t}")));
    }
    if beta == 0.0 {
        return Ok(t.powf(p));
    }
    Ok(gamma(p + 1.0) / gamma(p + 1.0 + beta) * t.powf(p + beta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fractional::quad::{integrate, QuadConfig};

    #[test]
    fn classical_derivative() {
        assert_eq!(caputo_power(1.0, 2.0, 3.0).unwrap(), 6.0);
        assert_eq!(caputo_constant(), 0.0);
    }

    fn caputo_by_quadrature(alpha: f64, p: f64, t: f64) -> f64 {
        // (1/Γ(1-α)) ∫₀ᵗ (t-s)^{-α} p s^{p-1} ds with u = (t-s)^{1-α}
        let cfg = QuadConfig { rel_tol: 1e-12, ..Default::default() };
        let k = 1.0 / (1.0 - alpha);
        let r = integrate(|u| p * (t - u.powf(k)).max(0.0).powf(p - 1.0), 0.0, t.powf(1.0 - alpha), cfg);
        r.value * k / gamma(1.0 - alpha)
    }

    #[test]
    fn matches_the_defining_integral() {
        assert!((caputo_power(0.5, 1.0, 1.0).unwrap() - std::f64::consts::FRAC_2_SQRT_PI).abs() < 1e-14);
        for (a, p, t) in [(0.5, 1.0, 1.0), (0.3, 1.5, 2.0), (0.75, 2.0, 0.4), (0.9, 3.0, 1.7)] {
            let v = caputo_power(a, p, t).unwrap();
            let q = caputo_by_quadrature(a, p, t);
            assert!((v - q).abs() < 1e-8 * v.abs(), "alpha={a} p={p} t={t}: {v} vs {q}");
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(caputo_power(0.5, 0.0, 1.0).is_err());
        assert!(caputo_power(0.5, 1.0, 0.0).is_err());
        assert!(caputo_power(1.5, 1.0, 1.0).is_err());
    }

    #[test]
    fn rl_integral_of_t() {
        let v = rl_integral_power(0.5, 1.0, 1.0).unwrap();
        assert!((v - 1.0 / gamma(2.5)).abs() < 1e-15);
    }
}
