//! Two-parameter Mittag-Leffler function `E_{α,β}(z) = Σ z^k / Γ(αk+β)`.
//!
//! Two evaluation strategies:
//! - the Taylor series with Neumaier-compensated summation, used for `|z| ≤ 5`
//!   whenever its rounding-error bound certifies the requested accuracy;
//! - the Hankel-contour integral representation (for `0 < α ≤ 1`), used
//!   everywhere else.
//!
//! The Taylor bound is `ε·Σ|t_k|`, so on the negative real axis with small `α`
//! the series is rejected and the contour takes over.

use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

use super::gamma::{gamma, ln_gamma};
use super::quad::{integrate_complex, QuadConfig};

/// Radius below which the Taylor series is tried first.
pub const SWITCH_RADIUS: f64 = 5.0;
/// Relative accuracy requested from both strategies.
pub const DEFAULT_TOL: f64 = 1e-11;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MlError {
    #[error("invalid parameters: {0}")]
    InvalidParameter(String),
    #[error("{method} evaluation not certifiable at z={z}: estimated relative error {estimate:e}")]
    NotCertified { method: &'static str, z: Complex64, estimate: f64 },
    #[error("result overflows at z={0}")]
    Overflow(Complex64),
}

/// Which strategy produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MlMethod {
    Taylor,
    Contour,
    /// Elementary closed forms: `E_{1,1}(z) = e^z`, and for real `x`
    /// `E_{1/2,1}(x) = e^{x²} erfc(-x)`, `E_{1/2,1/2}(x) = 1/√π + x·E_{1/2,1}(x)`.
    ClosedForm,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlValue {
    pub value: Complex64,
    pub method: MlMethod,
    /// Estimated relative error.
    pub error: f64,
}

fn check_params(alpha: f64, beta: f64, z: Complex64) -> Result<(), MlError> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(MlError::InvalidParameter(format!("alpha must be positive, got {alpha}")));
    }
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(MlError::InvalidParameter(format!("beta must be positive, got {beta}")));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(MlError::InvalidParameter(format!("argument must be finite, got {z}")));
    }
    Ok(())
}

/// `E_{α,β}(z)` to relative accuracy [`DEFAULT_TOL`].
pub fn ml(alpha: f64, beta: f64, z: Complex64) -> Result<Complex64, MlError> {
    ml_detailed(alpha, beta, z, DEFAULT_TOL).map(|v| v.value)
}

/// `E_{α,β}(x)` for real `x`.
pub fn ml_real(alpha: f64, beta: f64, x: f64) -> Result<f64, MlError> {
    ml(alpha, beta, Complex64::new(x, 0.0)).map(|v| v.re)
}

/// `E_α(z) = E_{α,1}(z)`.
pub fn ml1(alpha: f64, z: Complex64) -> Result<Complex64, MlError> {
    ml(alpha, 1.0, z)
}

/// Strategy dispatch with an explicit tolerance.
pub fn ml_detailed(alpha: f64, beta: f64, z: Complex64, tol: f64) -> Result<MlValue, MlError> {
    check_params(alpha, beta, z)?;
    if !(tol >= 10.0 * f64::EPSILON) {
        return Err(MlError::InvalidParameter(format!("tolerance {tol:e} is below 10 machine epsilons")));
    }
    if alpha == 0.5 && z.im == 0.0 && (beta == 1.0 || beta == 0.5) {
        if let Some(v) = half_order_closed_form(beta, z.re) {
            return Ok(MlValue { value: Complex64::new(v, 0.0), method: MlMethod::ClosedForm, error: 64.0 * f64::EPSILON });
        }
    }
    if z.norm() <= SWITCH_RADIUS {
        match ml_taylor(alpha, beta, z, tol) {
            Ok(v) => return Ok(v),
            Err(e) if alpha > 1.0 => return Err(e),
            Err(_) => {}
        }
    }
    if alpha == 1.0 && beta == 1.0 {
        // The contour loses relative accuracy where e^z is tiny; use the closed form.
        let value = z.exp();
        if !(value.re.is_finite() && value.im.is_finite()) {
            return Err(MlError::Overflow(z));
        }
        return Ok(MlValue { value, method: MlMethod::ClosedForm, error: f64::EPSILON });
    }
    if alpha > 1.0 {
        return Err(MlError::InvalidParameter(format!(
            "alpha={alpha} > 1 is only supported by the series, which needs |z| <= {SWITCH_RADIUS}"
        )));
    }
    ml_contour(alpha, beta, z, tol)
}

fn half_order_closed_form(beta: f64, x: f64) -> Option<f64> {
    // e^{x²} erfc(-x); for x < 0 both factors stay finite while x² < 700
    if x * x > 700.0 {
        return None;
    }
    let e_half = (x * x).exp() * libm::erfc(-x);
    let v = if beta == 1.0 { e_half } else { 1.0 / PI.sqrt() + x * e_half };
    v.is_finite().then_some(v)
}

#[derive(Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Taylor series with compensated summation.
///
/// Fails with [`MlError::NotCertified`] when the rounding bound `≈ ε·Σ|t_k|`
/// exceeds `tol·|E|`.
pub fn ml_taylor(alpha: f64, beta: f64, z: Complex64, tol: f64) -> Result<MlValue, MlError> {
    check_params(alpha, beta, z)?;
    let (mut re, mut im) = (Neumaier::default(), Neumaier::default());
    let r = z.norm();
    let theta = z.arg();
    let mut abs_sum = 0.0;
    // Extra error from terms evaluated in log form.
    let mut log_err = 0.0;
    let mut zpow = Complex64::new(1.0, 0.0);
    let mut small_run = 0;
    let mut prev_mag = f64::INFINITY;
    for k in 0..20_000u32 {
        let arg = alpha * k as f64 + beta;
        let direct = arg <= 170.0 && zpow.norm().is_finite();
        let term = if direct {
            zpow / gamma(arg)
        } else {
            if r == 0.0 {
                break;
            }
            let lm = k as f64 * r.ln() - ln_gamma(arg);
            if lm > 700.0 {
                return Err(MlError::Overflow(z));
            }
            let mag = lm.exp();
            log_err += mag * 4.0 * f64::EPSILON * (lm.abs() + ln_gamma(arg).abs());
            Complex64::from_polar(mag, k as f64 * theta)
        };
        re.add(term.re);
        im.add(term.im);
        let mag = term.norm();
        abs_sum += mag;
        let s = Complex64::new(re.value(), im.value()).norm();
        if mag <= 0.25 * f64::EPSILON * s && mag <= prev_mag {
            small_run += 1;
            if small_run >= 3 {
                break;
            }
        } else if r == 0.0 && k > 0 {
            break;
        } else {
            small_run = 0;
        }
        prev_mag = mag;
        zpow *= z;
        if k == 19_999 {
            return Err(MlError::NotCertified { method: "taylor", z, estimate: f64::INFINITY });
        }
    }
    let value = Complex64::new(re.value(), im.value());
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(MlError::Overflow(z));
    }
    let err_abs = 4.0 * f64::EPSILON * abs_sum + log_err;
    let estimate = if value.norm() > 0.0 { err_abs / value.norm() } else { f64::INFINITY };
    if estimate > tol {
        return Err(MlError::NotCertified { method: "taylor", z, estimate });
    }
    Ok(MlValue { value, method: MlMethod::Taylor, error: estimate })
}

/// Hankel-contour representation, `0 < α ≤ 1`.
///
/// `E_{α,β}(z) = 1/(2πiα) ∫_γ exp(ζ^{1/α}) ζ^{(1-β)/α} / (ζ - z) dζ`
/// plus the residue `(1/α) z^{(1-β)/α} exp(z^{1/α})` when `z` lies to the right
/// of `γ`. The contour consists of two rays `arg ζ = ±μ`, `|ζ| ≥ ε`, joined by
/// the arc `|ζ| = ε`; `μ` and `ε` are chosen to keep the pole away from `γ`.
pub fn ml_contour(alpha: f64, beta: f64, z: Complex64, tol: f64) -> Result<MlValue, MlError> {
    check_params(alpha, beta, z)?;
    if alpha > 1.0 {
        return Err(MlError::InvalidParameter(format!("contour needs alpha <= 1, got {alpha}")));
    }
    if z == Complex64::new(0.0, 0.0) {
        return Ok(MlValue { value: Complex64::new(1.0 / gamma(beta), 0.0), method: MlMethod::Contour, error: 0.0 });
    }
    let rz = z.norm();
    let phi_z = z.arg().abs();
    let mu = {
        let (m1, m2) = (alpha * PI, 0.75 * alpha * PI);
        if (phi_z - m1).abs() >= (phi_z - m2).abs() {
            m1
        } else {
            m2
        }
    };
    let eps = if (rz - 1.0).abs() < 0.3 { 0.5 * rz } else { 1.0 };
    let inv_a = 1.0 / alpha;
    let p = (1.0 - beta) / alpha;
    let integrand = |zeta: Complex64, log_r: f64, ang: f64| -> Complex64 {
        // exp(ζ^{1/α}) ζ^{(1-β)/α} / (ζ - z) with ζ = e^{log_r + i ang}
        let w = Complex64::from_polar((inv_a * log_r).exp(), ang * inv_a);
        let pow = Complex64::from_polar((p * log_r).exp(), ang * p);
        w.exp() * pow / (zeta - z)
    };
    let cos_mu = (mu * inv_a).cos();
    debug_assert!(cos_mu < 0.0);
    let mut upper = 1.0f64;
    for _ in 0..4 {
        let extra = (p * upper.ln()).max(0.0);
        upper = ((60.0 + extra) / -cos_mu).powf(alpha);
    }
    let upper = upper.max(2.0 * rz + 2.0 * eps);
    // Right of the contour: outside the arc and between the rays.
    let inside = rz > eps && phi_z < mu;
    let residue = if inside {
        inv_a * (z.ln() * p).exp() * (z.ln() * inv_a).exp().exp()
    } else {
        Complex64::new(0.0, 0.0)
    };
    let mut breaks = vec![eps];
    if rz > eps && rz < upper {
        breaks.push(rz);
    }
    breaks.push(upper);
    let dir_up = Complex64::from_polar(1.0, mu);
    let dir_dn = Complex64::from_polar(1.0, -mu);
    let scale = 1.0 / (2.0 * PI * alpha);
    let pass = |cfg: QuadConfig| -> (Complex64, f64, bool) {
        let mut total = Complex64::new(0.0, 0.0);
        let mut err = 0.0;
        let mut converged = true;
        for w in breaks.windows(2) {
            let r = integrate_complex(
                |r| {
                    let lr = r.ln();
                    integrand(dir_up * r, lr, mu) * dir_up - integrand(dir_dn * r, lr, -mu) * dir_dn
                },
                w[0],
                w[1],
                cfg,
            );
            total += r.value;
            err += r.error;
            converged &= r.converged;
        }
        let arc = integrate_complex(
            |phi| {
                let zeta = Complex64::from_polar(eps, phi);
                integrand(zeta, eps.ln(), phi) * zeta * Complex64::i()
            },
            -mu,
            mu,
            cfg,
        );
        total += arc.value;
        err += arc.error;
        converged &= arc.converged;
        let mut value = total * Complex64::new(0.0, -scale);
        let mut err = err * scale;
        if inside {
            value += residue;
            err += residue.norm() * 8.0 * f64::EPSILON;
        }
        (value, err, converged)
    };
    // When the residue dominates, the integral only needs accuracy relative to it.
    let abs_tol = (0.05 * tol * residue.norm() / scale).max(1e-300);
    let (mut value, mut err, mut converged) = pass(QuadConfig { abs_tol, rel_tol: 0.05 * tol, max_intervals: 3000 });
    let rel = |v: Complex64, e: f64| if v.norm() > 0.0 { e / v.norm() } else { e };
    if converged && rel(value, err) > tol && value.norm() > 0.0 {
        // The pieces cancel; target the final value instead of each piece.
        let abs_tol = 0.02 * tol * value.norm() / (scale * (breaks.len() as f64));
        (value, err, converged) = pass(QuadConfig { abs_tol, rel_tol: 1e-300, max_intervals: 6000 });
    }
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(MlError::Overflow(z));
    }
    let estimate = rel(value, err);
    if !converged || estimate > tol {
        return Err(MlError::NotCertified { method: "contour", z, estimate });
    }
    Ok(MlValue { value, method: MlMethod::Contour, error: estimate })
}
