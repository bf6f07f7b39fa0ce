//! Matrix Mittag-Leffler function `E_α(A t^α)` for real 2×2 `A`.

use nalgebra::Matrix2;
use num_complex::Complex64;

use super::mittag_leffler::{ml, MlError};

/// Relative eigenvalue gap below which the repeated-eigenvalue formula is used.
const MERGE_GAP: f64 = 1e-7;

/// `E_α(A t^α)`, the fundamental matrix of `D^α X = AX`.
///
/// Uses the 2×2 spectral formulas:
/// - diagonal `A`: entrywise scalar functions;
/// - distinct real eigenvalues: Sylvester's interpolation formula;
/// - complex pair `u ± iv`: `Re E·I + (Im E / v)(A − uI)` with `E = E_α((u+iv)t^α)`;
/// - (nearly) repeated eigenvalue `λ`: `E_α(μ)I + E_α'(μ)(M − μI)` with `M = At^α`,
///   `μ = λt^α` and `E_α' = E_{α,α}/α`, exact because `(M − μI)² = 0`.
pub fn ml_matrix(alpha: f64, a: &Matrix2<f64>, t: f64) -> Result<Matrix2<f64>, MlError> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(MlError::InvalidParameter(format!("time must be non-negative, got {t}")));
    }
    if t == 0.0 {
        return Ok(Matrix2::identity());
    }
    let s = t.powf(alpha);
    let e = |lam: Complex64| ml(alpha, 1.0, lam * s);
    if a[(0, 1)] == 0.0 && a[(1, 0)] == 0.0 {
        let d0 = e(Complex64::new(a[(0, 0)], 0.0))?.re;
        let d1 = e(Complex64::new(a[(1, 1)], 0.0))?.re;
        return Ok(Matrix2::new(d0, 0.0, 0.0, d1));
    }
    let half_tr = 0.5 * a.trace();
    let disc = half_tr * half_tr - a.determinant();
    let scale = a.abs().max().max(f64::MIN_POSITIVE);
    let gap = disc.abs().sqrt();
    let id = Matrix2::identity();
    if gap * s <= MERGE_GAP * scale.max(1.0) * s.max(1.0) {
        let mu = Complex64::new(half_tr * s, 0.0);
        let f = ml(alpha, 1.0, mu)?.re;
        let df = ml(alpha, alpha, mu)?.re / alpha;
        return Ok(id * f + (a * s - id * mu.re) * df);
    }
    if disc > 0.0 {
        // Stable root ordering avoids cancellation in the smaller eigenvalue.
        let l1 = if half_tr >= 0.0 { half_tr + gap } else { half_tr - gap };
        let l2 = a.determinant() / l1;
        let f1 = e(Complex64::new(l1, 0.0))?.re;
        let f2 = e(Complex64::new(l2, 0.0))?.re;
        Ok(((a - id * l2) * f1 - (a - id * l1) * f2) / (l1 - l2))
    } else {
        let (u, v) = (half_tr, gap);
        let f = e(Complex64::new(u, v))?;
        Ok(id * f.re + (a - id * u) * (f.im / v))
    }
}
