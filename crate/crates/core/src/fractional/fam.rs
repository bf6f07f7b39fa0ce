//! Fractional Adams–Bashforth–Moulton predictor–corrector on a uniform grid.
//!
//! Product-rectangle predictor, product-trapezoid corrector, full-memory
//! convolution (`O(N²)` work).

use super::gamma::gamma;
use super::system::{norm, uniform_grid, FractionalSystem, Method, Trajectory};
use super::FractionalError;

/// States with norm above this end the run.
pub const BLOW_UP_NORM: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamConfig {
    /// Corrector iterations per step (1 = PECE).
    pub correctors: usize,
}

impl Default for FamConfig {
    fn default() -> Self {
        Self { correctors: 1 }
    }
}

/// Solves `system` on `[0, T]` with step `h` (PECE).
pub fn fam_solve(system: &FractionalSystem, h: f64, horizon: f64) -> Result<Trajectory, FractionalError> {
    fam_solve_with(system, h, horizon, FamConfig::default())
}

pub fn fam_solve_with(
    system: &FractionalSystem,
    h: f64,
    horizon: f64,
    cfg: FamConfig,
) -> Result<Trajectory, FractionalError> {
    let grid = uniform_grid(h, horizon)?;
    if cfg.correctors == 0 {
        return Err(FractionalError::InvalidParameter("at least one corrector iteration is required".into()));
    }
    let a = system.alpha;
    let d = system.dim();
    let n_steps = grid.len() - 1;
    // b_k = (k+1)^α - k^α,  c_k = (k+2)^{α+1} + k^{α+1} - 2(k+1)^{α+1}
    let b: Vec<f64> = (0..=n_steps).map(|k| ((k + 1) as f64).powf(a) - (k as f64).powf(a)).collect();
    let c: Vec<f64> = (0..=n_steps)
        .map(|k| {
            let k = k as f64;
            (k + 2.0).powf(a + 1.0) + k.powf(a + 1.0) - 2.0 * (k + 1.0).powf(a + 1.0)
        })
        .collect();
    let pred_scale = h.powf(a) / gamma(a + 1.0);
    let corr_scale = h.powf(a) / gamma(a + 2.0);

    let x0 = system.x0.clone();
    let mut states = vec![x0.clone()];
    // right-hand side history, flattened row-major: fs[j*d..(j+1)*d] = f(t_j, x_j)
    let mut fs: Vec<f64> = vec![0.0; d];
    fs.reserve(n_steps * d);
    system.eval(0.0, &x0, &mut fs[..d]);
    let mut blow_up = None;
    let mut pred = vec![0.0; d];
    let mut corr_hist = vec![0.0; d];
    let mut fp = vec![0.0; d];
    for n in 0..n_steps {
        let t_next = grid[n + 1];
        pred.copy_from_slice(&x0);
        corr_hist.copy_from_slice(&x0);
        let nf = n as f64;
        let a0 = nf.powf(a + 1.0) - (nf - a) * (nf + 1.0).powf(a);
        for (j, fj) in fs.chunks_exact(d).enumerate() {
            let bw = pred_scale * b[n - j];
            let aw = corr_scale * if j == 0 { a0 } else { c[n - j] };
            for i in 0..d {
                pred[i] += bw * fj[i];
                corr_hist[i] += aw * fj[i];
            }
        }
        let mut x = pred.clone();
        for _ in 0..cfg.correctors {
            system.eval(t_next, &x, &mut fp);
            for i in 0..d {
                x[i] = corr_hist[i] + corr_scale * fp[i];
            }
        }
        if !(norm(&x) <= BLOW_UP_NORM) {
            blow_up = Some(t_next);
            break;
        }
        let start = fs.len();
        fs.resize(start + d, 0.0);
        system.eval(t_next, &x, &mut fs[start..]);
        states.push(x);
    }
    let t = grid[..states.len()].to_vec();
    Ok(Trajectory { t, states, method: Method::Fam, h, alpha: a, blow_up, labels: system.labels.clone() })
}
