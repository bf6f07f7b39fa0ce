//! Classical fourth-order Runge–Kutta, the α = 1 reference integrator.

use super::system::{norm, uniform_grid, FractionalSystem, Method, Trajectory};
use super::FractionalError;
use super::fam::BLOW_UP_NORM;

pub fn rk4_solve(system: &FractionalSystem, h: f64, horizon: f64) -> Result<Trajectory, FractionalError> {
    if system.alpha != 1.0 {
        return Err(FractionalError::InvalidParameter(format!(
            "the classical integrator needs alpha = 1, got {}",
            system.alpha
        )));
    }
    let grid = uniform_grid(h, horizon)?;
    let d = system.dim();
    let mut states = vec![system.x0.clone()];
    let mut blow_up = None;
    let (mut k1, mut k2, mut k3, mut k4) = (vec![0.0; d], vec![0.0; d], vec![0.0; d], vec![0.0; d]);
    let mut tmp = vec![0.0; d];
    for w in grid.windows(2) {
        let (t, step) = (w[0], w[1] - w[0]);
        let x = states.last().unwrap().clone();
        system.eval(t, &x, &mut k1);
        for i in 0..d {
            tmp[i] = x[i] + 0.5 * step * k1[i];
        }
        system.eval(t + 0.5 * step, &tmp, &mut k2);
        for i in 0..d {
            tmp[i] = x[i] + 0.5 * step * k2[i];
        }
        system.eval(t + 0.5 * step, &tmp, &mut k3);
        for i in 0..d {
            tmp[i] = x[i] + step * k3[i];
        }
        system.eval(t + step, &tmp, &mut k4);
        let next: Vec<f64> = (0..d).map(|i| x[i] + step / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])).collect();
        if !(norm(&next) <= BLOW_UP_NORM) {
            blow_up = Some(w[1]);
            break;
        }
        states.push(next);
    }
    let t = grid[..states.len()].to_vec();
    Ok(Trajectory { t, states, method: Method::Rk4, h, alpha: 1.0, blow_up, labels: system.labels.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::Matrix2;

    #[test]
    fn rotation_preserves_radius() {
        let sys = FractionalSystem::matrix(1.0, Matrix2::new(0.0, 1.0, -1.0, 0.0), [1.0, 0.0]).unwrap();
        let tr = rk4_solve(&sys, 0.01, 10.0).unwrap();
        let last = tr.last();
        assert!((last[0] - 10f64.cos()).abs() < 1e-8);
        assert!((norm(last) - 1.0).abs() < 1e-8);
    }

    #[test]
    fn refuses_fractional_order() {
        let sys = FractionalSystem::matrix(0.5, Matrix2::identity(), [1.0, 0.0]).unwrap();
        assert!(rk4_solve(&sys, 0.1, 1.0).is_err());
    }
}
