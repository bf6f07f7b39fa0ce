//! Fractional engine against independent oracles: a multi-precision series
//! for Mittag-Leffler values, RK4 for the classical limit, and closed forms.

mod common;

use std::sync::Arc;

use fracinv::fractional::mittag_leffler::{ml_contour, ml_taylor, MlMethod};
use fracinv::fractional::*;
use nalgebra::{Matrix2, Vector2};
use num_complex::Complex64;
use proptest::prelude::*;
use rug::{Complex, Float};

/// `E_{α,β}(z)` by the series in `prec`-bit arithmetic, stopped once terms fall
/// below 2^{-prec} of the running sum after the peak.
fn ml_oracle(alpha: f64, beta: f64, z: Complex64, prec: u32) -> Complex64 {
    let a = Float::with_val(prec, alpha);
    let b = Float::with_val(prec, beta);
    let zz = Complex::with_val(prec, (z.re, z.im));
    let mut sum = Complex::with_val(prec, 0);
    let mut pow = Complex::with_val(prec, 1);
    let mut small = 0;
    for k in 0..200_000u32 {
        let g = (Float::with_val(prec, &a * k) + &b).gamma();
        let term = Complex::with_val(prec, &pow / &g);
        let mag = Float::with_val(prec, term.abs_ref());
        sum += &term;
        let s = Float::with_val(prec, sum.abs_ref());
        if k > 10 && mag < s * Float::with_val(prec, Float::i_exp(1, -(prec as i32))) {
            small += 1;
            if small > 5 {
                break;
            }
        } else {
            small = 0;
        }
        pow *= &zz;
    }
    let (re, im) = sum.into_real_imag();
    Complex64::new(re.to_f64(), im.to_f64())
}

#[test]
fn oracle_half_order_at_minus_one() {
    // e·erfc(1) ≈ 0.4275836, from the 50-digit series
    let want = ml_oracle(0.5, 1.0, Complex64::new(-1.0, 0.0), 170);
    assert!((want.re - 0.427_583_576_155_807).abs() < 1e-15);
    let got = ml_real(0.5, 1.0, -1.0).unwrap();
    assert!((got - want.re).abs() < 1e-12 * want.re);
    // the generic paths too
    let t = ml_taylor(0.5, 1.0, Complex64::new(-1.0, 0.0), 1e-11).unwrap().value.re;
    let c = ml_contour(0.5, 1.0, Complex64::new(-1.0, 0.0), 1e-11).unwrap().value.re;
    assert!((t - want.re).abs() < 1e-12 && (c - want.re).abs() < 1e-11);
}

#[test]
fn trivial_values() {
    assert!((ml_real(1.0, 1.0, 1.0).unwrap() - std::f64::consts::E).abs() < 1e-15);
    for a in [0.3, 0.55, 1.0] {
        assert_eq!(ml_real(a, 1.0, 0.0).unwrap(), 1.0);
    }
}

#[test]
fn ml_against_multiprecision_on_the_documented_domain() {
    let mut rng = common::rng(0x4d4c);
    use rand::Rng;
    for _ in 0..40 {
        let alpha = rng.random_range(0.3..=1.0);
        let beta = [1.0, alpha, 0.5, 1.3][rng.random_range(0..4)];
        // the oracle needs ~|z|^{1/α} extra bits, so small orders get smaller radii
        let rmax = if alpha < 0.5 { 8.0 } else if alpha < 0.7 { 20.0 } else { 50.0 };
        let r: f64 = rng.random_range(0.0..rmax);
        let th = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
        let z = Complex64::from_polar(r, th);
        // enough bits to absorb the cancellation in Σ|t_k| ≈ E_α(|z|)
        let growth = r.powf(1.0 / alpha) / std::f64::consts::LN_2;
        let prec = 170 + growth.ceil() as u32;
        let want = ml_oracle(alpha, beta, z, prec);
        match ml(alpha, beta, z) {
            Ok(got) => assert!((got - want).norm() <= 1e-10 * want.norm(), "alpha={alpha} beta={beta} z={z}: {got} vs {want}"),
            Err(MlError::Overflow(_)) => assert!(!want.norm().is_finite() || want.norm() > 1e300),
            Err(e) => panic!("alpha={alpha} beta={beta} z={z}: {e}"),
        }
    }
}

#[test]
fn overlap_annulus_where_the_series_certifies() {
    // Wherever the series certifies itself the two strategies must agree.
    for alpha in [0.3, 0.5, 0.7, 0.9] {
        for r in [4.0, 5.0, 6.0] {
            for k in 0..24 {
                let z = Complex64::from_polar(r, -std::f64::consts::PI + (k as f64 + 0.5) * std::f64::consts::PI / 12.0);
                let c = ml_contour(alpha, 1.0, z, 1e-11).unwrap().value;
                if let Ok(t) = ml_taylor(alpha, 1.0, z, 1e-11) {
                    assert!((t.value - c).norm() <= 1e-9 * c.norm(), "alpha={alpha} z={z}");
                }
            }
        }
    }
}

#[test]
fn methods_reported() {
    let v = mittag_leffler::ml_detailed(0.7, 1.0, Complex64::new(0.5, 0.5), 1e-11).unwrap();
    assert_eq!(v.method, MlMethod::Taylor);
    let v = mittag_leffler::ml_detailed(0.7, 1.0, Complex64::new(-30.0, 1.0), 1e-11).unwrap();
    assert_eq!(v.method, MlMethod::Contour);
}

#[test]
fn matrix_complex_pair_matches_component_formula() {
    // X(t) = (Re E + Im E, −Im E + Re E) with E = E_0.7((1+3i)t^0.7), X0 = (1, 1)
    let a = Matrix2::new(1.0, 3.0, -3.0, 1.0);
    for t in [0.1f64, 0.5, 1.0, 1.3] {
        let e = ml(0.7, 1.0, Complex64::new(1.0, 3.0) * t.powf(0.7)).unwrap();
        let x = ml_matrix(0.7, &a, t).unwrap() * Vector2::new(1.0, 1.0);
        let want = Vector2::new(e.re + e.im, -e.im + e.re);
        assert!((x - want).norm() < 1e-12 * want.norm().max(1.0), "t={t}");
    }
}

#[test]
fn matrix_semigroup_only_at_order_one() {
    let a = Matrix2::new(1.0, 3.0, -3.0, 1.0);
    let prod = ml_matrix(1.0, &a, 0.4).unwrap() * ml_matrix(1.0, &a, 0.3).unwrap();
    assert!((prod - ml_matrix(1.0, &a, 0.7).unwrap()).abs().max() < 1e-13);
    let prod = ml_matrix(0.7, &a, 0.4).unwrap() * ml_matrix(0.7, &a, 0.3).unwrap();
    assert!((prod - ml_matrix(0.7, &a, 0.7).unwrap()).abs().max() > 1e-2);
}

#[test]
fn simulate_linear_matches_closed_form() {
    let a = Matrix2::new(1.0, 3.0, -3.0, 1.0);
    let sys = FractionalSystem::matrix(0.7, a, [1.0, 1.0]).unwrap();
    let err = |k: i32| {
        let tr = fam_solve(&sys, 2f64.powi(-k), 1.0).unwrap();
        tr.t.iter()
            .zip(&tr.states)
            .map(|(t, s)| {
                let x = ml_matrix(0.7, &a, *t).unwrap() * Vector2::new(1.0, 1.0);
                (x - Vector2::new(s[0], s[1])).norm() / (1.0 + x.norm())
            })
            .fold(0.0, f64::max)
    };
    let (e8, e9) = (err(8), err(9));
    assert!(e9 < 1e-3, "{e9}");
    assert!(e8 / e9 > 2.5, "{e8} {e9}");
}

fn x0_for(name: &str) -> [f64; 2] {
    match name {
        "lines_shifted_equilibrium" => [1.1, 1.2],
        _ => [0.1, 0.05],
    }
}

#[test]
fn classical_limit_on_every_corpus_system() {
    for (name, field) in fracinv::corpus::all() {
        let sys = FractionalSystem::field(1.0, field, x0_for(name)).unwrap();
        let rk = rk4_solve(&sys, 2f64.powi(-10), 2.0).unwrap();
        if rk.blow_up.is_some() {
            continue;
        }
        let fam = fam_solve(&sys, 2f64.powi(-13), 2.0).unwrap();
        let dev = (0..rk.len())
            .map(|i| {
                let (a, b) = (&rk.states[i], &fam.states[8 * i]);
                ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt() / (1.0 + a[0].hypot(a[1]))
            })
            .fold(0.0, f64::max);
        assert!(dev < 1e-6, "{name}: {dev}");
    }
}

#[test]
fn equilibrium_is_fixed_on_every_corpus_system() {
    for (name, field) in fracinv::corpus::all() {
        for e in fracinv::equilibria::equilibria(&field).points.iter().filter(|e| e.exact().is_some()) {
            let (x, y) = e.point();
            let (p, q) = field.eval(x, y);
            if p != 0.0 || q != 0.0 {
                continue; // not representable exactly in binary
            }
            let sys = FractionalSystem::field(0.6, field.clone(), [x, y]).unwrap();
            let tr = fam_solve(&sys, 0.01, 1.0).unwrap();
            assert!(tr.states.iter().all(|s| s[0] == x && s[1] == y), "{name} at ({x}, {y})");
        }
    }
}

fn final_time_slope(alpha: f64) -> f64 {
    let sys = FractionalSystem::scalar_linear(alpha, 1.0, Arc::new(|_| 0.0), 1.0).unwrap();
    let ends: Vec<f64> = (5..=9).map(|k| fam_solve(&sys, 2f64.powi(-k), 1.0).unwrap().last()[0]).collect();
    let diffs: Vec<f64> = ends.windows(2).map(|w| (w[0] - w[1]).abs().log2()).collect();
    common::lsq_slope(&diffs)
}

#[test]
fn convergence_order_at_the_final_time() {
    for alpha in [0.5, 0.75, 0.9] {
        let slope = final_time_slope(alpha);
        let target = (1.0 + alpha).min(2.0) - 0.15;
        assert!(slope >= target, "alpha={alpha}: slope {slope} < {target}");
    }
}

#[test]
fn exact_counterexample_solution_matches_fam() {
    for (c1, c2) in [(0.2, 0.3), (-0.1, 0.5), (0.05, -0.4)] {
        let sys = FractionalSystem::field(0.5, fracinv::corpus::load("stable_manifold_counterexample").unwrap(), [c1, c2]).unwrap();
        let fam = fam_solve(&sys, 2f64.powi(-10), 2.0).unwrap();
        let idx: Vec<usize> = (0..=20).map(|i| i * 102).collect();
        let grid: Vec<f64> = idx.iter().map(|&i| fam.t[i]).collect();
        let exact = cong_exact_solution(c1, c2, &grid).unwrap();
        for (k, &i) in idx.iter().enumerate() {
            let d = ((exact.states[k][0] - fam.states[i][0]).powi(2) + (exact.states[k][1] - fam.states[i][1]).powi(2)).sqrt();
            assert!(d < 1e-3, "({c1},{c2}) t={}: {d}", grid[k]);
        }
    }
}

#[test]
fn y_component_positive_and_decreasing() {
    let grid: Vec<f64> = (0..=100).map(|i| i as f64 * 0.2).collect();
    let tr = cong_exact_solution(0.0, 1e-10, &grid).unwrap();
    let ys = tr.component(1);
    assert!(ys.iter().all(|&y| y > 0.0));
    assert!(ys.windows(2).all(|w| w[1] < w[0]));
    let y20 = ml_oracle(0.5, 1.0, Complex64::new(-20f64.sqrt(), 0.0), 200).re * 1e-10;
    assert!((ys[100] - y20).abs() < 1e-12 * y20);
}

#[test]
fn scalar_linear_matches_fam_with_forcing() {
    let g = |t: f64| (2.0 * t).cos();
    let grid: Vec<f64> = (0..=8).map(|i| i as f64 * 0.125).collect();
    let exact = solve_scalar_linear(0.6, 0.8, &g, 0.5, &grid).unwrap();
    let sys = FractionalSystem::scalar_linear(0.6, 0.8, Arc::new(g), 0.5).unwrap();
    let fam = fam_solve(&sys, 2f64.powi(-12), 1.0).unwrap();
    for (k, s) in exact.states.iter().enumerate() {
        assert!((s[0] - fam.states[k * 512][0]).abs() < 2e-4, "t={}", grid[k]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn diagonal_matrix_is_componentwise(alpha in 0.3f64..=1.0, d0 in -4.0f64..4.0, d1 in -4.0f64..4.0, t in 0.0f64..2.0) {
        let m = ml_matrix(alpha, &Matrix2::new(d0, 0.0, 0.0, d1), t).unwrap();
        let s = t.powf(alpha);
        let e0 = if t == 0.0 { 1.0 } else { ml_real(alpha, 1.0, d0 * s).unwrap() };
        let e1 = if t == 0.0 { 1.0 } else { ml_real(alpha, 1.0, d1 * s).unwrap() };
        prop_assert!((m[(0, 0)] - e0).abs() <= 4.0 * f64::EPSILON * e0.abs());
        prop_assert!((m[(1, 1)] - e1).abs() <= 4.0 * f64::EPSILON * e1.abs());
        prop_assert_eq!(m[(0, 1)], 0.0);
        prop_assert_eq!(m[(1, 0)], 0.0);
    }

    #[test]
    fn matrix_eigenvector_evolves_by_scalar(alpha in 0.3f64..=1.0, l1 in -3.0f64..3.0, l2 in -3.0f64..3.0, s in -2.0f64..2.0, t in 0.05f64..1.5) {
        // A = P diag(l1, l2) P^{-1} with P = [[1, s], [0, 1]]
        prop_assume!((l1 - l2).abs() > 1e-3);
        let p = Matrix2::new(1.0, s, 0.0, 1.0);
        let a = p * Matrix2::new(l1, 0.0, 0.0, l2) * p.try_inverse().unwrap();
        let v = Vector2::new(s, 1.0);
        let m = ml_matrix(alpha, &a, t).unwrap();
        let want = ml_real(alpha, 1.0, l2 * t.powf(alpha)).unwrap();
        // cancellation in m·v is bounded by the size of m itself
        prop_assert!((m * v - v * want).norm() <= 1e-9 * (1.0 + m.abs().max()) * v.norm());
    }

    #[test]
    fn repeated_eigenvalue_is_continuous(alpha in 0.4f64..=1.0, l in -2.0f64..2.0, t in 0.1f64..1.5) {
        let exact = ml_matrix(alpha, &Matrix2::new(l, 1.0, 0.0, l), t).unwrap();
        // a 1e-12 perturbation crosses from the Jordan formula to the Sylvester one
        let near = ml_matrix(alpha, &Matrix2::new(l, 1.0, 1e-12, l), t).unwrap();
        prop_assert!((exact - near).abs().max() < 1e-8 * exact.abs().max());
    }

    #[test]
    fn caputo_power_scaling(alpha in 0.1f64..=1.0, p in 0.2f64..4.0, t in 0.1f64..3.0, lam in 0.5f64..2.0) {
        // D^α of (λt)^p at t equals λ^α · (D^α u^p)(λt)
        let lhs = lam.powf(p) * caputo_power(alpha, p, t).unwrap();
        let rhs = lam.powf(alpha) * caputo_power(alpha, p, lam * t).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs());
    }
}
