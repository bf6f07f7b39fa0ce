//! Properties of the detectors over random rational quadratic fields.

mod common;

use std::collections::BTreeSet;

use common::*;
use fracinv::corpus;
use fracinv::detect::{analyze, detect_lines_origin, detect_parabola_rotated, detect_parabola_y, recheck, CurveKind};
use fracinv::equilibria::{equilibria, RESIDUAL_TOL};
use fracinv::field::{DarbouxOutcome, PolyField2D};
use fracinv::graph::{lie_derivative_on_graph, GraphCurve, GraphDirection};
use fracinv::poly::{BivariatePoly, UniPoly};
use fracinv::scalar::Scalar;
use rand::Rng;

fn in_grid(m: &Scalar) -> bool {
    m.as_rational().is_some_and(|r| {
        let (n, d) = (r.numer().clone(), r.denom().clone());
        n.magnitude() <= &12u32.into() && d <= 12.into()
    })
}

#[test]
fn soundness_on_random_fields() {
    let mut r = rng(11);
    let mut emitted = 0;
    for _ in 0..100 {
        let f = random_field(&mut r);
        let a = analyze(&f);
        for c in a.candidates() {
            emitted += 1;
            assert!(recheck(&f, c), "{}: {}", f.describe(), c.describe());
        }
        assert!(a.artes.skipped || a.artes.violations.is_empty(), "{:?}", a.artes.violations);
    }
    assert!(emitted > 50);
}

#[test]
fn origin_lines_match_brute_force_scan() {
    let grid = slope_grid();
    let mut r = rng(7);
    for _ in 0..100 {
        let f = random_field(&mut r);
        let brute: BTreeSet<Scalar> = grid.iter().filter(|m| line_is_invariant(&f, m)).cloned().collect();
        let rep = detect_lines_origin(&f).unwrap();
        if rep.has_family() {
            assert_eq!(brute.len(), grid.len());
            continue;
        }
        let found: BTreeSet<Scalar> = rep
            .candidates
            .iter()
            .filter_map(|c| match &c.kind {
                CurveKind::LineThroughOrigin { m: Some(m) } => m.exact.clone(),
                _ => None,
            })
            .filter(in_grid)
            .collect();
        assert_eq!(found, brute, "{}", f.describe());
    }
}

#[test]
fn time_rescaling_leaves_candidates_unchanged() {
    let mut r = rng(3);
    let mut fields: Vec<PolyField2D> = corpus::all().into_iter().map(|(_, f)| f).collect();
    fields.extend((0..30).map(|_| random_field(&mut r)));
    for f in fields {
        let c = Scalar::frac(r.random_range(1..=5) * if r.random_bool(0.5) { -1 } else { 1 }, r.random_range(1..=4));
        let g = f.scale(&c);
        // compare curves, not their scaling: level sets of H and c·H coincide
        let key = |c: &fracinv::detect::Candidate| match c.implicit() {
            Some(g) => {
                let (_, lead) = g.leading().unwrap();
                g.scale(&lead.inv()).to_string()
            }
            None => c.describe(),
        };
        let d = |f: &PolyField2D| -> BTreeSet<String> { analyze(f).candidates().map(key).collect() };
        assert_eq!(d(&f), d(&g), "{}", f.describe());
    }
}

fn normalized(g: &BivariatePoly) -> Vec<f64> {
    let mons = [(2, 0), (1, 1), (0, 2), (1, 0), (0, 1)];
    let v: Vec<f64> = mons.iter().map(|&(i, j)| g.coeff(i, j).to_f64()).collect();
    let k = v.iter().fold(0f64, |a, x| a.max(x.abs()));
    let s = if v.iter().find(|x| **x != 0.0).copied().unwrap_or(1.0) < 0.0 { -k } else { k };
    v.iter().map(|x| x / s).collect()
}

/// `g(x, y)` expressed in rotated coordinates `X = c·x + s·y`, `Y = −s·x + c·y`.
fn rotate_curve(g: &BivariatePoly, c: &Scalar, s: &Scalar) -> BivariatePoly {
    let xs = BivariatePoly::from_terms([((1, 0), c.clone()), ((0, 1), -s)]);
    let ys = BivariatePoly::from_terms([((1, 0), s.clone()), ((0, 1), c.clone())]);
    g.compose(&xs, &ys)
}

fn check_rotation(f: &PolyField2D, c: &Scalar, s: &Scalar) {
    let base = detect_parabola_y(f).unwrap();
    let g = base.candidates[0].implicit().unwrap();
    let want = normalized(&rotate_curve(&g, c, s));
    let rot = detect_parabola_rotated(&f.similarity(c, s)).unwrap();
    let hit = rot.candidates.iter().any(|cand| {
        let got = normalized(&cand.implicit().unwrap());
        got.iter().zip(&want).all(|(a, b)| (a - b).abs() <= 1e-9)
    });
    assert!(hit, "want {want:?}, got {:?} / {:?}", rot.candidates.iter().map(|c| c.describe()).collect::<Vec<_>>(), rot.diagnostics);
}

#[test]
fn rotated_detection_is_equivariant() {
    let f = corpus::load("parabola_y_linear_clause").unwrap();
    // 30 degrees
    check_rotation(&f, &(&Scalar::sqrt_of(3) * &Scalar::frac(1, 2)), &Scalar::frac(1, 2));
    // rational rotations
    for (c, s) in [(3, 4), (4, 3), (-3, 4), (5, 12)] {
        let n = if c == 5 { 13 } else { 5 };
        check_rotation(&f, &Scalar::frac(c, n), &Scalar::frac(s, n));
    }
    for name in ["parabola_y_constant_clause", "parabola_y_compatible"] {
        check_rotation(&corpus::load(name).unwrap(), &Scalar::frac(3, 5), &Scalar::frac(4, 5));
    }
}

#[test]
fn graph_and_cofactor_verifiers_agree() {
    let mut r = rng(5);
    let (mut inv, mut non) = (0, 0);
    for _ in 0..100 {
        let h = UniPoly::new(vec![small(&mut r, 2), small(&mut r, 2), small(&mut r, 2)]);
        let g = &BivariatePoly::y() - &BivariatePoly::from_terms((0..3).map(|k| ((k, 0), h.coeff(k as usize))));
        let p = random_quadratic(&mut r, 2);
        let q = if r.random_bool(0.5) {
            // plant the graph: Q = h'(x)·P + (y − h(x))·L
            let dh = BivariatePoly::from_terms((0..2).map(|k| ((k, 0), h.derivative().coeff(k as usize))));
            let l = BivariatePoly::from_terms([((1, 0), small(&mut r, 2)), ((0, 1), small(&mut r, 2))]);
            &(&dh * &p) + &(&g * &l)
        } else {
            random_quadratic(&mut r, 2)
        };
        let f = PolyField2D::from_polys(p, q).unwrap();
        let graph = lie_derivative_on_graph(&f, &GraphCurve::Poly { h }, GraphDirection::YOfX).unwrap().is_zero();
        let cof = matches!(f.darboux_check(&g), Ok(DarbouxOutcome::Invariant { .. }));
        assert_eq!(graph, cof);
        if graph { inv += 1 } else { non += 1 }
    }
    assert!(inv > 20 && non > 20);
}

#[test]
fn hamiltonian_round_trip() {
    let mut r = rng(9);
    for _ in 0..50 {
        let mut h = BivariatePoly::zero();
        for i in 0..=3u32 {
            for j in 0..=(3 - i) {
                if i + j > 0 {
                    h.add_term((i, j), small(&mut r, 3));
                }
            }
        }
        let p = h.deriv_y();
        let q = -&h.deriv_x();
        let f = PolyField2D::from_polys(p.clone(), q.clone()).unwrap();
        assert!(f.is_hamiltonian());
        let got = f.hamiltonian().unwrap().h;
        assert_eq!(got.deriv_y(), p);
        assert_eq!(-&got.deriv_x(), q);
        assert!(got.coeff(0, 0).is_rational() && got.coeff(0, 0) == Scalar::from(0));
    }
}

#[test]
fn equilibria_residuals_and_count() {
    let mut r = rng(13);
    for _ in 0..100 {
        let mut f = random_field(&mut r);
        if r.random_bool(0.5) {
            f = f.translate(&small(&mut r, 2), &small(&mut r, 2));
        }
        let e = equilibria(&f);
        for pt in &e.points {
            let (u, v) = f.eval(pt.x.approx, pt.y.approx);
            assert!(u.hypot(v) <= RESIDUAL_TOL);
        }
        if !e.infinite {
            assert!(e.points.len() <= 4);
        }
    }
}
