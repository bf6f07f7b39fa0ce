//! Finite equilibria of planar polynomial fields.
//!
//! Quadratic (and linear) fields are solved by elimination: a common factor
//! of `P` and `Q` flags a curve of equilibria, the cofactors are reduced by
//! it, and the Sylvester resultant in `y` gives candidate abscissae. Each
//! exact abscissa is back-substituted through `gcd(P(x0,·), Q(x0,·))`.
//! Higher degrees fall back to Newton's method from a 21×21 seed grid.

use num_traits::Zero;
use serde::Serialize;

use crate::field::PolyField2D;
use crate::poly::{bivariate_gcd, ypoly, BivariatePoly, UniPoly};
use crate::roots::{real_roots, RealValue};
use crate::scalar::Scalar;

/// Maximum residual `‖F(p)‖` accepted for a returned point.
pub const RESIDUAL_TOL: f64 = 1e-10;
/// Points closer than this are merged.
pub const DEDUP_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Equilibrium {
    pub x: RealValue,
    pub y: RealValue,
}

impl Equilibrium {
    pub fn point(&self) -> (f64, f64) {
        (self.x.approx, self.y.approx)
    }

    pub fn exact(&self) -> Option<(Scalar, Scalar)> {
        Some((self.x.exact.clone()?, self.y.exact.clone()?))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquilibriumSet {
    /// Isolated equilibria (and, when `infinite`, those of the reduced system).
    pub points: Vec<Equilibrium>,
    /// `P` and `Q` share a nonconstant factor: a whole curve of equilibria.
    pub infinite: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub common_factor: Option<BivariatePoly>,
    pub method: &'static str,
}

impl EquilibriumSet {
    pub fn contains(&self, x: f64, y: f64) -> bool {
        self.points
            .iter()
            .any(|e| (e.x.approx - x).hypot(e.y.approx - y) <= DEDUP_TOL)
    }
}

pub fn equilibria(field: &PolyField2D) -> EquilibriumSet {
    let (p, q) = (field.p(), field.q());
    if p.is_zero() || q.is_zero() {
        let other = if p.is_zero() { q } else { p };
        let infinite = !other.is_constant() || other.is_zero();
        return EquilibriumSet {
            points: Vec::new(),
            infinite,
            common_factor: (!other.is_constant()).then(|| other.clone()),
            method: "degenerate",
        };
    }
    let g = bivariate_gcd(p, q);
    let (common, rp, rq) = if g.is_constant() {
        (None, p.clone(), q.clone())
    } else {
        (
            Some(g.clone()),
            p.exact_div(&g).expect("gcd divides P"),
            q.exact_div(&g).expect("gcd divides Q"),
        )
    };
    let infinite = common.is_some();
    let (points, method) = if field.degree() <= 2 {
        (eliminate(&rp, &rq), "resultant")
    } else {
        (newton_grid(&rp, &rq), "newton-grid")
    };
    let mut pts: Vec<Equilibrium> = Vec::new();
    for e in points {
        let (fx, fy) = field.eval(e.x.approx, e.y.approx);
        let exact_zero = e
            .exact()
            .map(|(x, y)| {
                let (a, b) = field.eval_exact(&x, &y);
                a.is_zero() && b.is_zero()
            })
            .unwrap_or(false);
        if !(exact_zero || fx.hypot(fy) <= RESIDUAL_TOL) {
            continue;
        }
        if let Some(i) = pts
            .iter()
            .position(|o| (o.x.approx - e.x.approx).hypot(o.y.approx - e.y.approx) <= DEDUP_TOL)
        {
            if !pts[i].x.is_exact() && e.x.is_exact() {
                pts[i] = e;
            }
            continue;
        }
        pts.push(e);
    }
    pts.sort_by(|a, b| {
        a.x.approx
            .total_cmp(&b.x.approx)
            .then(a.y.approx.total_cmp(&b.y.approx))
    });
    EquilibriumSet {
        points: pts,
        infinite,
        common_factor: common,
        method,
    }
}

fn eliminate(p: &BivariatePoly, q: &BivariatePoly) -> Vec<Equilibrium> {
    let (pc, qc) = (p.y_coeffs(), q.y_coeffs());
    let dy_p = ypoly::degree(&pc).unwrap_or(0);
    let dy_q = ypoly::degree(&qc).unwrap_or(0);
    let xpoly = if dy_p == 0 && dy_q == 0 {
        pc[0].gcd(&qc[0])
    } else if dy_p == 0 {
        pc[0].clone()
    } else if dy_q == 0 {
        qc[0].clone()
    } else {
        ypoly::resultant(&pc, &qc)
    };
    let mut out = Vec::new();
    if xpoly.is_zero() {
        // unreachable once common factors are removed; fall back to Newton
        return newton_grid(p, q);
    }
    for x0 in real_roots(&xpoly) {
        match &x0.exact {
            Some(xe) => {
                let a = p.restrict_x(xe);
                let b = q.restrict_x(xe);
                let g = a.gcd(&b);
                if g.is_zero() {
                    continue;
                }
                for y0 in real_roots(&g) {
                    out.push(polish(p, q, x0.clone(), y0));
                }
            }
            None => {
                // inexact abscissa: common numeric roots of the restrictions
                let a = restrict_x_f64(p, x0.approx);
                let b = restrict_x_f64(q, x0.approx);
                let ys = if a.iter().all(|v| v.abs() < 1e-300) { numeric_real_roots_of(&b) } else { numeric_real_roots_of(&a) };
                for y in ys {
                    let e = polish(p, q, x0.clone(), RealValue::approx(y));
                    let (u, v) = (p.eval_f64(e.x.approx, e.y.approx), q.eval_f64(e.x.approx, e.y.approx));
                    if u.hypot(v) <= RESIDUAL_TOL {
                        out.push(e);
                    }
                }
            }
        }
    }
    out
}

fn numeric_real_roots_of(c: &[f64]) -> Vec<f64> {
    crate::roots::numeric_real_roots_f64(c)
}

fn restrict_x_f64(p: &BivariatePoly, x: f64) -> Vec<f64> {
    let mut v = vec![0.0; p.degree_y().map_or(1, |d| d as usize + 1)];
    for (&(i, j), c) in p.terms() {
        v[j as usize] += c.to_f64() * x.powi(i as i32);
    }
    v
}

/// Newton refinement of inexact coordinates; exact coordinates are kept.
fn polish(p: &BivariatePoly, q: &BivariatePoly, x: RealValue, y: RealValue) -> Equilibrium {
    if x.is_exact() && y.is_exact() {
        return Equilibrium { x, y };
    }
    let (nx, ny) = newton(p, q, x.approx, y.approx).unwrap_or((x.approx, y.approx));
    let x = if x.is_exact() { x } else { RealValue::approx(nx) };
    let y = if y.is_exact() { y } else { RealValue::approx(ny) };
    Equilibrium { x, y }
}

fn newton(p: &BivariatePoly, q: &BivariatePoly, mut x: f64, mut y: f64) -> Option<(f64, f64)> {
    let (px, py, qx, qy) = (p.deriv_x(), p.deriv_y(), q.deriv_x(), q.deriv_y());
    for _ in 0..60 {
        let (f, g) = (p.eval_f64(x, y), q.eval_f64(x, y));
        if f.hypot(g) <= 1e-15 {
            return Some((x, y));
        }
        let (a, b, c, d) = (px.eval_f64(x, y), py.eval_f64(x, y), qx.eval_f64(x, y), qy.eval_f64(x, y));
        let det = a * d - b * c;
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        let dx = (d * f - b * g) / det;
        let dy = (a * g - c * f) / det;
        x -= dx;
        y -= dy;
        if !x.is_finite() || !y.is_finite() || x.abs() > 1e8 || y.abs() > 1e8 {
            return None;
        }
        if dx.hypot(dy) <= 1e-15 * (1.0 + x.hypot(y)) {
            return Some((x, y));
        }
    }
    let (f, g) = (p.eval_f64(x, y), q.eval_f64(x, y));
    (f.hypot(g) <= RESIDUAL_TOL).then_some((x, y))
}

fn newton_grid(p: &BivariatePoly, q: &BivariatePoly) -> Vec<Equilibrium> {
    let mut out = Vec::new();
    for i in 0..21 {
        for j in 0..21 {
            let x0 = -10.0 + i as f64;
            let y0 = -10.0 + j as f64;
            if let Some((x, y)) = newton(p, q, x0, y0) {
                if p.eval_f64(x, y).hypot(q.eval_f64(x, y)) <= RESIDUAL_TOL {
                    out.push(recognize(p, q, x, y));
                }
            }
        }
    }
    out
}

/// Rational recognition of a numeric root, kept only if exactly verified.
fn recognize(p: &BivariatePoly, q: &BivariatePoly, x: f64, y: f64) -> Equilibrium {
    let rx = crate::scalar::rational_approx(x, 1 << 20).map(Scalar::rational);
    let ry = crate::scalar::rational_approx(y, 1 << 20).map(Scalar::rational);
    if let (Some(a), Some(b)) = (rx, ry) {
        if p.eval(&a, &b).is_zero() && q.eval(&a, &b).is_zero() {
            return Equilibrium {
                x: RealValue::exact(a),
                y: RealValue::exact(b),
            };
        }
    }
    Equilibrium {
        x: RealValue::approx(x),
        y: RealValue::approx(y),
    }
}

/// The univariate resultant used for quadratic elimination (exposed for tests).
pub fn elimination_polynomial(field: &PolyField2D) -> UniPoly {
    ypoly::resultant(&field.p().y_coeffs(), &field.q().y_coeffs())
}
