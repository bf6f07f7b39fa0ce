//! Invariance experiments for fractional flows.
//!
//! Every audit returns an [`AuditResult`] whose verdict is a mechanical
//! comparison of recorded metrics against recorded thresholds. Thresholds are
//! multiples of a solver tolerance estimated by step halving.

use std::collections::BTreeMap;

use nalgebra::{Matrix2, Vector2};
use serde::Serialize;
use thiserror::Error;

use crate::detect::{Candidate, CurveKind};
use crate::fractional::gamma::{binom, rgamma};
use crate::fractional::mittag_leffler::ml_real;
use crate::fractional::system::{FractionalSystem, Rhs, Trajectory};
use crate::fractional::{
    caputo::{caputo_power, rl_integral_power},
    cong_exact_solution, fam_solve, ml_matrix, rk4_solve, stable_manifold_coefficient, FractionalError,
};
use crate::poly::BivariatePoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    InvariantWithinTol,
    NonInvariant,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::InvariantWithinTol => "invariant-within-tol",
            Verdict::NonInvariant => "non-invariant",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub system: String,
    pub alpha: f64,
    pub h: f64,
    #[serde(rename = "T")]
    pub horizon: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_star: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditResult {
    pub experiment: String,
    pub metrics: BTreeMap<String, f64>,
    pub thresholds: BTreeMap<String, f64>,
    pub verdict: Verdict,
    pub provenance: Provenance,
    /// Per-node series such as residuals, sampled on `series_t`.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub series: BTreeMap<String, Vec<f64>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub series_t: Vec<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    /// The classical (α = 1) control run, when one applies.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub control: Option<Box<AuditResult>>,
    /// Trajectories behind the metrics, for CSV dumps.
    #[serde(skip)]
    pub trajectories: Vec<(String, Trajectory)>,
}

impl AuditResult {
    fn new(experiment: &str, provenance: Provenance) -> Self {
        Self {
            experiment: experiment.into(),
            metrics: BTreeMap::new(),
            thresholds: BTreeMap::new(),
            verdict: Verdict::Inconclusive,
            provenance,
            series: BTreeMap::new(),
            series_t: Vec::new(),
            notes: Vec::new(),
            control: None,
            trajectories: Vec::new(),
        }
    }

    pub fn metric(&self, name: &str) -> f64 {
        self.metrics[name]
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AuditError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("trajectory blew up at t={0}")]
    BlowUp(f64),
    #[error(transparent)]
    Fractional(#[from] FractionalError),
}

/// FAM for `α < 1`, RK4 for `α = 1`.
pub fn solve(system: &FractionalSystem, h: f64, horizon: f64) -> Result<Trajectory, AuditError> {
    let tr = if system.alpha == 1.0 { rk4_solve(system, h, horizon)? } else { fam_solve(system, h, horizon)? };
    match tr.blow_up {
        Some(t) => Err(AuditError::BlowUp(t)),
        None => Ok(tr),
    }
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

fn norm(a: &[f64]) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Step-halving estimate `max_n ‖X_h(t_n) − X_{h/2}(t_n)‖ / (1 + ‖X_{h/2}(t_n)‖)`
/// over the coarse grid, floored at a few ulps.
pub fn solver_tolerance(system: &FractionalSystem, h: f64, horizon: f64) -> Result<f64, AuditError> {
    let coarse = solve(system, h, horizon)?;
    let fine = solve(system, h / 2.0, horizon)?;
    let est = coarse
        .states
        .iter()
        .enumerate()
        .map(|(i, s)| dist(s, &fine.states[2 * i]) / (1.0 + norm(&fine.states[2 * i])))
        .fold(0.0, f64::max);
    Ok(est.max(16.0 * f64::EPSILON))
}

fn describe_system(system: &FractionalSystem) -> String {
    format!("{:?}", system.rhs)
}

/// Restarts the solver from `Φ(t*)` and measures how far the restarted path
/// departs from the continuation `Φ(t* + s)`, `s ∈ [0, T]`.
///
/// `t*` is rounded to the nearest grid node. For matrix systems the same
/// comparison is also made with the exact flow `E_α(At^α)`.
pub fn restart_divergence(system: &FractionalSystem, t_star: f64, horizon: f64, h: f64) -> Result<AuditResult, AuditError> {
    if !(t_star > 0.0) {
        return Err(AuditError::Precondition(format!("t* must be positive, got {t_star}")));
    }
    if !(horizon > 0.0) {
        return Err(AuditError::Precondition(format!("T must be positive, got {horizon}")));
    }
    let k = (t_star / h).round().max(1.0) as usize;
    let t_eff = k as f64 * h;
    let steps = (horizon / h).round() as usize;
    let original = solve(system, h, t_eff + steps as f64 * h)?;
    let y0 = original.states[k].clone();
    let restarted = solve(&system.with_x0(&y0), h, steps as f64 * h)?;
    let mut series = Vec::with_capacity(restarted.len());
    for (i, r) in restarted.states.iter().enumerate() {
        let o = &original.states[k + i];
        series.push(dist(r, o) / (1.0 + norm(o)));
    }
    let metric = series.iter().cloned().fold(0.0, f64::max);
    // Distance of the restarted path from the line spanned by X0.
    let x0 = &system.x0;
    let span_dist = if system.dim() == 2 && norm(x0) > 0.0 {
        let n = norm(x0);
        restarted.states.iter().map(|s| (x0[0] * s[1] - x0[1] * s[0]).abs() / n).fold(0.0, f64::max)
    } else {
        f64::NAN
    };
    let tol = solver_tolerance(system, h, t_eff + horizon)?;
    let mut res = AuditResult::new(
        "restart-divergence",
        Provenance { system: describe_system(system), alpha: system.alpha, h, horizon, t_star: Some(t_eff) },
    );
    res.metrics.insert("divergence".into(), metric);
    res.metrics.insert("solver_tolerance".into(), tol);
    res.metrics.insert("restart_distance_from_span_x0".into(), span_dist);
    res.thresholds.insert("non_invariant_above".into(), 100.0 * tol);
    if let Rhs::Matrix(a) = &system.rhs {
        let exact = exact_restart_divergence(system.alpha, a, x0, t_eff, &restarted.t)?;
        res.metrics.insert("exact_flow_divergence".into(), exact);
    }
    res.verdict = if metric > 100.0 * tol { Verdict::NonInvariant } else { Verdict::InvariantWithinTol };
    if (t_eff - t_star).abs() > 0.0 {
        res.notes.push(format!("t* rounded to the grid node {t_eff}"));
    }
    res.series.insert("divergence".into(), series);
    res.series_t = restarted.t.clone();
    res.trajectories.push(("original".into(), original));
    res.trajectories.push(("restarted".into(), restarted));
    if system.alpha < 1.0 {
        res.control = Some(Box::new(restart_divergence(&system.with_alpha(1.0)?, t_star, horizon, h)?));
    }
    Ok(res)
}

/// `sup_s ‖E(As^α)E(At*^α)X0 − E(A(t*+s)^α)X0‖ / (1 + ‖·‖)` on every 8th node.
fn exact_restart_divergence(alpha: f64, a: &Matrix2<f64>, x0: &[f64], t_star: f64, s: &[f64]) -> Result<f64, AuditError> {
    let x0 = Vector2::new(x0[0], x0[1]);
    let y0 = ml_matrix(alpha, a, t_star).map_err(FractionalError::from)? * x0;
    let mut worst = 0.0f64;
    for &si in s.iter().step_by(8).chain(s.last()) {
        let restarted = ml_matrix(alpha, a, si).map_err(FractionalError::from)? * y0;
        let cont = ml_matrix(alpha, a, t_star + si).map_err(FractionalError::from)? * x0;
        worst = worst.max((restarted - cont).norm() / (1.0 + cont.norm()));
    }
    Ok(worst)
}

/// `a·x + b·y + c = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Line {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Line {
    /// `y = m·x`.
    pub fn through_origin(m: f64) -> Self {
        Self { a: -m, b: 1.0, c: 0.0 }
    }

    pub fn from_candidate(cand: &Candidate) -> Option<Self> {
        match &cand.kind {
            CurveKind::LineThroughOrigin { m: Some(m) } => Some(Self::through_origin(m.approx)),
            CurveKind::VerticalLine { k: Some(k) } => Some(Self { a: 1.0, b: 0.0, c: -k.approx }),
            CurveKind::HorizontalLine { l: Some(l) } => Some(Self { a: 0.0, b: 1.0, c: -l.approx }),
            CurveKind::AffineLine { x0, y0, direction: Some(d) } => {
                let (p, q) = (d.p.approx, d.q.approx);
                Some(Self { a: q, b: -p, c: -q * x0.approx + p * y0.approx })
            }
            _ => None,
        }
    }

    /// Point-to-line distance.
    pub fn distance(&self, x: f64, y: f64) -> f64 {
        (self.a * x + self.b * y + self.c).abs() / self.a.hypot(self.b)
    }
}

/// Options for [`subspace_invariance_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubspaceOptions {
    pub h: f64,
    /// Run even if `X0` is off the line (the verdict then reflects that).
    pub force: bool,
}

/// Max point-to-line distance along a trajectory started on the line.
pub fn subspace_invariance_check(
    system: &FractionalSystem,
    line: &Line,
    horizon: f64,
    opts: SubspaceOptions,
) -> Result<AuditResult, AuditError> {
    if system.dim() != 2 {
        return Err(AuditError::Precondition("planar system required".into()));
    }
    let d0 = line.distance(system.x0[0], system.x0[1]);
    if d0 >= 1e-12 && !opts.force {
        return Err(AuditError::Precondition(format!("X0 is {d0:e} away from the line")));
    }
    let mut res = AuditResult::new(
        "subspace-invariance",
        Provenance { system: describe_system(system), alpha: system.alpha, h: opts.h, horizon, t_star: None },
    );
    if let Rhs::Field { field, .. } = &system.rhs {
        if let Some(g) = line_poly(line) {
            let ok = field.darboux_check(&g).map(|o| o.is_invariant()).unwrap_or(false);
            res.metrics.insert("algebraic_condition_holds".into(), if ok { 1.0 } else { 0.0 });
            if !ok {
                res.notes.push("the line fails the classical tangency condition".into());
            }
        }
    }
    let tr = solve(system, opts.h, horizon)?;
    let series: Vec<f64> = tr.states.iter().map(|s| line.distance(s[0], s[1])).collect();
    let metric = series.iter().cloned().fold(0.0, f64::max);
    let tol = solver_tolerance(system, opts.h, horizon)?;
    res.metrics.insert("max_distance".into(), metric);
    res.metrics.insert("initial_distance".into(), d0);
    res.metrics.insert("solver_tolerance".into(), tol);
    res.thresholds.insert("invariant_at_most".into(), 50.0 * tol);
    res.verdict = if metric <= 50.0 * tol { Verdict::InvariantWithinTol } else { Verdict::NonInvariant };
    res.series.insert("distance".into(), series);
    res.series_t = tr.t.clone();
    res.trajectories.push(("trajectory".into(), tr));
    Ok(res)
}

fn line_poly(line: &Line) -> Option<BivariatePoly> {
    use crate::scalar::Scalar;
    let s = |v: f64| Scalar::from_f64(v);
    let mut g = BivariatePoly::zero();
    g.add_term((1, 0), s(line.a)?);
    g.add_term((0, 1), s(line.b)?);
    g.add_term((0, 0), s(line.c)?);
    Some(g)
}

fn residual_run(
    system: &FractionalSystem,
    g: &BivariatePoly,
    h: f64,
    horizon: f64,
) -> Result<(Trajectory, Vec<f64>, f64), AuditError> {
    let tr = solve(system, h, horizon)?;
    let r: Vec<f64> = tr.states.iter().map(|s| g.eval_f64(s[0], s[1]).abs()).collect();
    let tol = solver_tolerance(system, h, horizon)?;
    Ok((tr, r, tol))
}

/// Residual `|g(x(t), y(t))|` along a trajectory started on `g = 0`, with the
/// α = 1 control run on the same curve.
pub fn curve_invariance_check(
    system: &FractionalSystem,
    g: &BivariatePoly,
    horizon: f64,
    h: f64,
) -> Result<AuditResult, AuditError> {
    if system.dim() != 2 {
        return Err(AuditError::Precondition("planar system required".into()));
    }
    let r0 = g.eval_f64(system.x0[0], system.x0[1]).abs();
    if r0 >= 1e-12 {
        return Err(AuditError::Precondition(format!("X0 has residual {r0:e} on the curve")));
    }
    let (tr, series, tol) = residual_run(system, g, h, horizon)?;
    let metric = series.iter().cloned().fold(0.0, f64::max);
    let mut res = AuditResult::new(
        "curve-invariance",
        Provenance { system: describe_system(system), alpha: system.alpha, h, horizon, t_star: None },
    );
    res.metrics.insert("max_residual".into(), metric);
    res.metrics.insert("solver_tolerance".into(), tol);
    res.thresholds.insert("non_invariant_above".into(), 100.0 * tol);
    res.verdict = if metric > 100.0 * tol { Verdict::NonInvariant } else { Verdict::InvariantWithinTol };
    res.series.insert("residual".into(), series);
    res.series_t = tr.t.clone();
    res.trajectories.push(("trajectory".into(), tr));
    if system.alpha < 1.0 {
        let control = curve_invariance_check(&system.with_alpha(1.0)?, g, horizon, h)?;
        let classical_ok = control.verdict == Verdict::InvariantWithinTol;
        res.metrics.insert("control_invariant".into(), if classical_ok { 1.0 } else { 0.0 });
        res.notes.push(match (res.verdict, classical_ok) {
            (Verdict::NonInvariant, true) => "fractional run leaves the curve while the classical control stays on it".into(),
            (Verdict::NonInvariant, false) => "both the fractional run and the classical control leave the curve".into(),
            (_, true) => "both runs stay on the curve within tolerance".into(),
            (_, false) => "the classical control leaves the curve but the fractional run does not".into(),
        });
        res.control = Some(Box::new(control));
    }
    Ok(res)
}

/// Evaluates the exact solution of the half-order counterexample started on
/// the published stable manifold `x = −(4/π − 1)y²`.
pub fn stable_manifold_audit(c2: f64, horizon: f64, nodes: usize) -> Result<AuditResult, AuditError> {
    if !(horizon > 0.0) || nodes < 4 {
        return Err(AuditError::Precondition("need T > 0 and at least 4 nodes".into()));
    }
    let coef = stable_manifold_coefficient()?;
    let c1 = -coef.value * c2 * c2;
    let grid: Vec<f64> = (0..=nodes).map(|i| horizon * i as f64 / nodes as f64).collect();
    let tr = cong_exact_solution(c1, c2, &grid)?;
    let xs = tr.component(0);
    let ys = tr.component(1);
    let mut res = AuditResult::new(
        "stable-manifold",
        Provenance { system: "D^{1/2}x = x - y^2, D^{1/2}y = -y".into(), alpha: 0.5, h: 0.0, horizon, t_star: None },
    );
    res.metrics.insert("c1".into(), c1);
    res.metrics.insert("c2".into(), c2);
    res.metrics.insert("coefficient".into(), coef.value);
    let y_positive = ys.iter().all(|&y| if c2 > 0.0 { y > 0.0 } else { y == 0.0 || c2 < 0.0 });
    let y_monotone = ys.windows(2).all(|w| w[1].abs() <= w[0].abs());
    res.metrics.insert("y_keeps_sign".into(), if y_positive { 1.0 } else { 0.0 });
    res.metrics.insert("y_abs_nonincreasing".into(), if y_monotone { 1.0 } else { 0.0 });
    res.thresholds.insert("refuted_if_growth_above".into(), 1e3);
    if c2 == 0.0 {
        let max_abs = xs.iter().chain(&ys).map(|v| v.abs()).fold(0.0, f64::max);
        res.metrics.insert("max_abs_state".into(), max_abs);
        res.verdict = if max_abs == 0.0 { Verdict::InvariantWithinTol } else { Verdict::Inconclusive };
        res.notes.push("zero data: the origin is an equilibrium".into());
    } else {
        let ratio = xs[nodes].abs() / xs[0].abs();
        let late = (xs[nodes].abs() - xs[nodes - 1].abs()).signum();
        res.metrics.insert("growth_ratio".into(), ratio);
        res.metrics.insert("late_d_abs_x_sign".into(), late);
        res.verdict = if ratio > 1e3 {
            res.notes.push("the solution leaves the origin: the curve is not a stable manifold".into());
            Verdict::NonInvariant
        } else if ratio < 1.0 && late < 0.0 {
            Verdict::InvariantWithinTol
        } else {
            Verdict::Inconclusive
        };
        // FAM cross-check on [0, min(T, 2)].
        let t_fam = horizon.min(2.0);
        let field = crate::corpus::load("stable_manifold_counterexample").expect("bundled system");
        let sys = FractionalSystem::field(0.5, field, [c1, c2])?;
        let fam = fam_solve(&sys, 2f64.powi(-10), t_fam)?;
        let stride = fam.len() / 16;
        let sample: Vec<f64> = (0..=16).map(|i| fam.t[(i * stride).min(fam.len() - 1)]).collect();
        let exact = cong_exact_solution(c1, c2, &sample)?;
        let scale = exact.states.iter().map(|s| norm(s)).fold(0.0, f64::max);
        let dev = exact
            .states
            .iter()
            .enumerate()
            .map(|(i, s)| dist(s, &fam.states[(i * stride).min(fam.len() - 1)]))
            .fold(0.0, f64::max);
        res.metrics.insert("fam_crosscheck_relative".into(), dev / scale);
        res.trajectories.push(("fam".into(), fam));
    }
    res.series.insert("x".into(), xs);
    res.series.insert("y".into(), ys);
    res.series_t = grid;
    res.trajectories.push(("exact".into(), tr));
    Ok(res)
}

/// Analytic inputs for [`leibniz_obstruction_demo`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AnalyticPath {
    /// `x(t) = c·t^p` with `p` a non-negative integer.
    Monomial { c: f64, p: u32 },
    /// `x(t) = x0·E_α(λ t^α)`, with `α` the demo's order.
    MittagLeffler { x0: f64, lambda: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LeibnizSeries {
    pub t: Vec<f64>,
    /// `binom(α,k)·(I^{k−α}x)·x⁽ᵏ⁾` for `k = 1..K`.
    pub terms: Vec<Vec<f64>>,
    /// Sum of the terms with `k ≥ 2`: what is left once the product rule is taken out.
    pub extra: Vec<f64>,
    /// `t^{−α}/Γ(1−α)·(x(0)x(t) − x(0)²)`.
    pub boundary: Vec<f64>,
    /// `D^α(x²)` minus the truncated rule, when `D^α(x²)` has a closed form.
    pub residual: Option<Vec<f64>>,
}

/// `E_{α,β}(z)` for any real `β`, lowering `β ≤ 0` through
/// `E_{α,β}(z) = 1/Γ(β) + z·E_{α,α+β}(z)`.
fn ml_any_beta(alpha: f64, beta: f64, z: f64) -> Result<f64, FractionalError> {
    if beta > 0.0 {
        return Ok(ml_real(alpha, beta, z)?);
    }
    Ok(rgamma(beta) + z * ml_any_beta(alpha, alpha + beta, z)?)
}

/// Evaluates the truncated generalized Leibniz rule for `D^α(x²)`.
pub fn leibniz_obstruction_demo(alpha: f64, path: AnalyticPath, k_max: u32, grid: &[f64]) -> Result<LeibnizSeries, AuditError> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(AuditError::Precondition(format!("alpha must lie in (0,1], got {alpha}")));
    }
    if k_max == 0 || k_max > 3 {
        return Err(AuditError::Precondition(format!("K must be 1..=3, got {k_max}")));
    }
    if grid.iter().any(|&t| !(t > 0.0)) {
        return Err(AuditError::Precondition("grid points must be positive".into()));
    }
    // (x(t), x^{(k)}(t), I^{β}x(t), x(0))
    let x0 = match path {
        AnalyticPath::Monomial { c, p } => if p == 0 { c } else { 0.0 },
        AnalyticPath::MittagLeffler { x0, .. } => x0,
    };
    let value = |t: f64| -> Result<f64, FractionalError> {
        match path {
            AnalyticPath::Monomial { c, p } => Ok(c * t.powi(p as i32)),
            AnalyticPath::MittagLeffler { x0, lambda } => Ok(x0 * ml_real(alpha, 1.0, lambda * t.powf(alpha))?),
        }
    };
    let deriv = |k: u32, t: f64| -> Result<f64, FractionalError> {
        match path {
            AnalyticPath::Monomial { c, p } => {
                if k > p {
                    Ok(0.0)
                } else {
                    let falling: f64 = (0..k).map(|i| (p - i) as f64).product();
                    Ok(c * falling * t.powi((p - k) as i32))
                }
            }
            // d^k/dt^k Σ λ^j t^{αj}/Γ(αj+1) = t^{−k} E_{α,1−k}(λt^α)
            AnalyticPath::MittagLeffler { x0, lambda } => {
                Ok(x0 * t.powi(-(k as i32)) * ml_any_beta(alpha, 1.0 - k as f64, lambda * t.powf(alpha))?)
            }
        }
    };
    let integral = |beta: f64, t: f64| -> Result<f64, FractionalError> {
        match path {
            AnalyticPath::Monomial { c, p } => Ok(c * rl_integral_power(beta, p as f64, t)?),
            // I^β Σ λ^j t^{αj}/Γ(αj+1) = t^β E_{α,1+β}(λt^α)
            AnalyticPath::MittagLeffler { x0, lambda } => {
                Ok(x0 * t.powf(beta) * ml_real(alpha, 1.0 + beta, lambda * t.powf(alpha))?)
            }
        }
    };
    let mut terms = vec![Vec::with_capacity(grid.len()); k_max as usize];
    let mut extra = Vec::with_capacity(grid.len());
    let mut boundary = Vec::with_capacity(grid.len());
    let mut residual = match path {
        AnalyticPath::Monomial { .. } => Some(Vec::with_capacity(grid.len())),
        AnalyticPath::MittagLeffler { .. } => None,
    };
    let rg = rgamma(1.0 - alpha);
    for &t in grid {
        let x = value(t)?;
        let mut ex = 0.0;
        let mut total = 0.0;
        for k in 1..=k_max {
            let term = binom(alpha, k) * integral(k as f64 - alpha, t)? * deriv(k, t)?;
            terms[k as usize - 1].push(term);
            total += term;
            if k >= 2 {
                ex += term;
            }
        }
        extra.push(ex);
        let bd = t.powf(-alpha) * rg * (x0 * x - x0 * x0);
        boundary.push(bd);
        if let (Some(r), AnalyticPath::Monomial { c, p }) = (residual.as_mut(), path) {
            let (lhs, dx) = if p == 0 {
                (0.0, 0.0)
            } else {
                (c * c * caputo_power(alpha, 2.0 * p as f64, t)?, c * caputo_power(alpha, p as f64, t)?)
            };
            r.push(lhs - (dx * x + total + bd));
        }
    }
    Ok(LeibnizSeries { t: grid.to_vec(), terms, extra, boundary, residual })
}
