//! Invariant-curve detectors driven by closed-form coefficient conditions.
//!
//! Every detector returns an [`InvariantReport`]. A candidate only enters a
//! report after an exact verifier has accepted it: polynomial cofactor
//! division, symbolic graph substitution, or (for slopes outside the
//! coefficient field) exact reduction modulo the slope's minimal polynomial.
//!
//! The trigonometric graph `y = m·sin x` is deliberately not a detector: its
//! tangency identity mixes `x cos x`, `sin x cos x` and polynomial terms that
//! are linearly independent, so it is never satisfied by a nonzero quadratic
//! field. Such claims can still be tested with [`crate::graph`] on concrete
//! polynomial approximations, or numerically with the auditor.

mod artes;
mod hamiltonian;
mod lines;
mod parabola;
mod special;

use serde::Serialize;
use thiserror::Error;

use crate::equilibria::{equilibria, EquilibriumSet};
use crate::field::PolyField2D;
use crate::graph::{GraphCurve, GraphDirection};
use crate::poly::{BivariatePoly, UniPoly};
use crate::roots::RealValue;
use crate::scalar::Scalar;

pub use artes::{validate_artes_bounds, ArtesCheck};
pub use hamiltonian::{detect_separatrix, verify_curves};
pub use lines::{detect_lines_affine, detect_lines_axis, detect_lines_origin, tangency_polynomials};
pub use parabola::{detect_parabola_rotated, detect_parabola_x, detect_parabola_y};
pub use special::{detect_cubic, detect_exponential_family, detect_power_family};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DetectError {
    #[error("field has constant terms a(0,0)={a00}, b(0,0)={b00}; use detect_lines_affine about an equilibrium")]
    ConstantTerms { a00: Scalar, b00: Scalar },
    #[error("detector requires a quadratic field without constant terms")]
    NotQuadratic,
    #[error("({x0}, {y0}) is not an equilibrium")]
    NotEquilibrium { x0: Scalar, y0: Scalar },
    #[error("{0}")]
    ClauseViolated(String),
    #[error("inconsistent exponent: {0}")]
    InconsistentExponent(String),
    #[error("deferred: {0}")]
    Deferred(String),
    #[error("field is not Hamiltonian (divergence {0})")]
    NotHamiltonian(BivariatePoly),
}

/// Projective direction `(p:q)`; `p = 0` is vertical.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LineDirection {
    pub p: RealValue,
    pub q: RealValue,
}

impl LineDirection {
    pub fn slope(m: RealValue) -> Self {
        LineDirection {
            p: RealValue::exact(Scalar::from(1)),
            q: m,
        }
    }

    pub fn vertical() -> Self {
        LineDirection {
            p: RealValue::exact(Scalar::from(0)),
            q: RealValue::exact(Scalar::from(1)),
        }
    }

    pub fn is_vertical(&self) -> bool {
        self.p.approx == 0.0
    }
}

/// What a candidate curve is.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum CurveKind {
    /// `y = m·x`; `m = None` for the family of all such lines.
    LineThroughOrigin { m: Option<RealValue> },
    /// `x = k`; `None` for all vertical lines.
    VerticalLine { k: Option<RealValue> },
    /// `y = l`; `None` for all horizontal lines.
    HorizontalLine { l: Option<RealValue> },
    /// Line through `(x0, y0)`; `direction = None` for every line through the point.
    AffineLine {
        x0: RealValue,
        y0: RealValue,
        direction: Option<LineDirection>,
    },
    ParabolaYofX { m: Option<RealValue> },
    ParabolaXofY { m: Option<RealValue> },
    /// `m1x² + m2xy + m3y² + m4x + m5y = 0`, normalized so `max|mᵢ| = 1`
    /// and the first nonzero coefficient is positive.
    RotatedParabola { m: Vec<RealValue>, theta: f64 },
    /// `y = x³ + m·x² + u·x`.
    Cubic { m: RealValue, u: RealValue },
    /// `y = c·xᵏ` for every `c`.
    PowerFamily { k: Option<RealValue> },
    /// `y = c·eˣ` for every `c`.
    ExponentialFamily,
    /// `H(x, y) = c`.
    LevelSet {
        h: BivariatePoly,
        c: RealValue,
        through: (f64, f64),
    },
    ImplicitPoly { g: BivariatePoly },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Multiplicity {
    Single,
    InfiniteFamily,
}

/// Exact evidence that a candidate is invariant.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum Certificate {
    /// `∇g·F = K·g` with zero remainder.
    Cofactor { curve: BivariatePoly, cofactor: BivariatePoly },
    /// The tangency residual expands to the zero expression.
    GraphResidual { direction: GraphDirection, curve: GraphCurve },
    /// The slope is a root of `minpoly`, and every tangency polynomial is
    /// exactly zero modulo `minpoly`.
    AlgebraicSlope { minpoly: UniPoly },
    /// Every tangency polynomial vanishes identically.
    IdenticallyZero { what: String },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Candidate {
    pub kind: CurveKind,
    pub multiplicity: Multiplicity,
    /// Which coefficient condition produced the candidate.
    pub clause: String,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    None,
    Single,
    FiniteSet,
    InfiniteFamily,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantReport {
    pub detector: &'static str,
    pub candidates: Vec<Candidate>,
    pub diagnostics: Vec<String>,
}

impl InvariantReport {
    pub fn new(detector: &'static str) -> Self {
        InvariantReport {
            detector,
            candidates: Vec::new(),
            diagnostics: Vec::new(),
        }
    }

    pub fn classification(&self) -> Classification {
        if self.candidates.iter().any(|c| c.multiplicity == Multiplicity::InfiniteFamily) {
            Classification::InfiniteFamily
        } else {
            match self.candidates.len() {
                0 => Classification::None,
                1 => Classification::Single,
                _ => Classification::FiniteSet,
            }
        }
    }

    pub fn has_family(&self) -> bool {
        self.classification() == Classification::InfiniteFamily
    }

    pub(crate) fn diag(&mut self, s: impl Into<String>) {
        self.diagnostics.push(s.into());
    }
}

/// A line `a·x + b·y + c = 0` in floating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumLine {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Candidate {
    /// Finite single lines as `a·x + b·y + c = 0`.
    pub fn as_line(&self) -> Option<NumLine> {
        if self.multiplicity != Multiplicity::Single {
            return None;
        }
        match &self.kind {
            CurveKind::LineThroughOrigin { m: Some(m) } => Some(NumLine { a: -m.approx, b: 1.0, c: 0.0 }),
            CurveKind::VerticalLine { k: Some(k) } => Some(NumLine { a: 1.0, b: 0.0, c: -k.approx }),
            CurveKind::HorizontalLine { l: Some(l) } => Some(NumLine { a: 0.0, b: 1.0, c: -l.approx }),
            CurveKind::AffineLine { x0, y0, direction: Some(d) } => {
                // q(x − x0) − p(y − y0) = 0
                let (p, q) = (d.p.approx, d.q.approx);
                Some(NumLine { a: q, b: -p, c: -q * x0.approx + p * y0.approx })
            }
            _ => None,
        }
    }

    /// Whether the candidate is a line or a family of lines.
    pub fn is_linear(&self) -> bool {
        matches!(
            self.kind,
            CurveKind::LineThroughOrigin { .. }
                | CurveKind::VerticalLine { .. }
                | CurveKind::HorizontalLine { .. }
                | CurveKind::AffineLine { .. }
        ) || matches!(&self.kind, CurveKind::PowerFamily { k: Some(k) } if k.approx == 1.0)
    }

    /// The exact implicit polynomial `g` with `g = 0` the curve, when one exists.
    pub fn implicit(&self) -> Option<BivariatePoly> {
        let x = BivariatePoly::x;
        let y = BivariatePoly::y;
        let k = |v: &RealValue| v.exact.clone().map(BivariatePoly::constant);
        match &self.kind {
            CurveKind::LineThroughOrigin { m: Some(m) } => Some(&y() - &(&k(m)? * &x())),
            CurveKind::VerticalLine { k: Some(v) } => Some(&x() - &k(v)?),
            CurveKind::HorizontalLine { l: Some(v) } => Some(&y() - &k(v)?),
            CurveKind::AffineLine { x0, y0, direction: Some(d) } => {
                let (p, q) = (k(&d.p)?, k(&d.q)?);
                Some(&(&q * &(&x() - &k(x0)?)) - &(&p * &(&y() - &k(y0)?)))
            }
            CurveKind::ParabolaYofX { m: Some(m) } => Some(&y() - &(&k(m)? * &x().pow(2))),
            CurveKind::ParabolaXofY { m: Some(m) } => Some(&x() - &(&k(m)? * &y().pow(2))),
            CurveKind::RotatedParabola { m, .. } => {
                let mons = [(2, 0), (1, 1), (0, 2), (1, 0), (0, 1)];
                let mut g = BivariatePoly::zero();
                for (v, (i, j)) in m.iter().zip(mons) {
                    g.add_term((i, j), v.exact.clone()?);
                }
                Some(g)
            }
            CurveKind::Cubic { m, u } => {
                let h = &(&x().pow(3) + &(&k(m)? * &x().pow(2))) + &(&k(u)? * &x());
                Some(&y() - &h)
            }
            CurveKind::LevelSet { h, c, .. } => Some(h - &k(c)?),
            CurveKind::ImplicitPoly { g } => Some(g.clone()),
            _ => None,
        }
    }

    /// Human-readable equation.
    pub fn describe(&self) -> String {
        let fam = self.multiplicity == Multiplicity::InfiniteFamily;
        match &self.kind {
            CurveKind::LineThroughOrigin { m: Some(m) } => fmt_line(m, &RealValue::exact(Scalar::from(0))),
            CurveKind::LineThroughOrigin { m: None } => "infinite family: all lines y = m*x".into(),
            CurveKind::VerticalLine { k: Some(k) } => format!("x = {k}"),
            CurveKind::VerticalLine { k: None } => "infinite family: all lines x = k".into(),
            CurveKind::HorizontalLine { l: Some(l) } => format!("y = {l}"),
            CurveKind::HorizontalLine { l: None } => "infinite family: all lines y = l".into(),
            CurveKind::AffineLine { x0, direction: Some(d), .. } if d.is_vertical() => format!("x = {x0}"),
            CurveKind::AffineLine { x0, y0, direction: Some(d) } => match (&d.q.exact, &x0.exact, &y0.exact) {
                (Some(m), Some(a), Some(b)) => {
                    let c = b - &(m * a);
                    fmt_line(&d.q, &RealValue::exact(c))
                }
                _ => fmt_line(&d.q, &RealValue::approx(y0.approx - d.q.approx * x0.approx)),
            },
            CurveKind::AffineLine { x0, y0, direction: None } => {
                format!("infinite family: all lines through ({x0}, {y0})")
            }
            CurveKind::ParabolaYofX { m: Some(m) } => format!("y = {}", fmt_scaled(m, "x^2")),
            CurveKind::ParabolaXofY { m: Some(m) } => format!("x = {}", fmt_scaled(m, "y^2")),
            CurveKind::ParabolaYofX { m: None } => "infinite family: all parabolas y = m*x^2".into(),
            CurveKind::ParabolaXofY { m: None } => "infinite family: all parabolas x = m*y^2".into(),
            CurveKind::RotatedParabola { .. } => match self.implicit() {
                Some(g) => format!("{g} = 0"),
                None => "rotated parabola".into(),
            },
            CurveKind::Cubic { m, u } => match (&m.exact, &u.exact) {
                (Some(me), Some(ue)) => {
                    let h = crate::poly::UniPoly::new(vec![Scalar::from(0), ue.clone(), me.clone(), Scalar::from(1)]);
                    format!("y = {}", h.fmt_var("x"))
                }
                _ => format!("y = x^3 + ({m})*x^2 + ({u})*x"),
            },
            CurveKind::PowerFamily { k: Some(k) } if k.exact == Some(Scalar::from(1)) => {
                "infinite family: y = m*x^k for all m, with k = 1".into()
            }
            CurveKind::PowerFamily { k: Some(k) } => format!("infinite family: y = m*x^({k}) for all m"),
            CurveKind::PowerFamily { k: None } => "infinite family: y = m*x^k for all m and k".into(),
            CurveKind::ExponentialFamily => "infinite family: y = m*exp(x) for all m".into(),
            CurveKind::LevelSet { h, c, .. } => format!("{h} = {c}"),
            CurveKind::ImplicitPoly { g } => format!("{g} = 0{}", if fam { " (family)" } else { "" }),
        }
    }
}

fn fmt_scaled(m: &RealValue, term: &str) -> String {
    match &m.exact {
        Some(v) if *v == Scalar::from(1) => term.into(),
        Some(v) if *v == Scalar::from(-1) => format!("-{term}"),
        _ => format!("{m}*{term}"),
    }
}

fn fmt_line(m: &RealValue, c: &RealValue) -> String {
    let slope = if m.approx == 0.0 {
        String::new()
    } else if m.exact.as_ref().is_some_and(|v| *v == Scalar::from(1)) {
        "x".into()
    } else if m.exact.as_ref().is_some_and(|v| *v == Scalar::from(-1)) {
        "-x".into()
    } else {
        format!("{m}*x")
    };
    let icpt = if c.approx == 0.0 {
        String::new()
    } else if slope.is_empty() {
        c.to_string()
    } else if c.approx < 0.0 {
        match &c.exact {
            Some(e) => format!(" - {}", -e),
            None => format!(" - {:.12}", -c.approx),
        }
    } else {
        format!(" + {c}")
    };
    if slope.is_empty() && icpt.is_empty() {
        "y = 0".into()
    } else {
        format!("y = {slope}{icpt}")
    }
}

/// Runs `darboux_check` and wraps a success as a certificate.
pub(crate) fn certify_darboux(field: &PolyField2D, g: &BivariatePoly) -> Option<Certificate> {
    if g.radicand() != 1 && field.radicand() != 1 && g.radicand() != field.radicand() {
        return None;
    }
    field
        .darboux_check(g)
        .ok()
        .and_then(|o| o.cofactor().cloned())
        .map(|k| Certificate::Cofactor {
            curve: g.clone(),
            cofactor: k,
        })
}

pub(crate) fn certify_graph(field: &PolyField2D, curve: GraphCurve, dir: GraphDirection) -> Option<Certificate> {
    let r = crate::graph::lie_derivative_on_graph(field, &curve, dir).ok()?;
    r.is_zero().then_some(Certificate::GraphResidual { direction: dir, curve })
}

pub(crate) fn require_quadratic_origin(field: &PolyField2D) -> Result<crate::field::QuadraticCoeffs, DetectError> {
    if field.has_constant_terms() {
        return Err(DetectError::ConstantTerms {
            a00: field.a(0, 0),
            b00: field.b(0, 0),
        });
    }
    field.quadratic().map_err(|_| DetectError::NotQuadratic)
}

/// All detectors applied to one field.
#[derive(Debug, Clone, Serialize)]
pub struct Analysis {
    pub field: serde_json::Value,
    pub degree: u32,
    pub equilibria: EquilibriumSet,
    pub reports: Vec<InvariantReport>,
    /// Distinct lines found by any line detector.
    pub lines: Vec<Candidate>,
    pub artes: ArtesCheck,
    pub notes: Vec<String>,
}

impl Analysis {
    /// All candidates across reports.
    pub fn candidates(&self) -> impl Iterator<Item = &Candidate> {
        self.reports.iter().flat_map(|r| r.candidates.iter())
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("degree {}\n", self.degree));
        let eq: Vec<String> = self
            .equilibria
            .points
            .iter()
            .map(|e| format!("({}, {})", e.x, e.y))
            .collect();
        out.push_str(&format!(
            "equilibria: {}{}\n",
            if eq.is_empty() { "none isolated".into() } else { eq.join(", ") },
            if self.equilibria.infinite { " (plus a curve of equilibria)" } else { "" }
        ));
        out.push_str("invariant lines:\n");
        if self.lines.is_empty() {
            out.push_str("  none\n");
        }
        for l in &self.lines {
            out.push_str(&format!("  {}\n", l.describe()));
        }
        out.push_str("other invariant curves:\n");
        let mut any = false;
        let mut seen: Vec<(String, Option<BivariatePoly>)> = Vec::new();
        for r in &self.reports {
            for c in &r.candidates {
                if c.is_linear() {
                    continue;
                }
                let d = c.describe();
                let g = c.implicit();
                if seen.iter().any(|(sd, sg)| {
                    *sd == d || matches!((sg, &g), (Some(a), Some(b)) if a.is_proportional(b))
                }) {
                    continue;
                }
                any = true;
                out.push_str(&format!("  {d}    [{}]\n", r.detector));
                seen.push((d, g));
            }
        }
        if !any {
            out.push_str("  none\n");
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        if self.artes.skipped {
            out.push_str("line-count bounds: skipped (infinite family)\n");
        } else if self.artes.violations.is_empty() {
            out.push_str("line-count bounds: ok\n");
        } else {
            for v in &self.artes.violations {
                out.push_str(&format!("line-count bound violated: {v}\n"));
            }
        }
        out
    }
}

/// Runs every applicable detector.
pub fn analyze(field: &PolyField2D) -> Analysis {
    let eqs = equilibria(field);
    let mut reports = Vec::new();
    let mut notes = Vec::new();
    if field.is_zero() {
        notes.push("trivial flow: every set is invariant under the zero field".into());
    }
    let push = |reports: &mut Vec<InvariantReport>, name: &'static str, r: Result<InvariantReport, DetectError>| {
        match r {
            Ok(r) => reports.push(r),
            Err(e) => {
                let mut rep = InvariantReport::new(name);
                rep.diag(e.to_string());
                reports.push(rep);
            }
        }
    };
    push(&mut reports, "lines-origin", detect_lines_origin(field));
    reports.push(detect_lines_axis(field));
    for e in &eqs.points {
        if let Some((x0, y0)) = e.exact() {
            if field.has_constant_terms() || !(x0 == Scalar::from(0) && y0 == Scalar::from(0)) {
                push(&mut reports, "lines-affine", detect_lines_affine(field, &x0, &y0));
            }
        }
    }
    if field.degree() <= 2 {
        push(&mut reports, "parabola-y", detect_parabola_y(field));
        push(&mut reports, "parabola-x", detect_parabola_x(field));
        push(&mut reports, "parabola-rotated", detect_parabola_rotated(field));
        push(&mut reports, "cubic", detect_cubic(field));
        push(&mut reports, "power-family", detect_power_family(field));
        push(&mut reports, "exponential-family", detect_exponential_family(field));
    }
    if field.is_hamiltonian() {
        push(&mut reports, "separatrix", detect_separatrix(field));
    }
    let lines = consolidate_lines(&reports);
    let all: Vec<Candidate> = lines.clone();
    let family = reports
        .iter()
        .flat_map(|r| r.candidates.iter())
        .any(|c| c.is_linear() && c.multiplicity == Multiplicity::InfiniteFamily);
    let artes = validate_artes_bounds(&all, field.degree(), family);
    Analysis {
        field: field.to_json(),
        degree: field.degree(),
        equilibria: eqs,
        reports,
        lines,
        artes,
        notes,
    }
}

/// Line candidates from all reports, deduplicated geometrically.
pub fn consolidate_lines(reports: &[InvariantReport]) -> Vec<Candidate> {
    let mut out: Vec<Candidate> = Vec::new();
    let mut seen: Vec<NumLine> = Vec::new();
    for c in reports.iter().flat_map(|r| r.candidates.iter()) {
        if !c.is_linear() {
            continue;
        }
        match c.as_line() {
            Some(l) => {
                if seen.iter().any(|s| same_line(s, &l)) {
                    continue;
                }
                seen.push(l);
                out.push(c.clone());
            }
            None => {
                let d = c.describe();
                if !out.iter().any(|o| o.describe() == d) {
                    out.push(c.clone());
                }
            }
        }
    }
    out
}

pub(crate) fn same_line(a: &NumLine, b: &NumLine) -> bool {
    let na = a.a.hypot(a.b);
    let nb = b.a.hypot(b.b);
    let (a1, b1, c1) = (a.a / na, a.b / na, a.c / na);
    let (a2, b2, c2) = (b.a / nb, b.b / nb, b.c / nb);
    let tol = 1e-9;
    ((a1 - a2).abs() < tol && (b1 - b2).abs() < tol && (c1 - c2).abs() < tol)
        || ((a1 + a2).abs() < tol && (b1 + b2).abs() < tol && (c1 + c2).abs() < tol)
}

/// Independently re-verifies a candidate's certificate against `field`.
pub fn recheck(field: &PolyField2D, cand: &Candidate) -> bool {
    let divides = |polys: &[UniPoly], mp: &UniPoly| polys.iter().all(|p| p.divrem(mp).1.is_zero());
    let all_zero = |polys: &[UniPoly]| polys.iter().all(UniPoly::is_zero);
    match &cand.certificate {
        Certificate::Cofactor { curve, cofactor } => {
            !curve.is_constant() && field.lie_derivative(curve) == cofactor * curve
        }
        Certificate::GraphResidual { direction, curve } => {
            crate::graph::lie_derivative_on_graph(field, curve, *direction).is_ok_and(|r| r.is_zero())
        }
        Certificate::AlgebraicSlope { minpoly } => match &cand.kind {
            CurveKind::LineThroughOrigin { .. } => divides(&tangency_polynomials(field), minpoly),
            CurveKind::VerticalLine { .. } => divides(&field.p().y_coeffs(), minpoly),
            CurveKind::HorizontalLine { .. } => divides(&field.q().swap_xy().y_coeffs(), minpoly),
            CurveKind::AffineLine { x0, y0, .. } => match (&x0.exact, &y0.exact) {
                (Some(a), Some(b)) => divides(&tangency_polynomials(&field.translate(a, b)), minpoly),
                _ => false,
            },
            _ => false,
        },
        Certificate::IdenticallyZero { .. } => match &cand.kind {
            CurveKind::LineThroughOrigin { m: None } => all_zero(&tangency_polynomials(field)),
            CurveKind::VerticalLine { k: None } => field.p().is_zero(),
            CurveKind::HorizontalLine { l: None } => field.q().is_zero(),
            CurveKind::AffineLine { x0, y0, direction: None } => match (&x0.exact, &y0.exact) {
                (Some(a), Some(b)) => all_zero(&tangency_polynomials(&field.translate(a, b))),
                _ => false,
            },
            CurveKind::PowerFamily { k: None } => field.is_zero(),
            CurveKind::LevelSet { h, .. } => field.lie_derivative(h).is_zero(),
            _ => false,
        },
    }
}
