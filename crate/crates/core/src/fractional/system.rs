//! Fractional systems `D^α X = f(t, X)` and computed trajectories.

use std::fmt::Write as _;
use std::sync::Arc;

use nalgebra::Matrix2;
use serde::Serialize;

use super::FractionalError;
use crate::field::PolyField2D;

/// A polynomial field with coefficients rounded to `f64` for fast evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericField {
    p: Vec<(i32, i32, f64)>,
    q: Vec<(i32, i32, f64)>,
}

impl NumericField {
    pub fn new(field: &PolyField2D) -> Self {
        let conv = |poly: &crate::poly::BivariatePoly| {
            poly.terms().map(|(e, c)| (e.0 as i32, e.1 as i32, c.to_f64())).collect()
        };
        Self { p: conv(field.p()), q: conv(field.q()) }
    }

    fn eval_poly(terms: &[(i32, i32, f64)], x: f64, y: f64) -> f64 {
        terms.iter().map(|&(i, j, c)| c * x.powi(i) * y.powi(j)).sum()
    }

    pub fn eval(&self, x: f64, y: f64) -> (f64, f64) {
        (Self::eval_poly(&self.p, x, y), Self::eval_poly(&self.q, x, y))
    }
}

/// Scalar forcing term `g(t)`.
pub type Forcing = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Right-hand side of the system.
#[derive(Clone)]
pub enum Rhs {
    Field { field: PolyField2D, numeric: NumericField },
    Matrix(Matrix2<f64>),
    /// `D^α x = -λx + g(t)`.
    ScalarLinear { lambda: f64, forcing: Forcing },
}

impl std::fmt::Debug for Rhs {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Rhs::Field { field, .. } => write!(f, "Field({})", field.describe()),
            Rhs::Matrix(a) => write!(f, "Matrix({:?})", a.as_slice()),
            Rhs::ScalarLinear { lambda, .. } => write!(f, "ScalarLinear(lambda={lambda})"),
        }
    }
}

/// `D^α X = f(t, X)`, `X(0) = X0`.
#[derive(Debug, Clone)]
pub struct FractionalSystem {
    pub alpha: f64,
    pub rhs: Rhs,
    pub x0: Vec<f64>,
    pub labels: Vec<String>,
}

fn check_alpha(alpha: f64) -> Result<(), FractionalError> {
    if alpha > 0.0 && alpha <= 1.0 {
        Ok(())
    } else {
        Err(FractionalError::InvalidParameter(format!("alpha must lie in (0,1], got {alpha}")))
    }
}

impl FractionalSystem {
    pub fn field(alpha: f64, field: PolyField2D, x0: [f64; 2]) -> Result<Self, FractionalError> {
        check_alpha(alpha)?;
        let numeric = NumericField::new(&field);
        Ok(Self { alpha, rhs: Rhs::Field { field, numeric }, x0: x0.to_vec(), labels: vec!["x".into(), "y".into()] })
    }

    pub fn matrix(alpha: f64, a: Matrix2<f64>, x0: [f64; 2]) -> Result<Self, FractionalError> {
        check_alpha(alpha)?;
        Ok(Self { alpha, rhs: Rhs::Matrix(a), x0: x0.to_vec(), labels: vec!["x".into(), "y".into()] })
    }

    pub fn scalar_linear(alpha: f64, lambda: f64, forcing: Forcing, x0: f64) -> Result<Self, FractionalError> {
        check_alpha(alpha)?;
        Ok(Self { alpha, rhs: Rhs::ScalarLinear { lambda, forcing }, x0: vec![x0], labels: vec!["x".into()] })
    }

    pub fn with_alpha(&self, alpha: f64) -> Result<Self, FractionalError> {
        check_alpha(alpha)?;
        Ok(Self { alpha, ..self.clone() })
    }

    pub fn with_x0(&self, x0: &[f64]) -> Self {
        assert_eq!(x0.len(), self.dim(), "state dimension");
        Self { x0: x0.to_vec(), ..self.clone() }
    }

    pub fn dim(&self) -> usize {
        self.x0.len()
    }

    /// Evaluates `f(t, x)` into `out`.
    pub fn eval(&self, t: f64, x: &[f64], out: &mut [f64]) {
        match &self.rhs {
            Rhs::Field { numeric, .. } => {
                let (p, q) = numeric.eval(x[0], x[1]);
                out[0] = p;
                out[1] = q;
            }
            Rhs::Matrix(a) => {
                out[0] = a[(0, 0)] * x[0] + a[(0, 1)] * x[1];
                out[1] = a[(1, 0)] * x[0] + a[(1, 1)] * x[1];
            }
            Rhs::ScalarLinear { lambda, forcing } => out[0] = -lambda * x[0] + forcing(t),
        }
    }
}

/// Integrator that produced a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Fractional Adams–Bashforth–Moulton predictor–corrector.
    Fam,
    /// Classical fourth-order Runge–Kutta (α = 1 only).
    Rk4,
    /// Closed-form / quadrature evaluation of an exact solution.
    Exact,
}

/// States on a time grid starting at 0.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub t: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    pub method: Method,
    /// Uniform step (0 for non-uniform grids).
    pub h: f64,
    pub alpha: f64,
    /// Time at which `‖X‖ > 1e12` was first seen; the trajectory stops there.
    pub blow_up: Option<f64>,
    pub labels: Vec<String>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn component(&self, i: usize) -> Vec<f64> {
        self.states.iter().map(|s| s[i]).collect()
    }

    pub fn last(&self) -> &[f64] {
        self.states.last().expect("trajectory has at least the initial state")
    }

    /// CSV with header `t,x,y` and 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("t");
        for l in &self.labels {
            s.push(',');
            s.push_str(l);
        }
        s.push('\n');
        for (t, st) in self.t.iter().zip(&self.states) {
            write!(s, "{t:.16e}").unwrap();
            for v in st {
                write!(s, ",{v:.16e}").unwrap();
            }
            s.push('\n');
        }
        s
    }
}

/// `0, h, 2h, ..., T` with `N = round(T/h)` steps.
pub fn uniform_grid(h: f64, horizon: f64) -> Result<Vec<f64>, FractionalError> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(FractionalError::InvalidParameter(format!("step must be positive, got {h}")));
    }
    if !(horizon > 0.0 && horizon.is_finite()) {
        return Err(FractionalError::InvalidParameter(format!("horizon must be positive, got {horizon}")));
    }
    let n = (horizon / h).round().max(1.0) as usize;
    if n > 1 << 20 {
        return Err(FractionalError::InvalidParameter(format!("{n} steps exceed the supported grid size")));
    }
    Ok((0..=n).map(|i| i as f64 * h).collect())
}

pub(crate) fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}
