//! Planar polynomial vector fields `ẋ = P(x, y)`, `ẏ = Q(x, y)`.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{Map, Value};
use thiserror::Error;

use crate::poly::BivariatePoly;
use crate::scalar::{scalar_from_json, Scalar};
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("term x^{i}*y^{j} exceeds declared degree {degree}")]
    TermAboveDegree { i: u32, j: u32, degree: u32 },
    #[error("coefficients mix the extensions √{0} and √{1}")]
    MixedRadicands(u64, u64),
    #[error("field is not Hamiltonian: divergence = {divergence}")]
    NotHamiltonian { divergence: BivariatePoly },
    #[error("quadratic view requires degree ≤ 2")]
    NotQuadratic,
}

/// A schema violation located by a JSON pointer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{pointer}: {message}")]
pub struct SchemaError {
    pub pointer: String,
    pub message: String,
}

fn schema(pointer: impl Into<String>, message: impl Into<String>) -> SchemaError {
    SchemaError {
        pointer: pointer.into(),
        message: message.into(),
    }
}

/// `ẋ = Σ a(i,j) xⁱyʲ`, `ẏ = Σ b(i,j) xⁱyʲ` with `i + j ≤ degree`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyField2D {
    degree: u32,
    p: BivariatePoly,
    q: BivariatePoly,
}

/// The quadratic alias view `a1..a5`, `b1..b5` of a field without constant terms.
///
/// `a1 = a(1,0)`, `a2 = a(0,1)`, `a3 = a(2,0)`, `a4 = a(0,2)`, `a5 = a(1,1)`, likewise `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadraticCoeffs {
    pub a: [Scalar; 5],
    pub b: [Scalar; 5],
}

const QUAD_EXPS: [(u32, u32); 5] = [(1, 0), (0, 1), (2, 0), (0, 2), (1, 1)];

impl QuadraticCoeffs {
    /// 1-based accessor matching the usual `a1..a5` naming.
    pub fn a(&self, k: usize) -> &Scalar {
        &self.a[k - 1]
    }

    pub fn b(&self, k: usize) -> &Scalar {
        &self.b[k - 1]
    }

    pub fn from_ints(a: [i64; 5], b: [i64; 5]) -> Self {
        QuadraticCoeffs {
            a: a.map(Scalar::int),
            b: b.map(Scalar::int),
        }
    }
}

/// Result of `∇g·F = K·g` by exact division.
#[derive(Debug, Clone, PartialEq)]
pub enum DarbouxOutcome {
    Invariant { cofactor: BivariatePoly },
    NotInvariant { remainder: BivariatePoly },
}

impl DarbouxOutcome {
    pub fn cofactor(&self) -> Option<&BivariatePoly> {
        match self {
            DarbouxOutcome::Invariant { cofactor } => Some(cofactor),
            DarbouxOutcome::NotInvariant { .. } => None,
        }
    }

    pub fn is_invariant(&self) -> bool {
        matches!(self, DarbouxOutcome::Invariant { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DarbouxError {
    #[error("curve polynomial is constant")]
    ConstantCurve,
}

/// First integral `H` with `∂H/∂y = P`, `∂H/∂x = −Q`, `H(0,0) = 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HamiltonianResult {
    pub h: BivariatePoly,
    pub normalization: &'static str,
}

impl PolyField2D {
    pub fn new(degree: u32, p: BivariatePoly, q: BivariatePoly) -> Result<Self, FieldError> {
        if degree == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let mut rad = 1u64;
        for poly in [&p, &q] {
            for (&(i, j), c) in poly.terms() {
                if i + j > degree {
                    return Err(FieldError::TermAboveDegree { i, j, degree });
                }
                let r = c.radicand();
                if r != 1 {
                    if rad != 1 && rad != r {
                        return Err(FieldError::MixedRadicands(rad, r));
                    }
                    rad = r;
                }
            }
        }
        Ok(PolyField2D { degree, p, q })
    }

    /// Degree taken from the polynomials themselves (at least 1).
    pub fn from_polys(p: BivariatePoly, q: BivariatePoly) -> Result<Self, FieldError> {
        let d = p.degree().unwrap_or(0).max(q.degree().unwrap_or(0)).max(1);
        Self::new(d, p, q)
    }

    pub fn from_quadratic(c: &QuadraticCoeffs) -> Self {
        let p = BivariatePoly::from_terms(QUAD_EXPS.iter().zip(&c.a).map(|(e, v)| (*e, v.clone())));
        let q = BivariatePoly::from_terms(QUAD_EXPS.iter().zip(&c.b).map(|(e, v)| (*e, v.clone())));
        Self::new(2, p, q).expect("quadratic terms fit degree 2")
    }

    pub fn quadratic(&self) -> Result<QuadraticCoeffs, FieldError> {
        if self.degree > 2 {
            return Err(FieldError::NotQuadratic);
        }
        Ok(QuadraticCoeffs {
            a: QUAD_EXPS.map(|(i, j)| self.p.coeff(i, j)),
            b: QUAD_EXPS.map(|(i, j)| self.q.coeff(i, j)),
        })
    }

    pub fn zero(degree: u32) -> Self {
        Self::new(degree.max(1), BivariatePoly::zero(), BivariatePoly::zero()).expect("valid")
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn p(&self) -> &BivariatePoly {
        &self.p
    }

    pub fn q(&self) -> &BivariatePoly {
        &self.q
    }

    pub fn a(&self, i: u32, j: u32) -> Scalar {
        self.p.coeff(i, j)
    }

    pub fn b(&self, i: u32, j: u32) -> Scalar {
        self.q.coeff(i, j)
    }

    pub fn radicand(&self) -> u64 {
        self.p.radicand().max(self.q.radicand())
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn has_constant_terms(&self) -> bool {
        !self.a(0, 0).is_zero() || !self.b(0, 0).is_zero()
    }

    pub fn eval(&self, x: f64, y: f64) -> (f64, f64) {
        (self.p.eval_f64(x, y), self.q.eval_f64(x, y))
    }

    pub fn eval_exact(&self, x: &Scalar, y: &Scalar) -> (Scalar, Scalar) {
        (self.p.eval(x, y), self.q.eval(x, y))
    }

    pub fn jacobian(&self, x: f64, y: f64) -> [[f64; 2]; 2] {
        [
            [self.p.deriv_x().eval_f64(x, y), self.p.deriv_y().eval_f64(x, y)],
            [self.q.deriv_x().eval_f64(x, y), self.q.deriv_y().eval_f64(x, y)],
        ]
    }

    pub fn jacobian_exact(&self, x: &Scalar, y: &Scalar) -> [[Scalar; 2]; 2] {
        [
            [self.p.deriv_x().eval(x, y), self.p.deriv_y().eval(x, y)],
            [self.q.deriv_x().eval(x, y), self.q.deriv_y().eval(x, y)],
        ]
    }

    pub fn divergence(&self) -> BivariatePoly {
        &self.p.deriv_x() + &self.q.deriv_y()
    }

    pub fn is_hamiltonian(&self) -> bool {
        self.divergence().is_zero()
    }

    /// `H = ∫P dy + ∫(−Q − ∂ₓ∫P dy) dx`, which has no constant term.
    pub fn hamiltonian(&self) -> Result<HamiltonianResult, FieldError> {
        let div = self.divergence();
        if !div.is_zero() {
            return Err(FieldError::NotHamiltonian { divergence: div });
        }
        let py = self.p.integrate_y();
        let rest = &(-&self.q) - &py.deriv_x();
        let h = &py + &rest.integrate_x();
        Ok(HamiltonianResult {
            h,
            normalization: "H(0,0) = 0",
        })
    }

    /// `∇g·F`.
    pub fn lie_derivative(&self, g: &BivariatePoly) -> BivariatePoly {
        &(&g.deriv_x() * &self.p) + &(&g.deriv_y() * &self.q)
    }

    /// Decides whether `g = 0` is an invariant algebraic curve.
    pub fn darboux_check(&self, g: &BivariatePoly) -> Result<DarbouxOutcome, DarbouxError> {
        if g.is_constant() {
            return Err(DarbouxError::ConstantCurve);
        }
        let (k, r) = self.lie_derivative(g).divrem(g);
        Ok(if r.is_zero() {
            DarbouxOutcome::Invariant { cofactor: k }
        } else {
            DarbouxOutcome::NotInvariant { remainder: r }
        })
    }

    /// Multiplies both components by `c` (a time rescaling).
    pub fn scale(&self, c: &Scalar) -> Self {
        PolyField2D {
            degree: self.degree,
            p: self.p.scale(c),
            q: self.q.scale(c),
        }
    }

    /// The field in coordinates centred at `(x0, y0)`.
    pub fn translate(&self, x0: &Scalar, y0: &Scalar) -> Self {
        PolyField2D {
            degree: self.degree,
            p: self.p.translate(x0, y0),
            q: self.q.translate(x0, y0),
        }
    }

    /// Exchanges the roles of `x` and `y`.
    pub fn swap_xy(&self) -> Self {
        PolyField2D {
            degree: self.degree,
            p: self.q.swap_xy(),
            q: self.p.swap_xy(),
        }
    }

    /// The field in coordinates `X = c·x + s·y`, `Y = −s·x + c·y`.
    ///
    /// For `c² + s² = 1` this is a rotation; otherwise a rotation composed
    /// with the scaling `√(c²+s²)`. Curves map accordingly.
    pub fn similarity(&self, c: &Scalar, s: &Scalar) -> Self {
        let r2 = &(c * c) + &(s * s);
        let inv = r2.inv();
        // x = (cX − sY)/r², y = (sX + cY)/r²
        let xs = BivariatePoly::from_terms([((1, 0), c * &inv), ((0, 1), -(s * &inv))]);
        let ys = BivariatePoly::from_terms([((1, 0), s * &inv), ((0, 1), c * &inv)]);
        let pn = self.p.compose(&xs, &ys);
        let qn = self.q.compose(&xs, &ys);
        PolyField2D {
            degree: self.degree,
            p: &pn.scale(c) + &qn.scale(s),
            q: &qn.scale(c) - &pn.scale(s),
        }
    }

    /// Parses the system JSON schema; errors carry JSON pointers.
    pub fn from_json(v: &Value) -> Result<Self, SchemaError> {
        let obj = v.as_object().ok_or_else(|| schema("", "expected an object"))?;
        for k in obj.keys() {
            if !matches!(k.as_str(), "degree" | "a" | "b" | "name" | "description") {
                return Err(schema(format!("/{}", escape(k)), "unknown key"));
            }
        }
        let degree = match obj.get("degree") {
            None => return Err(schema("/degree", "missing")),
            Some(d) => d
                .as_u64()
                .filter(|&d| d > 0 && d <= 64)
                .ok_or_else(|| schema("/degree", "expected a positive integer"))? as u32,
        };
        let p = coeff_map(obj, "a", degree)?;
        let q = coeff_map(obj, "b", degree)?;
        let (rp, rq) = (p.radicand(), q.radicand());
        if rp != 1 && rq != 1 && rp != rq {
            return Err(schema("/b", format!("radicand √{rq} differs from √{rp} used in /a")));
        }
        Self::new(degree, p, q).map_err(|e| schema("", e.to_string()))
    }

    pub fn from_json_str(s: &str) -> Result<Self, SchemaError> {
        let v: Value = serde_json::from_str(s).map_err(|e| schema("", format!("invalid JSON: {e}")))?;
        Self::from_json(&v)
    }

    pub fn to_json(&self) -> Value {
        let enc = |poly: &BivariatePoly| {
            let mut m = Map::new();
            let sorted: BTreeMap<_, _> = poly.terms().map(|(e, c)| (*e, c.clone())).collect();
            for ((i, j), c) in sorted {
                m.insert(format!("{i},{j}"), serde_json::to_value(&c).expect("scalar serializes"));
            }
            Value::Object(m)
        };
        serde_json::json!({
            "degree": self.degree,
            "a": enc(&self.p),
            "b": enc(&self.q),
        })
    }

    /// Human-readable `ẋ = …, ẏ = …`.
    pub fn describe(&self) -> String {
        format!("x' = {}\ny' = {}", self.p, self.q)
    }
}

fn escape(k: &str) -> String {
    k.replace('~', "~0").replace('/', "~1")
}

fn coeff_map(obj: &Map<String, Value>, key: &str, degree: u32) -> Result<BivariatePoly, SchemaError> {
    let base = format!("/{key}");
    let m = match obj.get(key) {
        None => return Ok(BivariatePoly::zero()),
        Some(Value::Object(m)) => m,
        Some(_) => return Err(schema(base, "expected an object of \"i,j\": coefficient")),
    };
    let mut poly = BivariatePoly::zero();
    for (k, v) in m {
        let ptr = format!("{base}/{}", escape(k));
        let (i, j) = k
            .split_once(',')
            .and_then(|(i, j)| Some((i.trim().parse::<u32>().ok()?, j.trim().parse::<u32>().ok()?)))
            .ok_or_else(|| schema(ptr.clone(), "key must be \"i,j\" with non-negative integers"))?;
        if i + j > degree {
            return Err(schema(ptr, format!("i+j = {} exceeds degree {degree}", i + j)));
        }
        let c = scalar_from_json(v).map_err(|e| schema(ptr.clone(), e))?;
        if poly.terms().any(|(e, _)| *e == (i, j)) {
            return Err(schema(ptr, "duplicate exponent"));
        }
        if c.radicand() != 1 && poly.radicand() != 1 && c.radicand() != poly.radicand() {
            return Err(schema(ptr, "mixes two different quadratic extensions"));
        }
        poly.add_term((i, j), c);
    }
    Ok(poly)
}

/// Builds `ẋ`, `ẏ` from `(i, j, num, den)` tuples; handy for fixtures.
pub fn field_from_ints(degree: u32, a: &[(u32, u32, i64, i64)], b: &[(u32, u32, i64, i64)]) -> PolyField2D {
    PolyField2D::new(degree, BivariatePoly::from_int_terms(a), BivariatePoly::from_int_terms(b))
        .expect("valid fixture")
}

impl Default for PolyField2D {
    fn default() -> Self {
        Self::zero(1)
    }
}

/// `(p:q)` direction of a line, normalized so the first nonzero entry is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Direction {
    pub p: Scalar,
    pub q: Scalar,
}

impl Direction {
    pub fn slope(m: Scalar) -> Self {
        Direction { p: Scalar::one(), q: m }
    }

    pub fn vertical() -> Self {
        Direction {
            p: Scalar::zero(),
            q: Scalar::one(),
        }
    }

    pub fn is_vertical(&self) -> bool {
        self.p.is_zero()
    }
}
