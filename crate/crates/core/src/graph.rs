//! Tangency residuals on graphs `y = h(x)` (or `x = h(y)`).
//!
//! The residual `h'(x)·P(x, h(x)) − Q(x, h(x))` is expanded symbolically in
//! generalized monomials `xᵉ·mʲ·eᵏˣ`, where `e` may be a non-integer
//! exponent and `m` is a free family parameter. This lets one identity cover
//! a whole family such as `y = m·xᵏ` or `y = m·eˣ`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::field::PolyField2D;
use crate::poly::UniPoly;
use crate::scalar::Scalar;

/// Which coordinate the graph expresses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphDirection {
    YOfX,
    XOfY,
}

/// Supported graph expressions.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "class", rename_all = "kebab-case")]
pub enum GraphCurve {
    /// `h` is a fixed polynomial.
    Poly { h: UniPoly },
    /// `h = m·tᵏ` for every `m`; `k > 0`.
    Power { k: Scalar },
    /// `h = m·eᵗ` for every `m`.
    Exp,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("power exponent must be positive, got {0}")]
    NonPositiveExponent(String),
    #[error("power exponent must be rational for a polynomial field with surd exponents, got {0}")]
    UnsupportedExponent(String),
}

/// Key `(exponent of x, power of m, multiple of x in the exponential)`.
type GenKey = (Scalar, u32, u32);

/// Sum of `c·xᵉ·mʲ·eᵏˣ` terms; zero iff the graph is invariant.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GraphResidual {
    terms: BTreeMap<GenKey, Scalar>,
}

impl GraphResidual {
    fn add(&mut self, key: GenKey, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&key) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// For residuals that are ordinary polynomials in `x`.
    pub fn to_unipoly(&self) -> Option<UniPoly> {
        let mut v = Vec::new();
        for ((e, mp, ep), c) in &self.terms {
            if *mp != 0 || *ep != 0 {
                return None;
            }
            let r = e.as_rational()?;
            if !r.is_integer() || r < &num_rational::BigRational::zero() {
                return None;
            }
            let i: usize = r.to_integer().try_into().ok()?;
            if v.len() <= i {
                v.resize(i + 1, Scalar::zero());
            }
            v[i] = c.clone();
        }
        Some(UniPoly::new(v))
    }

    /// Numeric value for a concrete `x` and family parameter `m`.
    pub fn eval_f64(&self, x: f64, m: f64) -> f64 {
        self.terms
            .iter()
            .map(|((e, mp, ep), c)| c.to_f64() * x.powf(e.to_f64()) * m.powi(*mp as i32) * (*ep as f64 * x).exp())
            .sum()
    }
}

impl fmt::Display for GraphResidual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|((e, mp, ep), c)| {
                let mut s = format!("({c})");
                if !e.is_zero() {
                    s.push_str(&format!("*x^({e})"));
                }
                if *mp > 0 {
                    s.push_str(&format!("*m^{mp}"));
                }
                if *ep > 0 {
                    s.push_str(&format!("*exp({ep}x)"));
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `h'(t)·P(t, h(t)) − Q(t, h(t))` for `y = h(x)`; for `x = h(y)` the roles of
/// the components are exchanged.
pub fn lie_derivative_on_graph(
    field: &PolyField2D,
    curve: &GraphCurve,
    dir: GraphDirection,
) -> Result<GraphResidual, GraphError> {
    let f = match dir {
        GraphDirection::YOfX => field.clone(),
        GraphDirection::XOfY => field.swap_xy(),
    };
    // h and h' as residual-style sums
    let (h, dh) = match curve {
        GraphCurve::Poly { h } => {
            let conv = |p: &UniPoly| {
                let mut r = GraphResidual::default();
                for (i, c) in p.coeffs().iter().enumerate() {
                    r.add((Scalar::int(i as i64), 0, 0), c.clone());
                }
                r
            };
            (conv(h), conv(&h.derivative()))
        }
        GraphCurve::Power { k } => {
            if k.signum() <= 0 {
                return Err(GraphError::NonPositiveExponent(k.to_string()));
            }
            if !k.is_rational() && f.radicand() != 1 && k.radicand() != f.radicand() {
                return Err(GraphError::UnsupportedExponent(k.to_string()));
            }
            let mut h = GraphResidual::default();
            h.add((k.clone(), 1, 0), Scalar::one());
            let mut dh = GraphResidual::default();
            dh.add((k - &Scalar::one(), 1, 0), k.clone());
            (h, dh)
        }
        GraphCurve::Exp => {
            let mut h = GraphResidual::default();
            h.add((Scalar::zero(), 1, 1), Scalar::one());
            (h.clone(), h)
        }
    };
    let p_on = substitute(f.p(), &h);
    let q_on = substitute(f.q(), &h);
    let mut out = mul(&dh, &p_on);
    for (k, c) in q_on.terms {
        out.add(k, -c);
    }
    Ok(out)
}

fn mul(a: &GraphResidual, b: &GraphResidual) -> GraphResidual {
    let mut out = GraphResidual::default();
    for ((e1, m1, x1), c1) in &a.terms {
        for ((e2, m2, x2), c2) in &b.terms {
            out.add((e1 + e2, m1 + m2, x1 + x2), c1 * c2);
        }
    }
    out
}

fn substitute(p: &crate::poly::BivariatePoly, h: &GraphResidual) -> GraphResidual {
    let mut out = GraphResidual::default();
    let dy = p.degree_y().unwrap_or(0);
    let mut powers = vec![{
        let mut one = GraphResidual::default();
        one.add((Scalar::zero(), 0, 0), Scalar::one());
        one
    }];
    for k in 1..=dy as usize {
        let next = mul(&powers[k - 1], h);
        powers.push(next);
    }
    for (&(i, j), c) in p.terms() {
        for ((e, mp, ep), hc) in &powers[j as usize].terms {
            out.add((e + &Scalar::int(i as i64), *mp, *ep), c * hc);
        }
    }
    out
}
