//! Cubic graphs, power-law families and exponential families.

use num_traits::Zero;

use super::{
    certify_graph, require_quadratic_origin, Candidate, CurveKind, DetectError, InvariantReport, Multiplicity,
};
use crate::field::PolyField2D;
use crate::graph::{GraphCurve, GraphDirection};
use crate::poly::UniPoly;
use crate::roots::RealValue;
use crate::scalar::Scalar;

/// The cubic `y = x³ + m·x² + u·x`.
pub fn detect_cubic(field: &PolyField2D) -> Result<InvariantReport, DetectError> {
    let c = require_quadratic_origin(field)?;
    let (a1, a2, a3, a4, a5) = (c.a(1), c.a(2), c.a(3), c.a(4), c.a(5));
    let (b1, b2, b3, b4, b5) = (c.b(1), c.b(2), c.b(3), c.b(4), c.b(5));
    let fail = |s: &str| Err(DetectError::ClauseViolated(s.into()));
    for (v, name) in [(a4, "a4=0"), (a2, "a2=0"), (b4, "b4=0"), (a5, "a5=0")] {
        if !v.is_zero() {
            return fail(&format!("{name} violated"));
        }
    }
    if *b5 != &Scalar::from(3) * a3 {
        return fail("b5=3a3 violated");
    }
    let k = |n: i64| Scalar::from(n);
    let constraint = &(&(&(&(&k(6) * &a1.pow(3)) + &(&k(2) * &(&a3.pow(2) * b1))) - &(&k(11) * &(&a1.pow(2) * b2)))
        - &b2.pow(3))
        - &(&(a3 * b2) * b3);
    let constraint = &constraint + &(a1 * &(&(&k(6) * &b2.pow(2)) + &(a3 * b3)));
    if !constraint.is_zero() {
        return fail("6a1^3+2a3^2b1-11a1^2b2-b2^3-a3b2b3+a1(6b2^2+a3b3)=0 violated");
    }
    if a3.is_zero() {
        return fail("a3≠0 violated");
    }
    if a1 == b2 {
        return fail("a1≠b2 violated");
    }
    let m = &(&(&k(3) * a1) - b2) / a3;
    let u = b1 / &(a1 - b2);
    let h = UniPoly::new(vec![Scalar::zero(), u.clone(), m.clone(), Scalar::from(1)]);
    let mut rep = InvariantReport::new("cubic");
    match certify_graph(field, GraphCurve::Poly { h }, GraphDirection::YOfX) {
        Some(certificate) => rep.candidates.push(Candidate {
            kind: CurveKind::Cubic {
                m: RealValue::exact(m),
                u: RealValue::exact(u),
            },
            multiplicity: Multiplicity::Single,
            clause: "a4=a2=b4=a5=0, b5=3a3, cubic compatibility relation, a3≠0, a1≠b2: m=(3a1-b2)/a3, u=b1/(a1-b2)"
                .into(),
            certificate,
        }),
        None => rep.diag(format!("y = x^3 + ({m})x^2 + ({u})x failed the tangency verification")),
    }
    Ok(rep)
}

/// The family `y = c·xᵏ` for all `c`, with a single exponent `k > 0`.
pub fn detect_power_family(field: &PolyField2D) -> Result<InvariantReport, DetectError> {
    let c = require_quadratic_origin(field)?;
    let (a1, a2, a3, a4, a5) = (c.a(1), c.a(2), c.a(3), c.a(4), c.a(5));
    let (b1, b2, b3, b4, b5) = (c.b(1), c.b(2), c.b(3), c.b(4), c.b(5));
    for (v, name) in [(b1, "b1=0"), (b3, "b3=0"), (a4, "a4=0"), (a2, "a2=0")] {
        if !v.is_zero() {
            return Err(DetectError::ClauseViolated(format!("{name} violated")));
        }
    }
    // b4 = k·a5, b5 = k·a3, b2 = k·a1
    let mut k: Option<(Scalar, &str)> = None;
    for (num, den, label) in [(b4, a5, "b4=k·a5"), (b5, a3, "b5=k·a3"), (b2, a1, "b2=k·a1")] {
        if den.is_zero() {
            if !num.is_zero() {
                return Err(DetectError::ClauseViolated(format!("{label} has no solution")));
            }
            continue;
        }
        let ki = num / den;
        match &k {
            None => k = Some((ki, label)),
            Some((k0, l0)) if *k0 != ki => {
                return Err(DetectError::InconsistentExponent(format!("{l0} gives k={k0} but {label} gives k={ki}")))
            }
            _ => {}
        }
    }
    let mut rep = InvariantReport::new("power-family");
    let Some((k, _)) = k else {
        rep.diag("all conditions hold for every k (the field is zero)");
        rep.candidates.push(Candidate {
            kind: CurveKind::PowerFamily { k: None },
            multiplicity: Multiplicity::InfiniteFamily,
            clause: "b1=b3=a4=a2=0 with a1=a3=a5=0 and b2=b4=b5=0".into(),
            certificate: super::Certificate::IdenticallyZero { what: "P and Q".into() },
        });
        return Ok(rep);
    };
    if k.signum() <= 0 {
        return Err(DetectError::ClauseViolated(format!("k>0 violated (k={k})")));
    }
    match certify_graph(field, GraphCurve::Power { k: k.clone() }, GraphDirection::YOfX) {
        Some(certificate) => rep.candidates.push(Candidate {
            kind: CurveKind::PowerFamily { k: Some(RealValue::exact(k)) },
            multiplicity: Multiplicity::InfiniteFamily,
            clause: "b1=b3=a4=a2=0 and b4=k·a5, b5=k·a3, b2=k·a1 with one k>0".into(),
            certificate,
        }),
        None => rep.diag(format!("k={k} failed the symbolic verification")),
    }
    Ok(rep)
}

/// The family `y = c·eˣ` for all `c`.
pub fn detect_exponential_family(field: &PolyField2D) -> Result<InvariantReport, DetectError> {
    let c = require_quadratic_origin(field)?;
    let (a1, a2, a3, a4, a5) = (c.a(1), c.a(2), c.a(3), c.a(4), c.a(5));
    let (b1, b2, b3, b4, b5) = (c.b(1), c.b(2), c.b(3), c.b(4), c.b(5));
    for (v, name) in [(a3, "a3"), (a4, "a4"), (a5, "a5"), (b1, "b1"), (b2, "b2"), (b3, "b3")] {
        if !v.is_zero() {
            return Err(DetectError::ClauseViolated(format!("{name}=0 violated")));
        }
    }
    if b4 != a2 {
        return Err(DetectError::ClauseViolated("b4=a2 violated".into()));
    }
    if b5 != a1 {
        return Err(DetectError::ClauseViolated("b5=a1 violated".into()));
    }
    let mut rep = InvariantReport::new("exponential-family");
    match certify_graph(field, GraphCurve::Exp, GraphDirection::YOfX) {
        Some(certificate) => rep.candidates.push(Candidate {
            kind: CurveKind::ExponentialFamily,
            multiplicity: Multiplicity::InfiniteFamily,
            clause: "a3=a4=a5=b1=b2=b3=0, b4=a2, b5=a1".into(),
            certificate,
        }),
        None => rep.diag("conditions hold but the symbolic verification failed"),
    }
    Ok(rep)
}
