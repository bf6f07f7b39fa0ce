//! Invariant straight lines: through the origin, axis-parallel, and through
//! other equilibria.

use num_traits::Zero;

use super::{
    certify_darboux, Candidate, Certificate, CurveKind, DetectError, InvariantReport, LineDirection,
    Multiplicity,
};
use crate::field::PolyField2D;
use crate::poly::{BivariatePoly, UniPoly};
use crate::roots::{real_roots, RealValue};
use crate::scalar::Scalar;

/// Subset enumeration is used up to this degree; beyond it the common
/// roots come straight from a gcd.
const ENUMERATION_MAX_DEGREE: u32 = 4;

/// `E_k(m) = b(k,0) + Σⱼ (b(k−j,j) − a(k−j+1,j−1))·mʲ − a(0,k)·mᵏ⁺¹`, for
/// `k = 1..=n`. The line `y = m·x` is invariant iff all vanish at `m`.
pub fn tangency_polynomials(field: &PolyField2D) -> Vec<UniPoly> {
    let n = field.degree();
    (1..=n)
        .map(|k| {
            let mut c = vec![Scalar::zero(); k as usize + 2];
            c[0] = field.b(k, 0);
            for j in 1..=k {
                c[j as usize] = field.b(k - j, j) - field.a(k - j + 1, j - 1);
            }
            c[k as usize + 1] = -field.a(0, k);
            UniPoly::new(c)
        })
        .collect()
}

fn quadratic_clause(nonzero: &[u32]) -> String {
    match nonzero {
        [] => "all tangency equations vanish identically (every line y=mx)".into(),
        [2] => "a2=0, b1=0, a1=b2; slopes from the cubic a4m^3+(a5-b4)m^2+(a3-b5)m-b3=0".into(),
        [1] => "a4=0, b3=0, a5=b4, a3=b5; slopes from b1+(b2-a1)m-a2m^2=0".into(),
        _ => "slopes are the common real roots of a2m^2+(a1-b2)m-b1=0 and a4m^3+(a5-b4)m^2+(a3-b5)m-b3=0"
            .into(),
    }
}

/// Invariant lines `y = m·x` of a field without constant terms.
pub fn detect_lines_origin(field: &PolyField2D) -> Result<InvariantReport, DetectError> {
    if field.has_constant_terms() {
        return Err(DetectError::ConstantTerms {
            a00: field.a(0, 0),
            b00: field.b(0, 0),
        });
    }
    let mut rep = InvariantReport::new("lines-origin");
    let polys = tangency_polynomials(field);
    let n = field.degree();
    let nonzero: Vec<u32> = (1..=n).filter(|&k| !polys[k as usize - 1].is_zero()).collect();

    if nonzero.is_empty() {
        rep.candidates.push(Candidate {
            kind: CurveKind::LineThroughOrigin { m: None },
            multiplicity: Multiplicity::InfiniteFamily,
            clause: if n == 2 {
                quadratic_clause(&[])
            } else {
                "b(k,0)=a(0,k)=0 and b(k-j,j)=a(k-j+1,j-1) for every k (every line y=mx)".into()
            },
            certificate: Certificate::IdenticallyZero {
                what: "tangency polynomials E_1..E_n".into(),
            },
        });
        return Ok(rep);
    }

    // choose which equations are solved for m; the rest must vanish identically
    let common = if n <= ENUMERATION_MAX_DEGREE {
        let mut consistent = 0usize;
        let mut g: Option<UniPoly> = None;
        for mask in 1u32..(1 << n) {
            let chosen: Vec<u32> = (1..=n).filter(|k| mask & (1 << (k - 1)) != 0).collect();
            if nonzero.iter().any(|k| !chosen.contains(k)) {
                continue;
            }
            consistent += 1;
            let gi = chosen
                .iter()
                .map(|&k| &polys[k as usize - 1])
                .fold(UniPoly::zero(), |acc, p| acc.gcd(p));
            g = Some(match g {
                None => gi,
                Some(prev) => {
                    // all consistent choices share the same nonzero equations
                    debug_assert_eq!(prev, gi);
                    prev
                }
            });
        }
        rep.diag(format!(
            "{consistent} of {} equation subsets are consistent; solved equations k = {:?}",
            (1u32 << n) - 1,
            nonzero
        ));
        g.expect("at least the full subset is consistent")
    } else {
        nonzero
            .iter()
            .map(|&k| &polys[k as usize - 1])
            .fold(UniPoly::zero(), |acc, p| acc.gcd(p))
    };

    let clause = if n == 2 {
        quadratic_clause(&nonzero)
    } else {
        format!("common real roots of the tangency equations E_k, k in {nonzero:?}")
    };
    if common.degree().unwrap_or(0) == 0 {
        rep.diag("tangency equations have no common root");
        return Ok(rep);
    }
    for m in real_roots(&common) {
        let cert = match &m.exact {
            Some(me) => {
                let g = &BivariatePoly::y() - &BivariatePoly::monomial(me.clone(), 1, 0);
                certify_darboux(field, &g)
            }
            None => None,
        };
        let cert = cert.or_else(|| algebraic_certificate(&polys, &m));
        match cert {
            Some(certificate) => rep.candidates.push(Candidate {
                kind: CurveKind::LineThroughOrigin { m: Some(m) },
                multiplicity: Multiplicity::Single,
                clause: clause.clone(),
                certificate,
            }),
            None => rep.diag(format!("slope {m} failed exact verification; dropped")),
        }
    }
    Ok(rep)
}

fn algebraic_certificate(polys: &[UniPoly], m: &RealValue) -> Option<Certificate> {
    let g = m.minpoly.as_ref()?;
    polys
        .iter()
        .all(|p| p.divrem(g).1.is_zero())
        .then(|| Certificate::AlgebraicSlope { minpoly: g.clone() })
}

/// Lines `x = k` and `y = l`; constant terms are allowed.
pub fn detect_lines_axis(field: &PolyField2D) -> InvariantReport {
    let mut rep = InvariantReport::new("lines-axis");
    for vertical in [true, false] {
        // x = k invariant iff P(k, y) ≡ 0; y = l iff Q(x, l) ≡ 0
        let (poly, name) = if vertical {
            (field.p().clone(), "x")
        } else {
            (field.q().swap_xy(), "y")
        };
        let coeffs = poly.y_coeffs();
        let clause = if vertical {
            "sum_j (sum_i a(i,j) k^i) y^j vanishes for all y"
        } else {
            "sum_i (sum_j b(i,j) l^j) x^i vanishes for all x"
        };
        if poly.is_zero() {
            rep.candidates.push(Candidate {
                kind: if vertical {
                    CurveKind::VerticalLine { k: None }
                } else {
                    CurveKind::HorizontalLine { l: None }
                },
                multiplicity: Multiplicity::InfiniteFamily,
                clause: clause.into(),
                certificate: Certificate::IdenticallyZero {
                    what: if vertical { "P".into() } else { "Q".into() },
                },
            });
            continue;
        }
        let g = coeffs.iter().fold(UniPoly::zero(), |acc, c| acc.gcd(c));
        if g.degree().unwrap_or(0) == 0 {
            continue;
        }
        for v in real_roots(&g) {
            let cert = match &v.exact {
                Some(e) => {
                    let lin = if vertical {
                        &BivariatePoly::x() - &BivariatePoly::constant(e.clone())
                    } else {
                        &BivariatePoly::y() - &BivariatePoly::constant(e.clone())
                    };
                    certify_darboux(field, &lin)
                }
                None => v.minpoly.as_ref().and_then(|mp| {
                    coeffs
                        .iter()
                        .all(|c| c.divrem(mp).1.is_zero())
                        .then(|| Certificate::AlgebraicSlope { minpoly: mp.clone() })
                }),
            };
            match cert {
                Some(certificate) => rep.candidates.push(Candidate {
                    kind: if vertical {
                        CurveKind::VerticalLine { k: Some(v) }
                    } else {
                        CurveKind::HorizontalLine { l: Some(v) }
                    },
                    multiplicity: Multiplicity::Single,
                    clause: clause.into(),
                    certificate,
                }),
                None => rep.diag(format!("{name} = {v} failed exact verification")),
            }
        }
    }
    rep
}

/// Lines through an equilibrium `(x0, y0)`, found by recentring the field.
pub fn detect_lines_affine(field: &PolyField2D, x0: &Scalar, y0: &Scalar) -> Result<InvariantReport, DetectError> {
    let (u, v) = field.eval_exact(x0, y0);
    if !(u.is_zero() && v.is_zero()) {
        return Err(DetectError::NotEquilibrium {
            x0: x0.clone(),
            y0: y0.clone(),
        });
    }
    let shifted = field.translate(x0, y0);
    let inner = detect_lines_origin(&shifted)?;
    let mut rep = InvariantReport::new("lines-affine");
    rep.diagnostics = inner.diagnostics;
    let (px, py) = (RealValue::exact(x0.clone()), RealValue::exact(y0.clone()));
    let clause_of = |c: &str| format!("recentred at ({x0}, {y0}): {c}");
    for c in inner.candidates {
        match c.kind {
            CurveKind::LineThroughOrigin { m: None } => rep.candidates.push(Candidate {
                kind: CurveKind::AffineLine {
                    x0: px.clone(),
                    y0: py.clone(),
                    direction: None,
                },
                multiplicity: Multiplicity::InfiniteFamily,
                clause: clause_of(&c.clause),
                certificate: c.certificate,
            }),
            CurveKind::LineThroughOrigin { m: Some(m) } => {
                let cert = match &m.exact {
                    Some(me) => {
                        // y − y0 − m(x − x0)
                        let g = &(&BivariatePoly::y() - &BivariatePoly::constant(y0.clone()))
                            - &(&BivariatePoly::x() - &BivariatePoly::constant(x0.clone()))
                                .scale(me);
                        certify_darboux(field, &g)
                    }
                    None => Some(c.certificate.clone()),
                };
                if let Some(certificate) = cert {
                    rep.candidates.push(Candidate {
                        kind: CurveKind::AffineLine {
                            x0: px.clone(),
                            y0: py.clone(),
                            direction: Some(LineDirection::slope(m)),
                        },
                        multiplicity: Multiplicity::Single,
                        clause: clause_of(&c.clause),
                        certificate,
                    });
                }
            }
            _ => {}
        }
    }
    // the vertical through the equilibrium
    let vert = &BivariatePoly::x() - &BivariatePoly::constant(x0.clone());
    if let Some(certificate) = certify_darboux(field, &vert) {
        rep.candidates.push(Candidate {
            kind: CurveKind::AffineLine {
                x0: px,
                y0: py,
                direction: Some(LineDirection::vertical()),
            },
            multiplicity: Multiplicity::Single,
            clause: clause_of("P(x0, y) vanishes for all y"),
            certificate,
        });
    }
    Ok(rep)
}
