//! Invariant parabolas: `y = m·x²`, `x = m·y²`, and rotated parabolas
//! `m1x² + m2xy + m3y² + m4x + m5y = 0` through the origin.

use num_traits::{One, Zero};

use super::{
    certify_darboux, certify_graph, require_quadratic_origin, Candidate, CurveKind, DetectError,
    InvariantReport, Multiplicity,
};
use crate::field::{PolyField2D, QuadraticCoeffs};
use crate::graph::{GraphCurve, GraphDirection};
use crate::poly::{BivariatePoly, UniPoly};
use crate::roots::RealValue;
use crate::scalar::Scalar;

/// Outcome of the axis-aligned parabola conditions.
enum AxisOutcome {
    Single(Scalar, String),
    Family(String),
    Degenerate(String),
    Fails(String),
}

/// Coefficient conditions for `y = m·x²`. `names` maps `a1..a5, b1..b5`
/// to the labels used in messages (the `x = m·y²` case relabels).
fn axis_conditions(c: &QuadraticCoeffs, names: &[&str; 10]) -> AxisOutcome {
    let (a1, a2, a3, a4, a5) = (c.a(1), c.a(2), c.a(3), c.a(4), c.a(5));
    let (b1, b2, b3, b4, b5) = (c.b(1), c.b(2), c.b(3), c.b(4), c.b(5));
    let n = |k: usize| names[k - 1];
    let nb = |k: usize| names[5 + k - 1];
    let two = Scalar::from(2);

    if !b1.is_zero() {
        return AxisOutcome::Fails(format!("{}=0 violated", nb(1)));
    }
    if *b4 != &two * a5 {
        return AxisOutcome::Fails(format!("{}=2{} violated", nb(4), n(5)));
    }
    if !a4.is_zero() {
        return AxisOutcome::Fails(format!("{}=0 violated", n(4)));
    }
    // remaining: (b2 − 2a1)m + b3 = 0 and b5 − 2a3 − 2a2·m = 0
    let lin1 = b2 - &(&two * a1);
    let lin2 = b5 - &(&two * a3);
    let base = format!("{}=0, {}=2{}, {}=0", nb(1), nb(4), n(5), n(4));
    match (b3.is_zero() && lin1.is_zero(), lin2.is_zero() && a2.is_zero()) {
        (true, true) => AxisOutcome::Family(format!(
            "{base}; {}=0, {}=2{}, {}=2{}, {}=0: every m",
            nb(3),
            nb(2),
            n(1),
            nb(5),
            n(3),
            n(2)
        )),
        (true, false) => {
            if a2.is_zero() {
                return AxisOutcome::Fails(format!("{}≠2{} with {}=0 leaves no m", nb(5), n(3), n(2)));
            }
            let m = &lin2 / &(&two * a2);
            if m.is_zero() {
                return AxisOutcome::Degenerate(base);
            }
            AxisOutcome::Single(
                m,
                format!(
                    "{base}; {}=0, {}=2{}, {}≠2{}, {}≠0: m=({}-2{})/(2{})",
                    nb(3),
                    nb(2),
                    n(1),
                    nb(5),
                    n(3),
                    n(2),
                    nb(5),
                    n(3),
                    n(2)
                ),
            )
        }
        (false, true) => {
            if lin1.is_zero() {
                return AxisOutcome::Fails(format!("{}≠0 with {}=2{} leaves no m", nb(3), nb(2), n(1)));
            }
            let m = -(b3 / &lin1);
            if m.is_zero() {
                return AxisOutcome::Degenerate(base);
            }
            AxisOutcome::Single(
                m,
                format!(
                    "{base}; {}=2{}, {}=0, {}≠0, {}≠2{}: m=-{}/({}-2{})",
                    nb(5),
                    n(3),
                    n(2),
                    nb(3),
                    nb(2),
                    n(1),
                    nb(3),
                    nb(2),
                    n(1)
                ),
            )
        }
        (false, false) => {
            if lin1.is_zero() || a2.is_zero() {
                return AxisOutcome::Fails(format!(
                    "the two linear equations for m are inconsistent ({}, {})",
                    if lin1.is_zero() { format!("{}≠0 but {}=2{}", nb(3), nb(2), n(1)) } else { "first solvable".into() },
                    if a2.is_zero() { format!("{}≠2{} but {}=0", nb(5), n(3), n(2)) } else { "second solvable".into() }
                ));
            }
            let m1 = -(b3 / &lin1);
            let m2 = &lin2 / &(&two * a2);
            if m1 != m2 {
                return AxisOutcome::Fails(format!(
                    "compatibility 2{a2n}{b3n}+{b2n}{b5n}-2{b2n}{a3n}-2{a1n}{b5n}+4{a1n}{a3n}=0 violated",
                    a2n = n(2),
                    b3n = nb(3),
                    b2n = nb(2),
                    b5n = nb(5),
                    a3n = n(3),
                    a1n = n(1)
                ));
            }
            if m1.is_zero() {
                return AxisOutcome::Degenerate(base);
            }
            AxisOutcome::Single(
                m1,
                format!(
                    "{base}; {}≠0, {}≠2{}, {}≠2{}, {}≠0 and the compatibility relation holds: m=-{}/({}-2{})",
                    nb(3),
                    nb(2),
                    n(1),
                    nb(5),
                    n(3),
                    n(2),
                    nb(3),
                    nb(2),
                    n(1)
                ),
            )
        }
    }
}

const NAMES_Y: [&str; 10] = ["a1", "a2", "a3", "a4", "a5", "b1", "b2", "b3", "b4", "b5"];
// swapped field: a'1=b2, a'2=b1, a'3=b4, a'4=b3, a'5=b5, b'1=a2, b'2=a1, b'3=a4, b'4=a3, b'5=a5
const NAMES_X: [&str; 10] = ["b2", "b1", "b4", "b3", "b5", "a2", "a1", "a4", "a3", "a5"];

fn parabola_report(
    field: &PolyField2D,
    name: &'static str,
    dir: GraphDirection,
) -> Result<InvariantReport, DetectError> {
    require_quadratic_origin(field)?;
    let work = match dir {
        GraphDirection::YOfX => field.clone(),
        GraphDirection::XOfY => field.swap_xy(),
    };
    let names = match dir {
        GraphDirection::YOfX => &NAMES_Y,
        GraphDirection::XOfY => &NAMES_X,
    };
    let coeffs = work.quadratic().map_err(|_| DetectError::NotQuadratic)?;
    let mut rep = InvariantReport::new(name);
    match axis_conditions(&coeffs, names) {
        AxisOutcome::Fails(msg) => rep.diag(msg),
        AxisOutcome::Degenerate(msg) => {
            rep.diag(format!("{msg}: only m=0, which is the line through the origin (reported by line detectors)"))
        }
        AxisOutcome::Single(m, clause) => {
            let h = UniPoly::new(vec![Scalar::zero(), Scalar::zero(), m.clone()]);
            match certify_graph(field, GraphCurve::Poly { h }, dir) {
                Some(certificate) => rep.candidates.push(Candidate {
                    kind: match dir {
                        GraphDirection::YOfX => CurveKind::ParabolaYofX { m: Some(RealValue::exact(m)) },
                        GraphDirection::XOfY => CurveKind::ParabolaXofY { m: Some(RealValue::exact(m)) },
                    },
                    multiplicity: Multiplicity::Single,
                    clause,
                    certificate,
                }),
                None => rep.diag(format!("m={m} failed the tangency verification")),
            }
        }
        AxisOutcome::Family(clause) => {
            match certify_graph(field, GraphCurve::Power { k: Scalar::from(2) }, dir) {
                Some(certificate) => rep.candidates.push(Candidate {
                    kind: match dir {
                        GraphDirection::YOfX => CurveKind::ParabolaYofX { m: None },
                        GraphDirection::XOfY => CurveKind::ParabolaXofY { m: None },
                    },
                    multiplicity: Multiplicity::InfiniteFamily,
                    clause,
                    certificate,
                }),
                None => rep.diag("family conditions hold but symbolic verification failed"),
            }
        }
    }
    Ok(rep)
}

/// Parabolas `y = m·x²`.
pub fn detect_parabola_y(field: &PolyField2D) -> Result<InvariantReport, DetectError> {
    parabola_report(field, "parabola-y", GraphDirection::YOfX)
}

/// Parabolas `x = m·y²`.
pub fn detect_parabola_x(field: &PolyField2D) -> Result<InvariantReport, DetectError> {
    parabola_report(field, "parabola-x", GraphDirection::XOfY)
}

/// Rotated parabolas through the origin.
///
/// Two routes feed the same exact verifier:
/// - the trigonometric closed form, valid when `a2 = b1 ≠ 0`, with the
///   branch angle `θ = ½·arccot((b2−a1)/b1) + kπ/2`;
/// - an eigen-direction frame: a parabola through an equilibrium is tangent
///   there to an eigenvector `(p, q)` of the Jacobian, so the axis-aligned
///   conditions are applied in the coordinates `X = px+qy, Y = −qx+py`.
pub fn detect_parabola_rotated(field: &PolyField2D) -> Result<InvariantReport, DetectError> {
    let c = require_quadratic_origin(field)?;
    if c.b(1).is_zero() {
        return Err(DetectError::Deferred(
            "b1=0: the rotation angle is undefined; use the axis-aligned parabola detectors".into(),
        ));
    }
    let mut rep = InvariantReport::new("parabola-rotated");
    let mut found: Vec<Vec<Scalar>> = Vec::new();
    trig_route(field, &c, &mut rep, &mut found);
    eigen_route(field, &c, &mut rep, &mut found);
    Ok(rep)
}

fn push_parabola(
    field: &PolyField2D,
    coeffs: Vec<Scalar>,
    clause: String,
    rep: &mut InvariantReport,
    found: &mut Vec<Vec<Scalar>>,
) -> bool {
    let Some(norm) = normalize(&coeffs) else {
        return false;
    };
    // a genuine parabola needs a nonzero quadratic part with zero discriminant
    let (m1, m2, m3) = (&norm[0], &norm[1], &norm[2]);
    if m1.is_zero() && m2.is_zero() && m3.is_zero() {
        return false;
    }
    if !(&(m2 * m2) - &(&Scalar::from(4) * &(m1 * m3))).is_zero() {
        return false;
    }
    if found.contains(&norm) {
        return true;
    }
    let mons = [(2, 0), (1, 1), (0, 2), (1, 0), (0, 1)];
    let g = BivariatePoly::from_terms(mons.iter().zip(&norm).map(|(e, v)| (*e, v.clone())));
    let Some(certificate) = certify_darboux(field, &g) else {
        rep.diag(format!("candidate {g} = 0 failed exact cofactor verification"));
        return false;
    };
    let mut theta = norm[3].to_f64().atan2(norm[4].to_f64());
    if theta < 0.0 {
        theta += std::f64::consts::PI;
    }
    if theta >= std::f64::consts::PI - 1e-15 {
        theta -= std::f64::consts::PI;
    }
    rep.candidates.push(Candidate {
        kind: CurveKind::RotatedParabola {
            m: norm.iter().cloned().map(RealValue::exact).collect(),
            theta,
        },
        multiplicity: Multiplicity::Single,
        clause,
        certificate,
    });
    found.push(norm);
    true
}

/// Scales so `max|mᵢ| = 1` with the first nonzero coefficient positive.
pub(crate) fn normalize(m: &[Scalar]) -> Option<Vec<Scalar>> {
    let max = m.iter().map(Scalar::abs).max()?;
    if max.is_zero() {
        return None;
    }
    let first = m.iter().find(|v| !v.is_zero())?;
    let s = if first.signum() < 0 { -max.inv() } else { max.inv() };
    Some(m.iter().map(|v| v * &s).collect())
}

fn trig_route(field: &PolyField2D, c: &QuadraticCoeffs, rep: &mut InvariantReport, found: &mut Vec<Vec<Scalar>>) {
    let (a1, a2, a3, a4, a5) = (c.a(1), c.a(2), c.a(3), c.a(4), c.a(5));
    let (b1, b2, b3, b4, b5) = (c.b(1), c.b(2), c.b(3), c.b(4), c.b(5));
    if a2 != b1 {
        rep.diag("closed-form route: a2=b1 violated");
        return;
    }
    let cot2 = &(b2 - a1) / b1;
    let cf = cot2.to_f64();
    let phi = 1f64.atan2(cf); // arccot in (0, π)
    let bf = [b1, b2, b3, b4, b5].map(Scalar::to_f64);
    let af = [a1, a2, a3, a4, a5].map(Scalar::to_f64);
    let scale = af.iter().chain(bf.iter()).fold(1f64, |m, v| m.max(v.abs()));
    // exact tan θ solves t² + 2·cot2·t − 1 = 0
    let disc = &(&cot2 * &cot2) + &Scalar::one();
    let sq = disc.sqrt_exact();
    for k in 0..4 {
        let th = phi / 2.0 + k as f64 * std::f64::consts::FRAC_PI_2;
        let (s, co) = th.sin_cos();
        let (s2, c2) = (2.0 * th).sin_cos();
        let tn = th.tan();
        let [_, _, b3f, b4f, b5f] = bf;
        let a3_pred = (b3f / co * (29.0 * s + (3.0 * th).sin()) - 2.0 * b4f * s2 + 2.0 * b5f * (3.0 + c2)) / 16.0;
        let a4_pred = tn / 8.0 * (b4f * (3.0 + c2) + tn * (-2.0 * b5f * s * s + b3f * (3.0 + c2) * tn));
        let a5_pred = 1.0 / (16.0 * co * co)
            * (-4.0 * b3f * (5.0 + c2) * s * s - 2.0 * (-5.0 * co + (3.0 * th).cos()) * (b4f * co + b5f * s));
        let tol = 1e-10 * scale;
        let ok = (a3_pred - af[2]).abs() <= tol && (a4_pred - af[3]).abs() <= tol && (a5_pred - af[4]).abs() <= tol;
        if !ok {
            rep.diag(format!("closed-form route: branch θ={th:.6} violates the a3/a4/a5 constraints"));
            continue;
        }
        let Some(sq) = sq.as_ref() else {
            rep.diag(format!(
                "closed-form route: branch θ={th:.6} passes but tan θ lies outside the coefficient field"
            ));
            continue;
        };
        let t = [&(-&cot2) + sq, &(-&cot2) - sq]
            .into_iter()
            .min_by(|x, y| (x.to_f64() - tn).abs().total_cmp(&(y.to_f64() - tn).abs()))
            .expect("two roots");
        if t.is_zero() {
            continue;
        }
        let one = Scalar::one();
        let tt = &t * &t;
        let den = &one + &tt;
        let sin2 = &(&Scalar::from(2) * &t) / &den;
        let cos2 = &(&one - &tt) / &den;
        let three_c = &Scalar::from(3) + &cos2;
        let big = &(b3 * &(&three_c * &three_c)) + &(&sin2 * &(&(b4 * &sin2) - &(b5 * &three_c)));
        if big.is_zero() {
            rep.diag(format!("closed-form route: branch θ={th:.6} gives a degenerate quadratic part"));
            continue;
        }
        let w = &(&(&(&Scalar::from(2) * b1) / &t) - b2) + &(b1 * &t);
        let sixteen = Scalar::from(16);
        let m = vec![
            one.clone(),
            &Scalar::from(-2) * &t,
            tt.clone(),
            &(&(&sixteen * &t) / &den) * &(&w / &big),
            &(&sixteen * &w) / &(&den * &big),
        ];
        push_parabola(
            field,
            m,
            format!("closed form with a2=b1, θ = ½·arccot((b2-a1)/b1) + {k}·π/2"),
            rep,
            found,
        );
    }
}

fn eigen_route(field: &PolyField2D, c: &QuadraticCoeffs, rep: &mut InvariantReport, found: &mut Vec<Vec<Scalar>>) {
    let (a1, a2, b1, b2) = (c.a(1), c.a(2), c.b(1), c.b(2));
    let tr = a1 + b2;
    let diff = a1 - b2;
    let disc = &(&diff * &diff) + &(&Scalar::from(4) * &(a2 * b1));
    if disc.signum() < 0 {
        rep.diag("eigen-direction route: complex eigenvalues, no real tangent direction");
        return;
    }
    let Some(sq) = disc.sqrt_exact() else {
        rep.diag("eigen-direction route: eigenvalues outside the coefficient field");
        return;
    };
    let half = Scalar::frac(1, 2);
    let mut dirs: Vec<(Scalar, Scalar)> = Vec::new();
    for lam in [&(&tr + &sq) * &half, &(&tr - &sq) * &half] {
        let v = if !a2.is_zero() {
            (a2.clone(), &lam - a1)
        } else if !b1.is_zero() {
            (&lam - b2, b1.clone())
        } else {
            continue;
        };
        if (v.0.radicand() != 1 && field.radicand() != 1 && v.0.radicand() != field.radicand())
            || (v.1.radicand() != 1 && field.radicand() != 1 && v.1.radicand() != field.radicand())
        {
            continue;
        }
        if !dirs.contains(&v) {
            dirs.push(v);
        }
    }
    for (p, q) in dirs {
        let frame = field.similarity(&p, &q);
        let Ok(fc) = frame.quadratic() else { continue };
        for (names, xform) in [(&NAMES_Y, false), (&NAMES_X, true)] {
            let coeffs = if xform {
                match frame.swap_xy().quadratic() {
                    Ok(v) => v,
                    Err(_) => continue,
                }
            } else {
                fc.clone()
            };
            if let AxisOutcome::Single(mu, _) = axis_conditions(&coeffs, names) {
                // Y = μX² (or X = μY²) with X = px+qy, Y = −qx+py
                let xl = BivariatePoly::from_terms([((1, 0), p.clone()), ((0, 1), q.clone())]);
                let yl = BivariatePoly::from_terms([((1, 0), -&q), ((0, 1), p.clone())]);
                let g = if xform {
                    &(&yl.pow(2)).scale(&mu) - &xl
                } else {
                    &(&xl.pow(2)).scale(&mu) - &yl
                };
                let m: Vec<Scalar> = [(2, 0), (1, 1), (0, 2), (1, 0), (0, 1)]
                    .iter()
                    .map(|&(i, j)| g.coeff(i, j))
                    .collect();
                push_parabola(
                    field,
                    m,
                    format!("axis-aligned conditions in the eigenvector frame ({p}, {q})"),
                    rep,
                    found,
                );
            }
        }
    }
}
