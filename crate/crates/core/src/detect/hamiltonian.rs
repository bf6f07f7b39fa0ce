//! Separatrices of Hamiltonian fields and batch verification of curves.


use super::{Candidate, Certificate, CurveKind, DetectError, InvariantReport, Multiplicity};
use crate::equilibria::equilibria;
use crate::field::{DarbouxError, DarbouxOutcome, PolyField2D};
use crate::poly::BivariatePoly;
use crate::roots::RealValue;

/// Level sets of the Hamiltonian through each saddle.
///
/// Every level set of `H` is invariant (its cofactor is zero); the ones through
/// saddles carry the separatrices.
pub fn detect_separatrix(field: &PolyField2D) -> Result<InvariantReport, DetectError> {
    let h = field
        .hamiltonian()
        .map_err(|_| DetectError::NotHamiltonian(field.divergence()))?
        .h;
    let mut rep = InvariantReport::new("separatrix");
    let eqs = equilibria(field);
    for e in &eqs.points {
        let (x, y) = e.point();
        let j = field.jacobian(x, y);
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det >= 0.0 {
            continue;
        }
        let (c, certificate) = match e.exact() {
            Some((xe, ye)) => {
                let c = h.eval(&xe, &ye);
                let g = &h - &BivariatePoly::constant(c.clone());
                let certificate = if g.is_constant() {
                    Certificate::IdenticallyZero { what: "dH/dt".into() }
                } else {
                    Certificate::Cofactor {
                        curve: g,
                        cofactor: BivariatePoly::zero(),
                    }
                };
                (RealValue::exact(c), certificate)
            }
            None => (
                RealValue::approx(h.eval_f64(x, y)),
                Certificate::IdenticallyZero { what: "dH/dt".into() },
            ),
        };
        rep.candidates.push(Candidate {
            kind: CurveKind::LevelSet { h: h.clone(), c, through: (x, y) },
            multiplicity: Multiplicity::Single,
            clause: format!("saddle at ({}, {}) with det J = {det:.6}", e.x, e.y),
            certificate,
        });
    }
    if rep.candidates.is_empty() {
        rep.diag("no saddle equilibria");
    }
    Ok(rep)
}

/// Exact invariance check for each supplied curve.
pub fn verify_curves(field: &PolyField2D, curves: &[BivariatePoly]) -> Vec<Result<DarbouxOutcome, DarbouxError>> {
    curves.iter().map(|g| field.darboux_check(g)).collect()
}
