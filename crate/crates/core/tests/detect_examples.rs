//! Detector outputs on the bundled example systems.

use std::collections::BTreeSet;

use fracinv::corpus;
use fracinv::detect::{
    self, analyze, detect_cubic, detect_exponential_family, detect_lines_affine, detect_lines_axis,
    detect_lines_origin, detect_parabola_rotated, detect_parabola_x, detect_parabola_y, detect_power_family,
    detect_separatrix, recheck, Candidate, Certificate, CurveKind, DetectError, Multiplicity,
};
use fracinv::field::{field_from_ints, DarbouxOutcome};
use fracinv::poly::BivariatePoly;
use fracinv::scalar::Scalar;

fn q(n: i64, d: i64) -> Scalar {
    Scalar::frac(n, d)
}

fn origin_slopes(name: &str) -> BTreeSet<Scalar> {
    let f = corpus::load(name).unwrap();
    let r = detect_lines_origin(&f).unwrap();
    r.candidates
        .iter()
        .map(|c| match &c.kind {
            CurveKind::LineThroughOrigin { m: Some(m) } => m.exact.clone().expect("rational slope"),
            k => panic!("unexpected {k:?}"),
        })
        .collect()
}

fn line_set(name: &str) -> BTreeSet<String> {
    let f = corpus::load(name).unwrap();
    analyze(&f).lines.iter().map(Candidate::describe).collect()
}

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

#[test]
fn three_concurrent_lines() {
    assert_eq!(origin_slopes("lines_three_concurrent"), [q(0, 1), q(1, 1), q(-4, 1)].into());
    assert_eq!(line_set("lines_three_concurrent"), set(&["y = 0", "y = x", "y = -4*x"]));
}

#[test]
fn lines_with_vertical() {
    assert_eq!(origin_slopes("lines_with_vertical"), [q(3, 1), q(-1, 1)].into());
    let axis = detect_lines_axis(&corpus::load("lines_with_vertical").unwrap());
    assert_eq!(axis.candidates.iter().map(Candidate::describe).collect::<Vec<_>>(), vec!["x = 0"]);
}

#[test]
fn lines_from_linear_part() {
    assert_eq!(origin_slopes("lines_from_linear_part"), [q(4, 1), q(-2, 1)].into());
}

#[test]
fn lines_common_roots() {
    assert_eq!(origin_slopes("lines_common_roots"), [q(2, 1), q(3, 1)].into());
}

#[test]
fn all_lines_family() {
    let f = corpus::load("lines_all_through_origin").unwrap();
    let r = detect_lines_origin(&f).unwrap();
    assert!(r.has_family());
    assert_eq!(r.classification(), detect::Classification::InfiniteFamily);
    let a = analyze(&f);
    assert!(a.artes.skipped);
}

#[test]
fn shifted_equilibrium_lines() {
    let f = corpus::load("lines_shifted_equilibrium").unwrap();
    assert!(matches!(detect_lines_origin(&f), Err(DetectError::ConstantTerms { .. })));
    let r = detect_lines_affine(&f, &q(1, 1), &q(1, 1)).unwrap();
    let got: BTreeSet<String> = r.candidates.iter().map(Candidate::describe).collect();
    assert_eq!(got, set(&["y = 3*x - 2", "y = -x + 2", "x = 1"]));
    assert_eq!(line_set("lines_shifted_equilibrium"), set(&["x = 1", "y = 3*x - 2", "y = -x + 2"]));
}

#[test]
fn affine_detection_on_translated_field() {
    // oracle: translating the field moves its lines through the new equilibrium
    let base = corpus::load("lines_from_linear_part").unwrap();
    let f = base.translate(&q(-1, 1), &q(-2, 1));
    let r = detect_lines_affine(&f, &q(1, 1), &q(2, 1)).unwrap();
    let mut slopes = BTreeSet::new();
    for c in &r.candidates {
        if let CurveKind::AffineLine { direction: Some(d), .. } = &c.kind {
            if !d.is_vertical() {
                slopes.insert(&d.q.exact.clone().unwrap() / &d.p.exact.clone().unwrap());
            }
        }
    }
    assert_eq!(slopes, [q(4, 1), q(-2, 1)].into());
}

#[test]
fn affine_at_origin_matches_origin_detector() {
    let f = corpus::load("lines_three_concurrent").unwrap();
    let a = detect_lines_affine(&f, &q(0, 1), &q(0, 1)).unwrap();
    let o = detect_lines_origin(&f).unwrap();
    let la: BTreeSet<String> = a.candidates.iter().filter(|c| !c.describe().starts_with("x")).map(Candidate::describe).collect();
    let lo: BTreeSet<String> = o.candidates.iter().map(Candidate::describe).collect();
    assert_eq!(la, lo);
}

fn parabola_m(r: &detect::InvariantReport) -> Option<Option<Scalar>> {
    r.candidates.iter().find_map(|c| match &c.kind {
        CurveKind::ParabolaYofX { m } | CurveKind::ParabolaXofY { m } => Some(m.as_ref().map(|v| v.exact.clone().unwrap())),
        _ => None,
    })
}

#[test]
fn y_parabolas() {
    let cases = [
        ("parabola_y_linear_clause", Some(q(-1, 2))),
        ("parabola_y_constant_clause", Some(q(5, 8))),
        ("parabola_y_compatible", Some(q(1, 1))),
        ("parabola_y_family", None),
    ];
    for (name, want) in cases {
        let r = detect_parabola_y(&corpus::load(name).unwrap()).unwrap();
        assert_eq!(parabola_m(&r), Some(want), "{name}");
    }
}

#[test]
fn x_parabolas() {
    let cases = [
        ("parabola_x_linear_clause", Some(q(-3, 4))),
        ("parabola_x_constant_clause", Some(q(-1, 4))),
        ("parabola_x_compatible", Some(q(1, 2))),
        ("parabola_x_family", None),
    ];
    for (name, want) in cases {
        let r = detect_parabola_x(&corpus::load(name).unwrap()).unwrap();
        assert_eq!(parabola_m(&r), Some(want), "{name}");
    }
}

#[test]
fn x_parabola_clause_uses_original_names() {
    let r = detect_parabola_x(&corpus::load("parabola_x_compatible").unwrap()).unwrap();
    assert!(r.candidates[0].clause.starts_with("a2=0, a3=2b5, b3=0"), "{}", r.candidates[0].clause);
}

#[test]
fn rotated_parabola_with_surd_coefficients() {
    let f = corpus::load("rotated_parabola").unwrap();
    let r = detect_parabola_rotated(&f).unwrap();
    assert_eq!(r.candidates.len(), 1);
    let CurveKind::RotatedParabola { m, theta } = &r.candidates[0].kind else { panic!() };
    let s2 = 2f64.sqrt();
    let want = [5.0, -10.0, 5.0, -8.0 * s2, -8.0 * s2];
    let k = want.iter().fold(0f64, |a, v| a.max(v.abs()));
    for (got, w) in m.iter().zip(want) {
        assert!((got.approx - w / k).abs() < 1e-9, "{} vs {}", got.approx, w / k);
    }
    assert!((theta - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
    let g = r.candidates[0].implicit().unwrap();
    let want_g = BivariatePoly::from_terms([
        ((2, 0), Scalar::from(5)),
        ((1, 1), Scalar::from(-10)),
        ((0, 2), Scalar::from(5)),
        ((1, 0), &Scalar::from(-8) * &Scalar::sqrt_of(2)),
        ((0, 1), &Scalar::from(-8) * &Scalar::sqrt_of(2)),
    ]);
    assert!(g.is_proportional(&want_g));
    assert!(matches!(f.darboux_check(&want_g).unwrap(), DarbouxOutcome::Invariant { .. }));
}

#[test]
fn cubic_graph() {
    let f = corpus::load("cubic_graph").unwrap();
    let r = detect_cubic(&f).unwrap();
    let CurveKind::Cubic { m, u } = &r.candidates[0].kind else { panic!() };
    assert_eq!((m.exact.clone().unwrap(), u.exact.clone().unwrap()), (q(1, 1), q(-1, 1)));
    assert_eq!(r.candidates[0].describe(), "y = x^3 + x^2 - x");
    let r2 = detect_cubic(&f.scale(&Scalar::from(2))).unwrap();
    assert_eq!(r2.candidates[0].kind, r.candidates[0].kind);
}

#[test]
fn exponential_family() {
    let f = corpus::load("exponential_family").unwrap();
    let r = detect_exponential_family(&f).unwrap();
    assert!(r.has_family());
    // perturbing b4 away from a2 breaks both the conditions and the residual
    let g = field_from_ints(2, &[(1, 0, -2, 1), (0, 1, 3, 1)], &[(0, 2, 4, 1), (1, 1, -2, 1)]);
    assert_eq!(detect_exponential_family(&g).unwrap_err(), DetectError::ClauseViolated("b4=a2 violated".into()));
    let res = fracinv::graph::lie_derivative_on_graph(
        &g,
        &fracinv::graph::GraphCurve::Exp,
        fracinv::graph::GraphDirection::YOfX,
    )
    .unwrap();
    assert!(!res.is_zero());
}

#[test]
fn power_family_of_lines() {
    let f = corpus::load("lines_all_through_origin").unwrap();
    let r = detect_power_family(&f).unwrap();
    assert!(matches!(&r.candidates[0].kind, CurveKind::PowerFamily { k: Some(k) } if k.exact == Some(q(1, 1))));
}

#[test]
fn power_family_square_matches_parabola_family() {
    let f = field_from_ints(2, &[(1, 0, 1, 1), (2, 0, 1, 1)], &[(0, 1, 2, 1), (1, 1, 2, 1)]);
    let r = detect_power_family(&f).unwrap();
    assert!(matches!(&r.candidates[0].kind, CurveKind::PowerFamily { k: Some(k) } if k.exact == Some(q(2, 1))));
    assert_eq!(parabola_m(&detect_parabola_y(&f).unwrap()), Some(None));
    for m in [-3, -1, 1, 2, 7] {
        let h = fracinv::poly::UniPoly::new(vec![Scalar::from(0), Scalar::from(0), Scalar::from(m)]);
        let res = fracinv::graph::lie_derivative_on_graph(
            &f,
            &fracinv::graph::GraphCurve::Poly { h },
            fracinv::graph::GraphDirection::YOfX,
        )
        .unwrap();
        assert!(res.is_zero());
    }
}

#[test]
fn hamiltonian_separatrix() {
    let f = corpus::load("hamiltonian_homoclinic").unwrap();
    let h = f.hamiltonian().unwrap().h;
    let r6 = Scalar::sqrt_of(2).inv(); // 1/√2
    let want = BivariatePoly::from_terms([
        ((2, 0), q(-1, 2)),
        ((0, 2), q(1, 2)),
        ((3, 0), -&(&r6 / &Scalar::from(3))),
        ((1, 2), -&r6),
    ]);
    assert_eq!(h, want);
    let r = detect_separatrix(&f).unwrap();
    let origin = r
        .candidates
        .iter()
        .find(|c| matches!(&c.kind, CurveKind::LevelSet { through, .. } if *through == (0.0, 0.0)))
        .expect("saddle at the origin");
    let CurveKind::LevelSet { c, .. } = &origin.kind else { unreachable!() };
    assert_eq!(c.exact, Some(Scalar::from(0)));
    assert!(matches!(&origin.certificate, Certificate::Cofactor { cofactor, .. } if cofactor.is_zero()));
}

#[test]
fn separatrix_of_linear_saddle_is_the_line_pair() {
    let f = field_from_ints(1, &[(0, 1, 1, 1)], &[(1, 0, 1, 1)]);
    let r = detect_separatrix(&f).unwrap();
    let CurveKind::LevelSet { h, .. } = &r.candidates[0].kind else { panic!() };
    assert_eq!(h, &BivariatePoly::from_int_terms(&[(0, 2, 1, 2), (2, 0, -1, 2)]));
    let center = field_from_ints(1, &[(0, 1, 1, 1)], &[(1, 0, -1, 1)]);
    assert!(detect_separatrix(&center).unwrap().candidates.is_empty());
    let slopes: BTreeSet<Scalar> = detect_lines_origin(&f)
        .unwrap()
        .candidates
        .iter()
        .filter_map(|c| match &c.kind {
            CurveKind::LineThroughOrigin { m: Some(m) } => m.exact.clone(),
            _ => None,
        })
        .collect();
    assert_eq!(slopes, [q(1, 1), q(-1, 1)].into());
}

#[test]
fn printed_stable_and_unstable_conics() {
    // recorded outcome: neither printed conic is an invariant curve of the field
    let f = corpus::load("hamiltonian_homoclinic").unwrap();
    let r = Scalar::sqrt_of(2).inv();
    let s = BivariatePoly::from_terms([
        ((2, 0), q(1, 6)),
        ((1, 1), q(-1, 3)),
        ((0, 2), q(1, 6)),
        ((1, 0), r.clone()),
        ((0, 1), r.clone()),
    ]);
    let u = BivariatePoly::from_terms([
        ((2, 0), q(1, 6)),
        ((1, 1), q(1, 3)),
        ((0, 2), q(1, 6)),
        ((1, 0), r.clone()),
        ((0, 1), -&r),
    ]);
    let out = detect::verify_curves(&f, &[s, u]);
    for o in out {
        assert!(matches!(o.unwrap(), DarbouxOutcome::NotInvariant { .. }));
    }
}

#[test]
fn every_corpus_candidate_rechecks_and_artes_bounds_hold() {
    for (name, f) in corpus::all() {
        let a = analyze(&f);
        for c in a.candidates() {
            assert!(recheck(&f, c), "{name}: {}", c.describe());
        }
        assert!(a.artes.violations.is_empty(), "{name}: {:?}", a.artes.violations);
        if a.lines.iter().all(|c| c.multiplicity == Multiplicity::Single) {
            assert!(!a.artes.skipped, "{name}");
        }
    }
}

#[test]
fn artes_flags_three_parallel_lines() {
    let mk = |c: i64| Candidate {
        kind: CurveKind::HorizontalLine { l: Some(fracinv::roots::RealValue::exact(Scalar::from(c))) },
        multiplicity: Multiplicity::Single,
        clause: String::new(),
        certificate: Certificate::IdenticallyZero { what: String::new() },
    };
    let chk = detect::validate_artes_bounds(&[mk(0), mk(1), mk(2)], 2, false);
    assert_eq!(chk.violations.len(), 1);
}

#[test]
fn zero_field_summary() {
    let a = analyze(&corpus::load("zero_field").unwrap());
    let s = a.summary();
    assert!(s.contains("infinite family: all lines y = m*x"));
    assert!(s.contains("trivial flow"));
}
