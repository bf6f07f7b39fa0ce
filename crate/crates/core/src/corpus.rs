//! Bundled example systems, embedded at compile time.

use crate::field::PolyField2D;

const FILES: &[(&str, &str)] = &[
    ("cubic_graph", include_str!("../corpus/cubic_graph.json")),
    ("exponential_family", include_str!("../corpus/exponential_family.json")),
    ("fractional_invariant_lines", include_str!("../corpus/fractional_invariant_lines.json")),
    ("hamiltonian_homoclinic", include_str!("../corpus/hamiltonian_homoclinic.json")),
    ("linear_spiral", include_str!("../corpus/linear_spiral.json")),
    ("lines_all_through_origin", include_str!("../corpus/lines_all_through_origin.json")),
    ("lines_common_roots", include_str!("../corpus/lines_common_roots.json")),
    ("lines_from_linear_part", include_str!("../corpus/lines_from_linear_part.json")),
    ("lines_shifted_equilibrium", include_str!("../corpus/lines_shifted_equilibrium.json")),
    ("lines_three_concurrent", include_str!("../corpus/lines_three_concurrent.json")),
    ("lines_with_vertical", include_str!("../corpus/lines_with_vertical.json")),
    ("parabola_x_compatible", include_str!("../corpus/parabola_x_compatible.json")),
    ("parabola_x_constant_clause", include_str!("../corpus/parabola_x_constant_clause.json")),
    ("parabola_x_family", include_str!("../corpus/parabola_x_family.json")),
    ("parabola_x_linear_clause", include_str!("../corpus/parabola_x_linear_clause.json")),
    ("parabola_y_compatible", include_str!("../corpus/parabola_y_compatible.json")),
    ("parabola_y_constant_clause", include_str!("../corpus/parabola_y_constant_clause.json")),
    ("parabola_y_family", include_str!("../corpus/parabola_y_family.json")),
    ("parabola_y_linear_clause", include_str!("../corpus/parabola_y_linear_clause.json")),
    ("rotated_parabola", include_str!("../corpus/rotated_parabola.json")),
    ("stable_manifold_counterexample", include_str!("../corpus/stable_manifold_counterexample.json")),
    ("zero_field", include_str!("../corpus/zero_field.json")),
];

/// Names of all bundled systems, sorted.
pub fn names() -> Vec<&'static str> {
    FILES.iter().map(|(n, _)| *n).collect()
}

/// Raw JSON text of a bundled system.
pub fn source(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// Parses a bundled system.
pub fn load(name: &str) -> Option<PolyField2D> {
    source(name).map(|s| PolyField2D::from_json_str(s).expect("bundled corpus parses"))
}

/// Every bundled system with its name.
pub fn all() -> Vec<(&'static str, PolyField2D)> {
    FILES
        .iter()
        .map(|(n, s)| (*n, PolyField2D::from_json_str(s).expect("bundled corpus parses")))
        .collect()
}
