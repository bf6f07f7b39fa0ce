//! Upper bounds on the configuration of invariant lines of a degree-`n` field:
//! at most `n` lines in any parallel class and at most `n + 1` through a point.

use serde::Serialize;

use super::{same_line, Candidate, NumLine};

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ArtesCheck {
    /// Bounds do not apply when a family of invariant lines exists.
    pub skipped: bool,
    pub violations: Vec<String>,
}

const TOL: f64 = 1e-9;

pub fn validate_artes_bounds(candidates: &[Candidate], n: u32, has_family: bool) -> ArtesCheck {
    if has_family {
        return ArtesCheck { skipped: true, violations: Vec::new() };
    }
    let mut lines: Vec<NumLine> = Vec::new();
    for l in candidates.iter().filter_map(Candidate::as_line) {
        if !lines.iter().any(|s| same_line(s, &l)) {
            lines.push(l);
        }
    }
    let mut violations = Vec::new();
    // parallel classes
    let mut done = vec![false; lines.len()];
    for i in 0..lines.len() {
        if done[i] {
            continue;
        }
        let class: Vec<usize> = (i..lines.len()).filter(|&j| parallel(&lines[i], &lines[j])).collect();
        for &j in &class {
            done[j] = true;
        }
        if class.len() > n as usize {
            violations.push(format!("{} parallel lines exceed the bound {n}", class.len()));
        }
    }
    // concurrency at pairwise intersections
    let mut points: Vec<(f64, f64)> = Vec::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let (a, b) = (&lines[i], &lines[j]);
            let det = a.a * b.b - a.b * b.a;
            if det.abs() < TOL {
                continue;
            }
            let x = (a.b * b.c - b.b * a.c) / det;
            let y = (b.a * a.c - a.a * b.c) / det;
            if points.iter().any(|p| (p.0 - x).hypot(p.1 - y) < 1e-7) {
                continue;
            }
            points.push((x, y));
            let through = lines
                .iter()
                .filter(|l| (l.a * x + l.b * y + l.c).abs() <= 1e-7 * (1.0 + l.a.hypot(l.b)))
                .count();
            if through > n as usize + 1 {
                violations.push(format!("{through} lines through ({x:.6}, {y:.6}) exceed the bound {}", n + 1));
            }
        }
    }
    ArtesCheck { skipped: false, violations }
}

fn parallel(a: &NumLine, b: &NumLine) -> bool {
    (a.a * b.b - a.b * b.a).abs() <= TOL * a.a.hypot(a.b) * b.a.hypot(b.b)
}
