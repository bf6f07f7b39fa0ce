//! Static SVG quiver plots with zero-level curve overlays.

use std::collections::BTreeMap;
use std::fmt::Write;

/// Rectangular sampling grid, `steps` nodes per axis.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Grid {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
    pub steps: usize,
}

impl Grid {
    pub fn parse(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 5 {
            return Err(format!("grid must be xmin,xmax,ymin,ymax,steps; got {s:?}"));
        }
        let num = |i: usize| parts[i].parse::<f64>().map_err(|e| format!("grid field {}: {e}", i + 1));
        let steps = parts[4].parse::<usize>().map_err(|e| format!("grid steps: {e}"))?;
        let g = Self { xmin: num(0)?, xmax: num(1)?, ymin: num(2)?, ymax: num(3)?, steps };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<(), String> {
        let finite = [self.xmin, self.xmax, self.ymin, self.ymax].iter().all(|v| v.is_finite());
        if !finite || self.xmin >= self.xmax || self.ymin >= self.ymax || self.steps < 2 {
            return Err("empty grid: need xmin < xmax, ymin < ymax and at least 2 steps".into());
        }
        Ok(())
    }

    pub fn nodes(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let n = self.steps;
        (0..n).flat_map(move |j| (0..n).map(move |i| (self.x(i, n), self.y(j, n))))
    }

    fn x(&self, i: usize, n: usize) -> f64 {
        self.xmin + (self.xmax - self.xmin) * i as f64 / (n - 1) as f64
    }

    fn y(&self, j: usize, n: usize) -> f64 {
        self.ymin + (self.ymax - self.ymin) * j as f64 / (n - 1) as f64
    }
}

/// Edge of the contouring lattice: `(0, i, j)` joins node (i, j) to (i+1, j),
/// `(1, i, j)` joins (i, j) to (i, j+1).
type EdgeKey = (u8, usize, usize);

/// Zero set of `f` on `grid` by marching squares with `n` nodes per axis,
/// chained into polylines. Saddle cells are resolved by the cell-centre value.
pub fn contour(grid: &Grid, n: usize, f: impl Fn(f64, f64) -> f64) -> Vec<Vec<(f64, f64)>> {
    let v: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| f(grid.x(i, n), grid.y(j, n))).collect()).collect();
    let pos = |a: f64| a >= 0.0;
    let point = |e: EdgeKey| -> (f64, f64) {
        let (k, i, j) = e;
        let (i2, j2) = if k == 0 { (i + 1, j) } else { (i, j + 1) };
        let (a, b) = (v[i][j], v[i2][j2]);
        let s = if a == b { 0.5 } else { a / (a - b) };
        let (x1, y1) = (grid.x(i, n), grid.y(j, n));
        let (x2, y2) = (grid.x(i2, n), grid.y(j2, n));
        (x1 + s * (x2 - x1), y1 + s * (y2 - y1))
    };
    let mut segs: Vec<(EdgeKey, EdgeKey)> = Vec::new();
    for i in 0..n - 1 {
        for j in 0..n - 1 {
            let (v00, v10, v11, v01) = (v[i][j], v[i + 1][j], v[i + 1][j + 1], v[i][j + 1]);
            if ![v00, v10, v11, v01].iter().all(|a| a.is_finite()) {
                continue;
            }
            let (bottom, right, top, left) = ((0, i, j), (1, i + 1, j), (0, i, j + 1), (1, i, j));
            let mut cut = Vec::with_capacity(4);
            if pos(v00) != pos(v10) {
                cut.push(bottom);
            }
            if pos(v10) != pos(v11) {
                cut.push(right);
            }
            if pos(v11) != pos(v01) {
                cut.push(top);
            }
            if pos(v01) != pos(v00) {
                cut.push(left);
            }
            match cut.len() {
                2 => segs.push((cut[0], cut[1])),
                4 => {
                    let centre = 0.25 * (v00 + v10 + v11 + v01);
                    if pos(centre) == pos(v00) {
                        segs.push((bottom, right));
                        segs.push((top, left));
                    } else {
                        segs.push((bottom, left));
                        segs.push((top, right));
                    }
                }
                _ => {}
            }
        }
    }
    let mut adj: BTreeMap<EdgeKey, Vec<usize>> = BTreeMap::new();
    for (k, (a, b)) in segs.iter().enumerate() {
        adj.entry(*a).or_default().push(k);
        adj.entry(*b).or_default().push(k);
    }
    let mut used = vec![false; segs.len()];
    let mut out = Vec::new();
    for start in 0..segs.len() {
        if used[start] {
            continue;
        }
        used[start] = true;
        let mut chain = vec![segs[start].0, segs[start].1];
        // extend forwards, then backwards
        for _ in 0..2 {
            loop {
                let end = *chain.last().unwrap();
                let next = adj[&end].iter().copied().find(|&k| !used[k]);
                let Some(k) = next else { break };
                used[k] = true;
                let (a, b) = segs[k];
                chain.push(if a == end { b } else { a });
            }
            chain.reverse();
        }
        out.push(chain.into_iter().map(point).collect());
    }
    out
}

/// Labelled zero sets, each a list of polylines in data coordinates.
pub type Curves = Vec<(String, Vec<Vec<(f64, f64)>>)>;

/// Arrow field and overlays rendered on a fixed 640×640 canvas.
pub struct Plot<'a> {
    pub grid: Grid,
    pub arrows: &'a [(f64, f64, f64, f64)],
    pub curves: Curves,
}

const SIZE: f64 = 640.0;
const MARGIN: f64 = 20.0;

impl Plot<'_> {
    fn sx(&self, x: f64) -> f64 {
        MARGIN + (x - self.grid.xmin) / (self.grid.xmax - self.grid.xmin) * (SIZE - 2.0 * MARGIN)
    }

    fn sy(&self, y: f64) -> f64 {
        MARGIN + (self.grid.ymax - y) / (self.grid.ymax - self.grid.ymin) * (SIZE - 2.0 * MARGIN)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
        );
        s.push_str(concat!(
            r##"<defs><marker id="head" markerWidth="6" markerHeight="6" refX="5" refY="3" orient="auto">"##,
            r##"<path d="M0,0 L6,3 L0,6 z" fill="#444"/></marker></defs>"##,
            "\n"
        ));
        let _ = writeln!(s, r#"<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>"#);
        let (x0, y0) = (self.sx(0.0), self.sy(0.0));
        if (MARGIN..=SIZE - MARGIN).contains(&y0) {
            let _ = writeln!(s, r##"<line class="axis" x1="{MARGIN}" y1="{y0:.3}" x2="{:.3}" y2="{y0:.3}" stroke="#bbb"/>"##, SIZE - MARGIN);
        }
        if (MARGIN..=SIZE - MARGIN).contains(&x0) {
            let _ = writeln!(s, r##"<line class="axis" x1="{x0:.3}" y1="{MARGIN}" x2="{x0:.3}" y2="{:.3}" stroke="#bbb"/>"##, SIZE - MARGIN);
        }
        let cell = (SIZE - 2.0 * MARGIN) / (self.grid.steps.max(2) - 1) as f64;
        let len = 0.8 * cell;
        s.push_str("<g class=\"quiver\">\n");
        for &(x, y, dx, dy) in self.arrows {
            let (px, py) = (self.sx(x), self.sy(y));
            let norm = dx.hypot(dy);
            if norm == 0.0 || !norm.is_finite() {
                let _ = writeln!(s, r##"<circle cx="{px:.3}" cy="{py:.3}" r="1.5" fill="#444"/>"##);
                continue;
            }
            let (ux, uy) = (dx / norm * len * 0.5, -dy / norm * len * 0.5);
            let _ = writeln!(
                s,
                r##"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#444" marker-end="url(#head)"/>"##,
                px - ux,
                py - uy,
                px + ux,
                py + uy
            );
        }
        s.push_str("</g>\n");
        let palette = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];
        for (k, (label, lines)) in self.curves.iter().enumerate() {
            let colour = palette[k % palette.len()];
            let _ = writeln!(s, r#"<g class="curve" data-curve="{}">"#, escape(label));
            for line in lines {
                let pts: Vec<String> = line.iter().map(|&(x, y)| format!("{:.3},{:.3}", self.sx(x), self.sy(y))).collect();
                let _ = writeln!(s, r#"<polyline fill="none" stroke="{colour}" stroke-width="2" points="{}"/>"#, pts.join(" "));
            }
            s.push_str("</g>\n");
        }
        s.push_str("</svg>\n");
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}
