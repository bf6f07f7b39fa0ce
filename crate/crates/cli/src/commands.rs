use std::collections::BTreeMap;
use std::path::Path;

use fracinv::audit::{
    curve_invariance_check, restart_divergence, stable_manifold_audit, subspace_invariance_check, AuditError,
    AuditResult, Line, SubspaceOptions, Verdict,
};
use fracinv::corpus;
use fracinv::detect::{analyze as run_detectors, CurveKind};
use fracinv::field::PolyField2D;
use fracinv::fractional::mittag_leffler::{ml_detailed, DEFAULT_TOL};
use fracinv::fractional::{fam_solve, rk4_solve, FractionalError, FractionalSystem, MlError, Trajectory};
use fracinv::poly::BivariatePoly;
use fracinv::scalar::Scalar;
use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::output::{sha256_hex, OutDir};
use crate::svg::{contour, Curves, Grid, Plot};
use crate::{AnalyzeArgs, AuditArgs, CliError, FieldArgs, Format, MlArgs, OutputArgs, Preset, SimulateArgs};

type Result<T> = std::result::Result<T, CliError>;

/// A parsed system and the bytes it came from.
struct LoadedSystem {
    spec: String,
    raw: String,
    field: PolyField2D,
}

/// Reads `spec` as a file path, falling back to a bundled corpus name.
fn load_system(spec: &str) -> Result<LoadedSystem> {
    let path = Path::new(spec);
    let raw = if path.is_file() {
        std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{spec}: {e}")))?
    } else if let Some(src) = corpus::source(spec) {
        src.to_string()
    } else {
        return Err(CliError::Input(format!("{spec}: no such file or bundled system")));
    };
    let field = PolyField2D::from_json_str(&raw).map_err(|e| {
        let at = if e.pointer.is_empty() { "/" } else { e.pointer.as_str() };
        CliError::Input(format!("{spec}: schema error at {at}: {}", e.message))
    })?;
    Ok(LoadedSystem { spec: spec.to_string(), raw, field })
}

/// Normalized run configuration; its canonical JSON is hashed into the sidecar.
#[derive(Debug, Default, Serialize)]
struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    system: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    system_sha256: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    h: Option<f64>,
    #[serde(rename = "T", skip_serializing_if = "Option::is_none")]
    horizon: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    t_star: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    x0: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    preset: Option<Preset>,
    formats: Vec<Format>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    extra: BTreeMap<String, Value>,
}

impl RunConfig {
    fn with_system(sys: &LoadedSystem) -> Self {
        Self { system: Some(sys.spec.clone()), system_sha256: Some(sha256_hex(sys.raw.as_bytes())), ..Self::default() }
    }
}

fn check_alpha(alpha: f64) -> Result<f64> {
    if alpha > 0.0 && alpha <= 1.0 {
        Ok(alpha)
    } else {
        Err(CliError::Input(format!("--alpha must lie in (0, 1], got {alpha}")))
    }
}

fn check_positive(name: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Input(format!("--{name} must be positive and finite, got {v}")))
    }
}

fn point(name: &str, v: &[f64]) -> Result<[f64; 2]> {
    match v {
        [x, y] if x.is_finite() && y.is_finite() => Ok([*x, *y]),
        _ => Err(CliError::Input(format!("--{name} expects two finite numbers `x,y`"))),
    }
}

fn formats(out: &OutputArgs, allowed: &[Format], default: &[Format]) -> Result<Vec<Format>> {
    let mut f = if out.format.is_empty() { default.to_vec() } else { out.format.clone() };
    f.sort();
    f.dedup();
    if let Some(bad) = f.iter().find(|x| !allowed.contains(x)) {
        return Err(CliError::Input(format!("format {bad:?} is not produced by this command")));
    }
    Ok(f)
}

fn fractional_error(e: FractionalError) -> CliError {
    match e {
        FractionalError::InvalidParameter(m) => CliError::Input(m),
        FractionalError::MittagLeffler(e) => ml_error(e),
        e => CliError::Numerical(e.to_string()),
    }
}

fn ml_error(e: MlError) -> CliError {
    match e {
        MlError::InvalidParameter(m) => CliError::Input(m),
        MlError::Overflow(_) => CliError::BlowUp(e.to_string()),
        e => CliError::Numerical(e.to_string()),
    }
}

fn audit_error(e: AuditError) -> CliError {
    match e {
        AuditError::Precondition(m) => CliError::Input(m),
        AuditError::BlowUp(_) => CliError::BlowUp(e.to_string()),
        AuditError::Fractional(e) => fractional_error(e),
    }
}

fn pretty<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| CliError::Numerical(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn analyze(args: AnalyzeArgs) -> Result<()> {
    let fmts = formats(&args.output, &[Format::Json], &[Format::Json])?;
    let sys = load_system(&args.system)?;
    let analysis = run_detectors(&sys.field);
    let summary = analysis.summary();
    let Some(dir) = &args.output.out else {
        if args.output.format.is_empty() {
            print!("{summary}");
        } else {
            print!("{}", pretty(&analysis)?);
        }
        return Ok(());
    };
    let mut out = OutDir::create(dir)?;
    out.write("analysis.json", pretty(&analysis)?.as_bytes())?;
    out.write("summary.txt", summary.as_bytes())?;
    let cfg = RunConfig { formats: fmts, ..RunConfig::with_system(&sys) };
    out.write_sidecar("analyze", &cfg)?;
    print!("{summary}");
    Ok(())
}

fn integrate(system: &FractionalSystem, h: f64, horizon: f64) -> Result<Trajectory> {
    let tr = if system.alpha == 1.0 { rk4_solve(system, h, horizon) } else { fam_solve(system, h, horizon) };
    tr.map_err(fractional_error)
}

pub fn simulate(args: SimulateArgs) -> Result<()> {
    let fmts = formats(&args.output, &[Format::Csv, Format::Json], &[Format::Csv])?;
    let alpha = check_alpha(args.alpha)?;
    let h = check_positive("h", args.h)?;
    let horizon = check_positive("T", args.horizon)?;
    let x0 = point("x0", &args.x0)?;
    let sys = load_system(&args.system)?;
    let system = FractionalSystem::field(alpha, sys.field.clone(), x0).map_err(fractional_error)?;
    let tr = integrate(&system, h, horizon)?;
    match &args.output.out {
        None => {
            if fmts == [Format::Json] {
                print!("{}", pretty(&tr)?);
            } else {
                print!("{}", tr.to_csv());
            }
        }
        Some(dir) => {
            let mut out = OutDir::create(dir)?;
            if fmts.contains(&Format::Csv) {
                out.write("trajectory.csv", tr.to_csv().as_bytes())?;
            }
            if fmts.contains(&Format::Json) {
                out.write("trajectory.json", pretty(&tr)?.as_bytes())?;
            }
            let cfg = RunConfig {
                alpha: Some(alpha),
                h: Some(h),
                horizon: Some(horizon),
                x0: Some(x0),
                formats: fmts,
                extra: BTreeMap::from([("method".into(), json!(tr.method))]),
                ..RunConfig::with_system(&sys)
            };
            out.write_sidecar("simulate", &cfg)?;
        }
    }
    match tr.blow_up {
        Some(t) => Err(CliError::BlowUp(format!("trajectory blew up at t={t}; partial output written"))),
        None => Ok(()),
    }
}

/// Linear homogeneous fields run through the matrix right-hand side, which
/// also enables the exact-flow comparison.
fn system_for(field: &PolyField2D, alpha: f64, x0: [f64; 2]) -> Result<FractionalSystem> {
    let linear = field.p().terms().chain(field.q().terms()).all(|((i, j), _)| i + j == 1);
    if linear {
        let c = |p: &BivariatePoly, i, j| p.coeff(i, j).to_f64();
        let (p, q) = (field.p(), field.q());
        let a = Matrix2::new(c(p, 1, 0), c(p, 0, 1), c(q, 1, 0), c(q, 0, 1));
        FractionalSystem::matrix(alpha, a, x0).map_err(fractional_error)
    } else {
        FractionalSystem::field(alpha, field.clone(), x0).map_err(fractional_error)
    }
}

/// `{"i,j": coeff}` in the system coefficient syntax.
fn parse_curve(text: &str) -> Result<BivariatePoly> {
    let v: Value = serde_json::from_str(text).map_err(|e| CliError::Input(format!("--curve: invalid JSON: {e}")))?;
    let obj = v.as_object().ok_or_else(|| CliError::Input("--curve: expected an object".into()))?;
    let mut degree = 1;
    for k in obj.keys() {
        let parts: Vec<u32> = k.split(',').filter_map(|s| s.trim().parse().ok()).collect();
        if let [i, j] = parts[..] {
            degree = degree.max(i + j);
        }
    }
    let wrapped = json!({"degree": degree, "a": v});
    let f = PolyField2D::from_json(&wrapped).map_err(|e| {
        let at = e.pointer.strip_prefix("/a").unwrap_or(&e.pointer);
        CliError::Input(format!("--curve: schema error at {}: {}", if at.is_empty() { "/" } else { at }, e.message))
    })?;
    if f.p().is_zero() {
        return Err(CliError::Input("--curve: zero polynomial".into()));
    }
    Ok(f.p().clone())
}

fn nearest_line(field: &PolyField2D, x0: [f64; 2]) -> Result<Line> {
    let a = run_detectors(field);
    a.lines
        .iter()
        .filter_map(Line::from_candidate)
        .min_by(|l, m| l.distance(x0[0], x0[1]).total_cmp(&m.distance(x0[0], x0[1])))
        .ok_or_else(|| CliError::Input("no invariant line detected; pass --line".into()))
}

fn nearest_curve(field: &PolyField2D, x0: [f64; 2]) -> Result<BivariatePoly> {
    let a = run_detectors(field);
    a.candidates()
        .filter(|c| !c.is_linear())
        .filter_map(|c| c.implicit())
        .min_by(|g, k| g.eval_f64(x0[0], x0[1]).abs().total_cmp(&k.eval_f64(x0[0], x0[1]).abs()))
        .ok_or_else(|| CliError::Input("no invariant curve detected; pass --curve".into()))
}

pub fn audit(args: AuditArgs) -> Result<()> {
    let fmts = formats(&args.output, &[Format::Json, Format::Csv], &[Format::Json, Format::Csv])?;
    let default_system = match args.preset {
        Preset::Semigroup => Some("linear_spiral"),
        Preset::Subspace => Some("fractional_invariant_lines"),
        Preset::Curve => Some("stable_manifold_counterexample"),
        Preset::Cong => None,
    };
    let sys = match (&args.system, default_system) {
        (_, None) => None,
        (Some(s), _) => Some(load_system(s)?),
        (None, Some(d)) => Some(load_system(d)?),
    };
    let x0_arg = if args.x0.is_empty() { None } else { Some(point("x0", &args.x0)?) };
    let mut cfg = sys.as_ref().map(RunConfig::with_system).unwrap_or_default();
    cfg.preset = Some(args.preset);
    let result: AuditResult = match args.preset {
        Preset::Semigroup => {
            let sys = sys.as_ref().unwrap();
            let alpha = check_alpha(args.alpha.unwrap_or(0.7))?;
            let h = check_positive("h", args.h.unwrap_or(2f64.powi(-9)))?;
            let horizon = check_positive("T", args.horizon.unwrap_or(1.0))?;
            let t_star = check_positive("tstar", args.tstar.unwrap_or(0.3))?;
            let x0 = x0_arg.unwrap_or([1.0, 1.0]);
            (cfg.alpha, cfg.h, cfg.horizon, cfg.t_star, cfg.x0) = (Some(alpha), Some(h), Some(horizon), Some(t_star), Some(x0));
            restart_divergence(&system_for(&sys.field, alpha, x0)?, t_star, horizon, h).map_err(audit_error)?
        }
        Preset::Subspace => {
            let sys = sys.as_ref().unwrap();
            let alpha = check_alpha(args.alpha.unwrap_or(0.75))?;
            let h = check_positive("h", args.h.unwrap_or(2f64.powi(-8)))?;
            let horizon = check_positive("T", args.horizon.unwrap_or(1.0))?;
            let x0 = x0_arg.unwrap_or([0.1, 0.3]);
            let line = match args.line {
                Some(m) => Line::through_origin(m),
                None => nearest_line(&sys.field, x0)?,
            };
            (cfg.alpha, cfg.h, cfg.horizon, cfg.x0) = (Some(alpha), Some(h), Some(horizon), Some(x0));
            cfg.extra.insert("line".into(), json!(line));
            cfg.extra.insert("force".into(), json!(args.force));
            let system = FractionalSystem::field(alpha, sys.field.clone(), x0).map_err(fractional_error)?;
            subspace_invariance_check(&system, &line, horizon, SubspaceOptions { h, force: args.force })
                .map_err(audit_error)?
        }
        Preset::Curve => {
            let sys = sys.as_ref().unwrap();
            let alpha = check_alpha(args.alpha.unwrap_or(0.5))?;
            let h = check_positive("h", args.h.unwrap_or(2f64.powi(-8)))?;
            let horizon = check_positive("T", args.horizon.unwrap_or(2.0))?;
            let (g, x0) = match (&args.system, &args.curve, x0_arg) {
                (None, None, x0) => {
                    // the published manifold x = -(4/pi - 1) y^2
                    let c = 4.0 / std::f64::consts::PI - 1.0;
                    let cs = Scalar::from_f64(c).expect("finite");
                    let g = BivariatePoly::from_terms([((1, 0), Scalar::from(1)), ((0, 2), cs)]);
                    (g, x0.unwrap_or([-c * 0.01, 0.1]))
                }
                (_, _, None) => return Err(CliError::Input("--x0 is required with --system or --curve".into())),
                (_, Some(text), Some(x0)) => (parse_curve(text)?, x0),
                (_, None, Some(x0)) => (nearest_curve(&sys.field, x0)?, x0),
            };
            (cfg.alpha, cfg.h, cfg.horizon, cfg.x0) = (Some(alpha), Some(h), Some(horizon), Some(x0));
            cfg.extra.insert("curve".into(), json!(g.to_string()));
            let system = FractionalSystem::field(alpha, sys.field.clone(), x0).map_err(fractional_error)?;
            curve_invariance_check(&system, &g, horizon, h).map_err(audit_error)?
        }
        Preset::Cong => {
            let c2 = args.c2.unwrap_or(1e-10);
            if !c2.is_finite() {
                return Err(CliError::Input("--c2 must be finite".into()));
            }
            let horizon = check_positive("T", args.horizon.unwrap_or(20.0))?;
            let nodes = args.nodes.unwrap_or(200);
            if nodes < 2 {
                return Err(CliError::Input("--nodes must be at least 2".into()));
            }
            cfg.horizon = Some(horizon);
            cfg.extra.insert("c2".into(), json!(c2));
            cfg.extra.insert("nodes".into(), json!(nodes));
            stable_manifold_audit(c2, horizon, nodes).map_err(audit_error)?
        }
    };
    cfg.formats = fmts.clone();
    let headline = headline(args.preset, &result);
    match &args.output.out {
        None => print!("{}", pretty(&result)?),
        Some(dir) => {
            let mut out = OutDir::create(dir)?;
            if fmts.contains(&Format::Json) {
                out.write("audit.json", pretty(&result)?.as_bytes())?;
            }
            if fmts.contains(&Format::Csv) {
                for (label, tr) in all_trajectories(&result) {
                    out.write(&format!("{}.csv", file_stem(&label)), tr.to_csv().as_bytes())?;
                }
            }
            out.write_sidecar("audit", &cfg)?;
            println!("{headline}");
        }
    }
    Ok(())
}

fn all_trajectories(r: &AuditResult) -> Vec<(String, &Trajectory)> {
    let mut v: Vec<(String, &Trajectory)> = r.trajectories.iter().map(|(l, t)| (l.clone(), t)).collect();
    if let Some(c) = &r.control {
        v.extend(c.trajectories.iter().map(|(l, t)| (format!("control_{l}"), t)));
    }
    v
}

fn file_stem(label: &str) -> String {
    label.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' }).collect()
}

fn headline(preset: Preset, r: &AuditResult) -> String {
    let mut s = format!("{}: verdict {}", r.experiment, r.verdict);
    if preset == Preset::Cong && r.verdict == Verdict::NonInvariant {
        s.push_str(&format!(
            "; published manifold refuted (|x(T)|/|x(0)| = {:.3e})",
            r.metrics.get("growth_ratio").copied().unwrap_or(f64::NAN)
        ));
    }
    for n in &r.notes {
        s.push_str(&format!("\n  {n}"));
    }
    s
}

pub fn ml(args: MlArgs) -> Result<()> {
    let fmts = formats(&args.output, &[Format::Json], &[Format::Json])?;
    let z = match args.z[..] {
        [re] => Complex64::new(re, 0.0),
        [re, im] => Complex64::new(re, im),
        _ => return Err(CliError::Input("--z expects `re` or `re,im`".into())),
    };
    let v = ml_detailed(args.alpha, args.beta, z, DEFAULT_TOL).map_err(ml_error)?;
    let body = json!({
        "alpha": args.alpha,
        "beta": args.beta,
        "z": {"re": z.re, "im": z.im},
        "value": {"re": v.value.re, "im": v.value.im},
        "method": v.method,
        "error_estimate": v.error,
    });
    let text = pretty(&body)?;
    if let Some(dir) = &args.output.out {
        let mut out = OutDir::create(dir)?;
        out.write("ml.json", text.as_bytes())?;
        let cfg = RunConfig {
            alpha: Some(args.alpha),
            formats: fmts,
            extra: BTreeMap::from([("beta".into(), json!(args.beta)), ("z".into(), json!([z.re, z.im]))]),
            ..RunConfig::default()
        };
        out.write_sidecar("ml", &cfg)?;
    }
    print!("{text}");
    Ok(())
}

/// Detected curves as zero sets sampled for plotting, deduplicated by label.
fn overlay_curves(field: &PolyField2D, grid: &Grid) -> Curves {
    let a = run_detectors(field);
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for c in a.candidates() {
        let label = c.describe();
        if !seen.insert(label.clone()) {
            continue;
        }
        let lines = if let Some(g) = c.implicit() {
            contour(grid, 201, |x, y| g.eval_f64(x, y))
        } else if let CurveKind::LevelSet { h, c, .. } = &c.kind {
            contour(grid, 201, |x, y| h.eval_f64(x, y) - c.approx)
        } else {
            continue;
        };
        if !lines.is_empty() {
            out.push((label, lines));
        }
    }
    out
}

pub fn field(args: FieldArgs) -> Result<()> {
    let fmts = formats(&args.output, &[Format::Csv, Format::Svg], &[Format::Csv])?;
    let grid = Grid::parse(&args.grid).map_err(CliError::Input)?;
    let sys = load_system(&args.system)?;
    let rows: Vec<(f64, f64, f64, f64)> = grid
        .nodes()
        .map(|(x, y)| {
            let (dx, dy) = sys.field.eval(x, y);
            (x, y, dx, dy)
        })
        .collect();
    let mut csv = String::from("x,y,dx,dy\n");
    for (x, y, dx, dy) in &rows {
        csv.push_str(&format!("{x:.16e},{y:.16e},{dx:.16e},{dy:.16e}\n"));
    }
    let svg = || {
        let curves = if args.overlay { overlay_curves(&sys.field, &grid) } else { Vec::new() };
        Plot { grid, arrows: &rows, curves }.render()
    };
    match &args.output.out {
        None => {
            if fmts == [Format::Svg] {
                print!("{}", svg());
            } else {
                print!("{csv}");
            }
        }
        Some(dir) => {
            let mut out = OutDir::create(dir)?;
            if fmts.contains(&Format::Csv) {
                out.write("field.csv", csv.as_bytes())?;
            }
            if fmts.contains(&Format::Svg) {
                out.write("field.svg", svg().as_bytes())?;
            }
            let cfg = RunConfig {
                formats: fmts,
                extra: BTreeMap::from([("grid".into(), json!(grid)), ("overlay".into(), json!(args.overlay))]),
                ..RunConfig::with_system(&sys)
            };
            out.write_sidecar("field", &cfg)?;
        }
    }
    Ok(())
}
