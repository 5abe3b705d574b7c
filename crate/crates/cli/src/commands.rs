use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use grushin_core::curvature::{
    bakry_emery, connection_coeffs, dv_dv, fd_gauss_curvature, hess_v, metric_at, negativity_check,
    ricci, shifted_eigenvalues, TensorEval,
};
use grushin_core::cutlocus::{
    cut_locus, is_minimizing, meeting_point, minimality_time, ray_fan, sample_ray, RaySample,
    RaySpec,
};
use grushin_core::distance::{distance, graph_oracle_distance, GridOracleConfig};
use grushin_core::geometry::{
    exp_jacobian, exp_map, hamiltonian, in_injectivity_domain, reflect_x,
};
use grushin_core::gluing::{double_equivalence_residual, glued_distance, GluedPoint, Sheet};
use grushin_core::mcp::{
    product_min_n, scan_min_n, set_contraction_profile, verify_mcp, BranchTag, ScanConfig,
    ScanReport, Supremum,
};
use grushin_core::{Covector, GrushinError, Point, Region, SpaceKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::args::*;
use crate::config::Layers;
use crate::report::{fmt_float, to_value, Report};
use crate::{CliError, Outcome, EXIT_OK, EXIT_VERIFY_FAILED};

type Res<T> = Result<T, CliError>;

pub fn dispatch(cli: &Cli, l: &Layers) -> Res<Outcome> {
    let seed = l.or("seed", cli.seed, 0u64)?;
    match &cli.command {
        Command::Exp(a) => exp(a, l),
        Command::Geodesic(a) => geodesic(a, l),
        Command::Distance(a) => dist(a, l),
        Command::McpScan(a) => mcp_scan(a, l),
        Command::McpVerify(a) => mcp_verify(a, l),
        Command::Contract(a) => contract(a, l, seed),
        Command::DoubleCheck(a) => double_check(a, l, seed),
        Command::Curvature(a) => curvature(a, l),
        Command::Cutlocus(a) => cutlocus(a, l),
        Command::Figure(a) => figure(a, l),
    }
}

fn done(r: Report) -> Res<Outcome> {
    Ok(Outcome {
        text: r.render(),
        exit: EXIT_OK,
    })
}

fn point(xy: [f64; 2]) -> Point {
    Point::new(xy[0], xy[1])
}

fn space_of(l: &Layers, flag: Option<SpaceArg>, default: SpaceArg) -> Res<SpaceArg> {
    Ok(l.pick_parsed("space", flag)?.unwrap_or(default))
}

fn single(space: SpaceArg, command: &str) -> Res<SpaceKind> {
    match space {
        SpaceArg::Single(s) => Ok(s),
        other => Err(CliError::Domain(format!(
            "{command} does not support the space {other}"
        ))),
    }
}

fn exp(a: &ExpArgs, l: &Layers) -> Res<Outcome> {
    let q = point(l.require("q", a.q)?);
    let lam = l.require::<[f64; 2]>("lam", a.lam)?;
    let lam = Covector::new(lam[0], lam[1]);
    let t = l.or("t", a.t, 1.0)?;
    let space = single(
        space_of(l, a.space, SpaceArg::Single(SpaceKind::FullPlane))?,
        "exp",
    )?;
    space.ensure_base(q)?;
    if !(q.is_finite() && lam.is_finite() && t.is_finite()) {
        return Err(CliError::Domain("inputs must be finite".into()));
    }
    let p = exp_map(q, lam, t);
    let h = hamiltonian(q, lam);
    let report = Report::new(
        "exp",
        json!({"q": [q.x, q.y], "lam": [lam.u, lam.v], "t": t, "space": space.to_string()}),
        json!({"x": p.x, "y": p.y}),
    )
    .with_diagnostics(json!({
        "hamiltonian": h,
        "length": t.abs() * (2.0 * h).sqrt(),
        "jacobian": exp_jacobian(q, lam.scale(t)),
        "in_injectivity_domain": in_injectivity_domain(q, lam.scale(t), space)?,
    }));
    done(report)
}

fn csv_rows(out: &mut String, id: Option<usize>, samples: &[RaySample]) {
    for s in samples {
        if let Some(id) = id {
            let _ = write!(out, "{id},");
        }
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            fmt_float(s.t),
            fmt_float(s.p.x),
            fmt_float(s.p.y),
            fmt_float(s.lam.u),
            fmt_float(s.lam.v)
        );
    }
}

fn geodesic(a: &GeodesicArgs, l: &Layers) -> Res<Outcome> {
    let q = point(l.require("q", a.q)?);
    let lam = l.require::<[f64; 2]>("lam", a.lam)?;
    let ray = RaySpec::new(q, Covector::new(lam[0], lam[1]))?;
    let t_max = l.or("t_max", a.t_max, 1.0)?;
    let n = l.or("samples", a.samples, 101usize)?;
    let format = match l.pick::<String>("format", None)?.as_deref() {
        _ if a.format.is_some() => a.format.unwrap_or(Format::Json),
        Some("csv") => Format::Csv,
        Some("json") | None => Format::Json,
        Some(other) => return Err(CliError::Usage(format!("unknown format {other:?}"))),
    };
    let samples = sample_ray(&ray, t_max, n)?;
    if format == Format::Csv {
        let mut text = String::from("t,x,y,u,v\n");
        csv_rows(&mut text, None, &samples);
        return Ok(Outcome {
            text,
            exit: EXIT_OK,
        });
    }
    let rows: Vec<Value> = samples
        .iter()
        .map(|s| json!({"t": s.t, "x": s.p.x, "y": s.p.y, "u": s.lam.u, "v": s.lam.v}))
        .collect();
    let report = Report::new(
        "geodesic",
        json!({"q": [q.x, q.y], "lam": lam, "t_max": t_max, "samples": n}),
        json!({"samples": rows}),
    )
    .with_diagnostics(json!({
        "length": ray.length(t_max),
        "minimality_time": finite_or_null(minimality_time(&ray)),
    }));
    done(report)
}

fn finite_or_null(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

fn sheet(c: CopyArg) -> Sheet {
    match c {
        CopyArg::A => Sheet::A,
        CopyArg::B => Sheet::B,
    }
}

fn copy_of(l: &Layers, key: &str, flag: Option<CopyArg>) -> Res<CopyArg> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match l.pick::<String>(key, None)?.as_deref() {
        None | Some("A") | Some("a") => Ok(CopyArg::A),
        Some("B") | Some("b") => Ok(CopyArg::B),
        Some(other) => Err(CliError::Usage(format!(
            "{key} must be A or B, got {other:?}"
        ))),
    }
}

fn dist(a: &DistanceArgs, l: &Layers) -> Res<Outcome> {
    let q = point(l.require("q", a.q)?);
    let p = point(l.require("p", a.p)?);
    let space = space_of(l, a.space, SpaceArg::Single(SpaceKind::FullPlane))?;
    let oracle_h: Option<f64> = l.pick("oracle_h", a.oracle_h)?;
    let mut config = json!({"q": [q.x, q.y], "p": [p.x, p.y], "space": space.to_string()});
    let mut diagnostics = Map::new();
    let (result, witness) = match space {
        SpaceArg::Single(s) => {
            let d = distance(q, p, s)?;
            if let Some(h) = oracle_h {
                let o = graph_oracle_distance(q, p, s, &GridOracleConfig::around(q, p, h))?;
                diagnostics.insert("oracle_value".into(), json!(o));
                diagnostics.insert("oracle_h".into(), json!(h));
            }
            let w = d.witness.map(|w| json!({"u": w.u, "v": w.v}));
            (
                json!({"value": d.value, "status": to_value(&d.status), "method": to_value(&d.method)}),
                w,
            )
        }
        SpaceArg::Double => {
            let (qc, pc) = (
                copy_of(l, "q_copy", a.q_copy)?,
                copy_of(l, "p_copy", a.p_copy)?,
            );
            config["q_copy"] = json!(format!("{qc:?}"));
            config["p_copy"] = json!(format!("{pc:?}"));
            let gq = GluedPoint::new(sheet(qc), q)?;
            let gp = GluedPoint::new(sheet(pc), p)?;
            let d = glued_distance(gq, gp)?;
            if let Some(h) = oracle_h {
                let (a, b) = (glued_plane(gq), glued_plane(gp));
                let o = graph_oracle_distance(
                    a,
                    b,
                    SpaceKind::FullPlane,
                    &GridOracleConfig::around(a, b, h),
                )?;
                diagnostics.insert("oracle_value".into(), json!(o));
                diagnostics.insert("oracle_h".into(), json!(h));
            }
            (
                json!({"value": d, "status": "Glued", "method": "BoundaryInfimum"}),
                None,
            )
        }
        SpaceArg::Product { .. } => {
            return Err(CliError::Domain(
                "distance does not support product spaces".into(),
            ))
        }
    };
    let mut report =
        Report::new("distance", config, result).with_diagnostics(Value::Object(diagnostics));
    if let Some(w) = witness {
        report = report.with_witness(w);
    }
    done(report)
}

fn glued_plane(p: GluedPoint) -> Point {
    grushin_core::gluing::glued_to_plane(p)
}

fn scan_config(f: &ScanFlags, l: &Layers) -> Res<ScanConfig> {
    let d = ScanConfig::default();
    let branches: Vec<BranchTag> = match &f.branches {
        Some(b) => b.iter().map(|&b| b.into()).collect(),
        None => match l.pick::<Vec<String>>("branches", None)? {
            Some(names) => names
                .iter()
                .map(|n| {
                    <BranchArg as clap::ValueEnum>::from_str(n, true)
                        .map(BranchTag::from)
                        .map_err(|e| CliError::Usage(format!("config key \"branches\": {e}")))
                })
                .collect::<Res<_>>()?,
            None => d.branches.clone(),
        },
    };
    let cfg = ScanConfig {
        u_min: l.or("u_min", f.u_min, d.u_min)?,
        u_max: l.or("u_max", f.u_max, d.u_max)?,
        n_u: l.or("n_u", f.n_u, d.n_u)?,
        v_min: l.or("v_min", f.v_min, d.v_min)?,
        v_margin: l.or("v_margin", f.v_margin, d.v_margin)?,
        n_v: l.or("n_v", f.n_v, d.n_v)?,
        x_grid: l.or("x_grid", f.x_grid.clone(), d.x_grid.clone())?,
        t_grid: l.or("t_grid", f.t_grid.clone(), d.t_grid.clone())?,
        tol: l.or("tol", f.tol, d.tol)?,
        branches,
        refine: !(f.no_refine || l.file_flag("no_refine")?),
    };
    cfg.validate()?;
    Ok(cfg)
}

/// The double is evaluated as the plane it is isometric to.
fn scan_base(space: SpaceArg) -> (SpaceKind, u32) {
    match space {
        SpaceArg::Single(s) => (s, 0),
        SpaceArg::Double => (SpaceKind::FullPlane, 0),
        SpaceArg::Product { k, base } => (base, k),
    }
}

fn scan_result(rep: &ScanReport, k: u32) -> Value {
    let limit = rep.analytic_limit.map(|x| x + k as f64);
    let mut r = json!({
        "n_min": product_min_n(rep, k),
        "supremum": to_value(&rep.supremum),
        "analytic_limit": limit,
        "branch_sups": rep.branch_sups.iter().map(|(b, v)| (format!("{b:?}"), json!(*v + k as f64))).collect::<Map<_, _>>(),
        "direct_n": rep.direct_n + k as f64,
        "estimators_agree": rep.estimators_agree,
        "samples": rep.samples,
    });
    if k > 0 {
        r["k"] = json!(k);
        r["base_n_min"] = json!(rep.n_min);
    }
    r
}

fn scan_witness(rep: &ScanReport) -> Value {
    let w = &rep.witness;
    json!({
        "q": [w.point.q.x, w.point.q.y],
        "lam": [w.point.lam.u, w.point.lam.v],
        "u": w.point.lam.u,
        "v": w.point.lam.v,
        "x": w.point.q.x,
        "t": w.point.t,
        "a": w.point.a,
        "branch": format!("{:?}", w.branch),
        "pointwise_n": w.pointwise_n,
    })
}

fn scan_diagnostics(space: SpaceArg, base: SpaceKind, rep: &ScanReport) -> Value {
    let mut d = json!({"evaluated_on": base.to_string()});
    if space == SpaceArg::Double {
        d["note"] = json!("the double of the half-plane is isometric to the plane");
    }
    if rep.supremum == Supremum::Approached {
        d["grid_edge"] = json!(true);
    }
    d
}

fn scan_config_json(space: SpaceArg, cfg: &ScanConfig) -> Value {
    let mut c = to_value(cfg);
    c["space"] = json!(space.to_string());
    c
}

fn mcp_scan(a: &ScanArgs, l: &Layers) -> Res<Outcome> {
    let space = space_of(l, a.space, SpaceArg::Single(SpaceKind::HalfPlanePlus))?;
    let cfg = scan_config(&a.scan, l)?;
    let (base, k) = scan_base(space);
    let rep = scan_min_n(base, &cfg)?;
    let report = Report::new(
        "mcp-scan",
        scan_config_json(space, &cfg),
        scan_result(&rep, k),
    )
    .with_witness(scan_witness(&rep))
    .with_diagnostics(scan_diagnostics(space, base, &rep));
    done(report)
}

fn mcp_verify(a: &VerifyArgs, l: &Layers) -> Res<Outcome> {
    let space = space_of(l, a.space, SpaceArg::Single(SpaceKind::HalfPlanePlus))?;
    let n: f64 = l.require("N", a.n)?;
    let cfg = scan_config(&a.scan, l)?;
    let (base, k) = scan_base(space);
    if !(n > 2.0 + k as f64) {
        return Err(GrushinError::BadDimension(n).into());
    }
    let v = verify_mcp(base, n - k as f64, &cfg)?;
    let max_n = v.max_pointwise_n + k as f64;
    let mut config = scan_config_json(space, &cfg);
    config["N"] = json!(n);
    let result = json!({"holds": v.holds, "N": n, "max_pointwise_n": max_n, "tol": cfg.tol});
    let mut report = Report::new("mcp-verify", config, result)
        .with_diagnostics(scan_diagnostics(space, base, &v.report));
    if let Some(w) = v.witness {
        let tk = w.t.powi(k as i32);
        report = report.with_witness(json!({
            "q": [w.q.x, w.q.y],
            "lam": [w.lam.u, w.lam.v],
            "u": w.lam.u,
            "v": w.lam.v,
            "x": w.q.x,
            "t": w.t,
            "pointwise_n": w.pointwise_n + k as f64,
            "ratio": w.ratio * tk,
            "bound": w.t.powf(n - 2.0),
        }));
    }
    let exit = if v.holds { EXIT_OK } else { EXIT_VERIFY_FAILED };
    Ok(Outcome {
        text: report.render(),
        exit,
    })
}

fn region_of(a: &ContractArgs, l: &Layers) -> Res<Region> {
    let disk: Option<Vec<f64>> = l.pick("disk", a.disk.clone())?;
    let rect: Option<Vec<f64>> = if a.disk.is_some() {
        None
    } else {
        l.pick("rect", a.rect.clone())?
    };
    let region = match (disk, rect) {
        (Some(d), None) if d.len() == 3 => Region::disk(Point::new(d[0], d[1]), d[2]),
        (None, Some(r)) if r.len() == 4 => Region::rectangle(r[0], r[1], r[2], r[3]),
        (Some(_), Some(_)) => return Err(CliError::Usage("give either --disk or --rect".into())),
        (None, None) => {
            return Err(CliError::Usage(
                "missing --disk cx,cy,r or --rect x0,x1,y0,y1".into(),
            ))
        }
        _ => {
            return Err(CliError::Usage(
                "--disk takes 3 numbers, --rect takes 4".into(),
            ))
        }
    };
    region.validate()?;
    Ok(region)
}

fn contract(a: &ContractArgs, l: &Layers, seed: u64) -> Res<Outcome> {
    let space = single(
        space_of(l, a.space, SpaceArg::Single(SpaceKind::HalfPlanePlus))?,
        "contract",
    )?;
    let q = point(l.require("q", a.q)?);
    let region = region_of(a, l)?;
    let ts: Vec<f64> = l.or("t", a.t.clone(), vec![0.25, 0.5, 0.75])?;
    let default_n = if space.is_half_plane() { 4.0 } else { 5.0 };
    let n = l.or("N", a.n, default_n)?;
    let samples = l.or("samples", a.samples, 100_000usize)?;
    let sigmas = l.or("sigmas", a.sigmas, 3.0)?;
    let est = set_contraction_profile(q, &region, &ts, n, space, samples, seed)?;
    let holds = est.iter().all(|e| e.holds_within(sigmas));
    let rows: Vec<Value> = est
        .iter()
        .map(|e| json!({"t": e.t, "lhs": e.lhs, "rhs": e.rhs, "std_err": e.std_err, "holds": e.holds_within(sigmas)}))
        .collect();
    let report = Report::new(
        "contract",
        json!({"space": space.to_string(), "q": [q.x, q.y], "region": to_value(&region), "t": ts,
               "N": n, "samples": samples, "sigmas": sigmas, "seed": seed}),
        json!({"holds": holds, "area": region.area(), "estimates": rows}),
    )
    .with_diagnostics(json!({
        "samples_used": est.first().map_or(0, |e| e.samples_used),
        "discarded": est.first().map_or(0, |e| e.discarded),
    }));
    let exit = if holds { EXIT_OK } else { EXIT_VERIFY_FAILED };
    Ok(Outcome {
        text: report.render(),
        exit,
    })
}

fn double_check(a: &DoubleArgs, l: &Layers, seed: u64) -> Res<Outcome> {
    let oracle_h: Option<f64> = l.pick("oracle_h", a.oracle_h)?;
    let pairs: Option<usize> = l.pick("pairs", a.pairs)?;
    let plane_oracle = |p: Point, q: Point, h: f64| -> Res<f64> {
        let r = reflect_x(q);
        Ok(graph_oracle_distance(
            p,
            r,
            SpaceKind::FullPlane,
            &GridOracleConfig::around(p, r, h),
        )?)
    };
    if let Some(n) = pairs {
        if n == 0 {
            return Err(CliError::Usage("--pairs must be positive".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts: Vec<(Point, Point)> = (0..n)
            .map(|_| {
                let mut r = || Point::new(rng.random_range(0.0..3.0), rng.random_range(-2.0..2.0));
                (r(), r())
            })
            .collect();
        let mut worst = (0.0f64, pts[0]);
        let mut sum = 0.0;
        for &(p, q) in &pts {
            let r = double_equivalence_residual(p, q)?;
            sum += r;
            if r > worst.0 {
                worst = (r, (p, q));
            }
        }
        let (wp, wq) = worst.1;
        let report = Report::new(
            "double-check",
            json!({"pairs": n, "seed": seed, "box": {"x": [0.0, 3.0], "y": [-2.0, 2.0]}}),
            json!({"pairs": n, "max_residual": worst.0, "mean_residual": sum / n as f64}),
        )
        .with_witness(json!({"p": [wp.x, wp.y], "q": [wq.x, wq.y], "residual": worst.0}));
        return done(report);
    }
    let p = point(l.require("p", a.p)?);
    let q = point(l.require("q", a.q)?);
    let glued = glued_distance(GluedPoint::new(Sheet::A, p)?, GluedPoint::new(Sheet::B, q)?)?;
    let plane = distance(p, reflect_x(q), SpaceKind::FullPlane)?.value;
    let mut diagnostics = Map::new();
    if let Some(h) = oracle_h {
        diagnostics.insert("oracle_value".into(), json!(plane_oracle(p, q, h)?));
        diagnostics.insert("oracle_h".into(), json!(h));
    }
    let report = Report::new(
        "double-check",
        json!({"p": [p.x, p.y], "q": [q.x, q.y]}),
        json!({"glued": glued, "plane": plane, "residual": (glued - plane).abs()}),
    )
    .with_diagnostics(Value::Object(diagnostics));
    done(report)
}

fn tensor_json(t: &TensorEval) -> Value {
    json!({"coords": t.coords(), "frame": t.frame()})
}

fn curvature(a: &CurvatureArgs, l: &Layers) -> Res<Outcome> {
    let space = single(
        space_of(l, a.space, SpaceArg::Single(SpaceKind::FullPlane))?,
        "curvature",
    )?;
    let p = point(l.require("p", a.p)?);
    space.ensure_point(p)?;
    let n: f64 = l.require("N", a.n)?;
    let h = l.or("h", a.h, 1e-3)?;
    let be = bakry_emery(p, n)?;
    let conn = connection_coeffs(p)?;
    let fd = fd_gauss_curvature(p, h)?;
    let result = json!({
        "metric": tensor_json(&metric_at(p)?),
        "connection": to_value(&conn),
        "ricci": tensor_json(&ricci(p)?),
        "hess_v": tensor_json(&hess_v(p)?),
        "dv_dv": tensor_json(&dv_dv(p)?),
        "bakry_emery": tensor_json(&be),
        "shifted_eigenvalues": shifted_eigenvalues(p, n)?,
        "negativity": negativity_check(p, n)?,
        "gauss_curvature": -2.0 / (p.x * p.x),
        "fd_gauss_curvature": fd,
    });
    let report = Report::new(
        "curvature",
        json!({"p": [p.x, p.y], "N": n, "h": h, "space": space.to_string()}),
        result,
    )
    .with_diagnostics(json!({"fd_error": (fd + 2.0 / (p.x * p.x)).abs()}));
    done(report)
}

fn cutlocus(a: &CutArgs, l: &Layers) -> Res<Outcome> {
    let q = point(l.require("q", a.q)?);
    if !q.is_finite() {
        return Err(CliError::Domain("q must be finite".into()));
    }
    let u: Option<f64> = l.pick("u", a.u)?;
    let v: Option<f64> = l.pick("v", a.v)?;
    let t: Option<f64> = l.pick("t", a.t)?;
    let desc = cut_locus(q);
    let mut result = json!({"cut_locus": to_value(&desc)});
    let mut config = json!({"q": [q.x, q.y]});
    if let (Some(u), Some(v)) = (u, v) {
        config["u"] = json!(u);
        config["v"] = json!(v);
        let ray = RaySpec::new(q, Covector::new(u, v))?;
        result["minimality_time"] = finite_or_null(minimality_time(&ray));
        if v != 0.0 {
            let (m, tm) = meeting_point(q, u, v)?;
            result["meeting"] = json!({
                "point": [m.x, m.y],
                "t": tm,
                "distance_to_cut_set": desc.distance_to(m),
            });
        }
        if let Some(t) = t {
            config["t"] = json!(t);
            result["is_minimizing"] = json!(is_minimizing(&ray, t)?);
        }
    } else if u.is_some() || v.is_some() || t.is_some() {
        return Err(CliError::Usage(
            "--u and --v go together (and --t needs both)".into(),
        ));
    }
    done(Report::new("cutlocus", config, result))
}

fn write_file(dir: &Path, name: &str, text: &str) -> Res<PathBuf> {
    let path = dir.join(name);
    std::fs::write(&path, text)
        .map_err(|e| CliError::Domain(format!("cannot write {}: {e}", path.display())))?;
    Ok(path)
}

fn figure(a: &FigureArgs, l: &Layers) -> Res<Outcome> {
    let dir: PathBuf = l.or("out_dir", a.out_dir.clone(), PathBuf::from("figure"))?;
    let rays = l.or("rays", a.rays, 9usize)?;
    let samples = l.or("samples", a.samples, 201usize)?;
    let horizon = l.or("horizon", a.horizon, 1.0)?;
    let extent = l.or("extent", a.extent, 6.0)?;
    if rays == 0 || !(horizon > 0.0) || !(extent > 0.0) {
        return Err(CliError::Usage(
            "need rays ≥ 1, horizon > 0 and extent > 0".into(),
        ));
    }
    std::fs::create_dir_all(&dir)
        .map_err(|e| CliError::Domain(format!("cannot create {}: {e}", dir.display())))?;
    let us: Vec<f64> = if rays == 1 {
        vec![1.0]
    } else {
        (0..rays)
            .map(|i| -2.0 + 4.0 * i as f64 / (rays - 1) as f64)
            .collect()
    };
    let mut files = Vec::new();
    for (tag, q) in [
        ("origin", Point::new(0.0, 0.0)),
        ("q1", Point::new(1.0, 0.0)),
    ] {
        let fan = ray_fan(q, &us, horizon, samples)?;
        let mut text = String::from("ray_id,t,x,y,u,v\n");
        for (id, (_, s)) in fan.iter().enumerate() {
            csv_rows(&mut text, Some(id), s);
        }
        files.push(write_file(&dir, &format!("fan_{tag}.csv"), &text)?);
        let mut cut = String::from("polyline_id,x,y\n");
        for (id, line) in cut_locus(q).polylines(q.y, extent).iter().enumerate() {
            for p in line {
                let _ = writeln!(cut, "{id},{},{}", fmt_float(p.x), fmt_float(p.y));
            }
        }
        files.push(write_file(&dir, &format!("cut_{tag}.csv"), &cut)?);
    }
    let names: Vec<String> = files.iter().map(|p| p.display().to_string()).collect();
    let report = Report::new(
        "figure",
        json!({"out_dir": dir.display().to_string(), "rays": rays, "samples": samples,
               "horizon": horizon, "extent": extent, "t_max": horizon * PI}),
        json!({"files": names}),
    );
    done(report)
}
