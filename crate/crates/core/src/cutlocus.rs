//! Rays, minimality horizons and cut loci.
//!
//! A ray `t ↦ exp_q(tλ)` minimizes until `tλ` reaches `|v| = π`, i.e. up to
//! `t_* = π/|v|`. From an axis point the `±u` rays meet on the axis, so the
//! closure of the cut locus is the whole axis. From `(x₀, y₀)` with `x₀ ≠ 0`
//! they meet on the mirror line `x = −x₀`, above `y₀ + πx₀²/2` or below
//! `y₀ − πx₀²/2`; the `(1, 0)` picture transported by dilation and translation.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::distance::{distance, graph_oracle_distance, DistanceStatus, GridOracleConfig};
use crate::error::{GrushinError, Result};
use crate::geometry::{costate, exp_map, hamiltonian, Covector, Point, SpaceKind};

/// Relative slack when comparing a ray length with an exact distance.
const EXACT_REL_TOL: f64 = 1e-7;
/// Relative slack when the comparison goes through the grid oracle.
pub const ORACLE_REL_TOL: f64 = 0.02;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RaySpec {
    pub q: Point,
    pub lam: Covector,
}

impl RaySpec {
    pub fn new(q: Point, lam: Covector) -> Result<Self> {
        if !(q.is_finite() && lam.is_finite()) {
            return Err(GrushinError::InvalidInput("non-finite ray data".into()));
        }
        if lam.u == 0.0 && lam.v == 0.0 {
            return Err(GrushinError::InvalidInput(
                "ray covector must be nonzero".into(),
            ));
        }
        Ok(Self { q, lam })
    }

    pub fn at(&self, t: f64) -> Point {
        exp_map(self.q, self.lam, t)
    }

    /// `t · √(2H)`.
    pub fn length(&self, t: f64) -> f64 {
        t * (2.0 * hamiltonian(self.q, self.lam)).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum CutDescription {
    /// The closure of the cut locus is the y-axis.
    VerticalAxisClosure,
    /// `{(x_c_signed, y0 ± (y_offset + s)) : s ≥ 0}`.
    TwoVerticalHalfLines {
        x_c_signed: f64,
        y0: f64,
        y_offset: f64,
    },
}

impl CutDescription {
    /// Euclidean coordinate distance from `p` to the described closed set.
    pub fn distance_to(&self, p: Point) -> f64 {
        match *self {
            CutDescription::VerticalAxisClosure => p.x.abs(),
            CutDescription::TwoVerticalHalfLines {
                x_c_signed,
                y0,
                y_offset,
            } => {
                let dx = (p.x - x_c_signed).abs();
                let gap = (y_offset - (p.y - y0).abs()).max(0.0);
                dx.hypot(gap)
            }
        }
    }

    /// Polylines of the set truncated to `|y − y0| ≤ extent`.
    pub fn polylines(&self, y_center: f64, extent: f64) -> Vec<Vec<Point>> {
        match *self {
            CutDescription::VerticalAxisClosure => {
                vec![vec![
                    Point::new(0.0, y_center - extent),
                    Point::new(0.0, y_center + extent),
                ]]
            }
            CutDescription::TwoVerticalHalfLines {
                x_c_signed,
                y0,
                y_offset,
            } => {
                let far = extent.max(y_offset);
                vec![
                    vec![
                        Point::new(x_c_signed, y0 + y_offset),
                        Point::new(x_c_signed, y0 + far),
                    ],
                    vec![
                        Point::new(x_c_signed, y0 - y_offset),
                        Point::new(x_c_signed, y0 - far),
                    ],
                ]
            }
        }
    }
}

/// `π/|v|`, or `+∞` for horizontal rays.
pub fn minimality_time(ray: &RaySpec) -> f64 {
    if ray.lam.v == 0.0 {
        f64::INFINITY
    } else {
        PI / ray.lam.v.abs()
    }
}

pub fn cut_locus(q: Point) -> CutDescription {
    if q.x == 0.0 {
        CutDescription::VerticalAxisClosure
    } else {
        CutDescription::TwoVerticalHalfLines {
            x_c_signed: -q.x,
            y0: q.y,
            y_offset: 0.5 * PI * q.x * q.x,
        }
    }
}

pub fn distance_to_cut_set(q: Point, p: Point) -> f64 {
    cut_locus(q).distance_to(p)
}

/// First `t > 0` where the rays of `(u, v)` and `(−u, v)` meet, with the
/// common point.
pub fn meeting_point(q: Point, u: f64, v: f64) -> Result<(Point, f64)> {
    if v == 0.0 || !v.is_finite() || !u.is_finite() {
        return Err(GrushinError::InvalidInput(format!(
            "meeting point needs finite v ≠ 0, got v = {v}"
        )));
    }
    if u == 0.0 {
        if q.x == 0.0 {
            return Err(GrushinError::NoMeeting);
        }
        // a single ray; it reaches the end of the cut set at the horizon
        let t = PI / v.abs();
        return Ok((exp_map(q, Covector::new(0.0, v), t), t));
    }
    let plus = Covector::new(u, v);
    let minus = Covector::new(-u, v);
    let gap = |t: f64| exp_map(q, plus, t).x - exp_map(q, minus, t).x;
    let (mut lo, mut hi) = (0.5 * PI / v.abs(), 1.5 * PI / v.abs());
    let (glo, ghi) = (gap(lo), gap(hi));
    if glo.signum() == ghi.signum() {
        return Err(GrushinError::NoMeeting);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if gap(mid).signum() == glo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = 0.5 * (lo + hi);
    let (a, b) = (exp_map(q, plus, t), exp_map(q, minus, t));
    Ok((Point::new(0.5 * (a.x + b.x), 0.5 * (a.y + b.y)), t))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MinimalityMethod {
    /// Compare with the Newton distance (exact beyond the horizon).
    Exact,
    /// Compare with the grid oracle at `h = min(0.005, L/500)`.
    GraphOracle,
}

/// Whether the ray restricted to `[0, t]` is length minimizing.
pub fn is_minimizing(ray: &RaySpec, t: f64) -> Result<bool> {
    is_minimizing_with(ray, t, MinimalityMethod::Exact)
}

pub fn is_minimizing_with(ray: &RaySpec, t: f64, method: MinimalityMethod) -> Result<bool> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(GrushinError::InvalidInput(format!(
            "t = {t} must be positive"
        )));
    }
    if t < minimality_time(ray) {
        return Ok(true);
    }
    let len = ray.length(t);
    let p = ray.at(t);
    let space = SpaceKind::FullPlane;
    match method {
        MinimalityMethod::Exact => {
            let d = distance(ray.q, p, space)?;
            let tol = match d.status {
                DistanceStatus::OracleOnly => ORACLE_REL_TOL,
                _ => EXACT_REL_TOL,
            };
            Ok(len - d.value <= tol * len)
        }
        MinimalityMethod::GraphOracle => {
            let h = (len / 500.0).min(0.005);
            let d = graph_oracle_distance(ray.q, p, space, &GridOracleConfig::around(ray.q, p, h))?;
            Ok(len - d <= ORACLE_REL_TOL * len)
        }
    }
}

/// One sample of a ray: `(t, point, costate)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RaySample {
    pub t: f64,
    pub p: Point,
    pub lam: Covector,
}

pub fn sample_ray(ray: &RaySpec, t_max: f64, n: usize) -> Result<Vec<RaySample>> {
    if n < 2 || !(t_max > 0.0 && t_max.is_finite()) {
        return Err(GrushinError::InvalidInput(
            "need n ≥ 2 samples and finite t_max > 0".into(),
        ));
    }
    Ok((0..n)
        .map(|i| {
            let t = t_max * i as f64 / (n - 1) as f64;
            RaySample {
                t,
                p: ray.at(t),
                lam: costate(ray.q, ray.lam, t),
            }
        })
        .collect())
}

/// Rays with `v = ±1` and the given initial `u`, each followed to `horizon · π`.
pub fn ray_fan(
    q: Point,
    us: &[f64],
    horizon: f64,
    n: usize,
) -> Result<Vec<(RaySpec, Vec<RaySample>)>> {
    let mut out = Vec::with_capacity(2 * us.len());
    for v in [1.0, -1.0] {
        for &u in us {
            let ray = RaySpec::new(q, Covector::new(u, v))?;
            out.push((ray, sample_ray(&ray, horizon * PI, n)?));
        }
    }
    Ok(out)
}
