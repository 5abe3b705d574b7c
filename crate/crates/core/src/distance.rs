//! Geodesic distance.
//!
//! The main route inverts the exponential map inside the injectivity domain.
//! Fixing `v`, the abscissa `x₁` is affine in `u`, so `u = u(v)` is explicit
//! and the vertical residual becomes a scalar function of `v ∈ (−π, π)` with a
//! single sign change whenever the target is in the image. Bisection on that
//! function seeds a damped 2×2 Newton polish; a multi-start seed grid backs it
//! up. Targets reached only from `|v| = π` are cut points and are handled from
//! the boundary of the domain.
//!
//! [`graph_oracle_distance`] is an independent check: Dijkstra on a lattice
//! whose edges are straight segments weighted by their exact sub-Riemannian
//! length, so every lattice path is an admissible curve and the oracle is an
//! upper bound for the true distance.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{GrushinError, Result};
use crate::geometry::{self, exp_differential, exp_map, hamiltonian, Covector, Point, SpaceKind};
use crate::kernels::{self, Branch};

const NEWTON_MAX_ITERS: usize = 80;
const BACKTRACK_HALVINGS: usize = 40;
const SEED_GRID: usize = 64;
/// Accepted inversion residual, relative to `max(1, |p|∞)`.
pub const INVERSION_TOL: f64 = 1e-10;
const CONVERGED_TOL: f64 = 1e-12;
/// Tolerance for deciding that a target sits on the image of `|v| = π`.
const CUT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DistanceStatus {
    /// Reached by a unique covector of the open injectivity domain.
    Unique,
    /// On the cut locus; the value is the boundary-limit infimum.
    CutPoint,
    /// Newton failed; value comes from the grid oracle.
    OracleOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DistanceMethod {
    Newton,
    Graph,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistanceResult {
    pub value: f64,
    pub witness: Option<Covector>,
    pub status: DistanceStatus,
    pub method: DistanceMethod,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BBox {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl BBox {
    pub fn contains(&self, p: Point) -> bool {
        (self.x_min..=self.x_max).contains(&p.x) && (self.y_min..=self.y_max).contains(&p.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AxisPolicy {
    /// No motion with a vertical component while on `x = 0`.
    InfiniteVerticalCostOnAxis,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridOracleConfig {
    pub h: f64,
    pub bbox: BBox,
    pub axis_policy: AxisPolicy,
    /// Lattice directions `(i, j)` with `max(|i|, |j|) ≤ stencil_radius`, `gcd = 1`.
    /// Radius 1 is the 8-neighbourhood.
    pub stencil_radius: u32,
    /// Vertical spacing is `h · y_aspect`. Near the axis the metric stretches
    /// `dy` by `1/|x|`, so a square lattice resolves too few directions there.
    #[serde(default = "unit_aspect")]
    pub y_aspect: f64,
}

fn unit_aspect() -> f64 {
    1.0
}

pub const DEFAULT_STENCIL_RADIUS: u32 = 3;

impl GridOracleConfig {
    /// A box around both endpoints with room for the arcs geodesics make
    /// when they travel vertically.
    pub fn around(q: Point, p: Point, h: f64) -> Self {
        let dx = (p.x - q.x).abs();
        let dy = (p.y - q.y).abs();
        let mx = 0.3 + 1.2 * dy.sqrt() + 0.25 * dx;
        let my = 0.2 + 0.25 * (dx + dy);
        let x_scale = q.x.abs().max(p.x.abs()).max(dy.sqrt());
        Self {
            h,
            bbox: BBox {
                x_min: q.x.min(p.x) - mx,
                x_max: q.x.max(p.x) + mx,
                y_min: q.y.min(p.y) - my,
                y_max: q.y.max(p.y) + my,
            },
            axis_policy: AxisPolicy::InfiniteVerticalCostOnAxis,
            stencil_radius: DEFAULT_STENCIL_RADIUS,
            y_aspect: x_scale.clamp(0.05, 1.0),
        }
    }
}

#[inline]
fn scale_of(p: Point) -> f64 {
    1f64.max(p.x.abs()).max(p.y.abs())
}

#[inline]
fn residual(q: Point, lam: Covector, p: Point) -> f64 {
    exp_map(q, lam, 1.0).coord_dist(&p)
}

/// `u` such that `x₁(u, v) = x_p`.
#[inline]
fn u_on_fiber(q: Point, p: Point, v: f64) -> f64 {
    (p.x - q.x * v.cos()) / kernels::sinc(v, Branch::Auto)
}

#[inline]
fn fiber_residual(q: Point, p: Point, v: f64) -> f64 {
    let u = u_on_fiber(q, p, v);
    exp_map(q, Covector::new(u, v), 1.0).y - p.y
}

/// Bisection on the fibre residual over `(−π, π)`.
fn fiber_seed(q: Point, p: Point) -> Option<Covector> {
    let edge = PI * (1.0 - 1e-12);
    let (mut lo, mut hi) = (-edge, edge);
    let (flo, fhi) = (fiber_residual(q, p, lo), fiber_residual(q, p, hi));
    if !(flo.is_finite() && fhi.is_finite()) || flo.signum() == fhi.signum() {
        return None;
    }
    let rising = fhi > 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f = fiber_residual(q, p, mid);
        if f == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if (f > 0.0) == rising {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let v = 0.5 * (lo + hi);
    Some(Covector::new(u_on_fiber(q, p, v), v))
}

/// Damped Newton on `exp_q(λ) = p`, kept inside `|v| < π`.
/// Returns the final covector and its residual.
pub(crate) fn newton_polish(q: Point, p: Point, seed: Covector) -> (Covector, f64) {
    let scale = scale_of(p);
    let mut lam = seed;
    let mut e = exp_map(q, lam, 1.0);
    let mut res = e.coord_dist(&p);
    for _ in 0..NEWTON_MAX_ITERS {
        if res < CONVERGED_TOL * scale {
            break;
        }
        let (fx, fy) = (e.x - p.x, e.y - p.y);
        let d = exp_differential(q, lam);
        let det = d[0][0] * d[1][1] - d[0][1] * d[1][0];
        if det == 0.0 || !det.is_finite() {
            break;
        }
        let du = -(d[1][1] * fx - d[0][1] * fy) / det;
        let dv = -(-d[1][0] * fx + d[0][0] * fy) / det;
        let mut step = 1.0;
        let mut improved = false;
        for _ in 0..BACKTRACK_HALVINGS {
            let cand = Covector::new(lam.u + step * du, lam.v + step * dv);
            if cand.v.abs() < PI && cand.is_finite() {
                let ec = exp_map(q, cand, 1.0);
                let r = ec.coord_dist(&p);
                if r < res {
                    lam = cand;
                    e = ec;
                    res = r;
                    improved = true;
                    break;
                }
            }
            step *= 0.5;
        }
        if !improved {
            break;
        }
    }
    (lam, res)
}

fn accept(q: Point, p: Point, lam: Covector, res: f64) -> bool {
    res <= INVERSION_TOL * scale_of(p) && lam.v.abs() < PI && hamiltonian(q, lam) > 0.0
}

/// Newton from a caller-supplied seed. Because `exp_q` is injective on the
/// open domain, a converged in-domain answer is the preimage.
pub fn invert_exp_from(q: Point, p: Point, seed: Covector) -> Option<Covector> {
    let (lam, res) = newton_polish(q, p, seed);
    accept(q, p, lam, res).then_some(lam)
}

fn seed_grid_search(q: Point, p: Point) -> (Option<Covector>, f64) {
    let r = 4.0 * (q.coord_dist(&p) + q.x.abs()).max(1.0);
    let vmax = PI - 1e-6;
    let mut seeds: Vec<(f64, Covector)> = Vec::with_capacity(SEED_GRID * SEED_GRID);
    for i in 0..SEED_GRID {
        let u = -r + 2.0 * r * i as f64 / (SEED_GRID - 1) as f64;
        for j in 0..SEED_GRID {
            let v = -vmax + 2.0 * vmax * j as f64 / (SEED_GRID - 1) as f64;
            let lam = Covector::new(u, v);
            seeds.push((residual(q, lam, p), lam));
        }
    }
    seeds.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut best = f64::INFINITY;
    for (_, seed) in seeds {
        let (lam, res) = newton_polish(q, p, seed);
        if accept(q, p, lam, res) {
            return (Some(lam), res);
        }
        best = best.min(res);
    }
    (None, best)
}

/// Whether `p` is the image of the boundary `|v| = π` of the domain at `q`.
fn on_boundary_image(q: Point, p: Point) -> bool {
    let xs = scale_of(q).max(scale_of(p));
    (p.x + q.x).abs() <= CUT_TOL * xs && 2.0 * (p.y - q.y).abs() >= PI * q.x * q.x - CUT_TOL * xs
}

/// Preimage of `p` under `exp_q` inside the injectivity domain of `space`.
pub fn invert_exp(q: Point, p: Point, space: SpaceKind) -> Result<Covector> {
    space.ensure_base(q)?;
    space.ensure_point(p)?;
    if !(q.is_finite() && p.is_finite()) {
        return Err(GrushinError::InvalidInput("non-finite point".into()));
    }
    if p == q {
        return Err(GrushinError::InvalidInput(
            "target equals base point".into(),
        ));
    }
    let mut best = f64::INFINITY;
    if let Some(seed) = fiber_seed(q, p) {
        let (lam, res) = newton_polish(q, p, seed);
        if accept(q, p, lam, res) {
            return Ok(lam);
        }
        best = res;
    }
    if on_boundary_image(q, p) {
        return Err(GrushinError::CutLocusPoint { p });
    }
    let (found, res) = seed_grid_search(q, p);
    match found {
        Some(lam) => Ok(lam),
        None => Err(GrushinError::NotInImage {
            residual: best.min(res),
        }),
    }
}

/// Covectors on `|v| = π` mapped onto `p`, found by multi-start Newton on the
/// vertical equation. Two for interior cut points, one at the end of a
/// half-line. For half-plane spaces only geodesics staying inside are kept.
pub fn boundary_preimages(q: Point, p: Point, space: SpaceKind) -> Vec<Covector> {
    let scale = scale_of(q).max(scale_of(p));
    let r = 2.0 * (2.0 * PI * (p.y - q.y).abs()).sqrt() + 1.0;
    let mut found: Vec<Covector> = Vec::new();
    for v in [PI, -PI] {
        for k in 0..33 {
            let mut u = -r + 2.0 * r * k as f64 / 32.0;
            for _ in 0..200 {
                let g = exp_map(q, Covector::new(u, v), 1.0).y - p.y;
                if g.abs() <= 1e-14 * scale {
                    break;
                }
                let d = exp_differential(q, Covector::new(u, v));
                let dg = d[1][0];
                if dg == 0.0 {
                    break;
                }
                u -= g / dg;
            }
            let lam = Covector::new(u, v);
            if !lam.is_finite() || residual(q, lam, p) > CUT_TOL * scale {
                continue;
            }
            if found
                .iter()
                .any(|f| f.v == v && (f.u - u).abs() <= 1e-6 * scale)
            {
                continue;
            }
            if space.is_half_plane() && !stays_in(space, q, lam) {
                continue;
            }
            found.push(lam);
        }
    }
    found.sort_by(|a, b| a.v.total_cmp(&b.v).then(a.u.total_cmp(&b.u)));
    found
}

fn stays_in(space: SpaceKind, q: Point, lam: Covector) -> bool {
    (0..=256).all(|i| space.side() * exp_map(q, lam, i as f64 / 256.0).x >= -1e-9)
}

/// Sub-Riemannian distance.
pub fn distance(q: Point, p: Point, space: SpaceKind) -> Result<DistanceResult> {
    space.ensure_point(q)?;
    space.ensure_point(p)?;
    if p == q {
        return Ok(DistanceResult {
            value: 0.0,
            witness: Some(Covector::new(0.0, 0.0)),
            status: DistanceStatus::Unique,
            method: DistanceMethod::Newton,
        });
    }
    match invert_exp(q, p, space) {
        Ok(lam) => Ok(DistanceResult {
            value: (2.0 * hamiltonian(q, lam)).sqrt(),
            witness: Some(lam),
            status: DistanceStatus::Unique,
            method: DistanceMethod::Newton,
        }),
        Err(GrushinError::CutLocusPoint { .. }) => {
            let cands = boundary_preimages(q, p, space);
            let best = cands
                .iter()
                .map(|lam| ((2.0 * hamiltonian(q, *lam)).sqrt(), *lam))
                .min_by(|a, b| a.0.total_cmp(&b.0));
            match best {
                Some((value, lam)) => Ok(DistanceResult {
                    value,
                    witness: Some(lam),
                    status: DistanceStatus::CutPoint,
                    method: DistanceMethod::Newton,
                }),
                None => oracle_fallback(q, p, space),
            }
        }
        Err(GrushinError::NotInImage { .. }) => oracle_fallback(q, p, space),
        Err(e) => Err(e),
    }
}

fn oracle_fallback(q: Point, p: Point, space: SpaceKind) -> Result<DistanceResult> {
    let h = (q.coord_dist(&p) / 400.0).clamp(1e-3, 0.01);
    let value = graph_oracle_distance(q, p, space, &GridOracleConfig::around(q, p, h))?;
    Ok(DistanceResult {
        value,
        witness: None,
        status: DistanceStatus::OracleOnly,
        method: DistanceMethod::Graph,
    })
}

/// Exact length of the straight segment from `(x1, ·)` by `(dx, dy)`.
pub(crate) fn segment_length(x1: f64, dx: f64, dy: f64) -> f64 {
    if dy == 0.0 {
        return dx.abs();
    }
    let x2 = x1 + dx;
    if x1 == 0.0 || x2 == 0.0 || (x1 < 0.0) != (x2 < 0.0) {
        return f64::INFINITY;
    }
    if dx == 0.0 {
        return dy.abs() / x1.abs();
    }
    // ∫ √(w² + m²)/w dw with w = |x| and m = |dy/dx|
    let m = (dy / dx).abs();
    let prim = |w: f64| {
        let s = w.hypot(m);
        s - m * ((m + s) / w).ln()
    };
    (prim(x2.abs()) - prim(x1.abs())).abs()
}

#[derive(Copy, Clone, PartialEq)]
struct Entry {
    cost: f64,
    node: usize,
}

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .cost
            .total_cmp(&self.cost)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn lattice_steps(radius: u32) -> Vec<(i64, i64)> {
    let r = radius.max(1) as i64;
    let mut out = Vec::new();
    for i in -r..=r {
        for j in -r..=r {
            if (i, j) != (0, 0) && gcd(i, j) == 1 {
                out.push((i, j));
            }
        }
    }
    out
}

/// Shortest lattice path length between `q` and `p`.
///
/// The lattice is aligned so that both endpoints are nodes; spacing is at
/// most `h` in each direction.
pub fn graph_oracle_distance(
    q: Point,
    p: Point,
    space: SpaceKind,
    cfg: &GridOracleConfig,
) -> Result<f64> {
    space.ensure_point(q)?;
    space.ensure_point(p)?;
    if !(cfg.h > 0.0 && cfg.h.is_finite()) {
        return Err(GrushinError::InvalidInput(format!(
            "grid spacing must be positive, got {}",
            cfg.h
        )));
    }
    if !(cfg.y_aspect > 0.0 && cfg.y_aspect.is_finite()) {
        return Err(GrushinError::InvalidInput(format!(
            "vertical aspect must be positive, got {}",
            cfg.y_aspect
        )));
    }
    if !cfg.bbox.contains(q) || !cfg.bbox.contains(p) {
        return Err(GrushinError::InvalidInput(
            "bounding box must contain both endpoints".into(),
        ));
    }
    let mut bbox = cfg.bbox;
    match space {
        SpaceKind::HalfPlanePlus => bbox.x_min = bbox.x_min.max(0.0),
        SpaceKind::HalfPlaneMinus => bbox.x_max = bbox.x_max.min(0.0),
        SpaceKind::FullPlane => {}
    }
    let spacing = |d: f64, h: f64| if d == 0.0 { h } else { d / (d / h).ceil() };
    let hx = spacing((p.x - q.x).abs(), cfg.h);
    let hy = spacing((p.y - q.y).abs(), cfg.h * cfg.y_aspect);
    let snap = 1e-9;
    let i_lo = ((bbox.x_min - q.x) / hx - snap).ceil() as i64;
    let i_hi = ((bbox.x_max - q.x) / hx + snap).floor() as i64;
    let j_lo = ((bbox.y_min - q.y) / hy - snap).ceil() as i64;
    let j_hi = ((bbox.y_max - q.y) / hy + snap).floor() as i64;
    let nx = (i_hi - i_lo + 1) as usize;
    let ny = (j_hi - j_lo + 1) as usize;
    let col_x = |i: i64| {
        let x = q.x + i as f64 * hx;
        // columns that numerically sit on the axis are the axis
        if x.abs() < 1e-12 * hx.max(1.0) {
            0.0
        } else {
            x
        }
    };
    let pi_idx = ((p.x - q.x) / hx).round() as i64;
    let pj_idx = ((p.y - q.y) / hy).round() as i64;
    let index = |i: i64, j: i64| ((i - i_lo) as usize) * ny + (j - j_lo) as usize;
    let source = index(0, 0);
    let target = index(pi_idx, pj_idx);

    let steps = lattice_steps(cfg.stencil_radius);
    // cost[i][s]: segment length from column i along step s
    let mut cost = vec![f64::INFINITY; nx * steps.len()];
    for ci in 0..nx {
        let i = ci as i64 + i_lo;
        for (s, &(di, dj)) in steps.iter().enumerate() {
            let i2 = i + di;
            if i2 < i_lo || i2 > i_hi {
                continue;
            }
            let x1 = col_x(i);
            let x2 = col_x(i2);
            cost[ci * steps.len() + s] = segment_length(x1, x2 - x1, dj as f64 * hy);
        }
    }

    let n = nx * ny;
    let mut dist = vec![f64::INFINITY; n];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(Entry {
        cost: 0.0,
        node: source,
    });
    while let Some(Entry { cost: d, node }) = heap.pop() {
        if node == target {
            return Ok(d);
        }
        if d > dist[node] {
            continue;
        }
        let ci = node / ny;
        let cj = node % ny;
        let i = ci as i64 + i_lo;
        let j = cj as i64 + j_lo;
        for (s, &(di, dj)) in steps.iter().enumerate() {
            let w = cost[ci * steps.len() + s];
            if !w.is_finite() {
                continue;
            }
            let (i2, j2) = (i + di, j + dj);
            if j2 < j_lo || j2 > j_hi {
                continue;
            }
            let next = index(i2, j2);
            let nd = d + w;
            if nd < dist[next] {
                dist[next] = nd;
                heap.push(Entry {
                    cost: nd,
                    node: next,
                });
            }
        }
    }
    Err(GrushinError::Unreachable)
}

/// Length of the ray `t ↦ exp_q(tλ)` on `[0, t]`.
pub fn ray_length(q: Point, lam: Covector, t: f64) -> f64 {
    t.abs() * (2.0 * geometry::hamiltonian(q, lam)).sqrt()
}
