//! Closed-form geometry of the Grushin plane.
//!
//! The plane carries the orthonormal frame `X₁ = ∂x`, `X₂ = x ∂y`, so the
//! metric is `dx² + dy²/x²` away from the axis `x = 0`. Geodesics are
//! projections of the flow of `H = (u² + x²v²)/2`; that system is integrable
//! and everything here is evaluated in closed form.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{GrushinError, Result};
use crate::kernels::{self, Branch};

/// Slack for the half-plane endpoint test.
pub const HALF_PLANE_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Euclidean distance in coordinates; only used for residuals.
    pub fn coord_dist(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// A cotangent vector `u dx + v dy`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Covector {
    pub u: f64,
    pub v: f64,
}

impl Covector {
    pub const fn new(u: f64, v: f64) -> Self {
        Self { u, v }
    }

    pub fn scale(&self, t: f64) -> Self {
        Self::new(t * self.u, t * self.v)
    }

    pub fn is_finite(&self) -> bool {
        self.u.is_finite() && self.v.is_finite()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SpaceKind {
    FullPlane,
    HalfPlanePlus,
    HalfPlaneMinus,
}

impl SpaceKind {
    /// +1 for the right half-plane, -1 for the left one, 0 for the plane.
    pub fn side(self) -> f64 {
        match self {
            SpaceKind::FullPlane => 0.0,
            SpaceKind::HalfPlanePlus => 1.0,
            SpaceKind::HalfPlaneMinus => -1.0,
        }
    }

    pub fn contains(self, p: Point) -> bool {
        p.is_finite() && self.side() * p.x >= 0.0
    }

    pub fn is_half_plane(self) -> bool {
        self != SpaceKind::FullPlane
    }

    pub fn ensure_base(self, q: Point) -> Result<()> {
        if self.contains(q) {
            Ok(())
        } else {
            Err(GrushinError::BasePointOutsideSpace { q, space: self })
        }
    }

    pub fn ensure_point(self, p: Point) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(GrushinError::PointOutsideSpace { p, space: self })
        }
    }
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpaceKind::FullPlane => "plane",
            SpaceKind::HalfPlanePlus => "halfplane+",
            SpaceKind::HalfPlaneMinus => "halfplane-",
        })
    }
}

impl FromStr for SpaceKind {
    type Err = GrushinError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plane" | "full" | "FullPlane" => Ok(SpaceKind::FullPlane),
            "halfplane+" | "half+" | "HalfPlanePlus" => Ok(SpaceKind::HalfPlanePlus),
            "halfplane-" | "half-" | "HalfPlaneMinus" => Ok(SpaceKind::HalfPlaneMinus),
            other => Err(GrushinError::InvalidInput(format!(
                "unknown space `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeodesicSpec {
    pub q: Point,
    pub lam: Covector,
}

impl GeodesicSpec {
    pub fn new(q: Point, lam: Covector) -> Self {
        Self { q, lam }
    }

    pub fn at(&self, t: f64) -> Point {
        exp_map(self.q, self.lam, t)
    }

    pub fn length(&self) -> f64 {
        (2.0 * hamiltonian(self.q, self.lam)).sqrt()
    }
}

/// `H = (u² + x²v²)/2`.
#[inline]
pub fn hamiltonian(q: Point, lam: Covector) -> f64 {
    0.5 * (lam.u * lam.u + q.x * q.x * lam.v * lam.v)
}

/// `exp_q(tλ)`.
#[inline]
pub fn exp_map(q: Point, lam: Covector, t: f64) -> Point {
    exp_map_with(q, lam, t, Branch::Auto)
}

pub(crate) fn exp_map_with(q: Point, lam: Covector, t: f64, branch: Branch) -> Point {
    let (x, u) = (q.x, lam.u);
    let w = t * lam.v;
    let ut = u * t;
    let xt = x * w.cos() + ut * kernels::sinc(w, branch);
    let yt = q.y
        + x * x * kernels::vertical_x2(w)
        + x * ut * kernels::vertical_xu(w, branch)
        + ut * ut * kernels::vertical_u2(w, branch);
    Point::new(xt, yt)
}

/// Momentum `u_t` along the flow; `v` is conserved.
pub fn costate(q: Point, lam: Covector, t: f64) -> Covector {
    let w = t * lam.v;
    Covector::new(lam.u * w.cos() - q.x * lam.v * w.sin(), lam.v)
}

/// Differential of `λ ↦ exp_q(λ)` at time 1, as `[[∂x/∂u, ∂x/∂v], [∂y/∂u, ∂y/∂v]]`.
pub fn exp_differential(q: Point, lam: Covector) -> [[f64; 2]; 2] {
    let (x, u, v) = (q.x, lam.u, lam.v);
    let b = Branch::Auto;
    let s = kernels::sinc(v, b);
    let dxdu = s;
    let dxdv = -x * v.sin() - u * v * kernels::sin_minus_wcos_over_cube(v, b);
    let dydu = x * kernels::vertical_xu(v, b) + 2.0 * u * kernels::vertical_u2(v, b);
    let c = v.cos();
    let dydv = x * x * c * c
        + x * u * kernels::vertical_xu_prime(v, b)
        + u * u * kernels::vertical_u2_prime(v, b);
    [[dxdu, dxdv], [dydu, dydv]]
}

/// Jacobian determinant of `λ ↦ exp_q(λ)`:
/// `((u² + u v² x + v² x²) sin v − u² v cos v) / v³`.
#[inline]
pub fn exp_jacobian(q: Point, lam: Covector) -> f64 {
    exp_jacobian_with(q, lam, Branch::Auto)
}

pub(crate) fn exp_jacobian_with(q: Point, lam: Covector, branch: Branch) -> f64 {
    let (x, u, v) = (q.x, lam.u, lam.v);
    u * u * kernels::sin_minus_wcos_over_cube(v, branch)
        + (u * x + x * x) * kernels::sinc(v, branch)
}

/// Membership of `λ` in the injectivity domain `D_q` (or its half-plane restriction).
///
/// The half-plane condition only checks the endpoint `t = 1`: inside `|v| < π`
/// the abscissa along the ray changes sign at most once.
pub fn in_injectivity_domain(q: Point, lam: Covector, space: SpaceKind) -> Result<bool> {
    space.ensure_base(q)?;
    if !lam.is_finite() || hamiltonian(q, lam) == 0.0 || lam.v.abs() >= PI {
        return Ok(false);
    }
    if space.is_half_plane() {
        let end = exp_map(q, lam, 1.0);
        return Ok(space.side() * end.x >= -HALF_PLANE_SLACK);
    }
    Ok(true)
}

/// `n` points of `t ↦ exp_q(tλ)` at `t = i/(n-1)`.
pub fn geodesic_samples(spec: &GeodesicSpec, n: usize) -> Result<Vec<Point>> {
    if n < 2 {
        return Err(GrushinError::InvalidInput(format!(
            "need at least 2 samples, got {n}"
        )));
    }
    let last = (n - 1) as f64;
    Ok((0..n).map(|i| spec.at(i as f64 / last)).collect())
}

/// Anisotropic dilation `(x, y) ↦ (εx, ε²y)`; scales distances by `ε`.
pub fn dilate(p: Point, eps: f64) -> Point {
    Point::new(eps * p.x, eps * eps * p.y)
}

/// Reflection across the `y`-axis.
pub fn reflect_x(p: Point) -> Point {
    Point::new(-p.x, p.y)
}

pub fn translate_y(p: Point, c: f64) -> Point {
    Point::new(p.x, p.y + c)
}

/// A Borel set given by a simple shape.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "lowercase")]
pub enum Region {
    Disk {
        center: Point,
        radius: f64,
    },
    Rectangle {
        x_min: f64,
        x_max: f64,
        y_min: f64,
        y_max: f64,
    },
}

impl Region {
    pub fn disk(center: Point, radius: f64) -> Self {
        Region::Disk { center, radius }
    }

    pub fn rectangle(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Self {
        Region::Rectangle {
            x_min,
            x_max,
            y_min,
            y_max,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            Region::Disk { center, radius } => {
                center.is_finite() && radius.is_finite() && radius > 0.0
            }
            Region::Rectangle {
                x_min,
                x_max,
                y_min,
                y_max,
            } => {
                [x_min, x_max, y_min, y_max].iter().all(|v| v.is_finite())
                    && x_min < x_max
                    && y_min < y_max
            }
        };
        if ok {
            Ok(())
        } else {
            Err(GrushinError::InvalidInput(format!(
                "malformed region {self:?}"
            )))
        }
    }

    pub fn area(&self) -> f64 {
        match *self {
            Region::Disk { radius, .. } => PI * radius * radius,
            Region::Rectangle {
                x_min,
                x_max,
                y_min,
                y_max,
            } => (x_max - x_min) * (y_max - y_min),
        }
    }

    pub fn contains(&self, p: Point) -> bool {
        match *self {
            Region::Disk { center, radius } => p.coord_dist(&center) <= radius,
            Region::Rectangle {
                x_min,
                x_max,
                y_min,
                y_max,
            } => (x_min..=x_max).contains(&p.x) && (y_min..=y_max).contains(&p.y),
        }
    }

    /// Lebesgue area of the part with `x ≥ 0`.
    pub fn area_right_of_axis(&self) -> f64 {
        match *self {
            Region::Disk { center, radius } => {
                let c = center.x;
                if c >= radius {
                    PI * radius * radius
                } else if c <= -radius {
                    0.0
                } else {
                    radius * radius * (-c / radius).acos() + c * (radius * radius - c * c).sqrt()
                }
            }
            Region::Rectangle {
                x_min,
                x_max,
                y_min,
                y_max,
            } => (x_max - x_min.max(0.0)).max(0.0) * (y_max - y_min),
        }
    }

    pub fn inside_space(&self, space: SpaceKind) -> bool {
        let (lo, hi) = match *self {
            Region::Disk { center, radius } => (center.x - radius, center.x + radius),
            Region::Rectangle { x_min, x_max, .. } => (x_min, x_max),
        };
        match space {
            SpaceKind::FullPlane => true,
            SpaceKind::HalfPlanePlus => lo >= 0.0,
            SpaceKind::HalfPlaneMinus => hi <= 0.0,
        }
    }

    pub fn center(&self) -> Point {
        match *self {
            Region::Disk { center, .. } => center,
            Region::Rectangle {
                x_min,
                x_max,
                y_min,
                y_max,
            } => Point::new(0.5 * (x_min + x_max), 0.5 * (y_min + y_max)),
        }
    }

    /// Uniform sample.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        match *self {
            Region::Disk { center, radius } => {
                let r = radius * rng.random::<f64>().sqrt();
                let theta = 2.0 * PI * rng.random::<f64>();
                Point::new(center.x + r * theta.cos(), center.y + r * theta.sin())
            }
            Region::Rectangle {
                x_min,
                x_max,
                y_min,
                y_max,
            } => Point::new(
                x_min + (x_max - x_min) * rng.random::<f64>(),
                y_min + (y_max - y_min) * rng.random::<f64>(),
            ),
        }
    }
}
