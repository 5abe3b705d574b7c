//! The metric-measure double of the right half-plane.
//!
//! Two copies `A`, `B` of `{x ≥ 0}` glued by the identity along the y-axis.
//! A path between copies must cross the axis, so the cross-copy distance is
//! the infimum over `s` of `d₊(p, (0, s)) + d₊(q, (0, s))`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distance::distance;
use crate::error::{GrushinError, Result};
use crate::geometry::{reflect_x, Point, Region, SpaceKind};

const HALF: SpaceKind = SpaceKind::HalfPlanePlus;
const S_GRID: usize = 256;
const S_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sheet {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GluedPoint {
    pub copy: Sheet,
    pub p: Point,
}

impl GluedPoint {
    pub fn new(copy: Sheet, p: Point) -> Result<Self> {
        if !(p.is_finite() && p.x >= 0.0) {
            return Err(GrushinError::PointOutsideSpace { p, space: HALF });
        }
        Ok(Self { copy, p })
    }

    pub fn on_boundary(&self) -> bool {
        self.p.x == 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SheetSelection {
    A,
    B,
    Both,
}

impl SheetSelection {
    fn copies(self) -> f64 {
        match self {
            SheetSelection::Both => 2.0,
            _ => 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BorelSetSpec {
    pub region: Region,
    pub copy: SheetSelection,
}

fn d_half(p: Point, q: Point) -> Result<f64> {
    Ok(distance(p, q, HALF)?.value)
}

fn through_axis(p: Point, q: Point, s: f64) -> Result<f64> {
    let a = Point::new(0.0, s);
    Ok(d_half(p, a)? + d_half(q, a)?)
}

/// Infimum over the axis of `d₊(p, (0,s)) + d₊(q, (0,s))` and the minimizing `s`.
pub fn boundary_infimum(p: Point, q: Point) -> Result<(f64, f64)> {
    // any competitor s satisfies |s − y| ≤ U (x + U), since |ẏ| ≤ |x_t| ≤ x + U
    let u_bound = through_axis(p, q, p.y)?;
    let d = [p, q]
        .iter()
        .map(|r| (r.x + u_bound) * u_bound)
        .fold(0.0, f64::max);
    let lo = p.y.min(q.y) - d;
    let hi = p.y.max(q.y) + d;
    let step = (hi - lo) / (S_GRID - 1) as f64;
    let values: Vec<Result<f64>> = (0..S_GRID)
        .into_par_iter()
        .map(|i| through_axis(p, q, lo + step * i as f64))
        .collect();
    let mut best = (f64::INFINITY, 0usize);
    for (i, v) in values.into_iter().enumerate() {
        let v = v?;
        if v < best.0 {
            best = (v, i);
        }
    }
    let i = best.1;
    let a = lo + step * i.saturating_sub(1) as f64;
    let b = lo + step * (i + 1).min(S_GRID - 1) as f64;
    golden_min(|s| through_axis(p, q, s), a, b)
}

fn golden_min(f: impl Fn(f64) -> Result<f64>, mut a: f64, mut b: f64) -> Result<(f64, f64)> {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    while (b - a).abs() > S_TOL * (1.0 + a.abs().max(b.abs())) {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d)?;
        }
    }
    Ok(if fc <= fd { (fc, c) } else { (fd, d) })
}

pub fn glued_distance(p: GluedPoint, q: GluedPoint) -> Result<f64> {
    let p = GluedPoint::new(p.copy, p.p)?;
    let q = GluedPoint::new(q.copy, q.p)?;
    if p.copy == q.copy || p.on_boundary() || q.on_boundary() {
        return d_half(p.p, q.p);
    }
    Ok(boundary_infimum(p.p, q.p)?.0)
}

/// Sheet `A` is the right half-plane, sheet `B` its mirror image.
pub fn glued_to_plane(p: GluedPoint) -> Point {
    match p.copy {
        Sheet::A => p.p,
        Sheet::B => reflect_x(p.p),
    }
}

/// `|d_double((A,p),(B,q)) − d_plane(p, reflect_x(q))|`.
pub fn double_equivalence_residual(p: Point, q: Point) -> Result<f64> {
    let glued = glued_distance(GluedPoint::new(Sheet::A, p)?, GluedPoint::new(Sheet::B, q)?)?;
    let plane = distance(p, reflect_x(q), SpaceKind::FullPlane)?.value;
    Ok((glued - plane).abs())
}

/// Lebesgue measure of the part of the region lying in `{x ≥ 0}`, counted on
/// each selected copy. The seam is null.
pub fn glued_measure(set: &BorelSetSpec) -> Result<f64> {
    set.region.validate()?;
    Ok(set.copy.copies() * set.region.area_right_of_axis())
}
