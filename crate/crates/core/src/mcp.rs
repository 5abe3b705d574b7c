//! Measure contraction `MCP(0, N)` through the Jacobian ratio.
//!
//! Contracting a set toward `q` along the unique geodesics multiplies its
//! Lebesgue measure by `t² J(tλ)/J(λ)` pointwise in covector coordinates, so
//! `MCP(0, N)` holds iff `J(tλ)/J(λ) ≥ t^(N−2)` on the injectivity domain.
//! Differentiating `log J(sλ)` at `s = 1` gives the least `N` that works
//! infinitesimally at `λ`; its supremum over the (star-shaped) domain is the
//! optimal dimension. The three branches have closed forms:
//!
//! * `v = 0`:  `(4u² + 9xu + 6x²)/(u² + 3xu + 3x²)`
//! * `u = 0`:  `1 + v cot v`
//! * general:  `1 + v f_a′(v)/f_a(v)` with `a = vx/u` and
//!   `f_a(v) = (1 + av + a²) sin v − v cos v`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distance::{invert_exp, invert_exp_from};
use crate::error::{GrushinError, Result};
use crate::geometry::{exp_jacobian, in_injectivity_domain, Covector, Point, Region, SpaceKind};
use crate::kernels::{self, Branch};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BranchTag {
    VZero,
    UZero,
    General,
}

impl BranchTag {
    pub fn of(lam: Covector) -> Self {
        if lam.v == 0.0 {
            BranchTag::VZero
        } else if lam.u == 0.0 {
            BranchTag::UZero
        } else {
            BranchTag::General
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioPoint {
    pub q: Point,
    pub lam: Covector,
    pub t: f64,
    /// `a = vx/u`, present when `u ≠ 0`.
    pub a: Option<f64>,
}

impl RatioPoint {
    pub fn new(q: Point, lam: Covector, t: f64) -> Self {
        let a = (lam.u != 0.0).then(|| lam.v * q.x / lam.u);
        Self { q, lam, t, a }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoeffTriple {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
}

fn ensure_domain(q: Point, lam: Covector, space: SpaceKind) -> Result<()> {
    if in_injectivity_domain(q, lam, space)? {
        Ok(())
    } else {
        Err(GrushinError::DomainError(format!(
            "covector ({}, {}) at ({}, {}) is not in the {space} injectivity domain",
            lam.u, lam.v, q.x, q.y
        )))
    }
}

/// `J(x, y, tu, tv) / J(x, y, u, v)`.
pub fn jacobian_ratio(q: Point, lam: Covector, t: f64, space: SpaceKind) -> Result<f64> {
    ensure_domain(q, lam, space)?;
    if !(t > 0.0 && t <= 1.0) {
        return Err(GrushinError::InvalidInput(format!(
            "t = {t} must lie in (0, 1]"
        )));
    }
    Ok(ratio_unchecked(q, lam, t))
}

#[inline]
fn ratio_unchecked(q: Point, lam: Covector, t: f64) -> f64 {
    exp_jacobian(q, lam.scale(t)) / exp_jacobian(q, lam)
}

/// The product with `ℝᵏ` multiplies the ratio by `tᵏ`.
pub fn product_jacobian_ratio(
    q: Point,
    lam: Covector,
    t: f64,
    k: u32,
    space: SpaceKind,
) -> Result<f64> {
    Ok(jacobian_ratio(q, lam, t, space)? * t.powi(k as i32))
}

/// `f_a(v) = (1 + av + a²) sin v − v cos v`, written to avoid cancellation.
pub fn f_a(a: f64, v: f64) -> f64 {
    (a * v + a * a) * v.sin() + v * v * v * kernels::sin_minus_wcos_over_cube(v, Branch::Auto)
}

pub fn f_a_prime(a: f64, v: f64) -> f64 {
    a * v.sin() + (a * v + a * a) * v.cos() + v * v.sin()
}

fn pointwise_unchecked(q: Point, lam: Covector) -> f64 {
    let (x, u, v) = (q.x, lam.u, lam.v);
    match BranchTag::of(lam) {
        BranchTag::VZero => {
            (4.0 * u * u + 9.0 * x * u + 6.0 * x * x) / (u * u + 3.0 * x * u + 3.0 * x * x)
        }
        BranchTag::UZero => 1.0 + kernels::w_cot(v, Branch::Auto),
        BranchTag::General => {
            let a = v * x / u;
            1.0 + v * f_a_prime(a, v) / f_a(a, v)
        }
    }
}

/// Least `N` for which the infinitesimal form of `J(tλ)/J(λ) ≥ t^(N−2)` holds at `λ`.
pub fn pointwise_n(q: Point, lam: Covector, space: SpaceKind) -> Result<f64> {
    ensure_domain(q, lam, space)?;
    Ok(pointwise_unchecked(q, lam))
}

/// `2 + log(J(tλ)/J(λ)) / log t`: the least `N` for which the ratio
/// inequality holds at this single `t ∈ (0, 1)`.
pub fn direct_estimate(q: Point, lam: Covector, t: f64, space: SpaceKind) -> Result<f64> {
    if !(t > 0.0 && t < 1.0) {
        return Err(GrushinError::InvalidInput(format!(
            "t = {t} must lie in (0, 1)"
        )));
    }
    Ok(2.0 + jacobian_ratio(q, lam, t, space)?.ln() / t.ln())
}

/// `(N−4)u² + 3x(N−3)u + 3x²(N−2)`: the `v = 0` integrand inequality.
pub fn vzero_critical_form(x: f64, u: f64, n: f64) -> f64 {
    (n - 4.0) * u * u + 3.0 * x * (n - 3.0) * u + 3.0 * x * x * (n - 2.0)
}

pub fn coeff_triple(v: f64) -> CoeffTriple {
    let (s, c) = (v.sin(), v.cos());
    CoeffTriple {
        c0: c0(v),
        c1: 2.0 * s - v * c,
        c2: 3.0 * s - v * c,
    }
}

/// `c₀(v) = 3 sin v − 3v cos v − v² sin v = ∫₀ᵛ z(sin z − z cos z) dz`.
fn c0(v: f64) -> f64 {
    if v.abs() < 0.1 {
        let v2 = v * v;
        v2 * v2 * v * (1.0 / 15.0 - v2 / 210.0 + v2 * v2 / 7560.0 - v2 * v2 * v2 / 498_960.0)
    } else {
        3.0 * v * v * v * kernels::sin_minus_wcos_over_cube(v, Branch::Auto) - v * v * v.sin()
    }
}

/// Left side of the half-plane domain condition in the `(a, v)` variables:
/// `a² cos v + a sin v`.
pub fn half_plane_condition(a: f64, v: f64) -> f64 {
    a * a * v.cos() + a * v.sin()
}

/// `2a² cos v + a(2 sin v − v cos v)`, a lower bound for the `N = 4` quadratic form.
pub fn easier_form(a: f64, v: f64) -> f64 {
    2.0 * a * a * v.cos() + a * (2.0 * v.sin() - v * v.cos())
}

/// `(N−1) f_a(v) − v f_a′(v)`; nonnegative iff the general-branch integrand
/// inequality holds at `N`. For `N = 4` this is `c₂a² + v c₁a + c₀`.
pub fn quadratic_form_check(a: f64, v: f64, n: f64) -> Result<f64> {
    if !(v > 0.0 && v < PI) {
        return Err(GrushinError::DomainError(format!(
            "v = {v} must lie in (0, π)"
        )));
    }
    if a == 0.0 || half_plane_condition(a, v) < -1e-12 {
        return Err(GrushinError::DomainError(format!(
            "(a, v) = ({a}, {v}) violates a² cos v + a sin v ≥ 0"
        )));
    }
    Ok((n - 1.0) * f_a(a, v) - v * f_a_prime(a, v))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ScanConfig {
    /// Smallest and largest `|u|`; log-spaced, both signs.
    pub u_min: f64,
    pub u_max: f64,
    pub n_u: usize,
    /// `|v|` uniform on `[v_min, π − v_margin]`, both signs.
    pub v_min: f64,
    pub v_margin: f64,
    pub n_v: usize,
    /// Base-point abscissae `|x|`; mirrored into the left half-plane when needed.
    pub x_grid: Vec<f64>,
    pub t_grid: Vec<f64>,
    pub tol: f64,
    /// Restrict the scan to these branches; empty means all.
    pub branches: Vec<BranchTag>,
    /// Golden-section refinement of interior maxima.
    pub refine: bool,
}

impl Default for ScanConfig {
    fn default() -> Self {
        let mut t_grid: Vec<f64> = (1..20).map(|k| k as f64 * 0.05).collect();
        t_grid.extend([0.99, 0.999, 0.9999, 0.99999, 0.999999]);
        Self {
            u_min: 1e-3,
            u_max: 1e4,
            n_u: 561,
            v_min: 1e-4,
            v_margin: 1e-4,
            n_v: 241,
            x_grid: vec![1.0],
            t_grid,
            tol: 1e-3,
            branches: Vec::new(),
            refine: true,
        }
    }
}

impl ScanConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(GrushinError::InvalidInput(m.to_string()));
        if !(self.u_min > 0.0 && self.u_max > self.u_min && self.n_u >= 2) {
            return bad("u grid needs 0 < u_min < u_max and n_u ≥ 2");
        }
        if !(self.v_min > 0.0
            && self.v_margin > 0.0
            && self.v_min < PI - self.v_margin
            && self.n_v >= 2)
        {
            return bad("v grid needs 0 < v_min < π − v_margin and n_v ≥ 2");
        }
        if self.x_grid.is_empty() || self.x_grid.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return bad("x grid must be nonempty with finite x ≥ 0");
        }
        if self.t_grid.is_empty() || self.t_grid.iter().any(|t| !(*t > 0.0 && *t < 1.0)) {
            return bad("t grid must be nonempty and inside (0, 1)");
        }
        if !(self.tol >= 0.0) {
            return bad("tol must be nonnegative");
        }
        Ok(())
    }

    fn wants(&self, b: BranchTag) -> bool {
        self.branches.is_empty() || self.branches.contains(&b)
    }

    fn u_values(&self) -> Vec<f64> {
        let (lo, hi) = (self.u_min.ln(), self.u_max.ln());
        let mags: Vec<f64> = (0..self.n_u)
            .map(|i| {
                if i == 0 {
                    self.u_min
                } else if i == self.n_u - 1 {
                    self.u_max
                } else {
                    (lo + (hi - lo) * i as f64 / (self.n_u - 1) as f64).exp()
                }
            })
            .collect();
        mags.iter()
            .rev()
            .map(|m| -m)
            .chain(mags.iter().copied())
            .collect()
    }

    fn v_max(&self) -> f64 {
        PI - self.v_margin
    }

    fn v_values(&self) -> Vec<f64> {
        let (lo, hi) = (self.v_min, self.v_max());
        let mags: Vec<f64> = (0..self.n_v)
            .map(|i| lo + (hi - lo) * i as f64 / (self.n_v - 1) as f64)
            .collect();
        mags.iter()
            .rev()
            .map(|m| -m)
            .chain(mags.iter().copied())
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Supremum {
    Attained,
    /// Witness sits on the edge of the sampled grid; the supremum is a limit.
    Approached,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanWitness {
    pub point: RatioPoint,
    pub branch: BranchTag,
    pub pointwise_n: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub space: SpaceKind,
    pub n_min: f64,
    pub supremum: Supremum,
    /// Limit of the pointwise value along the grid edge holding the witness.
    pub analytic_limit: Option<f64>,
    pub witness: ScanWitness,
    pub branch_sups: BTreeMap<BranchTag, f64>,
    /// `2 + sup log(ratio)/log(t)` over the sampled covectors and t-grid.
    pub direct_n: f64,
    pub estimators_agree: bool,
    pub samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub q: Point,
    pub lam: Covector,
    /// Grid time with the largest direct estimate at `lam`.
    pub t: f64,
    pub pointwise_n: f64,
    pub ratio: f64,
    /// `t^(N−2)` for the tested `N`; the ratio falls below it at a violation.
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verification {
    pub space: SpaceKind,
    pub n: f64,
    pub holds: bool,
    pub max_pointwise_n: f64,
    pub witness: Option<Witness>,
    pub report: ScanReport,
}

#[derive(Clone, Copy)]
struct Sample {
    q: Point,
    lam: Covector,
    branch: BranchTag,
    n: f64,
    direct: f64,
    direct_t: f64,
}

/// Larger value wins; exact ties go to the lexicographically smaller witness.
fn beats(a: &Sample, b: &Sample) -> bool {
    match a.n.total_cmp(&b.n) {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Equal => (a.q.x, a.lam.u, a.lam.v) < (b.q.x, b.lam.u, b.lam.v),
    }
}

fn base_points(space: SpaceKind, cfg: &ScanConfig) -> Vec<Point> {
    let mut xs: Vec<f64> = Vec::new();
    for &x in &cfg.x_grid {
        match space {
            SpaceKind::HalfPlanePlus => xs.push(x),
            SpaceKind::HalfPlaneMinus => xs.push(-x),
            SpaceKind::FullPlane => {
                xs.push(x);
                // the plane is symmetric under x ↦ −x, one side suffices
            }
        }
    }
    xs.into_iter().map(|x| Point::new(x, 0.0)).collect()
}

fn evaluate(q: Point, lam: Covector, space: SpaceKind, t_grid: &[f64]) -> Option<Sample> {
    if !in_injectivity_domain(q, lam, space).ok()? {
        return None;
    }
    let n = pointwise_unchecked(q, lam);
    let j1 = exp_jacobian(q, lam);
    let (mut direct, mut direct_t) = (f64::NEG_INFINITY, t_grid[0]);
    for &t in t_grid {
        let d = 2.0 + (exp_jacobian(q, lam.scale(t)) / j1).ln() / t.ln();
        if d > direct {
            direct = d;
            direct_t = t;
        }
    }
    Some(Sample {
        q,
        lam,
        branch: BranchTag::of(lam),
        n,
        direct,
        direct_t,
    })
}

fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = hi - g * (hi - lo);
    let mut d = lo + g * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (hi - lo).abs() <= tol * (1.0 + c.abs()) {
            break;
        }
        if fc >= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - g * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + g * (hi - lo);
            fd = f(d);
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Estimate the least `N` for which `MCP(0, N)` holds on `space`.
pub fn scan_min_n(space: SpaceKind, cfg: &ScanConfig) -> Result<ScanReport> {
    cfg.validate()?;
    let us = cfg.u_values();
    let vs = cfg.v_values();
    let mut cands: Vec<(Point, Covector)> = Vec::new();
    for q in base_points(space, cfg) {
        if cfg.wants(BranchTag::VZero) {
            cands.extend(us.iter().map(|&u| (q, Covector::new(u, 0.0))));
        }
        if cfg.wants(BranchTag::UZero) {
            cands.extend(vs.iter().map(|&v| (q, Covector::new(0.0, v))));
        }
        if cfg.wants(BranchTag::General) {
            for &u in &us {
                cands.extend(vs.iter().map(|&v| (q, Covector::new(u, v))));
            }
        }
    }
    let evaluated: Vec<Option<Sample>> = cands
        .par_iter()
        .map(|&(q, lam)| evaluate(q, lam, space, &cfg.t_grid))
        .collect();

    let mut best: Option<Sample> = None;
    let mut branch_sups: BTreeMap<BranchTag, f64> = BTreeMap::new();
    let mut direct_n = f64::NEG_INFINITY;
    let mut samples = 0usize;
    for s in evaluated.into_iter().flatten() {
        samples += 1;
        let e = branch_sups.entry(s.branch).or_insert(f64::NEG_INFINITY);
        *e = e.max(s.n);
        direct_n = direct_n.max(s.direct);
        if best.as_ref().map_or(true, |b| beats(&s, b)) {
            best = Some(s);
        }
    }
    let mut best =
        best.ok_or_else(|| GrushinError::InvalidInput("scan grid has no domain points".into()))?;

    let u_edge = |u: f64| {
        let m = u.abs();
        m == cfg.u_max || m == cfg.u_min
    };
    let v_edge = |v: f64| {
        let m = v.abs();
        m == cfg.v_min || m == cfg.v_max()
    };
    let (supremum, analytic_limit) = match best.branch {
        BranchTag::VZero if u_edge(best.lam.u) => {
            // N(u) → 4 as |u| → ∞ and → 2 as u → 0
            let lim = if best.lam.u.abs() == cfg.u_max {
                4.0
            } else {
                2.0
            };
            (Supremum::Approached, Some(lim))
        }
        BranchTag::UZero if v_edge(best.lam.v) => {
            let lim = if best.lam.v.abs() == cfg.v_min {
                2.0
            } else {
                f64::NEG_INFINITY
            };
            (Supremum::Approached, lim.is_finite().then_some(lim))
        }
        BranchTag::General if u_edge(best.lam.u) || v_edge(best.lam.v) => {
            (Supremum::Approached, None)
        }
        _ => (Supremum::Attained, None),
    };

    if cfg.refine && supremum == Supremum::Attained && best.branch == BranchTag::VZero {
        let i = us.iter().position(|&u| u == best.lam.u).unwrap_or(0);
        let lo = us[i.saturating_sub(1)];
        let hi = us[(i + 1).min(us.len() - 1)];
        let q = best.q;
        let f = |u: f64| {
            let lam = Covector::new(u, 0.0);
            match in_injectivity_domain(q, lam, space) {
                Ok(true) => pointwise_unchecked(q, lam),
                _ => f64::NEG_INFINITY,
            }
        };
        let (u, n) = golden_max(f, lo, hi, 1e-12);
        if n >= best.n {
            if let Some(s) = evaluate(q, Covector::new(u, 0.0), space, &cfg.t_grid) {
                best = s;
                let e = branch_sups.entry(BranchTag::VZero).or_insert(n);
                *e = e.max(n);
            }
        }
    }

    let n_min = branch_sups
        .values()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(ScanReport {
        space,
        n_min,
        supremum,
        analytic_limit,
        witness: ScanWitness {
            point: RatioPoint::new(best.q, best.lam, best.direct_t),
            branch: best.branch,
            pointwise_n: best.n,
        },
        branch_sups,
        direct_n,
        estimators_agree: (direct_n - n_min).abs() <= cfg.tol,
        samples,
    })
}

/// Check `MCP(0, N)` on the sampled domain: true iff no sampled covector has
/// pointwise dimension above `N + tol`.
pub fn verify_mcp(space: SpaceKind, n: f64, cfg: &ScanConfig) -> Result<Verification> {
    if !(n > 2.0) {
        return Err(GrushinError::BadDimension(n));
    }
    let report = scan_min_n(space, cfg)?;
    let holds = report.n_min <= n + cfg.tol;
    let witness = (!holds).then(|| {
        let w = report.witness;
        let ratio = ratio_unchecked(w.point.q, w.point.lam, w.point.t);
        Witness {
            q: w.point.q,
            lam: w.point.lam,
            t: w.point.t,
            pointwise_n: w.pointwise_n,
            ratio,
            bound: w.point.t.powf(n - 2.0),
        }
    });
    Ok(Verification {
        space,
        n,
        holds,
        max_pointwise_n: report.n_min,
        witness,
        report,
    })
}

/// Minimal dimension of the product with `ℝᵏ`: dimensions add.
pub fn product_min_n(report: &ScanReport, k: u32) -> f64 {
    report.n_min + k as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContractionEstimate {
    pub t: f64,
    /// Monte Carlo estimate of `m(φ_t(A))`.
    pub lhs: f64,
    /// `t^N m(A)`.
    pub rhs: f64,
    pub std_err: f64,
    pub samples_used: usize,
    pub discarded: usize,
}

impl ContractionEstimate {
    /// `lhs ≥ rhs` up to `sigmas` standard errors.
    pub fn holds_within(&self, sigmas: f64) -> bool {
        self.lhs + sigmas * self.std_err >= self.rhs
    }
}

/// Set-level contraction check `m(φ_t(A)) ≥ t^N m(A)` toward `q`.
pub fn set_contraction_check(
    q: Point,
    region: &Region,
    t: f64,
    n: f64,
    space: SpaceKind,
    n_samples: usize,
    seed: u64,
) -> Result<ContractionEstimate> {
    Ok(set_contraction_profile(q, region, &[t], n, space, n_samples, seed)?[0])
}

/// Same as [`set_contraction_check`] for several `t`, sharing one set of samples.
///
/// `m(φ_t(A)) = ∫_Ā t² J(tλ) dλ` over `Ā = exp_q⁻¹(A)`; with `p` uniform on `A`
/// and `dp = J(λ) dλ` this is `m(A) · E[t² J(tλ)/J(λ)]`.
pub fn set_contraction_profile(
    q: Point,
    region: &Region,
    ts: &[f64],
    n: f64,
    space: SpaceKind,
    n_samples: usize,
    seed: u64,
) -> Result<Vec<ContractionEstimate>> {
    region.validate()?;
    space.ensure_base(q)?;
    if !region.inside_space(space) {
        return Err(GrushinError::InvalidInput(format!(
            "region is not inside the {space} space"
        )));
    }
    if n_samples < 2 {
        return Err(GrushinError::InvalidInput("need at least 2 samples".into()));
    }
    if let Some(t) = ts.iter().find(|t| !(**t >= 0.0 && **t <= 1.0)) {
        return Err(GrushinError::InvalidInput(format!(
            "t = {t} must lie in [0, 1]"
        )));
    }
    let area = region.area();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<Point> = (0..n_samples).map(|_| region.sample(&mut rng)).collect();
    let center = region.center();
    let center_lam = if center != q {
        invert_exp(q, center, space).ok()
    } else {
        None
    };

    let values: Vec<Option<Vec<f64>>> = points
        .par_iter()
        .map(|&p| {
            if p == q {
                return None;
            }
            let lam = center_lam
                .and_then(|seed| invert_exp_from(q, p, seed))
                .or_else(|| invert_exp(q, p, space).ok())?;
            let j1 = exp_jacobian(q, lam);
            Some(
                ts.iter()
                    .map(|&t| t * t * exp_jacobian(q, lam.scale(t)) / j1)
                    .collect(),
            )
        })
        .collect();

    let used: Vec<&Vec<f64>> = values.iter().flatten().collect();
    let m = used.len();
    let discarded = n_samples - m;
    if m < 2 {
        return Err(GrushinError::NotInImage { residual: f64::NAN });
    }
    Ok(ts
        .iter()
        .enumerate()
        .map(|(k, &t)| {
            let mean = used.iter().map(|v| v[k]).sum::<f64>() / m as f64;
            let var = used.iter().map(|v| (v[k] - mean).powi(2)).sum::<f64>() / (m - 1) as f64;
            ContractionEstimate {
                t,
                lhs: area * mean,
                rhs: t.powf(n) * area,
                std_err: area * (var / m as f64).sqrt(),
                samples_used: m,
                discarded,
            }
        })
        .collect())
}
