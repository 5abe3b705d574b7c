//! Weighted Riemannian data away from the singular axis.
//!
//! Off `x = 0` the metric is `g = dx² + x⁻² dy²` with orthonormal frame
//! `X₁ = ∂x`, `X₂ = x ∂y`, and Lebesgue measure is `e^{−V} vol_g` with
//! `V = −log|x|`. Tensors are stored in coordinate components; frame
//! components are derived from them.

use serde::{Deserialize, Serialize};

use crate::error::{GrushinError, Result};
use crate::geometry::Point;

/// Operations refuse base points with `|x|` below this.
pub const SINGULAR_BAND: f64 = 1e-8;

/// Topological dimension of the plane.
pub const MANIFOLD_DIM: f64 = 2.0;

/// Symmetric bilinear form at a point, in the coordinate coframe `(dx, dy)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TensorEval {
    pub p: Point,
    pub xx: f64,
    pub xy: f64,
    pub yy: f64,
}

impl TensorEval {
    pub fn from_frame(p: Point, f11: f64, f12: f64, f22: f64) -> Result<Self> {
        let x = guard(p)?;
        Ok(Self {
            p,
            xx: f11,
            xy: f12 / x,
            yy: f22 / (x * x),
        })
    }

    /// Components `[[T(X₁,X₁), T(X₁,X₂)], [T(X₂,X₁), T(X₂,X₂)]]`.
    pub fn frame(&self) -> [[f64; 2]; 2] {
        let x = self.p.x;
        let off = x * self.xy;
        [[self.xx, off], [off, x * x * self.yy]]
    }

    pub fn coords(&self) -> [[f64; 2]; 2] {
        [[self.xx, self.xy], [self.xy, self.yy]]
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            p: self.p,
            xx: c * self.xx,
            xy: c * self.xy,
            yy: c * self.yy,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            p: self.p,
            xx: self.xx + o.xx,
            xy: self.xy + o.xy,
            yy: self.yy + o.yy,
        }
    }

    /// Eigenvalues in the orthonormal frame, ascending.
    pub fn frame_eigenvalues(&self) -> [f64; 2] {
        let [[a, b], [_, d]] = self.frame();
        let mean = 0.5 * (a + d);
        let r = (0.5 * (a - d)).hypot(b);
        [mean - r, mean + r]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightedData {
    /// `V(p) = −log|x|`.
    pub v: f64,
    pub n: u32,
    pub big_n: f64,
}

impl WeightedData {
    pub fn at(p: Point, big_n: f64) -> Result<Self> {
        let x = guard(p)?;
        check_dim(big_n)?;
        Ok(Self {
            v: -x.abs().ln(),
            n: 2,
            big_n,
        })
    }
}

fn guard(p: Point) -> Result<f64> {
    if !p.x.is_finite() || p.x.abs() < SINGULAR_BAND {
        return Err(GrushinError::SingularLocus { x: p.x });
    }
    Ok(p.x)
}

fn check_dim(big_n: f64) -> Result<()> {
    if big_n > MANIFOLD_DIM {
        Ok(())
    } else {
        Err(GrushinError::BadDimension(big_n))
    }
}

pub fn metric_at(p: Point) -> Result<TensorEval> {
    let x = guard(p)?;
    Ok(TensorEval {
        p,
        xx: 1.0,
        xy: 0.0,
        yy: 1.0 / (x * x),
    })
}

/// `∇_{Xᵢ}Xⱼ` as coefficients on `(X₁, X₂)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameConnection {
    pub x1_x1: [f64; 2],
    pub x1_x2: [f64; 2],
    pub x2_x1: [f64; 2],
    pub x2_x2: [f64; 2],
}

impl FrameConnection {
    pub fn get(&self, i: usize, j: usize) -> [f64; 2] {
        match (i, j) {
            (1, 1) => self.x1_x1,
            (1, 2) => self.x1_x2,
            (2, 1) => self.x2_x1,
            (2, 2) => self.x2_x2,
            _ => panic!("frame index out of range: ({i}, {j})"),
        }
    }
}

pub fn connection_coeffs(p: Point) -> Result<FrameConnection> {
    let k = 1.0 / guard(p)?;
    Ok(FrameConnection {
        x1_x1: [0.0, 0.0],
        x1_x2: [0.0, 0.0],
        x2_x1: [0.0, -k],
        x2_x2: [k, 0.0],
    })
}

/// `Ric_g = −(2/x²) g`.
pub fn ricci(p: Point) -> Result<TensorEval> {
    let x = guard(p)?;
    Ok(metric_at(p)?.scale(-2.0 / (x * x)))
}

/// `Hess V = (1/x²) g`.
pub fn hess_v(p: Point) -> Result<TensorEval> {
    let x = guard(p)?;
    Ok(metric_at(p)?.scale(1.0 / (x * x)))
}

/// `dV ⊗ dV = (1/x²) dx ⊗ dx`.
pub fn dv_dv(p: Point) -> Result<TensorEval> {
    let x = guard(p)?;
    Ok(TensorEval {
        p,
        xx: 1.0 / (x * x),
        xy: 0.0,
        yy: 0.0,
    })
}

/// `Ric_g + Hess V − dV⊗dV / (N − 2)` assembled from its parts.
pub fn bakry_emery_assembled(p: Point, big_n: f64) -> Result<TensorEval> {
    check_dim(big_n)?;
    Ok(ricci(p)?
        .add(&hess_v(p)?)
        .add(&dv_dv(p)?.scale(-1.0 / (big_n - MANIFOLD_DIM))))
}

/// `Ric_{N,V} = −(1/x²) g − (1/x²) dx⊗dx / (N − 2)`.
pub fn bakry_emery(p: Point, big_n: f64) -> Result<TensorEval> {
    let x = guard(p)?;
    check_dim(big_n)?;
    let k = 1.0 / (x * x);
    Ok(TensorEval {
        p,
        xx: -k - k / (big_n - MANIFOLD_DIM),
        xy: 0.0,
        yy: -k * k,
    })
}

/// Eigenvalues of `Ric_{N,V} + (1/x²) g` in the orthonormal frame.
pub fn shifted_eigenvalues(p: Point, big_n: f64) -> Result<[f64; 2]> {
    let x = guard(p)?;
    let t = bakry_emery_assembled(p, big_n)?.add(&metric_at(p)?.scale(1.0 / (x * x)));
    Ok(t.frame_eigenvalues())
}

/// Whether `Ric_{N,V} ≤ −(1/x²) g` holds at `p`.
pub fn negativity_check(p: Point, big_n: f64) -> Result<bool> {
    Ok(shifted_eigenvalues(p, big_n)?.iter().all(|&l| l <= 1e-12))
}

/// Gauss curvature of `dx² + G(x) dy²` by finite differences:
/// `K = −(√G)″ / √G`.
pub fn fd_gauss_curvature(p: Point, h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(GrushinError::InvalidInput(format!(
            "step h = {h} must be positive"
        )));
    }
    if !(p.x.abs() > 2.0 * h) {
        return Err(GrushinError::SingularLocus { x: p.x });
    }
    let root_g = |x: f64| -> Result<f64> { Ok(metric_at(Point::new(x, p.y))?.yy.sqrt()) };
    let (l, c, r) = (root_g(p.x - h)?, root_g(p.x)?, root_g(p.x + h)?);
    Ok(-((r - 2.0 * c + l) / (h * h)) / c)
}
