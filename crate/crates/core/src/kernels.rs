//! Scalar kernels shared by the exponential map and its Jacobian.
//!
//! Every kernel that loses digits to cancellation near zero has two branches:
//! the closed form, and a degree-8 Taylor expansion used when `|w|` is below
//! [`SERIES_THRESHOLD`]. Both branches are exposed so the seam can be tested.

/// Below this `|w|` the Taylor branch is used.
pub const SERIES_THRESHOLD: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Auto,
    Closed,
    #[cfg_attr(not(test), allow(dead_code))]
    Series,
}

impl Branch {
    #[inline]
    fn use_series(self, w: f64) -> bool {
        match self {
            Branch::Auto => w.abs() < SERIES_THRESHOLD,
            Branch::Closed => false,
            Branch::Series => true,
        }
    }
}

/// `sin(w) / w`.
#[inline]
pub fn sinc(w: f64, branch: Branch) -> f64 {
    if branch.use_series(w) {
        let w2 = w * w;
        1.0 - w2 / 6.0 * (1.0 - w2 / 20.0 * (1.0 - w2 / 42.0 * (1.0 - w2 / 72.0)))
    } else {
        w.sin() / w
    }
}

/// `(sin(w) - w cos(w)) / w³`, equal to `1/3` at the origin.
#[inline]
pub fn sin_minus_wcos_over_cube(w: f64, branch: Branch) -> f64 {
    if branch.use_series(w) {
        let w2 = w * w;
        1.0 / 3.0 - w2 / 30.0 + w2 * w2 / 840.0 - w2 * w2 * w2 / 45_360.0
            + w2 * w2 * w2 * w2 / 3_991_680.0
    } else {
        (w.sin() - w * w.cos()) / (w * w * w)
    }
}

/// `(2w - sin(2w)) / (4w²)`, the `u²` coefficient of the vertical displacement.
#[inline]
pub fn vertical_u2(w: f64, branch: Branch) -> f64 {
    if branch.use_series(w) {
        let w2 = w * w;
        w * (1.0 / 3.0 - w2 / 15.0 + 2.0 * w2 * w2 / 315.0 - w2 * w2 * w2 / 2835.0)
    } else {
        (2.0 * w - (2.0 * w).sin()) / (4.0 * w * w)
    }
}

/// Derivative of [`vertical_u2`].
#[inline]
pub fn vertical_u2_prime(w: f64, branch: Branch) -> f64 {
    if branch.use_series(w) {
        let w2 = w * w;
        1.0 / 3.0 - w2 / 5.0 + 2.0 * w2 * w2 / 63.0 - w2 * w2 * w2 / 405.0
            + 2.0 * w2 * w2 * w2 * w2 / 17_325.0
    } else {
        let s = w.sin() / w;
        s * s - 2.0 * vertical_u2(w, Branch::Closed) / w
    }
}

/// `(2w + sin(2w)) / 4`, the `x²` coefficient of the vertical displacement.
#[inline]
pub fn vertical_x2(w: f64) -> f64 {
    (2.0 * w + (2.0 * w).sin()) / 4.0
}

/// `sin²(w) / w`, the `x u` coefficient of the vertical displacement.
#[inline]
pub fn vertical_xu(w: f64, branch: Branch) -> f64 {
    w.sin() * sinc(w, branch)
}

/// Derivative of [`vertical_xu`].
#[inline]
pub fn vertical_xu_prime(w: f64, branch: Branch) -> f64 {
    let s = sinc(w, branch);
    2.0 * w.cos() * s - s * s
}

/// `w cot(w)`, equal to 1 at the origin.
#[inline]
pub fn w_cot(w: f64, branch: Branch) -> f64 {
    if branch.use_series(w) {
        let w2 = w * w;
        1.0 - w2 / 3.0 - w2 * w2 / 45.0 - 2.0 * w2 * w2 * w2 / 945.0 - w2 * w2 * w2 * w2 / 4725.0
    } else {
        w * w.cos() / w.sin()
    }
}
