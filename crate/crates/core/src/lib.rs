//! Numerical geometry of the Grushin plane `dx² + dy²/x²`, its closed
//! half-planes, and the metric-measure double obtained by gluing two
//! half-planes along the axis.
//!
//! The crate evaluates the exponential map and its Jacobian in closed form,
//! computes distances by inverting the exponential map, and scans the
//! Jacobian-ratio inequality that decides the measure contraction property
//! `MCP(0, N)`. A lattice shortest-path oracle backs up the distance solver
//! where Newton inversion cannot apply.

pub mod curvature;
pub mod cutlocus;
pub mod distance;
pub mod error;
pub mod geometry;
pub mod gluing;
pub(crate) mod kernels;
pub mod mcp;

pub use cutlocus::{
    cut_locus, is_minimizing, meeting_point, minimality_time, CutDescription, RaySpec,
};
pub use distance::{
    distance, graph_oracle_distance, invert_exp, DistanceMethod, DistanceResult, DistanceStatus,
    GridOracleConfig,
};
pub use error::{GrushinError, Result};
pub use geometry::{
    dilate, exp_jacobian, exp_map, geodesic_samples, hamiltonian, in_injectivity_domain, reflect_x,
    translate_y, Covector, GeodesicSpec, Point, Region, SpaceKind,
};
pub use gluing::{double_equivalence_residual, glued_distance, glued_measure, GluedPoint, Sheet};
pub use mcp::{pointwise_n, scan_min_n, verify_mcp, BranchTag, ScanConfig, ScanReport};
