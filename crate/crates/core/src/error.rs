use thiserror::Error;

use crate::geometry::{Point, SpaceKind};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GrushinError {
    #[error("base point ({}, {}) lies outside the {space} space", .q.x, .q.y)]
    BasePointOutsideSpace { q: Point, space: SpaceKind },

    #[error("point ({}, {}) lies outside the {space} space", .p.x, .p.y)]
    PointOutsideSpace { p: Point, space: SpaceKind },

    #[error("target ({}, {}) is a cut point of the base point", .p.x, .p.y)]
    CutLocusPoint { p: Point },

    #[error("exponential map inversion failed, best residual {residual:e}")]
    NotInImage { residual: f64 },

    #[error("grid oracle could not connect the endpoints inside the bounding box")]
    Unreachable,

    #[error("outside the injectivity domain: {0}")]
    DomainError(String),

    #[error("x = {x} is on (or within the guard band of) the singular locus")]
    SingularLocus { x: f64 },

    #[error("dimension parameter N = {0} must exceed 2")]
    BadDimension(f64),

    #[error("the rays for +u and -u coincide")]
    NoMeeting,

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, GrushinError>;
