//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("point ({x}, {y}) is out of bounds: {context}")]
    OutOfBounds { x: f64, y: f64, context: &'static str },

    #[error("level set has uniform sign; the zero contour is empty")]
    EmptyContour,

    #[error("per-vertex data has length {got}, contour has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },

    #[error(
        "no shift |c| <= {max_shift} brackets the target area {target} \
         (area at current field: {current})"
    )]
    NoBracket {
        target: f64,
        current: f64,
        max_shift: f64,
    },

    #[error(
        "no feasible step after {halvings} halvings; \
         increase epsilon or decrease the grid size, and restart"
    )]
    StuckInfeasible { halvings: usize },

    #[error("shapes {first} and {second} overlap")]
    ShapesOverlap { first: usize, second: usize },

    #[error("shape {index} is closer than band_width + 2h = {min_clearance} to the grid border")]
    TooCloseToBorder { index: usize, min_clearance: f64 },

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
