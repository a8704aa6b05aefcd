use thiserror::Error;

use crate::assembly::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Klein-base nil boundaries carry no eta value or signature defect.
    #[error("no eta invariant or signature defect is defined for {0}")]
    UnsupportedEta(String),

    #[error("matrix {0} is not in SL(2,Z): determinant {1}")]
    NotUnimodular(String, String),

    #[error("matrix {0} is not parabolic (trace {1})")]
    NotParabolic(String, String),

    #[error("inconsistent cover: {0}")]
    InconsistentCover(String),

    #[error("Riemann-Hurwitz input invalid: {0}")]
    RiemannHurwitz(String),

    #[error("piece {label:?}: {reason}")]
    InvalidPiece { label: String, reason: String },

    #[error("assembly has {} violation(s): {}", .0.len(), summarize(.0))]
    Validation(Vec<Violation>),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("curvature evaluation failed: {0}")]
    Curvature(String),

    #[error("unknown model chart {0:?}")]
    UnknownChart(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn summarize(violations: &[Violation]) -> String {
    violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}
