//! Euler characteristics and signatures of closed 4-manifolds glued from
//! finite-volume geometric pieces, with exact rational bookkeeping, plus
//! numeric curvature checks for the model geometries.

pub mod assembly;
pub mod cli;
pub mod curvature;
pub mod error;
pub mod examples;
pub mod flat_catalog;
pub mod pieces;
pub mod rational;
pub mod report;
pub mod sl2_monodromy;

pub use assembly::{diagnose, validate_assembly, Assembly, Classification, Diagnosis, Edge, Slot, Violation};
pub use error::{Error, Result};
pub use flat_catalog::{BoundaryClass, FlatLetter, Sign};
pub use pieces::{GeometryTag, Piece};
pub use rational::Rational;
