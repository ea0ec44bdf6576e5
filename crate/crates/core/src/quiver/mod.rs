//! Quivers with relations and their representations.

pub mod models;
mod presentation;
mod representation;

pub use models::{
    beilinson_quiver, bounded_algebra, lift_relation, modified_beilinson, module_m_full,
    module_m_kronecker, module_m_modified, module_m_triple, split_first_arrow, Model, Starts,
};
pub use presentation::{Arrow, PathCombo, QuiverPresentation};
pub use representation::{Representation, Violation};

use thiserror::Error;

use crate::linalg::LinalgError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("unknown arrow {0:?}")]
    UnknownArrow(String),
    #[error("unknown vertex in {0:?}")]
    UnknownVertex(String),
    #[error("duplicate arrow label {0:?}")]
    DuplicateArrow(String),
    #[error("quiver has an oriented cycle")]
    Cyclic,
    #[error("empty path")]
    EmptyPath,
    #[error("relation {0} has no terms")]
    EmptyRelation(usize),
    #[error("path {0} is not composable")]
    NotComposable(String),
    #[error("relation {0} mixes paths with different endpoints")]
    MixedEnds(usize),
    #[error("relation {0} has coefficients from another field")]
    Field(usize),
    #[error("lift starting at vertex {start} of a degree-{degree} relation overruns the last vertex {last}")]
    Overrun { start: u32, degree: u32, last: u32 },
    #[error("expected {expected} start vertices, found {found}")]
    StartCount { expected: usize, found: usize },
    #[error("arrow {0:?} has no matrix")]
    MissingMatrix(String),
    #[error("expected {expected} vertex dimensions, found {found}")]
    DimsLength { expected: usize, found: usize },
    #[error("matrix of arrow {arrow:?} is {found:?}, expected {expected:?}")]
    MatrixShape {
        arrow: String,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
