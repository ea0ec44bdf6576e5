use thiserror::Error;

use crate::graded::SpecError;
use crate::grass::GrassError;
use crate::linalg::LinalgError;
use crate::moduli::ModuliError;
use crate::poly::PolyError;
use crate::problem::ProblemFileError;
use crate::quiver::QuiverError;

/// Any failure surfaced by the crate's public operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Grass(#[from] GrassError),
    #[error(transparent)]
    Moduli(#[from] ModuliError),
    #[error(transparent)]
    ProblemFile(#[from] ProblemFileError),
}
