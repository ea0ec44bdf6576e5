//! Quiver-theoretic realizations of projective schemes.
//!
//! Given homogeneous `f_1..f_r` cutting out `X ⊂ P^n`, this crate builds the
//! graded coordinate ring degree by degree, the Beilinson-type quivers with
//! relations, and the module `M_m = S^m V / I_m` in several models (full
//! chain, three vertices, Kronecker). Over a prime field it enumerates thin
//! submodules, thin moduli and the uniserial chart, and checks each against
//! the points of `X` directly.

pub mod graded;
pub mod grass;
pub mod linalg;
pub mod moduli;
pub mod poly;
pub mod problem;
pub mod projective;
pub mod quiver;

mod error;

pub use error::Error;
pub use graded::{GradedRing, GradedSlice, MultMap, ProblemSpec};
pub use linalg::{FieldSpec, Matrix, Scalar};
pub use poly::{HomPoly, Monomial, ProjPoint};
pub use quiver::{PathCombo, QuiverPresentation, Representation};
