//! Labelled local fans, local compatible systems and vertex-cone collections.

pub mod lfan;
pub mod solve;
pub mod vcc;

pub use lfan::{build_local_fan, enumerate_lcs, validate_lcs, LabelledCell, LabelledFan, Lcs, LcsCheck, LcsViolation};
pub use solve::{associated_polyhedron, completion, enumerate_mw_minimal_local_solutions, lcs_to_vcc, minimalize, vcc_to_lcs};
pub use vcc::{vcc_evaluate, vcc_is_root, Vcc, VccEvaluation};

use psr_geometry::GeomError;
use psr_poly::{NonGeneric, PolyError};

pub const DEFAULT_CANDIDATE_CAP: usize = 1_000_000;

/// Enumeration limits; exceeding one raises `SizeLimit`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub cells: usize,
    pub candidates: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { cells: psr_geometry::DEFAULT_CELL_CAP, candidates: DEFAULT_CANDIDATE_CAP }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LocalError {
    #[error("polynomial is not generic at vertex {:?}", .0.vertex)]
    NonGeneric(NonGeneric),
    #[error("{0} exceeds the cap of {1}")]
    SizeLimit(usize, usize),
    #[error("supports do not match")]
    SupportMismatch,
    #[error("not a vertex-cone collection: {0}")]
    NotAVcc(String),
    #[error("solution is not local to the vertex")]
    NotLocal,
    #[error("not a root")]
    NotARoot,
    #[error("normal cones are not unions of fan cells")]
    NotCellular,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

impl From<NonGeneric> for LocalError {
    fn from(w: NonGeneric) -> Self {
        LocalError::NonGeneric(w)
    }
}
