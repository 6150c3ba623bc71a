//! Local-global gluing, Minkowski summand certificates and low-degree local classifiers.

pub mod classify;
pub mod glue;
pub mod summand;

pub use classify::{classify_quadratic_local, classify_reduced_cubic_local, DeltaCase, DeltaReport};
pub use glue::{extract_local, glue_global, is_complete_local, is_global_solution, GlueOutcome, LocalSolutionMap};
pub use summand::{minkowski_summand_certificate, shephard_weak_summand, ShephardFailure, ShephardReport, SummandCertificate, SummandFailure};

use psr_geometry::{GeomError, Point};
use psr_poly::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GlobalError {
    #[error("no local solution given for vertex {0:?}")]
    MissingLocal(Point),
    #[error("local solution at {0:?} is not complete")]
    IncompleteLocal(Point),
    #[error("support must be {0}")]
    BadSupport(&'static str),
    #[error("expected a polytope")]
    NotAPolytope,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}
