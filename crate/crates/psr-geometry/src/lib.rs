//! Exact rational polyhedral geometry: cones, polyhedra, fans and measures.

pub mod cone;
pub mod dd;
pub mod exec;
pub mod fan;
pub mod linalg;
pub mod measure;
pub mod omega;
pub mod polyhedron;
pub mod rat;

pub use cone::Cone;
pub use exec::Exec;
pub use fan::{Fan, DEFAULT_CELL_CAP};
pub use omega::OmegaOrder;
pub use polyhedron::Polyhedron;
pub use rat::{Point, Rat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeomError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("omega base must have positive entries")]
    BadOmega,
    #[error("empty point set")]
    Empty,
    #[error("dimension mismatch")]
    DimensionMismatch,
    #[error("polyhedron contains a line")]
    NotPointed,
    #[error("point is not a vertex")]
    NotAVertex,
    #[error("polyhedron is not omega-positive")]
    NotOmegaPositive,
    #[error("{0} cells exceed the cap of {1}")]
    SizeLimit(usize, usize),
}
