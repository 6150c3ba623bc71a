//! Polyhedral polynomials over the semiring of ω-positive polyhedra.

pub mod msum;
pub mod poly;
pub mod trop;

pub use msum::{MSum, NonGeneric};
pub use poly::{MultiPolyPolynomial, PolyPolynomial, RootReport};
pub use trop::TropPolynomial;

use psr_geometry::GeomError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("polynomial has empty support")]
    EmptySupport,
    #[error("dimension mismatch")]
    DimensionMismatch,
    #[error("wrong number of arguments")]
    Arity,
    #[error("exponent not in the support")]
    BadIndex,
    #[error("minimum is unbounded")]
    Unbounded,
    #[error("not a root")]
    NotARoot,
    #[error(transparent)]
    Geom(#[from] GeomError),
}
