//! Face-pairing complexes: manifolds with right-angled corners assembled from
//! copies of one polytope, the coloring construction, gluings along graphs,
//! boundary strata, cusp sections and canonical codes.

mod code;
mod cusps;
mod pairing;
mod strata;

pub use code::{canonical_code, CanonicalCode};
pub use cusps::{census_string, cusp_census, cusp_links, CuspSection, CuspShape, TileLine};
pub use pairing::{CellType, Coloring, LabeledGraph, PairingComplex};
pub use strata::{
    boundary_components, euler_characteristic, facet_complex, facet_complex_over, has_corners, orientability,
    walk_ridge, EulerData, FaceClasses, Orientation,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("facet {facet} of cell {cell} would be glued to itself")]
    FixedPoint { cell: usize, facet: usize },
    #[error("facet {facet} of cell {cell} is already paired")]
    AlreadyPaired { cell: usize, facet: usize },
    #[error("pairing is not an involution at cell {cell}, facet {facet}")]
    NotInvolution { cell: usize, facet: usize },
    #[error("improper coloring: adjacent facets {a} and {b} share color {color}")]
    ImproperColoring { a: usize, b: usize, color: usize },
    #[error("coloring: {0}")]
    Coloring(String),
    #[error("vertex {vertex} has no edge labeled {label}")]
    MissingLabel { vertex: usize, label: usize },
    #[error("{0}")]
    Mismatch(String),
}
