//! Hochschild cohomology and Gerstenhaber structure of triangular quadratic
//! monomial algebras, computed exactly on the minimal cochain complex.

pub mod basis;
pub mod cohomology;
pub mod complex;
pub mod fixtures;
pub mod gerstenhaber;
pub mod harness;
pub mod linalg;
pub mod presentation;

pub use basis::{Chain, Element, PathBasis};
pub use cohomology::{ClassReduction, Cohomology, CohomologyClass, CohomologyError, HHSummary};
pub use complex::{Cochain, CochainBasisElement, ComplexError, Direction, MinimalComplex, TriType};
pub use gerstenhaber::{
    bracket, circ, circ_at, cup, first_arrow_indicator, induced_bracket, induced_cup, lie_table, ring_table, ProductError,
    ProductKind, ProductTable, Variant,
};
pub use linalg::{Field, Matrix, Scalar};
pub use presentation::{
    classify, emit_presentation, parse_presentation, ArrowId, ClassReport, ParseError, Path, Presentation,
    PresentationError, Quiver, VertexId, Violation,
};
