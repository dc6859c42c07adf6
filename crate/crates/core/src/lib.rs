//! Standard-graded test for vertex cover algebras of quasi-trees.
//!
//! The vertex cover algebra of a simplicial complex is generated by the
//! monomials `x^a t^k` of its indecomposable k-covers. For quasi-trees it is
//! generated in degree one exactly when the complex has no special odd
//! cycle. This crate decides that criterion, builds witnesses in both
//! directions, and checks everything against exhaustive enumeration of
//! indecomposable covers.
//!
//! ```
//! use qcover::families::delta_n;
//! use qcover::gradedness::is_standard_graded;
//!
//! let d3 = delta_n(3).unwrap();
//! let verdict = is_standard_graded(&d3).unwrap();
//! assert!(!verdict.standard_graded);
//! assert_eq!(verdict.cover_witness.unwrap().a, vec![1, 1, 1, 0, 0, 0]);
//! ```

pub mod complex;
pub mod covers;
pub mod cycles;
pub mod families;
pub mod format;
pub mod gradedness;
pub mod quasi_forest;

pub use complex::{
    ComplexError, Facet, FacetId, FacetView, SimplicialComplex, SmdSubcomplex, Vertex,
};
pub use covers::{CoverError, CoverVector, Decomposition, DegreeBound};
pub use cycles::{Cycle, CycleError};
pub use gradedness::{GradednessError, Verdict};
pub use quasi_forest::{BranchRule, LeafOrder, QuasiForestError, RelationTree};
