//! Khovanov homology over GF(2) for link diagrams with a cyclic symmetry.
//!
//! The crate builds enhanced-state chain complexes for planar diagrams, the
//! quotient complexes of a `Z/p` action (equivariant homology), the annular
//! refinement and the chromatic homology of graphs, together with
//! independent reference computations in [`oracles`].

pub mod annular;
pub mod chromatic;
pub mod complex;
pub mod diagram;
pub mod equivariant;
pub mod error;
pub mod f2linalg;
pub mod khovanov;
pub mod oracles;
pub mod poly;

pub use complex::{homology, ChainMap, GradedComplex, Grading, HomologyTable};
pub use diagram::{CyclicAction, LinkDiagram, Marker, Resolution, Tangle};
pub use error::{Error, Result};
pub use f2linalg::{BitRow, F2Matrix, F2Subspace};
pub use poly::{Coeff, Laurent};

/// Integer Laurent polynomials, the coefficient type used throughout.
pub type LaurentPoly = Laurent<i64>;
