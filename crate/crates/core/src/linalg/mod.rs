//! Exact linear algebra: sparse matrices, echelon forms, cochain complexes
//! and long exact sequences.

pub mod complex;
pub mod echelon;
pub mod les;
pub mod matrix;

pub use complex::{complex_cohomology, ChainMap, Cohomology, ComplexRep, EdgeCaveat};
pub use echelon::Echelon;
pub use les::{les_from_ses, Joint, LongExactSequence, SesOfComplexes, Term};
pub use matrix::{matrix_rank_kernel, Accumulator, Matrix, SparseVec};
