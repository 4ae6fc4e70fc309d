//! Finite spaces, presheaves on posets and the constructions built on them.

pub mod cover;
pub mod descent;
pub mod gs;
pub mod module;
pub mod poset;
pub mod presheaf;
pub mod simplicial;
pub mod space;

pub use cover::{cover_closure, cover_ses, mayer_vietoris, mayer_vietoris_over, CoverSes, MayerVietorisReport};
pub use descent::{pullback_is_resolved, DescentData, DescentReport};
pub use gs::gs_bicomplex;
pub use module::{presheaf_hom_dim, presheaf_restrict, presheaf_right_extend, ModulePresheaf};
pub use poset::Poset;
pub use presheaf::RingPresheaf;
pub use simplicial::{order_complex, order_complex_cohomology, standard_complex};
pub use space::{FiniteSpace, OpenFamily, PointSet, SpaceAnalysis};
