//! Hochschild cochain complexes of finite linear categories and the operations on them.

pub mod center;
pub mod complex;
pub mod lambda;
pub mod ops;
pub mod report;
pub mod restriction;

pub use center::{center_map, center_product, graded_center, is_central};
pub use complex::{HochschildComplex, HochschildSpec, DEFAULT_DIM_CAP};
pub use lambda::{lambda_omega_check, LambdaOmegaReport, PairVerdict};
pub use ops::{bracket, circle_square, composition_cochain, cup, pre_lie, unit_cochain};
pub use report::{betti_text, compare_dims, BettiRow, Comparison, SCHEMA_VERSION};
pub use restriction::{restrict, restriction_map};
