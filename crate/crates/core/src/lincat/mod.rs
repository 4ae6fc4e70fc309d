//! Finite linear and non-positively graded DG categories.

pub mod algebra;
pub mod arrow;
pub mod category;
pub mod constructors;
pub mod space;

pub use algebra::Algebra;
pub use arrow::{arrow_category, ArrowCategorySpec};
pub use category::{Axiom, FinLinCat, Relation, ValidationReport, Violation};
pub use constructors::{
    category_algebra, cohomology_category, from_algebra, full_subcategory, incidence_category, linearize, opposite,
    FiniteCategory, ALGEBRA_OBJECT,
};
pub use space::{BasisElem, GradedSpace};
