use std::sync::Arc;

use crate::bimodule::Bimodule;
use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::lincat::category::{FinLinCat, Relation};
use crate::lincat::space::GradedSpace;

/// Prefixes that keep the two object sets of an arrow category apart.
pub const LEFT_PREFIX: &str = "a:";
pub const RIGHT_PREFIX: &str = "b:";

/// Data for the arrow category `(𝔞, X, 𝔟)`: `x` is an 𝔞-𝔟-bimodule,
/// covariant in 𝔞 and contravariant in 𝔟.
#[derive(Clone, Debug)]
pub struct ArrowCategorySpec {
    pub a: Arc<FinLinCat>,
    pub b: Arc<FinLinCat>,
    pub x: Bimodule,
}

impl ArrowCategorySpec {
    pub fn new(x: Bimodule) -> Self {
        ArrowCategorySpec { a: x.left().clone(), b: x.right().clone(), x }
    }

    /// `(𝔞, 𝔞, 𝔞)` glued along the diagonal bimodule.
    pub fn diagonal(c: Arc<FinLinCat>) -> Self {
        Self::new(Bimodule::diagonal(c))
    }
}

fn prefixed(s: &GradedSpace, prefix: &str) -> GradedSpace {
    let mut out = s.clone();
    for e in &mut out.basis {
        e.label = format!("{prefix}{}", e.label);
    }
    out
}

/// The category on `Ob 𝔞 ⊔ Ob 𝔟` with `hom(B, A) = X(B, A)` for `B ∈ 𝔟`,
/// `A ∈ 𝔞`, no maps from 𝔞 to 𝔟, and the original homs inside each side.
///
/// Objects are labelled `a:<name>` and `b:<name>`, so the 𝔞 objects come first.
/// The censoring relation is the union of both relations (full when absent)
/// together with every pair `(B, A)`.
pub fn arrow_category(s: &ArrowCategorySpec) -> Result<FinLinCat> {
    let x = &s.x;
    if !(Arc::ptr_eq(x.left(), &s.a) || **x.left() == *s.a) || !(Arc::ptr_eq(x.right(), &s.b) || **x.right() == *s.b) {
        return Err(Error::Validation("bimodule does not live over the given categories".into()));
    }
    x.validate().into_result()?;
    let (a, b) = (&s.a, &s.b);
    let (na, nb) = (a.num_objects(), b.num_objects());
    let n = na + nb;
    let kind = a.kind();
    // Index i < na is an 𝔞 object, na ≤ i is the 𝔟 object i − na.
    let side = |i: usize| if i < na { (true, i) } else { (false, i - na) };
    let mut homs = Vec::with_capacity(n * n);
    for u in 0..n {
        for v in 0..n {
            homs.push(match (side(u), side(v)) {
                ((true, i), (true, j)) => prefixed(a.hom(i, j), LEFT_PREFIX),
                ((false, i), (false, j)) => prefixed(b.hom(i, j), RIGHT_PREFIX),
                ((false, i), (true, j)) => prefixed(x.space(i, j), "x:"),
                _ => GradedSpace::zero(),
            });
        }
    }
    let identities = (0..n)
        .map(|u| match side(u) {
            (true, i) => a.identity(i).clone(),
            (false, i) => b.identity(i).clone(),
        })
        .collect();
    let mut rel = Relation::empty(n);
    for u in 0..n {
        for v in 0..n {
            let inside = match (side(u), side(v)) {
                ((true, i), (true, j)) => a.censoring().is_none_or(|r| r.contains(i, j)),
                ((false, i), (false, j)) => b.censoring().is_none_or(|r| r.contains(i, j)),
                ((false, _), (true, _)) => true,
                _ => false,
            };
            if inside {
                rel.insert(u, v);
            }
        }
    }
    let objects = a
        .objects()
        .iter()
        .map(|o| format!("{LEFT_PREFIX}{o}"))
        .chain(b.objects().iter().map(|o| format!("{RIGHT_PREFIX}{o}")))
        .collect();
    // g ∘ f with f: u → v, g: v → w.
    FinLinCat::build(kind, objects, homs, identities, Some(rel), |u, v, w, g, f| match (side(u), side(v), side(w)) {
        ((true, i), (true, j), (true, k)) => a.compose_basis(i, j, k, g, f).clone(),
        ((false, i), (false, j), (false, k)) => b.compose_basis(i, j, k, g, f).clone(),
        ((false, i), (true, j), (true, k)) => x.left_basis(i, j, k, g, f).clone(),
        ((false, i), (false, j), (true, k)) => x.right_basis(i, j, k, g, f).clone(),
        _ => SparseVec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lincat::{from_algebra, incidence_category, Algebra};
    use crate::scalar::ScalarKind;
    use crate::sites::{Poset, RingPresheaf};

    const Q: ScalarKind = ScalarKind::Rational;

    #[test]
    fn smallest_arrow_category_is_a2() {
        let k = Bimodule::ground_category(Q);
        let c = arrow_category(&ArrowCategorySpec::diagonal(k)).unwrap();
        assert!(c.validate().is_ok());
        // b:* → a:* plays the role of x0 → x1, so the order is reversed.
        assert_eq!(c.total_dim(), 3);
        assert_eq!(c.hom_dim(1, 0), 1);
        assert_eq!(c.hom_dim(0, 1), 0);
        let a2 = incidence_category(&RingPresheaf::constant(Poset::chain(2), Algebra::ground(Q))).unwrap();
        let op = crate::lincat::opposite(&c);
        for (u, v) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            assert_eq!(op.hom_dim(u, v), a2.hom_dim(u, v));
        }
        assert_eq!(op.compose_basis(0, 0, 1, 0, 0), a2.compose_basis(0, 0, 1, 0, 0));
    }

    #[test]
    fn dual_numbers_glued_to_k() {
        let a = Arc::new(from_algebra(&Algebra::dual_numbers(Q)).unwrap());
        let k = Bimodule::ground_category(Q);
        let spaces = vec![GradedSpace::plain(["x".to_string()])];
        // ε acts by zero on X = k.
        let x = Bimodule::build(
            a.clone(),
            k,
            spaces,
            |_, _, _, g, _| if g == 0 { SparseVec::unit(0, Q) } else { SparseVec::new() },
            |_, _, _, _, _| SparseVec::unit(0, Q),
        )
        .unwrap();
        let c = arrow_category(&ArrowCategorySpec::new(x)).unwrap();
        assert!(c.validate().is_ok());
        assert_eq!(c.total_dim(), 4);
    }
}
