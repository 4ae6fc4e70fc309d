use crate::error::{Error, Result};
use crate::hochschild::HochschildComplex;
use crate::linalg::{Echelon, SparseVec};
use crate::lincat::FinLinCat;
use crate::scalar::Scalar;

/// Unknowns of a degree-`n` tuple `(φ_A)_A`: one per degree-`n` basis element of each `hom(A, A)`.
fn unknowns(c: &FinLinCat, n: i32) -> Vec<(usize, usize)> {
    (0..c.num_objects()).flat_map(|a| c.hom(a, a).in_degree(n).into_iter().map(move |k| (a, k))).collect()
}

/// Residuals `φ_B ∘ f − (−1)^{n|f|} f ∘ φ_A` over every basis morphism `f: A → B`,
/// linear in the tuple; each entry is `(equation, unknown, coefficient)`.
fn centrality_equations(c: &FinLinCat, n: i32) -> (Vec<(usize, usize)>, Vec<SparseVec>) {
    let kind = c.kind();
    let vars = unknowns(c, n);
    let no = c.num_objects();
    let mut rows = Vec::new();
    for a in 0..no {
        for b in 0..no {
            let h = c.hom(a, b);
            for f in 0..h.dim() {
                let sign = Scalar::parity(n as i64 * h.degree(f) as i64, kind);
                // One equation per output coordinate in hom(A, B).
                let mut eqs: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); h.dim()];
                for (u, &(obj, k)) in vars.iter().enumerate() {
                    if obj == b {
                        for (j, x) in c.compose_basis(a, b, b, k, f).iter() {
                            eqs[j].push((u, x.clone()));
                        }
                    }
                    if obj == a {
                        for (j, x) in c.compose_basis(a, a, b, f, k).iter() {
                            eqs[j].push((u, -&(&sign * x)));
                        }
                    }
                }
                rows.extend(eqs.into_iter().map(SparseVec::from_entries).filter(|v| !v.is_zero()));
            }
        }
    }
    (vars, rows)
}

fn require_closed(c: &FinLinCat) -> Result<()> {
    if c.has_differential() {
        return Err(Error::Unsupported("the graded center is computed for categories without differential; pass to the cohomology category first".into()));
    }
    Ok(())
}

/// A basis of the degree-`n` graded center: tuples `(φ_A ∈ hom(A,A)ⁿ)` with
/// `φ_B ∘ f = (−1)^{n|f|} f ∘ φ_A` for every `f: A → B`.
pub fn graded_center(c: &FinLinCat, n: i32) -> Result<Vec<Vec<SparseVec>>> {
    require_closed(c)?;
    let (vars, rows) = centrality_equations(c, n);
    let mut ech = Echelon::new(c.kind(), vars.len());
    for r in rows {
        ech.insert(r);
    }
    Ok(ech.kernel_basis().into_iter().map(|v| tuple_from(c, &vars, &v)).collect())
}

fn tuple_from(c: &FinLinCat, vars: &[(usize, usize)], v: &SparseVec) -> Vec<SparseVec> {
    let mut out = vec![Vec::new(); c.num_objects()];
    for (u, x) in v.iter() {
        let (a, k) = vars[u];
        out[a].push((k, x.clone()));
    }
    out.into_iter().map(SparseVec::from_entries).collect()
}

/// Whether a tuple of degree-`n` endomorphisms is central.
pub fn is_central(c: &FinLinCat, n: i32, tuple: &[SparseVec]) -> bool {
    let kind = c.kind();
    let no = c.num_objects();
    (0..no).all(|a| {
        (0..no).all(|b| {
            let h = c.hom(a, b);
            (0..h.dim()).all(|f| {
                let fv = SparseVec::unit(f, kind);
                let sign = Scalar::parity(n as i64 * h.degree(f) as i64, kind);
                let lhs = c.compose(a, b, b, &tuple[b], &fv);
                let rhs = c.compose(a, a, b, &fv, &tuple[a]).scale(&sign);
                lhs == rhs
            })
        })
    })
}

/// σ: the first column of a cochain, `(φ_A) = (φ() on the one-object chain A)`.
pub fn center_map(h: &HochschildComplex, n: i32, phi: &SparseVec) -> Result<Vec<SparseVec>> {
    if !h.spec.has_diagonal_coefficients() {
        return Err(Error::Validation("the center map needs diagonal coefficients".into()));
    }
    require_closed(h.category())?;
    Ok((0..h.category().num_objects()).map(|a| h.value(n, phi, &[a], &[])).collect())
}

/// Componentwise composition of two tuples (the product of the graded center).
pub fn center_product(c: &FinLinCat, x: &[SparseVec], y: &[SparseVec]) -> Vec<SparseVec> {
    (0..c.num_objects()).map(|a| c.compose(a, a, a, &x[a], &y[a])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hochschild::HochschildSpec;
    use crate::lincat::{from_algebra, incidence_category, Algebra};
    use crate::scalar::ScalarKind;
    use crate::sites::{Poset, RingPresheaf};
    use std::sync::Arc;

    const Q: ScalarKind = ScalarKind::Rational;

    #[test]
    fn commutative_algebra_is_its_own_center() {
        let c = from_algebra(&Algebra::truncated_polynomial(Q, 3)).unwrap();
        assert_eq!(graded_center(&c, 0).unwrap().len(), 3);
        let m2 = from_algebra(&Algebra::matrix(Q, 2)).unwrap();
        assert_eq!(graded_center(&m2, 0).unwrap().len(), 1);
    }

    #[test]
    fn sigma_is_onto_the_center_in_degree_zero() {
        let c = Arc::new(incidence_category(&RingPresheaf::constant(Poset::chain(3), Algebra::ground(Q))).unwrap());
        let h = HochschildComplex::build(&HochschildSpec::diagonal(c.clone(), 1)).unwrap();
        let z = graded_center(&c, 0).unwrap();
        let h0 = h.cohomology(0).unwrap();
        assert_eq!(z.len(), h0.betti);
        for r in &h0.representatives {
            assert!(is_central(&c, 0, &center_map(&h, 0, r).unwrap()));
        }
    }
}
