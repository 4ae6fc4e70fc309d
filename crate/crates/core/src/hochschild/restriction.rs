use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hochschild::{HochschildComplex, HochschildSpec};
use crate::linalg::{ChainMap, Matrix, SparseVec};
use crate::lincat::full_subcategory;

/// Restriction of cochains to the full subcategory on `objs`: the complex of
/// the subcategory and the chain map `C(𝔞) → C(𝔞|objs)`, verified to commute
/// with the differentials.
pub fn restriction_map(h: &HochschildComplex, objs: &[&str]) -> Result<(HochschildComplex, ChainMap)> {
    if objs.is_empty() {
        return Err(Error::Validation("restriction needs at least one object".into()));
    }
    if !h.spec.has_diagonal_coefficients() {
        return Err(Error::Validation("restriction is defined here for diagonal coefficients".into()));
    }
    let cat = h.category();
    let sub_cat = Arc::new(full_subcategory(cat, objs)?);
    // Sub-object k is the original object idx[k]: full subcategories keep the original order.
    let idx: Vec<usize> = sub_cat.objects().iter().map(|o| cat.object_index(o)).collect::<Result<_>>()?;
    let spec = HochschildSpec { category: sub_cat.clone(), coefficients: crate::bimodule::Bimodule::diagonal(sub_cat), ..h.spec.clone() };
    let sub = HochschildComplex::build(&spec)?;
    let kind = h.kind();
    let lo = h.lo().max(sub.lo());
    let hi = h.complex.hi().min(sub.complex.hi());
    let mut maps = Vec::new();
    for n in lo..=hi {
        let mut rows = Vec::with_capacity(sub.dim(n));
        for (chain, digits) in sub.supports(n) {
            let orig: Vec<usize> = chain.iter().map(|&k| idx[k]).collect();
            let out_dim = sub.spec.coefficients.dim(chain[chain.len() - 1], chain[0]);
            for k in 0..out_dim {
                if sub.position(n, &chain, &digits, k).is_none() {
                    continue;
                }
                let src = h
                    .position(n, &orig, &digits, k)
                    .ok_or_else(|| Error::Validation("restricted cochain has no counterpart in the ambient complex".into()))?;
                rows.push(SparseVec::unit(src, kind));
            }
        }
        maps.push(Matrix::from_rows(kind, h.dim(n), rows)?);
    }
    let map = ChainMap::new(lo, maps);
    map.verify(&h.complex, &sub.complex)?;
    Ok((sub, map))
}

/// Applies a chain map to a cochain of degree `n`.
pub fn restrict(map: &ChainMap, n: i32, phi: &SparseVec) -> SparseVec {
    map.at(n).map_or_else(SparseVec::new, |m| m.apply(phi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lincat::{incidence_category, Algebra};
    use crate::scalar::ScalarKind;
    use crate::sites::{Poset, RingPresheaf};

    const Q: ScalarKind = ScalarKind::Rational;

    #[test]
    fn a2_to_one_object() {
        let c = Arc::new(incidence_category(&RingPresheaf::constant(Poset::chain(2), Algebra::ground(Q))).unwrap());
        let h = HochschildComplex::build(&HochschildSpec::diagonal(c, 2)).unwrap();
        let (sub, map) = restriction_map(&h, &["x0"]).unwrap();
        assert_eq!(sub.betti().unwrap(), vec![1, 0, 0]);
        let (src, dst) = (h.cohomology(0).unwrap(), sub.cohomology(0).unwrap());
        assert!(!map.induced(0, &src, &dst).unwrap().is_zero());
        let (all, id) = restriction_map(&h, &["x0", "x1"]).unwrap();
        assert_eq!(all.complex.dims(), h.complex.dims());
        for (n, m) in id.maps().iter().enumerate() {
            assert_eq!(*m, Matrix::identity(Q, h.dim(n as i32)));
        }
    }
}
