use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hochschild::{restriction_map, HochschildComplex, HochschildSpec};
use crate::linalg::{les_from_ses, ChainMap, ComplexRep, Joint, LongExactSequence, Matrix, SesOfComplexes};
use crate::lincat::incidence_category;
use crate::scalar::ScalarKind;
use crate::sites::presheaf::RingPresheaf;
use crate::sites::space::{FiniteSpace, OpenFamily, PointSet};

/// All nonempty intersections of the cover members, deduplicated (first name
/// wins), ordered by inclusion. Intersections are named `A∩B…`.
pub fn cover_closure(space: &FiniteSpace, cover: &[(String, PointSet)]) -> Result<OpenFamily> {
    if cover.is_empty() || cover.len() > 16 {
        return Err(Error::Validation("a cover needs between 1 and 16 members".into()));
    }
    for (name, u) in cover {
        if !space.is_open(*u) {
            return Err(Error::Validation(format!("cover member {name} is not open")));
        }
    }
    if cover.iter().fold(0, |m, (_, u)| m | u) != space.whole() {
        return Err(Error::Validation("cover members do not exhaust the space".into()));
    }
    let mut subsets: Vec<u32> = (1..1u32 << cover.len()).collect();
    let members = |j: u32| (0..cover.len()).filter(move |&i| j & (1 << i) != 0);
    subsets.sort_by_key(|&j| (j.count_ones(), members(j).collect::<Vec<_>>()));
    let mut labels = Vec::new();
    let mut sets: Vec<PointSet> = Vec::new();
    for j in subsets {
        let members: Vec<usize> = members(j).collect();
        let s = members.iter().fold(space.whole(), |m, &i| m & cover[i].1);
        if s != 0 && !sets.contains(&s) {
            labels.push(members.iter().map(|&i| cover[i].0.as_str()).collect::<Vec<_>>().join("∩"));
            sets.push(s);
        }
    }
    Ok(OpenFamily::new(labels, sets))
}

/// `0 → C(𝔅) → C(𝔅_U) ⊕ C(𝔅_V) → C(𝔅_{U∩V}) → 0` for the incidence category
/// of a basis, with the restrictions and their difference as maps.
pub struct CoverSes {
    pub ses: SesOfComplexes,
    pub x: HochschildComplex,
    pub u: HochschildComplex,
    pub v: HochschildComplex,
    /// `None` when no basis member lies in `U ∩ V`.
    pub uv: Option<HochschildComplex>,
}

pub fn cover_ses(basis: &OpenFamily, o: &RingPresheaf, u: PointSet, v: PointSet, n_max: usize) -> Result<CoverSes> {
    if o.poset() != &basis.poset {
        return Err(Error::Validation("presheaf does not live on the basis".into()));
    }
    for (label, &b) in basis.labels.iter().zip(&basis.sets) {
        if b & !u != 0 && b & !v != 0 {
            return Err(Error::Validation(format!("basis member {label} lies in neither open")));
        }
    }
    let kind = o.kind();
    let x = HochschildComplex::build(&HochschildSpec::diagonal(Arc::new(incidence_category(o)?), n_max))?;
    let (in_u, in_v, in_uv) = (basis.inside(u), basis.inside(v), basis.inside(u & v));
    let (hu, to_u) = restriction_map(&x, &in_u)?;
    let (hv, to_v) = restriction_map(&x, &in_v)?;
    let lo = x.lo();
    let hi = x.complex.hi();
    let (c, from_u, from_v, uv) = if in_uv.is_empty() {
        let zero = |h: &HochschildComplex| ChainMap::new(lo, (lo..=hi).map(|n| Matrix::zeros(kind, 0, h.dim(n))).collect());
        (ComplexRep::zero(kind, lo, hi), zero(&hu), zero(&hv), None)
    } else {
        let (huv, a) = restriction_map(&hu, &in_uv)?;
        let (_, b) = restriction_map(&hv, &in_uv)?;
        (huv.complex.clone(), a, b, Some(huv))
    };
    let b = hu.complex.direct_sum(&hv.complex)?;
    let mut i_maps = Vec::new();
    let mut q_maps = Vec::new();
    for n in lo..=hi {
        let (ru, rv) = (to_u.at(n).expect("full window"), to_v.at(n).expect("full window"));
        i_maps.push(ru.vstack(rv)?);
        let (su, sv) = (from_u.at(n).expect("full window"), from_v.at(n).expect("full window"));
        q_maps.push(su.hstack(&sv.scale(&kind.from_i64(-1)))?);
    }
    let ses = SesOfComplexes::new(x.complex.clone(), b, c, ChainMap::new(lo, i_maps), ChainMap::new(lo, q_maps))?;
    Ok(CoverSes { ses, x, u: hu, v: hv, uv })
}

#[derive(Clone, Debug, Serialize)]
pub struct MayerVietorisReport {
    pub hc_x: Vec<usize>,
    pub hc_u: Vec<usize>,
    pub hc_v: Vec<usize>,
    pub hc_uv: Vec<usize>,
    /// `dim HCⁿ(X) = rank(∂ into degree n) + rank(HCⁿ(X) → HCⁿ(U) ⊕ HCⁿ(V))`, read off the sequence.
    pub hc_x_from_sequence: Vec<usize>,
    pub connecting_ranks: Vec<usize>,
    pub joints: Vec<Joint>,
    pub all_exact: bool,
}

impl MayerVietorisReport {
    pub fn passes(&self) -> bool {
        self.all_exact && self.hc_x == self.hc_x_from_sequence
    }
}

fn betti(h: Option<&HochschildComplex>, n_max: usize) -> Result<Vec<usize>> {
    match h {
        Some(h) => Ok(h.betti()?[..=n_max].to_vec()),
        None => Ok(vec![0; n_max + 1]),
    }
}

/// The Mayer–Vietoris sequence of `X = U ∪ V` over a basis, in degrees `0..=n_max`.
pub fn mayer_vietoris_over(basis: &OpenFamily, o: &RingPresheaf, u: PointSet, v: PointSet, n_max: usize) -> Result<MayerVietorisReport> {
    let cs = cover_ses(basis, o, u, v, n_max)?;
    let les: LongExactSequence = les_from_ses(&cs.ses, 0, n_max as i32)?;
    let connecting_ranks: Vec<usize> = les.connecting.iter().map(Matrix::rank).collect();
    let hc_x_from_sequence = (0..=n_max).map(|n| les.i_star[n].rank() + if n == 0 { 0 } else { connecting_ranks[n - 1] }).collect();
    Ok(MayerVietorisReport {
        hc_x: betti(Some(&cs.x), n_max)?,
        hc_u: betti(Some(&cs.u), n_max)?,
        hc_v: betti(Some(&cs.v), n_max)?,
        hc_uv: betti(cs.uv.as_ref(), n_max)?,
        hc_x_from_sequence,
        connecting_ranks,
        all_exact: les.all_exact(),
        joints: les.joints,
    })
}

/// Mayer–Vietoris over the minimal basis with constant-sheaf coefficients.
pub fn mayer_vietoris(space: &FiniteSpace, u: PointSet, v: PointSet, n_max: usize, kind: ScalarKind) -> Result<MayerVietorisReport> {
    if !space.is_open(u) || !space.is_open(v) {
        return Err(Error::Validation("Mayer–Vietoris needs open sets".into()));
    }
    if u | v != space.whole() {
        return Err(Error::Validation("the two opens do not cover the space".into()));
    }
    let basis = space.minimal_basis();
    mayer_vietoris_over(&basis, &basis.constant_sheaf(space, kind)?, u, v, n_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sites::space::tests::pseudocircle;

    const Q: ScalarKind = ScalarKind::Rational;

    #[test]
    fn pseudocircle_closure_and_sequence() {
        let x = pseudocircle();
        let (uc, ud) = (x.minimal_open(2), x.minimal_open(3));
        let closure = cover_closure(&x, &[("U_c".into(), uc), ("U_d".into(), ud)]).unwrap();
        assert_eq!(closure.labels, vec!["U_c", "U_d", "U_c∩U_d"]);
        let r = mayer_vietoris(&x, uc, ud, 2, Q).unwrap();
        assert!(r.passes(), "{r:?}");
        assert_eq!((r.hc_u[0], r.hc_v[0], r.hc_uv[0]), (1, 1, 2));
        assert_eq!(r.hc_x, vec![1, 1, 0]);
    }

    #[test]
    fn split_cases() {
        let x = pseudocircle();
        let whole = x.whole();
        let r = mayer_vietoris(&x, whole, whole, 2, Q).unwrap();
        assert!(r.passes());
        assert!(r.connecting_ranks.iter().all(|&k| k == 0));
        let disc = FiniteSpace::from_opens(vec!["p".into(), "q".into()], &[vec![], vec!["p".into()], vec!["q".into()], vec!["p".into(), "q".into()]]).unwrap();
        let r = mayer_vietoris(&disc, 0b01, 0b10, 2, Q).unwrap();
        assert!(r.passes());
        assert_eq!(r.hc_x, vec![2, 0, 0]);
        assert_eq!(r.hc_uv, vec![0, 0, 0]);
    }

    #[test]
    fn closure_deduplicates_nested_members() {
        let x = pseudocircle();
        let (uc, a) = (x.minimal_open(2), x.minimal_open(0));
        let cover = [("X".to_string(), x.whole()), ("U_c".to_string(), uc), ("U_a".to_string(), a)];
        assert_eq!(cover_closure(&x, &cover).unwrap().len(), 3);
        assert_eq!(cover_closure(&x, &cover[..1]).unwrap().labels, vec!["X"]);
    }
}
