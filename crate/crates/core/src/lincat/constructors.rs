use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::lincat::algebra::Algebra;
use crate::lincat::category::{FinLinCat, Relation};
use crate::lincat::space::{BasisElem, GradedSpace};
use crate::scalar::ScalarKind;
use crate::sites::{Poset, RingPresheaf};

/// Label of the single object of a category built from an algebra.
pub const ALGEBRA_OBJECT: &str = "*";

/// The one-object category whose endomorphisms are `a` (with `g ∘ f = g · f`).
pub fn from_algebra(a: &Algebra) -> Result<FinLinCat> {
    if let Some(problem) = a.axiom_violations().into_iter().next() {
        return Err(Error::Validation(problem));
    }
    let hom = GradedSpace::plain(a.labels().iter().cloned());
    FinLinCat::build(a.kind(), vec![ALGEBRA_OBJECT.into()], vec![hom], vec![a.unit().clone()], None, |_, _, _, g, f| {
        a.product(g, f).clone()
    })
}

/// The incidence category: `hom(U,V) = O(U)` for `U ≤ V`, composing
/// `f: U → V` with `g: V → W` to `f · r_UV(g)`.
pub fn incidence_category(o: &RingPresheaf) -> Result<FinLinCat> {
    o.validate()?;
    let p = o.poset();
    let n = p.len();
    let kind = o.kind();
    let mut homs = Vec::with_capacity(n * n);
    for u in 0..n {
        for v in 0..n {
            homs.push(if p.leq(u, v) {
                GradedSpace::plain(o.algebra(u).labels().iter().map(|l| format!("{}->{}:{}", p.label(u), p.label(v), l)))
            } else {
                GradedSpace::zero()
            });
        }
    }
    let identities = (0..n).map(|u| o.algebra(u).unit().clone()).collect();
    let censoring = Relation::from_pairs(n, p.relation_pairs());
    FinLinCat::build(kind, p.labels().to_vec(), homs, identities, Some(censoring), |u, v, _w, g, f| {
        let alg = o.algebra(u);
        let rg = o.restriction(u, v).apply(&SparseVec::unit(g, kind));
        alg.mul(&SparseVec::unit(f, kind), &rg)
    })
}

/// A finite ordinary category given by its morphisms and composition table.
#[derive(Clone, Debug)]
pub struct FiniteCategory {
    pub objects: Vec<String>,
    /// `(name, source, target)`.
    pub morphisms: Vec<(String, usize, usize)>,
    /// `(g, f) ↦ g ∘ f` for composable pairs.
    pub compose: HashMap<(usize, usize), usize>,
    pub identities: Vec<usize>,
}

impl FiniteCategory {
    pub fn from_poset(p: &Poset) -> Self {
        let mut morphisms = Vec::new();
        let mut index = HashMap::new();
        for (u, v) in p.relation_pairs() {
            index.insert((u, v), morphisms.len());
            morphisms.push((format!("{}->{}", p.label(u), p.label(v)), u, v));
        }
        let mut compose = HashMap::new();
        for (&(u, v), &f) in &index {
            for (&(v2, w), &g) in &index {
                if v == v2 {
                    compose.insert((g, f), index[&(u, w)]);
                }
            }
        }
        let identities = (0..p.len()).map(|u| index[&(u, u)]).collect();
        FiniteCategory { objects: p.labels().to_vec(), morphisms, compose, identities }
    }

    pub fn validate(&self) -> Result<()> {
        let m = &self.morphisms;
        for &(g, f) in self.compose.keys() {
            if m[g].1 != m[f].2 {
                return Err(Error::Validation(format!("{} ∘ {} is not composable", m[g].0, m[f].0)));
            }
        }
        for g in 0..m.len() {
            for f in 0..m.len() {
                if m[g].1 == m[f].2 {
                    let Some(&h) = self.compose.get(&(g, f)) else {
                        return Err(Error::Validation(format!("{} ∘ {} is undefined", m[g].0, m[f].0)));
                    };
                    if (m[h].1, m[h].2) != (m[f].1, m[g].2) {
                        return Err(Error::Validation(format!("{} ∘ {} has the wrong endpoints", m[g].0, m[f].0)));
                    }
                }
            }
        }
        for (a, &i) in self.identities.iter().enumerate() {
            if (m[i].1, m[i].2) != (a, a) {
                return Err(Error::Validation(format!("identity of {} is not an endomorphism", self.objects[a])));
            }
            for f in 0..m.len() {
                if (m[f].2 == a && self.compose[&(i, f)] != f) || (m[f].1 == a && self.compose[&(f, i)] != f) {
                    return Err(Error::Validation(format!("unit law fails for {}", m[f].0)));
                }
            }
        }
        for h in 0..m.len() {
            for g in 0..m.len() {
                for f in 0..m.len() {
                    if m[h].1 == m[g].2 && m[g].1 == m[f].2 {
                        let hg = self.compose[&(h, g)];
                        let gf = self.compose[&(g, f)];
                        if self.compose[&(hg, f)] != self.compose[&(h, gf)] {
                            return Err(Error::Validation(format!("associativity fails on ({}, {}, {})", m[h].0, m[g].0, m[f].0)));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// The linearization `k𝒞`: hom bases are the morphism sets.
pub fn linearize(c: &FiniteCategory, kind: ScalarKind) -> Result<FinLinCat> {
    c.validate()?;
    let n = c.objects.len();
    // Position of each morphism within its hom basis.
    let mut slot = vec![0usize; c.morphisms.len()];
    let mut labels: Vec<Vec<String>> = vec![Vec::new(); n * n];
    for (i, (name, s, t)) in c.morphisms.iter().enumerate() {
        slot[i] = labels[s * n + t].len();
        labels[s * n + t].push(name.clone());
    }
    let mut by_slot: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for (i, (_, s, t)) in c.morphisms.iter().enumerate() {
        by_slot.insert((*s, *t, slot[i]), i);
    }
    let homs = labels.into_iter().map(GradedSpace::plain).collect();
    let identities = c.identities.iter().map(|&i| SparseVec::unit(slot[i], kind)).collect();
    FinLinCat::build(kind, c.objects.clone(), homs, identities, None, |a, b, cc, g, f| {
        let gm = by_slot[&(b, cc, g)];
        let fm = by_slot[&(a, b, f)];
        SparseVec::unit(slot[c.compose[&(gm, fm)]], kind)
    })
}

/// The algebra `⊕ hom(A,B)` with `g · f = g ∘ f` when composable and 0 otherwise.
/// Basis order: pairs `(A,B)` in object order, then the hom basis.
pub fn category_algebra(c: &FinLinCat) -> Result<Algebra> {
    if !c.is_ordinary() {
        return Err(Error::Unsupported("category algebra of a graded or DG category".into()));
    }
    let n = c.num_objects();
    let kind = c.kind();
    let mut offset = vec![0usize; n * n + 1];
    for k in 0..n * n {
        offset[k + 1] = offset[k] + c.hom_dim(k / n, k % n);
    }
    let dim = offset[n * n];
    let mut labels = Vec::with_capacity(dim);
    let mut owner = Vec::with_capacity(dim);
    for a in 0..n {
        for b in 0..n {
            for (i, e) in c.hom(a, b).basis.iter().enumerate() {
                labels.push(e.label.clone());
                owner.push((a, b, i));
            }
        }
    }
    let mut mult = Vec::with_capacity(dim * dim);
    for &(b, cc, g) in &owner {
        for &(a, b2, f) in &owner {
            mult.push(if b == b2 { c.compose_basis(a, b, cc, g, f).shift(offset[a * n + cc]) } else { SparseVec::new() });
        }
    }
    let mut unit = Vec::new();
    for a in 0..n {
        unit.extend(c.identity(a).iter().map(|(i, x)| (offset[a * n + a] + i, x.clone())));
    }
    let unit = SparseVec::from_entries(unit);
    Algebra::new(kind, labels, mult, unit)
}

/// Reversed homs with `g ∘ᵒᵖ f = (−1)^{|f||g|} f ∘ g`.
pub fn opposite(c: &FinLinCat) -> FinLinCat {
    let n = c.num_objects();
    let kind = c.kind();
    let homs = (0..n * n).map(|k| c.hom(k % n, k / n).clone()).collect();
    let mut comp = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            for cc in 0..n {
                // g ∈ hom(c,b), f ∈ hom(b,a); original f ∘ g lives in table (c, b, a).
                let (dg, df) = (c.hom_dim(cc, b), c.hom_dim(b, a));
                let mut table = Vec::with_capacity(dg * df);
                for g in 0..dg {
                    for f in 0..df {
                        let v = c.compose_basis(cc, b, a, f, g);
                        let odd = (c.hom(cc, b).degree(g) * c.hom(b, a).degree(f)) % 2 != 0;
                        table.push(if odd { v.neg() } else { v.clone() });
                    }
                }
                comp.push(table);
            }
        }
    }
    FinLinCat::raw(kind, c.objects().to_vec(), homs, comp, c.identities().to_vec(), c.censoring().map(|r| r.transpose()))
}

/// The full subcategory on the named objects.
pub fn full_subcategory(c: &FinLinCat, objs: &[&str]) -> Result<FinLinCat> {
    let mut idx = objs.iter().map(|o| c.object_index(o)).collect::<Result<Vec<_>>>()?;
    idx.sort_unstable();
    idx.dedup();
    Ok(c.select(&idx))
}

/// Per hom space: cocycle representatives of a cohomology basis and a classifier.
struct HomCohomology {
    reps: Vec<SparseVec>,
    degrees: Vec<i32>,
    classifier: Echelon,
}

impl HomCohomology {
    fn new(c: &FinLinCat, a: usize, b: usize) -> Self {
        let h = c.hom(a, b);
        let kind = c.kind();
        let mut classifier = Echelon::tracking(kind, h.dim());
        for d in &h.differential {
            classifier.insert(d.clone());
        }
        let mut reps = Vec::new();
        let mut degrees = Vec::new();
        let Some((lo, hi)) = h.degree_range() else {
            return HomCohomology { reps, degrees, classifier };
        };
        for deg in lo..=hi {
            let idx = h.in_degree(deg);
            // Cocycles of this degree: kernel of d restricted to its basis elements.
            let mut e = Echelon::new(kind, h.dim());
            let mut cols = Vec::new();
            for &i in &idx {
                cols.push(h.differential[i].clone());
            }
            let m = crate::linalg::Matrix::from_columns(kind, h.dim(), &cols).expect("differential fits");
            for z in m.kernel_basis() {
                let z = z.remap(|j| Some(idx[j]));
                if e.insert(z.clone()) && classifier.insert_tagged(z.clone(), reps.len()) {
                    reps.push(z);
                    degrees.push(deg);
                }
            }
        }
        HomCohomology { reps, degrees, classifier }
    }

    fn class_of(&self, v: &SparseVec) -> Option<SparseVec> {
        self.classifier.express(v)
    }
}

/// Cohomology category `H*(c)`: homs replaced by their cohomology with the
/// induced composition. Fails if composition is not well defined on classes.
pub fn cohomology_category(c: &FinLinCat) -> Result<FinLinCat> {
    let n = c.num_objects();
    let kind = c.kind();
    let coh: Vec<HomCohomology> = (0..n * n).map(|k| HomCohomology::new(c, k / n, k % n)).collect();
    let mut homs = Vec::with_capacity(n * n);
    for (k, hc) in coh.iter().enumerate() {
        let h = c.hom(k / n, k % n);
        let basis = hc
            .reps
            .iter()
            .zip(&hc.degrees)
            .map(|(z, &deg)| {
                let (lead, _) = z.leading().expect("nonzero representative");
                BasisElem::new(format!("[{}]", h.basis[lead].label), deg)
            })
            .collect::<Vec<_>>();
        let dim = basis.len();
        homs.push(GradedSpace::new(basis, vec![SparseVec::new(); dim]));
    }
    // Products of boundaries with cocycles must be boundaries.
    for a in 0..n {
        for b in 0..n {
            for cc in 0..n {
                let (hf, hg) = (&coh[a * n + b], &coh[b * n + cc]);
                let bad = |v: &SparseVec| !v.is_zero() && coh[a * n + cc].class_of(v).is_none_or(|x| !x.is_zero());
                for g in &hg.reps {
                    for d in &c.hom(a, b).differential {
                        if bad(&c.compose(a, b, cc, g, d)) {
                            return Err(Error::Validation("composition does not descend to cohomology".into()));
                        }
                    }
                }
                for f in &hf.reps {
                    for d in &c.hom(b, cc).differential {
                        if bad(&c.compose(a, b, cc, d, f)) {
                            return Err(Error::Validation("composition does not descend to cohomology".into()));
                        }
                    }
                }
            }
        }
    }
    let mut identities = Vec::with_capacity(n);
    for a in 0..n {
        let id = coh[a * n + a]
            .class_of(c.identity(a))
            .ok_or_else(|| Error::Validation(format!("identity of {} is not a cocycle", c.objects()[a])))?;
        identities.push(id);
    }
    let mut comp = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            for cc in 0..n {
                let (hf, hg, hh) = (&coh[a * n + b], &coh[b * n + cc], &coh[a * n + cc]);
                let mut table = Vec::with_capacity(hg.reps.len() * hf.reps.len());
                for g in &hg.reps {
                    for f in &hf.reps {
                        let v = c.compose(a, b, cc, g, f);
                        table.push(hh.class_of(&v).ok_or_else(|| {
                            Error::Validation("product of cocycles is not a cocycle (Leibniz rule fails)".into())
                        })?);
                    }
                }
                comp.push(table);
            }
        }
    }
    FinLinCat::from_parts(kind, c.objects().to_vec(), homs, comp, identities, c.censoring().cloned())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    const Q: ScalarKind = ScalarKind::Rational;

    fn pseudocircle() -> Poset {
        let s = |x: &str| x.to_string();
        Poset::new(
            vec![s("Ua"), s("Ub"), s("Uc"), s("Ud")],
            &[(s("Ua"), s("Uc")), (s("Ua"), s("Ud")), (s("Ub"), s("Uc")), (s("Ub"), s("Ud"))],
        )
        .unwrap()
    }

    #[test]
    fn algebra_categories() {
        let k = from_algebra(&Algebra::ground(Q)).unwrap();
        assert_eq!(k.total_dim(), 1);
        let e = from_algebra(&Algebra::dual_numbers(Q)).unwrap();
        assert_eq!(e.total_dim(), 2);
        assert!(e.compose_basis(0, 0, 0, 1, 1).is_zero());
        let t = from_algebra(&Algebra::upper_triangular(Q)).unwrap();
        assert_eq!(t.total_dim(), 3);
        assert!(t.validate().is_ok());
    }

    #[test]
    fn incidence_examples() {
        let a2 = incidence_category(&RingPresheaf::constant(Poset::chain(2), Algebra::ground(Q))).unwrap();
        assert_eq!(a2.total_dim(), 3);
        assert!(a2.validate().is_ok());
        let pc = incidence_category(&RingPresheaf::constant(pseudocircle(), Algebra::ground(Q))).unwrap();
        assert_eq!(pc.total_dim(), 8);
        assert!(pc.validate().is_ok());
        let aug = Matrix::from_i64(Q, &[&[1, 0]]);
        let o = RingPresheaf::new(Poset::chain(2), vec![Algebra::ground(Q), Algebra::dual_numbers(Q)], vec![(0, 1, aug)]).unwrap();
        let c = incidence_category(&o).unwrap();
        assert!(c.validate().is_ok());
        assert_eq!((c.hom_dim(0, 1), c.hom_dim(1, 1), c.hom_dim(1, 0)), (1, 2, 0));
    }

    #[test]
    fn linearized_poset_matches_incidence() {
        let p = pseudocircle();
        let lin = linearize(&FiniteCategory::from_poset(&p), Q).unwrap();
        let inc = incidence_category(&RingPresheaf::constant(p, Algebra::ground(Q))).unwrap();
        assert!(lin.same_structure(&inc));
    }

    #[test]
    fn parallel_arrows() {
        let c = FiniteCategory {
            objects: vec!["A".into(), "B".into()],
            morphisms: vec![("1A".into(), 0, 0), ("1B".into(), 1, 1), ("f".into(), 0, 1), ("g".into(), 0, 1)],
            compose: [((1, 2), 2), ((1, 3), 3), ((2, 0), 2), ((3, 0), 3), ((0, 0), 0), ((1, 1), 1)].into_iter().collect(),
            identities: vec![0, 1],
        };
        let l = linearize(&c, Q).unwrap();
        assert_eq!(l.hom_dim(0, 1), 2);
        assert!(l.validate().is_ok());
    }

    #[test]
    fn a2_category_algebra_is_upper_triangular() {
        let a2 = incidence_category(&RingPresheaf::constant(Poset::chain(2), Algebra::ground(Q))).unwrap();
        let alg = category_algebra(&a2).unwrap();
        assert_eq!(alg.dim(), 3);
        assert!(!alg.is_commutative());
        assert!(alg.axiom_violations().is_empty());
    }

    #[test]
    fn opposite_is_an_involution() {
        let pc = incidence_category(&RingPresheaf::constant(pseudocircle(), Algebra::ground(Q))).unwrap();
        let op = opposite(&pc);
        assert!(op.validate().is_ok());
        assert_eq!(opposite(&op), pc);
        assert_eq!(op.hom_dim(2, 0), 1);
    }

    #[test]
    fn full_subcategories() {
        let pc = incidence_category(&RingPresheaf::constant(pseudocircle(), Algebra::ground(Q))).unwrap();
        let all: Vec<&str> = pc.objects().iter().map(|s| s.as_str()).collect();
        assert_eq!(full_subcategory(&pc, &all).unwrap(), pc);
        let single = full_subcategory(&pc, &["Uc"]).unwrap();
        assert_eq!(single.total_dim(), 1);
        assert_eq!(single.censoring().map(|r| r.pairs()), Some(vec![(0, 0)]));
        assert!(full_subcategory(&pc, &["nope"]).is_err());
    }

    fn contractible_pair() -> FinLinCat {
        // k plus a contractible object z: end(z) = span{1z, h}, |h| = −1, d(h) = 1z.
        let kind = Q;
        let homs = vec![
            GradedSpace::plain(["1a".to_string()]),
            GradedSpace::zero(),
            GradedSpace::zero(),
            GradedSpace::new(vec![BasisElem::new("1z", 0), BasisElem::new("h", -1)], vec![SparseVec::new(), SparseVec::unit(0, kind)]),
        ];
        FinLinCat::build(kind, vec!["a".into(), "z".into()], homs, vec![SparseVec::unit(0, kind), SparseVec::unit(0, kind)], None, |a, _, _, g, f| {
            if a == 0 {
                return SparseVec::unit(0, kind);
            }
            match (g, f) {
                (0, x) | (x, 0) => SparseVec::unit(x, kind),
                _ => SparseVec::new(), // h ∘ h = 0
            }
        })
        .unwrap()
    }

    #[test]
    fn cohomology_category_examples() {
        let pc = incidence_category(&RingPresheaf::constant(pseudocircle(), Algebra::ground(Q))).unwrap();
        assert!(cohomology_category(&pc).unwrap().same_structure(&pc));
        let c = contractible_pair();
        assert!(c.validate().is_ok(), "{}", c.validate());
        let h = cohomology_category(&c).unwrap();
        assert_eq!(h.hom_dim(1, 1), 0);
        assert_eq!(h.hom_dim(0, 0), 1);
        assert!(h.identity(1).is_zero());
        assert!(h.validate().is_ok());
    }
}
