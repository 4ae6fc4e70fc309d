use serde::Serialize;

use crate::error::{Error, Result};
use crate::lincat::{incidence_category, Algebra, FinLinCat};
use crate::linalg::Matrix;
use crate::scalar::ScalarKind;
use crate::sites::poset::Poset;
use crate::sites::presheaf::RingPresheaf;
use crate::sites::simplicial::order_complex_cohomology;

/// A set of points as a bitmask over the point order.
pub type PointSet = u64;

const MAX_POINTS: usize = 64;

/// A finite topological space, stored as its full list of opens (sorted by size, then mask).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSpace {
    points: Vec<String>,
    opens: Vec<PointSet>,
}

fn bit(i: usize) -> PointSet {
    1 << i
}

impl FiniteSpace {
    /// Validates that the family contains ∅ and X and is closed under unions and intersections.
    pub fn from_opens(points: Vec<String>, opens: &[Vec<String>]) -> Result<Self> {
        let mut space = FiniteSpace { points, opens: Vec::new() };
        space.check_points()?;
        let mut masks: Vec<PointSet> = opens.iter().map(|o| space.mask(&o.iter().map(String::as_str).collect::<Vec<_>>())).collect::<Result<_>>()?;
        masks.sort_by_key(|&m| (m.count_ones(), m));
        masks.dedup();
        space.opens = masks;
        space.validate()?;
        Ok(space)
    }

    /// The Alexandrov topology of a specialization order: `(x, y)` means every
    /// open containing `y` contains `x`. Opens are the down-closed sets.
    pub fn from_specialization(points: Vec<String>, relations: &[(String, String)]) -> Result<Self> {
        let order = Poset::new(points.clone(), relations)?;
        let mut space = FiniteSpace { points, opens: Vec::new() };
        space.check_points()?;
        let n = space.points.len();
        let minimal: Vec<PointSet> = (0..n).map(|y| order.down_set(y).iter().fold(0, |m, &x| m | bit(x))).collect();
        // Opens are the unions of minimal opens.
        let mut opens = vec![0 as PointSet];
        for &u in &minimal {
            let more: Vec<PointSet> = opens.iter().map(|&o| o | u).collect();
            opens.extend(more);
            opens.sort_unstable();
            opens.dedup();
        }
        opens.sort_by_key(|&m| (m.count_ones(), m));
        space.opens = opens;
        space.validate()?;
        Ok(space)
    }

    fn check_points(&self) -> Result<()> {
        if self.points.len() > MAX_POINTS {
            return Err(Error::Validation(format!("finite spaces are limited to {MAX_POINTS} points")));
        }
        let mut sorted = self.points.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != self.points.len() {
            return Err(Error::Validation("point labels are not distinct".into()));
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let whole = self.whole();
        if !self.opens.contains(&0) {
            return Err(Error::Validation("the empty set is not open".into()));
        }
        if !self.opens.contains(&whole) {
            return Err(Error::Validation("the whole space is not open".into()));
        }
        for &u in &self.opens {
            for &v in &self.opens {
                if !self.is_open(u | v) {
                    return Err(Error::Validation(format!("opens not closed under union: {:?} ∪ {:?}", self.labels_of(u), self.labels_of(v))));
                }
                if !self.is_open(u & v) {
                    return Err(Error::Validation(format!(
                        "opens not closed under intersection: {:?} ∩ {:?}",
                        self.labels_of(u),
                        self.labels_of(v)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn opens(&self) -> &[PointSet] {
        &self.opens
    }

    pub fn whole(&self) -> PointSet {
        if self.points.len() == MAX_POINTS {
            PointSet::MAX
        } else {
            bit(self.points.len()) - 1
        }
    }

    pub fn is_open(&self, s: PointSet) -> bool {
        self.opens.binary_search_by_key(&(s.count_ones(), s), |&m| (m.count_ones(), m)).is_ok()
    }

    pub fn mask(&self, labels: &[&str]) -> Result<PointSet> {
        labels.iter().try_fold(0, |m, l| {
            let i = self.points.iter().position(|p| p == l).ok_or_else(|| Error::UnknownObject(l.to_string()))?;
            Ok(m | bit(i))
        })
    }

    pub fn labels_of(&self, s: PointSet) -> Vec<String> {
        (0..self.points.len()).filter(|&i| s & bit(i) != 0).map(|i| self.points[i].clone()).collect()
    }

    /// The smallest open containing point `p`.
    pub fn minimal_open(&self, p: usize) -> PointSet {
        self.opens.iter().filter(|&&o| o & bit(p) != 0).fold(self.whole(), |m, &o| m & o)
    }

    /// `x ≤ y` iff `x ∈ U_y`; an error unless the space is T0.
    pub fn specialization_poset(&self) -> Result<Poset> {
        let n = self.points.len();
        let leq = (0..n).map(|x| (0..n).map(|y| self.minimal_open(y) & bit(x) != 0).collect()).collect();
        Poset::from_relation(self.points.clone(), leq)
    }

    fn subspace_poset(&self, s: PointSet) -> Result<Poset> {
        let elems: Vec<usize> = (0..self.points.len()).filter(|&i| s & bit(i) != 0).collect();
        Ok(self.specialization_poset()?.subposet(&elems))
    }

    /// Connected components of the subspace `s`.
    pub fn components(&self, s: PointSet) -> Result<Vec<PointSet>> {
        let elems: Vec<usize> = (0..self.points.len()).filter(|&i| s & bit(i) != 0).collect();
        let p = self.specialization_poset()?.subposet(&elems);
        Ok(p.components().into_iter().map(|c| c.iter().fold(0, |m, &k| m | bit(elems[k]))).collect())
    }

    /// The opens `U_p`, one per distinct minimal open, named after the first point producing it.
    pub fn minimal_basis(&self) -> OpenFamily {
        let mut labels = Vec::new();
        let mut sets: Vec<PointSet> = Vec::new();
        for p in 0..self.points.len() {
            let u = self.minimal_open(p);
            if !sets.contains(&u) {
                labels.push(format!("U_{}", self.points[p]));
                sets.push(u);
            }
        }
        OpenFamily::new(labels, sets)
    }

    /// Nonempty opens whose constant-coefficient cohomology vanishes in degrees `1..=n_max`.
    pub fn acyclic_opens(&self, n_max: usize) -> Result<OpenFamily> {
        let mut labels = Vec::new();
        let mut sets = Vec::new();
        for &u in &self.opens {
            if u == 0 {
                continue;
            }
            let dims = order_complex_cohomology(&self.subspace_poset(u)?, n_max)?;
            if dims[1..].iter().all(|&d| d == 0) {
                labels.push(format!("{{{}}}", self.labels_of(u).join(",")));
                sets.push(u);
            }
        }
        Ok(OpenFamily::new(labels, sets))
    }

    /// Constant-coefficient cohomology of the space, through its specialization order.
    pub fn cohomology(&self, n_max: usize) -> Result<Vec<usize>> {
        order_complex_cohomology(&self.specialization_poset()?, n_max)
    }

    pub fn analysis(&self) -> Result<SpaceAnalysis> {
        let basis = self.minimal_basis();
        let basis_verified = self.opens.iter().all(|&o| basis.sets.iter().filter(|&&b| b & !o == 0).fold(0, |m, &b| m | b) == o);
        Ok(SpaceAnalysis {
            points: self.points.clone(),
            opens: self.opens.iter().map(|&o| self.labels_of(o)).collect(),
            minimal_basis: basis.labels.iter().cloned().zip(basis.sets.iter().map(|&s| self.labels_of(s))).collect(),
            basis_verified,
            components: self.components(self.whole())?.into_iter().map(|c| self.labels_of(c)).collect(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpaceAnalysis {
    pub points: Vec<String>,
    pub opens: Vec<Vec<String>>,
    pub minimal_basis: Vec<(String, Vec<String>)>,
    /// Every open is the union of the basis members it contains.
    pub basis_verified: bool,
    pub components: Vec<Vec<String>>,
}

/// Named opens of a space, ordered by inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenFamily {
    pub labels: Vec<String>,
    pub sets: Vec<PointSet>,
    pub poset: Poset,
}

impl OpenFamily {
    pub fn new(labels: Vec<String>, sets: Vec<PointSet>) -> Self {
        let leq = sets.iter().map(|&u| sets.iter().map(|&v| u & !v == 0).collect()).collect();
        let poset = Poset::from_relation(labels.clone(), leq).expect("distinct sets are antisymmetric under inclusion");
        OpenFamily { labels, sets, poset }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Members contained in `s`, as labels.
    pub fn inside(&self, s: PointSet) -> Vec<&str> {
        self.sets.iter().zip(&self.labels).filter(|(&u, _)| u & !s == 0).map(|(_, l)| l.as_str()).collect()
    }

    /// Sections of the constant sheaf: `O(U) = k^{π₀(U)}`, with restriction
    /// sending a component's idempotent to the sum over the components inside it.
    pub fn constant_sheaf(&self, space: &FiniteSpace, kind: ScalarKind) -> Result<RingPresheaf> {
        let comps: Vec<Vec<PointSet>> = self.sets.iter().map(|&u| space.components(u)).collect::<Result<_>>()?;
        let algebras = comps.iter().map(|c| if c.len() == 1 { Algebra::ground(kind) } else { Algebra::split(kind, c.len()) }).collect();
        let gens = self
            .poset
            .relation_pairs()
            .into_iter()
            .map(|(u, v)| {
                let grid: Vec<Vec<i64>> = comps[u].iter().map(|cu| comps[v].iter().map(|cv| i64::from(cu & !cv == 0)).collect()).collect();
                let rows: Vec<&[i64]> = grid.iter().map(Vec::as_slice).collect();
                (u, v, Matrix::from_i64(kind, &rows))
            })
            .collect();
        RingPresheaf::new(self.poset.clone(), algebras, gens)
    }

    /// The incidence category of the family with constant-sheaf coefficients.
    pub fn incidence(&self, space: &FiniteSpace, kind: ScalarKind) -> Result<FinLinCat> {
        incidence_category(&self.constant_sheaf(space, kind)?)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    fn s(v: &[&str]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    /// a, b open points; c, d closed with `U_c = {a,b,c}`, `U_d = {a,b,d}`.
    pub(crate) fn pseudocircle() -> FiniteSpace {
        let rel: Vec<(String, String)> =
            [("a", "c"), ("b", "c"), ("a", "d"), ("b", "d")].iter().map(|(x, y)| (x.to_string(), y.to_string())).collect();
        FiniteSpace::from_specialization(s(&["a", "b", "c", "d"]), &rel).unwrap()
    }

    #[test]
    fn sierpinski_and_discrete() {
        let sp = FiniteSpace::from_opens(s(&["a", "b"]), &[vec![], s(&["a"]), s(&["a", "b"])]).unwrap();
        let basis = sp.minimal_basis();
        assert_eq!(basis.sets, vec![0b01, 0b11]);
        let disc = FiniteSpace::from_opens(s(&["p", "q"]), &[vec![], s(&["p"]), s(&["q"]), s(&["p", "q"])]).unwrap();
        assert_eq!(disc.minimal_basis().sets, vec![0b01, 0b10]);
        assert!(disc.analysis().unwrap().basis_verified);
    }

    #[test]
    fn rejects_non_topology() {
        let repeated = FiniteSpace::from_opens(s(&["a", "b"]), &[vec![], s(&["a"]), s(&["b"]), s(&["a", "b"]), s(&["a"])]).unwrap();
        assert_eq!(repeated.opens().len(), 4);
        let err = FiniteSpace::from_opens(s(&["a", "b", "c"]), &[vec![], s(&["a"]), s(&["b"]), s(&["a", "b", "c"])]).unwrap_err();
        assert!(err.to_string().contains("union"));
    }

    #[test]
    fn pseudocircle_structure() {
        let x = pseudocircle();
        assert_eq!(x.opens().len(), 7);
        let a = x.analysis().unwrap();
        assert_eq!(a.minimal_basis.len(), 4);
        assert!(a.basis_verified);
        assert_eq!(x.cohomology(2).unwrap(), vec![1, 1, 0]);
        let acyclic = x.acyclic_opens(3).unwrap();
        assert_eq!(acyclic.len(), 5);
        let sheaf = acyclic.constant_sheaf(&x, ScalarKind::Rational).unwrap();
        let ab = acyclic.sets.iter().position(|&u| u == 0b0011).unwrap();
        assert_eq!(sheaf.algebra(ab).dim(), 2);
    }

    #[test]
    fn two_acyclic_bases_give_the_same_hochschild_cohomology() {
        use crate::hochschild::{HochschildComplex, HochschildSpec};
        use std::sync::Arc;
        let x = pseudocircle();
        let betti = |f: &OpenFamily| {
            let c = Arc::new(f.incidence(&x, ScalarKind::Rational).unwrap());
            HochschildComplex::build(&HochschildSpec::diagonal(c, 2)).unwrap().betti().unwrap()
        };
        assert_eq!(betti(&x.minimal_basis()), vec![1, 1, 0]);
        assert_eq!(betti(&x.acyclic_opens(3).unwrap()), vec![1, 1, 0]);
    }
}
