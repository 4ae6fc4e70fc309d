use crate::error::{check_kind, Error, Result};
use crate::lincat::Algebra;
use crate::linalg::Matrix;
use crate::scalar::ScalarKind;
use crate::sites::poset::Poset;

/// A presheaf of algebras on a poset: `O(u)` per element and unital
/// restriction homomorphisms `r_uv: O(v) → O(u)` for `u ≤ v`.
#[derive(Clone, Debug)]
pub struct RingPresheaf {
    poset: Poset,
    algebras: Vec<Algebra>,
    restrictions: Vec<Option<Matrix>>,
}

impl RingPresheaf {
    /// `generators` must cover at least every covering pair; the remaining
    /// restrictions are composed along chains, then functoriality is verified.
    pub fn new(poset: Poset, algebras: Vec<Algebra>, generators: Vec<(usize, usize, Matrix)>) -> Result<Self> {
        let n = poset.len();
        if algebras.len() != n {
            return Err(Error::Shape(format!("{} algebras for {} poset elements", algebras.len(), n)));
        }
        let kind = algebras.first().map_or(ScalarKind::Rational, |a| a.kind());
        for a in &algebras {
            check_kind(kind, a.kind())?;
        }
        let dims: Vec<usize> = algebras.iter().map(|a| a.dim()).collect();
        let restrictions = complete_restrictions(&poset, &dims, kind, generators)?;
        let o = RingPresheaf { poset, algebras, restrictions };
        o.validate()?;
        Ok(o)
    }

    pub fn constant(poset: Poset, algebra: Algebra) -> Self {
        let n = poset.len();
        let kind = algebra.kind();
        let dim = algebra.dim();
        let restrictions = (0..n * n)
            .map(|k| if poset.leq(k / n, k % n) { Some(Matrix::identity(kind, dim)) } else { None })
            .collect();
        RingPresheaf { algebras: vec![algebra; n], poset, restrictions }
    }

    /// Unital homomorphisms and `r_uv ∘ r_vw = r_uw` for every `u ≤ v ≤ w`.
    pub fn validate(&self) -> Result<()> {
        let n = self.poset.len();
        let name = |i: usize| self.poset.label(i);
        for (u, v) in self.poset.relation_pairs() {
            let r = self.restriction(u, v);
            if !self.algebras[v].is_unital_hom_to(&self.algebras[u], r) {
                return Err(Error::Validation(format!("restriction {} → {} is not a unital algebra map", name(v), name(u))));
            }
        }
        for (u, v) in self.poset.relation_pairs() {
            for w in 0..n {
                if self.poset.leq(v, w) && self.restriction(u, v).mul(self.restriction(v, w))? != *self.restriction(u, w) {
                    return Err(Error::Validation(format!(
                        "restrictions are not functorial on {} ≤ {} ≤ {}",
                        name(u),
                        name(v),
                        name(w)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> ScalarKind {
        self.algebras.first().map_or(ScalarKind::Rational, |a| a.kind())
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn algebra(&self, u: usize) -> &Algebra {
        &self.algebras[u]
    }

    pub fn algebras(&self) -> &[Algebra] {
        &self.algebras
    }

    /// `r_uv: O(v) → O(u)`; panics unless `u ≤ v`.
    pub fn restriction(&self, u: usize, v: usize) -> &Matrix {
        self.restrictions[u * self.poset.len() + v].as_ref().expect("restriction along u ≤ v")
    }

    /// The presheaf restricted to a subset of elements (in the given order).
    pub fn restrict_to(&self, elems: &[usize]) -> RingPresheaf {
        let n = self.poset.len();
        let poset = self.poset.subposet(elems);
        let algebras = elems.iter().map(|&i| self.algebras[i].clone()).collect();
        let mut restrictions = Vec::with_capacity(elems.len() * elems.len());
        for &u in elems {
            for &v in elems {
                restrictions.push(self.restrictions[u * n + v].clone());
            }
        }
        RingPresheaf { poset, algebras, restrictions }
    }

    pub fn is_constant_ground(&self) -> bool {
        self.algebras.iter().all(|a| a.dim() == 1)
    }
}

/// Fills `maps[u·n + v]: F(v) → F(u)` for every `u ≤ v` from generators along
/// (at least) the covering pairs, composing through intermediate elements.
/// Functoriality of the result is left to the caller to verify.
pub(crate) fn complete_restrictions(
    poset: &Poset,
    dims: &[usize],
    kind: ScalarKind,
    generators: Vec<(usize, usize, Matrix)>,
) -> Result<Vec<Option<Matrix>>> {
    let n = poset.len();
    let mut maps: Vec<Option<Matrix>> = vec![None; n * n];
    for u in 0..n {
        maps[u * n + u] = Some(Matrix::identity(kind, dims[u]));
    }
    for (u, v, m) in generators {
        check_kind(kind, m.kind())?;
        if !poset.leq(u, v) {
            return Err(Error::Validation(format!("restriction given for {} ≰ {}", poset.label(u), poset.label(v))));
        }
        if m.shape() != (dims[u], dims[v]) {
            return Err(Error::Shape(format!("restriction {}→{} has the wrong shape", poset.label(v), poset.label(u))));
        }
        maps[u * n + v] = Some(m);
    }
    let mut pending: Vec<(usize, usize)> = poset.relation_pairs().into_iter().filter(|&(u, v)| maps[u * n + v].is_none()).collect();
    while !pending.is_empty() {
        let before = pending.len();
        let mut still = Vec::new();
        for (u, v) in pending {
            let via = (0..n).find(|&w| poset.lt(u, w) && poset.lt(w, v) && maps[u * n + w].is_some() && maps[w * n + v].is_some());
            match via {
                Some(w) => {
                    let m = maps[u * n + w].as_ref().unwrap().mul(maps[w * n + v].as_ref().unwrap())?;
                    maps[u * n + v] = Some(m);
                }
                None => still.push((u, v)),
            }
        }
        if still.len() == before {
            let (u, v) = still[0];
            return Err(Error::Validation(format!("no restriction {} → {} given or derivable", poset.label(v), poset.label(u))));
        }
        pending = still;
    }
    Ok(maps)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: ScalarKind = ScalarKind::Rational;

    #[test]
    fn augmented_two_chain() {
        let p = Poset::chain(2);
        let aug = Matrix::from_i64(Q, &[&[1, 0]]);
        let o = RingPresheaf::new(p, vec![Algebra::ground(Q), Algebra::dual_numbers(Q)], vec![(0, 1, aug)]).unwrap();
        assert_eq!(o.restriction(0, 1).shape(), (1, 2));
    }

    #[test]
    fn derived_restrictions_compose() {
        let p = Poset::chain(3);
        let k = Algebra::ground(Q);
        let id = Matrix::identity(Q, 1);
        let o = RingPresheaf::new(p, vec![k.clone(), k.clone(), k], vec![(0, 1, id.clone()), (1, 2, id)]).unwrap();
        assert_eq!(*o.restriction(0, 2), Matrix::identity(Q, 1));
    }

    #[test]
    fn rejects_non_unital_restriction() {
        let p = Poset::chain(2);
        let bad = Matrix::from_i64(Q, &[&[0, 1]]);
        assert!(RingPresheaf::new(p, vec![Algebra::ground(Q), Algebra::dual_numbers(Q)], vec![(0, 1, bad)]).is_err());
    }
}
