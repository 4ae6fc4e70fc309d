use crate::error::{check_kind, Error, Result};
use crate::linalg::{Echelon, Matrix, SparseVec};
use crate::scalar::ScalarKind;
use crate::sites::poset::Poset;
use crate::sites::presheaf::{complete_restrictions, RingPresheaf};

/// A presheaf of finite-dimensional vector spaces on a poset: `F(u)` per
/// element and maps `F(v) → F(u)` for `u ≤ v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePresheaf {
    kind: ScalarKind,
    poset: Poset,
    dims: Vec<usize>,
    maps: Vec<Option<Matrix>>,
}

impl ModulePresheaf {
    /// Generators must cover the covering pairs; the rest are composed, then functoriality is checked.
    pub fn new(kind: ScalarKind, poset: Poset, dims: Vec<usize>, generators: Vec<(usize, usize, Matrix)>) -> Result<Self> {
        if dims.len() != poset.len() {
            return Err(Error::Shape(format!("{} dimensions for {} poset elements", dims.len(), poset.len())));
        }
        let maps = complete_restrictions(&poset, &dims, kind, generators)?;
        let m = ModulePresheaf { kind, poset, dims, maps };
        m.validate()?;
        Ok(m)
    }

    pub fn constant(kind: ScalarKind, poset: Poset, dim: usize) -> Self {
        let n = poset.len();
        let maps = (0..n * n).map(|k| poset.leq(k / n, k % n).then(|| Matrix::identity(kind, dim))).collect();
        ModulePresheaf { kind, dims: vec![dim; n], poset, maps }
    }

    pub fn zero(kind: ScalarKind, poset: Poset) -> Self {
        Self::constant(kind, poset, 0)
    }

    /// The underlying presheaf of vector spaces of a ring presheaf.
    pub fn underlying(o: &RingPresheaf) -> Self {
        let p = o.poset().clone();
        let n = p.len();
        let maps = (0..n * n).map(|k| p.leq(k / n, k % n).then(|| o.restriction(k / n, k % n).clone())).collect();
        ModulePresheaf { kind: o.kind(), dims: o.algebras().iter().map(|a| a.dim()).collect(), poset: p, maps }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.poset.len();
        for (u, v) in self.poset.relation_pairs() {
            let m = self.map(u, v);
            check_kind(self.kind, m.kind())?;
            if m.shape() != (self.dims[u], self.dims[v]) {
                return Err(Error::Shape(format!("map {} → {} has the wrong shape", self.poset.label(v), self.poset.label(u))));
            }
            if u == v && *m != Matrix::identity(self.kind, self.dims[u]) {
                return Err(Error::Validation(format!("map on {} is not the identity", self.poset.label(u))));
            }
            for w in 0..n {
                if self.poset.leq(v, w) && self.map(u, v).mul(self.map(v, w))? != *self.map(u, w) {
                    return Err(Error::Validation(format!(
                        "presheaf is not functorial on {} ≤ {} ≤ {}",
                        self.poset.label(u),
                        self.poset.label(v),
                        self.poset.label(w)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> ScalarKind {
        self.kind
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, u: usize) -> usize {
        self.dims[u]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `F(v) → F(u)`; panics unless `u ≤ v`.
    pub fn map(&self, u: usize, v: usize) -> &Matrix {
        self.maps[u * self.poset.len() + v].as_ref().expect("map along u ≤ v")
    }

    /// Pointwise limit over `elems` (given as indices of this presheaf's poset):
    /// compatible families `(x_u)` with `x_u = F(u ≤ u′) x_{u′}`, as a basis of
    /// vectors in `⊕_{u ∈ elems} F(u)` laid out in the order of `elems`.
    pub fn limit(&self, elems: &[usize]) -> Result<Vec<SparseVec>> {
        let offsets = offsets(elems.iter().map(|&u| self.dims[u]));
        let total = offsets[elems.len()];
        let mut eqs = Echelon::new(self.kind, total);
        for (a, &u) in elems.iter().enumerate() {
            for (b, &v) in elems.iter().enumerate() {
                if u == v || !self.poset.leq(u, v) {
                    continue;
                }
                // x_u − F(u ≤ v) x_v = 0, one equation per coordinate of F(u).
                let m = self.map(u, v);
                for i in 0..self.dims[u] {
                    let row = SparseVec::unit(offsets[a] + i, self.kind).sub(&m.row(i).shift(offsets[b]), self.kind);
                    eqs.insert(row);
                }
            }
        }
        Ok(eqs.kernel_basis())
    }
}

pub(crate) fn offsets(dims: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut out = vec![0];
    for d in dims {
        out.push(out.last().unwrap() + d);
    }
    out
}

/// Restriction to a set of elements: evaluation on the induced subposet.
pub fn presheaf_restrict(m: &ModulePresheaf, elems: &[usize]) -> ModulePresheaf {
    let n = m.poset.len();
    let poset = m.poset.subposet(elems);
    let dims = elems.iter().map(|&u| m.dims[u]).collect();
    let mut maps = Vec::with_capacity(elems.len() * elems.len());
    for &u in elems {
        for &v in elems {
            maps.push(m.maps[u * n + v].clone());
        }
    }
    ModulePresheaf { kind: m.kind, poset, dims, maps }
}

/// Indices in `ambient` of the elements of `sub`, matched by label.
pub(crate) fn embedding(sub: &Poset, ambient: &Poset) -> Result<Vec<usize>> {
    let idx: Vec<usize> = sub.labels().iter().map(|l| ambient.index(l)).collect::<Result<_>>()?;
    for i in 0..idx.len() {
        for j in 0..idx.len() {
            if sub.leq(i, j) != ambient.leq(idx[i], idx[j]) {
                return Err(Error::Validation(format!("{} is not an induced subposet", sub.labels().join(","))));
            }
        }
    }
    Ok(idx)
}

/// Right extension along the inclusion of a subposet: the value at `v` is the
/// limit of `m` over the sub-elements below `v`, and the map for `w ≤ v`
/// forgets the components not below `w`.
pub fn presheaf_right_extend(m: &ModulePresheaf, ambient: &Poset) -> Result<ModulePresheaf> {
    let kind = m.kind;
    let idx = embedding(&m.poset, ambient)?;
    let n = ambient.len();
    let below: Vec<Vec<usize>> = (0..n).map(|v| (0..idx.len()).filter(|&k| ambient.leq(idx[k], v)).collect()).collect();
    let bases: Vec<Vec<SparseVec>> = below.iter().map(|b| m.limit(b)).collect::<Result<_>>()?;
    let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
    let mut gens = Vec::new();
    for (w, v) in ambient.covers() {
        // A family over below[v] restricted to below[w] ⊆ below[v], expressed in the basis at w.
        let src_off = offsets(below[v].iter().map(|&k| m.dims[k]));
        let dst_off = offsets(below[w].iter().map(|&k| m.dims[k]));
        let mut target = Echelon::tracking(kind, dst_off[below[w].len()]);
        for (t, b) in bases[w].iter().enumerate() {
            target.insert_tagged(b.clone(), t);
        }
        let cols = bases[v]
            .iter()
            .map(|x| {
                let mut restricted = Vec::new();
                for (j, &k) in below[w].iter().enumerate() {
                    let pos = below[v].iter().position(|&e| e == k).expect("below w is below v");
                    for i in 0..m.dims[k] {
                        if let Some(c) = x.get(src_off[pos] + i) {
                            restricted.push((dst_off[j] + i, c.clone()));
                        }
                    }
                }
                target
                    .express(&SparseVec::from_entries(restricted))
                    .ok_or_else(|| Error::Validation("restricted family is not compatible".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        gens.push((w, v, Matrix::from_columns(kind, dims[w], &cols)?));
    }
    ModulePresheaf::new(kind, ambient.clone(), dims, gens)
}

/// Dimension of the space of natural transformations `m → n`.
pub fn presheaf_hom_dim(m: &ModulePresheaf, n: &ModulePresheaf) -> Result<usize> {
    if m.poset != n.poset {
        return Err(Error::Validation("presheaves live on different posets".into()));
    }
    let kind = m.kind;
    let size = m.poset.len();
    // Unknown η_u is a dim n(u) × dim m(u) block, row-major.
    let offs = offsets((0..size).map(|u| n.dims[u] * m.dims[u]));
    let mut eqs = Echelon::new(kind, offs[size]);
    for (u, v) in m.poset.relation_pairs() {
        if u == v {
            continue;
        }
        // η_u ∘ m(u≤v) − n(u≤v) ∘ η_v = 0, entrywise (i, j) for i < n(u), j < m(v).
        let (mu, nu) = (m.map(u, v), n.map(u, v));
        for i in 0..n.dims[u] {
            for j in 0..m.dims[v] {
                let mut row = Vec::new();
                for k in 0..m.dims[u] {
                    let c = mu.get(k, j);
                    if !c.is_zero() {
                        row.push((offs[u] + i * m.dims[u] + k, c));
                    }
                }
                for k in 0..n.dims[v] {
                    let c = nu.get(i, k);
                    if !c.is_zero() {
                        row.push((offs[v] + k * m.dims[v] + j, -c));
                    }
                }
                eqs.insert(SparseVec::from_entries(row));
            }
        }
    }
    Ok(offs[size] - eqs.rank())
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: ScalarKind = ScalarKind::Rational;

    fn sierpinski_opens() -> Poset {
        Poset::new(vec!["a".into(), "X".into()], &[("a".into(), "X".into())]).unwrap()
    }

    #[test]
    fn extend_from_the_open_point() {
        let p = sierpinski_opens();
        let n = ModulePresheaf::constant(Q, p.subposet(&[0]), 2);
        let e = presheaf_right_extend(&n, &p).unwrap();
        assert_eq!(e.dims(), &[2, 2]);
        let z = presheaf_right_extend(&ModulePresheaf::zero(Q, p.subposet(&[0])), &p).unwrap();
        assert_eq!(z.total_dim(), 0);
    }

    #[test]
    fn restrict_then_extend_recovers_on_the_subposet() {
        let p = Poset::chain(3);
        let gens = vec![(0, 1, Matrix::from_i64(Q, &[&[1, 1]])), (1, 2, Matrix::from_i64(Q, &[&[1, 0], &[0, 1]]))];
        let m = ModulePresheaf::new(Q, p.clone(), vec![1, 2, 2], gens).unwrap();
        let sub = presheaf_restrict(&m, &[0, 1]);
        let ext = presheaf_right_extend(&sub, &p).unwrap();
        assert_eq!(presheaf_restrict(&ext, &[0, 1]).dims(), sub.dims());
        // Adjunction: Hom(M, i_* N) = Hom(i^* M, N).
        assert_eq!(presheaf_hom_dim(&m, &ext).unwrap(), presheaf_hom_dim(&sub, &sub).unwrap());
    }

    #[test]
    fn limit_of_constant_presheaf_counts_components() {
        let p = Poset::antichain(3);
        let k = ModulePresheaf::constant(Q, p, 1);
        assert_eq!(k.limit(&[0, 1, 2]).unwrap().len(), 3);
        let c = ModulePresheaf::constant(Q, Poset::chain(3), 1);
        assert_eq!(c.limit(&[0, 1, 2]).unwrap().len(), 1);
    }
}
