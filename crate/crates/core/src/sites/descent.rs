//! The Čech descent complex of a family of presheaves on the pieces of a cover
//! of a poset, `S(N) = ∏ i_{p*}N_p → ∏ i_{pq*}N_{pq} → …`, evaluated pointwise.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{ComplexRep, Echelon, Matrix, SparseVec};
use crate::scalar::{Scalar, ScalarKind};
use crate::sites::module::{embedding, offsets, presheaf_restrict, ModulePresheaf};
use crate::sites::poset::Poset;

/// A compatible family: `family[p]` lives on the induced subposet `pieces[p]`
/// of `ambient`, and any two agree on their overlap.
pub struct DescentData<'a> {
    ambient: &'a Poset,
    pieces: Vec<Vec<usize>>,
    family: Vec<ModulePresheaf>,
    kind: ScalarKind,
}

impl<'a> DescentData<'a> {
    pub fn new(ambient: &'a Poset, pieces: Vec<Vec<usize>>, family: Vec<ModulePresheaf>) -> Result<Self> {
        if pieces.is_empty() || pieces.len() != family.len() {
            return Err(Error::Validation("one presheaf per cover piece is required".into()));
        }
        let n = ambient.len();
        let mut covered = vec![false; n];
        for (p, piece) in pieces.iter().enumerate() {
            for &u in piece {
                covered[u] = true;
                if ambient.down_set(u).iter().any(|w| !piece.contains(w)) {
                    return Err(Error::Validation(format!("piece {p} is not down-closed at {}", ambient.label(u))));
                }
            }
            if embedding(family[p].poset(), ambient)? != *piece {
                return Err(Error::Validation(format!("presheaf {p} does not live on its piece")));
            }
        }
        if let Some(u) = covered.iter().position(|&c| !c) {
            return Err(Error::Validation(format!("{} is not covered", ambient.label(u))));
        }
        let kind = family[0].kind();
        for p in 0..pieces.len() {
            for q in p + 1..pieces.len() {
                let overlap: Vec<usize> = pieces[p].iter().copied().filter(|u| pieces[q].contains(u)).collect();
                let local = |r: usize| overlap.iter().map(|u| pieces[r].iter().position(|x| x == u).unwrap()).collect::<Vec<_>>();
                if presheaf_restrict(&family[p], &local(p)) != presheaf_restrict(&family[q], &local(q)) {
                    return Err(Error::Validation(format!("presheaves {p} and {q} disagree on their overlap")));
                }
            }
        }
        Ok(DescentData { ambient, pieces, family, kind })
    }

    /// `ε^* M`: the restrictions of one presheaf to every piece.
    pub fn pullback(m: &'a ModulePresheaf, pieces: Vec<Vec<usize>>) -> Result<Self> {
        let family = pieces.iter().map(|p| presheaf_restrict(m, p)).collect();
        Self::new(m.poset(), pieces, family)
    }

    /// `N(u)` and `N(u ≤ w)` from the first piece containing both.
    fn value_dim(&self, u: usize) -> usize {
        let p = self.pieces.iter().position(|piece| piece.contains(&u)).expect("covered");
        self.family[p].dim(self.local(p, u))
    }

    fn local(&self, p: usize, u: usize) -> usize {
        self.pieces[p].iter().position(|&x| x == u).expect("element of piece")
    }

    /// Compatible families over `elems` (ambient indices), where `x_u = N(u≤w) x_w`
    /// is imposed for pairs lying in a common piece among `within`.
    fn limit(&self, elems: &[usize], within: &[usize]) -> Vec<SparseVec> {
        let offs = offsets(elems.iter().map(|&u| self.value_dim(u)));
        let mut eqs = Echelon::new(self.kind, offs[elems.len()]);
        for &p in within {
            for (a, &u) in elems.iter().enumerate() {
                for (b, &w) in elems.iter().enumerate() {
                    if u == w || !self.ambient.leq(u, w) || !self.pieces[p].contains(&u) || !self.pieces[p].contains(&w) {
                        continue;
                    }
                    let m = self.family[p].map(self.local(p, u), self.local(p, w));
                    for i in 0..self.value_dim(u) {
                        eqs.insert(SparseVec::unit(offs[a] + i, self.kind).sub(&m.row(i).shift(offs[b]), self.kind));
                    }
                }
            }
        }
        eqs.kernel_basis()
    }

    fn intersection(&self, k: &[usize]) -> Vec<usize> {
        (0..self.ambient.len()).filter(|u| k.iter().all(|&p| self.pieces[p].contains(u))).collect()
    }

    fn below(&self, elems: &[usize], v: usize) -> Vec<usize> {
        elems.iter().copied().filter(|&u| self.ambient.leq(u, v)).collect()
    }

    /// `S(N)(v)`, in degrees `0..=pieces−1`.
    pub fn complex_at(&self, v: usize) -> Result<ComplexRep> {
        let m = self.pieces.len();
        let subsets: Vec<Vec<Vec<usize>>> = (1..=m).map(|s| k_subsets(m, s)).collect();
        // Per degree: for each K, (elements of J_K below v, basis of the limit there).
        let mut terms: Vec<Vec<(Vec<usize>, Vec<SparseVec>)>> = Vec::with_capacity(m);
        for ks in &subsets {
            terms.push(
                ks.iter()
                    .map(|k| {
                        let elems = self.below(&self.intersection(k), v);
                        let basis = self.limit(&elems, &[k[0]]);
                        (elems, basis)
                    })
                    .collect(),
            );
        }
        let dims: Vec<usize> = terms.iter().map(|t| t.iter().map(|(_, b)| b.len()).sum()).collect();
        let mut diffs = Vec::with_capacity(m.saturating_sub(1));
        for s in 0..m - 1 {
            let src_offs = offsets(terms[s].iter().map(|(_, b)| b.len()));
            let mut rows_by_target: Vec<SparseVec> = Vec::new();
            for (kt, k) in subsets[s + 1].iter().enumerate() {
                let (dst_elems, dst_basis) = &terms[s + 1][kt];
                let mut target = Echelon::tracking(self.kind, offsets(dst_elems.iter().map(|&u| self.value_dim(u)))[dst_elems.len()]);
                for (t, b) in dst_basis.iter().enumerate() {
                    target.insert_tagged(b.clone(), t);
                }
                // Columns of this block row: image of every source basis vector, by face.
                let mut block = vec![Vec::new(); dst_basis.len()];
                for j in 0..k.len() {
                    let face: Vec<usize> = k.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &p)| p).collect();
                    let ks = subsets[s].iter().position(|f| *f == face).expect("faces are subsets");
                    let (src_elems, src_basis) = &terms[s][ks];
                    let sign = Scalar::parity(j as i64, self.kind);
                    for (c, x) in src_basis.iter().enumerate() {
                        let y = target
                            .express(&self.project(src_elems, x, dst_elems))
                            .ok_or_else(|| Error::Validation("restricted family is not compatible".into()))?;
                        for (t, a) in y.iter() {
                            block[t].push((src_offs[ks] + c, &sign * a));
                        }
                    }
                }
                rows_by_target.extend(block.into_iter().map(SparseVec::from_entries));
            }
            diffs.push(Matrix::from_rows(self.kind, dims[s], rows_by_target)?);
        }
        ComplexRep::new(self.kind, 0, dims, diffs, true, true)
    }

    /// Restricts a family over `src` to the subset `dst`.
    fn project(&self, src: &[usize], x: &SparseVec, dst: &[usize]) -> SparseVec {
        let src_offs = offsets(src.iter().map(|&u| self.value_dim(u)));
        let dst_offs = offsets(dst.iter().map(|&u| self.value_dim(u)));
        let mut out = Vec::new();
        for (j, u) in dst.iter().enumerate() {
            let pos = src.iter().position(|w| w == u).expect("destination inside source");
            for i in 0..self.value_dim(*u) {
                if let Some(c) = x.get(src_offs[pos] + i) {
                    out.push((dst_offs[j] + i, c.clone()));
                }
            }
        }
        SparseVec::from_entries(out)
    }

    /// `(ε_* N)(v)`: families over all elements below `v`, compatible within every piece.
    pub fn glued_limit_dim(&self, v: usize) -> usize {
        let elems = self.below(&(0..self.ambient.len()).collect::<Vec<_>>(), v);
        self.limit(&elems, &(0..self.pieces.len()).collect::<Vec<_>>()).len()
    }

    pub fn report(&self) -> Result<DescentReport> {
        let n = self.ambient.len();
        let mut betti = vec![0; self.pieces.len()];
        let mut h0 = Vec::with_capacity(n);
        let mut limit = Vec::with_capacity(n);
        let mut d_squared_zero = true;
        for v in 0..n {
            let c = self.complex_at(v)?;
            d_squared_zero &= c.d_squared_is_zero();
            let b = c.betti_numbers(0, self.pieces.len() as i32 - 1)?;
            for (t, x) in betti.iter_mut().zip(&b) {
                *t += x;
            }
            h0.push(b[0]);
            limit.push(self.glued_limit_dim(v));
        }
        Ok(DescentReport { betti, h0_matches_limit: h0 == limit, h0, limit, d_squared_zero })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DescentReport {
    /// Total cohomology of `S(N)` summed over elements, per degree.
    pub betti: Vec<usize>,
    pub h0: Vec<usize>,
    /// `dim (ε_* N)(v)` from the inverse-limit formula.
    pub limit: Vec<usize>,
    pub h0_matches_limit: bool,
    pub d_squared_zero: bool,
}

/// For `N = ε^* M`: is `M(v) → H⁰(S(N)(v))` an isomorphism at every `v`, with
/// nothing in positive degrees? The map sends `x` to its restrictions.
pub fn pullback_is_resolved(m: &ModulePresheaf, pieces: Vec<Vec<usize>>) -> Result<bool> {
    let data = DescentData::pullback(m, pieces)?;
    let kind = m.kind();
    for v in 0..m.poset().len() {
        let c = data.complex_at(v)?;
        let betti = c.betti_numbers(0, data.pieces.len() as i32 - 1)?;
        if betti[0] != m.dim(v) || betti[1..].iter().any(|&b| b != 0) {
            return Ok(false);
        }
        // Image of M(v) in S⁰(v), piece by piece.
        let mut cols = vec![Vec::new(); m.dim(v)];
        let mut offset = 0;
        for p in 0..data.pieces.len() {
            let elems = data.below(&data.pieces[p], v);
            let basis = data.limit(&elems, &[p]);
            let mut ech = Echelon::tracking(kind, offsets(elems.iter().map(|&u| m.dim(u)))[elems.len()]);
            for (t, b) in basis.iter().enumerate() {
                ech.insert_tagged(b.clone(), t);
            }
            for (i, col) in cols.iter_mut().enumerate() {
                let family: Vec<SparseVec> = elems.iter().map(|&u| m.map(u, v).apply(&SparseVec::unit(i, kind))).collect();
                let mut entries = Vec::new();
                let mut shift = 0;
                for (u, f) in elems.iter().zip(&family) {
                    entries.extend(f.shift(shift).into_entries());
                    shift += m.dim(*u);
                }
                let Some(y) = ech.express(&SparseVec::from_entries(entries)) else {
                    return Ok(false);
                };
                col.extend(y.shift(offset).into_entries());
            }
            offset += basis.len();
        }
        let cols: Vec<SparseVec> = cols.into_iter().map(SparseVec::from_entries).collect();
        let phi = Matrix::from_columns(kind, c.dim(0), &cols)?;
        let lands_in_cocycles = c.differential(0).map_or(Ok(true), |d| d.mul(&phi).map(|x| x.is_zero()))?;
        if !lands_in_cocycles || phi.rank() != m.dim(v) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn k_subsets(m: usize, s: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, m: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            go(i + 1, m, s, cur, out);
            cur.pop();
        }
    }
    go(0, m, s, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sites::space::tests::pseudocircle;

    const Q: ScalarKind = ScalarKind::Rational;

    #[test]
    fn one_piece_is_the_presheaf_itself() {
        let p = Poset::chain(2);
        let m = ModulePresheaf::constant(Q, p.clone(), 2);
        let r = DescentData::pullback(&m, vec![vec![0, 1]]).unwrap().report().unwrap();
        assert_eq!(r.betti, vec![4]);
        assert!(r.h0_matches_limit);
    }

    #[test]
    fn constant_presheaf_on_two_piece_cover() {
        // Minimal basis U_a, U_b, U_c, U_d; pieces are the opens below U_c and below U_d.
        let basis = pseudocircle().minimal_basis();
        let k = ModulePresheaf::constant(Q, basis.poset.clone(), 1);
        let pieces = vec![vec![0, 1, 2], vec![0, 1, 3]];
        assert!(pullback_is_resolved(&k, pieces.clone()).unwrap());
        let r = DescentData::pullback(&k, pieces).unwrap().report().unwrap();
        assert_eq!(r.betti, vec![4, 0]);
        assert!(r.h0_matches_limit && r.d_squared_zero);
    }

    #[test]
    fn presheaf_on_one_piece_extended_by_zero() {
        let p = Poset::antichain(2);
        let n0 = ModulePresheaf::constant(Q, p.subposet(&[0]), 3);
        let n1 = ModulePresheaf::zero(Q, p.subposet(&[1]));
        let r = DescentData::new(&p, vec![vec![0], vec![1]], vec![n0, n1]).unwrap().report().unwrap();
        assert_eq!(r.h0, vec![3, 0]);
        assert!(r.h0_matches_limit);
    }

    #[test]
    fn incompatible_family_is_rejected() {
        let p = Poset::chain(2);
        let a = ModulePresheaf::constant(Q, p.clone(), 1);
        let b = ModulePresheaf::constant(Q, p.clone(), 2);
        assert!(DescentData::new(&p, vec![vec![0, 1], vec![0, 1]], vec![a, b]).is_err());
    }
}
