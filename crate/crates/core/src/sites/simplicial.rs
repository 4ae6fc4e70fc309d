use std::collections::HashMap;

use crate::error::Result;
use crate::linalg::{ComplexRep, Matrix, SparseVec};
use crate::scalar::{Scalar, ScalarKind};
use crate::sites::module::{offsets, ModulePresheaf};
use crate::sites::poset::Poset;

/// Simplicial cochains of the order complex (strict chains) with constant
/// coefficients, in degrees `0..=top`.
pub fn order_complex(p: &Poset, kind: ScalarKind, top: usize) -> Result<ComplexRep> {
    let simplices: Vec<Vec<Vec<usize>>> = (0..=top + 1).map(|k| p.strict_chains(k)).collect();
    let mut diffs = Vec::with_capacity(top);
    for k in 0..top {
        let index: HashMap<&[usize], usize> = simplices[k].iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
        let rows = simplices[k + 1]
            .iter()
            .map(|s| {
                let entries = (0..s.len())
                    .map(|i| {
                        let face: Vec<usize> = s.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
                        (index[face.as_slice()], Scalar::parity(i as i64, kind))
                    })
                    .collect();
                SparseVec::from_entries(entries)
            })
            .collect();
        diffs.push(Matrix::from_rows(kind, simplices[k].len(), rows)?);
    }
    let dims = simplices[..=top].iter().map(Vec::len).collect();
    ComplexRep::new(kind, 0, dims, diffs, true, simplices[top + 1].is_empty())
}

/// Rational cohomology of the order complex in degrees `0..=n_max`.
pub fn order_complex_cohomology(p: &Poset, n_max: usize) -> Result<Vec<usize>> {
    order_complex(p, ScalarKind::Rational, n_max + 1)?.betti_numbers(0, n_max as i32)
}

/// The cosimplicial complex computing the limit of a presheaf: degree `n` is
/// `⊕ F(u₀)` over all chains `u₀ ≤ u₁ ≤ … ≤ u_n`, with
/// `(df)(u₀…u_{n+1}) = F(u₀ ≤ u₁) f(u₁…) + Σ_{i≥1} (−1)^i f(…û_i…)`.
/// Built in degrees `0..=top`.
pub fn standard_complex(f: &ModulePresheaf, top: usize) -> Result<ComplexRep> {
    let kind = f.kind();
    let p = f.poset();
    let chains: Vec<Vec<Vec<usize>>> = (0..=top).map(|k| p.weak_chains(k)).collect();
    let offs: Vec<Vec<usize>> = chains.iter().map(|cs| offsets(cs.iter().map(|c| f.dim(c[0])))).collect();
    let mut diffs = Vec::with_capacity(top);
    for k in 0..top {
        let index: HashMap<&[usize], usize> = chains[k].iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
        let mut rows = Vec::new();
        for c in &chains[k + 1] {
            for r in 0..f.dim(c[0]) {
                let mut entries = Vec::new();
                // First face, transported along u₀ ≤ u₁.
                let src = index[&c[1..]];
                for (j, x) in f.map(c[0], c[1]).row(r).iter() {
                    entries.push((offs[k][src] + j, x.clone()));
                }
                for i in 1..c.len() {
                    let face: Vec<usize> = c.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
                    entries.push((offs[k][index[face.as_slice()]] + r, Scalar::parity(i as i64, kind)));
                }
                rows.push(SparseVec::from_entries(entries));
            }
        }
        diffs.push(Matrix::from_rows(kind, offs[k][chains[k].len()], rows)?);
    }
    let dims = offs.iter().zip(&chains).map(|(o, c)| o[c.len()]).collect();
    ComplexRep::new(kind, 0, dims, diffs, true, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sites::space::tests::pseudocircle;

    const Q: ScalarKind = ScalarKind::Rational;

    #[test]
    fn order_complex_examples() {
        assert_eq!(order_complex_cohomology(&Poset::chain(4), 3).unwrap(), vec![1, 0, 0, 0]);
        assert_eq!(order_complex_cohomology(&Poset::antichain(3), 2).unwrap(), vec![3, 0, 0]);
        let basis = pseudocircle().minimal_basis();
        assert_eq!(order_complex_cohomology(&basis.poset, 2).unwrap(), vec![1, 1, 0]);
    }

    #[test]
    fn standard_complex_examples() {
        let basis = pseudocircle().minimal_basis();
        let k = ModulePresheaf::constant(Q, basis.poset.clone(), 1);
        assert_eq!(standard_complex(&k, 3).unwrap().betti_numbers(0, 2).unwrap(), vec![1, 1, 0]);
        let anti = ModulePresheaf::constant(Q, Poset::antichain(3), 1);
        assert_eq!(standard_complex(&anti, 2).unwrap().betti_numbers(0, 1).unwrap(), vec![3, 0]);
        // A greatest element makes the limit evaluation there.
        let gens = vec![(0, 1, Matrix::from_i64(Q, &[&[1, 0]])), (1, 2, Matrix::from_i64(Q, &[&[1, 0], &[0, 1]]))];
        let f = ModulePresheaf::new(Q, Poset::chain(3), vec![1, 2, 2], gens).unwrap();
        assert_eq!(standard_complex(&f, 3).unwrap().betti_numbers(0, 2).unwrap(), vec![2, 0, 0]);
    }
}
