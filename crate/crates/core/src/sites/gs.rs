//! The Gerstenhaber–Schack bicomplex of a presheaf of algebras on a poset.
//!
//! `C^{p,q} = ⊕ Hom(O(U_p)^{⊗q}, O(U₀))` over strict chains `U₀ < … < U_p`,
//! where `O(U₀)` is an `O(U_p)`-bimodule through `r = r_{U₀U_p}`. The vertical
//! differential is the Hochschild one; the horizontal one is the alternating
//! sum of faces, the first applying `r_{U₀U₁}` to the output and the last
//! applying `r_{U_pU_{p+1}}` to every input. The total differential is
//! `d_v + (−1)^q δ_h`.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{ComplexRep, Matrix, SparseVec};
use crate::scalar::{Scalar, ScalarKind};
use crate::sites::presheaf::RingPresheaf;

struct Block {
    chain: Vec<usize>,
    q: usize,
    offset: usize,
    /// `dim O(U_p)`, the radix of input tuples.
    a: usize,
    /// `dim O(U₀)`.
    b: usize,
}

impl Block {
    fn size(&self) -> usize {
        self.a.pow(self.q as u32) * self.b
    }

    fn digits(&self, mut t: usize) -> Vec<usize> {
        let mut d = vec![0; self.q];
        for i in (0..self.q).rev() {
            d[i] = t % self.a;
            t /= self.a;
        }
        d
    }

    fn tuple(&self, digits: &[usize]) -> usize {
        digits.iter().fold(0, |t, &d| t * self.a + d)
    }
}

/// A contribution `c · L · f(src_block, src_tuple)` to one output tuple.
struct Term {
    block: usize,
    tuple: usize,
    coeff: Scalar,
    map: Matrix,
}

struct Layout {
    blocks: Vec<Block>,
    lookup: HashMap<(Vec<usize>, usize), usize>,
    /// Block indices per total degree.
    by_degree: Vec<Vec<usize>>,
    dims: Vec<usize>,
}

fn layout(o: &RingPresheaf, top: usize, cap: usize) -> Result<Layout> {
    let p = o.poset();
    let mut blocks = Vec::new();
    let mut lookup = HashMap::new();
    let mut by_degree = vec![Vec::new(); top + 1];
    let mut dims = vec![0usize; top + 1];
    for n in 0..=top {
        for len in 0..=n {
            for chain in p.strict_chains(len) {
                let q = n - len;
                let a = o.algebra(*chain.last().unwrap()).dim();
                let b = o.algebra(chain[0]).dim();
                let size = a.checked_pow(q as u32).and_then(|x| x.checked_mul(b)).unwrap_or(usize::MAX);
                if size > cap || dims[n] + size > cap {
                    return Err(Error::ResourceCap { what: format!("GS bicomplex cochains of total degree {n}"), dim: dims[n].saturating_add(size), cap });
                }
                let block = Block { chain: chain.clone(), q, offset: dims[n], a, b };
                dims[n] += block.size();
                lookup.insert((chain, q), blocks.len());
                by_degree[n].push(blocks.len());
                blocks.push(block);
            }
        }
    }
    Ok(Layout { blocks, lookup, by_degree, dims })
}

fn mult_matrix(kind: ScalarKind, dim: usize, f: impl Fn(&SparseVec) -> SparseVec) -> Result<Matrix> {
    let cols: Vec<SparseVec> = (0..dim).map(|k| f(&SparseVec::unit(k, kind))).collect();
    Matrix::from_columns(kind, dim, &cols)
}

/// Every contribution to `(Df)` at output tuple `t` of target block `tb`.
fn terms(o: &RingPresheaf, lay: &Layout, tb: &Block, t: usize) -> Result<Vec<Term>> {
    let kind = o.kind();
    let x = tb.digits(t);
    let (u0, up) = (tb.chain[0], *tb.chain.last().unwrap());
    let p = tb.chain.len() - 1;
    let (alg_a, alg_b) = (o.algebra(up), o.algebra(u0));
    let mut out = Vec::new();
    let id_b = Matrix::identity(kind, tb.b);

    if tb.q >= 1 {
        let q = tb.q - 1;
        let src = lay.lookup[&(tb.chain.clone(), q)];
        let sb = &lay.blocks[src];
        let r = o.restriction(u0, up);
        // r(x₁) · f(x₂…)
        let left = r.apply(&SparseVec::unit(x[0], kind));
        out.push(Term { block: src, tuple: sb.tuple(&x[1..]), coeff: kind.one(), map: mult_matrix(kind, tb.b, |e| alg_b.mul(&left, e))? });
        for i in 0..q {
            let mut digits: Vec<usize> = [&x[..i], &[0], &x[i + 2..]].concat();
            for (z, c) in alg_a.product(x[i], x[i + 1]).iter() {
                digits[i] = z;
                out.push(Term { block: src, tuple: sb.tuple(&digits), coeff: &Scalar::parity(i as i64 + 1, kind) * c, map: id_b.clone() });
            }
        }
        // (−1)^{q+1} f(x₁…x_q) · r(x_{q+1})
        let right = r.apply(&SparseVec::unit(x[q], kind));
        out.push(Term {
            block: src,
            tuple: sb.tuple(&x[..q]),
            coeff: Scalar::parity(q as i64 + 1, kind),
            map: mult_matrix(kind, tb.b, |e| alg_b.mul(e, &right))?,
        });
    }

    if p >= 1 {
        let q = tb.q;
        let sign = Scalar::parity(q as i64, kind);
        for i in 0..=p {
            let face: Vec<usize> = tb.chain.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &c)| c).collect();
            let src = lay.lookup[&(face.clone(), q)];
            let sb = &lay.blocks[src];
            let c = &sign * &Scalar::parity(i as i64, kind);
            if i == 0 {
                out.push(Term { block: src, tuple: sb.tuple(&x), coeff: c, map: o.restriction(u0, tb.chain[1]).clone() });
            } else if i < p {
                out.push(Term { block: src, tuple: sb.tuple(&x), coeff: c, map: id_b.clone() });
            } else {
                // Last face: restrict every input along U_{p−1} < U_p.
                let r = o.restriction(tb.chain[p - 1], up);
                let images: Vec<SparseVec> = x.iter().map(|&d| r.apply(&SparseVec::unit(d, kind))).collect();
                let mut partial: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), kind.one())];
                for img in &images {
                    partial = partial
                        .into_iter()
                        .flat_map(|(ds, s)| img.iter().map(move |(z, y)| ([ds.as_slice(), &[z]].concat(), &s * y)).collect::<Vec<_>>())
                        .collect();
                }
                for (ds, s) in partial {
                    out.push(Term { block: src, tuple: sb.tuple(&ds), coeff: &c * &s, map: id_b.clone() });
                }
            }
        }
    }
    Ok(out)
}

/// The total complex in degrees `0..=n_max + 1`; cohomology is exact through `n_max`.
pub fn gs_bicomplex(o: &RingPresheaf, n_max: usize, cap: usize) -> Result<ComplexRep> {
    o.validate()?;
    let kind = o.kind();
    let top = n_max + 1;
    let lay = layout(o, top, cap)?;
    let mut diffs = Vec::with_capacity(top);
    for n in 0..top {
        let rows: Vec<Vec<SparseVec>> = lay.by_degree[n + 1]
            .par_iter()
            .map(|&bi| {
                let tb = &lay.blocks[bi];
                let mut rows = Vec::with_capacity(tb.size());
                for t in 0..tb.a.pow(tb.q as u32) {
                    let ts = terms(o, &lay, tb, t)?;
                    for k in 0..tb.b {
                        let mut entries = Vec::new();
                        for term in &ts {
                            let sb = &lay.blocks[term.block];
                            let base = sb.offset + term.tuple * sb.b;
                            for (j, y) in term.map.row(k).iter() {
                                entries.push((base + j, &term.coeff * y));
                            }
                        }
                        rows.push(SparseVec::from_entries(entries));
                    }
                }
                Ok(rows)
            })
            .collect::<Result<_>>()?;
        diffs.push(Matrix::from_rows(kind, lay.dims[n], rows.into_iter().flatten().collect())?);
    }
    ComplexRep::new(kind, 0, lay.dims, diffs, true, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hochschild::{HochschildComplex, HochschildSpec, DEFAULT_DIM_CAP};
    use crate::lincat::{from_algebra, incidence_category, Algebra};
    use crate::sites::Poset;
    use std::sync::Arc;

    const Q: ScalarKind = ScalarKind::Rational;

    fn gs_betti(o: &RingPresheaf, n: usize) -> Vec<usize> {
        gs_bicomplex(o, n, DEFAULT_DIM_CAP).unwrap().betti_numbers(0, n as i32).unwrap()
    }

    #[test]
    fn single_point_is_hochschild_of_the_algebra() {
        let a = Algebra::dual_numbers(Q);
        let o = RingPresheaf::constant(Poset::chain(1), a.clone());
        let h = HochschildComplex::build(&HochschildSpec::diagonal(Arc::new(from_algebra(&a).unwrap()), 3)).unwrap();
        assert_eq!(gs_betti(&o, 3), h.betti().unwrap());
    }

    #[test]
    fn two_chain_matches_incidence_category() {
        let k = RingPresheaf::constant(Poset::chain(2), Algebra::ground(Q));
        assert_eq!(gs_betti(&k, 2), vec![1, 0, 0]);
        let aug = Matrix::from_i64(Q, &[&[1, 0]]);
        let o = RingPresheaf::new(Poset::chain(2), vec![Algebra::ground(Q), Algebra::dual_numbers(Q)], vec![(0, 1, aug)]).unwrap();
        let h = HochschildComplex::build(&HochschildSpec::diagonal(Arc::new(incidence_category(&o).unwrap()), 3)).unwrap();
        assert_eq!(gs_betti(&o, 3), h.betti().unwrap());
    }
}
