use std::collections::HashMap;

use crate::bimodule::modhom::module_hom;
use crate::bimodule::Bimodule;
use crate::error::{Error, Result};
use crate::linalg::{ComplexRep, Matrix, SparseVec};
use crate::lincat::{BasisElem, FinLinCat, GradedSpace};
use crate::scalar::Scalar;

/// Default bound on the total dimension of a bar resolution.
pub const DEFAULT_DIM_CAP: usize = 20_000;

/// One basis tensor `m ⊗ f_p ⊗ … ⊗ f_1 ⊗ f₀` over a chain `A₀ … A_p`, where
/// `m ∈ x(A_p)`, `f_i ∈ 𝔟(A_{i−1}, A_i)` and `f₀ ∈ 𝔟(b, A₀)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Tensor {
    chain: Vec<usize>,
    m: usize,
    /// `fs[i − 1] = f_i` for `i = 1..=p`.
    fs: Vec<usize>,
    f0: usize,
}

impl Tensor {
    fn p(&self) -> usize {
        self.chain.len() - 1
    }
}

/// The bar resolution of a right module, truncated after `length` bar terms,
/// as a single DG right module, with its augmentation to `x`.
#[derive(Clone, Debug)]
pub struct BarResolution {
    pub module: Bimodule,
    pub length: usize,
    /// Per object `b`: the augmentation `B(b) → x(b)` (nonzero only on bar degree 0).
    pub augmentation: Vec<Matrix>,
    /// Bar degree `p` of each basis element, per object.
    bar_degree: Vec<Vec<usize>>,
    x_ungraded: bool,
}

fn enumerate(cat: &FinLinCat, x: &Bimodule, b: usize, length: usize) -> Vec<Tensor> {
    let n = cat.num_objects();
    let mut out = Vec::new();
    // Grow chains from the A₀ end: partial = (chain A₀..A_i, f₁..f_i).
    for a0 in 0..n {
        let df0 = cat.hom_dim(b, a0);
        if df0 == 0 {
            continue;
        }
        let mut frontier: Vec<(Vec<usize>, Vec<usize>)> = vec![(vec![a0], Vec::new())];
        for p in 0..=length {
            for (chain, fs) in &frontier {
                let top = *chain.last().unwrap();
                for m in 0..x.dim(top, 0) {
                    for f0 in 0..df0 {
                        out.push(Tensor { chain: chain.clone(), m, fs: fs.clone(), f0 });
                    }
                }
            }
            if p == length {
                break;
            }
            let mut next = Vec::new();
            for (chain, fs) in &frontier {
                let top = *chain.last().unwrap();
                for a in 0..n {
                    for f in 0..cat.hom_dim(top, a) {
                        let mut c = chain.clone();
                        c.push(a);
                        let mut g = fs.clone();
                        g.push(f);
                        next.push((c, g));
                    }
                }
            }
            frontier = next;
        }
    }
    out.sort_by(|s, t| (s.p(), &s.chain, s.m, &s.fs, s.f0).cmp(&(t.p(), &t.chain, t.m, &t.fs, t.f0)));
    out
}

/// Number of basis tensors over all objects, computed without enumerating them.
fn predicted_dim(cat: &FinLinCat, x: &Bimodule, length: usize) -> usize {
    let n = cat.num_objects();
    // t[a] = Σ over chains starting at a of dim x(top) × hom dims, for the current p.
    let mut t: Vec<usize> = (0..n).map(|a| x.dim(a, 0)).collect();
    let mut sum: Vec<usize> = t.clone();
    for _ in 0..length {
        t = (0..n).map(|a| (0..n).map(|a1| cat.hom_dim(a, a1).saturating_mul(t[a1])).fold(0usize, |s, v| s.saturating_add(v))).collect();
        for a in 0..n {
            sum[a] = sum[a].saturating_add(t[a]);
        }
    }
    (0..n).map(|b| (0..n).map(|a0| cat.hom_dim(b, a0).saturating_mul(sum[a0])).fold(0usize, |s, v| s.saturating_add(v))).fold(0, |s, v| s.saturating_add(v))
}

/// Bar resolution `⊕_p x(A_p) ⊗ 𝔟(A_{p−1},A_p) ⊗ … ⊗ 𝔟(A₀,A₁) ⊗ 𝔟(−,A₀)` for
/// `p ≤ length`, totalized with differential `∂ + (−1)^p d_x`.
pub fn bar_resolution(x: &Bimodule, length: usize, cap: usize) -> Result<BarResolution> {
    if x.na() != 1 || x.left().total_dim() != 1 {
        return Err(Error::Validation("bar resolution needs a one-sided (right) module".into()));
    }
    let cat = x.right().clone();
    if !cat.is_ordinary() {
        return Err(Error::Unsupported("bar resolution over a graded or DG category".into()));
    }
    let dim = predicted_dim(&cat, x, length);
    if dim > cap {
        return Err(Error::ResourceCap { what: format!("bar resolution of length {length}"), dim, cap });
    }
    let kind = x.kind();
    let nb = cat.num_objects();
    let tensors: Vec<Vec<Tensor>> = (0..nb).map(|b| enumerate(&cat, x, b, length)).collect();
    let index: Vec<HashMap<&Tensor, usize>> =
        tensors.iter().map(|ts| ts.iter().enumerate().map(|(i, t)| (t, i)).collect()).collect();

    let label = |b: usize, t: &Tensor| {
        let mut parts = vec![x.space(*t.chain.last().unwrap(), 0).basis[t.m].label.clone()];
        for i in (1..=t.p()).rev() {
            parts.push(cat.hom(t.chain[i - 1], t.chain[i]).basis[t.fs[i - 1]].label.clone());
        }
        parts.push(cat.hom(b, t.chain[0]).basis[t.f0].label.clone());
        parts.join("|")
    };

    let mut spaces = Vec::with_capacity(nb);
    for b in 0..nb {
        let ts = &tensors[b];
        let lookup = |t: &Tensor| index[b][t];
        let mut basis = Vec::with_capacity(ts.len());
        let mut differential = Vec::with_capacity(ts.len());
        for t in ts {
            let p = t.p();
            let top = t.chain[p];
            let deg_m = x.space(top, 0).degree(t.m);
            basis.push(BasisElem::new(label(b, t), deg_m - p as i32));
            let mut terms: Vec<(usize, Scalar)> = Vec::new();
            if p > 0 {
                // Face 0: m · f_p.
                for (m2, c) in x.right_basis(t.chain[p - 1], top, 0, t.m, t.fs[p - 1]).iter() {
                    let s = Tensor { chain: t.chain[..p].to_vec(), m: m2, fs: t.fs[..p - 1].to_vec(), f0: t.f0 };
                    terms.push((lookup(&s), c.clone()));
                }
                // Inner faces: f_{i+1} ∘ f_i, dropping A_i; sign (−1)^{p−i}.
                for i in 1..p {
                    let sign = Scalar::parity((p - i) as i64, kind);
                    let v = cat.compose_basis(t.chain[i - 1], t.chain[i], t.chain[i + 1], t.fs[i], t.fs[i - 1]);
                    for (g, c) in v.iter() {
                        let mut chain = t.chain.clone();
                        chain.remove(i);
                        let mut fs = t.fs.clone();
                        fs.remove(i);
                        fs[i - 1] = g;
                        terms.push((lookup(&Tensor { chain, m: t.m, fs, f0: t.f0 }), &sign * c));
                    }
                }
                // Last face: f₁ ∘ f₀, dropping A₀; sign (−1)^p.
                let sign = Scalar::parity(p as i64, kind);
                for (g, c) in cat.compose_basis(b, t.chain[0], t.chain[1], t.fs[0], t.f0).iter() {
                    let s = Tensor { chain: t.chain[1..].to_vec(), m: t.m, fs: t.fs[1..].to_vec(), f0: g };
                    terms.push((lookup(&s), &sign * c));
                }
            }
            let sign = Scalar::parity(p as i64, kind);
            for (m2, c) in x.space(top, 0).differential[t.m].iter() {
                let s = Tensor { m: m2, ..t.clone() };
                terms.push((lookup(&s), &sign * c));
            }
            differential.push(SparseVec::from_entries(terms));
        }
        spaces.push(GradedSpace::new(basis, differential));
    }

    let ground = Bimodule::ground_category(kind);
    let left_act = (0..nb).map(|b| (0..tensors[b].len()).map(|m| SparseVec::unit(m, kind)).collect()).collect();
    // Right action on f₀: element over b′ times g ∈ 𝔟(b, b′) lands over b.
    let mut right_act = Vec::with_capacity(nb * nb);
    for b in 0..nb {
        for b2 in 0..nb {
            let dg = cat.hom_dim(b, b2);
            let mut table = Vec::with_capacity(tensors[b2].len() * dg);
            for t in &tensors[b2] {
                for g in 0..dg {
                    let v = cat.compose_basis(b, b2, t.chain[0], t.f0, g);
                    table.push(SparseVec::from_entries(
                        v.iter().map(|(f0, c)| (index[b][&Tensor { f0, ..t.clone() }], c.clone())).collect(),
                    ));
                }
            }
            right_act.push(table);
        }
    }
    let module = Bimodule::raw(ground, cat.clone(), spaces, left_act, right_act);

    let mut augmentation = Vec::with_capacity(nb);
    for b in 0..nb {
        let cols: Vec<SparseVec> = tensors[b]
            .iter()
            .map(|t| if t.p() == 0 { x.right_basis(b, t.chain[0], 0, t.m, t.f0).clone() } else { SparseVec::new() })
            .collect();
        augmentation.push(Matrix::from_columns(kind, x.dim(b, 0), &cols)?);
    }
    let bar_degree = tensors.iter().map(|ts| ts.iter().map(|t| t.p()).collect()).collect();
    let x_ungraded = x.spaces().iter().all(|s| s.is_ungraded());
    Ok(BarResolution { module, length, augmentation, bar_degree, x_ungraded })
}

impl BarResolution {
    /// The augmented complex `B_L(b) → … → B_0(b) → x(b)` in degrees `−L … 1`
    /// (only for ungraded `x`, where bar degree and total degree agree).
    pub fn augmented_complex(&self, b: usize) -> Result<ComplexRep> {
        if !self.x_ungraded {
            return Err(Error::Unsupported("augmented complex of a graded module".into()));
        }
        let kind = self.module.kind();
        let l = self.length;
        let space = self.module.space(b, 0);
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); l + 1];
        for (i, &p) in self.bar_degree[b].iter().enumerate() {
            blocks[p].push(i);
        }
        let mut pos = vec![0usize; space.dim()];
        for block in &blocks {
            for (k, &i) in block.iter().enumerate() {
                pos[i] = k;
            }
        }
        // Degree −p holds B_p; degree 1 holds x(b).
        let mut dims: Vec<usize> = (0..=l).rev().map(|p| blocks[p].len()).collect();
        dims.push(self.augmentation[b].rows());
        let mut diffs = Vec::with_capacity(l + 1);
        for p in (1..=l).rev() {
            let cols: Vec<SparseVec> = blocks[p].iter().map(|&i| space.differential[i].remap(|j| Some(pos[j]))).collect();
            diffs.push(Matrix::from_columns(kind, blocks[p - 1].len(), &cols)?);
        }
        diffs.push(self.augmentation[b].select(&(0..self.augmentation[b].rows()).collect::<Vec<_>>(), &blocks[0]));
        ComplexRep::new(kind, -(l as i32), dims, diffs, false, true)
    }
}

/// `Extⁿ(x, y)` for `0 ≤ n ≤ n_max`, from the bar resolution of length `n_max + 1`.
pub fn ext_window(x: &Bimodule, y: &Bimodule, n_max: usize, cap: usize) -> Result<Vec<usize>> {
    let bar = bar_resolution(x, n_max + 1, cap)?;
    let h = module_hom(&bar.module, y)?;
    (0..=n_max as i32)
        .map(|n| if h.complex.in_window(n) { h.complex.cohomology(n).map(|c| c.betti) } else { Ok(0) })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lincat::{from_algebra, incidence_category, Algebra};
    use crate::scalar::ScalarKind;
    use crate::sites::{Poset, RingPresheaf};
    use std::sync::Arc;

    const Q: ScalarKind = ScalarKind::Rational;

    fn simple_dual() -> (Arc<FinLinCat>, Bimodule) {
        let c = Arc::new(from_algebra(&Algebra::dual_numbers(Q)).unwrap());
        // k with e acting by zero: the quotient of the representable by e.
        let k = Bimodule::ground_category(Q);
        let x = Bimodule::build(
            k,
            c.clone(),
            vec![GradedSpace::plain(["s".to_string()])],
            |_, _, _, _, m| SparseVec::unit(m, Q),
            |_, _, _, _, f| if f == 0 { SparseVec::unit(0, Q) } else { SparseVec::new() },
        )
        .unwrap();
        (c, x)
    }

    #[test]
    fn simple_module_over_dual_numbers() {
        let (_, x) = simple_dual();
        assert!(x.validate().is_ok());
        let bar = bar_resolution(&x, 3, DEFAULT_DIM_CAP).unwrap();
        assert!(bar.module.validate().is_ok());
        let aug = bar.augmented_complex(0).unwrap();
        // Free ranks 1, 2, 4, 8 over the 2-dimensional algebra.
        assert_eq!(aug.dims(), &[16, 8, 4, 2, 1]);
        for n in -2..=1 {
            assert_eq!(aug.cohomology(n).unwrap().betti, 0, "degree {n}");
        }
        assert_eq!(ext_window(&x, &x, 3, DEFAULT_DIM_CAP).unwrap(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn representables_of_a_poset_are_projective() {
        let c = Arc::new(incidence_category(&RingPresheaf::constant(Poset::chain(3), Algebra::ground(Q))).unwrap());
        for u in 0..3 {
            let pu = Bimodule::representable(c.clone(), u);
            let aug = bar_resolution(&pu, 2, DEFAULT_DIM_CAP).unwrap().augmented_complex(0).unwrap();
            for n in -1..=1 {
                assert_eq!(aug.cohomology(n).unwrap().betti, 0);
            }
            for v in 0..3 {
                let pv = Bimodule::representable(c.clone(), v);
                let ext = ext_window(&pu, &pv, 2, DEFAULT_DIM_CAP).unwrap();
                assert_eq!(ext, vec![usize::from(u <= v), 0, 0], "Ext(P{u}, P{v})");
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let (_, x) = simple_dual();
        let err = bar_resolution(&x, 10, 100).unwrap_err();
        assert!(matches!(err, Error::ResourceCap { .. }));
    }
}
