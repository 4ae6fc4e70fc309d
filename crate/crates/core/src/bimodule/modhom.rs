use crate::bimodule::Bimodule;
use crate::error::{check_kind, Error, Result};
use crate::linalg::{ComplexRep, Echelon, Matrix, SparseVec};
use crate::scalar::Scalar;

/// The complex `Hom_𝔟(x, y)` of module maps between right 𝔟-modules, with
/// differential `h ↦ d∘h − (−1)ⁿ h∘d`.
///
/// A degree-`n` map is stored in "coordinates": one coefficient per triple
/// `(object, basis element of x, basis element of y)` with matching degrees.
#[derive(Clone, Debug)]
pub struct ModuleHom {
    pub complex: ComplexRep,
    /// Per degree (from `complex.lo()`), a basis of module maps in coordinates.
    pub bases: Vec<Vec<SparseVec>>,
    layout: Layout,
}

/// Coordinates are grouped in one block per object `b`, holding
/// `dim x(b) × dim y(b)` entries in row-major `(i, j)` order.
#[derive(Clone, Debug)]
struct Layout {
    offsets: Vec<usize>,
    ends: Vec<usize>,
    y_dims: Vec<usize>,
}

impl Layout {
    fn new(x_dims: &[usize], y_dims: Vec<usize>) -> Self {
        let mut offsets = Vec::with_capacity(x_dims.len());
        let mut ends = Vec::with_capacity(x_dims.len());
        let mut total = 0;
        for (b, &xd) in x_dims.iter().enumerate() {
            offsets.push(total);
            total += xd * y_dims[b];
            ends.push(total);
        }
        Layout { offsets, ends, y_dims }
    }

    fn total(&self) -> usize {
        self.ends.last().copied().unwrap_or(0)
    }

    fn index(&self, b: usize, i: usize, j: usize) -> usize {
        self.offsets[b] + i * self.y_dims[b] + j
    }

    fn decode(&self, k: usize) -> (usize, usize, usize) {
        let b = self.ends.partition_point(|&e| e <= k);
        let r = k - self.offsets[b];
        (b, r / self.y_dims[b], r % self.y_dims[b])
    }
}

impl ModuleHom {
    pub fn lo(&self) -> i32 {
        self.complex.lo()
    }

    pub fn basis(&self, n: i32) -> &[SparseVec] {
        if !self.complex.in_window(n) {
            return &[];
        }
        &self.bases[(n - self.complex.lo()) as usize]
    }

    /// Expresses a degree-`n` module map (in coordinates) in the basis of
    /// degree-`n` maps used by the complex.
    pub fn in_basis(&self, n: i32, h: &SparseVec) -> Option<SparseVec> {
        let basis = self.basis(n);
        let mut ech = Echelon::tracking(self.complex.kind(), self.layout.total());
        for (k, v) in basis.iter().enumerate() {
            ech.insert_tagged(v.clone(), k);
        }
        ech.express(h)
    }

    /// Evaluates a map (given in coordinates) on a vector of `x(b)`.
    pub fn evaluate(&self, h: &SparseVec, b: usize, v: &SparseVec) -> SparseVec {
        let mut out = Vec::new();
        for (k, c) in h.iter() {
            let (b2, i, j) = self.layout.decode(k);
            if b2 == b {
                if let Some(x) = v.get(i) {
                    out.push((j, x * c));
                }
            }
        }
        SparseVec::from_entries(out)
    }

    /// Coordinates of the module map given by its matrices `x(b) → y(b)` (columns = images).
    pub fn coordinates(&self, maps: &[Matrix]) -> SparseVec {
        let mut out = Vec::new();
        for (b, m) in maps.iter().enumerate() {
            for (j, row) in m.row_vecs().iter().enumerate() {
                for (i, c) in row.iter() {
                    out.push((self.layout.index(b, i, j), c.clone()));
                }
            }
        }
        SparseVec::from_entries(out)
    }
}

fn check_one_sided(x: &Bimodule) -> Result<()> {
    if x.na() != 1 || x.left().total_dim() != 1 {
        return Err(Error::Validation("expected a one-sided (right) module".into()));
    }
    Ok(())
}

/// Degree range of a module: min and max basis degree over all objects.
fn degree_range(x: &Bimodule) -> Option<(i32, i32)> {
    let ranges: Vec<(i32, i32)> = x.spaces().iter().filter_map(|s| s.degree_range()).collect();
    let lo = ranges.iter().map(|r| r.0).min()?;
    let hi = ranges.iter().map(|r| r.1).max()?;
    Some((lo, hi))
}

/// Module maps `x → y` of every degree with the hom differential.
pub fn module_hom(x: &Bimodule, y: &Bimodule) -> Result<ModuleHom> {
    check_one_sided(x)?;
    check_one_sided(y)?;
    check_kind(x.kind(), y.kind())?;
    if !(std::sync::Arc::ptr_eq(x.right(), y.right()) || **x.right() == **y.right()) {
        return Err(Error::Validation("modules live over different categories".into()));
    }
    let kind = x.kind();
    let cat = x.right().clone();
    let nb = x.nb();
    let x_dims: Vec<usize> = (0..nb).map(|b| x.dim(b, 0)).collect();
    let layout = Layout::new(&x_dims, (0..nb).map(|b| y.dim(b, 0)).collect());
    let total = layout.total();
    let (lo, hi) = match (degree_range(x), degree_range(y)) {
        (Some((xl, xh)), Some((yl, yh))) => (yl - xh, yh - xl),
        _ => (0, 0),
    };
    let xs = |b: usize| x.space(b, 0);
    let ys = |b: usize| y.space(b, 0);

    // Kernel of the equivariance constraints, degree by degree.
    let mut bases: Vec<Vec<SparseVec>> = Vec::new();
    for n in lo..=hi {
        let mut unknowns = Vec::new();
        let mut pos = std::collections::HashMap::new();
        for b in 0..nb {
            for i in 0..xs(b).dim() {
                for j in 0..ys(b).dim() {
                    if ys(b).degree(j) == xs(b).degree(i) + n {
                        pos.insert(layout.index(b, i, j), unknowns.len());
                        unknowns.push(layout.index(b, i, j));
                    }
                }
            }
        }
        // h_b(m · f) − h_{b′}(m) · f = 0 for m ∈ x(b′), f ∈ 𝔟(b, b′), in coordinates of y(b).
        let mut ech = Echelon::new(kind, unknowns.len());
        for b in 0..nb {
            for b2 in 0..nb {
                let df = cat.hom_dim(b, b2);
                if df == 0 {
                    continue;
                }
                for m in 0..xs(b2).dim() {
                    for f in 0..df {
                        let mf = x.right_basis(b, b2, 0, m, f);
                        // One equation per output coordinate j of y(b).
                        let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); ys(b).dim()];
                        for (i, c) in mf.iter() {
                            for (j, row) in rows.iter_mut().enumerate() {
                                if let Some(&u) = pos.get(&layout.index(b, i, j)) {
                                    row.push((u, c.clone()));
                                }
                            }
                        }
                        for j2 in 0..ys(b2).dim() {
                            let Some(&u) = pos.get(&layout.index(b2, m, j2)) else { continue };
                            for (j, c) in y.right_basis(b, b2, 0, j2, f).iter() {
                                rows[j].push((u, -c));
                            }
                        }
                        for row in rows {
                            if !row.is_empty() {
                                ech.insert(SparseVec::from_entries(row));
                            }
                        }
                    }
                }
            }
        }
        let basis = ech.kernel_basis().into_iter().map(|v| v.remap(|k| Some(unknowns[k]))).collect();
        bases.push(basis);
    }

    // Differential D(h) = d_y ∘ h − (−1)ⁿ h ∘ d_x, expressed in the next degree's basis.
    // (h∘d_x)(e_{i′}) picks up h(e_i) whenever e_i occurs in d_x(e_{i′}).
    let dx_in: Vec<Vec<Vec<(usize, Scalar)>>> = (0..nb)
        .map(|b| {
            let mut inc = vec![Vec::new(); xs(b).dim()];
            for (i2, d) in xs(b).differential.iter().enumerate() {
                for (i, e) in d.iter() {
                    inc[i].push((i2, e.clone()));
                }
            }
            inc
        })
        .collect();
    let apply_d = |h: &SparseVec, n: i32| -> SparseVec {
        let mut out: Vec<(usize, Scalar)> = Vec::new();
        let sign = -Scalar::parity(n as i64, kind);
        for (k, c) in h.iter() {
            let (b, i, j) = layout.decode(k);
            for (j2, e) in ys(b).differential[j].iter() {
                out.push((layout.index(b, i, j2), c * e));
            }
            for (i2, e) in &dx_in[b][i] {
                out.push((layout.index(b, *i2, j), &(&sign * c) * e));
            }
        }
        SparseVec::from_entries(out)
    };
    let dims: Vec<usize> = bases.iter().map(|b| b.len()).collect();
    let mut diffs = Vec::new();
    for (t, n) in (lo..hi).enumerate() {
        let mut target = Echelon::tracking(kind, total);
        for (k, v) in bases[t + 1].iter().enumerate() {
            target.insert_tagged(v.clone(), k);
        }
        let mut cols = Vec::with_capacity(bases[t].len());
        for h in &bases[t] {
            let dh = apply_d(h, n);
            cols.push(target.express(&dh).ok_or_else(|| Error::Validation("hom differential leaves the module maps".into()))?);
        }
        diffs.push(Matrix::from_columns(kind, dims[t + 1], &cols)?);
    }
    let complex = ComplexRep::new(kind, lo, dims, diffs, true, true)?;
    Ok(ModuleHom { complex, bases, layout })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lincat::{incidence_category, Algebra, FinLinCat};
    use crate::scalar::ScalarKind;
    use crate::sites::{Poset, RingPresheaf};
    use std::sync::Arc;

    const Q: ScalarKind = ScalarKind::Rational;

    fn a2() -> Arc<FinLinCat> {
        Arc::new(incidence_category(&RingPresheaf::constant(Poset::chain(2), Algebra::ground(Q))).unwrap())
    }

    #[test]
    fn yoneda_dimensions() {
        let c = a2();
        let y = Bimodule::diagonal(c.clone()).column(1);
        for b in 0..2 {
            let h = module_hom(&Bimodule::representable(c.clone(), b), &y).unwrap();
            assert_eq!(h.basis(0).len(), y.dim(b, 0));
        }
    }

    #[test]
    fn identity_is_a_cocycle() {
        let c = a2();
        let x = Bimodule::representable(c.clone(), 1);
        let h = module_hom(&x, &x).unwrap();
        let id = h.coordinates(&[Matrix::identity(Q, x.dim(0, 0)), Matrix::identity(Q, x.dim(1, 0))]);
        let mut span = Echelon::new(Q, id.max_index().unwrap() + 1);
        for v in h.basis(0) {
            span.insert(v.clone());
        }
        assert!(span.contains(&id));
        assert_eq!(h.evaluate(&id, 1, &SparseVec::unit(0, Q)), SparseVec::unit(0, Q));
    }

    #[test]
    fn homs_between_a2_representables() {
        let c = a2();
        let pu = Bimodule::representable(c.clone(), 0);
        let pv = Bimodule::representable(c.clone(), 1);
        assert_eq!(module_hom(&pu, &pv).unwrap().basis(0).len(), 1);
        assert_eq!(module_hom(&pv, &pu).unwrap().basis(0).len(), 0);
    }
}
