use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::bimodule::Bimodule;
use crate::error::{check_kind, Error, Result};
use crate::linalg::{Cohomology, ComplexRep, Matrix, SparseVec};
use crate::lincat::FinLinCat;
use crate::scalar::{Scalar, ScalarKind};

/// Default bound on the dimension of any single cochain space.
pub const DEFAULT_DIM_CAP: usize = 20_000;

const NONE: u32 = u32::MAX;

/// What to build: the Hochschild complex of `category` with coefficients in
/// an 𝔞-𝔞-bimodule, exact in degrees up to `n_max`.
#[derive(Clone, Debug)]
pub struct HochschildSpec {
    pub category: Arc<FinLinCat>,
    pub coefficients: Bimodule,
    pub n_max: usize,
    /// Only enumerate chains composable under the censoring relation.
    pub censoring_aware: bool,
    /// Cochains vanishing whenever an argument is an identity.
    pub normalized: bool,
    pub dim_cap: usize,
}

impl HochschildSpec {
    pub fn new(coefficients: Bimodule, n_max: usize) -> Self {
        let category = coefficients.left().clone();
        HochschildSpec {
            censoring_aware: category.censoring().is_some(),
            category,
            coefficients,
            n_max,
            normalized: false,
            dim_cap: DEFAULT_DIM_CAP,
        }
    }

    /// Coefficients in the diagonal bimodule.
    pub fn diagonal(category: Arc<FinLinCat>, n_max: usize) -> Self {
        Self::new(Bimodule::diagonal(category), n_max)
    }

    pub fn normalized(mut self, yes: bool) -> Self {
        self.normalized = yes;
        self
    }

    pub fn censoring_aware(mut self, yes: bool) -> Self {
        self.censoring_aware = yes;
        self
    }

    pub fn dim_cap(mut self, cap: usize) -> Self {
        self.dim_cap = cap;
        self
    }

    pub fn kind(&self) -> ScalarKind {
        self.category.kind()
    }

    pub fn has_diagonal_coefficients(&self) -> bool {
        self.coefficients.is_diagonal_over(&self.category)
    }
}

/// One object chain `B₀, …, B_p` (inputs `x_j ∈ hom(B_j, B_{j−1})`, output in
/// `M(B_p, B₀)`), with a slot per (input tuple, output basis element).
#[derive(Clone, Debug)]
struct Block {
    chain: Vec<usize>,
    radices: Vec<usize>,
    target_dim: usize,
    /// `slots[t * target_dim + m]`: position inside its total degree, or NONE.
    slots: Vec<u32>,
    /// Source blocks of the faces: `[left, inner 1 .. p−1, right]`.
    faces: Vec<Option<u32>>,
}

impl Block {
    fn p(&self) -> usize {
        self.chain.len() - 1
    }

    fn tuples(&self) -> usize {
        self.radices.iter().product()
    }

    fn decode(&self, mut t: usize) -> Vec<usize> {
        let mut digits = vec![0; self.radices.len()];
        for j in (0..self.radices.len()).rev() {
            digits[j] = t % self.radices[j];
            t /= self.radices[j];
        }
        digits
    }

    fn encode(&self, digits: &[usize]) -> usize {
        digits.iter().zip(&self.radices).fold(0, |acc, (d, r)| acc * r + d)
    }

    fn slot(&self, t: usize, m: usize) -> u32 {
        self.slots[t * self.target_dim + m]
    }
}

/// Layout of cochains: which (chain, tuple, output) triples make up each degree.
#[derive(Clone, Debug)]
struct ChainIndex {
    blocks: Vec<Block>,
    lookup: HashMap<Vec<usize>, u32>,
    lo: i32,
    dims: Vec<usize>,
    /// Per degree: `(block, local index)` of every basis cochain.
    entries: Vec<Vec<(u32, u32)>>,
    chain_blocks: Vec<usize>,
}

/// A Hochschild cochain complex together with its chain-basis index.
#[derive(Clone, Debug)]
pub struct HochschildComplex {
    pub spec: HochschildSpec,
    pub complex: ComplexRep,
    index: ChainIndex,
}

fn tuple_degree(cat: &FinLinCat, chain: &[usize], digits: &[usize]) -> i32 {
    digits.iter().enumerate().map(|(j, &d)| cat.hom(chain[j + 1], chain[j]).degree(d)).sum()
}

/// Prepares the spec: checks shapes and, for normalized cochains, moves to a
/// presentation in which identities are basis elements.
fn prepare(spec: &HochschildSpec) -> Result<HochschildSpec> {
    let mut spec = spec.clone();
    let cat = &spec.category;
    check_kind(cat.kind(), spec.coefficients.kind())?;
    let same = |c: &Arc<FinLinCat>| Arc::ptr_eq(c, cat) || **c == **cat;
    if !same(spec.coefficients.left()) || !same(spec.coefficients.right()) {
        return Err(Error::Validation("coefficients must be a bimodule over the category itself".into()));
    }
    if spec.n_max < 1 {
        return Err(Error::Validation("the degree window needs n_max ≥ 1".into()));
    }
    if spec.censoring_aware && cat.censoring().is_none() {
        spec.censoring_aware = false;
    }
    if spec.normalized && !cat.has_identity_basis() {
        if !spec.has_diagonal_coefficients() {
            return Err(Error::Unsupported(
                "normalized cochains need identities among the basis elements; re-present the category first".into(),
            ));
        }
        let rebased = Arc::new(cat.with_identity_basis()?);
        spec.coefficients = Bimodule::diagonal(rebased.clone());
        spec.category = rebased;
    }
    Ok(spec)
}

impl ChainIndex {
    fn build(spec: &HochschildSpec) -> Result<Self> {
        let cat = &spec.category;
        let m = &spec.coefficients;
        let n = cat.num_objects();
        let m_range = m.spaces().iter().filter_map(|s| s.degree_range()).fold(None, |acc: Option<(i32, i32)>, r| {
            Some(acc.map_or(r, |(a, b)| (a.min(r.0), b.max(r.1))))
        });
        let m_lo = m_range.map_or(0, |r| r.0);
        let lo = m_lo.min(0);
        let hi = spec.n_max as i32 + 1;
        let max_p = (hi - m_lo).max(0) as usize;
        let width = (hi - lo + 1) as usize;
        let rel = if spec.censoring_aware { cat.censoring() } else { None };
        let allowed = |src: usize, tgt: usize| rel.is_none_or(|r| r.contains(src, tgt));
        let identity_digit: Vec<Option<usize>> =
            (0..n).map(|a| if spec.normalized { cat.identity_basis_index(a) } else { None }).collect();

        let mut chain_blocks = vec![0usize; max_p + 1];
        let mut blocks = Vec::new();
        let mut lookup = HashMap::new();
        let mut dims = vec![0usize; width];
        let mut col_counts = vec![vec![0usize; max_p + 1]; width];
        let mut entries: Vec<Vec<(u32, u32)>> = vec![Vec::new(); width];

        // Chains of column p, in lexicographic order, extended one object at a time.
        let mut frontier: Vec<Vec<usize>> = (0..n).map(|b| vec![b]).collect();
        for p in 0..=max_p {
            chain_blocks[p] = if spec.censoring_aware { frontier.len() } else { n.pow(p as u32 + 1) };
            for chain in &frontier {
                let radices: Vec<usize> = (1..=p).map(|j| cat.hom_dim(chain[j], chain[j - 1])).collect();
                let target_dim = if allowed(chain[p], chain[0]) { m.dim(chain[p], chain[0]) } else { 0 };
                let ntuples: usize = radices.iter().product();
                if ntuples == 0 || target_dim == 0 {
                    continue;
                }
                let id = blocks.len() as u32;
                let mut block =
                    Block { chain: chain.clone(), radices, target_dim, slots: Vec::with_capacity(ntuples * target_dim), faces: Vec::new() };
                let out_space = m.space(chain[p], chain[0]);
                for t in 0..ntuples {
                    let digits = block.decode(t);
                    let excluded = (1..=p).any(|j| chain[j] == chain[j - 1] && identity_digit[chain[j]] == Some(digits[j - 1]));
                    let tdeg = tuple_degree(cat, chain, &digits);
                    for k in 0..target_dim {
                        let deg = p as i32 + out_space.degree(k) - tdeg;
                        if excluded || deg < lo || deg > hi {
                            block.slots.push(NONE);
                            continue;
                        }
                        let d = (deg - lo) as usize;
                        block.slots.push(dims[d] as u32);
                        entries[d].push((id, (t * target_dim + k) as u32));
                        dims[d] += 1;
                        col_counts[d][p] += 1;
                        if dims[d] > spec.dim_cap {
                            let (col, &size) = col_counts[d].iter().enumerate().max_by_key(|(_, c)| **c).unwrap();
                            return Err(Error::ResourceCap {
                                what: format!("Hochschild cochains of degree {} (column {} alone has dimension {})", deg, col, size),
                                dim: dims[d],
                                cap: spec.dim_cap,
                            });
                        }
                    }
                }
                lookup.insert(chain.clone(), id);
                blocks.push(block);
            }
            if p < max_p {
                frontier = frontier
                    .iter()
                    .flat_map(|c| {
                        let last = *c.last().unwrap();
                        (0..n).filter(move |&b| !spec.censoring_aware || allowed(b, last)).map(move |b| {
                            let mut next = c.clone();
                            next.push(b);
                            next
                        })
                    })
                    .filter(|c| spec.censoring_aware || c.windows(2).all(|w| cat.hom_dim(w[1], w[0]) > 0))
                    .collect();
            }
        }
        for k in 0..blocks.len() {
            let chain = &blocks[k].chain;
            let p = chain.len() - 1;
            let mut faces = Vec::with_capacity(p + 1);
            if p > 0 {
                faces.push(lookup.get(&chain[1..]).copied());
                for i in 1..p {
                    let mut c = chain.clone();
                    c.remove(i);
                    faces.push(lookup.get(&c).copied());
                }
                faces.push(lookup.get(&chain[..p]).copied());
            }
            blocks[k].faces = faces;
        }
        Ok(ChainIndex { blocks, lookup, lo, dims, entries, chain_blocks })
    }

}

/// Builds the rows of the total differential landing in one (block, tuple):
/// `D = d_v + (−1)ⁿ δ` on a cochain of total degree `n`, one row per output
/// basis element. Entries are `(position in degree n, coefficient)`.
fn rows_for(spec: &HochschildSpec, index: &ChainIndex, bid: usize, t: usize) -> Vec<Vec<(usize, Scalar)>> {
    let cat = &spec.category;
    let m = &spec.coefficients;
    let kind = cat.kind();
    let blk = &index.blocks[bid];
    let chain = &blk.chain;
    let pp = blk.p();
    let td = blk.target_dim;
    let digits = blk.decode(t);
    let tdeg = tuple_degree(cat, chain, &digits);
    let out_space = m.space(chain[pp], chain[0]);
    // Total degree of the row for output basis element k.
    let row_deg = |k: usize| pp as i32 + out_space.degree(k) - tdeg;
    let sgn = |e: i64| Scalar::parity(e, kind);
    let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); td];

    if pp > 0 {
        let p = pp - 1;
        // x₁ · φ(x₂, …, x_{p+1}) with the Koszul sign (−1)^{|φ||x₁|}.
        if let Some(src) = blk.faces[0] {
            let s = &index.blocks[src as usize];
            let ts = s.encode(&digits[1..]);
            let x1_deg = cat.hom(chain[1], chain[0]).degree(digits[0]) as i64;
            for k in 0..s.target_dim {
                let slot = s.slot(ts, k);
                if slot == NONE {
                    continue;
                }
                for (k2, c) in m.left_basis(chain[pp], chain[1], chain[0], digits[0], k).iter() {
                    let n = row_deg(k2) as i64 - 1;
                    let q = n - p as i64;
                    rows[k2].push((slot as usize, &(&sgn(n) * &sgn(q * x1_deg)) * c));
                }
            }
        }
        // (−1)^i φ(…, x_i x_{i+1}, …)
        for i in 1..pp {
            let Some(src) = blk.faces[i] else { continue };
            let s = &index.blocks[src as usize];
            let prod = cat.compose_basis(chain[i + 1], chain[i], chain[i - 1], digits[i - 1], digits[i]);
            for (y, c) in prod.iter() {
                let mut d2 = Vec::with_capacity(p);
                d2.extend_from_slice(&digits[..i - 1]);
                d2.push(y);
                d2.extend_from_slice(&digits[i + 1..]);
                let ts = s.encode(&d2);
                for (k, row) in rows.iter_mut().enumerate() {
                    let slot = s.slot(ts, k);
                    if slot != NONE {
                        let n = row_deg(k) as i64 - 1;
                        row.push((slot as usize, &(&sgn(n) * &sgn(i as i64)) * c));
                    }
                }
            }
        }
        // (−1)^{p+1} φ(x₁, …, x_p) · x_{p+1}
        if let Some(src) = blk.faces[pp] {
            let s = &index.blocks[src as usize];
            let ts = s.encode(&digits[..p]);
            for k in 0..s.target_dim {
                let slot = s.slot(ts, k);
                if slot == NONE {
                    continue;
                }
                for (k2, c) in m.right_basis(chain[pp], chain[p], chain[0], k, digits[p]).iter() {
                    let n = row_deg(k2) as i64 - 1;
                    rows[k2].push((slot as usize, &(&sgn(n) * &sgn(pp as i64)) * c));
                }
            }
        }
    }

    // Vertical part: d_M ∘ φ − (−1)^{|φ|} φ ∘ d_⊗.
    if out_space.has_differential() {
        for k in 0..td {
            let slot = blk.slot(t, k);
            if slot == NONE {
                continue;
            }
            for (k2, c) in out_space.differential[k].iter() {
                rows[k2].push((slot as usize, c.clone()));
            }
        }
    }
    let mut passed = 0i64;
    for j in 0..pp {
        let h = cat.hom(chain[j + 1], chain[j]);
        if h.has_differential() {
            for (y, c) in h.differential[digits[j]].iter() {
                let mut d2 = digits.clone();
                d2[j] = y;
                let ts = blk.encode(&d2);
                for (k, row) in rows.iter_mut().enumerate() {
                    let slot = blk.slot(ts, k);
                    if slot != NONE {
                        let q = row_deg(k) as i64 - 1 - pp as i64;
                        row.push((slot as usize, -&(&sgn(q + passed) * c)));
                    }
                }
            }
        }
        passed += h.degree(digits[j]) as i64;
    }
    rows
}

impl HochschildComplex {
    /// Assembles the complex on degrees `[lo, n_max + 1]` and checks `d∘d = 0`.
    pub fn build(spec: &HochschildSpec) -> Result<Self> {
        let spec = prepare(spec)?;
        let index = ChainIndex::build(&spec)?;
        let kind = spec.kind();
        let width = index.dims.len();
        // Every (block, tuple) contributes rows to the degree of each output element.
        let work: Vec<(usize, usize)> =
            index.blocks.iter().enumerate().flat_map(|(b, blk)| (0..blk.tuples()).map(move |t| (b, t))).collect();
        let pieces: Vec<Vec<(usize, usize, SparseVec)>> = work
            .par_iter()
            .map(|&(b, t)| {
                let blk = &index.blocks[b];
                let rows = rows_for(&spec, &index, b, t);
                let mut out = Vec::new();
                for (k, row) in rows.into_iter().enumerate() {
                    let slot = blk.slot(t, k);
                    if slot == NONE {
                        continue;
                    }
                    let deg = blk.p() as i32 + spec.coefficients.space(blk.chain[blk.p()], blk.chain[0]).degree(k)
                        - tuple_degree(&spec.category, &blk.chain, &blk.decode(t));
                    if deg > index.lo {
                        out.push(((deg - index.lo) as usize, slot as usize, SparseVec::from_entries(row)));
                    }
                }
                out
            })
            .collect();
        let mut rows: Vec<Vec<SparseVec>> = index.dims.iter().map(|&d| vec![SparseVec::new(); d]).collect();
        for (d, slot, v) in pieces.into_iter().flatten() {
            rows[d][slot] = v;
        }
        let mut diffs = Vec::with_capacity(width - 1);
        for d in 1..width {
            diffs.push(Matrix::from_rows(kind, index.dims[d - 1], std::mem::take(&mut rows[d]))?);
        }
        let complex = ComplexRep::new(kind, index.lo, index.dims.clone(), diffs, true, false)?;
        Ok(HochschildComplex { spec, complex, index })
    }

    pub fn kind(&self) -> ScalarKind {
        self.spec.kind()
    }

    pub fn category(&self) -> &Arc<FinLinCat> {
        &self.spec.category
    }

    /// Lowest degree with possibly nonzero cochains.
    pub fn lo(&self) -> i32 {
        self.index.lo
    }

    /// Highest degree with exact cohomology.
    pub fn n_max(&self) -> i32 {
        self.spec.n_max as i32
    }

    pub fn dim(&self, n: i32) -> usize {
        self.complex.dim(n)
    }

    /// Number of object chains of each column the complex ranges over.
    pub fn chain_blocks(&self) -> &[usize] {
        &self.index.chain_blocks
    }

    pub fn cohomology(&self, n: i32) -> Result<Cohomology> {
        self.complex.cohomology(n)
    }

    /// Betti numbers on `[lo, n_max]`; every entry is exact.
    pub fn betti(&self) -> Result<Vec<usize>> {
        self.complex.betti_numbers(self.lo(), self.n_max())
    }

    /// Betti numbers on `[from, to]` (clamped to the window).
    pub fn betti_range(&self, from: i32, to: i32) -> Result<Vec<usize>> {
        (from..=to).map(|n| if self.complex.in_window(n) { self.complex.cohomology(n).map(|h| h.betti) } else { Ok(0) }).collect()
    }

    pub fn differential(&self, n: i32) -> Option<&Matrix> {
        self.complex.differential(n)
    }

    /// Applies the differential to a cochain of degree `n`.
    pub fn d(&self, n: i32, v: &SparseVec) -> SparseVec {
        self.differential(n).map_or_else(SparseVec::new, |d| d.apply(v))
    }

    fn block_of(&self, chain: &[usize]) -> Option<&Block> {
        self.index.lookup.get(chain).map(|&b| &self.index.blocks[b as usize])
    }

    /// The value `φ(x₁, …, x_p) ∈ M(B_p, B₀)` of a degree-`n` cochain on basis
    /// inputs `x_j ∈ hom(B_j, B_{j−1})` along `chain = (B₀, …, B_p)`.
    pub fn value(&self, n: i32, phi: &SparseVec, chain: &[usize], digits: &[usize]) -> SparseVec {
        let Some(blk) = self.block_of(chain) else { return SparseVec::new() };
        if !self.complex.in_window(n) || digits.len() + 1 != chain.len() {
            return SparseVec::new();
        }
        let t = blk.encode(digits);
        let deg = |k: usize| {
            blk.p() as i32 + self.spec.coefficients.space(chain[blk.p()], chain[0]).degree(k)
                - tuple_degree(&self.spec.category, chain, digits)
        };
        let mut out = Vec::new();
        for k in 0..blk.target_dim {
            let slot = blk.slot(t, k);
            if slot != NONE && deg(k) == n {
                if let Some(c) = phi.get(slot as usize) {
                    out.push((k, c.clone()));
                }
            }
        }
        SparseVec::from_sorted(out)
    }

    /// Position of the basis cochain `(chain, inputs) ↦ e_k` inside degree `n`.
    pub fn position(&self, n: i32, chain: &[usize], digits: &[usize], k: usize) -> Option<usize> {
        let blk = self.block_of(chain)?;
        if digits.len() + 1 != chain.len() || k >= blk.target_dim || digits.iter().zip(&blk.radices).any(|(d, r)| d >= r) {
            return None;
        }
        let slot = blk.slot(blk.encode(digits), k);
        let deg = blk.p() as i32 + self.spec.coefficients.space(chain[blk.p()], chain[0]).degree(k)
            - tuple_degree(&self.spec.category, chain, digits);
        (slot != NONE && deg == n).then_some(slot as usize)
    }

    /// The degree-`n` cochain with the given values on basis input tuples.
    /// Values outside the complex (excluded or censored tuples) are dropped.
    pub fn cochain_from_fn(&self, n: i32, f: impl Fn(&[usize], &[usize]) -> SparseVec) -> SparseVec {
        if !self.complex.in_window(n) {
            return SparseVec::new();
        }
        let mut cache: HashMap<(u32, usize), SparseVec> = HashMap::new();
        let mut out = Vec::new();
        for (pos, &(b, local)) in self.index.entries[(n - self.lo()) as usize].iter().enumerate() {
            let blk = &self.index.blocks[b as usize];
            let (t, k) = (local as usize / blk.target_dim, local as usize % blk.target_dim);
            let v = cache.entry((b, t)).or_insert_with(|| f(&blk.chain, &blk.decode(t)));
            if let Some(c) = v.get(k) {
                out.push((pos, c.clone()));
            }
        }
        SparseVec::from_sorted(out)
    }

    /// Every `(chain, input tuple)` carrying degree-`n` cochains, in basis order.
    pub fn supports(&self, n: i32) -> Vec<(Vec<usize>, Vec<usize>)> {
        if !self.complex.in_window(n) {
            return Vec::new();
        }
        let mut out: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        let mut last = None;
        for &(b, local) in &self.index.entries[(n - self.lo()) as usize] {
            let blk = &self.index.blocks[b as usize];
            let t = local as usize / blk.target_dim;
            if last != Some((b, t)) {
                out.push((blk.chain.clone(), blk.decode(t)));
                last = Some((b, t));
            }
        }
        out
    }

    /// Human-readable name of basis cochain `pos` in degree `n`.
    pub fn basis_label(&self, n: i32, pos: usize) -> String {
        let (b, local) = self.index.entries[(n - self.lo()) as usize][pos];
        let blk = &self.index.blocks[b as usize];
        let (t, k) = (local as usize / blk.target_dim, local as usize % blk.target_dim);
        let cat = &self.spec.category;
        let digits = blk.decode(t);
        let inputs: Vec<&str> =
            digits.iter().enumerate().map(|(j, &d)| cat.hom(blk.chain[j + 1], blk.chain[j]).basis[d].label.as_str()).collect();
        let out = &self.spec.coefficients.space(blk.chain[blk.p()], blk.chain[0]).basis[k].label;
        format!("({}) ↦ {}", inputs.join(", "), out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lincat::{from_algebra, incidence_category, Algebra};
    use crate::sites::{Poset, RingPresheaf};

    const Q: ScalarKind = ScalarKind::Rational;

    fn algebra(a: Algebra, n_max: usize) -> HochschildComplex {
        HochschildComplex::build(&HochschildSpec::diagonal(Arc::new(from_algebra(&a).unwrap()), n_max)).unwrap()
    }

    #[test]
    fn ground_field() {
        let h = algebra(Algebra::ground(Q), 2);
        assert_eq!(h.complex.dims(), &[1, 1, 1, 1]);
        assert_eq!(h.betti().unwrap(), vec![1, 0, 0]);
        let spec = HochschildSpec::diagonal(Arc::new(from_algebra(&Algebra::ground(Q)).unwrap()), 2).normalized(true);
        let n = HochschildComplex::build(&spec).unwrap();
        assert_eq!(n.complex.dims(), &[1, 0, 0, 0]);
    }

    #[test]
    fn dual_numbers() {
        let h = algebra(Algebra::dual_numbers(Q), 3);
        assert_eq!(h.betti().unwrap(), vec![2, 1, 1, 1]);
    }

    #[test]
    fn a2_chain_counts() {
        let c = Arc::new(incidence_category(&RingPresheaf::constant(Poset::chain(2), Algebra::ground(Q))).unwrap());
        let h = HochschildComplex::build(&HochschildSpec::diagonal(c, 2)).unwrap();
        assert_eq!(&h.complex.dims()[..3], &[2, 3, 4]);
        assert_eq!(h.betti().unwrap(), vec![1, 0, 0]);
    }

    #[test]
    fn resource_cap_names_the_column() {
        let spec = HochschildSpec::diagonal(Arc::new(from_algebra(&Algebra::matrix(Q, 2)).unwrap()), 3).dim_cap(100);
        match HochschildComplex::build(&spec) {
            Err(Error::ResourceCap { what, .. }) => assert!(what.contains("column")),
            other => panic!("expected a resource cap, got {:?}", other.map(|h| h.complex.dims().to_vec())),
        }
    }

    #[test]
    fn values_round_trip() {
        let h = algebra(Algebra::dual_numbers(Q), 2);
        let phi = h.cochain_from_fn(2, |_, d| if d == [1, 1] { SparseVec::unit(0, Q) } else { SparseVec::new() });
        assert_eq!(phi.nnz(), 1);
        assert_eq!(h.value(2, &phi, &[0, 0, 0], &[1, 1]), SparseVec::unit(0, Q));
        assert!(h.value(2, &phi, &[0, 0, 0], &[0, 1]).is_zero());
    }

    /// `k[x]/(x²) ⊗ Λ(u)` with `|u| = −1` and `du = x`.
    pub(crate) fn koszul_dg() -> FinLinCat {
        use crate::lincat::{BasisElem, GradedSpace};
        let basis = vec![BasisElem::new("1", 0), BasisElem::new("x", 0), BasisElem::new("u", -1), BasisElem::new("xu", -1)];
        let diff = vec![SparseVec::new(), SparseVec::new(), SparseVec::unit(1, Q), SparseVec::new()];
        let table = |g: usize, f: usize| -> SparseVec {
            match (g, f) {
                (0, f) => SparseVec::unit(f, Q),
                (g, 0) => SparseVec::unit(g, Q),
                (1, 2) | (2, 1) => SparseVec::unit(3, Q),
                _ => SparseVec::new(),
            }
        };
        FinLinCat::build(Q, vec!["*".into()], vec![GradedSpace::new(basis, diff)], vec![SparseVec::unit(0, Q)], None, |_, _, _, g, f| {
            table(g, f)
        })
        .unwrap()
    }

    #[test]
    fn dg_complex_squares_to_zero() {
        let c = koszul_dg();
        assert!(c.validate().is_ok(), "{}", c.validate());
        let h = HochschildComplex::build(&HochschildSpec::diagonal(Arc::new(c.clone()), 2)).unwrap();
        assert!(h.lo() < 0);
        assert!(h.complex.d_squared_is_zero());
        let n = HochschildComplex::build(&HochschildSpec::diagonal(Arc::new(c), 2).normalized(true)).unwrap();
        assert_eq!(h.betti().unwrap(), n.betti().unwrap());
    }

    #[test]
    fn pseudocircle() {
        let p = Poset::new(
            ["a", "b", "c", "d"].map(String::from).to_vec(),
            &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")].map(|(x, y)| (x.to_string(), y.to_string())),
        )
        .unwrap();
        let c = Arc::new(incidence_category(&RingPresheaf::constant(p, Algebra::ground(Q))).unwrap());
        let aware = HochschildComplex::build(&HochschildSpec::diagonal(c.clone(), 2)).unwrap();
        let blind = HochschildComplex::build(&HochschildSpec::diagonal(c, 2).censoring_aware(false)).unwrap();
        assert_eq!(aware.betti().unwrap(), vec![1, 1, 0]);
        assert_eq!(blind.betti().unwrap(), vec![1, 1, 0]);
        assert!(aware.chain_blocks()[2] < blind.chain_blocks()[2]);
    }
}
