use rayon::prelude::*;
use serde::Serialize;

use crate::error::{check_kind, Error, Result};
use crate::linalg::echelon::Echelon;
use crate::linalg::matrix::{Matrix, SparseVec};
use crate::scalar::{Scalar, ScalarKind};

/// A bounded window `[lo, hi]` of a cochain complex.
///
/// `diffs[i]` is the differential from degree `lo + i` to `lo + i + 1`. The
/// `complete_below` / `complete_above` flags assert that the complex is zero
/// outside the window on that side; without them cohomology at the edge is
/// only an upper bound.
#[derive(Clone, Debug)]
pub struct ComplexRep {
    kind: ScalarKind,
    lo: i32,
    dims: Vec<usize>,
    diffs: Vec<Matrix>,
    complete_below: bool,
    complete_above: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeCaveat {
    /// The window was truncated next to this degree; the value is an upper bound.
    UpperBound,
}

/// Cohomology in one degree, with representatives and a classifier that
/// expresses any cocycle in the representative basis.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub degree: i32,
    pub betti: usize,
    pub representatives: Vec<SparseVec>,
    pub cocycle_dim: usize,
    pub boundary_rank: usize,
    pub caveat: Option<EdgeCaveat>,
    classifier: Echelon,
}

impl Cohomology {
    /// Coordinates of the class of the cocycle `z`, or `None` when `z` is not
    /// in the span of cocycle representatives and coboundaries.
    pub fn class_of(&self, z: &SparseVec) -> Option<Vec<Scalar>> {
        self.classifier
            .express(z)
            .map(|c| c.to_dense(self.betti, self.classifier.kind()))
    }

    pub fn is_coboundary(&self, z: &SparseVec) -> bool {
        self.class_of(z).is_some_and(|c| c.iter().all(|x| x.is_zero()))
    }
}

impl ComplexRep {
    /// Builds and validates a complex: shapes must chain and `d∘d = 0`.
    pub fn new(
        kind: ScalarKind,
        lo: i32,
        dims: Vec<usize>,
        diffs: Vec<Matrix>,
        complete_below: bool,
        complete_above: bool,
    ) -> Result<Self> {
        let c = ComplexRep { kind, lo, dims, diffs, complete_below, complete_above };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dims.is_empty() {
            return Err(Error::Shape("empty degree window".into()));
        }
        if self.diffs.len() + 1 != self.dims.len() {
            return Err(Error::Shape(format!(
                "{} degrees need {} differentials, got {}",
                self.dims.len(),
                self.dims.len() - 1,
                self.diffs.len()
            )));
        }
        for (i, d) in self.diffs.iter().enumerate() {
            check_kind(self.kind, d.kind())?;
            if d.shape() != (self.dims[i + 1], self.dims[i]) {
                return Err(Error::Shape(format!(
                    "differential in degree {} has shape {:?}, expected {:?}",
                    self.lo + i as i32,
                    d.shape(),
                    (self.dims[i + 1], self.dims[i])
                )));
            }
        }
        for n in self.squares() {
            n?;
        }
        Ok(())
    }

    /// `d_{n+1} ∘ d_n` for every adjacent pair, as a zero-check per degree.
    fn squares(&self) -> Vec<Result<()>> {
        (1..self.diffs.len())
            .into_par_iter()
            .map(|i| {
                let sq = self.diffs[i].mul(&self.diffs[i - 1])?;
                if sq.is_zero() {
                    Ok(())
                } else {
                    Err(Error::Validation(format!(
                        "d∘d ≠ 0 starting in degree {}",
                        self.lo + i as i32 - 1
                    )))
                }
            })
            .collect()
    }

    /// `self ⊕ other` over a common window.
    pub fn direct_sum(&self, other: &ComplexRep) -> Result<ComplexRep> {
        check_kind(self.kind, other.kind)?;
        if self.lo != other.lo || self.hi() != other.hi() {
            return Err(Error::Shape("direct sum of complexes with different windows".into()));
        }
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let diffs = self.diffs.iter().zip(&other.diffs).map(|(a, b)| a.block_diagonal(b)).collect::<Result<_>>()?;
        ComplexRep::new(
            self.kind,
            self.lo,
            dims,
            diffs,
            self.complete_below && other.complete_below,
            self.complete_above && other.complete_above,
        )
    }

    /// The zero complex on the window `[lo, hi]`.
    pub fn zero(kind: ScalarKind, lo: i32, hi: i32) -> ComplexRep {
        let len = (hi - lo + 1).max(1) as usize;
        ComplexRep { kind, lo, dims: vec![0; len], diffs: vec![Matrix::zeros(kind, 0, 0); len - 1], complete_below: true, complete_above: true }
    }

    pub fn d_squared_is_zero(&self) -> bool {
        self.squares().iter().all(|r| r.is_ok())
    }

    pub fn kind(&self) -> ScalarKind {
        self.kind
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.dims.len() as i32 - 1
    }

    pub fn complete_below(&self) -> bool {
        self.complete_below
    }

    pub fn complete_above(&self) -> bool {
        self.complete_above
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, n: i32) -> usize {
        if n < self.lo || n > self.hi() {
            0
        } else {
            self.dims[(n - self.lo) as usize]
        }
    }

    /// The differential leaving degree `n`, if it lies inside the window.
    pub fn differential(&self, n: i32) -> Option<&Matrix> {
        if n < self.lo || n >= self.hi() {
            None
        } else {
            Some(&self.diffs[(n - self.lo) as usize])
        }
    }

    pub fn differentials(&self) -> &[Matrix] {
        &self.diffs
    }

    pub fn in_window(&self, n: i32) -> bool {
        n >= self.lo && n <= self.hi()
    }

    /// Cohomology in degree `n` with representatives.
    pub fn cohomology(&self, n: i32) -> Result<Cohomology> {
        if !self.in_window(n) {
            return Err(Error::DegreeOutsideWindow { degree: n, lo: self.lo, hi: self.hi() });
        }
        let dim = self.dim(n);
        let mut caveat = None;
        let kernel = match self.differential(n) {
            Some(d) => d.kernel_basis(),
            None => {
                if !self.complete_above {
                    caveat = Some(EdgeCaveat::UpperBound);
                }
                (0..dim).map(|i| SparseVec::unit(i, self.kind)).collect()
            }
        };
        let mut classifier = Echelon::tracking(self.kind, dim);
        match self.differential(n - 1) {
            Some(d) => {
                for c in d.columns() {
                    classifier.insert(c);
                }
            }
            None => {
                if !self.complete_below && n == self.lo {
                    caveat = Some(EdgeCaveat::UpperBound);
                }
            }
        }
        let boundary_rank = classifier.rank();
        let mut representatives = Vec::new();
        for z in kernel.iter() {
            if classifier.insert_tagged(z.clone(), representatives.len()) {
                representatives.push(z.clone());
            }
        }
        debug_assert_eq!(representatives.len() + boundary_rank, kernel.len());
        Ok(Cohomology {
            degree: n,
            betti: representatives.len(),
            representatives,
            cocycle_dim: kernel.len(),
            boundary_rank,
            caveat,
            classifier,
        })
    }

    /// Cohomology for every degree in `[from, to]`, computed in parallel.
    pub fn cohomology_range(&self, from: i32, to: i32) -> Result<Vec<Cohomology>> {
        (from..=to).into_par_iter().map(|n| self.cohomology(n)).collect()
    }

    pub fn betti_numbers(&self, from: i32, to: i32) -> Result<Vec<usize>> {
        Ok(self.cohomology_range(from, to)?.into_iter().map(|h| h.betti).collect())
    }

    /// Alternating sum of the degree dimensions over the window.
    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(i, &d)| if (self.lo + i as i32).rem_euclid(2) == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }

    /// Plain text dump: dimensions then every differential grid.
    pub fn to_text(&self) -> String {
        let mut s = format!("# complex over {} degrees {}..={}\n", self.kind, self.lo, self.hi());
        s.push_str(&format!("dims {:?}\n", self.dims));
        for (i, d) in self.diffs.iter().enumerate() {
            s.push_str(&format!("d^{}\n{}", self.lo + i as i32, d.to_text()));
        }
        s
    }
}

/// Complex cohomology at one degree: Betti number and representatives.
pub fn complex_cohomology(c: &ComplexRep, n: i32) -> Result<(usize, Vec<SparseVec>)> {
    let h = c.cohomology(n)?;
    Ok((h.betti, h.representatives))
}

/// Degreewise linear maps between two complexes over the same window.
#[derive(Clone, Debug)]
pub struct ChainMap {
    lo: i32,
    maps: Vec<Matrix>,
}

impl ChainMap {
    pub fn new(lo: i32, maps: Vec<Matrix>) -> Self {
        ChainMap { lo, maps }
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn at(&self, n: i32) -> Option<&Matrix> {
        if n < self.lo {
            return None;
        }
        self.maps.get((n - self.lo) as usize)
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// Checks shapes and `f ∘ d = d ∘ f` wherever both sides are defined.
    pub fn verify(&self, src: &ComplexRep, dst: &ComplexRep) -> Result<()> {
        for (i, f) in self.maps.iter().enumerate() {
            let n = self.lo + i as i32;
            if f.shape() != (dst.dim(n), src.dim(n)) {
                return Err(Error::Shape(format!(
                    "chain map in degree {n} has shape {:?}, expected {:?}",
                    f.shape(),
                    (dst.dim(n), src.dim(n))
                )));
            }
            if let (Some(g), Some(ds), Some(dd)) = (self.at(n + 1), src.differential(n), dst.differential(n)) {
                if g.mul(ds)? != dd.mul(f)? {
                    return Err(Error::Validation(format!("not a chain map in degree {n}")));
                }
            }
        }
        Ok(())
    }

    /// Matrix of the induced map on cohomology in degree `n` (target classes × source classes).
    pub fn induced(&self, n: i32, src: &Cohomology, dst: &Cohomology) -> Result<Matrix> {
        let f = self
            .at(n)
            .ok_or(Error::DegreeOutsideWindow { degree: n, lo: self.lo, hi: self.lo + self.maps.len() as i32 - 1 })?;
        let kind = f.kind();
        let mut cols = Vec::with_capacity(src.betti);
        for z in &src.representatives {
            let img = f.apply(z);
            let c = dst
                .class_of(&img)
                .ok_or_else(|| Error::Validation(format!("image of a cocycle in degree {n} is not a cocycle")))?;
            cols.push(SparseVec::from_dense(&c));
        }
        Matrix::from_columns(kind, dst.betti, &cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: ScalarKind = ScalarKind::Rational;

    #[test]
    fn single_line_in_degree_zero() {
        let c = ComplexRep::new(Q, 0, vec![1], vec![], true, true).unwrap();
        assert_eq!(complex_cohomology(&c, 0).unwrap().0, 1);
    }

    #[test]
    fn identity_complex_is_exact() {
        let c = ComplexRep::new(Q, 0, vec![1, 1], vec![Matrix::identity(Q, 1)], true, true).unwrap();
        assert_eq!(c.betti_numbers(0, 1).unwrap(), vec![0, 0]);
    }

    #[test]
    fn rejects_nonzero_square() {
        let d = Matrix::identity(Q, 1);
        let err = ComplexRep::new(Q, 0, vec![1, 1, 1], vec![d.clone(), d], true, true).unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn degree_outside_window() {
        let c = ComplexRep::new(Q, 0, vec![1], vec![], true, true).unwrap();
        assert!(matches!(c.cohomology(3), Err(Error::DegreeOutsideWindow { .. })));
    }

    #[test]
    fn truncated_edges_carry_caveat() {
        let c = ComplexRep::new(Q, 0, vec![2, 1], vec![Matrix::from_i64(Q, &[&[1, 0]])], false, false).unwrap();
        assert_eq!(c.cohomology(0).unwrap().caveat, Some(EdgeCaveat::UpperBound));
        assert_eq!(c.cohomology(1).unwrap().caveat, Some(EdgeCaveat::UpperBound));
        let c = ComplexRep::new(Q, 0, vec![2, 1], vec![Matrix::from_i64(Q, &[&[1, 0]])], true, true).unwrap();
        assert_eq!(c.cohomology(0).unwrap().caveat, None);
    }

    #[test]
    fn betti_plus_ranks_is_dimension() {
        // k^2 -> k^3 -> k^2 with d1∘d0 = 0
        let d0 = Matrix::from_i64(Q, &[&[1, 0], &[0, 0], &[0, 0]]);
        let d1 = Matrix::from_i64(Q, &[&[0, 1, 0], &[0, 0, 0]]);
        let c = ComplexRep::new(Q, 0, vec![2, 3, 2], vec![d0.clone(), d1.clone()], true, true).unwrap();
        let h1 = c.cohomology(1).unwrap();
        assert_eq!(h1.betti + d1.rank() + d0.rank(), 3);
        assert_eq!(c.betti_numbers(0, 2).unwrap(), vec![1, 1, 1]);
        assert_eq!(c.euler_characteristic(), 1);
    }

    #[test]
    fn class_of_detects_coboundaries() {
        let d0 = Matrix::from_i64(Q, &[&[1], &[1]]);
        let c = ComplexRep::new(Q, 0, vec![1, 2], vec![d0], true, true).unwrap();
        let h = c.cohomology(1).unwrap();
        assert_eq!(h.betti, 1);
        let b = SparseVec::from_dense(&[Q.from_i64(2), Q.from_i64(2)]);
        assert!(h.is_coboundary(&b));
        let z = SparseVec::from_dense(&[Q.from_i64(1), Q.zero()]);
        assert!(!h.is_coboundary(&z));
    }
}
