use crate::linalg::{Matrix, SparseVec};
use crate::scalar::ScalarKind;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisElem {
    pub label: String,
    pub degree: i32,
}

impl BasisElem {
    pub fn new(label: impl Into<String>, degree: i32) -> Self {
        BasisElem { label: label.into(), degree }
    }
}

/// A finite-dimensional graded vector space with a chosen homogeneous basis
/// and a degree `+1` differential (`differential[k]` is `d(e_k)`).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedSpace {
    pub basis: Vec<BasisElem>,
    pub differential: Vec<SparseVec>,
}

impl GradedSpace {
    pub fn zero() -> Self {
        GradedSpace::default()
    }

    /// Ungraded space with zero differential.
    pub fn plain(labels: impl IntoIterator<Item = String>) -> Self {
        let basis: Vec<BasisElem> = labels.into_iter().map(|l| BasisElem::new(l, 0)).collect();
        let differential = vec![SparseVec::new(); basis.len()];
        GradedSpace { basis, differential }
    }

    pub fn new(basis: Vec<BasisElem>, differential: Vec<SparseVec>) -> Self {
        GradedSpace { basis, differential }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self, k: usize) -> i32 {
        self.basis[k].degree
    }

    pub fn has_differential(&self) -> bool {
        self.differential.iter().any(|d| !d.is_zero())
    }

    pub fn is_ungraded(&self) -> bool {
        self.basis.iter().all(|b| b.degree == 0) && !self.has_differential()
    }

    pub fn degree_range(&self) -> Option<(i32, i32)> {
        let lo = self.basis.iter().map(|b| b.degree).min()?;
        let hi = self.basis.iter().map(|b| b.degree).max()?;
        Some((lo, hi))
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.label == label)
    }

    /// The differential as a square matrix acting on coordinate columns.
    pub fn differential_matrix(&self, kind: ScalarKind) -> Matrix {
        Matrix::from_columns(kind, self.dim(), &self.differential).expect("differential fits its space")
    }

    /// Indices of basis elements in a given degree.
    pub fn in_degree(&self, n: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&k| self.basis[k].degree == n).collect()
    }
}
