//! Incremental reduced row echelon form.
//!
//! Rows are kept fully reduced at all times, so reducing a new vector is a
//! single linear combination of the pivot rows it touches. Optionally every
//! pivot row carries its expression in terms of "tagged" input vectors, which
//! turns the same structure into a linear solver.

use crate::linalg::matrix::SparseVec;
use crate::scalar::{Scalar, ScalarKind};

const NONE: usize = usize::MAX;

#[derive(Clone, Debug)]
pub struct Echelon {
    kind: ScalarKind,
    dim: usize,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
    row_of_col: Vec<usize>,
    exprs: Option<Vec<SparseVec>>,
}

impl Echelon {
    pub fn new(kind: ScalarKind, dim: usize) -> Self {
        Echelon { kind, dim, rows: Vec::new(), pivots: Vec::new(), row_of_col: vec![NONE; dim], exprs: None }
    }

    /// An echelon form that remembers how each pivot row was built from tagged inputs.
    pub fn tracking(kind: ScalarKind, dim: usize) -> Self {
        Echelon { exprs: Some(Vec::new()), ..Echelon::new(kind, dim) }
    }

    pub fn kind(&self) -> ScalarKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Splits `v` into (residual, coefficients on pivot rows).
    fn split(&self, v: &SparseVec) -> (SparseVec, Vec<(usize, Scalar)>) {
        let mut hits = Vec::new();
        let mut terms: Vec<(usize, Scalar)> = Vec::new();
        for (c, x) in v.iter() {
            let r = self.row_of_col[c];
            if r == NONE {
                terms.push((c, x.clone()));
            } else {
                hits.push((r, x.clone()));
            }
        }
        if hits.is_empty() {
            return (v.clone(), hits);
        }
        for (r, x) in &hits {
            let neg = -x;
            for (j, y) in self.rows[*r].iter() {
                if j != self.pivots[*r] {
                    terms.push((j, &neg * y));
                }
            }
        }
        (SparseVec::from_entries(terms), hits)
    }

    /// Residual of `v` modulo the row space; zero iff `v` lies in the span.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.split(v).0
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the row space. Returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        self.insert_inner(v, None)
    }

    /// Adds `v`, remembering it under `tag` for later [`Echelon::express`] calls.
    pub fn insert_tagged(&mut self, v: SparseVec, tag: usize) -> bool {
        self.insert_inner(v, Some(tag))
    }

    fn insert_inner(&mut self, v: SparseVec, tag: Option<usize>) -> bool {
        debug_assert!(v.max_index().is_none_or(|m| m < self.dim));
        let (res, hits) = self.split(&v);
        let Some((lead, lv)) = res.leading() else {
            return false;
        };
        let inv = lv.inv();
        let row = res.scale(&inv);
        let expr = self.exprs.as_ref().map(|exprs| {
            let mut terms: Vec<(usize, Scalar)> = Vec::new();
            if let Some(t) = tag {
                terms.push((t, self.kind.one()));
            }
            for (r, x) in &hits {
                let neg = -x;
                for (j, y) in exprs[*r].iter() {
                    terms.push((j, &neg * y));
                }
            }
            SparseVec::from_entries(terms).scale(&inv)
        });
        for i in 0..self.rows.len() {
            if let Some(c) = self.rows[i].get(lead).cloned() {
                let neg = -&c;
                self.rows[i] = self.rows[i].axpy(&neg, &row);
                if let (Some(exprs), Some(e)) = (self.exprs.as_mut(), expr.as_ref()) {
                    exprs[i] = exprs[i].axpy(&neg, e);
                }
            }
        }
        self.row_of_col[lead] = self.rows.len();
        self.pivots.push(lead);
        self.rows.push(row);
        if let (Some(exprs), Some(e)) = (self.exprs.as_mut(), expr) {
            exprs.push(e);
        }
        true
    }

    /// Coefficients on tagged inputs summing (modulo untagged inputs) to `v`,
    /// or `None` if `v` is outside the span.
    pub fn express(&self, v: &SparseVec) -> Option<SparseVec> {
        let exprs = self.exprs.as_ref().expect("express needs a tracking echelon");
        let (res, hits) = self.split(v);
        if !res.is_zero() {
            return None;
        }
        let mut terms = Vec::new();
        for (r, x) in hits {
            for (j, y) in exprs[r].iter() {
                terms.push((j, &x * y));
            }
        }
        Some(SparseVec::from_entries(terms))
    }

    /// Basis of the vectors annihilated by every inserted row.
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        let mut free_pos = vec![NONE; self.dim];
        let mut free = Vec::new();
        for c in 0..self.dim {
            if self.row_of_col[c] == NONE {
                free_pos[c] = free.len();
                free.push(c);
            }
        }
        let mut entries: Vec<Vec<(usize, Scalar)>> =
            free.iter().map(|&f| vec![(f, self.kind.one())]).collect();
        for (r, row) in self.rows.iter().enumerate() {
            for (j, y) in row.iter() {
                if j != self.pivots[r] {
                    entries[free_pos[j]].push((self.pivots[r], -y));
                }
            }
        }
        entries.into_iter().map(SparseVec::from_entries).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::Matrix;
    use proptest::prelude::*;

    const Q: ScalarKind = ScalarKind::Rational;

    fn random_matrix(kind: ScalarKind, rows: usize, cols: usize, vals: &[i64]) -> Matrix {
        let grid: Vec<Vec<Scalar>> = (0..rows)
            .map(|i| (0..cols).map(|j| kind.from_i64(vals[(i * cols + j) % vals.len()])).collect())
            .collect();
        Matrix::from_dense(kind, &grid).unwrap()
    }

    #[test]
    fn express_recovers_coefficients() {
        let mut e = Echelon::tracking(Q, 3);
        let a = SparseVec::from_dense(&[Q.from_i64(1), Q.from_i64(2), Q.zero()]);
        let b = SparseVec::from_dense(&[Q.zero(), Q.from_i64(1), Q.from_i64(1)]);
        assert!(e.insert_tagged(a.clone(), 0));
        assert!(e.insert_tagged(b.clone(), 1));
        assert!(!e.insert_tagged(a.add(&b, Q), 2));
        let target = a.scale(&Q.from_i64(3)).sub(&b, Q);
        let coef = e.express(&target).unwrap();
        assert_eq!(coef.to_dense(2, Q), vec![Q.from_i64(3), Q.from_i64(-1)]);
    }

    proptest! {
        #[test]
        fn rank_nullity(rows in 1usize..6, cols in 1usize..6, vals in proptest::collection::vec(-3i64..4, 36)) {
            let m = random_matrix(Q, rows, cols, &vals);
            let (r, k) = m.rank_kernel();
            prop_assert_eq!(r + k.len(), cols);
            for v in &k {
                prop_assert!(m.apply(v).is_zero());
            }
            let mut span = Echelon::new(Q, cols);
            for v in &k {
                prop_assert!(span.insert(v.clone()));
            }
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn rational_rank_matches_large_prime(rows in 1usize..6, cols in 1usize..6, vals in proptest::collection::vec(-3i64..4, 36)) {
            // Minors of a 5x5 matrix with entries in [-3,3] are below 3^5 * 5! < 1000003.
            let p = ScalarKind::prime(1_000_003).unwrap();
            let mq = random_matrix(Q, rows, cols, &vals);
            let mp = random_matrix(p, rows, cols, &vals);
            prop_assert_eq!(mq.rank(), mp.rank());
        }
    }
}
