use std::fmt::Write as _;

use crate::error::{check_kind, Error, Result};
use crate::linalg::echelon::Echelon;
use crate::scalar::{Scalar, ScalarKind};

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize, kind: ScalarKind) -> Self {
        SparseVec { entries: vec![(i, kind.one())] }
    }

    /// Builds from unsorted entries, summing duplicates and dropping zeros.
    pub fn from_entries(mut entries: Vec<(usize, Scalar)>) -> Self {
        entries.sort_by_key(|(i, _)| *i);
        let mut out: Vec<(usize, Scalar)> = Vec::with_capacity(entries.len());
        for (i, v) in entries {
            match out.last_mut() {
                Some((j, w)) if *j == i => *w = &*w + &v,
                _ => out.push((i, v)),
            }
        }
        out.retain(|(_, v)| !v.is_zero());
        SparseVec { entries: out }
    }

    /// Builds from entries already sorted, distinct and nonzero.
    pub fn from_sorted(entries: Vec<(usize, Scalar)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, v)| !v.is_zero()));
        SparseVec { entries }
    }

    pub fn from_dense(values: &[Scalar]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize, kind: ScalarKind) -> Vec<Scalar> {
        let mut out = vec![kind.zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Scalar)> {
        self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect() }
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, -v)).collect() }
    }

    /// `self + c * other`, by sorted merge.
    pub fn axpy(&self, c: &Scalar, other: &SparseVec) -> SparseVec {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i >= a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, c * &b[j].1));
                j += 1;
            } else {
                let v = a[i].1.add_mul(c, &b[j].1);
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec, kind: ScalarKind) -> SparseVec {
        self.axpy(&kind.one(), other)
    }

    pub fn sub(&self, other: &SparseVec, kind: ScalarKind) -> SparseVec {
        self.axpy(&kind.from_i64(-1), other)
    }

    pub fn dot(&self, other: &SparseVec, kind: ScalarKind) -> Scalar {
        let (a, b) = (&self.entries, &other.entries);
        let (mut i, mut j) = (0, 0);
        let mut acc = kind.zero();
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    acc = acc.add_mul(&a[i].1, &b[j].1);
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }

    /// Keeps entries whose index maps to `Some`, reindexing them.
    pub fn remap(&self, f: impl Fn(usize) -> Option<usize>) -> SparseVec {
        SparseVec::from_entries(
            self.entries.iter().filter_map(|(i, v)| f(*i).map(|j| (j, v.clone()))).collect(),
        )
    }

    pub fn shift(&self, offset: usize) -> SparseVec {
        SparseVec { entries: self.entries.iter().map(|(i, v)| (i + offset, v.clone())).collect() }
    }

    pub fn kind_ok(&self, kind: ScalarKind) -> bool {
        self.entries.iter().all(|(_, v)| v.kind() == kind)
    }
}

/// Dense scratch accumulator for combining many sparse rows into one.
pub struct Accumulator {
    kind: ScalarKind,
    vals: Vec<Scalar>,
    set: Vec<bool>,
    touched: Vec<usize>,
}

impl Accumulator {
    pub fn new(kind: ScalarKind, len: usize) -> Self {
        Accumulator { kind, vals: vec![kind.zero(); len], set: vec![false; len], touched: Vec::new() }
    }

    pub fn add(&mut self, i: usize, c: &Scalar) {
        if !self.set[i] {
            self.set[i] = true;
            self.touched.push(i);
            self.vals[i] = c.clone();
        } else {
            self.vals[i] = &self.vals[i] + c;
        }
    }

    pub fn add_mul(&mut self, i: usize, a: &Scalar, b: &Scalar) {
        if !self.set[i] {
            self.set[i] = true;
            self.touched.push(i);
            self.vals[i] = a * b;
        } else {
            self.vals[i] = self.vals[i].add_mul(a, b);
        }
    }

    pub fn axpy(&mut self, c: &Scalar, v: &SparseVec) {
        for (i, x) in v.iter() {
            self.add_mul(i, c, x);
        }
    }

    /// Drains into a sparse vector and resets the scratch space.
    pub fn take(&mut self) -> SparseVec {
        self.touched.sort_unstable();
        let zero = self.kind.zero();
        let mut out = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            self.set[i] = false;
            let v = std::mem::replace(&mut self.vals[i], zero.clone());
            if !v.is_zero() {
                out.push((i, v));
            }
        }
        self.touched.clear();
        SparseVec::from_sorted(out)
    }
}

/// Matrix over an exact field, stored as sparse rows.
///
/// A matrix with `rows x cols` acts on column vectors of length `cols`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    kind: ScalarKind,
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl Matrix {
    pub fn zeros(kind: ScalarKind, rows: usize, cols: usize) -> Self {
        Matrix { kind, rows, cols, data: vec![SparseVec::new(); rows] }
    }

    pub fn identity(kind: ScalarKind, n: usize) -> Self {
        Matrix { kind, rows: n, cols: n, data: (0..n).map(|i| SparseVec::unit(i, kind)).collect() }
    }

    pub fn from_rows(kind: ScalarKind, cols: usize, data: Vec<SparseVec>) -> Result<Self> {
        for (r, row) in data.iter().enumerate() {
            if let Some(m) = row.max_index() {
                if m >= cols {
                    return Err(Error::Shape(format!("row {r} has entry at column {m} >= {cols}")));
                }
            }
            if let Some((_, v)) = row.entries().iter().find(|(_, v)| v.kind() != kind) {
                check_kind(kind, v.kind())?;
            }
        }
        Ok(Matrix { kind, rows: data.len(), cols, data })
    }

    pub fn from_columns(kind: ScalarKind, rows: usize, columns: &[SparseVec]) -> Result<Self> {
        Ok(Matrix::from_rows(kind, rows, columns.to_vec())?.transpose())
    }

    pub fn from_dense(kind: ScalarKind, grid: &[Vec<Scalar>]) -> Result<Self> {
        let cols = grid.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(grid.len());
        for row in grid {
            if row.len() != cols {
                return Err(Error::Shape("ragged dense matrix".into()));
            }
            for v in row {
                check_kind(kind, v.kind())?;
            }
            data.push(SparseVec::from_dense(row));
        }
        Ok(Matrix { kind, rows: grid.len(), cols, data })
    }

    pub fn from_i64(kind: ScalarKind, grid: &[&[i64]]) -> Self {
        let cols = grid.first().map_or(0, |r| r.len());
        let data = grid
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged matrix literal");
                SparseVec::from_dense(&r.iter().map(|&v| kind.from_i64(v)).collect::<Vec<_>>())
            })
            .collect::<Vec<_>>();
        Matrix { kind, rows: grid.len(), cols, data }
    }

    pub fn kind(&self) -> ScalarKind {
        self.kind
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn row_vecs(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.data[i].get(j).cloned().unwrap_or_else(|| self.kind.zero())
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.nnz()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut cols: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row.iter() {
                cols[j].push((i, v.clone()));
            }
        }
        Matrix {
            kind: self.kind,
            rows: self.cols,
            cols: self.rows,
            data: cols.into_iter().map(SparseVec::from_sorted).collect(),
        }
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        self.transpose().data
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        SparseVec::from_sorted(
            self.data
                .iter()
                .enumerate()
                .filter_map(|(i, r)| {
                    let x = r.dot(v, self.kind);
                    (!x.is_zero()).then_some((i, x))
                })
                .collect(),
        )
    }

    /// `self * other`.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        check_kind(self.kind, other.kind)?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut acc = Accumulator::new(self.kind, other.cols);
        let data = self
            .data
            .iter()
            .map(|r| {
                for (j, a) in r.iter() {
                    acc.axpy(a, &other.data[j]);
                }
                acc.take()
            })
            .collect();
        Ok(Matrix { kind: self.kind, rows: self.rows, cols: other.cols, data })
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.axpy(&self.kind.one(), other)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.axpy(&self.kind.from_i64(-1), other)
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &Scalar, other: &Matrix) -> Result<Matrix> {
        check_kind(self.kind, other.kind)?;
        if self.shape() != other.shape() {
            return Err(Error::Shape(format!("{:?} vs {:?}", self.shape(), other.shape())));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.axpy(c, b)).collect();
        Ok(Matrix { kind: self.kind, rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            kind: self.kind,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| r.scale(c)).collect(),
        }
    }

    /// Block matrix `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        check_kind(self.kind, other.kind)?;
        if self.rows != other.rows {
            return Err(Error::Shape("hstack row mismatch".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let mut e = a.entries().to_vec();
                e.extend(b.shift(self.cols).into_entries());
                SparseVec::from_sorted(e)
            })
            .collect();
        Ok(Matrix { kind: self.kind, rows: self.rows, cols: self.cols + other.cols, data })
    }

    /// Block matrix with `self` above `other`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        check_kind(self.kind, other.kind)?;
        if self.cols != other.cols {
            return Err(Error::Shape("vstack column mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix { kind: self.kind, rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// `[[self, 0], [0, other]]`.
    pub fn block_diagonal(&self, other: &Matrix) -> Result<Matrix> {
        let top = self.hstack(&Matrix::zeros(self.kind, self.rows, other.cols))?;
        let bottom = Matrix::zeros(self.kind, other.rows, self.cols).hstack(other)?;
        top.vstack(&bottom)
    }

    /// Submatrix keeping the listed rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut pos = vec![usize::MAX; self.cols];
        for (k, &c) in cols.iter().enumerate() {
            pos[c] = k;
        }
        let data = rows
            .iter()
            .map(|&r| self.data[r].remap(|j| (pos[j] != usize::MAX).then_some(pos[j])))
            .collect();
        Matrix { kind: self.kind, rows: rows.len(), cols: cols.len(), data }
    }

    fn row_echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.kind, self.cols);
        for r in &self.data {
            if e.rank() == self.cols {
                break;
            }
            e.insert(r.clone());
        }
        e
    }

    pub fn rank(&self) -> usize {
        if self.rows < self.cols {
            self.transpose().row_echelon().rank()
        } else {
            self.row_echelon().rank()
        }
    }

    /// Rank together with a basis of the kernel `{v : self * v = 0}`.
    pub fn rank_kernel(&self) -> (usize, Vec<SparseVec>) {
        let e = self.row_echelon();
        (e.rank(), e.kernel_basis())
    }

    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        self.rank_kernel().1
    }

    /// Some `x` with `self * x = b`, or `None` if `b` is not in the column space.
    pub fn solve(&self, b: &SparseVec) -> Option<SparseVec> {
        let mut e = Echelon::tracking(self.kind, self.rows);
        for (j, c) in self.columns().into_iter().enumerate() {
            e.insert_tagged(c, j);
        }
        e.express(b)
    }

    /// Plain text grid, one row per line, entries separated by single spaces.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# {}x{} over {}", self.rows, self.cols, self.kind);
        for r in &self.data {
            let dense = r.to_dense(self.cols, self.kind);
            let line: Vec<String> = dense.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(s, "{}", line.join(" "));
        }
        s
    }
}

/// Rank and kernel of a matrix, checking the declared scalar kind.
pub fn matrix_rank_kernel(m: &Matrix, kind: ScalarKind) -> Result<(usize, Vec<SparseVec>)> {
    check_kind(kind, m.kind())?;
    Ok(m.rank_kernel())
}

impl serde::Serialize for SparseVec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.entries.len()))?;
        for (i, x) in &self.entries {
            seq.serialize_element(&(i, x.to_string()))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: ScalarKind = ScalarKind::Rational;

    #[test]
    fn identity_has_full_rank() {
        let (r, k) = Matrix::identity(Q, 2).rank_kernel();
        assert_eq!(r, 2);
        assert!(k.is_empty());
    }

    #[test]
    fn zero_map_kernel_is_everything() {
        let (r, k) = Matrix::zeros(Q, 3, 2).rank_kernel();
        assert_eq!(r, 0);
        assert_eq!(k.len(), 2);
    }

    #[test]
    fn proportional_rows() {
        let m = Matrix::from_i64(Q, &[&[1, 2], &[2, 4]]);
        let (r, k) = m.rank_kernel();
        assert_eq!(r, 1);
        assert_eq!(k.len(), 1);
        // (2, -1) up to scale
        let v = k[0].to_dense(2, Q);
        assert_eq!(&v[0] + &(&v[1] * &Q.from_i64(2)), Q.zero());
        assert!(m.apply(&k[0]).is_zero());
    }

    #[test]
    fn kind_mismatch_is_an_error() {
        let m = Matrix::identity(ScalarKind::Prime(5), 2);
        assert!(matrix_rank_kernel(&m, Q).is_err());
        assert!(Matrix::identity(Q, 2).mul(&m).is_err());
    }

    #[test]
    fn solve_finds_preimage() {
        let m = Matrix::from_i64(Q, &[&[1, 1, 0], &[0, 1, 1]]);
        let b = SparseVec::from_dense(&[Q.from_i64(2), Q.from_i64(3)]);
        let x = m.solve(&b).unwrap();
        assert_eq!(m.apply(&x), b);
        let z = Matrix::from_i64(Q, &[&[1, 1], &[1, 1]]);
        assert!(z.solve(&b).is_none());
    }

    #[test]
    fn text_dump() {
        let m = Matrix::from_i64(Q, &[&[1, 0], &[0, -1]]);
        assert_eq!(m.to_text(), "# 2x2 over rational\n1 0\n0 -1\n");
    }
}
