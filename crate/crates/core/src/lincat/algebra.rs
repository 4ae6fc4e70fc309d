use crate::error::{Error, Result};
use crate::linalg::{Accumulator, Matrix, SparseVec};
use crate::scalar::ScalarKind;

/// A finite-dimensional associative unital algebra given by structure constants:
/// `mult[i * dim + j]` is `e_i · e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    kind: ScalarKind,
    labels: Vec<String>,
    mult: Vec<SparseVec>,
    unit: SparseVec,
}

impl Algebra {
    /// Checks shapes, associativity and the unit.
    pub fn new(kind: ScalarKind, labels: Vec<String>, mult: Vec<SparseVec>, unit: SparseVec) -> Result<Self> {
        let a = Algebra { kind, labels, mult, unit };
        a.check_shapes()?;
        if let Some(problem) = a.axiom_violations().into_iter().next() {
            return Err(Error::Validation(problem));
        }
        Ok(a)
    }

    pub(crate) fn new_unchecked(kind: ScalarKind, labels: Vec<String>, mult: Vec<SparseVec>, unit: SparseVec) -> Self {
        Algebra { kind, labels, mult, unit }
    }

    fn check_shapes(&self) -> Result<()> {
        let n = self.dim();
        if self.mult.len() != n * n {
            return Err(Error::Shape(format!("algebra of dimension {n} needs {} products, got {}", n * n, self.mult.len())));
        }
        let fits = |v: &SparseVec| v.max_index().is_none_or(|m| m < n) && v.kind_ok(self.kind);
        if !self.mult.iter().all(fits) || !fits(&self.unit) {
            return Err(Error::Shape("algebra structure constant out of range or of the wrong scalar kind".into()));
        }
        Ok(())
    }

    /// Human-readable descriptions of every failed associativity or unit law.
    pub fn axiom_violations(&self) -> Vec<String> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = self.mul(&self.mult[i * n + j], &SparseVec::unit(k, self.kind));
                    let right = self.mul(&SparseVec::unit(i, self.kind), &self.mult[j * n + k]);
                    if left != right {
                        out.push(format!(
                            "associativity fails on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        ));
                    }
                }
            }
        }
        for i in 0..n {
            let e = SparseVec::unit(i, self.kind);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                out.push(format!("unit law fails on {}", self.labels[i]));
            }
        }
        out
    }

    /// The ground field.
    pub fn ground(kind: ScalarKind) -> Self {
        Self::truncated_polynomial(kind, 1)
    }

    /// `k[x]/(xⁿ)` with basis `1, x, …, x^{n−1}`.
    pub fn truncated_polynomial(kind: ScalarKind, n: usize) -> Self {
        let labels = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        let mut mult = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                mult.push(if i + j < n { SparseVec::unit(i + j, kind) } else { SparseVec::new() });
            }
        }
        Algebra::new_unchecked(kind, labels, mult, SparseVec::unit(0, kind))
    }

    /// The dual numbers `k[ε]/(ε²)` with basis `1, e`.
    pub fn dual_numbers(kind: ScalarKind) -> Self {
        let mut a = Self::truncated_polynomial(kind, 2);
        a.labels = vec!["1".into(), "e".into()];
        a
    }

    /// Full matrix algebra `Mₙ(k)` with matrix units `e{i}{j}` (1-based).
    pub fn matrix(kind: ScalarKind, n: usize) -> Self {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        Self::matrix_units(kind, n, &pairs)
    }

    /// Upper-triangular `2×2` matrices with basis `e11, e12, e22`.
    pub fn upper_triangular(kind: ScalarKind) -> Self {
        Self::matrix_units(kind, 2, &[(0, 0), (0, 1), (1, 1)])
    }

    /// `kᵐ` with orthogonal idempotents `e1, …, em`.
    pub fn split(kind: ScalarKind, m: usize) -> Self {
        let labels = (1..=m).map(|i| format!("e{i}")).collect();
        let mut mult = Vec::with_capacity(m * m);
        for i in 0..m {
            for j in 0..m {
                mult.push(if i == j { SparseVec::unit(i, kind) } else { SparseVec::new() });
            }
        }
        let unit = SparseVec::from_entries((0..m).map(|i| (i, kind.one())).collect());
        Algebra::new_unchecked(kind, labels, mult, unit)
    }

    /// The span of the given matrix units, assumed closed under multiplication and containing the diagonal.
    fn matrix_units(kind: ScalarKind, n: usize, pairs: &[(usize, usize)]) -> Self {
        let labels = pairs.iter().map(|(i, j)| format!("e{}{}", i + 1, j + 1)).collect();
        let pos = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j));
        let mut mult = Vec::with_capacity(pairs.len() * pairs.len());
        for &(a, b) in pairs {
            for &(c, d) in pairs {
                mult.push(if b == c { SparseVec::unit(pos(a, d).expect("closed under products"), kind) } else { SparseVec::new() });
            }
        }
        let unit = SparseVec::from_entries((0..n).map(|i| (pos(i, i).expect("diagonal present"), kind.one())).collect());
        Algebra::new_unchecked(kind, labels, mult, unit)
    }

    pub fn kind(&self) -> ScalarKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &SparseVec {
        &self.unit
    }

    pub fn product(&self, i: usize, j: usize) -> &SparseVec {
        &self.mult[i * self.dim() + j]
    }

    pub fn structure_constants(&self) -> &[SparseVec] {
        &self.mult
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new(self.kind, self.dim());
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let ab = a * b;
                acc.axpy(&ab, self.product(i, j));
            }
        }
        acc.take()
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.product(i, j) == self.product(j, i)))
    }

    /// Whether `m` (columns = images of the basis of `self`) is a unital algebra map into `target`.
    pub fn is_unital_hom_to(&self, target: &Algebra, m: &Matrix) -> bool {
        if m.shape() != (target.dim(), self.dim()) {
            return false;
        }
        if m.apply(&self.unit) != target.unit {
            return false;
        }
        let cols = m.columns();
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| m.apply(self.product(i, j)) == target.mul(&cols[i], &cols[j])))
    }

    /// Returns a copy whose basis has `new_basis[k]` (old coordinates) as its `k`th vector.
    pub fn rebase(&self, new_basis: &[SparseVec], labels: Vec<String>) -> Result<Algebra> {
        let n = self.dim();
        let p = Matrix::from_columns(self.kind, n, new_basis)?;
        if new_basis.len() != n || p.rank() != n {
            return Err(Error::Validation("new algebra basis is not a basis".into()));
        }
        let to_new = |v: &SparseVec| p.solve(v).expect("invertible change of basis");
        let mut mult = Vec::with_capacity(n * n);
        for x in new_basis {
            for y in new_basis {
                mult.push(to_new(&self.mul(x, y)));
            }
        }
        Ok(Algebra::new_unchecked(self.kind, labels, mult, to_new(&self.unit)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: ScalarKind = ScalarKind::Rational;

    #[test]
    fn standard_algebras_are_valid() {
        for a in [
            Algebra::ground(Q),
            Algebra::dual_numbers(Q),
            Algebra::truncated_polynomial(Q, 4),
            Algebra::upper_triangular(Q),
            Algebra::matrix(Q, 2),
        ] {
            assert!(a.axiom_violations().is_empty(), "{:?}", a.labels());
        }
        assert_eq!(Algebra::upper_triangular(Q).dim(), 3);
        assert!(!Algebra::upper_triangular(Q).is_commutative());
    }

    #[test]
    fn planted_defect_is_found() {
        let a = Algebra::dual_numbers(Q);
        let mut mult = a.structure_constants().to_vec();
        mult[3] = SparseVec::unit(0, Q); // e·e = 1
        let ok = Algebra::new(Q, a.labels().to_vec(), mult.clone(), a.unit().clone());
        // k[e]/(e²-1) is still associative; break the unit instead
        assert!(ok.is_ok());
        mult[1] = SparseVec::new(); // 1·e = 0
        let err = Algebra::new(Q, a.labels().to_vec(), mult, a.unit().clone()).unwrap_err();
        assert!(err.to_string().contains("unit law") || err.to_string().contains("associativity"));
    }

    #[test]
    fn augmentation_is_a_unital_map() {
        let e = Algebra::dual_numbers(Q);
        let k = Algebra::ground(Q);
        let aug = Matrix::from_i64(Q, &[&[1, 0]]);
        assert!(e.is_unital_hom_to(&k, &aug));
        let bad = Matrix::from_i64(Q, &[&[1, 1]]);
        assert!(!e.is_unital_hom_to(&k, &bad));
    }
}
