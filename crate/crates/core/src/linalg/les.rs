//! Long exact cohomology sequences from short exact sequences of complexes.

use serde::Serialize;

use crate::error::{check_kind, Error, Result};
use crate::linalg::complex::{ChainMap, Cohomology, ComplexRep};
use crate::linalg::matrix::Matrix;

/// `0 → A → B → C → 0`, degreewise.
#[derive(Clone, Debug)]
pub struct SesOfComplexes {
    pub a: ComplexRep,
    pub b: ComplexRep,
    pub c: ComplexRep,
    pub i: ChainMap,
    pub q: ChainMap,
}

impl SesOfComplexes {
    /// Validates chain maps and degreewise exactness, naming the first failing degree.
    pub fn new(a: ComplexRep, b: ComplexRep, c: ComplexRep, i: ChainMap, q: ChainMap) -> Result<Self> {
        let s = SesOfComplexes { a, b, c, i, q };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        check_kind(self.a.kind(), self.b.kind())?;
        check_kind(self.a.kind(), self.c.kind())?;
        if self.a.lo() != self.b.lo() || self.b.lo() != self.c.lo() || self.a.hi() != self.b.hi() || self.b.hi() != self.c.hi() {
            return Err(Error::Shape("short exact sequence terms have different windows".into()));
        }
        self.i.verify(&self.a, &self.b)?;
        self.q.verify(&self.b, &self.c)?;
        for n in self.a.lo()..=self.a.hi() {
            let (Some(i), Some(q)) = (self.i.at(n), self.q.at(n)) else {
                return Err(Error::Shape(format!("missing map in degree {n}")));
            };
            let fail = |why: &str| Err(Error::NotExact(format!("degree {n}: {why}")));
            if !q.mul(i)?.is_zero() {
                return fail("q∘i ≠ 0");
            }
            if i.rank() != self.a.dim(n) {
                return fail("i is not injective");
            }
            if q.rank() != self.c.dim(n) {
                return fail("q is not surjective");
            }
            if self.b.dim(n) != self.a.dim(n) + self.c.dim(n) {
                return fail("dim B ≠ dim A + dim C");
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Term {
    A,
    B,
    C,
}

/// One joint of the long exact sequence and its exactness verdict.
#[derive(Clone, Debug, Serialize)]
pub struct Joint {
    pub term: Term,
    pub degree: i32,
    pub dim: usize,
    pub rank_in: Option<usize>,
    pub rank_out: Option<usize>,
    pub composition_zero: bool,
    pub exact: Option<bool>,
}

/// The long exact sequence `… → Hⁿ(A) → Hⁿ(B) → Hⁿ(C) → Hⁿ⁺¹(A) → …` over a window.
#[derive(Clone, Debug)]
pub struct LongExactSequence {
    pub lo: i32,
    pub hi: i32,
    pub h_a: Vec<Cohomology>,
    pub h_b: Vec<Cohomology>,
    pub h_c: Vec<Cohomology>,
    /// Induced `Hⁿ(A) → Hⁿ(B)` per degree.
    pub i_star: Vec<Matrix>,
    /// Induced `Hⁿ(B) → Hⁿ(C)` per degree.
    pub q_star: Vec<Matrix>,
    /// Connecting `Hⁿ(C) → Hⁿ⁺¹(A)` for `n` in `lo..hi`.
    pub connecting: Vec<Matrix>,
    pub joints: Vec<Joint>,
}

impl LongExactSequence {
    pub fn all_exact(&self) -> bool {
        self.joints.iter().all(|j| j.composition_zero && j.exact != Some(false))
    }

    pub fn dims(&self, t: Term) -> Vec<usize> {
        let h = match t {
            Term::A => &self.h_a,
            Term::B => &self.h_b,
            Term::C => &self.h_c,
        };
        h.iter().map(|h| h.betti).collect()
    }
}

/// Connecting map by the snake construction: lift, differentiate, pull back.
fn connecting_map(s: &SesOfComplexes, n: i32, hc: &Cohomology, ha_next: &Cohomology) -> Result<Matrix> {
    let q = s.q.at(n).expect("validated");
    let i_next = s.i.at(n + 1).ok_or_else(|| Error::Shape(format!("no map i in degree {}", n + 1)))?;
    let d_b = s.b.differential(n).ok_or_else(|| Error::Shape(format!("no differential of B in degree {n}")))?;
    let mut cols = Vec::with_capacity(hc.betti);
    for z in &hc.representatives {
        let lift = q.solve(z).ok_or_else(|| Error::NotExact(format!("q not surjective in degree {n}")))?;
        let db = d_b.apply(&lift);
        let a = i_next
            .solve(&db)
            .ok_or_else(|| Error::NotExact(format!("d(lift) not in the image of i in degree {}", n + 1)))?;
        let cls = ha_next
            .class_of(&a)
            .ok_or_else(|| Error::NotExact(format!("connecting image is not a cocycle in degree {}", n + 1)))?;
        cols.push(crate::linalg::matrix::SparseVec::from_dense(&cls));
    }
    Matrix::from_columns(q.kind(), ha_next.betti, &cols)
}

/// Assembles the long exact sequence in degrees `[lo, hi]` and checks
/// exactness at every joint by ranks.
pub fn les_from_ses(s: &SesOfComplexes, lo: i32, hi: i32) -> Result<LongExactSequence> {
    if lo < s.a.lo() || hi > s.a.hi() || lo > hi {
        return Err(Error::DegreeOutsideWindow { degree: if lo < s.a.lo() { lo } else { hi }, lo: s.a.lo(), hi: s.a.hi() });
    }
    let h_a = s.a.cohomology_range(lo, hi)?;
    let h_b = s.b.cohomology_range(lo, hi)?;
    let h_c = s.c.cohomology_range(lo, hi)?;
    let mut i_star = Vec::new();
    let mut q_star = Vec::new();
    let mut connecting = Vec::new();
    for (k, n) in (lo..=hi).enumerate() {
        i_star.push(s.i.induced(n, &h_a[k], &h_b[k])?);
        q_star.push(s.q.induced(n, &h_b[k], &h_c[k])?);
        if n < hi {
            connecting.push(connecting_map(s, n, &h_c[k], &h_a[k + 1])?);
        }
    }

    // Flatten into H(A)^lo, H(B)^lo, H(C)^lo, H(A)^{lo+1}, ... with the maps between them.
    let mut terms: Vec<(Term, i32, usize)> = Vec::new();
    let mut maps: Vec<&Matrix> = Vec::new();
    for (k, n) in (lo..=hi).enumerate() {
        terms.push((Term::A, n, h_a[k].betti));
        terms.push((Term::B, n, h_b[k].betti));
        terms.push((Term::C, n, h_c[k].betti));
        maps.push(&i_star[k]);
        maps.push(&q_star[k]);
        if n < hi {
            maps.push(&connecting[k]);
        }
    }
    // Zero maps at the ends are genuine when the complexes vanish beyond the window.
    let bottom_closed = lo == s.a.lo() && s.a.complete_below() && s.c.complete_below();
    let mut joints = Vec::with_capacity(terms.len());
    for (t, &(term, degree, dim)) in terms.iter().enumerate() {
        let incoming = if t > 0 { Some(maps[t - 1]) } else { None };
        let outgoing = maps.get(t).copied();
        let rank_in = match incoming {
            Some(m) => Some(m.rank()),
            None if bottom_closed => Some(0),
            None => None,
        };
        let rank_out = outgoing.map(|m| m.rank());
        let composition_zero = match (incoming, outgoing) {
            (Some(f), Some(g)) => g.mul(f)?.is_zero(),
            _ => true,
        };
        let exact = match (rank_in, rank_out) {
            (Some(a), Some(b)) => Some(a + b == dim),
            _ => None,
        };
        joints.push(Joint { term, degree, dim, rank_in, rank_out, composition_zero, exact });
    }
    Ok(LongExactSequence { lo, hi, h_a, h_b, h_c, i_star, q_star, connecting, joints })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ScalarKind;

    const Q: ScalarKind = ScalarKind::Rational;

    fn zero_complex(lo: i32, len: usize) -> ComplexRep {
        ComplexRep::new(Q, lo, vec![0; len], (1..len).map(|_| Matrix::zeros(Q, 0, 0)).collect(), true, true).unwrap()
    }

    #[test]
    fn degenerate_sequence_has_zero_connecting_maps() {
        // A = B = (k --id--> k) shifted; C = 0
        let a = ComplexRep::new(Q, 0, vec![1, 1, 0], vec![Matrix::zeros(Q, 1, 1), Matrix::zeros(Q, 0, 1)], true, true).unwrap();
        let id = ChainMap::new(0, vec![Matrix::identity(Q, 1), Matrix::identity(Q, 1), Matrix::zeros(Q, 0, 0)]);
        let zero = ChainMap::new(0, vec![Matrix::zeros(Q, 0, 1), Matrix::zeros(Q, 0, 1), Matrix::zeros(Q, 0, 0)]);
        let s = SesOfComplexes::new(a.clone(), a, zero_complex(0, 3), id, zero).unwrap();
        let les = les_from_ses(&s, 0, 1).unwrap();
        assert!(les.all_exact());
        assert!(les.connecting.iter().all(|m| m.is_zero()));
        assert_eq!(les.dims(Term::A), les.dims(Term::B));
    }

    #[test]
    fn snake_on_smallest_nonsplit_sequence() {
        // 0 → (0 → k) → (k --id--> k) → (k → 0) → 0
        let a = ComplexRep::new(Q, 0, vec![0, 1], vec![Matrix::zeros(Q, 1, 0)], true, true).unwrap();
        let b = ComplexRep::new(Q, 0, vec![1, 1], vec![Matrix::identity(Q, 1)], true, true).unwrap();
        let c = ComplexRep::new(Q, 0, vec![1, 0], vec![Matrix::zeros(Q, 0, 1)], true, true).unwrap();
        let i = ChainMap::new(0, vec![Matrix::zeros(Q, 1, 0), Matrix::identity(Q, 1)]);
        let q = ChainMap::new(0, vec![Matrix::identity(Q, 1), Matrix::zeros(Q, 0, 1)]);
        let s = SesOfComplexes::new(a, b, c, i, q).unwrap();
        let les = les_from_ses(&s, 0, 1).unwrap();
        assert_eq!(les.connecting[0].shape(), (1, 1));
        assert_eq!(les.connecting[0].rank(), 1);
        assert!(les.all_exact());
    }

    #[test]
    fn reports_failing_degree() {
        let a = ComplexRep::new(Q, 0, vec![1], vec![], true, true).unwrap();
        let z = ChainMap::new(0, vec![Matrix::zeros(Q, 1, 1)]);
        let q = ChainMap::new(0, vec![Matrix::zeros(Q, 0, 1)]);
        let err = SesOfComplexes::new(a.clone(), a, zero_complex(0, 1), z, q).unwrap_err();
        assert!(err.to_string().contains("degree 0"));
    }
}
