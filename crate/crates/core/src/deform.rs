//! First- and second-order deformations of the composition of an ordinary
//! category, `μ_t = μ + tφ + t²ψ`.
//!
//! With the differential `D = −[μ, ·]` of the Hochschild complex, the `t`
//! coefficient of the associativity defect `μ_t(μ_t(a,b),c) − μ_t(a,μ_t(b,c))`
//! is `−Dφ` and the `t²` coefficient is `φ∘φ − Dψ`. So `φ` is a first-order
//! deformation iff `Dφ = 0`, and it extends to second order iff `φ∘φ = Dψ`
//! for some `ψ`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hochschild::{circle_square, HochschildComplex};
use crate::linalg::{Echelon, SparseVec};

fn require(h: &HochschildComplex) -> Result<()> {
    if !h.spec.has_diagonal_coefficients() || !h.category().is_ordinary() {
        return Err(Error::Unsupported("deformations are computed for ordinary categories with diagonal coefficients".into()));
    }
    if h.n_max() < 3 {
        return Err(Error::Validation("deformation checks need a window reaching degree 3".into()));
    }
    Ok(())
}

/// `Σ_{i+j=s} μ_i(μ_j(a,b),c) − μ_i(a,μ_j(b,c))` for each power `t^s`, where
/// `mus[0]` is ignored and replaced by the composition itself. Computed by
/// expanding products directly, without the complex's differential.
pub fn associativity_defects(h: &HochschildComplex, mus: &[&SparseVec]) -> Vec<SparseVec> {
    let c = h.category();
    let apply = |i: usize, chain: [usize; 3], g: &SparseVec, f: &SparseVec| -> SparseVec {
        // μ_i on g ∈ hom(chain[1], chain[0]), f ∈ hom(chain[2], chain[1]).
        if i == 0 {
            return c.compose(chain[2], chain[1], chain[0], g, f);
        }
        let mut acc = SparseVec::new();
        for (y, a) in g.iter() {
            for (z, b) in f.iter() {
                acc = acc.axpy(&(a * b), &h.value(2, mus[i], &chain, &[y, z]));
            }
        }
        acc
    };
    let top = 2 * (mus.len() - 1);
    let kind = h.kind();
    (0..=top)
        .map(|s| {
            h.cochain_from_fn(3, |ch, x| {
                let (xa, xb, xc) = (SparseVec::unit(x[0], kind), SparseVec::unit(x[1], kind), SparseVec::unit(x[2], kind));
                let mut acc = SparseVec::new();
                for i in 0..mus.len() {
                    let j = match s.checked_sub(i) {
                        Some(j) if j < mus.len() => j,
                        _ => continue,
                    };
                    let left = apply(j, [ch[0], ch[1], ch[2]], &xa, &xb);
                    acc = acc.add(&apply(i, [ch[0], ch[2], ch[3]], &left, &xc), kind);
                    let right = apply(j, [ch[1], ch[2], ch[3]], &xb, &xc);
                    acc = acc.sub(&apply(i, [ch[0], ch[1], ch[3]], &xa, &right), kind);
                }
                acc
            })
        })
        .collect()
}

/// A nonzero associativity defect on basis inputs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefectWitness {
    pub inputs: Vec<String>,
    /// `(output basis label, coefficient)`.
    pub defect: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FirstOrderVerdict {
    pub associative_mod_t2: bool,
    pub witness: Option<DefectWitness>,
}

fn witness(h: &HochschildComplex, defect: &SparseVec) -> Option<DefectWitness> {
    let c = h.category();
    h.supports(3).into_iter().find_map(|(chain, x)| {
        let v = h.value(3, defect, &chain, &x);
        if v.is_zero() {
            return None;
        }
        let inputs = x.iter().enumerate().map(|(j, &d)| c.hom(chain[j + 1], chain[j]).basis[d].label.clone()).collect();
        let out = c.hom(chain[3], chain[0]);
        let defect = v.iter().map(|(k, s)| (out.basis[k].label.clone(), s.to_string())).collect();
        Some(DefectWitness { inputs, defect })
    })
}

/// Is `μ + tφ` associative modulo `t²`? Decided by direct expansion of products.
pub fn first_order_check(h: &HochschildComplex, phi: &SparseVec) -> Result<FirstOrderVerdict> {
    require(h)?;
    let zero = SparseVec::new();
    let defects = associativity_defects(h, &[&zero, phi]);
    let d1 = &defects[1];
    Ok(FirstOrderVerdict { associative_mod_t2: d1.is_zero(), witness: witness(h, d1) })
}

/// The same question through the complex: is `Dφ = 0`?
pub fn is_cocycle(h: &HochschildComplex, phi: &SparseVec) -> bool {
    h.d(2, phi).is_zero()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ObstructionVerdict {
    /// `φ∘φ = Dψ`: `μ + tφ + t²ψ` is associative modulo `t³`.
    Unobstructed { psi: SparseVec },
    /// The class of `φ∘φ` in HH³, in the basis of cohomology representatives.
    Obstructed { class: Vec<String> },
}

/// The obstruction `o = φ∘φ` to extending a first-order deformation, with
/// either a second-order term `ψ` (`Dψ = o`) or its nonzero class.
pub fn obstruction_square(h: &HochschildComplex, phi: &SparseVec) -> Result<ObstructionVerdict> {
    require(h)?;
    if !is_cocycle(h, phi) {
        return Err(Error::Validation("the first-order term is not a cocycle".into()));
    }
    let o = circle_square(h, 2, phi)?;
    if !h.d(3, &o).is_zero() {
        return Err(Error::Validation("obstruction is not a cocycle; the sign conventions are inconsistent".into()));
    }
    let d2 = h.differential(2).expect("window reaches degree 3");
    if let Some(psi) = d2.solve(&o) {
        return Ok(ObstructionVerdict::Unobstructed { psi });
    }
    let h3 = h.cohomology(3)?;
    let class = h3.class_of(&o).ok_or_else(|| Error::Validation("obstruction has no class".into()))?;
    Ok(ObstructionVerdict::Obstructed { class: class.iter().map(|c| c.to_string()).collect() })
}

/// `φ₁ ~ φ₂` iff `φ₁ − φ₂ = Dψ`; returns the gauge `ψ` when it exists.
pub fn deformation_equivalence(h: &HochschildComplex, phi1: &SparseVec, phi2: &SparseVec) -> Result<Option<SparseVec>> {
    require(h)?;
    let diff = phi1.sub(phi2, h.kind());
    Ok(h.differential(1).expect("window reaches degree 2").solve(&diff))
}

/// Dimension of {first-order deformations} / {trivial ones}: the kernel of the
/// expansion defect map modulo the image of `D` on 1-cochains.
pub fn equivalence_class_dimension(h: &HochschildComplex) -> Result<usize> {
    require(h)?;
    let kind = h.kind();
    let dim2 = h.dim(2);
    let zero = SparseVec::new();
    let cols: Vec<SparseVec> = (0..dim2)
        .map(|k| {
            let e = SparseVec::unit(k, kind);
            associativity_defects(h, &[&zero, &e]).swap_remove(1)
        })
        .collect();
    let defect_map = crate::linalg::Matrix::from_columns(kind, h.dim(3), &cols)?;
    let cocycles = dim2 - defect_map.rank();
    let mut b = Echelon::new(kind, dim2);
    for c in h.differential(1).expect("window reaches degree 2").columns() {
        b.insert(c);
    }
    Ok(cocycles - b.rank())
}

/// Scalar multiple of a cochain.
pub fn scaled(phi: &SparseVec, c: i64, h: &HochschildComplex) -> SparseVec {
    phi.scale(&h.kind().from_i64(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hochschild::HochschildSpec;
    use crate::lincat::{from_algebra, Algebra};
    use crate::scalar::ScalarKind;
    use std::sync::Arc;

    const Q: ScalarKind = ScalarKind::Rational;

    fn complex(a: Algebra) -> HochschildComplex {
        HochschildComplex::build(&HochschildSpec::diagonal(Arc::new(from_algebra(&a).unwrap()), 3)).unwrap()
    }

    #[test]
    fn x_squared_equals_t() {
        let h = complex(Algebra::truncated_polynomial(Q, 2));
        let phi = h.cochain_from_fn(2, |_, x| if x == [1, 1] { SparseVec::unit(0, Q) } else { SparseVec::new() });
        let v = first_order_check(&h, &phi).unwrap();
        assert!(v.associative_mod_t2 && is_cocycle(&h, &phi));
        match obstruction_square(&h, &phi).unwrap() {
            ObstructionVerdict::Unobstructed { psi } => {
                let defects = associativity_defects(&h, &[&SparseVec::new(), &phi, &psi]);
                assert!(defects.iter().all(|d| d.is_zero()));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_cocycle_has_a_witness() {
        let h = complex(Algebra::truncated_polynomial(Q, 2));
        let phi = h.cochain_from_fn(2, |_, x| if x == [0, 1] { SparseVec::unit(0, Q) } else { SparseVec::new() });
        let v = first_order_check(&h, &phi).unwrap();
        assert!(!v.associative_mod_t2 && !is_cocycle(&h, &phi));
        assert_eq!(v.witness.unwrap().inputs.len(), 3);
    }

    #[test]
    fn dual_numbers_equivalence() {
        let h = complex(Algebra::dual_numbers(Q));
        let rep = h.cohomology(2).unwrap().representatives[0].clone();
        assert!(deformation_equivalence(&h, &rep, &rep).unwrap().unwrap().is_zero());
        assert!(deformation_equivalence(&h, &rep, &scaled(&rep, 2, &h)).unwrap().is_none());
        assert_eq!(equivalence_class_dimension(&h).unwrap(), 1);
    }
}
