//! Cup product, pre-Lie composition and Gerstenhaber bracket on cochains of an
//! ordinary category with diagonal coefficients.
//!
//! Conventions (inputs in composition order, `x_j ∈ hom(B_j, B_{j−1})`):
//!
//! * `(f ∪ g)(x₁…x_{m+n}) = f(x₁…x_m) ∘ g(x_{m+1}…x_{m+n})`
//! * `(f ∘ g)(x₁…) = Σᵢ (−1)^{i(n−1)} f(x₁…x_i, g(x_{i+1}…x_{i+n}), …)`
//! * `[f, g] = f ∘ g − (−1)^{(m−1)(n−1)} g ∘ f`
//! * the complex differential satisfies `d f = −[μ, f]`, with `μ` the composition.

use crate::error::{Error, Result};
use crate::hochschild::HochschildComplex;
use crate::linalg::SparseVec;
use crate::scalar::Scalar;

fn closed_formula(h: &HochschildComplex) -> Result<()> {
    if !h.spec.has_diagonal_coefficients() {
        return Err(Error::Validation("cup product and bracket need diagonal coefficients".into()));
    }
    if !h.category().is_ordinary() {
        return Err(Error::Unsupported("cup product and bracket are only implemented for ordinary categories".into()));
    }
    Ok(())
}

fn check_degree(h: &HochschildComplex, n: usize) -> Result<i32> {
    let n = n as i32;
    if !h.complex.in_window(n) {
        return Err(Error::DegreeOutsideWindow { degree: n, lo: h.complex.lo(), hi: h.complex.hi() });
    }
    Ok(n)
}

/// The composition 2-cochain `μ(x₁, x₂) = x₁ ∘ x₂`.
pub fn composition_cochain(h: &HochschildComplex) -> Result<SparseVec> {
    closed_formula(h)?;
    let c = h.category();
    Ok(h.cochain_from_fn(check_degree(h, 2)?, |chain, x| c.compose_basis(chain[2], chain[1], chain[0], x[0], x[1]).clone()))
}

/// The 0-cochain of identities.
pub fn unit_cochain(h: &HochschildComplex) -> Result<SparseVec> {
    closed_formula(h)?;
    let c = h.category();
    Ok(h.cochain_from_fn(0, |chain, _| c.identity(chain[0]).clone()))
}

pub fn cup(h: &HochschildComplex, m: usize, f: &SparseVec, n: usize, g: &SparseVec) -> Result<SparseVec> {
    closed_formula(h)?;
    let c = h.category();
    let deg = check_degree(h, m + n)?;
    Ok(h.cochain_from_fn(deg, |chain, x| {
        let fv = h.value(m as i32, f, &chain[..=m], &x[..m]);
        if fv.is_zero() {
            return SparseVec::new();
        }
        let gv = h.value(n as i32, g, &chain[m..], &x[m..]);
        c.compose(chain[m + n], chain[m], chain[0], &fv, &gv)
    }))
}

/// The pre-Lie (circle) composition `f ∘ g` of an `m`-cochain and an `n`-cochain.
pub fn pre_lie(h: &HochschildComplex, m: usize, f: &SparseVec, n: usize, g: &SparseVec) -> Result<SparseVec> {
    closed_formula(h)?;
    if m == 0 {
        return Ok(SparseVec::new());
    }
    let kind = h.kind();
    let deg = check_degree(h, m + n - 1)?;
    Ok(h.cochain_from_fn(deg, |chain, x| {
        let mut acc = SparseVec::new();
        for i in 0..m {
            let gv = h.value(n as i32, g, &chain[i..=i + n], &x[i..i + n]);
            if gv.is_zero() {
                continue;
            }
            let sign = Scalar::parity((i * (n + 1)) as i64, kind);
            let fchain = [&chain[..=i], &chain[i + n..]].concat();
            let mut digits = [&x[..i], &[0], &x[i + n..]].concat();
            for (y, c) in gv.iter() {
                digits[i] = y;
                acc = acc.axpy(&(&sign * c), &h.value(m as i32, f, &fchain, &digits));
            }
        }
        acc
    }))
}

pub fn bracket(h: &HochschildComplex, m: usize, f: &SparseVec, n: usize, g: &SparseVec) -> Result<SparseVec> {
    let fg = pre_lie(h, m, f, n, g)?;
    let gf = pre_lie(h, n, g, m, f)?;
    let sign = Scalar::parity(((m as i64) - 1) * ((n as i64) - 1), h.kind());
    Ok(fg.axpy(&-sign, &gf))
}

/// `f ∘ f`: for a 2-cochain, the `t²` associativity defect of `μ + t f`.
pub fn circle_square(h: &HochschildComplex, m: usize, f: &SparseVec) -> Result<SparseVec> {
    pre_lie(h, m, f, m, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hochschild::HochschildSpec;
    use crate::lincat::{from_algebra, Algebra};
    use crate::scalar::ScalarKind;
    use std::sync::Arc;

    const Q: ScalarKind = ScalarKind::Rational;

    fn dual(n_max: usize) -> HochschildComplex {
        let c = Arc::new(from_algebra(&Algebra::dual_numbers(Q)).unwrap());
        HochschildComplex::build(&HochschildSpec::diagonal(c, n_max)).unwrap()
    }

    #[test]
    fn unit_law() {
        let h = dual(3);
        let u = unit_cochain(&h).unwrap();
        let g = h.cochain_from_fn(2, |_, x| SparseVec::unit((x[0] + x[1]) % 2, Q));
        assert_eq!(cup(&h, 0, &u, 2, &g).unwrap(), g);
        assert_eq!(cup(&h, 2, &g, 0, &u).unwrap(), g);
    }

    #[test]
    fn differential_is_minus_bracket_with_mu() {
        let h = dual(3);
        let mu = composition_cochain(&h).unwrap();
        for n in 0..3usize {
            let f = h.cochain_from_fn(n as i32, |_, x| SparseVec::from_entries(vec![(x.len() % 2, Q.from_i64(x.iter().sum::<usize>() as i64 + 1))]));
            let df = h.d(n as i32, &f);
            assert_eq!(df, bracket(&h, 2, &mu, n, &f).unwrap().neg(), "degree {n}");
        }
    }

    #[test]
    fn derivation_brackets_commute_as_operators() {
        let h = dual(2);
        // D(ε) = ε and D(1) = 0: the Euler derivation; its self-bracket vanishes.
        let d = h.cochain_from_fn(1, |_, x| if x[0] == 1 { SparseVec::unit(1, Q) } else { SparseVec::new() });
        assert!(bracket(&h, 1, &d, 1, &d).unwrap().is_zero());
        assert!(h.d(1, &d).is_zero());
    }
}
