use serde::Serialize;

use crate::bimodule::{ext_window, module_hom, Bimodule};
use crate::error::Result;
use crate::linalg::{Echelon, Matrix, SparseVec};
use crate::lincat::ArrowCategorySpec;

/// Verdict for one pair: is `hom(A, A′) → Ext*(X(−,A), X(−,A′))` a quasi-isomorphism
/// in degrees up to the window?
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairVerdict {
    pub source: String,
    pub target: String,
    pub hom_dim: usize,
    pub ext: Vec<usize>,
    /// Rank of the induced map into `Ext⁰`.
    pub rank: usize,
    pub passes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaOmegaReport {
    pub lambda: Vec<PairVerdict>,
    pub omega: Vec<PairVerdict>,
}

impl LambdaOmegaReport {
    pub fn passes(&self) -> bool {
        self.lambda.iter().chain(&self.omega).all(|v| v.passes)
    }

    pub fn failures(&self) -> Vec<&PairVerdict> {
        self.lambda.iter().chain(&self.omega).filter(|v| !v.passes).collect()
    }
}

/// λ for every pair in the left category's relation (all pairs when it has none).
fn lambda_pairs(x: &Bimodule, n_max: usize, cap: usize) -> Result<Vec<PairVerdict>> {
    let a = x.left();
    let na = a.num_objects();
    let kind = x.kind();
    let mut out = Vec::new();
    for s in 0..na {
        for t in 0..na {
            if a.censoring().is_some_and(|r| !r.contains(s, t)) {
                continue;
            }
            let (xs, xt) = (x.column(s), x.column(t));
            let ext = ext_window(&xs, &xt, n_max, cap)?;
            let homs = module_hom(&xs, &xt)?;
            let h0 = homs.complex.cohomology(0)?;
            // λ(g) acts by g · − on every X(b, s).
            let mut span = Echelon::new(kind, h0.betti);
            for g in 0..a.hom_dim(s, t) {
                let maps: Vec<Matrix> = (0..x.nb())
                    .map(|b| {
                        let cols: Vec<SparseVec> = (0..x.dim(b, s)).map(|m| x.left_basis(b, s, t, g, m).clone()).collect();
                        Matrix::from_columns(kind, x.dim(b, t), &cols)
                    })
                    .collect::<Result<_>>()?;
                if let Some(class) = homs.in_basis(0, &homs.coordinates(&maps)).and_then(|v| h0.class_of(&v)) {
                    span.insert(SparseVec::from_dense(&class));
                }
            }
            let hom_dim = a.hom_dim(s, t);
            let rank = span.rank();
            let passes = rank == hom_dim && ext[0] == hom_dim && ext[1..].iter().all(|&e| e == 0);
            out.push(PairVerdict { source: a.objects()[s].clone(), target: a.objects()[t].clone(), hom_dim, ext, rank, passes });
        }
    }
    Ok(out)
}

/// Compares `𝔞(A, A′)` with `Ext*_𝔟(X(−,A), X(−,A′))` (λ) and `𝔟(B, B′)` with
/// `Ext*_{𝔞ᵒᵖ}(X(B′,−), X(B,−))` (ω) in degrees `0..=n_max`.
pub fn lambda_omega_check(spec: &ArrowCategorySpec, n_max: usize, cap: usize) -> Result<LambdaOmegaReport> {
    let lambda = lambda_pairs(&spec.x, n_max, cap)?;
    let omega = lambda_pairs(&spec.x.opposite(), n_max, cap)?
        .into_iter()
        .map(|v| PairVerdict { source: v.target, target: v.source, ..v })
        .collect();
    Ok(LambdaOmegaReport { lambda, omega })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::DEFAULT_DIM_CAP;
    use crate::lincat::{incidence_category, Algebra};
    use crate::scalar::ScalarKind;
    use crate::sites::{Poset, RingPresheaf};
    use std::sync::Arc;

    const Q: ScalarKind = ScalarKind::Rational;

    #[test]
    fn diagonal_passes_and_zero_fails() {
        let c = Arc::new(incidence_category(&RingPresheaf::constant(Poset::chain(2), Algebra::ground(Q))).unwrap());
        let r = lambda_omega_check(&ArrowCategorySpec::diagonal(c.clone()), 2, DEFAULT_DIM_CAP).unwrap();
        assert!(r.passes(), "{:?}", r);
        assert_eq!(r.lambda.len(), 3);
        let z = lambda_omega_check(&ArrowCategorySpec::new(Bimodule::zero(c.clone(), c)), 2, DEFAULT_DIM_CAP).unwrap();
        let bad = z.failures();
        assert!(bad.iter().any(|v| v.source == "x0" && v.target == "x1"));
    }
}
