use serde::Serialize;

use crate::error::{check_kind, Result};
use crate::hochschild::{HochschildComplex, HochschildSpec};
use crate::linalg::EdgeCaveat;

/// Version of every machine-readable report this crate emits.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiRow {
    pub degree: i32,
    pub dim: usize,
    pub edge_caveat: Option<EdgeCaveat>,
}

impl HochschildComplex {
    /// Betti numbers from the lowest degree up to the window edge; the edge
    /// row (degree `n_max + 1`) is only an upper bound and says so.
    pub fn betti_table(&self) -> Result<Vec<BettiRow>> {
        let hs = self.complex.cohomology_range(self.lo(), self.complex.hi())?;
        Ok(hs.into_iter().map(|h| BettiRow { degree: h.degree, dim: h.betti, edge_caveat: h.caveat }).collect())
    }
}

/// Side-by-side Betti tables of two complexes with an equality verdict over
/// the degrees that are exact on both sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub left: Vec<BettiRow>,
    pub right: Vec<BettiRow>,
    pub equal: bool,
}

impl Comparison {
    pub fn from_tables(left: Vec<BettiRow>, right: Vec<BettiRow>) -> Self {
        let exact = |rows: &[BettiRow], d: i32| rows.iter().find(|r| r.degree == d && r.edge_caveat.is_none()).map(|r| r.dim);
        let degrees: Vec<i32> = left.iter().chain(&right).map(|r| r.degree).collect();
        let equal = degrees.iter().all(|&d| match (exact(&left, d), exact(&right, d)) {
            (Some(a), Some(b)) => a == b,
            (Some(a), None) => a == 0 && !right.iter().any(|r| r.degree == d),
            (None, Some(b)) => b == 0 && !left.iter().any(|r| r.degree == d),
            (None, None) => true,
        });
        Comparison { left, right, equal }
    }

    /// Plain aligned text; edge degrees print as `≤d`.
    pub fn to_text(&self, left_name: &str, right_name: &str) -> String {
        let cell = |rows: &[BettiRow], d: i32| match rows.iter().find(|r| r.degree == d) {
            Some(r) if r.edge_caveat.is_some() => format!("≤{}", r.dim),
            Some(r) => r.dim.to_string(),
            None => "0".into(),
        };
        let mut degrees: Vec<i32> = self.left.iter().chain(&self.right).map(|r| r.degree).collect();
        degrees.sort_unstable();
        degrees.dedup();
        let w = left_name.len().max(right_name.len()).max(6);
        let mut s = format!("{:<w$}", "degree");
        for d in &degrees {
            s.push_str(&format!(" {:>5}", d));
        }
        for (name, rows) in [(left_name, &self.left), (right_name, &self.right)] {
            s.push_str(&format!("\n{:<w$}", name));
            for &d in &degrees {
                s.push_str(&format!(" {:>5}", cell(rows, d)));
            }
        }
        s.push_str(&format!("\nverdict: {}\n", if self.equal { "equal" } else { "different" }));
        s
    }
}

/// Builds both complexes and compares their Betti tables.
pub fn compare_dims(a: &HochschildSpec, b: &HochschildSpec) -> Result<Comparison> {
    check_kind(a.kind(), b.kind())?;
    let (ha, hb) = rayon::join(|| HochschildComplex::build(a), || HochschildComplex::build(b));
    Ok(Comparison::from_tables(ha?.betti_table()?, hb?.betti_table()?))
}

/// Betti table as aligned text.
pub fn betti_text(rows: &[BettiRow]) -> String {
    let mut s = String::from("degree   dim\n");
    for r in rows {
        let dim = if r.edge_caveat.is_some() { format!("≤{}", r.dim) } else { r.dim.to_string() };
        s.push_str(&format!("{:>6} {:>5}\n", r.degree, dim));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lincat::{from_algebra, opposite, Algebra};
    use crate::scalar::ScalarKind;
    use std::sync::Arc;

    const Q: ScalarKind = ScalarKind::Rational;

    #[test]
    fn opposite_of_upper_triangular() {
        let c = from_algebra(&Algebra::upper_triangular(Q)).unwrap();
        let a = HochschildSpec::diagonal(Arc::new(c.clone()), 2);
        let b = HochschildSpec::diagonal(Arc::new(opposite(&c)), 2);
        let cmp = compare_dims(&a, &b).unwrap();
        assert!(cmp.equal);
        assert_eq!(cmp.left.last().unwrap().edge_caveat, Some(EdgeCaveat::UpperBound));
        assert!(cmp.to_text("A", "Aop").contains("verdict: equal"));
    }
}
