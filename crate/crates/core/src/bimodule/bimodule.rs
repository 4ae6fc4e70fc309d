use std::sync::Arc;

use crate::error::{check_kind, Error, Result};
use crate::linalg::{Accumulator, SparseVec};
use crate::lincat::{from_algebra, opposite, Algebra, Axiom, FinLinCat, GradedSpace, Relation, ValidationReport};
use crate::scalar::{Scalar, ScalarKind};

/// A bimodule `M(b, a)` over a left category 𝔞 and a right category 𝔟:
/// covariant in `a ∈ 𝔞`, contravariant in `b ∈ 𝔟`.
///
/// Action tables: `left[(b, a, a')]` at `g * dim M(b,a) + m` is `g · m ∈ M(b,a')`
/// for `g ∈ 𝔞(a,a')`; `right[(b, b', a)]` at `m * dim 𝔟(b,b') + f` is
/// `m · f ∈ M(b,a)` for `m ∈ M(b',a)`, `f ∈ 𝔟(b,b')`.
#[derive(Clone, Debug)]
pub struct Bimodule {
    left: Arc<FinLinCat>,
    right: Arc<FinLinCat>,
    spaces: Vec<GradedSpace>,
    left_act: Vec<Vec<SparseVec>>,
    right_act: Vec<Vec<SparseVec>>,
}

/// A right module over 𝔟, stored as a bimodule whose left category is the ground field.
pub type OneSidedModule = Bimodule;

fn same_category(x: &Arc<FinLinCat>, y: &Arc<FinLinCat>) -> bool {
    Arc::ptr_eq(x, y) || **x == **y
}

impl Bimodule {
    /// Builds action tables from basis-level rules and checks shapes.
    pub fn build(
        left: Arc<FinLinCat>,
        right: Arc<FinLinCat>,
        spaces: Vec<GradedSpace>,
        act_left: impl Fn(usize, usize, usize, usize, usize) -> SparseVec,
        act_right: impl Fn(usize, usize, usize, usize, usize) -> SparseVec,
    ) -> Result<Self> {
        check_kind(left.kind(), right.kind())?;
        let (na, nb) = (left.num_objects(), right.num_objects());
        if spaces.len() != na * nb {
            return Err(Error::Shape(format!("bimodule needs {} spaces, got {}", na * nb, spaces.len())));
        }
        let sp = |b: usize, a: usize| &spaces[b * na + a];
        let mut left_act = Vec::with_capacity(nb * na * na);
        for b in 0..nb {
            for a in 0..na {
                for a2 in 0..na {
                    let (dg, dm) = (left.hom_dim(a, a2), sp(b, a).dim());
                    let mut t = Vec::with_capacity(dg * dm);
                    for g in 0..dg {
                        for m in 0..dm {
                            t.push(act_left(b, a, a2, g, m));
                        }
                    }
                    left_act.push(t);
                }
            }
        }
        let mut right_act = Vec::with_capacity(nb * nb * na);
        for b in 0..nb {
            for b2 in 0..nb {
                for a in 0..na {
                    let (dm, df) = (sp(b2, a).dim(), right.hom_dim(b, b2));
                    let mut t = Vec::with_capacity(dm * df);
                    for m in 0..dm {
                        for f in 0..df {
                            t.push(act_right(b, b2, a, m, f));
                        }
                    }
                    right_act.push(t);
                }
            }
        }
        let out = Bimodule { left, right, spaces, left_act, right_act };
        out.check_shapes()?;
        Ok(out)
    }

    fn check_shapes(&self) -> Result<()> {
        let kind = self.kind();
        let fits = |v: &SparseVec, dim: usize| v.max_index().is_none_or(|m| m < dim) && v.kind_ok(kind);
        for b in 0..self.nb() {
            for a in 0..self.na() {
                let s = self.space(b, a);
                if s.differential.len() != s.dim() || !s.differential.iter().all(|d| fits(d, s.dim())) {
                    return Err(Error::Shape("bimodule differential does not fit its space".into()));
                }
                for a2 in 0..self.na() {
                    if !self.left_table(b, a, a2).iter().all(|v| fits(v, self.dim(b, a2))) {
                        return Err(Error::Shape("left action lands outside its space".into()));
                    }
                }
                for b2 in 0..self.nb() {
                    if !self.right_table(b2, b, a).iter().all(|v| fits(v, self.dim(b2, a))) {
                        return Err(Error::Shape("right action lands outside its space".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// The diagonal bimodule `(A, A′) ↦ hom(A, A′)` with composition actions.
    pub fn diagonal(c: Arc<FinLinCat>) -> Self {
        let n = c.num_objects();
        let spaces = (0..n * n).map(|k| c.hom(k / n, k % n).clone()).collect();
        let cc = c.clone();
        let c2 = c.clone();
        Bimodule::build(c.clone(), c, spaces, |b, a, a2, g, m| cc.compose_basis(b, a, a2, g, m).clone(), |b, b2, a, m, f| {
            c2.compose_basis(b, b2, a, m, f).clone()
        })
        .expect("diagonal bimodule is well shaped")
    }

    /// The zero bimodule.
    pub fn zero(left: Arc<FinLinCat>, right: Arc<FinLinCat>) -> Self {
        let spaces = vec![GradedSpace::zero(); left.num_objects() * right.num_objects()];
        Bimodule::build(left, right, spaces, |_, _, _, _, _| SparseVec::new(), |_, _, _, _, _| SparseVec::new())
            .expect("zero bimodule is well shaped")
    }

    /// The ground field as a one-object category.
    pub fn ground_category(kind: ScalarKind) -> Arc<FinLinCat> {
        Arc::new(from_algebra(&Algebra::ground(kind)).expect("ground field"))
    }

    /// The representable right module `𝔟(−, B)`.
    pub fn representable(right: Arc<FinLinCat>, b: usize) -> OneSidedModule {
        let k = Self::ground_category(right.kind());
        let n = right.num_objects();
        let spaces = (0..n).map(|x| right.hom(x, b).clone()).collect();
        let r = right.clone();
        let kind = right.kind();
        Bimodule::build(k, right, spaces, |_, _, _, _, m| SparseVec::unit(m, kind), |x, x2, _, m, f| {
            r.compose_basis(x, x2, b, m, f).clone()
        })
        .expect("representable is well shaped")
    }

    /// The right 𝔟-module `X(−, A)` obtained by fixing the covariant argument.
    pub fn column(&self, a: usize) -> OneSidedModule {
        let k = Self::ground_category(self.kind());
        let kind = self.kind();
        let spaces = (0..self.nb()).map(|b| self.space(b, a).clone()).collect();
        Bimodule::build(k, self.right.clone(), spaces, |_, _, _, _, m| SparseVec::unit(m, kind), |b, b2, _, m, f| {
            self.right_basis(b, b2, a, m, f).clone()
        })
        .expect("column module is well shaped")
    }

    /// `Mᵒᵖ(a, b) = M(b, a)` as a bimodule over `(𝔟ᵒᵖ, 𝔞ᵒᵖ)`, with Koszul signs.
    pub fn opposite(&self) -> Bimodule {
        let lop = Arc::new(opposite(&self.right));
        let rop = Arc::new(opposite(&self.left));
        let (na, nb) = (self.na(), self.nb());
        let spaces = (0..na).flat_map(|a| (0..nb).map(move |b| (a, b))).map(|(a, b)| self.space(b, a).clone()).collect();
        let sign = |v: &SparseVec, odd: bool| if odd { v.neg() } else { v.clone() };
        Bimodule::build(
            lop,
            rop,
            spaces,
            // g ∈ 𝔟ᵒᵖ(b,b′) = 𝔟(b′,b) on m ∈ M(b,a): m · g ∈ M(b′,a)
            |a, b, b2, g, m| {
                let odd = (self.right.hom(b2, b).degree(g) * self.space(b, a).degree(m)) % 2 != 0;
                sign(self.right_basis(b2, b, a, m, g), odd)
            },
            // m ∈ M(b,a′), f ∈ 𝔞ᵒᵖ(a,a′) = 𝔞(a′,a): f · m ∈ M(b,a)
            |a, a2, b, m, f| {
                let odd = (self.left.hom(a2, a).degree(f) * self.space(b, a2).degree(m)) % 2 != 0;
                sign(self.left_basis(b, a2, a, f, m), odd)
            },
        )
        .expect("opposite bimodule is well shaped")
    }

    pub fn kind(&self) -> ScalarKind {
        self.left.kind()
    }

    pub fn left(&self) -> &Arc<FinLinCat> {
        &self.left
    }

    pub fn right(&self) -> &Arc<FinLinCat> {
        &self.right
    }

    pub fn na(&self) -> usize {
        self.left.num_objects()
    }

    pub fn nb(&self) -> usize {
        self.right.num_objects()
    }

    pub fn space(&self, b: usize, a: usize) -> &GradedSpace {
        &self.spaces[b * self.na() + a]
    }

    pub fn spaces(&self) -> &[GradedSpace] {
        &self.spaces
    }

    pub fn dim(&self, b: usize, a: usize) -> usize {
        self.space(b, a).dim()
    }

    pub fn total_dim(&self) -> usize {
        self.spaces.iter().map(|s| s.dim()).sum()
    }

    pub fn is_diagonal_over(&self, c: &Arc<FinLinCat>) -> bool {
        same_category(&self.left, c) && same_category(&self.right, c)
    }

    pub fn is_over_one_category(&self) -> bool {
        same_category(&self.left, &self.right)
    }

    pub fn left_table(&self, b: usize, a: usize, a2: usize) -> &[SparseVec] {
        let na = self.na();
        &self.left_act[(b * na + a) * na + a2]
    }

    pub fn right_table(&self, b: usize, b2: usize, a: usize) -> &[SparseVec] {
        let (na, nb) = (self.na(), self.nb());
        &self.right_act[(b * nb + b2) * na + a]
    }

    /// `g · m` for basis `g ∈ 𝔞(a,a′)`, `m ∈ M(b,a)`.
    pub fn left_basis(&self, b: usize, a: usize, a2: usize, g: usize, m: usize) -> &SparseVec {
        &self.left_table(b, a, a2)[g * self.dim(b, a) + m]
    }

    /// `m · f` for basis `m ∈ M(b′,a)`, `f ∈ 𝔟(b,b′)`.
    pub fn right_basis(&self, b: usize, b2: usize, a: usize, m: usize, f: usize) -> &SparseVec {
        &self.right_table(b, b2, a)[m * self.right.hom_dim(b, b2) + f]
    }

    pub fn act_left(&self, b: usize, a: usize, a2: usize, g: &SparseVec, m: &SparseVec) -> SparseVec {
        let t = self.left_table(b, a, a2);
        let dm = self.dim(b, a);
        let mut acc = Accumulator::new(self.kind(), self.dim(b, a2));
        for (i, x) in g.iter() {
            for (j, y) in m.iter() {
                acc.axpy(&(x * y), &t[i * dm + j]);
            }
        }
        acc.take()
    }

    pub fn act_right(&self, b: usize, b2: usize, a: usize, m: &SparseVec, f: &SparseVec) -> SparseVec {
        let t = self.right_table(b, b2, a);
        let df = self.right.hom_dim(b, b2);
        let mut acc = Accumulator::new(self.kind(), self.dim(b, a));
        for (i, x) in m.iter() {
            for (j, y) in f.iter() {
                acc.axpy(&(x * y), &t[i * df + j]);
            }
        }
        acc.take()
    }

    /// The internal differential applied to a vector of `M(b, a)`.
    pub fn d(&self, b: usize, a: usize, v: &SparseVec) -> SparseVec {
        let s = self.space(b, a);
        let mut acc = Accumulator::new(self.kind(), s.dim());
        for (i, x) in v.iter() {
            acc.axpy(x, &s.differential[i]);
        }
        acc.take()
    }

    pub fn has_differential(&self) -> bool {
        self.spaces.iter().any(|s| s.has_differential())
    }

    fn name(&self, b: usize, a: usize, m: usize) -> String {
        let s = self.space(b, a);
        s.basis[m].label.clone()
    }

    /// Checks action associativity, units, homogeneity and Leibniz rules.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::default();
        let (na, nb) = (self.na(), self.nb());
        let kind = self.kind();
        let (l, r) = (&*self.left, &*self.right);
        let u = |i: usize| SparseVec::unit(i, kind);
        for b in 0..nb {
            for a in 0..na {
                let s = self.space(b, a);
                for m in 0..s.dim() {
                    let mv = u(m);
                    if self.act_left(b, a, a, l.identity(a), &mv) != mv || self.act_right(b, b, a, &mv, r.identity(b)) != mv {
                        rep.push(Axiom::Unit, format!("identity does not act trivially on {}", self.name(b, a, m)));
                    }
                    if s.differential[m].iter().any(|(j, _)| s.degree(j) != s.degree(m) + 1) {
                        rep.push(Axiom::Differential, format!("d({}) is not homogeneous", self.name(b, a, m)));
                    }
                    if !self.d(b, a, &s.differential[m]).is_zero() {
                        rep.push(Axiom::Differential, format!("d(d({})) ≠ 0", self.name(b, a, m)));
                    }
                }
                // Left associativity (g′ ∘ g) · m = g′ · (g · m) and homogeneity.
                for a2 in 0..na {
                    for a3 in 0..na {
                        for g2 in 0..l.hom_dim(a2, a3) {
                            for g in 0..l.hom_dim(a, a2) {
                                let gg = l.compose_basis(a, a2, a3, g2, g);
                                for m in 0..s.dim() {
                                    let lhs = self.act_left(b, a, a3, gg, &u(m));
                                    let rhs = self.act_left(b, a2, a3, &u(g2), self.left_basis(b, a, a2, g, m));
                                    if lhs != rhs {
                                        rep.push(
                                            Axiom::Associativity,
                                            format!("left action on ({}, {}, {})", l.hom(a2, a3).basis[g2].label, l.hom(a, a2).basis[g].label, self.name(b, a, m)),
                                        );
                                    }
                                }
                            }
                        }
                    }
                    for g in 0..l.hom_dim(a, a2) {
                        for m in 0..s.dim() {
                            let deg = l.hom(a, a2).degree(g) + s.degree(m);
                            if self.left_basis(b, a, a2, g, m).iter().any(|(j, _)| self.space(b, a2).degree(j) != deg) {
                                rep.push(Axiom::Degree, format!("left action on ({}, {})", l.hom(a, a2).basis[g].label, self.name(b, a, m)));
                            }
                        }
                    }
                }
                // Right associativity (m · f) · f′ = m · (f ∘ f′) for m ∈ M(b,a), f ∈ 𝔟(b′,b), f′ ∈ 𝔟(b″,b′).
                for b2 in 0..nb {
                    for b3 in 0..nb {
                        for f in 0..r.hom_dim(b2, b) {
                            for f2 in 0..r.hom_dim(b3, b2) {
                                let ff = r.compose_basis(b3, b2, b, f, f2);
                                for m in 0..s.dim() {
                                    let lhs = self.act_right(b3, b2, a, self.right_basis(b2, b, a, m, f), &u(f2));
                                    let rhs = self.act_right(b3, b, a, &u(m), ff);
                                    if lhs != rhs {
                                        rep.push(
                                            Axiom::Associativity,
                                            format!("right action on ({}, {}, {})", self.name(b, a, m), r.hom(b2, b).basis[f].label, r.hom(b3, b2).basis[f2].label),
                                        );
                                    }
                                }
                            }
                        }
                    }
                    for f in 0..r.hom_dim(b2, b) {
                        for m in 0..s.dim() {
                            let deg = r.hom(b2, b).degree(f) + s.degree(m);
                            if self.right_basis(b2, b, a, m, f).iter().any(|(j, _)| self.space(b2, a).degree(j) != deg) {
                                rep.push(Axiom::Degree, format!("right action on ({}, {})", self.name(b, a, m), r.hom(b2, b).basis[f].label));
                            }
                        }
                    }
                    // Middle: (g · m) · f = g · (m · f).
                    for a2 in 0..na {
                        for g in 0..l.hom_dim(a, a2) {
                            for f in 0..r.hom_dim(b2, b) {
                                for m in 0..s.dim() {
                                    let lhs = self.act_right(b2, b, a2, self.left_basis(b, a, a2, g, m), &u(f));
                                    let rhs = self.act_left(b2, a, a2, &u(g), self.right_basis(b2, b, a, m, f));
                                    if lhs != rhs {
                                        rep.push(
                                            Axiom::Associativity,
                                            format!("two-sided action on ({}, {}, {})", l.hom(a, a2).basis[g].label, self.name(b, a, m), r.hom(b2, b).basis[f].label),
                                        );
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        if self.has_differential() || l.has_differential() || r.has_differential() {
            self.check_leibniz(&mut rep);
        }
        rep
    }

    fn check_leibniz(&self, rep: &mut ValidationReport) {
        let (na, nb) = (self.na(), self.nb());
        let kind = self.kind();
        let (l, r) = (&*self.left, &*self.right);
        let u = |i: usize| SparseVec::unit(i, kind);
        for b in 0..nb {
            for a in 0..na {
                for m in 0..self.dim(b, a) {
                    let mv = u(m);
                    let dm = self.d(b, a, &mv);
                    let deg_m = self.space(b, a).degree(m) as i64;
                    for a2 in 0..na {
                        for g in 0..l.hom_dim(a, a2) {
                            let gv = u(g);
                            let lhs = self.d(b, a2, self.left_basis(b, a, a2, g, m));
                            let sign = Scalar::parity(l.hom(a, a2).degree(g) as i64, kind);
                            let rhs = self.act_left(b, a, a2, &l.d(a, a2, &gv), &mv).axpy(&sign, &self.act_left(b, a, a2, &gv, &dm));
                            if lhs != rhs {
                                rep.push(Axiom::Leibniz, format!("left action on ({}, {})", l.hom(a, a2).basis[g].label, self.name(b, a, m)));
                            }
                        }
                    }
                    for b2 in 0..nb {
                        for f in 0..r.hom_dim(b2, b) {
                            let fv = u(f);
                            let lhs = self.d(b2, a, self.right_basis(b2, b, a, m, f));
                            let sign = Scalar::parity(deg_m, kind);
                            let rhs = self.act_right(b2, b, a, &dm, &fv).axpy(&sign, &self.act_right(b2, b, a, &mv, &r.d(b2, b, &fv)));
                            if lhs != rhs {
                                rep.push(Axiom::Leibniz, format!("right action on ({}, {})", self.name(b, a, m), r.hom(b2, b).basis[f].label));
                            }
                        }
                    }
                }
            }
        }
    }

    /// The sub-bimodule supported on a relation: `M₀(A,A′) = M(A,A′)` if
    /// `(A,A′) ∈ r`, else 0. Fails unless `r` is transitive and the truncation
    /// is stable under both actions.
    pub fn truncate_by_relation(&self, r: &Relation) -> Result<Bimodule> {
        if !self.is_over_one_category() {
            return Err(Error::Validation("truncation needs a bimodule over a single category".into()));
        }
        let n = self.na();
        if r.size() != n {
            return Err(Error::Shape("relation size does not match the object count".into()));
        }
        let obj = |i: usize| self.left.objects()[i].clone();
        if let Some((i, j, k)) = r.transitivity_failure() {
            return Err(Error::Validation(format!("relation is not transitive on ({}, {}, {})", obj(i), obj(j), obj(k))));
        }
        for b in 0..n {
            for a in 0..n {
                if !r.contains(b, a) {
                    continue;
                }
                for a2 in 0..n {
                    if !r.contains(b, a2) && self.left_table(b, a, a2).iter().any(|v| !v.is_zero()) {
                        return Err(Error::Validation(format!(
                            "truncation is not stable: the left action moves M({}, {}) into M({}, {}) outside the relation",
                            obj(b), obj(a), obj(b), obj(a2)
                        )));
                    }
                }
                for b2 in 0..n {
                    if !r.contains(b2, a) && self.right_table(b2, b, a).iter().any(|v| !v.is_zero()) {
                        return Err(Error::Validation(format!(
                            "truncation is not stable: the right action moves M({}, {}) into M({}, {}) outside the relation",
                            obj(b), obj(a), obj(b2), obj(a)
                        )));
                    }
                }
            }
        }
        let spaces = (0..n * n).map(|k| if r.contains(k / n, k % n) { self.spaces[k].clone() } else { GradedSpace::zero() }).collect();
        Bimodule::build(
            self.left.clone(),
            self.right.clone(),
            spaces,
            |b, a, a2, g, m| if r.contains(b, a) { self.left_basis(b, a, a2, g, m).clone() } else { SparseVec::new() },
            |b, b2, a, m, f| if r.contains(b2, a) { self.right_basis(b, b2, a, m, f).clone() } else { SparseVec::new() },
        )
    }

    /// Internal constructor for callers that already hold well-shaped tables.
    pub(crate) fn raw(
        left: Arc<FinLinCat>,
        right: Arc<FinLinCat>,
        spaces: Vec<GradedSpace>,
        left_act: Vec<Vec<SparseVec>>,
        right_act: Vec<Vec<SparseVec>>,
    ) -> Self {
        Bimodule { left, right, spaces, left_act, right_act }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lincat::incidence_category;
    use crate::sites::{Poset, RingPresheaf};

    const Q: ScalarKind = ScalarKind::Rational;

    fn a2() -> Arc<FinLinCat> {
        Arc::new(incidence_category(&RingPresheaf::constant(Poset::chain(2), Algebra::ground(Q))).unwrap())
    }

    #[test]
    fn diagonal_bimodules_validate() {
        let k = Bimodule::diagonal(Bimodule::ground_category(Q));
        assert_eq!(k.total_dim(), 1);
        assert!(k.validate().is_ok());
        let d = Bimodule::diagonal(a2());
        assert_eq!(d.total_dim(), 3);
        assert!(d.validate().is_ok());
        assert!(d.opposite().validate().is_ok());
    }

    #[test]
    fn truncation_examples() {
        let c = a2();
        let d = Bimodule::diagonal(c.clone());
        let same = d.truncate_by_relation(&Relation::full(2)).unwrap();
        assert_eq!(same.total_dim(), 3);
        let ordered = d.truncate_by_relation(c.censoring().unwrap()).unwrap();
        assert_eq!(ordered.total_dim(), 3);
        let err = d.truncate_by_relation(&Relation::from_pairs(2, [(0, 0), (1, 1)])).unwrap_err();
        assert!(err.to_string().contains("not stable"));
    }

    #[test]
    fn representables_and_columns() {
        let c = a2();
        let p = Bimodule::representable(c.clone(), 1);
        assert!(p.validate().is_ok());
        assert_eq!(p.total_dim(), 2);
        let col = Bimodule::diagonal(c).column(1);
        assert!(col.validate().is_ok());
        assert_eq!(col.spaces(), p.spaces());
    }
}
