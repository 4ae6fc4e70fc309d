use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Accumulator, Echelon, SparseVec};
use crate::lincat::space::{BasisElem, GradedSpace};
use crate::scalar::{Scalar, ScalarKind};

/// A relation on object indices, stored as a dense boolean matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    n: usize,
    bits: Vec<bool>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation { n, bits: vec![false; n * n] }
    }

    pub fn full(n: usize) -> Self {
        Relation { n, bits: vec![true; n * n] }
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut r = Relation::empty(n);
        for (i, j) in pairs {
            r.insert(i, j);
        }
        r
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.n + j]
    }

    pub fn insert(&mut self, i: usize, j: usize) {
        self.bits[i * self.n + j] = true;
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|i| (0..self.n).map(move |j| (i, j))).filter(|&(i, j)| self.contains(i, j)).collect()
    }

    pub fn is_full(&self) -> bool {
        self.bits.iter().all(|&b| b)
    }

    /// A triple `(i, j, k)` with `iRj`, `jRk` but not `iRk`, if any.
    pub fn transitivity_failure(&self) -> Option<(usize, usize, usize)> {
        for i in 0..self.n {
            for j in 0..self.n {
                if !self.contains(i, j) {
                    continue;
                }
                for k in 0..self.n {
                    if self.contains(j, k) && !self.contains(i, k) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn transpose(&self) -> Relation {
        Relation::from_pairs(self.n, self.pairs().into_iter().map(|(i, j)| (j, i)))
    }

    /// The relation induced on a subset of indices (in the given order).
    pub fn restrict(&self, idx: &[usize]) -> Relation {
        let mut r = Relation::empty(idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                if self.contains(i, j) {
                    r.insert(a, b);
                }
            }
        }
        r
    }

    /// Composable `A₀ R A₁ R … R A_p` check.
    pub fn allows_chain(&self, chain: &[usize]) -> bool {
        chain.windows(2).all(|w| self.contains(w[0], w[1]))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Structure,
    Degree,
    Differential,
    Associativity,
    Unit,
    Leibniz,
    Censoring,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Structure => "structure",
            Axiom::Degree => "degree",
            Axiom::Differential => "differential",
            Axiom::Associativity => "associativity",
            Axiom::Unit => "unit",
            Axiom::Leibniz => "leibniz",
            Axiom::Censoring => "censoring",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn push(&mut self, axiom: Axiom, witness: String) {
        self.violations.push(Violation { axiom, witness });
    }

    /// Turns a failed report into a validation error naming the first violation.
    pub fn into_result(self) -> Result<()> {
        match self.violations.first() {
            None => Ok(()),
            Some(v) => {
                let more = self.violations.len() - 1;
                let tail = if more > 0 { format!(" (and {more} more)") } else { String::new() };
                Err(Error::Validation(format!("{} violated on {}{}", v.axiom, v.witness, tail)))
            }
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return writeln!(f, "all axioms hold");
        }
        for v in &self.violations {
            writeln!(f, "{}: {}", v.axiom, v.witness)?;
        }
        Ok(())
    }
}

/// A finite linear or non-positively graded DG category.
///
/// Objects are indexed in lexicographic label order. `hom(a, b)` is the space
/// of morphisms `a → b`. Composition tables are keyed by `(a, b, c)`: entry
/// `g * dim hom(a,b) + f` holds `g ∘ f ∈ hom(a,c)` for basis elements
/// `g ∈ hom(b,c)`, `f ∈ hom(a,b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinLinCat {
    kind: ScalarKind,
    objects: Vec<String>,
    homs: Vec<GradedSpace>,
    comp: Vec<Vec<SparseVec>>,
    identities: Vec<SparseVec>,
    censoring: Option<Relation>,
}

impl FinLinCat {
    /// Assembles a category from raw tables, checking shapes only; objects are
    /// re-sorted by label. Run [`FinLinCat::validate`] for the axioms.
    pub fn from_parts(
        kind: ScalarKind,
        objects: Vec<String>,
        homs: Vec<GradedSpace>,
        comp: Vec<Vec<SparseVec>>,
        identities: Vec<SparseVec>,
        censoring: Option<Relation>,
    ) -> Result<Self> {
        let n = objects.len();
        if objects.iter().collect::<HashSet<_>>().len() != n {
            return Err(Error::Validation("object labels are not distinct".into()));
        }
        if homs.len() != n * n || comp.len() != n * n * n || identities.len() != n {
            return Err(Error::Shape("category tables do not match the object count".into()));
        }
        if censoring.as_ref().is_some_and(|r| r.size() != n) {
            return Err(Error::Shape("censoring relation does not match the object count".into()));
        }
        let c = FinLinCat { kind, objects, homs, comp, identities, censoring };
        c.check_shapes()?;
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| c.objects[i].cmp(&c.objects[j]));
        Ok(if order.iter().enumerate().all(|(k, &i)| k == i) { c } else { c.select(&order) })
    }

    /// Builds composition tables from a basis-level composition rule.
    pub fn build(
        kind: ScalarKind,
        objects: Vec<String>,
        homs: Vec<GradedSpace>,
        identities: Vec<SparseVec>,
        censoring: Option<Relation>,
        compose: impl Fn(usize, usize, usize, usize, usize) -> SparseVec,
    ) -> Result<Self> {
        let n = objects.len();
        if homs.len() != n * n {
            return Err(Error::Shape("category tables do not match the object count".into()));
        }
        let mut comp = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (dg, df) = (homs[b * n + c].dim(), homs[a * n + b].dim());
                    let mut table = Vec::with_capacity(dg * df);
                    for g in 0..dg {
                        for f in 0..df {
                            table.push(compose(a, b, c, g, f));
                        }
                    }
                    comp.push(table);
                }
            }
        }
        Self::from_parts(kind, objects, homs, comp, identities, censoring)
    }

    fn check_shapes(&self) -> Result<()> {
        let n = self.objects.len();
        let fits = |v: &SparseVec, dim: usize| v.max_index().is_none_or(|m| m < dim) && v.kind_ok(self.kind);
        for a in 0..n {
            for b in 0..n {
                let h = self.hom(a, b);
                if h.differential.len() != h.dim() || !h.differential.iter().all(|d| fits(d, h.dim())) {
                    return Err(Error::Shape(format!("bad differential on hom({}, {})", self.objects[a], self.objects[b])));
                }
                for c in 0..n {
                    let t = self.comp_table(a, b, c);
                    let target = self.hom(a, c).dim();
                    if t.len() != self.hom(b, c).dim() * h.dim() || !t.iter().all(|v| fits(v, target)) {
                        return Err(Error::Shape(format!(
                            "bad composition table for {} → {} → {}",
                            self.objects[a], self.objects[b], self.objects[c]
                        )));
                    }
                }
            }
            if !fits(&self.identities[a], self.hom(a, a).dim()) {
                return Err(Error::Shape(format!("bad identity for {}", self.objects[a])));
            }
        }
        Ok(())
    }

    /// The full subcategory on `idx` (in the given order), without re-sorting.
    pub(crate) fn select(&self, idx: &[usize]) -> FinLinCat {
        let n = self.objects.len();
        let mut homs = Vec::with_capacity(idx.len() * idx.len());
        let mut comp = Vec::with_capacity(idx.len().pow(3));
        for &a in idx {
            for &b in idx {
                homs.push(self.homs[a * n + b].clone());
                for &c in idx {
                    comp.push(self.comp[(a * n + b) * n + c].clone());
                }
            }
        }
        FinLinCat {
            kind: self.kind,
            objects: idx.iter().map(|&i| self.objects[i].clone()).collect(),
            homs,
            comp,
            identities: idx.iter().map(|&i| self.identities[i].clone()).collect(),
            censoring: self.censoring.as_ref().map(|r| r.restrict(idx)),
        }
    }

    pub fn kind(&self) -> ScalarKind {
        self.kind
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn object_index(&self, label: &str) -> Result<usize> {
        self.objects.binary_search_by(|o| o.as_str().cmp(label)).map_err(|_| Error::UnknownObject(label.to_string()))
    }

    pub fn hom(&self, a: usize, b: usize) -> &GradedSpace {
        &self.homs[a * self.objects.len() + b]
    }

    pub fn hom_dim(&self, a: usize, b: usize) -> usize {
        self.hom(a, b).dim()
    }

    pub fn total_dim(&self) -> usize {
        self.homs.iter().map(|h| h.dim()).sum()
    }

    pub fn comp_table(&self, a: usize, b: usize, c: usize) -> &[SparseVec] {
        let n = self.objects.len();
        &self.comp[(a * n + b) * n + c]
    }

    /// `g ∘ f` for basis elements `g ∈ hom(b,c)`, `f ∈ hom(a,b)`.
    pub fn compose_basis(&self, a: usize, b: usize, c: usize, g: usize, f: usize) -> &SparseVec {
        &self.comp_table(a, b, c)[g * self.hom_dim(a, b) + f]
    }

    /// Bilinear composition of arbitrary vectors.
    pub fn compose(&self, a: usize, b: usize, c: usize, g: &SparseVec, f: &SparseVec) -> SparseVec {
        let table = self.comp_table(a, b, c);
        let df = self.hom_dim(a, b);
        let mut acc = Accumulator::new(self.kind, self.hom_dim(a, c));
        for (i, x) in g.iter() {
            for (j, y) in f.iter() {
                let xy = x * y;
                acc.axpy(&xy, &table[i * df + j]);
            }
        }
        acc.take()
    }

    pub fn identity(&self, a: usize) -> &SparseVec {
        &self.identities[a]
    }

    pub fn identities(&self) -> &[SparseVec] {
        &self.identities
    }

    pub fn censoring(&self) -> Option<&Relation> {
        self.censoring.as_ref()
    }

    pub fn with_censoring(mut self, censoring: Option<Relation>) -> Self {
        self.censoring = censoring;
        self
    }

    /// Differential applied to a vector of `hom(a, b)`.
    pub fn d(&self, a: usize, b: usize, v: &SparseVec) -> SparseVec {
        let h = self.hom(a, b);
        let mut acc = Accumulator::new(self.kind, h.dim());
        for (i, x) in v.iter() {
            acc.axpy(x, &h.differential[i]);
        }
        acc.take()
    }

    /// No grading and no differential anywhere.
    pub fn is_ordinary(&self) -> bool {
        self.homs.iter().all(|h| h.is_ungraded())
    }

    pub fn has_differential(&self) -> bool {
        self.homs.iter().any(|h| h.has_differential())
    }

    /// Lowest basis degree over all homs (0 for ordinary categories).
    pub fn min_degree(&self) -> i32 {
        self.homs.iter().filter_map(|h| h.degree_range()).map(|(lo, _)| lo).min().unwrap_or(0).min(0)
    }

    /// The position of a basis element equal to the identity of `a`, if any.
    pub fn identity_basis_index(&self, a: usize) -> Option<usize> {
        let e = self.identity(a);
        match e.entries() {
            [(i, c)] if c.is_one() => Some(*i),
            _ => None,
        }
    }

    pub fn has_identity_basis(&self) -> bool {
        (0..self.num_objects()).all(|a| self.identity(a).is_zero() || self.identity_basis_index(a).is_some())
    }

    /// Structure-constant equality ignoring basis labels and the censoring relation.
    pub fn same_structure(&self, other: &FinLinCat) -> bool {
        let degrees = |c: &FinLinCat| c.homs.iter().map(|h| (h.basis.iter().map(|b| b.degree).collect::<Vec<_>>(), h.differential.clone())).collect::<Vec<_>>();
        self.kind == other.kind
            && self.objects == other.objects
            && degrees(self) == degrees(other)
            && self.comp == other.comp
            && self.identities == other.identities
    }

    /// Every label that occurs more than once across all hom bases.
    pub fn duplicate_labels(&self) -> Vec<String> {
        let mut seen = HashSet::new();
        let mut dup = Vec::new();
        for h in &self.homs {
            for b in &h.basis {
                if !seen.insert(b.label.as_str()) {
                    dup.push(b.label.clone());
                }
            }
        }
        dup
    }

    fn basis_name(&self, a: usize, b: usize, i: usize) -> String {
        self.hom(a, b).basis[i].label.clone()
    }

    /// Checks every category axiom; the report is empty iff all hold.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::default();
        let n = self.num_objects();
        let o = |i: usize| self.objects[i].as_str();
        for l in self.duplicate_labels() {
            rep.push(Axiom::Structure, format!("basis label '{l}' is used more than once"));
        }
        // Degrees and differentials.
        for a in 0..n {
            for b in 0..n {
                let h = self.hom(a, b);
                for (i, e) in h.basis.iter().enumerate() {
                    if e.degree > 0 {
                        rep.push(Axiom::Degree, format!("{} in hom({}, {}) has positive degree {}", e.label, o(a), o(b), e.degree));
                    }
                    if h.differential[i].iter().any(|(j, _)| h.degree(j) != e.degree + 1) {
                        rep.push(Axiom::Differential, format!("d({}) is not homogeneous of degree {}", e.label, e.degree + 1));
                    }
                    if !self.d(a, b, &h.differential[i]).is_zero() {
                        rep.push(Axiom::Differential, format!("d(d({})) ≠ 0", e.label));
                    }
                }
                for c in 0..n {
                    for g in 0..self.hom_dim(b, c) {
                        for f in 0..h.dim() {
                            let deg = self.hom(b, c).degree(g) + h.degree(f);
                            if self.compose_basis(a, b, c, g, f).iter().any(|(k, _)| self.hom(a, c).degree(k) != deg) {
                                rep.push(
                                    Axiom::Degree,
                                    format!("{} ∘ {} is not homogeneous of degree {deg}", self.basis_name(b, c, g), h.basis[f].label),
                                );
                            }
                        }
                    }
                }
            }
            if self.identity(a).iter().any(|(k, _)| self.hom(a, a).degree(k) != 0) {
                rep.push(Axiom::Degree, format!("identity of {} is not of degree 0", o(a)));
            }
            if !self.d(a, a, self.identity(a)).is_zero() {
                rep.push(Axiom::Differential, format!("identity of {} is not a cocycle", o(a)));
            }
        }
        self.check_associativity(&mut rep);
        // Units.
        for a in 0..n {
            for b in 0..n {
                for f in 0..self.hom_dim(a, b) {
                    let e = SparseVec::unit(f, self.kind);
                    if self.compose(a, b, b, self.identity(b), &e) != e {
                        rep.push(Axiom::Unit, format!("id_{} ∘ {} ≠ {}", o(b), self.basis_name(a, b, f), self.basis_name(a, b, f)));
                    }
                    if self.compose(a, a, b, &e, self.identity(a)) != e {
                        rep.push(Axiom::Unit, format!("{} ∘ id_{} ≠ {}", self.basis_name(a, b, f), o(a), self.basis_name(a, b, f)));
                    }
                }
            }
        }
        if self.has_differential() {
            self.check_leibniz(&mut rep);
        }
        if let Some(r) = &self.censoring {
            if let Some((i, j, k)) = r.transitivity_failure() {
                rep.push(Axiom::Censoring, format!("relation not transitive on ({}, {}, {})", o(i), o(j), o(k)));
            }
            for a in 0..n {
                for b in 0..n {
                    if !r.contains(a, b) {
                        if a == b && !self.identity(a).is_zero() {
                            rep.push(Axiom::Censoring, format!("({}, {}) missing although the identity is nonzero", o(a), o(a)));
                        } else if self.hom_dim(a, b) > 0 {
                            rep.push(Axiom::Censoring, format!("hom({}, {}) ≠ 0 outside the relation", o(a), o(b)));
                        }
                    }
                }
            }
        }
        rep
    }

    fn check_associativity(&self, rep: &mut ValidationReport) {
        use rayon::prelude::*;
        let n = self.num_objects();
        let found: Vec<Vec<String>> = (0..n)
            .into_par_iter()
            .map(|a| {
                let mut out = Vec::new();
                for b in 0..n {
                    for c in 0..n {
                        for d in 0..n {
                            let (df, dg, dh) = (self.hom_dim(a, b), self.hom_dim(b, c), self.hom_dim(c, d));
                            if df * dg * dh == 0 {
                                continue;
                            }
                            for h in 0..dh {
                                for g in 0..dg {
                                    let hg = self.compose_basis(b, c, d, h, g);
                                    for f in 0..df {
                                        let left = self.compose(a, b, d, hg, &SparseVec::unit(f, self.kind));
                                        let right =
                                            self.compose(a, c, d, &SparseVec::unit(h, self.kind), self.compose_basis(a, b, c, g, f));
                                        if left != right {
                                            out.push(format!(
                                                "({}, {}, {})",
                                                self.basis_name(c, d, h),
                                                self.basis_name(b, c, g),
                                                self.basis_name(a, b, f)
                                            ));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
                out
            })
            .collect();
        for w in found.into_iter().flatten() {
            rep.push(Axiom::Associativity, w);
        }
    }

    fn check_leibniz(&self, rep: &mut ValidationReport) {
        let n = self.num_objects();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for g in 0..self.hom_dim(b, c) {
                        for f in 0..self.hom_dim(a, b) {
                            let gv = SparseVec::unit(g, self.kind);
                            let fv = SparseVec::unit(f, self.kind);
                            let lhs = self.d(a, c, self.compose_basis(a, b, c, g, f));
                            let sign = Scalar::parity(self.hom(b, c).degree(g) as i64, self.kind);
                            let rhs = self
                                .compose(a, b, c, &self.d(b, c, &gv), &fv)
                                .axpy(&sign, &self.compose(a, b, c, &gv, &self.d(a, b, &fv)));
                            if lhs != rhs {
                                rep.push(
                                    Axiom::Leibniz,
                                    format!("d({} ∘ {})", self.basis_name(b, c, g), self.basis_name(a, b, f)),
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    /// Replaces the basis of selected hom spaces. `new_bases[a*n+b]`, when
    /// present, lists the new basis vectors in old coordinates with their labels
    /// and degrees; all structure constants are transported.
    pub fn change_basis(&self, new_bases: &[Option<(Vec<BasisElem>, Vec<SparseVec>)>]) -> Result<FinLinCat> {
        let n = self.num_objects();
        let kind = self.kind;
        // Per pair: an echelon form expressing old vectors in the new basis.
        let mut solvers: Vec<Option<Echelon>> = Vec::with_capacity(n * n);
        for (k, nb) in new_bases.iter().enumerate() {
            solvers.push(match nb {
                None => None,
                Some((elems, vecs)) => {
                    let dim = self.homs[k].dim();
                    let mut e = Echelon::tracking(kind, dim);
                    if elems.len() != dim || vecs.len() != dim {
                        return Err(Error::Shape("replacement basis has the wrong size".into()));
                    }
                    for (t, v) in vecs.iter().enumerate() {
                        if !e.insert_tagged(v.clone(), t) {
                            return Err(Error::Validation("replacement vectors are linearly dependent".into()));
                        }
                    }
                    Some(e)
                }
            });
        }
        let to_new = |k: usize, v: &SparseVec| -> SparseVec {
            match &solvers[k] {
                None => v.clone(),
                Some(e) => e.express(v).expect("full rank"),
            }
        };
        let to_old = |k: usize, i: usize| -> SparseVec {
            match &new_bases[k] {
                None => SparseVec::unit(i, kind),
                Some((_, vecs)) => vecs[i].clone(),
            }
        };
        let mut homs = Vec::with_capacity(n * n);
        for k in 0..n * n {
            let (a, b) = (k / n, k % n);
            homs.push(match &new_bases[k] {
                None => self.homs[k].clone(),
                Some((elems, vecs)) => {
                    let differential = vecs.iter().map(|v| to_new(k, &self.d(a, b, v))).collect();
                    GradedSpace::new(elems.clone(), differential)
                }
            });
        }
        let identities = (0..n).map(|a| to_new(a * n + a, &self.identities[a])).collect();
        let touched = |k: usize| new_bases[k].is_some();
        let mut comp = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (kf, kg, kh) = (a * n + b, b * n + c, a * n + c);
                    if !(touched(kf) || touched(kg) || touched(kh)) {
                        comp.push(self.comp_table(a, b, c).to_vec());
                        continue;
                    }
                    let (dg, df) = (self.hom_dim(b, c), self.hom_dim(a, b));
                    let mut table = Vec::with_capacity(dg * df);
                    for g in 0..dg {
                        let gv = to_old(kg, g);
                        for f in 0..df {
                            table.push(to_new(kh, &self.compose(a, b, c, &gv, &to_old(kf, f))));
                        }
                    }
                    comp.push(table);
                }
            }
        }
        Ok(FinLinCat { kind, objects: self.objects.clone(), homs, comp, identities, censoring: self.censoring.clone() })
    }

    /// An isomorphic presentation in which each nonzero identity is itself a
    /// basis element (needed for normalized cochains).
    pub fn with_identity_basis(&self) -> Result<FinLinCat> {
        if self.has_identity_basis() {
            return Ok(self.clone());
        }
        let n = self.num_objects();
        let mut taken: HashSet<String> = self.homs.iter().flat_map(|h| h.basis.iter().map(|b| b.label.clone())).collect();
        let mut new_bases = vec![None; n * n];
        for a in 0..n {
            let id = self.identity(a);
            if id.is_zero() || self.identity_basis_index(a).is_some() {
                continue;
            }
            let h = self.hom(a, a);
            let (j, _) = id.leading().expect("nonzero identity");
            let mut label = format!("id_{}", self.objects[a]);
            while taken.contains(&label) {
                label.push('\'');
            }
            taken.insert(label.clone());
            let mut elems = h.basis.clone();
            elems[j] = BasisElem::new(label, 0);
            let vecs = (0..h.dim()).map(|i| if i == j { id.clone() } else { SparseVec::unit(i, self.kind) }).collect();
            new_bases[a * n + a] = Some((elems, vecs));
        }
        self.change_basis(&new_bases)
    }

    /// Internal constructor used by constructors that already hold sorted, shaped tables.
    pub(crate) fn raw(
        kind: ScalarKind,
        objects: Vec<String>,
        homs: Vec<GradedSpace>,
        comp: Vec<Vec<SparseVec>>,
        identities: Vec<SparseVec>,
        censoring: Option<Relation>,
    ) -> Self {
        FinLinCat { kind, objects, homs, comp, identities, censoring }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lincat::{from_algebra, Algebra};

    const Q: ScalarKind = ScalarKind::Rational;

    #[test]
    fn ground_field_passes() {
        let k = from_algebra(&Algebra::ground(Q)).unwrap();
        assert!(k.validate().is_ok());
        assert_eq!(k.total_dim(), 1);
    }

    #[test]
    fn planted_associativity_defect_is_named() {
        let c = from_algebra(&Algebra::truncated_polynomial(Q, 3)).unwrap();
        let mut comp = c.comp.clone();
        // x ∘ x := 1 gives (x ∘ x) ∘ x² = x² but x ∘ (x ∘ x²) = 0.
        comp[0][3 + 1] = SparseVec::unit(0, Q);
        let bad = FinLinCat { comp, ..c };
        let rep = bad.validate();
        assert!(!rep.is_ok());
        assert!(rep.violations.iter().all(|v| v.axiom == Axiom::Associativity));
        assert!(rep.violations.iter().any(|v| v.witness == "(x, x, x^2)"));
    }

    #[test]
    fn identity_rebasing_upper_triangular() {
        let c = from_algebra(&Algebra::upper_triangular(Q)).unwrap();
        assert!(!c.has_identity_basis());
        let r = c.with_identity_basis().unwrap();
        assert!(r.has_identity_basis());
        assert!(r.validate().is_ok());
    }
}
