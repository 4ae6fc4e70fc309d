//! JSON description files for categories, bimodules, presheaves, spaces,
//! covers and cochains.
//!
//! Coefficients are strings (`"3"`, `"-2/5"`) read in the file's scalar kind.
//! Vectors are lists of `[label, coefficient]` pairs; omitted entries are zero.
//! Basis labels must be unique within a category (or bimodule), so that
//! composition and action entries can name their arguments by label alone.

use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bimodule::Bimodule;
use crate::error::{Error, Result};
use crate::hochschild::HochschildComplex;
use crate::linalg::{Matrix, SparseVec};
use crate::lincat::{category_algebra, Algebra, BasisElem, FinLinCat, GradedSpace, Relation};
use crate::scalar::ScalarKind;
use crate::sites::{FiniteSpace, OpenFamily, PointSet, Poset, RingPresheaf};

pub type Term = (String, String);

fn is_zero_degree(d: &i32) -> bool {
    *d == 0
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisEntry {
    pub label: String,
    #[serde(default, skip_serializing_if = "is_zero_degree")]
    pub degree: i32,
    /// The differential of this basis element.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub d: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomEntry {
    pub source: String,
    pub target: String,
    pub basis: Vec<BasisEntry>,
}

/// `g ∘ f = result`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompositionEntry {
    pub g: String,
    pub f: String,
    pub result: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    pub scalars: String,
    pub objects: Vec<String>,
    pub homs: Vec<HomEntry>,
    pub composition: Vec<CompositionEntry>,
    pub identities: BTreeMap<String, Vec<Term>>,
    /// Pairs `(A, A′)` for which `hom(A, A′)` may be nonzero.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub censoring: Option<Vec<(String, String)>>,
}

/// Where each basis label lives: `(source, target, index)`.
struct LabelIndex(HashMap<String, (usize, usize, usize)>);

impl LabelIndex {
    fn get(&self, label: &str) -> Result<(usize, usize, usize)> {
        self.0.get(label).copied().ok_or_else(|| Error::Parse(format!("unknown basis label '{label}'")))
    }
}

fn parse_terms(kind: ScalarKind, terms: &[Term], position: impl Fn(&str) -> Result<usize>) -> Result<SparseVec> {
    let entries = terms
        .iter()
        .map(|(label, c)| Ok((position(label)?, kind.parse(c).map_err(|e| Error::Parse(format!("coefficient of '{label}': {e}")))?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SparseVec::from_entries(entries))
}

fn write_terms(v: &SparseVec, labels: impl Fn(usize) -> String) -> Vec<Term> {
    v.iter().map(|(i, c)| (labels(i), c.to_string())).collect()
}

impl CategoryFile {
    pub fn to_category(&self) -> Result<FinLinCat> {
        let kind: ScalarKind = self.scalars.parse()?;
        let n = self.objects.len();
        let obj = |s: &str| self.objects.iter().position(|o| o == s).ok_or_else(|| Error::UnknownObject(s.to_string()));
        let mut entries: Vec<Option<&HomEntry>> = vec![None; n * n];
        let mut labels = HashMap::new();
        for h in &self.homs {
            let (a, b) = (obj(&h.source)?, obj(&h.target)?);
            if entries[a * n + b].replace(h).is_some() {
                return Err(Error::Parse(format!("hom({}, {}) listed twice", h.source, h.target)));
            }
            for (k, e) in h.basis.iter().enumerate() {
                if labels.insert(e.label.clone(), (a, b, k)).is_some() {
                    return Err(Error::Parse(format!("basis label '{}' used twice", e.label)));
                }
            }
        }
        let index = LabelIndex(labels);
        let mut homs = Vec::with_capacity(n * n);
        for (ab, entry) in entries.iter().enumerate() {
            let Some(h) = entry else {
                homs.push(GradedSpace::zero());
                continue;
            };
            let basis = h.basis.iter().map(|e| BasisElem::new(e.label.clone(), e.degree)).collect();
            let differential = h
                .basis
                .iter()
                .map(|e| {
                    parse_terms(kind, &e.d, |l| {
                        let (a, b, k) = index.get(l)?;
                        if a * n + b != ab {
                            return Err(Error::Parse(format!("differential of '{}' leaves its hom space", e.label)));
                        }
                        Ok(k)
                    })
                })
                .collect::<Result<_>>()?;
            homs.push(GradedSpace::new(basis, differential));
        }
        let mut products: HashMap<(usize, usize, usize, usize, usize), SparseVec> = HashMap::new();
        for c in &self.composition {
            let (b, cc, g) = index.get(&c.g)?;
            let (a, b2, f) = index.get(&c.f)?;
            if b != b2 {
                return Err(Error::Parse(format!("'{}' ∘ '{}' is not composable", c.g, c.f)));
            }
            let v = parse_terms(kind, &c.result, |l| {
                let (x, y, k) = index.get(l)?;
                if (x, y) != (a, cc) {
                    return Err(Error::Parse(format!("'{}' ∘ '{}' has a term '{l}' outside its hom space", c.g, c.f)));
                }
                Ok(k)
            })?;
            products.insert((a, b, cc, g, f), v);
        }
        let identities = self
            .objects
            .iter()
            .enumerate()
            .map(|(a, o)| {
                let terms = self.identities.get(o).ok_or_else(|| Error::Parse(format!("no identity for '{o}'")))?;
                parse_terms(kind, terms, |l| {
                    let (x, y, k) = index.get(l)?;
                    if (x, y) != (a, a) {
                        return Err(Error::Parse(format!("identity of '{o}' uses '{l}' outside its endomorphisms")));
                    }
                    Ok(k)
                })
            })
            .collect::<Result<_>>()?;
        let censoring = match &self.censoring {
            None => None,
            Some(pairs) => Some(Relation::from_pairs(n, pairs.iter().map(|(x, y)| Ok((obj(x)?, obj(y)?))).collect::<Result<Vec<_>>>()?)),
        };
        FinLinCat::build(kind, self.objects.clone(), homs, identities, censoring, |a, b, c, g, f| {
            products.get(&(a, b, c, g, f)).cloned().unwrap_or_default()
        })
    }

    pub fn from_category(c: &FinLinCat) -> Result<Self> {
        if let Some(l) = c.duplicate_labels().first() {
            return Err(Error::Validation(format!("basis label '{l}' is not unique; cannot write a category file")));
        }
        let n = c.num_objects();
        let objs = c.objects();
        let label = |a: usize, b: usize| move |k: usize| c.hom(a, b).basis[k].label.clone();
        let mut homs = Vec::new();
        let mut composition = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let h = c.hom(a, b);
                if h.dim() == 0 {
                    continue;
                }
                let basis = h
                    .basis
                    .iter()
                    .zip(&h.differential)
                    .map(|(e, d)| BasisEntry { label: e.label.clone(), degree: e.degree, d: write_terms(d, label(a, b)) })
                    .collect();
                homs.push(HomEntry { source: objs[a].clone(), target: objs[b].clone(), basis });
            }
        }
        for a in 0..n {
            for b in 0..n {
                for cc in 0..n {
                    for g in 0..c.hom_dim(b, cc) {
                        for f in 0..c.hom_dim(a, b) {
                            let v = c.compose_basis(a, b, cc, g, f);
                            if !v.is_zero() {
                                composition.push(CompositionEntry {
                                    g: c.hom(b, cc).basis[g].label.clone(),
                                    f: c.hom(a, b).basis[f].label.clone(),
                                    result: write_terms(v, label(a, cc)),
                                });
                            }
                        }
                    }
                }
            }
        }
        let identities = (0..n).map(|a| (objs[a].clone(), write_terms(c.identity(a), label(a, a)))).collect();
        let censoring = c.censoring().map(|r| r.pairs().into_iter().map(|(x, y)| (objs[x].clone(), objs[y].clone())).collect());
        Ok(CategoryFile { scalars: c.kind().to_string(), objects: objs.to_vec(), homs, composition, identities, censoring })
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::from(e).in_file(path.display().to_string()))
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    serde_json::from_str(&read(path)?).map_err(|e| Error::from(e).in_file(path.display().to_string()))
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Parses a category file; the result is not yet validated against the axioms.
pub fn parse_category(text: &str) -> Result<FinLinCat> {
    serde_json::from_str::<CategoryFile>(text)?.to_category()
}

pub fn write_category(c: &FinLinCat) -> Result<String> {
    to_json_pretty(&CategoryFile::from_category(c)?)
}

/// Reads a category file without checking the axioms.
pub fn read_category(path: &Path) -> Result<FinLinCat> {
    parse_json::<CategoryFile>(path)?.to_category().map_err(|e| e.in_file(path.display().to_string()))
}

/// Loads a category file and checks every axiom, naming the file on failure.
pub fn load_category(path: &Path) -> Result<FinLinCat> {
    let c = read_category(path)?;
    c.validate().into_result().map_err(|e| e.in_file(path.display().to_string()))?;
    Ok(c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpaceEntry {
    /// Object of the right category `𝔟`.
    pub right: String,
    /// Object of the left category `𝔞`.
    pub left: String,
    pub basis: Vec<BasisEntry>,
}

/// `g · m` for `g` in the left category, `m · f` for `f` in the right one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionEntry {
    pub morphism: String,
    pub element: String,
    pub result: Vec<Term>,
}

/// A bimodule `X(B, A)` over a left category `𝔞` and right category `𝔟`,
/// given as category files relative to the bimodule file (or the same file for both).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleFile {
    pub left_category: String,
    pub right_category: String,
    pub spaces: Vec<ModuleSpaceEntry>,
    #[serde(default)]
    pub left_action: Vec<ActionEntry>,
    #[serde(default)]
    pub right_action: Vec<ActionEntry>,
}

impl BimoduleFile {
    pub fn to_bimodule(&self, left: Arc<FinLinCat>, right: Arc<FinLinCat>) -> Result<Bimodule> {
        let kind = left.kind();
        let (na, nb) = (left.num_objects(), right.num_objects());
        let cat_labels = |c: &FinLinCat| -> HashMap<String, (usize, usize, usize)> {
            let n = c.num_objects();
            let mut m = HashMap::new();
            for a in 0..n {
                for b in 0..n {
                    for (k, e) in c.hom(a, b).basis.iter().enumerate() {
                        m.insert(e.label.clone(), (a, b, k));
                    }
                }
            }
            m
        };
        let (lhs, rhs) = (LabelIndex(cat_labels(&left)), LabelIndex(cat_labels(&right)));
        let mut spaces = vec![GradedSpace::zero(); na * nb];
        let mut labels = HashMap::new();
        for s in &self.spaces {
            let (b, a) = (right.object_index(&s.right)?, left.object_index(&s.left)?);
            for (k, e) in s.basis.iter().enumerate() {
                if labels.insert(e.label.clone(), (b, a, k)).is_some() {
                    return Err(Error::Parse(format!("bimodule label '{}' used twice", e.label)));
                }
            }
            spaces[b * na + a] = GradedSpace::new(s.basis.iter().map(|e| BasisElem::new(e.label.clone(), e.degree)).collect(), Vec::new());
        }
        let elems = LabelIndex(labels);
        for s in &self.spaces {
            let (b, a) = (right.object_index(&s.right)?, left.object_index(&s.left)?);
            spaces[b * na + a].differential = s
                .basis
                .iter()
                .map(|e| parse_terms(kind, &e.d, |l| elems.get(l).map(|(_, _, k)| k)))
                .collect::<Result<_>>()?;
        }
        let mut lact = HashMap::new();
        for e in &self.left_action {
            let (a, a2, g) = lhs.get(&e.morphism)?;
            let (b, a1, m) = elems.get(&e.element)?;
            if a != a1 {
                return Err(Error::Parse(format!("'{}' · '{}' is not composable", e.morphism, e.element)));
            }
            lact.insert((b, a, a2, g, m), parse_terms(kind, &e.result, |l| elems.get(l).map(|(_, _, k)| k))?);
        }
        let mut ract = HashMap::new();
        for e in &self.right_action {
            let (b, b2, f) = rhs.get(&e.morphism)?;
            let (b2m, a, m) = elems.get(&e.element)?;
            if b2 != b2m {
                return Err(Error::Parse(format!("'{}' · '{}' is not composable", e.element, e.morphism)));
            }
            ract.insert((b, b2, a, m, f), parse_terms(kind, &e.result, |l| elems.get(l).map(|(_, _, k)| k))?);
        }
        Bimodule::build(
            left,
            right,
            spaces,
            |b, a, a2, g, m| lact.get(&(b, a, a2, g, m)).cloned().unwrap_or_default(),
            |b, b2, a, m, f| ract.get(&(b, b2, a, m, f)).cloned().unwrap_or_default(),
        )
    }
}

/// Loads a bimodule and the categories it refers to, then validates it.
pub fn load_bimodule(path: &Path) -> Result<Bimodule> {
    let at = || path.display().to_string();
    let file: BimoduleFile = parse_json(path)?;
    let base = path.parent().unwrap_or(Path::new("."));
    let left = Arc::new(load_category(&base.join(&file.left_category))?);
    let right = if file.right_category == file.left_category { left.clone() } else { Arc::new(load_category(&base.join(&file.right_category))?) };
    let x = file.to_bimodule(left, right).map_err(|e| e.in_file(at()))?;
    x.validate().into_result().map_err(|e| e.in_file(at()))?;
    Ok(x)
}

/// `builtin:ground`, `builtin:dual_numbers`, `builtin:truncated:N`,
/// `builtin:matrix:N`, `builtin:upper_triangular`, `builtin:split:N`, or a
/// path to a one-object category file.
pub fn resolve_algebra(reference: &str, kind: ScalarKind, base: &Path) -> Result<Algebra> {
    let Some(name) = reference.strip_prefix("builtin:") else {
        let c = load_category(&base.join(reference))?;
        if c.num_objects() != 1 {
            return Err(Error::Validation(format!("'{reference}' has {} objects; an algebra needs one", c.num_objects())).in_file(reference));
        }
        if c.kind() != kind {
            return Err(Error::ScalarKind { expected: kind, found: c.kind() }.in_file(reference));
        }
        return category_algebra(&c);
    };
    let size = |s: &str| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad size in '{reference}'")));
    Ok(match name.split_once(':') {
        None => match name {
            "ground" => Algebra::ground(kind),
            "dual_numbers" => Algebra::dual_numbers(kind),
            "upper_triangular" => Algebra::upper_triangular(kind),
            _ => return Err(Error::Parse(format!("unknown builtin algebra '{reference}'"))),
        },
        Some(("truncated", n)) => Algebra::truncated_polynomial(kind, size(n)?),
        Some(("matrix", n)) => Algebra::matrix(kind, size(n)?),
        Some(("split", n)) => Algebra::split(kind, size(n)?),
        _ => return Err(Error::Parse(format!("unknown builtin algebra '{reference}'"))),
    })
}

/// `r_{target, source}: O(source) → O(target)` for `target ≤ source`, as rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RestrictionEntry {
    pub from: String,
    pub to: String,
    pub matrix: Vec<Vec<String>>,
}

/// A presheaf of algebras on a poset. Inside a space file `elements` and
/// `order` are omitted: the elements are the basis opens.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresheafFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scalars: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub elements: Vec<String>,
    /// Pairs `(u, v)` meaning `u ≤ v`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub order: Vec<(String, String)>,
    /// Element → algebra reference; missing elements get the ground field.
    #[serde(default)]
    pub algebras: BTreeMap<String, String>,
    /// Restrictions along (at least) the covering pairs; missing ones between
    /// identical builtin algebras default to the identity.
    #[serde(default)]
    pub restrictions: Vec<RestrictionEntry>,
}

impl PresheafFile {
    pub fn kind(&self) -> Result<ScalarKind> {
        self.scalars.as_deref().map_or(Ok(ScalarKind::Rational), str::parse)
    }

    pub fn to_presheaf(&self, poset: Poset, kind: ScalarKind, base: &Path) -> Result<RingPresheaf> {
        let algebras: Vec<Algebra> = poset
            .labels()
            .iter()
            .map(|l| self.algebras.get(l).map_or(Ok(Algebra::ground(kind)), |r| resolve_algebra(r, kind, base)))
            .collect::<Result<_>>()?;
        for l in self.algebras.keys() {
            poset.index(l)?;
        }
        let mut gens = Vec::new();
        for r in &self.restrictions {
            let (u, v) = (poset.index(&r.to)?, poset.index(&r.from)?);
            let grid = r.matrix.iter().map(|row| row.iter().map(|c| kind.parse(c)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
            let m = if grid.is_empty() { Matrix::zeros(kind, algebras[u].dim(), algebras[v].dim()) } else { Matrix::from_dense(kind, &grid)? };
            gens.push((u, v, m));
        }
        let given: Vec<(usize, usize)> = gens.iter().map(|(u, v, _)| (*u, *v)).collect();
        for (u, v) in poset.covers() {
            if !given.contains(&(u, v)) && algebras[u] == algebras[v] {
                gens.push((u, v, Matrix::identity(kind, algebras[u].dim())));
            }
        }
        RingPresheaf::new(poset, algebras, gens)
    }
}

pub fn load_presheaf(path: &Path) -> Result<RingPresheaf> {
    let at = || path.display().to_string();
    let file: PresheafFile = parse_json(path)?;
    let build = || -> Result<RingPresheaf> {
        let poset = Poset::new(file.elements.clone(), &file.order)?;
        file.to_presheaf(poset, file.kind()?, path.parent().unwrap_or(Path::new(".")))
    };
    build().map_err(|e| e.in_file(at()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceFile {
    pub points: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opens: Option<Vec<Vec<String>>>,
    /// Pairs `(x, y)`: every open containing `y` contains `x`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub specialization: Option<Vec<(String, String)>>,
    /// Named opens that cover files may refer to.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub named_opens: BTreeMap<String, Vec<String>>,
    /// A presheaf of algebras on the minimal basis (`U_p` labels); the constant sheaf when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presheaf: Option<PresheafFile>,
}

pub struct LoadedSpace {
    pub space: FiniteSpace,
    pub named: BTreeMap<String, PointSet>,
    pub presheaf: Option<PresheafFile>,
    pub base: PathBuf,
}

impl LoadedSpace {
    /// Named opens, then `U_p` minimal opens, then `X` for the whole space.
    pub fn resolve_open(&self, name: &str) -> Result<PointSet> {
        if let Some(&s) = self.named.get(name) {
            return Ok(s);
        }
        if name == "X" {
            return Ok(self.space.whole());
        }
        if let Some(p) = name.strip_prefix("U_") {
            if let Some(i) = self.space.points().iter().position(|x| x == p) {
                return Ok(self.space.minimal_open(i));
            }
        }
        Err(Error::UnknownObject(name.to_string()))
    }

    /// The coefficient presheaf on a basis: the file's presheaf (on the minimal
    /// basis only) or the constant sheaf.
    pub fn coefficients(&self, basis: &OpenFamily, kind: ScalarKind) -> Result<RingPresheaf> {
        match &self.presheaf {
            Some(p) => {
                if *basis != self.space.minimal_basis() {
                    return Err(Error::Unsupported("a file presheaf is only defined on the minimal basis".into()));
                }
                p.to_presheaf(basis.poset.clone(), kind, &self.base)
            }
            None => basis.constant_sheaf(&self.space, kind),
        }
    }
}

pub fn parse_space(file: &SpaceFile) -> Result<FiniteSpace> {
    match (&file.opens, &file.specialization) {
        (Some(opens), None) => FiniteSpace::from_opens(file.points.clone(), opens),
        (None, Some(rel)) => FiniteSpace::from_specialization(file.points.clone(), rel),
        (None, None) => FiniteSpace::from_specialization(file.points.clone(), &[]),
        (Some(_), Some(_)) => Err(Error::Parse("give either 'opens' or 'specialization', not both".into())),
    }
}

pub fn load_space(path: &Path) -> Result<LoadedSpace> {
    let at = || path.display().to_string();
    let file: SpaceFile = parse_json(path)?;
    let space = parse_space(&file).map_err(|e| e.in_file(at()))?;
    let mut named = BTreeMap::new();
    for (name, pts) in &file.named_opens {
        let s = space.mask(&pts.iter().map(String::as_str).collect::<Vec<_>>()).map_err(|e| e.in_file(at()))?;
        if !space.is_open(s) {
            return Err(Error::Validation(format!("named open '{name}' is not open")).in_file(at()));
        }
        named.insert(name.clone(), s);
    }
    Ok(LoadedSpace { space, named, presheaf: file.presheaf, base: path.parent().unwrap_or(Path::new(".")).to_path_buf() })
}

/// A cover: names of opens resolved against the space file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverFile {
    pub opens: Vec<String>,
}

pub fn load_cover(path: &Path, space: &LoadedSpace) -> Result<Vec<(String, PointSet)>> {
    let file: CoverFile = parse_json(path)?;
    file.opens
        .iter()
        .map(|n| Ok((n.clone(), space.resolve_open(n)?)))
        .collect::<Result<_>>()
        .map_err(|e: Error| e.in_file(path.display().to_string()))
}

/// A cochain of a given degree with diagonal coefficients. A degree-0 cochain
/// names its object in `object` and has empty `inputs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainFile {
    pub degree: usize,
    pub values: Vec<CochainEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub object: Option<String>,
    pub inputs: Vec<String>,
    pub value: Vec<Term>,
}

impl CochainFile {
    pub fn to_cochain(&self, h: &HochschildComplex) -> Result<SparseVec> {
        let c = h.category();
        if !h.spec.has_diagonal_coefficients() {
            return Err(Error::Unsupported("cochain files are read for diagonal coefficients only".into()));
        }
        let n = c.num_objects();
        let mut index = HashMap::new();
        for a in 0..n {
            for b in 0..n {
                for (k, e) in c.hom(a, b).basis.iter().enumerate() {
                    index.insert(e.label.clone(), (a, b, k));
                }
            }
        }
        let index = LabelIndex(index);
        let kind = h.kind();
        let mut entries = Vec::new();
        for v in &self.values {
            if v.inputs.len() != self.degree {
                return Err(Error::Parse(format!("value on {:?} has {} inputs; degree is {}", v.inputs, v.inputs.len(), self.degree)));
            }
            // x_j ∈ hom(B_j, B_{j−1}).
            let mut chain = Vec::with_capacity(self.degree + 1);
            let mut digits = Vec::with_capacity(self.degree);
            if let Some(o) = &v.object {
                chain.push(c.object_index(o)?);
            }
            for l in &v.inputs {
                let (src, tgt, k) = index.get(l)?;
                match chain.last() {
                    None => chain.push(tgt),
                    Some(&prev) if prev != tgt => return Err(Error::Parse(format!("inputs {:?} are not composable", v.inputs))),
                    _ => {}
                }
                chain.push(src);
                digits.push(k);
            }
            if chain.is_empty() {
                return Err(Error::Parse("a degree-0 value must name its object".into()));
            }
            let (last, first) = (*chain.last().unwrap(), chain[0]);
            let out = parse_terms(kind, &v.value, |l| {
                let (a, b, k) = index.get(l)?;
                if (a, b) != (last, first) {
                    return Err(Error::Parse(format!("value term '{l}' is not in the target hom space")));
                }
                Ok(k)
            })?;
            for (k, x) in out.iter() {
                let pos = h
                    .position(self.degree as i32, &chain, &digits, k)
                    .ok_or_else(|| Error::Parse(format!("chain {:?} carries no cochains", v.inputs)))?;
                entries.push((pos, x.clone()));
            }
        }
        Ok(SparseVec::from_entries(entries))
    }

    pub fn from_cochain(h: &HochschildComplex, degree: usize, phi: &SparseVec) -> CochainFile {
        let c = h.category();
        let values = h
            .supports(degree as i32)
            .into_iter()
            .filter_map(|(chain, digits)| {
                let v = h.value(degree as i32, phi, &chain, &digits);
                if v.is_zero() {
                    return None;
                }
                let inputs = digits.iter().enumerate().map(|(j, &d)| c.hom(chain[j + 1], chain[j]).basis[d].label.clone()).collect();
                let out = c.hom(*chain.last().unwrap(), chain[0]);
                let object = (degree == 0).then(|| c.objects()[chain[0]].clone());
                Some(CochainEntry { object, inputs, value: write_terms(&v, |k| out.basis[k].label.clone()) })
            })
            .collect();
        CochainFile { degree, values }
    }
}

pub fn load_cochain(path: &Path, h: &HochschildComplex) -> Result<(usize, SparseVec)> {
    let file: CochainFile = parse_json(path)?;
    let phi = file.to_cochain(h).map_err(|e| e.in_file(path.display().to_string()))?;
    Ok((file.degree, phi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hochschild::HochschildSpec;
    use crate::lincat::{from_algebra, incidence_category};
    use crate::sites::Poset;

    const Q: ScalarKind = ScalarKind::Rational;

    #[test]
    fn category_round_trip_is_byte_exact() {
        let o = RingPresheaf::constant(Poset::chain(3), Algebra::dual_numbers(Q));
        let c = incidence_category(&o).unwrap();
        let text = write_category(&c).unwrap();
        let back = parse_category(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(write_category(&back).unwrap(), text);
    }

    #[test]
    fn broken_associativity_names_the_triple() {
        let c = from_algebra(&Algebra::dual_numbers(Q)).unwrap();
        let mut file = CategoryFile::from_category(&c).unwrap();
        // e ∘ e = 1 breaks associativity against the unit-free square.
        for entry in &mut file.composition {
            if entry.g == "e" && entry.f == "e" {
                entry.result = vec![("1".into(), "1".into())];
            }
        }
        if !file.composition.iter().any(|e| e.g == "e" && e.f == "e") {
            file.composition.push(CompositionEntry { g: "e".into(), f: "e".into(), result: vec![("e".into(), "1".into()), ("1".into(), "1".into())] });
        }
        file.composition.retain(|e| !(e.g == "1" && e.f == "e"));
        let bad = file.to_category().unwrap();
        let report = bad.validate();
        assert!(!report.is_ok());
        assert!(report.to_string().contains('e'));
    }

    #[test]
    fn cochain_file_round_trip() {
        let c = Arc::new(from_algebra(&Algebra::dual_numbers(Q)).unwrap());
        let h = HochschildComplex::build(&HochschildSpec::diagonal(c, 3)).unwrap();
        let rep = h.cohomology(2).unwrap().representatives[0].clone();
        let file = CochainFile::from_cochain(&h, 2, &rep);
        assert_eq!(file.to_cochain(&h).unwrap(), rep);
    }

    #[test]
    fn builtin_algebras_resolve() {
        assert_eq!(resolve_algebra("builtin:truncated:3", Q, Path::new(".")).unwrap().dim(), 3);
        assert!(resolve_algebra("builtin:nope", Q, Path::new(".")).is_err());
    }
}
