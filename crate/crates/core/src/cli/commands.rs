use std::path::Path;
use std::sync::Arc;

use hochcat::bimodule::Bimodule;
use hochcat::corpus;
use hochcat::deform::{
    associativity_defects, equivalence_class_dimension, first_order_check, is_cocycle, obstruction_square, FirstOrderVerdict,
    ObstructionVerdict,
};
use hochcat::hochschild::{betti_text, compare_dims, BettiRow, Comparison, HochschildComplex, HochschildSpec};
use hochcat::io::{self, CochainFile, Term};
use hochcat::linalg::{Joint, SparseVec};
use hochcat::lincat::{category_algebra, from_algebra, incidence_category, opposite, FinLinCat, Violation};
use hochcat::sites::{gs_bicomplex, mayer_vietoris_over, RingPresheaf, SpaceAnalysis};
use hochcat::suite::{outcome_text, run_criterion, CriterionOutcome, CRITERIA};
use hochcat::{Error, Result, ScalarKind};
use serde::Serialize;

use super::{Outcome, Settings, EXIT_OK, EXIT_VALIDATION};

impl Settings {
    fn kind(&self) -> ScalarKind {
        self.scalars.unwrap_or(ScalarKind::Rational)
    }

    fn check_scalars(&self, found: ScalarKind, origin: &str) -> Result<()> {
        match self.scalars {
            Some(expected) if expected != found => Err(Error::ScalarKind { expected, found }.in_file(origin)),
            _ => Ok(()),
        }
    }

    fn spec(&self, spec: HochschildSpec) -> HochschildSpec {
        spec.normalized(self.normalized).dim_cap(self.max_dim)
    }
}

fn load_category(s: &Settings, reference: &str) -> Result<FinLinCat> {
    if let Some(name) = reference.strip_prefix("builtin:") {
        return corpus::category(name, s.kind());
    }
    let c = io::load_category(Path::new(reference))?;
    s.check_scalars(c.kind(), reference)?;
    Ok(c)
}

fn exact_rows(dims: &[usize]) -> Vec<BettiRow> {
    dims.iter().enumerate().map(|(d, &dim)| BettiRow { degree: d as i32, dim, edge_caveat: None }).collect()
}

fn table(degrees: usize, rows: &[(&str, Vec<String>)]) -> String {
    let w = rows.iter().map(|(n, _)| n.chars().count()).max().unwrap_or(0).max(6);
    let pad = |s: &str| format!("{s}{}", " ".repeat(w - s.chars().count()));
    let mut out = pad("degree");
    for d in 0..degrees {
        out.push_str(&format!(" {d:>5}"));
    }
    out.push('\n');
    for (name, cells) in rows {
        out.push_str(&pad(name));
        for c in cells {
            out.push_str(&format!(" {c:>5}"));
        }
        out.push('\n');
    }
    out
}

fn cells(rows: &[BettiRow]) -> Vec<String> {
    rows.iter().map(|r| if r.edge_caveat.is_some() { format!("≤{}", r.dim) } else { r.dim.to_string() }).collect()
}

#[derive(Serialize)]
struct ValidateReport {
    file: String,
    kind: &'static str,
    valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    objects: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    total_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    elements: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    space: Option<SpaceAnalysis>,
    violations: Vec<Violation>,
}

pub fn validate(s: &Settings, file: &Path) -> Result<Outcome> {
    let at = file.display().to_string();
    let value: serde_json::Value = io::parse_json(file)?;
    let has = |k: &str| value.get(k).is_some();
    let mut r =
        ValidateReport { file: at.clone(), kind: "", valid: true, objects: None, total_dim: None, elements: None, space: None, violations: Vec::new() };
    if has("homs") {
        let c = io::read_category(file)?;
        s.check_scalars(c.kind(), &at)?;
        r.kind = "category";
        r.violations = c.validate().violations;
        r.valid = r.violations.is_empty();
        r.objects = Some(c.objects().to_vec());
        r.total_dim = Some(c.total_dim());
    } else if has("left_category") {
        let x = io::load_bimodule(file)?;
        s.check_scalars(x.kind(), &at)?;
        r.kind = "bimodule";
        r.total_dim = Some(x.total_dim());
    } else if has("points") {
        let loaded = io::load_space(file)?;
        let basis = loaded.space.minimal_basis();
        let o = loaded.coefficients(&basis, s.kind()).map_err(|e| e.in_file(&at))?;
        r.kind = "space";
        r.elements = Some(o.poset().labels().to_vec());
        r.space = Some(loaded.space.analysis()?);
    } else if has("elements") || has("algebras") {
        let o = io::load_presheaf(file)?;
        s.check_scalars(o.kind(), &at)?;
        r.kind = "presheaf";
        r.elements = Some(o.poset().labels().to_vec());
        r.total_dim = Some(o.algebras().iter().map(|a| a.dim()).sum());
    } else if has("degree") || has("opens") {
        return Err(Error::Parse("cover and cochain files are checked by `mv` and `deform` against their space or category".into()).in_file(at));
    } else {
        return Err(Error::Parse("cannot tell what kind of description this is".into()).in_file(at));
    }
    let mut text = format!("{}: {} ", r.file, r.kind);
    if r.valid {
        text.push_str("is valid\n");
    } else {
        text.push_str(&format!("violates {} axiom instance(s)\n", r.violations.len()));
        for v in &r.violations {
            text.push_str(&format!("  {}: {}\n", v.axiom, v.witness));
        }
    }
    let code = if r.valid { EXIT_OK } else { EXIT_VALIDATION };
    let mut out = Outcome::new("validate", &r, text, true)?;
    out.code = code;
    Ok(out)
}

#[derive(Serialize)]
struct DegreeDim {
    degree: i32,
    dim: usize,
}

#[derive(Serialize)]
struct Representatives {
    degree: i32,
    cochains: Vec<Vec<Term>>,
}

#[derive(Serialize)]
struct HhReport {
    input: String,
    scalars: String,
    window: usize,
    normalized: bool,
    censoring_aware: bool,
    cochain_dims: Vec<DegreeDim>,
    betti: Vec<BettiRow>,
    representatives: Vec<Representatives>,
}

pub fn hh(s: &Settings, category: Option<&str>, coefficients: Option<&Path>) -> Result<Outcome> {
    let (input, spec) = match (category, coefficients) {
        (_, Some(path)) => {
            let x = io::load_bimodule(path)?;
            s.check_scalars(x.kind(), &path.display().to_string())?;
            if let Some(c) = category {
                let cat = load_category(s, c)?;
                if !x.is_diagonal_over(&Arc::new(cat.clone())) && **x.left() != cat {
                    return Err(Error::Validation(format!("{} is not a bimodule over {c}", path.display())));
                }
            }
            (path.display().to_string(), HochschildSpec::new(x, s.window))
        }
        (Some(c), None) => (c.to_string(), HochschildSpec::diagonal(Arc::new(load_category(s, c)?), s.window)),
        (None, None) => return Err(Error::Validation("give a category or --coefficients".into())),
    };
    let h = HochschildComplex::build(&s.spec(spec))?;
    let betti = h.betti_table()?;
    let mut representatives = Vec::new();
    for n in h.lo()..=h.n_max() {
        let cochains = h
            .cohomology(n)?
            .representatives
            .iter()
            .map(|v| v.iter().map(|(i, c)| (h.basis_label(n, i), c.to_string())).collect())
            .collect();
        representatives.push(Representatives { degree: n, cochains });
    }
    let r = HhReport {
        input,
        scalars: h.kind().to_string(),
        window: s.window,
        normalized: h.spec.normalized,
        censoring_aware: h.spec.censoring_aware,
        cochain_dims: (h.lo()..=h.complex.hi()).map(|n| DegreeDim { degree: n, dim: h.dim(n) }).collect(),
        betti,
        representatives,
    };
    let mut text = format!("Hochschild cohomology of {} over {}\n{}", r.input, r.scalars, betti_text(&r.betti));
    for rep in &r.representatives {
        for (k, c) in rep.cochains.iter().enumerate() {
            let terms: Vec<String> = c.iter().map(|(l, x)| format!("{x}·[{l}]")).collect();
            text.push_str(&format!("HH^{} #{}: {}\n", rep.degree, k + 1, terms.join(" + ")));
        }
    }
    Outcome::new("hh", &r, text, true)
}

#[derive(Serialize)]
struct CompareReport {
    left: String,
    right: String,
    mode: &'static str,
    comparison: Comparison,
}

pub fn compare(s: &Settings, left: &str, right: Option<&str>, with_opposite: bool, blind: bool) -> Result<Outcome> {
    let a = Arc::new(load_category(s, left)?);
    let spec_a = s.spec(HochschildSpec::diagonal(a.clone(), s.window));
    let (right_name, mode, spec_b) = match right {
        Some(b) => (b.to_string(), "categories", HochschildSpec::diagonal(Arc::new(load_category(s, b)?), s.window)),
        None if with_opposite => (format!("{left} (opposite)"), "opposite", HochschildSpec::diagonal(Arc::new(opposite(&a)), s.window)),
        None if blind => {
            let r = a.censoring().cloned().ok_or_else(|| Error::Validation(format!("{left} carries no censoring relation")))?;
            let truncated = Bimodule::diagonal(a.clone()).truncate_by_relation(&r)?;
            (format!("{left} (blind, truncated)"), "censoring", HochschildSpec::new(truncated, s.window).censoring_aware(false))
        }
        None => return Err(Error::Validation("give a second category, --opposite or --blind".into())),
    };
    let comparison = compare_dims(&spec_a, &s.spec(spec_b))?;
    let text = comparison.to_text(left, &right_name);
    // Opposites and censoring must agree; two arbitrary categories need not.
    let ok = comparison.equal || mode == "categories";
    let r = CompareReport { left: left.to_string(), right: right_name, mode, comparison };
    Outcome::new("compare", &r, text, ok)
}

#[derive(Serialize)]
struct MvReport {
    space: String,
    u: Vec<String>,
    v: Vec<String>,
    coefficients: &'static str,
    /// Whether acyclicity of the basis opens was checked or is assumed.
    acyclicity: &'static str,
    hc_x: Vec<BettiRow>,
    hc_u: Vec<BettiRow>,
    hc_v: Vec<BettiRow>,
    hc_uv: Vec<BettiRow>,
    hc_x_from_sequence: Vec<BettiRow>,
    connecting_ranks: Vec<usize>,
    joints: Vec<Joint>,
    all_exact: bool,
    passes: bool,
}

pub fn mv(s: &Settings, space: &Path, cover: Option<&Path>, names: Option<(&str, &str)>) -> Result<Outcome> {
    let at = space.display().to_string();
    let loaded = io::load_space(space)?;
    let (u, v) = match (cover, names) {
        (Some(path), _) => match io::load_cover(path, &loaded)?.as_slice() {
            [(_, u), (_, v)] => (*u, *v),
            other => return Err(Error::Validation(format!("a Mayer–Vietoris cover has two opens, not {}", other.len())).in_file(path.display().to_string())),
        },
        (None, Some((u, v))) => (loaded.resolve_open(u)?, loaded.resolve_open(v)?),
        (None, None) => return Err(Error::Validation("give --cover or --u and --v".into())),
    };
    let x = &loaded.space;
    if u | v != x.whole() {
        return Err(Error::Validation("the two opens do not cover the space".into()).in_file(at));
    }
    let basis = x.minimal_basis();
    let kind = match &loaded.presheaf {
        Some(p) => s.scalars.map_or_else(|| p.kind(), Ok)?,
        None => s.kind(),
    };
    let o = loaded.coefficients(&basis, kind).map_err(|e| e.in_file(&at))?;
    let m = mayer_vietoris_over(&basis, &o, u, v, s.window)?;
    let file_presheaf = loaded.presheaf.is_some();
    let r = MvReport {
        space: at,
        u: x.labels_of(u),
        v: x.labels_of(v),
        coefficients: if file_presheaf { "file presheaf" } else { "constant sheaf" },
        acyclicity: if file_presheaf { "assumed" } else { "minimal opens are contractible" },
        hc_x: exact_rows(&m.hc_x),
        hc_u: exact_rows(&m.hc_u),
        hc_v: exact_rows(&m.hc_v),
        hc_uv: exact_rows(&m.hc_uv),
        hc_x_from_sequence: exact_rows(&m.hc_x_from_sequence),
        connecting_ranks: m.connecting_ranks.clone(),
        joints: m.joints.clone(),
        all_exact: m.all_exact,
        passes: m.passes(),
    };
    let mut text = format!("Mayer–Vietoris for U = {{{}}}, V = {{{}}} in {}\n", r.u.join(","), r.v.join(","), r.space);
    text.push_str(&table(
        s.window + 1,
        &[
            ("HC(X)", cells(&r.hc_x)),
            ("HC(U)", cells(&r.hc_u)),
            ("HC(V)", cells(&r.hc_v)),
            ("HC(U∩V)", cells(&r.hc_uv)),
            ("HC(X) from sequence", cells(&r.hc_x_from_sequence)),
            ("connecting rank", r.connecting_ranks.iter().map(|k| k.to_string()).collect()),
        ],
    ));
    text.push_str(&format!("exact at every joint: {}\n", if r.all_exact { "yes" } else { "no" }));
    let ok = r.passes;
    Outcome::new("mv", &r, text, ok)
}

#[derive(Serialize)]
struct GsReport {
    input: String,
    scalars: String,
    elements: Vec<String>,
    bicomplex: Vec<BettiRow>,
    incidence_category: Vec<BettiRow>,
    category_algebra: Vec<BettiRow>,
    equal: bool,
}

fn load_presheaf(s: &Settings, input: &str) -> Result<RingPresheaf> {
    if let Some(name) = input.strip_prefix("builtin:") {
        return corpus::presheaf(name, s.kind());
    }
    let path = Path::new(input);
    let value: serde_json::Value = io::parse_json(path)?;
    if value.get("points").is_some() {
        let loaded = io::load_space(path)?;
        let basis = loaded.space.minimal_basis();
        let kind = match &loaded.presheaf {
            Some(p) => s.scalars.map_or_else(|| p.kind(), Ok)?,
            None => s.kind(),
        };
        return loaded.coefficients(&basis, kind).map_err(|e| e.in_file(input));
    }
    let o = io::load_presheaf(path)?;
    s.check_scalars(o.kind(), input)?;
    Ok(o)
}

pub fn gs_compare(s: &Settings, input: &str) -> Result<Outcome> {
    let o = load_presheaf(s, input)?;
    let gs = gs_bicomplex(&o, s.window, s.max_dim)?;
    let bicomplex: Vec<BettiRow> =
        gs.cohomology_range(0, gs.hi())?.into_iter().map(|h| BettiRow { degree: h.degree, dim: h.betti, edge_caveat: h.caveat }).collect();
    let inc = Arc::new(incidence_category(&o)?);
    let alg = Arc::new(from_algebra(&category_algebra(&inc)?)?);
    let table_of = |c: Arc<FinLinCat>| -> Result<Vec<BettiRow>> {
        // Normalized cochains keep the category algebra within the dimension cap longer.
        HochschildComplex::build(&HochschildSpec::diagonal(c, s.window).normalized(true).dim_cap(s.max_dim))?.betti_table()
    };
    let (incidence, algebra) = (table_of(inc)?, table_of(alg)?);
    let equal = Comparison::from_tables(bicomplex.clone(), incidence.clone()).equal && Comparison::from_tables(bicomplex.clone(), algebra.clone()).equal;
    let r = GsReport {
        input: input.to_string(),
        scalars: o.kind().to_string(),
        elements: o.poset().labels().to_vec(),
        bicomplex,
        incidence_category: incidence,
        category_algebra: algebra,
        equal,
    };
    let mut text = format!("presheaf cohomology of {} over {}\n", r.input, r.scalars);
    text.push_str(&table(
        s.window + 2,
        &[("bicomplex", cells(&r.bicomplex)), ("incidence category", cells(&r.incidence_category)), ("category algebra", cells(&r.category_algebra))],
    ));
    text.push_str(&format!("verdict: {}\n", if equal { "equal" } else { "different" }));
    Outcome::new("gs-compare", &r, text, equal)
}

#[derive(Serialize)]
struct SecondOrder {
    unobstructed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    psi: Option<CochainFile>,
    /// Coordinates of the obstruction in the basis of HH³ representatives.
    #[serde(skip_serializing_if = "Option::is_none")]
    class: Option<Vec<String>>,
    /// With `ψ`, every associativity defect through `t²` vanishes.
    #[serde(skip_serializing_if = "Option::is_none")]
    defects_vanish: Option<bool>,
}

fn second_order(h: &HochschildComplex, phi: &SparseVec) -> Result<SecondOrder> {
    Ok(match obstruction_square(h, phi)? {
        ObstructionVerdict::Unobstructed { psi } => {
            let defects = associativity_defects(h, &[&SparseVec::new(), phi, &psi]);
            let vanish = defects.iter().take(3).all(SparseVec::is_zero);
            SecondOrder { unobstructed: true, psi: Some(CochainFile::from_cochain(h, 2, &psi)), class: None, defects_vanish: Some(vanish) }
        }
        ObstructionVerdict::Obstructed { class } => SecondOrder { unobstructed: false, psi: None, class: Some(class), defects_vanish: None },
    })
}

#[derive(Serialize)]
struct CochainReport {
    category: String,
    cochain: String,
    first_order: FirstOrderVerdict,
    cocycle: bool,
    paths_agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    second_order: Option<SecondOrder>,
}

#[derive(Serialize)]
struct ClassReport {
    representative: CochainFile,
    paths_agree: bool,
    second_order: SecondOrder,
}

#[derive(Serialize)]
struct EnumerateReport {
    category: String,
    hh2: usize,
    equivalence_classes: usize,
    classes: Vec<ClassReport>,
}

fn second_order_text(so: &SecondOrder) -> String {
    match (&so.psi, &so.class) {
        (Some(psi), _) => format!(
            "unobstructed; second-order term with {} nonzero value(s){}",
            psi.values.len(),
            if so.defects_vanish == Some(true) { ", all defects through t² vanish" } else { ", BUT a defect remains" }
        ),
        (None, Some(class)) => format!("obstructed; class ({}) in HH³", class.join(", ")),
        _ => String::new(),
    }
}

pub fn deform(s: &Settings, category: &str, cochain: Option<&Path>, enumerate: bool) -> Result<Outcome> {
    let c = Arc::new(load_category(s, category)?);
    let h = HochschildComplex::build(&s.spec(HochschildSpec::diagonal(c, s.window)))?;
    if enumerate {
        let reps = h.cohomology(2)?.representatives;
        let mut classes = Vec::new();
        for rep in &reps {
            let agree = first_order_check(&h, rep)?.associative_mod_t2 == is_cocycle(&h, rep);
            classes.push(ClassReport { representative: CochainFile::from_cochain(&h, 2, rep), paths_agree: agree, second_order: second_order(&h, rep)? });
        }
        let r = EnumerateReport { category: category.to_string(), hh2: reps.len(), equivalence_classes: equivalence_class_dimension(&h)?, classes };
        let mut text = format!(
            "first-order deformations of {} up to equivalence: dimension {} (HH² has dimension {})\n",
            r.category, r.equivalence_classes, r.hh2
        );
        for (k, cl) in r.classes.iter().enumerate() {
            text.push_str(&format!("class #{}: {}\n", k + 1, second_order_text(&cl.second_order)));
        }
        let ok = r.hh2 == r.equivalence_classes
            && r.classes.iter().all(|c| c.paths_agree && c.second_order.defects_vanish != Some(false));
        return Outcome::new("deform", &r, text, ok);
    }
    let path = cochain.ok_or_else(|| Error::Validation("give a cochain file or --enumerate".into()))?;
    let (degree, phi) = io::load_cochain(path, &h)?;
    if degree != 2 {
        return Err(Error::Validation(format!("a deformation of the composition is a 2-cochain, not a {degree}-cochain")).in_file(path.display().to_string()));
    }
    let first = first_order_check(&h, &phi)?;
    let cocycle = is_cocycle(&h, &phi);
    let second = if cocycle { Some(second_order(&h, &phi)?) } else { None };
    let r = CochainReport {
        category: category.to_string(),
        cochain: path.display().to_string(),
        paths_agree: first.associative_mod_t2 == cocycle,
        first_order: first,
        cocycle,
        second_order: second,
    };
    let mut text = format!("μ + tφ on {} with φ from {}\n", r.category, r.cochain);
    if r.first_order.associative_mod_t2 {
        text.push_str("first order: associative mod t²\n");
    } else {
        text.push_str("first order: not associative mod t²\n");
        if let Some(w) = &r.first_order.witness {
            let defect: Vec<String> = w.defect.iter().map(|(l, c)| format!("{c}·{l}")).collect();
            text.push_str(&format!("  witness ({}) has defect {}\n", w.inputs.join(", "), defect.join(" + ")));
        }
    }
    text.push_str(&format!("δφ = 0: {}\n", if r.cocycle { "yes" } else { "no" }));
    if let Some(so) = &r.second_order {
        text.push_str(&format!("second order: {}\n", second_order_text(so)));
    }
    let ok = r.paths_agree && r.second_order.as_ref().is_none_or(|so| so.defects_vanish != Some(false));
    Outcome::new("deform", &r, text, ok)
}

#[derive(Serialize)]
struct SuiteReport {
    scalars: String,
    criteria: Vec<CriterionOutcome>,
    passed: bool,
}

pub fn suite(s: &Settings, criteria: &[usize]) -> Result<Outcome> {
    let ids: Vec<usize> = if criteria.is_empty() { (1..=CRITERIA.len()).collect() } else { criteria.to_vec() };
    let outcomes = ids.iter().map(|&id| run_criterion(id, s.kind())).collect::<Result<Vec<_>>>()?;
    let passed = outcomes.iter().all(|o| o.passed);
    let mut text = outcome_text(&outcomes);
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    text.push_str(&if failed == 0 { format!("all {} criteria passed\n", outcomes.len()) } else { format!("{failed} of {} criteria failed\n", outcomes.len()) });
    let r = SuiteReport { scalars: s.kind().to_string(), criteria: outcomes, passed };
    Outcome::new("suite", &r, text, passed)
}
