//! Python bindings: categories, Hochschild cohomology, comparisons,
//! deformation checks, finite spaces and Mayer–Vietoris.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use hochcat::corpus;
use hochcat::deform::{first_order_check, is_cocycle, obstruction_square, ObstructionVerdict};
use hochcat::hochschild::{HochschildComplex, HochschildSpec};
use hochcat::io::{self, CochainFile, LoadedSpace};
use hochcat::lincat::{opposite, FinLinCat};
use hochcat::sites::mayer_vietoris_over;
use hochcat::suite::run_criterion;
use hochcat::{Error, ScalarKind};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: Error) -> PyErr {
    match e.root() {
        Error::ResourceCap { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn scalars(s: &str) -> PyResult<ScalarKind> {
    s.parse().map_err(|e: Error| err(e))
}

fn build(c: &Arc<FinLinCat>, window: usize, normalized: bool) -> PyResult<HochschildComplex> {
    HochschildComplex::build(&HochschildSpec::diagonal(c.clone(), window).normalized(normalized)).map_err(err)
}

/// A finite linear category.
#[pyclass(frozen, module = "hochcat")]
struct Category {
    inner: Arc<FinLinCat>,
}

fn validated(c: FinLinCat) -> PyResult<Category> {
    c.validate().into_result().map_err(err)?;
    Ok(Category { inner: Arc::new(c) })
}

#[pymethods]
impl Category {
    /// Parse a category description; raises ValueError if an axiom fails.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        validated(io::parse_category(text).map_err(err)?)
    }

    #[staticmethod]
    fn load(path: PathBuf) -> PyResult<Self> {
        Ok(Category { inner: Arc::new(io::load_category(&path).map_err(err)?) })
    }

    /// One of the bundled categories, e.g. `dual_numbers` or `pseudocircle`.
    #[staticmethod]
    #[pyo3(signature = (name, scalars = "rational"))]
    fn builtin(name: &str, scalars: &str) -> PyResult<Self> {
        validated(corpus::category(name, self::scalars(scalars)?).map_err(err)?)
    }

    #[getter]
    fn objects(&self) -> Vec<String> {
        self.inner.objects().to_vec()
    }

    #[getter]
    fn total_dim(&self) -> usize {
        self.inner.total_dim()
    }

    #[getter]
    fn scalars(&self) -> String {
        self.inner.kind().to_string()
    }

    fn to_json(&self) -> PyResult<String> {
        io::write_category(&self.inner).map_err(err)
    }

    fn opposite(&self) -> Self {
        Category { inner: Arc::new(opposite(&self.inner)) }
    }

    /// `(degree, dim, exact)` for degrees `0..=window + 1`; the last row is an upper bound.
    #[pyo3(signature = (window = 3, normalized = false))]
    fn hochschild(&self, window: usize, normalized: bool) -> PyResult<Vec<(i32, usize, bool)>> {
        let rows = build(&self.inner, window, normalized)?.betti_table().map_err(err)?;
        Ok(rows.into_iter().map(|r| (r.degree, r.dim, r.edge_caveat.is_none())).collect())
    }

    /// First- and second-order checks for `μ + tφ`, with `φ` a degree-2 cochain description.
    fn deformation<'py>(&self, py: Python<'py>, cochain_json: &str) -> PyResult<Bound<'py, PyDict>> {
        let file: CochainFile = serde_json::from_str(cochain_json).map_err(|e| PyValueError::new_err(e.to_string()))?;
        if file.degree != 2 {
            return Err(PyValueError::new_err(format!("a deformation is a 2-cochain, not a {}-cochain", file.degree)));
        }
        let h = build(&self.inner, 3, false)?;
        let phi = file.to_cochain(&h).map_err(err)?;
        let first = first_order_check(&h, &phi).map_err(err)?;
        let cocycle = is_cocycle(&h, &phi);
        let out = PyDict::new(py);
        out.set_item("associative_mod_t2", first.associative_mod_t2)?;
        out.set_item("cocycle", cocycle)?;
        let unobstructed = if cocycle {
            Some(matches!(obstruction_square(&h, &phi).map_err(err)?, ObstructionVerdict::Unobstructed { .. }))
        } else {
            None
        };
        out.set_item("unobstructed", unobstructed)?;
        Ok(out)
    }

    fn __repr__(&self) -> String {
        format!("Category(objects={:?}, total_dim={})", self.inner.objects(), self.inner.total_dim())
    }
}

/// Axiom violations of a category description, as `axiom: witness` lines.
#[pyfunction]
fn violations(text: &str) -> PyResult<Vec<String>> {
    let c = io::parse_category(text).map_err(err)?;
    Ok(c.validate().violations.iter().map(|v| format!("{}: {}", v.axiom, v.witness)).collect())
}

/// Whether two categories have the same Hochschild Betti numbers in degrees `0..=window`.
#[pyfunction]
#[pyo3(signature = (left, right, window = 3))]
fn compare(left: &Category, right: &Category, window: usize) -> PyResult<bool> {
    let l = build(&left.inner, window, false)?.betti().map_err(err)?;
    let r = build(&right.inner, window, false)?.betti().map_err(err)?;
    Ok(l[..=window] == r[..=window])
}

/// A finite topological space, with constant coefficients unless its file gives a presheaf.
#[pyclass(frozen, module = "hochcat")]
struct Space {
    inner: LoadedSpace,
}

#[pymethods]
impl Space {
    #[staticmethod]
    fn load(path: PathBuf) -> PyResult<Self> {
        Ok(Space { inner: io::load_space(&path).map_err(err)? })
    }

    /// `pseudocircle`, `sierpinski` or `discrete2`.
    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        let space = corpus::spaces()
            .into_iter()
            .find_map(|(n, x)| (n == name).then_some(x))
            .ok_or_else(|| err(Error::UnknownObject(name.to_string())))?;
        Ok(Space { inner: LoadedSpace { space, named: BTreeMap::new(), presheaf: None, base: Path::new(".").to_path_buf() } })
    }

    #[getter]
    fn points(&self) -> Vec<String> {
        self.inner.space.points().to_vec()
    }

    /// The Mayer–Vietoris sequence for opens named `u` and `v` (named opens,
    /// `U_<point>` minimal opens or `X`).
    #[pyo3(signature = (u, v, window = 3, scalars = "rational"))]
    fn mayer_vietoris<'py>(&self, py: Python<'py>, u: &str, v: &str, window: usize, scalars: &str) -> PyResult<Bound<'py, PyDict>> {
        let x = &self.inner;
        let (su, sv) = (x.resolve_open(u).map_err(err)?, x.resolve_open(v).map_err(err)?);
        if su | sv != x.space.whole() {
            return Err(PyValueError::new_err("the two opens do not cover the space"));
        }
        let basis = x.space.minimal_basis();
        let o = x.coefficients(&basis, self::scalars(scalars)?).map_err(err)?;
        let m = mayer_vietoris_over(&basis, &o, su, sv, window).map_err(err)?;
        let out = PyDict::new(py);
        out.set_item("hc_x", &m.hc_x)?;
        out.set_item("hc_u", &m.hc_u)?;
        out.set_item("hc_v", &m.hc_v)?;
        out.set_item("hc_uv", &m.hc_uv)?;
        out.set_item("hc_x_from_sequence", &m.hc_x_from_sequence)?;
        out.set_item("connecting_ranks", &m.connecting_ranks)?;
        out.set_item("all_exact", m.all_exact)?;
        out.set_item("passes", m.passes())?;
        Ok(out)
    }
}

/// Run verification criteria (all twelve by default): `(id, name, passed)` each.
#[pyfunction]
#[pyo3(signature = (criteria = None, scalars = "rational"))]
fn suite(py: Python<'_>, criteria: Option<Vec<usize>>, scalars: &str) -> PyResult<Vec<(usize, String, bool)>> {
    let kind = self::scalars(scalars)?;
    let ids = criteria.unwrap_or_else(|| (1..=hochcat::suite::CRITERIA.len()).collect());
    py.detach(|| ids.iter().map(|&id| run_criterion(id, kind).map(|o| (o.id, o.name.to_string(), o.passed))).collect::<Result<Vec<_>, _>>())
        .map_err(err)
}

#[pymodule]
#[pyo3(name = "hochcat")]
fn hochcat_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Category>()?;
    m.add_class::<Space>()?;
    m.add_function(wrap_pyfunction!(violations, m)?)?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    m.add_function(wrap_pyfunction!(suite, m)?)?;
    Ok(())
}
