//! Python bindings for the `pastebox` library.
//!
//! Boxes cross the boundary as `(lo, hi)` tuples; Python sequences are
//! accepted for the coordinates and lists come back.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use pastebox::nerve::{nerve_count, segal_check};
use pastebox::structure::{self, Verdict};
use pastebox::toolkit::suite::{run_suite as run_checks, SuiteConfig};
use pastebox::toolkit::{self, fixtures};
use pastebox::{Coord, LatticeBox, PastingShape, ShapeError};

type PyBox = (Vec<Coord>, Vec<Coord>);

fn err(e: ShapeError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_box((lo, hi): PyBox) -> PyResult<LatticeBox> {
    LatticeBox::new(&lo, &hi).map_err(err)
}

fn from_box(b: &LatticeBox) -> PyBox {
    (b.lo.coords().to_vec(), b.hi.coords().to_vec())
}

/// A finite set of lattice boxes closed under faces and joins.
#[pyclass(name = "Shape", frozen, from_py_object)]
#[derive(Clone)]
struct PyShape {
    inner: PastingShape,
}

impl From<PastingShape> for PyShape {
    fn from(inner: PastingShape) -> Self {
        PyShape { inner }
    }
}

#[pymethods]
impl PyShape {
    /// Closes the given generator boxes.
    #[new]
    fn new(dim: usize, generators: Vec<PyBox>) -> PyResult<Self> {
        let gens = generators.into_iter().map(to_box).collect::<PyResult<Vec<_>>>()?;
        Ok(PastingShape::close(dim, gens).map_err(err)?.into())
    }

    /// Builds a shape from a box set that must already be closed.
    #[staticmethod]
    fn explicit(dim: usize, boxes: Vec<PyBox>) -> PyResult<Self> {
        let boxes = boxes.into_iter().map(to_box).collect::<PyResult<Vec<_>>>()?;
        Ok(PastingShape::from_explicit(dim, boxes).map_err(err)?.into())
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(toolkit::parse_shape(text).map_err(err)?.into())
    }

    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        Ok(fixtures::fixture(name).map_err(err)?.into())
    }

    #[staticmethod]
    fn standard_grid(extents: Vec<Coord>) -> Self {
        pastebox::standard_grid(&extents).into()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn boxes(&self) -> Vec<PyBox> {
        self.inner.boxes().iter().map(from_box).collect()
    }

    fn contains(&self, b: PyBox) -> PyResult<bool> {
        Ok(self.inner.contains(&to_box(b)?))
    }

    fn union(&self, other: &PyShape) -> PyResult<Self> {
        Ok(self.inner.union(&other.inner).map_err(err)?.into())
    }

    fn intersect(&self, other: &PyShape) -> PyResult<Self> {
        Ok(self.inner.intersect(&other.inner).map_err(err)?.into())
    }

    fn truncate(&self, k: usize) -> PyResult<Self> {
        Ok(self.inner.truncate(k).map_err(err)?.into())
    }

    fn is_subshape_of(&self, other: &PyShape) -> bool {
        self.inner.is_subshape_of(&other.inner)
    }

    #[pyo3(signature = (name=None))]
    fn serialize(&self, name: Option<&str>) -> String {
        toolkit::serialize_shape(&self.inner, name)
    }

    fn render_svg(&self) -> PyResult<String> {
        toolkit::render_svg(&self.inner).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __eq__(&self, other: &PyShape) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Shape(dim={}, boxes={})", self.inner.dim(), self.inner.len())
    }
}

/// Grid witness as `(lines, closed)`, or `None`.
#[pyfunction]
fn detect_grid(shape: &PyShape) -> Option<(Vec<Vec<Coord>>, bool)> {
    pastebox::detect_grid(&shape.inner).map(|w| (w.lines, w.closed))
}

/// `"yes"`, `"no"` or `"inconclusive"`.
#[pyfunction]
fn is_admittable(shape: &PyShape) -> &'static str {
    structure::find_decomposition(&shape.inner).label()
}

/// Minimal height, or `None` when the shape is not admittable.
#[pyfunction]
fn height(shape: &PyShape) -> PyResult<Option<u32>> {
    match structure::height_of(&shape.inner) {
        Verdict::Yes(h) => Ok(Some(h)),
        Verdict::No => Ok(None),
        Verdict::Inconclusive => Err(PyValueError::new_err("search budget exhausted")),
    }
}

#[pyfunction]
fn is_composable(shape: &PyShape) -> &'static str {
    structure::is_composable(&shape.inner).verdict
}

#[pyfunction]
fn is_locally_composable(shape: &PyShape) -> PyResult<&'static str> {
    Ok(structure::is_locally_composable(&shape.inner).map_err(err)?.verdict)
}

/// Windows of the `k`-vertebrae.
#[pyfunction]
fn vertebrae(shape: &PyShape, k: usize) -> Vec<PyBox> {
    structure::enumerate_vertebrae(&shape.inner, k).iter().map(|(_, w)| from_box(&w.window)).collect()
}

/// Whether the shape equals the union of its vertebrae, and the boxes missed.
#[pyfunction]
fn verify_vertebra_union(shape: &PyShape) -> (bool, Vec<PyBox>) {
    let r = structure::verify_vertebra_union(&shape.inner);
    (r.equal, r.residual.iter().map(from_box).collect())
}

#[pyfunction]
fn check_covering(shape: &PyShape, parts: Vec<PyShape>) -> PyResult<bool> {
    let parts: Vec<PastingShape> = parts.into_iter().map(|p| p.inner).collect();
    Ok(structure::check_covering(&shape.inner, &parts).map_err(err)?.verdict)
}

#[pyfunction]
fn nerve_size(shape: &PyShape, level: Vec<usize>) -> PyResult<u64> {
    if level.len() != shape.inner.dim() {
        return Err(PyValueError::new_err("level length must equal the dimension"));
    }
    Ok(nerve_count(&shape.inner, &level))
}

/// Simplices of one nerve level, each a list of monotone sequences.
#[pyfunction]
fn nerve_simplices(shape: &PyShape, level: Vec<usize>) -> PyResult<Vec<Vec<Vec<Coord>>>> {
    if level.len() != shape.inner.dim() {
        return Err(PyValueError::new_err("level length must equal the dimension"));
    }
    Ok(pastebox::nerve_level(&shape.inner, &level).simplices.into_iter().map(|s| s.maps).collect())
}

#[pyfunction]
fn segal(shape: &PyShape, level: Vec<usize>) -> PyResult<bool> {
    if level.len() != shape.inner.dim() {
        return Err(PyValueError::new_err("level length must equal the dimension"));
    }
    Ok(segal_check(&shape.inner, &level))
}

#[pyfunction]
#[pyo3(signature = (seed, budget=8))]
fn random_composable(seed: u64, budget: u64) -> PyShape {
    toolkit::random_composable(seed, budget).0.into()
}

/// Runs the check suite and returns the JSON report.
#[pyfunction]
#[pyo3(signature = (seed=0, skip_slow=false, only=Vec::new()))]
fn run_suite(py: Python<'_>, seed: u64, skip_slow: bool, only: Vec<String>) -> String {
    let config = SuiteConfig { seed, skip_slow, only, ..Default::default() };
    let report = py.detach(|| run_checks(&config));
    serde_json::to_string(&report).expect("report serializes")
}

#[pyfunction]
fn fixture_names() -> Vec<&'static str> {
    fixtures::fixture_names()
}

#[pymodule]
fn pastebox_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyShape>()?;
    m.add_function(wrap_pyfunction!(detect_grid, m)?)?;
    m.add_function(wrap_pyfunction!(is_admittable, m)?)?;
    m.add_function(wrap_pyfunction!(height, m)?)?;
    m.add_function(wrap_pyfunction!(is_composable, m)?)?;
    m.add_function(wrap_pyfunction!(is_locally_composable, m)?)?;
    m.add_function(wrap_pyfunction!(vertebrae, m)?)?;
    m.add_function(wrap_pyfunction!(verify_vertebra_union, m)?)?;
    m.add_function(wrap_pyfunction!(check_covering, m)?)?;
    m.add_function(wrap_pyfunction!(nerve_size, m)?)?;
    m.add_function(wrap_pyfunction!(nerve_simplices, m)?)?;
    m.add_function(wrap_pyfunction!(segal, m)?)?;
    m.add_function(wrap_pyfunction!(random_composable, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(fixture_names, m)?)?;
    Ok(())
}
