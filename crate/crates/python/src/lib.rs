//! Python bindings for the simperm library.
//!
//! Build with `cargo build --release -p simperm-py`; the resulting
//! `libsimperm_py.so` imports as the `simperm_py` module once renamed to
//! `simperm_py.so` on the Python path (see python/smoke_test.py).

use std::collections::BTreeMap;
use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use pyo3::basic::CompareOp;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyModule;

use simperm::oracle;
use simperm::wreath;
use simperm::Permutation as CorePermutation;
use simperm::{ExceptionalDescriptor, ExceptionalFamily, GridSlot};

fn value_error(e: simperm::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A permutation of {1, …, n} in one-line notation.
///
/// Construct from a string ("2 4 1 3" or "2413") or a list of values.
#[pyclass(frozen, from_py_object)]
#[derive(Clone)]
struct Permutation {
    inner: CorePermutation,
}

impl From<CorePermutation> for Permutation {
    fn from(inner: CorePermutation) -> Self {
        Permutation { inner }
    }
}

fn wrap_all(perms: impl IntoIterator<Item = CorePermutation>) -> Vec<Permutation> {
    perms.into_iter().map(Permutation::from).collect()
}

fn extract_core(value: &Bound<'_, PyAny>) -> PyResult<CorePermutation> {
    if let Ok(p) = value.extract::<Permutation>() {
        return Ok(p.inner);
    }
    if let Ok(text) = value.extract::<String>() {
        return simperm::parse_permutation(&text).map_err(value_error);
    }
    if let Ok(values) = value.extract::<Vec<u32>>() {
        return CorePermutation::new(values).map_err(value_error);
    }
    Err(PyValueError::new_err(
        "expected a Permutation, a string or a list of values",
    ))
}

#[pymethods]
impl Permutation {
    #[new]
    fn new(values: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(extract_core(values)?.into())
    }

    fn values(&self) -> Vec<u32> {
        self.inner.values().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Permutation(\"{}\")", self.inner)
    }

    fn __hash__(&self) -> u64 {
        let mut hasher = DefaultHasher::new();
        self.inner.hash(&mut hasher);
        hasher.finish()
    }

    fn __richcmp__(&self, other: &Self, op: CompareOp) -> bool {
        op.matches(self.inner.cmp(&other.inner))
    }

    /// True iff every interval is trivial.
    fn is_simple(&self) -> bool {
        self.inner.is_simple()
    }

    /// First nontrivial interval as a 1-based (start, end) pair, or None.
    fn nontrivial_interval(&self) -> Option<(usize, usize)> {
        self.inner.nontrivial_interval().map(|w| (w.start, w.end))
    }

    /// True iff `pattern` occurs in this permutation.
    fn contains(&self, pattern: &Bound<'_, PyAny>) -> PyResult<bool> {
        Ok(self.inner.contains_pattern(&extract_core(pattern)?))
    }

    /// Removes the entry at a 1-based position.
    fn delete(&self, position: usize) -> PyResult<Permutation> {
        self.inner
            .delete_point(position)
            .map(Into::into)
            .map_err(value_error)
    }

    /// Inserts a new entry of rank `value` after `position` existing
    /// elements (0 <= position <= n, 1 <= value <= n+1).
    fn insert(&self, position: usize, value: u32) -> PyResult<Permutation> {
        self.inner
            .insert_point(GridSlot { position, value })
            .map(Into::into)
            .map_err(value_error)
    }

    /// The simple permutations one point smaller, sorted.
    fn children(&self) -> PyResult<Vec<Permutation>> {
        Ok(wrap_all(self.inner.children().map_err(value_error)?))
    }

    /// The simple permutations one point larger, sorted.
    fn simple_extensions(&self) -> PyResult<Vec<Permutation>> {
        Ok(wrap_all(
            self.inner.simple_extensions().map_err(value_error)?,
        ))
    }

    fn reverse(&self) -> Permutation {
        self.inner.reverse().into()
    }

    fn complement(&self) -> Permutation {
        self.inner.complement().into()
    }

    fn inverse(&self) -> Permutation {
        self.inner.inverse().into()
    }

    /// The (family, m) descriptors under which this permutation is
    /// exceptional; empty when it is not.
    fn exceptional_types(&self) -> Vec<(u8, usize)> {
        simperm::exceptional_types_of(&self.inner)
            .into_iter()
            .map(|d| (d.family.index(), d.m))
            .collect()
    }

    fn is_exceptional(&self) -> bool {
        simperm::is_exceptional(&self.inner)
    }

    fn is_parallel_alternation(&self) -> bool {
        simperm::is_parallel_alternation(&self.inner)
    }

    fn is_wedge_alternation(&self) -> bool {
        simperm::is_wedge_alternation(&self.inner)
    }
}

/// A descending chain between comparable simple permutations.
#[pyclass(frozen)]
struct Chain {
    inner: simperm::Chain,
}

#[pymethods]
impl Chain {
    fn permutations(&self) -> Vec<Permutation> {
        wrap_all(self.inner.permutations().iter().cloned())
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    /// Number of leading unit (gap-1) transitions.
    fn split_index(&self) -> usize {
        self.inner.split_index()
    }

    fn is_unit(&self) -> bool {
        self.inner.is_unit()
    }

    fn __repr__(&self) -> String {
        let joined: Vec<String> = self
            .inner
            .permutations()
            .iter()
            .map(|p| p.to_string())
            .collect();
        format!("Chain({})", joined.join(" -> "))
    }
}

/// The leveled covering graph of simple permutations.
#[pyclass(frozen)]
struct PosetGraph {
    inner: simperm::PosetGraph,
}

#[pymethods]
impl PosetGraph {
    fn node_count(&self) -> usize {
        self.inner.node_count()
    }

    fn levels(&self) -> BTreeMap<usize, Vec<Permutation>> {
        self.inner
            .levels()
            .iter()
            .map(|(&n, level)| (n, wrap_all(level.iter().cloned())))
            .collect()
    }

    fn deletion_edges(&self) -> Vec<(Permutation, Permutation)> {
        self.inner
            .deletion_edges()
            .iter()
            .map(|(a, b)| (a.clone().into(), b.clone().into()))
            .collect()
    }

    fn exceptional_edges(&self) -> Vec<(Permutation, Permutation)> {
        self.inner
            .exceptional_edges()
            .iter()
            .map(|(a, b)| (a.clone().into(), b.clone().into()))
            .collect()
    }

    fn to_dot(&self) -> String {
        self.inner.to_dot()
    }

    fn to_json(&self) -> String {
        self.inner.to_json_string()
    }
}

/// Levels produced by a wreath-closed generation run.
#[pyclass(frozen)]
struct LevelResult {
    inner: wreath::LevelResult,
}

#[pymethods]
impl LevelResult {
    fn levels(&self) -> BTreeMap<usize, Vec<Permutation>> {
        self.inner
            .levels()
            .iter()
            .map(|(&n, level)| (n, wrap_all(level.iter().cloned())))
            .collect()
    }

    fn terminated(&self) -> bool {
        self.inner.terminated()
    }

    fn cap(&self) -> Option<usize> {
        self.inner.cap()
    }

    fn candidates_examined(&self) -> BTreeMap<usize, u64> {
        self.inner.candidates_examined().clone()
    }

    fn to_json(&self) -> String {
        self.inner.to_json_string()
    }
}

/// The exceptional permutation of the given family (1..=4) and half-size m.
#[pyfunction]
fn exceptional(family: u8, m: usize) -> PyResult<Permutation> {
    let family = ExceptionalFamily::from_index(family).map_err(value_error)?;
    let descriptor = ExceptionalDescriptor::new(family, m).map_err(value_error)?;
    simperm::exceptional_perm(descriptor)
        .map(Into::into)
        .map_err(value_error)
}

/// All simple permutations of each size 4..=max_n, as {size: [Permutation]}.
#[pyfunction]
fn enumerate_simples(max_n: usize) -> PyResult<BTreeMap<usize, Vec<Permutation>>> {
    Ok(simperm::enumerate_simples(max_n)
        .map_err(value_error)?
        .into_iter()
        .map(|(n, level)| (n, wrap_all(level)))
        .collect())
}

/// Simple permutations of size n by brute-force filtering (n <= 9).
#[pyfunction]
fn brute_simples(n: usize) -> PyResult<Vec<Permutation>> {
    Ok(wrap_all(oracle::brute_simples(n).map_err(value_error)?))
}

/// A descending chain from sigma to pi.
#[pyfunction]
fn find_chain(sigma: &Bound<'_, PyAny>, pi: &Bound<'_, PyAny>) -> PyResult<Chain> {
    let sigma = extract_core(sigma)?;
    let pi = extract_core(pi)?;
    Ok(Chain {
        inner: simperm::find_chain(&sigma, &pi).map_err(value_error)?,
    })
}

/// The sub-poset of simple patterns of sigma.
#[pyfunction]
fn pattern_closure(sigma: &Bound<'_, PyAny>) -> PyResult<PosetGraph> {
    let sigma = extract_core(sigma)?;
    Ok(PosetGraph {
        inner: simperm::pattern_closure(&sigma).map_err(value_error)?,
    })
}

/// The full poset of simple permutations of sizes 4..=max_n.
#[pyfunction]
fn build_poset(max_n: usize) -> PyResult<PosetGraph> {
    Ok(PosetGraph {
        inner: simperm::build_poset(max_n).map_err(value_error)?,
    })
}

/// Out-degree statistics for sizes 5..=max_n, as a list of dicts with keys
/// n, simple_count, histogram, average (an exact (numerator, denominator)
/// pair).
#[pyfunction]
fn outdegree_stats(py: Python<'_>, max_n: usize) -> PyResult<Vec<Py<PyAny>>> {
    use pyo3::types::PyDict;
    let stats = simperm::outdegree_stats(max_n).map_err(value_error)?;
    let mut out = Vec::with_capacity(stats.len());
    for s in stats {
        let dict = PyDict::new(py);
        dict.set_item("n", s.n)?;
        dict.set_item("simple_count", s.simple_count)?;
        dict.set_item("histogram", s.histogram.clone())?;
        dict.set_item(
            "average",
            (*s.average_outdegree.numer(), *s.average_outdegree.denom()),
        )?;
        out.push(dict.into_any().unbind());
    }
    Ok(out)
}

/// Generate the simple permutations of an avoidance class. With
/// general=False the basis must consist of simple permutations and no
/// containment test is performed; with general=True any basis of size >= 3
/// elements is accepted and a cap is required.
#[pyfunction]
#[pyo3(signature = (basis, cap=None, general=false))]
fn wreath_generate(
    basis: Vec<Bound<'_, PyAny>>,
    cap: Option<usize>,
    general: bool,
) -> PyResult<LevelResult> {
    let perms: Vec<CorePermutation> = basis
        .iter()
        .map(extract_core)
        .collect::<PyResult<Vec<_>>>()?;
    let inner = if general {
        let cap = cap.ok_or_else(|| {
            PyValueError::new_err("general=True requires a cap")
        })?;
        wreath::generate_general(&perms, cap).map_err(value_error)?
    } else {
        let basis = wreath::Basis::new(perms).map_err(value_error)?;
        wreath::generate(&basis, cap).map_err(value_error)?
    };
    Ok(LevelResult { inner })
}

/// The available property ids for run_property.
#[pyfunction]
fn property_ids() -> Vec<&'static str> {
    oracle::PropertyId::ALL.iter().map(|id| id.slug()).collect()
}

/// Run one exhaustive structural check; returns a dict with keys property,
/// max_n, instances, counterexamples, passed.
#[pyfunction]
#[pyo3(signature = (id, max_n=None))]
fn run_property(py: Python<'_>, id: &str, max_n: Option<usize>) -> PyResult<Py<PyAny>> {
    use pyo3::types::PyDict;
    let id = oracle::PropertyId::parse(id).map_err(value_error)?;
    let report =
        oracle::run_property(id, max_n.unwrap_or_else(|| id.default_max_n()))
            .map_err(value_error)?;
    let dict = PyDict::new(py);
    dict.set_item("property", report.property.slug())?;
    dict.set_item("max_n", report.max_n)?;
    dict.set_item("instances", report.instances)?;
    dict.set_item("counterexamples", report.counterexamples.clone())?;
    dict.set_item("passed", report.passed())?;
    Ok(dict.into_any().unbind())
}

/// Containment tests performed so far on the calling thread.
#[pyfunction]
fn pattern_test_count() -> u64 {
    simperm::pattern_test_count()
}

#[pymodule]
fn simperm_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Permutation>()?;
    m.add_class::<Chain>()?;
    m.add_class::<PosetGraph>()?;
    m.add_class::<LevelResult>()?;
    m.add_function(wrap_pyfunction!(exceptional, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_simples, m)?)?;
    m.add_function(wrap_pyfunction!(brute_simples, m)?)?;
    m.add_function(wrap_pyfunction!(find_chain, m)?)?;
    m.add_function(wrap_pyfunction!(pattern_closure, m)?)?;
    m.add_function(wrap_pyfunction!(build_poset, m)?)?;
    m.add_function(wrap_pyfunction!(outdegree_stats, m)?)?;
    m.add_function(wrap_pyfunction!(wreath_generate, m)?)?;
    m.add_function(wrap_pyfunction!(property_ids, m)?)?;
    m.add_function(wrap_pyfunction!(run_property, m)?)?;
    m.add_function(wrap_pyfunction!(pattern_test_count, m)?)?;
    Ok(())
}
