//! Python bindings for the lattice-polytope diameter toolkit.
//!
//! The module exposes the core types (`Polytope`, `Generators`) and the
//! main operations: convex hulls over the integer grid, graph diameters,
//! primitive generator families and their zonotopes, diameter bounds with
//! provenance, exhaustive two-dimensional maximizer enumeration, and the
//! randomized inequality suites.  All arithmetic is exact; errors from
//! the core crate surface as `ValueError`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use latdiam::bounds;
use latdiam::geometry::LatticePolytope;
use latdiam::graph;
use latdiam::lemmas::CheckStatus;
use latdiam::sample;
use latdiam::search;
use latdiam::zonotope;

fn err(e: latdiam::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A full-dimensional polytope whose vertices all lie on the integer
/// grid.  Construction takes the convex hull and refuses input sets
/// containing non-vertex points, so every instance is in vertex form.
#[pyclass(frozen)]
struct Polytope {
    inner: LatticePolytope,
}

#[pymethods]
impl Polytope {
    /// Build from a list of integer points.  `d` defaults to the length
    /// of the first point; `k` declares the grid range `[0, k]` and
    /// defaults to the tightest box containing the points.
    #[new]
    #[pyo3(signature = (points, d=None, k=None))]
    fn new(points: Vec<Vec<i64>>, d: Option<usize>, k: Option<i64>) -> PyResult<Self> {
        let d = d.unwrap_or_else(|| points.first().map_or(0, Vec::len));
        let mut inner = LatticePolytope::from_points(points, d).map_err(err)?;
        if let Some(k) = k {
            inner = inner.with_declared_k(k).map_err(err)?;
        }
        Ok(Polytope { inner })
    }

    /// Ambient dimension.
    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    /// Declared grid parameter: coordinates live in `[0, k]`.
    #[getter]
    fn k(&self) -> i64 {
        self.inner.k()
    }

    /// Vertex coordinates, in lexicographic order.
    #[getter]
    fn vertices(&self) -> Vec<Vec<i64>> {
        self.inner.vertices().iter().map(|v| v.coords().to_vec()).collect()
    }

    /// Edges as index pairs into `vertices`.
    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    /// Per-coordinate `(min, max)` over the vertices.
    #[getter]
    fn extents(&self) -> Vec<(i64, i64)> {
        self.inner.extents()
    }

    /// Graph diameter and the lexicographically smallest witness pair.
    fn diameter(&self) -> PyResult<(u32, (usize, usize))> {
        graph::diameter(&self.inner).map_err(err)
    }

    /// BFS distances from the vertex with index `source`.
    fn distances(&self, source: usize) -> PyResult<Vec<u32>> {
        Ok(graph::bfs_distances(&self.inner, source).map_err(err)?.dist)
    }

    /// Hex digest of the canonical form (invariant under coordinate
    /// permutation, reflection, and translation).
    fn canonical_digest(&self) -> String {
        search::canonical_digest(&self.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.vertices().len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Polytope(d={}, k={}, vertices={}, edges={})",
            self.inner.dim(),
            self.inner.k(),
            self.inner.vertices().len(),
            self.inner.edges().len()
        )
    }
}

/// An ordered set of pairwise non-parallel integer direction vectors.
#[pyclass(frozen)]
struct Generators {
    inner: zonotope::GeneratorSet,
}

#[pymethods]
impl Generators {
    #[new]
    fn new(d: usize, vectors: Vec<Vec<i64>>) -> PyResult<Self> {
        Ok(Generators { inner: zonotope::GeneratorSet::new(d, vectors).map_err(err)? })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn vectors(&self) -> Vec<Vec<i64>> {
        self.inner.vectors().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Generators(d={}, m={})", self.inner.dim(), self.inner.len())
    }
}

/// Primitive integer vectors in `d` coordinates with 1-norm at most `p`,
/// one per opposite-sign pair, in the toolkit's canonical order.
#[pyfunction]
fn primitive_generators(d: usize, p: i64) -> PyResult<Generators> {
    Ok(Generators { inner: zonotope::primitive_generators(d, p).map_err(err)? })
}

/// The Minkowski sum of the generator segments, translated into the
/// nonnegative orthant.  Requires the generators to span all of `R^d`.
#[pyfunction(name = "zonotope")]
fn zonotope_fn(gens: &Generators) -> PyResult<Polytope> {
    Ok(Polytope { inner: zonotope::zonotope_vertices(&gens.inner).map_err(err)? })
}

/// Zonotope of an arbitrary vector set, built inside its own linear span
/// so rank-deficient sets work too.
#[pyfunction]
fn zonotope_in_span(d: usize, vectors: Vec<Vec<i64>>) -> PyResult<Polytope> {
    Ok(Polytope { inner: zonotope::zonotope_in_span(d, &vectors).map_err(err)? })
}

/// Grid parameter, diameter, and the asymptotic estimate for the plane
/// zonogon on all primitive generators of 1-norm at most `p`.
#[pyfunction]
fn h1_2d_stats(py: Python<'_>, p: i64) -> PyResult<PyObject> {
    let stats = zonotope::h1_2d_stats(p).map_err(err)?;
    let dict = PyDict::new_bound(py);
    dict.set_item("p", p)?;
    dict.set_item("k", stats.k)?;
    dict.set_item("diameter", stats.diameter)?;
    dict.set_item("estimate", stats.estimate)?;
    Ok(dict.into())
}

/// Search for a subset of the 1-norm-at-most-2 primitive generators in
/// `d` coordinates whose zonotope fits in `[0, k]^d` and has diameter at
/// least `target`.  Returns the generators or `None`.
#[pyfunction]
fn subset_search(d: usize, k: i64, target: u32) -> PyResult<Option<Generators>> {
    Ok(zonotope::subset_search(d, k, target).map_err(err)?.map(|inner| Generators { inner }))
}

/// Best proven lower bound on the maximum diameter, with its source.
#[pyfunction]
fn lower_bound(d: usize, k: i64) -> PyResult<(i64, String)> {
    let (v, p) = bounds::lower_bound(d, k).map_err(err)?;
    Ok((v, p.as_str().to_string()))
}

/// Best proven upper bound on the maximum diameter, with its source.
#[pyfunction]
fn upper_bound(d: usize, k: i64) -> PyResult<(i64, String)> {
    let (v, p) = bounds::upper_bound(d, k).map_err(err)?;
    Ok((v, p.as_str().to_string()))
}

/// Exact maximum diameter when it is known, else `None`.
#[pyfunction]
fn delta_exact(d: usize, k: i64) -> PyResult<Option<(i64, String)>> {
    Ok(bounds::delta_exact(d, k).map_err(err)?.map(|(v, p)| (v, p.as_str().to_string())))
}

/// Bound table for all `2 <= d <= d_max`, `1 <= k <= k_max`, as a list of
/// dicts mirroring the CLI's JSON output.
#[pyfunction]
fn bounds_report(py: Python<'_>, d_max: usize, k_max: i64) -> PyResult<Vec<PyObject>> {
    let mut rows = Vec::new();
    for r in bounds::bounds_report(d_max, k_max).map_err(err)? {
        let dict = PyDict::new_bound(py);
        dict.set_item("d", r.d)?;
        dict.set_item("k", r.k)?;
        dict.set_item("lower", r.lower)?;
        dict.set_item("lower_provenance", r.lower_provenance.as_str())?;
        dict.set_item("upper", r.upper)?;
        dict.set_item("upper_provenance", r.upper_provenance.as_str())?;
        dict.set_item("exact", r.exact)?;
        dict.set_item("settled", r.settled)?;
        rows.push(dict.into());
    }
    Ok(rows)
}

/// Exhaustively determine the maximum diameter over all lattice
/// `(2, k)`-polytopes and return `(value, maximizers)`, the maximizers
/// one per symmetry class.
#[pyfunction]
fn max_diameter_2d(k: i64) -> PyResult<(u32, Vec<Polytope>)> {
    let (value, certs) = search::enumerate_max_diameter_2d(k).map_err(err)?;
    Ok((value, certs.into_iter().map(|c| Polytope { inner: c.polytope }).collect()))
}

/// Run one randomized inequality suite (`lemma1`, `lemma2`, `lemma3`,
/// `lemma4`, or `step`) and return a summary dict with per-status counts
/// and the first few violations, if any.
#[pyfunction]
#[pyo3(signature = (suite, n, seed=0, workers=1))]
fn run_suite(py: Python<'_>, suite: &str, n: usize, seed: u64, workers: usize) -> PyResult<PyObject> {
    let suite: sample::Suite = suite.parse().map_err(err)?;
    let outcome = sample::run_suite(suite, n, seed, workers).map_err(err)?;
    let dict = PyDict::new_bound(py);
    dict.set_item("suite", outcome.suite.as_str())?;
    dict.set_item("instances", outcome.instances)?;
    dict.set_item("holds", outcome.count(CheckStatus::Holds))?;
    dict.set_item("violated", outcome.count(CheckStatus::Violated))?;
    dict.set_item("not_applicable", outcome.count(CheckStatus::NotApplicable))?;
    let violations: Vec<String> = outcome
        .violations()
        .take(5)
        .map(|r| format!("{}: {} <= {} is false ({})", r.lemma, r.lhs, r.rhs, r.instance_digest))
        .collect();
    dict.set_item("violations", violations)?;
    Ok(dict.into())
}

#[pymodule]
fn latdiam_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Polytope>()?;
    m.add_class::<Generators>()?;
    m.add_function(wrap_pyfunction!(primitive_generators, m)?)?;
    m.add_function(wrap_pyfunction!(zonotope_fn, m)?)?;
    m.add_function(wrap_pyfunction!(zonotope_in_span, m)?)?;
    m.add_function(wrap_pyfunction!(h1_2d_stats, m)?)?;
    m.add_function(wrap_pyfunction!(subset_search, m)?)?;
    m.add_function(wrap_pyfunction!(lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(upper_bound, m)?)?;
    m.add_function(wrap_pyfunction!(delta_exact, m)?)?;
    m.add_function(wrap_pyfunction!(bounds_report, m)?)?;
    m.add_function(wrap_pyfunction!(max_diameter_2d, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
