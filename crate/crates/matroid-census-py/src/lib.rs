//! Python bindings for the census toolkit. Builds as `matroid_census`:
//!
//! ```text
//! cargo build --release -p matroid-census-py
//! cp target/release/libmatroid_census_py.so python/matroid_census.so
//! ```
//!
//! Counts and bound sides cross into Python as exact ints, never floats.

use std::path::PathBuf;

use pyo3::exceptions::{PyIndexError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use matroid_census as mc;
use num_bigint::{BigInt, BigUint};

fn to_py_err(err: mc::Error) -> PyErr {
    PyValueError::new_err(err.to_string())
}

/// A family of r-subsets of {0,..,n-1} as an immutable bit vector.
#[pyclass(frozen, eq, hash, name = "BasisFamily", module = "matroid_census", skip_from_py_object)]
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct PyBasisFamily {
    inner: mc::BasisFamily,
}

#[pymethods]
impl PyBasisFamily {
    #[new]
    fn new(n: usize, r: usize, bits: u128) -> PyResult<Self> {
        Ok(PyBasisFamily {
            inner: mc::BasisFamily::new(n, r, bits).map_err(to_py_err)?,
        })
    }

    /// Build from explicit members, e.g. from_members(3, 2, [[0,1],[0,2]]).
    #[staticmethod]
    fn from_members(n: usize, r: usize, members: Vec<Vec<usize>>) -> PyResult<Self> {
        Ok(PyBasisFamily {
            inner: mc::BasisFamily::from_members(n, r, &members).map_err(to_py_err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.ground_set_size()
    }

    #[getter]
    fn r(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn bits(&self) -> u128 {
        self.inner.bits()
    }

    fn member_count(&self) -> usize {
        self.inner.member_count()
    }

    fn is_empty(&self) -> bool {
        self.inner.is_empty()
    }

    fn members(&self) -> Vec<Vec<usize>> {
        self.inner.members()
    }

    fn contains(&self, subset: Vec<usize>) -> PyResult<bool> {
        self.inner.contains(&subset).map_err(to_py_err)
    }

    /// Whether the family satisfies the base exchange axiom.
    fn is_base_exchange(&self) -> bool {
        self.inner.is_base_exchange()
    }

    /// The first violating triple (base, other, removed_element), or None.
    fn exchange_witness(&self) -> Option<(Vec<usize>, Vec<usize>, usize)> {
        self.inner
            .exchange_witness()
            .map(|w| (w.base, w.other, w.removed))
    }

    /// The contraction by t_set, on the re-numbered smaller ground set.
    fn contract(&self, t_set: Vec<usize>) -> PyResult<Self> {
        Ok(PyBasisFamily {
            inner: self.inner.contract(&t_set).map_err(to_py_err)?,
        })
    }

    /// For a rank-2 family satisfying the axiom: (loops, parallel_blocks).
    fn decompose_rank2(&self) -> PyResult<(Vec<usize>, Vec<Vec<usize>>)> {
        let d = mc::decompose_rank2(&self.inner).map_err(to_py_err)?;
        Ok((d.loops, d.blocks))
    }

    fn __repr__(&self) -> String {
        format!(
            "BasisFamily(n={}, r={}, bits={:#x})",
            self.inner.ground_set_size(),
            self.inner.rank(),
            self.inner.bits()
        )
    }
}

/// A complete enumeration of the (n, r) basis families, sorted ascending.
#[pyclass(frozen, eq, name = "Census", module = "matroid_census", skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyCensus {
    inner: mc::Census,
}

#[pymethods]
impl PyCensus {
    #[getter]
    fn n(&self) -> usize {
        self.inner.ground_set_size()
    }

    #[getter]
    fn r(&self) -> usize {
        self.inner.rank()
    }

    /// "naive", "dfs", or "file".
    #[getter]
    fn method(&self) -> &'static str {
        match self.inner.method() {
            mc::Method::Naive => "naive",
            mc::Method::Dfs => "dfs",
            mc::Method::File => "file",
        }
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    /// Number of non-empty families, i.e. the matroid count m(n,r).
    fn matroid_count(&self) -> usize {
        self.inner.matroid_count()
    }

    fn bit_vectors(&self) -> Vec<u128> {
        self.inner.bit_vectors().to_vec()
    }

    fn family(&self, i: usize) -> PyResult<PyBasisFamily> {
        if i >= self.inner.len() {
            return Err(PyIndexError::new_err(format!(
                "row {i} out of range for census of {}",
                self.inner.len()
            )));
        }
        Ok(PyBasisFamily { inner: self.inner.family(i) })
    }

    fn contains_bits(&self, bits: u128) -> bool {
        self.inner.contains_bits(bits)
    }

    fn __repr__(&self) -> String {
        format!(
            "Census(n={}, r={}, len={}, method='{}')",
            self.inner.ground_set_size(),
            self.inner.rank(),
            self.inner.len(),
            self.method()
        )
    }
}

#[pyfunction]
fn binomial(n: usize, k: usize) -> BigUint {
    mc::binomial(n, k)
}

#[pyfunction]
fn bell_number(n: usize) -> BigUint {
    mc::bell_number(n)
}

/// Colex rank of a strictly ascending r-subset of {0,..,n-1}.
#[pyfunction]
fn colex_rank(subset: Vec<usize>, n: usize) -> PyResult<usize> {
    Ok(mc::colex_rank(&subset, n).map_err(to_py_err)?.rank)
}

/// The r-subset of {0,..,n-1} with the given colex rank.
#[pyfunction]
fn colex_unrank(n: usize, r: usize, rank: usize) -> PyResult<Vec<usize>> {
    mc::colex_unrank(&mc::SubsetCode { n, r, rank }).map_err(to_py_err)
}

/// All partitions of a strictly ascending universe, as lists of blocks.
#[pyfunction]
fn set_partitions(universe: Vec<usize>) -> PyResult<Vec<Vec<Vec<usize>>>> {
    if !universe.windows(2).all(|w| w[0] < w[1]) {
        return Err(PyValueError::new_err(
            "universe must be strictly ascending",
        ));
    }
    Ok(mc::enumerate_partitions(&universe)
        .map(|p| p.blocks().to_vec())
        .collect())
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |w| w.get())
}

/// Enumerate the (n, r) census by "dfs" (default) or "naive".
#[pyfunction]
#[pyo3(signature = (n, r, method = "dfs", workers = None))]
fn enumerate_census(n: usize, r: usize, method: &str, workers: Option<usize>) -> PyResult<PyCensus> {
    let inner = match method {
        "naive" => mc::enumerate_naive(n, r).map_err(to_py_err)?,
        "dfs" => mc::enumerate_dfs_with_workers(n, r, workers.unwrap_or_else(default_workers))
            .map_err(to_py_err)?,
        other => {
            return Err(PyValueError::new_err(format!(
                "method must be 'naive' or 'dfs', got {other:?}"
            )))
        }
    };
    Ok(PyCensus { inner })
}

/// Load a census file, re-validating the exchange axiom on every row.
#[pyfunction]
fn read_census(path: PathBuf) -> PyResult<PyCensus> {
    Ok(PyCensus { inner: mc::read_census(path).map_err(to_py_err)? })
}

/// Write a census in the interchange format.
#[pyfunction]
fn write_census(path: PathBuf, census: &PyCensus) -> PyResult<()> {
    mc::write_census(path, &census.inner).map_err(to_py_err)
}

/// Rebuild a rank-2 family from loops and parallel blocks.
#[pyfunction]
fn compose_rank2(n: usize, loops: Vec<usize>, blocks: Vec<Vec<usize>>) -> PyResult<PyBasisFamily> {
    let decomposition = mc::Rank2Decomposition { loops, blocks };
    Ok(PyBasisFamily {
        inner: mc::compose_rank2(n, &decomposition).map_err(to_py_err)?,
    })
}

/// Check the covering inequality on a census for class size t.
#[pyfunction]
fn shearer_check<'py>(py: Python<'py>, census: &PyCensus, t: usize) -> PyResult<Bound<'py, PyDict>> {
    let check = mc::shearer_check(&census.inner, t).map_err(to_py_err)?;
    let out = PyDict::new(py);
    out.set_item("n", check.n)?;
    out.set_item("r", check.r)?;
    out.set_item("t", check.t)?;
    out.set_item("lhs_bits", check.lhs_bits)?;
    out.set_item("rhs_bits", check.rhs_bits)?;
    out.set_item("multiplicity", check.multiplicity)?;
    out.set_item("class_count", check.class_count)?;
    out.set_item("tolerance", check.tolerance)?;
    out.set_item("holds", check.holds)?;
    Ok(out)
}

/// m(n,r) for all r <= n <= max_n, as a dict keyed by (n, r).
#[pyfunction]
#[pyo3(signature = (max_n, workers = None))]
fn count_table<'py>(py: Python<'py>, max_n: usize, workers: Option<usize>) -> PyResult<Bound<'py, PyDict>> {
    let table = mc::count_all_with_workers(max_n, workers.unwrap_or_else(default_workers))
        .map_err(to_py_err)?;
    let out = PyDict::new(py);
    for n in 0..=max_n {
        for r in 0..=n {
            out.set_item((n, r), table.rank_count(n, r).map_err(to_py_err)?)?;
        }
    }
    Ok(out)
}

/// Every bound row over enumerated censuses up to max_n, as dicts with
/// exact integer lhs/rhs/slack.
#[pyfunction]
#[pyo3(signature = (max_n, workers = None))]
fn full_report<'py>(
    py: Python<'py>,
    max_n: usize,
    workers: Option<usize>,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let table = mc::count_all_with_workers(max_n, workers.unwrap_or_else(default_workers))
        .map_err(to_py_err)?;
    let report = mc::full_report_from(&table).map_err(to_py_err)?;
    let mut rows = Vec::with_capacity(report.rows().len());
    for row in report.rows() {
        let out = PyDict::new(py);
        out.set_item("name", row.name)?;
        out.set_item("n", row.n)?;
        out.set_item("r", row.r)?;
        out.set_item("t", row.t)?;
        out.set_item("lhs", row.lhs.clone())?;
        out.set_item("rhs", row.rhs.clone())?;
        out.set_item(
            "relation",
            match row.relation {
                mc::Relation::Le => "le",
                mc::Relation::Eq => "eq",
            },
        )?;
        out.set_item("holds", row.holds)?;
        out.set_item("slack", BigInt::from(row.rhs.clone()) - BigInt::from(row.lhs.clone()))?;
        out.set_item("interpretation", row.interpretation)?;
        rows.push(out);
    }
    Ok(rows)
}

#[pymodule(name = "matroid_census")]
fn bindings(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBasisFamily>()?;
    m.add_class::<PyCensus>()?;
    m.add_function(wrap_pyfunction!(binomial, m)?)?;
    m.add_function(wrap_pyfunction!(bell_number, m)?)?;
    m.add_function(wrap_pyfunction!(colex_rank, m)?)?;
    m.add_function(wrap_pyfunction!(colex_unrank, m)?)?;
    m.add_function(wrap_pyfunction!(set_partitions, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_census, m)?)?;
    m.add_function(wrap_pyfunction!(read_census, m)?)?;
    m.add_function(wrap_pyfunction!(write_census, m)?)?;
    m.add_function(wrap_pyfunction!(compose_rank2, m)?)?;
    m.add_function(wrap_pyfunction!(shearer_check, m)?)?;
    m.add_function(wrap_pyfunction!(count_table, m)?)?;
    m.add_function(wrap_pyfunction!(full_report, m)?)?;
    m.add("ENTROPY_TOLERANCE", mc::ENTROPY_TOLERANCE)?;
    m.add("MAX_ELEMENTS", mc::MAX_ELEMENTS)?;
    m.add("MAX_COORDINATES", mc::MAX_COORDINATES)?;
    Ok(())
}
