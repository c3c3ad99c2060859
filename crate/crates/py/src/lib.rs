//! Python bindings: `import nilorb`.
//!
//! Integer coefficients come back as Python `int`, non-integral rationals as
//! `fractions.Fraction`. Refused size guards and bad arguments raise
//! `ValueError`; broken engine invariants raise `RuntimeError`.

use engine::exactnum::{BigRat, PolyQ};
use engine::fforacle::{self, FieldSpec, MonicPoly};
use engine::partitions::{self, Partition};
use engine::pipeline::{self, CountingPolynomial, Kind, VerificationReport};
use engine::Error;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

fn to_pyerr(e: Error) -> PyErr {
    match e {
        Error::InvalidArgument(_) | Error::SizeGuard(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn rat_to_py<'py>(py: Python<'py>, r: &BigRat) -> PyResult<Bound<'py, PyAny>> {
    if r.is_integer() {
        return Ok(r.numer().clone().into_pyobject(py)?.into_any());
    }
    let fraction = py.import("fractions")?.getattr("Fraction")?;
    fraction.call1((r.numer().clone(), r.denom().clone()))
}

fn poly_to_py<'py>(py: Python<'py>, p: &PolyQ) -> PyResult<Bound<'py, PyList>> {
    let items = p.coeffs().iter().map(|c| rat_to_py(py, c)).collect::<PyResult<Vec<_>>>()?;
    PyList::new(py, items)
}

/// A verification report as a plain `dict`.
fn report_to_py<'py>(py: Python<'py>, r: &VerificationReport) -> PyResult<Bound<'py, PyAny>> {
    let d = PyDict::new(py);
    d.set_item("identity", &r.identity)?;
    d.set_item("g", r.g)?;
    d.set_item("x_order", r.x_order)?;
    d.set_item("q_order", r.q_order)?;
    d.set_item("passed", r.passed)?;
    match &r.mismatch {
        None => d.set_item("mismatch", py.None())?,
        Some(m) => {
            let md = PyDict::new(py);
            md.set_item("x_degree", m.x_degree)?;
            md.set_item("q_degree", m.q_degree)?;
            md.set_item("lhs", &m.lhs)?;
            md.set_item("rhs", &m.rhs)?;
            d.set_item("mismatch", md)?;
        }
    }
    Ok(d.into_any())
}

fn expect_poly(c: &CountingPolynomial) -> PyResult<&PolyQ> {
    c.poly()
        .ok_or_else(|| PyRuntimeError::new_err(format!("{}_{}({}, q) is not a polynomial", c.kind, c.g, c.n)))
}

fn field(q: usize) -> PyResult<FieldSpec> {
    FieldSpec::new(q).map_err(to_pyerr)
}

fn partition(parts: Vec<usize>) -> PyResult<Partition> {
    Partition::from_unsorted(parts).ok_or_else(|| PyValueError::new_err("parts must be positive"))
}

/// Memoizing counting pipeline for a fixed tuple length `g`.
#[pyclass(name = "Pipeline")]
struct PyPipeline {
    inner: pipeline::Pipeline,
}

#[pymethods]
impl PyPipeline {
    #[new]
    fn new(g: usize) -> PyResult<Self> {
        Ok(PyPipeline {
            inner: pipeline::Pipeline::new(g).map_err(to_pyerr)?,
        })
    }

    #[getter]
    fn g(&self) -> usize {
        self.inner.g()
    }

    /// Ascending coefficients of `A_g(n, q)`.
    fn a<'py>(&mut self, py: Python<'py>, n: usize) -> PyResult<Bound<'py, PyList>> {
        let c = self.inner.compute_a(n).map_err(to_pyerr)?;
        poly_to_py(py, expect_poly(&c)?)
    }

    /// Ascending coefficients of `I_g(n, q)`.
    fn i<'py>(&mut self, py: Python<'py>, n: usize) -> PyResult<Bound<'py, PyList>> {
        let c = self.inner.compute_i(n).map_err(to_pyerr)?;
        poly_to_py(py, expect_poly(&c)?)
    }

    /// `[M_g(1, q), ..., M_g(N, q)]` as coefficient lists.
    fn m<'py>(&mut self, py: Python<'py>, big_n: usize) -> PyResult<Vec<Bound<'py, PyList>>> {
        let all = self.inner.compute_m(big_n).map_err(to_pyerr)?;
        all.iter().map(|c| poly_to_py(py, expect_poly(c)?)).collect()
    }

    /// `(numerator, denominator)` coefficient lists of `H_g(n, q)`.
    fn h<'py>(&mut self, py: Python<'py>, n: usize) -> PyResult<(Bound<'py, PyList>, Bound<'py, PyList>)> {
        let c = self.inner.h(n).map_err(to_pyerr)?;
        Ok((poly_to_py(py, c.value.numer())?, poly_to_py(py, c.value.denom())?))
    }

    /// Descending human form, e.g. `"q^4 + 3q^2 + 2q"`.
    fn pretty(&mut self, kind: &str, n: usize) -> PyResult<String> {
        let kind: Kind = kind.parse().map_err(to_pyerr)?;
        let c = match kind {
            Kind::A => self.inner.compute_a(n),
            Kind::I => self.inner.compute_i(n),
            Kind::H => self.inner.h(n),
            Kind::M => self.inner.compute_m(n).map(|mut v| v.pop().expect("n >= 1")),
        }
        .map_err(to_pyerr)?;
        Ok(c.to_pretty())
    }

    fn verify_m_routes<'py>(&mut self, py: Python<'py>, big_n: usize) -> PyResult<Bound<'py, PyAny>> {
        report_to_py(py, &self.inner.verify_m_routes(big_n).map_err(to_pyerr)?)
    }

    fn verify_kwi<'py>(&mut self, py: Python<'py>, big_n: usize, big_q: usize) -> PyResult<Bound<'py, PyAny>> {
        report_to_py(py, &self.inner.verify_kwi(big_n, big_q).map_err(to_pyerr)?)
    }

    /// Negative coefficients of `A_g(n, q)` for `n <= nmax`, as `(n, s, value)`.
    fn conjecture_scan(&mut self, nmax: usize) -> PyResult<Vec<(usize, usize, String)>> {
        let report = self.inner.conjecture_scan(nmax).map_err(to_pyerr)?;
        Ok(report.negatives.into_iter().map(|c| (c.n, c.s, c.value)).collect())
    }

    fn __repr__(&self) -> String {
        format!("Pipeline(g={})", self.inner.g())
    }
}

#[pyfunction]
fn verify_g1_product<'py>(py: Python<'py>, big_n: usize, big_q: usize) -> PyResult<Bound<'py, PyAny>> {
    report_to_py(py, &pipeline::verify_g1_product(big_n, big_q).map_err(to_pyerr)?)
}

#[pyfunction]
fn enumerate_partitions(n: usize) -> Vec<Vec<usize>> {
    partitions::enumerate_partitions(n).into_iter().map(|p| p.parts().to_vec()).collect()
}

#[pyfunction]
fn inner_product(lam: Vec<usize>, mu: Vec<usize>) -> PyResult<usize> {
    Ok(partitions::inner_product(&partition(lam)?, &partition(mu)?))
}

#[pyfunction]
fn burnside_m(g: usize, n: usize, q: usize) -> PyResult<u128> {
    fforacle::burnside_m(g, n, &field(q)?).map_err(to_pyerr)
}

/// `(size, endo_dim, classification)` for every orbit, ordered by representative.
#[pyfunction]
fn orbits(g: usize, n: usize, q: usize) -> PyResult<Vec<(u64, usize, String)>> {
    let recs = fforacle::enumerate_orbits(g, n, &field(q)?).map_err(to_pyerr)?;
    Ok(recs
        .iter()
        .map(|r| {
            let class = match fforacle::classify_orbit(r) {
                fforacle::Classification::Decomposable => "decomposable",
                fforacle::Classification::Indecomposable => "indecomposable",
                fforacle::Classification::AbsolutelyIndecomposable => "absolutely_indecomposable",
            };
            (r.size, r.endo_dim, class.to_string())
        })
        .collect())
}

#[pyfunction]
fn bruteforce_i_a(g: usize, n: usize, q: usize) -> PyResult<(u64, u64)> {
    fforacle::bruteforce_i_a(g, n, &field(q)?).map_err(to_pyerr)
}

#[pyfunction]
fn count_nilpotent(n: usize, q: usize) -> PyResult<usize> {
    Ok(fforacle::enumerate_nilpotent(n, &field(q)?).map_err(to_pyerr)?.len())
}

/// Nilpotent matrices commuting with `J_lambda(f)`, counted by enumeration.
#[pyfunction]
fn count_nilpotent_commutant(lam: Vec<usize>, f: &str, q: usize) -> PyResult<u64> {
    let fs = field(q)?;
    let poly = MonicPoly::parse(f, &fs).map_err(to_pyerr)?;
    fforacle::count_nilpotent_commutant(&partition(lam)?, &poly, &fs).map_err(to_pyerr)
}

#[pyfunction]
fn nilcount_formula(lam: Vec<usize>, d: usize, q: u64) -> PyResult<u64> {
    Ok(fforacle::nilcount_formula(&partition(lam)?, d, q))
}

#[pymodule]
mod nilorb {
    #[pymodule_export]
    use super::{
        bruteforce_i_a, burnside_m, count_nilpotent, count_nilpotent_commutant, enumerate_partitions,
        inner_product, nilcount_formula, orbits, verify_g1_product, PyPipeline,
    };

    #[pymodule_init]
    fn init(m: &pyo3::Bound<'_, pyo3::types::PyModule>) -> pyo3::PyResult<()> {
        use pyo3::types::PyModuleMethods;
        m.add("__version__", engine::ENGINE_VERSION)
    }
}
