//! Python module `rsinterp`: a thin wrapper over the core crate.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use rsinterp::code::{self, CodeParams, Codeword, Message};
use rsinterp::decoder::{decode_with, DecodeOptions, DecodeOutcome, RecurrenceEngine};
use rsinterp::harness::{example_golden, run_selftest};
use rsinterp::oracle::run_oracle_suite;
use rsinterp::toeplitz::SolverKind;
use rsinterp::transform::{DomainOptions, EngineChoice};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_engine(name: &str) -> PyResult<EngineChoice> {
    match name {
        "auto" => Ok(EngineChoice::Auto),
        "fast" => Ok(EngineChoice::Fast),
        "naive" => Ok(EngineChoice::Naive),
        other => Err(value_error(format!("unknown engine {other:?}"))),
    }
}

fn parse_solver(name: &str) -> PyResult<SolverKind> {
    match name {
        "structured" => Ok(SolverKind::Structured),
        "dense" => Ok(SolverKind::Dense),
        other => Err(value_error(format!("unknown solver {other:?}"))),
    }
}

/// An (n, k) Reed-Solomon code over GF(q) with n = q - 1.
#[pyclass(name = "RsCode", module = "rsinterp", frozen)]
struct RsCode {
    params: CodeParams,
}

#[pymethods]
impl RsCode {
    #[new]
    #[pyo3(signature = (q, k, engine = "auto"))]
    fn new(q: u64, k: usize, engine: &str) -> PyResult<Self> {
        let options = DomainOptions { engine: parse_engine(engine)?, ..Default::default() };
        let params = CodeParams::with_options(q, k, options).map_err(value_error)?;
        Ok(RsCode { params })
    }

    #[getter]
    fn q(&self) -> u64 {
        self.params.q()
    }

    #[getter]
    fn n(&self) -> usize {
        self.params.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.params.k()
    }

    #[getter]
    fn t_max(&self) -> usize {
        self.params.t_max()
    }

    #[getter]
    fn alpha(&self) -> u64 {
        self.params.alpha()
    }

    #[getter]
    fn engine(&self) -> String {
        self.params.domain().engine().to_string()
    }

    fn encode(&self, message: Vec<u64>) -> PyResult<Vec<u64>> {
        code::encode(&Message(message), &self.params).map(|c| c.0).map_err(value_error)
    }

    fn is_codeword(&self, word: Vec<u64>) -> PyResult<bool> {
        code::is_codeword(&word, &self.params).map_err(value_error)
    }

    /// Returns `(received, error)`.
    #[pyo3(signature = (codeword, t, seed = 0))]
    fn corrupt(&self, codeword: Vec<u64>, t: usize, seed: u64) -> PyResult<(Vec<u64>, Vec<u64>)> {
        let (r, e) = code::corrupt(&Codeword(codeword), t, seed, &self.params).map_err(value_error)?;
        Ok((r.0, e.0))
    }

    /// Dict with `success` plus either `codeword`, `error`, `message`,
    /// `error_count`, or `reason`.
    #[pyo3(signature = (received, solver = "structured"))]
    fn decode<'py>(&self, py: Python<'py>, received: Vec<u64>, solver: &str) -> PyResult<Bound<'py, PyDict>> {
        let options = DecodeOptions { solver: parse_solver(solver)?, recurrence: RecurrenceEngine::default() };
        let out = decode_with(&received, &self.params, options).map_err(value_error)?;
        let d = PyDict::new(py);
        match out {
            DecodeOutcome::Success { codeword, error, message, error_count } => {
                d.set_item("success", true)?;
                d.set_item("codeword", codeword.0)?;
                d.set_item("error", error.0)?;
                d.set_item("message", message.0)?;
                d.set_item("error_count", error_count)?;
            }
            DecodeOutcome::Failure { reason } => {
                d.set_item("success", false)?;
                d.set_item("reason", reason.to_string())?;
            }
        }
        Ok(d)
    }

    fn __repr__(&self) -> String {
        format!("RsCode(q={}, n={}, k={})", self.params.q(), self.params.n(), self.params.k())
    }
}

/// Golden vectors and the exhaustive GF(5) comparison; true iff both pass.
#[pyfunction]
fn selftest() -> bool {
    run_selftest(&example_golden()).passed()
}

/// Oracle property suites for one code; true iff every property holds.
#[pyfunction]
#[pyo3(signature = (q, k, trials = 100, seed = 1))]
fn oracle_check(q: u64, k: usize, trials: usize, seed: u64) -> PyResult<bool> {
    let params = CodeParams::new(q, k).map_err(value_error)?;
    Ok(run_oracle_suite(&params, trials, seed).passed())
}

#[pyfunction]
fn is_prime(n: u64) -> bool {
    rsinterp::field::is_prime(n)
}

#[pymodule]
#[pyo3(name = "rsinterp")]
fn rsinterp_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<RsCode>()?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_check, m)?)?;
    m.add_function(wrap_pyfunction!(is_prime, m)?)?;
    Ok(())
}
