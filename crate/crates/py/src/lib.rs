//! Python bindings. Reports cross the boundary as JSON strings.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyMemoryError, PyValueError};
use pyo3::prelude::*;

use bfc_lab::algebra::Assignment;
use bfc_lab::cli::load;
use bfc_lab::congruence::{cg, con_lattice};
use bfc_lab::corpus;
use bfc_lab::factor::{check_bfc, factor_congruences};
use bfc_lab::formula::{build_pi, check_star_conditions, eval_formula, gamma_vs_pi, truth_table};
use bfc_lab::malcev::verify_scheme_identities;
use bfc_lab::{Congruence, Error, FiniteAlgebra, Formula, Limits, Partition, WitnessScheme};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::SizeGuard { .. } => PyMemoryError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("reports serialize")
}

/// A finite algebra given by operation tables.
#[pyclass(name = "Algebra", module = "bfc_lab", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyAlgebra(FiniteAlgebra);

#[pymethods]
impl PyAlgebra {
    /// Builtin or generated name (`chain4`, `sl3.1`, ...) or a JSON file path.
    #[staticmethod]
    fn load(name: &str) -> PyResult<Self> {
        load::algebra(name).map(PyAlgebra).map_err(py_err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        FiniteAlgebra::from_json(text).map(PyAlgebra).map_err(py_err)
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    #[getter]
    fn name(&self) -> &str {
        self.0.name()
    }

    #[getter]
    fn size(&self) -> usize {
        self.0.size()
    }

    /// `(symbol, arity)` for each operation.
    fn signature(&self) -> Vec<(String, usize)> {
        self.0.signature().ops().to_vec()
    }

    fn table(&self, symbol: &str) -> PyResult<Vec<usize>> {
        let (op, _) = self
            .0
            .signature()
            .lookup(symbol)
            .ok_or_else(|| PyValueError::new_err(format!("no operation `{symbol}`")))?;
        Ok(self.0.table(op).to_vec())
    }

    fn product(&self, other: &PyAlgebra) -> PyResult<Self> {
        FiniteAlgebra::direct_product(&[&self.0, &other.0]).map(PyAlgebra).map_err(py_err)
    }

    /// Quotient by a congruence given as block labels; returns the quotient
    /// and the block of each element.
    fn quotient(&self, labels: Vec<usize>) -> PyResult<(Self, Vec<usize>)> {
        if labels.len() != self.0.size() {
            return Err(py_err(Error::LengthMismatch { expected: self.0.size(), found: labels.len() }));
        }
        let theta = Congruence::new(&self.0, Partition::from_key(&labels)).map_err(py_err)?;
        let (q, block_of) = self.0.quotient(&theta).map_err(py_err)?;
        Ok((PyAlgebra(q), block_of))
    }

    /// Every congruence as canonical labels, Δ first.
    fn congruences(&self) -> PyResult<Vec<Vec<usize>>> {
        let lat = con_lattice(&self.0, &Limits::default()).map_err(py_err)?;
        Ok(lat.iter().map(|c| c.labels().to_vec()).collect())
    }

    fn cg(&self, pairs: Vec<(usize, usize)>) -> PyResult<Vec<usize>> {
        Ok(cg(&self.0, &pairs).map_err(py_err)?.labels().to_vec())
    }

    fn factor_congruences(&self) -> PyResult<Vec<Vec<usize>>> {
        let fc = factor_congruences(&self.0, &Limits::default()).map_err(py_err)?;
        Ok(fc.iter().map(|e| e.congruence.labels().to_vec()).collect())
    }

    /// JSON report on whether FC is a distributive sublattice.
    fn check_bfc(&self) -> PyResult<String> {
        Ok(to_json(&check_bfc(&self.0, &Limits::default()).map_err(py_err)?))
    }

    fn __len__(&self) -> usize {
        self.0.size()
    }

    fn __repr__(&self) -> String {
        format!("Algebra({:?}, size={})", self.0.name(), self.0.size())
    }
}

/// A first-order formula in the algebra's language.
#[pyclass(name = "Formula", module = "bfc_lab", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyFormula(Formula);

#[pymethods]
impl PyFormula {
    /// Builtin name, inline s-expression or file path.
    #[staticmethod]
    fn load(arg: &str) -> PyResult<Self> {
        load::formula(arg).map(PyFormula).map_err(py_err)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Formula::parse(text).map(PyFormula).map_err(py_err)
    }

    fn free_vars(&self) -> Vec<String> {
        self.0.free_vars()
    }

    fn eval(&self, alg: &PyAlgebra, assignment: BTreeMap<String, usize>) -> PyResult<bool> {
        let env: Assignment = assignment.into_iter().collect();
        eval_formula(&alg.0, &self.0, &env).map_err(py_err)
    }

    /// Values on all `(x, y, z, w)`, `x` most significant.
    fn truth_table(&self, alg: &PyAlgebra) -> PyResult<Vec<bool>> {
        truth_table(&alg.0, &self.0, &Limits::default()).map_err(py_err)
    }

    /// JSON report on the three (*) conditions.
    fn check_star(&self, alg: &PyAlgebra) -> PyResult<String> {
        Ok(to_json(&check_star_conditions(&alg.0, &self.0, &Limits::default()).map_err(py_err)?))
    }

    fn gamma_vs_pi(&self, alg: &PyAlgebra) -> PyResult<String> {
        Ok(to_json(&gamma_vs_pi(&alg.0, &self.0, &Limits::default()).map_err(py_err)?))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Formula({:?})", self.0.to_string())
    }

    fn __eq__(&self, other: &PyFormula) -> bool {
        self.0 == other.0
    }
}

/// Witness terms `s_i`, `t_i`, `L_w`, `R_w`.
#[pyclass(name = "Scheme", module = "bfc_lab", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyScheme(WitnessScheme);

#[pymethods]
impl PyScheme {
    #[staticmethod]
    fn load(arg: &str) -> PyResult<Self> {
        load::scheme(arg).map(PyScheme).map_err(py_err)
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    /// JSON report of the scheme identities checked in `alg`.
    fn verify(&self, alg: &PyAlgebra) -> PyResult<String> {
        Ok(to_json(&verify_scheme_identities(&self.0, &alg.0, &Limits::default()).map_err(py_err)?))
    }

    fn build_pi(&self) -> PyFormula {
        PyFormula(build_pi(&self.0))
    }
}

#[pyfunction]
fn builtin_names() -> Vec<&'static str> {
    corpus::BUILTIN_NAMES.to_vec()
}

/// JSON report of the non-preservation example.
#[pyfunction]
fn counterexample() -> PyResult<String> {
    Ok(to_json(&corpus::reproduce_counterexample().map_err(py_err)?))
}

/// Runs the command-line tool in-process; returns `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("bfc-lab".to_string()).chain(args);
    let code = bfc_lab::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned(), String::from_utf8_lossy(&err).into_owned())
}

#[pymodule]
#[pyo3(name = "bfc_lab")]
fn bfc_lab_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyFormula>()?;
    m.add_class::<PyScheme>()?;
    m.add_function(wrap_pyfunction!(builtin_names, m)?)?;
    m.add_function(wrap_pyfunction!(counterexample, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
