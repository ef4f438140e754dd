//! Python bindings: `import hhlab`.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use hhlab_core::acceptance;
use hhlab_core::cech::{self, SheafSpec};
use hhlab_core::decomp::{self, CharacteristicWitness, DecompositionReport, Space, Verdict};
use hhlab_core::exactla::{self, FieldSpec, Scalar, SparseMatrix};
use hhlab_core::ext;
use hhlab_core::hochschild;
use hhlab_core::poly::{Monomial, Poly};
use hhlab_core::Error;

fn err(e: Error) -> PyErr {
    match e {
        Error::CompositionNotZero
        | Error::NotAChainMap(_)
        | Error::FactorNotScalar
        | Error::KoszulCoboundaryNonzero
        | Error::ShellNotExact(_)
        | Error::CrossCheck(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn field(characteristic: u64) -> PyResult<FieldSpec> {
    FieldSpec::from_characteristic(characteristic).map_err(err)
}

#[derive(FromPyObject)]
enum Coefficient {
    Int(i64),
    Text(String),
}

fn scalar(f: FieldSpec, c: Coefficient) -> PyResult<Scalar> {
    match c {
        Coefficient::Int(v) => Ok(f.from_i64(v)),
        Coefficient::Text(s) => {
            let bad = || PyValueError::new_err(format!("cannot read '{s}' as an element of {f}"));
            let (num, den) = match s.split_once('/') {
                Some((a, b)) => (
                    a.trim().parse().map_err(|_| bad())?,
                    b.trim().parse().map_err(|_| bad())?,
                ),
                None => (s.trim().parse().map_err(|_| bad())?, 1),
            };
            f.fraction(num, den).ok_or_else(bad)
        }
    }
}

/// A coefficient field: characteristic 0 for the rationals, p for GF(p).
#[pyclass(name = "Field", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyField(FieldSpec);

#[pymethods]
impl PyField {
    #[new]
    fn new(characteristic: u64) -> PyResult<Self> {
        Ok(PyField(field(characteristic)?))
    }

    #[getter]
    fn characteristic(&self) -> u64 {
        self.0.characteristic()
    }

    fn factorial(&self, q: usize) -> String {
        self.0.factorial(q).to_string()
    }

    fn __repr__(&self) -> String {
        format!("Field({})", self.0)
    }
}

/// A polynomial in `n` variables with exact coefficients.
#[pyclass(name = "Poly", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPoly(Poly);

#[pymethods]
impl PyPoly {
    /// `terms` is a list of `(exponents, coefficient)`; coefficients are
    /// ints or strings such as `"3/4"`.
    #[new]
    #[pyo3(signature = (n, characteristic, terms=Vec::new()))]
    fn new(n: usize, characteristic: u64, terms: Vec<(Vec<i32>, Coefficient)>) -> PyResult<Self> {
        let f = field(characteristic)?;
        let terms = terms
            .into_iter()
            .map(|(e, c)| Ok((Monomial::new(e), scalar(f, c)?)))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PyPoly(Poly::from_terms(n, f, terms).map_err(err)?))
    }

    #[staticmethod]
    fn variable(n: usize, characteristic: u64, i: usize) -> PyResult<Self> {
        if i >= n {
            return Err(PyValueError::new_err(format!("variable {i} with n = {n}")));
        }
        Ok(PyPoly(Poly::variable(n, field(characteristic)?, i)))
    }

    #[getter]
    fn arity(&self) -> usize {
        self.0.arity()
    }

    #[getter]
    fn characteristic(&self) -> u64 {
        self.0.field().characteristic()
    }

    fn terms(&self) -> Vec<(Vec<i32>, String)> {
        self.0
            .terms()
            .map(|(m, c)| (m.exponents().to_vec(), c.to_string()))
            .collect()
    }

    fn total_degree(&self) -> Option<i64> {
        self.0.total_degree()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn partial_derivative(&self, i: usize) -> PyResult<Self> {
        Ok(PyPoly(self.0.partial_derivative(i).map_err(err)?))
    }

    fn __add__(&self, other: &PyPoly) -> PyResult<Self> {
        Ok(PyPoly(self.0.try_add(&other.0).map_err(err)?))
    }

    fn __mul__(&self, other: &PyPoly) -> PyResult<Self> {
        Ok(PyPoly(self.0.multiply(&other.0).map_err(err)?))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly({})", self.0)
    }
}

/// A sparse matrix over an exact field.
#[pyclass(name = "Matrix", frozen)]
struct PyMatrix(SparseMatrix);

#[pymethods]
impl PyMatrix {
    #[new]
    fn new(rows: Vec<Vec<i64>>, characteristic: u64) -> PyResult<Self> {
        Ok(PyMatrix(
            SparseMatrix::from_dense(field(characteristic)?, &rows).map_err(err)?,
        ))
    }

    #[getter]
    fn shape(&self) -> (usize, usize) {
        (self.0.nrows(), self.0.ncols())
    }

    fn rank(&self) -> usize {
        exactla::rank(&self.0)
    }

    fn nullity(&self) -> usize {
        exactla::nullity(&self.0)
    }

    fn transpose(&self) -> Self {
        PyMatrix(self.0.transpose())
    }

    fn __matmul__(&self, other: &PyMatrix) -> PyResult<Self> {
        Ok(PyMatrix(self.0.mul(&other.0).map_err(err)?))
    }
}

/// `dim ker(d_out) - rank(d_in)` for composable differentials.
#[pyfunction]
fn homology_rank(d_in: &PyMatrix, d_out: &PyMatrix) -> PyResult<usize> {
    exactla::homology_rank(&d_in.0, &d_out.0).map_err(err)
}

#[pyfunction]
fn chain_homology_rank(n: usize, characteristic: u64, q: usize, d: usize) -> PyResult<usize> {
    hochschild::chain_homology_rank(n, field(characteristic)?, q, d).map_err(err)
}

#[pyfunction]
fn chain_dimension(n: usize, q: usize, d: usize) -> usize {
    hochschild::chain_dimension(n, q, d)
}

#[pyfunction]
fn omega_dimension(n: usize, q: usize, d: usize) -> usize {
    hochschild::omega_dimension(n, q, d)
}

#[pyfunction]
fn pi_induced_rank(n: usize, characteristic: u64, q: usize, d: usize) -> PyResult<usize> {
    hochschild::pi_induced_rank(n, field(characteristic)?, q, d).map_err(err)
}

#[pyfunction]
fn koszul_ext(n: usize, characteristic: u64, q: usize) -> PyResult<usize> {
    ext::koszul_ext(n, field(characteristic)?, q).map_err(err)
}

#[pyfunction]
fn cochain_cohomology_rank(n: usize, characteristic: u64, q: usize, d: usize) -> PyResult<usize> {
    ext::cochain_cohomology_rank(n, field(characteristic)?, q, d).map_err(err)
}

/// The scalar relating `π_cd` to the Koszul identification, as a string.
#[pyfunction]
fn hkr_scaling_check(n: usize, characteristic: u64, q: usize) -> PyResult<String> {
    Ok(ext::hkr_scaling_check(n, field(characteristic)?, q)
        .map_err(err)?
        .to_string())
}

#[pyfunction]
fn line_bundle_cohomology(n: usize, characteristic: u64, d: i64) -> PyResult<Vec<usize>> {
    cech::line_bundle_cohomology(n, field(characteristic)?, d).map_err(err)
}

#[pyfunction]
fn omega_twist_cohomology(n: usize, characteristic: u64, p: usize, k: i64) -> PyResult<Vec<usize>> {
    cech::sheaf_cohomology(SheafSpec::omega_twist(n, p, k), field(characteristic)?).map_err(err)
}

#[pyfunction]
fn wedge_tangent_cohomology(n: usize, characteristic: u64, q: usize) -> PyResult<Vec<usize>> {
    cech::sheaf_cohomology(SheafSpec::wedge_tangent(n, q), field(characteristic)?).map_err(err)
}

#[pyclass(name = "DecompositionReport", frozen)]
struct PyDecomposition(DecompositionReport);

#[pymethods]
impl PyDecomposition {
    #[getter]
    fn space(&self) -> &'static str {
        match self.0.space {
            Space::Affine(_) => "affine",
            Space::Projective(_) => "projective",
        }
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.space.dimension()
    }

    #[getter]
    fn characteristic(&self) -> u64 {
        self.0.field.characteristic()
    }

    #[getter]
    fn hh(&self) -> Option<Vec<usize>> {
        self.0.hh.clone()
    }

    #[getter]
    fn summands(&self) -> Vec<Vec<usize>> {
        self.0.summands.clone()
    }

    #[getter]
    fn validity(&self) -> bool {
        self.0.validity
    }

    fn __repr__(&self) -> String {
        format!(
            "DecompositionReport(space={}, n={}, hh={:?}, validity={})",
            self.space(),
            self.n(),
            self.0.hh,
            self.0.validity
        )
    }
}

#[pyfunction]
fn hh_affine(n: usize, characteristic: u64) -> PyResult<PyDecomposition> {
    Ok(PyDecomposition(
        decomp::hh_affine(n, field(characteristic)?).map_err(err)?,
    ))
}

#[pyfunction]
fn hh_projective(n: usize, characteristic: u64) -> PyResult<PyDecomposition> {
    Ok(PyDecomposition(
        decomp::hh_projective(n, field(characteristic)?).map_err(err)?,
    ))
}

#[pyclass(name = "CharacteristicWitness", frozen)]
struct PyWitness(CharacteristicWitness);

#[pymethods]
impl PyWitness {
    #[getter]
    fn verdict(&self) -> &'static str {
        match self.0.verdict {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
        }
    }

    /// `(q, d, homology_dim, induced_rank)` of the first deficient piece.
    #[getter]
    fn witness(&self) -> Option<(usize, usize, usize, usize)> {
        self.0
            .witness
            .map(|w| (w.q, w.d, w.homology_dim, w.induced_rank))
    }

    #[getter]
    fn bounds(&self) -> (usize, usize) {
        (self.0.q_max, self.0.d_max)
    }

    fn __repr__(&self) -> String {
        format!("CharacteristicWitness({})", self.0.summary())
    }
}

#[pyfunction]
fn characteristic_criterion(n: usize, p: u64, q_max: usize, d_max: usize) -> PyResult<PyWitness> {
    Ok(PyWitness(
        decomp::characteristic_criterion(n, p, q_max, d_max).map_err(err)?,
    ))
}

/// Runs acceptance criteria; returns `(id, name, passed)` per criterion.
#[pyfunction]
#[pyo3(signature = (criteria=None, seed=None))]
fn selfcheck(
    py: Python<'_>,
    criteria: Option<Vec<usize>>,
    seed: Option<u64>,
) -> Vec<(usize, &'static str, bool)> {
    let ids = criteria.unwrap_or_else(|| acceptance::CRITERIA.to_vec());
    let seed = seed.unwrap_or(acceptance::DEFAULT_SEED);
    py.detach(|| {
        ids.iter()
            .filter_map(|&id| acceptance::run_criterion(id, seed))
            .map(|r| (r.id, r.name, r.passed))
            .collect()
    })
}

#[pymodule]
fn hhlab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PyPoly>()?;
    m.add_class::<PyMatrix>()?;
    m.add_class::<PyDecomposition>()?;
    m.add_class::<PyWitness>()?;
    m.add_function(wrap_pyfunction!(homology_rank, m)?)?;
    m.add_function(wrap_pyfunction!(chain_homology_rank, m)?)?;
    m.add_function(wrap_pyfunction!(chain_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(omega_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(pi_induced_rank, m)?)?;
    m.add_function(wrap_pyfunction!(koszul_ext, m)?)?;
    m.add_function(wrap_pyfunction!(cochain_cohomology_rank, m)?)?;
    m.add_function(wrap_pyfunction!(hkr_scaling_check, m)?)?;
    m.add_function(wrap_pyfunction!(line_bundle_cohomology, m)?)?;
    m.add_function(wrap_pyfunction!(omega_twist_cohomology, m)?)?;
    m.add_function(wrap_pyfunction!(wedge_tangent_cohomology, m)?)?;
    m.add_function(wrap_pyfunction!(hh_affine, m)?)?;
    m.add_function(wrap_pyfunction!(hh_projective, m)?)?;
    m.add_function(wrap_pyfunction!(characteristic_criterion, m)?)?;
    m.add_function(wrap_pyfunction!(selfcheck, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
