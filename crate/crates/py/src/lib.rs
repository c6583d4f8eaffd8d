//! Python bindings: problems, solutions, the exact function class and the
//! numerical oracles.

// The Python signatures mirror keyword arguments one to one.
#![allow(clippy::too_many_arguments)]

use std::cell::RefCell;

use dunkl_qes::es::{self, LaguerreIndex};
use dunkl_qes::oracle::audit::{qes_position_audit, FdOptions};
use dunkl_qes::oracle::fd::{fd_eigen_radial, fd_eigen_richardson, RadialGrid};
use dunkl_qes::oracle::{weighted_inner_product, QuadratureScheme, Weight};
use dunkl_qes::potential::potential_eval;
use dunkl_qes::spectra::QesProblem;
use dunkl_qes::{DunklParams, Family, Gauge, GaugeParams, Parity, PlaneSector, SectorInfo};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: dunkl_qes::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parity(eps: u8) -> PyResult<Parity> {
    Parity::from_epsilon(eps).map_err(err)
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::LineOscillator => "line",
        Family::PlaneOscillator => "plane-oscillator",
        Family::PlaneCoulomb => "coulomb",
    }
}

/// `exp(-(q4/4) x^4 - (q2/2) x^2 - q1 x) * sum_m c_m x^m`.
#[pyclass(name = "QuasiPolynomial", module = "dunkl_qes", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyQuasi(dunkl_qes::QuasiPolynomial);

#[pymethods]
impl PyQuasi {
    #[new]
    #[pyo3(signature = (coeffs, quartic = 0.0, quadratic = 0.0, linear = 0.0))]
    fn new(coeffs: Vec<f64>, quartic: f64, quadratic: f64, linear: f64) -> Self {
        Self(dunkl_qes::QuasiPolynomial::new(Gauge::new(quartic, quadratic, linear), coeffs))
    }

    #[getter]
    fn coeffs(&self) -> Vec<f64> {
        self.0.coeffs().to_vec()
    }

    /// `(quartic, quadratic, linear)`.
    #[getter]
    fn gauge(&self) -> (f64, f64, f64) {
        let g = self.0.gauge();
        (g.quartic, g.quadratic, g.linear)
    }

    fn __call__(&self, x: f64) -> f64 {
        self.0.eval(x)
    }

    fn eval(&self, xs: Vec<f64>) -> Vec<f64> {
        xs.into_iter().map(|x| self.0.eval(x)).collect()
    }

    fn derivative(&self) -> Self {
        Self(self.0.derivative())
    }

    fn reflect(&self) -> Self {
        Self(self.0.reflect())
    }

    /// Dunkl derivative `d/dx + (mu/x)(1 - R)`.
    fn dunkl(&self, mu: f64) -> PyResult<Self> {
        let p = DunklParams::new(mu).map_err(err)?;
        dunkl_qes::dunkl::dunkl_apply(p, &self.0).map(Self).map_err(err)
    }

    fn max_norm(&self) -> f64 {
        self.0.max_norm()
    }

    fn __repr__(&self) -> String {
        let (q4, q2, q1) = self.gauge();
        format!("QuasiPolynomial(coeffs={:?}, quartic={q4}, quadratic={q2}, linear={q1})", self.0.coeffs())
    }
}

#[pyclass(name = "Solution", module = "dunkl_qes", frozen)]
struct PySolution(dunkl_qes::QesSolution);

#[pymethods]
impl PySolution {
    #[getter]
    fn k(&self) -> usize {
        self.0.k
    }

    #[getter]
    fn n(&self) -> u32 {
        self.0.n
    }

    #[getter]
    fn energy(&self) -> f64 {
        self.0.energy
    }

    /// Coulomb coupling selecting this level's Hamiltonian; `None` for oscillators.
    #[getter]
    fn alpha(&self) -> Option<f64> {
        self.0.alpha
    }

    #[getter]
    fn polynomial(&self) -> Vec<f64> {
        self.0.polynomial.clone()
    }

    #[getter]
    fn wavefunction(&self) -> PyQuasi {
        PyQuasi(self.0.wavefunction.clone())
    }

    /// `"block"` or `"closed_form"`.
    #[getter]
    fn provenance(&self) -> &'static str {
        match self.0.provenance {
            dunkl_qes::Provenance::Block => "block",
            dunkl_qes::Provenance::ClosedForm => "closed_form",
        }
    }

    fn node_count(&self) -> usize {
        self.0.node_count()
    }

    /// Relative max-norm of `H psi - E psi` on the exact function class.
    fn residual(&self) -> PyResult<f64> {
        self.0.residual().map_err(err)
    }

    fn __repr__(&self) -> String {
        match self.0.alpha {
            Some(a) => format!("Solution(k={}, energy={}, alpha={a})", self.0.k, self.0.energy),
            None => format!("Solution(k={}, energy={})", self.0.k, self.0.energy),
        }
    }
}

fn plane_sector(nu: f64, mu1: f64, mu2: f64, eps1: Option<u8>, eps2: Option<u8>) -> PyResult<PlaneSector> {
    match (eps1, eps2) {
        (None, None) => PlaneSector::with_default_parities(nu, mu1, mu2),
        (Some(e1), Some(e2)) => PlaneSector::new(parity(e1)?, parity(e2)?, nu, mu1, mu2),
        _ => return Err(PyValueError::new_err("give both eps1 and eps2, or neither")),
    }
    .map_err(err)
}

/// A QES problem: sector, gauge `(a, b)` and representation index `n`.
#[pyclass(name = "Problem", module = "dunkl_qes", frozen)]
struct PyProblem(QesProblem);

impl PyProblem {
    fn checked(p: QesProblem) -> PyResult<Self> {
        p.block().map_err(err)?;
        Ok(Self(p))
    }
}

#[pymethods]
impl PyProblem {
    #[staticmethod]
    #[pyo3(signature = (mu, eps, a, b, n))]
    fn line(mu: f64, eps: u8, a: f64, b: f64, n: u32) -> PyResult<Self> {
        let p = DunklParams::new(mu).map_err(err)?;
        let g = GaugeParams::new(a, b).map_err(err)?;
        Self::checked(QesProblem::line(p, parity(eps)?, g, n))
    }

    #[staticmethod]
    #[pyo3(signature = (nu, mu1, mu2, a, b, n, eps1 = None, eps2 = None))]
    fn plane_oscillator(
        nu: f64,
        mu1: f64,
        mu2: f64,
        a: f64,
        b: f64,
        n: u32,
        eps1: Option<u8>,
        eps2: Option<u8>,
    ) -> PyResult<Self> {
        let s = plane_sector(nu, mu1, mu2, eps1, eps2)?;
        let g = GaugeParams::new(a, b).map_err(err)?;
        Self::checked(QesProblem::plane_oscillator(s, g, n))
    }

    #[staticmethod]
    #[pyo3(signature = (nu, mu1, mu2, a, b, n, eps1 = None, eps2 = None))]
    fn coulomb(
        nu: f64,
        mu1: f64,
        mu2: f64,
        a: f64,
        b: f64,
        n: u32,
        eps1: Option<u8>,
        eps2: Option<u8>,
    ) -> PyResult<Self> {
        let s = plane_sector(nu, mu1, mu2, eps1, eps2)?;
        let g = GaugeParams::new(a, b).map_err(err)?;
        Self::checked(QesProblem::plane_coulomb(s, g, n))
    }

    #[getter]
    fn family(&self) -> &'static str {
        family_name(self.0.family())
    }

    #[getter]
    fn n(&self) -> u32 {
        self.0.n
    }

    #[getter]
    fn effective_l(&self) -> f64 {
        self.0.effective_l().value()
    }

    /// `(diag, sub, sup)` of the tridiagonal block.
    fn block(&self) -> PyResult<(Vec<f64>, Vec<f64>, Vec<f64>)> {
        let b = self.0.block().map_err(err)?;
        Ok((b.diag, b.sub, b.sup))
    }

    fn solve(&self) -> PyResult<Vec<PySolution>> {
        Ok(self.0.solve().map_err(err)?.into_iter().map(PySolution).collect())
    }

    /// Closed-form levels; only `n <= 1`.
    fn closed_form(&self) -> PyResult<Vec<PySolution>> {
        Ok(self.0.closed_form().map_err(err)?.into_iter().map(PySolution).collect())
    }

    /// Effective potentials at `points`, keyed by curve label; `None` at poles.
    #[pyo3(signature = (points, k = None))]
    fn potential<'py>(&self, py: Python<'py>, points: Vec<f64>, k: Option<usize>) -> PyResult<Bound<'py, PyDict>> {
        let out = PyDict::new(py);
        for c in potential_eval(&self.0, k, &points).map_err(err)? {
            out.set_item(c.label, c.values)?;
        }
        Ok(out)
    }

    /// Weighted inner product of two levels in the sector's natural measure
    /// (oscillator families only).
    fn inner_product(&self, i: usize, j: usize) -> PyResult<f64> {
        let weight = match self.0.sector {
            SectorInfo::Line { dunkl, .. } => Weight::Line { mu: dunkl.mu() },
            SectorInfo::PlaneOscillator { sector } => Weight::Radial {
                power: sector.measure_power(),
            },
            SectorInfo::PlaneCoulomb { .. } => {
                return Err(PyValueError::new_err("Coulomb levels belong to different Hamiltonians"))
            }
        };
        let sols = self.0.solve().map_err(err)?;
        let get = |k: usize| {
            sols.get(k)
                .ok_or_else(|| PyValueError::new_err(format!("level {k} out of range")))
        };
        weighted_inner_product(&get(i)?.wavefunction, &get(j)?.wavefunction, weight, &QuadratureScheme::default())
            .map_err(err)
    }

    /// Finite-difference audit: position of each known level in its sector's
    /// spectrum, with the Richardson-extrapolated oracle value.
    #[pyo3(signature = (npoints = 1200, rmax = None))]
    fn audit<'py>(&self, py: Python<'py>, npoints: usize, rmax: Option<f64>) -> PyResult<Vec<Bound<'py, PyDict>>> {
        let options = FdOptions {
            npoints,
            rmax,
            ..FdOptions::default()
        };
        let report = qes_position_audit(&self.0, &options).map_err(err)?;
        report
            .entries
            .iter()
            .map(|e| {
                let d = PyDict::new(py);
                d.set_item("k", e.k)?;
                d.set_item("alpha", e.alpha)?;
                d.set_item("analytic", e.analytic)?;
                d.set_item("position", e.position)?;
                d.set_item("oracle", e.matched.map(|m| m.extrapolated))?;
                d.set_item("order", e.matched.map(|m| m.order))?;
                d.set_item("oracle_lowest", e.oracle_lowest.clone())?;
                d.set_item("polynomial_nodes", e.polynomial_nodes)?;
                d.set_item("oracle_nodes", e.oracle_nodes)?;
                Ok(d)
            })
            .collect()
    }

    fn __repr__(&self) -> String {
        format!("Problem(family={:?}, n={}, l={})", self.family(), self.0.n, self.effective_l())
    }
}

/// Exactly solvable harmonic level on the line: `(energy, wavefunction)`.
#[pyfunction]
fn es_line_level(mu: f64, k: usize, eps: u8) -> PyResult<(f64, PyQuasi)> {
    let l = es::es_line_level(DunklParams::new(mu).map_err(err)?, k, parity(eps)?);
    Ok((l.energy, PyQuasi(l.wavefunction)))
}

/// Exactly solvable harmonic level in the plane (radial part).
#[pyfunction]
#[pyo3(signature = (nu, mu1, mu2, k, eps1 = None, eps2 = None))]
fn es_plane_oscillator_level(
    nu: f64,
    mu1: f64,
    mu2: f64,
    k: usize,
    eps1: Option<u8>,
    eps2: Option<u8>,
) -> PyResult<(f64, PyQuasi)> {
    let l = es::es_plane_oscillator_level(&plane_sector(nu, mu1, mu2, eps1, eps2)?, k);
    Ok((l.energy, PyQuasi(l.wavefunction)))
}

/// Exactly solvable Coulomb level in the plane (radial part).
#[pyfunction]
#[pyo3(signature = (nu, mu1, mu2, k, alpha, eps1 = None, eps2 = None))]
fn es_plane_coulomb_level(
    nu: f64,
    mu1: f64,
    mu2: f64,
    k: usize,
    alpha: f64,
    eps1: Option<u8>,
    eps2: Option<u8>,
) -> PyResult<(f64, PyQuasi)> {
    let l = es::es_plane_coulomb_level(&plane_sector(nu, mu1, mu2, eps1, eps2)?, k, alpha).map_err(err)?;
    Ok((l.energy, PyQuasi(l.wavefunction)))
}

/// Generalised Laguerre polynomial `L_k^(alpha)(z)`.
#[pyfunction]
fn laguerre(k: usize, alpha: f64, z: f64) -> PyResult<f64> {
    Ok(es::laguerre_eval(LaguerreIndex::new(k, alpha).map_err(err)?, z))
}

/// Runs `f` with a potential backed by a Python callable; the first Python
/// error raised by the callable wins over any solver error.
fn with_callable<T>(
    veff: &Bound<'_, PyAny>,
    f: impl FnOnce(&dyn Fn(f64) -> f64) -> dunkl_qes::Result<T>,
) -> PyResult<T> {
    let failure: RefCell<Option<PyErr>> = RefCell::new(None);
    let v = |r: f64| match veff.call1((r,)).and_then(|x| x.extract::<f64>()) {
        Ok(x) => x,
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            f64::NAN
        }
    };
    let out = f(&v);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    out.map_err(err)
}

/// `m` lowest Dirichlet eigenvalues of `-u'' + veff(r) u` on `(0, rmax)`.
#[pyfunction]
#[pyo3(signature = (veff, rmax, m, npoints = 1200))]
fn fd_eigenvalues(veff: &Bound<'_, PyAny>, rmax: f64, m: usize, npoints: usize) -> PyResult<Vec<f64>> {
    let grid = RadialGrid::new(rmax, npoints).map_err(err)?;
    with_callable(veff, |v| fd_eigen_radial(v, &grid, m))
}

/// Richardson-extrapolated eigenvalues: list of `(value, error_bar, order)`.
#[pyfunction]
#[pyo3(signature = (veff, rmax, m, npoints = 1200))]
fn fd_eigenvalues_extrapolated(
    veff: &Bound<'_, PyAny>,
    rmax: f64,
    m: usize,
    npoints: usize,
) -> PyResult<Vec<(f64, f64, f64)>> {
    let grid = RadialGrid::new(rmax, npoints).map_err(err)?;
    let spectrum = with_callable(veff, |v| fd_eigen_richardson(v, &grid, m))?;
    Ok(spectrum
        .levels
        .iter()
        .map(|l| (l.extrapolated, l.error_bar, l.order))
        .collect())
}

#[pymodule]
#[pyo3(name = "dunkl_qes")]
fn init(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyQuasi>()?;
    m.add_class::<PySolution>()?;
    m.add_class::<PyProblem>()?;
    m.add_function(wrap_pyfunction!(es_line_level, m)?)?;
    m.add_function(wrap_pyfunction!(es_plane_oscillator_level, m)?)?;
    m.add_function(wrap_pyfunction!(es_plane_coulomb_level, m)?)?;
    m.add_function(wrap_pyfunction!(laguerre, m)?)?;
    m.add_function(wrap_pyfunction!(fd_eigenvalues, m)?)?;
    m.add_function(wrap_pyfunction!(fd_eigenvalues_extrapolated, m)?)?;
    Ok(())
}
