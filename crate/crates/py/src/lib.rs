//! Python module exposing the state constructors, moment engine, witnesses
//! and phase-space routines.
//!
//! Build with `cargo build --release -p nonclassical-py` and rename the
//! produced `libnonclassical_py.so` to `nonclassical.so` somewhere on the
//! Python path (see python/smoke_test.py).

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ::nonclassical as core;
use ::nonclassical::{Criterion, VolumeOptions};

fn to_py_err(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A normalized finite Fock superposition.
#[pyclass(name = "FockState", frozen)]
struct PyFockState {
    inner: core::FockSuperposition,
}

#[pymethods]
impl PyFockState {
    /// Normalizing constructor from a list of complex amplitudes.
    #[new]
    fn new(amplitudes: Vec<Complex64>) -> PyResult<Self> {
        Ok(Self {
            inner: core::FockSuperposition::new(amplitudes).map_err(to_py_err)?,
        })
    }

    /// Number state |n>.
    #[staticmethod]
    fn fock(n: usize) -> Self {
        Self {
            inner: core::FockSuperposition::fock(n),
        }
    }

    /// Generalized binomial state with dimension M, probability p and
    /// deformation q (q >= max(-p/M, -(1-p)/M)).
    #[staticmethod]
    fn ngbs(m: u32, p: f64, q: f64) -> PyResult<Self> {
        let params = core::NgbsParams::new(m, p, q).map_err(to_py_err)?;
        Ok(Self {
            inner: core::ngbs_state(params),
        })
    }

    /// Binomial state; endpoints p = 0, 1 give the vacuum and |M>.
    #[staticmethod]
    fn binomial(m: u32, p: f64) -> PyResult<Self> {
        Ok(Self {
            inner: core::binomial_state(m, p).map_err(to_py_err)?,
        })
    }

    /// Truncated coherent state with real amplitude; the default cutoff
    /// keeps the discarded tail below 1e-12.
    #[staticmethod]
    #[pyo3(signature = (alpha, cutoff=None))]
    fn coherent(alpha: f64, cutoff: Option<usize>) -> Self {
        let cutoff = cutoff.unwrap_or_else(|| core::coherent_cutoff(alpha));
        Self {
            inner: core::truncated_coherent_state(alpha, cutoff),
        }
    }

    fn coefficients(&self) -> Vec<Complex64> {
        self.inner.coefficients().to_vec()
    }

    fn cutoff(&self) -> usize {
        self.inner.cutoff()
    }

    fn photon_number_distribution(&self) -> Vec<f64> {
        self.inner.photon_number_distribution()
    }

    /// Normally ordered moment <a†^k a^l>.
    fn moment(&self, k: u32, l: u32) -> Complex64 {
        self.inner.moment(k, l)
    }

    /// Antinormally ordered diagonal moment <a^l a†^l>.
    fn antinormal_diagonal_moment(&self, l: u32) -> f64 {
        self.inner.antinormal_diagonal_moment(l)
    }

    /// Moment of the number distribution sum_n n^l |c_n|^2.
    fn number_moment(&self, l: u32) -> f64 {
        self.inner.number_moment(l)
    }

    /// Evaluate a witness by name: hoa, hosps, hong-mandel, hillery,
    /// agarwal-tara or vogel. Returns (value, nonclassical).
    fn witness(&self, criterion: &str, order: u32) -> PyResult<(f64, bool)> {
        let criterion: Criterion = criterion.parse().map_err(PyValueError::new_err)?;
        let w = core::evaluate(&self.inner, criterion, order).map_err(to_py_err)?;
        Ok((w.value, w.nonclassical))
    }

    /// Closed-form Wigner value at (x, p).
    fn wigner(&self, x: f64, p: f64) -> f64 {
        core::wigner_point(&self.inner, x, p)
    }

    /// Wigner value through the displaced-number series; oracle route.
    #[pyo3(signature = (x, p, k_max=None))]
    fn wigner_series(&self, x: f64, p: f64, k_max: Option<usize>) -> PyResult<f64> {
        let k_max =
            k_max.unwrap_or_else(|| core::recommended_series_depth(self.inner.cutoff(), x, p));
        core::wigner_series(&self.inner, x, p, k_max).map_err(to_py_err)
    }

    /// Wigner value by direct quadrature of the position wavefunctions;
    /// oracle route.
    fn wigner_quadrature(&self, x: f64, p: f64) -> f64 {
        core::wigner_quadrature(&self.inner, x, p)
    }

    /// Wigner surface over a centered square window; returns
    /// (x_axis, p_axis, rows).
    #[pyo3(signature = (radius=None, resolution=201))]
    fn wigner_grid(
        &self,
        radius: Option<f64>,
        resolution: usize,
    ) -> PyResult<(Vec<f64>, Vec<f64>, Vec<Vec<f64>>)> {
        let radius =
            radius.unwrap_or_else(|| (2.0 * self.inner.cutoff() as f64).sqrt() + 6.0);
        let grid = core::wigner_grid(
            &self.inner,
            &core::Window::centered(radius),
            resolution,
            resolution,
        )
        .map_err(to_py_err)?;
        let rows = grid
            .values
            .rows()
            .into_iter()
            .map(|r| r.to_vec())
            .collect();
        Ok((grid.x_axis, grid.p_axis, rows))
    }

    /// Optical tomogram value w(X, theta).
    fn tomogram(&self, x: f64, theta: f64) -> f64 {
        core::tomogram_point(&self.inner, x, theta)
    }

    /// Tomogram surface over X in [-radius, radius] and n_theta angles in
    /// [0, 2pi); returns (x_axis, theta_axis, rows).
    #[pyo3(signature = (radius=None, nx=201, n_theta=64))]
    fn tomogram_grid(
        &self,
        radius: Option<f64>,
        nx: usize,
        n_theta: usize,
    ) -> PyResult<(Vec<f64>, Vec<f64>, Vec<Vec<f64>>)> {
        let radius =
            radius.unwrap_or_else(|| (2.0 * self.inner.cutoff() as f64).sqrt() + 6.0);
        let grid = core::tomogram_grid(&self.inner, -radius, radius, nx, n_theta)
            .map_err(to_py_err)?;
        let rows = grid
            .values
            .rows()
            .into_iter()
            .map(|r| r.to_vec())
            .collect();
        Ok((grid.x_axis, grid.theta_axis, rows))
    }

    /// |Radon line integral of W - tomogram| at one (theta, X) sample.
    fn radon_residual(&self, theta: f64, x: f64) -> f64 {
        let quad = core::RadonQuadrature::for_state(&self.inner);
        core::radon_consistency(&self.inner, theta, x, &quad)
    }

    /// Nonclassical volume delta = ∬|W| - 1 by grid refinement.
    #[pyo3(signature = (tolerance=1e-5, initial_resolution=201, max_refinements=5))]
    fn nonclassical_volume(
        &self,
        tolerance: f64,
        initial_resolution: usize,
        max_refinements: usize,
    ) -> PyResult<PyVolumeResult> {
        let opts = VolumeOptions {
            window: None,
            initial_resolution,
            tolerance,
            max_refinements,
        };
        let report = core::nonclassical_volume(&self.inner, &opts).map_err(to_py_err)?;
        Ok(PyVolumeResult {
            delta: report.delta,
            negative_volume: report.negative_volume,
            converged: report.converged,
            history: report.history,
        })
    }

    fn __repr__(&self) -> String {
        format!("FockState(cutoff={})", self.inner.cutoff())
    }
}

/// Outcome of the volume refinement loop.
#[pyclass(name = "VolumeResult", frozen)]
struct PyVolumeResult {
    #[pyo3(get)]
    delta: f64,
    #[pyo3(get)]
    negative_volume: f64,
    #[pyo3(get)]
    converged: bool,
    #[pyo3(get)]
    history: Vec<(usize, f64)>,
}

#[pymethods]
impl PyVolumeResult {
    fn __repr__(&self) -> String {
        format!(
            "VolumeResult(delta={}, converged={})",
            self.delta, self.converged
        )
    }
}

/// Stirling number of the second kind S2(r, k), exact.
#[pyfunction]
fn stirling2(r: u32, k: u32) -> u128 {
    core::math::stirling2(r, k)
}

/// Closed-form normally ordered moment of the generalized binomial state,
/// evaluated without building the state.
#[pyfunction]
fn ngbs_moment_closed_form(m: u32, p: f64, q: f64, k: u32, l: u32) -> PyResult<f64> {
    let params = core::NgbsParams::new(m, p, q).map_err(to_py_err)?;
    Ok(core::ngbs_moment_closed_form(params, k, l))
}

/// Witness criterion names accepted by FockState.witness.
#[pyfunction]
fn criteria() -> Vec<&'static str> {
    Criterion::ALL.iter().map(|c| c.name()).collect()
}

#[pymodule]
#[pyo3(name = "nonclassical")]
fn bindings(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFockState>()?;
    m.add_class::<PyVolumeResult>()?;
    m.add_function(wrap_pyfunction!(stirling2, m)?)?;
    m.add_function(wrap_pyfunction!(ngbs_moment_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(criteria, m)?)?;
    Ok(())
}
