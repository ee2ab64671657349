//! Wigner quasiprobability of a finite Fock superposition, three ways, plus
//! the negative-volume measure built on it.
//!
//! The production path is the closed form: with b_n = pi^{-1/4}(2^n n!)^{-1/2}
//! and r² = x² + p′²,
//!
//!   W(x,p′) = (1/√π) sum_{n<=n'} c*_n c_{n'} b_n b_{n'} e^{-r²}
//!             (-1)^{n'} 2^{n'} n! (ip'-x)^{n'-n} L_n^{n'-n}(2r²)
//!
//! completed by conjugate symmetry for n > n' (which also enforces reality).
//! The Laguerre argument is 2(x²+p′²): it comes out of the Gaussian Hermite
//! product integral as -2(x+ip')(ip'-x), and the three-way agreement tests
//! below guard that reduction.
//!
//! Two independent formulations serve as oracles: the alternating series
//! over displaced number states, and direct numerical quadrature of
//! (1/π)∫ psi*(x+y) psi(x-y) e^{2ip'y} dy. All three use hbar = 1 and
//! X = (a + a†)/√2, under which a phase-space point maps to the
//! displacement amplitude alpha = (x + ip′)/√2 (so dx dp′ = 2 d²alpha).
//!
//! Everything here is normalized to ∬ W dx dp′ = 1.

use ndarray::Array2;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::math::{laguerre_column, ln_factorial, oscillator_wavefunctions};
use crate::state::FockSuperposition;

/// Beyond this squared radius e^{-r²} underflows and W is identically zero
/// at double precision.
const GAUSSIAN_UNDERFLOW_R2: f64 = 700.0;

/// Fold the Gaussian into the Laguerre recurrence start above this cutoff
/// so large-n intermediates stay inside f64 range.
const SCALED_RECURRENCE_CUTOFF: usize = 40;

/// Rectangular phase-space window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub x_min: f64,
    pub x_max: f64,
    pub p_min: f64,
    pub p_max: f64,
}

impl Window {
    /// Square window [-radius, radius]².
    pub fn centered(radius: f64) -> Self {
        Self {
            x_min: -radius,
            x_max: radius,
            p_min: -radius,
            p_max: radius,
        }
    }

    /// Default window for a state with cutoff N: radius sqrt(2N) + 6, the
    /// Fock support radius plus a Gaussian tail margin.
    pub fn default_for(state: &FockSuperposition) -> Self {
        Self::centered((2.0 * state.cutoff() as f64).sqrt() + 6.0)
    }
}

/// Rectangular lattice of Wigner values with axis metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSpaceGrid {
    pub x_axis: Vec<f64>,
    pub p_axis: Vec<f64>,
    /// values[[i, j]] = W(x_axis[i], p_axis[j]).
    pub values: Array2<f64>,
    /// dx · dp′ of one lattice cell.
    pub cell_area: f64,
}

impl PhaseSpaceGrid {
    /// Trapezoid integral of W over the window; approaches 1 on an adequate
    /// window as the lattice refines.
    pub fn mass(&self) -> f64 {
        self.weighted_sum(false)
    }

    /// Trapezoid integral of |W| over the window.
    pub fn abs_mass(&self) -> f64 {
        self.weighted_sum(true)
    }

    fn weighted_sum(&self, absolute: bool) -> f64 {
        let nx = self.x_axis.len();
        let np = self.p_axis.len();
        let mut total = 0.0;
        for i in 0..nx {
            let wi = if i == 0 || i == nx - 1 { 0.5 } else { 1.0 };
            for j in 0..np {
                let wj = if j == 0 || j == np - 1 { 0.5 } else { 1.0 };
                let v = self.values[[i, j]];
                total += wi * wj * if absolute { v.abs() } else { v };
            }
        }
        total * self.cell_area
    }
}

/// Point evaluator with the state-dependent pair coefficients hoisted out,
/// so grids and line integrals pay the O(N²) Laguerre work per point only.
pub(crate) struct WignerEvaluator {
    cutoff: usize,
    /// diagonal row: |c_n|² (-1)^n
    diag: Vec<f64>,
    /// rows[d-1][n] = 2 c*_n c_{n+d} (-1)^{n+d} sqrt(n!/(n+d)!) 2^{d/2}
    rows: Vec<Vec<Complex64>>,
    /// rows that are identically zero (sparse states skip them)
    skip: Vec<bool>,
}

impl WignerEvaluator {
    pub fn new(state: &FockSuperposition) -> Self {
        let c = state.coefficients();
        let n_cut = state.cutoff();
        let diag: Vec<f64> = c
            .iter()
            .enumerate()
            .map(|(n, cn)| cn.norm_sqr() * if n % 2 == 0 { 1.0 } else { -1.0 })
            .collect();
        let mut rows = Vec::with_capacity(n_cut);
        let mut skip = Vec::with_capacity(n_cut);
        for d in 1..=n_cut {
            let row: Vec<Complex64> = (0..=n_cut - d)
                .map(|n| {
                    let sign = if (n + d) % 2 == 0 { 1.0 } else { -1.0 };
                    let fac = (0.5
                        * (ln_factorial(n as u64) - ln_factorial((n + d) as u64)
                            + d as f64 * std::f64::consts::LN_2))
                        .exp();
                    2.0 * c[n].conj() * c[n + d] * sign * fac
                })
                .collect();
            skip.push(row.iter().all(|z| z.norm_sqr() == 0.0));
            rows.push(row);
        }
        Self {
            cutoff: n_cut,
            diag,
            rows,
            skip,
        }
    }

    pub fn eval(&self, x: f64, p_prime: f64) -> f64 {
        let r2 = x * x + p_prime * p_prime;
        if r2 > GAUSSIAN_UNDERFLOW_R2 {
            return 0.0;
        }
        let z = 2.0 * r2;
        let gauss = (-r2).exp();
        let (start, post) = if self.cutoff > SCALED_RECURRENCE_CUTOFF {
            (gauss, std::f64::consts::FRAC_1_PI)
        } else {
            (1.0, gauss * std::f64::consts::FRAC_1_PI)
        };

        // diagonal (d = 0): plain Laguerre recurrence, all-real
        let mut acc = self.diag[0] * start;
        if self.cutoff >= 1 {
            let mut prev = start;
            let mut cur = (1.0 - z) * start;
            acc += self.diag[1] * cur;
            for n in 1..self.cutoff {
                let nf = n as f64;
                let next = ((2.0 * nf + 1.0 - z) * cur - nf * prev) / (nf + 1.0);
                prev = cur;
                cur = next;
                acc += self.diag[n + 1] * cur;
            }
        }

        // off-diagonals: Re(u^d · sum_n row_d[n] L_n^d(z)), u = ip' - x
        let u = Complex64::new(-x, p_prime);
        let mut upow = Complex64::ONE;
        for d in 1..=self.cutoff {
            upow *= u;
            if self.skip[d - 1] {
                continue;
            }
            let row = &self.rows[d - 1];
            let af = d as f64;
            let mut prev = start;
            let mut sum = row[0] * prev;
            if row.len() > 1 {
                let mut cur = (1.0 + af - z) * start;
                sum += row[1] * cur;
                for n in 1..row.len() - 1 {
                    let nf = n as f64;
                    let next = ((2.0 * nf + 1.0 + af - z) * cur - (nf + af) * prev) / (nf + 1.0);
                    prev = cur;
                    cur = next;
                    sum += row[n + 1] * cur;
                }
            }
            acc += (upow * sum).re;
        }
        acc * post
    }

    /// Literal complex double sum (each n > n' term added as the conjugate of
    /// its partner); the imaginary residue measures how real the closed form
    /// is before truncation.
    #[cfg(test)]
    pub fn eval_complex(&self, state: &FockSuperposition, x: f64, p_prime: f64) -> Complex64 {
        let c = state.coefficients();
        let r2 = x * x + p_prime * p_prime;
        let z = 2.0 * r2;
        let u = Complex64::new(-x, p_prime);
        let mut acc = Complex64::ZERO;
        for n in 0..=self.cutoff {
            for np in n..=self.cutoff {
                let d = (np - n) as u32;
                let lag = laguerre_column(d, n, z, 1.0)[n];
                let sign = if np % 2 == 0 { 1.0 } else { -1.0 };
                let fac = (0.5
                    * (ln_factorial(n as u64) - ln_factorial(np as u64)
                        + d as f64 * std::f64::consts::LN_2))
                    .exp();
                let term = c[n].conj() * c[np] * sign * fac * u.powi(d as i32) * lag;
                acc += term;
                if np > n {
                    acc += term.conj();
                }
            }
        }
        acc * (-r2).exp() * std::f64::consts::FRAC_1_PI
    }
}

/// Closed-form Wigner value at one phase-space point.
pub fn wigner_point(state: &FockSuperposition, x: f64, p_prime: f64) -> f64 {
    WignerEvaluator::new(state).eval(x, p_prime)
}

/// Series depth sufficient for [`wigner_series`] at this point:
/// N + ceil(10 (x² + p′²)) + 24. The radius term covers the displaced
/// Poisson bulk (which peaks near k = |alpha|² = r²/2); the constant term
/// covers small radii, where the tail decays only through 1/sqrt((k-N)!)
/// and needs ~24 extra orders to drop below 1e-10.
pub fn recommended_series_depth(cutoff: usize, x: f64, p_prime: f64) -> usize {
    cutoff + (10.0 * (x * x + p_prime * p_prime)).ceil() as usize + 24
}

/// Wigner value through the displaced-number-state series
/// W = (1/π) sum_k (-1)^k |⟨alpha,k|psi⟩|², truncated at `k_max`; first
/// oracle for the closed form. Errors if the tail has not converged.
pub fn wigner_series(
    state: &FockSuperposition,
    x: f64,
    p_prime: f64,
    k_max: usize,
) -> Result<f64> {
    const TAIL_TOLERANCE: f64 = 1e-10;
    let c = state.coefficients();
    let n_cut = state.cutoff();
    let alpha = Complex64::new(x, p_prime) / std::f64::consts::SQRT_2;
    let a2 = alpha.norm_sqr();

    let mut partial = 0.0;
    let mut previous_partial = 0.0;
    let mut tail_max = 0.0f64;

    if a2 < 1e-290 {
        // D(0) = 1: the overlap reduces to the state's own coefficients
        for (k, ck) in c.iter().enumerate() {
            partial += ck.norm_sqr() * if k % 2 == 0 { 1.0 } else { -1.0 };
        }
        return Ok(partial * std::f64::consts::FRAC_1_PI);
    }

    // Laguerre table over the superscript d = |n - k| and degree min(n, k)
    let d_max = k_max.max(n_cut);
    let lag: Vec<Vec<f64>> = (0..=d_max)
        .map(|d| laguerre_column(d as u32, n_cut, a2, 1.0))
        .collect();
    let unit = alpha / alpha.norm();
    let mut up_pows = Vec::with_capacity(d_max + 1); // (alpha/|alpha|)^d
    let mut dn_pows = Vec::with_capacity(d_max + 1); // (-conj(alpha)/|alpha|)^d
    let mut up = Complex64::ONE;
    let mut dn = Complex64::ONE;
    for _ in 0..=d_max {
        up_pows.push(up);
        dn_pows.push(dn);
        up *= unit;
        dn *= -unit.conj();
    }
    let half_ln_alpha = alpha.norm().ln();

    for k in 0..=k_max {
        // t_k = sum_n c_n conj(chi_{nk}(alpha)), chi_{nk} = <n|D(alpha)|k>
        let mut t = Complex64::ZERO;
        for (n, cn) in c.iter().enumerate() {
            let (m, d) = if n >= k { (k, n - k) } else { (n, k - n) };
            let mag = (0.5 * (ln_factorial(m as u64) - ln_factorial((m + d) as u64))
                + d as f64 * half_ln_alpha
                - 0.5 * a2)
                .exp();
            let phase = if n >= k { up_pows[d] } else { dn_pows[d] };
            let chi = mag * phase * lag[d][m];
            t += cn * chi.conj();
        }
        let term = t.norm_sqr() * if k % 2 == 0 { 1.0 } else { -1.0 };
        previous_partial = partial;
        partial += term;
        if k == k_max {
            tail_max = term.abs(); // |S_{k_max} - S_{k_max - 1}|
        }
    }

    if tail_max * std::f64::consts::FRAC_1_PI > TAIL_TOLERANCE {
        return Err(Error::NonConvergence {
            what: "wigner series",
            previous: previous_partial * std::f64::consts::FRAC_1_PI,
            last: partial * std::f64::consts::FRAC_1_PI,
            tolerance: TAIL_TOLERANCE,
        });
    }
    Ok(partial * std::f64::consts::FRAC_1_PI)
}

/// Wigner value by direct trapezoid quadrature of
/// (1/π) ∫ psi*(x+y) psi(x-y) e^{2ip'y} dy over the position wavefunctions;
/// second oracle. The integrand is entire with Gaussian decay, so the
/// trapezoid rule converges spectrally; the step resolves both the e^{2ip'y}
/// oscillation and the fastest wavefunction oscillation with >= 20 points
/// per period, and the half-width sqrt(2N) + 8 covers the support.
pub fn wigner_quadrature(state: &FockSuperposition, x: f64, p_prime: f64) -> f64 {
    let n_cut = state.cutoff();
    let c = state.coefficients();
    let y_max = (2.0 * n_cut as f64).sqrt() + 8.0;
    let bandwidth = p_prime.abs() + (2.0 * n_cut as f64 + 1.0).sqrt() + 1.0;
    let dy = (std::f64::consts::PI / (20.0 * bandwidth)).min(0.02);
    let steps = (2.0 * y_max / dy).ceil() as usize;
    let h = 2.0 * y_max / steps as f64;

    let psi = |t: f64| -> Complex64 {
        let phi = oscillator_wavefunctions(n_cut, t);
        c.iter()
            .zip(phi.iter())
            .map(|(cn, pn)| cn * pn)
            .sum::<Complex64>()
    };

    let mut acc = Complex64::ZERO;
    for j in 0..=steps {
        let y = -y_max + j as f64 * h;
        let w = if j == 0 || j == steps { 0.5 } else { 1.0 };
        let kernel = Complex64::from_polar(1.0, 2.0 * p_prime * y);
        acc += psi(x + y).conj() * psi(x - y) * kernel * (w * h);
    }
    (acc * std::f64::consts::FRAC_1_PI).re
}

/// Evaluate W over a rectangular lattice. Points are independent and pure,
/// so rows are distributed over the current rayon pool; values are identical
/// for any worker count.
pub fn wigner_grid(
    state: &FockSuperposition,
    window: &Window,
    nx: usize,
    np: usize,
) -> Result<PhaseSpaceGrid> {
    if nx < 2 || np < 2 {
        return Err(Error::ResolutionTooSmall {
            resolution: nx.min(np),
        });
    }
    let x_axis: Vec<f64> = linspace(window.x_min, window.x_max, nx);
    let p_axis: Vec<f64> = linspace(window.p_min, window.p_max, np);
    let evaluator = WignerEvaluator::new(state);
    let rows: Vec<Vec<f64>> = x_axis
        .par_iter()
        .map(|&x| p_axis.iter().map(|&p| evaluator.eval(x, p)).collect())
        .collect();
    let mut values = Array2::zeros((nx, np));
    for (i, row) in rows.into_iter().enumerate() {
        for (j, v) in row.into_iter().enumerate() {
            values[[i, j]] = v;
        }
    }
    let cell_area = (x_axis[1] - x_axis[0]) * (p_axis[1] - p_axis[0]);
    Ok(PhaseSpaceGrid {
        x_axis,
        p_axis,
        values,
        cell_area,
    })
}

pub(crate) fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    let h = (b - a) / (n - 1) as f64;
    (0..n).map(|i| a + i as f64 * h).collect()
}

/// Options for the negative-volume refinement loop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeOptions {
    /// Window; defaults to [`Window::default_for`] the state.
    pub window: Option<Window>,
    /// Lattice points per axis of the coarsest pass.
    pub initial_resolution: usize,
    /// Refinement stops once successive delta estimates differ by less.
    pub tolerance: f64,
    /// Maximum number of dyadic refinements after the first pass.
    pub max_refinements: usize,
}

impl Default for VolumeOptions {
    fn default() -> Self {
        Self {
            window: None,
            initial_resolution: 201,
            tolerance: 1e-5,
            max_refinements: 5,
        }
    }
}

/// Outcome of the volume refinement.
#[derive(Debug, Clone, PartialEq)]
pub struct VolumeReport {
    /// delta = ∬|W| dx dp′ − 1, twice the volume of the negative region.
    pub delta: f64,
    /// Volume of the negative region itself, delta/2.
    pub negative_volume: f64,
    pub window: Window,
    pub tolerance: f64,
    /// (resolution per axis, delta estimate) of every refinement pass.
    pub history: Vec<(usize, f64)>,
    pub converged: bool,
}

/// Run the refinement loop to its cap and report whatever was reached;
/// `converged` tells whether successive estimates met the tolerance.
pub fn volume_refinement(state: &FockSuperposition, opts: &VolumeOptions) -> Result<VolumeReport> {
    if opts.initial_resolution < 2 {
        return Err(Error::ResolutionTooSmall {
            resolution: opts.initial_resolution,
        });
    }
    let window = opts.window.unwrap_or_else(|| Window::default_for(state));
    let mut history = Vec::new();
    let mut resolution = opts.initial_resolution;
    let mut converged = false;
    for pass in 0..=opts.max_refinements {
        let grid = wigner_grid(state, &window, resolution, resolution)?;
        let delta = grid.abs_mass() - 1.0;
        history.push((resolution, delta));
        if pass > 0 && (delta - history[pass - 1].1).abs() < opts.tolerance {
            converged = true;
            break;
        }
        resolution = 2 * resolution - 1; // nested lattice: old nodes are kept
    }
    let delta = history.last().unwrap().1;
    Ok(VolumeReport {
        delta,
        negative_volume: 0.5 * delta,
        window,
        tolerance: opts.tolerance,
        history,
        converged,
    })
}

/// Nonclassical volume delta(psi) = ∬|W| dx dp′ − 1.
///
/// Zero (up to quadrature error) exactly when W is nonnegative on the
/// window. Errors with the last two estimates if the refinement cap is hit
/// before successive deltas settle below the tolerance.
pub fn nonclassical_volume(state: &FockSuperposition, opts: &VolumeOptions) -> Result<VolumeReport> {
    let report = volume_refinement(state, opts)?;
    if !report.converged {
        let n = report.history.len();
        return Err(Error::NonConvergence {
            what: "nonclassical volume refinement",
            previous: report.history[n - 2].1,
            last: report.history[n - 1].1,
            tolerance: opts.tolerance,
        });
    }
    Ok(report)
}
