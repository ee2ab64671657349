//! Optical tomograms: marginal distributions of the rotated quadrature
//! X_theta = X cos(theta) + P sin(theta), the Radon transform of the Wigner
//! function.
//!
//! For a finite Fock superposition the tomogram has the closed form
//!
//!   w(X, theta) = e^{-X²}/√π [ sum_n |c_n|² H_n²(X)/(2ⁿ n!)
//!       + sum_{n<k} |c_n||c_k| cos((n-k)theta - (phi_n - phi_k))
//!                     H_n(X) H_k(X) / sqrt(2^{n+k-2} n! k!) ]
//!
//! which is evaluated here as |sum_n c_n e^{-in·theta} phi_n(X)|² with the
//! exponentially scaled oscillator functions phi_n (the two expressions are
//! identical term by term; the scaled form cannot overflow and is manifestly
//! nonnegative).

use ndarray::Array2;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::math::oscillator_wavefunctions;
use crate::state::FockSuperposition;
use crate::wigner::{linspace, WignerEvaluator};

/// Lattice of tomogram values over quadrature value and phase angle.
#[derive(Debug, Clone, PartialEq)]
pub struct TomogramGrid {
    pub x_axis: Vec<f64>,
    /// Angles in [0, 2π), uniformly spaced, end excluded.
    pub theta_axis: Vec<f64>,
    /// values[[i, j]] = w(x_axis[i], theta_axis[j]).
    pub values: Array2<f64>,
}

impl TomogramGrid {
    /// Trapezoid integral over X at fixed angle index; 1 up to quadrature
    /// error for every angle on an adequate X range.
    pub fn angle_norm(&self, j: usize) -> f64 {
        let nx = self.x_axis.len();
        let h = self.x_axis[1] - self.x_axis[0];
        let mut total = 0.0;
        for i in 0..nx {
            let w = if i == 0 || i == nx - 1 { 0.5 } else { 1.0 };
            total += w * self.values[[i, j]];
        }
        total * h
    }
}

/// Tomogram value w(X, theta) >= 0.
pub fn tomogram_point(state: &FockSuperposition, x: f64, theta: f64) -> f64 {
    let phi = oscillator_wavefunctions(state.cutoff(), x);
    let amp: Complex64 = state
        .coefficients()
        .iter()
        .enumerate()
        .map(|(n, cn)| cn * Complex64::from_polar(phi[n], -(n as f64) * theta))
        .sum();
    amp.norm_sqr()
}

/// Evaluate the tomogram over [x_min, x_max] × [0, 2π) with `n_theta`
/// equally spaced angles.
pub fn tomogram_grid(
    state: &FockSuperposition,
    x_min: f64,
    x_max: f64,
    nx: usize,
    n_theta: usize,
) -> Result<TomogramGrid> {
    if nx < 2 || n_theta < 2 {
        return Err(Error::ResolutionTooSmall {
            resolution: nx.min(n_theta),
        });
    }
    let x_axis = linspace(x_min, x_max, nx);
    let theta_axis: Vec<f64> = (0..n_theta)
        .map(|j| 2.0 * std::f64::consts::PI * j as f64 / n_theta as f64)
        .collect();
    let rows: Vec<Vec<f64>> = x_axis
        .par_iter()
        .map(|&x| {
            let phi = oscillator_wavefunctions(state.cutoff(), x);
            theta_axis
                .iter()
                .map(|&th| {
                    let amp: Complex64 = state
                        .coefficients()
                        .iter()
                        .enumerate()
                        .map(|(n, cn)| cn * Complex64::from_polar(phi[n], -(n as f64) * th))
                        .sum();
                    amp.norm_sqr()
                })
                .collect()
        })
        .collect();
    let mut values = Array2::zeros((nx, n_theta));
    for (i, row) in rows.into_iter().enumerate() {
        for (j, v) in row.into_iter().enumerate() {
            values[[i, j]] = v;
        }
    }
    Ok(TomogramGrid {
        x_axis,
        theta_axis,
        values,
    })
}

/// Quadrature parameters for the Radon line integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadonQuadrature {
    /// Integration half-width along the line.
    pub half_width: f64,
    /// Upper bound on the step; shrunk further to resolve the fastest
    /// Wigner oscillation with >= 20 points per period.
    pub max_step: f64,
}

impl RadonQuadrature {
    /// Same support and sampling rules as the Wigner quadrature oracle:
    /// half-width sqrt(2N) + 8, step resolving wavenumber ~2·sqrt(2N+1).
    pub fn for_state(state: &FockSuperposition) -> Self {
        let n = state.cutoff() as f64;
        Self {
            half_width: (2.0 * n).sqrt() + 8.0,
            max_step: (std::f64::consts::PI / (20.0 * (2.0 * (2.0 * n + 1.0).sqrt() + 1.0)))
                .min(0.02),
        }
    }
}

/// |∫ W(X cos θ − η sin θ, X sin θ + η cos θ) dη − w(X, θ)|: the residual of
/// the Radon-transform identity between the Wigner function and the closed
/// form tomogram at one sample.
pub fn radon_consistency(
    state: &FockSuperposition,
    theta: f64,
    x: f64,
    quad: &RadonQuadrature,
) -> f64 {
    let evaluator = WignerEvaluator::new(state);
    let steps = (2.0 * quad.half_width / quad.max_step).ceil() as usize;
    let h = 2.0 * quad.half_width / steps as f64;
    let (sin_t, cos_t) = theta.sin_cos();
    let mut line = 0.0;
    for j in 0..=steps {
        let eta = -quad.half_width + j as f64 * h;
        let w = if j == 0 || j == steps { 0.5 } else { 1.0 };
        line += w * evaluator.eval(x * cos_t - eta * sin_t, x * sin_t + eta * cos_t);
    }
    (line * h - tomogram_point(state, x, theta)).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn vacuum_tomogram_is_gaussian() {
        let vac = FockSuperposition::vacuum();
        for theta in [0.0, 1.0, 4.5] {
            for x in [-2.0, 0.0, 0.7] {
                let expected = (-x * x as f64).exp() / std::f64::consts::PI.sqrt();
                assert_relative_eq!(tomogram_point(&vac, x, theta), expected, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn fock_one_tomogram_is_angle_free() {
        let one = FockSuperposition::fock(1);
        for x in [-1.5, 0.3, 2.0f64] {
            let expected = 2.0 * x * x * (-x * x).exp() / std::f64::consts::PI.sqrt();
            assert_relative_eq!(tomogram_point(&one, x, 0.0), expected, epsilon = 1e-12);
            assert_relative_eq!(tomogram_point(&one, x, 2.2), expected, epsilon = 1e-12);
        }
    }

    #[test]
    fn cosine_parity_for_real_coefficients() {
        let state = crate::ngbs::ngbs_state(crate::ngbs::NgbsParams::new(8, 0.3, 0.2).unwrap());
        for (x, th) in [(0.4, 0.9), (-1.1, 2.4), (2.0, 5.5)] {
            assert_relative_eq!(
                tomogram_point(&state, x, th),
                tomogram_point(&state, x, -th),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn grid_norms_and_nonnegativity() {
        let state = crate::ngbs::ngbs_state(crate::ngbs::NgbsParams::new(5, 0.5, 0.1).unwrap());
        let grid = tomogram_grid(&state, -9.0, 9.0, 901, 16).unwrap();
        assert!(grid.values.iter().all(|&v| v >= -1e-12));
        for j in 0..16 {
            assert_relative_eq!(grid.angle_norm(j), 1.0, epsilon = 1e-8);
        }
        assert!(tomogram_grid(&state, -9.0, 9.0, 1, 16).is_err());
    }

    #[test]
    fn radon_identity_vacuum_and_fock() {
        let vac = FockSuperposition::vacuum();
        let q = RadonQuadrature::for_state(&vac);
        assert!(radon_consistency(&vac, 0.0, 0.0, &q) < 1e-10);

        let one = FockSuperposition::fock(1);
        let q = RadonQuadrature::for_state(&one);
        assert!(radon_consistency(&one, std::f64::consts::FRAC_PI_3, 1.0, &q) < 1e-6);
    }
}
