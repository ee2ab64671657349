//! Finite Fock superpositions and the normally ordered moment engine.
//!
//! Every state handled by this crate is a normalized vector
//! sum_n c_n |n> with n = 0..=N. All witness and phase-space routines
//! consume states through the moments ⟨a†ᵏ aˡ⟩, which are evaluated by a
//! direct sum over the Fock coefficients:
//!
//!   ⟨a†ᵏ aˡ⟩ = sum_m  c*_{m-l+k} c_m sqrt(m!/(m-l)!) sqrt((m-l+k)!/(m-l)!)
//!
//! with out-of-range ladder indices contributing zero.

use std::collections::HashMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math::{ladder_weight, ln_factorial};

/// Normalization slack tolerated on construction.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Anything that can answer moment queries. Implemented by the state itself
/// (direct evaluation) and by [`MomentTable`] (precomputed cache); the
/// witnesses are generic over this so sweeps can reuse cached low orders.
pub trait MomentSource {
    /// Normally ordered moment ⟨a†ᵏ aˡ⟩.
    fn moment(&self, k: u32, l: u32) -> Complex64;

    /// Antinormally ordered diagonal moment ⟨aˡ a†ˡ⟩ = sum_n |c_n|² (n+l)!/n!.
    fn antinormal_diagonal_moment(&self, l: u32) -> f64;

    /// Moment of the number distribution mu_l = sum_n nˡ |c_n|².
    fn number_moment(&self, l: u32) -> f64;
}

/// A normalized superposition of Fock states c_0|0> + ... + c_N|N>.
///
/// Immutable after construction; all methods are pure, so values can be
/// shared freely across worker threads.
#[derive(Debug, Clone, PartialEq)]
pub struct FockSuperposition {
    coefficients: Vec<Complex64>,
}

impl FockSuperposition {
    /// Normalizing constructor. Divides by the Euclidean norm; an empty or
    /// all-zero amplitude list cannot be normalized.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm_sq: f64 = amplitudes.iter().map(|c| c.norm_sqr()).sum();
        if amplitudes.is_empty() || norm_sq == 0.0 || !norm_sq.is_finite() {
            return Err(Error::ZeroVector);
        }
        let norm = norm_sq.sqrt();
        let coefficients = amplitudes.into_iter().map(|c| c / norm).collect();
        Ok(Self { coefficients })
    }

    /// Real-amplitude convenience wrapper around [`FockSuperposition::new`].
    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    /// The number state |n>.
    pub fn fock(n: usize) -> Self {
        let mut coefficients = vec![Complex64::ZERO; n + 1];
        coefficients[n] = Complex64::ONE;
        Self { coefficients }
    }

    /// The vacuum |0>.
    pub fn vacuum() -> Self {
        Self::fock(0)
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    /// Highest occupied Fock index N (length of the coefficient list minus one).
    pub fn cutoff(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Photon number distribution P(n) = |c_n|², length N+1.
    pub fn photon_number_distribution(&self) -> Vec<f64> {
        self.coefficients.iter().map(|c| c.norm_sqr()).collect()
    }

    /// Normally ordered moment ⟨a†ᵏ aˡ⟩ by the direct Fock-basis sum.
    pub fn moment(&self, k: u32, l: u32) -> Complex64 {
        let n_max = self.cutoff() as u64;
        let (k, l) = (k as u64, l as u64);
        let mut acc = Complex64::ZERO;
        for m in l..=n_max {
            let target = m - l + k;
            if target > n_max {
                continue;
            }
            let w = ladder_weight(m, l, target, k);
            acc += self.coefficients[target as usize].conj() * self.coefficients[m as usize] * w;
        }
        acc
    }

    /// ⟨aˡ a†ˡ⟩; real and >= 1 for l >= 1 on a normalized state.
    pub fn antinormal_diagonal_moment(&self, l: u32) -> f64 {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(n, c)| {
                c.norm_sqr() * (ln_factorial(n as u64 + l as u64) - ln_factorial(n as u64)).exp()
            })
            .sum()
    }

    /// mu_l = sum_n nˡ |c_n|².
    pub fn number_moment(&self, l: u32) -> f64 {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(n, c)| c.norm_sqr() * (n as f64).powi(l as i32))
            .sum()
    }
}

impl MomentSource for FockSuperposition {
    fn moment(&self, k: u32, l: u32) -> Complex64 {
        FockSuperposition::moment(self, k, l)
    }

    fn antinormal_diagonal_moment(&self, l: u32) -> f64 {
        FockSuperposition::antinormal_diagonal_moment(self, l)
    }

    fn number_moment(&self, l: u32) -> f64 {
        FockSuperposition::number_moment(self, l)
    }
}

/// Precomputed table of ⟨a†ᵏ aˡ⟩ for all k + l <= max_order.
///
/// Built once, immutable afterwards, so it can be shared across sweep
/// workers without locking. Queries beyond the cached order fall back to
/// the direct sum on the embedded state.
#[derive(Debug, Clone)]
pub struct MomentTable {
    state: FockSuperposition,
    entries: HashMap<(u32, u32), Complex64>,
    max_order: u32,
}

impl MomentTable {
    pub fn new(state: &FockSuperposition, max_order: u32) -> Self {
        let mut entries = HashMap::new();
        for k in 0..=max_order {
            for l in 0..=(max_order - k) {
                entries.insert((k, l), state.moment(k, l));
            }
        }
        Self {
            state: state.clone(),
            entries,
            max_order,
        }
    }

    /// Largest cached k + l.
    pub fn max_order(&self) -> u32 {
        self.max_order
    }

    /// Cached lookup of ⟨a†ᵏ aˡ⟩, computing on the fly past the cache.
    pub fn entry(&self, k: u32, l: u32) -> Complex64 {
        match self.entries.get(&(k, l)) {
            Some(v) => *v,
            None => self.state.moment(k, l),
        }
    }

    pub fn state(&self) -> &FockSuperposition {
        &self.state
    }
}

impl MomentSource for MomentTable {
    fn moment(&self, k: u32, l: u32) -> Complex64 {
        self.entry(k, l)
    }

    fn antinormal_diagonal_moment(&self, l: u32) -> f64 {
        self.state.antinormal_diagonal_moment(l)
    }

    fn number_moment(&self, l: u32) -> f64 {
        self.state.number_moment(l)
    }
}
