//! The generalized binomial state family and its limiting cases.
//!
//! The family is parametrized by an integer dimension M, a probability p and
//! a deformation parameter q. Its amplitudes follow from Abel's
//! generalization of the binomial theorem: with s = 1 + Mq and
//! R_n = (p + nq)/s,
//!
//!   B_n² = (p/s) · C(M,n) · R_n^{n-1} · (1 - R_n)^{M-n},     n = 1..=M
//!   B_0² = (1 - p/s)^M
//!
//! (the n = 0 amplitude is resolved analytically: the R_0^{-1} power cancels
//! against the p/s prefactor, so no negative power of a possibly tiny number
//! is ever formed). Abel's identity guarantees sum_n B_n² = 1 for every
//! valid parameter triple. q = 0 recovers the plain binomial state, which in
//! turn interpolates between the vacuum (p = 0), a coherent state
//! (p → 0, M → ∞ at fixed Mp) and the number state |M> (p = 1).

use crate::error::{Error, Result};
use crate::math::{ln_binomial, ln_factorial};
use crate::state::FockSuperposition;

/// Validated (M, p, q) triple.
///
/// Requires 0 < p < 1 and q >= max(-p/M, -(1-p)/M) (vacuous for M = 0), the
/// bound that keeps every amplitude real. Equality is allowed: at the bound
/// one amplitude degenerates to zero, punching a hole in the photon number
/// distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NgbsParams {
    dimension: u32,
    probability: f64,
    deformation: f64,
}

impl NgbsParams {
    pub fn new(dimension: u32, probability: f64, deformation: f64) -> Result<Self> {
        if !(probability > 0.0 && probability < 1.0) {
            return Err(Error::InvalidProbability {
                p: probability,
                low: 0.0,
                high: 1.0,
            });
        }
        if dimension >= 1 {
            let m = dimension as f64;
            let lower_p = -probability / m;
            let lower_1p = -(1.0 - probability) / m;
            let (bound, which) = if lower_p >= lower_1p {
                (lower_p, "-p/M")
            } else {
                (lower_1p, "-(1-p)/M")
            };
            // roundoff guard: the bound is itself a computed float, and
            // values exactly on it must pass
            if deformation < bound - 1e-12 {
                return Err(Error::AbelBound {
                    q: deformation,
                    bound,
                    which,
                });
            }
        }
        Ok(Self {
            dimension,
            probability,
            deformation,
        })
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn probability(&self) -> f64 {
        self.probability
    }

    pub fn deformation(&self) -> f64 {
        self.deformation
    }
}

/// base^expo with the 0^0 = 1 convention and tiny negative bases (roundoff
/// at the Abel boundary) clamped to zero.
fn pow_clamped(base: f64, expo: i64) -> f64 {
    if expo == 0 {
        1.0
    } else if base <= 0.0 {
        0.0
    } else {
        ((expo as f64) * base.ln()).exp()
    }
}

/// Raw amplitudes B_0..B_M of the generalized binomial state.
///
/// These are exactly the Abel-formula values, not renormalized; their squares
/// sum to 1 up to roundoff, which the test suite checks as an identity.
pub fn ngbs_amplitudes(params: NgbsParams) -> Vec<f64> {
    let m = params.dimension as u64;
    let p = params.probability;
    let q = params.deformation;
    let s = 1.0 + m as f64 * q;
    let ratio = |n: u64| (p + n as f64 * q) / s;

    let mut amps = Vec::with_capacity(m as usize + 1);
    amps.push(pow_clamped(1.0 - p / s, m as i64).sqrt());
    for n in 1..=m {
        let b2 = (p / s)
            * ln_binomial(m, n).exp()
            * pow_clamped(ratio(n), n as i64 - 1)
            * pow_clamped(1.0 - ratio(n), (m - n) as i64);
        amps.push(b2.max(0.0).sqrt());
    }
    amps
}

/// The generalized binomial state as a normalized [`FockSuperposition`].
pub fn ngbs_state(params: NgbsParams) -> FockSuperposition {
    FockSuperposition::from_real(&ngbs_amplitudes(params))
        .expect("Abel amplitudes of valid parameters have unit norm")
}

/// The binomial state with amplitudes c_n = [C(M,n) pⁿ (1-p)^{M-n}]^{1/2}.
///
/// Unlike the deformed family, the endpoints are allowed here: p = 0 gives
/// the vacuum and p = 1 gives |M> exactly.
pub fn binomial_state(dimension: u32, p: f64) -> Result<FockSuperposition> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability {
            p,
            low: 0.0,
            high: 1.0,
        });
    }
    let m = dimension as u64;
    let amps: Vec<f64> = (0..=m)
        .map(|n| {
            (ln_binomial(m, n).exp() * p.powi(n as i32) * (1.0 - p).powi((m - n) as i32)).sqrt()
        })
        .collect();
    FockSuperposition::from_real(&amps)
}

/// Cutoff at which the discarded tail mass of a truncated coherent state
/// stays below 1e-12: ceil(alpha² + 10|alpha| + 20). The Poisson weights
/// alpha^{2n}/n! decay superexponentially once n exceeds alpha², and the
/// 10|alpha| + 20 margin pushes the tail well under the target for every
/// amplitude this crate sweeps.
pub fn coherent_cutoff(alpha: f64) -> usize {
    (alpha * alpha + 10.0 * alpha.abs() + 20.0).ceil() as usize
}

/// Coherent state with real amplitude, truncated at `cutoff` and
/// renormalized: c_n ∝ alphaⁿ/sqrt(n!).
pub fn truncated_coherent_state(alpha: f64, cutoff: usize) -> FockSuperposition {
    let mut amps = Vec::with_capacity(cutoff + 1);
    let mut t = 1.0f64;
    amps.push(t);
    for n in 1..=cutoff {
        t *= alpha / (n as f64).sqrt();
        amps.push(t);
    }
    FockSuperposition::from_real(&amps).expect("coherent amplitudes start at 1")
}

/// Closed-form normally ordered moment ⟨a†ᵏ aˡ⟩ of the generalized binomial
/// state, evaluated without constructing the state:
///
///   (p M!/s) · sum_n 1/(n-l)! ·
///       sqrt[ R_n^{n-1} R_ñ^{ñ-1} (1-R_n)^{M-n} (1-R_ñ)^{M-ñ} / ((M-n)!(M-ñ)!) ]
///
/// with ñ = n - l + k; summands containing negative factorial arguments are
/// dropped. Agreement with the direct Fock-basis moment is covered by the
/// test suite rather than assumed.
pub fn ngbs_moment_closed_form(params: NgbsParams, k: u32, l: u32) -> f64 {
    let m = params.dimension as i64;
    let p = params.probability;
    let q = params.deformation;
    let s = 1.0 + m as f64 * q;
    let ratio = |n: i64| (p + n as f64 * q) / s;
    let (k, l) = (k as i64, l as i64);

    let mut total = 0.0;
    for n in l..=m.min(m + l - k) {
        let nt = n - l + k; // index reached after l annihilations and k creations
        debug_assert!((0..=m).contains(&nt));
        let mut half = -ln_factorial((m - n) as u64) - ln_factorial((m - nt) as u64);
        let mut zero = false;
        for (base, expo) in [
            (ratio(n), n - 1),
            (ratio(nt), nt - 1),
            (1.0 - ratio(n), m - n),
            (1.0 - ratio(nt), m - nt),
        ] {
            if expo == 0 {
                continue;
            }
            if base <= 0.0 {
                zero = true;
                break;
            }
            half += expo as f64 * base.ln();
        }
        if zero {
            continue;
        }
        total += (p.ln() - s.ln() + ln_factorial(m as u64) - ln_factorial((n - l) as u64)
            + 0.5 * half)
            .exp();
    }
    total
}
