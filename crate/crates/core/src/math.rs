//! Factorial-ratio and orthogonal-polynomial kit shared by the moment engine
//! and the phase-space routines.
//!
//! Factorial ratios are the main overflow hazard here (dimensions above ~20
//! exceed 64-bit integers), so ratios go through `ln_factorial` differences
//! with an exact integer fast path for small arguments.

use crate::error::{Error, Result};

/// ln(n!) for n = 0..=25, correctly rounded.
const LN_FACTORIAL_TABLE: [f64; 26] = [
    0.0,
    0.0,
    std::f64::consts::LN_2,
    1.791759469228055,
    3.1780538303479458,
    4.787491742782046,
    6.579251212010101,
    8.525161361065415,
    10.60460290274525,
    12.801827480081469,
    15.104412573075516,
    17.502307845873887,
    19.987214495661885,
    22.552163853123425,
    25.19122118273868,
    27.89927138384089,
    30.671860106080672,
    33.50507345013689,
    36.39544520803305,
    39.339884187199495,
    42.335616460753485,
    45.38013889847691,
    48.47118135183523,
    51.60667556776438,
    54.78472939811232,
    58.00360522298052,
];

/// Natural log of n!.
pub fn ln_factorial(n: u64) -> f64 {
    if (n as usize) < LN_FACTORIAL_TABLE.len() {
        LN_FACTORIAL_TABLE[n as usize]
    } else {
        libm::lgamma(n as f64 + 1.0)
    }
}

/// ln of the binomial coefficient C(n, k); -inf when k > n.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        f64::NEG_INFINITY
    } else {
        ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
    }
}

/// Binomial coefficient as f64; exact for arguments that fit the u128 fast path.
pub fn binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    if n <= 60 {
        let mut acc: u128 = 1;
        for i in 0..k {
            acc = acc * (n - i) as u128 / (i + 1) as u128;
        }
        acc as f64
    } else {
        ln_binomial(n, k).exp()
    }
}

/// Falling factorial n·(n-1)···(n-l+1) = n!/(n-l)!; zero when l > n.
fn falling(n: u64, l: u64) -> f64 {
    if l > n {
        return 0.0;
    }
    if n <= 20 {
        let mut acc: u128 = 1;
        for i in 0..l {
            acc *= (n - i) as u128;
        }
        acc as f64
    } else {
        (ln_factorial(n) - ln_factorial(n - l)).exp()
    }
}

/// sqrt(m!/(m-l)! · t!/(t-k)!), the ladder weight of a normally ordered
/// moment term. Exact through the integer path for small arguments.
pub(crate) fn ladder_weight(m: u64, l: u64, t: u64, k: u64) -> f64 {
    if m <= 20 && t <= 20 {
        (falling(m, l) * falling(t, k)).sqrt()
    } else {
        (0.5 * (ln_factorial(m) - ln_factorial(m - l) + ln_factorial(t) - ln_factorial(t - k)))
            .exp()
    }
}

/// Double factorial n!! with the conventions (-1)!! = 0!! = 1.
pub fn double_factorial(n: i64) -> f64 {
    if n <= 0 {
        return 1.0;
    }
    let mut acc = 1.0;
    let mut m = n;
    while m > 0 {
        acc *= m as f64;
        m -= 2;
    }
    acc
}

/// Pochhammer value (1/2)_{n/2} = (n-1)!!/2^{n/2} for even n, the coherent
/// benchmark of the even quadrature-moment hierarchy. Odd n is rejected.
pub fn pochhammer_half(n: u32) -> Result<f64> {
    if !n.is_multiple_of(2) {
        return Err(Error::OrderDomain {
            what: "pochhammer_half",
            order: n as i64,
            requirement: "n must be even",
        });
    }
    Ok(double_factorial(n as i64 - 1) / 2f64.powi(n as i32 / 2))
}

/// Stirling number of the second kind S2(r, k), exact.
///
/// Recurrence S2(r,k) = k·S2(r-1,k) + S2(r-1,k-1) with S2(0,0) = 1;
/// k > r yields 0 by convention.
pub fn stirling2(r: u32, k: u32) -> u128 {
    if k > r {
        return 0;
    }
    if r == 0 {
        return 1;
    }
    // row-by-row DP; values stay tiny for the orders used by the witnesses
    let mut row = vec![0u128; r as usize + 1];
    row[0] = 1;
    for rr in 1..=r as usize {
        for kk in (1..=rr).rev() {
            row[kk] = kk as u128 * row[kk] + row[kk - 1];
        }
        row[0] = 0;
    }
    row[k as usize]
}

/// Generalized Laguerre values L_n^a(z)·scale for n = 0..=n_max, by the
/// three-term recurrence. `scale` folds an exponential prefactor into the
/// start values so large-n evaluations stay inside f64 range.
pub(crate) fn laguerre_column(a: u32, n_max: usize, z: f64, scale: f64) -> Vec<f64> {
    let af = a as f64;
    let mut out = Vec::with_capacity(n_max + 1);
    let mut prev = scale;
    out.push(prev);
    if n_max == 0 {
        return out;
    }
    let mut cur = (1.0 + af - z) * scale;
    out.push(cur);
    for n in 1..n_max {
        let nf = n as f64;
        let next = ((2.0 * nf + 1.0 + af - z) * cur - (nf + af) * prev) / (nf + 1.0);
        prev = cur;
        cur = next;
        out.push(cur);
    }
    out
}

/// Harmonic-oscillator eigenfunctions phi_n(x) = b_n e^{-x^2/2} H_n(x) for
/// n = 0..=n_max, with b_n = pi^{-1/4} (2^n n!)^{-1/2} and hbar = 1.
///
/// The normalized recurrence keeps every value O(1), so no Hermite overflow
/// occurs at any order.
pub fn oscillator_wavefunctions(n_max: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    let phi0 = std::f64::consts::PI.powf(-0.25) * (-0.5 * x * x).exp();
    out.push(phi0);
    if n_max == 0 {
        return out;
    }
    out.push(std::f64::consts::SQRT_2 * x * phi0);
    for n in 2..=n_max {
        let nf = n as f64;
        let next = (2.0 / nf).sqrt() * x * out[n - 1] - ((nf - 1.0) / nf).sqrt() * out[n - 2];
        out.push(next);
    }
    out
}
