//! State-family identities: Abel normalization, the q = 0 reduction, the
//! number-state limit and closed-form / direct moment agreement.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nonclassical::{
    binomial_state, ngbs_amplitudes, ngbs_moment_closed_form, ngbs_state, NgbsParams,
};

#[test]
fn abel_normalization_over_random_parameters() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut tried = 0;
    while tried < 200 {
        let m = rng.random_range(1..=30u32);
        let p = rng.random_range(0.01..0.99);
        let bound = (-p / m as f64).max(-(1.0 - p) / m as f64);
        let q = rng.random_range(bound..1.0);
        let Ok(params) = NgbsParams::new(m, p, q) else {
            continue;
        };
        tried += 1;
        let sum: f64 = ngbs_amplitudes(params).iter().map(|b| b * b).sum();
        assert!(
            (sum - 1.0).abs() < 1e-10,
            "M={m} p={p} q={q}: sum = {sum}"
        );
    }
}

#[test]
fn q_zero_equals_binomial_state() {
    for m in [1u32, 2, 5, 10, 15, 20] {
        for p in [0.1, 0.3, 0.5, 0.7, 0.9] {
            let deformed = ngbs_state(NgbsParams::new(m, p, 0.0).unwrap());
            let plain = binomial_state(m, p).unwrap();
            for (a, b) in deformed
                .coefficients()
                .iter()
                .zip(plain.coefficients().iter())
            {
                assert!((a - b).norm() < 1e-12, "M={m} p={p}");
            }
        }
    }
}

#[test]
fn overlap_with_number_state_grows_toward_p_one() {
    let m = 8u32;
    let mut prev = 0.0;
    for p in [0.9, 0.99, 0.999] {
        let state = ngbs_state(NgbsParams::new(m, p, 0.0).unwrap());
        let overlap = state.coefficients()[m as usize].norm_sqr();
        assert!(overlap > prev);
        prev = overlap;
    }
    assert!(prev > 0.99);
}

#[test]
fn closed_form_moment_agrees_with_direct_engine() {
    let mut worst: f64 = 0.0;
    for m in [1u32, 3, 5, 8, 10, 12, 15] {
        for p in [0.1, 0.3, 0.5, 0.7, 0.9] {
            for q in [-0.05, -0.005, 0.0, 0.05, 0.2, 0.5] {
                let Ok(params) = NgbsParams::new(m, p, q) else {
                    continue;
                };
                let state = ngbs_state(params);
                for k in 0..=3u32 {
                    for l in 0..=3u32 {
                        let closed = ngbs_moment_closed_form(params, k, l);
                        let direct = state.moment(k, l).re;
                        worst = worst.max((closed - direct).abs());
                    }
                }
            }
        }
    }
    assert!(worst < 1e-8, "worst closed-form deviation {worst}");
}

#[test]
fn closed_form_moment_at_abel_boundary() {
    // one amplitude degenerates to zero at the boundary; the dropped-term
    // convention must keep both routes in agreement there
    let params = NgbsParams::new(10, 0.95, -0.005).unwrap();
    let state = ngbs_state(params);
    for k in 0..=2u32 {
        for l in 0..=2u32 {
            let closed = ngbs_moment_closed_form(params, k, l);
            let direct = state.moment(k, l).re;
            assert!((closed - direct).abs() < 1e-8, "k={k} l={l}");
        }
    }
}
