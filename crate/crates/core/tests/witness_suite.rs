//! Cross-checks of the witness formulas against independent reductions:
//! the coherent boundary, the Fock ladder, the HOSPS/HOA collapse, the
//! direct quadrature variance and the Heisenberg floor of the Hillery pair.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nonclassical::{
    agarwal_tara, coherent_cutoff, hillery_hos, hoa, hong_mandel_hos, hosps,
    truncated_coherent_state, vogel_determinant, Criterion, FockSuperposition,
};

fn random_state(rng: &mut ChaCha8Rng, max_cutoff: usize) -> FockSuperposition {
    let n = rng.random_range(1..=max_cutoff);
    let amps: Vec<Complex64> = (0..=n)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    FockSuperposition::new(amps).unwrap()
}

#[test]
fn coherent_states_sit_on_the_classical_boundary() {
    for alpha in [0.5, 1.0, 2.0] {
        let state = truncated_coherent_state(alpha, coherent_cutoff(alpha));
        let mut values = vec![
            hoa(&state, 1).unwrap(),
            hoa(&state, 2).unwrap(),
            hoa(&state, 3).unwrap(),
            hosps(&state, 2).unwrap(),
            hosps(&state, 3).unwrap(),
            hosps(&state, 4).unwrap(),
            hong_mandel_hos(&state, 2).unwrap(),
            hong_mandel_hos(&state, 4).unwrap(),
            hillery_hos(&state, 1).unwrap(),
            hillery_hos(&state, 2).unwrap(),
            agarwal_tara(&state, 2).unwrap(),
            agarwal_tara(&state, 3).unwrap(),
            vogel_determinant(&state, 3).unwrap(),
        ];
        values.push(vogel_determinant(&state, 4).unwrap());
        // verdicts are strict sign tests, so the boundary suite checks
        // magnitudes only: roundoff puts these values at ±1e-16
        for w in values {
            assert!(
                w.value.abs() < 1e-6,
                "alpha={alpha} {}({}) = {}",
                w.criterion,
                w.order,
                w.value
            );
        }
    }
}

#[test]
fn fock_ladder_values() {
    for n in 1..=6usize {
        let state = FockSuperposition::fock(n);
        let nf = n as f64;
        assert!((hoa(&state, 1).unwrap().value + nf).abs() < 1e-9);
        assert!((hosps(&state, 2).unwrap().value + nf).abs() < 1e-9);
        let at = agarwal_tara(&state, 2).unwrap();
        assert!((at.value + 1.0).abs() < 1e-12);
        assert!(at.nonclassical);
        // <(dX)^2> = n + 1/2 against the coherent 1/2
        assert!((hong_mandel_hos(&state, 2).unwrap().value - 2.0 * nf).abs() < 1e-9);
    }
}

#[test]
fn hosps_collapses_to_hoa_at_order_two() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..100 {
        let state = random_state(&mut rng, 10);
        assert_eq!(
            hosps(&state, 2).unwrap().value,
            hoa(&state, 1).unwrap().value
        );
    }
}

#[test]
fn hong_mandel_order_two_equals_direct_variance() {
    // S_HM(2)·(1/2) + 1/2 against <X^2> - <X>^2 with X = (a + a†)/sqrt(2)
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..50 {
        let state = random_state(&mut rng, 10);
        let mean_x = std::f64::consts::SQRT_2 * state.moment(0, 1).re;
        let x_sq = 0.5 * (2.0 * state.moment(0, 2).re + 2.0 * state.moment(1, 1).re + 1.0);
        let variance = x_sq - mean_x * mean_x;
        let reconstructed = hong_mandel_hos(&state, 2).unwrap().value * 0.5 + 0.5;
        assert!(
            (reconstructed - variance).abs() < 1e-10,
            "{reconstructed} vs {variance}"
        );
    }
}

#[test]
fn hillery_pair_obeys_heisenberg_floor() {
    // (dY1)^2 (dY2)^2 >= |<[Y1,Y2]>|^2 / 4 for the amplitude-powered pair
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..50 {
        let state = random_state(&mut rng, 10);
        for l in 1..=3u32 {
            let anti = state.antinormal_diagonal_moment(l);
            let norm = state.moment(l, l).re;
            let a2l = state.moment(0, 2 * l);
            let al = state.moment(0, l);
            let y1_var = 0.25 * (2.0 * a2l.re + norm + anti) - al.re * al.re;
            let y2_var = 0.25 * (-2.0 * a2l.re + norm + anti) - al.im * al.im;
            let comm_sq = 0.25 * (anti - norm) * (anti - norm);
            assert!(
                y1_var * y2_var + 1e-10 >= 0.25 * comm_sq,
                "l={l}: {y1_var} * {y2_var} < {}",
                0.25 * comm_sq
            );
        }
    }
}

#[test]
fn vogel_three_by_three_on_displaced_like_states() {
    // rank-one normally ordered structure of coherent states at several
    // amplitudes, plus the Fock identity matrix
    let one = FockSuperposition::fock(1);
    assert!((vogel_determinant(&one, 3).unwrap().value - 1.0).abs() < 1e-12);
    for alpha in [0.3, 1.7] {
        let state = truncated_coherent_state(alpha, coherent_cutoff(alpha));
        assert!(vogel_determinant(&state, 3).unwrap().value.abs() < 1e-7);
    }
}

#[test]
fn witness_dispatch_matches_direct_calls() {
    let state = FockSuperposition::fock(3);
    for (criterion, order) in [
        (Criterion::Antibunching, 1),
        (Criterion::SubPoissonian, 2),
        (Criterion::HongMandel, 2),
        (Criterion::Hillery, 2),
        (Criterion::AgarwalTara, 2),
        (Criterion::Vogel, 3),
    ] {
        let via_dispatch = nonclassical::evaluate(&state, criterion, order).unwrap();
        assert_eq!(via_dispatch.criterion, criterion);
        assert_eq!(via_dispatch.order, order);
    }
}
