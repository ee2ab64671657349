//! Moment-engine oracles: an explicit matrix representation of the ladder
//! operators, hermiticity, and the commutator identity.

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nonclassical::math::{binomial, ln_factorial};
use nonclassical::{FockSuperposition, MomentSource, MomentTable};

/// ⟨psi| a†^k a^l |psi⟩ through dense (N+k+1)-dimensional matrices,
/// independent of the production path.
fn moment_matrix_oracle(state: &FockSuperposition, k: u32, l: u32) -> Complex64 {
    let dim = state.cutoff() + k as usize + 1;
    let mut lower = DMatrix::<Complex64>::zeros(dim, dim);
    for n in 1..dim {
        lower[(n - 1, n)] = Complex64::new((n as f64).sqrt(), 0.0);
    }
    let raise = lower.transpose();
    let mut op = DMatrix::<Complex64>::identity(dim, dim);
    for _ in 0..l {
        op = &lower * op;
    }
    for _ in 0..k {
        op = &raise * op;
    }
    let mut psi = DMatrix::<Complex64>::zeros(dim, 1);
    for (n, c) in state.coefficients().iter().enumerate() {
        psi[(n, 0)] = *c;
    }
    let image = op * &psi;
    let mut acc = Complex64::ZERO;
    for n in 0..dim {
        acc += psi[(n, 0)].conj() * image[(n, 0)];
    }
    acc
}

fn random_state(rng: &mut ChaCha8Rng, max_cutoff: usize) -> FockSuperposition {
    let n = rng.random_range(1..=max_cutoff);
    let amps: Vec<Complex64> = (0..=n)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    FockSuperposition::new(amps).unwrap()
}

#[test]
fn direct_moments_match_matrix_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..30 {
        let state = random_state(&mut rng, 8);
        for k in 0..=4u32 {
            for l in 0..=4u32 {
                let direct = state.moment(k, l);
                let oracle = moment_matrix_oracle(&state, k, l);
                assert!(
                    (direct - oracle).norm() < 1e-10,
                    "k={k} l={l}: {direct} vs {oracle}"
                );
            }
        }
    }
}

#[test]
fn antinormal_moment_matches_normal_ordering_expansion() {
    // a^l a†^l = sum_j C(l,j)^2 j! a†^{l-j} a^{l-j}
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..20 {
        let state = random_state(&mut rng, 10);
        for l in 0..=4u32 {
            let expanded: f64 = (0..=l)
                .map(|j| {
                    let c = binomial(l as u64, j as u64);
                    c * c
                        * (ln_factorial(j as u64)).exp()
                        * state.moment(l - j, l - j).re
                })
                .sum();
            let direct = state.antinormal_diagonal_moment(l);
            assert!(
                (expanded - direct).abs() < 1e-12 * direct.abs().max(1.0),
                "l={l}: {expanded} vs {direct}"
            );
            if l >= 1 {
                assert!(direct >= 1.0 - 1e-12);
            }
        }
        // [a, a†] = 1 on normalized states
        let comm = state.antinormal_diagonal_moment(1) - state.moment(1, 1).re;
        assert!((comm - 1.0).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normalization_and_hermiticity(
        parts in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..=13)
    ) {
        let amps: Vec<Complex64> = parts.iter().map(|&(re, im)| Complex64::new(re, im)).collect();
        prop_assume!(amps.iter().map(|c| c.norm_sqr()).sum::<f64>() > 1e-12);
        let state = FockSuperposition::new(amps).unwrap();

        let norm: f64 = state.coefficients().iter().map(|c| c.norm_sqr()).sum();
        prop_assert!((norm - 1.0).abs() < 1e-10);

        prop_assert!((state.moment(0, 0) - Complex64::ONE).norm() < 1e-12);
        for k in 0..=6u32 {
            for l in k..=6u32 {
                let a = state.moment(k, l);
                let b = state.moment(l, k).conj();
                prop_assert!((a - b).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn number_moment_agrees_with_stirling_expansion(
        parts in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..=9),
        l in 0u32..=5,
    ) {
        // mu_l = sum_k S2(l,k) <a†^k a^k>
        let amps: Vec<Complex64> = parts.iter().map(|&(re, im)| Complex64::new(re, im)).collect();
        prop_assume!(amps.iter().map(|c| c.norm_sqr()).sum::<f64>() > 1e-12);
        let state = FockSuperposition::new(amps).unwrap();
        let expanded: f64 = (0..=l)
            .map(|k| nonclassical::math::stirling2(l, k) as f64 * state.moment(k, k).re)
            .sum();
        prop_assert!((expanded - state.number_moment(l)).abs() < 1e-10);
    }
}

#[test]
fn moment_table_agrees_with_direct_path() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let state = random_state(&mut rng, 12);
    let table = MomentTable::new(&state, 8);
    for k in 0..=5u32 {
        for l in 0..=5u32 {
            assert_eq!(MomentSource::moment(&table, k, l), state.moment(k, l));
        }
    }
    assert_eq!(
        table.antinormal_diagonal_moment(3),
        state.antinormal_diagonal_moment(3)
    );
    assert_eq!(table.number_moment(4), state.number_moment(4));
}
