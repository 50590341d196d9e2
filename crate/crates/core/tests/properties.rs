use proptest::prelude::*;

use num_complex::Complex64;
use wilsonqs::operators::{hamiltonian_matrix, kinetic_matrix, potential_matrix, wave_operator};
use wilsonqs::reconstruct::{reconstruct_a, reconstruct_b, Grid};
use wilsonqs::specfun::integrate_real_line;
use wilsonqs::specfun::{
    hyp2f1, hyp2f1_with, log_gamma_complex, pochhammer, QuadratureSpec, SeriesControl,
};
use wilsonqs::system::{
    basis_values, bound_states, energy_to_y, expand_in_basis, phase_shift, wavefunction_continuum,
    y_to_energy, SystemParams,
};
use wilsonqs::wilson::{
    orthonormal_sequence, orthonormal_sequence_by_recursion, weight_density, wilson_eval,
    EvalMethod, WilsonParams,
};
use wilsonqs::BandedMatrix;

fn scattering_params() -> impl Strategy<Value = WilsonParams> {
    (0.1..2.0f64, 0.1..2.0f64, 0.1..2.0f64, 0.1..2.0f64)
        .prop_map(|(mu, nu, a, b)| WilsonParams::new(mu, nu, a, b).unwrap())
}

proptest! {
    #[test]
    fn pochhammer_step(a in -5.0..5.0f64, n in 0usize..20) {
        prop_assert_eq!(pochhammer(a, n + 1), pochhammer(a, n) * (a + n as f64));
    }

    #[test]
    fn log_gamma_recurrence(re in 0.05..20.0f64, im in -20.0..20.0f64) {
        let z = Complex64::new(re, im);
        let ratio = (log_gamma_complex(z + 1.0).unwrap() - log_gamma_complex(z).unwrap()).exp();
        prop_assert!((ratio / z - 1.0).norm() < 1e-12);
    }

    #[test]
    fn hyp2f1_is_converged_before_the_cap(
        a in -2.0..2.0f64, ai in -1.5..1.5f64, b in -2.0..2.0f64, c in 0.2..3.0f64, t in -0.9..0.9f64,
    ) {
        let (a, b, c) = (Complex64::new(a, ai), Complex64::new(b, -ai), Complex64::new(c, 0.0));
        let base = hyp2f1(a, b, c, t).unwrap();
        let doubled = hyp2f1_with(a, b, c, t, SeriesControl { max_terms: 200_000, ..SeriesControl::default() }).unwrap();
        prop_assert!((base - doubled).norm() < 1e-13);
    }

    #[test]
    fn recursion_agrees_with_series(p in scattering_params(), y in 0.001..3.0f64, n in 0usize..=15) {
        let r = wilson_eval(n, y, &p, EvalMethod::Recursion).unwrap();
        let s = wilson_eval(n, y, &p, EvalMethod::Series).unwrap();
        prop_assert!((r - s).abs() <= 1e-9 * s.abs().max(1.0), "{} vs {}", r, s);
    }

    #[test]
    fn orthonormal_routes_agree(p in scattering_params(), y in 0.001..3.0f64) {
        let scaled = orthonormal_sequence(10, y, &p).unwrap();
        let recursed = orthonormal_sequence_by_recursion(10, y, &p).unwrap();
        for (s, r) in scaled.iter().zip(&recursed) {
            prop_assert!((s - r).abs() <= 1e-9 * s.abs().max(1.0));
        }
    }

    #[test]
    fn weight_is_nonnegative(p in scattering_params(), y in 1e-3..60.0f64) {
        prop_assert!(weight_density(y, &p).unwrap() >= 0.0);
    }

    #[test]
    fn wilson_is_even_in_y(p in scattering_params(), y in 0.0..3.0f64, n in 0usize..12) {
        prop_assert_eq!(
            wilson_eval(n, y, &p, EvalMethod::Recursion).unwrap(),
            wilson_eval(n, -y, &p, EvalMethod::Recursion).unwrap()
        );
    }

    #[test]
    fn energy_round_trip(e in 1e-6..1e3f64, lambda in 0.01..5.0f64) {
        let point = energy_to_y(e, lambda).unwrap();
        prop_assert!((y_to_energy(point.y, lambda).unwrap() / e - 1.0).abs() < 1e-14);
        prop_assert!((point.k * point.k / 2.0 / e - 1.0).abs() < 1e-14);
    }

    #[test]
    fn bound_energies_follow_closed_form(mu in -6.0..-0.01f64, lambda in 0.01..3.0f64) {
        let w = WilsonParams::new(mu, 7.0, 7.0, 7.0).unwrap();
        let states = bound_states(&SystemParams::new(lambda, w).unwrap());
        prop_assert_eq!(states.len(), (-mu).ceil() as usize);
        for s in states {
            prop_assert!(s.energy < 0.0);
            let shifted = s.m as f64 + mu;
            prop_assert!(shifted < 0.0);
            prop_assert_eq!(s.energy, -lambda * lambda / (2.0 * shifted * shifted));
        }
    }

    #[test]
    fn operators_respect_bands(order in 1usize..30, lambda in 0.05..3.0f64, mu in 0.1..3.0f64, a in 0.1..3.0f64, e in -5.0..5.0f64) {
        let h = hamiltonian_matrix(order, lambda, mu, a).unwrap();
        let t = kinetic_matrix(order, lambda).unwrap();
        let v = potential_matrix(&h, &t).unwrap();
        let j = wave_operator(&h, e).unwrap();
        for m in [&h, &t, &v, &j] {
            prop_assert_eq!(m.band_violation(), 0.0);
        }
        prop_assert!(h.max_asymmetry() <= 1e-13 * h.get(order - 1, order - 1).abs().max(1.0));
        // (H − T̃) + T̃ − E·I against H − E·I, to rounding of the subtraction
        let rebuilt = v.difference(&t.scaled(-1.0)).unwrap().shifted_diagonal(-e);
        let scale = h.entries().iter().fold(1.0_f64, |m, x| m.max(x.abs()));
        prop_assert!(rebuilt.max_abs_difference(&j).unwrap() <= 4.0 * f64::EPSILON * scale);
    }

    #[test]
    fn single_term_reconstructions_agree(v00 in -10.0..10.0f64, lambda in 0.1..2.0f64) {
        let v = BandedMatrix::from_dense(1, vec![v00], &[0], true).unwrap();
        let grid = Grid::new(-3.0 / lambda, 3.0 / lambda, 31).unwrap();
        let a = reconstruct_a(&v, lambda, &grid).unwrap();
        let b = reconstruct_b(&v, lambda, &grid).unwrap();
        for (x, y) in a.values.iter().zip(&b.values) {
            prop_assert!((x.unwrap() - y.unwrap()).abs() <= 2.0 * f64::EPSILON * v00.abs());
        }
    }
}

#[test]
fn phase_shift_is_continuous_on_dense_grid() {
    let w = WilsonParams::new(0.8, 0.3, 0.6, 0.5).unwrap();
    let mut prev = phase_shift(0.05, &w).unwrap();
    let mut y = 0.05;
    while y < 5.0 {
        y += 1e-3;
        let next = phase_shift(y, &w).unwrap();
        assert!((next - prev).abs() < 0.1, "jump at y = {y}");
        prev = next;
    }
}

#[test]
fn basis_is_orthonormal() {
    let lambda = 0.7;
    let spec = QuadratureSpec {
        y_max: 40.0 / lambda,
        ..QuadratureSpec::default()
    };
    for n in 0..=20 {
        for m in n..=20 {
            let overlap = integrate_real_line(
                |x| {
                    let phi = basis_values(20, x, lambda).unwrap();
                    phi[n] * phi[m]
                },
                &spec,
            )
            .unwrap();
            let target = if n == m { 1.0 } else { 0.0 };
            assert!((overlap - target).abs() <= 1e-10, "({n}, {m}): {overlap}");
        }
    }
}

#[test]
fn wavefunction_is_linear_in_the_coefficients() {
    let p = SystemParams::new(0.2, WilsonParams::new(0.8, 0.3, 0.6, 0.5).unwrap()).unwrap();
    let (e, x, cut) = (0.02, 3.0, 7);
    let y = energy_to_y(e, p.lambda()).unwrap().y;
    let mut coefficients = orthonormal_sequence(25, y, p.wilson()).unwrap();
    coefficients[cut + 1..].iter_mut().for_each(|c| *c = 0.0);
    let rho = weight_density(y, p.wilson()).unwrap();
    let zeroed = rho.sqrt() * expand_in_basis(&coefficients, x, p.lambda()).unwrap();
    assert_eq!(zeroed, wavefunction_continuum(e, x, &p, cut).unwrap());
}
