//! Named identity checks shared by the CLI `verify` command and the test
//! suites.
//!
//! Each suite returns one [`VerificationReport`] per check. A check passes
//! when its residual is strictly below the tolerance, so a zero tolerance
//! fails everything and a NaN residual never passes.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::operators::{
    hamiltonian_matrix, kinetic_decomposition_check, kinetic_matrix, position_squared_matrix,
};
use crate::reconstruct::{reconstruct_a, reconstruct_b, Grid};
use crate::specfun::{
    integrate_real_line, integrate_semi_infinite, log_gamma_complex, QuadratureSpec,
};
use crate::system::{basis_phi, basis_values};
use crate::wilson::{
    generating_function_check, orthogonality_check, orthonormal_sequence,
    orthonormal_sequence_by_recursion, weight_density, wilson_eval, EvalMethod, WilsonParams,
};

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl VerificationReport {
    pub fn new(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        VerificationReport {
            name: name.into(),
            residual,
            tolerance,
            passed: residual < tolerance,
        }
    }

    fn from_result(name: impl Into<String>, residual: Result<f64>, tolerance: f64) -> Self {
        Self::new(name, residual.unwrap_or(f64::NAN), tolerance)
    }
}

pub const SUITES: [&str; 9] = [
    "gamma",
    "recursion",
    "orthonormal",
    "orthogonality",
    "generating-function",
    "weight",
    "kinetic",
    "hamiltonian",
    "reconstruction",
];

/// Runs one named suite. `tolerance` replaces every default tolerance.
pub fn run_suite(name: &str, tolerance: Option<f64>) -> Result<Vec<VerificationReport>> {
    let tol = |default: f64| tolerance.unwrap_or(default);
    let reports = match name {
        "gamma" => gamma_suite(&tol),
        "recursion" => vec![VerificationReport::from_result(
            "W̃_n recursion vs ₄F₃ series, n ≤ 15, 20 random draws",
            recursion_vs_series_deviation(15, 20, 0x5eed),
            tol(1e-9),
        )],
        "orthonormal" => vec![VerificationReport::from_result(
            "orthonormal rescaling vs orthonormal recursion, n ≤ 10",
            orthonormal_consistency(10),
            tol(1e-9),
        )],
        "orthogonality" => vec![VerificationReport::from_result(
            "max |∫ρ W_n W_m − δ_nm|, n, m ≤ 5",
            orthogonality_deviation(5, &reference_params()),
            tol(1e-6),
        )],
        "generating-function" => [0.3, -0.3]
            .into_iter()
            .map(|t| {
                VerificationReport::from_result(
                    format!("generating function at t = {t}, y = 0.7, 80 terms"),
                    generating_function_check(t, 0.7, &reference_params(), 80)
                        .map(|(l, r)| (l - r).abs()),
                    tol(1e-8),
                )
            })
            .collect(),
        "weight" => vec![VerificationReport::from_result(
            "|∫ρ dy − 1|",
            integrate_semi_infinite(
                |y| weight_density(y, &reference_params()).unwrap_or(f64::NAN),
                &QuadratureSpec::default(),
            )
            .map(|v| (v - 1.0).abs()),
            tol(1e-8),
        )],
        "kinetic" => vec![
            VerificationReport::from_result(
                "kinetic matrix vs −½∫φ_n φ_m″ quadrature, n, m ≤ 10",
                kinetic_quadrature_deviation(10, 0.5),
                tol(1e-8),
            ),
            kinetic_decomposition_check(50, 1.0, tol(1e-12)).unwrap_or_else(|_| {
                VerificationReport::new("kinetic decomposition", f64::NAN, tol(1e-12))
            }),
        ],
        "hamiltonian" => hamiltonian_suite(&tol),
        "reconstruction" => vec![
            VerificationReport::from_result(
                "first-column formula on the harmonic matrix, |x| ≤ 1/λ",
                harmonic_first_column_deviation(20, 0.5),
                tol(1e-4),
            ),
            VerificationReport::from_result(
                "full-matrix formula vs truncated harmonic projection, |x| ≤ 2/λ",
                harmonic_full_matrix_projection_deviation(20, 0.5),
                tol(1e-12),
            ),
        ],
        other => {
            return Err(Error::InvalidParams(format!(
                "unknown suite '{other}', expected one of {}",
                SUITES.join(", ")
            )))
        }
    };
    Ok(reports)
}

/// Runs every suite, or only `only` when given.
pub fn run_all(
    tolerance: Option<f64>,
    only: Option<&str>,
) -> Result<Vec<(String, Vec<VerificationReport>)>> {
    let names: Vec<&str> = match only {
        Some(name) => vec![name],
        None => SUITES.to_vec(),
    };
    names
        .into_iter()
        .map(|name| Ok((name.to_string(), run_suite(name, tolerance)?)))
        .collect()
}

fn reference_params() -> WilsonParams {
    WilsonParams::new(0.8, 0.3, 0.6, 0.5).expect("valid parameters")
}

fn gamma_suite(tol: &dyn Fn(f64) -> f64) -> Vec<VerificationReport> {
    let lg = |re: f64, im: f64| log_gamma_complex(Complex64::new(re, im));
    let special = (|| -> Result<f64> {
        let a = lg(1.0, 0.0)?.norm();
        let b = lg(2.0, 0.0)?.norm();
        let c = (lg(0.5, 0.0)? - Complex64::new(0.5 * PI.ln(), 0.0)).norm();
        Ok(a.max(b).max(c))
    })();
    let modulus = [0.25, 0.7, 1.5, 4.0]
        .into_iter()
        .map(|y: f64| {
            let exact = PI / (y * (PI * y).sinh());
            Ok(((2.0 * lg(0.0, y)?.re).exp() / exact - 1.0).abs())
        })
        .try_fold(0.0_f64, |m, r: Result<f64>| Ok::<f64, Error>(m.max(r?)));
    let recurrence = [
        Complex64::new(0.5, 0.1),
        Complex64::new(1.7, -2.3),
        Complex64::new(0.05, 4.0),
        Complex64::new(3.2, 0.0),
        Complex64::new(-1.3, 0.8),
        Complex64::new(7.5, 11.0),
    ]
    .into_iter()
    .map(|z| {
        let ratio = (log_gamma_complex(z + 1.0)? - log_gamma_complex(z)? - z.ln()).exp();
        Ok((ratio - 1.0).norm())
    })
    .try_fold(0.0_f64, |m, r: Result<f64>| Ok::<f64, Error>(m.max(r?)));
    vec![
        VerificationReport::from_result("lnΓ(1), lnΓ(2), lnΓ(½)", special, tol(1e-14)),
        VerificationReport::from_result("|Γ(iy)|² = π/(y sinh πy)", modulus, tol(1e-10)),
        VerificationReport::from_result("Γ(z+1) = zΓ(z)", recurrence, tol(1e-12)),
    ]
}

fn hamiltonian_suite(tol: &dyn Fn(f64) -> f64) -> Vec<VerificationReport> {
    let symmetry = hamiltonian_matrix(40, 0.5, 0.8, 0.6).map(|h| h.max_asymmetry());
    let anchors = hamiltonian_matrix(2, 0.5, 0.8, 0.6).map(|h| {
        let h10 = -2.0 * 1.4 * (1.6_f64 * 1.2 * 1.8 / (1.4 * 1.4 - 0.25)).sqrt();
        (h.get(0, 0) - 3.84).abs().max((h.get(1, 0) - h10).abs())
    });
    vec![
        VerificationReport::from_result("Hamiltonian symmetry, order 40", symmetry, tol(1e-13)),
        VerificationReport::from_result("H₀₀ = 3.84, H₁₀ closed form", anchors, tol(1e-9)),
    ]
}

/// Largest `|recursion − series| / |series|` over `draws` random
/// scattering-regime parameter sets and `y ∈ (0, 3]`, for every `n ≤ n_max`.
pub fn recursion_vs_series_deviation(n_max: usize, draws: usize, seed: u64) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0_f64;
    for _ in 0..draws {
        let p = WilsonParams::new(
            rng.random_range(0.1..2.0),
            rng.random_range(0.1..2.0),
            rng.random_range(0.1..2.0),
            rng.random_range(0.1..2.0),
        )?;
        let y = 3.0 * (1.0 - rng.random::<f64>());
        for n in 0..=n_max {
            let r = wilson_eval(n, y, &p, EvalMethod::Recursion)?;
            let s = wilson_eval(n, y, &p, EvalMethod::Series)?;
            let scale = if s == 0.0 { 1.0 } else { s.abs() };
            worst = worst.max((r - s).abs() / scale);
        }
    }
    Ok(worst)
}

/// Largest relative gap between the rescaled and directly recursed
/// orthonormal sequences, over a few parameter sets and `y` values.
pub fn orthonormal_consistency(n_max: usize) -> Result<f64> {
    let sets = [
        reference_params(),
        WilsonParams::new(0.5, 0.5, 0.5, 0.5)?,
        WilsonParams::new(1.7, 0.2, 0.9, 1.3)?,
        WilsonParams::new(-0.4, 0.9, 0.7, 1.1)?,
    ];
    let mut worst = 0.0_f64;
    for p in &sets {
        for y in [0.1, 0.5, 1.3, 2.9] {
            let scaled = orthonormal_sequence(n_max, y, p)?;
            let recursed = orthonormal_sequence_by_recursion(n_max, y, p)?;
            for (s, r) in scaled.iter().zip(&recursed) {
                worst = worst.max((s - r).abs() / s.abs().max(1.0));
            }
        }
    }
    Ok(worst)
}

pub fn orthogonality_deviation(n_max: usize, p: &WilsonParams) -> Result<f64> {
    let spec = QuadratureSpec::default();
    let mut worst = 0.0_f64;
    for n in 0..=n_max {
        for m in n..=n_max {
            let target = if n == m { 1.0 } else { 0.0 };
            worst = worst.max((orthogonality_check(n, m, p, &spec)? - target).abs());
        }
    }
    Ok(worst)
}

/// Compares the kinetic matrix with `−½∫φ_n φ_m″ dx` by quadrature.
pub fn kinetic_quadrature_deviation(n_max: usize, lambda: f64) -> Result<f64> {
    let t = kinetic_matrix(n_max + 1, lambda)?;
    let spec = QuadratureSpec {
        y_max: 40.0 / lambda,
        ..QuadratureSpec::default()
    };
    let mut worst = 0.0_f64;
    for n in 0..=n_max {
        for m in n..=n_max {
            // Hermite functions solve φ_m″ = λ²(z² − 2m − 1)φ_m with z = λx.
            let second = |x: f64| {
                let z = lambda * x;
                lambda
                    * lambda
                    * (z * z - (2 * m + 1) as f64)
                    * basis_phi(m, x, lambda).unwrap_or(f64::NAN)
            };
            let oracle = integrate_real_line(
                |x| -0.5 * basis_phi(n, x, lambda).unwrap_or(f64::NAN) * second(x),
                &spec,
            )?;
            worst = worst.max((oracle - t.get(n, m)).abs());
        }
    }
    Ok(worst)
}

/// Largest relative error (against `max ½λ⁴x²` on the range) of the
/// first-column formula applied to `⟨n|½λ⁴x²|m⟩` on `|x| ≤ 1/λ`.
pub fn harmonic_first_column_deviation(order: usize, lambda: f64) -> Result<f64> {
    let v = position_squared_matrix(order)?.scaled(0.5 * lambda * lambda);
    let grid = Grid::new(-1.0 / lambda, 1.0 / lambda, 201)?;
    let r = reconstruct_b(&v, lambda, &grid)?;
    max_relative_error(r.samples(), lambda, 1.0 / lambda)
}

/// Largest relative error of the full-matrix formula on `⟨n|½λ⁴x²|m⟩`
/// against `½λ⁴x²` on `|x| ≤ radius`.
pub fn harmonic_full_matrix_deviation(order: usize, lambda: f64, radius: f64) -> Result<f64> {
    let v = position_squared_matrix(order)?.scaled(0.5 * lambda * lambda);
    let grid = Grid::new(-radius, radius, 201)?;
    let r = reconstruct_a(&v, lambda, &grid)?;
    max_relative_error(r.samples(), lambda, radius)
}

fn max_relative_error(
    samples: impl Iterator<Item = (f64, Option<f64>)>,
    lambda: f64,
    radius: f64,
) -> Result<f64> {
    let scale = 0.5 * lambda.powi(4) * radius * radius;
    let mut worst = 0.0_f64;
    for (x, value) in samples {
        let exact = 0.5 * lambda.powi(4) * x * x;
        let value = value.ok_or(Error::NaN("reconstructed value"))?;
        worst = worst.max((value - exact).abs() / scale);
    }
    Ok(worst)
}

/// The full-matrix formula applied to the order-`N` harmonic matrix equals
/// `½λ²[z²Σφ_n² − Z_{N,N−2}φ_Nφ_{N−2} − Z_{N+1,N−1}φ_{N+1}φ_{N−1}] / Σφ_n²`,
/// `z = λx`, because `z²φ_m` leaves the basis only through `φ_{m+2}`.
/// Returns the largest deviation from that closed form on `|x| ≤ 2/λ`,
/// relative to the largest closed-form value.
pub fn harmonic_full_matrix_projection_deviation(order: usize, lambda: f64) -> Result<f64> {
    if order < 2 {
        return Err(Error::InvalidParams(
            "projection check needs order ≥ 2".into(),
        ));
    }
    let v = position_squared_matrix(order)?.scaled(0.5 * lambda * lambda);
    let grid = Grid::new(-2.0 / lambda, 2.0 / lambda, 201)?;
    let r = reconstruct_a(&v, lambda, &grid)?;
    let nf = order as f64;
    let mut expected = Vec::with_capacity(grid.count());
    for x in grid.points() {
        let phi = basis_values(order + 1, x, lambda)?;
        let z = lambda * x;
        let norm: f64 = phi[..order].iter().map(|f| f * f).sum();
        let leak = 0.5 * ((nf - 1.0) * nf).sqrt() * phi[order] * phi[order - 2]
            + 0.5 * (nf * (nf + 1.0)).sqrt() * phi[order + 1] * phi[order - 1];
        expected.push(0.5 * lambda * lambda * (z * z * norm - leak) / norm);
    }
    let scale = expected.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let mut worst = 0.0_f64;
    for (value, want) in r.values.iter().zip(&expected) {
        let value = value.ok_or(Error::NaN("reconstructed value"))?;
        worst = worst.max((value - want).abs() / scale);
    }
    Ok(worst)
}
