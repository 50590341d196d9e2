//! Physical layer: energy maps, bound spectrum, phase shift, oscillator
//! basis and the continuum wavefunction.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::log_gamma_complex;
use crate::wilson::{orthonormal_sequence, weight_density, Regime, WilsonParams};

/// Wilson parameters plus the inverse length scale `λ` (atomic units).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    lambda: f64,
    wilson: WilsonParams,
}

impl SystemParams {
    pub fn new(lambda: f64, wilson: WilsonParams) -> Result<Self> {
        check_lambda(lambda)?;
        Ok(SystemParams { lambda, wilson })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn wilson(&self) -> &WilsonParams {
        &self.wilson
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda > 0.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!(
            "λ must be positive, got {lambda}"
        )))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundState {
    pub m: usize,
    pub energy: f64,
}

/// A scattering energy together with its wavenumber and spectral variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyPoint {
    pub energy: f64,
    pub k: f64,
    pub y: f64,
}

/// `k = √(2E)`, `y = λ/k`.
pub fn energy_to_y(energy: f64, lambda: f64) -> Result<EnergyPoint> {
    check_lambda(lambda)?;
    if !(energy > 0.0) || !energy.is_finite() {
        return Err(Error::Domain(format!(
            "scattering energy must be positive, got {energy}"
        )));
    }
    let k = (2.0 * energy).sqrt();
    Ok(EnergyPoint {
        energy,
        k,
        y: lambda / k,
    })
}

/// Inverse map `E = λ² / (2y²)`.
pub fn y_to_energy(y: f64, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::Domain(format!("y must be positive, got {y}")));
    }
    let k = lambda / y;
    Ok(0.5 * k * k)
}

/// `E_m = −λ² / (2(m+μ)²)` for any index, without the membership rule.
pub fn level_energy(m: usize, mu: f64, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    let shifted = m as f64 + mu;
    if shifted == 0.0 {
        return Err(Error::Domain(format!("m + μ vanishes at m = {m}")));
    }
    Ok(-lambda * lambda / (2.0 * shifted * shifted))
}

/// Bound states `m = 0, 1, …` with `m + μ < 0`; empty in the scattering
/// regime.
pub fn bound_states(p: &SystemParams) -> Vec<BoundState> {
    let mu = p.wilson.mu();
    if p.wilson.regime() == Regime::Scattering {
        return Vec::new();
    }
    (0..)
        .take_while(|&m| (m as f64) + mu < 0.0)
        .map(|m| BoundState {
            m,
            energy: -p.lambda * p.lambda / (2.0 * (m as f64 + mu).powi(2)),
        })
        .collect()
}

/// `δ(y) = arg Γ(2iy) − Σ_{q∈{μ,ν,a,b}} arg Γ(q+iy)` on the continuous
/// log-gamma branch (no reduction modulo 2π).
pub fn phase_shift(y: f64, w: &WilsonParams) -> Result<f64> {
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::Domain(format!("phase shift needs y > 0, got {y}")));
    }
    let mut delta = log_gamma_complex(Complex64::new(0.0, 2.0 * y))?.im;
    for q in [w.mu(), w.nu(), w.a(), w.b()] {
        delta -= log_gamma_complex(Complex64::new(q, y))?.im;
    }
    Ok(delta)
}

/// `φ_0(x), …, φ_{n_max}(x)` for the orthonormal oscillator basis
/// `φ_n(x) = √λ [√π 2ⁿ n!]^{−1/2} e^{−λ²x²/2} H_n(λx)`.
///
/// Uses the normalized recurrence
/// `φ_{n+1} = √(2/(n+1)) z φ_n − √(n/(n+1)) φ_{n−1}`, which never forms
/// `H_n` or `n!` and so stays finite wherever the result is.
pub fn basis_values(n_max: usize, x: f64, lambda: f64) -> Result<Vec<f64>> {
    check_lambda(lambda)?;
    if x.is_nan() {
        return Err(Error::NaN("basis coordinate"));
    }
    let z = lambda * x;
    let mut values = Vec::with_capacity(n_max + 1);
    values.push(lambda.sqrt() * PI.powf(-0.25) * (-0.5 * z * z).exp());
    if n_max >= 1 {
        values.push(std::f64::consts::SQRT_2 * z * values[0]);
    }
    for n in 1..n_max {
        let nf = n as f64;
        let next =
            (2.0 / (nf + 1.0)).sqrt() * z * values[n] - (nf / (nf + 1.0)).sqrt() * values[n - 1];
        values.push(next);
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Overflow(format!("basis function at x = {x}")));
    }
    Ok(values)
}

pub fn basis_phi(n: usize, x: f64, lambda: f64) -> Result<f64> {
    Ok(basis_values(n, x, lambda)?[n])
}

/// `Σ_n c_n φ_n(x)` over the supplied coefficients.
pub fn expand_in_basis(coefficients: &[f64], x: f64, lambda: f64) -> Result<f64> {
    if coefficients.is_empty() {
        return Ok(0.0);
    }
    let phi = basis_values(coefficients.len() - 1, x, lambda)?;
    Ok(coefficients.iter().zip(&phi).map(|(c, f)| c * f).sum())
}

/// Continuum wavefunction `√ρ(y) Σ_{n=0}^{n_max} W_n(y²) φ_n(x)` at energy
/// `E`, `y = λ/√(2E)`.
pub fn wavefunction_continuum(energy: f64, x: f64, p: &SystemParams, n_max: usize) -> Result<f64> {
    p.wilson.require_scattering()?;
    let point = energy_to_y(energy, p.lambda)?;
    let rho = weight_density(point.y, &p.wilson)?;
    let coefficients = orthonormal_sequence(n_max, point.y, &p.wilson)?;
    Ok(rho.sqrt() * expand_in_basis(&coefficients, x, p.lambda)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{hermite, integrate_real_line, QuadratureSpec};

    fn sample() -> SystemParams {
        SystemParams::new(0.2, WilsonParams::new(0.8, 0.3, 0.6, 0.5).unwrap()).unwrap()
    }

    #[test]
    fn energy_maps() {
        let lambda = 0.2;
        assert!((energy_to_y(lambda * lambda / 2.0, lambda).unwrap().y - 1.0).abs() < 1e-15);
        assert!((energy_to_y(0.02, 0.2).unwrap().y - 1.0).abs() < 1e-15);
        let p = energy_to_y(0.08, 0.2).unwrap();
        assert!((p.y - 0.5).abs() < 1e-15);
        assert!((p.k - 0.4).abs() < 1e-15);
        assert!(energy_to_y(0.0, 0.2).is_err());
        assert!(energy_to_y(-1.0, 0.2).is_err());
        assert!(energy_to_y(1.0, 0.0).is_err());
    }

    #[test]
    fn spectrum() {
        assert!(bound_states(&sample()).is_empty());

        let one = SystemParams::new(0.2, WilsonParams::new(-0.5, 0.8, 0.6, 0.7).unwrap()).unwrap();
        let states = bound_states(&one);
        assert_eq!(states.len(), 1);
        assert_eq!(states[0].m, 0);
        assert!((states[0].energy + 0.08).abs() < 1e-16);

        let three =
            SystemParams::new(0.2, WilsonParams::new(-2.3, 2.5, 2.4, 2.6).unwrap()).unwrap();
        let e: Vec<f64> = bound_states(&three).iter().map(|s| s.energy).collect();
        let expected = [
            -0.003_780_718_336_483_93,
            -0.011_834_319_526_627_22,
            -0.222_222_222_222_222_2,
        ];
        assert_eq!(e.len(), 3);
        for (got, want) in e.iter().zip(expected) {
            assert!((got - want).abs() < 1e-14, "{got} vs {want}");
        }
    }

    #[test]
    fn level_energy_ignores_membership() {
        assert!((level_energy(3, -0.5, 0.2).unwrap() + 0.02 / 6.25).abs() < 1e-16);
        assert!(level_energy(2, -2.0, 0.2).is_err());
    }

    #[test]
    fn phase_shift_reference_values() {
        let w = *sample().wilson();
        for (y, want) in [
            (1.0, 2.142_215_801_166_065_5),
            (0.25, -0.036_738_146_962_330_316),
            (4.0, 1.320_601_364_456_115_7),
        ] {
            assert!((phase_shift(y, &w).unwrap() - want).abs() < 1e-10);
        }
        assert!(phase_shift(0.0, &w).is_err());
    }

    #[test]
    fn basis_matches_hermite_form() {
        let lambda: f64 = 0.5;
        assert!((basis_phi(0, 0.0, lambda).unwrap() - 0.531_125_966_013_598_4).abs() < 1e-15);
        for n in 0..8usize {
            let x = 1.3;
            let z = lambda * x;
            let fact: f64 = (1..=n).map(|k| k as f64).product();
            let direct = lambda.sqrt() / (PI.sqrt() * 2f64.powi(n as i32) * fact).sqrt()
                * (-0.5 * z * z).exp()
                * hermite(n, z).unwrap();
            assert!((basis_phi(n, x, lambda).unwrap() - direct).abs() < 1e-14);
        }
    }

    #[test]
    fn basis_normalization() {
        let lambda = 0.5;
        let spec = QuadratureSpec::default();
        let norm5 =
            integrate_real_line(|x| basis_phi(5, x, lambda).unwrap().powi(2), &spec).unwrap();
        assert!((norm5 - 1.0).abs() < 1e-10);
        let cross = integrate_real_line(
            |x| basis_phi(0, x, lambda).unwrap() * basis_phi(1, x, lambda).unwrap(),
            &spec,
        )
        .unwrap();
        assert!(cross.abs() < 1e-15);
    }

    #[test]
    fn wavefunction_basics() {
        let p = sample();
        let e = 0.02;
        let y = energy_to_y(e, p.lambda()).unwrap().y;
        let rho = weight_density(y, p.wilson()).unwrap();
        let single = wavefunction_continuum(e, 1.5, &p, 0).unwrap();
        assert_eq!(single, rho.sqrt() * basis_phi(0, 1.5, 0.2).unwrap());
        assert!(wavefunction_continuum(e, 1e3, &p, 20).unwrap().abs() < 1e-100);

        let bound =
            SystemParams::new(0.2, WilsonParams::new(-0.5, 0.8, 0.6, 0.7).unwrap()).unwrap();
        assert!(wavefunction_continuum(e, 0.0, &bound, 5).is_err());
    }
}
