//! Wilson polynomials `W̃_n(y²; ν; a, b)` with leading parameter `μ`.
//!
//! `W̃_n` carries the prefactor `(μ+a)_n (μ+b)_n / ((a+b)_n n!)` in front of
//! the terminating `₄F₃`; `W_n` is the orthonormal rescaling with respect to
//! the normalized weight [`weight_density`].

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::{
    hyp2f1, hyp4f3_terminating, integrate_semi_infinite, log_gamma_complex, log_gamma_real,
    QuadratureSpec,
};

/// Which physical picture a parameter set supports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// All four parameters positive: continuum only.
    Scattering,
    /// `μ < 0` with `μ+ν`, `μ+a`, `μ+b` positive: continuum plus bound states.
    BoundSupporting,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WilsonParams {
    mu: f64,
    nu: f64,
    a: f64,
    b: f64,
    regime: Regime,
}

impl WilsonParams {
    pub fn new(mu: f64, nu: f64, a: f64, b: f64) -> Result<Self> {
        if ![mu, nu, a, b].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidParams(
                "Wilson parameters must be finite".into(),
            ));
        }
        let regime = if mu > 0.0 && nu > 0.0 && a > 0.0 && b > 0.0 {
            Regime::Scattering
        } else if mu < 0.0 && mu + nu > 0.0 && mu + a > 0.0 && mu + b > 0.0 {
            Regime::BoundSupporting
        } else {
            return Err(Error::InvalidParams(format!(
                "(μ, ν, a, b) = ({mu}, {nu}, {a}, {b}) is neither all-positive \
                 nor μ < 0 with μ+ν, μ+a, μ+b > 0"
            )));
        };
        Ok(WilsonParams {
            mu,
            nu,
            a,
            b,
            regime,
        })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }
    pub fn nu(&self) -> f64 {
        self.nu
    }
    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// `μ + ν + a + b`.
    pub fn sigma(&self) -> f64 {
        self.mu + self.nu + self.a + self.b
    }

    pub fn require_scattering(&self) -> Result<()> {
        match self.regime {
            Regime::Scattering => Ok(()),
            Regime::BoundSupporting => Err(Error::InvalidParams(
                "operation requires all Wilson parameters positive".into(),
            )),
        }
    }

    fn nonzero(value: f64, n: usize) -> Result<f64> {
        if value == 0.0 || !value.is_finite() {
            Err(Error::DegenerateDenominator { n })
        } else {
            Ok(value)
        }
    }

    /// Forward coefficient of the `₄F₃` recurrence:
    /// `(n+σ−1)(n+μ+ν)(n+μ+a)(n+μ+b) / ((2n+σ−1)(2n+σ))`.
    fn forward(&self, n: usize) -> Result<f64> {
        let (mu, nu, a, b, s) = (self.mu, self.nu, self.a, self.b, self.sigma());
        let n = n as f64;
        let tail = (n + mu + nu) * (n + mu + a) * (n + mu + b);
        if n == 0.0 {
            // (σ−1) cancels
            return Ok(tail / Self::nonzero(s, 0)?);
        }
        let denom = Self::nonzero((2.0 * n + s - 1.0) * (2.0 * n + s), n as usize)?;
        Ok((n + s - 1.0) * tail / denom)
    }

    /// Backward coefficient: `n(n+ν+a−1)(n+ν+b−1)(n+a+b−1) / ((2n+σ−2)(2n+σ−1))`.
    fn backward(&self, n: usize) -> Result<f64> {
        if n == 0 {
            return Ok(0.0);
        }
        let (nu, a, b, s) = (self.nu, self.a, self.b, self.sigma());
        let nf = n as f64;
        let denom = Self::nonzero((2.0 * nf + s - 2.0) * (2.0 * nf + s - 1.0), n)?;
        Ok(nf * (nf + nu + a - 1.0) * (nf + nu + b - 1.0) * (nf + a + b - 1.0) / denom)
    }

    /// Diagonal coefficient of both the monic and orthonormal recursions.
    pub fn recursion_diagonal(&self, n: usize) -> Result<f64> {
        Ok(self.forward(n)? + self.backward(n)? - self.mu * self.mu)
    }

    /// Coefficient of `W̃_{n+1}` in the recursion for `y² W̃_n`, `n ≥ 1`.
    fn monic_up(&self, n: usize) -> Result<f64> {
        let (mu, nu, a, b, s) = (self.mu, self.nu, self.a, self.b, self.sigma());
        let nf = n as f64;
        let denom = Self::nonzero((2.0 * nf + s) * (2.0 * nf + s - 1.0), n)?;
        let up = (nf + 1.0) * (nf + mu + nu) * (nf + a + b) * (nf + s - 1.0) / denom;
        Self::nonzero(up, n)
    }

    /// Coefficient of `W̃_{n−1}` in the recursion for `y² W̃_n`.
    fn monic_down(&self, n: usize) -> Result<f64> {
        let (mu, nu, a, b, s) = (self.mu, self.nu, self.a, self.b, self.sigma());
        let nf = n as f64;
        let denom = Self::nonzero((2.0 * nf + s - 1.0) * (2.0 * nf + s - 2.0), n)?;
        Ok(
            (nf + mu + a - 1.0) * (nf + mu + b - 1.0) * (nf + nu + a - 1.0) * (nf + nu + b - 1.0)
                / denom,
        )
    }

    /// Off-diagonal coefficient `b_n` of the symmetric orthonormal recursion
    /// `y² W_n = d_n W_n − b_{n−1} W_{n−1} − b_n W_{n+1}`.
    pub fn recursion_offdiagonal(&self, n: usize) -> Result<f64> {
        let product = self.forward(n)? * self.backward(n + 1)?;
        if product < 0.0 {
            return Err(Error::NegativeRadicand { n, value: product });
        }
        Self::nonzero(product.sqrt(), n)
    }

    /// Factor `W_n / W̃_n`.
    pub fn orthonormal_factor(&self, n: usize) -> Result<f64> {
        if n == 0 {
            return Ok(1.0);
        }
        let (mu, nu, a, b, s) = (self.mu, self.nu, self.a, self.b, self.sigma());
        let nf = n as f64;
        let lead = (2.0 * nf + s - 1.0) / Self::nonzero(nf + s - 1.0, n)?;
        let mut ratio = lead;
        for k in 0..n {
            let k = k as f64;
            ratio *= (mu + nu + k) * (a + b + k) * (s + k) * (k + 1.0)
                / ((mu + a + k) * (mu + b + k) * (nu + a + k) * (nu + b + k));
        }
        if ratio < 0.0 || ratio.is_nan() {
            return Err(Error::NegativeRadicand { n, value: ratio });
        }
        Ok(ratio.sqrt())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EvalMethod {
    /// Three-term recursion from the `n = 0, 1` seeds.
    #[default]
    Recursion,
    /// Direct terminating `₄F₃` sum.
    Series,
}

/// `W̃_0, …, W̃_{n_max}` at `y²` by the three-term recursion.
pub fn wilson_sequence(n_max: usize, y: f64, p: &WilsonParams) -> Result<Vec<f64>> {
    let (mu, nu, a, b, s) = (p.mu, p.nu, p.a, p.b, p.sigma());
    let y2 = y * y;
    let mut values = Vec::with_capacity(n_max + 1);
    values.push(1.0);
    if n_max == 0 {
        return Ok(values);
    }
    let denom = WilsonParams::nonzero((mu + nu) * (a + b), 0)?;
    values.push((mu + a) * (mu + b) / (a + b) - s / denom * (y2 + mu * mu));
    for n in 1..n_max {
        let next = ((p.recursion_diagonal(n)? - y2) * values[n] - p.monic_down(n)? * values[n - 1])
            / p.monic_up(n)?;
        values.push(next);
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Overflow(format!("Wilson recursion to n = {n_max}")));
    }
    Ok(values)
}

/// `W̃_n(y²)` by the chosen method.
pub fn wilson_eval(n: usize, y: f64, p: &WilsonParams, method: EvalMethod) -> Result<f64> {
    match method {
        EvalMethod::Recursion => Ok(wilson_sequence(n, y, p)?[n]),
        EvalMethod::Series => wilson_series(n, y, p),
    }
}

fn wilson_series(n: usize, y: f64, p: &WilsonParams) -> Result<f64> {
    let (mu, nu, a, b, s) = (p.mu, p.nu, p.a, p.b, p.sigma());
    let mut prefactor = 1.0;
    for k in 0..n {
        let k = k as f64;
        prefactor *= (mu + a + k) * (mu + b + k) / ((a + b + k) * (k + 1.0));
    }
    let upper = [
        Complex64::new(n as f64 + s - 1.0, 0.0),
        Complex64::new(mu, y),
        Complex64::new(mu, -y),
    ];
    let sum = hyp4f3_terminating(n, upper, [mu + nu, mu + a, mu + b], 1.0)?;
    let value = prefactor * sum.re;
    let residue = (prefactor * sum.im).abs();
    if residue > 1e-12 * value.abs() {
        return Err(Error::ImaginaryResidue { value, residue });
    }
    Ok(value)
}

/// Orthonormal `W_0, …, W_{n_max}` by rescaling the monic sequence.
pub fn orthonormal_sequence(n_max: usize, y: f64, p: &WilsonParams) -> Result<Vec<f64>> {
    wilson_sequence(n_max, y, p)?
        .into_iter()
        .enumerate()
        .map(|(n, v)| Ok(p.orthonormal_factor(n)? * v))
        .collect()
}

/// Orthonormal `W_0, …, W_{n_max}` propagated by the symmetric orthonormal
/// recursion from `W_0 = 1` and the rescaled `W̃_1`.
pub fn orthonormal_sequence_by_recursion(
    n_max: usize,
    y: f64,
    p: &WilsonParams,
) -> Result<Vec<f64>> {
    let mut values = vec![1.0];
    if n_max == 0 {
        return Ok(values);
    }
    values.push(p.orthonormal_factor(1)? * wilson_sequence(1, y, p)?[1]);
    let y2 = y * y;
    for n in 1..n_max {
        let next = ((p.recursion_diagonal(n)? - y2) * values[n]
            - p.recursion_offdiagonal(n - 1)? * values[n - 1])
            / p.recursion_offdiagonal(n)?;
        values.push(next);
    }
    Ok(values)
}

/// Orthonormal `W_n(y²)`.
pub fn wilson_orthonormal_eval(n: usize, y: f64, p: &WilsonParams) -> Result<f64> {
    Ok(p.orthonormal_factor(n)? * wilson_eval(n, y, p, EvalMethod::Recursion)?)
}

/// Normalized weight `ρ(y)` against which the `W_n` are orthonormal on
/// `(0, ∞)`. Assembled from log-moduli so that large `y` underflows to zero
/// instead of overflowing.
pub fn weight_density(y: f64, p: &WilsonParams) -> Result<f64> {
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::Domain(format!("weight needs y > 0, got {y}")));
    }
    let (mu, nu, a, b, s) = (p.mu, p.nu, p.a, p.b, p.sigma());
    let mut log_rho = log_gamma_real(s)? - (2.0 * PI).ln();
    for q in [mu, nu, a, b] {
        log_rho += 2.0 * log_gamma_complex(Complex64::new(q, y))?.re;
    }
    log_rho -= 2.0 * log_gamma_complex(Complex64::new(0.0, 2.0 * y))?.re;
    for q in [mu + nu, a + b, mu + a, mu + b, nu + a, nu + b] {
        log_rho -= log_gamma_real(q)?;
    }
    Ok(log_rho.exp())
}

/// `∫₀^∞ ρ W_n W_m dy` with orthonormal `W`; equals `δ_nm` in exact
/// arithmetic.
pub fn orthogonality_check(
    n: usize,
    m: usize,
    p: &WilsonParams,
    spec: &QuadratureSpec,
) -> Result<f64> {
    p.require_scattering()?;
    let hi = n.max(m);
    let integrand = |y: f64| -> f64 {
        match (weight_density(y, p), orthonormal_sequence(hi, y, p)) {
            (Ok(rho), Ok(w)) => rho * w[n] * w[m],
            _ => f64::NAN,
        }
    };
    integrate_semi_infinite(integrand, spec)
}

/// Both sides of the generating-function identity at `t`:
/// `Σ_{n<n_terms} W̃_n tⁿ` and `₂F₁(μ+iy, ν+iy; μ+ν | t) ₂F₁(a−iy, b−iy; a+b | t)`.
pub fn generating_function_check(
    t: f64,
    y: f64,
    p: &WilsonParams,
    n_terms: usize,
) -> Result<(f64, f64)> {
    if !(t.abs() < 1.0) {
        return Err(Error::Domain(format!(
            "generating function needs |t| < 1, got {t}"
        )));
    }
    if n_terms == 0 {
        return Err(Error::Domain("n_terms must be positive".into()));
    }
    let lhs = wilson_sequence(n_terms - 1, y, p)?
        .iter()
        .rev()
        .fold(0.0, |acc, w| acc * t + w);
    let (mu, nu, a, b) = (p.mu, p.nu, p.a, p.b);
    let first = hyp2f1(
        Complex64::new(mu, y),
        Complex64::new(nu, y),
        Complex64::new(mu + nu, 0.0),
        t,
    )?;
    let second = hyp2f1(
        Complex64::new(a, -y),
        Complex64::new(b, -y),
        Complex64::new(a + b, 0.0),
        t,
    )?;
    let rhs = first * second;
    if rhs.im.abs() > 1e-10 * rhs.re.abs().max(1.0) {
        return Err(Error::ImaginaryResidue {
            value: rhs.re,
            residue: rhs.im.abs(),
        });
    }
    Ok((lhs, rhs.re))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> WilsonParams {
        WilsonParams::new(0.8, 0.3, 0.6, 0.5).unwrap()
    }

    #[test]
    fn regime_classification() {
        assert_eq!(sample().regime(), Regime::Scattering);
        let bound = WilsonParams::new(-0.5, 0.8, 0.6, 0.7).unwrap();
        assert_eq!(bound.regime(), Regime::BoundSupporting);
        assert!(WilsonParams::new(-0.5, 0.3, 0.6, 0.7).is_err());
        assert!(WilsonParams::new(0.0, 0.3, 0.6, 0.7).is_err());
        assert!(WilsonParams::new(0.5, -0.3, 0.6, 0.7).is_err());
        assert!(WilsonParams::new(f64::NAN, 0.3, 0.6, 0.7).is_err());
    }

    #[test]
    fn seeds() {
        let p = sample();
        for y in [0.0, 0.4, 3.0] {
            assert_eq!(wilson_eval(0, y, &p, EvalMethod::Recursion).unwrap(), 1.0);
            assert_eq!(wilson_eval(0, y, &p, EvalMethod::Series).unwrap(), 1.0);
        }
        let w1 = wilson_eval(1, 1.0, &p, EvalMethod::Recursion).unwrap();
        let closed_form = 1.4 * 1.3 / 1.1 - 2.2 / (1.1 * 1.1) * (1.0 + 0.64);
        assert!((w1 - closed_form).abs() < 1e-14);
        assert!((w1 + 1.327_272_727_272_727_3).abs() < 1e-14);
    }

    #[test]
    fn recursion_matches_series() {
        let p = sample();
        let r = wilson_eval(6, 0.7, &p, EvalMethod::Recursion).unwrap();
        let s = wilson_eval(6, 0.7, &p, EvalMethod::Series).unwrap();
        assert!((r - s).abs() <= 1e-10 * s.abs());
        // high-precision reference
        assert!((r + 0.072_050_952_587_118_676).abs() < 1e-14);
    }

    #[test]
    fn even_in_y() {
        let p = sample();
        for n in [1, 4, 9] {
            for y in [0.3, 1.7] {
                let plus = wilson_eval(n, y, &p, EvalMethod::Recursion).unwrap();
                let minus = wilson_eval(n, -y, &p, EvalMethod::Recursion).unwrap();
                assert_eq!(plus, minus);
            }
        }
    }

    #[test]
    fn orthonormal_values() {
        let p = sample();
        assert_eq!(wilson_orthonormal_eval(0, 0.3, &p).unwrap(), 1.0);
        let w1 = wilson_orthonormal_eval(1, 1.0, &p).unwrap();
        let factor = (3.2_f64 * 1.1 * 1.1 / (1.4 * 1.3 * 0.9 * 0.8)).sqrt();
        assert!((w1 - factor * -1.327_272_727_272_727_3).abs() < 1e-13);
        assert!((w1 + 2.281_528_523_900_677_7).abs() < 1e-13);

        let scaled = orthonormal_sequence(4, 0.5, &p).unwrap()[4];
        let recursed = orthonormal_sequence_by_recursion(4, 0.5, &p).unwrap()[4];
        assert!((scaled - recursed).abs() <= 1e-10 * scaled.abs());
        assert!((scaled + 0.361_926_966_508_976_66).abs() < 1e-13);
    }

    #[test]
    fn weight_values() {
        let p = sample();
        assert!(weight_density(40.0, &p).unwrap() < 1e-50);
        let rho = weight_density(0.7, &p).unwrap();
        assert!((rho - 0.690_455_635_922_155_81).abs() < 1e-12);

        // all parameters 1/2: |Γ(½+iy)|² = π/cosh πy and |Γ(2iy)|² = π/(2y sinh 2πy)
        let half = WilsonParams::new(0.5, 0.5, 0.5, 0.5).unwrap();
        let y: f64 = 0.7;
        let closed = PI * PI * y * (2.0 * PI * y).sinh() / (PI * y).cosh().powi(4);
        let rho = weight_density(y, &half).unwrap();
        assert!((rho - closed).abs() <= 1e-10 * closed);

        assert!(matches!(weight_density(0.0, &p), Err(Error::Domain(_))));
    }

    #[test]
    fn orthogonality_low_orders() {
        let p = sample();
        let spec = QuadratureSpec::default();
        assert!((orthogonality_check(0, 0, &p, &spec).unwrap() - 1.0).abs() < 1e-6);
        assert!(orthogonality_check(0, 1, &p, &spec).unwrap().abs() < 1e-6);
        assert!((orthogonality_check(3, 3, &p, &spec).unwrap() - 1.0).abs() < 1e-6);
        let bound = WilsonParams::new(-0.5, 0.8, 0.6, 0.7).unwrap();
        assert!(orthogonality_check(0, 0, &bound, &spec).is_err());
    }

    #[test]
    fn generating_function() {
        let p = sample();
        assert_eq!(
            generating_function_check(0.0, 0.7, &p, 80).unwrap(),
            (1.0, 1.0)
        );
        for t in [0.3, -0.3] {
            let (lhs, rhs) = generating_function_check(t, 0.7, &p, 80).unwrap();
            assert!((lhs - rhs).abs() <= 1e-8, "t = {t}: {lhs} vs {rhs}");
        }
        let (_, rhs) = generating_function_check(0.3, 0.7, &p, 80).unwrap();
        assert!((rhs - 0.837_424_053_145_054_47).abs() < 1e-12);
        assert!(generating_function_check(1.0, 0.7, &p, 80).is_err());
    }
}
