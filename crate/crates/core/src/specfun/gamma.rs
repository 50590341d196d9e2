use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
// g = 7, n = 9 (the GSL / Numerical Recipes set).
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];
const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;
const LN_PI: f64 = 1.144_729_885_849_400_2;
const MAX_MODULUS: f64 = 1e250;

/// Rising factorial `a (a+1) ... (a+n-1)`; `(a)_0 = 1`.
pub fn pochhammer(a: f64, n: usize) -> f64 {
    (0..n).fold(1.0, |acc, k| acc * (a + k as f64))
}

/// Log-gamma on the branch that is continuous away from the negative real
/// axis (the same branch as `scipy.special.loggamma`).
///
/// The real part is `ln|Γ(z)|` and the imaginary part is a continuous
/// `arg Γ(z)`, not reduced modulo 2π. On the negative real axis the value
/// is the limit from the upper half-plane.
pub fn log_gamma_complex(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("non-finite argument {z}")));
    }
    if z.norm() > MAX_MODULUS {
        return Err(Error::Overflow(format!("log-gamma argument {z} too large")));
    }
    if z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0 {
        return Err(Error::Pole { re: z.re, im: z.im });
    }
    let value = if z.re >= 0.5 {
        lanczos(z)
    } else if z.im < 0.0 {
        reflected(z.conj()).conj()
    } else {
        reflected(z)
    };
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow(format!("log-gamma at {z}")))
    }
}

/// `ln|Γ(x)|` for real `x`.
pub fn log_gamma_real(x: f64) -> Result<f64> {
    Ok(log_gamma_complex(Complex64::new(x, 0.0))?.re)
}

fn lanczos(z: Complex64) -> Complex64 {
    let zm1 = z - 1.0;
    let series = LANCZOS_COEFFS[1..]
        .iter()
        .enumerate()
        .fold(Complex64::new(LANCZOS_COEFFS[0], 0.0), |acc, (i, &c)| {
            acc + c / (zm1 + (i + 1) as f64)
        });
    let t = zm1 + LANCZOS_G + 0.5;
    HALF_LN_TWO_PI + (zm1 + 0.5) * t.ln() - t + series.ln()
}

/// Reflection `lnΓ(z) = ln π − lnΓ(1−z) − ln sin(πz)` for `Im z ≥ 0`, with
/// `ln sin(πz) = −iπz − ln 2 + iπ/2 + ln(1 − e^{2πiz})`, which is the branch
/// of `ln sin(πz)` continuous on the closed upper half-plane.
fn reflected(z: Complex64) -> Complex64 {
    let w = Complex64::new(0.0, 2.0 * PI) * z;
    let one_minus_exp = -expm1(w);
    let ln_sin = Complex64::new(0.0, -PI) * z - std::f64::consts::LN_2
        + Complex64::new(0.0, PI / 2.0)
        + one_minus_exp.ln();
    LN_PI - lanczos(1.0 - z) - ln_sin
}

fn expm1(w: Complex64) -> Complex64 {
    let (s, c) = w.im.sin_cos();
    let half = (0.5 * w.im).sin();
    let e = w.re.exp_m1();
    Complex64::new(e * c - 2.0 * half * half, (e + 1.0) * s)
}
