use num_complex::Complex64;

use super::double_double::{Cdd, Dd};
use crate::error::{Error, Result};

/// Stopping rule for open-ended hypergeometric series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    /// Stop once two consecutive terms fall below `rel_tol * |partial sum|`.
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl {
            rel_tol: 1e-15,
            max_terms: 100_000,
        }
    }
}

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// Gauss series `₂F₁(a, b; c | t)` for `|t| < 1`.
pub fn hyp2f1(a: Complex64, b: Complex64, c: Complex64, t: f64) -> Result<Complex64> {
    hyp2f1_with(a, b, c, t, SeriesControl::default())
}

pub fn hyp2f1_with(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    t: f64,
    control: SeriesControl,
) -> Result<Complex64> {
    if !(t.abs() < 1.0) {
        return Err(Error::Domain(format!("hyp2f1 requires |t| < 1, got {t}")));
    }
    if is_nonpositive_integer(c) {
        return Err(Error::Pole { re: c.re, im: c.im });
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut small_run = 0;
    for k in 0..control.max_terms {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * t;
        sum += term;
        if term == Complex64::new(0.0, 0.0) {
            return finite(sum);
        }
        if term.norm() < control.rel_tol * sum.norm() {
            small_run += 1;
            if small_run == 2 {
                return finite(sum);
            }
        } else {
            small_run = 0;
        }
    }
    Err(Error::NonConvergence {
        terms: control.max_terms,
    })
}

/// Terminating `₄F₃(−n, u₁, u₂, u₃; l₁, l₂, l₃ | t)`, an exact sum of
/// `n + 1` terms.
///
/// Terms are formed and accumulated in double-double arithmetic: for
/// Wilson-type parameters the terms exceed the sum by many orders of
/// magnitude, and plain `f64` loses most digits to cancellation.
pub fn hyp4f3_terminating(
    n: usize,
    upper: [Complex64; 3],
    lower: [f64; 3],
    t: f64,
) -> Result<Complex64> {
    let dd = Dd::from_f64;
    let shifted = |z: Complex64, k: f64| Cdd::new(dd(z.re) + dd(k), dd(z.im));
    let mut term = Cdd::new(dd(1.0), Dd::ZERO);
    let mut sum = term;
    for k in 0..n {
        let kf = k as f64;
        let mut denom = dd(kf + 1.0);
        for l in lower {
            let factor = dd(l) + dd(kf);
            if factor.to_f64() == 0.0 {
                return Err(Error::Pole { re: l, im: 0.0 });
            }
            denom = denom * factor;
        }
        let numer = shifted(upper[0], kf) * (shifted(upper[1], kf) * shifted(upper[2], kf));
        term = (term * numer).scale(dd(kf - n as f64) * dd(t) / denom);
        sum = sum + term;
    }
    finite(Complex64::new(sum.re.to_f64(), sum.im.to_f64()))
}

fn finite(z: Complex64) -> Result<Complex64> {
    if z.re.is_nan() || z.im.is_nan() {
        Err(Error::NaN("hypergeometric series"))
    } else if !z.re.is_finite() || !z.im.is_finite() {
        Err(Error::Overflow("hypergeometric series".into()))
    } else {
        Ok(z)
    }
}
