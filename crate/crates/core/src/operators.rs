//! Matrix representations in the orthonormal oscillator basis.
//!
//! Every matrix is stored dense together with the diagonal offsets it is
//! allowed to populate; entries outside those offsets are exactly zero.

use crate::error::{Error, Result};
use crate::verify::VerificationReport;
use crate::wilson::WilsonParams;

#[derive(Debug, Clone, PartialEq)]
pub struct BandedMatrix {
    order: usize,
    entries: Vec<f64>,
    band_offsets: Vec<isize>,
    symmetric: bool,
}

impl BandedMatrix {
    fn zeros(order: usize, band_offsets: &[isize], symmetric: bool) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidParams(
                "matrix order must be at least 1".into(),
            ));
        }
        let mut offsets = band_offsets.to_vec();
        offsets.sort_unstable();
        offsets.dedup();
        Ok(BandedMatrix {
            order,
            entries: vec![0.0; order * order],
            band_offsets: offsets,
            symmetric,
        })
    }

    /// Wraps row-major `entries`, rejecting anything nonzero outside the
    /// declared band or, when `symmetric`, any asymmetry.
    pub fn from_dense(
        order: usize,
        entries: Vec<f64>,
        band_offsets: &[isize],
        symmetric: bool,
    ) -> Result<Self> {
        let mut m = Self::zeros(order, band_offsets, symmetric)?;
        if entries.len() != order * order {
            return Err(Error::DimensionMismatch {
                left: entries.len(),
                right: order * order,
            });
        }
        m.entries = entries;
        if m.band_violation() != 0.0 {
            return Err(Error::InvalidParams(
                "nonzero entry outside the declared band".into(),
            ));
        }
        if symmetric && m.max_asymmetry() != 0.0 {
            return Err(Error::InvalidParams(
                "matrix declared symmetric is not".into(),
            ));
        }
        Ok(m)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn band_offsets(&self) -> &[isize] {
        &self.band_offsets
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.order + col]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    fn set(&mut self, row: usize, col: usize, value: f64) {
        self.entries[row * self.order + col] = value;
    }

    fn set_pair(&mut self, row: usize, col: usize, value: f64) {
        self.set(row, col, value);
        self.set(col, row, value);
    }

    /// Largest `|M_ij − M_ji|`.
    pub fn max_asymmetry(&self) -> f64 {
        let n = self.order;
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| (self.get(i, j) - self.get(j, i)).abs())
            .fold(0.0, f64::max)
    }

    /// Largest magnitude found outside the declared band.
    pub fn band_violation(&self) -> f64 {
        let n = self.order;
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !self.band_offsets.contains(&(j as isize - i as isize)))
            .map(|(i, j)| self.get(i, j).abs())
            .fold(0.0, f64::max)
    }

    /// Entrywise `self − other`, banded on the union of both bands.
    pub fn difference(&self, other: &BandedMatrix) -> Result<BandedMatrix> {
        if self.order != other.order {
            return Err(Error::DimensionMismatch {
                left: self.order,
                right: other.order,
            });
        }
        let offsets: Vec<isize> = self
            .band_offsets
            .iter()
            .chain(&other.band_offsets)
            .copied()
            .collect();
        let mut out = Self::zeros(self.order, &offsets, self.symmetric && other.symmetric)?;
        for (dst, (a, b)) in out
            .entries
            .iter_mut()
            .zip(self.entries.iter().zip(&other.entries))
        {
            *dst = a - b;
        }
        Ok(out)
    }

    /// `self + shift · I`.
    pub fn shifted_diagonal(&self, shift: f64) -> BandedMatrix {
        let mut out = self.clone();
        if !out.band_offsets.contains(&0) {
            out.band_offsets.push(0);
            out.band_offsets.sort_unstable();
        }
        for i in 0..out.order {
            let v = out.get(i, i) + shift;
            out.set(i, i, v);
        }
        out
    }

    /// `self · factor`.
    pub fn scaled(&self, factor: f64) -> BandedMatrix {
        let mut out = self.clone();
        out.entries.iter_mut().for_each(|v| *v *= factor);
        out
    }

    pub fn max_abs_difference(&self, other: &BandedMatrix) -> Result<f64> {
        Ok(self
            .difference(other)?
            .entries
            .iter()
            .fold(0.0, |m, v| m.max(v.abs())))
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

/// Kinetic matrix `−½⟨φ_n|d²/dx²|φ_m⟩`:
/// `(λ²/4)[(2n+1)δ_{n,m} − √(n(n−1))δ_{n,m+2} − √((n+1)(n+2))δ_{n,m−2}]`.
pub fn kinetic_matrix(order: usize, lambda: f64) -> Result<BandedMatrix> {
    check_lambda(lambda)?;
    let mut t = BandedMatrix::zeros(order, &[-2, 0, 2], true)?;
    let scale = 0.25 * lambda * lambda;
    for n in 0..order {
        let nf = n as f64;
        t.set(n, n, scale * (2.0 * nf + 1.0));
        if n + 2 < order {
            t.set_pair(n, n + 2, -scale * ((nf + 1.0) * (nf + 2.0)).sqrt());
        }
    }
    Ok(t)
}

/// `⟨n|(λx)²|m⟩` in the oscillator basis.
pub fn position_squared_matrix(order: usize) -> Result<BandedMatrix> {
    let mut z2 = BandedMatrix::zeros(order, &[-2, 0, 2], true)?;
    for n in 0..order {
        let nf = n as f64;
        z2.set(n, n, 0.5 * (2.0 * nf + 1.0));
        if n + 2 < order {
            z2.set_pair(n, n + 2, 0.5 * ((nf + 1.0) * (nf + 2.0)).sqrt());
        }
    }
    Ok(z2)
}

/// Overlap `⟨φ_n|φ_m⟩`; the identity for the orthonormal basis.
pub fn overlap_matrix(order: usize) -> Result<BandedMatrix> {
    Ok(BandedMatrix::zeros(order, &[0], true)?.shifted_diagonal(1.0))
}

/// Checks `λ²(n+½)δ_{n,m} − ½λ²⟨n|(λx)²|m⟩` against [`kinetic_matrix`]
/// entrywise.
pub fn kinetic_decomposition_check(
    order: usize,
    lambda: f64,
    tolerance: f64,
) -> Result<VerificationReport> {
    let kinetic = kinetic_matrix(order, lambda)?;
    let mut oscillator = BandedMatrix::zeros(order, &[0], true)?;
    for n in 0..order {
        oscillator.set(n, n, lambda * lambda * (n as f64 + 0.5));
    }
    let counter = position_squared_matrix(order)?.scaled(0.5 * lambda * lambda);
    let residual = oscillator
        .difference(&counter)?
        .max_abs_difference(&kinetic)?;
    Ok(VerificationReport::new(
        format!("kinetic decomposition (order {order}, λ = {lambda})"),
        residual,
        tolerance,
    ))
}

/// Tridiagonal Hamiltonian for `μ = ν`, `a = b`:
///
/// diagonal `(1/λ²)[(n+μ+a−½)² − (μ−½)² − (a−½)² + ¼]`, and
/// `H_{n,n−1} = −(1/2λ²)(n+μ+a−1)√(n(n+2μ−1)(n+2a−1)(n+2μ+2a−2) / ((n+μ+a−1)² − ¼))`.
pub fn hamiltonian_matrix(order: usize, lambda: f64, mu: f64, a: f64) -> Result<BandedMatrix> {
    check_lambda(lambda)?;
    if !mu.is_finite() || !a.is_finite() {
        return Err(Error::InvalidParams("μ and a must be finite".into()));
    }
    let mut h = BandedMatrix::zeros(order, &[-1, 0, 1], true)?;
    let inv = 1.0 / (lambda * lambda);
    for n in 0..order {
        let nf = n as f64;
        let diag = (nf + mu + a - 0.5).powi(2) - (mu - 0.5).powi(2) - (a - 0.5).powi(2) + 0.25;
        h.set(n, n, inv * diag);
        if n >= 1 {
            let shifted = nf + mu + a - 1.0;
            let denom = shifted * shifted - 0.25;
            if denom == 0.0 {
                return Err(Error::DegenerateDenominator { n });
            }
            let radicand =
                nf * (nf + 2.0 * mu - 1.0) * (nf + 2.0 * a - 1.0) * (nf + 2.0 * mu + 2.0 * a - 2.0)
                    / denom;
            if radicand < 0.0 {
                return Err(Error::NegativeRadicand { n, value: radicand });
            }
            h.set_pair(n, n - 1, -0.5 * inv * shifted * radicand.sqrt());
        }
    }
    Ok(h)
}

/// `Ṽ = H − T̃`.
pub fn potential_matrix(h: &BandedMatrix, t: &BandedMatrix) -> Result<BandedMatrix> {
    h.difference(t)
}

/// Wave operator `J = H − EΩ` with `Ω = I`.
pub fn wave_operator(h: &BandedMatrix, energy: f64) -> Result<BandedMatrix> {
    if h.band_offsets.iter().any(|o| o.abs() > 1) || !h.symmetric {
        return Err(Error::InvalidParams(
            "wave operator needs a symmetric tridiagonal Hamiltonian".into(),
        ));
    }
    Ok(h.shifted_diagonal(-energy))
}

/// Symmetric Jacobi matrix of the orthonormal Wilson recursion: diagonal
/// `d_n`, off-diagonal `−b_n`.
pub fn recursion_matrix(order: usize, w: &WilsonParams) -> Result<BandedMatrix> {
    let mut j = BandedMatrix::zeros(order, &[-1, 0, 1], true)?;
    for n in 0..order {
        j.set(n, n, w.recursion_diagonal(n)?);
        if n + 1 < order {
            j.set_pair(n, n + 1, -w.recursion_offdiagonal(n)?);
        }
    }
    Ok(j)
}

/// Diagnostic only: largest entry of `(λ²/2) H − Σ`, where `Σ` is the
/// orthonormal recursion matrix at `ν = μ`, `b = a`.
pub fn hamiltonian_recursion_residual(order: usize, lambda: f64, mu: f64, a: f64) -> Result<f64> {
    let h = hamiltonian_matrix(order, lambda, mu, a)?;
    let sigma = recursion_matrix(order, &WilsonParams::new(mu, mu, a, a)?)?;
    h.scaled(0.5 * lambda * lambda).max_abs_difference(&sigma)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinetic_entries() {
        let t = kinetic_matrix(6, 0.5).unwrap();
        assert!((t.get(0, 0) - 0.0625).abs() < 1e-16);
        assert_eq!(t.get(0, 1), 0.0);
        assert!((t.get(0, 2) + 0.0625 * 2f64.sqrt()).abs() < 1e-16);
        assert_eq!(t.get(2, 0), t.get(0, 2));
        assert_eq!(t.band_violation(), 0.0);
        assert!(kinetic_matrix(0, 0.5).is_err());
        assert!(kinetic_matrix(3, -0.5).is_err());
    }

    #[test]
    fn position_squared_entries() {
        let z = position_squared_matrix(4).unwrap();
        assert_eq!(z.get(0, 0), 0.5);
        assert!((z.get(0, 2) - 0.5 * 2f64.sqrt()).abs() < 1e-16);
        assert_eq!(z.get(0, 1), 0.0);
    }

    #[test]
    fn decomposition_identity() {
        for (order, lambda, tol) in [(10, 0.5, 1e-14), (10, 0.2, 1e-14), (50, 1.0, 1e-12)] {
            let r = kinetic_decomposition_check(order, lambda, tol).unwrap();
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn hamiltonian_entries() {
        let h = hamiltonian_matrix(5, 0.5, 0.8, 0.6).unwrap();
        assert!((h.get(0, 0) - 3.84).abs() < 1e-12);
        let h10 = -2.0 * 1.4 * (1.6_f64 * 1.2 * 1.8 / (1.4 * 1.4 - 0.25)).sqrt();
        assert!((h.get(1, 0) - h10).abs() < 1e-12);
        assert!((h.get(1, 0) + 3.980_584_458_541_1).abs() < 1e-9);
        assert_eq!(h.get(0, 1), h.get(1, 0));
        assert_eq!(h.get(0, 2), 0.0);
    }

    #[test]
    fn hamiltonian_errors() {
        // n + 2μ − 1 < 0 at n = 1 while the other factors stay positive
        assert!(matches!(
            hamiltonian_matrix(3, 0.5, -0.2, 1.5),
            Err(Error::NegativeRadicand { n: 1, .. })
        ));
        // (n+μ+a−1)² = ¼ at n = 1
        assert!(matches!(
            hamiltonian_matrix(3, 0.5, 0.2, 0.3),
            Err(Error::DegenerateDenominator { n: 1 })
        ));
    }

    #[test]
    fn potential_and_wave_operator() {
        let h = hamiltonian_matrix(6, 0.5, 0.8, 0.6).unwrap();
        let t = kinetic_matrix(6, 0.5).unwrap();
        let v = potential_matrix(&h, &t).unwrap();
        assert_eq!(v.band_offsets(), &[-2, -1, 0, 1, 2]);
        assert_eq!(v.get(0, 1), h.get(0, 1));
        assert!((v.get(0, 2) - 0.0625 * 2f64.sqrt()).abs() < 1e-16);
        assert!((v.get(0, 0) - 3.7775).abs() < 1e-12);
        assert!(potential_matrix(&h, &kinetic_matrix(5, 0.5).unwrap()).is_err());

        let j0 = wave_operator(&h, 0.0).unwrap();
        assert_eq!(j0, h);
        let j = wave_operator(&h, 0.7).unwrap();
        for n in 0..6 {
            assert!((j.get(n, n) - j0.get(n, n) + 0.7).abs() < 1e-13);
        }
        assert_eq!(j.band_violation(), 0.0);
        assert!(wave_operator(&v, 0.1).is_err());
    }

    #[test]
    fn dense_constructor_validates_band() {
        assert!(BandedMatrix::from_dense(2, vec![1.0, 2.0, 2.0, 1.0], &[0], true).is_err());
        assert!(BandedMatrix::from_dense(2, vec![1.0, 2.0, 3.0, 1.0], &[-1, 0, 1], true).is_err());
        assert!(BandedMatrix::from_dense(2, vec![1.0, 2.0, 2.0, 1.0], &[-1, 0, 1], true).is_ok());
        assert!(BandedMatrix::from_dense(2, vec![1.0; 3], &[0], false).is_err());
    }

    #[test]
    fn overlap_is_identity() {
        let o = overlap_matrix(4).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(o.get(i, j), if i == j { 1.0 } else { 0.0 });
            }
        }
    }
}
