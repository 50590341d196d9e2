//! Potential function on a coordinate grid from its oscillator-basis matrix.

use crate::error::{Error, Result};
use crate::operators::{hamiltonian_matrix, kinetic_matrix, potential_matrix, BandedMatrix};
use crate::system::{basis_values, SystemParams};

/// Relative cut below which the full-matrix formula's denominator is
/// treated as underflowed.
pub const DENOMINATOR_THRESHOLD: f64 = 1e-12;

/// Uniform grid including both end points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    x_min: f64,
    x_max: f64,
    count: usize,
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, count: usize) -> Result<Self> {
        if !(x_min < x_max) || !x_min.is_finite() || !x_max.is_finite() {
            return Err(Error::InvalidParams(format!(
                "grid needs finite x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        if count < 2 {
            return Err(Error::InvalidParams("grid needs at least 2 points".into()));
        }
        Ok(Grid {
            x_min,
            x_max,
            count,
        })
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }
    pub fn x_max(&self) -> f64 {
        self.x_max
    }
    pub fn count(&self) -> usize {
        self.count
    }

    pub fn point(&self, i: usize) -> f64 {
        if i + 1 == self.count {
            self.x_max
        } else {
            self.x_min + (self.x_max - self.x_min) * i as f64 / (self.count - 1) as f64
        }
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(|i| self.point(i))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Full-matrix ratio `Σ V_nm φ_n φ_m / Σ φ_n²`.
    FullMatrix,
    /// First-column sum `Σ V_m0 φ_m / φ_0`.
    FirstColumn,
}

impl Method {
    pub fn label(&self) -> &'static str {
        match self {
            Method::FullMatrix => "14a",
            Method::FirstColumn => "14b",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReconstructedPotential {
    pub grid: Grid,
    /// `None` where the value is undefined (denominator underflow).
    pub values: Vec<Option<f64>>,
    pub method: Method,
    pub order: usize,
}

impl ReconstructedPotential {
    pub fn samples(&self) -> impl Iterator<Item = (f64, Option<f64>)> + '_ {
        self.grid.points().zip(self.values.iter().copied())
    }
}

fn require_symmetric(v: &BandedMatrix) -> Result<()> {
    if v.max_asymmetry() != 0.0 {
        return Err(Error::InvalidParams(
            "potential matrix must be symmetric".into(),
        ));
    }
    Ok(())
}

/// `Ṽ(x) = Σ_{n,m<N} V_nm φ_n(x) φ_m(x) / Σ_{n<N} φ_n(x)²`.
///
/// Points whose denominator is below [`DENOMINATOR_THRESHOLD`] times the
/// largest denominator on the grid are left undefined.
pub fn reconstruct_a(v: &BandedMatrix, lambda: f64, grid: &Grid) -> Result<ReconstructedPotential> {
    require_symmetric(v)?;
    let order = v.order();
    let mut ratios = Vec::with_capacity(grid.count());
    for x in grid.points() {
        let phi = basis_values(order - 1, x, lambda)?;
        let denom: f64 = phi.iter().map(|f| f * f).sum();
        let numer: f64 = (0..order)
            .map(|n| {
                let row: f64 = v
                    .band_offsets()
                    .iter()
                    .filter_map(|&o| {
                        let m = n as isize + o;
                        (0..order as isize)
                            .contains(&m)
                            .then(|| v.get(n, m as usize) * phi[m as usize])
                    })
                    .sum();
                row * phi[n]
            })
            .sum();
        ratios.push((numer, denom));
    }
    let max_denom = ratios.iter().fold(0.0_f64, |m, &(_, d)| m.max(d));
    let cut = DENOMINATOR_THRESHOLD * max_denom;
    let values = ratios
        .into_iter()
        .map(|(numer, denom)| (denom >= cut && denom > 0.0).then(|| numer / denom))
        .collect();
    Ok(ReconstructedPotential {
        grid: *grid,
        values,
        method: Method::FullMatrix,
        order,
    })
}

/// `Ṽ(x) = Σ_{m<N} V_{m,0} φ_m(x) / φ_0(x)`.
pub fn reconstruct_b(v: &BandedMatrix, lambda: f64, grid: &Grid) -> Result<ReconstructedPotential> {
    require_symmetric(v)?;
    let order = v.order();
    let values = grid
        .points()
        .map(|x| {
            let phi = basis_values(order - 1, x, lambda)?;
            let sum: f64 = (0..order).map(|m| v.get(m, 0) * phi[m]).sum();
            let value = sum / phi[0];
            Ok(value.is_finite().then_some(value))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ReconstructedPotential {
        grid: *grid,
        values,
        method: Method::FirstColumn,
        order,
    })
}

pub fn reconstruct(
    method: Method,
    v: &BandedMatrix,
    lambda: f64,
    grid: &Grid,
) -> Result<ReconstructedPotential> {
    match method {
        Method::FullMatrix => reconstruct_a(v, lambda, grid),
        Method::FirstColumn => reconstruct_b(v, lambda, grid),
    }
}

/// `Ṽ = H − T̃` for `ν = μ`, `b = a`; the `ν` and `b` of `p` are ignored.
pub fn potential_matrix_for(p: &SystemParams, order: usize) -> Result<BandedMatrix> {
    let w = p.wilson();
    let h = hamiltonian_matrix(order, p.lambda(), w.mu(), w.a())?;
    let t = kinetic_matrix(order, p.lambda())?;
    potential_matrix(&h, &t)
}

/// Adds the harmonic counter-term `½λ⁴x²` to a reconstructed `Ṽ`.
pub fn with_harmonic_term(
    mut partial: ReconstructedPotential,
    lambda: f64,
) -> ReconstructedPotential {
    let l4 = lambda.powi(4);
    let xs: Vec<f64> = partial.grid.points().collect();
    for (v, x) in partial.values.iter_mut().zip(xs) {
        if let Some(v) = v.as_mut() {
            *v += 0.5 * l4 * x * x;
        }
    }
    partial
}

/// Full potential `V(x) = ½λ⁴x² + Ṽ(x)`.
pub fn full_potential(
    p: &SystemParams,
    order: usize,
    grid: &Grid,
    method: Method,
) -> Result<ReconstructedPotential> {
    let v = potential_matrix_for(p, order)?;
    Ok(with_harmonic_term(
        reconstruct(method, &v, p.lambda(), grid)?,
        p.lambda(),
    ))
}
