//! Quantum system generated by the Wilson orthogonal polynomial.
//!
//! The physics lives in the energy polynomials: the continuum is labelled by
//! the spectral variable `y = λ/k`, the bound spectrum and phase shift come
//! in closed form from gamma functions, and the potential is recovered
//! numerically from its matrix elements in a harmonic-oscillator basis.
//!
//! Layout, bottom up:
//!
//! * [`specfun`]: log-gamma, Pochhammer, hypergeometric series, Hermite
//!   polynomials and semi-infinite quadrature.
//! * [`wilson`]: the Wilson polynomial family, its weight and identities.
//! * [`system`]: energy maps, bound states, phase shift, basis functions and
//!   the continuum wavefunction.
//! * [`operators`]: banded matrix representations (kinetic, Hamiltonian,
//!   potential, wave operator).
//! * [`reconstruct`]: potential function on a coordinate grid.
//! * [`verify`]: named identity checks used by the CLI and the test suites.

pub mod error;
pub mod operators;
pub mod reconstruct;
pub mod specfun;
pub mod system;
pub mod verify;
pub mod wilson;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use operators::BandedMatrix;
pub use reconstruct::{Grid, Method, ReconstructedPotential};
pub use specfun::QuadratureSpec;
pub use system::{BoundState, EnergyPoint, SystemParams};
pub use verify::VerificationReport;
pub use wilson::{Regime, WilsonParams};
