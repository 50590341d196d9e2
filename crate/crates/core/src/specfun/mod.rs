//! Scalar special-function kernels.

mod double_double;
mod gamma;
mod hermite;
mod hypergeometric;
mod quadrature;

pub use gamma::{log_gamma_complex, log_gamma_real, pochhammer};
pub use hermite::hermite;
pub use hypergeometric::{hyp2f1, hyp2f1_with, hyp4f3_terminating, SeriesControl};
pub use quadrature::{integrate_real_line, integrate_semi_infinite, GaussLegendre, QuadratureSpec};
