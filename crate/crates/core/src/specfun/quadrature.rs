use crate::error::{Error, Result};

const MAX_EXTENSIONS: usize = 6;

/// Composite Gauss–Legendre rule on `[0, y_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub panel_count: usize,
    pub nodes_per_panel: usize,
    /// Truncation point of the semi-infinite range.
    pub y_max: f64,
    /// Largest `|f(y_max)|` accepted before the range is extended.
    pub tail_tolerance: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            panel_count: 20,
            nodes_per_panel: 64,
            y_max: 40.0,
            tail_tolerance: 1e-14,
        }
    }
}

impl QuadratureSpec {
    pub fn new(
        panel_count: usize,
        nodes_per_panel: usize,
        y_max: f64,
        tail_tolerance: f64,
    ) -> Result<Self> {
        if panel_count == 0 || nodes_per_panel == 0 {
            return Err(Error::InvalidParams(
                "panel and node counts must be positive".into(),
            ));
        }
        if !(y_max > 0.0 && y_max.is_finite()) || !(tail_tolerance > 0.0) {
            return Err(Error::InvalidParams(
                "y_max and tail_tolerance must be positive".into(),
            ));
        }
        Ok(QuadratureSpec {
            panel_count,
            nodes_per_panel,
            y_max,
            tail_tolerance,
        })
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    dp = legendre_with_derivative(n, x).1;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    /// Integral of `f` over `[lo, hi]`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, lo: f64, hi: f64) -> f64 {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum::<f64>()
            * half
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// `∫₀^∞ f(y) dy` by composite Gauss–Legendre over `[0, y_max]`.
///
/// When `|f(y_max)|` exceeds the tail tolerance the range is doubled (keeping
/// the panel width) up to six times before a truncation error is returned.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(f: F, spec: &QuadratureSpec) -> Result<f64> {
    let mut y_max = spec.y_max;
    let mut panels = spec.panel_count;
    for attempt in 0..=MAX_EXTENSIONS {
        let tail = f(y_max).abs();
        if tail.is_nan() {
            return Err(Error::NaN("integrand"));
        }
        if tail <= spec.tail_tolerance {
            break;
        }
        if attempt == MAX_EXTENSIONS {
            return Err(Error::Truncation {
                y_max,
                tail,
                tolerance: spec.tail_tolerance,
            });
        }
        y_max *= 2.0;
        panels *= 2;
    }
    let rule = GaussLegendre::new(spec.nodes_per_panel);
    let width = y_max / panels as f64;
    let total: f64 = (0..panels)
        .map(|p| rule.integrate(&f, p as f64 * width, (p + 1) as f64 * width))
        .sum();
    if total.is_nan() {
        Err(Error::NaN("integrand"))
    } else {
        Ok(total)
    }
}

/// `∫_{−∞}^{∞} f(x) dx`, folded onto `[0, ∞)`.
pub fn integrate_real_line<F: Fn(f64) -> f64>(f: F, spec: &QuadratureSpec) -> Result<f64> {
    integrate_semi_infinite(|x| f(x) + f(-x), spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_rule_is_exact_for_polynomials() {
        let rule = GaussLegendre::new(8);
        let w: f64 = rule.weights.iter().sum();
        assert!((w - 2.0).abs() < 1e-14);
        // degree 15 is the highest integrated exactly by 8 nodes
        let v = rule.integrate(|x| x.powi(14) + x.powi(15), -1.0, 1.0);
        assert!((v - 2.0 / 15.0).abs() < 1e-14);
    }

    #[test]
    fn analytic_integrals() {
        let spec = QuadratureSpec::default();
        let a = integrate_semi_infinite(|y| (-y).exp(), &spec).unwrap();
        assert!((a - 1.0).abs() < 1e-13);
        let b = integrate_semi_infinite(|y| (-y * y).exp(), &spec).unwrap();
        assert!((b - 0.886_226_925_452_758).abs() < 1e-13);
        let c = integrate_semi_infinite(|y| (-y).exp() * y.cos(), &spec).unwrap();
        assert!((c - 0.5).abs() < 1e-10);
    }

    #[test]
    fn range_extends_for_slow_tails() {
        let spec = QuadratureSpec::default();
        // e^{-y/2} at 40 is 2e-9; doubling twice brings it under 1e-14
        let v = integrate_semi_infinite(|y| (-0.5 * y).exp(), &spec).unwrap();
        assert!((v - 2.0).abs() < 1e-12);
    }

    #[test]
    fn truncation_and_nan_errors() {
        let spec = QuadratureSpec::default();
        assert!(matches!(
            integrate_semi_infinite(|y| 1.0 / (1.0 + y), &spec),
            Err(Error::Truncation { .. })
        ));
        assert!(matches!(
            integrate_semi_infinite(|y| if y < 1.0 { f64::NAN } else { 0.0 }, &spec),
            Err(Error::NaN(_))
        ));
    }

    #[test]
    fn spec_validation() {
        assert!(QuadratureSpec::new(0, 10, 1.0, 1e-3).is_err());
        assert!(QuadratureSpec::new(2, 10, -1.0, 1e-3).is_err());
        assert!(QuadratureSpec::new(2, 10, 1.0, 1e-3).is_ok());
    }
}
