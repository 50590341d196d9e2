use crate::error::{Error, Result};

/// Physicists' Hermite polynomial `H_n(z)` by upward recurrence
/// `H_{k+1} = 2z H_k − 2k H_{k−1}`.
pub fn hermite(n: usize, z: f64) -> Result<f64> {
    if z.is_nan() {
        return Err(Error::NaN("hermite argument"));
    }
    let mut prev = 1.0;
    if n == 0 {
        return Ok(prev);
    }
    let mut curr = 2.0 * z;
    for k in 1..n {
        let next = 2.0 * z * curr - 2.0 * k as f64 * prev;
        prev = curr;
        curr = next;
        if !curr.is_finite() {
            return Err(Error::Overflow(format!("H_{n}({z})")));
        }
    }
    if curr.is_finite() {
        Ok(curr)
    } else {
        Err(Error::Overflow(format!("H_{n}({z})")))
    }
}
