//! Level energies evaluated exactly from the decimal form of the inputs.
//!
//! `0.2` is not a binary fraction, so `−λ²/(2(m+μ)²)` in `f64` lands one
//! ulp away from `−0.08` for `λ = 0.2`, `μ = −0.5`. Here each input is read
//! back as its shortest decimal, the closed form is evaluated over the
//! rationals and the result is rounded to `f64` once.

use num_bigint::BigInt;
use num_integer::Integer;

/// `num / den` with `den > 0`.
#[derive(Debug, Clone, PartialEq)]
struct Rational {
    num: BigInt,
    den: BigInt,
}

fn pow10(k: u32) -> BigInt {
    BigInt::from(10u8).pow(k)
}

impl Rational {
    /// The shortest decimal that round-trips to `x`, as an exact fraction.
    fn from_shortest_decimal(x: f64) -> Rational {
        let text = format!("{x:e}");
        let (mantissa, exponent) = text.split_once('e').expect("exponent form");
        let exponent: i32 = exponent.parse().expect("integer exponent");
        let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
        let digits: BigInt = format!("{int_part}{frac_part}")
            .parse()
            .expect("decimal digits");
        let scale = exponent - frac_part.len() as i32;
        if scale >= 0 {
            Rational {
                num: digits * pow10(scale as u32),
                den: BigInt::from(1u8),
            }
        } else {
            Rational {
                num: digits,
                den: pow10((-scale) as u32),
            }
        }
    }

    /// Nearest `f64`: forty significant digits plus a sticky digit, then
    /// the correctly rounded standard parser.
    fn to_f64(&self) -> f64 {
        let negative = self.num < BigInt::from(0u8);
        let num = if negative {
            -self.num.clone()
        } else {
            self.num.clone()
        };
        if num == BigInt::from(0u8) {
            return 0.0;
        }
        let len = |v: &BigInt| v.to_string().len() as i64;
        let k = 40 - (len(&num) - len(&self.den));
        let (scaled_num, scaled_den) = if k >= 0 {
            (num * pow10(k as u32), self.den.clone())
        } else {
            (num, self.den.clone() * pow10((-k) as u32))
        };
        let (q, r) = scaled_num.div_rem(&scaled_den);
        let text = if r == BigInt::from(0u8) {
            format!("{q}e{}", -k)
        } else {
            format!("{q}1e{}", -k - 1)
        };
        let value: f64 = text.parse().expect("decimal text");
        if negative {
            -value
        } else {
            value
        }
    }
}

/// `E_m = −λ²/(2(m+μ)²)` with `λ` and `μ` taken as their shortest
/// decimals. `None` when `m + μ = 0`.
pub fn level_energy_decimal(m: usize, mu: f64, lambda: f64) -> Option<f64> {
    let l = Rational::from_shortest_decimal(lambda);
    let u = Rational::from_shortest_decimal(mu);
    let shifted = BigInt::from(m) * &u.den + &u.num;
    if shifted == BigInt::from(0u8) {
        return None;
    }
    let num = -(&l.num * &l.num) * &u.den * &u.den;
    let den = BigInt::from(2u8) * &l.den * &l.den * &shifted * &shifted;
    Some(Rational { num, den }.to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use wilsonqs::system::level_energy;

    #[test]
    fn ground_state_anchor() {
        assert_eq!(level_energy_decimal(0, -0.5, 0.2), Some(-0.08));
        assert_eq!(level_energy_decimal(1, -1.0, 0.2), None);
    }

    #[test]
    fn binary_fractions_match_floating_point() {
        for (m, mu, lambda) in [(0, -0.5, 0.5), (3, -7.25, 1.0), (2, 0.75, 0.125)] {
            assert_eq!(
                level_energy_decimal(m, mu, lambda),
                Some(level_energy(m, mu, lambda).unwrap())
            );
        }
    }

    #[test]
    fn within_rounding_of_floating_point() {
        for (m, mu, lambda) in [
            (0, -0.3, 0.7),
            (5, -9.1, 0.33),
            (1, 2.2, 1e-3),
            (0, -0.5, 3.7e5),
        ] {
            let exact = level_energy_decimal(m, mu, lambda).unwrap();
            let float = level_energy(m, mu, lambda).unwrap();
            assert!(((exact - float) / float).abs() < 1e-15, "{exact} {float}");
        }
    }

    #[test]
    fn rational_rounding() {
        let third = Rational {
            num: BigInt::from(1),
            den: BigInt::from(3),
        };
        assert_eq!(third.to_f64(), 1.0 / 3.0);
        assert_eq!(Rational::from_shortest_decimal(1.25e-7).to_f64(), 1.25e-7);
        assert_eq!(Rational::from_shortest_decimal(-6.02e23).to_f64(), -6.02e23);
    }
}
