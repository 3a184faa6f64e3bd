//! Exact-rational reference evaluation of `J_m` for tests.
//!
//! The power series is summed term by term in `BigRational`, so the only
//! error is truncation, which is bounded by the first omitted term once the
//! series has become alternating with decreasing magnitudes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A reference value together with a rigorous bound on its truncation error.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleValue {
    pub value: BigRational,
    pub error_bound: BigRational,
}

impl OracleValue {
    pub fn to_f64(&self) -> f64 {
        self.value.to_f64().unwrap_or(f64::NAN)
    }

    /// Fixed-point decimal rendering with `digits` digits after the point
    /// (truncated toward zero).
    pub fn to_decimal_string(&self, digits: u32) -> String {
        let scale = BigInt::from(10u32).pow(digits);
        let scaled = (&self.value * BigRational::from_integer(scale)).trunc();
        let int = scaled.to_integer();
        let negative = int.is_negative();
        let mut s = int.abs().to_string();
        let d = digits as usize;
        if s.len() <= d {
            s = format!("{}{}", "0".repeat(d + 1 - s.len()), s);
        }
        let (a, b) = s.split_at(s.len() - d);
        format!("{}{}.{}", if negative { "-" } else { "" }, a, b)
    }
}

/// Exact rational from an `f64` (every finite double is a dyadic rational).
pub fn rational_from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite input")
}

/// `J_m(z)` to at least `digits` decimal digits (absolute), `digits <= 100`.
pub fn oracle_bessel_j(m: i32, z: &BigRational, digits: u32) -> OracleValue {
    let digits = digits.min(100);
    let n = m.unsigned_abs();
    let sign_flip = m < 0 && n % 2 == 1;
    let tolerance = BigRational::new(BigInt::one(), BigInt::from(10u32).pow(digits + 5));

    let half = z / BigRational::from_integer(BigInt::from(2));
    let quarter_sq = &half * &half;
    let mut term = BigRational::one();
    for k in 1..=n {
        term = term * &half / BigRational::from_integer(BigInt::from(k));
    }
    let mut sum = term.clone();
    let mut l: u64 = 0;
    let error_bound = loop {
        let denom = BigRational::from_integer(BigInt::from((l + 1) * (l + 1 + n as u64)));
        let next = -(&term * &quarter_sq) / &denom;
        let decreasing = quarter_sq < denom;
        if next.is_zero() {
            break BigRational::zero();
        }
        if decreasing && next.abs() < tolerance {
            break next.abs();
        }
        sum += &next;
        term = next;
        l += 1;
    };
    let value = if sign_flip { -sum } else { sum };
    OracleValue { value, error_bound }
}

/// Convenience: the oracle at an `f64` argument, rounded to `f64`.
pub fn oracle_f64(m: i32, z: f64) -> f64 {
    oracle_bessel_j(m, &rational_from_f64(z), 30).to_f64()
}
