//! Bessel functions of the first kind, integer order, real non-negative
//! argument.
//!
//! Small arguments are summed from the power series in double-double
//! arithmetic; larger arguments use Miller's backward recurrence normalised
//! by `J_0 + 2 (J_2 + J_4 + ...) = 1`. Negative orders are reduced with
//! `J_{-m} = (-1)^m J_m`, so the parity identity holds bit for bit.

mod dd;
pub mod oracle;

use crate::error::{Error, Result};
use dd::DoubleDouble;

/// Largest supported |order|.
pub const MAX_ORDER: u32 = 200;
/// Largest supported argument.
pub const MAX_ARGUMENT: f64 = 500.0;

/// Internal evaluations (second derivatives) reach two orders past the
/// public window.
const INTERNAL_MAX_ORDER: u32 = MAX_ORDER + 2;

/// An integer Bessel order, possibly negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BesselOrder(pub i32);

impl BesselOrder {
    pub fn magnitude(self) -> u32 {
        self.0.unsigned_abs()
    }

    /// Sign relating `J_m` to `J_{|m|}`.
    pub fn parity_sign(self) -> f64 {
        if self.0 < 0 && self.0 % 2 != 0 {
            -1.0
        } else {
            1.0
        }
    }
}

/// Accuracy and algorithm-selection knobs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    pub target_rel_error: f64,
    /// Arguments at or below this use the power series.
    pub series_switch_point: f64,
    /// Cap on power-series terms.
    pub max_terms: usize,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            target_rel_error: 1e-12,
            series_switch_point: 18.0,
            max_terms: 500,
        }
    }
}

impl EvalConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.target_rel_error > 0.0 && self.target_rel_error.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "target_rel_error must be positive, got {}",
                self.target_rel_error
            )));
        }
        if self.max_terms < 1 {
            return Err(Error::InvalidArgument("max_terms must be at least 1".into()));
        }
        if !(self.series_switch_point >= 0.0) {
            return Err(Error::InvalidArgument(
                "series_switch_point must be non-negative".into(),
            ));
        }
        Ok(())
    }
}

fn check_argument(z: f64) -> Result<()> {
    if !z.is_finite() {
        return Err(Error::InvalidArgument(format!("non-finite argument {z}")));
    }
    if z < 0.0 {
        return Err(Error::InvalidArgument(format!("negative argument {z}")));
    }
    if z > MAX_ARGUMENT {
        return Err(Error::UnsupportedRange(format!(
            "argument {z} exceeds {MAX_ARGUMENT}"
        )));
    }
    Ok(())
}

fn check_order(m: i32) -> Result<()> {
    if m.unsigned_abs() > MAX_ORDER {
        return Err(Error::UnsupportedRange(format!(
            "order {m} exceeds |m| <= {MAX_ORDER}"
        )));
    }
    Ok(())
}

/// `J_m(z)`.
pub fn bessel_j(m: i32, z: f64, cfg: &EvalConfig) -> Result<f64> {
    check_order(m)?;
    check_argument(z)?;
    Ok(j_orders(m, m, z, cfg)?[0])
}

/// `J'_m(z) = (J_{m-1}(z) - J_{m+1}(z)) / 2`.
pub fn bessel_j_prime(m: i32, z: f64, cfg: &EvalConfig) -> Result<f64> {
    check_order(m)?;
    check_argument(z)?;
    let v = j_orders(m - 1, m + 1, z, cfg)?;
    Ok(0.5 * (v[0] - v[2]))
}

/// `J''_m(z) = (J_{m-2}(z) - 2 J_m(z) + J_{m+2}(z)) / 4`, the first-derivative
/// recurrence applied twice.
pub fn bessel_j_second(m: i32, z: f64, cfg: &EvalConfig) -> Result<f64> {
    check_order(m)?;
    check_argument(z)?;
    let v = j_orders(m - 2, m + 2, z, cfg)?;
    Ok(0.25 * (v[0] - 2.0 * v[2] + v[4]))
}

/// Value, first and second derivative of `J_m` at `z`, from one evaluation
/// of the orders `m-2 ..= m+2`.
pub fn bessel_j_with_derivatives(m: i32, z: f64, cfg: &EvalConfig) -> Result<[f64; 3]> {
    check_order(m)?;
    check_argument(z)?;
    let v = j_orders(m - 2, m + 2, z, cfg)?;
    Ok([
        v[2],
        0.5 * (v[1] - v[3]),
        0.25 * (v[0] - 2.0 * v[2] + v[4]),
    ])
}

/// `J_k(z)` for every `k` in `lo..=hi`.
pub fn bessel_j_range(lo: i32, hi: i32, z: f64, cfg: &EvalConfig) -> Result<Vec<f64>> {
    if lo > hi {
        return Err(Error::InvalidArgument(format!("empty order range {lo}..={hi}")));
    }
    check_order(lo)?;
    check_order(hi)?;
    check_argument(z)?;
    j_orders(lo, hi, z, cfg)
}

/// Core evaluator: orders `lo..=hi` (signed), no window check on the orders
/// beyond `INTERNAL_MAX_ORDER`.
pub(crate) fn j_orders(lo: i32, hi: i32, z: f64, cfg: &EvalConfig) -> Result<Vec<f64>> {
    debug_assert!(lo <= hi);
    cfg.validate()?;
    let amax = lo.unsigned_abs().max(hi.unsigned_abs());
    if amax > INTERNAL_MAX_ORDER {
        return Err(Error::UnsupportedRange(format!("order {amax} out of window")));
    }
    let amin = if lo <= 0 && hi >= 0 {
        0
    } else {
        lo.unsigned_abs().min(hi.unsigned_abs())
    };
    let block = nonnegative_block(amin, amax, z, cfg)?;
    Ok((lo..=hi)
        .map(|k| {
            let order = BesselOrder(k);
            order.parity_sign() * block[(order.magnitude() - amin) as usize]
        })
        .collect())
}

fn nonnegative_block(amin: u32, amax: u32, z: f64, cfg: &EvalConfig) -> Result<Vec<f64>> {
    if z == 0.0 {
        return Ok((amin..=amax)
            .map(|n| if n == 0 { 1.0 } else { 0.0 })
            .collect());
    }
    if z <= cfg.series_switch_point {
        (amin..=amax).map(|n| series(n, z, cfg)).collect()
    } else {
        Ok(miller(amin, amax, z, cfg))
    }
}

/// Power series `sum_l (-1)^l (z/2)^{2l+n} / (l! (l+n)!)`, summed in
/// double-double so the cancellation between large alternating terms does not
/// reach the f64 result.
fn series(n: u32, z: f64, cfg: &EvalConfig) -> Result<f64> {
    let half = 0.5 * z;
    let mut term = DoubleDouble::from_f64(1.0);
    for k in 1..=n {
        term = term.mul_f64(half).div_f64(k as f64);
        if term.hi == 0.0 {
            return Ok(0.0);
        }
    }
    let quarter_sq = DoubleDouble::square_of(half);
    let mut sum = term;
    for l in 0..cfg.max_terms {
        let denom = ((l + 1) as f64) * ((l + 1) as f64 + n as f64);
        term = term.mul(quarter_sq).div_f64(denom).neg();
        sum = sum.add(term);
        let decreasing = half * half < denom;
        if term.hi == 0.0
            || (decreasing && term.hi.abs() <= 1e-4 * cfg.target_rel_error * sum.hi.abs())
            || (decreasing && term.hi.abs() < 1e-300)
        {
            return Ok(sum.to_f64());
        }
    }
    Err(Error::Internal(format!(
        "power series for J_{n}({z}) did not converge in {} terms",
        cfg.max_terms
    )))
}

/// Miller's backward recurrence `J_{k-1} = (2k/z) J_k - J_{k+1}` from a
/// high even starting order, normalised by the even-order sum identity.
fn miller(amin: u32, amax: u32, z: f64, cfg: &EvalConfig) -> Vec<f64> {
    const RESCALE_ABOVE: f64 = 1e250;
    const RESCALE_BY: f64 = 1e-250;

    let digits = (-cfg.target_rel_error.log10()).clamp(4.0, 17.0);
    let big = (amax as f64).max(z);
    let mut start = (big + 20.0 + (4.0 * digits * big).sqrt()).ceil() as u32;
    if start % 2 == 1 {
        start += 1;
    }

    let mut out = vec![0.0; (amax - amin + 1) as usize];
    let mut above = 0.0_f64; // J_{k+1}
    let mut current = 1e-30_f64; // J_k, arbitrary seed
    let mut norm = 2.0 * current; // start is even
    for k in (1..=start).rev() {
        let below = (2.0 * k as f64 / z) * current - above;
        above = current;
        current = below;
        let order = k - 1;
        if order >= amin && order <= amax {
            out[(order - amin) as usize] = current;
        }
        if order % 2 == 0 {
            norm += if order == 0 { current } else { 2.0 * current };
        }
        if current.abs() > RESCALE_ABOVE {
            current *= RESCALE_BY;
            above *= RESCALE_BY;
            norm *= RESCALE_BY;
            for v in out.iter_mut() {
                *v *= RESCALE_BY;
            }
        }
    }
    for v in out.iter_mut() {
        *v /= norm;
    }
    out
}
