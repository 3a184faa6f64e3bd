//! Positive zeros `λ_{m,j}` of `J_m`, certified by sign changes.
//!
//! Zeros of `J_0` are located in the brackets `((k+1/2)π, (k+1)π)`. Zeros of
//! `J_{m+1}` are then found one per gap `(λ_{m,j}, λ_{m,j+1})` using the
//! interlacing of consecutive orders, so each level is enumerated in order
//! with none skipped. Every zero is bisected inside its bracket and polished
//! by Newton's method; the stored enclosure always carries a verified sign
//! change.

use std::f64::consts::PI;
use std::sync::RwLock;

use crate::bessel::{j_orders, EvalConfig, MAX_ARGUMENT, MAX_ORDER};
use crate::error::{Error, Result};

const MAX_BISECTION_STEPS: usize = 60;
const MAX_NEWTON_STEPS: usize = 8;
/// Bisection hands over to Newton once the bracket is this narrow.
const NEWTON_HANDOVER_WIDTH: f64 = 1e-2;

/// Closed interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// A certified zero: `J_m` changes sign across `enclosure`, and `value`
/// lies inside it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Zero {
    pub value: f64,
    pub enclosure: Interval,
}

/// The bracket `((k+1/2)π, (k+1)π)` holding the `(k+1)`-th zero of `J_0`,
/// after checking that `J_0` really changes sign across it.
pub fn j0_bracket(k: usize) -> Result<Interval> {
    let iv = Interval {
        lo: (k as f64 + 0.5) * PI,
        hi: (k as f64 + 1.0) * PI,
    };
    if iv.hi > MAX_ARGUMENT {
        return Err(Error::UnsupportedRange(format!(
            "J_0 bracket {k} ends beyond {MAX_ARGUMENT}"
        )));
    }
    let cfg = EvalConfig::default();
    let a = j_orders(0, 0, iv.lo, &cfg)?[0];
    let b = j_orders(0, 0, iv.hi, &cfg)?[0];
    if a * b >= 0.0 {
        return Err(Error::Internal(format!(
            "J_0 shows no sign change on bracket {k}: {a} .. {b}"
        )));
    }
    Ok(iv)
}

/// Thread-safe, grow-only table of Bessel zeros. Negative orders share the
/// entries of `|m|`.
#[derive(Debug)]
pub struct ZeroCache {
    cfg: EvalConfig,
    levels: RwLock<Vec<Vec<Zero>>>,
}

impl Default for ZeroCache {
    fn default() -> Self {
        Self::new()
    }
}

impl ZeroCache {
    pub fn new() -> Self {
        Self::with_config(EvalConfig::default())
    }

    pub fn with_config(cfg: EvalConfig) -> Self {
        ZeroCache {
            cfg,
            levels: RwLock::new(Vec::new()),
        }
    }

    pub fn config(&self) -> &EvalConfig {
        &self.cfg
    }

    /// `λ_{|m|,j}`, `j >= 1`.
    pub fn zero(&self, m: i32, j: usize) -> Result<f64> {
        Ok(self.zero_entry(m, j)?.value)
    }

    pub fn zero_entry(&self, m: i32, j: usize) -> Result<Zero> {
        if j == 0 {
            return Err(Error::InvalidArgument("zero index j starts at 1".into()));
        }
        let order = check_order(m)?;
        if let Some(z) = self.read_level(order, |level| level.get(j - 1).copied()) {
            return Ok(z);
        }
        let mut levels = self.levels.write().expect("zero cache poisoned");
        ensure(&mut levels, order, j, &self.cfg)?;
        Ok(levels[order][j - 1])
    }

    /// The first `count` zeros of `J_m`.
    pub fn first_zeros(&self, m: i32, count: usize) -> Result<Vec<f64>> {
        if count == 0 {
            return Ok(Vec::new());
        }
        self.zero_entry(m, count)?;
        let order = check_order(m)?;
        Ok(self
            .read_level(order, |level| {
                Some(level[..count].iter().map(|z| z.value).collect())
            })
            .expect("level populated above"))
    }

    /// Every zero of `J_m` in `(0, x_max]`, ascending.
    pub fn zeros_upto(&self, m: i32, x_max: f64) -> Result<Vec<f64>> {
        if !(x_max > 0.0) || !x_max.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "x_max must be positive and finite, got {x_max}"
            )));
        }
        let order = check_order(m)?;
        let complete = |level: &Vec<Zero>| level.last().is_some_and(|z| z.value > x_max);
        if self.read_level(order, |l| complete(l).then_some(())).is_none() {
            let mut levels = self.levels.write().expect("zero cache poisoned");
            loop {
                let have = levels.get(order).map_or(0, Vec::len);
                if levels.get(order).is_some_and(complete) {
                    break;
                }
                // λ_{m,j} > λ_{0,j} > (j - 1/2)π
                if (have as f64 + 0.5) * PI > x_max {
                    break;
                }
                ensure(&mut levels, order, have + 1, &self.cfg)?;
            }
        }
        Ok(self
            .read_level(order, |level| {
                Some(
                    level
                        .iter()
                        .map(|z| z.value)
                        .take_while(|&v| v <= x_max)
                        .collect(),
                )
            })
            .unwrap_or_default())
    }

    /// Copy of every cached level, for inspection.
    pub fn snapshot(&self) -> Vec<Vec<Zero>> {
        self.levels.read().expect("zero cache poisoned").clone()
    }

    fn read_level<T>(&self, order: usize, f: impl FnOnce(&Vec<Zero>) -> Option<T>) -> Option<T> {
        let levels = self.levels.read().expect("zero cache poisoned");
        levels.get(order).and_then(f)
    }
}

fn check_order(m: i32) -> Result<usize> {
    let order = m.unsigned_abs();
    if order > MAX_ORDER {
        return Err(Error::UnsupportedRange(format!(
            "zero order {m} exceeds |m| <= {MAX_ORDER}"
        )));
    }
    Ok(order as usize)
}

/// Grow `levels[order]` to at least `count` zeros. Level `m` needs `count + 1`
/// zeros of level `m - 1` to bracket its `count`-th zero.
fn ensure(levels: &mut Vec<Vec<Zero>>, order: usize, count: usize, cfg: &EvalConfig) -> Result<()> {
    while levels.len() <= order {
        levels.push(Vec::new());
    }
    if levels[order].len() >= count {
        return Ok(());
    }
    if order > 0 {
        ensure(levels, order - 1, count + 1, cfg)?;
    }
    while levels[order].len() < count {
        let j = levels[order].len() + 1;
        let bracket = if order == 0 {
            j0_bracket(j - 1)?
        } else {
            let below = &levels[order - 1];
            Interval {
                lo: below[j - 1].enclosure.hi,
                hi: below[j].enclosure.lo,
            }
        };
        let zero = refine(order as i32, bracket, cfg)?;
        if let Some(prev) = levels[order].last() {
            if zero.value <= prev.value {
                return Err(Error::Internal(format!(
                    "zeros of J_{order} out of order at index {j}"
                )));
            }
        }
        levels[order].push(zero);
    }
    Ok(())
}

fn value_and_slope(order: i32, x: f64, cfg: &EvalConfig) -> Result<(f64, f64)> {
    let v = j_orders(order - 1, order + 1, x, cfg)?;
    Ok((v[1], 0.5 * (v[0] - v[2])))
}

fn value_at(order: i32, x: f64, cfg: &EvalConfig) -> Result<f64> {
    Ok(j_orders(order, order, x, cfg)?[0])
}

/// Bisection to a coarse bracket, safeguarded Newton polish, then a final
/// sign check on a window of width `1e-13 · max(1, λ)`.
fn refine(order: i32, bracket: Interval, cfg: &EvalConfig) -> Result<Zero> {
    if bracket.hi > MAX_ARGUMENT {
        return Err(Error::UnsupportedRange(format!(
            "zero of J_{order} lies beyond the supported argument {MAX_ARGUMENT}"
        )));
    }
    let (mut lo, mut hi) = (bracket.lo, bracket.hi);
    let mut f_lo = value_at(order, lo, cfg)?;
    let f_hi = value_at(order, hi, cfg)?;
    if f_lo * f_hi >= 0.0 {
        return Err(Error::Internal(format!(
            "no sign change for J_{order} on [{lo}, {hi}]: {f_lo}, {f_hi}"
        )));
    }

    let mut steps = 0;
    let bisect = |lo: &mut f64, hi: &mut f64, f_lo: &mut f64, steps: &mut usize| -> Result<()> {
        let mid = 0.5 * (*lo + *hi);
        let f_mid = value_at(order, mid, cfg)?;
        if f_mid == 0.0 {
            *lo = mid;
            *hi = mid;
        } else if f_mid * *f_lo < 0.0 {
            *hi = mid;
        } else {
            *lo = mid;
            *f_lo = f_mid;
        }
        *steps += 1;
        Ok(())
    };

    while hi - lo > NEWTON_HANDOVER_WIDTH && steps < MAX_BISECTION_STEPS {
        bisect(&mut lo, &mut hi, &mut f_lo, &mut steps)?;
    }

    let mut x = 0.5 * (lo + hi);
    for _ in 0..MAX_NEWTON_STEPS {
        let (f, df) = value_and_slope(order, x, cfg)?;
        if f == 0.0 {
            break;
        }
        if f * f_lo < 0.0 {
            hi = hi.min(x);
        } else {
            lo = lo.max(x);
            f_lo = f;
        }
        let step = f / df;
        if step.abs() <= 4.0 * f64::EPSILON * x.abs().max(1.0) {
            // converged; the safeguard below would reject a step this small
            // whenever x sits on the bracket edge
            break;
        }
        let mut next = x - step;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        x = next;
    }

    let target = 1e-13 * x.max(1.0);
    let half = 0.5 * target;
    let (a, b) = ((x - half).max(lo), (x + half).min(hi));
    let (fa, fb) = (value_at(order, a, cfg)?, value_at(order, b, cfg)?);
    if fa * fb < 0.0 || fa == 0.0 || fb == 0.0 {
        return Ok(Zero {
            value: x,
            enclosure: Interval { lo: a, hi: b },
        });
    }

    // Newton did not land inside a certifiable window: fall back to bisection.
    while hi - lo > target {
        if steps >= MAX_BISECTION_STEPS {
            return Err(Error::Internal(format!(
                "zero of J_{order} in [{}, {}] not certified within {MAX_BISECTION_STEPS} bisections",
                bracket.lo, bracket.hi
            )));
        }
        bisect(&mut lo, &mut hi, &mut f_lo, &mut steps)?;
    }
    Ok(Zero {
        value: 0.5 * (lo + hi),
        enclosure: Interval { lo, hi },
    })
}
