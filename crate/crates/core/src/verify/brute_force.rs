//! Exhaustive spectrum enumeration used as an independent oracle.
//!
//! Shares no numerics with the production path: Bessel values come from the
//! trapezoid rule on `J_m(x) = (1/2π) ∫ cos(mθ - x sin θ) dθ` (spectrally
//! accurate for this periodic integrand), zeros from a fixed-step sign scan
//! plus bisection, and the search is a plain Cartesian product over bounded
//! index ranges with no pruning.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::disc_modes::{FactorKey, FactorKind};
use crate::error::{Error, Result};
use crate::spectrum::{check_degree, ModeDescriptor, Polydisc};

/// Trapezoid-rule `J_m(x)` for `m >= 0`, `x >= 0`.
pub fn trapezoid_bessel(m: u32, x: f64) -> f64 {
    let n = 2 * (m as usize + x.ceil() as usize) + 64;
    let mut sum = 0.0;
    for l in 0..n {
        let t = 2.0 * PI * l as f64 / n as f64;
        sum += (m as f64 * t - x * t.sin()).cos();
    }
    sum / n as f64
}

const SCAN_STEP: f64 = 0.25;

/// First `count` positive zeros of `J_m` by scanning and bisection.
pub fn scan_zeros(m: u32, count: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(count);
    // No positive zero of J_m lies below m (or below 2 for m = 0).
    let mut x = (m as f64).max(0.5);
    let mut fx = trapezoid_bessel(m, x);
    while out.len() < count {
        let y = x + SCAN_STEP;
        let fy = trapezoid_bessel(m, y);
        if fx == 0.0 {
            out.push(x);
        } else if fx * fy < 0.0 {
            let (mut lo, mut hi, flo) = (x, y, fx);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                let fm = trapezoid_bessel(m, mid);
                if (fm < 0.0) == (flo < 0.0) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            out.push(0.5 * (lo + hi));
        }
        x = y;
        fx = fy;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BruteForceMode {
    pub value: f64,
    pub descriptor: ModeDescriptor,
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    key: FactorKey,
    lambda_k: f64,
}

/// All eigenmodes of `□_q` with eigenvalue `<= lambda_max`, for `n` in
/// `{2, 3}`, scanning angular orders `|m| <= m_bound` and radial indices
/// `j <= j_bound`. Fails with [`Error::OracleInsufficient`] if a mode
/// outside those ranges could still be under the cutoff.
pub fn brute_force_spectrum(
    polydisc: &Polydisc,
    q: usize,
    lambda_max: f64,
    m_bound: u32,
    j_bound: usize,
) -> Result<Vec<BruteForceMode>> {
    let n = polydisc.dim();
    if !(2..=3).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "brute-force oracle supports n = 2 or 3, got {n}"
        )));
    }
    check_degree(n, q)?;
    if !(lambda_max > 0.0 && lambda_max.is_finite()) || j_bound == 0 {
        return Err(Error::InvalidArgument("need lambda_max > 0 and j_bound >= 1".into()));
    }
    let cap = 4.0 * lambda_max * (1.0 + 1e-12);

    // zeros[o][j-1] = λ_{o,j}, one extra index and two extra orders for the
    // sufficiency checks.
    let zeros: Vec<Vec<f64>> = (0..=m_bound + 2).map(|o| scan_zeros(o, j_bound + 1)).collect();
    let lam = |o: u32, j: usize, a: f64| {
        let s = zeros[o as usize][j - 1] / a;
        s * s
    };

    for &a in polydisc.radii() {
        let mut problems = Vec::new();
        if lam(m_bound + 1, 1, a) <= cap {
            problems.push(format!("Dirichlet order {} reaches the cutoff", m_bound + 1));
        }
        if lam(m_bound, 1, a) <= cap || lam(m_bound + 2, 1, a) <= cap {
            problems.push(format!("Neumann order beyond {m_bound} reaches the cutoff"));
        }
        for o in 0..=m_bound + 1 {
            if lam(o, j_bound + 1, a) <= cap {
                problems.push(format!("radial index {} of order {o} reaches the cutoff", j_bound + 1));
                break;
            }
        }
        if !problems.is_empty() {
            return Err(Error::OracleInsufficient(format!(
                "radius {a}: {}",
                problems.join("; ")
            )));
        }
    }

    let per_variable = |a: f64, dirichlet: bool| -> Vec<Candidate> {
        let mut out = Vec::new();
        if !dirichlet {
            out.push(Candidate {
                key: FactorKey {
                    kind: FactorKind::Holomorphic,
                    angular_order: 0,
                    radial_index: 0,
                },
                lambda_k: 0.0,
            });
        }
        let mb = m_bound as i32;
        for m in -mb..=mb {
            for j in 1..=j_bound {
                let (kind, order) = if dirichlet {
                    (FactorKind::Dirichlet, m.unsigned_abs())
                } else {
                    (FactorKind::NeumannPositive, (m + 1).unsigned_abs())
                };
                let lambda_k = lam(order, j, a);
                if lambda_k <= cap {
                    out.push(Candidate {
                        key: FactorKey {
                            kind,
                            angular_order: m,
                            radial_index: j,
                        },
                        lambda_k,
                    });
                }
            }
        }
        out
    };

    let mut modes = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != q {
            continue;
        }
        let tuple: Vec<usize> = (0..n).filter(|k| mask & (1 << k) != 0).collect();
        let lists: Vec<Vec<Candidate>> = (0..n)
            .map(|k| per_variable(polydisc.radius(k), mask & (1 << k) != 0))
            .collect();
        if lists.iter().any(|l| l.is_empty()) {
            continue;
        }
        let mut idx = vec![0usize; n];
        'product: loop {
            let mut sum = 0.0;
            for k in 0..n {
                sum += lists[k][idx[k]].lambda_k;
            }
            let value = 0.25 * sum;
            if value <= lambda_max {
                modes.push(BruteForceMode {
                    value,
                    descriptor: ModeDescriptor {
                        tuple: tuple.clone(),
                        factors: (0..n).map(|k| lists[k][idx[k]].key).collect(),
                    },
                });
            }
            for k in (0..n).rev() {
                idx[k] += 1;
                if idx[k] < lists[k].len() {
                    continue 'product;
                }
                idx[k] = 0;
            }
            break;
        }
    }
    modes.sort_by(|x, y| x.value.total_cmp(&y.value).then_with(|| x.descriptor.cmp(&y.descriptor)));
    Ok(modes)
}
