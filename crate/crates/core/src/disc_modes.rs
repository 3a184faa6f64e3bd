//! Separated one-variable modes on a disc of radius `a`.
//!
//! * Dirichlet: `J_{|m|}(λ_{|m|,j} r/a) e^{imθ}`, eigenvalue `(λ_{|m|,j}/a)²`.
//! * Neumann-positive (the ∂̄ condition `∂u/∂z̄ = 0` on the circle):
//!   `J_m(λ_{|m+1|,j} r/a) e^{imθ}`, eigenvalue `(λ_{|m+1|,j}/a)²`.
//! * Holomorphic: `z^p`, `p >= 0`, eigenvalue 0.

use std::cmp::Ordering;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::bessel::{bessel_j_with_derivatives, j_orders, EvalConfig};
use crate::error::{Error, Result};
use crate::zeros::ZeroCache;

/// Slack when testing `r <= a` for points constructed on the boundary.
const RADIUS_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorKind {
    Dirichlet,
    NeumannPositive,
    Holomorphic,
}

/// Identity of a mode factor: two factors are the same mode iff their keys
/// coincide, whatever their eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FactorKey {
    pub kind: FactorKind,
    pub angular_order: i32,
    /// 0 for holomorphic factors.
    pub radial_index: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeFactor {
    kind: FactorKind,
    angular_order: i32,
    radial_index: Option<usize>,
    radius: f64,
    /// Bessel zero fixing the radial scale; 0 for holomorphic factors.
    bessel_zero: f64,
    lambda_k: f64,
}

fn check_radius(a: f64) -> Result<()> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::InvalidArgument(format!("disc radius must be positive, got {a}")));
    }
    Ok(())
}

fn scaled_square(zero: f64, a: f64) -> f64 {
    let s = zero / a;
    s * s
}

impl ModeFactor {
    pub fn dirichlet(m: i32, j: usize, a: f64, cache: &ZeroCache) -> Result<Self> {
        check_radius(a)?;
        let zero = cache.zero(m, j)?;
        Ok(ModeFactor {
            kind: FactorKind::Dirichlet,
            angular_order: m,
            radial_index: Some(j),
            radius: a,
            bessel_zero: zero,
            lambda_k: scaled_square(zero, a),
        })
    }

    pub fn neumann(m: i32, j: usize, a: f64, cache: &ZeroCache) -> Result<Self> {
        check_radius(a)?;
        let zero = cache.zero(m + 1, j)?;
        Ok(ModeFactor {
            kind: FactorKind::NeumannPositive,
            angular_order: m,
            radial_index: Some(j),
            radius: a,
            bessel_zero: zero,
            lambda_k: scaled_square(zero, a),
        })
    }

    /// `z^p`; only `p >= 0` is smooth at the origin.
    pub fn holomorphic(p: i32, a: f64) -> Result<Self> {
        check_radius(a)?;
        if p < 0 {
            return Err(Error::InvalidArgument(format!(
                "holomorphic exponent must be non-negative, got {p}"
            )));
        }
        Ok(ModeFactor {
            kind: FactorKind::Holomorphic,
            angular_order: p,
            radial_index: None,
            radius: a,
            bessel_zero: 0.0,
            lambda_k: 0.0,
        })
    }

    pub fn kind(&self) -> FactorKind {
        self.kind
    }

    pub fn angular_order(&self) -> i32 {
        self.angular_order
    }

    pub fn radial_index(&self) -> Option<usize> {
        self.radial_index
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn lambda_k(&self) -> f64 {
        self.lambda_k
    }

    pub fn bessel_zero(&self) -> f64 {
        self.bessel_zero
    }

    /// Order of the Bessel function in the radial profile.
    pub fn profile_order(&self) -> i32 {
        match self.kind {
            FactorKind::Dirichlet => self.angular_order.abs(),
            FactorKind::NeumannPositive => self.angular_order,
            FactorKind::Holomorphic => self.angular_order,
        }
    }

    pub fn key(&self) -> FactorKey {
        FactorKey {
            kind: self.kind,
            angular_order: self.angular_order,
            radial_index: self.radial_index.unwrap_or(0),
        }
    }

    /// Same function, claimed eigenvalue multiplied by `factor`. Used to
    /// exercise residual checks on deliberately wrong eigenpairs.
    pub fn with_scaled_lambda(&self, factor: f64) -> Self {
        ModeFactor {
            lambda_k: self.lambda_k * factor,
            ..self.clone()
        }
    }

    /// Canonical ordering: eigenvalue, then identity.
    pub fn cmp_canonical(&self, other: &Self) -> Ordering {
        self.lambda_k
            .total_cmp(&other.lambda_k)
            .then_with(|| self.key().cmp(&other.key()))
    }
}

fn sort_factors(list: &mut [ModeFactor]) {
    list.sort_by(ModeFactor::cmp_canonical);
}

fn check_cutoff(lambda_max: f64) -> Result<()> {
    if !(lambda_max > 0.0) || !lambda_max.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "lambda_max must be positive and finite, got {lambda_max}"
        )));
    }
    Ok(())
}

/// Radius in Bessel-argument units up to which zeros can contribute.
fn zero_cutoff(a: f64, lambda_max: f64) -> f64 {
    a * lambda_max.sqrt() * (1.0 + 1e-12)
}

/// All Dirichlet factors with `lambda_k <= lambda_max`, sorted by
/// eigenvalue. `±m` are distinct factors.
pub fn dirichlet_factors(a: f64, lambda_max: f64, cache: &ZeroCache) -> Result<Vec<ModeFactor>> {
    check_radius(a)?;
    check_cutoff(lambda_max)?;
    let x_max = zero_cutoff(a, lambda_max);
    let mut out = Vec::new();
    // λ_{|m|,1} grows strictly with |m|: stop at the first empty order.
    for order in 0.. {
        let zeros = cache.zeros_upto(order, x_max)?;
        if zeros.is_empty() {
            break;
        }
        for (idx, &zero) in zeros.iter().enumerate() {
            let lambda_k = scaled_square(zero, a);
            if lambda_k > lambda_max {
                continue;
            }
            let signs: &[i32] = if order == 0 { &[0] } else { &[order, -order] };
            for &m in signs {
                out.push(ModeFactor {
                    kind: FactorKind::Dirichlet,
                    angular_order: m,
                    radial_index: Some(idx + 1),
                    radius: a,
                    bessel_zero: zero,
                    lambda_k,
                });
            }
        }
    }
    sort_factors(&mut out);
    Ok(out)
}

/// All Neumann-positive factors with `lambda_k <= lambda_max`, sorted by
/// eigenvalue. Holomorphic (eigenvalue 0) factors are not included.
pub fn neumann_factors(a: f64, lambda_max: f64, cache: &ZeroCache) -> Result<Vec<ModeFactor>> {
    check_radius(a)?;
    check_cutoff(lambda_max)?;
    let x_max = zero_cutoff(a, lambda_max);
    let mut out = Vec::new();
    // |m+1| = order gives m = order - 1 and m = -order - 1.
    for order in 0.. {
        let zeros = cache.zeros_upto(order, x_max)?;
        if zeros.is_empty() {
            break;
        }
        for (idx, &zero) in zeros.iter().enumerate() {
            let lambda_k = scaled_square(zero, a);
            if lambda_k > lambda_max {
                continue;
            }
            let orders: &[i32] = if order == 0 { &[-1] } else { &[order - 1, -order - 1] };
            for &m in orders {
                out.push(ModeFactor {
                    kind: FactorKind::NeumannPositive,
                    angular_order: m,
                    radial_index: Some(idx + 1),
                    radius: a,
                    bessel_zero: zero,
                    lambda_k,
                });
            }
        }
    }
    sort_factors(&mut out);
    Ok(out)
}

/// `|x J'_m(x) - m J_m(x)|` at `x = √λ_k · a`: the radial ∂̄ boundary
/// condition evaluated at the factor's claimed eigenvalue.
pub fn robin_residual(f: &ModeFactor) -> Result<f64> {
    if f.kind != FactorKind::NeumannPositive {
        return Err(Error::InvalidArgument(
            "robin_residual applies to Neumann-positive factors only".into(),
        ));
    }
    let m = f.angular_order;
    let x = f.lambda_k.sqrt() * f.radius;
    let v = j_orders(m - 1, m + 1, x, &EvalConfig::default())?;
    let derivative = 0.5 * (v[0] - v[2]);
    Ok((x * derivative - m as f64 * v[1]).abs())
}

fn check_r(f: &ModeFactor, r: f64) -> Result<f64> {
    if !r.is_finite() || r < 0.0 || r > f.radius * (1.0 + RADIUS_SLACK) {
        return Err(Error::InvalidArgument(format!(
            "radius {r} outside [0, {}]",
            f.radius
        )));
    }
    Ok(r.min(f.radius))
}

/// Radial part of the factor at `r ∈ [0, a]`.
pub fn radial_profile(f: &ModeFactor, r: f64) -> Result<f64> {
    Ok(radial_derivatives(f, r)?[0])
}

/// `[R(r), R'(r), R''(r)]`, analytically: Bessel recurrences for the
/// Bessel profiles, the power rule for `r^p`.
pub fn radial_derivatives(f: &ModeFactor, r: f64) -> Result<[f64; 3]> {
    let r = check_r(f, r)?;
    match f.kind {
        FactorKind::Holomorphic => {
            let p = f.angular_order;
            let value = r.powi(p);
            let first = if p == 0 { 0.0 } else { p as f64 * r.powi(p - 1) };
            let second = if p < 2 {
                0.0
            } else {
                (p * (p - 1)) as f64 * r.powi(p - 2)
            };
            Ok([value, first, second])
        }
        _ => {
            let c = f.bessel_zero / f.radius;
            let [j, dj, d2j] = bessel_j_with_derivatives(f.profile_order(), c * r, &EvalConfig::default())?;
            Ok([j, c * dj, c * c * d2j])
        }
    }
}

/// Polar Laplacian of the radial part, `R'' + R'/r - ν² R / r²`, with
/// `ν` the angular order. Exactly 0 for holomorphic factors.
pub fn radial_laplacian(f: &ModeFactor, r: f64) -> Result<f64> {
    if f.kind == FactorKind::Holomorphic {
        let p = i64::from(f.angular_order);
        let coefficient = p * (p - 1) + p - p * p;
        if coefficient == 0 {
            return Ok(0.0);
        }
    }
    if r <= 0.0 {
        return Err(Error::InvalidArgument(
            "polar Laplacian is singular at r = 0".into(),
        ));
    }
    let [value, first, second] = radial_derivatives(f, r)?;
    let nu = f.angular_order as f64;
    Ok(second + first / r - nu * nu * value / (r * r))
}

/// `∫_0^a r R(r)² dr` in closed form.
///
/// Dirichlet: `(a²/2) J_{|m|+1}(λ)²`. Neumann-positive: `(a²/2) J_m(λ)²`,
/// since `J'_m(λ) = (m/λ) J_m(λ)` when `J_{m+1}(λ) = 0`. Holomorphic:
/// `a^{2p+2} / (2p+2)`.
pub fn radial_norm_sq(f: &ModeFactor) -> Result<f64> {
    let a = f.radius;
    let cfg = EvalConfig::default();
    match f.kind {
        FactorKind::Dirichlet => {
            let order = f.angular_order.abs() + 1;
            let v = j_orders(order, order, f.bessel_zero, &cfg)?[0];
            Ok(0.5 * a * a * v * v)
        }
        FactorKind::NeumannPositive => {
            let m = f.angular_order;
            let v = j_orders(m, m, f.bessel_zero, &cfg)?[0];
            Ok(0.5 * a * a * v * v)
        }
        FactorKind::Holomorphic => {
            let e = 2 * f.angular_order + 2;
            Ok(a.powi(e) / e as f64)
        }
    }
}

/// `∫_disc |F|² dA = 2π ∫_0^a r R² dr`.
pub fn factor_norm_sq(f: &ModeFactor) -> Result<f64> {
    Ok(2.0 * PI * radial_norm_sq(f)?)
}
