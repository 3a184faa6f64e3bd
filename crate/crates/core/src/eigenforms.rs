//! Pointwise evaluation of eigenform coefficients and residual checks of the
//! eigenvalue equation and both boundary conditions.
//!
//! All derivatives are analytic. `box_coefficient_fd` is a finite-difference
//! cross-check only.

use num_complex::Complex64;

use crate::disc_modes::{radial_derivatives, radial_laplacian, FactorKind, ModeFactor};
use crate::error::{Error, Result};
use crate::spectrum::EigenMode;

const RADIUS_SLACK: f64 = 1e-12;

/// A point of the closed polydisc in polar coordinates, `z_k = r_k e^{iθ_k}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FormPoint {
    polar: Vec<(f64, f64)>,
}

impl FormPoint {
    pub fn from_polar(polar: Vec<(f64, f64)>) -> Result<Self> {
        for &(r, t) in &polar {
            if !(r >= 0.0 && r.is_finite() && t.is_finite()) {
                return Err(Error::InvalidArgument(format!("bad polar coordinate ({r}, {t})")));
            }
        }
        Ok(FormPoint { polar })
    }

    pub fn from_complex(z: &[Complex64]) -> Result<Self> {
        Self::from_polar(z.iter().map(|c| (c.norm(), c.arg())).collect())
    }

    pub fn polar(&self) -> &[(f64, f64)] {
        &self.polar
    }

    pub fn dim(&self) -> usize {
        self.polar.len()
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.polar.iter().map(|&(r, t)| Complex64::from_polar(r, t)).collect()
    }
}

fn check_point(mode: &EigenMode, p: &FormPoint) -> Result<()> {
    if p.dim() != mode.dim() {
        return Err(Error::InvalidArgument(format!(
            "point has {} coordinates, mode has {}",
            p.dim(),
            mode.dim()
        )));
    }
    for (k, (f, &(r, _))) in mode.factors().iter().zip(p.polar()).enumerate() {
        if r > f.radius() * (1.0 + RADIUS_SLACK) {
            return Err(Error::InvalidArgument(format!(
                "|z_{}| = {r} exceeds radius {}",
                k + 1,
                f.radius()
            )));
        }
    }
    Ok(())
}

fn angular(f: &ModeFactor, theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, f.angular_order() as f64 * theta)
}

/// One factor `R(r) e^{iνθ}` at `(r, θ)`.
pub fn factor_value(f: &ModeFactor, r: f64, theta: f64) -> Result<Complex64> {
    let [value, _, _] = radial_derivatives(f, r)?;
    Ok(value * angular(f, theta))
}

/// The coefficient of `dz̄_J` of `mode` at `p`.
pub fn eval_coefficient(mode: &EigenMode, p: &FormPoint) -> Result<Complex64> {
    check_point(mode, p)?;
    let mut acc = Complex64::new(1.0, 0.0);
    for (f, &(r, t)) in mode.factors().iter().zip(p.polar()) {
        acc *= factor_value(f, r, t)?;
    }
    Ok(acc)
}

/// `(-1/4) Δ u` at an interior point, each `Δ_k` applied in polar form.
pub fn box_coefficient(mode: &EigenMode, p: &FormPoint) -> Result<Complex64> {
    check_point(mode, p)?;
    let n = mode.dim();
    let mut values = Vec::with_capacity(n);
    let mut laplacians = Vec::with_capacity(n);
    for (k, (f, &(r, t))) in mode.factors().iter().zip(p.polar()).enumerate() {
        let constant = f.kind() == FactorKind::Holomorphic && f.angular_order() == 0;
        if r <= 0.0 && !constant {
            return Err(Error::InvalidArgument(format!(
                "z_{} = 0 is a singular point of the polar chart",
                k + 1
            )));
        }
        values.push(factor_value(f, r, t)?);
        laplacians.push(radial_laplacian(f, r)? * angular(f, t));
    }
    let mut total = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let mut term = laplacians[k];
        for (l, v) in values.iter().enumerate() {
            if l != k {
                term *= v;
            }
        }
        total += term;
    }
    Ok(-0.25 * total)
}

/// `|(-1/4)Δu - λu| / max(1e-30, |λu|)` with `λ` the mode's eigenvalue.
pub fn laplacian_residual(mode: &EigenMode, p: &FormPoint) -> Result<f64> {
    let lhs = box_coefficient(mode, p)?;
    let rhs = mode.value() * eval_coefficient(mode, p)?;
    Ok((lhs - rhs).norm() / rhs.norm().max(1e-30))
}

/// `∂F/∂z̄ = (e^{iθ}/2)(∂_r + (i/r)∂_θ) F` for one factor at `(r, θ)`, `r > 0`.
pub fn factor_dbar(f: &ModeFactor, r: f64, theta: f64) -> Result<Complex64> {
    if r <= 0.0 {
        return Err(Error::InvalidArgument("∂/∂z̄ in polar form needs r > 0".into()));
    }
    let [value, first, _] = radial_derivatives(f, r)?;
    let e = angular(f, theta);
    let d_r = first * e;
    let d_theta = Complex64::new(0.0, f.angular_order() as f64) * value * e;
    let i = Complex64::new(0.0, 1.0);
    Ok(0.5 * Complex64::from_polar(1.0, theta) * (d_r + i / r * d_theta))
}

/// `|∂F/∂z̄|` on the boundary circle `r = a` of the factor's disc.
pub fn factor_dbar_residual(f: &ModeFactor, theta: f64) -> Result<f64> {
    Ok(factor_dbar(f, f.radius(), theta)?.norm())
}

/// The ∂̄-Neumann boundary residual of factor `k ∉ J` at `|z_k| = a_k`.
pub fn dbar_boundary_residual(mode: &EigenMode, k: usize, theta: f64) -> Result<f64> {
    if k >= mode.dim() {
        return Err(Error::InvalidArgument(format!("variable index {k} out of range")));
    }
    if mode.tuple().contains(k) {
        return Err(Error::InvalidArgument(format!(
            "variable {} belongs to J; the ∂̄ condition applies to k ∉ J",
            k + 1
        )));
    }
    factor_dbar_residual(&mode.factors()[k], theta)
}

/// Finite-difference `(-1/4)Δu` in Cartesian coordinates with step `h`,
/// for cross-checking `box_coefficient`.
pub fn box_coefficient_fd(mode: &EigenMode, p: &FormPoint, h: f64) -> Result<Complex64> {
    check_point(mode, p)?;
    let z = p.to_complex();
    let eval = |z: &[Complex64]| eval_coefficient(mode, &FormPoint::from_complex(z)?);
    let centre = eval(&z)?;
    let mut total = Complex64::new(0.0, 0.0);
    for k in 0..z.len() {
        for dir in [Complex64::new(h, 0.0), Complex64::new(0.0, h)] {
            let mut plus = z.clone();
            plus[k] += dir;
            let mut minus = z.clone();
            minus[k] -= dir;
            total += (eval(&plus)? - 2.0 * centre + eval(&minus)?) / (h * h);
        }
    }
    Ok(-0.25 * total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bessel::oracle::oracle_f64;
    use crate::spectrum::{enumerate_modes, Polydisc};
    use crate::zeros::ZeroCache;

    fn bottom_mode(cache: &ZeroCache) -> EigenMode {
        let p = Polydisc::new(vec![1.0, 1.0]).unwrap();
        enumerate_modes(&p, 1, 1.5, cache).unwrap().remove(0)
    }

    #[test]
    fn coefficient_of_bottom_mode() {
        let cache = ZeroCache::new();
        let mode = bottom_mode(&cache);
        let point = FormPoint::from_complex(&[Complex64::new(0.5, 0.0), Complex64::new(0.0, 0.3)]).unwrap();
        let v = eval_coefficient(&mode, &point).unwrap();
        let expected = oracle_f64(0, 2.404825557695773 * 0.5);
        assert!((expected - 0.6699297390).abs() < 1e-9);
        assert!((v.re - expected).abs() < 1e-12 && v.im.abs() < 1e-15);
    }

    #[test]
    fn outside_point_rejected() {
        let cache = ZeroCache::new();
        let mode = bottom_mode(&cache);
        let point = FormPoint::from_polar(vec![(1.2, 0.0), (0.1, 0.0)]).unwrap();
        assert!(eval_coefficient(&mode, &point).is_err());
        let short = FormPoint::from_polar(vec![(0.2, 0.0)]).unwrap();
        assert!(eval_coefficient(&mode, &short).is_err());
    }

    #[test]
    fn origin_value_vanishes_iff_nonzero_dirichlet_order() {
        let cache = ZeroCache::new();
        let p = Polydisc::new(vec![1.0, 1.0]).unwrap();
        let origin = FormPoint::from_polar(vec![(0.0, 0.0), (0.0, 0.0)]).unwrap();
        for mode in enumerate_modes(&p, 1, 12.0, &cache).unwrap() {
            if mode.family() != crate::spectrum::Family::Holomorphic {
                continue;
            }
            let k = mode.tuple().indices()[0];
            let v = eval_coefficient(&mode, &origin).unwrap();
            assert_eq!(v.norm() == 0.0, mode.factors()[k].angular_order() != 0);
        }
    }

    #[test]
    fn residual_detects_wrong_eigenvalue() {
        let cache = ZeroCache::new();
        let mode = bottom_mode(&cache);
        let point = FormPoint::from_polar(vec![(0.4, 0.3), (0.7, -1.1)]).unwrap();
        assert!(laplacian_residual(&mode, &point).unwrap() < 1e-12);
        let k = mode.tuple().indices()[0];
        let skewed = mode.with_factor(k, mode.factors()[k].with_scaled_lambda(1.01)).unwrap();
        let r = laplacian_residual(&skewed, &point).unwrap();
        assert!((r - 0.01 / 1.01).abs() < 1e-6, "{r}");
    }

    #[test]
    fn singular_chart_point_rejected() {
        let cache = ZeroCache::new();
        let mode = bottom_mode(&cache);
        let k = mode.tuple().indices()[0];
        let mut polar = vec![(0.3, 0.0), (0.3, 0.0)];
        polar[k].0 = 0.0;
        assert!(laplacian_residual(&mode, &FormPoint::from_polar(polar).unwrap()).is_err());
        // z = 0 in the constant holomorphic slot is fine
        let mut polar = vec![(0.3, 0.0), (0.3, 0.0)];
        polar[1 - k].0 = 0.0;
        assert!(laplacian_residual(&mode, &FormPoint::from_polar(polar).unwrap()).is_ok());
    }

    #[test]
    fn dbar_residuals() {
        let cache = ZeroCache::new();
        let n = ModeFactor::neumann(0, 1, 1.0, &cache).unwrap();
        assert!(factor_dbar_residual(&n, 0.7).unwrap() < 1e-11);
        let h = ModeFactor::holomorphic(5, 1.3).unwrap();
        assert!(factor_dbar_residual(&h, 2.1).unwrap() < 1e-14);
        let d = ModeFactor::dirichlet(0, 1, 1.0, &cache).unwrap();
        assert!(factor_dbar_residual(&d, 0.7).unwrap() > 1e-2);

        let mode = bottom_mode(&cache);
        let k = mode.tuple().indices()[0];
        assert!(dbar_boundary_residual(&mode, k, 0.0).is_err());
        assert!(dbar_boundary_residual(&mode, 1 - k, 0.0).unwrap() < 1e-15);
    }

    #[test]
    fn finite_difference_cross_check() {
        let cache = ZeroCache::new();
        let p = Polydisc::new(vec![1.0, 1.4]).unwrap();
        let point = FormPoint::from_polar(vec![(0.45, 0.8), (0.9, -2.0)]).unwrap();
        for mode in enumerate_modes(&p, 1, 8.0, &cache).unwrap() {
            let exact = box_coefficient(&mode, &point).unwrap();
            let fd = box_coefficient_fd(&mode, &point, 1e-5).unwrap();
            let scale = exact.norm().max(mode.value() * eval_coefficient(&mode, &point).unwrap().norm());
            assert!((exact - fd).norm() <= 1e-5 * scale.max(1e-3), "{exact} vs {fd}");
        }
    }
}
