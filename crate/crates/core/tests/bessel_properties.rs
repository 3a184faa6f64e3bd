use std::f64::consts::PI;
use std::sync::OnceLock;

use proptest::prelude::*;

use polyspec::bessel::{bessel_j, bessel_j_prime, bessel_j_second, EvalConfig};
use polyspec::disc_modes::{
    dirichlet_factors, neumann_factors, robin_residual, ModeFactor,
};
use polyspec::zeros::ZeroCache;

fn cache() -> &'static ZeroCache {
    static CACHE: OnceLock<ZeroCache> = OnceLock::new();
    CACHE.get_or_init(ZeroCache::new)
}

fn cfg() -> EvalConfig {
    EvalConfig::default()
}

proptest! {
    #[test]
    fn recurrence_residual(m in 0i32..=30, z in 1e-6f64..=60.0) {
        let c = cfg();
        let r = m as f64 * bessel_j(m, z, &c).unwrap()
            - 0.5 * z * (bessel_j(m + 1, z, &c).unwrap() + bessel_j(m - 1, z, &c).unwrap());
        prop_assert!(r.abs() < 1e-10, "residual {r:e}");
    }

    #[test]
    fn bessel_equation_residual(m in 0i32..=30, z in 0.1f64..=60.0) {
        let c = cfg();
        let mf = m as f64;
        let r = bessel_j_second(m, z, &c).unwrap()
            + bessel_j_prime(m, z, &c).unwrap() / z
            + (1.0 - mf * mf / (z * z)) * bessel_j(m, z, &c).unwrap();
        prop_assert!(r.abs() < 1e-9, "residual {r:e}");
    }

    #[test]
    fn derivative_identity(m in -40i32..=40, z in 0.1f64..=200.0) {
        // z J_{m-1} = z J'_m + m J_m
        let c = cfg();
        let lhs = z * bessel_j(m - 1, z, &c).unwrap();
        let rhs = z * bessel_j_prime(m, z, &c).unwrap() + m as f64 * bessel_j(m, z, &c).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-11 * z.max(1.0));
    }

    #[test]
    fn integral_representation(m in 0i32..=10, z in 0.0f64..=30.0) {
        let mut sum = 0.0;
        for l in 0..2048 {
            let th = 2.0 * PI * l as f64 / 2048.0;
            sum += (m as f64 * th - z * th.sin()).cos();
        }
        let got = bessel_j(m, z, &cfg()).unwrap();
        prop_assert!((got - sum / 2048.0).abs() < 1e-9);
    }

    #[test]
    fn parity_is_bit_identical(m in 0i32..=200, z in 0.0f64..=500.0) {
        let c = cfg();
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert_eq!(
            bessel_j(-m, z, &c).unwrap().to_bits(),
            (sign * bessel_j(m, z, &c).unwrap()).to_bits()
        );
    }

    #[test]
    fn interlacing(m in 0i32..=20, j in 1usize..=20) {
        let c = cache();
        let z = c.zero(m, j).unwrap();
        prop_assert!(z < c.zero(m + 1, j).unwrap());
        prop_assert!(c.zero(m + 1, j).unwrap() < c.zero(m, j + 1).unwrap());
        prop_assert!(c.zero(m, 1).unwrap() < c.zero(m + 1, 1).unwrap());
    }

    #[test]
    fn zeros_are_simple(m in -30i32..=30, j in 1usize..=30) {
        let z = cache().zero(m, j).unwrap();
        let c = cfg();
        prop_assert!(bessel_j(m, z, &c).unwrap().abs() < 1e-11);
        prop_assert!(bessel_j_prime(m, z, &c).unwrap().abs() > 1e-3);
    }

    #[test]
    fn robin_condition_holds(m in -12i32..=12, j in 1usize..=10, a in 0.2f64..5.0) {
        let f = ModeFactor::neumann(m, j, a, cache()).unwrap();
        prop_assert!(robin_residual(&f).unwrap() < 1e-10);
    }

    #[test]
    fn factor_lists_scale_with_radius(a in 0.3f64..3.0, lmax in 1.0f64..80.0) {
        let c = cache();
        let unit = dirichlet_factors(1.0, lmax, c).unwrap();
        let scaled = dirichlet_factors(a, lmax / (a * a), c).unwrap();
        prop_assert_eq!(unit.len(), scaled.len());
        for (u, s) in unit.iter().zip(&scaled) {
            prop_assert_eq!(u.key(), s.key());
            prop_assert!((u.lambda_k() - s.lambda_k() * a * a).abs() < 1e-12 * u.lambda_k());
        }
        let unit = neumann_factors(1.0, lmax, c).unwrap();
        let scaled = neumann_factors(a, lmax / (a * a), c).unwrap();
        prop_assert_eq!(unit.len(), scaled.len());
    }
}

#[test]
fn dirichlet_lists_pair_plus_and_minus_orders() {
    let list = dirichlet_factors(1.3, 120.0, cache()).unwrap();
    for f in &list {
        let m = f.angular_order();
        let mirror = list
            .iter()
            .find(|g| g.angular_order() == -m && g.radial_index() == f.radial_index())
            .expect("mirror factor present");
        assert_eq!(mirror.lambda_k(), f.lambda_k());
    }
}

#[test]
fn negative_holomorphic_exponent_is_rejected() {
    assert!(ModeFactor::holomorphic(-1, 1.0).is_err());
    assert!(ModeFactor::holomorphic(0, 1.0).is_ok());
}

#[test]
fn neumann_examples() {
    let c = cache();
    let list = neumann_factors(1.0, 6.0, c).unwrap();
    assert_eq!(list.len(), 1);
    assert_eq!(list[0].angular_order(), -1);
    assert!((list[0].lambda_k() - 5.783185962946785).abs() < 1e-12);
    let list = neumann_factors(1.0, 15.0, c).unwrap();
    let orders: Vec<i32> = list.iter().map(|f| f.angular_order()).collect();
    assert_eq!(orders, vec![-1, -2, 0]);
    assert!((list[2].lambda_k() - 14.681970642123893).abs() < 1e-11);
}
