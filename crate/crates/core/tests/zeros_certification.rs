use std::f64::consts::PI;
use std::time::Instant;

use polyspec::bessel::{bessel_j, bessel_j_prime, EvalConfig};
use polyspec::zeros::ZeroCache;

/// Reference zeros from mpmath `besseljzero` at 25 digits.
#[test]
fn reference_zeros() {
    let cache = ZeroCache::new();
    let cases: [(i32, usize, f64); 9] = [
        (0, 20, 62.048469190227169883),
        (1, 1, 3.8317059702075123156),
        (2, 5, 17.959819494987826455),
        (7, 3, 18.287582832481726446),
        (20, 20, 91.263548162504386272),
        (50, 1, 57.116899160119174119),
        (150, 1, 160.05457959243035999),
        (100, 30, 228.26619099418094497),
        (0, 158, 495.58649332966086702),
    ];
    for (m, j, expected) in cases {
        let got = cache.zero(m, j).unwrap();
        assert!((got - expected).abs() < 1e-12 * expected.max(1.0), "λ_{m},{j} = {got} vs {expected}");
    }
}

#[test]
fn first_zero_exceeds_order_up_to_150() {
    let cache = ZeroCache::new();
    let start = Instant::now();
    let mut prev = 0.0;
    for m in 0..=150 {
        let z = cache.zero(m, 1).unwrap();
        assert!(z > m as f64, "λ_{m},1 = {z}");
        assert!(z > prev);
        prev = z;
    }
    eprintln!("orders 0..=150 in {:?}", start.elapsed());
}

#[test]
fn j0_zeros_in_brackets_and_simple() {
    let cache = ZeroCache::new();
    let cfg = EvalConfig::default();
    for j in 1..=20 {
        let z = cache.zero(0, j).unwrap();
        assert!(z > (j as f64 - 0.5) * PI && z < j as f64 * PI);
    }
    for m in 0..=20 {
        for j in 1..=20 {
            let z = cache.zero(m, j).unwrap();
            assert!(bessel_j(m, z, &cfg).unwrap().abs() < 1e-11);
            assert!(bessel_j_prime(m, z, &cfg).unwrap().abs() > 1e-3);
        }
    }
}

#[test]
fn concurrent_lookups_agree() {
    let cache = ZeroCache::new();
    let results: Vec<Vec<f64>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..8)
            .map(|t| {
                let cache = &cache;
                s.spawn(move || (0..12).map(|m| cache.zero((m + t) % 12, 5).unwrap()).collect::<Vec<_>>())
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let fresh = ZeroCache::new();
    for (t, row) in results.iter().enumerate() {
        for (i, &v) in row.iter().enumerate() {
            let m = ((i + t) % 12) as i32;
            assert_eq!(v, fresh.zero(m, 5).unwrap());
        }
    }
}
