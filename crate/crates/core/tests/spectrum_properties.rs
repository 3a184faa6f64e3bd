use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use proptest::prelude::*;

use polyspec::eigenforms::{eval_coefficient, FormPoint};
use polyspec::spectrum::{
    assemble_spectrum, bottom, counting, eigenvalue_of, enumerate_modes, Polydisc, QTuple,
    SpectrumOptions,
};
use polyspec::verify::{brute_force_spectrum, compare_with_oracle, radial_gram};
use polyspec::zeros::ZeroCache;

const BOTTOM_11: f64 = 1.445796490736696;

fn cache() -> &'static ZeroCache {
    static CACHE: OnceLock<ZeroCache> = OnceLock::new();
    CACHE.get_or_init(ZeroCache::new)
}

fn signature(radii: Vec<f64>, q: usize, lmax: f64) -> Vec<(f64, usize, bool)> {
    let p = Polydisc::new(radii).unwrap();
    assemble_spectrum(&p, q, lmax, &SpectrumOptions::default(), cache())
        .unwrap()
        .into_iter()
        .map(|s| (s.value, s.finite_multiplicity, s.infinite))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn stored_values_match_factors(a in 0.5f64..2.0, b in 0.5f64..2.0, lmax in 2.0f64..20.0) {
        let p = Polydisc::new(vec![a, b]).unwrap();
        for mode in enumerate_modes(&p, 1, lmax, cache()).unwrap() {
            prop_assert_eq!(eigenvalue_of(mode.factors()).to_bits(), mode.value().to_bits());
            prop_assert!(mode.value() <= lmax);
        }
    }

    #[test]
    fn mirror_symmetry(a in 0.5f64..2.0, b in 0.5f64..2.0, lmax in 2.0f64..25.0) {
        let ab = signature(vec![a, b], 1, lmax);
        let ba = signature(vec![b, a], 1, lmax);
        prop_assert_eq!(ab.len(), ba.len());
        for (x, y) in ab.iter().zip(&ba) {
            prop_assert!((x.0 - y.0).abs() <= 1e-12 * x.0);
            prop_assert_eq!((x.1, x.2), (y.1, y.2));
        }
    }

    #[test]
    fn three_variable_mirror(a in 0.7f64..1.5, b in 0.7f64..1.5, q in 1usize..=2) {
        let x = signature(vec![a, a, b], q, 12.0);
        let y = signature(vec![a, b, a], q, 12.0);
        let z = signature(vec![b, a, a], q, 12.0);
        prop_assert_eq!(x.len(), y.len());
        prop_assert_eq!(x.len(), z.len());
        for ((u, v), w) in x.iter().zip(&y).zip(&z) {
            prop_assert!((u.0 - v.0).abs() <= 1e-12 * u.0 && (u.0 - w.0).abs() <= 1e-12 * u.0);
            prop_assert_eq!((u.1, u.2), (v.1, v.2));
            prop_assert_eq!((u.1, u.2), (w.1, w.2));
        }
    }

    #[test]
    fn bottom_monotone_in_radii(
        radii in prop::collection::vec(0.3f64..3.0, 2..=4),
        k in 0usize..4,
        grow in 1.0f64..3.0,
        q_seed in 0usize..3,
    ) {
        let n = radii.len();
        let q = 1 + q_seed % (n - 1);
        let k = k % n;
        let before = bottom(&Polydisc::new(radii.clone()).unwrap(), q, cache()).unwrap();
        let mut larger = radii.clone();
        larger[k] *= grow;
        let after = bottom(&Polydisc::new(larger).unwrap(), q, cache()).unwrap();
        prop_assert!(after.value <= before.value * (1.0 + 1e-15));
        prop_assert!(after.value > 0.0);
    }

    #[test]
    fn bottom_is_first_point_and_infinite(radii in prop::collection::vec(0.3f64..3.0, 2..=3), q_seed in 0usize..2) {
        let n = radii.len();
        let q = 1 + q_seed % (n - 1);
        let p = Polydisc::new(radii).unwrap();
        let b = bottom(&p, q, cache()).unwrap();
        let points = assemble_spectrum(&p, q, b.value * 1.5, &SpectrumOptions::default(), cache()).unwrap();
        prop_assert!((points[0].value - b.value).abs() <= 1e-12 * b.value);
        prop_assert!(points[0].infinite);
        let witness_has_tuple = points[0].witnesses.iter().any(|w| w.tuple() == &b.tuple);
        prop_assert!(witness_has_tuple);
    }

    #[test]
    fn shrinking_group_tol_only_splits(a in 0.5f64..2.0, b in 0.5f64..2.0, shrink in 1.0f64..1e4) {
        let p = Polydisc::new(vec![a, b]).unwrap();
        let coarse = SpectrumOptions { group_tol: 1e-6, ..Default::default() };
        let fine = SpectrumOptions { group_tol: 1e-6 / shrink, ..Default::default() };
        let x = assemble_spectrum(&p, 1, 15.0, &coarse, cache()).unwrap();
        let y = assemble_spectrum(&p, 1, 15.0, &fine, cache()).unwrap();
        prop_assert!(y.len() >= x.len());
        let total = |v: &[polyspec::spectrum::SpectralPoint]| v.iter().map(|s| s.mode_count).sum::<usize>();
        prop_assert_eq!(total(&x), total(&y));
        // every fine point sits inside exactly one coarse point's value range
        let mut i = 0;
        let mut used = 0;
        for s in &y {
            while used == x[i].mode_count {
                i += 1;
                used = 0;
            }
            used += s.mode_count;
            prop_assert!(used <= x[i].mode_count);
        }
    }

    #[test]
    fn neumann_gram_is_orthogonal(m in 0i32..=6) {
        let g = radial_gram(m, 12, cache()).unwrap();
        prop_assert!(g.max_off_diagonal() < 1e-9);
        prop_assert!(g.min_diagonal() > 0.0);
    }
}

#[test]
fn enumeration_examples() {
    let p = Polydisc::new(vec![1.0, 1.0]).unwrap();
    let c = cache();
    assert!(enumerate_modes(&p, 1, 1.0, c).unwrap().is_empty());
    let modes = enumerate_modes(&p, 1, 1.5, c).unwrap();
    assert_eq!(modes.len(), 2);
    assert!(modes.iter().all(|m| (m.value() - BOTTOM_11).abs() < 1e-13));
    let points = assemble_spectrum(&p, 1, 1.5, &SpectrumOptions::default(), c).unwrap();
    assert_eq!(points.len(), 1);
    assert_eq!(points[0].finite_multiplicity, 0);
    assert!(points[0].infinite);

    let p12 = Polydisc::new(vec![1.0, 2.0]).unwrap();
    let points = assemble_spectrum(&p12, 1, 0.5, &SpectrumOptions::default(), c).unwrap();
    assert!((points[0].value - 0.361449122684174).abs() < 1e-13);
    assert_eq!(points[0].witnesses[0].tuple().one_based(), vec![2]);
    assert!(assemble_spectrum(&p12, 1, 0.3, &SpectrumOptions::default(), c).unwrap().is_empty());
}

#[test]
fn bottom_examples() {
    let c = cache();
    let b = bottom(&Polydisc::new(vec![1.0, 1.0]).unwrap(), 1, c).unwrap();
    assert_eq!(b.tuple.one_based(), vec![1]);
    assert!((b.value - BOTTOM_11).abs() < 1e-13);
    let b = bottom(&Polydisc::new(vec![1.0, 2.0, 3.0]).unwrap(), 2, c).unwrap();
    assert_eq!(b.tuple.one_based(), vec![2, 3]);
    assert!((b.value - BOTTOM_11 * (0.25 + 1.0 / 9.0)).abs() < 1e-13);
    assert!(bottom(&Polydisc::new(vec![1.0, 1.0]).unwrap(), 2, c).is_err());
    assert!(bottom(&Polydisc::new(vec![1.0, 1.0]).unwrap(), 0, c).is_err());
}

#[test]
fn counting_examples() {
    let p = Polydisc::new(vec![1.0, 1.0]).unwrap();
    let opts = SpectrumOptions::default();
    let c = counting(&p, 1, 1.5, &opts, cache()).unwrap();
    assert_eq!(c.finite_count, 0);
    assert_eq!(c.essential_values.len(), 1);
    let c = counting(&p, 1, 3.0, &opts, cache()).unwrap();
    assert_eq!(c.finite_count, 2);
    assert_eq!(c.essential_values.len(), 1);
    let c = counting(&p, 1, 1.0, &opts, cache()).unwrap();
    assert_eq!((c.finite_count, c.essential_values.len()), (0, 0));
}

#[test]
fn brute_force_examples() {
    let c = cache();
    for radii in [vec![1.0, 1.0], vec![1.0, 2f64.sqrt()]] {
        let p = Polydisc::new(radii).unwrap();
        let modes = enumerate_modes(&p, 1, 10.0, c).unwrap();
        let oracle = brute_force_spectrum(&p, 1, 10.0, 20, 8).unwrap();
        assert!(compare_with_oracle(&modes, &oracle).agrees(1e-10));
    }
    let p = Polydisc::new(vec![1.0, 1.0]).unwrap();
    assert!(brute_force_spectrum(&p, 1, 1.0, 20, 8).unwrap().is_empty());
}

/// Modes with different angular-order tuples are orthogonal over the torus.
#[test]
fn angular_orthogonality_on_torus() {
    let p = Polydisc::new(vec![1.0, 1.0]).unwrap();
    let modes = enumerate_modes(&p, 1, 8.0, cache()).unwrap();
    let radii = [0.45, 0.8];
    let n = 512;
    let mut worst = 0.0f64;
    for (i, x) in modes.iter().enumerate() {
        for y in &modes[i + 1..] {
            let ox: Vec<i32> = x.factors().iter().map(|f| f.angular_order()).collect();
            let oy: Vec<i32> = y.factors().iter().map(|f| f.angular_order()).collect();
            if ox == oy {
                continue;
            }
            // the angular integral factorises, so integrate each circle separately
            let mut total = Complex64::new(1.0, 0.0);
            for k in 0..2 {
                let mut s = Complex64::new(0.0, 0.0);
                for l in 0..n {
                    let th = 2.0 * PI * l as f64 / n as f64;
                    let mut pt = vec![(radii[0], 0.0), (radii[1], 0.0)];
                    pt[k].1 = th;
                    let point = FormPoint::from_polar(pt).unwrap();
                    s += eval_coefficient(x, &point).unwrap() * eval_coefficient(y, &point).unwrap().conj();
                }
                total *= s / n as f64;
            }
            worst = worst.max(total.norm());
        }
    }
    assert!(worst < 1e-10, "{worst:e}");
}

#[test]
fn tuple_validation() {
    assert!(QTuple::new(vec![1, 0], 2).is_err());
    assert!(QTuple::new(vec![2], 2).is_err());
    assert_eq!(QTuple::from_one_based(&[1, 3], 3).unwrap().indices(), &[0, 2]);
}
