//! Seeded self-check suites behind the `verify` command.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::brute_force::{brute_force_spectrum, scan_zeros};
use super::fd::{fd_convergence, FdBoundary};
use super::orthogonality::{dirichlet_norm_closed_form, quad_inner_product, radial_gram};
use super::compare_with_oracle;
use crate::bessel::oracle::oracle_f64;
use crate::bessel::{bessel_j, bessel_j_with_derivatives};
use crate::disc_modes::{radial_profile, robin_residual, ModeFactor};
use crate::eigenforms::{dbar_boundary_residual, eval_coefficient, laplacian_residual, FormPoint};
use crate::error::{Error, Result};
use crate::spectrum::{enumerate_modes, Polydisc};
use crate::zeros::ZeroCache;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Bessel,
    Zeros,
    Modes,
    SpectrumOracle,
    Forms,
    Fd,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Bessel,
        Suite::Zeros,
        Suite::Modes,
        Suite::SpectrumOracle,
        Suite::Forms,
        Suite::Fd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Bessel => "bessel",
            Suite::Zeros => "zeros",
            Suite::Modes => "modes",
            Suite::SpectrumOracle => "spectrum-oracle",
            Suite::Forms => "forms",
            Suite::Fd => "fd",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    /// Worst observed error (or other measured quantity).
    pub measured: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl CheckResult {
    fn bound(suite: Suite, name: &str, measured: f64, tolerance: f64, detail: String) -> Self {
        CheckResult {
            suite,
            name: name.to_string(),
            passed: measured <= tolerance,
            measured,
            tolerance,
            detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn run(suites: &[Suite], seed: u64, cache: &ZeroCache) -> Result<Self> {
        let mut checks = Vec::new();
        for &s in suites {
            checks.extend(run_suite(s, seed, cache)?);
        }
        Ok(VerificationReport { seed, checks })
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{} {}/{}: measured {:.3e}, tolerance {:.1e} ({})\n",
                if c.passed { "PASS" } else { "FAIL" },
                c.suite,
                c.name,
                c.measured,
                c.tolerance,
                c.detail
            ));
        }
        out
    }
}

/// Runs one suite with a deterministic RNG derived from `seed`.
pub fn run_suite(suite: Suite, seed: u64, cache: &ZeroCache) -> Result<Vec<CheckResult>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (suite as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    match suite {
        Suite::Bessel => bessel_suite(&mut rng, cache),
        Suite::Zeros => zeros_suite(&mut rng, cache),
        Suite::Modes => modes_suite(&mut rng, cache),
        Suite::SpectrumOracle => spectrum_suite(&mut rng, cache),
        Suite::Forms => forms_suite(&mut rng, cache),
        Suite::Fd => fd_suite(&mut rng, cache),
    }
}

fn bessel_suite(rng: &mut ChaCha8Rng, cache: &ZeroCache) -> Result<Vec<CheckResult>> {
    let cfg = cache.config();
    let mut worst = 0.0f64;
    let mut at = (0, 0.0);
    for _ in 0..24 {
        let m = rng.gen_range(-40..=40);
        let z = rng.gen_range(0.0..60.0);
        let ours = bessel_j(m, z, cfg)?;
        let exact = oracle_f64(m, z);
        // error in units of the allowed bound: 1e-12 relative, or 1e-13
        // absolute where |J| <= 1e-3
        let err = if exact.abs() > 1e-3 {
            (ours - exact).abs() / exact.abs() / 1e-12
        } else {
            (ours - exact).abs() / 1e-13
        };
        if err > worst {
            worst = err;
            at = (m, z);
        }
    }
    let oracle = CheckResult::bound(
        Suite::Bessel,
        "exact-oracle",
        worst,
        1.0,
        format!("error / allowed bound, worst at m={}, z={:.6}", at.0, at.1),
    );

    let mut rec = 0.0f64;
    for _ in 0..64 {
        let m = rng.gen_range(-150..=150);
        let z = rng.gen_range(0.5..400.0);
        let a = bessel_j(m - 1, z, cfg)?;
        let b = bessel_j(m, z, cfg)?;
        let c = bessel_j(m + 1, z, cfg)?;
        let scale = a.abs().max(b.abs()).max(c.abs()).max(1e-300);
        rec = rec.max((a + c - 2.0 * m as f64 / z * b).abs() / scale);
    }
    let recurrence = CheckResult::bound(Suite::Bessel, "recurrence", rec, 1e-10, "64 samples".into());

    let mut ode = 0.0f64;
    for _ in 0..64 {
        let m = rng.gen_range(-60..=60);
        let z = rng.gen_range(0.5..200.0);
        let [j, d1, d2] = bessel_j_with_derivatives(m, z, cfg)?;
        let mf = m as f64;
        let scale = (z * z * j).abs().max((z * d1).abs()).max((mf * mf * j).abs()).max(1e-300);
        ode = ode.max((z * z * d2 + z * d1 + (z * z - mf * mf) * j).abs() / scale);
    }
    let equation = CheckResult::bound(Suite::Bessel, "bessel-equation", ode, 1e-10, "64 samples".into());

    let mut parity_ok = true;
    for _ in 0..32 {
        let m = rng.gen_range(0..=200);
        let z = rng.gen_range(0.0..500.0);
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        parity_ok &= bessel_j(-m, z, cfg)? == sign * bessel_j(m, z, cfg)?;
    }
    let parity = CheckResult {
        suite: Suite::Bessel,
        name: "parity".into(),
        passed: parity_ok,
        measured: if parity_ok { 0.0 } else { 1.0 },
        tolerance: 0.0,
        detail: "J_{-m} = (-1)^m J_m bit for bit".into(),
    };
    Ok(vec![oracle, recurrence, equation, parity])
}

fn zeros_suite(rng: &mut ChaCha8Rng, cache: &ZeroCache) -> Result<Vec<CheckResult>> {
    let cfg = cache.config();
    let mut residual = 0.0f64;
    let mut scan = 0.0f64;
    let mut interlacing = true;
    for _ in 0..16 {
        let m = rng.gen_range(0..=30);
        let j = rng.gen_range(1..=12);
        let z = cache.zero(m, j)?;
        let [v, d, _] = bessel_j_with_derivatives(m, z, cfg)?;
        residual = residual.max((v / d).abs() / z);
        let independent = scan_zeros(m as u32, j)[j - 1];
        scan = scan.max((z - independent).abs() / z);
        interlacing &= z < cache.zero(m + 1, j)? && cache.zero(m + 1, j)? < cache.zero(m, j + 1)?;
    }
    Ok(vec![
        CheckResult::bound(
            Suite::Zeros,
            "newton-step",
            residual,
            1e-14,
            "Newton correction |J_m/J'_m| relative to λ".into(),
        ),
        CheckResult::bound(Suite::Zeros, "scan-agreement", scan, 1e-12, "trapezoid-rule scan".into()),
        CheckResult {
            suite: Suite::Zeros,
            name: "interlacing".into(),
            passed: interlacing,
            measured: if interlacing { 0.0 } else { 1.0 },
            tolerance: 0.0,
            detail: "λ_{m,j} < λ_{m+1,j} < λ_{m,j+1}".into(),
        },
    ])
}

fn modes_suite(rng: &mut ChaCha8Rng, cache: &ZeroCache) -> Result<Vec<CheckResult>> {
    let mut robin = 0.0f64;
    let mut boundary = 0.0f64;
    for _ in 0..16 {
        let a = rng.gen_range(0.5..3.0);
        let m = rng.gen_range(-6..=6);
        let j = rng.gen_range(1..=6);
        let n = ModeFactor::neumann(m, j, a, cache)?;
        robin = robin.max(robin_residual(&n)?);
        let d = ModeFactor::dirichlet(m, j, a, cache)?;
        boundary = boundary.max(radial_profile(&d, a)?.abs());
    }
    let mut off = 0.0f64;
    let mut diag = 0.0f64;
    for _ in 0..8 {
        let m = rng.gen_range(0..=5);
        let j = rng.gen_range(1..=5);
        let k = rng.gen_range(1..=5);
        let v = quad_inner_product(m, j, k, cache)?;
        if j == k {
            diag = diag.max((v - dirichlet_norm_closed_form(m, j, cache)?).abs());
        } else {
            off = off.max(v.abs());
        }
    }
    let m = rng.gen_range(0..=5);
    let gram = radial_gram(m, 12, cache)?;
    Ok(vec![
        CheckResult::bound(Suite::Modes, "robin-condition", robin, 1e-10, "16 random factors".into()),
        CheckResult::bound(Suite::Modes, "dirichlet-boundary", boundary, 1e-11, "16 random factors".into()),
        CheckResult::bound(Suite::Modes, "orthogonality", off, 1e-10, "off-diagonal entries".into()),
        CheckResult::bound(Suite::Modes, "norms", diag, 1e-8, "diagonal vs closed form".into()),
        CheckResult::bound(
            Suite::Modes,
            "neumann-gram",
            gram.max_off_diagonal(),
            1e-9,
            format!("12-element basis, m={m}"),
        ),
    ])
}

fn spectrum_suite(rng: &mut ChaCha8Rng, cache: &ZeroCache) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for trial in 0..2 {
        let n = 2 + trial;
        let radii: Vec<f64> = (0..n).map(|_| rng.gen_range(0.8..1.6)).collect();
        let q = rng.gen_range(1..n);
        let lambda_max = 12.0;
        let p = Polydisc::new(radii.clone())?;
        let modes = enumerate_modes(&p, q, lambda_max, cache)?;
        let oracle = brute_force_spectrum(&p, q, lambda_max, 24, 10)?;
        let cmp = compare_with_oracle(&modes, &oracle);
        let mut check = CheckResult::bound(
            Suite::SpectrumOracle,
            &format!("brute-force-n{n}"),
            cmp.max_relative_error,
            1e-10,
            format!(
                "radii {radii:?}, q={q}, {} modes, {} missing, {} extra",
                cmp.enumerated,
                cmp.missing.len(),
                cmp.extra.len()
            ),
        );
        check.passed &= cmp.missing.is_empty() && cmp.extra.is_empty();
        out.push(check);
    }
    Ok(out)
}

fn forms_suite(rng: &mut ChaCha8Rng, cache: &ZeroCache) -> Result<Vec<CheckResult>> {
    let p = Polydisc::new(vec![1.0, 1.0])?;
    let modes = enumerate_modes(&p, 1, 30.0, cache)?;
    let mut pde = 0.0f64;
    let mut dirichlet = 0.0f64;
    let mut dbar = 0.0f64;
    for _ in 0..12 {
        let mode = &modes[rng.gen_range(0..modes.len())];
        let pt: Vec<(f64, f64)> = (0..2)
            .map(|_| (rng.gen_range(0.05..0.95), rng.gen_range(0.0..2.0 * PI)))
            .collect();
        let point = FormPoint::from_polar(pt.clone())?;
        pde = pde.max(laplacian_residual(mode, &point)?);
        let k_in = mode.tuple().indices()[0];
        let k_out = 1 - k_in;
        let theta = rng.gen_range(0.0..2.0 * PI);
        let mut on_edge = pt.clone();
        on_edge[k_in] = (1.0, theta);
        let scale = eval_coefficient(mode, &FormPoint::from_polar(pt)?)?.norm().max(1.0);
        dirichlet = dirichlet.max(eval_coefficient(mode, &FormPoint::from_polar(on_edge)?)?.norm() / scale);
        dbar = dbar.max(dbar_boundary_residual(mode, k_out, theta)?);
    }
    Ok(vec![
        CheckResult::bound(Suite::Forms, "eigen-equation", pde, 1e-8, "12 random modes and points".into()),
        CheckResult::bound(Suite::Forms, "dirichlet-boundary", dirichlet, 1e-11, "k in J".into()),
        CheckResult::bound(Suite::Forms, "dbar-boundary", dbar, 1e-10, "k not in J".into()),
    ])
}

fn fd_suite(rng: &mut ChaCha8Rng, cache: &ZeroCache) -> Result<Vec<CheckResult>> {
    let m = rng.gen_range(-2..=2);
    let mut out = Vec::new();
    for bc in [FdBoundary::Dirichlet, FdBoundary::DbarNeumann] {
        let study = fd_convergence(m, bc, 1.0, 3, &[500, 1000, 2000, 4000], cache)?;
        let worst = study
            .iter()
            .map(|s| s.extrapolation_error())
            .fold(0.0f64, f64::max);
        let order_dev = study
            .iter()
            .filter_map(|s| s.observed_order)
            .map(|o| (o - 2.0).abs())
            .fold(0.0f64, f64::max);
        let tag = match bc {
            FdBoundary::Dirichlet => "dirichlet",
            FdBoundary::DbarNeumann => "dbar-neumann",
        };
        out.push(CheckResult::bound(
            Suite::Fd,
            &format!("{tag}-richardson"),
            worst,
            1e-6,
            format!("m={m}, first 3 eigenvalues"),
        ));
        out.push(CheckResult::bound(
            Suite::Fd,
            &format!("{tag}-order"),
            order_dev,
            0.3,
            format!("m={m}, |observed order - 2|"),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn quick_suites_pass() {
        let cache = ZeroCache::new();
        for s in [Suite::Bessel, Suite::Zeros, Suite::Modes, Suite::Forms] {
            let checks = run_suite(s, 7, &cache).unwrap();
            for c in &checks {
                assert!(c.passed, "{c:?}");
            }
        }
    }
}
