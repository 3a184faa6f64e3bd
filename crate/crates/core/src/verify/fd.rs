//! Finite-difference oracle for the two radial eigenproblems
//!
//! `-(1/r)(r S')' + (m²/r²) S = λ S` on `(0, a)`, `S ~ r^{|m|}` at 0, with
//! either `S(a) = 0` or the ∂̄ condition `a S'(a) = m S(a)`.
//!
//! Cell-centred grid `r_i = (i - 1/2) h`: the flux `r S'` vanishes at the
//! first face, so the origin needs no special stencil. The outer condition
//! uses a ghost cell. The weighted problem `A S = λ diag(r) S` is symmetrised
//! with `diag(r)^{-1/2}` and solved by Sturm-sequence bisection.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::zeros::ZeroCache;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FdBoundary {
    Dirichlet,
    DbarNeumann,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdConfig {
    pub grid_points: usize,
    pub radius: f64,
    pub angular_order: i32,
    pub bc: FdBoundary,
}

impl FdConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_points < 64 {
            return Err(Error::InvalidArgument(format!(
                "need at least 64 grid points, got {}",
                self.grid_points
            )));
        }
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return Err(Error::InvalidArgument(format!("radius {} is not positive", self.radius)));
        }
        Ok(())
    }
}

/// Symmetric tridiagonal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl SymTridiagonal {
    /// Number of eigenvalues strictly below `x` (Sturm count via the `LDLᵀ`
    /// pivots of `T - x I`).
    pub fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut d = 1.0;
        for i in 0..self.diag.len() {
            let coupling = if i == 0 { 0.0 } else { self.off[i - 1] * self.off[i - 1] / d };
            d = self.diag[i] - x - coupling;
            if d == 0.0 {
                d = -f64::EPSILON * (self.diag[i].abs() + x.abs()).max(f64::MIN_POSITIVE);
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let mut radius = 0.0;
            if i > 0 {
                radius += self.off[i - 1].abs();
            }
            if i + 1 < n {
                radius += self.off[i].abs();
            }
            lo = lo.min(self.diag[i] - radius);
            hi = hi.max(self.diag[i] + radius);
        }
        (lo, hi)
    }

    /// The `k`-th smallest eigenvalue (0-based) by bisection.
    pub fn eigenvalue(&self, k: usize) -> Result<f64> {
        if k >= self.diag.len() {
            return Err(Error::InvalidArgument(format!("eigenvalue index {k} out of range")));
        }
        let (mut lo, mut hi) = self.gershgorin();
        for _ in 0..400 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                return Ok(mid);
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Err(Error::Internal(format!("bisection for eigenvalue {k} did not converge")))
    }
}

/// The symmetrised discretisation for `cfg`.
pub fn radial_matrix(cfg: &FdConfig) -> Result<SymTridiagonal> {
    cfg.validate()?;
    let n = cfg.grid_points;
    let a = cfg.radius;
    let h = a / n as f64;
    let h2 = h * h;
    let m = cfg.angular_order as f64;
    let centre = |i: usize| (i as f64 + 0.5) * h; // i is 0-based
    let face = |i: usize| i as f64 * h; // face between cells i-1 and i

    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n - 1];
    for i in 0..n {
        let r = centre(i);
        let inner = face(i) / h2;
        let outer = if i + 1 < n {
            face(i + 1) / h2
        } else {
            match cfg.bc {
                // S_{N+1} = -S_N
                FdBoundary::Dirichlet => 2.0 * a / h2,
                // (S_{N+1} - S_N)/h = (m/a)(S_{N+1} + S_N)/2
                FdBoundary::DbarNeumann => {
                    let g = m * h / (2.0 * a);
                    -m / ((1.0 - g) * h)
                }
            }
        };
        diag[i] = (inner + outer + m * m / r) / r;
        if i + 1 < n {
            off[i] = -face(i + 1) / h2 / (r * centre(i + 1)).sqrt();
        }
    }
    Ok(SymTridiagonal { diag, off })
}

/// Smallest `count` eigenvalues (`count <= 10`), ascending.
pub fn fd_radial_eigs(cfg: &FdConfig, count: usize) -> Result<Vec<f64>> {
    if count > 10 {
        return Err(Error::InvalidArgument(format!("count {count} exceeds 10")));
    }
    let t = radial_matrix(cfg)?;
    (0..count).map(|k| t.eigenvalue(k)).collect()
}

/// The exact eigenvalues the discretisation approximates.
pub fn closed_form_eigs(
    m: i32,
    bc: FdBoundary,
    radius: f64,
    count: usize,
    cache: &ZeroCache,
) -> Result<Vec<f64>> {
    let scaled = |z: f64| (z / radius) * (z / radius);
    match bc {
        FdBoundary::Dirichlet => (1..=count).map(|j| Ok(scaled(cache.zero(m, j)?))).collect(),
        FdBoundary::DbarNeumann => {
            let mut out = Vec::with_capacity(count);
            if m >= 0 && count > 0 {
                out.push(0.0);
            }
            let mut j = 1;
            while out.len() < count {
                out.push(scaled(cache.zero(m + 1, j)?));
                j += 1;
            }
            Ok(out)
        }
    }
}

/// Convergence study of one eigenvalue over a sequence of grids.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenConvergence {
    pub index: usize,
    pub closed_form: f64,
    pub grids: Vec<usize>,
    pub values: Vec<f64>,
    /// Least-squares slope of `-log|error|` against `log N`; `None` when the
    /// closed form is 0.
    pub observed_order: Option<f64>,
    /// Second-order Richardson extrapolation from the two finest grids.
    pub extrapolated: f64,
}

impl EigenConvergence {
    /// Relative error of the extrapolation; absolute when the closed form is 0.
    pub fn extrapolation_error(&self) -> f64 {
        let err = (self.extrapolated - self.closed_form).abs();
        if self.closed_form == 0.0 {
            err
        } else {
            err / self.closed_form.abs()
        }
    }
}

/// Runs the discretisation on each grid size (ascending, each twice the
/// previous) and compares the first `count` eigenvalues with their closed forms.
pub fn fd_convergence(
    m: i32,
    bc: FdBoundary,
    radius: f64,
    count: usize,
    grids: &[usize],
    cache: &ZeroCache,
) -> Result<Vec<EigenConvergence>> {
    if grids.len() < 2 || grids.windows(2).any(|w| w[1] != 2 * w[0]) {
        return Err(Error::InvalidArgument(
            "grids must have at least two sizes, each doubling the previous".into(),
        ));
    }
    let exact = closed_form_eigs(m, bc, radius, count, cache)?;
    let mut table = Vec::with_capacity(grids.len());
    for &n in grids {
        let cfg = FdConfig {
            grid_points: n,
            radius,
            angular_order: m,
            bc,
        };
        table.push(fd_radial_eigs(&cfg, count)?);
    }
    Ok((0..count)
        .map(|k| {
            let values: Vec<f64> = table.iter().map(|row| row[k]).collect();
            let closed_form = exact[k];
            let observed_order = (closed_form != 0.0)
                .then(|| {
                    let pts: Vec<(f64, f64)> = grids
                        .iter()
                        .zip(&values)
                        .map(|(&n, &v)| ((n as f64).ln(), (v - closed_form).abs().ln()))
                        .collect();
                    -least_squares_slope(&pts)
                });
            let fine = values[values.len() - 1];
            let coarse = values[values.len() - 2];
            EigenConvergence {
                index: k,
                closed_form,
                grids: grids.to_vec(),
                values,
                observed_order,
                extrapolated: (4.0 * fine - coarse) / 3.0,
            }
        })
        .collect())
}

fn least_squares_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}
