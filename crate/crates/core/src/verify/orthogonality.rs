//! Radial orthogonality checks by Gauss–Legendre quadrature.

use serde::{Deserialize, Serialize};

use crate::bessel::{bessel_j, EvalConfig};
use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;
use crate::zeros::ZeroCache;

/// Nodes used for all radial inner products on `[0, 1]`.
pub const RADIAL_NODES: usize = 256;

fn radial_rule() -> (Vec<f64>, Vec<f64>) {
    GaussLegendre::new(RADIAL_NODES).on_interval(0.0, 1.0)
}

/// `∫_0^1 r J_m(λ_{m,j} r) J_m(λ_{m,k} r) dr` (`j, k` 1-based).
pub fn quad_inner_product(m: i32, j: usize, k: usize, cache: &ZeroCache) -> Result<f64> {
    let cfg = cache.config();
    let (x, w) = radial_rule();
    let zj = cache.zero(m, j)?;
    let zk = cache.zero(m, k)?;
    let mut sum = 0.0;
    for (r, w) in x.iter().zip(&w) {
        sum += w * r * bessel_j(m, zj * r, cfg)? * bessel_j(m, zk * r, cfg)?;
    }
    Ok(sum)
}

/// Closed form of the diagonal: `J_{m+1}(λ_{m,j})² / 2`.
pub fn dirichlet_norm_closed_form(m: i32, j: usize, cache: &ZeroCache) -> Result<f64> {
    let z = cache.zero(m, j)?;
    let v = bessel_j(m + 1, z, cache.config())?;
    Ok(0.5 * v * v)
}

/// Gram matrix of the ∂̄-Neumann radial basis for angular order `m >= 0`:
/// `r^m` followed by `J_m(λ_{m+1,j} r)`, `j = 1..size-1`, weight `r` on `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialGram {
    pub m: i32,
    pub entries: Vec<Vec<f64>>,
}

impl RadialGram {
    pub fn max_off_diagonal(&self) -> f64 {
        let n = self.entries.len();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    worst = worst.max(self.entries[i][j].abs());
                }
            }
        }
        worst
    }

    pub fn min_diagonal(&self) -> f64 {
        (0..self.entries.len())
            .map(|i| self.entries[i][i])
            .fold(f64::INFINITY, f64::min)
    }
}

pub fn radial_gram(m: i32, size: usize, cache: &ZeroCache) -> Result<RadialGram> {
    if m < 0 {
        return Err(Error::InvalidArgument(format!(
            "the polynomial radial mode exists only for m >= 0, got {m}"
        )));
    }
    if size < 2 {
        return Err(Error::InvalidArgument("gram matrix needs at least 2 elements".into()));
    }
    let cfg: &EvalConfig = cache.config();
    let (x, w) = radial_rule();
    let zeros = cache.first_zeros(m + 1, size - 1)?;
    // samples[e][i]: basis element e at node i
    let mut samples = Vec::with_capacity(size);
    samples.push(x.iter().map(|r| r.powi(m)).collect::<Vec<f64>>());
    for z in &zeros {
        samples.push(
            x.iter()
                .map(|r| bessel_j(m, z * r, cfg))
                .collect::<Result<Vec<f64>>>()?,
        );
    }
    let mut entries = vec![vec![0.0; size]; size];
    for a in 0..size {
        for b in a..size {
            let v: f64 = (0..x.len())
                .map(|i| w[i] * x[i] * samples[a][i] * samples[b][i])
                .sum();
            entries[a][b] = v;
            entries[b][a] = v;
        }
    }
    Ok(RadialGram { m, entries })
}
