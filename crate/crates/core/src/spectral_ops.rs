//! Eigen-expansions of `dz̄_J` coefficients and the action of `□_q` and its
//! inverse on them.
//!
//! Functions are sampled on a tensor grid: per variable, Gauss–Legendre nodes
//! in `r` on `[0, a_k]` times a uniform angular grid. The coefficient of a
//! mode `e` is `⟨f, e⟩ / ⟨e, e⟩` with the numerator by quadrature and the
//! denominator from the closed-form radial norms. The form `dz̄_J` has norm 1.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::disc_modes::{factor_norm_sq, radial_profile, FactorKey, FactorKind, ModeFactor};
use crate::eigenforms::{eval_coefficient, FormPoint};
use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;
use crate::spectrum::{enumerate_modes_for_tuple, EigenMode, Polydisc, QTuple};
use crate::zeros::ZeroCache;

/// Default cap on holomorphic exponents `p` in an expansion basis.
pub const DEFAULT_HOLOMORPHIC_EXPONENT_MAX: u32 = 16;
/// Minimum Gauss–Legendre nodes per radial dimension.
pub const MIN_RADIAL_NODES: usize = 64;

/// Quadrature grid on one disc.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisGrid {
    pub radius: f64,
    /// Gauss–Legendre nodes on `[0, a]`, ascending.
    pub radial_nodes: Vec<f64>,
    /// Gauss–Legendre weights times `r` (the area element).
    pub radial_weights: Vec<f64>,
    pub angular_count: usize,
}

impl AxisGrid {
    pub fn new(radius: f64, radial_count: usize, angular_count: usize) -> Result<Self> {
        if radial_count < MIN_RADIAL_NODES {
            return Err(Error::InvalidArgument(format!(
                "need at least {MIN_RADIAL_NODES} radial nodes, got {radial_count}"
            )));
        }
        if angular_count == 0 {
            return Err(Error::InvalidArgument("need at least one angular node".into()));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidArgument(format!("radius {radius} is not positive")));
        }
        let (nodes, weights) = GaussLegendre::new(radial_count).on_interval(0.0, radius);
        let radial_weights = nodes.iter().zip(&weights).map(|(r, w)| r * w).collect();
        Ok(AxisGrid {
            radius,
            radial_nodes: nodes,
            radial_weights,
            angular_count,
        })
    }

    pub fn theta(&self, l: usize) -> f64 {
        2.0 * PI * l as f64 / self.angular_count as f64
    }

    /// Points on this disc: radial index slow, angular index fast.
    pub fn len(&self) -> usize {
        self.radial_nodes.len() * self.angular_count
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn point(&self, idx: usize) -> (f64, f64) {
        let (i, l) = (idx / self.angular_count, idx % self.angular_count);
        (self.radial_nodes[i], self.theta(l))
    }

    fn weight(&self, idx: usize) -> f64 {
        self.radial_weights[idx / self.angular_count] * 2.0 * PI / self.angular_count as f64
    }
}

/// Tensor-product grid over the polydisc.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadGrid {
    pub axes: Vec<AxisGrid>,
}

impl QuadGrid {
    pub fn new(polydisc: &Polydisc, radial_count: usize, angular_count: usize) -> Result<Self> {
        let axes = polydisc
            .radii()
            .iter()
            .map(|&a| AxisGrid::new(a, radial_count, angular_count))
            .collect::<Result<_>>()?;
        Ok(QuadGrid { axes })
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    /// Total sample count.
    pub fn len(&self) -> usize {
        self.axes.iter().map(AxisGrid::len).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Polar coordinates of flat sample `idx` (variable 0 slowest).
    pub fn point(&self, mut idx: usize) -> Vec<(f64, f64)> {
        let mut out = vec![(0.0, 0.0); self.dim()];
        for k in (0..self.dim()).rev() {
            let len = self.axes[k].len();
            out[k] = self.axes[k].point(idx % len);
            idx /= len;
        }
        out
    }

    /// Samples `f` at every grid point, in flat order.
    pub fn sample<F>(&self, f: F) -> Result<Vec<Complex64>>
    where
        F: Fn(&FormPoint) -> Result<Complex64> + Sync,
    {
        (0..self.len())
            .into_par_iter()
            .map(|idx| f(&FormPoint::from_polar(self.point(idx))?))
            .collect()
    }

    /// `∫ |f|²` by quadrature.
    pub fn norm_sq(&self, samples: &[Complex64]) -> Result<f64> {
        self.check_samples(samples)?;
        let mut total = 0.0;
        for (idx, v) in samples.iter().enumerate() {
            let mut w = 1.0;
            let mut rest = idx;
            for k in (0..self.dim()).rev() {
                let len = self.axes[k].len();
                w *= self.axes[k].weight(rest % len);
                rest /= len;
            }
            total += w * v.norm_sqr();
        }
        Ok(total)
    }

    fn check_samples(&self, samples: &[Complex64]) -> Result<()> {
        if samples.len() != self.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} samples, got {}",
                self.len(),
                samples.len()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionTerm {
    pub mode: EigenMode,
    pub coefficient: Complex64,
}

/// Truncated eigen-expansion of one `dz̄_J` coefficient.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Expansion {
    pub tuple: QTuple,
    pub terms: Vec<ExpansionTerm>,
    pub truncation_lambda: f64,
    pub holomorphic_exponent_max: u32,
    /// Truncation reports and warnings.
    pub notes: Vec<String>,
}

impl Expansion {
    pub fn coefficients(&self) -> Vec<Complex64> {
        self.terms.iter().map(|t| t.coefficient).collect()
    }

    /// `(Σ|c|²)^{1/2}`.
    pub fn coefficient_norm(&self) -> f64 {
        self.terms.iter().map(|t| t.coefficient.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `Σ |c|² ‖e‖²`: the squared L² norm of the truncated sum.
    pub fn norm_sq(&self) -> Result<f64> {
        let mut total = 0.0;
        for t in &self.terms {
            total += t.coefficient.norm_sqr() * mode_norm_sq(&t.mode)?;
        }
        Ok(total)
    }

    /// Same basis, new coefficients.
    pub fn with_coefficients(&self, coefficients: &[Complex64]) -> Result<Self> {
        if coefficients.len() != self.terms.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} coefficients, got {}",
                self.terms.len(),
                coefficients.len()
            )));
        }
        let mut out = self.clone();
        for (t, &c) in out.terms.iter_mut().zip(coefficients) {
            t.coefficient = c;
        }
        Ok(out)
    }

    /// Coefficient of the mode with the given factor keys, if present.
    pub fn coefficient_of(&self, keys: &[FactorKey]) -> Option<Complex64> {
        self.terms
            .iter()
            .find(|t| t.mode.factors().iter().map(ModeFactor::key).eq(keys.iter().copied()))
            .map(|t| t.coefficient)
    }
}

/// `‖e‖² = Π_k 2π ∫ r R_k² dr`.
pub fn mode_norm_sq(mode: &EigenMode) -> Result<f64> {
    let mut total = 1.0;
    for f in mode.factors() {
        total *= factor_norm_sq(f)?;
    }
    Ok(total)
}

/// Orthogonal eigenbasis for tuple `J` up to `truncation_lambda`, with each
/// holomorphic factor `z^0` expanded to `z^p`, `p <= p_max`.
pub fn expansion_basis(
    polydisc: &Polydisc,
    tuple: &QTuple,
    truncation_lambda: f64,
    p_max: u32,
    cache: &ZeroCache,
) -> Result<Vec<EigenMode>> {
    let base = enumerate_modes_for_tuple(polydisc, tuple, truncation_lambda, cache)?;
    let mut out = Vec::new();
    for mode in base {
        let slots: Vec<usize> = mode
            .factors()
            .iter()
            .enumerate()
            .filter(|(_, f)| f.kind() == FactorKind::Holomorphic)
            .map(|(k, _)| k)
            .collect();
        let mut exps = vec![0u32; slots.len()];
        'odometer: loop {
            let mut m = mode.clone();
            for (&k, &p) in slots.iter().zip(&exps) {
                m = m.with_factor(k, ModeFactor::holomorphic(p as i32, polydisc.radius(k))?)?;
            }
            out.push(m);
            for e in exps.iter_mut().rev() {
                *e += 1;
                if *e <= p_max {
                    continue 'odometer;
                }
                *e = 0;
            }
            break;
        }
    }
    out.sort_by(EigenMode::cmp_canonical);
    Ok(out)
}

/// Smallest angular count that integrates `e^{ikθ}` exactly for every pair
/// of basis factors.
pub fn angular_nodes_for(basis: &[EigenMode]) -> usize {
    let max = basis
        .iter()
        .flat_map(|m| m.factors().iter().map(|f| f.angular_order().unsigned_abs()))
        .max()
        .unwrap_or(0) as usize;
    2 * max + 2
}

/// Expands sampled values of `f` on `grid`.
pub fn expand_sampled(
    polydisc: &Polydisc,
    tuple: &QTuple,
    truncation_lambda: f64,
    p_max: u32,
    grid: &QuadGrid,
    samples: &[Complex64],
    cache: &ZeroCache,
) -> Result<Expansion> {
    if grid.dim() != polydisc.dim() {
        return Err(Error::InvalidArgument(format!(
            "grid has {} axes, polydisc has {}",
            grid.dim(),
            polydisc.dim()
        )));
    }
    for (axis, &a) in grid.axes.iter().zip(polydisc.radii()) {
        if (axis.radius - a).abs() > 1e-14 * a {
            return Err(Error::InvalidArgument(format!(
                "grid radius {} does not match disc radius {a}",
                axis.radius
            )));
        }
    }
    grid.check_samples(samples)?;
    let basis = expansion_basis(polydisc, tuple, truncation_lambda, p_max, cache)?;
    let mut notes = Vec::new();
    if basis.is_empty() {
        notes.push(format!(
            "truncation {truncation_lambda} is below the bottom of the spectrum; expansion is empty"
        ));
    }
    if basis.iter().any(EigenMode::has_holomorphic) {
        notes.push(format!("holomorphic factors truncated at exponent {p_max}"));
    }
    let needed = angular_nodes_for(&basis);
    if let Some(axis) = grid.axes.iter().find(|ax| ax.angular_count < needed) {
        notes.push(format!(
            "{} angular nodes alias the basis; {needed} are needed for exact angular orthogonality",
            axis.angular_count
        ));
    }

    let projections = project(grid, samples, &basis)?;
    let terms = basis
        .into_iter()
        .zip(projections)
        .map(|(mode, ip)| {
            let norm = mode_norm_sq(&mode)?;
            Ok(ExpansionTerm {
                mode,
                coefficient: ip / norm,
            })
        })
        .collect::<Result<_>>()?;
    Ok(Expansion {
        tuple: tuple.clone(),
        terms,
        truncation_lambda,
        holomorphic_exponent_max: p_max,
        notes,
    })
}

/// Quadrature and basis settings for [`expand`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpandOptions {
    /// Gauss–Legendre nodes per disc, at least [`MIN_RADIAL_NODES`].
    pub radial_nodes: usize,
    /// Angular nodes per disc; `None` picks the smallest exact count for the basis.
    pub angular_nodes: Option<usize>,
    pub holomorphic_exponent_max: u32,
}

impl Default for ExpandOptions {
    fn default() -> Self {
        ExpandOptions {
            radial_nodes: MIN_RADIAL_NODES,
            angular_nodes: None,
            holomorphic_exponent_max: DEFAULT_HOLOMORPHIC_EXPONENT_MAX,
        }
    }
}

/// Grid matching `opts` for the expansion basis of `tuple`.
pub fn expansion_grid(
    polydisc: &Polydisc,
    tuple: &QTuple,
    truncation_lambda: f64,
    opts: &ExpandOptions,
    cache: &ZeroCache,
) -> Result<QuadGrid> {
    let angular = match opts.angular_nodes {
        Some(n) => n,
        None => {
            let basis = expansion_basis(
                polydisc,
                tuple,
                truncation_lambda,
                opts.holomorphic_exponent_max,
                cache,
            )?;
            angular_nodes_for(&basis)
        }
    };
    QuadGrid::new(polydisc, opts.radial_nodes, angular)
}

/// Expands a callable coefficient function.
pub fn expand<F>(
    polydisc: &Polydisc,
    tuple: &QTuple,
    truncation_lambda: f64,
    opts: &ExpandOptions,
    f: F,
    cache: &ZeroCache,
) -> Result<Expansion>
where
    F: Fn(&FormPoint) -> Result<Complex64> + Sync,
{
    let grid = expansion_grid(polydisc, tuple, truncation_lambda, opts, cache)?;
    let samples = grid.sample(f)?;
    expand_sampled(
        polydisc,
        tuple,
        truncation_lambda,
        opts.holomorphic_exponent_max,
        &grid,
        &samples,
        cache,
    )
}

/// `⟨f, e⟩` for every basis mode by contracting one variable at a time,
/// sharing work between modes with equal leading factors.
fn project(grid: &QuadGrid, samples: &[Complex64], basis: &[EigenMode]) -> Result<Vec<Complex64>> {
    let mut out = vec![Complex64::new(0.0, 0.0); basis.len()];
    let indices: Vec<usize> = (0..basis.len()).collect();
    let results = contract(grid, 0, samples, basis, &indices)?;
    for (i, v) in results {
        out[i] = v;
    }
    Ok(out)
}

/// `conj(F(r, θ)) · weight` at every point of one axis.
fn weighted_conjugate(axis: &AxisGrid, f: &ModeFactor) -> Result<Vec<Complex64>> {
    let mut out = Vec::with_capacity(axis.len());
    let m = f.angular_order() as f64;
    for (i, &r) in axis.radial_nodes.iter().enumerate() {
        let radial = radial_profile(f, r)? * axis.radial_weights[i];
        for l in 0..axis.angular_count {
            let w = 2.0 * PI / axis.angular_count as f64;
            out.push(Complex64::from_polar(radial * w, -m * axis.theta(l)));
        }
    }
    Ok(out)
}

fn contract(
    grid: &QuadGrid,
    level: usize,
    tensor: &[Complex64],
    basis: &[EigenMode],
    members: &[usize],
) -> Result<Vec<(usize, Complex64)>> {
    let mut groups: BTreeMap<FactorKey, Vec<usize>> = BTreeMap::new();
    for &i in members {
        groups.entry(basis[i].factors()[level].key()).or_default().push(i);
    }
    let axis = &grid.axes[level];
    let stride = tensor.len() / axis.len();
    let run = |group: &Vec<usize>| -> Result<Vec<(usize, Complex64)>> {
        let factor = &basis[group[0]].factors()[level];
        let w = weighted_conjugate(axis, factor)?;
        let mut reduced = vec![Complex64::new(0.0, 0.0); stride];
        for (p, wp) in w.iter().enumerate() {
            let slab = &tensor[p * stride..(p + 1) * stride];
            for (acc, v) in reduced.iter_mut().zip(slab) {
                *acc += wp * v;
            }
        }
        if level + 1 == grid.dim() {
            Ok(group.iter().map(|&i| (i, reduced[0])).collect())
        } else {
            contract(grid, level + 1, &reduced, basis, group)
        }
    };
    let parts: Vec<Vec<(usize, Complex64)>> = if level == 0 {
        groups.values().collect::<Vec<_>>().into_par_iter().map(run).collect::<Result<_>>()?
    } else {
        groups.values().map(run).collect::<Result<_>>()?
    };
    Ok(parts.into_iter().flatten().collect())
}

/// Multiplies each coefficient by its mode's eigenvalue.
pub fn apply_box(x: &Expansion) -> Expansion {
    let mut out = x.clone();
    for t in &mut out.terms {
        t.coefficient *= t.mode.value();
    }
    out
}

/// Divides each coefficient by its mode's eigenvalue.
pub fn apply_inverse(x: &Expansion) -> Result<Expansion> {
    let mut out = x.clone();
    for t in &mut out.terms {
        let v = t.mode.value();
        if v == 0.0 {
            return Err(Error::InvariantViolation(format!(
                "mode {:?} has eigenvalue 0; □_q is not invertible on it",
                t.mode.descriptor()
            )));
        }
        t.coefficient /= v;
    }
    Ok(out)
}

/// A `(0,q)`-form as one expansion per tuple `J`. `□_q` acts on each
/// component separately.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FormExpansion {
    components: Vec<Expansion>,
}

impl FormExpansion {
    pub fn new(components: Vec<Expansion>) -> Result<Self> {
        for (i, c) in components.iter().enumerate() {
            if c.tuple.len() != components[0].tuple.len() {
                return Err(Error::InvalidArgument("components have different degrees".into()));
            }
            if components[..i].iter().any(|d| d.tuple == c.tuple) {
                return Err(Error::InvalidArgument(format!(
                    "tuple {:?} appears twice",
                    c.tuple.one_based()
                )));
            }
        }
        Ok(FormExpansion { components })
    }

    pub fn components(&self) -> &[Expansion] {
        &self.components
    }

    pub fn apply_box(&self) -> Self {
        FormExpansion {
            components: self.components.iter().map(apply_box).collect(),
        }
    }

    pub fn apply_inverse(&self) -> Result<Self> {
        Ok(FormExpansion {
            components: self.components.iter().map(apply_inverse).collect::<Result<_>>()?,
        })
    }
}

/// Value of the truncated sum at `p`.
pub fn synthesize(x: &Expansion, p: &FormPoint) -> Result<Complex64> {
    let mut total = Complex64::new(0.0, 0.0);
    for t in &x.terms {
        total += t.coefficient * eval_coefficient(&t.mode, p)?;
    }
    Ok(total)
}

/// Samples the truncated sum on `grid`. Terms sharing leading factors are
/// summed before the outer product with those factors is formed.
pub fn synthesize_on_grid(x: &Expansion, grid: &QuadGrid) -> Result<Vec<Complex64>> {
    if x.terms.iter().any(|t| t.mode.dim() != grid.dim()) {
        return Err(Error::InvalidArgument("mode and grid dimensions differ".into()));
    }
    if x.terms.is_empty() {
        return Ok(vec![Complex64::new(0.0, 0.0); grid.len()]);
    }
    let members: Vec<usize> = (0..x.terms.len()).collect();
    synthesize_level(x, grid, 0, &members)
}

fn factor_samples(axis: &AxisGrid, f: &ModeFactor) -> Result<Vec<Complex64>> {
    let m = f.angular_order() as f64;
    let mut out = Vec::with_capacity(axis.len());
    for &r in &axis.radial_nodes {
        let radial = radial_profile(f, r)?;
        for l in 0..axis.angular_count {
            out.push(Complex64::from_polar(radial, m * axis.theta(l)));
        }
    }
    Ok(out)
}

fn synthesize_level(
    x: &Expansion,
    grid: &QuadGrid,
    level: usize,
    members: &[usize],
) -> Result<Vec<Complex64>> {
    let mut groups: BTreeMap<FactorKey, Vec<usize>> = BTreeMap::new();
    for &i in members {
        groups.entry(x.terms[i].mode.factors()[level].key()).or_default().push(i);
    }
    let axis = &grid.axes[level];
    let stride: usize = grid.axes[level + 1..].iter().map(AxisGrid::len).product();
    let mut out = vec![Complex64::new(0.0, 0.0); axis.len() * stride];
    for group in groups.values() {
        let col = factor_samples(axis, &x.terms[group[0]].mode.factors()[level])?;
        if level + 1 == grid.dim() {
            let c: Complex64 = group.iter().map(|&i| x.terms[i].coefficient).sum();
            for (o, v) in out.iter_mut().zip(&col) {
                *o += c * v;
            }
        } else {
            let inner = synthesize_level(x, grid, level + 1, group)?;
            out.par_chunks_mut(stride).zip(col.par_iter()).for_each(|(chunk, v)| {
                for (o, w) in chunk.iter_mut().zip(&inner) {
                    *o += v * w;
                }
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::bottom;

    fn setup() -> (Polydisc, QTuple, ZeroCache) {
        (
            Polydisc::new(vec![1.0, 1.0]).unwrap(),
            QTuple::new(vec![0], 2).unwrap(),
            ZeroCache::new(),
        )
    }

    #[test]
    fn basis_expands_holomorphic_slots() {
        let (p, j, cache) = setup();
        let basis = expansion_basis(&p, &j, 2.0, 4, &cache).unwrap();
        // bottom mode times z_2^p for p = 0..=4
        assert_eq!(basis.len(), 5);
        assert!(basis.iter().all(|m| (m.value() - 1.445796490736696).abs() < 1e-12));
    }

    #[test]
    fn single_mode_expansion() {
        let (p, j, cache) = setup();
        let opts = ExpandOptions {
            holomorphic_exponent_max: 2,
            ..Default::default()
        };
        let basis = expansion_basis(&p, &j, 4.0, 2, &cache).unwrap();
        let target = basis[3].clone();
        let x = expand(&p, &j, 4.0, &opts, |pt| eval_coefficient(&target, pt), &cache).unwrap();
        assert_eq!(x.terms.len(), basis.len());
        for t in &x.terms {
            let expected = if t.mode == target { 1.0 } else { 0.0 };
            assert!((t.coefficient - expected).norm() < 1e-8, "{:?}", t);
        }
    }

    #[test]
    fn inverse_scales_by_eigenvalue() {
        let (p, j, cache) = setup();
        let b = bottom(&p, 1, &cache).unwrap();
        let basis = expansion_basis(&p, &j, 2.0, 0, &cache).unwrap();
        let x = Expansion {
            tuple: j,
            terms: vec![ExpansionTerm {
                mode: basis[0].clone(),
                coefficient: Complex64::new(1.0, 0.0),
            }],
            truncation_lambda: 2.0,
            holomorphic_exponent_max: 0,
            notes: vec![],
        };
        let y = apply_inverse(&x).unwrap();
        assert!((y.terms[0].coefficient.re - 1.0 / b.value).abs() < 1e-15);
        let z = apply_box(&y);
        assert!((z.terms[0].coefficient - x.terms[0].coefficient).norm() < 1e-15);
    }

    #[test]
    fn below_bottom_is_empty() {
        let (p, j, cache) = setup();
        let opts = ExpandOptions::default();
        let x = expand(&p, &j, 1.0, &opts, |_| Ok(Complex64::new(1.0, 0.0)), &cache).unwrap();
        assert!(x.terms.is_empty());
        assert!(!x.notes.is_empty());
    }

    #[test]
    fn grid_synthesis_matches_pointwise() {
        let (p, j, cache) = setup();
        let basis = expansion_basis(&p, &j, 4.0, 2, &cache).unwrap();
        let x = Expansion {
            tuple: j,
            terms: basis
                .iter()
                .enumerate()
                .map(|(i, m)| ExpansionTerm {
                    mode: m.clone(),
                    coefficient: Complex64::new(1.0 / (i + 1) as f64, 0.5),
                })
                .collect(),
            truncation_lambda: 4.0,
            holomorphic_exponent_max: 2,
            notes: vec![],
        };
        let grid = QuadGrid::new(&p, 64, 6).unwrap();
        let samples = synthesize_on_grid(&x, &grid).unwrap();
        for idx in [0, 1234, grid.len() - 1] {
            let pt = FormPoint::from_polar(grid.point(idx)).unwrap();
            assert!((samples[idx] - synthesize(&x, &pt).unwrap()).norm() < 1e-13);
        }
    }

    #[test]
    fn grid_validation() {
        let (p, _, _) = setup();
        assert!(QuadGrid::new(&p, 32, 8).is_err());
        assert!(QuadGrid::new(&p, 64, 0).is_err());
        let g = QuadGrid::new(&p, 64, 4).unwrap();
        assert_eq!(g.len(), 256 * 256);
        assert!(g.norm_sq(&[Complex64::new(0.0, 0.0)]).is_err());
    }
}
