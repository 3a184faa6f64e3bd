//! Spectrum of the ∂̄-Neumann Laplacian `□_q` on a polydisc.
//!
//! For each strictly increasing `q`-tuple `J`, an eigenform coefficient is a
//! product of one-variable factors: Dirichlet for `k ∈ J`, holomorphic or
//! Neumann-positive for `k ∉ J`. Its eigenvalue is a quarter of the sum of
//! the factor eigenvalues. Holomorphic factors have eigenvalue 0 for every
//! exponent, so any mode containing one is an infinite family; those are
//! emitted once, with exponent 0, and flagged.
//!
//! Products that mix holomorphic and Neumann-positive factors among `k ∉ J`
//! are enumerated too: the per-variable bases tensorize, so leaving them out
//! would make the eigenbasis incomplete.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::disc_modes::{dirichlet_factors, neumann_factors, FactorKey, FactorKind, ModeFactor};
use crate::error::{Error, Result};
use crate::zeros::ZeroCache;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polydisc {
    radii: Vec<f64>,
}

impl Polydisc {
    pub fn new(radii: Vec<f64>) -> Result<Self> {
        if radii.len() < 2 {
            return Err(Error::InvalidArgument(format!(
                "a polydisc needs at least 2 radii, got {}",
                radii.len()
            )));
        }
        if let Some(bad) = radii.iter().find(|a| !(**a > 0.0 && a.is_finite())) {
            return Err(Error::InvalidArgument(format!("radius {bad} is not positive")));
        }
        Ok(Polydisc { radii })
    }

    pub fn dim(&self) -> usize {
        self.radii.len()
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn radius(&self, k: usize) -> f64 {
        self.radii[k]
    }
}

/// A strictly increasing tuple of variable indices (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QTuple(Vec<usize>);

impl QTuple {
    pub fn new(indices: Vec<usize>, n: usize) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(format!(
                "tuple {indices:?} is not strictly increasing"
            )));
        }
        if indices.iter().any(|&k| k >= n) {
            return Err(Error::InvalidArgument(format!(
                "tuple {indices:?} refers to a variable beyond n = {n}"
            )));
        }
        Ok(QTuple(indices))
    }

    /// From 1-based indices, as written on the command line.
    pub fn from_one_based(indices: &[usize], n: usize) -> Result<Self> {
        if indices.contains(&0) {
            return Err(Error::InvalidArgument("tuple indices start at 1".into()));
        }
        Self::new(indices.iter().map(|k| k - 1).collect(), n)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|k| k + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, k: usize) -> bool {
        self.0.binary_search(&k).is_ok()
    }
}

/// Valid form degrees are `1 <= q <= n - 1`.
pub fn check_degree(n: usize, q: usize) -> Result<()> {
    if q < 1 || q + 1 > n {
        return Err(Error::InvalidArgument(format!(
            "q = {q} out of range: need 1 <= q <= {} for n = {n}",
            n.saturating_sub(1)
        )));
    }
    Ok(())
}

/// All strictly increasing `q`-tuples from `0..n`, lexicographically.
pub fn q_tuples(n: usize, q: usize) -> Vec<QTuple> {
    fn rec(start: usize, n: usize, q: usize, cur: &mut Vec<usize>, out: &mut Vec<QTuple>) {
        if cur.len() == q {
            out.push(QTuple(cur.clone()));
            return;
        }
        for k in start..n {
            cur.push(k);
            rec(k + 1, n, q, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, q, &mut Vec::new(), &mut out);
    out
}

/// Which factor types fill the variables outside `J`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Every `k ∉ J` is a holomorphic monomial.
    Holomorphic,
    /// Every `k ∉ J` is Neumann-positive.
    Neumann,
    Mixed,
}

impl Family {
    pub fn tag(self) -> &'static str {
        match self {
            Family::Holomorphic => "holomorphic",
            Family::Neumann => "neumann",
            Family::Mixed => "mixed",
        }
    }
}

/// Data identifying a mode independently of floating-point values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModeDescriptor {
    pub tuple: Vec<usize>,
    pub factors: Vec<FactorKey>,
}

/// One separated eigenform `u_J dz̄_J` of `□_q`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenMode {
    tuple: QTuple,
    factors: Vec<ModeFactor>,
    value: f64,
}

/// `(1/4) Σ_k λ_k`, summed in variable order.
pub fn eigenvalue_of(factors: &[ModeFactor]) -> f64 {
    let mut sum = 0.0;
    for f in factors {
        sum += f.lambda_k();
    }
    0.25 * sum
}

impl EigenMode {
    pub fn new(tuple: QTuple, factors: Vec<ModeFactor>) -> Result<Self> {
        for (k, f) in factors.iter().enumerate() {
            let ok = if tuple.contains(k) {
                f.kind() == FactorKind::Dirichlet
            } else {
                f.kind() != FactorKind::Dirichlet
            };
            if !ok {
                return Err(Error::InvalidArgument(format!(
                    "factor {k} has kind {:?}, incompatible with J = {:?}",
                    f.kind(),
                    tuple.one_based()
                )));
            }
        }
        if tuple.indices().iter().any(|&k| k >= factors.len()) {
            return Err(Error::InvalidArgument("tuple exceeds number of factors".into()));
        }
        let value = eigenvalue_of(&factors);
        Ok(EigenMode {
            tuple,
            factors,
            value,
        })
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn tuple(&self) -> &QTuple {
        &self.tuple
    }

    pub fn factors(&self) -> &[ModeFactor] {
        &self.factors
    }

    pub fn dim(&self) -> usize {
        self.factors.len()
    }

    pub fn has_holomorphic(&self) -> bool {
        self.factors.iter().any(|f| f.kind() == FactorKind::Holomorphic)
    }

    pub fn family(&self) -> Family {
        let complement = || {
            self.factors
                .iter()
                .enumerate()
                .filter(|(k, _)| !self.tuple.contains(*k))
                .map(|(_, f)| f.kind())
        };
        if complement().all(|k| k == FactorKind::Holomorphic) {
            Family::Holomorphic
        } else if complement().all(|k| k == FactorKind::NeumannPositive) {
            Family::Neumann
        } else {
            Family::Mixed
        }
    }

    pub fn descriptor(&self) -> ModeDescriptor {
        ModeDescriptor {
            tuple: self.tuple.indices().to_vec(),
            factors: self.factors.iter().map(ModeFactor::key).collect(),
        }
    }

    /// Same mode with factor `k` replaced; the eigenvalue is recomputed.
    pub fn with_factor(&self, k: usize, factor: ModeFactor) -> Result<Self> {
        let mut factors = self.factors.clone();
        factors[k] = factor;
        EigenMode::new(self.tuple.clone(), factors)
    }

    /// Canonical total order: value, then tuple, then factor identities.
    pub fn cmp_canonical(&self, other: &Self) -> Ordering {
        self.value
            .total_cmp(&other.value)
            .then_with(|| self.tuple.cmp(&other.tuple))
            .then_with(|| {
                self.factors
                    .iter()
                    .map(ModeFactor::key)
                    .cmp(other.factors.iter().map(ModeFactor::key))
            })
    }
}

/// A grouped eigenvalue of `□_q`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralPoint {
    pub value: f64,
    /// Number of enumerated modes attaining the value with no holomorphic
    /// factor.
    pub finite_multiplicity: usize,
    /// Some mode attaining the value carries a holomorphic factor, whose
    /// exponent is free.
    pub infinite: bool,
    /// All enumerated modes in the group, finite and infinite families alike.
    pub mode_count: usize,
    pub families: Vec<Family>,
    pub witnesses: Vec<EigenMode>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumOptions {
    /// Relative tolerance for merging eigenvalues.
    pub group_tol: f64,
    pub max_witnesses: usize,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        SpectrumOptions {
            group_tol: 1e-11,
            max_witnesses: 8,
        }
    }
}

fn check_cutoff(lambda_max: f64) -> Result<()> {
    if !(lambda_max > 0.0) || !lambda_max.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "lambda_max must be positive and finite, got {lambda_max}"
        )));
    }
    Ok(())
}

/// Every eigenmode with eigenvalue `<= lambda_max`, over all `q`-tuples,
/// in canonical order.
pub fn enumerate_modes(
    polydisc: &Polydisc,
    q: usize,
    lambda_max: f64,
    cache: &ZeroCache,
) -> Result<Vec<EigenMode>> {
    check_degree(polydisc.dim(), q)?;
    check_cutoff(lambda_max)?;
    let per_tuple: Vec<Vec<EigenMode>> = q_tuples(polydisc.dim(), q)
        .into_par_iter()
        .map(|tuple| enumerate_tuple(polydisc, &tuple, lambda_max, cache))
        .collect::<Result<_>>()?;
    let mut modes: Vec<EigenMode> = per_tuple.into_iter().flatten().collect();
    modes.sort_by(EigenMode::cmp_canonical);
    Ok(modes)
}

/// Eigenmodes for a single tuple `J`, in canonical order.
pub fn enumerate_modes_for_tuple(
    polydisc: &Polydisc,
    tuple: &QTuple,
    lambda_max: f64,
    cache: &ZeroCache,
) -> Result<Vec<EigenMode>> {
    check_degree(polydisc.dim(), tuple.len())?;
    check_cutoff(lambda_max)?;
    let mut modes = enumerate_tuple(polydisc, tuple, lambda_max, cache)?;
    modes.sort_by(EigenMode::cmp_canonical);
    Ok(modes)
}

fn enumerate_tuple(
    polydisc: &Polydisc,
    tuple: &QTuple,
    lambda_max: f64,
    cache: &ZeroCache,
) -> Result<Vec<EigenMode>> {
    // A single factor may use the whole budget 4·lambda_max.
    let cap = 4.0 * lambda_max * (1.0 + 1e-12);
    let mut lists = Vec::with_capacity(polydisc.dim());
    for (k, &a) in polydisc.radii().iter().enumerate() {
        let list = if tuple.contains(k) {
            dirichlet_factors(a, cap, cache)?
        } else {
            let mut l = vec![ModeFactor::holomorphic(0, a)?];
            l.extend(neumann_factors(a, cap, cache)?);
            l
        };
        if list.is_empty() {
            return Ok(Vec::new());
        }
        lists.push(list);
    }
    // min_rest[k]: smallest possible contribution of variables k..n.
    let mut min_rest = vec![0.0; lists.len() + 1];
    for k in (0..lists.len()).rev() {
        min_rest[k] = min_rest[k + 1] + lists[k][0].lambda_k();
    }

    struct Search<'a> {
        lists: &'a [Vec<ModeFactor>],
        min_rest: &'a [f64],
        cap: f64,
        lambda_max: f64,
        tuple: &'a QTuple,
        chosen: Vec<&'a ModeFactor>,
        out: Vec<EigenMode>,
    }

    impl<'a> Search<'a> {
        fn run(&mut self, k: usize, partial: f64) {
            if k == self.lists.len() {
                let factors: Vec<ModeFactor> = self.chosen.iter().map(|f| (*f).clone()).collect();
                let value = eigenvalue_of(&factors);
                if value <= self.lambda_max {
                    self.out.push(EigenMode {
                        tuple: self.tuple.clone(),
                        factors,
                        value,
                    });
                }
                return;
            }
            let lists = self.lists;
            for f in &lists[k] {
                let s = partial + f.lambda_k();
                if s + self.min_rest[k + 1] > self.cap {
                    break;
                }
                self.chosen.push(f);
                self.run(k + 1, s);
                self.chosen.pop();
            }
        }
    }

    let mut search = Search {
        lists: &lists,
        min_rest: &min_rest,
        cap,
        lambda_max,
        tuple,
        chosen: Vec::with_capacity(lists.len()),
        out: Vec::new(),
    };
    search.run(0, 0.0);
    Ok(search.out)
}

/// Groups canonically ordered modes whose consecutive values differ by at
/// most `group_tol` relative. Single linkage, so shrinking the tolerance only
/// ever splits groups.
pub fn group_modes(modes: &[EigenMode], opts: &SpectrumOptions) -> Vec<SpectralPoint> {
    let mut points: Vec<SpectralPoint> = Vec::new();
    let mut prev: Option<f64> = None;
    for mode in modes {
        let v = mode.value();
        let start_new = match prev {
            None => true,
            Some(p) => (v - p).abs() > opts.group_tol * v.abs().max(p.abs()),
        };
        if start_new {
            points.push(SpectralPoint {
                value: v,
                finite_multiplicity: 0,
                infinite: false,
                mode_count: 0,
                families: Vec::new(),
                witnesses: Vec::new(),
            });
        }
        let point = points.last_mut().expect("pushed above");
        point.mode_count += 1;
        if mode.has_holomorphic() {
            point.infinite = true;
        } else {
            point.finite_multiplicity += 1;
        }
        let family = mode.family();
        if !point.families.contains(&family) {
            point.families.push(family);
            point.families.sort();
        }
        if point.witnesses.len() < opts.max_witnesses {
            point.witnesses.push(mode.clone());
        }
        prev = Some(v);
    }
    points
}

/// Spectral points of `□_q` up to `lambda_max`, ascending.
pub fn assemble_spectrum(
    polydisc: &Polydisc,
    q: usize,
    lambda_max: f64,
    opts: &SpectrumOptions,
    cache: &ZeroCache,
) -> Result<Vec<SpectralPoint>> {
    if !(opts.group_tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "group_tol must be positive, got {}",
            opts.group_tol
        )));
    }
    let modes = enumerate_modes(polydisc, q, lambda_max, cache)?;
    Ok(group_modes(&modes, opts))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bottom {
    pub value: f64,
    pub tuple: QTuple,
}

/// `min_{|J| = q} (λ_{0,1}²/4) Σ_{k∈J} a_k^{-2}`; ties go to the
/// lexicographically first tuple.
pub fn bottom(polydisc: &Polydisc, q: usize, cache: &ZeroCache) -> Result<Bottom> {
    check_degree(polydisc.dim(), q)?;
    let l01 = cache.zero(0, 1)?;
    let scale = 0.25 * l01 * l01;
    let mut best: Option<Bottom> = None;
    for tuple in q_tuples(polydisc.dim(), q) {
        let s: f64 = tuple
            .indices()
            .iter()
            .map(|&k| 1.0 / (polydisc.radius(k) * polydisc.radius(k)))
            .sum();
        let value = scale * s;
        let better = match &best {
            None => true,
            Some(b) => value < b.value * (1.0 - 1e-14),
        };
        if better {
            best = Some(Bottom { value, tuple });
        }
    }
    Ok(best.expect("at least one tuple"))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counting {
    pub finite_count: usize,
    pub essential_values: Vec<f64>,
}

/// Finite-multiplicity count up to `lambda_max` and the values carrying
/// infinite multiplicity.
pub fn counting(
    polydisc: &Polydisc,
    q: usize,
    lambda_max: f64,
    opts: &SpectrumOptions,
    cache: &ZeroCache,
) -> Result<Counting> {
    let points = assemble_spectrum(polydisc, q, lambda_max, opts, cache)?;
    Ok(Counting {
        finite_count: points.iter().map(|p| p.finite_multiplicity).sum(),
        essential_values: points.iter().filter(|p| p.infinite).map(|p| p.value).collect(),
    })
}
