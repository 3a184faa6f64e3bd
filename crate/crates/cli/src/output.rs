//! Output records and their JSON, CSV and table renderings.

use num_complex::Complex64;
use serde::ser::Error as _;
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use polyspec::disc_modes::{FactorKind, ModeFactor};
use polyspec::spectral_ops::Expansion;
use polyspec::spectrum::{EigenMode, SpectralPoint};
use polyspec::verify::CheckResult;

pub const SCHEMA_VERSION: &str = "1.0";

/// A float written with 17 significant digits, so it round-trips exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Real(pub f64);

impl Real {
    pub fn text(self) -> String {
        format!("{:.16e}", self.0)
    }
}

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        RawValue::from_string(self.text())
            .map_err(S::Error::custom)?
            .serialize(s)
    }
}

fn reals(v: &[f64]) -> Vec<Real> {
    v.iter().copied().map(Real).collect()
}

#[derive(Debug, Serialize)]
pub struct Record<Req: Serialize, Body: Serialize> {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub request: Req,
    #[serde(flatten)]
    pub body: Body,
}

impl<Req: Serialize, Body: Serialize> Record<Req, Body> {
    pub fn new(command: &'static str, request: Req, body: Body) -> Self {
        Record {
            schema_version: SCHEMA_VERSION,
            command,
            request,
            body,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("records always serialize");
        s.push('\n');
        s
    }
}

#[derive(Debug, Serialize)]
pub struct FactorOut {
    pub kind: &'static str,
    pub angular_order: i32,
    /// `None` for holomorphic factors.
    pub radial_index: Option<usize>,
    pub lambda_k: Real,
}

pub fn kind_tag(k: FactorKind) -> &'static str {
    match k {
        FactorKind::Dirichlet => "dirichlet",
        FactorKind::NeumannPositive => "neumann-positive",
        FactorKind::Holomorphic => "holomorphic",
    }
}

impl From<&ModeFactor> for FactorOut {
    fn from(f: &ModeFactor) -> Self {
        FactorOut {
            kind: kind_tag(f.kind()),
            angular_order: f.angular_order(),
            radial_index: f.radial_index(),
            lambda_k: Real(f.lambda_k()),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ModeOut {
    /// 1-based variable indices.
    pub tuple: Vec<usize>,
    pub value: Real,
    pub factors: Vec<FactorOut>,
}

impl From<&EigenMode> for ModeOut {
    fn from(m: &EigenMode) -> Self {
        ModeOut {
            tuple: m.tuple().one_based(),
            value: Real(m.value()),
            factors: m.factors().iter().map(FactorOut::from).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct PointOut {
    pub value: Real,
    pub finite_multiplicity: usize,
    pub infinite: bool,
    pub mode_count: usize,
    pub families: Vec<&'static str>,
    pub witnesses: Vec<ModeOut>,
}

impl From<&SpectralPoint> for PointOut {
    fn from(p: &SpectralPoint) -> Self {
        PointOut {
            value: Real(p.value),
            finite_multiplicity: p.finite_multiplicity,
            infinite: p.infinite,
            mode_count: p.mode_count,
            families: p.families.iter().map(|f| f.tag()).collect(),
            witnesses: p.witnesses.iter().map(ModeOut::from).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SpectrumRequest {
    pub radii: Vec<Real>,
    pub q: usize,
    pub max_lambda: Real,
    pub group_tol: Real,
    pub witnesses: usize,
}

#[derive(Debug, Serialize)]
pub struct SpectrumBody {
    pub points: Vec<PointOut>,
}

pub fn spectrum_csv(points: &[SpectralPoint]) -> String {
    let mut out = String::from("value,finite_multiplicity,infinite,family\n");
    for p in points {
        let families: Vec<&str> = p.families.iter().map(|f| f.tag()).collect();
        out.push_str(&format!(
            "{},{},{},{}\n",
            Real(p.value).text(),
            p.finite_multiplicity,
            p.infinite,
            families.join(";")
        ));
    }
    out
}

pub fn spectrum_table(points: &[SpectralPoint]) -> String {
    let mut rows = vec![vec![
        "value".to_string(),
        "finite_mult".to_string(),
        "infinite".to_string(),
        "modes".to_string(),
        "family".to_string(),
    ]];
    for p in points {
        let families: Vec<&str> = p.families.iter().map(|f| f.tag()).collect();
        rows.push(vec![
            format!("{:.12}", p.value),
            p.finite_multiplicity.to_string(),
            p.infinite.to_string(),
            p.mode_count.to_string(),
            families.join(";"),
        ]);
    }
    table(&rows)
}

#[derive(Debug, Serialize)]
pub struct ZerosRequest {
    pub order: i32,
    pub count: usize,
    pub tol: Real,
}

#[derive(Debug, Serialize)]
pub struct ZerosBody {
    pub zeros: Vec<Real>,
}

pub fn indexed_csv(header: &str, values: &[f64]) -> String {
    let mut out = format!("index,{header}\n");
    for (i, v) in values.iter().enumerate() {
        out.push_str(&format!("{},{}\n", i + 1, Real(*v).text()));
    }
    out
}

pub fn indexed_table(header: &str, values: &[f64]) -> String {
    let mut rows = vec![vec!["index".to_string(), header.to_string()]];
    for (i, v) in values.iter().enumerate() {
        rows.push(vec![(i + 1).to_string(), format!("{v:.15}")]);
    }
    table(&rows)
}

#[derive(Debug, Serialize)]
pub struct BottomRequest {
    pub radii: Vec<Real>,
    pub q: usize,
}

#[derive(Debug, Serialize)]
pub struct BottomBody {
    pub value: Real,
    /// 1-based minimizing tuple.
    pub tuple: Vec<usize>,
}

#[derive(Debug, Serialize)]
pub struct FdRequest {
    pub order: i32,
    pub bc: &'static str,
    pub radius: Real,
    pub grid: usize,
    pub count: usize,
}

#[derive(Debug, Serialize)]
pub struct FdBody {
    pub eigenvalues: Vec<Real>,
    pub closed_form: Vec<Real>,
}

impl FdBody {
    pub fn new(eigenvalues: &[f64], closed_form: &[f64]) -> Self {
        FdBody {
            eigenvalues: reals(eigenvalues),
            closed_form: reals(closed_form),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct VerifyRequest {
    pub suites: Vec<&'static str>,
    pub seed: u64,
}

#[derive(Debug, Serialize)]
pub struct CheckOut {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub measured: Real,
    pub tolerance: Real,
    pub detail: String,
}

impl From<&CheckResult> for CheckOut {
    fn from(c: &CheckResult) -> Self {
        CheckOut {
            suite: c.suite.name(),
            name: c.name.clone(),
            passed: c.passed,
            measured: Real(c.measured),
            tolerance: Real(c.tolerance),
            detail: c.detail.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct VerifyBody {
    pub passed: bool,
    pub checks: Vec<CheckOut>,
}

#[derive(Debug, Serialize)]
pub struct InverseRequest {
    pub radii: Vec<Real>,
    pub tuple: Vec<usize>,
    pub max_lambda: Real,
    pub p_max: u32,
    pub input: String,
}

#[derive(Debug, Serialize)]
pub struct TermOut {
    pub mode: ModeOut,
    /// `[re, im]`.
    pub coefficient: [Real; 2],
}

#[derive(Debug, Serialize)]
pub struct InverseBody {
    pub notes: Vec<String>,
    pub terms: Vec<TermOut>,
}

impl From<&Expansion> for InverseBody {
    fn from(x: &Expansion) -> Self {
        InverseBody {
            notes: x.notes.clone(),
            terms: x
                .terms
                .iter()
                .map(|t| TermOut {
                    mode: ModeOut::from(&t.mode),
                    coefficient: complex(t.coefficient),
                })
                .collect(),
        }
    }
}

fn complex(c: Complex64) -> [Real; 2] {
    [Real(c.re), Real(c.im)]
}

pub fn inverse_csv(x: &Expansion) -> String {
    let mut out = String::from("value,re,im,tuple,factors\n");
    for t in &x.terms {
        let tuple: Vec<String> = t.mode.tuple().one_based().iter().map(usize::to_string).collect();
        let factors: Vec<String> = t
            .mode
            .factors()
            .iter()
            .map(|f| {
                format!(
                    "{}:{}:{}",
                    kind_tag(f.kind()),
                    f.angular_order(),
                    f.radial_index().unwrap_or(0)
                )
            })
            .collect();
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            Real(t.mode.value()).text(),
            Real(t.coefficient.re).text(),
            Real(t.coefficient.im).text(),
            tuple.join(";"),
            factors.join(";")
        ));
    }
    out
}

/// Left-aligned columns separated by two spaces.
pub fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{s:<w$}", w = widths[c]))
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}
