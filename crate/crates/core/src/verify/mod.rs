//! Independent oracles and the self-check suites built on them.

pub mod brute_force;
pub mod fd;
pub mod orthogonality;
mod suites;

pub use brute_force::{brute_force_spectrum, BruteForceMode};
pub use fd::{closed_form_eigs, fd_convergence, fd_radial_eigs, EigenConvergence, FdBoundary, FdConfig};
pub use orthogonality::{quad_inner_product, radial_gram, RadialGram};
pub use suites::{run_suite, CheckResult, Suite, VerificationReport};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::spectrum::{EigenMode, ModeDescriptor};

/// Difference between an enumerated mode list and an oracle list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleComparison {
    pub enumerated: usize,
    pub oracle: usize,
    /// In the oracle list only.
    pub missing: Vec<ModeDescriptor>,
    /// In the enumerated list only.
    pub extra: Vec<ModeDescriptor>,
    /// Largest relative value difference over modes in both lists.
    pub max_relative_error: f64,
}

impl OracleComparison {
    pub fn agrees(&self, tol: f64) -> bool {
        self.missing.is_empty() && self.extra.is_empty() && self.max_relative_error <= tol
    }
}

pub fn compare_with_oracle(modes: &[EigenMode], oracle: &[BruteForceMode]) -> OracleComparison {
    let ours: BTreeMap<ModeDescriptor, f64> =
        modes.iter().map(|m| (m.descriptor(), m.value())).collect();
    let theirs: BTreeMap<&ModeDescriptor, f64> =
        oracle.iter().map(|m| (&m.descriptor, m.value)).collect();
    let mut missing = Vec::new();
    let mut max_relative_error = 0.0f64;
    for (d, &v) in &theirs {
        match ours.get(*d) {
            Some(&u) => {
                let err = (u - v).abs() / v.abs().max(1e-300);
                max_relative_error = max_relative_error.max(if v == 0.0 { u.abs() } else { err });
            }
            None => missing.push((*d).clone()),
        }
    }
    let extra = ours
        .keys()
        .filter(|d| !theirs.contains_key(d))
        .cloned()
        .collect();
    OracleComparison {
        enumerated: modes.len(),
        oracle: oracle.len(),
        missing,
        extra,
        max_relative_error,
    }
}
