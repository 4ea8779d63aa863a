use serde::{Deserialize, Serialize};

use crate::linalg::{min_hermitian_eigenvalue, Mat};
use crate::tolerances::{MARGINAL_FACTOR, PSD_SCALE};

/// Signed positive-semidefiniteness report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PsdVerdict {
    pub is_psd: bool,
    pub min_eigenvalue: f64,
    pub tolerance: f64,
    /// `|λ_min|` lies within `10 × tolerance` of zero.
    pub marginal: bool,
    /// The test only checks a necessary condition (sampled Gram matrix).
    pub necessary_only: bool,
}

impl PsdVerdict {
    pub fn from_min_eigenvalue(min_eigenvalue: f64, tolerance: f64) -> Self {
        Self {
            is_psd: min_eigenvalue >= -tolerance,
            min_eigenvalue,
            tolerance,
            marginal: min_eigenvalue.abs() <= MARGINAL_FACTOR * tolerance,
            necessary_only: false,
        }
    }

    /// Verdict on a Hermitian matrix with the default `1e-9 · dim` slack.
    pub fn of_matrix(m: &Mat) -> Self {
        Self::with_tolerance(m, PSD_SCALE * m.nrows().max(1) as f64)
    }

    pub fn with_tolerance(m: &Mat, tolerance: f64) -> Self {
        Self::from_min_eigenvalue(min_hermitian_eigenvalue(m), tolerance)
    }

    /// Worst of several verdicts (PSD only if all are).
    pub fn all<I: IntoIterator<Item = PsdVerdict>>(verdicts: I) -> Option<Self> {
        verdicts.into_iter().reduce(|a, b| {
            let worst = if b.min_eigenvalue + a.tolerance < a.min_eigenvalue + b.tolerance { b } else { a };
            PsdVerdict {
                is_psd: a.is_psd && b.is_psd,
                min_eigenvalue: worst.min_eigenvalue,
                tolerance: worst.tolerance,
                marginal: a.marginal || b.marginal,
                necessary_only: a.necessary_only || b.necessary_only,
            }
        })
    }

    pub fn label(&self) -> &'static str {
        match (self.is_psd, self.marginal) {
            (_, true) => "MARGINAL",
            (true, false) => "PSD",
            (false, false) => "NOT-PSD",
        }
    }
}
