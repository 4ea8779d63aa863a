//! Φ-matrix embedding of `G × G` for finite `G`.
//!
//! Rows and columns of the `N² × N²` matrix are indexed by `α·N + α′`, with
//! `Φ_{αα′,ββ′} = φ(g_α⁻¹ g_β, g_α′⁻¹ g_β′)`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::charfunc::{build_phi_matrix, BiFunction, CharFunc, PsdVerdict};
use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::linalg::{self, kron, max_abs_diff, Mat, C64};
use crate::representations::{FiniteHarmonics, HarmonicGroup, Product};
use crate::separability::{tilde, SeparableDecomposition};
use crate::tolerances::DECOMPOSITION_TOL;

/// `φ(g₁, g₂)` for all pairs of group elements.
pub fn value_table<F: BiFunction<Base = FiniteHarmonics>>(phi: &F) -> DMatrix<C64> {
    let elements: Vec<usize> = phi.base().group().elements().collect();
    phi.grid_values(&elements, &elements)
}

/// `Φ_{αα′,ββ′} = table[σ(α,β)][σ(α′,β′)]`.
pub fn product_phi_matrix(table: &DMatrix<C64>, group: &FiniteGroup) -> Mat {
    let n = group.order();
    let sigma = group.sigma_table();
    Mat::from_fn(n * n, n * n, |row, col| {
        let (a, a2) = (row / n, row % n);
        let (b, b2) = (col / n, col % n);
        table[(sigma[a][b], sigma[a2][b2])]
    })
}

/// Checks of `Φ = Σ p_i K_i ⊗ N_i`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingCheck {
    pub holds: bool,
    /// `max |Φ − Σ p_i K_i ⊗ N_i|`.
    pub max_deviation: f64,
    /// Smallest eigenvalue over all `K_i` and `N_i`.
    pub min_factor_eigenvalue: f64,
    pub factors_psd: bool,
    /// `|tr Φ / N² − 1|`.
    pub trace_deviation: f64,
    /// `max |Φ_{0,β} − φ(g_β)|` over the flattened first row.
    pub first_row_deviation: f64,
    pub tolerance: f64,
}

fn pure_value_vector(harmonics: &FiniteHarmonics, label: usize, v: &linalg::CVec) -> Result<Vec<C64>> {
    let irrep = harmonics.irrep(label)?;
    Ok(irrep.matrices().iter().map(|m| v.dotc(&(m * v))).collect())
}

/// Builds `Φ` of the state generated by `dec` and compares it with
/// `Σ p_i K_i ⊗ N_i`, where `K_i`, `N_i` are the Φ-matrices of the factor
/// functions `κ_i(g) = ⟨u_i|π(g)u_i⟩`, `η_i(g) = ⟨v_i|τ(g)v_i⟩`.
pub fn phi_matrix_embedding(
    dec: &SeparableDecomposition,
    harmonics: &FiniteHarmonics,
    labels: (usize, usize),
) -> Result<EmbeddingCheck> {
    let group = harmonics.group();
    let n = group.order();
    let (m1, m2) = (harmonics.irrep_dim(&labels.0)?, harmonics.irrep_dim(&labels.1)?);
    if dec.dims() != (m1, m2) {
        return Err(Error::DimensionMismatch {
            expected: m1 * m2,
            found: dec.dims().0 * dec.dims().1,
        });
    }
    let phi = CharFunc::from_blocks(Product(harmonics.clone()), [(labels, dec.density_matrix())])?;
    let table = value_table(&phi);
    let big = product_phi_matrix(&table, group);

    let mut sum = Mat::zeros(n * n, n * n);
    let mut min_eig = f64::INFINITY;
    let mut factors_psd = true;
    for t in dec.terms() {
        let k = build_phi_matrix(&pure_value_vector(harmonics, labels.0, &t.left)?, group)?;
        let nn = build_phi_matrix(&pure_value_vector(harmonics, labels.1, &t.right)?, group)?;
        for f in [&k, &nn] {
            let v = f.verdict();
            min_eig = min_eig.min(v.min_eigenvalue);
            factors_psd &= v.is_psd;
        }
        sum += kron(k.matrix(), nn.matrix()) * C64::from(t.weight);
    }
    let max_deviation = max_abs_diff(&big, &sum);
    let trace_deviation = (linalg::trace(&big) / (n * n) as f64 - linalg::ONE).norm();
    let first_row_deviation = (0..n * n)
        .map(|col| (big[(0, col)] - table[(col / n, col % n)]).norm())
        .fold(0.0, f64::max);
    Ok(EmbeddingCheck {
        holds: max_deviation <= DECOMPOSITION_TOL && factors_psd && trace_deviation <= DECOMPOSITION_TOL,
        max_deviation,
        min_factor_eigenvalue: min_eig,
        factors_psd,
        trace_deviation,
        first_row_deviation,
        tolerance: DECOMPOSITION_TOL,
    })
}

/// Verdict on `Φ̃`, the Φ-matrix of `φ̃`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhiPptReport {
    pub verdict: PsdVerdict,
    /// `Φ̃_{αα′,ββ′} = Φ_{βα′,αβ′}` holds bit for bit.
    pub index_identity_exact: bool,
}

/// Builds `Φ̃` from `φ̃` and checks it against the index-swapped `Φ`.
pub fn phi_partial_transpose_test<F>(phi: &F) -> PhiPptReport
where
    F: BiFunction<Base = FiniteHarmonics> + Clone,
{
    let group = phi.base().group().clone();
    let n = group.order();
    let big = product_phi_matrix(&value_table(phi), &group);
    let big_tilde = product_phi_matrix(&value_table(&tilde(phi.clone())), &group);
    let swapped = Mat::from_fn(n * n, n * n, |row, col| {
        let (a, a2) = (row / n, row % n);
        let (b, b2) = (col / n, col % n);
        big[(b * n + a2, a * n + b2)]
    });
    PhiPptReport {
        verdict: PsdVerdict::of_matrix(&big_tilde),
        index_identity_exact: big_tilde == swapped,
    }
}
