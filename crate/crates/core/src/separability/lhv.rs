//! Outcome probabilities written as integrals of `φ_ρ` against response functions
//! `R(μ, g) = tr[P_μ π(g)†]`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::charfunc::{BiFunction, CharFunc};
use crate::error::{Error, Result};
use crate::groups::HaarGrid;
use crate::linalg::{self, max_abs_diff, Mat, C64};
use crate::representations::{HarmonicGroup, Product};
use crate::tolerances::IDENTITY_TOL;

/// Errors unless the projectors are Hermitian, idempotent, mutually orthogonal
/// and sum to the identity.
pub fn validate_projector_family(projectors: &[Mat], dim: usize) -> Result<()> {
    let bad = |msg: String| Err(Error::IncompleteProjectorFamily(msg));
    if projectors.is_empty() {
        return bad("empty family".into());
    }
    let mut total = Mat::zeros(dim, dim);
    for (i, p) in projectors.iter().enumerate() {
        if p.nrows() != dim || p.ncols() != dim {
            return bad(format!("projector {} is {}x{}, expected {dim}x{dim}", i + 1, p.nrows(), p.ncols()));
        }
        if linalg::hermiticity_residual(p) > IDENTITY_TOL || max_abs_diff(&(p * p), p) > IDENTITY_TOL {
            return bad(format!("element {} is not an orthogonal projector", i + 1));
        }
        for (j, q) in projectors.iter().enumerate().skip(i + 1) {
            if linalg::max_abs(&(p * q)) > IDENTITY_TOL {
                return bad(format!("projectors {} and {} overlap", i + 1, j + 1));
            }
        }
        total += p;
    }
    if max_abs_diff(&total, &Mat::identity(dim, dim)) > IDENTITY_TOL {
        return bad("projectors do not sum to the identity".into());
    }
    Ok(())
}

/// Joint outcome table `p(μ, ν)` with its consistency figures.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LhvTable {
    /// Rows indexed by left outcomes.
    pub probabilities: Vec<Vec<f64>>,
    /// Largest imaginary part discarded from the table.
    pub max_imaginary: f64,
    /// Marginals from the one-slot integrals of `φ(g, e)` and `φ(e, g)`.
    pub left_marginals: Vec<f64>,
    pub right_marginals: Vec<f64>,
    /// Largest mismatch between row/column sums and the marginals.
    pub marginal_deviation: f64,
    pub total: f64,
    /// Some response function `tr[P_μ π(g)†]` takes non-real values on the grid.
    pub complex_response: bool,
}

impl LhvTable {
    /// `max |p(μ,ν) − tr[(P_μ ⊗ Q_ν) ρ]|`.
    pub fn max_deviation_from(&self, rho: &Mat, left: &[Mat], right: &[Mat]) -> f64 {
        let mut worst: f64 = 0.0;
        for (mu, p) in left.iter().enumerate() {
            for (nu, q) in right.iter().enumerate() {
                let direct = linalg::trace_of_product(&linalg::kron(p, q), rho).re;
                worst = worst.max((self.probabilities[mu][nu] - direct).abs());
            }
        }
        worst
    }
}

/// `R[μ, a] = d w_a tr[P_μ π(g_a)†]`.
fn response<G: HarmonicGroup>(group: &G, label: &G::Label, projectors: &[Mat], grid: &HaarGrid<G::Element>, d: usize) -> DMatrix<C64> {
    let mats: Vec<Mat> = grid.nodes().iter().map(|g| group.irrep_matrix(label, g).adjoint()).collect();
    DMatrix::from_fn(projectors.len(), grid.len(), |mu, a| {
        linalg::trace_of_product(&projectors[mu], &mats[a]) * (grid.weights()[a] * d as f64)
    })
}

/// `p(μ,ν) = d_π d_τ ∬ φ(g₁,g₂) tr[P_μ π(g₁)†] tr[Q_ν τ(g₂)†] dg₁ dg₂`.
pub fn lhv_probability<G: HarmonicGroup>(
    phi: &CharFunc<Product<G>>,
    labels: (&G::Label, &G::Label),
    left_projectors: &[Mat],
    right_projectors: &[Mat],
    left: &HaarGrid<G::Element>,
    right: &HaarGrid<G::Element>,
) -> Result<LhvTable> {
    let base = &phi.group().0;
    let (m, n) = (base.irrep_dim(labels.0)?, base.irrep_dim(labels.1)?);
    validate_projector_family(left_projectors, m)?;
    validate_projector_family(right_projectors, n)?;
    let (dl, dr) = phi.slot_degrees();
    if !left.is_exact() {
        left.require_degree(dl + base.irrep_degree(labels.0))?;
    }
    if !right.is_exact() {
        right.require_degree(dr + base.irrep_degree(labels.1))?;
    }
    let r1 = response(base, labels.0, left_projectors, left, m);
    let r2 = response(base, labels.1, right_projectors, right, n);
    let complex_response = r1.iter().chain(r2.iter()).any(|z| z.im.abs() > 1e-12);

    let values = phi.grid_values(left.nodes(), right.nodes());
    let table = &r1 * values * r2.transpose();
    let e = [base.identity()];
    let left_marg = &r1 * phi.grid_values(left.nodes(), &e);
    let right_marg = &r2 * phi.grid_values(&e, right.nodes()).transpose();

    let probabilities: Vec<Vec<f64>> = (0..table.nrows())
        .map(|mu| (0..table.ncols()).map(|nu| table[(mu, nu)].re).collect())
        .collect();
    let left_marginals: Vec<f64> = left_marg.iter().map(|z| z.re).collect();
    let right_marginals: Vec<f64> = right_marg.iter().map(|z| z.re).collect();
    let mut marginal_deviation: f64 = 0.0;
    for (mu, row) in probabilities.iter().enumerate() {
        marginal_deviation = marginal_deviation.max((row.iter().sum::<f64>() - left_marginals[mu]).abs());
    }
    for (nu, q) in right_marginals.iter().enumerate() {
        let col: f64 = probabilities.iter().map(|row| row[nu]).sum();
        marginal_deviation = marginal_deviation.max((col - q).abs());
    }
    Ok(LhvTable {
        total: probabilities.iter().flatten().sum(),
        max_imaginary: table.iter().map(|z| z.im.abs()).fold(0.0, f64::max),
        probabilities,
        left_marginals,
        right_marginals,
        marginal_deviation,
        complex_response,
    })
}
