//! Entanglement criteria phrased through characteristic functions on `G × G`.

mod abelian;
mod decomposition;
mod finite;
mod lhv;

pub use abelian::{abelian_restriction, AbelianSpectrum};
pub use decomposition::{verify_separable_decomposition, DecompositionCheck, SeparableDecomposition, SeparableTerm};
pub use finite::{
    phi_matrix_embedding, phi_partial_transpose_test, product_phi_matrix, value_table, EmbeddingCheck, PhiPptReport,
};
pub use lhv::{lhv_probability, validate_projector_family, LhvTable};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::charfunc::{forward_transform, product_integrate, BiFunction, CharFunc, DensityMatrix, PsdVerdict};
use crate::error::{Error, Result};
use crate::groups::HaarGrid;
use crate::linalg::{self, max_abs_diff, partial_trace_left, partial_trace_right, partial_transpose_left, CVec, Mat, C64};
use crate::representations::{HarmonicGroup, Product};
use crate::tolerances::{IDENTITY_TOL, NORMALIZATION_TOL};

/// A density matrix on `H_π ⊗ H_τ` with the irreps that carry each factor.
#[derive(Debug, Clone)]
pub struct BipartiteState<G: HarmonicGroup> {
    rho: DensityMatrix,
    group: G,
    left: G::Label,
    right: G::Label,
    dims: (usize, usize),
}

impl<G: HarmonicGroup> BipartiteState<G> {
    pub fn new(rho: DensityMatrix, group: G, left: G::Label, right: G::Label) -> Result<Self> {
        let dims = (group.irrep_dim(&left)?, group.irrep_dim(&right)?);
        if rho.dim() != dims.0 * dims.1 {
            return Err(Error::DimensionMismatch {
                expected: dims.0 * dims.1,
                found: rho.dim(),
            });
        }
        Ok(Self {
            rho,
            group,
            left,
            right,
            dims,
        })
    }

    pub fn rho(&self) -> &DensityMatrix {
        &self.rho
    }

    pub fn group(&self) -> &G {
        &self.group
    }

    pub fn labels(&self) -> (&G::Label, &G::Label) {
        (&self.left, &self.right)
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    /// `φ_ρ(g₁, g₂) = tr[ρ π(g₁) ⊗ τ(g₂)]`.
    pub fn charfunc(&self) -> CharFunc<Product<G>> {
        forward_transform(
            self.rho.matrix(),
            &Product(self.group.clone()),
            (self.left.clone(), self.right.clone()),
        )
        .expect("dimensions checked in BipartiteState::new")
    }
}

/// `φ̃(g₁, g₂) = φ(g₁⁻¹, g₂)`.
#[derive(Debug, Clone)]
pub struct Tilde<F>(pub F);

pub fn tilde<F: BiFunction>(f: F) -> Tilde<F> {
    Tilde(f)
}

impl<F: BiFunction> BiFunction for Tilde<F> {
    type Base = F::Base;

    fn base(&self) -> &F::Base {
        self.0.base()
    }

    fn evaluate_pair(
        &self,
        g1: &<F::Base as HarmonicGroup>::Element,
        g2: &<F::Base as HarmonicGroup>::Element,
    ) -> C64 {
        self.0.evaluate_pair(&self.0.base().inverse(g1), g2)
    }

    fn slot_degrees(&self) -> (u32, u32) {
        self.0.slot_degrees()
    }

    fn grid_values(
        &self,
        left: &[<F::Base as HarmonicGroup>::Element],
        right: &[<F::Base as HarmonicGroup>::Element],
    ) -> DMatrix<C64> {
        let inv: Vec<_> = left.iter().map(|g| self.0.base().inverse(g)).collect();
        self.0.grid_values(&inv, right)
    }
}

/// PSD verdict on `ρ^{T₁}` computed by block-transposing the left factor.
pub fn matrix_ppt_test(rho: &Mat, dims: (usize, usize)) -> Result<PsdVerdict> {
    let (m, n) = dims;
    if rho.nrows() != m * n || rho.ncols() != m * n {
        return Err(Error::DimensionMismatch {
            expected: m * n,
            found: rho.nrows(),
        });
    }
    Ok(PsdVerdict::of_matrix(&partial_transpose_left(rho, m, n)))
}

/// Outcome of the group-theoretic PPT test.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PptReport {
    /// Verdict on the operator reconstructed from `φ̃`.
    pub verdict: PsdVerdict,
    /// Verdict on the directly partially transposed matrix.
    pub direct: PsdVerdict,
    /// `max |reconstructed − ρ^{T₁}|`.
    pub reconstruction_deviation: f64,
    #[serde(skip)]
    pub reconstructed: Mat,
}

impl PptReport {
    /// Verdicts coincide, or at least one of them is marginal.
    pub fn agree(&self) -> bool {
        self.verdict.is_psd == self.direct.is_psd || self.verdict.marginal || self.direct.marginal
    }

    pub fn reconstruction_ok(&self) -> bool {
        self.reconstruction_deviation <= IDENTITY_TOL
    }
}

/// Reconstructs `ρ^{T₁} = d_π d_τ ∬ φ̃(g₁, g₂) π̄(g₁)† ⊗ τ(g₂)† dg₁ dg₂` and
/// tests it for positivity.
pub fn group_ppt_test<G: HarmonicGroup>(
    state: &BipartiteState<G>,
    left: &HaarGrid<G::Element>,
    right: &HaarGrid<G::Element>,
) -> Result<PptReport> {
    let group = state.group();
    let (pi, tau) = state.labels();
    if !left.is_exact() {
        left.require_degree(2 * group.irrep_degree(pi))?;
    }
    if !right.is_exact() {
        right.require_degree(2 * group.irrep_degree(tau))?;
    }
    let (m, n) = state.dims();
    let values = tilde(state.charfunc()).grid_values(left.nodes(), right.nodes());
    let p: Vec<Mat> = left
        .nodes()
        .iter()
        .map(|g| group.irrep_matrix(pi, g).map(|z| z.conj()).adjoint() * C64::from(m as f64))
        .collect();
    let q: Vec<Mat> = right
        .nodes()
        .iter()
        .map(|g| group.irrep_matrix(tau, g).adjoint() * C64::from(n as f64))
        .collect();
    let reconstructed = product_integrate(&values, left.weights(), right.weights(), &p, &q);
    let direct = partial_transpose_left(state.rho().matrix(), m, n);
    Ok(PptReport {
        verdict: PsdVerdict::of_matrix(&reconstructed),
        direct: PsdVerdict::of_matrix(&direct),
        reconstruction_deviation: max_abs_diff(&reconstructed, &direct),
        reconstructed,
    })
}

/// The two integrals `d_π ∫ |φ(g, e)|² dg` and `d_τ ∫ |φ(e, g)|² dg` of a pure state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PureProductReport {
    pub i1: f64,
    pub i2: f64,
    /// `tr ρ_A²` and `tr ρ_B²` computed from partial traces.
    pub purity_left: f64,
    pub purity_right: f64,
    pub is_product: bool,
    /// `max(|I₁ − tr ρ_A²|, |I₂ − tr ρ_B²|)`.
    pub purity_deviation: f64,
    pub tolerance: f64,
}

/// Product test for a unit vector `ψ ∈ H_π ⊗ H_τ`.
pub fn pure_product_test<G: HarmonicGroup>(
    psi: &CVec,
    group: &G,
    labels: (&G::Label, &G::Label),
    left: &HaarGrid<G::Element>,
    right: &HaarGrid<G::Element>,
) -> Result<PureProductReport> {
    let (pi, tau) = labels;
    let (m, n) = (group.irrep_dim(pi)?, group.irrep_dim(tau)?);
    if psi.len() != m * n {
        return Err(Error::DimensionMismatch {
            expected: m * n,
            found: psi.len(),
        });
    }
    if (psi.norm() - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::NotNormalized(format!("‖ψ‖ = {}", psi.norm())));
    }
    if !left.is_exact() {
        left.require_degree(2 * group.irrep_degree(pi))?;
    }
    if !right.is_exact() {
        right.require_degree(2 * group.irrep_degree(tau))?;
    }
    let rho = linalg::projector(psi);
    let phi = forward_transform(&rho, &Product(group.clone()), (pi.clone(), tau.clone()))?;
    let e = [group.identity()];
    let col = phi.grid_values(left.nodes(), &e);
    let row = phi.grid_values(&e, right.nodes());
    let i1 = m as f64 * left.weights().iter().enumerate().map(|(a, w)| w * col[(a, 0)].norm_sqr()).sum::<f64>();
    let i2 = n as f64 * right.weights().iter().enumerate().map(|(b, w)| w * row[(0, b)].norm_sqr()).sum::<f64>();
    let rho_a = partial_trace_right(&rho, m, n);
    let rho_b = partial_trace_left(&rho, m, n);
    let purity_left = linalg::trace_of_product(&rho_a, &rho_a).re;
    let purity_right = linalg::trace_of_product(&rho_b, &rho_b).re;
    Ok(PureProductReport {
        i1,
        i2,
        purity_left,
        purity_right,
        is_product: (i1 - 1.0).abs() <= IDENTITY_TOL && (i2 - 1.0).abs() <= IDENTITY_TOL,
        purity_deviation: (i1 - purity_left).abs().max((i2 - purity_right).abs()),
        tolerance: IDENTITY_TOL,
    })
}
