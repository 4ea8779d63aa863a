//! Non-commutative characteristic functions `φ_A(g) = tr[A τ(g)]`.
//!
//! A [`CharFunc`] stores one operator block per irrep label and is evaluated
//! as `φ(g) = Σ_k tr[B_k τ_k(g)]`. Finite-group value vectors are derived from
//! the blocks on demand.

mod density;
pub mod io;
mod phi;
mod product;
mod verdict;

use std::collections::BTreeMap;

pub use density::DensityMatrix;
pub use phi::{block_decompose, build_phi_matrix, PhiMatrix};
pub use product::{product_integrate, BiFunction};
pub use verdict::PsdVerdict;

use crate::error::{Error, Result};
use crate::groups::HaarGrid;
use crate::linalg::{self, max_abs, Mat, C64};
use crate::representations::{FiniteHarmonics, HarmonicGroup, Product};
use crate::tolerances::{IDENTITY_TOL, NORMALIZATION_TOL};

/// A band-limited characteristic function in irrep-block form.
#[derive(Debug, Clone)]
pub struct CharFunc<G: HarmonicGroup> {
    group: G,
    blocks: BTreeMap<G::Label, Mat>,
}

impl<G: HarmonicGroup> CharFunc<G> {
    /// Each block must be `d_k × d_k` for its label.
    pub fn from_blocks<I>(group: G, blocks: I) -> Result<Self>
    where
        I: IntoIterator<Item = (G::Label, Mat)>,
    {
        let mut map = BTreeMap::new();
        for (label, block) in blocks {
            let d = group.irrep_dim(&label)?;
            if block.nrows() != d || block.ncols() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: block.nrows().max(block.ncols()),
                });
            }
            map.insert(label, block);
        }
        Ok(Self { group, blocks: map })
    }

    pub fn group(&self) -> &G {
        &self.group
    }

    pub fn blocks(&self) -> &BTreeMap<G::Label, Mat> {
        &self.blocks
    }

    pub fn block(&self, label: &G::Label) -> Option<&Mat> {
        self.blocks.get(label)
    }

    /// Labels whose block is not identically zero.
    pub fn support(&self) -> Vec<G::Label> {
        self.blocks
            .iter()
            .filter(|(_, b)| max_abs(b) > 0.0)
            .map(|(k, _)| k.clone())
            .collect()
    }

    pub fn evaluate(&self, g: &G::Element) -> C64 {
        self.blocks
            .iter()
            .map(|(k, b)| linalg::trace_of_product(b, &self.group.irrep_matrix(k, g)))
            .sum()
    }

    /// `φ(e) = Σ_k tr B_k`.
    pub fn normalization(&self) -> C64 {
        self.blocks.values().map(linalg::trace).sum()
    }

    pub fn is_normalized(&self) -> bool {
        (self.normalization() - linalg::ONE).norm() <= NORMALIZATION_TOL
    }

    /// Largest polynomial degree among the supported irreps.
    pub fn band_degree(&self) -> u32 {
        self.blocks.keys().map(|k| self.group.irrep_degree(k)).max().unwrap_or(0)
    }

    /// Exact positive-definiteness: every block must be PSD.
    pub fn is_positive_definite(&self) -> PsdVerdict {
        PsdVerdict::all(self.blocks.values().map(PsdVerdict::of_matrix))
            .unwrap_or_else(|| PsdVerdict::from_min_eigenvalue(0.0, 0.0))
    }

    pub fn scaled(&self, s: C64) -> Self {
        Self {
            group: self.group.clone(),
            blocks: self.blocks.iter().map(|(k, b)| (k.clone(), b * s)).collect(),
        }
    }

    /// `g ↦ conj φ(g⁻¹)`, the function of the adjoint operator.
    pub fn adjoint(&self) -> Self {
        Self {
            group: self.group.clone(),
            blocks: self.blocks.iter().map(|(k, b)| (k.clone(), b.adjoint())).collect(),
        }
    }
}

impl CharFunc<FiniteHarmonics> {
    /// Value vector indexed by group element.
    pub fn values(&self) -> Vec<C64> {
        self.group.group().elements().map(|g| self.evaluate(&g)).collect()
    }

    /// The Φ-matrix of the value vector.
    pub fn phi_matrix(&self) -> Result<PhiMatrix> {
        build_phi_matrix(&self.values(), self.group.group())
    }
}

impl<G: HarmonicGroup> CharFunc<Product<G>> {
    /// Per-slot polynomial degrees.
    pub fn slot_degrees(&self) -> (u32, u32) {
        let base = &self.group.0;
        self.blocks.keys().fold((0, 0), |(a, b), (l, r)| {
            (a.max(base.irrep_degree(l)), b.max(base.irrep_degree(r)))
        })
    }
}

/// `φ_A(g) = tr[A τ(g)]`, stored as the single block `A` at `label`.
pub fn forward_transform<G: HarmonicGroup>(a: &Mat, group: &G, label: G::Label) -> Result<CharFunc<G>> {
    let d = group.irrep_dim(&label)?;
    if a.nrows() != d || a.ncols() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: if a.nrows() != d { a.nrows() } else { a.ncols() },
        });
    }
    CharFunc::from_blocks(group.clone(), [(label, a.clone())])
}

/// `A = d_τ ∫ φ(g) τ(g)† dg` evaluated on a Haar grid.
///
/// Labels outside the support of `φ` give the zero operator, as guaranteed by
/// Peter–Weyl orthogonality.
pub fn inverse_transform<G: HarmonicGroup>(
    phi: &CharFunc<G>,
    label: &G::Label,
    grid: &HaarGrid<G::Element>,
) -> Result<Mat> {
    let group = phi.group();
    let d = group.irrep_dim(label)?;
    if !grid.is_exact() {
        grid.require_degree(phi.band_degree() + group.irrep_degree(label))?;
    }
    let mut acc = Mat::zeros(d, d);
    for (g, w) in grid.iter() {
        let v = phi.evaluate(g) * (w * d as f64);
        acc += group.irrep_matrix(label, g).adjoint() * v;
    }
    Ok(acc)
}

/// Inverse transform on `G × G` using separate grids for each slot.
pub fn inverse_transform_product<G: HarmonicGroup>(
    phi: &CharFunc<Product<G>>,
    label: &(G::Label, G::Label),
    left: &HaarGrid<G::Element>,
    right: &HaarGrid<G::Element>,
) -> Result<Mat> {
    let base = &phi.group().0;
    let (dl, dr) = phi.slot_degrees();
    if !left.is_exact() {
        left.require_degree(dl + base.irrep_degree(&label.0))?;
    }
    if !right.is_exact() {
        right.require_degree(dr + base.irrep_degree(&label.1))?;
    }
    let (m, n) = (base.irrep_dim(&label.0)?, base.irrep_dim(&label.1)?);
    let values = phi.grid_values(left.nodes(), right.nodes());
    let p: Vec<Mat> = left.nodes().iter().map(|g| base.irrep_matrix(&label.0, g).adjoint() * C64::from(m as f64)).collect();
    let q: Vec<Mat> = right.nodes().iter().map(|g| base.irrep_matrix(&label.1, g).adjoint() * C64::from(n as f64)).collect();
    Ok(product_integrate(&values, left.weights(), right.weights(), &p, &q))
}

/// Block-form convolution `(φ_A * φ_B)(g) = ∫ φ_A(h) φ_B(g h⁻¹) dh`.
///
/// Each block becomes `B_A B_B / d_k`, so `d_τ (φ_A * φ_B) = φ_{AB}`.
pub fn convolve<G: HarmonicGroup>(a: &CharFunc<G>, b: &CharFunc<G>) -> Result<CharFunc<G>> {
    let ka: Vec<&G::Label> = a.blocks.keys().collect();
    let kb: Vec<&G::Label> = b.blocks.keys().collect();
    if ka != kb {
        return Err(Error::SupportMismatch(format!("{ka:?} vs {kb:?}")));
    }
    let blocks = a
        .blocks
        .iter()
        .map(|(k, ba)| {
            let d = a.group.irrep_dim(k)? as f64;
            Ok((k.clone(), ba * &b.blocks[k] / C64::from(d)))
        })
        .collect::<Result<Vec<_>>>()?;
    CharFunc::from_blocks(a.group.clone(), blocks)
}

/// The convolution integral at one point, summed over a Haar grid.
pub fn convolution_integral<G: HarmonicGroup>(
    a: &CharFunc<G>,
    b: &CharFunc<G>,
    g: &G::Element,
    grid: &HaarGrid<G::Element>,
) -> Result<C64> {
    if !grid.is_exact() {
        grid.require_degree(a.band_degree() + b.band_degree())?;
    }
    let group = a.group();
    Ok(grid
        .iter()
        .map(|(h, w)| a.evaluate(h) * b.evaluate(&group.multiply(g, &group.inverse(h))) * w)
        .sum())
}

/// Purity verdict with the residual that decided it.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PurityCheck {
    pub is_pure: bool,
    pub deviation: f64,
    pub tolerance: f64,
}

impl PurityCheck {
    pub fn from_deviation(deviation: f64) -> Self {
        Self {
            is_pure: deviation <= IDENTITY_TOL,
            deviation,
            tolerance: IDENTITY_TOL,
        }
    }
}

fn single_block<G: HarmonicGroup>(phi: &CharFunc<G>) -> Result<(&G::Label, &Mat)> {
    let nonzero: Vec<_> = phi.blocks.iter().filter(|(_, b)| max_abs(b) > 0.0).collect();
    match nonzero.as_slice() {
        [one] => Ok(*one),
        _ => Err(Error::MultiIrrepSupport(nonzero.len())),
    }
}

/// Block idempotency `B² = B` for a function supported on one irrep.
pub fn is_pure<G: HarmonicGroup>(phi: &CharFunc<G>) -> Result<PurityCheck> {
    let (_, b) = single_block(phi)?;
    Ok(PurityCheck::from_deviation(max_abs(&(b * b - b))))
}

/// `max_g |d_τ (φ * φ)(g) − φ(g)|` over `nodes`, with the convolution summed on `grid`.
pub fn purity_deviation_sampled<G: HarmonicGroup>(
    phi: &CharFunc<G>,
    nodes: &[G::Element],
    grid: &HaarGrid<G::Element>,
) -> Result<f64> {
    let (label, _) = single_block(phi)?;
    let d = phi.group.irrep_dim(label)? as f64;
    let mut worst: f64 = 0.0;
    for g in nodes {
        let conv = convolution_integral(phi, phi, g, grid)?;
        worst = worst.max((conv * d - phi.evaluate(g)).norm());
    }
    Ok(worst)
}

/// Gram test `[φ(g_a⁻¹ g_b)] ≥ 0` on a finite node set (a necessary condition).
pub fn sampled_gram_verdict<G, F>(group: &G, f: F, nodes: &[G::Element]) -> PsdVerdict
where
    G: HarmonicGroup,
    F: Fn(&G::Element) -> C64,
{
    let inv: Vec<G::Element> = nodes.iter().map(|g| group.inverse(g)).collect();
    let gram = Mat::from_fn(nodes.len(), nodes.len(), |a, b| f(&group.multiply(&inv[a], &nodes[b])));
    let mut v = PsdVerdict::of_matrix(&gram);
    v.necessary_only = true;
    v
}

/// Maximum `|φ(g⁻¹) − conj φ(g)|` over `nodes`.
pub fn conjugation_symmetry_residual<G: HarmonicGroup>(phi: &CharFunc<G>, nodes: &[G::Element]) -> f64 {
    nodes
        .iter()
        .map(|g| (phi.evaluate(&phi.group.inverse(g)) - phi.evaluate(g).conj()).norm())
        .fold(0.0, f64::max)
}

/// Zero-valued function on a group (no blocks).
pub fn zero_charfunc<G: HarmonicGroup>(group: G) -> CharFunc<G> {
    CharFunc {
        group,
        blocks: BTreeMap::new(),
    }
}
