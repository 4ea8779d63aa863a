use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::charfunc::{BiFunction, CharFunc};
use crate::error::{Error, Result};
use crate::linalg::{self, kron, vec_from_pairs, vec_to_pairs, CVec, Mat, C64};
use crate::representations::{HarmonicGroup, Product};
use crate::tolerances::{DECOMPOSITION_TOL, IDENTITY_TOL};

/// One term `p |u⟩⟨u| ⊗ |v⟩⟨v|`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparableTerm {
    pub weight: f64,
    pub left: CVec,
    pub right: CVec,
}

/// A convex combination of pure product states.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparableDecomposition {
    terms: Vec<SeparableTerm>,
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    weight: f64,
    left: Vec<[f64; 2]>,
    right: Vec<[f64; 2]>,
}

impl SeparableDecomposition {
    /// Weights must be non-negative and sum to one; vectors must have unit norm
    /// and consistent dimensions.
    pub fn new(terms: Vec<SeparableTerm>) -> Result<Self> {
        let first = terms
            .first()
            .ok_or_else(|| Error::InvalidDecomposition("no terms".into()))?;
        let (m, n) = (first.left.len(), first.right.len());
        for (i, t) in terms.iter().enumerate() {
            if t.left.len() != m || t.right.len() != n {
                return Err(Error::InvalidDecomposition(format!(
                    "term {} has dimensions {}x{}, expected {m}x{n}",
                    i + 1,
                    t.left.len(),
                    t.right.len()
                )));
            }
            if !(t.weight >= 0.0) {
                return Err(Error::InvalidDecomposition(format!("term {} has weight {}", i + 1, t.weight)));
            }
            for (side, v) in [("left", &t.left), ("right", &t.right)] {
                if (v.norm() - 1.0).abs() > DECOMPOSITION_TOL {
                    return Err(Error::InvalidDecomposition(format!(
                        "term {} {side} vector has norm {}",
                        i + 1,
                        v.norm()
                    )));
                }
            }
        }
        let total: f64 = terms.iter().map(|t| t.weight).sum();
        if (total - 1.0).abs() > DECOMPOSITION_TOL {
            return Err(Error::InvalidDecomposition(format!("weights sum to {total}")));
        }
        Ok(Self { terms })
    }

    pub fn terms(&self) -> &[SeparableTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.terms[0].left.len(), self.terms[0].right.len())
    }

    /// `Σ p_i |u_i⟩⟨u_i| ⊗ |v_i⟩⟨v_i|`.
    pub fn density_matrix(&self) -> Mat {
        let (m, n) = self.dims();
        self.terms.iter().fold(Mat::zeros(m * n, m * n), |acc, t| {
            acc + kron(&linalg::projector(&t.left), &linalg::projector(&t.right)) * C64::from(t.weight)
        })
    }

    /// Decomposition file: a JSON list of `{weight, left, right}` records with
    /// vectors as `[re, im]` pairs.
    pub fn from_json(text: &str) -> Result<Self> {
        let records: Vec<TermRecord> = serde_json::from_str(text)?;
        Self::new(
            records
                .into_iter()
                .map(|r| SeparableTerm {
                    weight: r.weight,
                    left: vec_from_pairs(&r.left),
                    right: vec_from_pairs(&r.right),
                })
                .collect(),
        )
    }

    pub fn to_json(&self) -> String {
        let records: Vec<TermRecord> = self
            .terms
            .iter()
            .map(|t| TermRecord {
                weight: t.weight,
                left: vec_to_pairs(&t.left),
                right: vec_to_pairs(&t.right),
            })
            .collect();
        serde_json::to_string_pretty(&records).expect("serializable")
    }
}

/// `⟨v|τ(g)|v⟩` for each node, one column per vector.
fn pure_values<G: HarmonicGroup>(group: &G, label: &G::Label, vectors: &[&CVec], nodes: &[G::Element]) -> DMatrix<C64> {
    let mut out = DMatrix::zeros(nodes.len(), vectors.len());
    for (a, g) in nodes.iter().enumerate() {
        let t = group.irrep_matrix(label, g);
        for (i, v) in vectors.iter().enumerate() {
            out[(a, i)] = v.dotc(&(&t * *v));
        }
    }
    out
}

/// Comparison of `φ` with `Σ p_i κ_i(g₁) η_i(g₂)` on a node grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecompositionCheck {
    pub holds: bool,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub terms: usize,
    /// `m² n²`.
    pub caratheodory_bound: usize,
}

/// Evaluates the decomposition on `left × right` and compares with `φ`.
pub fn verify_separable_decomposition<G: HarmonicGroup>(
    phi: &CharFunc<Product<G>>,
    dec: &SeparableDecomposition,
    labels: (&G::Label, &G::Label),
    left: &[G::Element],
    right: &[G::Element],
) -> Result<DecompositionCheck> {
    let base = &phi.group().0;
    let (m, n) = (base.irrep_dim(labels.0)?, base.irrep_dim(labels.1)?);
    if dec.dims() != (m, n) {
        return Err(Error::DimensionMismatch {
            expected: m * n,
            found: dec.dims().0 * dec.dims().1,
        });
    }
    let us: Vec<&CVec> = dec.terms.iter().map(|t| &t.left).collect();
    let vs: Vec<&CVec> = dec.terms.iter().map(|t| &t.right).collect();
    let kappa = pure_values(base, labels.0, &us, left);
    let mut eta = pure_values(base, labels.1, &vs, right);
    for (i, t) in dec.terms.iter().enumerate() {
        eta.column_mut(i).scale_mut(t.weight);
    }
    let mixture = kappa * eta.transpose();
    let target = phi.grid_values(left, right);
    let max_deviation = linalg::max_abs(&(mixture - target));
    Ok(DecompositionCheck {
        holds: max_deviation <= IDENTITY_TOL,
        max_deviation,
        tolerance: IDENTITY_TOL,
        terms: dec.len(),
        caratheodory_bound: (m * n) * (m * n),
    })
}
