//! Unitary irreducible representations and the group/irrep catalogs the
//! transforms are written against.

mod finite;
mod spin;

use std::fmt::Debug;
use std::sync::Arc;

pub use finite::{cyclic, dihedral4, symmetric3, FiniteIrrep};
pub use spin::{spin_matrix, spin_matrix_monomial, Spin, SpinRep};

use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, SU2Element};
use crate::linalg::{self, kron, Mat, C64};

/// A matrix representation `g ↦ R(g)`.
pub trait Representation {
    type Element;

    fn dim(&self) -> usize;

    fn matrix(&self, g: &Self::Element) -> Mat;

    fn character(&self, g: &Self::Element) -> C64 {
        linalg::trace(&self.matrix(g))
    }
}

/// `T(g₁, g₂) = π(g₁) ⊗ τ(g₂)` on `H_π ⊗ H_τ`, left factor slowest.
#[derive(Debug, Clone)]
pub struct ProductRep<A, B> {
    pub left: A,
    pub right: B,
}

pub fn tensor_rep<A: Representation, B: Representation>(left: A, right: B) -> ProductRep<A, B> {
    ProductRep { left, right }
}

impl<A: Representation, B: Representation> Representation for ProductRep<A, B> {
    type Element = (A::Element, B::Element);

    fn dim(&self) -> usize {
        self.left.dim() * self.right.dim()
    }

    fn matrix(&self, g: &Self::Element) -> Mat {
        kron(&self.left.matrix(&g.0), &self.right.matrix(&g.1))
    }
}

/// Representations with an entrywise-conjugate counterpart.
pub trait Conjugate {
    fn conjugate(&self) -> Self;
}

impl Conjugate for SpinRep {
    fn conjugate(&self) -> Self {
        SpinRep::conjugate(self)
    }
}

impl Conjugate for FiniteIrrep {
    fn conjugate(&self) -> Self {
        FiniteIrrep::conjugate(self)
    }
}

pub fn conjugate_rep<R: Conjugate>(rep: &R) -> R {
    rep.conjugate()
}

/// A compact group together with a catalog of its unitary irreps.
///
/// Characteristic functions are stored as one operator block per irrep label
/// and evaluated through `irrep_matrix`.
pub trait HarmonicGroup: Clone + Debug {
    type Element: Clone + Debug;
    type Label: Ord + Clone + Debug;

    fn identity(&self) -> Self::Element;
    fn multiply(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn inverse(&self, a: &Self::Element) -> Self::Element;
    fn irrep_dim(&self, label: &Self::Label) -> Result<usize>;
    fn irrep_matrix(&self, label: &Self::Label, g: &Self::Element) -> Mat;
    /// Polynomial degree of the irrep's matrix elements in the group parameters
    /// (`2j` on SU(2); `0` where integration is exact).
    fn irrep_degree(&self, label: &Self::Label) -> u32;
}

/// SU(2) with its spin-j irreps in the unitary basis.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Su2;

impl HarmonicGroup for Su2 {
    type Element = SU2Element;
    type Label = Spin;

    fn identity(&self) -> SU2Element {
        SU2Element::identity()
    }

    fn multiply(&self, a: &SU2Element, b: &SU2Element) -> SU2Element {
        a.multiply(b)
    }

    fn inverse(&self, a: &SU2Element) -> SU2Element {
        a.inverse()
    }

    fn irrep_dim(&self, label: &Spin) -> Result<usize> {
        Ok(label.dim())
    }

    fn irrep_matrix(&self, label: &Spin, g: &SU2Element) -> Mat {
        spin_matrix(*label, g)
    }

    fn irrep_degree(&self, label: &Spin) -> u32 {
        label.twice()
    }
}

/// A finite group with a list of its irreps (labels index into the list).
#[derive(Debug, Clone)]
pub struct FiniteHarmonics {
    name: String,
    group: Arc<FiniteGroup>,
    irreps: Arc<Vec<FiniteIrrep>>,
}

impl FiniteHarmonics {
    /// Every irrep must be defined over `group`; the list need not be complete
    /// (see [`FiniteHarmonics::is_complete`]).
    pub fn new(name: impl Into<String>, group: Arc<FiniteGroup>, irreps: Vec<FiniteIrrep>) -> Result<Self> {
        if irreps.iter().any(|p| **p.group() != *group) {
            return Err(Error::InvalidRepresentation("irrep defined over a different group".into()));
        }
        Ok(Self {
            name: name.into(),
            group,
            irreps: Arc::new(irreps),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn irreps(&self) -> &[FiniteIrrep] {
        &self.irreps
    }

    pub fn irrep(&self, k: usize) -> Result<&FiniteIrrep> {
        self.irreps
            .get(k)
            .ok_or_else(|| Error::InvalidRepresentation(format!("no irrep with label {k} in {}", self.name)))
    }

    pub fn irrep_dims(&self) -> Vec<usize> {
        self.irreps.iter().map(Representation::dim).collect()
    }

    /// Errors unless the irreps are pairwise inequivalent and `Σ d_k² = N`.
    pub fn ensure_complete(&self) -> Result<()> {
        let n = self.group.order();
        let sum: usize = self.irrep_dims().iter().map(|d| d * d).sum();
        if sum != n {
            return Err(Error::IncompleteIrrepList(format!(
                "sum of squared dimensions is {sum}, group order is {n}"
            )));
        }
        let chars: Vec<Vec<C64>> = self.irreps.iter().map(FiniteIrrep::character).collect();
        for a in 0..chars.len() {
            for b in (a + 1)..chars.len() {
                let overlap: C64 = chars[a].iter().zip(&chars[b]).map(|(x, y)| x * y.conj()).sum::<C64>() / n as f64;
                if overlap.norm() > 1e-9 {
                    return Err(Error::IncompleteIrrepList(format!(
                        "irreps {a} and {b} are equivalent"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_complete(&self) -> bool {
        self.ensure_complete().is_ok()
    }
}

impl HarmonicGroup for FiniteHarmonics {
    type Element = usize;
    type Label = usize;

    fn identity(&self) -> usize {
        0
    }

    fn multiply(&self, a: &usize, b: &usize) -> usize {
        self.group.multiply(*a, *b)
    }

    fn inverse(&self, a: &usize) -> usize {
        self.group.inverse(*a)
    }

    fn irrep_dim(&self, label: &usize) -> Result<usize> {
        Ok(self.irrep(*label)?.dim())
    }

    fn irrep_matrix(&self, label: &usize, g: &usize) -> Mat {
        self.irreps[*label].matrices()[*g].clone()
    }

    fn irrep_degree(&self, _label: &usize) -> u32 {
        0
    }
}

/// The product group `G × G`; its irreps are the pairs `π ⊗ τ`.
#[derive(Debug, Clone)]
pub struct Product<G>(pub G);

impl<G: HarmonicGroup> HarmonicGroup for Product<G> {
    type Element = (G::Element, G::Element);
    type Label = (G::Label, G::Label);

    fn identity(&self) -> Self::Element {
        (self.0.identity(), self.0.identity())
    }

    fn multiply(&self, a: &Self::Element, b: &Self::Element) -> Self::Element {
        (self.0.multiply(&a.0, &b.0), self.0.multiply(&a.1, &b.1))
    }

    fn inverse(&self, a: &Self::Element) -> Self::Element {
        (self.0.inverse(&a.0), self.0.inverse(&a.1))
    }

    fn irrep_dim(&self, label: &Self::Label) -> Result<usize> {
        Ok(self.0.irrep_dim(&label.0)? * self.0.irrep_dim(&label.1)?)
    }

    fn irrep_matrix(&self, label: &Self::Label, g: &Self::Element) -> Mat {
        kron(&self.0.irrep_matrix(&label.0, &g.0), &self.0.irrep_matrix(&label.1, &g.1))
    }

    fn irrep_degree(&self, label: &Self::Label) -> u32 {
        self.0.irrep_degree(&label.0) + self.0.irrep_degree(&label.1)
    }
}

/// Built-in finite groups with complete irrep lists: `Z<n>` (or `Z_<n>`),
/// `S3`, `D4`.
pub fn builtin_group(name: &str) -> Result<FiniteHarmonics> {
    let key = name.trim().to_ascii_uppercase().replace('_', "");
    let (group, tables) = match key.as_str() {
        "S3" => symmetric3()?,
        "D4" => dihedral4()?,
        _ => match key.strip_prefix('Z').and_then(|n| n.parse::<usize>().ok()) {
            Some(n) if n >= 1 => cyclic(n)?,
            _ => return Err(Error::UnknownGroup(name.to_string())),
        },
    };
    let group = Arc::new(group);
    let irreps = tables
        .into_iter()
        .map(|m| FiniteIrrep::new(Arc::clone(&group), m))
        .collect::<Result<Vec<_>>>()?;
    let h = FiniteHarmonics::new(key, group, irreps)?;
    h.ensure_complete()?;
    Ok(h)
}
