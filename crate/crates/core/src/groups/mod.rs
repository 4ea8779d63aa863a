//! Finite groups, SU(2), and Haar integration rules over them.

mod finite;
mod quadrature;
mod su2;

pub use finite::{finite_haar_average, FiniteGroup};
pub use quadrature::{gauss_legendre, peter_weyl_residual, HaarQuadrature};
pub use su2::SU2Element;

/// Degree marker for rules that are exact for every integrand (finite sums).
pub const EXACT: u32 = u32::MAX;

/// Weighted node set approximating the normalized Haar measure.
///
/// `degree` is the polynomial exactness degree on SU(2); finite-group rules
/// carry [`EXACT`].
#[derive(Debug, Clone)]
pub struct HaarGrid<E> {
    nodes: Vec<E>,
    weights: Vec<f64>,
    degree: u32,
}

impl<E> HaarGrid<E> {
    pub fn new(nodes: Vec<E>, weights: Vec<f64>, degree: u32) -> Self {
        assert_eq!(nodes.len(), weights.len(), "one weight per node");
        Self { nodes, weights, degree }
    }

    pub fn exact(nodes: Vec<E>, weights: Vec<f64>) -> Self {
        Self::new(nodes, weights, EXACT)
    }

    pub fn nodes(&self) -> &[E] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_exact(&self) -> bool {
        self.degree == EXACT
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&E, f64)> {
        self.nodes.iter().zip(self.weights.iter().copied())
    }

    /// Errors unless the rule integrates polynomials of degree `required` exactly.
    pub fn require_degree(&self, required: u32) -> crate::Result<()> {
        if required > self.degree {
            Err(crate::Error::QuadratureTooCoarse {
                required,
                available: self.degree,
            })
        } else {
            Ok(())
        }
    }
}
