//! Functions on `G × G` evaluated and integrated on product grids.
//!
//! Both directions factor through matrix products so that a grid of
//! `N_left × N_right` points costs `O(N_left · N_right · n²)` instead of one
//! Kronecker product per point.

use nalgebra::DMatrix;

use crate::charfunc::CharFunc;
use crate::linalg::{Mat, C64, ZERO};
use crate::representations::{HarmonicGroup, Product};

/// A complex function of two group elements.
pub trait BiFunction {
    type Base: HarmonicGroup;

    fn base(&self) -> &Self::Base;

    fn evaluate_pair(
        &self,
        g1: &<Self::Base as HarmonicGroup>::Element,
        g2: &<Self::Base as HarmonicGroup>::Element,
    ) -> C64;

    /// Polynomial degrees in the left and right slots.
    fn slot_degrees(&self) -> (u32, u32);

    /// Values on `left × right`, rows indexed by `left`.
    fn grid_values(
        &self,
        left: &[<Self::Base as HarmonicGroup>::Element],
        right: &[<Self::Base as HarmonicGroup>::Element],
    ) -> DMatrix<C64> {
        DMatrix::from_fn(left.len(), right.len(), |a, b| self.evaluate_pair(&left[a], &right[b]))
    }
}

impl<G: HarmonicGroup> BiFunction for CharFunc<Product<G>> {
    type Base = G;

    fn base(&self) -> &G {
        &self.group().0
    }

    fn evaluate_pair(&self, g1: &G::Element, g2: &G::Element) -> C64 {
        self.evaluate(&(g1.clone(), g2.clone()))
    }

    fn slot_degrees(&self) -> (u32, u32) {
        CharFunc::slot_degrees(self)
    }

    fn grid_values(&self, left: &[G::Element], right: &[G::Element]) -> DMatrix<C64> {
        let base = &self.group().0;
        let mut out = DMatrix::from_element(left.len(), right.len(), ZERO);
        for ((l1, l2), block) in self.blocks() {
            let xs: Vec<Mat> = left.iter().map(|g| base.irrep_matrix(l1, g)).collect();
            let ys: Vec<Mat> = right.iter().map(|g| base.irrep_matrix(l2, g)).collect();
            let m = xs.first().map_or(0, |x| x.nrows());
            let n = ys.first().map_or(0, |y| y.nrows());
            if m == 0 || n == 0 {
                continue;
            }
            // φ(a, b) = Σ B[(j,l),(i,k)] X_a[i,j] Y_b[k,l]
            let lhs = DMatrix::from_fn(left.len(), n * n, |a, kl| {
                let (k, l) = (kl / n, kl % n);
                let x = &xs[a];
                let mut acc = ZERO;
                for i in 0..m {
                    for j in 0..m {
                        acc += block[(j * n + l, i * n + k)] * x[(i, j)];
                    }
                }
                acc
            });
            let rhs = DMatrix::from_fn(n * n, right.len(), |kl, b| ys[b][(kl / n, kl % n)]);
            out += lhs * rhs;
        }
        out
    }
}

/// `Σ_{a,b} w_a w'_b V[a,b] P_a ⊗ Q_b` for square `P_a` (m×m) and `Q_b` (n×n).
pub fn product_integrate(
    values: &DMatrix<C64>,
    left_weights: &[f64],
    right_weights: &[f64],
    left: &[Mat],
    right: &[Mat],
) -> Mat {
    assert_eq!(values.nrows(), left.len());
    assert_eq!(values.ncols(), right.len());
    let m = left.first().map_or(0, |p| p.nrows());
    let n = right.first().map_or(0, |q| q.nrows());
    let weighted = DMatrix::from_fn(values.nrows(), values.ncols(), |a, b| {
        values[(a, b)] * (left_weights[a] * right_weights[b])
    });
    let q_flat = DMatrix::from_fn(right.len(), n * n, |b, kl| right[b][(kl / n, kl % n)]);
    let z = weighted * q_flat;
    let p_flat_t = DMatrix::from_fn(m * m, left.len(), |ij, a| left[a][(ij / m, ij % m)]);
    let s = p_flat_t * z;
    Mat::from_fn(m * n, m * n, |row, col| {
        let (i, k) = (row / n, row % n);
        let (j, l) = (col / n, col % n);
        s[(i * m + j, k * n + l)]
    })
}
