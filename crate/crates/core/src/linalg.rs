//! Dense complex matrix helpers shared by every module.
//!
//! Kronecker convention: for `A ⊗ B` with `A` of size `m` and `B` of size `n`,
//! the composite index of `(i, k)` is `i * n + k` (left factor varies slowest).
//! Partial transposes and partial traces below all follow it.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

pub type C64 = Complex64;
pub type Mat = DMatrix<C64>;
pub type CVec = DVector<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn r(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub fn kron(a: &Mat, b: &Mat) -> Mat {
    a.kronecker(b)
}

pub fn trace(a: &Mat) -> C64 {
    a.diagonal().iter().sum()
}

/// `tr[A B]` without forming the product.
pub fn trace_of_product(a: &Mat, b: &Mat) -> C64 {
    debug_assert_eq!(a.ncols(), b.nrows());
    let mut acc = ZERO;
    for i in 0..a.nrows() {
        for k in 0..a.ncols() {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    acc
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_diff(a: &Mat, b: &Mat) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch in max_abs_diff");
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn max_abs(a: &Mat) -> f64 {
    a.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

/// `‖A − A†‖_max`.
pub fn hermiticity_residual(a: &Mat) -> f64 {
    max_abs_diff(a, &a.adjoint())
}

/// `‖U U† − I‖_max`.
pub fn unitarity_residual(u: &Mat) -> f64 {
    let n = u.nrows();
    max_abs_diff(&(u * u.adjoint()), &Mat::identity(n, n))
}

/// Eigenvalues of the Hermitian part of `a`, ascending.
pub fn hermitian_eigenvalues(a: &Mat) -> Vec<f64> {
    if a.nrows() == 0 {
        return Vec::new();
    }
    let h = (a + a.adjoint()).scale(0.5);
    let mut ev: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|x, y| x.total_cmp(y));
    ev
}

pub fn min_hermitian_eigenvalue(a: &Mat) -> f64 {
    hermitian_eigenvalues(a).first().copied().unwrap_or(0.0)
}

/// Transpose of the left tensor factor: `(ρ^{T₁})_{(i k),(j l)} = ρ_{(j k),(i l)}`.
pub fn partial_transpose_left(rho: &Mat, m: usize, n: usize) -> Mat {
    assert_eq!(rho.nrows(), m * n);
    Mat::from_fn(m * n, m * n, |row, col| {
        let (i, k) = (row / n, row % n);
        let (j, l) = (col / n, col % n);
        rho[(j * n + k, i * n + l)]
    })
}

/// Trace out the right factor, leaving an `m × m` operator.
pub fn partial_trace_right(rho: &Mat, m: usize, n: usize) -> Mat {
    assert_eq!(rho.nrows(), m * n);
    Mat::from_fn(m, m, |i, j| (0..n).map(|k| rho[(i * n + k, j * n + k)]).sum())
}

/// Trace out the left factor, leaving an `n × n` operator.
pub fn partial_trace_left(rho: &Mat, m: usize, n: usize) -> Mat {
    assert_eq!(rho.nrows(), m * n);
    Mat::from_fn(n, n, |k, l| (0..m).map(|i| rho[(i * n + k, i * n + l)]).sum())
}

pub fn outer(u: &CVec, v: &CVec) -> Mat {
    u * v.adjoint()
}

pub fn projector(v: &CVec) -> Mat {
    outer(v, v)
}

pub fn normalized(v: &CVec) -> CVec {
    let norm = v.norm();
    v.unscale(norm)
}

pub fn basis_vector(d: usize, i: usize) -> CVec {
    let mut v = CVec::zeros(d);
    v[i] = ONE;
    v
}

/// `d × k` matrix of i.i.d. standard complex Gaussians (unit variance per entry).
pub fn ginibre<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Mat {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Mat::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        c(re * s, im * s)
    })
}

pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CVec {
    let g = ginibre(rng, d, 1);
    normalized(&g.column(0).into_owned())
}

/// Haar-random unitary via QR of a Ginibre matrix with the phases of `R` fixed.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Mat {
    let qr = ginibre(rng, d, d).qr();
    let mut q = qr.q();
    let rr = qr.r();
    for j in 0..d {
        let diag = rr[(j, j)];
        let phase = if diag.norm() > 0.0 { diag / diag.norm() } else { ONE };
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Convert to nested `[re, im]` rows, the on-disk matrix layout.
pub fn to_pairs(a: &Mat) -> Vec<Vec<[f64; 2]>> {
    (0..a.nrows())
        .map(|i| (0..a.ncols()).map(|j| [a[(i, j)].re, a[(i, j)].im]).collect())
        .collect()
}

/// Inverse of [`to_pairs`]; `None` unless every row has the same length.
pub fn from_pairs(rows: &[Vec<[f64; 2]>]) -> Option<Mat> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|row| row.len() != ncols) {
        return None;
    }
    Some(Mat::from_fn(nrows, ncols, |i, j| c(rows[i][j][0], rows[i][j][1])))
}

pub fn vec_to_pairs(v: &CVec) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

pub fn vec_from_pairs(v: &[[f64; 2]]) -> CVec {
    CVec::from_iterator(v.len(), v.iter().map(|p| c(p[0], p[1])))
}
