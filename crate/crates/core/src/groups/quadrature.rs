//! Product-grid Haar quadrature on SU(2).
//!
//! Nodes are uniform in `φ ∈ [0, 2π)` and `ψ ∈ [0, 4π)` and Gauss–Legendre in
//! `cos θ`; the Haar density is `sin θ dθ dφ dψ / (16π²)`. A rule of degree `D`
//! integrates every product of matrix elements of total polynomial degree `≤ D`
//! in `(α, β, ᾱ, β̄)` exactly. Each rule is checked against the Peter–Weyl
//! orthogonality relations before it is handed out.

use std::f64::consts::PI;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::groups::{HaarGrid, SU2Element};
use crate::linalg::{C64, ZERO};
use crate::representations::{spin_matrix, Spin};
use crate::tolerances::QUADRATURE_TOL;

/// Gauss–Legendre nodes and weights on `[-1, 1]` (Newton iteration on `P_n`).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        weights[i] = w;
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[derive(Debug, Clone)]
pub struct HaarQuadrature {
    grid: HaarGrid<SU2Element>,
    angles: Vec<[f64; 3]>,
    residual: f64,
}

impl HaarQuadrature {
    /// Default rule for exactness degree `D`: `2D+2` nodes in each of φ and ψ,
    /// `D+1` Gauss–Legendre nodes in `cos θ`.
    pub fn new(degree: u32) -> Result<Self> {
        let d = degree as usize;
        Self::with_counts(degree, 2 * d + 2, d + 1, 2 * d + 2)
    }

    /// Explicit node counts; the rule is still validated at `degree`.
    pub fn with_counts(degree: u32, n_phi: usize, n_theta: usize, n_psi: usize) -> Result<Self> {
        if n_phi == 0 || n_theta == 0 || n_psi == 0 {
            return Err(Error::ParameterOutOfRange("quadrature node counts must be positive".into()));
        }
        let (xs, ws) = gauss_legendre(n_theta);
        let mut nodes = Vec::with_capacity(n_phi * n_theta * n_psi);
        let mut weights = Vec::with_capacity(nodes.capacity());
        let mut angles = Vec::with_capacity(nodes.capacity());
        let scale = 1.0 / (2.0 * n_phi as f64 * n_psi as f64);
        for a in 0..n_phi {
            let phi = 2.0 * PI * a as f64 / n_phi as f64;
            for (x, w) in xs.iter().zip(&ws) {
                let theta = x.clamp(-1.0, 1.0).acos();
                for b in 0..n_psi {
                    let psi = 4.0 * PI * b as f64 / n_psi as f64;
                    nodes.push(SU2Element::from_euler(phi, theta, psi));
                    weights.push(w * scale);
                    angles.push([phi, theta, psi]);
                }
            }
        }
        let grid = HaarGrid::new(nodes, weights, degree);
        let residual = peter_weyl_residual(&grid, degree);
        if !(residual <= QUADRATURE_TOL) {
            return Err(Error::QuadratureValidationFailed { max_residual: residual });
        }
        Ok(Self { grid, angles, residual })
    }

    pub fn degree(&self) -> u32 {
        self.grid.degree()
    }

    pub fn grid(&self) -> &HaarGrid<SU2Element> {
        &self.grid
    }

    pub fn nodes(&self) -> &[SU2Element] {
        self.grid.nodes()
    }

    pub fn weights(&self) -> &[f64] {
        self.grid.weights()
    }

    /// Euler angles `[φ, θ, ψ]` of each node.
    pub fn angles(&self) -> &[[f64; 3]] {
        &self.angles
    }

    /// Largest Peter–Weyl deviation measured at construction.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }
}

/// Largest deviation of `Σ w τ^j_{μν} conj(τ^{j'}_{μ'ν'})` from
/// `δ_{jj'}δ_{μμ'}δ_{νν'}/(2j+1)` over all spins with `2j + 2j' ≤ degree`,
/// together with `|Σ w − 1|`.
pub fn peter_weyl_residual(grid: &HaarGrid<SU2Element>, degree: u32) -> f64 {
    let n = grid.len();
    let total: f64 = grid.weights().iter().sum();
    let mut worst = (total - 1.0).abs();

    // Row `node`, column `μ·d + ν` holds τ^j_{μν}(node).
    let features: Vec<DMatrix<C64>> = (0..=degree)
        .map(|twice| {
            let spin = Spin::from_twice(twice);
            let d = spin.dim();
            let mut f = DMatrix::from_element(n, d * d, ZERO);
            for (row, g) in grid.nodes().iter().enumerate() {
                let m = spin_matrix(spin, g);
                for mu in 0..d {
                    for nu in 0..d {
                        f[(row, mu * d + nu)] = m[(mu, nu)];
                    }
                }
            }
            f
        })
        .collect();
    let weighted: Vec<DMatrix<C64>> = features
        .iter()
        .map(|f| {
            let mut fw = f.map(|z| z.conj());
            for (row, w) in grid.weights().iter().enumerate() {
                fw.row_mut(row).scale_mut(*w);
            }
            fw
        })
        .collect();

    for t1 in 0..=degree {
        for t2 in 0..=(degree - t1) {
            let gram = features[t1 as usize].transpose() * &weighted[t2 as usize];
            let expected = 1.0 / (t1 as f64 + 1.0);
            for i in 0..gram.nrows() {
                for j in 0..gram.ncols() {
                    let target = if t1 == t2 && i == j { expected } else { 0.0 };
                    worst = worst.max((gram[(i, j)] - C64::new(target, 0.0)).norm());
                }
            }
        }
    }
    worst
}
