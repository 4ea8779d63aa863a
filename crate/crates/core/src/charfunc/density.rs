use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, hermitian_eigenvalues, CVec, Mat};
use crate::tolerances::{DENSITY_EIG_SLACK, DENSITY_TOL};

/// A Hermitian, positive semidefinite, unit-trace matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: Mat,
}

impl DensityMatrix {
    pub fn new(matrix: Mat) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() || matrix.nrows() == 0 {
            return Err(Error::InvalidDensityMatrix(format!(
                "matrix must be square and non-empty, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let d = matrix.nrows();
        let herm = linalg::hermiticity_residual(&matrix);
        if herm > DENSITY_TOL {
            return Err(Error::InvalidDensityMatrix(format!("not Hermitian (residual {herm:e})")));
        }
        let tr = linalg::trace(&matrix);
        if (tr - linalg::ONE).norm() > DENSITY_TOL {
            return Err(Error::InvalidDensityMatrix(format!("trace is {tr}, expected 1")));
        }
        let min = linalg::min_hermitian_eigenvalue(&matrix);
        if min < -DENSITY_EIG_SLACK * d as f64 {
            return Err(Error::InvalidDensityMatrix(format!(
                "not positive semidefinite (minimum eigenvalue {min:e})"
            )));
        }
        Ok(Self { matrix })
    }

    /// `|ψ⟩⟨ψ|` for a vector normalized here.
    pub fn pure(psi: &CVec) -> Result<Self> {
        if psi.norm() == 0.0 {
            return Err(Error::InvalidDensityMatrix("zero state vector".into()));
        }
        Self::new(linalg::projector(&linalg::normalized(psi)))
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn into_matrix(self) -> Mat {
        self.matrix
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.matrix)
    }

    /// Number of eigenvalues above `tol`.
    pub fn rank(&self, tol: f64) -> usize {
        self.eigenvalues().iter().filter(|&&x| x > tol).count()
    }

    /// `tr ρ²`.
    pub fn purity(&self) -> f64 {
        linalg::trace_of_product(&self.matrix, &self.matrix).re
    }

    /// Density-matrix file format: a square JSON array of `[re, im]` pairs.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: MatrixFile = serde_json::from_str(text)?;
        let m = linalg::from_pairs(&file.0)
            .ok_or_else(|| Error::InvalidDensityMatrix("ragged rows".into()))?;
        Self::new(m)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&MatrixFile(linalg::to_pairs(&self.matrix))).expect("serializable")
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixFile(Vec<Vec<[f64; 2]>>);
