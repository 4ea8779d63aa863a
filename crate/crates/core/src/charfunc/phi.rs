use crate::charfunc::{CharFunc, PsdVerdict};
use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::linalg::{self, max_abs, Mat, C64};
use crate::representations::FiniteHarmonics;
use crate::tolerances::NORMALIZATION_TOL;

/// The matrix `Φ_{αβ} = φ(g_α⁻¹ g_β)` of a function on a finite group.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiMatrix {
    matrix: Mat,
}

/// Builds `Φ` from a value vector; requires `φ(e) = 1`.
pub fn build_phi_matrix(values: &[C64], group: &FiniteGroup) -> Result<PhiMatrix> {
    let n = group.order();
    if values.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: values.len(),
        });
    }
    if (values[0] - linalg::ONE).norm() > NORMALIZATION_TOL {
        return Err(Error::NotNormalized(format!("φ(e) = {}", values[0])));
    }
    Ok(PhiMatrix {
        matrix: PhiMatrix::raw(values, group),
    })
}

impl PhiMatrix {
    /// `Φ` without the normalization check.
    pub fn raw(values: &[C64], group: &FiniteGroup) -> Mat {
        let sigma = group.sigma_table();
        Mat::from_fn(group.order(), group.order(), |a, b| values[sigma[a][b]])
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn order(&self) -> usize {
        self.matrix.nrows()
    }

    /// Exact positive-definiteness test on the eigenvalues of `Φ`.
    pub fn verdict(&self) -> PsdVerdict {
        PsdVerdict::of_matrix(&self.matrix)
    }

    /// `max |Φ² − (N/d) Φ|`, zero exactly for pure states on a `d`-dimensional irrep.
    pub fn purity_deviation(&self, d: usize) -> f64 {
        let n = self.order() as f64;
        max_abs(&(&self.matrix * &self.matrix - &self.matrix * C64::from(n / d as f64)))
    }
}

/// Finite Fourier decomposition `B_k = (d_k/N) Σ_g φ(g) τ_k(g)†`.
pub fn block_decompose(values: &[C64], harmonics: &FiniteHarmonics) -> Result<CharFunc<FiniteHarmonics>> {
    harmonics.ensure_complete()?;
    let n = harmonics.group().order();
    if values.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: values.len(),
        });
    }
    let blocks = harmonics
        .irreps()
        .iter()
        .enumerate()
        .map(|(k, irrep)| {
            let d = irrep.matrices()[0].nrows();
            let mut b = Mat::zeros(d, d);
            for (g, m) in irrep.matrices().iter().enumerate() {
                b += m.adjoint() * values[g];
            }
            (k, b * C64::from(d as f64 / n as f64))
        })
        .collect::<Vec<_>>();
    CharFunc::from_blocks(harmonics.clone(), blocks)
}
