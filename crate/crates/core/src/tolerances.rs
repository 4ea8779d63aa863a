//! Default numerical tolerances.

/// Unit-norm and unitarity checks at construction time.
pub const CONSTRUCTION_TOL: f64 = 1e-12;

/// Peter–Weyl residual accepted for a quadrature rule.
pub const QUADRATURE_TOL: f64 = 1e-11;

/// Unitarity / homomorphism tolerance for representation tables.
pub const REP_TOL: f64 = 1e-11;

/// Character-norm tolerance of the irreducibility test.
pub const IRREDUCIBILITY_TOL: f64 = 1e-9;

/// Hermiticity and trace tolerance for density matrices.
pub const DENSITY_TOL: f64 = 1e-11;

/// Per-dimension slack on the smallest eigenvalue of a density matrix.
pub const DENSITY_EIG_SLACK: f64 = 1e-10;

/// Per-dimension slack of the PSD verdict: PSD iff `λ_min ≥ −PSD_SCALE · dim`.
pub const PSD_SCALE: f64 = 1e-9;

/// Verdicts with `|λ_min|` under this multiple of the tolerance are marginal.
pub const MARGINAL_FACTOR: f64 = 10.0;

/// Normalization check `φ(e) = 1`.
pub const NORMALIZATION_TOL: f64 = 1e-10;

/// Purity and identity checks that involve a quadrature sum.
pub const IDENTITY_TOL: f64 = 1e-9;

/// Weight sums and unit norms of separable decompositions; embedding identity.
pub const DECOMPOSITION_TOL: f64 = 1e-10;

/// Torus Fourier coefficients below `−COEFFICIENT_TOL` are rejected.
pub const COEFFICIENT_TOL: f64 = 1e-10;

/// Tunable tolerance set; `Default` gives the values above.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Tolerances {
    pub construction: f64,
    pub quadrature: f64,
    pub psd_scale: f64,
    pub identity: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            construction: CONSTRUCTION_TOL,
            quadrature: QUADRATURE_TOL,
            psd_scale: PSD_SCALE,
            identity: IDENTITY_TOL,
        }
    }
}

impl Tolerances {
    /// Named profiles: `default`, `strict` (everything ×0.1) and `loose` (×100).
    pub fn profile(name: &str) -> Option<Self> {
        let base = Self::default();
        let scale = match name {
            "default" => 1.0,
            "strict" => 0.1,
            "loose" => 100.0,
            _ => return None,
        };
        Some(Self {
            construction: base.construction * scale,
            quadrature: base.quadrature * scale,
            psd_scale: base.psd_scale * scale,
            identity: base.identity * scale,
        })
    }
}
