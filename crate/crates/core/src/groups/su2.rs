//! SU(2) elements in the `(α, β)` parametrization
//!
//! ```text
//! g = [ α  −β̄ ]      |α|² + |β|² = 1
//!     [ β   ᾱ ]
//! ```
//!
//! Euler angles `(φ, θ, ψ)` map to
//! `α = cos(θ/2)·e^{−i(φ+ψ)/2}`, `β = sin(θ/2)·e^{−i(φ−ψ)/2}`.
//! The domain `φ ∈ [0, 2π)`, `θ ∈ [0, π]`, `ψ ∈ [0, 4π)` covers the group once.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{c, Mat, C64};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SU2Element {
    alpha: C64,
    beta: C64,
}

impl SU2Element {
    /// Normalizes `(α, β)` onto the unit sphere.
    pub fn new(alpha: C64, beta: C64) -> Result<Self> {
        let norm = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
        if !norm.is_finite() || norm < 1e-300 {
            return Err(Error::ParameterOutOfRange(format!(
                "SU(2) parameters must be non-zero and finite, got |(α,β)| = {norm}"
            )));
        }
        Ok(Self {
            alpha: alpha / norm,
            beta: beta / norm,
        })
    }

    pub fn identity() -> Self {
        Self {
            alpha: c(1.0, 0.0),
            beta: c(0.0, 0.0),
        }
    }

    /// The element `u = −iσ_y`, i.e. `(α, β) = (0, 1)`.
    pub fn minus_i_sigma_y() -> Self {
        Self {
            alpha: c(0.0, 0.0),
            beta: c(1.0, 0.0),
        }
    }

    /// Diagonal torus element `diag(e^{iθ}, e^{−iθ})`.
    pub fn torus(theta: f64) -> Self {
        Self {
            alpha: C64::from_polar(1.0, theta),
            beta: c(0.0, 0.0),
        }
    }

    pub fn from_euler(phi: f64, theta: f64, psi: f64) -> Self {
        let (s, co) = (theta / 2.0).sin_cos();
        Self {
            alpha: C64::from_polar(co, -(phi + psi) / 2.0),
            beta: C64::from_polar(s, -(phi - psi) / 2.0),
        }
    }

    /// Angles `(φ, θ, ψ)` with `φ ∈ [0, 2π)`, `ψ ∈ [0, 4π)`.
    pub fn to_euler(&self) -> (f64, f64, f64) {
        use std::f64::consts::PI;
        let theta = 2.0 * self.beta.norm().atan2(self.alpha.norm());
        let sum = if self.alpha.norm() > 1e-300 { -2.0 * self.alpha.arg() } else { 0.0 };
        let diff = if self.beta.norm() > 1e-300 { -2.0 * self.beta.arg() } else { 0.0 };
        let mut phi = (sum + diff) / 2.0;
        let mut psi = (sum - diff) / 2.0;
        // (φ, ψ) and (φ + 2π, ψ + 2π) or (φ + 4π, ψ) name the same element.
        let shift = (phi / (2.0 * PI)).floor();
        phi -= shift * 2.0 * PI;
        psi -= shift * 2.0 * PI;
        psi = psi.rem_euclid(4.0 * PI);
        (phi, theta, psi)
    }

    /// Haar-distributed element (uniform on the 3-sphere).
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let x: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
            if let Ok(g) = Self::new(c(x[0], x[1]), c(x[2], x[3])) {
                return g;
            }
        }
    }

    pub fn alpha(&self) -> C64 {
        self.alpha
    }

    pub fn beta(&self) -> C64 {
        self.beta
    }

    pub fn multiply(&self, h: &Self) -> Self {
        let (a1, b1, a2, b2) = (self.alpha, self.beta, h.alpha, h.beta);
        Self {
            alpha: a1 * a2 - b1.conj() * b2,
            beta: b1 * a2 + a1.conj() * b2,
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            alpha: self.alpha.conj(),
            beta: -self.beta,
        }
    }

    pub fn matrix(&self) -> Mat {
        Mat::from_row_slice(
            2,
            2,
            &[self.alpha, -self.beta.conj(), self.beta, self.alpha.conj()],
        )
    }

    pub fn distance(&self, other: &Self) -> f64 {
        (self.alpha - other.alpha).norm().max((self.beta - other.beta).norm())
    }
}

impl std::ops::Mul for SU2Element {
    type Output = SU2Element;
    fn mul(self, rhs: SU2Element) -> SU2Element {
        self.multiply(&rhs)
    }
}
