//! Restriction of `φ_ρ` on SU(2)×SU(2) to the diagonal torus.
//!
//! The torus element is `diag(e^{iθ}, e^{−iθ})` with `θ ∈ [0, 2π)`. The
//! spin-j matrix at that element is `diag(e^{−ikθ})` with `k = 2μ`, so a spin
//! `(j₁, j₂)` block contributes only to frequencies `k ∈ {−2j₁, −2j₁+2, …, 2j₁}`
//! and likewise for `l`. This is the half-angle lattice of the `θ ∈ [0, 4π)`
//! parametrization, relabelled by `k = 2μ`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::charfunc::{BiFunction, CharFunc};
use crate::error::{Error, Result};
use crate::groups::SU2Element;
use crate::linalg::C64;
use crate::representations::{Product, Su2};
use crate::tolerances::COEFFICIENT_TOL;

/// Fourier coefficients `φ̂_{kl}` of `φ(θ₁, θ₂) = Σ φ̂_{kl} e^{−ikθ₁} e^{−ilθ₂}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AbelianSpectrum {
    /// Frequencies run over `−k_max..=k_max` and `−l_max..=l_max`.
    pub k_max: i32,
    pub l_max: i32,
    /// Row-major real parts, indexed `[k + k_max][l + l_max]`.
    pub coefficients: Vec<Vec<f64>>,
    /// Largest imaginary part discarded.
    pub max_imaginary: f64,
    /// Lattice points allowed by the supported spins.
    pub lattice: BTreeSet<(i32, i32)>,
    /// `m² n²` for the largest block dimensions.
    pub caratheodory_bound: usize,
}

impl AbelianSpectrum {
    pub fn coefficient(&self, k: i32, l: i32) -> f64 {
        if k.abs() > self.k_max || l.abs() > self.l_max {
            return 0.0;
        }
        self.coefficients[(k + self.k_max) as usize][(l + self.l_max) as usize]
    }

    /// `(k, l, φ̂_{kl})` for every computed frequency.
    pub fn entries(&self) -> impl Iterator<Item = (i32, i32, f64)> + '_ {
        (-self.k_max..=self.k_max)
            .flat_map(move |k| (-self.l_max..=self.l_max).map(move |l| (k, l, self.coefficient(k, l))))
    }

    pub fn sum(&self) -> f64 {
        self.entries().map(|(_, _, v)| v).sum()
    }

    pub fn min(&self) -> f64 {
        self.entries().map(|(_, _, v)| v).fold(f64::INFINITY, f64::min)
    }

    /// Largest `|φ̂_{kl}|` off the lattice.
    pub fn off_lattice_max(&self) -> f64 {
        self.entries()
            .filter(|(k, l, _)| !self.lattice.contains(&(*k, *l)))
            .map(|(_, _, v)| v.abs())
            .fold(0.0, f64::max)
    }

    /// Number of coefficients above `tol`.
    pub fn support_size(&self, tol: f64) -> usize {
        self.entries().filter(|(_, _, v)| *v > tol).count()
    }
}

fn torus_nodes(count: usize) -> (Vec<f64>, Vec<SU2Element>) {
    let thetas: Vec<f64> = (0..count)
        .map(|a| 2.0 * std::f64::consts::PI * a as f64 / count as f64)
        .collect();
    let nodes = thetas.iter().map(|&t| SU2Element::torus(t)).collect();
    (thetas, nodes)
}

/// Samples `φ` on an `M₁ × M₂` torus grid with `M = 2(2j_max + 1) + 1` and
/// extracts every coefficient with `|k| ≤ 2j₁ + 1`, `|l| ≤ 2j₂ + 1` exactly.
pub fn abelian_restriction(phi: &CharFunc<Product<Su2>>) -> Result<AbelianSpectrum> {
    let mut twice = (0u32, 0u32);
    let mut lattice = BTreeSet::new();
    for (l1, l2) in phi.support() {
        twice = (twice.0.max(l1.twice()), twice.1.max(l2.twice()));
        let (a, b) = (l1.twice() as i32, l2.twice() as i32);
        for k in (-a..=a).step_by(2) {
            for l in (-b..=b).step_by(2) {
                lattice.insert((k, l));
            }
        }
    }
    let (k_max, l_max) = (twice.0 as i32 + 1, twice.1 as i32 + 1);
    let (m1, m2) = (2 * k_max as usize + 1, 2 * l_max as usize + 1);
    let (theta1, left) = torus_nodes(m1);
    let (theta2, right) = torus_nodes(m2);
    let values = phi.grid_values(&left, &right);
    let norm = 1.0 / (m1 * m2) as f64;
    let mut coefficients = vec![vec![0.0; m2]; m1];
    let mut max_imaginary: f64 = 0.0;
    for k in -k_max..=k_max {
        let ek: Vec<C64> = theta1.iter().map(|t| C64::from_polar(1.0, k as f64 * t)).collect();
        for l in -l_max..=l_max {
            let el: Vec<C64> = theta2.iter().map(|t| C64::from_polar(1.0, l as f64 * t)).collect();
            let mut acc = C64::new(0.0, 0.0);
            for (a, eka) in ek.iter().enumerate() {
                for (b, elb) in el.iter().enumerate() {
                    acc += values[(a, b)] * eka * elb;
                }
            }
            acc *= norm;
            max_imaginary = max_imaginary.max(acc.im.abs());
            if acc.re < -COEFFICIENT_TOL {
                return Err(Error::NegativeCoefficient { k, l, value: acc.re });
            }
            coefficients[(k + k_max) as usize][(l + l_max) as usize] = acc.re;
        }
    }
    let (m, n) = (twice.0 as usize + 1, twice.1 as usize + 1);
    Ok(AbelianSpectrum {
        k_max,
        l_max,
        coefficients,
        max_imaginary,
        lattice,
        caratheodory_bound: (m * n) * (m * n),
    })
}
