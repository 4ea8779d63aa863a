//! Spin-j representations of SU(2).
//!
//! Rows and columns are ordered `μ, ν = −j, −j+1, …, j`; index `0` is `μ = −j`.
//!
//! The raw matrix element is the coefficient of `z^{j−μ}` in
//! `(αz + β)^{j−ν} (−β̄z + ᾱ)^{j+ν}`. In that monomial basis the
//! representation is not unitary for `j ≥ 1`; the unitary form rescales it by
//! `sqrt((j−μ)!(j+μ)! / ((j−ν)!(j+ν)!))`. For `j = 1/2` both coincide with the
//! defining 2×2 matrix.

use std::fmt;

use crate::error::{Error, Result};
use crate::groups::SU2Element;
use crate::linalg::{Mat, C64, ONE, ZERO};
use crate::representations::Representation;

/// A spin `j`, stored as the integer `2j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Spin(u32);

impl Spin {
    pub fn new(j: f64) -> Result<Self> {
        let twice = 2.0 * j;
        if !twice.is_finite() || twice < 0.0 || (twice - twice.round()).abs() > 1e-12 {
            return Err(Error::InvalidSpin(j));
        }
        Ok(Spin(twice.round() as u32))
    }

    pub fn from_twice(twice: u32) -> Self {
        Spin(twice)
    }

    /// Spin carried by a `d`-dimensional irrep, `j = (d−1)/2`.
    pub fn from_dim(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidSpin(-0.5));
        }
        Ok(Spin(d as u32 - 1))
    }

    pub fn twice(self) -> u32 {
        self.0
    }

    pub fn j(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn dim(self) -> usize {
        self.0 as usize + 1
    }

    pub fn is_half_integer(self) -> bool {
        self.0 % 2 == 1
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl std::str::FromStr for Spin {
    type Err = Error;

    /// Accepts `1`, `1.5` or `3/2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse {
            line: 1,
            column: 1,
            message: format!("invalid spin `{s}`"),
        };
        let j = match s.split_once('/') {
            Some((num, den)) => {
                let num: f64 = num.trim().parse().map_err(|_| bad())?;
                let den: f64 = den.trim().parse().map_err(|_| bad())?;
                if den == 0.0 {
                    return Err(bad());
                }
                num / den
            }
            None => s.parse().map_err(|_| bad())?,
        };
        Spin::new(j)
    }
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

fn powi(z: C64, n: u32) -> C64 {
    let mut acc = ONE;
    for _ in 0..n {
        acc *= z;
    }
    acc
}

/// Raw polynomial-basis matrix (not unitary for `j ≥ 1`).
pub fn spin_matrix_monomial(spin: Spin, g: &SU2Element) -> Mat {
    monomial_from_params(spin, g.alpha(), g.beta())
}

/// Evaluates the polynomial entries at arbitrary (not necessarily unit) parameters.
pub(crate) fn monomial_from_params(spin: Spin, a: C64, b: C64) -> Mat {
    let two_j = spin.twice();
    let d = spin.dim();
    let (ac, mbc) = (a.conj(), -b.conj());
    // Powers 0..=2j of each building block.
    let pw = |z: C64| -> Vec<C64> { (0..=two_j).map(|k| powi(z, k)).collect() };
    let (pa, pb, pac, pmbc) = (pw(a), pw(b), pw(ac), pw(mbc));
    Mat::from_fn(d, d, |row, col| {
        let (row, col) = (row as u32, col as u32);
        let p = two_j - col; // exponent of (αz + β)
        let q = col; // exponent of (−β̄z + ᾱ)
        let power = two_j - row; // coefficient of z^{j−μ}
        let lo = power.saturating_sub(q);
        let hi = p.min(power);
        let mut acc = ZERO;
        for s in lo..=hi {
            let t = power - s;
            let coeff = binomial(p, s) * binomial(q, t);
            acc += pa[s as usize] * pb[(p - s) as usize] * pmbc[t as usize] * pac[(q - t) as usize] * coeff;
        }
        acc
    })
}

/// Unitary spin-j matrix `τ_j(g)`.
pub fn spin_matrix(spin: Spin, g: &SU2Element) -> Mat {
    let mut m = spin_matrix_monomial(spin, g);
    let two_j = spin.twice();
    let scale: Vec<f64> = (0..=two_j)
        .map(|k| (factorial(two_j - k) * factorial(k)).sqrt())
        .collect();
    for row in 0..m.nrows() {
        for col in 0..m.ncols() {
            m[(row, col)] *= scale[row] / scale[col];
        }
    }
    m
}

/// The spin-j irrep, optionally complex-conjugated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpinRep {
    spin: Spin,
    conjugated: bool,
}

impl SpinRep {
    pub fn new(spin: Spin) -> Self {
        Self {
            spin,
            conjugated: false,
        }
    }

    pub fn spin(&self) -> Spin {
        self.spin
    }

    pub fn is_conjugated(&self) -> bool {
        self.conjugated
    }

    /// `g ↦ conj(τ_j(g))`.
    pub fn conjugate(&self) -> Self {
        Self {
            spin: self.spin,
            conjugated: !self.conjugated,
        }
    }

    /// Intertwiner `C = τ_j(u)`, `u = −iσ_y`, with `conj(τ_j(g)) = C τ_j(g) C†`.
    pub fn intertwiner(&self) -> Mat {
        spin_matrix(self.spin, &SU2Element::minus_i_sigma_y())
    }
}

impl Representation for SpinRep {
    type Element = SU2Element;

    fn dim(&self) -> usize {
        self.spin.dim()
    }

    fn matrix(&self, g: &SU2Element) -> Mat {
        let m = spin_matrix(self.spin, g);
        if self.conjugated {
            m.map(|z| z.conj())
        } else {
            m
        }
    }
}
