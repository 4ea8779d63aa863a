//! Reference states and closed-form characteristic functions.
//!
//! Bipartite vectors use the Kronecker ordering `|i⟩⊗|k⟩ ↦ i·n + k`.

use std::collections::BTreeMap;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::charfunc::DensityMatrix;
use crate::error::{Error, Result};
use crate::groups::SU2Element;
use crate::linalg::{self, c, kron, r, CVec, Mat, C64, ZERO};

fn check_unit_interval(name: &str, x: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::ParameterOutOfRange(format!("{name} = {x} must lie in [0, 1]")));
    }
    Ok(())
}

/// The 3⊗3 PPT entangled state of P. Horodecki, `0 ≤ a ≤ 1`.
pub fn horodecki_3x3(a: f64) -> Result<DensityMatrix> {
    check_unit_interval("a", a)?;
    let mut m = Mat::zeros(9, 9);
    for &(i, j) in &[(0, 4), (0, 8), (4, 8)] {
        m[(i, j)] = r(a);
        m[(j, i)] = r(a);
    }
    for i in [0, 1, 2, 3, 4, 5, 7] {
        m[(i, i)] = r(a);
    }
    let s = (1.0 - a * a).max(0.0).sqrt() / 2.0;
    m[(6, 6)] = r((1.0 + a) / 2.0);
    m[(8, 8)] = r((1.0 + a) / 2.0);
    m[(6, 8)] = r(s);
    m[(8, 6)] = r(s);
    DensityMatrix::new(m / C64::from(8.0 * a + 1.0))
}

/// How the overall `1/(8a+1)` factor of the printed closed form is scoped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PrefactorReading {
    /// `a/(8a+1) · [bracket] + tail`, with the two trailing terms unscaled.
    Literal,
    /// `(a · [bracket] + tail) / (8a+1)`.
    ScopedAll,
}

impl fmt::Display for PrefactorReading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PrefactorReading::Literal => "literal",
            PrefactorReading::ScopedAll => "scoped-all",
        })
    }
}

/// The reading that agrees with `tr[ρ τ₁⊗τ₁]` for the polynomial-basis `τ₁`.
pub const HORODECKI_READING: PrefactorReading = PrefactorReading::ScopedAll;

/// Closed-form characteristic function of [`horodecki_3x3`] under the shipped reading.
///
/// The formula is written for the polynomial-basis spin-1 matrices
/// ([`crate::representations::spin_matrix_monomial`]).
pub fn horodecki_charfunc(a: f64, g1: &SU2Element, g2: &SU2Element) -> Result<C64> {
    horodecki_charfunc_with(a, g1, g2, HORODECKI_READING)
}

pub fn horodecki_charfunc_with(a: f64, g1: &SU2Element, g2: &SU2Element, reading: PrefactorReading) -> Result<C64> {
    check_unit_interval("a", a)?;
    let (a1, b1, a2, b2) = (g1.alpha(), g1.beta(), g2.alpha(), g2.beta());
    let (a1c, b1c, a2c, b2c) = (a1.conj(), b1.conj(), a2.conj(), b2.conj());
    let z1 = r(a1.norm_sqr() - b1.norm_sqr());
    let z2 = r(a2.norm_sqr() - b2.norm_sqr());
    let bracket = (a1 * a1 + a1c * a1c * 0.5) * (a2 * a2 + a2c * a2c)
        + (b1 * b2) * (b1 * b2)
        + (b1c * b2c) * (b1c * b2c)
        + a1 * b1 * a2 * b2 * 4.0
        + (a1 * b1 * a2 * b2).conj() * 4.0
        + a1 * b1c * a2 * b2c
        + a1c * b1 * a2c * b2
        + (a1 * a1 + a1c * a1c) * z2
        + z1 * (a2 * a2 + a2c * a2c)
        + z1 * z2;
    let tail = a1c * a1c * (b2 * b2 + b2c * b2c) * ((1.0 - a * a).max(0.0).sqrt() / 2.0)
        + a1c * a1c * (a2 * a2 + a2c * a2c) * 0.5;
    let scale = 8.0 * a + 1.0;
    Ok(match reading {
        PrefactorReading::Literal => bracket * (a / scale) + tail,
        PrefactorReading::ScopedAll => (bracket * a + tail) / scale,
    })
}

/// `(|01⟩ − |10⟩)/√2`.
pub fn singlet_vector() -> CVec {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    CVec::from_vec(vec![ZERO, r(s), r(-s), ZERO])
}

/// `(|00⟩ + |11⟩)/√2`.
pub fn bell_vector() -> CVec {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    CVec::from_vec(vec![r(s), ZERO, ZERO, r(s)])
}

pub fn singlet() -> DensityMatrix {
    DensityMatrix::pure(&singlet_vector()).expect("unit vector")
}

pub fn bell() -> DensityMatrix {
    DensityMatrix::pure(&bell_vector()).expect("unit vector")
}

/// `p |singlet⟩⟨singlet| + (1−p) I/4`.
pub fn werner(p: f64) -> Result<DensityMatrix> {
    check_unit_interval("p", p)?;
    let m = linalg::projector(&singlet_vector()) * r(p) + Mat::identity(4, 4) * r((1.0 - p) / 4.0);
    DensityMatrix::new(m)
}

/// `p |Φ⁺⟩⟨Φ⁺| + (1−p) I/d²` on `d ⊗ d`.
pub fn isotropic(p: f64, d: usize) -> Result<DensityMatrix> {
    check_unit_interval("p", p)?;
    if d < 1 {
        return Err(Error::ParameterOutOfRange("d must be at least 1".into()));
    }
    let mut phi = CVec::zeros(d * d);
    for i in 0..d {
        phi[i * d + i] = r(1.0 / (d as f64).sqrt());
    }
    let dd = d * d;
    DensityMatrix::new(linalg::projector(&phi) * r(p) + Mat::identity(dd, dd) * r((1.0 - p) / dd as f64))
}

/// `|u⟩⟨u| ⊗ |v⟩⟨v|` for vectors normalized here.
pub fn product_pure(u: &CVec, v: &CVec) -> Result<DensityMatrix> {
    if u.norm() == 0.0 || v.norm() == 0.0 {
        return Err(Error::ParameterOutOfRange("zero factor vector".into()));
    }
    DensityMatrix::new(kron(
        &linalg::projector(&linalg::normalized(u)),
        &linalg::projector(&linalg::normalized(v)),
    ))
}

pub fn max_mixed(d: usize) -> Result<DensityMatrix> {
    if d == 0 {
        return Err(Error::ParameterOutOfRange("d must be at least 1".into()));
    }
    DensityMatrix::new(Mat::identity(d, d) / C64::from(d as f64))
}

/// `√λ |00⟩ + √(1−λ) |11⟩`.
pub fn schmidt_vector(lambda: f64) -> Result<CVec> {
    check_unit_interval("lambda", lambda)?;
    Ok(CVec::from_vec(vec![r(lambda.sqrt()), ZERO, ZERO, r((1.0 - lambda).sqrt())]))
}

pub fn schmidt_pair(lambda: f64) -> Result<DensityMatrix> {
    DensityMatrix::pure(&schmidt_vector(lambda)?)
}

/// `G G† / tr(G G†)` for a `d × rank` complex Gaussian `G` drawn from a
/// ChaCha8 stream seeded with `seed`.
pub fn random_density(d: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    if d == 0 || rank == 0 || rank > d {
        return Err(Error::ParameterOutOfRange(format!("need 1 ≤ rank ≤ d, got d = {d}, rank = {rank}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = linalg::ginibre(&mut rng, d, rank);
    let m = &g * g.adjoint();
    let t = linalg::trace(&m);
    DensityMatrix::new(m / t)
}

/// A named state constructor with parameters, e.g. `werner:p=0.5`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateRecipe {
    pub name: String,
    pub params: BTreeMap<String, f64>,
}

/// A constructed state together with its natural bipartition, if any.
#[derive(Debug, Clone)]
pub struct PreparedState {
    pub rho: DensityMatrix,
    pub dims: Option<(usize, usize)>,
}

impl StateRecipe {
    /// Recipe names: `singlet`, `bell`, `werner`, `isotropic`, `product`,
    /// `max_mixed`, `schmidt`, `horodecki`, `random`.
    pub const NAMES: [&'static str; 9] = [
        "singlet", "bell", "werner", "isotropic", "product", "max_mixed", "schmidt", "horodecki", "random",
    ];

    /// Parses `name[:key=value,...]`. A bare value is stored under `d`, and
    /// `mxn` under `m` and `n`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let (name, rest) = text.split_once(':').unwrap_or((text, ""));
        let name = name.trim().to_ascii_lowercase().replace('-', "_");
        if !Self::NAMES.contains(&name.as_str()) {
            return Err(Error::Parse {
                line: 1,
                column: 1,
                message: format!("unknown recipe `{name}` (known: {})", Self::NAMES.join(", ")),
            });
        }
        let mut params = BTreeMap::new();
        let mut column = name.len() + 2;
        for item in rest.split(',').filter(|s| !s.trim().is_empty()) {
            let bad = |msg: String| Error::Parse {
                line: 1,
                column,
                message: msg,
            };
            let item_t = item.trim();
            if let Some((k, v)) = item_t.split_once('=') {
                let value: f64 = v.trim().parse().map_err(|_| bad(format!("invalid number `{}`", v.trim())))?;
                params.insert(k.trim().to_ascii_lowercase(), value);
            } else if let Some((m, n)) = item_t.split_once(['x', 'X']) {
                let m: f64 = m.trim().parse().map_err(|_| bad(format!("invalid dims `{item_t}`")))?;
                let n: f64 = n.trim().parse().map_err(|_| bad(format!("invalid dims `{item_t}`")))?;
                params.insert("m".into(), m);
                params.insert("n".into(), n);
            } else {
                let value: f64 = item_t.parse().map_err(|_| bad(format!("invalid parameter `{item_t}`")))?;
                params.insert("d".into(), value);
            }
            column += item.len() + 1;
        }
        Ok(Self { name, params })
    }

    fn get(&self, key: &str, default: f64) -> f64 {
        self.params.get(key).copied().unwrap_or(default)
    }

    fn count(&self, key: &str, default: usize) -> Result<usize> {
        let v = self.get(key, default as f64);
        if v < 0.0 || v.fract() != 0.0 {
            return Err(Error::ParameterOutOfRange(format!("{key} = {v} must be a non-negative integer")));
        }
        Ok(v as usize)
    }

    pub fn build(&self) -> Result<PreparedState> {
        let two = Some((2, 2));
        Ok(match self.name.as_str() {
            "singlet" => PreparedState { rho: singlet(), dims: two },
            "bell" => PreparedState { rho: bell(), dims: two },
            "werner" => PreparedState {
                rho: werner(self.get("p", 1.0))?,
                dims: two,
            },
            "isotropic" => {
                let d = self.count("d", 2)?;
                PreparedState {
                    rho: isotropic(self.get("p", 1.0), d)?,
                    dims: Some((d, d)),
                }
            }
            "product" => {
                let (m, n) = (self.count("m", 2)?, self.count("n", 2)?);
                if m == 0 || n == 0 {
                    return Err(Error::ParameterOutOfRange("factor dimensions must be positive".into()));
                }
                // |0⟩ ⊗ (|0⟩ + i|n−1⟩)/√2, or |0⟩⊗|0⟩ when n = 1.
                let u = linalg::basis_vector(m, 0);
                let mut v = linalg::basis_vector(n, 0);
                v[n - 1] += c(0.0, 1.0);
                PreparedState {
                    rho: product_pure(&u, &v)?,
                    dims: Some((m, n)),
                }
            }
            "max_mixed" => {
                let dims = match (self.params.get("m"), self.params.get("n")) {
                    (Some(_), Some(_)) => Some((self.count("m", 1)?, self.count("n", 1)?)),
                    _ => None,
                };
                let d = match dims {
                    Some((m, n)) => m * n,
                    None => self.count("d", 2)?,
                };
                PreparedState { rho: max_mixed(d)?, dims }
            }
            "schmidt" => PreparedState {
                rho: schmidt_pair(self.get("lambda", 0.5))?,
                dims: two,
            },
            "horodecki" => PreparedState {
                rho: horodecki_3x3(self.get("a", 0.5))?,
                dims: Some((3, 3)),
            },
            "random" => {
                let d = self.count("d", 4)?;
                let rank = self.count("rank", d)?;
                let seed = self.count("seed", 0)? as u64;
                PreparedState {
                    rho: random_density(d, rank, seed)?,
                    dims: None,
                }
            }
            _ => unreachable!("validated in parse"),
        })
    }
}

impl fmt::Display for StateRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        for (i, (k, v)) in self.params.iter().enumerate() {
            write!(f, "{}{k}={v}", if i == 0 { ':' } else { ',' })?;
        }
        Ok(())
    }
}
