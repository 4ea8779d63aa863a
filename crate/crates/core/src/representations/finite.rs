//! Unitary irreps of finite groups and the built-in catalog (Z_n, S₃, D₄).

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::linalg::{self, c, max_abs_diff, r, unitarity_residual, Mat, C64, ONE, ZERO};
use crate::representations::Representation;
use crate::tolerances::{IRREDUCIBILITY_TOL, REP_TOL};

/// One unitary irrep given as a table of matrices indexed by group element.
#[derive(Debug, Clone)]
pub struct FiniteIrrep {
    group: Arc<FiniteGroup>,
    dim: usize,
    matrices: Vec<Mat>,
}

impl FiniteIrrep {
    /// Checks unitarity, the homomorphism law and the character-norm
    /// irreducibility criterion `(1/N) Σ |χ(g)|² = 1`.
    pub fn new(group: Arc<FiniteGroup>, matrices: Vec<Mat>) -> Result<Self> {
        let n = group.order();
        if matrices.len() != n {
            return Err(Error::InvalidRepresentation(format!(
                "expected {n} matrices, found {}",
                matrices.len()
            )));
        }
        let dim = matrices[0].nrows();
        if dim == 0 || matrices.iter().any(|m| m.nrows() != dim || m.ncols() != dim) {
            return Err(Error::InvalidRepresentation("matrices must share one square shape".into()));
        }
        for (a, m) in matrices.iter().enumerate() {
            let res = unitarity_residual(m);
            if !(res <= REP_TOL) {
                return Err(Error::InvalidRepresentation(format!(
                    "matrix of g{} is not unitary (residual {res:e})",
                    a + 1
                )));
            }
        }
        for a in group.elements() {
            for b in group.elements() {
                let res = max_abs_diff(&matrices[group.multiply(a, b)], &(&matrices[a] * &matrices[b]));
                if !(res <= REP_TOL) {
                    return Err(Error::InvalidRepresentation(format!(
                        "homomorphism fails for (g{}, g{}) (residual {res:e})",
                        a + 1,
                        b + 1
                    )));
                }
            }
        }
        let norm: f64 = matrices
            .iter()
            .map(|m| linalg::trace(m).norm_sqr())
            .sum::<f64>()
            / n as f64;
        if (norm - 1.0).abs() > IRREDUCIBILITY_TOL {
            return Err(Error::InvalidRepresentation(format!(
                "reducible: character norm {norm} != 1"
            )));
        }
        Ok(Self { group, dim, matrices })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn matrices(&self) -> &[Mat] {
        &self.matrices
    }

    pub fn character(&self) -> Vec<C64> {
        self.matrices.iter().map(linalg::trace).collect()
    }

    /// Entrywise complex conjugate (again an irrep).
    pub fn conjugate(&self) -> Self {
        Self {
            group: Arc::clone(&self.group),
            dim: self.dim,
            matrices: self.matrices.iter().map(|m| m.map(|z| z.conj())).collect(),
        }
    }

    /// Loads the irrep file format: a JSON list, one entry per element, of
    /// `d × d` matrices written as rows of `[re, im]` pairs.
    pub fn from_json(group: Arc<FiniteGroup>, text: &str) -> Result<Self> {
        let raw: Vec<Vec<Vec<[f64; 2]>>> = serde_json::from_str(text)?;
        let matrices = raw
            .iter()
            .enumerate()
            .map(|(a, rows)| {
                linalg::from_pairs(rows).ok_or_else(|| {
                    Error::InvalidRepresentation(format!("matrix of g{} has ragged rows", a + 1))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, matrices)
    }

    pub fn to_json(&self) -> String {
        let raw: Vec<_> = self.matrices.iter().map(linalg::to_pairs).collect();
        serde_json::to_string(&raw).expect("serializable")
    }
}

impl Representation for FiniteIrrep {
    type Element = usize;

    fn dim(&self) -> usize {
        self.dim
    }

    fn matrix(&self, g: &usize) -> Mat {
        self.matrices[*g].clone()
    }
}

/// The cyclic group `Z_n` (elements `0..n` under addition) with its `n` characters.
pub fn cyclic(n: usize) -> Result<(FiniteGroup, Vec<Vec<Mat>>)> {
    if n == 0 {
        return Err(Error::UnknownGroup("Z0".into()));
    }
    let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    let group = FiniteGroup::from_zero_based(table)?;
    let irreps = (0..n)
        .map(|m| {
            (0..n)
                .map(|k| {
                    Mat::from_element(1, 1, root_of_unity((m * k) % n, n))
                })
                .collect()
        })
        .collect();
    Ok((group, irreps))
}

/// `exp(2πi k/n)`, exact at multiples of a quarter turn.
fn root_of_unity(k: usize, n: usize) -> C64 {
    if (4 * k) % n == 0 {
        return [r(1.0), c(0.0, 1.0), r(-1.0), c(0.0, -1.0)][4 * k / n];
    }
    C64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64)
}

/// Builds a Cayley table from faithful matrices (identity first) by exact lookup.
fn table_from_matrices(elements: &[Mat]) -> Vec<Vec<usize>> {
    let find = |m: &Mat| {
        elements
            .iter()
            .position(|e| max_abs_diff(e, m) < 1e-9)
            .expect("closed under multiplication")
    };
    elements
        .iter()
        .map(|a| elements.iter().map(|b| find(&(a * b))).collect())
        .collect()
}

/// `S₃` as permutations of `{0,1,2}` with `(g·h)(x) = g(h(x))`, identity
/// first. Irreps: trivial, sign, and the 2-dim standard representation in the
/// orthonormal basis `(1,−1,0)/√2`, `(1,1,−2)/√6` of the sum-zero plane.
pub fn symmetric3() -> Result<(FiniteGroup, Vec<Vec<Mat>>)> {
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
    let perm_matrix = |p: &[usize; 3]| {
        let mut m = Mat::zeros(3, 3);
        for (x, &px) in p.iter().enumerate() {
            m[(px, x)] = ONE;
        }
        m
    };
    let full: Vec<Mat> = perms.iter().map(perm_matrix).collect();
    let group = FiniteGroup::from_zero_based(table_from_matrices(&full))?;

    let s2 = std::f64::consts::FRAC_1_SQRT_2;
    let s6 = 1.0 / 6f64.sqrt();
    let basis = Mat::from_row_slice(3, 2, &[r(s2), r(s6), r(-s2), r(s6), ZERO, r(-2.0 * s6)]);
    let standard: Vec<Mat> = full.iter().map(|p| basis.transpose() * p * &basis).collect();
    let trivial = vec![Mat::from_element(1, 1, ONE); 6];
    let sign = full
        .iter()
        .map(|p| {
            let det = p.clone().determinant();
            Mat::from_element(1, 1, r(det.re.round()))
        })
        .collect();
    Ok((group, vec![trivial, sign, standard]))
}

/// `D₄` (order 8) as `r^k s^e` with `r` the quarter turn and `s` a reflection,
/// ordered `k + 4e`. Irreps: the four characters `r ↦ a, s ↦ b` (`a, b = ±1`)
/// and the defining 2-dim real representation.
pub fn dihedral4() -> Result<(FiniteGroup, Vec<Vec<Mat>>)> {
    let rot = Mat::from_row_slice(2, 2, &[ZERO, r(-1.0), ONE, ZERO]);
    let refl = Mat::from_row_slice(2, 2, &[ONE, ZERO, ZERO, r(-1.0)]);
    let mut defining = Vec::with_capacity(8);
    for e in 0..2 {
        for k in 0..4 {
            let mut m = Mat::identity(2, 2);
            for _ in 0..k {
                m = &rot * m;
            }
            if e == 1 {
                m *= &refl;
            }
            defining.push(m);
        }
    }
    let group = FiniteGroup::from_zero_based(table_from_matrices(&defining))?;
    let mut irreps = Vec::new();
    for b in [1.0, -1.0] {
        for a in [1.0, -1.0] {
            let chi: Vec<Mat> = (0..8)
                .map(|idx| {
                    let (k, e) = (idx % 4, idx / 4);
                    let v: f64 = f64::powi(a, k as i32) * f64::powi(b, e as i32);
                    Mat::from_element(1, 1, c(v, 0.0))
                })
                .collect();
            irreps.push(chi);
        }
    }
    irreps.push(defining);
    Ok((group, irreps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::representations::builtin_group;

    #[test]
    fn builtin_dimensions() {
        let z2 = builtin_group("Z2").unwrap();
        assert_eq!(z2.irrep_dims(), vec![1, 1]);
        let chars: Vec<Vec<C64>> = z2.irreps().iter().map(FiniteIrrep::character).collect();
        assert_eq!(chars, vec![vec![r(1.0), r(1.0)], vec![r(1.0), r(-1.0)]]);

        let s3 = builtin_group("S3").unwrap();
        assert_eq!(s3.irrep_dims(), vec![1, 1, 2]);
        let d4 = builtin_group("D4").unwrap();
        assert_eq!(d4.irrep_dims(), vec![1, 1, 1, 1, 2]);
        for g in [&z2, &s3, &d4] {
            let sum: usize = g.irrep_dims().iter().map(|d| d * d).sum();
            assert_eq!(sum, g.group().order());
        }
        assert!(matches!(builtin_group("A5"), Err(Error::UnknownGroup(_))));
    }

    #[test]
    fn peter_weyl_orthogonality_finite() {
        for name in ["Z5", "S3", "D4"] {
            let h = builtin_group(name).unwrap();
            let n = h.group().order() as f64;
            for (k1, p1) in h.irreps().iter().enumerate() {
                for (k2, p2) in h.irreps().iter().enumerate() {
                    let (d1, d2) = (p1.dim(), p2.dim());
                    for i in 0..d1 {
                        for j in 0..d1 {
                            for a in 0..d2 {
                                for b in 0..d2 {
                                    let s: C64 = p1
                                        .matrices()
                                        .iter()
                                        .zip(p2.matrices())
                                        .map(|(m1, m2)| m1[(i, j)] * m2[(a, b)].conj())
                                        .sum::<C64>()
                                        * (d1 as f64 / n);
                                    let expect = if k1 == k2 && i == a && j == b { 1.0 } else { 0.0 };
                                    assert!((s - r(expect)).norm() < 1e-10, "{name}");
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_reducible_and_non_homomorphic() {
        let s3 = builtin_group("S3").unwrap();
        let group = Arc::clone(s3.group());
        // trivial ⊕ sign is reducible
        let sum: Vec<Mat> = s3.irreps()[0]
            .matrices()
            .iter()
            .zip(s3.irreps()[1].matrices())
            .map(|(a, b)| {
                let mut m = Mat::zeros(2, 2);
                m[(0, 0)] = a[(0, 0)];
                m[(1, 1)] = b[(0, 0)];
                m
            })
            .collect();
        assert!(matches!(FiniteIrrep::new(Arc::clone(&group), sum), Err(Error::InvalidRepresentation(_))));
        let mut broken = s3.irreps()[2].matrices().to_vec();
        broken.swap(1, 2);
        assert!(FiniteIrrep::new(group, broken).is_err());
    }

    #[test]
    fn conjugate_of_real_irrep_is_itself() {
        let s3 = builtin_group("S3").unwrap();
        let std = &s3.irreps()[2];
        let conj = std.conjugate();
        for (a, b) in std.matrices().iter().zip(conj.matrices()) {
            assert_eq!(a, b);
        }
        let z3 = builtin_group("Z3").unwrap();
        let chi = &z3.irreps()[1];
        let conj = FiniteIrrep::new(Arc::clone(chi.group()), chi.conjugate().matrices().to_vec()).unwrap();
        assert_eq!(conj.character()[1], chi.character()[1].conj());
    }

    #[test]
    fn json_round_trip() {
        let d4 = builtin_group("D4").unwrap();
        let irrep = &d4.irreps()[4];
        let back = FiniteIrrep::from_json(Arc::clone(d4.group()), &irrep.to_json()).unwrap();
        assert_eq!(back.matrices(), irrep.matrices());
        assert!(FiniteIrrep::from_json(Arc::clone(d4.group()), "[[[[1,0]]]]").is_err());
        assert!(matches!(
            FiniteIrrep::from_json(Arc::clone(d4.group()), "[[[1,0]"),
            Err(Error::Parse { .. })
        ));
    }
}
