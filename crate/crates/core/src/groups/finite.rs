//! Finite groups given by their multiplication table.
//!
//! Elements are indexed `0..N` with index `0` the identity. The text format and
//! every user-facing message use 1-based indices (`g₁ = e`), matching the usual
//! Cayley table notation.

use std::fmt;

use crate::error::{Error, Result};
use crate::groups::HaarGrid;
use crate::linalg::C64;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    cayley: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    sigma: Vec<Vec<usize>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup").field("order", &self.order).finish()
    }
}

fn not_a_group(reason: String) -> Error {
    Error::NotAGroup(reason)
}

impl FiniteGroup {
    /// Builds a group from a 1-based Cayley table, checking every group axiom.
    pub fn from_cayley_table(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        let mut zero_based = Vec::with_capacity(n);
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(not_a_group(format!(
                    "table is not square: row {} has {} entries, expected {n}",
                    a + 1,
                    row.len()
                )));
            }
            let mut out = Vec::with_capacity(n);
            for (b, &entry) in row.iter().enumerate() {
                if entry == 0 || entry > n {
                    return Err(not_a_group(format!(
                        "closure: entry {entry} at ({}, {}) is outside 1..{n}",
                        a + 1,
                        b + 1
                    )));
                }
                out.push(entry - 1);
            }
            zero_based.push(out);
        }
        Self::from_zero_based(zero_based)
    }

    /// Same as [`FiniteGroup::from_cayley_table`] with 0-based entries.
    pub fn from_zero_based(cayley: Vec<Vec<usize>>) -> Result<Self> {
        let n = cayley.len();
        if n == 0 {
            return Err(not_a_group("empty table".into()));
        }
        if let Some((a, row)) = cayley.iter().enumerate().find(|(_, row)| row.len() != n) {
            return Err(not_a_group(format!(
                "table is not square: row {} has {} entries, expected {n}",
                a + 1,
                row.len()
            )));
        }
        if let Some((a, b)) = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| cayley[a][b] >= n)
        {
            return Err(not_a_group(format!(
                "closure: entry at ({}, {}) is outside 1..{n}",
                a + 1,
                b + 1
            )));
        }

        // Latin square.
        for a in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for b in 0..n {
                let x = cayley[a][b];
                if seen_row[x] {
                    return Err(not_a_group(format!(
                        "not a Latin square: row {} repeats element {}",
                        a + 1,
                        x + 1
                    )));
                }
                seen_row[x] = true;
                let y = cayley[b][a];
                if seen_col[y] {
                    return Err(not_a_group(format!(
                        "not a Latin square: column {} repeats element {}",
                        a + 1,
                        y + 1
                    )));
                }
                seen_col[y] = true;
            }
        }

        // Element 1 is the identity.
        for a in 0..n {
            if cayley[0][a] != a {
                return Err(not_a_group(format!(
                    "identity: g1·g{} = g{}, expected g{}",
                    a + 1,
                    cayley[0][a] + 1,
                    a + 1
                )));
            }
            if cayley[a][0] != a {
                return Err(not_a_group(format!(
                    "identity: g{}·g1 = g{}, expected g{}",
                    a + 1,
                    cayley[a][0] + 1,
                    a + 1
                )));
            }
        }

        for a in 0..n {
            for b in 0..n {
                let ab = cayley[a][b];
                for c in 0..n {
                    if cayley[ab][c] != cayley[a][cayley[b][c]] {
                        return Err(not_a_group(format!(
                            "associativity fails for (g{}, g{}, g{})",
                            a + 1,
                            b + 1,
                            c + 1
                        )));
                    }
                }
            }
        }

        let mut inverse = vec![0; n];
        for a in 0..n {
            // Latin rows guarantee exactly one solution.
            let inv = (0..n).find(|&b| cayley[a][b] == 0).expect("latin row");
            if cayley[inv][a] != 0 {
                return Err(not_a_group(format!(
                    "inverse: g{} has right inverse g{} that is not a left inverse",
                    a + 1,
                    inv + 1
                )));
            }
            inverse[a] = inv;
        }

        let sigma: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| cayley[inverse[a]][b]).collect())
            .collect();
        for a in 0..n {
            if sigma[a][a] != 0 {
                return Err(not_a_group(format!("cocycle: sigma(g{0}, g{0}) is not 1", a + 1)));
            }
            for b in 0..n {
                for c in 0..n {
                    if cayley[sigma[a][b]][sigma[b][c]] != sigma[a][c] {
                        return Err(not_a_group(format!(
                            "cocycle law fails for (g{}, g{}, g{})",
                            a + 1,
                            b + 1,
                            c + 1
                        )));
                    }
                }
            }
        }

        Ok(Self {
            order: n,
            cayley,
            inverse,
            sigma,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.cayley[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// Index of `g_a⁻¹ g_b`.
    pub fn sigma(&self, a: usize, b: usize) -> usize {
        self.sigma[a][b]
    }

    pub fn cayley(&self) -> &[Vec<usize>] {
        &self.cayley
    }

    pub fn inverse_table(&self) -> &[usize] {
        &self.inverse
    }

    pub fn sigma_table(&self) -> &[Vec<usize>] {
        &self.sigma
    }

    pub fn cayley_one_based(&self) -> Vec<Vec<usize>> {
        self.cayley
            .iter()
            .map(|row| row.iter().map(|x| x + 1).collect())
            .collect()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// Uniform weights `1/N`; exact for every integrand.
    pub fn haar_grid(&self) -> HaarGrid<usize> {
        let w = 1.0 / self.order as f64;
        HaarGrid::exact(self.elements().collect(), vec![w; self.order])
    }

    /// Relabels the elements: new index `perm[a]` carries old element `a`.
    ///
    /// `perm` must be a permutation with `perm[0] == 0` so that the identity keeps
    /// index 0.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.order;
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::ParameterOutOfRange("relabelling is not a permutation".into()));
        }
        if perm[0] != 0 {
            return Err(Error::ParameterOutOfRange("relabelling must fix the identity".into()));
        }
        let mut table = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                table[perm[a]][perm[b]] = perm[self.cayley[a][b]];
            }
        }
        Self::from_zero_based(table)
    }

    /// Parses the group-spec text format: the order `N` followed by `N` lines of
    /// `N` whitespace-separated 1-based indices. Blank lines and `#` comments are
    /// ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut order: Option<usize> = None;
        let mut rows: Vec<Vec<usize>> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            if line.trim().is_empty() {
                continue;
            }
            let mut values = Vec::new();
            let mut offset = 0;
            for token in line.split_whitespace() {
                let column = line[offset..].find(token).map_or(0, |p| p + offset) + 1;
                offset = column - 1 + token.len();
                let v: usize = token.parse().map_err(|_| Error::Parse {
                    line: lineno + 1,
                    column,
                    message: format!("expected a positive integer, found `{token}`"),
                })?;
                values.push((v, column));
            }
            match order {
                None => {
                    if values.len() != 1 || values[0].0 == 0 {
                        return Err(Error::Parse {
                            line: lineno + 1,
                            column: 1,
                            message: "first line must hold the group order".into(),
                        });
                    }
                    order = Some(values[0].0);
                }
                Some(n) => {
                    if rows.len() == n {
                        return Err(Error::Parse {
                            line: lineno + 1,
                            column: 1,
                            message: format!("more than {n} table rows"),
                        });
                    }
                    if values.len() != n {
                        return Err(Error::Parse {
                            line: lineno + 1,
                            column: values.get(n).map_or(line.len() + 1, |v| v.1),
                            message: format!("expected {n} entries, found {}", values.len()),
                        });
                    }
                    rows.push(values.into_iter().map(|v| v.0).collect());
                }
            }
        }
        let n = order.ok_or(Error::Parse {
            line: 1,
            column: 1,
            message: "empty group file".into(),
        })?;
        if rows.len() != n {
            return Err(Error::Parse {
                line: text.lines().count(),
                column: 1,
                message: format!("expected {n} table rows, found {}", rows.len()),
            });
        }
        Self::from_cayley_table(&rows)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.order);
        for row in self.cayley_one_based() {
            let line: Vec<String> = row.iter().map(ToString::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

/// `(1/N) Σ_α f(g_α)`.
pub fn finite_haar_average(group: &FiniteGroup, values: &[C64]) -> Result<C64> {
    if values.len() != group.order() {
        return Err(Error::DimensionMismatch {
            expected: group.order(),
            found: values.len(),
        });
    }
    Ok(values.iter().sum::<C64>() / group.order() as f64)
}
