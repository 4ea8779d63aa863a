//! Parsing of command-line input specifications and loading of input files.

use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use ncchar::charfunc::{io::values_from_json, DensityMatrix};
use ncchar::groups::FiniteGroup;
use ncchar::linalg::C64;
use ncchar::representations::{builtin_group, FiniteHarmonics, FiniteIrrep, Spin};
use ncchar::states::StateRecipe;

use crate::report::DigestBuilder;

/// Errors that map to exit status 2.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Library(#[from] ncchar::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn parse_error(column: usize, message: String) -> CliError {
    CliError::Library(ncchar::Error::Parse {
        line: 1,
        column,
        message,
    })
}

pub fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Representation choice: `su2:j=1`, `su2:1/2x1`, `S3:2` or `S3:2x2`.
#[derive(Debug, Clone, PartialEq)]
pub enum RepSpec {
    Su2(Spin),
    Su2Pair(Spin, Spin),
    Finite { group: String, label: usize },
    FinitePair { group: String, labels: (usize, usize) },
}

impl RepSpec {
    /// Spin-`(d−1)/2` for a single space, or the spin pair for `m × n`.
    pub fn default_for(dim: usize, dims: Option<(usize, usize)>) -> CliResult<Self> {
        Ok(match dims {
            Some((m, n)) => RepSpec::Su2Pair(Spin::from_dim(m)?, Spin::from_dim(n)?),
            None => RepSpec::Su2(Spin::from_dim(dim)?),
        })
    }

    pub fn is_pair(&self) -> bool {
        matches!(self, RepSpec::Su2Pair(..) | RepSpec::FinitePair { .. })
    }
}

impl FromStr for RepSpec {
    type Err = CliError;

    fn from_str(text: &str) -> CliResult<Self> {
        let text = text.trim();
        let (head, body) = text
            .split_once(':')
            .ok_or_else(|| parse_error(1, format!("rep spec `{text}` needs the form group:labels")))?;
        let body_col = head.len() + 2;
        let body = body.trim();
        if head.trim().eq_ignore_ascii_case("su2") {
            let strip = |s: &str| {
                let s = s.trim();
                s.split_once('=').map_or(s, |(_, v)| v).trim().to_string()
            };
            let pieces: Vec<String> = if body.contains(',') {
                body.split(',').map(strip).collect()
            } else {
                body.split(['x', 'X']).map(strip).collect()
            };
            let spins = pieces
                .iter()
                .map(|p| p.parse::<Spin>())
                .collect::<ncchar::Result<Vec<_>>>()
                .map_err(|e| parse_error(body_col, e.to_string()))?;
            match spins.as_slice() {
                [j] => Ok(RepSpec::Su2(*j)),
                [a, b] => Ok(RepSpec::Su2Pair(*a, *b)),
                _ => Err(parse_error(body_col, format!("expected one or two spins in `{body}`"))),
            }
        } else {
            let group = head.trim().to_string();
            let labels = body
                .split(['x', 'X'])
                .map(|s| s.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| parse_error(body_col, format!("irrep labels must be integers, found `{body}`")))?;
            match labels.as_slice() {
                [k] => Ok(RepSpec::Finite { group, label: *k }),
                [a, b] => Ok(RepSpec::FinitePair { group, labels: (*a, *b) }),
                _ => Err(parse_error(body_col, format!("expected one or two irrep labels in `{body}`"))),
            }
        }
    }
}

impl fmt::Display for RepSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepSpec::Su2(j) => write!(f, "su2:j={j}"),
            RepSpec::Su2Pair(a, b) => write!(f, "su2:{a}x{b}"),
            RepSpec::Finite { group, label } => write!(f, "{group}:{label}"),
            RepSpec::FinitePair { group, labels } => write!(f, "{group}:{}x{}", labels.0, labels.1),
        }
    }
}

/// `2x3` → `(2, 3)`.
pub fn parse_dims(text: &str) -> CliResult<(usize, usize)> {
    let bad = || parse_error(1, format!("dims must look like 2x3, found `{text}`"));
    let (m, n) = text.split_once(['x', 'X']).ok_or_else(bad)?;
    let m: usize = m.trim().parse().map_err(|_| bad())?;
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    if m == 0 || n == 0 {
        return Err(bad());
    }
    Ok((m, n))
}

/// Comma-separated complex numbers such as `1,0.5-0.25i`.
pub fn parse_values(text: &str) -> CliResult<Vec<C64>> {
    let mut column = 1;
    let mut out = Vec::new();
    for item in text.split(',') {
        let z = C64::from_str(item.trim())
            .map_err(|_| parse_error(column, format!("invalid complex number `{}`", item.trim())))?;
        out.push(z);
        column += item.len() + 1;
    }
    Ok(out)
}

/// A loaded density matrix with an optional bipartition.
#[derive(Debug, Clone)]
pub struct StateInput {
    pub rho: DensityMatrix,
    pub dims: Option<(usize, usize)>,
}

pub fn load_state(
    recipe: Option<&str>,
    file: Option<&Path>,
    dims: Option<&str>,
    digest: &mut DigestBuilder,
) -> CliResult<StateInput> {
    let mut state = match (recipe, file) {
        (Some(r), None) => {
            let recipe = StateRecipe::parse(r)?;
            let canonical = recipe.to_string();
            digest.describe("recipe", &canonical, &canonical);
            let prepared = recipe.build()?;
            StateInput {
                rho: prepared.rho,
                dims: prepared.dims,
            }
        }
        (None, Some(path)) => {
            let text = read_file(path)?;
            digest.describe("state", &text, &path.display().to_string());
            StateInput {
                rho: DensityMatrix::from_json(&text)?,
                dims: None,
            }
        }
        (None, None) => return Err(CliError::Usage("give a state with --recipe or --state".into())),
        (Some(_), Some(_)) => return Err(CliError::Usage("--recipe and --state are exclusive".into())),
    };
    if let Some(d) = dims {
        let (m, n) = parse_dims(d)?;
        digest.describe("dims", d, d);
        if m * n != state.rho.dim() {
            return Err(ncchar::Error::DimensionMismatch {
                expected: state.rho.dim(),
                found: m * n,
            }
            .into());
        }
        state.dims = Some((m, n));
    }
    Ok(state)
}

/// A built-in group by name, or a group file with optional irrep files.
pub fn load_group(
    builtin: Option<&str>,
    group_file: Option<&Path>,
    irrep_files: &[std::path::PathBuf],
    digest: &mut DigestBuilder,
) -> CliResult<FiniteHarmonics> {
    match (builtin, group_file) {
        (Some(name), None) => {
            digest.describe("builtin", name, name);
            Ok(builtin_group(name)?)
        }
        (None, Some(path)) => {
            let text = read_file(path)?;
            digest.describe("group", &text, &path.display().to_string());
            let group = Arc::new(FiniteGroup::parse(&text)?);
            let irreps = irrep_files
                .iter()
                .map(|p| {
                    let t = read_file(p)?;
                    digest.describe("irrep", &t, &p.display().to_string());
                    Ok(FiniteIrrep::from_json(Arc::clone(&group), &t)?)
                })
                .collect::<CliResult<Vec<_>>>()?;
            let name = path.file_stem().map_or("group".into(), |s| s.to_string_lossy().into_owned());
            Ok(FiniteHarmonics::new(name, group, irreps)?)
        }
        (None, None) => Err(CliError::Usage("give a group with --builtin or --group".into())),
        (Some(_), Some(_)) => Err(CliError::Usage("--builtin and --group are exclusive".into())),
    }
}

/// Group values from `--values` or `--values-file`.
pub fn load_values(inline: Option<&str>, file: Option<&Path>, digest: &mut DigestBuilder) -> CliResult<Option<Vec<C64>>> {
    match (inline, file) {
        (Some(v), None) => {
            digest.describe("values", v, v);
            Ok(Some(parse_values(v)?))
        }
        (None, Some(path)) => {
            let text = read_file(path)?;
            digest.describe("values_file", &text, &path.display().to_string());
            Ok(Some(values_from_json(&text)?))
        }
        (None, None) => Ok(None),
        (Some(_), Some(_)) => Err(CliError::Usage("--values and --values-file are exclusive".into())),
    }
}
