//! Argument definitions and dispatch.

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use ncchar::separability::SeparableDecomposition;
use ncchar::tolerances::{Tolerances, IDENTITY_TOL, NORMALIZATION_TOL};

use crate::commands::{self, FiniteAction, FiniteInputs};
use crate::report::{DigestBuilder, ReportTolerances, RunReport};
use crate::spec::{self, CliError, CliResult, RepSpec};

/// Default round-trip threshold.
pub const ROUNDTRIP_TOL: f64 = 1e-9;

pub const EXIT_PASS: u8 = 0;
pub const EXIT_VERDICT_FAILURE: u8 = 1;
pub const EXIT_INPUT_ERROR: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "ncchar", version, about = "Characteristic functions on compact groups and separability tests")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalOpts,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Tolerance profile: default, strict or loose.
    #[arg(long, global = true, env = "NCCHAR_TOLERANCE_PROFILE", default_value = "default")]
    pub profile: String,
    /// PSD slack per matrix dimension.
    #[arg(long, global = true)]
    pub psd_scale: Option<f64>,
    /// Tolerance of identity checks.
    #[arg(long, global = true)]
    pub identity_tol: Option<f64>,
    /// Tolerance of the round-trip deviation.
    #[arg(long, global = true)]
    pub roundtrip_tol: Option<f64>,
    /// Tolerance of `|φ(e) − 1|`.
    #[arg(long, global = true)]
    pub normalization_tol: Option<f64>,
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Also write the JSON report to this file.
    #[arg(long, global = true, value_name = "FILE")]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StateArgs {
    /// State recipe, e.g. `werner:p=0.5` or `horodecki:a=0.3`.
    #[arg(long)]
    pub recipe: Option<String>,
    /// Density-matrix file: JSON rows of `[re, im]` pairs.
    #[arg(long, value_name = "FILE")]
    pub state: Option<PathBuf>,
    /// Bipartition `MxN`.
    #[arg(long)]
    pub dims: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Forward then inverse transform; reports the max deviation.
    Roundtrip {
        #[command(flatten)]
        state: StateArgs,
        /// `su2:j=1`, `su2:1x1`, `S3:2` or `S3:2x2`.
        #[arg(long)]
        rep: Option<String>,
    },
    /// Group-theoretic and direct partial-transpose tests.
    Ppt {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long)]
        rep: Option<String>,
    },
    /// Normalization, purity, pure-product integrals and abelian spectrum.
    Analyze {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long)]
        rep: Option<String>,
        /// Write φ samples on the quadrature grid as CSV.
        #[arg(long, value_name = "FILE")]
        csv: Option<PathBuf>,
    },
    /// Φ-matrix, Fourier blocks and embedding checks on a finite group.
    Finite {
        /// Built-in group: `Z<n>`, `S3` or `D4`.
        #[arg(long)]
        builtin: Option<String>,
        /// Group file: order, then the 1-based Cayley table.
        #[arg(long, value_name = "FILE")]
        group: Option<PathBuf>,
        /// Irrep files for a group file (JSON matrices per element).
        #[arg(long = "irreps", value_name = "FILE", num_args = 1..)]
        irreps: Vec<PathBuf>,
        /// Comma-separated values `φ(g_1), …, φ(g_N)`.
        #[arg(long, allow_hyphen_values = true)]
        values: Option<String>,
        /// Values as a JSON list of `[re, im]`.
        #[arg(long, value_name = "FILE")]
        values_file: Option<PathBuf>,
        #[command(flatten)]
        state: StateArgs,
        /// Irrep label `k`, or `AxB` for a pair.
        #[arg(long)]
        irrep: Option<String>,
        /// Separable decomposition file (JSON list of `{weight, left, right}`).
        #[arg(long, value_name = "FILE")]
        decomposition: Option<PathBuf>,
        #[arg(long, value_enum, default_values_t = [FiniteAction::PhiMatrix])]
        action: Vec<FiniteAction>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Roundtrip { .. } => "roundtrip",
            Command::Ppt { .. } => "ppt",
            Command::Analyze { .. } => "analyze",
            Command::Finite { .. } => "finite",
        }
    }
}

pub fn tolerances(opts: &GlobalOpts) -> CliResult<ReportTolerances> {
    let base = Tolerances::profile(&opts.profile)
        .ok_or_else(|| CliError::Usage(format!("unknown tolerance profile `{}`", opts.profile)))?;
    let scale = base.identity / IDENTITY_TOL;
    let t = ReportTolerances {
        psd_scale: opts.psd_scale.unwrap_or(base.psd_scale),
        identity: opts.identity_tol.unwrap_or(base.identity),
        roundtrip: opts.roundtrip_tol.unwrap_or(ROUNDTRIP_TOL * scale),
        normalization: opts.normalization_tol.unwrap_or(NORMALIZATION_TOL * scale),
    };
    for (name, v) in [
        ("psd-scale", t.psd_scale),
        ("identity-tol", t.identity),
        ("roundtrip-tol", t.roundtrip),
        ("normalization-tol", t.normalization),
    ] {
        if !(v.is_finite() && v >= 0.0) {
            return Err(CliError::Usage(format!("--{name} must be a non-negative number")));
        }
    }
    Ok(t)
}

fn load_state_args(args: &StateArgs, digest: &mut DigestBuilder) -> CliResult<spec::StateInput> {
    spec::load_state(args.recipe.as_deref(), args.state.as_deref(), args.dims.as_deref(), digest)
}

fn parse_rep(rep: Option<&String>, digest: &mut DigestBuilder) -> CliResult<Option<RepSpec>> {
    rep.map(|r| {
        let parsed: RepSpec = r.parse()?;
        digest.describe("rep", &parsed.to_string(), &parsed.to_string());
        Ok(parsed)
    })
    .transpose()
}

/// Runs one command. `Ok` carries the report and any CSV text.
pub fn execute(cli: &Cli) -> CliResult<(RunReport, Option<(PathBuf, String)>)> {
    let tol = tolerances(&cli.global)?;
    let mut digest = DigestBuilder::default();
    digest.add("command", cli.command.name());
    let start = Instant::now();
    let mut csv_out = None;
    let report = match &cli.command {
        Command::Roundtrip { state, rep } => {
            let st = load_state_args(state, &mut digest)?;
            let rep = match parse_rep(rep.as_ref(), &mut digest)? {
                Some(r) => r,
                None => RepSpec::default_for(st.rho.dim(), st.dims)?,
            };
            let mut r = RunReport::new("roundtrip", digest.finish(), tol);
            commands::roundtrip(&st, &rep, &tol, &mut r)?;
            r
        }
        Command::Ppt { state, rep } => {
            let st = load_state_args(state, &mut digest)?;
            let rep = parse_rep(rep.as_ref(), &mut digest)?;
            let mut r = RunReport::new("ppt", digest.finish(), tol);
            commands::ppt(&st, rep, &tol, &mut r)?;
            r
        }
        Command::Analyze { state, rep, csv } => {
            let st = load_state_args(state, &mut digest)?;
            let rep = match parse_rep(rep.as_ref(), &mut digest)? {
                Some(r) => r,
                None => RepSpec::default_for(st.rho.dim(), st.dims)?,
            };
            let mut r = RunReport::new("analyze", digest.finish(), tol);
            let samples = commands::analyze(&st, &rep, &tol, &mut r)?;
            if let Some(path) = csv {
                let text = samples.ok_or_else(|| CliError::Usage("--csv needs an SU(2) rep".into()))?;
                r.flag("csv", path.display().to_string());
                csv_out = Some((path.clone(), text));
            }
            r
        }
        Command::Finite {
            builtin,
            group,
            irreps,
            values,
            values_file,
            state,
            irrep,
            decomposition,
            action,
        } => {
            let harmonics = spec::load_group(builtin.as_deref(), group.as_deref(), irreps, &mut digest)?;
            let values = spec::load_values(values.as_deref(), values_file.as_deref(), &mut digest)?;
            let state = if state.recipe.is_some() || state.state.is_some() {
                Some(load_state_args(state, &mut digest)?)
            } else {
                None
            };
            let labels = irrep
                .as_deref()
                .map(|s| {
                    digest.describe("irrep", s, s);
                    s.split(['x', 'X'])
                        .map(|t| {
                            t.trim()
                                .parse::<usize>()
                                .map_err(|_| CliError::Usage(format!("invalid irrep label `{s}`")))
                        })
                        .collect::<CliResult<Vec<_>>>()
                })
                .transpose()?;
            let decomposition = decomposition
                .as_deref()
                .map(|p| {
                    let text = spec::read_file(p)?;
                    digest.describe("decomposition", &text, &p.display().to_string());
                    Ok::<_, CliError>(SeparableDecomposition::from_json(&text)?)
                })
                .transpose()?;
            let actions: Vec<String> = action
                .iter()
                .map(|a| format!("{a:?}"))
                .collect();
            digest.add("actions", &actions.join(","));
            let inputs = FiniteInputs {
                harmonics,
                values,
                state,
                labels,
                decomposition,
            };
            let mut r = RunReport::new("finite", digest.finish(), tol);
            commands::finite(&inputs, action, &tol, &mut r)?;
            r
        }
    };
    let mut report = report;
    report.timing_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok((report, csv_out))
}

fn write_file(path: &PathBuf, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn run(cli: Cli) -> ExitCode {
    let outcome = execute(&cli).and_then(|(report, csv)| {
        if let Some((path, text)) = csv {
            write_file(&path, &text)?;
        }
        if let Some(path) = &cli.global.report {
            write_file(path, &report.to_json())?;
        }
        Ok(report)
    });
    match outcome {
        Ok(report) => {
            let text = if cli.global.json {
                report.to_json() + "\n"
            } else {
                report.to_text()
            };
            // A closed pipe is not an error of the run.
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(if report.passed { EXIT_PASS } else { EXIT_VERDICT_FAILURE })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT_ERROR)
        }
    }
}
