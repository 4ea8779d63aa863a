//! The four subcommands. Each fills a [`RunReport`]; input problems surface as
//! [`CliError`].

use ncchar::charfunc::io::{product_samples_csv, su2_samples_csv};
use ncchar::charfunc::{
    block_decompose, build_phi_matrix, forward_transform, inverse_transform, inverse_transform_product, is_pure,
    purity_deviation_sampled, CharFunc, PsdVerdict,
};
use ncchar::groups::{HaarGrid, HaarQuadrature, SU2Element};
use ncchar::linalg::{self, max_abs_diff, partial_transpose_left, to_pairs, CVec, Mat};
use ncchar::representations::{builtin_group, FiniteHarmonics, HarmonicGroup, Product, Spin, Su2};
use ncchar::separability::{
    abelian_restriction, group_ppt_test, phi_matrix_embedding, phi_partial_transpose_test, pure_product_test,
    BipartiteState, SeparableDecomposition,
};
use ncchar::tolerances::COEFFICIENT_TOL;
use serde::Serialize;

use crate::report::{ReportTolerances, RunReport};
use crate::spec::{CliError, CliResult, RepSpec, StateInput};

const RANK_TOL: f64 = 1e-9;

fn quad(spin: Spin) -> CliResult<HaarQuadrature> {
    Ok(HaarQuadrature::new(2 * spin.twice())?)
}

fn pair_dims<G: HarmonicGroup>(group: &G, labels: (&G::Label, &G::Label)) -> CliResult<(usize, usize)> {
    Ok((group.irrep_dim(labels.0)?, group.irrep_dim(labels.1)?))
}

fn require_dims(found: Option<(usize, usize)>, expected: (usize, usize)) -> CliResult<()> {
    match found {
        Some(d) if d != expected => Err(ncchar::Error::DimensionMismatch {
            expected: expected.0 * expected.1,
            found: d.0 * d.1,
        }
        .into()),
        _ => Ok(()),
    }
}

fn finite_group(name: &str) -> CliResult<FiniteHarmonics> {
    Ok(builtin_group(name)?)
}

fn pairs_of(values: &[linalg::C64]) -> Vec<[f64; 2]> {
    values.iter().map(|z| [z.re, z.im]).collect()
}

fn top_eigenvector(m: &Mat) -> CVec {
    let eig = m.clone().symmetric_eigen();
    let top = eig
        .eigenvalues
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map_or(0, |(i, _)| i);
    eig.eigenvectors.column(top).into_owned()
}

/// `yes`/`no` by the verdict, suffixed when `λ_min` sits in the marginal band.
pub fn qualified(v: PsdVerdict, yes: &str, no: &str) -> String {
    let base = if v.is_psd { yes } else { no };
    if v.marginal {
        format!("{base} (marginal)")
    } else {
        base.to_string()
    }
}

/// PSD verdict on every block, with slack `psd_scale · d_k`.
fn block_verdict<G: HarmonicGroup>(phi: &CharFunc<G>, psd_scale: f64) -> Option<PsdVerdict> {
    PsdVerdict::all(
        phi.blocks()
            .values()
            .map(|b| PsdVerdict::with_tolerance(b, psd_scale * b.nrows() as f64)),
    )
}

pub fn roundtrip(state: &StateInput, rep: &RepSpec, tol: &ReportTolerances, r: &mut RunReport) -> CliResult<()> {
    let rho = state.rho.matrix();
    let (back, phi_e, nodes) = match rep {
        RepSpec::Su2(j) => {
            let q = quad(*j)?;
            let phi = forward_transform(rho, &Su2, *j)?;
            (inverse_transform(&phi, j, q.grid())?, phi.normalization(), q.len())
        }
        RepSpec::Su2Pair(a, b) => {
            let (ql, qr) = (quad(*a)?, quad(*b)?);
            let phi = forward_transform(rho, &Product(Su2), (*a, *b))?;
            let back = inverse_transform_product(&phi, &(*a, *b), ql.grid(), qr.grid())?;
            (back, phi.normalization(), ql.len() * qr.len())
        }
        RepSpec::Finite { group, label } => {
            let h = finite_group(group)?;
            let grid = h.group().haar_grid();
            let phi = forward_transform(rho, &h, *label)?;
            (inverse_transform(&phi, label, &grid)?, phi.normalization(), grid.len())
        }
        RepSpec::FinitePair { group, labels } => {
            let h = finite_group(group)?;
            let grid = h.group().haar_grid();
            let phi = forward_transform(rho, &Product(h.clone()), *labels)?;
            let back = inverse_transform_product(&phi, labels, &grid, &grid)?;
            (back, phi.normalization(), grid.len() * grid.len())
        }
    };
    r.deviation("roundtrip", max_abs_diff(&back, rho), tol.roundtrip);
    r.deviation("normalization", (phi_e - linalg::ONE).norm(), tol.normalization);
    r.flag("rep", rep.to_string());
    r.set_data("dimension", state.rho.dim());
    r.set_data("grid_nodes", nodes);
    Ok(())
}

/// The bipartition implied by the rep and the state.
fn bipartite_rep(state: &StateInput, rep: Option<RepSpec>) -> CliResult<RepSpec> {
    let rep = match rep {
        Some(rep) => rep,
        None => match state.dims {
            Some(d) => RepSpec::default_for(state.rho.dim(), Some(d))?,
            None => {
                return Err(CliError::Usage(
                    "this command needs a bipartition: pass --dims MxN or a pair rep".into(),
                ))
            }
        },
    };
    if !rep.is_pair() {
        return Err(CliError::Usage(format!("rep `{rep}` is not a pair rep")));
    }
    Ok(rep)
}

fn ppt_generic<G: HarmonicGroup>(
    state: &StateInput,
    group: G,
    labels: (G::Label, G::Label),
    left: &HaarGrid<G::Element>,
    right: &HaarGrid<G::Element>,
    tol: &ReportTolerances,
    r: &mut RunReport,
) -> CliResult<()> {
    let (m, n) = pair_dims(&group, (&labels.0, &labels.1))?;
    require_dims(state.dims, (m, n))?;
    let bip = BipartiteState::new(state.rho.clone(), group, labels.0, labels.1)?;
    let report = group_ppt_test(&bip, left, right)?;
    let slack = tol.psd_scale * (m * n) as f64;
    let group_v = PsdVerdict::with_tolerance(&report.reconstructed, slack);
    let direct = PsdVerdict::with_tolerance(&partial_transpose_left(state.rho.matrix(), m, n), slack);
    let agree = group_v.is_psd == direct.is_psd || group_v.marginal || direct.marginal;
    r.verdict("group_theoretic", group_v);
    r.verdict("direct_partial_transpose", direct);
    r.deviation("reconstruction", report.reconstruction_deviation, tol.identity);
    r.check("agreement", agree);
    r.flag("agreement", if agree { "AGREE" } else { "DISAGREE" });
    r.flag("ppt", qualified(direct, "PPT", "NPT"));
    r.set_data("dims", [m, n]);
    Ok(())
}

pub fn ppt(state: &StateInput, rep: Option<RepSpec>, tol: &ReportTolerances, r: &mut RunReport) -> CliResult<()> {
    let rep = bipartite_rep(state, rep)?;
    r.flag("rep", rep.to_string());
    match rep {
        RepSpec::Su2Pair(a, b) => {
            let (ql, qr) = (quad(a)?, quad(b)?);
            ppt_generic(state, Su2, (a, b), ql.grid(), qr.grid(), tol, r)
        }
        RepSpec::FinitePair { group, labels } => {
            let h = finite_group(&group)?;
            let grid = h.group().haar_grid();
            ppt_generic(state, h, labels, &grid, &grid, tol, r)
        }
        _ => unreachable!("pair rep checked"),
    }
}

#[derive(Serialize)]
struct SpectrumEntry {
    k: i32,
    l: i32,
    value: f64,
}

/// Fixed nodes for sampled checks: the identity plus a few generic elements.
fn probe_nodes() -> Vec<SU2Element> {
    let mut nodes = vec![SU2Element::identity()];
    nodes.extend((1..=6).map(|i| {
        let t = i as f64;
        SU2Element::from_euler(0.7 * t, 0.4 * t, 1.3 * t)
    }));
    nodes
}

fn analyze_purity<G: HarmonicGroup>(state: &StateInput, phi: &CharFunc<G>, tol: &ReportTolerances, r: &mut RunReport) -> CliResult<bool> {
    r.deviation("normalization", (phi.normalization() - linalg::ONE).norm(), tol.normalization);
    if let Some(v) = block_verdict(phi, tol.psd_scale) {
        r.verdict("blocks", v);
    }
    let check = is_pure(phi)?;
    let rank = state.rho.rank(RANK_TOL);
    r.check("purity_matches_rank", check.is_pure == (rank == 1));
    r.flag("purity", if check.is_pure { "PURE" } else { "MIXED" });
    r.set_data("purity", state.rho.purity());
    r.set_data("rank", rank);
    r.set_data("idempotency_deviation", check.deviation);
    Ok(check.is_pure)
}

fn analyze_pair<G: HarmonicGroup>(
    state: &StateInput,
    group: G,
    labels: (G::Label, G::Label),
    left: &HaarGrid<G::Element>,
    right: &HaarGrid<G::Element>,
    tol: &ReportTolerances,
    r: &mut RunReport,
) -> CliResult<CharFunc<Product<G>>> {
    let dims = pair_dims(&group, (&labels.0, &labels.1))?;
    require_dims(state.dims, dims)?;
    let phi = forward_transform(state.rho.matrix(), &Product(group.clone()), labels.clone())?;
    if analyze_purity(state, &phi, tol, r)? {
        let psi = top_eigenvector(state.rho.matrix());
        let pp = pure_product_test(&psi, &group, (&labels.0, &labels.1), left, right)?;
        r.deviation("pure_product_vs_reduced_purity", pp.purity_deviation, tol.identity);
        r.flag("product", if pp.is_product { "PRODUCT" } else { "ENTANGLED" });
        r.set_data("pure_product_integrals", [pp.i1, pp.i2]);
    }
    Ok(phi)
}

pub fn analyze(
    state: &StateInput,
    rep: &RepSpec,
    tol: &ReportTolerances,
    r: &mut RunReport,
) -> CliResult<Option<String>> {
    r.flag("rep", rep.to_string());
    match rep {
        RepSpec::Su2(j) => {
            let q = quad(*j)?;
            let phi = forward_transform(state.rho.matrix(), &Su2, *j)?;
            let pure = analyze_purity(state, &phi, tol, r)?;
            let sampled = purity_deviation_sampled(&phi, &probe_nodes(), q.grid())?;
            if pure {
                r.deviation("convolution_purity", sampled, tol.identity);
            } else {
                r.set_data("convolution_purity_deviation", sampled);
            }
            Ok(Some(su2_samples_csv(&phi, &q)))
        }
        RepSpec::Su2Pair(a, b) => {
            let (ql, qr) = (quad(*a)?, quad(*b)?);
            let phi = analyze_pair(state, Su2, (*a, *b), ql.grid(), qr.grid(), tol, r)?;
            let spec = abelian_restriction(&phi)?;
            r.deviation("abelian_sum", (spec.sum() - 1.0).abs(), tol.normalization);
            r.deviation("abelian_off_lattice", spec.off_lattice_max(), COEFFICIENT_TOL);
            r.check("abelian_nonnegative", spec.min() >= -COEFFICIENT_TOL);
            let entries: Vec<SpectrumEntry> = spec
                .entries()
                .filter(|(_, _, v)| v.abs() > COEFFICIENT_TOL)
                .map(|(k, l, value)| SpectrumEntry { k, l, value })
                .collect();
            r.set_data("abelian_spectrum", entries);
            Ok(Some(product_samples_csv(&phi, &ql, &qr)))
        }
        RepSpec::Finite { group, label } => {
            let h = finite_group(group)?;
            let phi = forward_transform(state.rho.matrix(), &h, *label)?;
            analyze_purity(state, &phi, tol, r)?;
            let big = phi.phi_matrix()?;
            let d = h.irrep_dim(label)?;
            r.set_data("phi_matrix_purity_deviation", big.purity_deviation(d));
            r.set_data("values", pairs_of(&phi.values()));
            Ok(None)
        }
        RepSpec::FinitePair { group, labels } => {
            let h = finite_group(group)?;
            let grid = h.group().haar_grid();
            analyze_pair(state, h, *labels, &grid, &grid, tol, r)?;
            Ok(None)
        }
    }
}

/// Actions of the `finite` subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FiniteAction {
    PhiMatrix,
    Blocks,
    PptEmbed,
}

/// Inputs of the `finite` subcommand after loading.
pub struct FiniteInputs {
    pub harmonics: FiniteHarmonics,
    pub values: Option<Vec<linalg::C64>>,
    pub state: Option<StateInput>,
    pub labels: Option<Vec<usize>>,
    pub decomposition: Option<SeparableDecomposition>,
}

fn label_for_dim(h: &FiniteHarmonics, d: usize) -> CliResult<usize> {
    h.irrep_dims().iter().position(|&k| k == d).ok_or_else(|| {
        ncchar::Error::DimensionMismatch {
            expected: h.irrep_dims().into_iter().max().unwrap_or(0),
            found: d,
        }
        .into()
    })
}

/// Values from `--values`, or from a state on a single irrep.
fn finite_values(inp: &FiniteInputs) -> CliResult<Vec<linalg::C64>> {
    if let Some(v) = &inp.values {
        return Ok(v.clone());
    }
    let state = inp
        .state
        .as_ref()
        .ok_or_else(|| CliError::Usage("give --values, --values-file or a state".into()))?;
    let label = match inp.labels.as_deref() {
        Some([k]) => *k,
        Some(_) => return Err(CliError::Usage("phi-matrix and blocks need a single --irrep label".into())),
        None => label_for_dim(&inp.harmonics, state.rho.dim())?,
    };
    Ok(forward_transform(state.rho.matrix(), &inp.harmonics, label)?.values())
}

pub fn finite(inp: &FiniteInputs, actions: &[FiniteAction], tol: &ReportTolerances, r: &mut RunReport) -> CliResult<()> {
    let h = &inp.harmonics;
    let group = h.group();
    r.flag("group", format!("{} (order {})", h.name(), group.order()));
    for action in actions {
        match action {
            FiniteAction::PhiMatrix => {
                let values = finite_values(inp)?;
                let big = build_phi_matrix(&values, group)?;
                let v = PsdVerdict::with_tolerance(big.matrix(), tol.psd_scale * group.order() as f64);
                r.verdict("phi_matrix", v);
                r.set_data("phi_matrix", to_pairs(big.matrix()));
                if h.is_complete() {
                    if let Some(b) = block_verdict(&block_decompose(&values, h)?, tol.psd_scale) {
                        if !(b.marginal || v.marginal) {
                            r.check("phi_matrix_matches_blocks", b.is_psd == v.is_psd);
                        }
                    }
                }
            }
            FiniteAction::Blocks => {
                let values = finite_values(inp)?;
                let phi = block_decompose(&values, h)?;
                let rebuilt = phi.values();
                let dev = rebuilt.iter().zip(&values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
                r.deviation("block_reconstruction", dev, tol.identity);
                #[derive(Serialize)]
                struct Block {
                    label: usize,
                    dim: usize,
                    trace: [f64; 2],
                    verdict: PsdVerdict,
                    matrix: Vec<Vec<[f64; 2]>>,
                }
                let blocks: Vec<Block> = phi
                    .blocks()
                    .iter()
                    .map(|(k, b)| {
                        let t = linalg::trace(b);
                        Block {
                            label: *k,
                            dim: b.nrows(),
                            trace: [t.re, t.im],
                            verdict: PsdVerdict::with_tolerance(b, tol.psd_scale * b.nrows() as f64),
                            matrix: to_pairs(b),
                        }
                    })
                    .collect();
                let trace_sum: f64 = blocks.iter().map(|b| b.trace[0]).sum();
                r.set_data("block_trace_sum", trace_sum);
                r.set_data("blocks", blocks);
                if let Some(v) = block_verdict(&phi, tol.psd_scale) {
                    r.verdict("blocks", v);
                }
            }
            FiniteAction::PptEmbed => ppt_embed(inp, tol, r)?,
        }
    }
    Ok(())
}

fn ppt_embed(inp: &FiniteInputs, tol: &ReportTolerances, r: &mut RunReport) -> CliResult<()> {
    let h = &inp.harmonics;
    let rho = match (&inp.state, &inp.decomposition) {
        (Some(s), _) => s.rho.matrix().clone(),
        (None, Some(dec)) => dec.density_matrix(),
        (None, None) => return Err(CliError::Usage("ppt-embed needs a state or --decomposition".into())),
    };
    let dims = match (&inp.decomposition, inp.state.as_ref().and_then(|s| s.dims)) {
        (Some(dec), _) => dec.dims(),
        (None, Some(d)) => d,
        (None, None) => match inp.labels.as_deref() {
            Some([a, b]) => (h.irrep_dim(a)?, h.irrep_dim(b)?),
            _ => return Err(CliError::Usage("ppt-embed needs --irrep AxB, --dims or a decomposition".into())),
        },
    };
    let labels = match inp.labels.as_deref() {
        Some([a, b]) => (*a, *b),
        Some(_) => return Err(CliError::Usage("ppt-embed needs a pair label --irrep AxB".into())),
        None => (label_for_dim(h, dims.0)?, label_for_dim(h, dims.1)?),
    };
    if (h.irrep_dim(&labels.0)?, h.irrep_dim(&labels.1)?) != dims {
        return Err(ncchar::Error::DimensionMismatch {
            expected: h.irrep_dim(&labels.0)? * h.irrep_dim(&labels.1)?,
            found: dims.0 * dims.1,
        }
        .into());
    }
    let n2 = (h.group().order() * h.group().order()) as f64;
    let phi = forward_transform(&rho, &Product(h.clone()), labels)?;
    let embed = phi_partial_transpose_test(&phi);
    let tilde_v = PsdVerdict::from_min_eigenvalue(embed.verdict.min_eigenvalue, tol.psd_scale * n2);
    r.verdict("phi_tilde", tilde_v);
    r.check("index_identity_exact", embed.index_identity_exact);

    let direct = PsdVerdict::with_tolerance(&partial_transpose_left(&rho, dims.0, dims.1), tol.psd_scale * (dims.0 * dims.1) as f64);
    r.verdict("direct_partial_transpose", direct);
    let agree = tilde_v.is_psd == direct.is_psd || tilde_v.marginal || direct.marginal;
    r.check("agreement", agree);
    r.flag("agreement", if agree { "AGREE" } else { "DISAGREE" });

    if let Some(dec) = &inp.decomposition {
        if let Some(s) = &inp.state {
            r.deviation("decomposition_vs_state", max_abs_diff(&dec.density_matrix(), s.rho.matrix()), tol.identity);
        }
        let check = phi_matrix_embedding(dec, h, labels)?;
        r.deviation("embedding", check.max_deviation, check.tolerance);
        r.check("factors_psd", check.factors_psd);
        r.check("separable_phi_tilde_psd", tilde_v.is_psd);
        r.set_data("decomposition_terms", dec.len());
    }
    r.set_data("labels", [labels.0, labels.1]);
    Ok(())
}
