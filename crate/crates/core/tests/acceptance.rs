//! Acceptance suite. Each criterion prints one `PASS`/`FAIL` line; any failure
//! makes the binary exit nonzero.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use ncchar::charfunc::{
    block_decompose, build_phi_matrix, conjugation_symmetry_residual, convolution_integral, forward_transform,
    inverse_transform, purity_deviation_sampled, BiFunction, DensityMatrix, PsdVerdict,
};
use ncchar::groups::{peter_weyl_residual, HaarQuadrature, SU2Element};
use ncchar::linalg::{
    self, kron, max_abs_diff, partial_trace_left, partial_trace_right, projector, random_unit_vector, random_unitary,
    trace_of_product, CVec, Mat, C64,
};
use ncchar::representations::{builtin_group, spin_matrix_monomial, FiniteHarmonics, Product, Spin, Su2};
use ncchar::separability::{
    abelian_restriction, group_ppt_test, lhv_probability, phi_matrix_embedding, phi_partial_transpose_test,
    pure_product_test, tilde, BipartiteState, SeparableDecomposition, SeparableTerm,
};
use ncchar::states::{self, PrefactorReading, HORODECKI_READING};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ROUND_TRIP_TOL: f64 = 1e-10;
const RECONSTRUCTION_TOL: f64 = 1e-9;
const PPT_EIG_FLOOR: f64 = -1e-9;
const CLOSED_FORM_TOL: f64 = 1e-10;
const INTEGRAL_TOL: f64 = 1e-9;
const PURITY_GAP: f64 = 0.01;
const COEFF_FLOOR: f64 = -1e-12;
const SUM_TOL: f64 = 1e-10;
const EMBEDDING_TOL: f64 = 1e-10;
const PETER_WEYL_TOL: f64 = 1e-11;
const SYMMETRY_TOL: f64 = 1e-10;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn spin(twice: u32) -> Spin {
    Spin::from_twice(twice)
}

fn two_dim_irrep(h: &FiniteHarmonics) -> usize {
    h.irrep_dims().iter().position(|&d| d == 2).expect("group has a 2-dim irrep")
}

fn random_nodes(rng: &mut ChaCha8Rng, count: usize) -> Vec<SU2Element> {
    (0..count).map(|_| SU2Element::random(rng)).collect()
}

fn random_rho(d: usize, seed: u64) -> Mat {
    let rank = 1 + (seed as usize % d);
    states::random_density(d, rank, seed).unwrap().into_matrix()
}

fn local_unitary(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Mat {
    kron(&random_unitary(rng, m), &random_unitary(rng, n))
}

fn criterion_1() -> Outcome {
    let mut worst: f64 = 0.0;
    for twice in 1..=4u32 {
        let j = spin(twice);
        let quad = HaarQuadrature::new(2 * twice).map_err(|e| e.to_string())?;
        for s in 0..100 {
            let rho = states::random_density(j.dim(), j.dim(), 1000 * twice as u64 + s).unwrap();
            let phi = forward_transform(rho.matrix(), &Su2, j).unwrap();
            let back = inverse_transform(&phi, &j, quad.grid()).unwrap();
            worst = worst.max(max_abs_diff(&back, rho.matrix()));
        }
    }
    for name in ["S3", "D4"] {
        let h = builtin_group(name).unwrap();
        let k = two_dim_irrep(&h);
        let grid = h.group().haar_grid();
        for s in 0..100 {
            let rho = states::random_density(2, 2, 5000 + s).unwrap();
            let phi = forward_transform(rho.matrix(), &h, k).unwrap();
            let back = inverse_transform(&phi, &k, &grid).unwrap();
            worst = worst.max(max_abs_diff(&back, rho.matrix()));
        }
    }
    ensure(worst <= ROUND_TRIP_TOL, || format!("max deviation {worst:.3e}"))?;
    Ok(format!("max deviation {worst:.2e} over 600 states"))
}

fn criterion_2() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut tallies = Vec::new();
    for (tl, tr) in [(1u32, 1u32), (1, 2), (2, 2)] {
        let (jl, jr) = (spin(tl), spin(tr));
        let left = HaarQuadrature::new(2 * tl).unwrap();
        let right = HaarQuadrature::new(2 * tr).unwrap();
        let (m, n) = (jl.dim(), jr.dim());
        let (mut ppt, mut npt, mut marginal) = (0, 0, 0);
        for s in 0..200 {
            let seed = 20_000 + 1000 * (m * n) as u64 + s;
            let mut rho = states::random_density(m * n, 1 + (s as usize % (m * n)), seed).unwrap().into_matrix();
            if s % 2 == 1 {
                // Depolarized half of the sample, so both verdicts occur.
                let q: f64 = ChaCha8Rng::seed_from_u64(seed).random_range(0.0..1.0);
                rho = rho * C64::from(q) + Mat::identity(m * n, m * n) * C64::from((1.0 - q) / (m * n) as f64);
            }
            let rho = DensityMatrix::new(rho).unwrap();
            let state = BipartiteState::new(rho, Su2, jl, jr).unwrap();
            let report = group_ppt_test(&state, left.grid(), right.grid()).unwrap();
            worst = worst.max(report.reconstruction_deviation);
            if report.verdict.marginal || report.direct.marginal {
                marginal += 1;
                continue;
            }
            ensure(report.verdict.is_psd == report.direct.is_psd, || {
                format!("{m}x{n} seed {seed}: verdicts disagree")
            })?;
            if report.direct.is_psd {
                ppt += 1
            } else {
                npt += 1
            }
        }
        tallies.push(format!("{m}x{n}: {ppt} PPT/{npt} NPT/{marginal} marginal"));
    }
    ensure(worst <= RECONSTRUCTION_TOL, || format!("reconstruction deviation {worst:.3e}"))?;
    Ok(format!("reconstruction {worst:.2e}; {}", tallies.join(", ")))
}

fn criterion_3() -> Outcome {
    let one = spin(2);
    let quad = HaarQuadrature::new(4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut min_eig = f64::INFINITY;
    let mut closed_worst: f64 = 0.0;
    let mut other_reading_best = f64::INFINITY;
    let other = match HORODECKI_READING {
        PrefactorReading::Literal => PrefactorReading::ScopedAll,
        PrefactorReading::ScopedAll => PrefactorReading::Literal,
    };
    for step in 1..=9 {
        let a = step as f64 / 10.0;
        let rho = states::horodecki_3x3(a).unwrap();
        let pt = linalg::partial_transpose_left(rho.matrix(), 3, 3);
        let e = linalg::min_hermitian_eigenvalue(&pt);
        min_eig = min_eig.min(e);
        let state = BipartiteState::new(rho.clone(), Su2, one, one).unwrap();
        let report = group_ppt_test(&state, quad.grid(), quad.grid()).unwrap();
        ensure(report.verdict.min_eigenvalue >= PPT_EIG_FLOOR, || {
            format!("a={a}: reconstructed min eig {:.3e}", report.verdict.min_eigenvalue)
        })?;
        let mut other_worst: f64 = 0.0;
        for _ in 0..1000 {
            let (g1, g2) = (SU2Element::random(&mut rng), SU2Element::random(&mut rng));
            let tau = kron(&spin_matrix_monomial(one, &g1), &spin_matrix_monomial(one, &g2));
            let oracle = trace_of_product(rho.matrix(), &tau);
            let closed = states::horodecki_charfunc(a, &g1, &g2).unwrap();
            closed_worst = closed_worst.max((closed - oracle).norm());
            let alt = states::horodecki_charfunc_with(a, &g1, &g2, other).unwrap();
            other_worst = other_worst.max((alt - oracle).norm());
        }
        other_reading_best = other_reading_best.min(other_worst);
    }
    ensure(min_eig >= PPT_EIG_FLOOR, || format!("min eig of partial transpose {min_eig:.3e}"))?;
    ensure(closed_worst <= CLOSED_FORM_TOL, || format!("closed form deviation {closed_worst:.3e}"))?;
    ensure(other_reading_best > CLOSED_FORM_TOL, || "both prefactor readings match".into())?;

    let rho0 = states::horodecki_3x3(0.0).unwrap();
    let (vals, vecs) = {
        let eig = rho0.matrix().clone().symmetric_eigen();
        (eig.eigenvalues, eig.eigenvectors)
    };
    let top = vals.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap().0;
    let psi: CVec = vecs.column(top).into_owned();
    let pp = pure_product_test(&psi, &Su2, (&one, &one), quad.grid(), quad.grid()).unwrap();
    ensure((pp.i1 - 1.0).abs() <= 1e-9 && (pp.i2 - 1.0).abs() <= 1e-9, || {
        format!("a=0 integrals ({}, {})", pp.i1, pp.i2)
    })?;
    Ok(format!(
        "min eig {min_eig:.2e}; {HORODECKI_READING} closed form {closed_worst:.2e} ({other} off by ≥ {other_reading_best:.2e}); a=0 gives ({:.12}, {:.12})",
        pp.i1, pp.i2
    ))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut conv_worst: f64 = 0.0;
    let mut pure_worst: f64 = 0.0;
    let mut mixed_least = f64::INFINITY;
    let mut bound_gap = f64::INFINITY;
    for twice in [1u32, 2] {
        let j = spin(twice);
        let d = j.dim();
        let quad = HaarQuadrature::new(2 * twice).unwrap();
        let mut nodes = random_nodes(&mut rng, 3);
        nodes.push(SU2Element::identity());
        for _ in 0..50 {
            let a = linalg::ginibre(&mut rng, d, d);
            let b = linalg::ginibre(&mut rng, d, d);
            let fa = forward_transform(&a, &Su2, j).unwrap();
            let fb = forward_transform(&b, &Su2, j).unwrap();
            let fab = forward_transform(&(&a * &b), &Su2, j).unwrap();
            for g in &nodes {
                let conv = convolution_integral(&fa, &fb, g, quad.grid()).unwrap();
                conv_worst = conv_worst.max((conv * d as f64 - fab.evaluate(g)).norm());
            }
        }
        for _ in 0..20 {
            let psi = random_unit_vector(&mut rng, d);
            let phi = forward_transform(&projector(&psi), &Su2, j).unwrap();
            pure_worst = pure_worst.max(purity_deviation_sampled(&phi, &nodes, quad.grid()).unwrap());
        }
        // Mixtures with every weight in [0.1, 0.9], so 1 − tr ρ² ≥ 0.18.
        for _ in 0..20 {
            let u = random_unitary(&mut rng, d);
            let p: f64 = rng.random_range(0.1..0.9);
            let rho = projector(&u.column(0).into_owned()) * C64::from(p)
                + projector(&u.column(1).into_owned()) * C64::from(1.0 - p);
            let phi = forward_transform(&rho, &Su2, j).unwrap();
            mixed_least = mixed_least.min(purity_deviation_sampled(&phi, &nodes, quad.grid()).unwrap());
        }
        // Arbitrary mixtures violate by at least 1 − tr ρ², attained at the identity.
        for seed in 0..20u64 {
            let rank = 2 + (seed as usize % (d - 1));
            let rho = states::random_density(d, rank, 40_000 + seed).unwrap();
            let phi = forward_transform(rho.matrix(), &Su2, j).unwrap();
            let dev = purity_deviation_sampled(&phi, &nodes, quad.grid()).unwrap();
            bound_gap = bound_gap.min(dev - (1.0 - rho.purity()));
        }
    }
    let s3 = builtin_group("S3").unwrap();
    let k = two_dim_irrep(&s3);
    let mut finite_worst: f64 = 0.0;
    for _ in 0..50 {
        let psi = random_unit_vector(&mut rng, 2);
        let phi = forward_transform(&projector(&psi), &s3, k).unwrap();
        let big = build_phi_matrix(&phi.values(), s3.group()).unwrap();
        finite_worst = finite_worst.max(big.purity_deviation(2));
    }
    ensure(conv_worst <= INTEGRAL_TOL, || format!("convolution deviation {conv_worst:.3e}"))?;
    ensure(pure_worst <= INTEGRAL_TOL, || format!("pure-state purity deviation {pure_worst:.3e}"))?;
    ensure(mixed_least >= PURITY_GAP, || format!("mixed-state purity deviation only {mixed_least:.3e}"))?;
    ensure(bound_gap >= -INTEGRAL_TOL, || format!("violation below 1 − tr ρ² by {:.3e}", -bound_gap))?;
    ensure(finite_worst <= INTEGRAL_TOL, || format!("finite purity deviation {finite_worst:.3e}"))?;
    Ok(format!(
        "convolution {conv_worst:.2e}; pure {pure_worst:.2e}; mixtures ≥ {mixed_least:.3}; 1 − tr ρ² bound slack {bound_gap:.1e}; S3 {finite_worst:.2e}"
    ))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let pairs = [(1u32, 1u32), (1, 2), (2, 2)];
    let quads: Vec<HaarQuadrature> = (1..=2).map(|t| HaarQuadrature::new(2 * t).unwrap()).collect();
    let grid = |t: u32| quads[t as usize - 1].grid();
    let mut product_worst: f64 = 0.0;
    for &(tl, tr) in &pairs {
        for _ in 0..10 {
            let (jl, jr) = (spin(tl), spin(tr));
            let psi = random_unit_vector(&mut rng, jl.dim()).kronecker(&random_unit_vector(&mut rng, jr.dim()));
            let r = pure_product_test(&psi, &Su2, (&jl, &jr), grid(tl), grid(tr)).unwrap();
            product_worst = product_worst.max((r.i1 - 1.0).abs()).max((r.i2 - 1.0).abs());
        }
    }
    let h = spin(1);
    let mut bell_worst: f64 = 0.0;
    for psi in [states::singlet_vector(), states::bell_vector()] {
        let r = pure_product_test(&psi, &Su2, (&h, &h), grid(1), grid(1)).unwrap();
        bell_worst = bell_worst.max((r.i1 - 0.5).abs()).max((r.i2 - 0.5).abs());
    }
    let mut random_worst: f64 = 0.0;
    for i in 0..100 {
        let (tl, tr) = pairs[i % 3];
        let (jl, jr) = (spin(tl), spin(tr));
        let psi = random_unit_vector(&mut rng, jl.dim() * jr.dim());
        let r = pure_product_test(&psi, &Su2, (&jl, &jr), grid(tl), grid(tr)).unwrap();
        random_worst = random_worst.max(r.purity_deviation);
    }
    ensure(product_worst <= 1e-9, || format!("product deviation {product_worst:.3e}"))?;
    ensure(bell_worst <= 1e-9, || format!("Bell deviation {bell_worst:.3e}"))?;
    ensure(random_worst <= 1e-9, || format!("reduced purity deviation {random_worst:.3e}"))?;
    Ok(format!("products {product_worst:.2e}; Bell {bell_worst:.2e}; reduced purity {random_worst:.2e}"))
}

fn criterion_6() -> Outcome {
    let mut min_coeff = f64::INFINITY;
    let mut sum_worst: f64 = 0.0;
    let mut off_worst: f64 = 0.0;
    for twice in [1u32, 2] {
        let j = spin(twice);
        let d = j.dim() * j.dim();
        for s in 0..100 {
            let rho = random_rho(d, 60_000 + 100 * twice as u64 + s);
            let phi = forward_transform(&rho, &Product(Su2), (j, j)).unwrap();
            let spec = abelian_restriction(&phi).map_err(|e| format!("spin {j}, seed {s}: {e}"))?;
            min_coeff = min_coeff.min(spec.min());
            sum_worst = sum_worst.max((spec.sum() - 1.0).abs());
            off_worst = off_worst.max(spec.off_lattice_max());
        }
    }
    let h = spin(1);
    let singlet = forward_transform(states::singlet().matrix(), &Product(Su2), (h, h)).unwrap();
    let spec = abelian_restriction(&singlet).unwrap();
    let singlet_worst = spec
        .entries()
        .map(|(k, l, v)| {
            let expected = if (k, l) == (1, -1) || (k, l) == (-1, 1) { 0.5 } else { 0.0 };
            (v - expected).abs()
        })
        .fold(0.0, f64::max);
    ensure(min_coeff >= COEFF_FLOOR, || format!("min coefficient {min_coeff:.3e}"))?;
    ensure(sum_worst <= SUM_TOL, || format!("sum deviation {sum_worst:.3e}"))?;
    ensure(off_worst <= 1e-12, || format!("off-lattice coefficient {off_worst:.3e}"))?;
    ensure(singlet_worst <= 1e-12, || format!("singlet spectrum deviation {singlet_worst:.3e}"))?;
    Ok(format!(
        "min {min_coeff:.2e}; sum {sum_worst:.2e}; off-lattice {off_worst:.2e}; singlet {singlet_worst:.2e}"
    ))
}

/// Random value vector with `φ(e) = 1` and `φ(g⁻¹) = conj φ(g)`.
fn random_values(rng: &mut ChaCha8Rng, h: &FiniteHarmonics) -> Vec<C64> {
    let g = h.group();
    let n = g.order();
    let scale = rng.random_range(0.0..2.0) / (n as f64).sqrt();
    let mut v = vec![C64::new(0.0, 0.0); n];
    v[g.identity()] = C64::new(1.0, 0.0);
    for a in g.elements().filter(|&a| a != g.identity()) {
        let inv = g.inverse(a);
        if inv < a {
            continue;
        }
        let z = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)) * scale;
        if inv == a {
            v[a] = C64::new(z.re, 0.0);
        } else {
            v[a] = z;
            v[inv] = z.conj();
        }
    }
    v
}

fn random_decomposition(rng: &mut ChaCha8Rng, m: usize, n: usize, terms: usize) -> SeparableDecomposition {
    let raw: Vec<f64> = (0..terms).map(|_| rng.random_range(0.1..1.0)).collect();
    let total: f64 = raw.iter().sum();
    SeparableDecomposition::new(
        raw.iter()
            .map(|w| SeparableTerm {
                weight: w / total,
                left: random_unit_vector(rng, m),
                right: random_unit_vector(rng, n),
            })
            .collect(),
    )
    .unwrap()
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut tallies = Vec::new();
    for name in ["Z2", "Z3", "Z4", "Z5", "S3", "D4"] {
        let h = builtin_group(name).unwrap();
        let (mut psd, mut not, mut marginal) = (0, 0, 0);
        for i in 0..200 {
            let values = random_values(&mut rng, &h);
            let big = build_phi_matrix(&values, h.group()).unwrap().verdict();
            let blocks = block_decompose(&values, &h).unwrap().is_positive_definite();
            if big.marginal || blocks.marginal {
                marginal += 1;
                continue;
            }
            ensure(big.is_psd == blocks.is_psd, || format!("{name} vector {i}: Φ and blocks disagree"))?;
            if big.is_psd {
                psd += 1
            } else {
                not += 1
            }
        }
        tallies.push(format!("{name} {psd}/{not}/{marginal}"));
    }

    let mut embed_worst: f64 = 0.0;
    let mut examples = 0;
    for name in ["Z3", "S3", "D4"] {
        let h = builtin_group(name).unwrap();
        let dims = h.irrep_dims();
        let top = dims.iter().enumerate().max_by_key(|(_, d)| **d).unwrap().0;
        let labels = [(top, top), (0, top), (top.min(1), top)];
        for &(a, b) in &labels {
            for t in 1..=4 {
                let dec = random_decomposition(&mut rng, dims[a], dims[b], t);
                let check = phi_matrix_embedding(&dec, &h, (a, b)).unwrap();
                ensure(check.factors_psd, || format!("{name}: factor Φ-matrix not PSD"))?;
                embed_worst = embed_worst.max(check.max_deviation);
                let phi = forward_transform(&dec.density_matrix(), &Product(h.clone()), (a, b)).unwrap();
                let report = phi_partial_transpose_test(&phi);
                ensure(report.index_identity_exact, || format!("{name}: index identity not exact"))?;
                ensure(report.verdict.is_psd, || {
                    format!("{name}: separable example has Φ̃ min eig {:.3e}", report.verdict.min_eigenvalue)
                })?;
                examples += 1;
            }
        }
    }
    // Index identity on arbitrary (not necessarily separable) states.
    let s3 = builtin_group("S3").unwrap();
    let k = two_dim_irrep(&s3);
    for s in 0..20 {
        let phi = forward_transform(&random_rho(4, 70_000 + s), &Product(s3.clone()), (k, k)).unwrap();
        ensure(phi_partial_transpose_test(&phi).index_identity_exact, || "index identity not exact".into())?;
    }
    ensure(embed_worst <= EMBEDDING_TOL, || format!("embedding deviation {embed_worst:.3e}"))?;
    Ok(format!(
        "PSD/not/marginal: {}; embedding {embed_worst:.2e} on {examples} separable examples",
        tallies.join(", ")
    ))
}

fn projector_family(rng: &mut ChaCha8Rng, d: usize) -> Vec<Mat> {
    let u = random_unitary(rng, d);
    let cols: Vec<CVec> = (0..d).map(|i| u.column(i).into_owned()).collect();
    if d >= 3 && rng.random_bool(0.5) {
        let mut out = vec![projector(&cols[0]) + projector(&cols[1])];
        out.extend(cols[2..].iter().map(projector));
        out
    } else {
        cols.iter().map(projector).collect()
    }
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let pairs = [(1u32, 1u32), (1, 2), (2, 2)];
    let mut direct_worst: f64 = 0.0;
    let mut marginal_worst: f64 = 0.0;
    let mut total_worst: f64 = 0.0;
    let mut imag_worst: f64 = 0.0;
    for i in 0..50u64 {
        let (tl, tr) = pairs[i as usize % 3];
        let (jl, jr) = (spin(tl), spin(tr));
        let (m, n) = (jl.dim(), jr.dim());
        let rho = random_rho(m * n, 80_000 + i);
        let phi = forward_transform(&rho, &Product(Su2), (jl, jr)).unwrap();
        let p = projector_family(&mut rng, m);
        let q = projector_family(&mut rng, n);
        let left = HaarQuadrature::new(2 * tl).unwrap();
        let right = HaarQuadrature::new(2 * tr).unwrap();
        let table = lhv_probability(&phi, (&jl, &jr), &p, &q, left.grid(), right.grid()).unwrap();
        direct_worst = direct_worst.max(table.max_deviation_from(&rho, &p, &q));
        // Marginals against the reduced states directly.
        let rho_a = partial_trace_right(&rho, m, n);
        let rho_b = partial_trace_left(&rho, m, n);
        for (mu, pm) in p.iter().enumerate() {
            let row: f64 = table.probabilities[mu].iter().sum();
            marginal_worst = marginal_worst.max((row - trace_of_product(pm, &rho_a).re).abs());
        }
        for (nu, qn) in q.iter().enumerate() {
            let col: f64 = table.probabilities.iter().map(|r| r[nu]).sum();
            marginal_worst = marginal_worst.max((col - trace_of_product(qn, &rho_b).re).abs());
        }
        marginal_worst = marginal_worst.max(table.marginal_deviation);
        total_worst = total_worst.max((table.total - 1.0).abs());
        imag_worst = imag_worst.max(table.max_imaginary);
    }
    ensure(direct_worst <= 1e-9, || format!("direct trace deviation {direct_worst:.3e}"))?;
    ensure(marginal_worst <= 1e-9, || format!("marginal deviation {marginal_worst:.3e}"))?;
    ensure(total_worst <= 1e-9, || format!("total deviation {total_worst:.3e}"))?;
    Ok(format!(
        "direct {direct_worst:.2e}; marginals {marginal_worst:.2e}; total {total_worst:.2e}; imag {imag_worst:.2e}"
    ))
}

fn verdict_signature(v: &PsdVerdict) -> Option<bool> {
    (!v.marginal).then_some(v.is_psd)
}

fn criterion_9() -> Outcome {
    let quad = HaarQuadrature::new(10).map_err(|e| e.to_string())?;
    let pw = peter_weyl_residual(quad.grid(), 10);
    ensure(pw <= PETER_WEYL_TOL, || format!("Peter–Weyl residual {pw:.3e}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let nodes = random_nodes(&mut rng, 1000);
    let mut conj_worst: f64 = 0.0;
    for twice in 1..=4u32 {
        let j = spin(twice);
        for s in 0..25 {
            let rho = random_rho(j.dim(), 90_000 + 100 * twice as u64 + s);
            let phi = forward_transform(&rho, &Su2, j).unwrap();
            conj_worst = conj_worst.max(conjugation_symmetry_residual(&phi, &nodes));
        }
    }
    for name in ["Z5", "S3", "D4"] {
        let h = builtin_group(name).unwrap();
        let elements: Vec<usize> = h.group().elements().collect();
        for (k, d) in h.irrep_dims().into_iter().enumerate() {
            let rho = random_rho(d, 95_000 + k as u64);
            let phi = forward_transform(&rho, &h, k).unwrap();
            conj_worst = conj_worst.max(conjugation_symmetry_residual(&phi, &elements));
        }
    }
    ensure(conj_worst <= SYMMETRY_TOL, || format!("conjugation symmetry residual {conj_worst:.3e}"))?;

    let mut tilde_worst: f64 = 0.0;
    let sample = random_nodes(&mut rng, 20);
    for s in 0..100 {
        let (tl, tr) = [(1u32, 1u32), (1, 2), (2, 2)][s % 3];
        let (jl, jr) = (spin(tl), spin(tr));
        let rho = random_rho(jl.dim() * jr.dim(), 96_000 + s as u64);
        let phi = forward_transform(&rho, &Product(Su2), (jl, jr)).unwrap();
        let twice = tilde(tilde(phi.clone()));
        tilde_worst = tilde_worst.max(max_abs_diff(&twice.grid_values(&sample, &sample), &phi.grid_values(&sample, &sample)));
    }
    ensure(tilde_worst == 0.0 || tilde_worst <= 1e-14, || format!("tilde involution residual {tilde_worst:.3e}"))?;

    let mut changes = 0;
    let mut checked = 0;
    for s in 0..60u64 {
        let (tl, tr) = [(1u32, 1u32), (1, 2), (2, 2)][s as usize % 3];
        let (jl, jr) = (spin(tl), spin(tr));
        let (m, n) = (jl.dim(), jr.dim());
        let left = HaarQuadrature::new(2 * tl).unwrap();
        let right = HaarQuadrature::new(2 * tr).unwrap();
        let u = local_unitary(&mut rng, m, n);

        let rho = random_rho(m * n, 97_000 + s);
        let rotated = &u * &rho * u.adjoint();
        let ppt = |r: &Mat| {
            let state = BipartiteState::new(DensityMatrix::new(r.clone()).unwrap(), Su2, jl, jr).unwrap();
            group_ppt_test(&state, left.grid(), right.grid()).unwrap().verdict
        };
        let (before, after) = (verdict_signature(&ppt(&rho)), verdict_signature(&ppt(&rotated)));
        if let (Some(a), Some(b)) = (before, after) {
            checked += 1;
            changes += usize::from(a != b);
        }
        let abelian_ok = |r: &Mat| abelian_restriction(&forward_transform(r, &Product(Su2), (jl, jr)).unwrap()).is_ok();
        ensure(abelian_ok(&rho) && abelian_ok(&rotated), || format!("seed {s}: abelian positivity lost"))?;

        let psi = if s % 2 == 0 {
            random_unit_vector(&mut rng, m).kronecker(&random_unit_vector(&mut rng, n))
        } else {
            random_unit_vector(&mut rng, m * n)
        };
        let rotated_psi = &u * &psi;
        let product = |v: &CVec| {
            pure_product_test(v, &Su2, (&jl, &jr), left.grid(), right.grid())
                .unwrap()
                .is_product
        };
        ensure(product(&psi) == product(&rotated_psi), || format!("seed {s}: product verdict changed"))?;
        ensure(product(&psi) == (s % 2 == 0), || format!("seed {s}: product verdict wrong"))?;
    }
    ensure(changes == 0, || format!("{changes} PPT verdicts changed under local unitaries"))?;
    Ok(format!(
        "Peter–Weyl {pw:.2e} (degree 10); conjugation {conj_worst:.2e}; tilde {tilde_worst:.1e}; LU invariance on {checked} PPT cases"
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("round-trip fidelity", criterion_1),
        ("partial transpose from the tilde function", criterion_2),
        ("Horodecki 3x3 anchors", criterion_3),
        ("convolution and purity", criterion_4),
        ("pure-product integrals", criterion_5),
        ("abelian restriction spectrum", criterion_6),
        ("finite-group Φ-matrix machinery", criterion_7),
        ("hidden-variable probabilities", criterion_8),
        ("quadrature and symmetry self-checks", criterion_9),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} PASS  {name}: {detail} [{secs:.2}s]", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {} FAIL  {name}: {detail} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

