//! One function per subcommand. Each returns the report and, separately, any
//! violated numerical invariant so that the report is still written.

use rayon::prelude::*;

use carlab_core::fsigma::{
    density_report, distance_bound_check, witness_search, RandomUnitaryNet, TestElementNet, UnitaryGrid, UnitaryNet,
};
use carlab_core::linalg::{exp_i_hermitian, operator_norm, ComplexMatrix, UnitVector};
use carlab_core::orbit::{adjudicate_product, min_distance_closed_form, search, Constraint, OracleSettings};
use carlab_core::random::{haar_unitary, hermitian_contraction, rng_from_seed, splitmix64, trial_seed, unit_vector};
use carlab_core::reduction::{
    build_intertwiner_chain_with, cauchy_gap_table, intertwining_check, phi_truncate, separation_experiment,
    ChainOptions, GapMethod,
};
use carlab_core::sequences::{classify_pair, partial_products, weierstrass_lower_bounds, Classification, WindowPolicy};
use carlab_core::states::{state_distance, sup_gap, VectorState};
use carlab_core::car::TruncationLevel;
use carlab_core::Complex64;

use crate::cli::{
    CauchyArgs, Command, ConstraintArg, FsigmaArgs, Lemma1Args, Lemma2Args, NetKind, ProductArgs, ProductFamily,
    ReduceArgs, SeparationArgs,
};
use crate::error::Violations;
use crate::report::{Fields, Format, Report};
use crate::seqfile::resolve;
use crate::{LabError, LabResult};

pub type Outcome = (Report, Option<LabError>);

pub fn dispatch(command: &Command, format: Format) -> LabResult<Outcome> {
    let (mut report, violations) = match command {
        Command::Lemma1Verify(a) => lemma1_verify(a)?,
        Command::Lemma2Adjudicate(a) => lemma2_adjudicate(a)?,
        Command::Reduce(a) => reduce(a)?,
        Command::CauchyGaps(a) => cauchy_gaps(a)?,
        Command::Separation(a) => separation(a)?,
        Command::FsigmaSearch(a) => fsigma_search(a)?,
        Command::ProductTest(a) => product_test(a)?,
    };
    report.config.push(("format", format.extension().into()));
    Ok((report, violations.into_error()))
}

fn positive(name: &str, v: f64) -> LabResult<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(LabError::Config(format!("{name} must be positive, got {v}")))
    }
}

fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

pub fn lemma1_verify(a: &Lemma1Args) -> LabResult<(Report, Violations)> {
    positive("tolerance", a.tolerance)?;
    let constraint = match a.constraint {
        ConstraintArg::Exact => Constraint::Exact,
        ConstraintArg::StateEquality => Constraint::StateEquality,
    };
    let rows: Vec<_> = (0..a.trials)
        .into_par_iter()
        .map(|i| -> LabResult<_> {
            let seed = trial_seed(a.seed, i as u64);
            let mut rng = rng_from_seed(seed);
            let xi = unit_vector(a.dim, &mut rng)?;
            let eta = unit_vector(a.dim, &mut rng)?;
            let closed = min_distance_closed_form(&xi, &eta)?;
            let oracle = search(&xi, &eta, constraint, &OracleSettings::new(a.budget, splitmix64(seed)))?;
            Ok((i, closed, oracle))
        })
        .collect::<LabResult<_>>()?;

    let mut report = Report::new(
        "lemma1-verify",
        vec![
            ("dim", a.dim.into()),
            ("trials", a.trials.into()),
            ("seed", a.seed.into()),
            ("budget", a.budget.into()),
            ("constraint", format!("{:?}", a.constraint).to_lowercase().into()),
            ("tolerance", a.tolerance.into()),
        ],
    );
    let mut max_err: f64 = 0.0;
    let mut max_err_exact: f64 = 0.0;
    for (i, c, oracle) in &rows {
        let err = (oracle - c.closed_form_distance).abs();
        let err_exact = (oracle - c.exact_constraint_distance).abs();
        max_err = max_err.max(err);
        max_err_exact = max_err_exact.max(err_exact);
        report.rows.push(vec![
            ("trial", (*i).into()),
            ("overlap_re", c.overlap.re.into()),
            ("overlap_im", c.overlap.im.into()),
            ("abs_overlap", c.abs_overlap.into()),
            ("closed_form", c.closed_form_distance.into()),
            ("real_part_form", c.exact_constraint_distance.into()),
            ("oracle", (*oracle).into()),
            ("abs_error", err.into()),
            ("abs_error_real_part_form", err_exact.into()),
        ]);
    }
    report.summary = vec![
        ("max_abs_error", max_err.into()),
        ("max_abs_error_real_part_form", max_err_exact.into()),
        ("within_tolerance", (max_err <= a.tolerance).into()),
    ];
    Ok((report, Violations::default()))
}

pub fn lemma2_adjudicate(a: &Lemma2Args) -> LabResult<(Report, Violations)> {
    positive("tolerance", a.tolerance)?;
    let rows: Vec<_> = (0..a.pairs)
        .into_par_iter()
        .map(|i| -> LabResult<_> {
            let seed = trial_seed(a.seed, i as u64);
            let mut rng = rng_from_seed(seed);
            let xis = [unit_vector(2, &mut rng)?, unit_vector(2, &mut rng)?];
            let etas = [unit_vector(2, &mut rng)?, unit_vector(2, &mut rng)?];
            let o1 = xis[0].overlap(&etas[0])?.norm();
            let o2 = xis[1].overlap(&etas[1])?.norm();
            let adj = adjudicate_product(&xis, &etas, a.budget, splitmix64(seed))?;
            Ok((i, o1, o2, adj))
        })
        .collect::<LabResult<_>>()?;
    let mut report = Report::new(
        "lemma2-adjudicate",
        vec![
            ("pairs", a.pairs.into()),
            ("factors", 2usize.into()),
            ("factor_dim", 2usize.into()),
            ("seed", a.seed.into()),
            ("budget", a.budget.into()),
            ("tolerance", a.tolerance.into()),
        ],
    );
    for (i, o1, o2, adj) in &rows {
        report.rows.push(vec![
            ("trial", (*i).into()),
            ("overlap_1", (*o1).into()),
            ("overlap_2", (*o2).into()),
            ("overlap_product", adj.closed.overlap_product.into()),
            ("constant_one", adj.closed.constant_one.into()),
            ("doubled", adj.closed.doubled.into()),
            ("oracle", adj.oracle.into()),
            ("deviation_constant_one", adj.deviation_constant_one.into()),
            ("deviation_doubled", adj.deviation_doubled.into()),
        ]);
    }
    let max_one = max_of(rows.iter().map(|r| r.3.deviation_constant_one));
    let min_doubled = rows.iter().map(|r| r.3.deviation_doubled).fold(f64::INFINITY, f64::min);
    report.summary = vec![
        ("max_deviation_constant_one", max_one.into()),
        ("min_deviation_doubled", (!rows.is_empty()).then_some(min_doubled).into()),
        ("constant_one_within_tolerance", (max_one <= a.tolerance).into()),
        ("doubled_within_tolerance", (!rows.is_empty() && min_doubled <= a.tolerance).into()),
    ];
    Ok((report, Violations::default()))
}

fn classification_fields(c: &Classification) -> Fields {
    vec![
        ("classification", c.verdict.as_str().into()),
        ("classification_length", c.length.into()),
        ("classification_window", c.window.into()),
        ("l2_sum", c.l2_sum.into()),
        ("l2_tail", c.l2_tail.into()),
        ("l2_trend", format!("{:?}", c.l2_trend).to_lowercase().into()),
        ("sin2_sum", c.sin2_sum.into()),
        ("sin2_tail", c.sin2_tail.into()),
        ("sin2_trend", format!("{:?}", c.sin2_trend).to_lowercase().into()),
        ("product", c.product.into()),
        ("product_trend", format!("{:?}", c.product_trend).to_lowercase().into()),
    ]
}

/// Intertwining test elements for level `n`: seeded Hermitian contractions
/// and matrix units on the first `min(n, 3)` factors.
fn intertwining_tests(n: u32, count: usize, seed: u64) -> LabResult<Vec<ComplexMatrix>> {
    let d = TruncationLevel::new(n.min(3))?.dim();
    let mut rng = rng_from_seed(trial_seed(seed, n as u64));
    let mut out = Vec::with_capacity(count + d * d);
    for _ in 0..count {
        out.push(hermitian_contraction(d, 1.0, &mut rng)?);
    }
    for i in 0..d {
        for j in 0..d {
            out.push(ComplexMatrix::matrix_unit(d, i, j)?);
        }
    }
    Ok(out)
}

/// Highest level at which the reduce experiment builds dense `v_n`.
pub const INTERTWINING_MAX_LEVEL: u32 = 10;

pub fn reduce(a: &ReduceArgs) -> LabResult<(Report, Violations)> {
    TruncationLevel::new(a.levels)?;
    let len = a.length.max(a.levels as usize);
    let alpha = resolve(&a.alpha, len)?;
    let beta = resolve(&a.beta, len)?;
    let options = ChainOptions {
        phase_policy: a.phase_policy.into(),
        dense_max_level: a.dense_max_level,
    };
    let chain = build_intertwiner_chain_with(&alpha, &beta, a.levels, &options)?;
    let check = chain.verify(a.levels.min(a.dense_max_level))?;
    let classification = classify_pair(&alpha, &beta, &WindowPolicy::default())?;

    let gaps: Vec<Option<f64>> = (1..=a.levels)
        .into_par_iter()
        .map(|n| -> LabResult<_> {
            if n > INTERTWINING_MAX_LEVEL {
                return Ok(None);
            }
            let tests = intertwining_tests(n, a.tests, a.seed)?;
            Ok(Some(intertwining_check(&chain, n, &tests)?))
        })
        .collect::<LabResult<_>>()?;

    let mut v = Violations::default();
    v.check(check.mapping_error <= 1e-9, || format!("chain mapping error {:e}", check.mapping_error));
    v.check(check.unitarity_defect <= 1e-9, || format!("chain unitarity defect {:e}", check.unitarity_defect));

    let mut report = Report::new(
        "reduce",
        vec![
            ("alpha", a.alpha.clone().into()),
            ("beta", a.beta.clone().into()),
            ("levels", a.levels.into()),
            ("length", len.into()),
            ("phase_policy", chain.phase_policy().as_str().into()),
            ("dense_max_level", a.dense_max_level.into()),
            ("tests", a.tests.into()),
            ("seed", a.seed.into()),
        ],
    );
    for (level, gap) in chain.levels().iter().zip(&gaps) {
        let n = level.n;
        let distance = state_distance(&phi_truncate(&alpha, n)?, &phi_truncate(&beta, n)?)?;
        v.check((level.gap_to_prev - level.exact_eigenphase_norm).abs() <= 1e-10, || {
            format!("level {n}: gap {:e} differs from eigenphase norm", level.gap_to_prev)
        });
        if let Some(g) = gap {
            v.check(*g <= 1e-9, || format!("level {n}: intertwining gap {g:e}"));
        }
        report.rows.push(vec![
            ("n", n.into()),
            ("theta", level.theta.into()),
            ("gap_to_prev", level.gap_to_prev.into()),
            (
                "gap_method",
                match level.gap_method {
                    GapMethod::Dense => "dense",
                    GapMethod::Factorized => "factorized",
                }
                .into(),
            ),
            ("paper_bound", level.paper_bound.into()),
            ("exact_eigenphase_norm", level.exact_eigenphase_norm.into()),
            ("overlap_product", level.overlap_product.into()),
            ("state_distance", distance.into()),
            ("intertwining_gap", (*gap).into()),
        ]);
    }
    report.summary = vec![
        ("chain_levels_verified", check.levels_checked.into()),
        ("chain_mapping_error", check.mapping_error.into()),
        ("chain_unitarity_defect", check.unitarity_defect.into()),
        ("max_intertwining_gap", max_of(gaps.iter().flatten().copied()).into()),
    ];
    report.summary.extend(classification_fields(&classification));
    Ok((report, v))
}

/// Deepest chain for which every block gap is measured densely.
pub const CAUCHY_MAX_LEVEL: u32 = 10;

pub fn cauchy_gaps(a: &CauchyArgs) -> LabResult<(Report, Violations)> {
    if a.levels > CAUCHY_MAX_LEVEL {
        return Err(LabError::Size(format!(
            "cauchy-gaps depth {} exceeds the dense cap {CAUCHY_MAX_LEVEL}",
            a.levels
        )));
    }
    if a.max_span == 0 {
        return Err(LabError::Config("max-span must be at least 1".into()));
    }
    let len = a.levels as usize;
    let alpha = resolve(&a.alpha, len)?;
    let beta = resolve(&a.beta, len)?;
    let options = ChainOptions {
        phase_policy: a.phase_policy.into(),
        dense_max_level: 0,
    };
    let chain = build_intertwiner_chain_with(&alpha, &beta, a.levels, &options)?;
    let table = cauchy_gap_table(&chain, a.max_span)?;
    let mut v = Violations::default();
    let mut report = Report::new(
        "cauchy-gaps",
        vec![
            ("alpha", a.alpha.clone().into()),
            ("beta", a.beta.clone().into()),
            ("levels", a.levels.into()),
            ("max_span", a.max_span.into()),
            ("phase_policy", chain.phase_policy().as_str().into()),
        ],
    );
    let mut max_dev: f64 = 0.0;
    for b in &table {
        let dev = (b.measured - b.spectral).abs();
        max_dev = max_dev.max(dev);
        v.check(dev <= 1e-8, || format!("block ({}, {}): measured and spectral differ by {dev:e}", b.m, b.n));
        report.rows.push(vec![
            ("m", b.m.into()),
            ("n", b.n.into()),
            ("measured", b.measured.into()),
            ("spectral", b.spectral.into()),
            ("product_bound", b.product_bound.into()),
            ("spectral_deviation", dev.into()),
            ("exceeds_bound", b.exceeds_bound.into()),
        ]);
    }
    report.summary = vec![
        ("blocks", table.len().into()),
        ("max_spectral_deviation", max_dev.into()),
        ("blocks_exceeding_bound", table.iter().filter(|b| b.exceeds_bound).count().into()),
    ];
    Ok((report, v))
}

pub fn separation(a: &SeparationArgs) -> LabResult<(Report, Violations)> {
    positive("threshold", a.threshold)?;
    let alpha = resolve(&a.alpha, a.levels)?;
    let beta = resolve(&a.beta, a.levels)?;
    let rows = separation_experiment(&alpha, &beta, a.start, a.levels)?;
    let mut v = Violations::default();
    let mut report = Report::new(
        "separation",
        vec![
            ("alpha", a.alpha.clone().into()),
            ("beta", a.beta.clone().into()),
            ("start", a.start.into()),
            ("levels", a.levels.into()),
            ("threshold", a.threshold.into()),
        ],
    );
    for r in &rows {
        let dev = (r.state_distance - r.closed_form_distance).abs();
        let expected_phi = 1.0 - r.overlap * r.overlap;
        v.check(dev <= 1e-8, || format!("n={}: distance off closed form by {dev:e}", r.n));
        v.check((r.witness_phi - expected_phi).abs() <= 1e-10 && (r.witness_psi + expected_phi).abs() <= 1e-10, || {
            format!("n={}: witness values off", r.n)
        });
        report.rows.push(vec![
            ("n", r.n.into()),
            ("overlap", r.overlap.into()),
            ("state_distance", r.state_distance.into()),
            ("closed_form_distance", r.closed_form_distance.into()),
            ("witness_phi", r.witness_phi.into()),
            ("witness_psi", r.witness_psi.into()),
            ("witness_norm", r.witness_norm.into()),
        ]);
    }
    let crossing = rows.iter().find(|r| r.state_distance > a.threshold).map(|r| r.n);
    let monotone = rows.windows(2).all(|w| w[1].state_distance >= w[0].state_distance - 1e-12);
    report.summary = vec![
        ("crossing_level", crossing.into()),
        ("final_distance", rows.last().map(|r| r.state_distance).into()),
        ("distance_nondecreasing", monotone.into()),
    ];
    Ok((report, v))
}

const PERTURBATIONS: [f64; 3] = [0.1, 0.25, 0.49];

/// `v exp(iθ P_x)` with `2 sin(θ/2) = δ`, so that `‖u − v‖ = δ`.
fn perturb(v: &ComplexMatrix, x: &UnitVector, delta: f64) -> LabResult<ComplexMatrix> {
    let theta = 2.0 * (0.5 * delta).asin();
    let p = ComplexMatrix::outer(x.as_slice(), x.as_slice())?.scale(Complex64::new(theta, 0.0));
    Ok(v * &exp_i_hermitian(&p)?)
}

pub fn fsigma_search(a: &FsigmaArgs) -> LabResult<(Report, Violations)> {
    TruncationLevel::from_dim(a.dim)?;
    let net = match a.net {
        NetKind::Grid => UnitaryNet::Grid(UnitaryGrid::new(a.dim, a.epsilon)?),
        NetKind::Random => UnitaryNet::Random(RandomUnitaryNet::new(a.dim, a.net_size, splitmix64(a.seed))?),
    };
    let tests = TestElementNet::standard(a.dim, a.tests, trial_seed(a.seed, u64::MAX))?;
    let rows: Vec<_> = (0..a.pairs)
        .into_par_iter()
        .map(|i| -> LabResult<_> {
            let seed = trial_seed(a.seed, i as u64);
            let mut rng = rng_from_seed(seed);
            let psi = VectorState::new(unit_vector(a.dim, &mut rng)?)?;
            let v = haar_unitary(a.dim, &mut rng)?;
            let phi = psi.pullback(&v)?;
            let outcome = witness_search(&phi, &psi, &net, &tests, 0, a.budget as u128)?;
            let check = match &outcome.witness {
                Some(w) => Some(distance_bound_check(&phi, &psi, &w.unitary)?),
                None => None,
            };
            let nearest = match &net {
                UnitaryNet::Grid(g) => {
                    let (_, u) = g.nearest(&v)?;
                    let d = operator_norm(&(&u - &v))?;
                    Some((d, sup_gap(&phi, &psi, &u, tests.elements())?))
                }
                UnitaryNet::Random(_) => None,
            };
            let x = unit_vector(a.dim, &mut rng)?;
            let mut perturbed = Vec::with_capacity(PERTURBATIONS.len());
            for delta in PERTURBATIONS {
                let u = perturb(&v, &x, delta)?;
                perturbed.push((operator_norm(&(&u - &v))?, sup_gap(&phi, &psi, &u, tests.elements())?));
            }
            Ok((i, outcome, check, nearest, perturbed))
        })
        .collect::<LabResult<_>>()?;

    let mut config: Fields = vec![
        ("dim", a.dim.into()),
        ("epsilon", a.epsilon.into()),
        ("pairs", a.pairs.into()),
        ("seed", a.seed.into()),
        ("tests", a.tests.into()),
        ("test_elements", tests.elements().len().into()),
        ("budget", a.budget.into()),
        ("net", format!("{:?}", a.net).to_lowercase().into()),
        ("net_cardinality", net.len().into()),
    ];
    if a.net == NetKind::Random {
        config.push(("net_size", a.net_size.into()));
    }
    let mut report = Report::new("fsigma-search", config);
    let mut v = Violations::default();
    for (i, outcome, check, nearest, perturbed) in &rows {
        let w = outcome.witness.as_ref();
        if let Some((d, below)) = check {
            v.check(*below, || format!("pair {i}: witness has state distance {d:e}, not below 2"));
        }
        let mut row: Fields = vec![
            ("trial", (*i).into()),
            ("found", w.is_some().into()),
            ("position", w.map(|w| w.position).into()),
            ("gap", w.map(|w| w.gap).into()),
            ("examined", outcome.examined.into()),
            ("best_gap", outcome.best.map(|b| b.1).into()),
            ("witness_distance", check.map(|c| c.0).into()),
            ("witness_below2", check.map(|c| c.1).into()),
            ("nearest_distance", nearest.map(|n| n.0).into()),
            ("nearest_gap", nearest.map(|n| n.1).into()),
        ];
        for (k, (delta, (dist, gap))) in PERTURBATIONS.iter().zip(perturbed).enumerate() {
            v.check((dist - delta).abs() <= 1e-9, || format!("pair {i}: perturbation {delta} has norm {dist:e}"));
            v.check(*gap <= 2.0 * delta + 1e-9, || format!("pair {i}: gap {gap:e} above 2·{delta}"));
            row.push((["perturbed_gap_0_10", "perturbed_gap_0_25", "perturbed_gap_0_49"][k], (*gap).into()));
        }
        report.rows.push(row);
    }
    let found = rows.iter().filter(|r| r.1.witness.is_some()).count();
    report.summary = vec![
        ("found", found.into()),
        ("all_found", (found == rows.len()).into()),
        ("max_position", rows.iter().filter_map(|r| r.1.witness.as_ref().map(|w| w.position)).max().into()),
        ("max_nearest_distance", rows.iter().filter_map(|r| r.3.map(|n| n.0)).reduce(f64::max).into()),
        ("max_nearest_gap", rows.iter().filter_map(|r| r.3.map(|n| n.1)).reduce(f64::max).into()),
        (
            "max_perturbation_ratio",
            max_of(rows.iter().flat_map(|r| PERTURBATIONS.iter().zip(&r.4).map(|(d, p)| p.1 / d))).into(),
        ),
    ];
    if let UnitaryNet::Random(_) = net {
        let density = density_report(&net, 100, splitmix64(a.seed ^ 0xD5))?;
        report.summary.push(("density_samples", density.samples.into()));
        report.summary.push(("density_max_distance", density.max_distance.into()));
        report.summary.push(("density_mean_distance", density.mean_distance.into()));
    }
    Ok((report, v))
}

pub fn product_test(a: &ProductArgs) -> LabResult<(Report, Violations)> {
    if a.length == 0 {
        return Err(LabError::Config("length must be at least 1".into()));
    }
    let mut classification = None;
    let factors: Vec<f64> = match a.family {
        ProductFamily::Geometric => (1..=a.length).map(|j| 1.0 - 0.5f64.powi(j as i32)).collect(),
        ProductFamily::Telescoping => (1..=a.length).map(|j| j as f64 / (j as f64 + 1.0)).collect(),
        ProductFamily::Angles => {
            let (Some(da), Some(db)) = (&a.alpha, &a.beta) else {
                return Err(LabError::Config("the angles family needs --alpha and --beta".into()));
            };
            let alpha = resolve(da, a.length)?;
            let beta = resolve(db, a.length)?;
            classification = Some(classify_pair(&alpha, &beta, &WindowPolicy::default())?);
            alpha.values().iter().zip(beta.values()).map(|(x, y)| (x - y).cos()).collect()
        }
    };
    let products = partial_products(&factors);
    let weierstrass = weierstrass_lower_bounds(&factors);
    let in_unit = factors.iter().all(|t| (0.0..=1.0).contains(t));
    let split = a.split.min(a.length);

    let mut config: Fields = vec![
        ("family", format!("{:?}", a.family).to_lowercase().into()),
        ("length", a.length.into()),
        ("split", split.into()),
    ];
    if a.family == ProductFamily::Angles {
        config.push(("alpha", a.alpha.clone().into()));
        config.push(("beta", a.beta.clone().into()));
    }
    let mut report = Report::new("product-test", config);
    let mut v = Violations::default();
    let mut head = 1.0;
    let mut tail_defect = 0.0;
    let mut max_exact_err: f64 = 0.0;
    for (k, ((&t, &p), &w)) in factors.iter().zip(&products).zip(&weierstrass).enumerate() {
        let n = k + 1;
        if n <= split {
            head *= t;
        } else {
            tail_defect += 1.0 - t;
        }
        let split_bound = head * (1.0 - tail_defect);
        let exact = (a.family == ProductFamily::Telescoping).then(|| 1.0 / (n as f64 + 1.0));
        let err = exact.map(|e| (p - e).abs());
        if let Some(e) = err {
            max_exact_err = max_exact_err.max(e);
            v.check(e <= 1e-12, || format!("n={n}: telescoping product off by {e:e}"));
        }
        if in_unit {
            v.check(p >= w - 1e-15, || format!("n={n}: product {p:e} below Weierstrass bound {w:e}"));
            v.check(p >= split_bound - 1e-15, || format!("n={n}: product {p:e} below split bound {split_bound:e}"));
        }
        report.rows.push(vec![
            ("n", n.into()),
            ("factor", t.into()),
            ("partial_product", p.into()),
            ("defect_sum", (1.0 - w).into()),
            ("weierstrass_bound", w.into()),
            ("split_bound", split_bound.into()),
            ("exact", exact.into()),
            ("abs_error", err.into()),
        ]);
    }
    let min_product = products.iter().copied().fold(f64::INFINITY, f64::min);
    let final_split = head * (1.0 - tail_defect);
    report.summary = vec![
        ("factors_in_unit_interval", in_unit.into()),
        ("final_product", products.last().copied().into()),
        ("min_partial_product", min_product.into()),
        ("final_weierstrass_bound", weierstrass.last().copied().into()),
        ("final_split_bound", final_split.into()),
        ("products_above_split_bound", (min_product >= final_split - 1e-15).into()),
    ];
    if a.family == ProductFamily::Telescoping {
        report.summary.push(("max_abs_error", max_exact_err.into()));
    }
    if let Some(c) = classification {
        report.summary.extend(classification_fields(&c));
    }
    Ok((report, v))
}
