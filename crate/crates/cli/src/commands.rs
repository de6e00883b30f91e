//! The five commands. Each returns a [`RunReport`]; rendering and exit codes
//! are the caller's business.

use std::path::Path;
use std::time::Instant;

use entwit_core::criteria::{analyze, ppt_check, Criterion, DensityState, Verdict};
use entwit_core::rng::SeededRng;
use entwit_core::spin::SpinSystem;
use entwit_core::states::{
    family_state, family_threshold, random_state, standard_manifold_member, Ensemble,
};
use entwit_core::witness::{build_witness, verify_optimality, witness_expectation};

use crate::report::{
    BenchRow, CriterionRow, OptimalitySection, RunReport, SweepRow, ThresholdRow, SWEEP_CSV_HEADER,
};
use crate::{statefile, CliError};

/// Criteria shown in the thresholds table; the reduction criterion appears
/// once (both sides coincide on the swap-symmetric family).
const THRESHOLD_TABLE: [(Criterion, &str); 5] = [
    (Criterion::Phi, "Phi"),
    (Criterion::Ppt, "PPT"),
    (Criterion::Reduction2, "Reduction"),
    (Criterion::Realignment, "Realignment"),
    (Criterion::Majorization, "Majorization"),
];

fn even_spin_system(n: usize) -> Result<SpinSystem, CliError> {
    if !n.is_multiple_of(2) || n < 4 {
        return Err(CliError::usage(format!(
            "dimension N must be even and at least 4, got {n}"
        )));
    }
    SpinSystem::with_dimension(n).map_err(|e| CliError::usage(e.to_string()))
}

/// Witness expectation when the state lives on `C^N ⊗ C^N` with even
/// `N >= 4`; `None` otherwise.
fn witness_expectation_if_applicable(state: &DensityState) -> Result<Option<f64>, CliError> {
    let (d1, d2) = state.dims();
    if d1 == d2 && d1 >= 4 && d1 % 2 == 0 {
        let sys = SpinSystem::with_dimension(d1).map_err(CliError::from)?;
        let witness = build_witness(&sys).map_err(CliError::from)?;
        Ok(Some(
            witness_expectation(&witness, state).map_err(CliError::from)?,
        ))
    } else {
        Ok(None)
    }
}

/// `analyze <path>`: every criterion on a state file.
pub fn cmd_analyze(path: &Path, tol: f64) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let (state, digest) = statefile::load(path)?;
    let mut report = RunReport::new(format!("analyze {}", path.display()));
    report.input_digest = Some(digest);
    report.criteria = analyze(&state, tol)
        .map_err(CliError::from)?
        .iter()
        .map(CriterionRow::from)
        .collect();
    report.witness_expectation = witness_expectation_if_applicable(&state)?;
    report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

/// What `family` should do.
#[derive(Debug, Clone)]
pub enum FamilyMode {
    Single { lambda: f64 },
    Sweep { start: f64, stop: f64, step: f64 },
    Thresholds,
}

/// Parse `a:b:step` sweep syntax.
pub fn parse_sweep(spec: &str) -> Result<FamilyMode, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::usage(format!(
            "sweep must look like start:stop:step, got {spec:?}"
        )));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| {
            p.parse::<f64>()
                .map_err(|_| CliError::usage(format!("bad sweep number {p:?}")))
        })
        .collect::<Result<_, _>>()?;
    let (start, stop, step) = (nums[0], nums[1], nums[2]);
    if !(0.0..=1.0).contains(&start) || !(0.0..=1.0).contains(&stop) || step <= 0.0 || stop < start
    {
        return Err(CliError::usage(format!(
            "sweep range {spec:?} must satisfy 0 <= start <= stop <= 1 with positive step"
        )));
    }
    Ok(FamilyMode::Sweep { start, stop, step })
}

fn sweep_lambdas(start: f64, stop: f64, step: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut k = 0usize;
    loop {
        let lambda = start + step * k as f64;
        if lambda > stop + 1e-12 {
            break;
        }
        out.push(lambda.min(1.0));
        k += 1;
    }
    out
}

/// `family --N n [--lambda | --sweep | --thresholds]`.
pub fn cmd_family(
    n: usize,
    mode: &FamilyMode,
    tol: f64,
    out: Option<&Path>,
) -> Result<RunReport, CliError> {
    let start_time = Instant::now();
    let sys = even_spin_system(n)?;
    let mut report = RunReport::new(format!("family --N {n}"));

    match mode {
        FamilyMode::Thresholds => {
            let mut rows = Vec::new();
            for (criterion, label) in THRESHOLD_TABLE {
                let scan = family_threshold(&sys, criterion, 1e-6).map_err(CliError::from)?;
                rows.push(ThresholdRow {
                    criterion: label.to_string(),
                    lambda_c: scan.lambda_c,
                    detected: scan.detected,
                });
            }
            report.command = format!("family --N {n} --thresholds");
            report.thresholds = Some(rows);
        }
        FamilyMode::Single { lambda } => {
            let point = family_state(&sys, *lambda).map_err(|e| CliError::usage(e.to_string()))?;
            report.command = format!("family --N {n} --lambda {lambda}");
            if let Some(path) = out {
                report.output_digest = Some(statefile::save(path, &point.state)?);
                report.output_file = Some(path.display().to_string());
            }
            report.criteria = analyze(&point.state, tol)
                .map_err(CliError::from)?
                .iter()
                .map(CriterionRow::from)
                .collect();
            report.witness_expectation = witness_expectation_if_applicable(&point.state)?;
        }
        FamilyMode::Sweep { start, stop, step } => {
            let witness = build_witness(&sys).map_err(CliError::from)?;
            let mut rows = Vec::new();
            for lambda in sweep_lambdas(*start, *stop, *step) {
                let point =
                    family_state(&sys, lambda).map_err(|e| CliError::usage(e.to_string()))?;
                let reports = analyze(&point.state, tol).map_err(CliError::from)?;
                let score = |c: Criterion| {
                    reports
                        .iter()
                        .find(|r| r.criterion == c)
                        .map(|r| r.score)
                        .unwrap_or(f64::NAN)
                };
                rows.push(SweepRow {
                    lambda,
                    ppt_score: score(Criterion::Ppt),
                    reduction1_score: score(Criterion::Reduction1),
                    reduction2_score: score(Criterion::Reduction2),
                    phi_score: score(Criterion::Phi),
                    realign_excess: score(Criterion::Realignment),
                    major_violation: score(Criterion::Majorization),
                    witness_expectation: witness_expectation(&witness, &point.state)
                        .map_err(CliError::from)?,
                });
            }
            report.command = format!("family --N {n} --sweep {start}:{stop}:{step}");
            if let Some(path) = out {
                let mut body = String::from(SWEEP_CSV_HEADER);
                body.push('\n');
                for row in &rows {
                    body.push_str(&row.to_csv());
                    body.push('\n');
                }
                std::fs::write(path, body.as_bytes()).map_err(|e| {
                    CliError::invalid_file(format!("cannot write {}: {e}", path.display()))
                })?;
                report.output_file = Some(path.display().to_string());
            }
            report.sweep = Some(rows);
        }
    }
    report.wall_ms = start_time.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

/// Weights for `generate-bound`: explicit list or derived from a seed.
#[derive(Debug, Clone)]
pub enum WeightSource {
    Explicit(Vec<f64>),
    Seeded(u64),
}

/// `generate-bound --N n --lambda λ`: write a PPT bound entangled state.
pub fn cmd_generate_bound(
    n: usize,
    lambda: f64,
    weights: &WeightSource,
    out: &Path,
    tol: f64,
) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let sys = even_spin_system(n)?;
    let weights = match weights {
        WeightSource::Explicit(values) => {
            if values.len() != 2 * n {
                return Err(CliError::usage(format!(
                    "expected 2N = {} weights, got {}",
                    2 * n,
                    values.len()
                )));
            }
            values.clone()
        }
        WeightSource::Seeded(seed) => {
            let mut rng = SeededRng::new(*seed);
            (0..2 * n).map(|_| rng.uniform()).collect()
        }
    };

    let state = standard_manifold_member(&sys, lambda, &weights)
        .map_err(|e| CliError::usage(e.to_string()))?;

    let mut report = RunReport::new(format!("generate-bound --N {n} --lambda {lambda}"));
    report.output_digest = Some(statefile::save(out, &state)?);
    report.output_file = Some(out.display().to_string());

    let ppt = ppt_check(&state, tol).map_err(CliError::from)?;
    report.ppt_min_eigenvalue = Some(ppt.score);
    report.witness_expectation = witness_expectation_if_applicable(&state)?;
    report.wall_ms = start.elapsed().as_secs_f64() * 1e3;

    if ppt.verdict != Verdict::Inconclusive {
        return Err(CliError::numerical(format!(
            "constructed state failed its PPT guarantee (min eigenvalue {:.3e})",
            ppt.score
        )));
    }
    if report.witness_expectation.unwrap_or(0.0) >= 0.0 {
        return Err(CliError::numerical(
            "constructed state is not detected by the witness".to_string(),
        ));
    }
    Ok(report)
}

/// `verify-optimality --N n`: span rank, invariance residual and the
/// PPT-detection exhibit. The report's `optimality.confirmed` field decides
/// the exit code.
pub fn cmd_verify_optimality(
    n: usize,
    samples: Option<usize>,
    seed: u64,
    tol: f64,
) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let sys = even_spin_system(n)?;
    let samples = samples.unwrap_or(2 * n * n);
    let check = verify_optimality(&sys, samples, seed, tol).map_err(CliError::from)?;

    // Nondecomposability exhibit: the family point at the partial
    // transposition boundary is PPT yet detected.
    let exhibit_lambda = 1.0 / (n as f64 + 2.0);
    let point = family_state(&sys, exhibit_lambda).map_err(CliError::from)?;
    let ppt = ppt_check(&point.state, tol).map_err(CliError::from)?;
    let witness = build_witness(&sys).map_err(CliError::from)?;
    let expectation = witness_expectation(&witness, &point.state).map_err(CliError::from)?;
    let exhibit_ok = ppt.score >= -1e-9 && expectation < 0.0;

    let mut report = RunReport::new(format!(
        "verify-optimality --N {n} --samples {samples} --seed {seed}"
    ));
    report.optimality = Some(OptimalitySection {
        span_rank: check.span_rank,
        space_dim: check.space_dim,
        theta_residual: check.theta_residual,
        theta_invariant: check.theta_invariant,
        exhibit_lambda,
        exhibit_ppt_min_eigenvalue: ppt.score,
        exhibit_witness_expectation: expectation,
        confirmed: check.confirmed() && exhibit_ok,
    });
    report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

/// Ensembles selectable from the command line.
pub fn parse_ensemble(name: &str, k: usize) -> Result<Ensemble, CliError> {
    match name {
        "ginibre" => Ok(Ensemble::GinibreMixed),
        "haar" => Ok(Ensemble::PureHaar),
        "separable" => {
            if k == 0 {
                return Err(CliError::usage("--k must be at least 1"));
            }
            Ok(Ensemble::SeparableMixture(k))
        }
        other => Err(CliError::usage(format!(
            "unknown ensemble {other:?} (expected ginibre, haar or separable)"
        ))),
    }
}

/// `bench`: per-criterion detection counts over an ensemble.
pub fn cmd_bench(
    dims: (usize, usize),
    ensemble: Ensemble,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<RunReport, CliError> {
    let start = Instant::now();
    if samples == 0 {
        return Err(CliError::usage("--samples must be at least 1"));
    }
    let order = [
        Criterion::Ppt,
        Criterion::Reduction1,
        Criterion::Reduction2,
        Criterion::Phi,
        Criterion::Realignment,
        Criterion::Majorization,
    ];
    let mut counts = std::collections::HashMap::new();
    for index in 0..samples {
        let state_seed = entwit_core::rng::mix_seeds(seed, index as u64);
        let state =
            random_state(dims, ensemble, state_seed).map_err(|e| CliError::usage(e.to_string()))?;
        for report in analyze(&state, tol).map_err(CliError::from)? {
            if report.verdict == Verdict::Entangled {
                *counts.entry(report.criterion).or_insert(0usize) += 1;
            }
        }
    }
    let mut report = RunReport::new(format!(
        "bench --d1 {} --d2 {} --samples {samples} --seed {seed}",
        dims.0, dims.1
    ));
    report.bench = Some(
        order
            .iter()
            .map(|criterion| BenchRow {
                criterion: criterion.name().to_string(),
                detections: counts.get(criterion).copied().unwrap_or(0),
                samples,
            })
            .collect(),
    );
    report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}
