//! Seeded experiments: generate, solve, check against the oracle, summarize.
//!
//! Trials run on the rayon pool. Each trial derives its instance seed and
//! solver seed from the configuration seed, its size and its index, and the
//! results are collected in input order, so the summary CSV depends on the
//! configuration only.

pub mod generators;

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;

use crate::delta::{delta_matrix, max_subdeterminant};
use crate::driver::{solve, Randomness, ScheduleKind, SolveOutcome, SolverConfig};
use crate::error::{Error, Result};
use crate::lp_model::{parse_lp, LinearProgram};
use crate::num::dot;
use crate::oracle::{brute_force_optimum, OracleOutcome};

pub use generators::{derive_seed, generate_random_integer, generate_tu_instance, TuKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorKind {
    Tu(TuKind),
    /// Integer entries in `[-range, range]`.
    RandomInteger { range: i64 },
    /// The same program for every trial; only the solver seed varies.
    File(PathBuf),
}

impl GeneratorKind {
    pub fn parse(name: &str) -> Option<Self> {
        Some(match name {
            "tu-incidence" | "incidence" => GeneratorKind::Tu(TuKind::Incidence),
            "interval-matrix" | "interval" => GeneratorKind::Tu(TuKind::Interval),
            "network" => GeneratorKind::Tu(TuKind::Network),
            "random-integer" => GeneratorKind::RandomInteger { range: 3 },
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub generator: GeneratorKind,
    /// `(m, n)` pairs; ignored by [`GeneratorKind::File`], which uses the
    /// program's own size.
    pub sizes: Vec<(usize, usize)>,
    pub trials: usize,
    pub seed: u64,
    pub schedule: ScheduleKind,
    pub randomness: Randomness,
    /// Compare every result with the brute force oracle.
    pub verify: bool,
    /// Compute δ and Δ of every instance.
    pub analyze: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            generator: GeneratorKind::Tu(TuKind::Incidence),
            sizes: vec![(6, 3)],
            trials: 10,
            seed: 0,
            schedule: ScheduleKind::N32,
            randomness: Randomness::Continuous,
            verify: true,
            analyze: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub instance_id: String,
    pub m: usize,
    pub n: usize,
    pub delta: Option<f64>,
    pub big_delta: Option<BigInt>,
    pub accepted_phi: Option<f64>,
    pub total_pivots: u64,
    pub pivots_per_round: Vec<u64>,
    pub bits_consumed: u64,
    /// `optimal`, `unbounded`, `infeasible`, or `error: ...`.
    pub outcome: String,
    pub oracle_agrees: Option<bool>,
    /// `pivots / (m n³ / δ²)` when δ is known.
    pub bound_ratio: Option<f64>,
    pub wall_time_ms: f64,
}

/// Whether `outcome` matches the exact oracle on `lp`: same classification,
/// same optimal value, and exact validity of the returned point or ray.
pub fn agrees_with_oracle(lp: &LinearProgram, outcome: &SolveOutcome) -> Result<bool> {
    let oracle = brute_force_optimum(lp)?;
    Ok(match (outcome, &oracle) {
        (SolveOutcome::Optimal { solution, value, .. }, OracleOutcome::Optimal { value: v, .. }) => {
            value == v && lp.is_feasible(&solution.point) && lp.objective_value(&solution.point) == *value
        }
        (SolveOutcome::Unbounded { ray, .. }, OracleOutcome::UnboundedSuspicion { .. }) => {
            dot(lp.objective(), ray).is_positive() && lp.rows().iter().all(|r| !dot(r, ray).is_positive())
        }
        (SolveOutcome::Infeasible { phase1_value, .. }, OracleOutcome::Infeasible) => phase1_value.is_positive(),
        _ => false,
    })
}

fn instance(cfg: &ExperimentConfig, file_lp: Option<&LinearProgram>, m: usize, n: usize, trial: usize) -> Result<LinearProgram> {
    let seed = derive_seed(&[cfg.seed, m as u64, n as u64, trial as u64, 0]);
    match &cfg.generator {
        GeneratorKind::Tu(kind) => generate_tu_instance(*kind, m, n, seed),
        GeneratorKind::RandomInteger { range } => generate_random_integer(m, n, *range, seed),
        GeneratorKind::File(_) => Ok(file_lp.expect("file program loaded").clone()),
    }
}

fn run_trial(cfg: &ExperimentConfig, file_lp: Option<&LinearProgram>, m: usize, n: usize, trial: usize) -> TrialRecord {
    let start = Instant::now();
    let mut rec = TrialRecord {
        instance_id: format!("{m}x{n}-{trial}"),
        m,
        n,
        delta: None,
        big_delta: None,
        accepted_phi: None,
        total_pivots: 0,
        pivots_per_round: Vec::new(),
        bits_consumed: 0,
        outcome: String::new(),
        oracle_agrees: None,
        bound_ratio: None,
        wall_time_ms: 0.0,
    };
    let lp = match instance(cfg, file_lp, m, n, trial) {
        Ok(lp) => lp,
        Err(e) => {
            rec.outcome = format!("error: {e}");
            return rec;
        }
    };
    if cfg.analyze {
        rec.delta = delta_matrix(lp.rows()).ok().map(|r| r.delta);
        rec.big_delta = max_subdeterminant(lp.rows()).ok().map(|r| r.max());
    }
    let solver = SolverConfig {
        seed: derive_seed(&[cfg.seed, m as u64, n as u64, trial as u64, 1]),
        randomness: cfg.randomness,
        schedule: cfg.schedule,
        ..SolverConfig::default()
    };
    match solve(&lp, &solver) {
        Ok(out) => {
            let stats = out.stats();
            rec.total_pivots = stats.total_pivots;
            rec.pivots_per_round = stats.pivots_per_round.clone();
            rec.bits_consumed = stats.bits_consumed;
            rec.accepted_phi = stats.accepted_phi;
            rec.outcome = out.kind().to_string();
            if cfg.verify {
                rec.oracle_agrees = Some(agrees_with_oracle(&lp, &out).unwrap_or(false));
            }
        }
        Err(e) => {
            rec.outcome = format!("error: {e}");
            if cfg.verify {
                rec.oracle_agrees = Some(false);
            }
        }
    }
    if let Some(d) = rec.delta {
        let scale = (m * n * n * n) as f64 / (d * d);
        rec.bound_ratio = Some(rec.total_pivots as f64 / scale);
    }
    rec.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    rec
}

/// Runs every `(size, trial)` pair. Trial failures are recorded, not fatal.
pub fn run_experiments(cfg: &ExperimentConfig) -> Result<Vec<TrialRecord>> {
    if cfg.trials == 0 {
        return Err(Error::Precondition("at least one trial is required".into()));
    }
    let file_lp = match &cfg.generator {
        GeneratorKind::File(path) => Some(parse_lp(&std::fs::read_to_string(path)?)?),
        _ => None,
    };
    let sizes = match &file_lp {
        Some(lp) => vec![(lp.num_rows(), lp.num_vars())],
        None => cfg.sizes.clone(),
    };
    let jobs: Vec<(usize, usize, usize)> =
        sizes.iter().flat_map(|&(m, n)| (0..cfg.trials).map(move |t| (m, n, t))).collect();
    Ok(jobs.par_iter().map(|&(m, n, t)| run_trial(cfg, file_lp.as_ref(), m, n, t)).collect())
}

fn median(sorted: &[u64]) -> f64 {
    let k = sorted.len();
    if k % 2 == 1 {
        sorted[k / 2] as f64
    } else {
        (sorted[k / 2 - 1] + sorted[k / 2]) as f64 / 2.0
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(String::new, |x| x.to_string())
}

/// One row per size: smallest δ, largest Δ, pivot statistics, agreement
/// rate and mean bits. Wall times appear only with `timings`.
pub fn write_summary_csv<W: Write>(records: &[TrialRecord], timings: bool, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["m", "n", "delta", "Delta", "mean_pivots", "median_pivots", "max_pivots", "oracle_agree_rate", "mean_bits"];
    if timings {
        header.push("mean_wall_ms");
    }
    w.write_record(&header)?;
    let mut sizes: Vec<(usize, usize)> = Vec::new();
    for r in records {
        if !sizes.contains(&(r.m, r.n)) {
            sizes.push((r.m, r.n));
        }
    }
    for (m, n) in sizes {
        let group: Vec<&TrialRecord> = records.iter().filter(|r| (r.m, r.n) == (m, n)).collect();
        let k = group.len() as f64;
        let mut pivots: Vec<u64> = group.iter().map(|r| r.total_pivots).collect();
        pivots.sort_unstable();
        let delta = group.iter().filter_map(|r| r.delta).reduce(f64::min);
        let big = group.iter().filter_map(|r| r.big_delta.clone()).max();
        let checked: Vec<bool> = group.iter().filter_map(|r| r.oracle_agrees).collect();
        let rate = (!checked.is_empty()).then(|| checked.iter().filter(|&&a| a).count() as f64 / checked.len() as f64);
        let mut row = vec![
            m.to_string(),
            n.to_string(),
            opt(delta),
            opt(big),
            (pivots.iter().sum::<u64>() as f64 / k).to_string(),
            median(&pivots).to_string(),
            pivots.last().copied().unwrap_or(0).to_string(),
            opt(rate),
            (group.iter().map(|r| r.bits_consumed).sum::<u64>() as f64 / k).to_string(),
        ];
        if timings {
            row.push((group.iter().map(|r| r.wall_time_ms).sum::<f64>() / k).to_string());
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// Every trial on its own row, including the pivot bound ratio.
pub fn write_trials_csv<W: Write>(records: &[TrialRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "instance", "m", "n", "delta", "Delta", "phi", "pivots", "pivots_per_round", "bits", "outcome", "oracle_agrees",
        "bound_ratio",
    ])?;
    for r in records {
        let rounds: Vec<String> = r.pivots_per_round.iter().map(u64::to_string).collect();
        w.write_record([
            r.instance_id.clone(),
            r.m.to_string(),
            r.n.to_string(),
            opt(r.delta),
            opt(r.big_delta.clone()),
            opt(r.accepted_phi),
            r.total_pivots.to_string(),
            rounds.join(";"),
            r.bits_consumed.to_string(),
            r.outcome.clone(),
            opt(r.oracle_agrees),
            opt(r.bound_ratio),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// True when every verified trial agreed with the oracle.
pub fn all_agree(records: &[TrialRecord]) -> bool {
    records.iter().all(|r| r.oracle_agrees != Some(false))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_tu_experiment_agrees_and_is_reproducible() {
        let cfg = ExperimentConfig { sizes: vec![(6, 4)], trials: 6, seed: 3, ..ExperimentConfig::default() };
        let a = run_experiments(&cfg).unwrap();
        assert!(a.iter().all(|r| r.oracle_agrees == Some(true)), "{a:?}");
        assert!(a.iter().all(|r| r.big_delta == Some(BigInt::from(1))));
        let b = run_experiments(&cfg).unwrap();
        let (mut x, mut y) = (Vec::new(), Vec::new());
        write_summary_csv(&a, false, &mut x).unwrap();
        write_summary_csv(&b, false, &mut y).unwrap();
        assert_eq!(x, y);
        let text = String::from_utf8(x).unwrap();
        assert!(text.starts_with("m,n,delta,Delta,mean_pivots,median_pivots,max_pivots,oracle_agree_rate,mean_bits\n"));
        assert!(text.contains("\n6,4,"));
    }

    #[test]
    fn median_of_even_and_odd() {
        assert_eq!(median(&[1, 2, 3]), 2.0);
        assert_eq!(median(&[1, 2, 3, 10]), 2.5);
    }
}
