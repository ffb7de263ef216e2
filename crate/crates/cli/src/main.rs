use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use shadow_simplex::delta::analyze_matrix;
use shadow_simplex::driver::{find_start, solve, BitsPolicy, Randomness, ScheduleKind, SolveOutcome, SolverConfig, Stage};
use shadow_simplex::harness::{all_agree, run_experiments, write_summary_csv, write_trials_csv, ExperimentConfig, GeneratorKind};
use shadow_simplex::lp_model::{parse_lp, to_lp_string, LinearProgram};
use shadow_simplex::num::{format_rational, Rational};
use shadow_simplex::oracle::{brute_force_optimum, OracleOutcome};
use shadow_simplex::phase1::{build_phase1, Phase1Result};

#[derive(Parser)]
#[command(name = "shadow-simplex", version, about = "Randomized shadow vertex simplex with exact certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an LP file.
    Solve {
        file: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
        /// Directory receiving one path CSV per walk.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Solve an LP file by brute force enumeration.
    Oracle { file: PathBuf },
    /// Print δ, Δ and the bound checks of the constraint matrix as one CSV row.
    Analyze { file: PathBuf },
    /// Run phase 1 only.
    Phase1 {
        file: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
        /// Print the auxiliary program and its initial vertex instead of solving it.
        #[arg(long)]
        phase1_only: bool,
    },
    /// Seeded experiments with a summary CSV.
    Bench {
        /// tu-incidence, interval-matrix, network, random-integer or file.
        #[arg(long, default_value = "tu-incidence")]
        generator: String,
        /// Program for `--generator file`.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Comma separated `MxN` sizes.
        #[arg(long, default_value = "6x3")]
        sizes: String,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Mode::Float)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = Schedule::N32, alias = "schedule")]
        phi_schedule: Schedule,
        /// Summary CSV path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Per-trial CSV path.
        #[arg(long)]
        trials_out: Option<PathBuf>,
        /// Add a wall time column (breaks byte-identical output).
        #[arg(long)]
        timings: bool,
        /// Skip the oracle comparison.
        #[arg(long)]
        no_verify: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Float,
    Dyadic,
}

#[derive(Clone, Copy, ValueEnum)]
enum Schedule {
    N32,
    N52,
    Phase1,
}

impl From<Schedule> for ScheduleKind {
    fn from(s: Schedule) -> Self {
        match s {
            Schedule::N32 => ScheduleKind::N32,
            Schedule::N52 => ScheduleKind::N52,
            Schedule::Phase1 => ScheduleKind::Phase1,
        }
    }
}

fn randomness(mode: Mode, bits: Option<u32>) -> Randomness {
    match mode {
        Mode::Float => Randomness::Continuous,
        Mode::Dyadic => Randomness::Dyadic(match bits {
            Some(k) => BitsPolicy::Fixed(k),
            None => BitsPolicy::Budget { delta: None },
        }),
    }
}

#[derive(Args)]
struct SolverArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Bits per draw in dyadic mode; the budget formula when absent.
    #[arg(long)]
    bits: Option<u32>,
    #[arg(long, value_enum, default_value_t = Mode::Float)]
    mode: Mode,
    #[arg(long, value_enum, default_value_t = Schedule::N32, alias = "schedule")]
    phi_schedule: Schedule,
    #[arg(long, default_value_t = 16.0)]
    cap_constant: f64,
    #[arg(long, default_value_t = 64)]
    max_doublings: u32,
}

impl SolverArgs {
    fn config(&self, record_paths: bool) -> SolverConfig {
        SolverConfig {
            seed: self.seed,
            randomness: randomness(self.mode, self.bits),
            schedule: self.phi_schedule.into(),
            cap_constant: self.cap_constant,
            max_doublings: self.max_doublings,
            record_paths,
        }
    }
}

fn read_lp(path: &Path) -> Result<LinearProgram> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_lp(&text).with_context(|| format!("parsing {}", path.display()))
}

fn join(v: &[Rational]) -> String {
    v.iter().map(format_rational).collect::<Vec<_>>().join(" ")
}

fn join_idx(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn print_outcome(out: &mut impl Write, outcome: &SolveOutcome) -> io::Result<()> {
    writeln!(out, "status: {}", outcome.kind())?;
    match outcome {
        SolveOutcome::Optimal { solution, value, .. } => {
            writeln!(out, "value: {}", format_rational(value))?;
            writeln!(out, "x: {}", join(&solution.point))?;
            writeln!(out, "basis: {}", join_idx(&solution.basis))?;
        }
        SolveOutcome::Unbounded { ray, .. } => writeln!(out, "ray: {}", join(ray))?,
        SolveOutcome::Infeasible { phase1_value, .. } => writeln!(out, "phase1_value: {}", format_rational(phase1_value))?,
    }
    let stats = outcome.stats();
    writeln!(out, "pivots: {} (phase1 {}, main {}, ray {})", stats.total_pivots, stats.phase1_pivots, stats.main_pivots, stats.ray_pivots)?;
    if let Some(phi) = stats.accepted_phi {
        writeln!(out, "phi: {phi}")?;
    }
    if let Some(i) = stats.accepted_index {
        writeln!(out, "doublings: {i}")?;
    }
    writeln!(out, "bits: {}", stats.bits_consumed)
}

fn write_traces(dir: &Path, outcome: &SolveOutcome) -> Result<()> {
    fs::create_dir_all(dir)?;
    for t in &outcome.stats().walks {
        let stage = match t.stage {
            Stage::Phase1 => "phase1",
            Stage::Main => "main",
            Stage::Ray => "ray",
        };
        let path = dir.join(format!("{stage}-iter{}-round{}.csv", t.iteration, t.round));
        t.path.write_csv(BufWriter::new(File::create(&path)?))?;
    }
    Ok(())
}

fn parse_sizes(s: &str) -> Result<Vec<(usize, usize)>> {
    s.split(',')
        .map(|part| {
            let (m, n) = part.trim().split_once('x').with_context(|| format!("size `{part}` is not MxN"))?;
            Ok((m.parse()?, n.parse()?))
        })
        .collect()
}

fn run(cli: Cli) -> Result<bool> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Solve { file, solver, trace } => {
            let lp = read_lp(&file)?;
            let outcome = solve(&lp, &solver.config(trace.is_some()))?;
            print_outcome(&mut out, &outcome)?;
            if let Some(dir) = trace {
                write_traces(&dir, &outcome)?;
            }
        }
        Command::Oracle { file } => {
            let lp = read_lp(&file)?;
            match brute_force_optimum(&lp)? {
                OracleOutcome::Optimal { point, value } => {
                    writeln!(out, "status: optimal")?;
                    writeln!(out, "value: {}", format_rational(&value))?;
                    writeln!(out, "x: {}", join(&point))?;
                }
                OracleOutcome::Infeasible => writeln!(out, "status: infeasible")?,
                OracleOutcome::UnboundedSuspicion { ray } => {
                    writeln!(out, "status: unbounded")?;
                    writeln!(out, "ray: {}", join(&ray))?;
                }
            }
        }
        Command::Analyze { file } => {
            let lp = read_lp(&file)?;
            let r = analyze_matrix(lp.rows())?;
            let opt = |v: Option<bool>| v.map_or_else(String::new, |b| b.to_string());
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(["m", "n", "delta", "inv_delta_sq", "witness_rows", "witness_position", "Delta", "bound_ok", "tight_bound_ok"])?;
            w.write_record([
                lp.num_rows().to_string(),
                lp.num_vars().to_string(),
                r.delta.to_string(),
                format_rational(&r.inv_delta_sq),
                join_idx(&r.witness_rows),
                r.witness_position.to_string(),
                r.subdeterminants.as_ref().map_or_else(String::new, |s| s.max().to_string()),
                opt(r.bound_ok),
                opt(r.tight_bound_ok),
            ])?;
            w.flush()?;
        }
        Command::Phase1 { file, solver, phase1_only } => {
            let lp = read_lp(&file)?;
            if phase1_only {
                let problem = build_phase1(&lp)?;
                write!(out, "{}", to_lp_string(&problem.lp))?;
                writeln!(out, "# initial vertex: {}", join(&problem.initial.point))?;
                writeln!(out, "# initial basis: {}", join_idx(&problem.initial.basis))?;
            } else {
                let (result, stats) = find_start(&lp, &solver.config(false))?;
                match result {
                    Phase1Result::Feasible(v) => {
                        writeln!(out, "status: feasible")?;
                        writeln!(out, "x: {}", join(&v.point))?;
                        writeln!(out, "basis: {}", join_idx(&v.basis))?;
                    }
                    Phase1Result::Infeasible { value } => {
                        writeln!(out, "status: infeasible")?;
                        writeln!(out, "phase1_value: {}", format_rational(&value))?;
                    }
                }
                writeln!(out, "pivots: {}", stats.total_pivots)?;
            }
        }
        Command::Bench { generator, file, sizes, trials, seed, mode, phi_schedule, out: path, trials_out, timings, no_verify } => {
            let generator = if generator == "file" {
                GeneratorKind::File(file.context("--generator file needs --file")?)
            } else {
                match GeneratorKind::parse(&generator) {
                    Some(g) => g,
                    None => bail!("unknown generator `{generator}`"),
                }
            };
            let cfg = ExperimentConfig {
                generator,
                sizes: parse_sizes(&sizes)?,
                trials,
                seed,
                schedule: phi_schedule.into(),
                randomness: randomness(mode, None),
                verify: !no_verify,
                analyze: true,
            };
            let records = run_experiments(&cfg)?;
            match path {
                Some(p) => write_summary_csv(&records, timings, BufWriter::new(File::create(&p)?))?,
                None => write_summary_csv(&records, timings, &mut out)?,
            }
            if let Some(p) = trials_out {
                write_trials_csv(&records, BufWriter::new(File::create(&p)?))?;
            }
            if !all_agree(&records) {
                eprintln!("error: some trials disagree with the oracle");
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
