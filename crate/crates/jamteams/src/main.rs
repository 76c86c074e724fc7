use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use jamteams::tables::{read_matrix, read_trajectory, write_matrix, write_run, write_sweep};
use jamteams::{dump_scenario, fmt_num, parse_scenario, InputError, ThreadedExecutor};
use jamteams_core::comms::ModulationScheme;
use jamteams_core::matrix::{build_payoff_matrix_with, solve_zero_sum, EquilibriumKind, PayoffMatrix, PayoffOptions};
use jamteams_core::power::{pssge_condition, solve_power_game, Agent, PowerGameOptions, ScenarioConfig, Team};
use jamteams_core::sim::{run_simulation, snr_sweep, SimOptions};
use jamteams_core::Error as CoreError;

/// Two-team jamming game: power allocation and modulation selection.
#[derive(Parser)]
#[command(name = "jamteams", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct SolverArgs {
    /// Convergence tolerance on the power fractions.
    #[arg(long, default_value_t = 1e-8)]
    tolerance: f64,
    /// Maximum best-response sweeps per power game.
    #[arg(long, default_value_t = 500)]
    max_iter: usize,
    /// Weight of each best response in the update, in (0, 1].
    #[arg(long, default_value_t = 1.0)]
    damping: f64,
}

impl SolverArgs {
    fn options(&self) -> PowerGameOptions {
        PowerGameOptions { tolerance: self.tolerance, max_iterations: self.max_iter, damping: self.damping }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Solve the power game for one modulation pair.
    Power {
        scenario: PathBuf,
        /// Team A constellation size.
        #[arg(long)]
        ma: u32,
        /// Team B constellation size.
        #[arg(long)]
        mb: u32,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Build the payoff matrix and solve the modulation game.
    Matrix {
        #[arg(required_unless_present = "from_csv")]
        scenario: Option<PathBuf>,
        /// Fail instead of reporting a matrix with non-converged entries.
        #[arg(long)]
        strict: bool,
        /// Solve a matrix read from CSV instead of building one.
        #[arg(long, conflicts_with = "scenario")]
        from_csv: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Solve the modulation game over a range of SNRs (dB).
    Sweep {
        scenario: PathBuf,
        #[arg(long, default_value_t = 30.0, allow_negative_numbers = true)]
        snr_from: f64,
        #[arg(long, default_value_t = 80.0, allow_negative_numbers = true)]
        snr_to: f64,
        #[arg(long, default_value_t = 1.0)]
        snr_step: f64,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Play the game along a trajectory and accumulate the outcome.
    Run {
        scenario: PathBuf,
        trajectory: PathBuf,
        /// Total number of transmitted bits.
        #[arg(long, default_value_t = 1.0)]
        bits: f64,
        /// Largest allowed gap between trajectory frames (s).
        #[arg(long)]
        max_dt: Option<f64>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Report the existence condition for every modulation pair.
    Check {
        scenario: PathBuf,
        /// Print the parsed scenario in canonical form instead.
        #[arg(long)]
        dump_config: bool,
    },
}

enum Failure {
    Input(String),
    Numerical(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Uncertified { .. } | CoreError::Internal(_) => Failure::Numerical(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(format!("writing output: {e}"))
    }
}

/// Whether the run finished cleanly or produced output the solver could not vouch for.
enum Health {
    Clean,
    Unconverged,
}

fn read_text(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|source| InputError::Io { path: path.to_owned(), source })
}

fn load_scenario(path: &Path) -> Result<ScenarioConfig, InputError> {
    let text = read_text(path)?;
    parse_scenario(&text).map_err(|source| InputError::Scenario { path: path.to_owned(), source })
}

fn payoff_options(solver: &SolverArgs, strict: bool) -> Result<PayoffOptions, Failure> {
    let power = solver.options();
    power.validate()?;
    Ok(PayoffOptions { power, strict })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = execute(cli.command, &mut out);
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(Health::Clean), Ok(())) => ExitCode::SUCCESS,
        (Ok(Health::Unconverged), Ok(())) => ExitCode::from(2),
        (Err(Failure::Numerical(msg)), _) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        (Err(Failure::Input(msg)), _) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        (Ok(_), Err(e)) => {
            eprintln!("error: writing output: {e}");
            ExitCode::from(1)
        }
    }
}

fn execute(command: Command, out: &mut impl Write) -> Result<Health, Failure> {
    match command {
        Command::Power { scenario, ma, mb, solver } => {
            let config = load_scenario(&scenario)?;
            let a = ModulationScheme::new(ma)?;
            let b = ModulationScheme::new(mb)?;
            let result = solve_power_game(&config, &a, &b, &solver.options())?;
            let cert = pssge_condition(&config, &a, &b);
            writeln!(out, "pair: Ma={ma} Mb={mb}")?;
            writeln!(out, "agent,comm,jam_1,jam_2")?;
            for team in [Team::A, Team::B] {
                for index in 0..2 {
                    let agent = Agent { team, index };
                    let f = result.profile.get(agent);
                    writeln!(out, "{},{},{},{}", agent.label(), fmt_num(f.comm), fmt_num(f.jam[0]), fmt_num(f.jam[1]))?;
                }
            }
            writeln!(out, "value: {}", fmt_num(result.value))?;
            writeln!(out, "converged: {}", result.converged)?;
            writeln!(out, "iterations: {}", result.iterations)?;
            writeln!(out, "residual: {}", fmt_num(result.residual))?;
            writeln!(
                out,
                "existence condition: {} (lhs {} vs sigma2 {})",
                if cert.holds { "holds" } else { "fails" },
                fmt_num(cert.lhs),
                fmt_num(cert.rhs)
            )?;
            if !result.converged {
                eprintln!("warning: power game did not converge (residual {})", fmt_num(result.residual));
                return Ok(Health::Unconverged);
            }
            Ok(Health::Clean)
        }
        Command::Matrix { scenario, strict, from_csv, solver } => {
            let matrix = match (from_csv, scenario) {
                (Some(path), _) => {
                    let text = read_text(&path)?;
                    read_matrix(text.as_bytes()).map_err(|source| InputError::Table { path, source })?
                }
                (None, Some(path)) => {
                    let config = load_scenario(&path)?;
                    let opts = payoff_options(&solver, strict)?;
                    let exec = ThreadedExecutor::from_env()?;
                    build_payoff_matrix_with(&config, &opts, &exec, None)?.matrix
                }
                (None, None) => return Err(Failure::Input("a scenario or --from-csv is required".into())),
            };
            write_matrix(&mut *out, &matrix)?;
            report_equilibrium(&matrix)?;
            Ok(health(matrix.all_converged()))
        }
        Command::Sweep { scenario, snr_from, snr_to, snr_step, solver } => {
            let config = load_scenario(&scenario)?;
            let grid = snr_grid(snr_from, snr_to, snr_step)?;
            let opts = payoff_options(&solver, false)?;
            let exec = ThreadedExecutor::from_env()?;
            let rows = snr_sweep(&config, &grid, &opts, &exec)?;
            write_sweep(&mut *out, &rows)?;
            Ok(health(rows.iter().all(|r| r.certified)))
        }
        Command::Run { scenario, trajectory, bits, max_dt, solver } => {
            let config = load_scenario(&scenario)?;
            let text = read_text(&trajectory)?;
            let frames =
                read_trajectory(text.as_bytes()).map_err(|source| InputError::Table { path: trajectory, source })?;
            let opts = SimOptions { payoff: payoff_options(&solver, false)?, max_dt: max_dt.unwrap_or(f64::INFINITY) };
            let exec = ThreadedExecutor::from_env()?;
            let acc = run_simulation(&config, &frames, bits, &opts, &exec)?;
            write_run(&mut *out, &acc.steps)?;
            if acc.truncated {
                eprintln!(
                    "warning: trajectory ends at t = {} before the horizon {}; run truncated",
                    fmt_num(acc.elapsed),
                    fmt_num(acc.horizon)
                );
            }
            eprintln!("pi: {}", fmt_num(acc.pi));
            Ok(health(acc.steps.iter().all(|s| s.certified)))
        }
        Command::Check { scenario, dump_config } => {
            let config = load_scenario(&scenario)?;
            if dump_config {
                write!(out, "{}", dump_scenario(&config))?;
                return Ok(Health::Clean);
            }
            writeln!(out, "Ma,Mb,holds,lhs,rhs,min_rate_threshold")?;
            for &ma in &config.menu_a {
                for &mb in &config.menu_b {
                    let cert = pssge_condition(&config, &ModulationScheme::new(ma)?, &ModulationScheme::new(mb)?);
                    let threshold = cert.min_rate_threshold.map(fmt_num).unwrap_or_default();
                    writeln!(out, "{ma},{mb},{},{},{},{threshold}", cert.holds, fmt_num(cert.lhs), fmt_num(cert.rhs))?;
                }
            }
            Ok(Health::Clean)
        }
    }
}

fn health(all_converged: bool) -> Health {
    if all_converged {
        Health::Clean
    } else {
        eprintln!("warning: some power games did not converge; affected rows are marked certified=false");
        Health::Unconverged
    }
}

fn report_equilibrium(matrix: &PayoffMatrix) -> Result<(), Failure> {
    let eq = solve_zero_sum(matrix)?;
    match eq.kind {
        EquilibriumKind::Pure { row, col } => eprintln!(
            "equilibrium: pure, {{{},{}}}, {}",
            matrix.row_labels()[row],
            matrix.col_labels()[col],
            fmt_num(eq.value)
        ),
        EquilibriumKind::Mixed => {
            let show = |labels: &[u32], w: &[f64]| {
                labels.iter().zip(w).map(|(l, p)| format!("{l}:{}", fmt_num(*p))).collect::<Vec<_>>().join(" ")
            };
            eprintln!(
                "equilibrium: mixed, A [{}], B [{}], {}",
                show(matrix.row_labels(), eq.row.weights()),
                show(matrix.col_labels(), eq.col.weights()),
                fmt_num(eq.value)
            );
        }
    }
    Ok(())
}

/// `from, from + step, ...` up to `to` inclusive; empty when `to < from`.
fn snr_grid(from: f64, to: f64, step: f64) -> Result<Vec<f64>, Failure> {
    if !(from.is_finite() && to.is_finite()) {
        return Err(Failure::Input("SNR range must be finite".into()));
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(Failure::Input("--snr-step must be positive".into()));
    }
    if to < from {
        return Ok(Vec::new());
    }
    let count = ((to - from) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|k| from + step * k as f64).collect())
}
