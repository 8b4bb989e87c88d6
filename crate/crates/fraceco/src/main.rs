//! Command-line front end for the scenario harness.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fraceco::harness::{
    emit_run, emit_sweep, format_g17, resolve_out_dir, run, run_validation, sweep, ScenarioConfig,
};
use fraceco::Result;

/// Writes a line to stdout; a closed pipe (`fraceco stability cfg.json | head`)
/// ends the process quietly instead of panicking, any other write failure is fatal.
macro_rules! outln {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        if let Err(e) = writeln!(std::io::stdout().lock(), $($arg)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            eprintln!("error: cannot write to stdout: {e}");
            std::process::exit(1);
        }
    }};
}

#[derive(Parser)]
#[command(
    name = "fraceco",
    about = "Fractional-order predator-prey models: simulation, equilibria, stability, sweeps",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Integrate a scenario and write its artifacts.
    Simulate {
        /// Scenario config (JSON).
        config: PathBuf,
        /// Artifact directory (FRACECO_OUT overrides; default ./fraceco_out).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print every equilibrium of the configured model as JSON.
    Equilibria {
        /// Scenario config (JSON).
        config: PathBuf,
    },
    /// Print stability reports for the feasible equilibria as JSON.
    Stability {
        /// Scenario config (JSON).
        config: PathBuf,
    },
    /// Re-run the scenario over a list of values of one axis.
    Sweep {
        /// Scenario config (JSON).
        config: PathBuf,
        /// Axis to vary: `alpha` or a model parameter name.
        #[arg(long)]
        axis: String,
        /// Comma-separated axis values.
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<f64>,
        /// Artifact directory (FRACECO_OUT overrides; default ./fraceco_out).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in self-checks.
    Validate,
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Simulate { config, out } => {
            let cfg = ScenarioConfig::load(&config)?;
            let output = run(&cfg)?;
            let dir = resolve_out_dir(out.as_deref());
            let written = emit_run(&cfg, &output, &dir)?;
            outln!(
                "target equilibrium: {} at ({})",
                output.target.label,
                output
                    .target
                    .coords
                    .iter()
                    .map(|v| format_g17(*v))
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            match output.metrics.settling_time {
                Some(t) => outln!("settling time: {}", format_g17(t)),
                None => outln!("settling time: not settled within the horizon"),
            }
            outln!(
                "late amplitude: {}",
                output
                    .metrics
                    .late_amplitude
                    .iter()
                    .map(|v| format_g17(*v))
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            outln!("extinction flag: {}", output.metrics.extinction_flag);
            for path in written {
                outln!("wrote {}", path.display());
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Equilibria { config } => {
            let cfg = ScenarioConfig::load(&config)?;
            let eqs = cfg.equilibria();
            outln!(
                "{}",
                serde_json::to_string_pretty(&eqs).expect("equilibria serialize")
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Stability { config } => {
            let cfg = ScenarioConfig::load(&config)?;
            let reports = cfg
                .equilibria()
                .iter()
                .filter(|e| e.feasible)
                .map(|e| cfg.report_for(e))
                .collect::<Result<Vec<_>>>()?;
            outln!(
                "{}",
                serde_json::to_string_pretty(&reports).expect("reports serialize")
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Sweep {
            config,
            axis,
            values,
            out,
        } => {
            let cfg = ScenarioConfig::load(&config)?;
            let rows = sweep(&cfg, &axis, &values)?;
            let dir = resolve_out_dir(out.as_deref());
            let path = emit_sweep(&axis, cfg.model.dim(), &rows, &dir)?;
            for row in &rows {
                outln!(
                    "{} = {}: settling {}, amplitude ({}), extinction {}",
                    axis,
                    format_g17(row.value),
                    row.metrics
                        .settling_time
                        .map_or("none".into(), format_g17),
                    row.metrics
                        .late_amplitude
                        .iter()
                        .map(|v| format_g17(*v))
                        .collect::<Vec<_>>()
                        .join(", "),
                    row.metrics.extinction_flag
                );
            }
            outln!("wrote {}", path.display());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Validate => {
            let ok = run_validation(std::io::stdout().lock());
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}
