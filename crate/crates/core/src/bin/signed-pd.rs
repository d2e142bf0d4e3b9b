use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use signed_pd::dynamics::Mode;
use signed_pd::harness::{cmd_analyze, cmd_simulate, cmd_sweep, AnalysisKind, ConfigFile};
use signed_pd::{Error, Result};

#[derive(Parser)]
#[command(
    name = "signed-pd",
    version,
    about = "Evolutionary prisoner's dilemma on signed networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// TOML experiment config.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory (overrides `out` in the config).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run this single seed instead of the configured seeds.
    #[arg(long)]
    seed: Option<u64>,
    /// Interaction mode: dyadic or triadic.
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    max_steps: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// One run per seed; time-series CSV and JSON summary per run.
    Simulate(Common),
    /// Cartesian parameter sweep from the config's [sweep] table.
    Sweep(Common),
    /// Exact motif analysis: dyads, triads, dominance, robustness or all.
    Analyze {
        kind: String,
        #[command(flatten)]
        common: Common,
    },
}

fn load(common: &Common) -> Result<ConfigFile> {
    let mut file = match &common.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::parse("")?,
    };
    let e = &mut file.experiment;
    if let Some(seed) = common.seed {
        e.seeds = vec![seed];
    }
    if let Some(mode) = &common.mode {
        e.params.mode = mode.parse::<Mode>().map_err(|err| Error::Config {
            field: "--mode".into(),
            reason: err.to_string(),
        })?;
    }
    if let Some(max) = common.max_steps {
        e.options.max_steps = max;
    }
    e.validate()?;
    if let Some(out) = &common.out {
        file.out = Some(out.clone());
    }
    Ok(file)
}

fn out_dir(file: &ConfigFile) -> PathBuf {
    file.out.clone().unwrap_or_else(|| PathBuf::from("out"))
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Simulate(common) => {
            let file = load(&common)?;
            let out = out_dir(&file);
            let summaries = cmd_simulate(&file.experiment, &out)?;
            for s in &summaries {
                println!(
                    "seed {}: absorbed={} steps={} types UD/CO/UC={}/{}/{} mutual_coop={:.4}",
                    s.seed,
                    s.absorbed,
                    s.steps,
                    s.final_type_counts.ud,
                    s.final_type_counts.co,
                    s.final_type_counts.uc,
                    s.final_mutual_coop_fraction
                );
            }
            println!("wrote {} runs to {}", summaries.len(), out.display());
        }
        Command::Sweep(common) => {
            let file = load(&common)?;
            let spec = file.sweep.clone().ok_or_else(|| Error::Config {
                field: "sweep".into(),
                reason: "config has no [sweep] table".into(),
            })?;
            let out = out_dir(&file);
            let rows = cmd_sweep(&spec, &file.experiment, &out)?;
            println!("wrote {} rows to {}", rows.len(), out.join("sweep.csv").display());
        }
        Command::Analyze { kind, common } => {
            let kind: AnalysisKind = kind.parse()?;
            let file = load(&common)?;
            let out = out_dir(&file);
            for name in cmd_analyze(kind, &file.experiment.params, &out)? {
                println!("{}", out.join(name).display());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
