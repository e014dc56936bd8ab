//! Command-line front end for the frame-sharing simulations.

pub mod commands;
pub mod config;
pub mod report;

use std::fmt;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use commands::{run, Command, CommandOutput};
pub use config::RunConfig;
pub use report::{Cell, ReportTable};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_SELF_CHECK: i32 = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    Io(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

#[derive(Debug, Parser)]
#[command(
    name = "frame-sync",
    version,
    about = "Shared phase-reference protocol simulations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandArg,
    /// JSON run configuration; flags override its fields
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    /// Total excitation number of the resource
    #[arg(long = "N", global = true)]
    pub n: Option<usize>,
    /// Inclusive range `a..b`
    #[arg(long = "N-range", global = true)]
    pub n_range: Option<String>,
    /// sine-paper | flat | optimal | single-sector | degenerate-demo | PATH
    #[arg(long, global = true)]
    pub state: Option<String>,
    /// variance | likelihood | PATH
    #[arg(long, global = true)]
    pub cost: Option<String>,
    /// Harmonic cutoff of the likelihood cost (default N)
    #[arg(long = "q-max", global = true)]
    pub q_max: Option<usize>,
    /// Also run the brute-force seed search (cost)
    #[arg(long, global = true)]
    pub oracle: bool,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Report angles in degrees
    #[arg(long, global = true)]
    pub degrees: bool,
    /// Emit a JSON document instead of CSV
    #[arg(long, global = true)]
    pub json: bool,
    /// Group order (align)
    #[arg(long, global = true)]
    pub d: Option<usize>,
    /// Grid size: oracle points per phase, or demo rows
    #[arg(long, global = true)]
    pub grid: Option<usize>,
    /// Comma-separated families (scaling)
    #[arg(long, global = true, value_delimiter = ',')]
    pub families: Option<Vec<String>>,
    /// Input ket: plus | minus | zero | one | plus-i | PATH
    #[arg(long, global = true)]
    pub input: Option<String>,
    /// Witness resource: bell | flat | state
    #[arg(long, global = true)]
    pub resource: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum CommandArg {
    /// Minimum joint cost and frameness of one state
    Cost,
    /// Cost against N with log-log slopes
    Scaling,
    /// Monte Carlo of the one-way synchronization protocol
    SyncSim,
    /// Teleportation fidelity under frame mismatch
    TeleportDemo,
    /// Algebraic no-go witness
    Witness,
    /// Finite-group frame alignment
    Align,
}

impl From<CommandArg> for Command {
    fn from(c: CommandArg) -> Self {
        match c {
            CommandArg::Cost => Command::Cost,
            CommandArg::Scaling => Command::Scaling,
            CommandArg::SyncSim => Command::SyncSim,
            CommandArg::TeleportDemo => Command::TeleportDemo,
            CommandArg::Witness => Command::Witness,
            CommandArg::Align => Command::Align,
        }
    }
}

impl Cli {
    /// File config with flags applied on top.
    pub fn effective_config(&self) -> Result<RunConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::from_file(path)?,
            None => RunConfig::default(),
        };
        if let Some(s) = &self.state {
            cfg.apply_state_arg(s)?;
        }
        if let Some(c) = &self.cost {
            cfg.apply_cost_arg(c)?;
        }
        if let Some(q) = self.q_max {
            let spec = cfg.cost.get_or_insert_with(|| config::CostSpec {
                kind: "likelihood".into(),
                cq: None,
                q_max: None,
            });
            spec.q_max = Some(q);
        }
        if let Some(i) = &self.input {
            cfg.input = Some(config::parse_input_arg(i)?);
        }
        if self.n.is_some() && self.n_range.is_some() {
            return Err(CliError::Usage(
                "--N and --N-range are mutually exclusive".into(),
            ));
        }
        if self.n.is_some() {
            cfg.n_range = None;
        }
        if self.n_range.is_some() {
            cfg.n = None;
        }
        cfg.merge(RunConfig {
            n: self.n,
            n_range: self.n_range.clone(),
            seed: self.seed,
            trials: self.trials,
            d: self.d,
            grid: self.grid,
            families: self.families.clone(),
            resource: self.resource.clone(),
            oracle: self.oracle,
            degrees: self.degrees,
            ..RunConfig::default()
        });
        Ok(cfg)
    }
}

/// Applies `FRAME_SYNC_THREADS` to the global thread pool when set.
pub fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("FRAME_SYNC_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| {
            CliError::Usage(format!(
                "FRAME_SYNC_THREADS: `{value}` is not a positive integer"
            ))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("FRAME_SYNC_THREADS: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file_fields() {
        let dir = std::env::temp_dir().join(format!("frame-sync-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cfg.json");
        std::fs::write(&path, r#"{"family":"flat","N":3,"seed":9,"trials":500}"#).unwrap();
        let cli = Cli::parse_from([
            "frame-sync",
            "sync-sim",
            "--config",
            path.to_str().unwrap(),
            "--N",
            "5",
            "--cost",
            "likelihood",
        ]);
        let cfg = cli.effective_config().unwrap();
        assert_eq!(cfg.n, Some(5));
        assert_eq!(cfg.seed, Some(9));
        assert_eq!(cfg.trials, Some(500));
        assert_eq!(cfg.cost.unwrap().kind, "likelihood");
        std::fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn range_flag_replaces_file_n() {
        let cli = Cli::parse_from([
            "frame-sync",
            "scaling",
            "--N-range",
            "2..9",
            "--families",
            "flat,optimal",
        ]);
        let cfg = cli.effective_config().unwrap();
        assert_eq!(cfg.n_values().unwrap(), (2..=9).collect::<Vec<_>>());
        assert_eq!(cfg.families.unwrap(), vec!["flat", "optimal"]);
    }

    #[test]
    fn missing_config_file_is_usage_error() {
        let cli = Cli::parse_from(["frame-sync", "cost", "--config", "/nonexistent/x.json"]);
        assert!(matches!(cli.effective_config(), Err(CliError::Usage(_))));
    }
}
