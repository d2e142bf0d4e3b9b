//! Configuration, batch execution and artifact writing.

pub mod commands;
pub mod config;
pub mod output;

pub use commands::{cmd_analyze, cmd_simulate, cmd_sweep, run_seed, sweep_rows, AnalysisKind};
pub use config::{Axis, AxisName, AxisValue, Cell, ConfigFile, ExperimentConfig, SweepSpec};
pub use output::{format_number, RunSummary, SweepRow, RUN_CSV_COLUMNS, SWEEP_CSV_COLUMNS};
