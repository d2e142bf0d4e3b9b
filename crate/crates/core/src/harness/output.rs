//! Artifact formats.
//!
//! Per-run time series CSV (`run_seed<N>.csv`):
//! `step,frac_UD,frac_CO,frac_UC,frac_pos_edges,frac_mutual_coop_edges`
//!
//! Sweep aggregate CSV (`sweep.csv`):
//! `cell,generator,mode,p_pos,p_neg,p_inv,q_pos,seed,absorbed,steps,frac_UD,frac_CO,frac_UC,frac_pos_edges,frac_mutual_coop_edges`
//!
//! Both CSV files start with `# ` comment lines carrying the JSON config
//! echo; the header row follows. Numbers are written with at most 12
//! significant digits, no exponent, `.` as decimal separator.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::dynamics::{RunResult, Sample};
use crate::error::Result;
use crate::game::StrategyType;

use super::config::ExperimentConfig;

pub const RUN_CSV_COLUMNS: [&str; 6] = [
    "step",
    "frac_UD",
    "frac_CO",
    "frac_UC",
    "frac_pos_edges",
    "frac_mutual_coop_edges",
];

pub const SWEEP_CSV_COLUMNS: [&str; 15] = [
    "cell",
    "generator",
    "mode",
    "p_pos",
    "p_neg",
    "p_inv",
    "q_pos",
    "seed",
    "absorbed",
    "steps",
    "frac_UD",
    "frac_CO",
    "frac_UC",
    "frac_pos_edges",
    "frac_mutual_coop_edges",
];

/// Decimal rendering with at most 12 significant digits.
pub fn format_number(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return if v.is_finite() { "0".into() } else { v.to_string() };
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).clamp(0, 300) as usize;
    let s = format!("{v:.decimals$}");
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        &s
    };
    if s == "-0" {
        "0".into()
    } else {
        s.to_string()
    }
}

fn comment_block(out: &mut String, lines: &[String]) {
    for line in lines {
        out.push_str("# ");
        out.push_str(line);
        out.push('\n');
    }
}

fn sample_row(s: &Sample) -> String {
    let [ud, co, uc] = s.type_fractions;
    [
        s.step.to_string(),
        format_number(ud),
        format_number(co),
        format_number(uc),
        format_number(s.positive_fraction),
        format_number(s.mutual_coop_fraction),
    ]
    .join(",")
}

pub fn run_csv(config_json: &str, seed: u64, result: &RunResult) -> String {
    let mut out = String::new();
    comment_block(&mut out, &[format!("config: {config_json}"), format!("seed: {seed}")]);
    out.push_str(&RUN_CSV_COLUMNS.join(","));
    out.push('\n');
    for s in &result.time_series {
        out.push_str(&sample_row(s));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct TypeCounts {
    #[serde(rename = "UD")]
    pub ud: usize,
    #[serde(rename = "CO")]
    pub co: usize,
    #[serde(rename = "UC")]
    pub uc: usize,
}

/// JSON summary of one run.
#[derive(Debug, Clone, Serialize)]
pub struct RunSummary {
    pub config: ExperimentConfig,
    pub seed: u64,
    pub absorbed: bool,
    pub steps: u64,
    pub node_count: usize,
    pub edge_count: usize,
    pub triangle_count: usize,
    /// Fraction of nodes inside at least one triangle.
    pub triangle_coverage: f64,
    pub final_type_counts: TypeCounts,
    pub final_positive_fraction: f64,
    pub final_mutual_coop_fraction: f64,
}

impl RunSummary {
    pub fn new(config: &ExperimentConfig, seed: u64, result: &RunResult) -> Self {
        let net = &result.final_network;
        let counts = net.type_counts();
        let last = result.final_sample();
        Self {
            config: config.clone(),
            seed,
            absorbed: result.absorbed,
            steps: result.steps_taken,
            node_count: net.node_count(),
            edge_count: net.edge_count(),
            triangle_count: net.triangles().len(),
            triangle_coverage: result.triangle_coverage,
            final_type_counts: TypeCounts {
                ud: counts[StrategyType::UD.index()],
                co: counts[StrategyType::CO.index()],
                uc: counts[StrategyType::UC.index()],
            },
            final_positive_fraction: last.positive_fraction,
            final_mutual_coop_fraction: last.mutual_coop_fraction,
        }
    }
}

/// One row of the sweep aggregate.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub cell: usize,
    pub config: ExperimentConfig,
    pub seed: u64,
    pub absorbed: bool,
    pub steps: u64,
    pub last: Sample,
}

impl SweepRow {
    pub fn to_csv(&self) -> String {
        let c = &self.config;
        let [ud, co, uc] = self.last.type_fractions;
        [
            self.cell.to_string(),
            c.generator.to_string(),
            c.params.mode.to_string(),
            format_number(c.params.p_pos),
            format_number(c.params.p_neg),
            format_number(c.params.p_inv),
            format_number(c.q_pos),
            self.seed.to_string(),
            self.absorbed.to_string(),
            self.steps.to_string(),
            format_number(ud),
            format_number(co),
            format_number(uc),
            format_number(self.last.positive_fraction),
            format_number(self.last.mutual_coop_fraction),
        ]
        .join(",")
    }
}

pub fn sweep_csv(echo_json: &str, rows: &[SweepRow]) -> String {
    let mut out = String::new();
    comment_block(&mut out, &[format!("sweep: {echo_json}")]);
    out.push_str(&SWEEP_CSV_COLUMNS.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_csv());
        out.push('\n');
    }
    out
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn write_file(dir: &Path, name: &str, contents: &str) -> Result<()> {
    let mut file = fs::File::create(dir.join(name))?;
    file.write_all(contents.as_bytes())?;
    Ok(())
}
