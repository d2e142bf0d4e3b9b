//! The `simulate`, `sweep` and `analyze` commands.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use crate::analysis::{
    absorbing_states, build_dyad_chain, build_triad_chain, dominance_matrix, export_dot, export_projection_dot,
    mutant_robustness, pairwise_dominance_table, project_types, DotOptions, TransitionGraph,
};
use crate::dynamics::{run, Mode, ModelParams, RunResult};
use crate::error::{Error, Result};
use crate::game::StrategyType;
use crate::graph::build_network;

use super::config::{ExperimentConfig, SweepSpec};
use super::output::{run_csv, sweep_csv, to_json, write_file, RunSummary, SweepRow};

/// Offset between the network seed and the dynamics seed of a run, so the
/// two streams differ.
const DYNAMICS_SEED_OFFSET: u64 = 0x9E37_79B9_7F4A_7C15;

/// Builds the network from `seed` and evolves it with `seed + offset`.
pub fn run_seed(config: &ExperimentConfig, seed: u64) -> Result<RunResult> {
    let network = build_network(config.generator, config.q_pos, config.type_init, seed)?;
    run(
        network,
        &config.params,
        config.options,
        seed.wrapping_add(DYNAMICS_SEED_OFFSET),
    )
}

/// One run per seed; writes `run_seed<N>.csv` and `run_seed<N>.json` under `out`.
pub fn cmd_simulate(config: &ExperimentConfig, out: &Path) -> Result<Vec<RunSummary>> {
    config.validate()?;
    fs::create_dir_all(out)?;
    let echo = serde_json::to_string(config)?;
    let mut summaries = Vec::with_capacity(config.seeds.len());
    for &seed in &config.seeds {
        let result = run_seed(config, seed)?;
        log::info!("seed {seed}: absorbed={} steps={}", result.absorbed, result.steps_taken);
        write_file(out, &format!("run_seed{seed}.csv"), &run_csv(&echo, seed, &result))?;
        let summary = RunSummary::new(config, seed, &result);
        write_file(out, &format!("run_seed{seed}.json"), &to_json(&summary)?)?;
        summaries.push(summary);
    }
    Ok(summaries)
}

#[derive(Serialize)]
struct SweepEcho<'a> {
    base: &'a ExperimentConfig,
    sweep: &'a SweepSpec,
}

/// Runs every cell and replicate sequentially without writing anything.
pub fn sweep_rows(spec: &SweepSpec, base: &ExperimentConfig) -> Result<Vec<SweepRow>> {
    base.validate()?;
    let cells = spec.cells(base)?;
    let mut rows = Vec::new();
    for cell in &cells {
        for &seed in &cell.config.seeds {
            let result = run_seed(&cell.config, seed).map_err(|e| Error::Cell {
                cell: format!("{} seed {seed}", cell.describe()),
                source: Box::new(e),
            })?;
            rows.push(SweepRow {
                cell: cell.index,
                config: cell.config.clone(),
                seed,
                absorbed: result.absorbed,
                steps: result.steps_taken,
                last: result.final_sample(),
            });
        }
        log::info!("{} done", cell.describe());
    }
    Ok(rows)
}

/// Writes `sweep.csv` (one row per run) and `sweep.json` (config echo).
pub fn cmd_sweep(spec: &SweepSpec, base: &ExperimentConfig, out: &Path) -> Result<Vec<SweepRow>> {
    let rows = sweep_rows(spec, base)?;
    fs::create_dir_all(out)?;
    let echo = SweepEcho { base, sweep: spec };
    write_file(out, "sweep.csv", &sweep_csv(&serde_json::to_string(&echo)?, &rows))?;
    write_file(out, "sweep.json", &to_json(&echo)?)?;
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnalysisKind {
    Dyads,
    Triads,
    Dominance,
    Robustness,
    All,
}

impl FromStr for AnalysisKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "dyads" => AnalysisKind::Dyads,
            "triads" => AnalysisKind::Triads,
            "dominance" => AnalysisKind::Dominance,
            "robustness" => AnalysisKind::Robustness,
            "all" => AnalysisKind::All,
            other => return Err(Error::config("kind", format!("unknown analysis {other:?}"))),
        })
    }
}

#[derive(Serialize)]
struct TransitionRecord {
    from: String,
    to: String,
    probability: f64,
    strict: bool,
    drift: bool,
}

#[derive(Serialize)]
struct ChainReport {
    params: ModelParams,
    state_count: usize,
    states: Vec<String>,
    absorbing: Vec<String>,
    transitions: Vec<TransitionRecord>,
}

fn chain_report(graph: &TransitionGraph) -> ChainReport {
    let mut transitions = Vec::new();
    for (i, out) in graph.edges.iter().enumerate() {
        for t in out {
            transitions.push(TransitionRecord {
                from: graph.states[i].label(),
                to: graph.states[t.to].label(),
                probability: t.probability,
                strict: t.strict,
                drift: t.drift,
            });
        }
    }
    ChainReport {
        params: graph.params,
        state_count: graph.len(),
        states: graph.states.iter().map(|s| s.label()).collect(),
        absorbing: absorbing_states(graph).iter().map(|s| s.label()).collect(),
        transitions,
    }
}

fn params_header(params: &ModelParams) -> Result<Vec<String>> {
    Ok(vec![format!("params: {}", serde_json::to_string(params)?)])
}

fn chain_summary(title: &str, graph: &TransitionGraph) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{title}");
    let _ = writeln!(s, "states: {}", graph.len());
    let absorbing = absorbing_states(graph);
    let _ = writeln!(s, "absorbing states ({}):", absorbing.len());
    for a in absorbing {
        let _ = writeln!(s, "  {a}");
    }
    s
}

fn analyze_dyads(params: &ModelParams, out: &Path, written: &mut Vec<String>) -> Result<()> {
    let graph = build_dyad_chain(params);
    let header = params_header(params)?;
    let options = DotOptions {
        name: "dyads".into(),
        header,
        ..Default::default()
    };
    write_file(out, "dyads.dot", &export_dot(&graph, &options))?;
    write_file(out, "dyads.json", &to_json(&chain_report(&graph))?)?;
    let mut text = chain_summary("Dyad chain", &graph);
    let _ = writeln!(text, "params: {}", serde_json::to_string(params)?);
    write_file(out, "dyads.txt", &text)?;
    written.extend(["dyads.dot", "dyads.json", "dyads.txt"].map(String::from));
    Ok(())
}

fn analyze_triads(params: &ModelParams, out: &Path, written: &mut Vec<String>) -> Result<()> {
    let graph = build_triad_chain(params);
    let projection = project_types(&graph);
    let header = params_header(params)?;
    let options = DotOptions {
        name: "triads".into(),
        header: header.clone(),
        ..Default::default()
    };
    write_file(out, "triads.dot", &export_dot(&graph, &options))?;
    let options = DotOptions {
        name: "triad_types".into(),
        header,
        ..Default::default()
    };
    write_file(out, "triads_types.dot", &export_projection_dot(&projection, &options))?;
    write_file(out, "triads.json", &to_json(&chain_report(&graph))?)?;

    let mut text = chain_summary("Triad chain", &graph);
    let _ = writeln!(text, "type multisets: {}", projection.nodes.len());
    for (i, edges) in projection.edges.iter().enumerate() {
        let targets: Vec<String> = edges
            .iter()
            .map(|e| {
                let tag = match (e.strict, e.drift) {
                    (true, true) => "strict+drift",
                    (true, false) => "strict",
                    _ => "drift",
                };
                format!("{} ({tag})", projection.label(e.to))
            })
            .collect();
        let targets = if targets.is_empty() {
            "none (closed)".to_string()
        } else {
            targets.join(", ")
        };
        let _ = writeln!(text, "  {} -> {targets}", projection.label(i));
    }
    let _ = writeln!(text, "params: {}", serde_json::to_string(params)?);
    write_file(out, "triads.txt", &text)?;
    written.extend(["triads.dot", "triads_types.dot", "triads.json", "triads.txt"].map(String::from));
    Ok(())
}

fn analyze_dominance(params: &ModelParams, out: &Path, written: &mut Vec<String>) -> Result<()> {
    #[derive(Serialize)]
    struct Report {
        pairwise: Vec<crate::analysis::PairwiseEntry>,
        matrix: crate::analysis::DominanceMatrix,
    }
    let report = Report {
        pairwise: pairwise_dominance_table(&params.payoffs),
        matrix: dominance_matrix(params)?,
    };
    write_file(out, "dominance.json", &to_json(&report)?)?;

    let mut text = String::from("Single-game comparisons (x vs y, sign -> winner)\n");
    for e in &report.pairwise {
        let _ = writeln!(text, "  {} vs {} {}  {:?}", e.x, e.y, e.sign, e.result);
    }
    text.push_str("\nTriad dominance (one invader, two residents; invader fixation per initial signs ab,bc,ca)\n");
    for e in &report.matrix.entries {
        let probs: Vec<String> = e
            .outcomes
            .iter()
            .map(|o| {
                let signs: String = o.initial.signs().iter().map(|s| s.symbol()).collect();
                format!("{signs}:{:.4}", o.invader_fixation)
            })
            .collect();
        let _ = writeln!(
            text,
            "  {} into {}: {:?}  [{}]",
            e.invader,
            e.resident,
            e.label,
            probs.join(" ")
        );
    }
    let _ = writeln!(text, "params: {}", serde_json::to_string(params)?);
    write_file(out, "dominance.txt", &text)?;
    written.extend(["dominance.json", "dominance.txt"].map(String::from));
    Ok(())
}

fn analyze_robustness(params: &ModelParams, out: &Path, written: &mut Vec<String>) -> Result<()> {
    let mut reports = Vec::new();
    for mode in [Mode::Dyadic, Mode::Triadic] {
        for resident in StrategyType::ALL {
            reports.push(mutant_robustness(resident, mode, params)?);
        }
    }
    write_file(out, "robustness.json", &to_json(&reports)?)?;
    let mut text = String::from("Mutant robustness (probability that one mutant takes over)\n");
    for r in &reports {
        for m in &r.mutants {
            let _ = writeln!(
                text,
                "  {:<7} resident {} mutant {}: can_exit={} drift={} exit in [{:.4}, {:.4}]",
                r.mode.to_string(),
                r.resident,
                m.mutant,
                m.can_exit,
                m.drift_possible,
                m.min_exit_probability,
                m.max_exit_probability
            );
        }
    }
    let _ = writeln!(text, "params: {}", serde_json::to_string(params)?);
    write_file(out, "robustness.txt", &text)?;
    written.extend(["robustness.json", "robustness.txt"].map(String::from));
    Ok(())
}

/// Runs the requested analyses; returns the names of the files written.
pub fn cmd_analyze(kind: AnalysisKind, params: &ModelParams, out: &Path) -> Result<Vec<String>> {
    params.validate()?;
    fs::create_dir_all(out)?;
    let mut written = Vec::new();
    if matches!(kind, AnalysisKind::Dyads | AnalysisKind::All) {
        analyze_dyads(params, out, &mut written)?;
    }
    if matches!(kind, AnalysisKind::Triads | AnalysisKind::All) {
        analyze_triads(params, out, &mut written)?;
    }
    if matches!(kind, AnalysisKind::Dominance | AnalysisKind::All) {
        analyze_dominance(params, out, &mut written)?;
    }
    if matches!(kind, AnalysisKind::Robustness | AnalysisKind::All) {
        analyze_robustness(params, out, &mut written)?;
    }
    Ok(written)
}
