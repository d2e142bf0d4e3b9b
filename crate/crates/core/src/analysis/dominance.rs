//! Pairwise dominance, triad dominance matrix and mutant robustness reports.

use serde::Serialize;

use crate::dynamics::{Mode, ModelParams};
use crate::error::Result;
use crate::game::{pairwise_dominance, Dominance, PayoffMatrix, StrategyType};
use crate::graph::Sign;

use super::absorption::homogeneous_absorption;
use super::chain::{build_dyad_chain, build_triad_chain, TransitionGraph, TypeChange};
use super::motif::MotifState;

/// Probabilities closer than this to 0 or 1 are classified as exactly 0 or 1.
pub const CLASSIFY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairwiseEntry {
    pub x: StrategyType,
    pub y: StrategyType,
    pub sign: Sign,
    pub result: Dominance,
}

/// All 3 × 3 × 2 single-game comparisons.
pub fn pairwise_dominance_table(m: &PayoffMatrix) -> Vec<PairwiseEntry> {
    let mut out = Vec::with_capacity(18);
    for x in StrategyType::ALL {
        for y in StrategyType::ALL {
            for sign in [Sign::Positive, Sign::Negative] {
                out.push(PairwiseEntry {
                    x,
                    y,
                    sign,
                    result: pairwise_dominance(x, y, sign, m),
                });
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DominanceLabel {
    Dominates,
    Coexists,
    Repelled,
}

/// Absorption from one initial signed configuration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InitialOutcome {
    pub initial: MotifState,
    /// Probability of ending homogeneous in the invader's (or mutant's) type.
    pub invader_fixation: f64,
    /// Probability of ending homogeneous in the resident type.
    pub resident_fixation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DominanceEntry {
    pub invader: StrategyType,
    pub resident: StrategyType,
    pub label: DominanceLabel,
    pub outcomes: Vec<InitialOutcome>,
}

/// Invader × resident classification over the triad chain.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DominanceMatrix {
    pub params: ModelParams,
    /// Row-major over `StrategyType::ALL` (invader) × `StrategyType::ALL` (resident).
    pub entries: Vec<DominanceEntry>,
}

impl DominanceMatrix {
    pub fn get(&self, invader: StrategyType, resident: StrategyType) -> &DominanceEntry {
        &self.entries[invader.index() * 3 + resident.index()]
    }
}

/// Labeled sign configurations of a triad, ab/bc/ca.
fn sign_configs() -> impl Iterator<Item = [Sign; 3]> {
    (0..8usize).map(|bits| {
        [0, 1, 2].map(|e| {
            if bits >> e & 1 == 1 {
                Sign::Positive
            } else {
                Sign::Negative
            }
        })
    })
}

fn outcomes(
    graph: &TransitionGraph,
    absorption: &[Vec<f64>],
    initials: &[MotifState],
    invader: StrategyType,
    resident: StrategyType,
) -> Vec<InitialOutcome> {
    initials
        .iter()
        .map(|s| {
            let i = graph.index_of(s).expect("initial state in chain");
            InitialOutcome {
                initial: *s,
                invader_fixation: absorption[i][invader.index()],
                resident_fixation: absorption[i][resident.index()],
            }
        })
        .collect()
}

fn classify(outcomes: &[InitialOutcome]) -> DominanceLabel {
    if outcomes.iter().all(|o| o.invader_fixation >= 1.0 - CLASSIFY_TOLERANCE) {
        DominanceLabel::Dominates
    } else if outcomes.iter().all(|o| o.invader_fixation <= CLASSIFY_TOLERANCE) {
        DominanceLabel::Repelled
    } else {
        DominanceLabel::Coexists
    }
}

/// For each ordered pair, one invader among two residents in a triad, over
/// all eight labeled sign configurations.
pub fn dominance_matrix(params: &ModelParams) -> Result<DominanceMatrix> {
    let graph = build_triad_chain(params);
    let absorption = homogeneous_absorption(&graph)?;
    let mut entries = Vec::with_capacity(9);
    for invader in StrategyType::ALL {
        for resident in StrategyType::ALL {
            let initials: Vec<MotifState> = sign_configs()
                .map(|signs| MotifState::Triad {
                    types: [invader, resident, resident],
                    signs,
                })
                .collect();
            let outcomes = outcomes(&graph, &absorption, &initials, invader, resident);
            let label = if invader == resident {
                DominanceLabel::Coexists
            } else {
                classify(&outcomes)
            };
            entries.push(DominanceEntry {
                invader,
                resident,
                label,
                outcomes,
            });
        }
    }
    Ok(DominanceMatrix {
        params: *params,
        entries,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MutantEntry {
    pub mutant: StrategyType,
    /// Some initial configuration lets the mutant take over with positive probability.
    pub can_exit: bool,
    /// Some positive-probability first step changes a type through an
    /// equal-payoff invasion.
    pub drift_possible: bool,
    pub max_exit_probability: f64,
    pub min_exit_probability: f64,
    pub outcomes: Vec<InitialOutcome>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RobustnessReport {
    pub resident: StrategyType,
    pub mode: Mode,
    pub params: ModelParams,
    pub mutants: Vec<MutantEntry>,
}

/// One mutant placed among residents (one resident in a dyad, two in a
/// triad); reports, per initial sign configuration, the probability that
/// the motif leaves the all-resident class for good.
pub fn mutant_robustness(resident: StrategyType, mode: Mode, params: &ModelParams) -> Result<RobustnessReport> {
    let graph = match mode {
        Mode::Dyadic => build_dyad_chain(params),
        Mode::Triadic => build_triad_chain(params),
    };
    let absorption = homogeneous_absorption(&graph)?;
    let mut mutants = Vec::new();
    for mutant in StrategyType::ALL.into_iter().filter(|&m| m != resident) {
        let initials: Vec<MotifState> = match mode {
            Mode::Dyadic => [Sign::Positive, Sign::Negative]
                .into_iter()
                .map(|sign| MotifState::Dyad {
                    types: [mutant, resident],
                    sign,
                })
                .collect(),
            Mode::Triadic => sign_configs()
                .map(|signs| MotifState::Triad {
                    types: [mutant, resident, resident],
                    signs,
                })
                .collect(),
        };
        let drift_possible = initials.iter().any(|s| {
            super::chain::step_distribution(s, params)
                .iter()
                .any(|b| b.change == TypeChange::Drift && b.probability > 0.0)
        });
        let outcomes = outcomes(&graph, &absorption, &initials, mutant, resident);
        let exits = outcomes.iter().map(|o| o.invader_fixation);
        let max_exit_probability = exits.clone().fold(0.0, f64::max);
        let min_exit_probability = exits.fold(1.0, f64::min);
        mutants.push(MutantEntry {
            mutant,
            can_exit: max_exit_probability > CLASSIFY_TOLERANCE,
            drift_possible,
            max_exit_probability,
            min_exit_probability,
            outcomes,
        });
    }
    Ok(RobustnessReport {
        resident,
        mode,
        params: *params,
        mutants,
    })
}
