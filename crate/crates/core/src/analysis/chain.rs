//! Exact one-step Markov chains over canonical motif states.
//!
//! Each motif is played in isolation: the whole dyad or triad is the
//! selected unit at every step. Every branch of one step (sign rewrites of
//! mixed edges times invasion choices) is enumerated with its exact
//! probability and folded onto the canonical successor.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::dynamics::ModelParams;
use crate::game::{play_dyad, play_triad, Action, StrategyType};
use crate::graph::Sign;

use super::motif::{enumerate_dyad_states, enumerate_triad_states, MotifKind, MotifState};

/// Probabilities at or below this are treated as impossible branches.
const ZERO: f64 = 1e-15;

/// How a branch changed participant types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TypeChange {
    None,
    /// The invader strictly out-earned the target.
    Strict,
    /// Invader and target had equal payoffs.
    Drift,
}

/// One exact outcome of a single step from a labeled motif.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Branch {
    pub next: MotifState,
    pub probability: f64,
    pub change: TypeChange,
}

fn sign_branches(actions: [Action; 2], current: Sign, params: &ModelParams) -> Vec<(Sign, f64)> {
    match actions {
        [Action::Defect, Action::Defect] => vec![(Sign::Negative, 1.0)],
        [Action::Cooperate, Action::Cooperate] => vec![(Sign::Positive, 1.0)],
        _ => {
            let stay = 1.0 - params.p_pos - params.p_neg;
            [
                (Sign::Positive, params.p_pos),
                (Sign::Negative, params.p_neg),
                (current, stay),
            ]
            .into_iter()
            .filter(|&(_, p)| p > ZERO)
            .collect()
        }
    }
}

/// `(types after, probability, change)` for every invasion outcome.
fn invasion_branches(
    types: &[StrategyType],
    payoffs: &[f64],
    params: &ModelParams,
) -> Vec<(Vec<StrategyType>, f64, TypeChange)> {
    let mut out = Vec::new();
    if 1.0 - params.p_inv > ZERO {
        out.push((types.to_vec(), 1.0 - params.p_inv, TypeChange::None));
    }
    let best = payoffs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let leaders: Vec<usize> = (0..types.len()).filter(|&i| payoffs[i] == best).collect();
    let targets_per_leader = (types.len() - 1) as f64;
    for &invader in &leaders {
        for target in (0..types.len()).filter(|&j| j != invader) {
            let p = params.p_inv / leaders.len() as f64 / targets_per_leader;
            let mut next = types.to_vec();
            next[target] = types[invader];
            let change = if types[target] == types[invader] {
                TypeChange::None
            } else if payoffs[target] == payoffs[invader] {
                TypeChange::Drift
            } else {
                TypeChange::Strict
            };
            out.push((next, p, change));
        }
    }
    out
}

/// Exact distribution of one step from a (labeled) motif. Branches are not
/// merged; successors keep the participant labels of `state`.
pub fn step_distribution(state: &MotifState, params: &ModelParams) -> Vec<Branch> {
    let m = &params.payoffs;
    let mut out = Vec::new();
    match *state {
        MotifState::Dyad { types, sign } => {
            let game = play_dyad(types[0], types[1], sign, m);
            for (new_sign, ps) in sign_branches(game.actions, sign, params) {
                for (next, pi, change) in invasion_branches(&types, &game.payoffs, params) {
                    out.push(Branch {
                        next: MotifState::Dyad {
                            types: [next[0], next[1]],
                            sign: new_sign,
                        },
                        probability: ps * pi,
                        change,
                    });
                }
            }
        }
        MotifState::Triad { types, signs } => {
            let game = play_triad(types, signs, m);
            let per_edge: Vec<Vec<(Sign, f64)>> = (0..3)
                .map(|e| sign_branches(game.edge_actions[e], signs[e], params))
                .collect();
            let invasions = invasion_branches(&types, &game.payoffs, params);
            for &(s0, p0) in &per_edge[0] {
                for &(s1, p1) in &per_edge[1] {
                    for &(s2, p2) in &per_edge[2] {
                        for (next, pi, change) in &invasions {
                            out.push(Branch {
                                next: MotifState::Triad {
                                    types: [next[0], next[1], next[2]],
                                    signs: [s0, s1, s2],
                                },
                                probability: p0 * p1 * p2 * pi,
                                change: *change,
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

/// Outgoing edge of a [`TransitionGraph`] state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Transition {
    pub to: usize,
    pub probability: f64,
    /// Some contributing branch changed a type through a strict payoff win.
    pub strict: bool,
    /// Some contributing branch changed a type through equal-payoff invasion.
    pub drift: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransitionGraph {
    pub kind: MotifKind,
    pub params: ModelParams,
    pub states: Vec<MotifState>,
    /// Per state, transitions sorted by target index.
    pub edges: Vec<Vec<Transition>>,
    /// Per state, whether it is absorbing.
    pub absorbing: Vec<bool>,
    #[serde(skip)]
    index: HashMap<MotifState, usize>,
}

impl TransitionGraph {
    fn build(kind: MotifKind, states: Vec<MotifState>, params: &ModelParams) -> Self {
        let index: HashMap<MotifState, usize> = states.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let mut edges = Vec::with_capacity(states.len());
        for state in &states {
            let mut acc: BTreeMap<usize, Transition> = BTreeMap::new();
            for branch in step_distribution(state, params) {
                let to = index[&branch.next.canonical()];
                let entry = acc.entry(to).or_insert(Transition {
                    to,
                    probability: 0.0,
                    strict: false,
                    drift: false,
                });
                entry.probability += branch.probability;
                entry.strict |= branch.change == TypeChange::Strict;
                entry.drift |= branch.change == TypeChange::Drift;
            }
            edges.push(acc.into_values().collect::<Vec<_>>());
        }
        let absorbing = edges
            .iter()
            .enumerate()
            .map(|(i, out)| out.len() == 1 && out[0].to == i)
            .collect();
        Self {
            kind,
            params: *params,
            states,
            edges,
            absorbing,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Index of a state, canonicalizing first.
    pub fn index_of(&self, state: &MotifState) -> Option<usize> {
        self.index.get(&state.canonical()).copied()
    }

    /// Probability of moving from `from` to `to` in one step (both canonicalized).
    pub fn probability(&self, from: &MotifState, to: &MotifState) -> f64 {
        let (Some(i), Some(j)) = (self.index_of(from), self.index_of(to)) else {
            return 0.0;
        };
        self.edges[i].iter().find(|t| t.to == j).map_or(0.0, |t| t.probability)
    }
}

pub fn build_dyad_chain(params: &ModelParams) -> TransitionGraph {
    TransitionGraph::build(MotifKind::Dyad, enumerate_dyad_states(), params)
}

pub fn build_triad_chain(params: &ModelParams) -> TransitionGraph {
    TransitionGraph::build(MotifKind::Triad, enumerate_triad_states(), params)
}

/// States whose only transition is a probability-1 self-loop.
pub fn absorbing_states(graph: &TransitionGraph) -> Vec<MotifState> {
    graph
        .states
        .iter()
        .zip(&graph.absorbing)
        .filter(|(_, &a)| a)
        .map(|(s, _)| *s)
        .collect()
}

/// Edge of the type-multiset quotient graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProjectedEdge {
    pub to: usize,
    pub strict: bool,
    pub drift: bool,
}

/// Quotient of a [`TransitionGraph`] by type multiset, signs forgotten.
/// Only transitions between different multisets are kept.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TypeProjection {
    pub kind: MotifKind,
    pub params: ModelParams,
    pub nodes: Vec<Vec<StrategyType>>,
    pub edges: Vec<Vec<ProjectedEdge>>,
}

impl TypeProjection {
    pub fn index_of(&self, multiset: &[StrategyType]) -> Option<usize> {
        let mut key = multiset.to_vec();
        key.sort();
        self.nodes.iter().position(|n| *n == key)
    }

    pub fn has_edge(&self, from: &[StrategyType], to: &[StrategyType]) -> bool {
        match (self.index_of(from), self.index_of(to)) {
            (Some(i), Some(j)) => self.edges[i].iter().any(|e| e.to == j),
            _ => false,
        }
    }

    /// Multisets with no outgoing edge to another multiset.
    pub fn closed(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&i| self.edges[i].is_empty()).collect()
    }

    pub fn label(&self, i: usize) -> String {
        let names: Vec<&str> = self.nodes[i].iter().map(|t| t.as_str()).collect();
        format!("{{{}}}", names.join(","))
    }
}

pub fn project_types(graph: &TransitionGraph) -> TypeProjection {
    let mut nodes: Vec<Vec<StrategyType>> = graph.states.iter().map(|s| s.type_multiset()).collect();
    nodes.sort();
    nodes.dedup();
    let position = |m: &Vec<StrategyType>| nodes.binary_search(m).expect("multiset present");
    let mut acc: Vec<BTreeMap<usize, ProjectedEdge>> = vec![BTreeMap::new(); nodes.len()];
    for (i, out) in graph.edges.iter().enumerate() {
        let from = position(&graph.states[i].type_multiset());
        for t in out {
            let to = position(&graph.states[t.to].type_multiset());
            if to == from {
                continue;
            }
            let e = acc[from].entry(to).or_insert(ProjectedEdge {
                to,
                strict: false,
                drift: false,
            });
            e.strict |= t.strict;
            e.drift |= t.drift;
        }
    }
    TypeProjection {
        kind: graph.kind,
        params: graph.params,
        edges: acc.into_iter().map(|m| m.into_values().collect()).collect(),
        nodes,
    }
}
