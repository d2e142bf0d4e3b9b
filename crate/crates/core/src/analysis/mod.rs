//! Exact analysis of isolated dyads and triads.
//!
//! A motif is a dyad (two agents, one tie) or a closed triad (three agents,
//! three ties) evolving on its own under the same rules as the network
//! dynamics. The resulting finite Markov chains are small (12 and 56
//! canonical states), so everything here is computed exactly: absorbing
//! states, type-multiset projections, absorption probabilities into
//! homogeneous classes, and the dominance and robustness reports built on them.

pub mod absorption;
pub mod chain;
pub mod dominance;
pub mod dot;
pub mod motif;

pub use absorption::{class_absorption, homogeneous_absorption};
pub use chain::{
    absorbing_states, build_dyad_chain, build_triad_chain, project_types, step_distribution, Branch, ProjectedEdge,
    Transition, TransitionGraph, TypeChange, TypeProjection,
};
pub use dominance::{
    dominance_matrix, mutant_robustness, pairwise_dominance_table, DominanceEntry, DominanceLabel, DominanceMatrix,
    InitialOutcome, MutantEntry, PairwiseEntry, RobustnessReport,
};
pub use dot::{export_dot, export_projection_dot, DotOptions};
pub use motif::{
    enumerate_dyad_states, enumerate_triad_states, labeled_dyad_states, labeled_triad_states, MotifKind, MotifState,
};
