//! Evolutionary prisoner's dilemma on signed networks.
//!
//! Agents of three strategy types (unconditional defectors, conditional
//! players and unconditional cooperators) play the prisoner's dilemma along
//! the edges of a static network whose tie signs co-evolve with play. The
//! crate provides:
//!
//! - [`graph`]: signed networks, generators and triangle indexing;
//! - [`game`]: action resolution and payoff evaluation for dyads and triads;
//! - [`dynamics`]: the stochastic select / play / re-sign / invade loop;
//! - [`analysis`]: exact Markov chains over dyad and triad motifs, absorbing
//!   states, dominance and mutant robustness reports, DOT export;
//! - [`harness`]: configuration files, runs, sweeps and artifact writers.

pub mod analysis;
pub mod dynamics;
pub mod error;
pub mod game;
pub mod graph;
pub mod harness;
pub mod rng;

pub use error::{Error, Result};
