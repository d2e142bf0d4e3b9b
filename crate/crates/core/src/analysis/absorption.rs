//! Hitting probabilities of closed state classes.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

use super::chain::TransitionGraph;

/// Maximum residual accepted from the linear solve.
pub const SOLVE_TOLERANCE: f64 = 1e-10;

/// For every state, the probability of eventually entering each class.
///
/// `class_of` assigns stop states to one of `classes` classes (`None` marks
/// a transient state). With `Q` the transient-to-transient block and `B` the
/// one-step transient-to-class block, the result on transient states is
/// `(I - Q)^-1 B`; a stop state has probability 1 for its own class.
pub fn class_absorption(
    graph: &TransitionGraph,
    classes: usize,
    class_of: impl Fn(usize) -> Option<usize>,
) -> Result<Vec<Vec<f64>>> {
    let labels: Vec<Option<usize>> = (0..graph.len()).map(&class_of).collect();
    let transient: Vec<usize> = (0..graph.len()).filter(|&i| labels[i].is_none()).collect();
    let mut position = vec![usize::MAX; graph.len()];
    for (k, &i) in transient.iter().enumerate() {
        position[i] = k;
    }

    let t = transient.len();
    let mut system = DMatrix::<f64>::identity(t, t);
    let mut rhs = DMatrix::<f64>::zeros(t, classes);
    for (row, &i) in transient.iter().enumerate() {
        for edge in &graph.edges[i] {
            match labels[edge.to] {
                None => system[(row, position[edge.to])] -= edge.probability,
                Some(c) => rhs[(row, c)] += edge.probability,
            }
        }
    }

    let solution = if t == 0 {
        DMatrix::zeros(0, classes)
    } else {
        let lu = system.clone().lu();
        let x = lu
            .solve(&rhs)
            .ok_or_else(|| Error::Solve("transient block is singular (a closed class is not labeled)".into()))?;
        let residual = (&system * &x - &rhs).abs().max();
        // Negated so a NaN residual is rejected too.
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(residual <= SOLVE_TOLERANCE) {
            return Err(Error::Solve(format!("residual {residual:e} above tolerance")));
        }
        x
    };

    Ok((0..graph.len())
        .map(|i| match labels[i] {
            Some(c) => {
                let mut v = vec![0.0; classes];
                v[c] = 1.0;
                v
            }
            None => {
                let row: DVector<f64> = solution.row(position[i]).transpose();
                row.iter().copied().collect()
            }
        })
        .collect())
}

/// Absorption into the homogeneous class of each strategy type (indexed by
/// `StrategyType::index`).
pub fn homogeneous_absorption(graph: &TransitionGraph) -> Result<Vec<Vec<f64>>> {
    class_absorption(graph, 3, |i| graph.states[i].homogeneous_type().map(|t| t.index()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::chain::{build_dyad_chain, build_triad_chain};
    use crate::analysis::motif::MotifState;
    use crate::dynamics::ModelParams;
    use crate::game::StrategyType::*;
    use crate::graph::Sign::*;

    /// Independent route: iterate the full transition matrix until the mass
    /// sitting in homogeneous states stops changing.
    fn power_iteration(graph: &TransitionGraph, start: usize) -> [f64; 3] {
        let mut dist = vec![0.0; graph.len()];
        dist[start] = 1.0;
        for _ in 0..20_000 {
            let mut next = vec![0.0; graph.len()];
            for (i, out) in graph.edges.iter().enumerate() {
                for e in out {
                    next[e.to] += dist[i] * e.probability;
                }
            }
            dist = next;
        }
        let mut mass = [0.0; 3];
        for (i, s) in graph.states.iter().enumerate() {
            if let Some(t) = s.homogeneous_type() {
                mass[t.index()] += dist[i];
            }
        }
        mass
    }

    #[test]
    fn matches_power_iteration() {
        for params in [
            ModelParams::default(),
            ModelParams {
                p_pos: 0.25,
                p_neg: 0.25,
                p_inv: 0.5,
                ..Default::default()
            },
        ] {
            for graph in [build_dyad_chain(&params), build_triad_chain(&params)] {
                let exact = homogeneous_absorption(&graph).unwrap();
                for (i, row) in exact.iter().enumerate() {
                    let approx = power_iteration(&graph, i);
                    for c in 0..3 {
                        assert!(
                            (row[c] - approx[c]).abs() < 1e-9,
                            "{} {c}: {} vs {}",
                            graph.states[i],
                            row[c],
                            approx[c]
                        );
                    }
                    assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn dyad_values() {
        let graph = build_dyad_chain(&ModelParams::default());
        let probs = homogeneous_absorption(&graph).unwrap();
        let at = |s: MotifState| probs[graph.index_of(&s).unwrap()].clone();
        // UD strictly beats UC on either sign
        assert_eq!(
            at(MotifState::Dyad {
                types: [UD, UC],
                sign: Positive
            }),
            vec![1.0, 0.0, 0.0]
        );
        // CO vs UD on a negative tie: one drift step, each way with 1/2
        let co_ud = at(MotifState::Dyad {
            types: [UD, CO],
            sign: Negative,
        });
        assert!((co_ud[0] - 0.5).abs() < 1e-12 && (co_ud[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn unlabeled_closed_class_is_an_error() {
        let graph = build_triad_chain(&ModelParams::default());
        // labeling nothing leaves homogeneous closed classes inside the transient block
        assert!(class_absorption(&graph, 1, |_| None).is_err());
    }
}
