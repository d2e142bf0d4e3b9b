//! Dyad and triad motif states and their canonical forms.

use std::fmt;

use serde::Serialize;

use crate::game::{StrategyType, TRIAD_EDGES};
use crate::graph::Sign;

const SIGNS: [Sign; 2] = [Sign::Negative, Sign::Positive];

/// The six vertex relabelings of a triad.
const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MotifKind {
    Dyad,
    Triad,
}

/// A fully specified dyad or triad. Triad signs follow [`TRIAD_EDGES`]
/// order (ab, bc, ca).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MotifState {
    Dyad { types: [StrategyType; 2], sign: Sign },
    Triad { types: [StrategyType; 3], signs: [Sign; 3] },
}

/// Position in [`TRIAD_EDGES`] of the edge joining participants `i` and `j`.
pub fn triad_edge(i: usize, j: usize) -> usize {
    TRIAD_EDGES
        .iter()
        .position(|&(a, b)| (a, b) == (i, j) || (a, b) == (j, i))
        .expect("distinct triad participants")
}

impl MotifState {
    pub fn kind(&self) -> MotifKind {
        match self {
            MotifState::Dyad { .. } => MotifKind::Dyad,
            MotifState::Triad { .. } => MotifKind::Triad,
        }
    }

    pub fn types(&self) -> &[StrategyType] {
        match self {
            MotifState::Dyad { types, .. } => types,
            MotifState::Triad { types, .. } => types,
        }
    }

    pub fn signs(&self) -> &[Sign] {
        match self {
            MotifState::Dyad { sign, .. } => std::slice::from_ref(sign),
            MotifState::Triad { signs, .. } => signs,
        }
    }

    /// Sorted type multiset.
    pub fn type_multiset(&self) -> Vec<StrategyType> {
        let mut t = self.types().to_vec();
        t.sort();
        t
    }

    /// The single type of a homogeneous motif.
    pub fn homogeneous_type(&self) -> Option<StrategyType> {
        let types = self.types();
        types.iter().all(|&t| t == types[0]).then_some(types[0])
    }

    /// Relabels participants: new participant `i` is old participant `perm[i]`.
    pub fn permuted(&self, perm: [usize; 3]) -> Self {
        match *self {
            MotifState::Dyad { types, sign } => {
                if perm[0] == 0 {
                    MotifState::Dyad { types, sign }
                } else {
                    MotifState::Dyad {
                        types: [types[1], types[0]],
                        sign,
                    }
                }
            }
            MotifState::Triad { types, signs } => MotifState::Triad {
                types: perm.map(|old| types[old]),
                signs: TRIAD_EDGES.map(|(i, j)| signs[triad_edge(perm[i], perm[j])]),
            },
        }
    }

    /// Lexicographically smallest relabeling.
    pub fn canonical(&self) -> Self {
        match self {
            MotifState::Dyad { .. } => *self.min(&self.permuted([1, 0, 2])),
            MotifState::Triad { .. } => PERMUTATIONS.iter().map(|&p| self.permuted(p)).min().expect("non-empty"),
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical() == *self
    }

    /// Compact label: `UC+UC` for dyads, `UD,CO,UC[+-+]` for triads.
    pub fn label(&self) -> String {
        match self {
            MotifState::Dyad { types, sign } => format!("{}{}{}", types[0], sign, types[1]),
            MotifState::Triad { types, signs } => format!(
                "{},{},{}[{}{}{}]",
                types[0], types[1], types[2], signs[0], signs[1], signs[2]
            ),
        }
    }
}

impl fmt::Display for MotifState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl Serialize for MotifState {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.label())
    }
}

/// All 18 labeled dyads (3 × 3 types × 2 signs).
pub fn labeled_dyad_states() -> Vec<MotifState> {
    let mut out = Vec::with_capacity(18);
    for a in StrategyType::ALL {
        for b in StrategyType::ALL {
            for sign in SIGNS {
                out.push(MotifState::Dyad { types: [a, b], sign });
            }
        }
    }
    out
}

/// All 216 labeled triads (3³ types × 2³ signs).
pub fn labeled_triad_states() -> Vec<MotifState> {
    let mut out = Vec::with_capacity(216);
    for a in StrategyType::ALL {
        for b in StrategyType::ALL {
            for c in StrategyType::ALL {
                for bits in 0..8usize {
                    let signs = [0, 1, 2].map(|e| SIGNS[bits >> e & 1]);
                    out.push(MotifState::Triad {
                        types: [a, b, c],
                        signs,
                    });
                }
            }
        }
    }
    out
}

fn canonical_set(states: Vec<MotifState>) -> Vec<MotifState> {
    let mut out: Vec<MotifState> = states.iter().map(MotifState::canonical).collect();
    out.sort();
    out.dedup();
    out
}

/// The 12 canonical dyads, sorted.
pub fn enumerate_dyad_states() -> Vec<MotifState> {
    canonical_set(labeled_dyad_states())
}

/// The canonical triads (one per relabeling orbit), sorted.
pub fn enumerate_triad_states() -> Vec<MotifState> {
    canonical_set(labeled_triad_states())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{BTreeSet, HashMap};
    use Sign::*;
    use StrategyType::*;

    /// Orbit count by explicit union-find over the relabeling action,
    /// independent of `canonical`.
    fn orbit_count(states: &[MotifState], perms: &[[usize; 3]]) -> usize {
        let index: HashMap<MotifState, usize> = states.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let mut parent: Vec<usize> = (0..states.len()).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for (i, s) in states.iter().enumerate() {
            for &perm in perms {
                let j = index[&s.permuted(perm)];
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri] = rj;
            }
        }
        (0..states.len()).filter(|&i| find(&mut parent, i) == i).count()
    }

    #[test]
    fn dyad_enumeration() {
        let dyads = enumerate_dyad_states();
        assert_eq!(dyads.len(), 12);
        assert!(dyads.contains(&MotifState::Dyad {
            types: [UC, UC],
            sign: Positive
        }));
        let unique: BTreeSet<_> = dyads.iter().map(|d| d.canonical()).collect();
        assert_eq!(unique.len(), 12);
        assert_eq!(orbit_count(&labeled_dyad_states(), &[[1, 0, 2]]), 12);
    }

    #[test]
    fn triad_enumeration() {
        let labeled = labeled_triad_states();
        assert_eq!(labeled.len(), 216);
        let oracle = orbit_count(&labeled, &PERMUTATIONS);
        // frozen from the orbit oracle (matches Burnside: (216 + 3·36 + 2·6) / 6)
        assert_eq!(oracle, 56);
        assert_eq!(enumerate_triad_states().len(), oracle);

        let all_ud: Vec<_> = enumerate_triad_states()
            .into_iter()
            .filter(|s| s.homogeneous_type() == Some(UD))
            .collect();
        assert_eq!(all_ud.len(), 4);
        let positives: BTreeSet<usize> = all_ud
            .iter()
            .map(|s| s.signs().iter().filter(|&&x| x == Positive).count())
            .collect();
        assert_eq!(positives, BTreeSet::from([0, 1, 2, 3]));
    }

    #[test]
    fn canonicalization_is_idempotent_and_orbit_invariant() {
        for s in labeled_triad_states().into_iter().chain(labeled_dyad_states()) {
            let c = s.canonical();
            assert_eq!(c.canonical(), c);
            for perm in PERMUTATIONS {
                if s.kind() == MotifKind::Dyad && perm[2] != 2 {
                    continue;
                }
                assert_eq!(s.permuted(perm).canonical(), c);
            }
        }
    }

    #[test]
    fn permutation_keeps_edges_attached() {
        // UD at 0, positive edge only between participants 1 and 2
        let s = MotifState::Triad {
            types: [UD, CO, UC],
            signs: [Negative, Positive, Negative],
        };
        let p = s.permuted([2, 0, 1]); // new 0 = old 2 (UC), new 1 = old 0 (UD), new 2 = old 1 (CO)
        assert_eq!(p.types(), &[UC, UD, CO]);
        // old edge 1-2 is new edge 2-0 (index 2)
        assert_eq!(p.signs(), &[Negative, Negative, Positive]);
    }

    #[test]
    fn labels() {
        assert_eq!(
            MotifState::Dyad {
                types: [CO, CO],
                sign: Negative
            }
            .label(),
            "CO-CO"
        );
        assert_eq!(
            MotifState::Triad {
                types: [UD, CO, UC],
                signs: [Positive, Negative, Positive]
            }
            .label(),
            "UD,CO,UC[+-+]"
        );
    }
}
