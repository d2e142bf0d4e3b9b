//! Signed networks with static topology.
//!
//! Node set and edge set are fixed when a [`SignedNetwork`] is built; only
//! edge signs and node strategy types change afterwards. Edges are stored
//! once as `(low, high)` node pairs and addressed by a dense edge id.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::StrategyType;
use crate::rng::SimRng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Negative,
    Positive,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Network topology families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Generator {
    Complete {
        n: usize,
    },
    ErdosRenyi {
        n: usize,
        p: f64,
    },
    /// Ring where every node links to its `k` nearest neighbours on each side.
    RingLattice {
        n: usize,
        k: usize,
    },
}

impl Generator {
    pub fn node_count(&self) -> usize {
        match *self {
            Generator::Complete { n } | Generator::ErdosRenyi { n, .. } | Generator::RingLattice { n, .. } => n,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.node_count();
        if n < 2 {
            return Err(Error::param("n", format!("need at least 2 nodes, got {n}")));
        }
        match *self {
            Generator::Complete { .. } => Ok(()),
            Generator::ErdosRenyi { p, .. } => {
                if (0.0..=1.0).contains(&p) {
                    Ok(())
                } else {
                    Err(Error::param("p", format!("edge probability {p} outside [0, 1]")))
                }
            }
            Generator::RingLattice { n, k } => {
                if k >= 1 && 2 * k < n {
                    Ok(())
                } else {
                    Err(Error::param(
                        "k",
                        format!("ring lattice needs k >= 1 and 2k < n, got n={n}, k={k}"),
                    ))
                }
            }
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Generator::Complete { n } => write!(f, "complete:{n}"),
            Generator::ErdosRenyi { n, p } => write!(f, "er:{n}:{p}"),
            Generator::RingLattice { n, k } => write!(f, "ring:{n}:{k}"),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;

    /// Parses `complete:N`, `er:N:P` and `ring:N:K`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::param(
                "generator",
                format!("cannot parse {s:?}; expected complete:N, er:N:P or ring:N:K"),
            )
        };
        let parts: Vec<&str> = s.trim().split(':').collect();
        let n = || parts.get(1).and_then(|v| v.parse::<usize>().ok()).ok_or_else(bad);
        let generator = match parts.first().map(|k| k.to_ascii_lowercase()).as_deref() {
            Some("complete") if parts.len() == 2 => Generator::Complete { n: n()? },
            Some("er" | "erdos_renyi") if parts.len() == 3 => Generator::ErdosRenyi {
                n: n()?,
                p: parts[2].parse().map_err(|_| bad())?,
            },
            Some("ring" | "ring_lattice") if parts.len() == 3 => Generator::RingLattice {
                n: n()?,
                k: parts[2].parse().map_err(|_| bad())?,
            },
            _ => return Err(bad()),
        };
        generator.validate()?;
        Ok(generator)
    }
}

/// How initial strategy types are assigned.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TypeInit {
    /// Round-robin UD, CO, UC over a shuffled node order; counts differ by at most one.
    #[default]
    EqualMix,
    /// Every node gets the same type.
    All(StrategyType),
}

/// A closed triangle: `nodes` sorted ascending, `edges` are the ids of the
/// edges (n0,n1), (n1,n2), (n2,n0) in that order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Triangle {
    pub nodes: [usize; 3],
    pub edges: [usize; 3],
}

/// Every closed triangle of a network, each listed once, in lexicographic
/// node order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TriangleIndex {
    triangles: Vec<Triangle>,
}

impl TriangleIndex {
    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn get(&self, i: usize) -> Triangle {
        self.triangles[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Triangle> {
        self.triangles.iter()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignedNetwork {
    node_types: Vec<StrategyType>,
    edges: Vec<(usize, usize)>,
    signs: Vec<Sign>,
    /// Sorted `(neighbour, edge id)` per node.
    adjacency: Vec<Vec<(usize, usize)>>,
    lookup: HashMap<(usize, usize), usize>,
    triangles: TriangleIndex,
}

fn key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

impl SignedNetwork {
    /// Builds a network from explicit node types and signed edges.
    pub fn from_parts(node_types: Vec<StrategyType>, edges: &[(usize, usize, Sign)]) -> Result<Self> {
        let n = node_types.len();
        if n < 2 {
            return Err(Error::param("n", format!("need at least 2 nodes, got {n}")));
        }
        let mut pairs = Vec::with_capacity(edges.len());
        let mut signs = Vec::with_capacity(edges.len());
        let mut lookup = HashMap::with_capacity(edges.len());
        let mut adjacency = vec![Vec::new(); n];
        for &(a, b, sign) in edges {
            if a >= n || b >= n {
                return Err(Error::MissingNode(a.max(b)));
            }
            if a == b {
                return Err(Error::param("edges", format!("self-loop on node {a}")));
            }
            let k = key(a, b);
            if lookup.insert(k, pairs.len()).is_some() {
                return Err(Error::param("edges", format!("duplicate edge {}-{}", k.0, k.1)));
            }
            adjacency[k.0].push((k.1, pairs.len()));
            adjacency[k.1].push((k.0, pairs.len()));
            pairs.push(k);
            signs.push(sign);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let mut network = Self {
            node_types,
            edges: pairs,
            signs,
            adjacency,
            lookup,
            triangles: TriangleIndex::default(),
        };
        network.triangles = enumerate_triangles(&network);
        Ok(network)
    }

    pub fn node_count(&self) -> usize {
        self.node_types.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> (usize, usize) {
        self.edges[id]
    }

    pub fn edge_id(&self, a: usize, b: usize) -> Option<usize> {
        self.lookup.get(&key(a, b)).copied()
    }

    pub fn neighbors(&self, node: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[node].iter().map(|&(v, _)| v)
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn edge_sign(&self, id: usize) -> Sign {
        self.signs[id]
    }

    pub fn set_edge_sign(&mut self, id: usize, sign: Sign) {
        self.signs[id] = sign;
    }

    pub fn get_sign(&self, a: usize, b: usize) -> Result<Sign> {
        self.edge_id(a, b)
            .map(|id| self.signs[id])
            .ok_or(Error::MissingEdge(a, b))
    }

    pub fn set_sign(&mut self, a: usize, b: usize, sign: Sign) -> Result<()> {
        let id = self.edge_id(a, b).ok_or(Error::MissingEdge(a, b))?;
        self.signs[id] = sign;
        Ok(())
    }

    pub fn node_types(&self) -> &[StrategyType] {
        &self.node_types
    }

    pub fn node_type(&self, node: usize) -> StrategyType {
        self.node_types[node]
    }

    pub fn set_node_type(&mut self, node: usize, t: StrategyType) {
        self.node_types[node] = t;
    }

    /// Counts indexed by [`StrategyType::index`].
    pub fn type_counts(&self) -> [usize; 3] {
        let mut counts = [0; 3];
        for t in &self.node_types {
            counts[t.index()] += 1;
        }
        counts
    }

    pub fn triangles(&self) -> &TriangleIndex {
        &self.triangles
    }

    /// Fraction of nodes that belong to at least one triangle.
    pub fn triangle_coverage(&self) -> f64 {
        let mut covered = vec![false; self.node_count()];
        for t in self.triangles.iter() {
            for &v in &t.nodes {
                covered[v] = true;
            }
        }
        covered.iter().filter(|&&c| c).count() as f64 / self.node_count() as f64
    }

    pub fn positive_fraction(&self) -> f64 {
        if self.signs.is_empty() {
            return 0.0;
        }
        self.signs.iter().filter(|&&s| s == Sign::Positive).count() as f64 / self.signs.len() as f64
    }
}

/// Builds a network: topology, then one Bernoulli(`q_pos`) sign per edge in
/// edge order, then types. All randomness comes from a stream seeded with `seed`.
pub fn build_network(generator: Generator, q_pos: f64, type_init: TypeInit, seed: u64) -> Result<SignedNetwork> {
    generator.validate()?;
    if !(0.0..=1.0).contains(&q_pos) {
        return Err(Error::param(
            "q_pos",
            format!("sign probability {q_pos} outside [0, 1]"),
        ));
    }
    let mut rng = SimRng::new(seed);
    let n = generator.node_count();
    let mut pairs = Vec::new();
    match generator {
        Generator::Complete { .. } => {
            for a in 0..n {
                for b in a + 1..n {
                    pairs.push((a, b));
                }
            }
        }
        Generator::ErdosRenyi { p, .. } => {
            for a in 0..n {
                for b in a + 1..n {
                    if rng.chance(p) {
                        pairs.push((a, b));
                    }
                }
            }
        }
        Generator::RingLattice { k, .. } => {
            for a in 0..n {
                for offset in 1..=k {
                    pairs.push(key(a, (a + offset) % n));
                }
            }
            pairs.sort_unstable();
        }
    }
    let edges: Vec<(usize, usize, Sign)> = pairs
        .into_iter()
        .map(|(a, b)| {
            let sign = if rng.chance(q_pos) {
                Sign::Positive
            } else {
                Sign::Negative
            };
            (a, b, sign)
        })
        .collect();
    let types = match type_init {
        TypeInit::All(t) => vec![t; n],
        TypeInit::EqualMix => {
            let mut order: Vec<usize> = (0..n).collect();
            rng.shuffle(&mut order);
            let mut types = vec![StrategyType::UD; n];
            for (slot, &node) in order.iter().enumerate() {
                types[node] = StrategyType::ALL[slot % 3];
            }
            types
        }
    };
    SignedNetwork::from_parts(types, &edges)
}

/// Lists every closed triangle by merging sorted neighbour lists of each
/// edge's endpoints.
pub fn enumerate_triangles(network: &SignedNetwork) -> TriangleIndex {
    let mut triangles = Vec::new();
    for (id_ab, &(a, b)) in network.edges.iter().enumerate() {
        let (na, nb) = (&network.adjacency[a], &network.adjacency[b]);
        let (mut i, mut j) = (0, 0);
        while i < na.len() && j < nb.len() {
            let (va, ea) = na[i];
            let (vb, eb) = nb[j];
            match va.cmp(&vb) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    if va > b {
                        // nodes a < b < c; edges ab, bc, ca
                        triangles.push(Triangle {
                            nodes: [a, b, va],
                            edges: [id_ab, eb, ea],
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    }
    triangles.sort_unstable_by_key(|t| t.nodes);
    TriangleIndex { triangles }
}
