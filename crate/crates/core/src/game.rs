//! Strategy types, action resolution and prisoner's dilemma payoffs.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Sign;

/// The three strategy types an agent can carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum StrategyType {
    /// Unconditional defector.
    UD,
    /// Conditional player: cooperates across positive ties, defects across negative ones.
    CO,
    /// Unconditional cooperator.
    UC,
}

impl StrategyType {
    pub const ALL: [StrategyType; 3] = [StrategyType::UD, StrategyType::CO, StrategyType::UC];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn as_str(self) -> &'static str {
        match self {
            StrategyType::UD => "UD",
            StrategyType::CO => "CO",
            StrategyType::UC => "UC",
        }
    }
}

impl fmt::Display for StrategyType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StrategyType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "UD" => Ok(StrategyType::UD),
            "CO" => Ok(StrategyType::CO),
            "UC" => Ok(StrategyType::UC),
            other => Err(Error::param(
                "strategy",
                format!("unknown strategy type {other:?} (expected UD, CO or UC)"),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Action {
    Cooperate,
    Defect,
}

impl Action {
    pub fn short(self) -> char {
        match self {
            Action::Cooperate => 'C',
            Action::Defect => 'D',
        }
    }
}

/// Payoffs of the one-shot prisoner's dilemma. Always satisfies `T > R > P > S`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPayoffs", into = "RawPayoffs")]
pub struct PayoffMatrix {
    temptation: f64,
    reward: f64,
    punishment: f64,
    sucker: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
struct RawPayoffs {
    #[serde(rename = "T")]
    t: f64,
    #[serde(rename = "R")]
    r: f64,
    #[serde(rename = "P")]
    p: f64,
    #[serde(rename = "S")]
    s: f64,
}

impl TryFrom<RawPayoffs> for PayoffMatrix {
    type Error = Error;

    fn try_from(raw: RawPayoffs) -> Result<Self> {
        PayoffMatrix::new(raw.t, raw.r, raw.p, raw.s)
    }
}

impl From<PayoffMatrix> for RawPayoffs {
    fn from(m: PayoffMatrix) -> Self {
        RawPayoffs {
            t: m.temptation,
            r: m.reward,
            p: m.punishment,
            s: m.sucker,
        }
    }
}

impl Default for PayoffMatrix {
    fn default() -> Self {
        Self {
            temptation: 5.0,
            reward: 3.0,
            punishment: 1.0,
            sucker: 0.0,
        }
    }
}

impl PayoffMatrix {
    /// Builds a matrix, rejecting anything that is not a strict prisoner's
    /// dilemma. `2R <= T + S` is accepted with a logged warning.
    pub fn new(t: f64, r: f64, p: f64, s: f64) -> Result<Self> {
        if ![t, r, p, s].iter().all(|v| v.is_finite()) {
            return Err(Error::param("payoffs", "payoff values must be finite"));
        }
        if !(t > r && r > p && p > s) {
            return Err(Error::param(
                "payoffs",
                format!("need T > R > P > S, got T={t}, R={r}, P={p}, S={s}"),
            ));
        }
        if 2.0 * r <= t + s {
            log::warn!("payoff matrix has 2R <= T + S (T={t}, R={r}, S={s})");
        }
        Ok(Self {
            temptation: t,
            reward: r,
            punishment: p,
            sucker: s,
        })
    }

    pub fn t(&self) -> f64 {
        self.temptation
    }
    pub fn r(&self) -> f64 {
        self.reward
    }
    pub fn p(&self) -> f64 {
        self.punishment
    }
    pub fn s(&self) -> f64 {
        self.sucker
    }

    /// Payoff to a player choosing `own` against an opponent choosing `other`.
    pub fn payoff(&self, own: Action, other: Action) -> f64 {
        match (own, other) {
            (Action::Cooperate, Action::Cooperate) => self.reward,
            (Action::Cooperate, Action::Defect) => self.sucker,
            (Action::Defect, Action::Cooperate) => self.temptation,
            (Action::Defect, Action::Defect) => self.punishment,
        }
    }
}

/// Result of a single game on one edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DyadOutcome {
    pub actions: [Action; 2],
    pub payoffs: [f64; 2],
}

/// Result of the three games inside a closed triangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriadOutcome {
    /// Action pair per edge in [`TRIAD_EDGES`] order, each pair ordered as
    /// the edge's endpoints.
    pub edge_actions: [[Action; 2]; 3],
    /// Total payoff per participant (sum over its two games).
    pub payoffs: [f64; 3],
}

/// Participant pairs of a triad's edges: ab, bc, ca.
pub const TRIAD_EDGES: [(usize, usize); 3] = [(0, 1), (1, 2), (2, 0)];

pub fn resolve_action(strategy: StrategyType, sign_to_opponent: Sign) -> Action {
    match (strategy, sign_to_opponent) {
        (StrategyType::UD, _) => Action::Defect,
        (StrategyType::UC, _) => Action::Cooperate,
        (StrategyType::CO, Sign::Positive) => Action::Cooperate,
        (StrategyType::CO, Sign::Negative) => Action::Defect,
    }
}

pub fn play_dyad(a: StrategyType, b: StrategyType, sign: Sign, m: &PayoffMatrix) -> DyadOutcome {
    let actions = [resolve_action(a, sign), resolve_action(b, sign)];
    DyadOutcome {
        actions,
        payoffs: [m.payoff(actions[0], actions[1]), m.payoff(actions[1], actions[0])],
    }
}

/// Plays the three pairwise games of a triangle. `signs` follow
/// [`TRIAD_EDGES`] order.
pub fn play_triad(types: [StrategyType; 3], signs: [Sign; 3], m: &PayoffMatrix) -> TriadOutcome {
    let mut edge_actions = [[Action::Defect; 2]; 3];
    let mut payoffs = [0.0; 3];
    for (e, &(i, j)) in TRIAD_EDGES.iter().enumerate() {
        let game = play_dyad(types[i], types[j], signs[e], m);
        edge_actions[e] = game.actions;
        payoffs[i] += game.payoffs[0];
        payoffs[j] += game.payoffs[1];
    }
    TriadOutcome { edge_actions, payoffs }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Dominance {
    XWins,
    YWins,
    Tie,
}

/// Which of `x` and `y` earns strictly more in a single game across a tie of `sign`.
pub fn pairwise_dominance(x: StrategyType, y: StrategyType, sign: Sign, m: &PayoffMatrix) -> Dominance {
    let game = play_dyad(x, y, sign, m);
    let [px, py] = game.payoffs;
    if px > py {
        Dominance::XWins
    } else if py > px {
        Dominance::YWins
    } else {
        Dominance::Tie
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use Action::*;
    use Sign::*;
    use StrategyType::*;

    fn strategy() -> impl proptest::strategy::Strategy<Value = StrategyType> {
        prop::sample::select(StrategyType::ALL.to_vec())
    }

    fn sign() -> impl proptest::strategy::Strategy<Value = Sign> {
        prop::sample::select(vec![Positive, Negative])
    }

    #[test]
    fn actions_follow_type_and_sign() {
        assert_eq!(resolve_action(UD, Positive), Defect);
        assert_eq!(resolve_action(CO, Negative), Defect);
        assert_eq!(resolve_action(CO, Positive), Cooperate);
        assert_eq!(resolve_action(UC, Negative), Cooperate);
    }

    #[test]
    fn dyad_examples() {
        let m = PayoffMatrix::default();
        let g = play_dyad(UD, UC, Positive, &m);
        assert_eq!(g.actions, [Defect, Cooperate]);
        assert_eq!(g.payoffs, [5.0, 0.0]);
        let g = play_dyad(CO, CO, Negative, &m);
        assert_eq!(g.actions, [Defect, Defect]);
        assert_eq!(g.payoffs, [1.0, 1.0]);
        let g = play_dyad(UC, UC, Negative, &m);
        assert_eq!(g.actions, [Cooperate, Cooperate]);
        assert_eq!(g.payoffs, [3.0, 3.0]);
    }

    #[test]
    fn triad_examples() {
        let m = PayoffMatrix::default();
        assert_eq!(play_triad([UC, UC, UD], [Positive; 3], &m).payoffs, [3.0, 3.0, 10.0]);
        assert_eq!(play_triad([CO, CO, CO], [Negative; 3], &m).payoffs, [2.0, 2.0, 2.0]);
        for bits in 0..8u8 {
            let signs = [0, 1, 2].map(|e| if bits >> e & 1 == 1 { Positive } else { Negative });
            assert_eq!(play_triad([UD, UD, UD], signs, &m).payoffs, [2.0, 2.0, 2.0]);
        }
    }

    #[test]
    fn dominance_examples() {
        let m = PayoffMatrix::default();
        assert_eq!(pairwise_dominance(UD, UC, Negative, &m), Dominance::XWins);
        assert_eq!(pairwise_dominance(UD, CO, Positive, &m), Dominance::XWins);
        assert_eq!(pairwise_dominance(UD, CO, Negative, &m), Dominance::Tie);
        assert_eq!(pairwise_dominance(UC, CO, Positive, &m), Dominance::Tie);
    }

    #[test]
    fn matrix_rejects_non_pd() {
        assert!(PayoffMatrix::new(5.0, 3.0, 1.0, 0.0).is_ok());
        assert!(PayoffMatrix::new(3.0, 5.0, 1.0, 0.0).is_err());
        assert!(PayoffMatrix::new(5.0, 3.0, 3.0, 0.0).is_err());
        assert!(PayoffMatrix::new(5.0, 3.0, 1.0, f64::NAN).is_err());
        // 2R <= T + S only warns
        assert!(PayoffMatrix::new(10.0, 3.0, 1.0, 0.0).is_ok());
    }

    #[test]
    fn matrix_serde_validates() {
        let m: PayoffMatrix = serde_json::from_str(r#"{"T":4,"R":3,"P":2,"S":1}"#).unwrap();
        assert_eq!(m.t(), 4.0);
        assert!(serde_json::from_str::<PayoffMatrix>(r#"{"T":1,"R":3,"P":2,"S":1}"#).is_err());
    }

    #[test]
    fn triad_is_sum_of_dyads_exhaustive() {
        let m = PayoffMatrix::default();
        let mut checked = 0;
        for a in StrategyType::ALL {
            for b in StrategyType::ALL {
                for c in StrategyType::ALL {
                    for bits in 0..8u8 {
                        let signs = [0, 1, 2].map(|e| if bits >> e & 1 == 1 { Positive } else { Negative });
                        let types = [a, b, c];
                        let triad = play_triad(types, signs, &m);
                        let mut sum = [0.0; 3];
                        for (e, &(i, j)) in TRIAD_EDGES.iter().enumerate() {
                            let d = play_dyad(types[i], types[j], signs[e], &m);
                            assert_eq!(triad.edge_actions[e], d.actions);
                            sum[i] += d.payoffs[0];
                            sum[j] += d.payoffs[1];
                        }
                        assert_eq!(triad.payoffs, sum);
                        for p in triad.payoffs {
                            assert!((2.0 * m.s()..=2.0 * m.t()).contains(&p));
                        }
                        checked += 1;
                    }
                }
            }
        }
        assert_eq!(checked, 216);
    }

    proptest! {
        #[test]
        fn dyad_symmetry(a in strategy(), b in strategy(), s in sign()) {
            let m = PayoffMatrix::default();
            let ab = play_dyad(a, b, s, &m);
            let ba = play_dyad(b, a, s, &m);
            prop_assert_eq!(ab.payoffs, [ba.payoffs[1], ba.payoffs[0]]);
            prop_assert_eq!(ab.actions, [ba.actions[1], ba.actions[0]]);
        }

        #[test]
        fn unconditional_types_ignore_sign(
            a in prop::sample::select(vec![UD, UC]),
            b in prop::sample::select(vec![UD, UC]),
        ) {
            let m = PayoffMatrix::default();
            prop_assert_eq!(play_dyad(a, b, Positive, &m), play_dyad(a, b, Negative, &m));
        }

        #[test]
        fn dominance_antisymmetric(x in strategy(), y in strategy(), s in sign(),
                                   s_ in -10.0f64..0.0, gaps in prop::array::uniform3(0.01f64..5.0)) {
            let p = s_ + gaps[0];
            let r = p + gaps[1];
            let t = r + gaps[2];
            let m = PayoffMatrix::new(t, r, p, s_).unwrap();
            let xy = pairwise_dominance(x, y, s, &m);
            let yx = pairwise_dominance(y, x, s, &m);
            prop_assert_eq!(xy == Dominance::XWins, yx == Dominance::YWins);
            prop_assert_eq!(xy == Dominance::Tie, yx == Dominance::Tie);
        }
    }
}
