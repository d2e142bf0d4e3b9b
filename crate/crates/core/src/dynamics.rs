//! The stochastic update loop.
//!
//! One micro-step selects a unit uniformly (an edge in dyadic mode, an
//! indexed triangle in triadic mode), plays the prisoner's dilemma on every
//! edge of the unit, rewrites each played edge's sign from its action pair,
//! and finally lets a maximal-payoff participant invade another participant.
//!
//! Random draws per step, in order: one `below` for the unit; one `unit`
//! per edge whose action pair is mixed; one `unit` for the invasion event;
//! and, if it fires, one `below` for the invader and one for the target.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{play_dyad, play_triad, resolve_action, Action, PayoffMatrix, StrategyType};
use crate::graph::{Sign, SignedNetwork, Triangle};
use crate::rng::SimRng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Dyadic,
    Triadic,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Dyadic => "dyadic",
            Mode::Triadic => "triadic",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "dyadic" => Ok(Mode::Dyadic),
            "triadic" => Ok(Mode::Triadic),
            other => Err(Error::param(
                "mode",
                format!("unknown mode {other:?} (expected dyadic or triadic)"),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Probability that a mixed (C, D) encounter turns the tie positive.
    pub p_pos: f64,
    /// Probability that a mixed encounter turns the tie negative. The
    /// remaining `1 - p_pos - p_neg` leaves the sign unchanged.
    pub p_neg: f64,
    /// Probability that an invasion event happens after play.
    pub p_inv: f64,
    pub mode: Mode,
    pub payoffs: PayoffMatrix,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self {
            p_pos: 0.5,
            p_neg: 0.5,
            p_inv: 1.0,
            mode: Mode::Dyadic,
            payoffs: PayoffMatrix::default(),
        }
    }
}

impl ModelParams {
    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("p_pos", self.p_pos), ("p_neg", self.p_neg), ("p_inv", self.p_inv)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::param(name, format!("probability {v} outside [0, 1]")));
            }
        }
        if self.p_pos + self.p_neg > 1.0 + 1e-12 {
            return Err(Error::param(
                "p_neg",
                format!("p_pos + p_neg must not exceed 1, got {} + {}", self.p_pos, self.p_neg),
            ));
        }
        if self.p_inv <= 0.0 {
            return Err(Error::param("p_inv", "invasion probability must be positive"));
        }
        Ok(())
    }
}

/// The interaction unit picked by one step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unit {
    Edge(usize),
    Triangle(Triangle),
}

/// A network under evolution together with its random stream.
#[derive(Debug, Clone)]
pub struct RunState {
    pub network: SignedNetwork,
    pub step_count: u64,
    pub rng: SimRng,
}

impl RunState {
    pub fn new(network: SignedNetwork, seed: u64) -> Self {
        Self {
            network,
            step_count: 0,
            rng: SimRng::new(seed),
        }
    }
}

/// Checks that `mode` has something to select in `network`.
pub fn check_selectable(network: &SignedNetwork, mode: Mode) -> Result<()> {
    match mode {
        Mode::Dyadic if network.edge_count() == 0 => Err(Error::NoEdges),
        Mode::Triadic if network.triangles().is_empty() => Err(Error::NoTriangles),
        _ => Ok(()),
    }
}

pub fn select_unit(state: &mut RunState, mode: Mode) -> Result<Unit> {
    check_selectable(&state.network, mode)?;
    Ok(match mode {
        Mode::Dyadic => Unit::Edge(state.rng.below(state.network.edge_count())),
        Mode::Triadic => {
            let triangles = state.network.triangles();
            Unit::Triangle(triangles.get(state.rng.below(triangles.len())))
        }
    })
}

/// New sign of a tie after its endpoints played `actions`.
pub fn update_sign(actions: [Action; 2], current: Sign, params: &ModelParams, rng: &mut SimRng) -> Sign {
    match actions {
        [Action::Defect, Action::Defect] => Sign::Negative,
        [Action::Cooperate, Action::Cooperate] => Sign::Positive,
        _ => {
            let u = rng.unit();
            if u < params.p_pos {
                Sign::Positive
            } else if u < params.p_pos + params.p_neg {
                Sign::Negative
            } else {
                current
            }
        }
    }
}

/// A realised invasion: `target` took the type of `invader`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Invasion {
    pub invader: usize,
    pub target: usize,
}

/// With probability `p_inv`, a participant drawn uniformly among those with
/// maximal payoff overwrites the type of a participant drawn uniformly among
/// the rest. `participants` are `(node, total payoff)`.
pub fn apply_invasion(
    network: &mut SignedNetwork,
    participants: &[(usize, f64)],
    params: &ModelParams,
    rng: &mut SimRng,
) -> Option<Invasion> {
    if !rng.chance(params.p_inv) {
        return None;
    }
    let best = participants.iter().map(|&(_, p)| p).fold(f64::NEG_INFINITY, f64::max);
    let leaders: Vec<usize> = (0..participants.len()).filter(|&i| participants[i].1 == best).collect();
    let invader = leaders[rng.below(leaders.len())];
    let others: Vec<usize> = (0..participants.len()).filter(|&i| i != invader).collect();
    let target = others[rng.below(others.len())];
    let (invader, target) = (participants[invader].0, participants[target].0);
    network.set_node_type(target, network.node_type(invader));
    Some(Invasion { invader, target })
}

/// One micro-step. Returns the unit that was played.
pub fn step(state: &mut RunState, params: &ModelParams) -> Result<Unit> {
    let unit = select_unit(state, params.mode)?;
    let net = &mut state.network;
    let m = &params.payoffs;
    match unit {
        Unit::Edge(id) => {
            let (a, b) = net.edge(id);
            let sign = net.edge_sign(id);
            let game = play_dyad(net.node_type(a), net.node_type(b), sign, m);
            let new_sign = update_sign(game.actions, sign, params, &mut state.rng);
            net.set_edge_sign(id, new_sign);
            apply_invasion(
                net,
                &[(a, game.payoffs[0]), (b, game.payoffs[1])],
                params,
                &mut state.rng,
            );
        }
        Unit::Triangle(t) => {
            let types = t.nodes.map(|v| net.node_type(v));
            let signs = t.edges.map(|e| net.edge_sign(e));
            let game = play_triad(types, signs, m);
            for ((actions, sign), edge) in game.edge_actions.into_iter().zip(signs).zip(t.edges) {
                let new_sign = update_sign(actions, sign, params, &mut state.rng);
                net.set_edge_sign(edge, new_sign);
            }
            let participants = [0, 1, 2].map(|i| (t.nodes[i], game.payoffs[i]));
            apply_invasion(net, &participants, params, &mut state.rng);
        }
    }
    state.step_count += 1;
    Ok(unit)
}

fn sign_can_change(actions: [Action; 2], sign: Sign, params: &ModelParams) -> bool {
    match (actions, sign) {
        ([Action::Cooperate, Action::Cooperate], s) => s == Sign::Negative,
        ([Action::Defect, Action::Defect], s) => s == Sign::Positive,
        (_, Sign::Negative) => params.p_pos > 0.0,
        (_, Sign::Positive) => params.p_neg > 0.0,
    }
}

fn invasion_can_change(types: &[StrategyType], payoffs: &[f64], params: &ModelParams) -> bool {
    if params.p_inv <= 0.0 {
        return false;
    }
    let best = payoffs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (0..types.len())
        .filter(|&i| payoffs[i] == best)
        .any(|i| (0..types.len()).any(|j| j != i && types[j] != types[i]))
}

/// True iff no selectable unit can change a sign or a type with positive
/// probability.
pub fn is_absorbing(network: &SignedNetwork, params: &ModelParams) -> bool {
    let m = &params.payoffs;
    match params.mode {
        Mode::Dyadic => network.edges().iter().enumerate().all(|(id, &(a, b))| {
            let sign = network.edge_sign(id);
            let types = [network.node_type(a), network.node_type(b)];
            let game = play_dyad(types[0], types[1], sign, m);
            !sign_can_change(game.actions, sign, params) && !invasion_can_change(&types, &game.payoffs, params)
        }),
        Mode::Triadic => network.triangles().iter().all(|t| {
            let types = t.nodes.map(|v| network.node_type(v));
            let signs = t.edges.map(|e| network.edge_sign(e));
            let game = play_triad(types, signs, m);
            (0..3).all(|e| !sign_can_change(game.edge_actions[e], signs[e], params))
                && !invasion_can_change(&types, &game.payoffs, params)
        }),
    }
}

/// Share of edges whose endpoints both cooperate under the current signs.
pub fn mutual_cooperation_fraction(network: &SignedNetwork) -> f64 {
    if network.edge_count() == 0 {
        return 0.0;
    }
    let coop = network
        .edges()
        .iter()
        .zip(network.signs())
        .filter(|(&(a, b), &s)| {
            resolve_action(network.node_type(a), s) == Action::Cooperate
                && resolve_action(network.node_type(b), s) == Action::Cooperate
        })
        .count();
    coop as f64 / network.edge_count() as f64
}

/// One time-series record.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub step: u64,
    /// Indexed by [`StrategyType::index`]: UD, CO, UC.
    pub type_fractions: [f64; 3],
    pub positive_fraction: f64,
    pub mutual_coop_fraction: f64,
}

impl Sample {
    pub fn of(network: &SignedNetwork, step: u64) -> Self {
        let n = network.node_count() as f64;
        Self {
            step,
            type_fractions: network.type_counts().map(|c| c as f64 / n),
            positive_fraction: network.positive_fraction(),
            mutual_coop_fraction: mutual_cooperation_fraction(network),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunOptions {
    pub max_steps: u64,
    /// Steps between absorption checks.
    pub check_interval: u64,
    /// Steps between time-series samples.
    pub sample_interval: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            max_steps: 1_000_000,
            check_interval: 1000,
            sample_interval: 100,
        }
    }
}

impl RunOptions {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("max_steps", self.max_steps),
            ("check_interval", self.check_interval),
            ("sample_interval", self.sample_interval),
        ] {
            if v == 0 {
                return Err(Error::param(name, "must be at least 1"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub final_types: Vec<StrategyType>,
    pub final_signs: Vec<Sign>,
    pub absorbed: bool,
    pub steps_taken: u64,
    pub time_series: Vec<Sample>,
    /// Fraction of nodes in at least one triangle.
    pub triangle_coverage: f64,
    pub final_network: SignedNetwork,
}

impl RunResult {
    pub fn final_sample(&self) -> Sample {
        *self.time_series.last().expect("time series always has a final record")
    }
}

/// Steps `network` until an absorbing state is detected or `max_steps` is hit.
pub fn run(network: SignedNetwork, params: &ModelParams, options: RunOptions, seed: u64) -> Result<RunResult> {
    params.validate()?;
    options.validate()?;
    check_selectable(&network, params.mode)?;

    let triangle_coverage = network.triangle_coverage();
    let mut state = RunState::new(network, seed);
    let mut time_series = vec![Sample::of(&state.network, 0)];
    let mut absorbed = is_absorbing(&state.network, params);
    while !absorbed && state.step_count < options.max_steps {
        step(&mut state, params)?;
        if state.step_count.is_multiple_of(options.sample_interval) {
            time_series.push(Sample::of(&state.network, state.step_count));
        }
        if state.step_count.is_multiple_of(options.check_interval) {
            absorbed = is_absorbing(&state.network, params);
        }
    }
    if !absorbed {
        absorbed = is_absorbing(&state.network, params);
    }
    if time_series.last().map(|s| s.step) != Some(state.step_count) {
        time_series.push(Sample::of(&state.network, state.step_count));
    }
    Ok(RunResult {
        final_types: state.network.node_types().to_vec(),
        final_signs: state.network.signs().to_vec(),
        absorbed,
        steps_taken: state.step_count,
        time_series,
        triangle_coverage,
        final_network: state.network,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_network, Generator, TypeInit};
    use proptest::prelude::*;
    use Sign::*;
    use StrategyType::*;

    fn pair(a: StrategyType, b: StrategyType, s: Sign) -> SignedNetwork {
        SignedNetwork::from_parts(vec![a, b], &[(0, 1, s)]).unwrap()
    }

    fn triad(types: [StrategyType; 3], signs: [Sign; 3]) -> SignedNetwork {
        SignedNetwork::from_parts(types.to_vec(), &[(0, 1, signs[0]), (1, 2, signs[1]), (0, 2, signs[2])]).unwrap()
    }

    fn binomial_ok(hits: usize, n: usize, p: f64) -> bool {
        let sd = (p * (1.0 - p) / n as f64).sqrt();
        (hits as f64 / n as f64 - p).abs() <= 3.0 * sd
    }

    #[test]
    fn params_validation() {
        assert!(ModelParams::default().validate().is_ok());
        let bad = [
            ModelParams {
                p_pos: 0.7,
                p_neg: 0.5,
                ..Default::default()
            },
            ModelParams {
                p_inv: 0.0,
                ..Default::default()
            },
            ModelParams {
                p_pos: -0.1,
                ..Default::default()
            },
            ModelParams {
                p_inv: 1.5,
                ..Default::default()
            },
        ];
        for p in bad {
            assert!(p.validate().is_err(), "{p:?}");
        }
    }

    #[test]
    fn single_unit_selection() {
        let mut state = RunState::new(triad([UD, CO, UC], [Positive; 3]), 1);
        match select_unit(&mut state, Mode::Triadic).unwrap() {
            Unit::Triangle(t) => assert_eq!(t.nodes, [0, 1, 2]),
            other => panic!("{other:?}"),
        }
        let mut state = RunState::new(pair(UD, UC, Positive), 1);
        assert_eq!(select_unit(&mut state, Mode::Dyadic).unwrap(), Unit::Edge(0));
    }

    #[test]
    fn triadic_without_triangles_is_error() {
        let net = SignedNetwork::from_parts(
            vec![UD; 4],
            &[(0, 1, Positive), (1, 2, Positive), (2, 3, Positive), (3, 0, Positive)],
        )
        .unwrap();
        let mut state = RunState::new(net.clone(), 0);
        assert!(matches!(
            select_unit(&mut state, Mode::Triadic),
            Err(Error::NoTriangles)
        ));
        let params = ModelParams::default().with_mode(Mode::Triadic);
        assert!(matches!(
            run(net, &params, RunOptions::default(), 0),
            Err(Error::NoTriangles)
        ));
        let empty = SignedNetwork::from_parts(vec![UD; 2], &[]).unwrap();
        assert!(matches!(
            run(empty, &ModelParams::default(), RunOptions::default(), 0),
            Err(Error::NoEdges)
        ));
    }

    #[test]
    fn edge_selection_is_uniform() {
        let net = build_network(Generator::Complete { n: 4 }, 0.5, TypeInit::EqualMix, 0).unwrap();
        let mut state = RunState::new(net, 77);
        let draws = 60_000;
        let mut counts = [0usize; 6];
        for _ in 0..draws {
            match select_unit(&mut state, Mode::Dyadic).unwrap() {
                Unit::Edge(e) => counts[e] += 1,
                _ => unreachable!(),
            }
        }
        for c in counts {
            assert!(binomial_ok(c, draws, 1.0 / 6.0), "{counts:?}");
        }
    }

    #[test]
    fn sign_update_rules() {
        let params = ModelParams::default();
        let mut rng = SimRng::new(5);
        use Action::*;
        assert_eq!(update_sign([Defect, Defect], Positive, &params, &mut rng), Negative);
        assert_eq!(
            update_sign([Cooperate, Cooperate], Negative, &params, &mut rng),
            Positive
        );

        let trials = 100_000;
        let pos = (0..trials)
            .filter(|_| update_sign([Cooperate, Defect], Positive, &params, &mut rng) == Positive)
            .count();
        assert!(binomial_ok(pos, trials, 0.5), "{pos}");

        let residual = ModelParams {
            p_pos: 0.2,
            p_neg: 0.3,
            ..Default::default()
        };
        let kept = (0..trials)
            .filter(|_| update_sign([Defect, Cooperate], Negative, &residual, &mut rng) == Negative)
            .count();
        // Negative either by p_neg or by staying unchanged: 0.3 + 0.5
        assert!(binomial_ok(kept, trials, 0.8), "{kept}");
    }

    #[test]
    fn dyad_invasion_higher_payoff_wins() {
        let mut net = pair(UD, UC, Positive);
        let mut rng = SimRng::new(1);
        let inv = apply_invasion(&mut net, &[(0, 5.0), (1, 0.0)], &ModelParams::default(), &mut rng);
        assert_eq!(inv, Some(Invasion { invader: 0, target: 1 }));
        assert_eq!(net.node_types(), &[UD, UD]);
    }

    #[test]
    fn triad_invasion_strict_order() {
        let params = ModelParams::default();
        let mut rng = SimRng::new(2);
        let trials = 40_000;
        let mut targets = [0usize; 3];
        for _ in 0..trials {
            let mut net = triad([UD, CO, UC], [Positive; 3]);
            let inv = apply_invasion(&mut net, &[(0, 9.0), (1, 4.0), (2, 1.0)], &params, &mut rng).unwrap();
            assert_eq!(inv.invader, 0);
            targets[inv.target] += 1;
        }
        assert_eq!(targets[0], 0);
        assert!(binomial_ok(targets[1], trials, 0.5));
    }

    #[test]
    fn triad_invasion_tied_leaders() {
        let params = ModelParams::default();
        let mut rng = SimRng::new(3);
        let trials = 60_000;
        let mut pairs = [[0usize; 3]; 3];
        for _ in 0..trials {
            let mut net = triad([UD, CO, UC], [Positive; 3]);
            let inv = apply_invasion(&mut net, &[(0, 6.0), (1, 6.0), (2, 1.0)], &params, &mut rng).unwrap();
            pairs[inv.invader][inv.target] += 1;
        }
        assert_eq!(pairs[2], [0, 0, 0]);
        // (0,1), (0,2), (1,0), (1,2) each 1/4
        for (i, j) in [(0, 1), (0, 2), (1, 0), (1, 2)] {
            assert!(binomial_ok(pairs[i][j], trials, 0.25), "{pairs:?}");
        }
    }

    #[test]
    fn invasion_respects_p_inv() {
        let params = ModelParams {
            p_inv: 0.3,
            ..Default::default()
        };
        let mut rng = SimRng::new(4);
        let trials = 50_000;
        let events = (0..trials)
            .filter(|_| {
                let mut net = pair(UD, UC, Positive);
                apply_invasion(&mut net, &[(0, 5.0), (1, 0.0)], &params, &mut rng).is_some()
            })
            .count();
        assert!(binomial_ok(events, trials, 0.3));
    }

    #[test]
    fn step_examples() {
        let params = ModelParams::default();
        let mut state = RunState::new(pair(UD, UD, Positive), 0);
        step(&mut state, &params).unwrap();
        assert_eq!(state.network.signs(), &[Negative]);
        assert_eq!(state.network.node_types(), &[UD, UD]);
        assert_eq!(state.step_count, 1);

        // CO vs UD across a negative tie: both defect, equal payoffs
        let trials = 20_000;
        let mut rng_seed_state = RunState::new(pair(CO, UD, Negative), 9);
        let mut co = 0;
        for _ in 0..trials {
            rng_seed_state.network = pair(CO, UD, Negative);
            step(&mut rng_seed_state, &params).unwrap();
            assert_eq!(rng_seed_state.network.signs(), &[Negative]);
            let t = rng_seed_state.network.node_types();
            assert_eq!(t[0], t[1]);
            if t[0] == CO {
                co += 1;
            }
        }
        assert!(binomial_ok(co, trials, 0.5), "{co}");

        let tri = ModelParams::default().with_mode(Mode::Triadic);
        let mut state = RunState::new(triad([CO; 3], [Negative; 3]), 0);
        for _ in 0..10 {
            step(&mut state, &tri).unwrap();
        }
        assert_eq!(state.network.signs(), &[Negative; 3]);
        assert_eq!(state.network.node_types(), &[CO; 3]);
    }

    #[test]
    fn absorbing_examples() {
        let params = ModelParams::default();
        let ud = build_network(Generator::Complete { n: 6 }, 0.0, TypeInit::All(UD), 0).unwrap();
        assert!(is_absorbing(&ud, &params));
        let uc = build_network(Generator::Complete { n: 6 }, 1.0, TypeInit::All(UC), 0).unwrap();
        assert!(is_absorbing(&uc, &params));
        assert!(is_absorbing(&uc, &params.with_mode(Mode::Triadic)));

        let mut mixed = uc.clone();
        mixed.set_node_type(0, UD);
        assert!(!is_absorbing(&mixed, &params));

        // Mixed pair on a positive tie with p_neg = 0 cannot flip its sign,
        // but invasion still changes a type.
        let no_neg = ModelParams {
            p_neg: 0.0,
            ..Default::default()
        };
        assert!(!is_absorbing(&pair(UD, CO, Positive), &no_neg));
        assert!(is_absorbing(&pair(CO, CO, Negative), &params));
        assert!(!is_absorbing(&pair(UD, UD, Positive), &params));
        // Homogeneous CO triangle: any signs are absorbing.
        let tri = params.with_mode(Mode::Triadic);
        assert!(is_absorbing(&triad([CO; 3], [Positive, Negative, Positive]), &tri));
    }

    #[test]
    fn run_examples() {
        let params = ModelParams::default();
        let ud = build_network(Generator::Complete { n: 6 }, 0.5, TypeInit::All(UD), 3).unwrap();
        let result = run(ud, &params, RunOptions::default(), 1).unwrap();
        assert!(result.absorbed);
        assert!(result.final_types.iter().all(|&t| t == UD));
        assert!(result.final_signs.iter().all(|&s| s == Negative));

        let result = run(pair(UC, UD, Positive), &params, RunOptions::default(), 2).unwrap();
        assert!(result.absorbed);
        assert_eq!(result.final_types, vec![UD, UD]);
        assert_eq!(result.final_signs, vec![Negative]);
    }

    #[test]
    fn run_is_deterministic_and_well_formed() {
        let params = ModelParams::default();
        let net = build_network(Generator::ErdosRenyi { n: 20, p: 0.3 }, 0.5, TypeInit::EqualMix, 8).unwrap();
        let opts = RunOptions {
            max_steps: 20_000,
            check_interval: 500,
            sample_interval: 100,
        };
        let a = run(net.clone(), &params, opts, 99).unwrap();
        let b = run(net, &params, opts, 99).unwrap();
        assert_eq!(a, b);
        for s in &a.time_series {
            assert!((s.type_fractions.iter().sum::<f64>() - 1.0).abs() < 1e-9);
            assert!((0.0..=1.0).contains(&s.mutual_coop_fraction));
        }
        if a.absorbed {
            assert!(is_absorbing(&a.final_network, &params));
        }
    }

    #[test]
    fn absorbing_state_is_stable_for_many_steps() {
        for mode in [Mode::Dyadic, Mode::Triadic] {
            let params = ModelParams::default().with_mode(mode);
            let net = build_network(Generator::Complete { n: 12 }, 0.5, TypeInit::EqualMix, 21).unwrap();
            let result = run(net, &params, RunOptions::default(), 5).unwrap();
            assert!(result.absorbed);
            let frozen = result.final_network.clone();
            let mut state = RunState::new(result.final_network, 1234);
            for _ in 0..10_000 {
                step(&mut state, &params).unwrap();
            }
            assert_eq!(state.network, frozen);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn step_invariants(seed: u64, n in 3usize..12, triadic: bool, steps in 1usize..200) {
            let mode = if triadic { Mode::Triadic } else { Mode::Dyadic };
            let params = ModelParams::default().with_mode(mode);
            let net = build_network(Generator::Complete { n }, 0.5, TypeInit::EqualMix, seed).unwrap();
            let mut state = RunState::new(net, seed ^ 0xABCD);
            for _ in 0..steps {
                let before = state.network.clone();
                let unit = step(&mut state, &params).unwrap();
                let after = &state.network;
                prop_assert_eq!(before.edges(), after.edges());
                let (nodes, edge_ids): (Vec<usize>, Vec<usize>) = match unit {
                    Unit::Edge(e) => { let (a, b) = before.edge(e); (vec![a, b], vec![e]) }
                    Unit::Triangle(t) => (t.nodes.to_vec(), t.edges.to_vec()),
                };
                for v in 0..n {
                    let t = after.node_type(v);
                    prop_assert!(before.node_types().contains(&t));
                    if !nodes.contains(&v) {
                        prop_assert_eq!(t, before.node_type(v));
                    }
                }
                for e in 0..before.edge_count() {
                    if !edge_ids.contains(&e) {
                        prop_assert_eq!(after.edge_sign(e), before.edge_sign(e));
                    }
                }
            }
        }
    }
}
