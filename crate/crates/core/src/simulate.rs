//! Trajectory simulation and seeded Monte Carlo estimation.
//!
//! Replications are bitwise reproducible under any degree of parallelism:
//! replication r runs on an independent substream selected by
//! `set_stream(r)` of a counter-based generator seeded with the master
//! seed, and results are reduced by order-independent integer counting.
//! Within a replication the draw order is fixed: first the state coin,
//! then all private signals in agent order, then (for random families) the
//! link coins row by row, each row in predecessor order. Networks are
//! never materialized inside the hot loop; families are queried entry-wise.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::network::{NetworkGenerator, ObservationNetwork};
use crate::signals::{
    binary_action_kappa, observation_llr_imputed, sample_signal, signal_llr, LogOdds, SignalModel,
    State,
};

/// Which action set an agent chooses from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActionSpace {
    Continuous,
    Binary,
}

/// Naive update applied to one observed binary action.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinaryUpdateRule {
    /// Event-based update: log odds of the actor's signal favoring the
    /// observed action.
    EventKappa,
    /// Imputed-signal update: log odds of the mean favorable signal.
    ImputedMean,
}

/// Action space shared by all agents in a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActionRegime {
    Continuous,
    Binary(BinaryUpdateRule),
}

/// One realized run: the state, each agent's raw signal, log action (the
/// posterior log odds for binary agents), and binary action where one was
/// taken.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub state: State,
    pub signals: Vec<f64>,
    pub log_actions: Vec<f64>,
    pub binary_actions: Vec<Option<bool>>,
    pub action_spaces: Vec<ActionSpace>,
}

impl Trajectory {
    pub fn n(&self) -> usize {
        self.signals.len()
    }

    /// CSV rows `agent,signal,log_action,binary_action`; the last column is
    /// empty for continuous agents.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("agent,signal,log_action,binary_action\n");
        for i in 0..self.n() {
            let b = match self.binary_actions[i] {
                Some(true) => "1",
                Some(false) => "0",
                None => "",
            };
            out.push_str(&format!(
                "{},{},{},{}\n",
                i + 1,
                self.signals[i],
                self.log_actions[i],
                b
            ));
        }
        out
    }
}

/// Monte Carlo run description.
#[derive(Clone, Debug)]
pub struct SimulationConfig {
    pub generator: NetworkGenerator,
    /// Horizon: number of agents per replication.
    pub n: usize,
    pub signal: SignalModel,
    pub regime: ActionRegime,
    pub replications: u64,
    pub seed: u64,
}

impl SimulationConfig {
    pub fn validate(&self) -> Result<()> {
        self.generator.validate()?;
        self.signal.validate()?;
        if self.n < 1 {
            return Err(Error::Domain("horizon must be at least 1".into()));
        }
        if self.replications < 1 {
            return Err(Error::Domain("need at least one replication".into()));
        }
        match self.regime {
            ActionRegime::Continuous => {
                if matches!(self.signal, SignalModel::Binary { .. }) {
                    return Err(Error::Unsupported(
                        "binary signals with continuous actions have no naive update".into(),
                    ));
                }
            }
            ActionRegime::Binary(rule) => {
                rule_value(self.signal, rule)?;
                if !self.generator.is_random() {
                    ensure_zero_one_weights(&self.generator, self.n)?;
                }
            }
        }
        Ok(())
    }
}

/// Point estimate of the mislearning probability with its binomial error.
#[derive(Clone, Debug)]
pub struct MislearningEstimate {
    pub estimate: f64,
    pub standard_error: f64,
    pub replications: u64,
    /// How a replication was scored.
    pub classifier: String,
}

/// Frequency of the persistent-disagreement event.
#[derive(Clone, Debug)]
pub struct DisagreementEstimate {
    pub frequency: f64,
    pub standard_error: f64,
    pub events: u64,
    pub replications: u64,
}

/// Median over replications of the median successive log-action gap in the
/// last fifth of the horizon.
#[derive(Clone, Debug)]
pub struct ConvergenceDiagnostic {
    pub median_terminal_gap: f64,
    pub horizon: usize,
    pub replications: u64,
}

/// One naive continuous update: own signal log odds plus the weighted sum
/// of observed log actions.
pub fn naive_log_action(
    s_tilde: LogOdds,
    neighbor_log_actions: &[LogOdds],
    weights: &[f64],
) -> Result<LogOdds> {
    if neighbor_log_actions.len() != weights.len() {
        return Err(Error::LengthMismatch {
            left: neighbor_log_actions.len(),
            right: weights.len(),
        });
    }
    let mut a = s_tilde.value();
    for (x, w) in neighbor_log_actions.iter().zip(weights) {
        a += w * x.value();
    }
    Ok(LogOdds(a))
}

/// Deterministic action from a posterior: side of even odds, ties resolved
/// by the private signal, a doubly neutral agent guesses zero.
fn decide(posterior_llr: f64, signal_llr: f64) -> bool {
    if posterior_llr != 0.0 {
        posterior_llr > 0.0
    } else {
        signal_llr > 0.0
    }
}

fn rule_value(model: SignalModel, rule: BinaryUpdateRule) -> Result<f64> {
    match (model, rule) {
        (SignalModel::Gaussian { mu, sigma }, BinaryUpdateRule::ImputedMean) => {
            Ok(observation_llr_imputed(mu, sigma).value())
        }
        // for binary signals the favorable signal is the action itself, so
        // the imputed update coincides with the event update
        (m, _) => binary_action_kappa(m).map(LogOdds::value),
    }
}

fn ensure_zero_one_weights(gen: &NetworkGenerator, n: usize) -> Result<()> {
    for i in 2..=n {
        for j in 1..i {
            let w = gen.weight_at(i, j);
            if w != 0.0 && w != 1.0 {
                return Err(Error::Unsupported(format!(
                    "binary actions need 0/1 links, weight {w} at ({i}, {j})"
                )));
            }
        }
    }
    Ok(())
}

/// Continuous log actions from pre-drawn signal log odds and an entry-wise
/// weight lookup; shared by the trajectory runner and the fused Monte Carlo
/// path so both walk the same arithmetic.
fn continuous_actions_with(
    signal_llrs: &[f64],
    mut weight: impl FnMut(usize, usize) -> f64,
    log_actions: &mut Vec<f64>,
) {
    log_actions.clear();
    for i in 1..=signal_llrs.len() {
        let mut a = signal_llrs[i - 1];
        for j in 1..i {
            let w = weight(i, j);
            if w != 0.0 {
                a += w * log_actions[j - 1];
            }
        }
        log_actions.push(a);
    }
}

/// Binary actions from pre-drawn signal log odds and an entry-wise 0/1 link
/// lookup. Only the counts of observed ones and zeros matter, so observed
/// neighbors enter through two integers and order cannot matter.
fn binary_actions_with(
    signal_llrs: &[f64],
    rule: f64,
    mut linked: impl FnMut(usize, usize) -> bool,
    actions: &mut Vec<bool>,
    posteriors: &mut Vec<f64>,
) {
    actions.clear();
    posteriors.clear();
    for i in 1..=signal_llrs.len() {
        let mut ones = 0i64;
        let mut zeros = 0i64;
        for j in 1..i {
            if linked(i, j) {
                if actions[j - 1] {
                    ones += 1;
                } else {
                    zeros += 1;
                }
            }
        }
        let posterior = signal_llrs[i - 1] + rule * (ones - zeros) as f64;
        posteriors.push(posterior);
        actions.push(decide(posterior, signal_llrs[i - 1]));
    }
}

fn draw_state<R: Rng + ?Sized>(rng: &mut R) -> State {
    if rng.random_bool(0.5) {
        State::One
    } else {
        State::Zero
    }
}

fn draw_signals<R: Rng + ?Sized>(
    model: SignalModel,
    state: State,
    n: usize,
    rng: &mut R,
    signals: &mut Vec<f64>,
    llrs: &mut Vec<f64>,
) {
    signals.clear();
    llrs.clear();
    for _ in 0..n {
        let s = sample_signal(model, state, rng);
        signals.push(s);
        llrs.push(signal_llr(model, s).value());
    }
}

/// Run one continuous-action trajectory on a materialized network. The
/// resulting log actions coincide with the path-weight linear form in the
/// signals; the Monte Carlo engine uses the same update with the network
/// kept implicit.
pub fn run_continuous_trajectory<R: Rng + ?Sized>(
    net: &ObservationNetwork,
    model: SignalModel,
    state: State,
    rng: &mut R,
) -> Result<Trajectory> {
    model.validate()?;
    if matches!(model, SignalModel::Binary { .. }) {
        return Err(Error::Unsupported(
            "binary signals with continuous actions have no naive update".into(),
        ));
    }
    let n = net.n();
    let mut signals = Vec::with_capacity(n);
    let mut llrs = Vec::with_capacity(n);
    draw_signals(model, state, n, rng, &mut signals, &mut llrs);
    let mut log_actions = Vec::with_capacity(n);
    continuous_actions_with(&llrs, |i, j| net.weight(i, j), &mut log_actions);
    Ok(Trajectory {
        state,
        signals,
        log_actions,
        binary_actions: vec![None; n],
        action_spaces: vec![ActionSpace::Continuous; n],
    })
}

/// Run one binary-action trajectory on a realized 0/1 network. Each agent
/// adds `rule` log-odds units per observed one and subtracts one unit per
/// observed zero, then thresholds.
pub fn run_binary_trajectory<R: Rng + ?Sized>(
    net: &ObservationNetwork,
    model: SignalModel,
    rule: BinaryUpdateRule,
    state: State,
    rng: &mut R,
) -> Result<Trajectory> {
    model.validate()?;
    let rv = rule_value(model, rule)?;
    let n = net.n();
    for i in 2..=n {
        for j in 1..i {
            let w = net.weight(i, j);
            if w != 0.0 && w != 1.0 {
                return Err(Error::Unsupported(format!(
                    "binary actions need 0/1 links, weight {w} at ({i}, {j})"
                )));
            }
        }
    }
    let mut signals = Vec::with_capacity(n);
    let mut llrs = Vec::with_capacity(n);
    draw_signals(model, state, n, rng, &mut signals, &mut llrs);
    let mut actions = Vec::with_capacity(n);
    let mut posteriors = Vec::with_capacity(n);
    binary_actions_with(
        &llrs,
        rv,
        |i, j| net.weight(i, j) == 1.0,
        &mut actions,
        &mut posteriors,
    );
    Ok(Trajectory {
        state,
        signals,
        log_actions: posteriors,
        binary_actions: actions.into_iter().map(Some).collect(),
        action_spaces: vec![ActionSpace::Binary; n],
    })
}

/// Run one mixed trajectory: odd agents post continuous log actions, even
/// agents threshold the same posterior into a binary action. Odd observers
/// read observed even actions through the event update kappa, since a
/// binary action reveals no more than its side.
pub fn run_mixed_trajectory<R: Rng + ?Sized>(
    net: &ObservationNetwork,
    model: SignalModel,
    state: State,
    rng: &mut R,
) -> Result<Trajectory> {
    let kappa = match model {
        SignalModel::Gaussian { .. } => {
            model.validate()?;
            binary_action_kappa(model)?.value()
        }
        _ => {
            return Err(Error::Unsupported(
                "mixed action spaces are defined for gaussian signals".into(),
            ))
        }
    };
    let n = net.n();
    let mut signals = Vec::with_capacity(n);
    let mut llrs = Vec::with_capacity(n);
    draw_signals(model, state, n, rng, &mut signals, &mut llrs);
    let mut log_actions: Vec<f64> = Vec::with_capacity(n);
    let mut binary_actions: Vec<Option<bool>> = Vec::with_capacity(n);
    let mut action_spaces = Vec::with_capacity(n);
    for i in 1..=n {
        let mut social = 0.0;
        for j in 1..i {
            let w = net.weight(i, j);
            if w == 0.0 {
                continue;
            }
            if w != 1.0 {
                return Err(Error::Unsupported(format!(
                    "mixed actions need 0/1 links, weight {w} at ({i}, {j})"
                )));
            }
            social += match binary_actions[j - 1] {
                Some(a) => {
                    if a {
                        kappa
                    } else {
                        -kappa
                    }
                }
                None => log_actions[j - 1],
            };
        }
        let posterior = llrs[i - 1] + social;
        log_actions.push(posterior);
        if i % 2 == 1 {
            binary_actions.push(None);
            action_spaces.push(ActionSpace::Continuous);
        } else {
            binary_actions.push(Some(decide(posterior, llrs[i - 1])));
            action_spaces.push(ActionSpace::Binary);
        }
    }
    Ok(Trajectory {
        state,
        signals,
        log_actions,
        binary_actions,
        action_spaces,
    })
}

/// Per-replication scratch buffers, reused across a worker's replications.
#[derive(Default)]
struct Scratch {
    signals: Vec<f64>,
    llrs: Vec<f64>,
    values: Vec<f64>,
    actions: Vec<bool>,
}

fn rep_rng(seed: u64, rep: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(rep);
    rng
}

/// One replication: returns the state and whether the final agent ended on
/// the wrong side. Consumes draws in the canonical order.
fn mislearning_rep(
    cfg: &SimulationConfig,
    rule: Option<f64>,
    rep: u64,
    scratch: &mut Scratch,
) -> (State, bool) {
    let mut rng = rep_rng(cfg.seed, rep);
    let state = draw_state(&mut rng);
    draw_signals(
        cfg.signal,
        state,
        cfg.n,
        &mut rng,
        &mut scratch.signals,
        &mut scratch.llrs,
    );
    let random = cfg.generator.is_random();
    let final_llr;
    let final_signal = scratch.llrs[cfg.n - 1];
    match rule {
        None => {
            let gen = &cfg.generator;
            let rng = &mut rng;
            if random {
                continuous_actions_with(
                    &scratch.llrs,
                    |i, j| {
                        let linked = rng.random_bool(gen.link_prob(i, j));
                        if linked && !gen.is_autarkic_position(i) {
                            1.0
                        } else {
                            0.0
                        }
                    },
                    &mut scratch.values,
                );
            } else {
                continuous_actions_with(&scratch.llrs, |i, j| gen.weight_at(i, j), &mut scratch.values);
            }
            final_llr = scratch.values[cfg.n - 1];
        }
        Some(rv) => {
            let gen = &cfg.generator;
            let rng = &mut rng;
            if random {
                binary_actions_with(
                    &scratch.llrs,
                    rv,
                    |i, j| {
                        rng.random_bool(gen.link_prob(i, j)) && !gen.is_autarkic_position(i)
                    },
                    &mut scratch.actions,
                    &mut scratch.values,
                );
            } else {
                binary_actions_with(
                    &scratch.llrs,
                    rv,
                    |i, j| gen.weight_at(i, j) == 1.0,
                    &mut scratch.actions,
                    &mut scratch.values,
                );
            }
            final_llr = scratch.values[cfg.n - 1];
        }
    }
    let guess_one = decide(final_llr, final_signal);
    (state, guess_one != (state == State::One))
}

/// Estimate the mislearning probability: the frequency over replications of
/// the final agent acting against the realized state. Identical output for
/// any worker count under the same seed.
pub fn estimate_mislearning(cfg: &SimulationConfig) -> Result<MislearningEstimate> {
    cfg.validate()?;
    let rule = match cfg.regime {
        ActionRegime::Continuous => None,
        ActionRegime::Binary(rule) => Some(rule_value(cfg.signal, rule)?),
    };
    let wrong: u64 = (0..cfg.replications)
        .into_par_iter()
        .map_init(Scratch::default, |scratch, rep| {
            u64::from(mislearning_rep(cfg, rule, rep, scratch).1)
        })
        .sum();
    let r = cfg.replications as f64;
    let estimate = wrong as f64 / r;
    let kind = match cfg.regime {
        ActionRegime::Continuous => "sign of the final log action",
        ActionRegime::Binary(_) => "final binary action",
    };
    Ok(MislearningEstimate {
        estimate,
        standard_error: (estimate * (1.0 - estimate) / r).sqrt(),
        replications: cfg.replications,
        classifier: format!("{kind} against the state at horizon {}", cfg.n),
    })
}

/// Frequency of the persistent-disagreement event on a realized two-groups
/// network with binary actions and the event update: through the whole
/// horizon every odd agent plays one action and every even agent the other,
/// in either polarity. Horizons with a single parity present never count.
pub fn estimate_disagreement(
    q_s: f64,
    q_d: f64,
    model: SignalModel,
    horizon: usize,
    replications: u64,
    seed: u64,
) -> Result<DisagreementEstimate> {
    let gen = NetworkGenerator::TwoGroupsRandom { q_s, q_d };
    gen.validate()?;
    if q_d == 0.0 || q_s == 0.0 {
        return Err(Error::Domain(
            "disagreement needs positive link probabilities".into(),
        ));
    }
    model.validate()?;
    let rv = binary_action_kappa(model)?.value();
    if horizon < 1 || replications < 1 {
        return Err(Error::Domain("horizon and replications must be positive".into()));
    }
    let events: u64 = (0..replications)
        .into_par_iter()
        .map_init(Scratch::default, |scratch, rep| {
            let mut rng = rep_rng(seed, rep);
            let state = draw_state(&mut rng);
            draw_signals(
                model,
                state,
                horizon,
                &mut rng,
                &mut scratch.signals,
                &mut scratch.llrs,
            );
            {
                let rng = &mut rng;
                binary_actions_with(
                    &scratch.llrs,
                    rv,
                    |i, j| rng.random_bool(gen.link_prob(i, j)),
                    &mut scratch.actions,
                    &mut scratch.values,
                );
            }
            let odd: Vec<bool> = scratch.actions.iter().copied().step_by(2).collect();
            let even: Vec<bool> = scratch.actions.iter().copied().skip(1).step_by(2).collect();
            let split = !odd.is_empty()
                && !even.is_empty()
                && odd.iter().all(|&a| a == odd[0])
                && even.iter().all(|&a| a == even[0])
                && odd[0] != even[0];
            u64::from(split)
        })
        .sum();
    let r = replications as f64;
    let frequency = events as f64 / r;
    Ok(DisagreementEstimate {
        frequency,
        standard_error: (frequency * (1.0 - frequency) / r).sqrt(),
        events,
        replications,
    })
}

fn median_of(sorted: &mut [f64]) -> f64 {
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("gaps are finite"));
    let m = sorted.len();
    if m % 2 == 1 {
        sorted[m / 2]
    } else {
        0.5 * (sorted[m / 2 - 1] + sorted[m / 2])
    }
}

/// Median terminal log-action gap for a deterministic weighted family: per
/// replication, the median of |a~_{k+1} - a~_k| over the last fifth of the
/// horizon, then the median across replications. Values bounded away from
/// zero indicate oscillation; this inspects a finite horizon only.
pub fn convergence_diagnostic(
    gen: &NetworkGenerator,
    model: SignalModel,
    horizon: usize,
    replications: u64,
    seed: u64,
) -> Result<ConvergenceDiagnostic> {
    gen.validate()?;
    if gen.is_random() {
        return Err(Error::WrongConstructor(
            "convergence diagnostic wants a deterministic weighted family".into(),
        ));
    }
    model.validate()?;
    if matches!(model, SignalModel::Binary { .. }) {
        return Err(Error::Unsupported(
            "binary signals with continuous actions have no naive update".into(),
        ));
    }
    if horizon < 5 || replications < 1 {
        return Err(Error::Domain(
            "need a horizon of at least 5 and one replication".into(),
        ));
    }
    let tail_start = horizon - horizon / 5; // first index of the last fifth, 1-based
    let mut per_rep: Vec<f64> = (0..replications)
        .into_par_iter()
        .map_init(Scratch::default, |scratch, rep| {
            let mut rng = rep_rng(seed, rep);
            let state = draw_state(&mut rng);
            draw_signals(
                model,
                state,
                horizon,
                &mut rng,
                &mut scratch.signals,
                &mut scratch.llrs,
            );
            continuous_actions_with(&scratch.llrs, |i, j| gen.weight_at(i, j), &mut scratch.values);
            let mut gaps: Vec<f64> = (tail_start..horizon)
                .map(|k| (scratch.values[k] - scratch.values[k - 1]).abs())
                .collect();
            median_of(&mut gaps)
        })
        .collect();
    let median_terminal_gap = median_of(&mut per_rep);
    Ok(ConvergenceDiagnostic {
        median_terminal_gap,
        horizon,
        replications,
    })
}
