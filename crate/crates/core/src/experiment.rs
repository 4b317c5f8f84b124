//! Exact per-agent accuracy in the binary-action experimental setting:
//! the count-based recursion for naive agents, a dynamic-programming lower
//! bound for rational agents restricted to their most recent neighbor, and
//! merged accuracy curves.
//!
//! Everything here is closed form through the normal CDF; no quadrature.

use crate::error::{Error, Result};
use crate::signals::{observation_llr_imputed, std_normal_cdf};

/// Parameters of the experimental environment. Defaults place the signal
/// mean at +1/-1 with variance 4.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ExperimentSpec {
    pub n_agents: usize,
    /// Link probability of the underlying random network.
    pub q: f64,
    pub mu: f64,
    pub sigma: f64,
}

impl ExperimentSpec {
    pub fn new(q: f64) -> Self {
        ExperimentSpec {
            n_agents: 40,
            q,
            mu: 1.0,
            sigma: 2.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_agents < 1 {
            return Err(Error::Domain("need at least one agent".into()));
        }
        if !(self.mu > 0.0 && self.mu.is_finite()) {
            return Err(Error::Domain(format!("mu must be positive, got {}", self.mu)));
        }
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(Error::Domain(format!(
                "sigma must be positive, got {}",
                self.sigma
            )));
        }
        Ok(())
    }
}

/// Distribution of play counts after some prefix of agents, conditional on
/// the state being 1: entry (k, k') is the probability that k agents have
/// played 0 and k' have played 1, with k + k' equal to the prefix length.
#[derive(Clone, Debug)]
pub struct ActionCountDistribution {
    processed: usize,
    /// Indexed by k, the number of 0-plays; the 1-play count is implied.
    probs: Vec<f64>,
}

impl ActionCountDistribution {
    fn fresh() -> Self {
        ActionCountDistribution {
            processed: 0,
            probs: vec![1.0],
        }
    }

    pub fn agents_processed(&self) -> usize {
        self.processed
    }

    pub fn prob(&self, k: usize, k_prime: usize) -> f64 {
        if k + k_prime == self.processed {
            self.probs[k]
        } else {
            0.0
        }
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }
}

/// Stepwise engine for the exact naive recursion. Each step advances one
/// agent: it reports that agent's probability of playing correctly and
/// folds the induced 0/1 play into the count distribution.
pub struct CountRecursion {
    /// Signal-side threshold shift: the probability of playing 0 after
    /// seeing i zeros and i' ones, given state 1, is Phi(c (i - i') - r).
    c: f64,
    r: f64,
    /// pmf[m][i]: probability of observing i out of m plays.
    pmf: Vec<Vec<f64>>,
    /// Memo for the play-0 probability by (zeros so far, ones so far).
    play_zero: Vec<Vec<f64>>,
    dist: ActionCountDistribution,
}

impl CountRecursion {
    pub fn new(spec: &ExperimentSpec) -> Result<Self> {
        spec.validate()?;
        if !(0.0..=1.0).contains(&spec.q) {
            return Err(Error::Domain(format!(
                "link probability must lie in [0, 1], got {}",
                spec.q
            )));
        }
        if spec.n_agents > 64 {
            return Err(Error::Domain(format!(
                "count recursion supports up to 64 agents, got {}",
                spec.n_agents
            )));
        }
        let ell = observation_llr_imputed(spec.mu, spec.sigma).value();
        let n = spec.n_agents;
        // binomial rows by the Pascal recurrence, exact row sums
        let mut pmf: Vec<Vec<f64>> = Vec::with_capacity(n);
        pmf.push(vec![1.0]);
        for m in 1..n {
            let prev = &pmf[m - 1];
            let mut row = vec![0.0; m + 1];
            for i in 0..m {
                row[i] += prev[i] * (1.0 - spec.q);
                row[i + 1] += prev[i] * spec.q;
            }
            pmf.push(row);
        }
        Ok(CountRecursion {
            c: spec.sigma * ell / (2.0 * spec.mu),
            r: spec.mu / spec.sigma,
            pmf,
            play_zero: vec![vec![f64::NAN; n]; n],
            dist: ActionCountDistribution::fresh(),
        })
    }

    pub fn distribution(&self) -> &ActionCountDistribution {
        &self.dist
    }

    /// Probability the next agent plays 0 given k predecessors played 0 and
    /// k' played 1, with each seen independently: average the threshold
    /// probability over the observed counts.
    fn play_zero_prob(&mut self, k: usize, k_prime: usize) -> f64 {
        let memo = self.play_zero[k][k_prime];
        if !memo.is_nan() {
            return memo;
        }
        let mut p = 0.0;
        for i in 0..=k {
            let w = self.pmf[k][i];
            for i_prime in 0..=k_prime {
                let arg = self.c * (i as f64 - i_prime as f64) - self.r;
                p += w * self.pmf[k_prime][i_prime] * std_normal_cdf(arg);
            }
        }
        self.play_zero[k][k_prime] = p;
        p
    }

    /// Advance one agent and return its probability of acting correctly.
    pub fn step(&mut self) -> f64 {
        let m = self.dist.processed;
        let mut correct = 0.0;
        let mut next = vec![0.0; m + 2];
        for k in 0..=m {
            let p = self.dist.probs[k];
            if p == 0.0 {
                continue;
            }
            let zero = self.play_zero_prob(k, m - k);
            correct += p * (1.0 - zero);
            next[k + 1] += p * zero;
            next[k] += p * (1.0 - zero);
        }
        self.dist = ActionCountDistribution {
            processed: m + 1,
            probs: next,
        };
        correct
    }
}

/// Exact probability of a correct action for each agent under naive play on
/// an independently-linked network with the imputed-signal update.
pub fn naive_accuracy_exact(spec: &ExperimentSpec) -> Result<Vec<f64>> {
    let mut rec = CountRecursion::new(spec)?;
    let mut out = Vec::with_capacity(spec.n_agents);
    for _ in 0..spec.n_agents {
        out.push(rec.step());
        debug_assert!((rec.distribution().total() - 1.0).abs() < 1e-10);
    }
    Ok(out)
}

/// Accuracy of first-agent play: the signal alone.
pub fn autarky_accuracy(spec: &ExperimentSpec) -> Result<f64> {
    spec.validate()?;
    Ok(std_normal_cdf(spec.mu / spec.sigma))
}

/// Accuracy of the optimal rule combining one Gaussian signal with a single
/// binary observation of known accuracy p: threshold the signal log odds at
/// -+ ln(p/(1-p)) depending on the observed action.
fn accuracy_with_observation(p: f64, mu: f64, sigma: f64) -> f64 {
    let lambda = (p / (1.0 - p)).ln();
    let shift = sigma * lambda / (2.0 * mu);
    let r = mu / sigma;
    p * std_normal_cdf(r + shift) + (1.0 - p) * std_normal_cdf(r - shift)
}

/// Lower bound on rational per-agent accuracy from strategies that use the
/// private signal and the action of the most recent observed predecessor,
/// whose identity (hence accuracy) is known.
pub fn rational_lower_bound(spec: &ExperimentSpec) -> Result<Vec<f64>> {
    spec.validate()?;
    if !(spec.q > 0.0 && spec.q <= 1.0) {
        return Err(Error::Domain(format!(
            "link probability must lie in (0, 1], got {}",
            spec.q
        )));
    }
    if spec.n_agents > 200 {
        return Err(Error::Domain(format!(
            "rational bound supports up to 200 agents, got {}",
            spec.n_agents
        )));
    }
    let p1 = std_normal_cdf(spec.mu / spec.sigma);
    let mut acc = Vec::with_capacity(spec.n_agents);
    let mut with_obs = Vec::with_capacity(spec.n_agents);
    acc.push(p1);
    with_obs.push(accuracy_with_observation(p1, spec.mu, spec.sigma));
    for n in 1..spec.n_agents {
        // the most recent linked predecessor is j with probability
        // q (1-q)^(n-j); with no link the agent falls back on its signal
        let mut p = (1.0 - spec.q).powi(n as i32) * p1;
        for j in 1..=n {
            p += spec.q * (1.0 - spec.q).powi((n - j) as i32) * with_obs[j - 1];
        }
        acc.push(p);
        with_obs.push(accuracy_with_observation(p, spec.mu, spec.sigma));
    }
    Ok(acc)
}

/// One row of a merged accuracy table.
#[derive(Clone, Debug)]
pub struct AccuracyRow {
    pub agent: usize,
    pub q: f64,
    pub model: &'static str,
    pub accuracy: f64,
}

/// Merged naive accuracy curves plus the first agent index at which the
/// sparsest network overtakes the densest.
#[derive(Clone, Debug)]
pub struct AccuracyCurves {
    pub rows: Vec<AccuracyRow>,
    pub crossing: Option<usize>,
}

pub fn accuracy_curves(specs: &[ExperimentSpec]) -> Result<AccuracyCurves> {
    let mut rows = Vec::new();
    let mut curves: Vec<(f64, Vec<f64>)> = Vec::with_capacity(specs.len());
    for spec in specs {
        let acc = naive_accuracy_exact(spec)?;
        for (idx, &a) in acc.iter().enumerate() {
            rows.push(AccuracyRow {
                agent: idx + 1,
                q: spec.q,
                model: "naive",
                accuracy: a,
            });
        }
        curves.push((spec.q, acc));
    }
    let mut crossing = None;
    if curves.len() >= 2 {
        let sparse = curves
            .iter()
            .min_by(|a, b| a.0.partial_cmp(&b.0).expect("validated q"))
            .expect("nonempty");
        let dense = curves
            .iter()
            .max_by(|a, b| a.0.partial_cmp(&b.0).expect("validated q"))
            .expect("nonempty");
        if sparse.0 < dense.0 {
            let horizon = sparse.1.len().min(dense.1.len());
            crossing = (0..horizon)
                .find(|&idx| sparse.1[idx] > dense.1[idx])
                .map(|idx| idx + 1);
        }
    }
    Ok(AccuracyCurves { rows, crossing })
}
