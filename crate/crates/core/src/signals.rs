//! Signal models and log-odds transforms.
//!
//! Everything downstream works in log-likelihood-ratio space: a private
//! signal s becomes s~ = ln(P[w=1|s] / P[w=0|s]) and an interior action
//! a becomes ln(a / (1-a)), so naive belief updates are plain sums.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Binary state of the world.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum State {
    Zero,
    One,
}

impl State {
    /// +1 for state one, -1 for state zero; the sign of the signal mean.
    pub fn sign(self) -> f64 {
        match self {
            State::Zero => -1.0,
            State::One => 1.0,
        }
    }

    /// The state a binary action matches.
    pub fn from_action(a: bool) -> Self {
        if a {
            State::One
        } else {
            State::Zero
        }
    }
}

/// Log-likelihood ratio of state one against state zero. Finite by
/// construction: no signal or interior action is fully revealing.
#[derive(Clone, Copy, Debug, Default, PartialEq, PartialOrd)]
pub struct LogOdds(pub f64);

impl LogOdds {
    pub fn value(self) -> f64 {
        self.0
    }
}

impl std::ops::Add for LogOdds {
    type Output = LogOdds;
    fn add(self, other: LogOdds) -> LogOdds {
        LogOdds(self.0 + other.0)
    }
}

impl std::ops::Neg for LogOdds {
    type Output = LogOdds;
    fn neg(self) -> LogOdds {
        LogOdds(-self.0)
    }
}

/// State-conditional private signal distribution.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SignalModel {
    /// s ~ N(+mu, sigma^2) in state one and N(-mu, sigma^2) in state zero.
    Gaussian { mu: f64, sigma: f64 },
    /// s equals the state with probability p, p in (1/2, 1).
    Binary { p: f64 },
    /// Densities 2-2s (state zero) and 2s (state one) on [0,1], so that
    /// P[w=1|s] = s under a flat prior.
    Triangular,
}

impl SignalModel {
    /// Gaussian signals with informative mean mu > 0 and spread sigma > 0.
    pub fn gaussian(mu: f64, sigma: f64) -> Result<Self> {
        let m = SignalModel::Gaussian { mu, sigma };
        m.validate()?;
        Ok(m)
    }

    /// Binary signals of accuracy p in (1/2, 1).
    pub fn binary(p: f64) -> Result<Self> {
        let m = SignalModel::Binary { p };
        m.validate()?;
        Ok(m)
    }

    pub fn triangular() -> Self {
        SignalModel::Triangular
    }

    /// Check the parameter ranges that keep the signal informative.
    pub fn validate(&self) -> Result<()> {
        match *self {
            SignalModel::Gaussian { mu, sigma } => {
                if !(mu > 0.0) || !mu.is_finite() || !(sigma > 0.0) || !sigma.is_finite() {
                    return Err(Error::Domain(format!(
                        "gaussian signal needs finite mu > 0 and sigma > 0, got mu = {mu}, sigma = {sigma}"
                    )));
                }
            }
            SignalModel::Binary { p } => {
                if !(p > 0.5 && p < 1.0) {
                    return Err(Error::Domain(format!(
                        "binary signal accuracy must lie in (1/2, 1), got {p}"
                    )));
                }
            }
            SignalModel::Triangular => {}
        }
        Ok(())
    }
}

/// Standard normal CDF through the complementary error function; absolute
/// error below 1e-12 everywhere, which every downstream tolerance dominates.
pub fn std_normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

/// Standard normal density.
pub fn std_normal_pdf(x: f64) -> f64 {
    const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;
    INV_SQRT_2PI * (-0.5 * x * x).exp()
}

/// ln(p / (1-p)) for an interior probability.
pub fn posterior_to_llr(p01: f64) -> Result<LogOdds> {
    if !(p01 > 0.0 && p01 < 1.0) {
        return Err(Error::Domain(format!(
            "posterior must lie strictly inside (0, 1), got {p01}"
        )));
    }
    Ok(LogOdds((p01 / (1.0 - p01)).ln()))
}

/// Logistic map back from log odds to a posterior probability.
pub fn llr_to_posterior(x: LogOdds) -> f64 {
    1.0 / (1.0 + (-x.0).exp())
}

/// Gaussian signal to log odds under unit state means: 2 s / sigma^2.
pub fn llr_gaussian(s: f64, sigma: f64) -> LogOdds {
    assert!(sigma > 0.0, "sigma must be positive");
    LogOdds(2.0 * s / (sigma * sigma))
}

/// Triangular signal to log odds: the posterior is the signal itself.
pub fn llr_triangular(s: f64) -> Result<LogOdds> {
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::Domain(format!(
            "triangular signal must lie strictly inside (0, 1), got {s}"
        )));
    }
    Ok(LogOdds((s / (1.0 - s)).ln()))
}

/// Log odds of a realized signal under its model, general parameters.
pub fn signal_llr(model: SignalModel, s: f64) -> LogOdds {
    match model {
        SignalModel::Gaussian { mu, sigma } => LogOdds(2.0 * mu * s / (sigma * sigma)),
        SignalModel::Binary { p } => {
            let lam = (p / (1.0 - p)).ln();
            LogOdds(if s > 0.5 { lam } else { -lam })
        }
        SignalModel::Triangular => LogOdds((s / (1.0 - s)).ln()),
    }
}

/// Event-based update for one observed binary action favoring state one:
/// the log odds of the event that the actor's signal favored that state.
pub fn binary_action_kappa(model: SignalModel) -> Result<LogOdds> {
    match model {
        SignalModel::Binary { p } => Ok(LogOdds((p / (1.0 - p)).ln())),
        SignalModel::Gaussian { mu, sigma } => {
            let r = mu / sigma;
            Ok(LogOdds((std_normal_cdf(r) / std_normal_cdf(-r)).ln()))
        }
        SignalModel::Triangular => Err(Error::Unsupported(
            "triangular signals define no binary-action update".into(),
        )),
    }
}

/// Imputed-signal update for one observed binary action favoring state one:
/// the observer pretends the actor drew the average signal among draws that
/// favor that state, E[s | s > 0] = mu + sigma * phi(mu/sigma) / Phi(mu/sigma)
/// under s ~ N(mu, sigma^2), and converts that signal to log odds with the
/// 2/sigma^2 scaling. Only the density term is divided by the tail mass;
/// this grouping is what the exact accuracy recursion downstream needs.
pub fn observation_llr_imputed(mu: f64, sigma: f64) -> LogOdds {
    assert!(sigma > 0.0, "sigma must be positive");
    let r = mu / sigma;
    let truncated_mean = mu + sigma * std_normal_pdf(r) / std_normal_cdf(r);
    LogOdds(2.0 * truncated_mean / (sigma * sigma))
}

/// Draw one private signal conditional on the state.
pub fn sample_signal<R: Rng + ?Sized>(model: SignalModel, state: State, rng: &mut R) -> f64 {
    match model {
        SignalModel::Gaussian { mu, sigma } => {
            let z: f64 = rng.sample(StandardNormal);
            state.sign() * mu + sigma * z
        }
        SignalModel::Binary { p } => {
            let correct = rng.random_bool(p);
            let one = correct == (state == State::One);
            if one {
                1.0
            } else {
                0.0
            }
        }
        SignalModel::Triangular => {
            // Inverse-CDF draws: density 2s has CDF s^2, density 2-2s mirrors it.
            let u: f64 = rng.random();
            match state {
                State::One => u.sqrt(),
                State::Zero => 1.0 - u.sqrt(),
            }
        }
    }
}
