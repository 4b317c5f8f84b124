//! Observation networks: lower-triangular weight matrices, parametric
//! generators (deterministic weighted and random 0/1), path-weight vectors,
//! and influence.
//!
//! Agent indices are 1-based everywhere: agent i may observe agents 1..i-1.

use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Directed observation structure over agents 1..=n. Entry (i, j) with
/// i > j holds the weight agent i places on agent j's action; everything
/// on or above the diagonal stays zero for a well-formed network.
#[derive(Clone, Debug, PartialEq)]
pub struct ObservationNetwork {
    n: usize,
    weights: Vec<f64>, // row-major n*n
    autarkic: Vec<bool>,
}

impl ObservationNetwork {
    fn zeroed(n: usize) -> Self {
        ObservationNetwork {
            n,
            weights: vec![0.0; n * n],
            autarkic: vec![false; n],
        }
    }

    /// Number of agents.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Weight of agent i observing agent j (1-based).
    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.weights[(i - 1) * self.n + (j - 1)]
    }

    fn set_weight(&mut self, i: usize, j: usize, w: f64) {
        self.weights[(i - 1) * self.n + (j - 1)] = w;
    }

    /// Whether agent i ignores all predecessors by construction.
    pub fn is_autarkic(&self, i: usize) -> bool {
        self.autarkic[i - 1]
    }

    /// Build from an explicit edge list; unlisted entries are zero. The
    /// entries are stored as given, so `validate` can report structural
    /// violations on purpose-built bad inputs.
    pub fn from_entries(n: usize, entries: &[(usize, usize, f64)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("network needs at least one agent".into()));
        }
        let mut net = ObservationNetwork::zeroed(n);
        for &(i, j, w) in entries {
            if i < 1 || i > n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            if j < 1 || j > n {
                return Err(Error::IndexOutOfRange { index: j, n });
            }
            net.set_weight(i, j, w);
        }
        Ok(net)
    }

    /// Check structural invariants, reporting the first violation found
    /// scanning rows in order.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        for i in 1..=self.n {
            for j in 1..=self.n {
                let w = self.weight(i, j);
                if w == 0.0 {
                    continue;
                }
                if j >= i {
                    return Err(Violation::UpperTriangular { i, j });
                }
                if !(0.0..=1.0).contains(&w) || !w.is_finite() {
                    return Err(Violation::WeightRange { i, j, weight: w });
                }
                if self.is_autarkic(i) {
                    return Err(Violation::AutarkyLeak { i, j });
                }
            }
        }
        Ok(())
    }

    /// Serialize nonzero entries as CSV rows `i,j,weight` (1-based).
    pub fn to_edge_csv(&self) -> String {
        let mut out = String::from("i,j,weight\n");
        for i in 1..=self.n {
            for j in 1..=self.n {
                let w = self.weight(i, j);
                if w != 0.0 {
                    out.push_str(&format!("{i},{j},{w}\n"));
                }
            }
        }
        out
    }

    /// Parse the edge-list CSV back into an n-agent network.
    pub fn from_edge_csv(n: usize, text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line == "i,j,weight" {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 3 {
                return Err(Error::Domain(format!(
                    "edge CSV line {} needs three fields i,j,weight",
                    lineno + 1
                )));
            }
            let i: usize = fields[0]
                .parse()
                .map_err(|_| Error::Domain(format!("edge CSV line {}: bad index", lineno + 1)))?;
            let j: usize = fields[1]
                .parse()
                .map_err(|_| Error::Domain(format!("edge CSV line {}: bad index", lineno + 1)))?;
            let w: f64 = fields[2]
                .parse()
                .map_err(|_| Error::Domain(format!("edge CSV line {}: bad weight", lineno + 1)))?;
            entries.push((i, j, w));
        }
        ObservationNetwork::from_entries(n, &entries)
    }
}

/// First structural violation found by `ObservationNetwork::validate`.
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    /// Nonzero weight on or above the diagonal.
    UpperTriangular { i: usize, j: usize },
    /// Weight outside [0, 1] or not finite.
    WeightRange { i: usize, j: usize, weight: f64 },
    /// An autarkic agent with a nonzero outgoing weight.
    AutarkyLeak { i: usize, j: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::UpperTriangular { i, j } => {
                write!(f, "nonzero weight at ({i}, {j}) on or above the diagonal")
            }
            Violation::WeightRange { i, j, weight } => {
                write!(f, "weight {weight} at ({i}, {j}) outside [0, 1]")
            }
            Violation::AutarkyLeak { i, j } => {
                write!(f, "autarkic agent {i} has nonzero weight on {j}")
            }
        }
    }
}

/// Parametric network family. Deterministic families fill in edge weights
/// directly; random families realize each feasible link as an independent
/// 0/1 coin flip.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "kebab-case")]
pub enum NetworkGenerator {
    /// Every feasible link has weight q.
    Uniform { q: f64 },
    /// Odd and even agents form two groups: weight q_s toward the own
    /// parity, q_d across.
    TwoGroups { q_s: f64, q_d: f64 },
    /// Weight delta^(i-j), decaying in the index gap.
    Decaying { delta: f64 },
    /// Two groups with geometric decay stacked on top.
    DecayingTwoGroups { delta: f64, q_s: f64, q_d: f64 },
    /// Agent i spreads total weight d evenly over all i-1 predecessors.
    /// Early agents may carry per-link weight above 1; that is intended.
    ConstantOutDegree { d: u32 },
    /// Each feasible link present independently with probability q.
    ErdosRenyiRandom { q: f64 },
    /// Independent 0/1 links with parity-dependent probabilities.
    TwoGroupsRandom { q_s: f64, q_d: f64 },
    /// Base family with positions cycling through n1 ordinary agents and
    /// n2 autarkic ones; autarkic agents keep no outgoing weights.
    AutarkicMix {
        base: Box<NetworkGenerator>,
        n1: usize,
        n2: usize,
    },
}

fn check_prob(value: f64, name: &str) -> Result<()> {
    if !(0.0..=1.0).contains(&value) || !value.is_finite() {
        return Err(Error::Domain(format!(
            "{name} must lie in [0, 1], got {value}"
        )));
    }
    Ok(())
}

impl NetworkGenerator {
    /// Parameter ranges for the family itself.
    pub fn validate(&self) -> Result<()> {
        match self {
            NetworkGenerator::Uniform { q } | NetworkGenerator::ErdosRenyiRandom { q } => {
                check_prob(*q, "q")
            }
            NetworkGenerator::TwoGroups { q_s, q_d }
            | NetworkGenerator::TwoGroupsRandom { q_s, q_d } => {
                check_prob(*q_s, "q_s")?;
                check_prob(*q_d, "q_d")
            }
            NetworkGenerator::Decaying { delta } => {
                if !(*delta > 0.0) || !delta.is_finite() {
                    return Err(Error::Domain(format!(
                        "delta must be positive, got {delta}"
                    )));
                }
                Ok(())
            }
            NetworkGenerator::DecayingTwoGroups { delta, q_s, q_d } => {
                if !(*delta > 0.0) || !delta.is_finite() {
                    return Err(Error::Domain(format!(
                        "delta must be positive, got {delta}"
                    )));
                }
                check_prob(*q_s, "q_s")?;
                check_prob(*q_d, "q_d")
            }
            NetworkGenerator::ConstantOutDegree { d } => {
                if *d < 1 {
                    return Err(Error::Domain("out-degree d must be at least 1".into()));
                }
                Ok(())
            }
            NetworkGenerator::AutarkicMix { base, n1, n2 } => {
                if *n1 < 1 || *n2 < 1 {
                    return Err(Error::Domain(
                        "autarkic mix needs n1 >= 1 and n2 >= 1".into(),
                    ));
                }
                base.validate()
            }
        }
    }

    /// True when links are realized by coin flips rather than fixed weights.
    pub fn is_random(&self) -> bool {
        match self {
            NetworkGenerator::ErdosRenyiRandom { .. } | NetworkGenerator::TwoGroupsRandom { .. } => {
                true
            }
            NetworkGenerator::AutarkicMix { base, .. } => base.is_random(),
            _ => false,
        }
    }

    /// Whether position i (1-based) is autarkic under this family.
    pub fn is_autarkic_position(&self, i: usize) -> bool {
        match self {
            NetworkGenerator::AutarkicMix { base, n1, n2 } => {
                (i - 1) % (n1 + n2) >= *n1 || base.is_autarkic_position(i)
            }
            _ => false,
        }
    }

    /// Deterministic edge weight for i observing j; only meaningful when
    /// `!self.is_random()`. Queryable entry-wise so large-horizon Monte
    /// Carlo never has to materialize the matrix.
    pub(crate) fn weight_at(&self, i: usize, j: usize) -> f64 {
        debug_assert!(j < i);
        match self {
            NetworkGenerator::Uniform { q } => *q,
            NetworkGenerator::TwoGroups { q_s, q_d } => {
                if i % 2 == j % 2 {
                    *q_s
                } else {
                    *q_d
                }
            }
            NetworkGenerator::Decaying { delta } => delta.powi((i - j) as i32),
            NetworkGenerator::DecayingTwoGroups { delta, q_s, q_d } => {
                let group = if i % 2 == j % 2 { *q_s } else { *q_d };
                group * delta.powi((i - j) as i32)
            }
            NetworkGenerator::ConstantOutDegree { d } => f64::from(*d) / ((i - 1) as f64),
            NetworkGenerator::AutarkicMix { base, .. } => {
                if self.is_autarkic_position(i) {
                    0.0
                } else {
                    base.weight_at(i, j)
                }
            }
            NetworkGenerator::ErdosRenyiRandom { .. } | NetworkGenerator::TwoGroupsRandom { .. } => {
                unreachable!("random family has no deterministic weights")
            }
        }
    }

    /// Link probability for i observing j under a random family, before
    /// any autarkic masking.
    pub(crate) fn link_prob(&self, i: usize, j: usize) -> f64 {
        debug_assert!(j < i);
        match self {
            NetworkGenerator::ErdosRenyiRandom { q } => *q,
            NetworkGenerator::TwoGroupsRandom { q_s, q_d } => {
                if i % 2 == j % 2 {
                    *q_s
                } else {
                    *q_d
                }
            }
            NetworkGenerator::AutarkicMix { base, .. } => base.link_prob(i, j),
            _ => unreachable!("deterministic family has no link probability"),
        }
    }
}

/// A generator together with its agent count; this is the JSON wire format
/// for network specs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    #[serde(flatten)]
    pub generator: NetworkGenerator,
    pub n: usize,
}

/// Materialize a deterministic family as an n-agent weighted network.
pub fn build_weighted(gen: &NetworkGenerator, n: usize) -> Result<ObservationNetwork> {
    gen.validate()?;
    if gen.is_random() {
        return Err(Error::WrongConstructor(
            "random family must go through sample_network".into(),
        ));
    }
    if n == 0 {
        return Err(Error::Domain("network needs at least one agent".into()));
    }
    let mut net = ObservationNetwork::zeroed(n);
    for i in 1..=n {
        net.autarkic[i - 1] = gen.is_autarkic_position(i);
        for j in 1..i {
            net.set_weight(i, j, gen.weight_at(i, j));
        }
    }
    Ok(net)
}

/// Realize a random family as a 0/1 network. Links are drawn i ascending,
/// then j ascending within the row, one Bernoulli draw per feasible pair,
/// so a fixed stream position always yields the same network. Autarkic
/// rows still consume their draws before being zeroed, which keeps the
/// stream aligned with the base family.
pub fn sample_network<R: Rng + ?Sized>(
    gen: &NetworkGenerator,
    n: usize,
    rng: &mut R,
) -> Result<ObservationNetwork> {
    gen.validate()?;
    if !gen.is_random() {
        return Err(Error::WrongConstructor(
            "deterministic family must go through build_weighted".into(),
        ));
    }
    if n == 0 {
        return Err(Error::Domain("network needs at least one agent".into()));
    }
    let mut net = ObservationNetwork::zeroed(n);
    for i in 1..=n {
        let autarkic = gen.is_autarkic_position(i);
        net.autarkic[i - 1] = autarkic;
        for j in 1..i {
            let linked = rng.random_bool(gen.link_prob(i, j));
            if linked && !autarkic {
                net.set_weight(i, j, 1.0);
            }
        }
    }
    Ok(net)
}

/// Sample one network from a master seed, using the default stream of the
/// same counter-based generator that the Monte Carlo engine runs on
/// substreams of.
pub fn sample_network_seeded(
    gen: &NetworkGenerator,
    n: usize,
    seed: u64,
) -> Result<ObservationNetwork> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    sample_network(gen, n, &mut rng)
}

/// Path-weight vector of one target agent: entry j accumulates the product
/// of edge weights over every directed path from the target back to j, with
/// the empty path contributing 1 at the target itself. This is row `target`
/// of (I - M)^{-1}, and the coefficient of each signal in the target's log
/// action.
#[derive(Clone, Debug, PartialEq)]
pub struct PathWeights {
    target: usize,
    b: Vec<f64>,
}

impl PathWeights {
    /// Wrap a raw coefficient vector for agents 1..=len.
    pub fn from_raw(b: Vec<f64>) -> Result<Self> {
        if b.is_empty() {
            return Err(Error::Degenerate("empty path-weight vector".into()));
        }
        Ok(PathWeights { target: b.len(), b })
    }

    pub fn target(&self) -> usize {
        self.target
    }

    /// Entries b_1 ..= b_target.
    pub fn weights(&self) -> &[f64] {
        &self.b
    }

    /// Coefficient of agent j's signal (1-based).
    pub fn weight_of(&self, j: usize) -> f64 {
        self.b[j - 1]
    }

    pub fn l1_norm(&self) -> f64 {
        self.b.iter().map(|w| w.abs()).sum()
    }

    pub fn l2_norm(&self) -> f64 {
        self.b.iter().map(|w| w * w).sum::<f64>().sqrt()
    }

    /// Share of the total path weight arriving at agent i.
    pub fn influence_of(&self, i: usize) -> f64 {
        self.weight_of(i) / self.l1_norm()
    }
}

/// Compute the path-weight vector of `target` by back-substitution on the
/// triangular system, O(target^2) time and O(target) extra space. A dense
/// inverse is never formed.
pub fn path_weights(net: &ObservationNetwork, target: usize) -> Result<PathWeights> {
    if target < 1 || target > net.n() {
        return Err(Error::IndexOutOfRange {
            index: target,
            n: net.n(),
        });
    }
    let mut b = vec![0.0; target];
    b[target - 1] = 1.0;
    // b_j = M_{t,j} + sum_{k=j+1}^{t-1} b_k M_{k,j}, walking j downward
    for j in (1..target).rev() {
        let mut acc = net.weight(target, j);
        for k in (j + 1)..target {
            acc += b[k - 1] * net.weight(k, j);
        }
        b[j - 1] = acc;
    }
    Ok(PathWeights { target, b })
}

/// Fraction of agent n's path weight that ends at agent i. The denominator
/// is at least 1 because the empty path always contributes b_{n,n} = 1.
pub fn influence(net: &ObservationNetwork, i: usize, n: usize) -> Result<f64> {
    let pw = path_weights(net, n)?;
    if i < 1 || i > n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    Ok(pw.influence_of(i))
}

/// Largest single-agent influence on the final agent at each horizon. A
/// sequence decaying toward zero is the finite-horizon signature of correct
/// long-run learning; this inspects finite n only and proves no limit.
pub fn correct_learning_diagnostic(
    gen: &NetworkGenerator,
    horizons: &[usize],
) -> Result<Vec<(usize, f64)>> {
    let mut out = Vec::with_capacity(horizons.len());
    for &h in horizons {
        let net = build_weighted(gen, h)?;
        let pw = path_weights(&net, h)?;
        let l1 = pw.l1_norm();
        let max = pw.weights().iter().cloned().fold(f64::MIN, f64::max);
        out.push((h, max / l1));
    }
    Ok(out)
}
