//! Closed-form action distributions and mislearning probabilities for the
//! parametric network families.
//!
//! Conditional on state one, the final log action is Gaussian with mean and
//! variance set by the l1 and l2 norms of the path-weight vector, so every
//! mislearning probability below is a standard normal tail of the norm
//! ratio. Families whose path weights admit a limit get exact expressions.

use crate::error::{Error, Result};
use crate::network::PathWeights;
use crate::signals::std_normal_cdf;

/// Gaussian law of a log action conditional on state one.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ActionDistribution {
    pub mean: f64,
    pub variance: f64,
}

/// A mislearning probability stamped with the family and parameters that
/// produced it, including intermediate quantities worth echoing.
#[derive(Clone, Debug, PartialEq)]
pub struct MislearningProb {
    pub value: f64,
    pub family: &'static str,
    pub params: Vec<(&'static str, f64)>,
}

/// Outcome for decaying-weight families: society either converges, with a
/// limiting mislearning probability, or log actions oscillate forever.
/// Non-convergence is an answer, not an error.
#[derive(Clone, Debug, PartialEq)]
pub enum DecayOutcome {
    Converges(MislearningProb),
    NonConvergent,
}

/// Decaying two-groups outcome together with the convergence threshold.
#[derive(Clone, Debug, PartialEq)]
pub struct DecayingTwoGroupsResult {
    pub outcome: DecayOutcome,
    pub delta0: f64,
}

fn check_sigma(sigma: f64) -> Result<()> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::Domain(format!("sigma must be positive, got {sigma}")));
    }
    Ok(())
}

/// Law of the log action with coefficient vector b under signal spread
/// sigma, conditional on state one: N(2|b|_1 / sigma^2, 4|b|_2^2 / sigma^2).
pub fn action_distribution(b: &PathWeights, sigma: f64) -> ActionDistribution {
    assert!(sigma > 0.0, "sigma must be positive");
    let s2 = sigma * sigma;
    ActionDistribution {
        mean: 2.0 * b.l1_norm() / s2,
        variance: 4.0 * b.l2_norm().powi(2) / s2,
    }
}

/// Probability that the agent with coefficient vector b lands on the wrong
/// side of even odds: Phi(-(1/sigma) * |b|_1 / |b|_2).
pub fn prob_incorrect_agent(b: &PathWeights, sigma: f64) -> Result<f64> {
    assert!(sigma > 0.0, "sigma must be positive");
    let l2 = b.l2_norm();
    if l2 == 0.0 {
        return Err(Error::Degenerate(
            "all-zero path-weight vector has no action law".into(),
        ));
    }
    Ok(std_normal_cdf(-b.l1_norm() / l2 / sigma))
}

/// Limiting mislearning probability when every link has weight q:
/// Phi(-(1/sigma) * sqrt((q+2)/q)). The q = 0 point is excluded because
/// isolated agents mislearn with the single-signal probability, not the
/// q -> 0 limit of this expression.
pub fn uniform_mislearning(q: f64, sigma: f64) -> Result<MislearningProb> {
    check_sigma(sigma)?;
    if q == 0.0 {
        return Err(Error::Discontinuity);
    }
    if !(q > 0.0 && q <= 1.0) {
        return Err(Error::Domain(format!("q must lie in (0, 1], got {q}")));
    }
    let value = std_normal_cdf(-((q + 2.0) / q).sqrt() / sigma);
    Ok(MislearningProb {
        value,
        family: "uniform",
        params: vec![("q", q), ("sigma", sigma)],
    })
}

fn two_groups_discriminant(q_s: f64, q_d: f64) -> f64 {
    (q_d * q_d + 4.0 * q_s + 4.0).sqrt()
}

/// Roots of x^2 - q_d x - (1 + q_s), the characteristic polynomial of the
/// two-groups path-weight recursion: xi_plus > 1 > 0 > xi_minus.
pub fn two_groups_xi(q_s: f64, q_d: f64) -> Result<(f64, f64)> {
    if !(0.0..=1.0).contains(&q_s) || !q_s.is_finite() {
        return Err(Error::Domain(format!("q_s must lie in [0, 1], got {q_s}")));
    }
    if !(q_d > 0.0 && q_d <= 1.0) {
        if q_d == 0.0 {
            return Err(Error::DisconnectedGroups);
        }
        return Err(Error::Domain(format!("q_d must lie in (0, 1], got {q_d}")));
    }
    let root = two_groups_discriminant(q_s, q_d);
    Ok(((q_d + root) / 2.0, (q_d - root) / 2.0))
}

/// Limiting mislearning probability for the two-groups family:
/// Phi(-(1/sigma) * sqrt((xi_plus + 1)/(xi_plus - 1))).
pub fn two_groups_mislearning(q_s: f64, q_d: f64, sigma: f64) -> Result<MislearningProb> {
    check_sigma(sigma)?;
    let (xi_plus, xi_minus) = two_groups_xi(q_s, q_d)?;
    let value = std_normal_cdf(-((xi_plus + 1.0) / (xi_plus - 1.0)).sqrt() / sigma);
    Ok(MislearningProb {
        value,
        family: "two-groups",
        params: vec![
            ("q_s", q_s),
            ("q_d", q_d),
            ("sigma", sigma),
            ("xi_plus", xi_plus),
            ("xi_minus", xi_minus),
        ],
    })
}

/// Central finite difference of the two-groups mislearning probability in
/// the rebalancing direction (q_s + t, q_d - t): shifting link mass toward
/// the own group at fixed total degree. Always negative in the interior.
pub fn homophily_rebalance_derivative(q_s: f64, q_d: f64, sigma: f64, h: f64) -> Result<f64> {
    check_sigma(sigma)?;
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::Domain(format!("step h must be positive, got {h}")));
    }
    let in_domain = |s: f64, d: f64| (0.0..=1.0).contains(&s) && d > 0.0 && d <= 1.0;
    if !in_domain(q_s + h, q_d - h) || !in_domain(q_s - h, q_d + h) {
        return Err(Error::Domain(format!(
            "step {h} leaves the parameter domain at ({q_s}, {q_d})"
        )));
    }
    let plus = two_groups_mislearning(q_s + h, q_d - h, sigma)?.value;
    let minus = two_groups_mislearning(q_s - h, q_d + h, sigma)?.value;
    Ok((plus - minus) / (2.0 * h))
}

/// Mislearning probability when every agent spreads total weight d over all
/// predecessors. The coefficient sequence v_1 = 1, v_{k+1} = v_k (k+1)/(d+k+1)
/// decays like k^(1-d); for d = 1 influence vanishes and society learns,
/// for d >= 2 the norm ratio converges and mislearning is positive.
///
/// The series is summed until the remaining l2 mass is below tail_tol in
/// relative terms. The l1 tail is then added in closed form, exactly
/// v_{K+1} (K+d+1)/(d-1) after K terms, and half of the l2 tail bound is
/// added so the truncation error is below tail_tol times the partial sum.
pub fn constant_outdegree_mislearning(d: u32, sigma: f64, tail_tol: f64) -> Result<MislearningProb> {
    check_sigma(sigma)?;
    if d < 1 {
        return Err(Error::Domain("out-degree d must be at least 1".into()));
    }
    if !(tail_tol > 0.0 && tail_tol < 1.0) {
        return Err(Error::Domain(format!(
            "tail tolerance must lie in (0, 1), got {tail_tol}"
        )));
    }
    if d == 1 {
        return Ok(MislearningProb {
            value: 0.0,
            family: "constant-out-degree",
            params: vec![("d", 1.0), ("sigma", sigma)],
        });
    }
    let df = f64::from(d);
    let mut v = 1.0; // v_k, starting at k = 1
    let mut k = 1.0;
    let mut s1 = 0.0;
    let mut s2 = 0.0;
    loop {
        s1 += v;
        s2 += v * v;
        let next = v * (k + 1.0) / (df + k + 1.0);
        // remaining l2 mass is at most the next term times the exact l1 tail
        let tail1 = next * (k + df + 1.0) / (df - 1.0);
        let tail2_bound = next * tail1;
        if tail2_bound < tail_tol * s2 {
            s1 += tail1;
            s2 += 0.5 * tail2_bound;
            break;
        }
        v = next;
        k += 1.0;
    }
    let value = std_normal_cdf(-s1 / s2.sqrt() / sigma);
    Ok(MislearningProb {
        value,
        family: "constant-out-degree",
        params: vec![
            ("d", df),
            ("sigma", sigma),
            ("l1", s1),
            ("l2", s2.sqrt()),
            ("terms", k),
        ],
    })
}

/// Mislearning outcome when weights decay geometrically with the index gap.
/// Above delta = 1/2 the dynamics match the uniform family at q = 2 delta - 1;
/// at exactly 1/2 society learns; below, log actions oscillate forever.
pub fn decay_mislearning(delta: f64, sigma: f64) -> Result<DecayOutcome> {
    check_sigma(sigma)?;
    if !(delta > 0.0 && delta <= 1.0) || !delta.is_finite() {
        return Err(Error::Domain(format!(
            "delta must lie in (0, 1], got {delta}"
        )));
    }
    if delta < 0.5 {
        return Ok(DecayOutcome::NonConvergent);
    }
    if delta == 0.5 {
        return Ok(DecayOutcome::Converges(MislearningProb {
            value: 0.0,
            family: "decaying",
            params: vec![("delta", delta), ("sigma", sigma)],
        }));
    }
    let inner = uniform_mislearning(2.0 * delta - 1.0, sigma)?;
    Ok(DecayOutcome::Converges(MislearningProb {
        value: inner.value,
        family: "decaying",
        params: vec![("delta", delta), ("sigma", sigma)],
    }))
}

/// Decaying two-groups family: geometric decay on top of the parity weights.
/// The convergence threshold is delta0 = 2 / (q_d + sqrt(q_d^2 + 4 q_s + 4)),
/// and above it the limiting root is xi_plus = delta / delta0.
pub fn decay_two_groups(
    delta: f64,
    q_s: f64,
    q_d: f64,
    sigma: f64,
) -> Result<DecayingTwoGroupsResult> {
    check_sigma(sigma)?;
    if !(delta > 0.0 && delta <= 1.0) || !delta.is_finite() {
        return Err(Error::Domain(format!(
            "delta must lie in (0, 1], got {delta}"
        )));
    }
    if !(0.0..=1.0).contains(&q_s) || !q_s.is_finite() {
        return Err(Error::Domain(format!("q_s must lie in [0, 1], got {q_s}")));
    }
    if q_d == 0.0 {
        return Err(Error::DisconnectedGroups);
    }
    if !(q_d > 0.0 && q_d <= 1.0) {
        return Err(Error::Domain(format!("q_d must lie in (0, 1], got {q_d}")));
    }
    let root = two_groups_discriminant(q_s, q_d);
    let delta0 = 2.0 / (q_d + root);
    let xi_plus = delta * (q_d + root) / 2.0;
    let outcome = if xi_plus < 1.0 {
        DecayOutcome::NonConvergent
    } else {
        let value = if xi_plus == 1.0 {
            0.0
        } else {
            std_normal_cdf(-((xi_plus + 1.0) / (xi_plus - 1.0)).sqrt() / sigma)
        };
        DecayOutcome::Converges(MislearningProb {
            value,
            family: "decaying-two-groups",
            params: vec![
                ("delta", delta),
                ("q_s", q_s),
                ("q_d", q_d),
                ("sigma", sigma),
                ("delta0", delta0),
                ("xi_plus", xi_plus),
            ],
        })
    };
    Ok(DecayingTwoGroupsResult { outcome, delta0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{build_weighted, path_weights, NetworkGenerator, PathWeights};
    use crate::signals::std_normal_pdf;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const PHI_NEG_SQRT3: f64 = 0.0416322583317752;
    const PHI_NEG_SQRT5: f64 = 0.012673659338734126;
    const PHI_NEG_3: f64 = 0.0013498980316300933;
    const UNIFORM_075_1: f64 = 0.027755549048935523;
    const CONST_D2_SIGMA1: f64 = 0.006137628068593304;

    fn raw(b: &[f64]) -> PathWeights {
        PathWeights::from_raw(b.to_vec()).unwrap()
    }

    #[test]
    fn action_distribution_examples() {
        let d = action_distribution(&raw(&[0.0, 0.0, 1.0]), 1.0);
        assert_eq!(d.mean, 2.0);
        assert_eq!(d.variance, 4.0);
        let d = action_distribution(&raw(&[2.0, 1.0, 1.0]), 1.0);
        assert_eq!(d.mean, 8.0);
        assert!((d.variance - 24.0).abs() < 1e-12);
        let d = action_distribution(&raw(&[1.0, 1.0]), 2.0);
        assert_eq!(d.mean, 1.0);
        assert!((d.variance - 2.0).abs() < 1e-12);
    }

    #[test]
    fn prob_incorrect_examples() {
        let p = prob_incorrect_agent(&raw(&[1.0]), 1.0).unwrap();
        assert!((p - 0.15865525393145707).abs() < 1e-14);
        let equal = raw(&[1.0 / 9.0; 9]);
        assert!((prob_incorrect_agent(&equal, 1.0).unwrap() - PHI_NEG_3).abs() < 1e-14);
        let p = prob_incorrect_agent(&raw(&[2.0, 1.0, 1.0]), 1.0).unwrap();
        assert!((p - 0.051235217429874684).abs() < 1e-14);
        assert!(matches!(
            prob_incorrect_agent(&raw(&[0.0, 0.0]), 1.0),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn uniform_closed_form() {
        assert!((uniform_mislearning(1.0, 1.0).unwrap().value - PHI_NEG_SQRT3).abs() < 1e-14);
        assert!(
            (uniform_mislearning(1.0, 2.0).unwrap().value - 0.19323811538561636).abs() < 1e-14
        );
        assert!((uniform_mislearning(0.25, 1.0).unwrap().value - PHI_NEG_3).abs() < 1e-14);
        assert!((uniform_mislearning(0.75, 1.0).unwrap().value - UNIFORM_075_1).abs() < 1e-14);
        // strictly increasing in q
        assert!(
            uniform_mislearning(0.25, 1.0).unwrap().value
                < uniform_mislearning(0.75, 1.0).unwrap().value
        );
        assert!(matches!(uniform_mislearning(0.0, 1.0), Err(Error::Discontinuity)));
        assert!(matches!(uniform_mislearning(1.5, 1.0), Err(Error::Domain(_))));
        assert!(matches!(uniform_mislearning(-0.5, 1.0), Err(Error::Domain(_))));
        assert!(matches!(uniform_mislearning(0.5, 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn finite_horizon_converges_to_uniform_value() {
        for &q in &[0.25, 0.5, 0.75, 1.0] {
            let net = build_weighted(&NetworkGenerator::Uniform { q }, 200).unwrap();
            let pw = path_weights(&net, 200).unwrap();
            let finite = prob_incorrect_agent(&pw, 1.0).unwrap();
            let limit = uniform_mislearning(q, 1.0).unwrap().value;
            assert!(
                (finite - limit).abs() < 1e-6,
                "q={q}: finite {finite} vs limit {limit}"
            );
        }
    }

    #[test]
    fn norm_ratio_extremality() {
        // fixed l1 mass: a single spike mislearns the most, equal weights least
        let sigma = 1.0;
        let spike = prob_incorrect_agent(&raw(&[1.0]), sigma).unwrap();
        let equal = prob_incorrect_agent(&raw(&[0.1; 10]), sigma).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..200 {
            let mut b: Vec<f64> = (0..10).map(|_| rng.random::<f64>()).collect();
            let l1: f64 = b.iter().sum();
            for w in &mut b {
                *w /= l1;
            }
            let p = prob_incorrect_agent(&raw(&b), sigma).unwrap();
            assert!(p <= spike + 1e-15);
            assert!(p >= equal - 1e-15);
        }
    }

    #[test]
    fn xi_roots() {
        let (xp, xm) = two_groups_xi(1.0, 1.0).unwrap();
        assert!((xp - 2.0).abs() < 1e-15);
        assert!((xm + 1.0).abs() < 1e-15);
        let (xp, _) = two_groups_xi(0.0, 1.0).unwrap();
        assert!((xp - (1.0 + 5.0f64.sqrt()) / 2.0).abs() < 1e-15);
        for &q in &[0.2, 0.5, 0.9] {
            let (xp, xm) = two_groups_xi(q, q).unwrap();
            assert!((xp - (1.0 + q)).abs() < 1e-14, "xi_plus at q={q}");
            assert!(xp > 1.0 && xm < 0.0);
        }
        assert!(matches!(two_groups_xi(0.5, 0.0), Err(Error::DisconnectedGroups)));
        assert!(two_groups_xi(1.5, 0.5).is_err());
    }

    #[test]
    fn two_groups_values_and_reduction() {
        let p = two_groups_mislearning(1.0, 1.0, 1.0).unwrap();
        assert!((p.value - PHI_NEG_SQRT3).abs() < 1e-14);
        let p = two_groups_mislearning(0.5, 0.5, 1.0).unwrap();
        assert!((p.value - PHI_NEG_SQRT5).abs() < 1e-14);
        for &q in &[0.1, 0.3, 0.5, 0.7, 0.9, 1.0] {
            let tg = two_groups_mislearning(q, q, 1.3).unwrap().value;
            let un = uniform_mislearning(q, 1.3).unwrap().value;
            assert!((tg - un).abs() < 1e-12, "reduction at q={q}");
        }
        assert!(matches!(
            two_groups_mislearning(0.5, 0.0, 1.0),
            Err(Error::DisconnectedGroups)
        ));
        // intermediate roots are echoed
        let p = two_groups_mislearning(0.5, 0.5, 1.0).unwrap();
        assert!(p.params.iter().any(|&(k, v)| k == "xi_plus" && (v - 1.5).abs() < 1e-14));
    }

    #[test]
    fn rebalance_derivative_negative_and_matches_chain_rule() {
        for &(q_s, q_d) in &[(0.5, 0.5), (0.2, 0.8), (0.8, 0.15), (0.4, 0.3)] {
            let sigma = 1.0;
            let h = 1e-4;
            let fd = homophily_rebalance_derivative(q_s, q_d, sigma, h).unwrap();
            assert!(fd < 0.0, "rebalance at ({q_s}, {q_d}) should be negative");

            // analytic chain rule through the root of the polynomial
            let disc = (q_d * q_d + 4.0 * q_s + 4.0).sqrt();
            let xi = (q_d + disc) / 2.0;
            let dxi_dqs = 1.0 / disc;
            let dxi_dqd = (1.0 + q_d / disc) / 2.0;
            let r = ((xi + 1.0) / (xi - 1.0)).sqrt();
            let dp_dxi = std_normal_pdf(r / sigma) / (sigma * r * (xi - 1.0) * (xi - 1.0));
            let analytic = (dxi_dqs - dxi_dqd) * dp_dxi;
            assert!(
                (fd - analytic).abs() <= 1e-4 * analytic.abs(),
                "({q_s},{q_d}): fd {fd} vs analytic {analytic}"
            );
        }
    }

    #[test]
    fn rebalance_derivative_domain_checks() {
        assert!(matches!(
            homophily_rebalance_derivative(1.0, 0.5, 1.0, 1e-4),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            homophily_rebalance_derivative(0.5, 1e-5, 1.0, 1e-4),
            Err(Error::Domain(_))
        ));
        assert!(homophily_rebalance_derivative(0.5, 0.5, 1.0, 0.0).is_err());
    }

    #[test]
    fn constant_outdegree_series() {
        let d1 = constant_outdegree_mislearning(1, 1.0, 1e-12).unwrap();
        assert_eq!(d1.value, 0.0);

        let d2 = constant_outdegree_mislearning(2, 1.0, 1e-12).unwrap();
        assert!((d2.value - CONST_D2_SIGMA1).abs() < 1e-12);
        // independent closed form at d = 2: l1 = 3, l2^2 = 12 pi^2 - 117
        let l2sq = 12.0 * std::f64::consts::PI.powi(2) - 117.0;
        let closed = std_normal_cdf(-3.0 / l2sq.sqrt());
        assert!((d2.value - closed).abs() < 1e-12);

        // exact l1 norms: (d+1)/(d-1)
        for &d in &[2u32, 3, 4, 5, 6] {
            let p = constant_outdegree_mislearning(d, 1.0, 1e-12).unwrap();
            let l1 = p.params.iter().find(|&&(k, _)| k == "l1").unwrap().1;
            let want = f64::from(d + 1) / f64::from(d - 1);
            assert!((l1 - want).abs() < 1e-10, "l1 at d={d}: {l1} vs {want}");
        }

        // two far-apart tolerances agree
        let coarse = constant_outdegree_mislearning(2, 1.0, 1e-10).unwrap().value;
        let fine = constant_outdegree_mislearning(2, 1.0, 1e-14).unwrap().value;
        assert!((coarse - fine).abs() < 1e-8);

        // strictly increasing in d
        let mut last = 0.0;
        for d in 2..=10 {
            let p = constant_outdegree_mislearning(d, 1.0, 1e-12).unwrap().value;
            assert!(p > last, "d={d}");
            last = p;
        }
    }

    #[test]
    fn decay_regimes() {
        match decay_mislearning(0.75, 1.0).unwrap() {
            DecayOutcome::Converges(p) => {
                let uniform = uniform_mislearning(0.5, 1.0).unwrap();
                assert_eq!(p.value, uniform.value);
            }
            DecayOutcome::NonConvergent => panic!("delta=0.75 converges"),
        }
        assert!(matches!(
            decay_mislearning(0.5, 1.0).unwrap(),
            DecayOutcome::Converges(MislearningProb { value, .. }) if value == 0.0
        ));
        assert_eq!(decay_mislearning(0.3, 1.0).unwrap(), DecayOutcome::NonConvergent);
        assert!(decay_mislearning(0.0, 1.0).is_err());
        assert!(decay_mislearning(1.2, 1.0).is_err());

        // continuous and strictly increasing on (1/2, 1]
        let near = match decay_mislearning(0.5 + 1e-9, 1.0).unwrap() {
            DecayOutcome::Converges(p) => p.value,
            _ => unreachable!(),
        };
        assert!(near < 1e-6, "value should vanish toward delta = 1/2, got {near}");
        let mut last = 0.0;
        for k in 11..=20 {
            let delta = f64::from(k) / 20.0;
            let v = match decay_mislearning(delta, 1.0).unwrap() {
                DecayOutcome::Converges(p) => p.value,
                _ => unreachable!(),
            };
            assert!(v > last);
            last = v;
        }
    }

    #[test]
    fn decay_two_groups_threshold() {
        let r = decay_two_groups(0.75, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(r.delta0, 0.5);
        for &q in &[0.25, 0.5] {
            let r = decay_two_groups(0.9, q, q, 1.0).unwrap();
            assert!((r.delta0 - 1.0 / (1.0 + q)).abs() < 1e-15);
        }

        // reduction to the plain decaying family at q_s = q_d = 1
        for &delta in &[0.6, 0.75, 0.9] {
            let tg = decay_two_groups(delta, 1.0, 1.0, 1.0).unwrap();
            let plain = decay_mislearning(delta, 1.0).unwrap();
            match (tg.outcome, plain) {
                (DecayOutcome::Converges(a), DecayOutcome::Converges(b)) => {
                    assert!((a.value - b.value).abs() < 1e-15 * (1.0 + b.value));
                }
                _ => panic!("both should converge at delta={delta}"),
            }
        }

        // below, at, and above the threshold
        assert_eq!(
            decay_two_groups(0.4, 1.0, 1.0, 1.0).unwrap().outcome,
            DecayOutcome::NonConvergent
        );
        match decay_two_groups(0.5, 1.0, 1.0, 1.0).unwrap().outcome {
            DecayOutcome::Converges(p) => assert_eq!(p.value, 0.0),
            _ => panic!("delta = delta0 learns correctly"),
        }

        // increasing in each of delta, q_s, q_d, with the q_d push larger
        let base = |d: f64, s: f64, c: f64| match decay_two_groups(d, s, c, 1.0).unwrap().outcome {
            DecayOutcome::Converges(p) => p.value,
            _ => panic!("should converge"),
        };
        let p0 = base(0.9, 0.8, 0.2);
        let dd = base(0.9 + 0.05, 0.8, 0.2) - p0;
        let ds = base(0.9, 0.85, 0.2) - p0;
        let dc = base(0.9, 0.8, 0.25) - p0;
        assert!(dd > 0.0 && ds > 0.0 && dc > 0.0);
        assert!(dc > ds, "q_d push should dominate: {dc} vs {ds}");

        assert!(matches!(
            decay_two_groups(0.9, 0.5, 0.0, 1.0),
            Err(Error::DisconnectedGroups)
        ));
    }
}
