//! Command-line surface over the learning engine: closed-form mislearning
//! curves, seeded Monte Carlo estimates, experiment accuracy tables, and
//! path-weight / influence inspection, all emitted as CSV. Every command is
//! pure given its flags and seed, so reruns reproduce output byte for byte.
//!
//! Exit codes: 0 success, 2 usage, 3 domain error, 4 internal or I/O.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use seqlearn::analytic::{
    constant_outdegree_mislearning, decay_mislearning, decay_two_groups, two_groups_mislearning,
    uniform_mislearning, DecayOutcome,
};
use seqlearn::experiment::{accuracy_curves, rational_lower_bound, ExperimentSpec};
use seqlearn::network::{
    build_weighted, correct_learning_diagnostic, path_weights, sample_network_seeded,
    NetworkGenerator,
};
use seqlearn::signals::SignalModel;
use seqlearn::simulate::{
    estimate_mislearning, ActionRegime, BinaryUpdateRule, SimulationConfig,
};

const TAIL_TOL: f64 = 1e-12;

#[derive(Parser)]
#[command(name = "seqlearn", version, about = "Naive sequential learning on networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the CSV to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Write a JSON run manifest to this file.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    /// Monte Carlo worker threads; defaults to SEQLEARN_WORKERS, then to
    /// all cores. Estimates do not depend on this.
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form mislearning probabilities over parameter grids.
    Analytic {
        #[command(subcommand)]
        family: AnalyticFamily,
    },
    /// Seeded Monte Carlo estimate of the mislearning probability.
    Simulate(SimulateArgs),
    /// Per-agent accuracy tables for the experimental setting.
    Experiment(ExperimentArgs),
    /// Path weights and influence of realized or weighted networks.
    Network {
        #[command(subcommand)]
        what: NetworkCmd,
    },
}

/// Grid-valued flags take a single number, a comma list, or start:stop:step
/// (endpoints included within 1e-9).
#[derive(Subcommand)]
enum AnalyticFamily {
    /// Every feasible link carries weight q.
    Uniform {
        #[arg(long)]
        q: String,
        #[arg(long, default_value = "1")]
        sigma: String,
    },
    /// Odd/even groups with within-weight qs and cross-weight qd.
    TwoGroups {
        #[arg(long)]
        qs: String,
        #[arg(long)]
        qd: String,
        #[arg(long, default_value = "1")]
        sigma: String,
    },
    /// Weights decay geometrically with distance.
    Decay {
        #[arg(long)]
        delta: String,
        #[arg(long, default_value = "1")]
        sigma: String,
    },
    /// Decaying weights on top of the two-groups pattern.
    DecayTwoGroups {
        #[arg(long)]
        delta: String,
        #[arg(long)]
        qs: String,
        #[arg(long)]
        qd: String,
        #[arg(long, default_value = "1")]
        sigma: String,
    },
    /// Each agent divides out-degree d over all predecessors.
    ConstantDegree {
        #[arg(long)]
        d: String,
        #[arg(long, default_value = "1")]
        sigma: String,
    },
}

#[derive(Args)]
struct FamilyArgs {
    /// Network family: er, uniform, two-groups, two-groups-random, decay,
    /// decay-two-groups, constant-degree, autarkic-mix.
    #[arg(long)]
    family: String,
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    qs: Option<String>,
    #[arg(long)]
    qd: Option<String>,
    #[arg(long)]
    delta: Option<String>,
    #[arg(long)]
    d: Option<String>,
    /// Base family for autarkic-mix: er or uniform, parameterized by --q.
    #[arg(long)]
    base: Option<String>,
    /// Autarkic-mix block sizes: n1 linked positions then n2 autarkic.
    #[arg(long)]
    n1: Option<usize>,
    #[arg(long)]
    n2: Option<usize>,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    net: FamilyArgs,
    /// Signal model: gaussian, binary, triangular.
    #[arg(long)]
    signal: String,
    /// Gaussian signal mean (default 1).
    #[arg(long)]
    mu: Option<f64>,
    /// Gaussian signal standard deviation (default 2).
    #[arg(long)]
    sigma: Option<f64>,
    /// Binary signal accuracy.
    #[arg(long)]
    p: Option<f64>,
    /// Horizon: agents per replication.
    #[arg(long)]
    n: usize,
    /// Replications.
    #[arg(long = "R")]
    replications: u64,
    /// Master seed (default 0, echoed in the manifest).
    #[arg(long)]
    seed: Option<u64>,
    /// Action regime: continuous (default for gaussian/triangular) or
    /// binary (default for binary signals).
    #[arg(long)]
    regime: Option<String>,
    /// Update for observed binary actions: kappa (event update, default)
    /// or imputed (imputed-mean signal update).
    #[arg(long)]
    rule: Option<String>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Accuracy model.
    #[arg(long, value_parser = ["naive", "rational-bound"])]
    model: String,
    /// Link probability grid.
    #[arg(long)]
    q: String,
    #[arg(long, default_value_t = 40)]
    agents: usize,
    #[arg(long, default_value_t = 1.0)]
    mu: f64,
    #[arg(long, default_value_t = 2.0)]
    sigma: f64,
}

#[derive(Subcommand)]
enum NetworkCmd {
    /// Path-weight vector of one target agent.
    Paths {
        #[command(flatten)]
        net: FamilyArgs,
        /// Number of agents.
        #[arg(long)]
        n: usize,
        /// Target agent, 1-based.
        #[arg(long)]
        target: usize,
        /// Seed for random families (default 0).
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Maximal influence at a list of horizons for a weighted family.
    Influence {
        #[command(flatten)]
        net: FamilyArgs,
        /// Comma-separated horizons, e.g. 50,100,200.
        #[arg(long)]
        horizons: String,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
    Internal(String),
}

impl From<seqlearn::Error> for Failure {
    fn from(e: seqlearn::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

type CmdResult<T> = Result<T, Failure>;

struct CmdOutput {
    csv: String,
    /// Seed the command actually used, for the manifest.
    seed: Option<u64>,
}

#[derive(Serialize)]
struct RunManifest {
    subcommand: String,
    args: Vec<String>,
    seed: Option<u64>,
    version: String,
    duration_seconds: f64,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn parse_num(flag: &str, text: &str) -> CmdResult<f64> {
    text.parse::<f64>()
        .map_err(|_| usage(format!("--{flag}: cannot parse `{text}` as a number")))
}

/// A single number, a comma list, or start:stop:step inclusive of both
/// endpoints within 1e-9.
fn parse_grid(flag: &str, text: &str) -> CmdResult<Vec<f64>> {
    let text = text.trim();
    if text.is_empty() {
        return Err(usage(format!("--{flag}: empty value")));
    }
    if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(usage(format!(
                "--{flag}: grid syntax is start:stop:step, got `{text}`"
            )));
        }
        let start = parse_num(flag, parts[0])?;
        let stop = parse_num(flag, parts[1])?;
        let step = parse_num(flag, parts[2])?;
        if !(step > 0.0) {
            return Err(usage(format!("--{flag}: grid step must be positive")));
        }
        if stop + 1e-9 < start {
            return Err(usage(format!("--{flag}: grid stop lies before start")));
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize;
        let points = (0..=count)
            .map(|k| {
                let v = start + k as f64 * step;
                // keep the endpoint exact instead of accumulated
                if (v - stop).abs() <= 1e-9 {
                    stop
                } else {
                    v
                }
            })
            .collect();
        return Ok(points);
    }
    text.split(',').map(|p| parse_num(flag, p.trim())).collect()
}

fn parse_int_grid(flag: &str, text: &str) -> CmdResult<Vec<u32>> {
    parse_grid(flag, text)?
        .into_iter()
        .map(|v| {
            if v.fract() == 0.0 && (0.0..=u32::MAX as f64).contains(&v) {
                Ok(v as u32)
            } else {
                Err(usage(format!("--{flag}: `{v}` is not a nonnegative integer")))
            }
        })
        .collect()
}

/// Render with 6 significant digits, trailing zeros trimmed.
fn fmt_value(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (5 - mag).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn outcome_cell(outcome: &DecayOutcome) -> String {
    match outcome {
        DecayOutcome::Converges(m) => fmt_value(m.value),
        DecayOutcome::NonConvergent => "NONCONVERGENT".into(),
    }
}

fn cmd_analytic(family: &AnalyticFamily) -> CmdResult<CmdOutput> {
    let mut csv = String::new();
    match family {
        AnalyticFamily::Uniform { q, sigma } => {
            csv.push_str("q,sigma,mislearning\n");
            for &qv in &parse_grid("q", q)? {
                for &sv in &parse_grid("sigma", sigma)? {
                    let m = uniform_mislearning(qv, sv)?;
                    let _ = writeln!(csv, "{},{},{}", fmt_value(qv), fmt_value(sv), fmt_value(m.value));
                }
            }
        }
        AnalyticFamily::TwoGroups { qs, qd, sigma } => {
            csv.push_str("q_s,q_d,sigma,mislearning\n");
            for &a in &parse_grid("qs", qs)? {
                for &b in &parse_grid("qd", qd)? {
                    for &sv in &parse_grid("sigma", sigma)? {
                        let m = two_groups_mislearning(a, b, sv)?;
                        let _ = writeln!(
                            csv,
                            "{},{},{},{}",
                            fmt_value(a),
                            fmt_value(b),
                            fmt_value(sv),
                            fmt_value(m.value)
                        );
                    }
                }
            }
        }
        AnalyticFamily::Decay { delta, sigma } => {
            csv.push_str("delta,sigma,mislearning\n");
            for &dv in &parse_grid("delta", delta)? {
                for &sv in &parse_grid("sigma", sigma)? {
                    let out = decay_mislearning(dv, sv)?;
                    let _ = writeln!(csv, "{},{},{}", fmt_value(dv), fmt_value(sv), outcome_cell(&out));
                }
            }
        }
        AnalyticFamily::DecayTwoGroups { delta, qs, qd, sigma } => {
            csv.push_str("delta,q_s,q_d,sigma,delta0,mislearning\n");
            for &dv in &parse_grid("delta", delta)? {
                for &a in &parse_grid("qs", qs)? {
                    for &b in &parse_grid("qd", qd)? {
                        for &sv in &parse_grid("sigma", sigma)? {
                            let res = decay_two_groups(dv, a, b, sv)?;
                            let _ = writeln!(
                                csv,
                                "{},{},{},{},{},{}",
                                fmt_value(dv),
                                fmt_value(a),
                                fmt_value(b),
                                fmt_value(sv),
                                fmt_value(res.delta0),
                                outcome_cell(&res.outcome)
                            );
                        }
                    }
                }
            }
        }
        AnalyticFamily::ConstantDegree { d, sigma } => {
            csv.push_str("d,sigma,mislearning\n");
            for &dv in &parse_int_grid("d", d)? {
                for &sv in &parse_grid("sigma", sigma)? {
                    let m = constant_outdegree_mislearning(dv, sv, TAIL_TOL)?;
                    let _ = writeln!(csv, "{},{},{}", dv, fmt_value(sv), fmt_value(m.value));
                }
            }
        }
    }
    Ok(CmdOutput { csv, seed: None })
}

/// One network family instance plus its label for the params column.
struct FamilyPoint {
    gen: NetworkGenerator,
    label: String,
}

fn require<'a>(family: &str, field: &'a Option<String>, name: &str) -> CmdResult<&'a str> {
    field
        .as_deref()
        .ok_or_else(|| usage(format!("--family {family} requires --{name}")))
}

/// Expand family flags into generator instances, one per grid point, in
/// row-major order of the declared grids.
fn family_points(args: &FamilyArgs) -> CmdResult<Vec<FamilyPoint>> {
    let mut points = Vec::new();
    match args.family.as_str() {
        "er" => {
            for &q in &parse_grid("q", require(&args.family, &args.q, "q")?)? {
                points.push(FamilyPoint {
                    gen: NetworkGenerator::ErdosRenyiRandom { q },
                    label: format!("q={}", fmt_value(q)),
                });
            }
        }
        "uniform" => {
            for &q in &parse_grid("q", require(&args.family, &args.q, "q")?)? {
                points.push(FamilyPoint {
                    gen: NetworkGenerator::Uniform { q },
                    label: format!("q={}", fmt_value(q)),
                });
            }
        }
        "two-groups" | "two-groups-random" => {
            let random = args.family == "two-groups-random";
            for &q_s in &parse_grid("qs", require(&args.family, &args.qs, "qs")?)? {
                for &q_d in &parse_grid("qd", require(&args.family, &args.qd, "qd")?)? {
                    let gen = if random {
                        NetworkGenerator::TwoGroupsRandom { q_s, q_d }
                    } else {
                        NetworkGenerator::TwoGroups { q_s, q_d }
                    };
                    points.push(FamilyPoint {
                        gen,
                        label: format!("qs={};qd={}", fmt_value(q_s), fmt_value(q_d)),
                    });
                }
            }
        }
        "decay" => {
            for &delta in &parse_grid("delta", require(&args.family, &args.delta, "delta")?)? {
                points.push(FamilyPoint {
                    gen: NetworkGenerator::Decaying { delta },
                    label: format!("delta={}", fmt_value(delta)),
                });
            }
        }
        "decay-two-groups" => {
            for &delta in &parse_grid("delta", require(&args.family, &args.delta, "delta")?)? {
                for &q_s in &parse_grid("qs", require(&args.family, &args.qs, "qs")?)? {
                    for &q_d in &parse_grid("qd", require(&args.family, &args.qd, "qd")?)? {
                        points.push(FamilyPoint {
                            gen: NetworkGenerator::DecayingTwoGroups { delta, q_s, q_d },
                            label: format!(
                                "delta={};qs={};qd={}",
                                fmt_value(delta),
                                fmt_value(q_s),
                                fmt_value(q_d)
                            ),
                        });
                    }
                }
            }
        }
        "constant-degree" => {
            for &d in &parse_int_grid("d", require(&args.family, &args.d, "d")?)? {
                points.push(FamilyPoint {
                    gen: NetworkGenerator::ConstantOutDegree { d },
                    label: format!("d={d}"),
                });
            }
        }
        "autarkic-mix" => {
            let base_name = require(&args.family, &args.base, "base")?;
            let n1 = args.n1.ok_or_else(|| usage("--family autarkic-mix requires --n1"))?;
            let n2 = args.n2.ok_or_else(|| usage("--family autarkic-mix requires --n2"))?;
            for &q in &parse_grid("q", require(&args.family, &args.q, "q")?)? {
                let base = match base_name {
                    "er" => NetworkGenerator::ErdosRenyiRandom { q },
                    "uniform" => NetworkGenerator::Uniform { q },
                    other => {
                        return Err(usage(format!(
                            "--base must be er or uniform, got `{other}`"
                        )))
                    }
                };
                points.push(FamilyPoint {
                    gen: NetworkGenerator::AutarkicMix {
                        base: Box::new(base),
                        n1,
                        n2,
                    },
                    label: format!(
                        "base={base_name};q={};n1={n1};n2={n2}",
                        fmt_value(q)
                    ),
                });
            }
        }
        other => {
            return Err(usage(format!("unknown family `{other}`")));
        }
    }
    Ok(points)
}

fn single_point(args: &FamilyArgs) -> CmdResult<FamilyPoint> {
    let mut points = family_points(args)?;
    if points.len() != 1 {
        return Err(usage("network commands take single parameter values, not grids"));
    }
    Ok(points.remove(0))
}

fn parse_signal(a: &SimulateArgs) -> CmdResult<(SignalModel, String)> {
    match a.signal.as_str() {
        "gaussian" => {
            let mu = a.mu.unwrap_or(1.0);
            let sigma = a.sigma.unwrap_or(2.0);
            let model = SignalModel::gaussian(mu, sigma)?;
            Ok((model, format!("gaussian(mu={};sigma={})", fmt_value(mu), fmt_value(sigma))))
        }
        "binary" => {
            let p = a.p.ok_or_else(|| usage("--signal binary requires --p"))?;
            Ok((SignalModel::binary(p)?, format!("binary(p={})", fmt_value(p))))
        }
        "triangular" => Ok((SignalModel::Triangular, "triangular".into())),
        other => Err(usage(format!("unknown signal model `{other}`"))),
    }
}

fn parse_regime(a: &SimulateArgs, model: SignalModel) -> CmdResult<ActionRegime> {
    let rule = match a.rule.as_deref() {
        None | Some("kappa") => BinaryUpdateRule::EventKappa,
        Some("imputed") => BinaryUpdateRule::ImputedMean,
        Some(other) => return Err(usage(format!("unknown rule `{other}`"))),
    };
    match a.regime.as_deref() {
        None => {
            if matches!(model, SignalModel::Binary { .. }) {
                Ok(ActionRegime::Binary(rule))
            } else {
                Ok(ActionRegime::Continuous)
            }
        }
        Some("continuous") => Ok(ActionRegime::Continuous),
        Some("binary") => Ok(ActionRegime::Binary(rule)),
        Some(other) => Err(usage(format!("unknown regime `{other}`"))),
    }
}

fn cmd_simulate(a: &SimulateArgs) -> CmdResult<CmdOutput> {
    let points = family_points(&a.net)?;
    let (model, signal_label) = parse_signal(a)?;
    let regime = parse_regime(a, model)?;
    let seed = a.seed.unwrap_or(0);
    let mut csv = String::from("family,params,signal,n,R,seed,estimate,stderr\n");
    for point in &points {
        let cfg = SimulationConfig {
            generator: point.gen.clone(),
            n: a.n,
            signal: model,
            regime,
            replications: a.replications,
            seed,
        };
        let est = estimate_mislearning(&cfg)?;
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{},{}",
            a.net.family,
            point.label,
            signal_label,
            a.n,
            a.replications,
            seed,
            fmt_value(est.estimate),
            fmt_value(est.standard_error)
        );
    }
    Ok(CmdOutput { csv, seed: Some(seed) })
}

fn cmd_experiment(a: &ExperimentArgs) -> CmdResult<CmdOutput> {
    let specs: Vec<ExperimentSpec> = parse_grid("q", &a.q)?
        .into_iter()
        .map(|q| ExperimentSpec {
            n_agents: a.agents,
            q,
            mu: a.mu,
            sigma: a.sigma,
        })
        .collect();
    let mut csv = String::new();
    let echo = serde_json::to_string(&specs)
        .map_err(|e| Failure::Internal(format!("spec echo: {e}")))?;
    let _ = writeln!(csv, "# {echo}");
    csv.push_str("agent,q,model,accuracy\n");
    match a.model.as_str() {
        "naive" => {
            let curves = accuracy_curves(&specs)?;
            for row in &curves.rows {
                let _ = writeln!(
                    csv,
                    "{},{},{},{}",
                    row.agent,
                    fmt_value(row.q),
                    row.model,
                    fmt_value(row.accuracy)
                );
            }
            if specs.len() >= 2 {
                let cell = curves
                    .crossing
                    .map_or_else(|| "none".into(), |c| c.to_string());
                let _ = writeln!(csv, "# sparse_overtakes_dense_at={cell}");
            }
        }
        "rational-bound" => {
            for spec in &specs {
                let acc = rational_lower_bound(spec)?;
                for (idx, &value) in acc.iter().enumerate() {
                    let _ = writeln!(
                        csv,
                        "{},{},rational-bound,{}",
                        idx + 1,
                        fmt_value(spec.q),
                        fmt_value(value)
                    );
                }
            }
        }
        other => return Err(usage(format!("unknown model `{other}`"))),
    }
    Ok(CmdOutput { csv, seed: None })
}

fn cmd_network(what: &NetworkCmd) -> CmdResult<CmdOutput> {
    match what {
        NetworkCmd::Paths { net, n, target, seed } => {
            let point = single_point(net)?;
            if *target < 1 || *target > *n {
                return Err(usage(format!(
                    "--target {target} is out of range for --n {n}"
                )));
            }
            let (network, used_seed) = if point.gen.is_random() {
                let s = seed.unwrap_or(0);
                (sample_network_seeded(&point.gen, *n, s)?, Some(s))
            } else {
                (build_weighted(&point.gen, *n)?, None)
            };
            let pw = path_weights(&network, *target)?;
            let header: Vec<String> = (1..=*target).map(|j| format!("b{j}")).collect();
            let row: Vec<String> = (1..=*target).map(|j| fmt_value(pw.weight_of(j))).collect();
            let csv = format!("{}\n{}\n", header.join(","), row.join(","));
            Ok(CmdOutput { csv, seed: used_seed })
        }
        NetworkCmd::Influence { net, horizons } => {
            let point = single_point(net)?;
            let hs: Vec<usize> = horizons
                .split(',')
                .map(|p| {
                    p.trim()
                        .parse::<usize>()
                        .map_err(|_| usage(format!("--horizons: cannot parse `{p}`")))
                })
                .collect::<CmdResult<_>>()?;
            let rows = correct_learning_diagnostic(&point.gen, &hs)?;
            let mut csv = String::from("horizon,max_influence\n");
            for (h, infl) in rows {
                let _ = writeln!(csv, "{h},{}", fmt_value(infl));
            }
            Ok(CmdOutput { csv, seed: None })
        }
    }
}

fn dispatch(cli: &Cli) -> CmdResult<CmdOutput> {
    match &cli.command {
        Command::Analytic { family } => cmd_analytic(family),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Experiment(args) => cmd_experiment(args),
        Command::Network { what } => cmd_network(what),
    }
}

fn subcommand_name(cli: &Cli) -> String {
    match &cli.command {
        Command::Analytic { family } => {
            let tag = match family {
                AnalyticFamily::Uniform { .. } => "uniform",
                AnalyticFamily::TwoGroups { .. } => "two-groups",
                AnalyticFamily::Decay { .. } => "decay",
                AnalyticFamily::DecayTwoGroups { .. } => "decay-two-groups",
                AnalyticFamily::ConstantDegree { .. } => "constant-degree",
            };
            format!("analytic {tag}")
        }
        Command::Simulate(_) => "simulate".into(),
        Command::Experiment(_) => "experiment".into(),
        Command::Network { what } => match what {
            NetworkCmd::Paths { .. } => "network paths".into(),
            NetworkCmd::Influence { .. } => "network influence".into(),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let workers = cli.workers.or_else(|| {
        std::env::var("SEQLEARN_WORKERS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    let outcome = match workers {
        Some(0) => Err(usage("--workers must be at least 1")),
        Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(Failure::Internal(format!("worker pool: {e}"))),
        },
        None => dispatch(&cli),
    };
    let out = match outcome {
        Ok(out) => out,
        Err(failure) => {
            let (code, msg) = match failure {
                Failure::Usage(m) => (2, m),
                Failure::Domain(m) => (3, m),
                Failure::Internal(m) => (4, m),
            };
            eprintln!("error: {msg}");
            return ExitCode::from(code);
        }
    };
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &out.csv) {
            eprintln!("error: writing {}: {e}", path.display());
            return ExitCode::from(4);
        }
    } else {
        print!("{}", out.csv);
    }
    if let Some(path) = &cli.manifest {
        let manifest = RunManifest {
            subcommand: subcommand_name(&cli),
            args: std::env::args().skip(1).collect(),
            seed: out.seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            duration_seconds: start.elapsed().as_secs_f64(),
        };
        let body = match serde_json::to_string_pretty(&manifest) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("error: manifest: {e}");
                return ExitCode::from(4);
            }
        };
        if let Err(e) = std::fs::write(path, body + "\n") {
            eprintln!("error: writing {}: {e}", path.display());
            return ExitCode::from(4);
        }
    }
    ExitCode::SUCCESS
}
