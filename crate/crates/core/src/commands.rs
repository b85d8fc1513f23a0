//! Command-line front end shared by the `hardy-games` binary.
//!
//! Each command renders one report to a string; the binary only prints it
//! and maps errors to exit codes (2 usage, 3 cap or budget, 4 validation).

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::classical::{classical_value_with, search_size, SolverConfig};
use crate::error::Error;
use crate::game::{chsh, trivial_always_win, truncate, GameSpec, HardyGame, Rational, Verifier};
use crate::lift::{check_dichotomy, chsh_lift, dimension_lower_bound};
use crate::quantum::{
    build_sn, chsh_canonical, optimal_theta, quantum_value, sn_success_closed_form, HardyParams,
    QuantumStrategy, QuantumStrategyFile,
};
use crate::referee::{simulate, RefereeConfig};

#[derive(Debug, Parser)]
#[command(
    name = "hardy-games",
    version,
    about = "Nonlocal games toolkit: Hardy's game, CHSH and lifted games"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Worker threads for parallel stages (defaults to all cores).
    #[arg(long, global = true)]
    pub parallel: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact classical value by exhaustive deterministic search.
    ClassicalValue(GameArgs),
    /// Exact success probability of a quantum strategy.
    QuantumValue {
        #[command(flatten)]
        game: GameArgs,
        #[command(flatten)]
        strategy: StrategyArgs,
    },
    /// Seeded Monte Carlo referee.
    Sample {
        #[command(flatten)]
        game: GameArgs,
        #[command(flatten)]
        strategy: StrategyArgs,
        #[arg(long, default_value_t = 100_000)]
        rounds: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Include every round in the output.
        #[arg(long)]
        transcript: bool,
    },
    /// Error/dimension tradeoff of the Hardy strategy family.
    Tradeoff {
        /// Comma-separated target errors in (0, 1).
        #[arg(long, value_delimiter = ',', default_value = "0.01,0.001,0.0001")]
        eps: Vec<f64>,
    },
    /// Check the rejection-set dichotomy for all answer pairs up to a length.
    Dichotomy(GameArgs),
    /// Write a (truncated) game as JSON.
    ExportGame {
        #[command(flatten)]
        game: GameArgs,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Debug, Args)]
pub struct GameArgs {
    /// hardy, chsh, chsh-lift, trivial-always-win, or a game JSON file.
    #[arg(long)]
    pub game: String,
    /// Answer-length truncation for string games.
    #[arg(long)]
    pub max_len: Option<usize>,
    /// Slack of the lifted game.
    #[arg(long, default_value_t = 0.05)]
    pub delta: f64,
}

#[derive(Clone, Debug, Args)]
pub struct StrategyArgs {
    /// sn:<n>, chsh-canonical, or a strategy JSON file.
    #[arg(long)]
    pub strategy: String,
    /// Hardy angle in radians, or `opt`.
    #[arg(long, default_value = "opt")]
    pub theta: String,
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Run(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Run(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Run(e) if e.is_resource_limit() => 3,
            CliError::Run(_) => 4,
        }
    }

    /// Single-line JSON for stderr.
    pub fn to_json(&self) -> String {
        let (kind, message) = match self {
            CliError::Usage(m) => ("usage", m.clone()),
            CliError::Run(e) => (e.kind(), e.to_string()),
        };
        json!({ "error": kind, "message": message, "exit_code": self.exit_code() }).to_string()
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Rounds to 10 significant digits.
pub fn round_sig(p: f64) -> f64 {
    format_prob(p).parse().unwrap_or(p)
}

/// Formats a probability with 10 significant digits.
pub fn format_prob(p: f64) -> String {
    if p == 0.0 || !p.is_finite() {
        return format!("{p}");
    }
    let magnitude = p.abs().log10().floor() as i32;
    let decimals = (9 - magnitude).max(0) as usize;
    format!("{p:.decimals$}")
}

pub fn format_rational(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

enum GameSource {
    Hardy,
    Chsh,
    ChshLift,
    TrivialAlwaysWin,
    File(GameSpec),
}

impl GameSource {
    fn resolve(name: &str) -> CliResult<Self> {
        Ok(match name {
            "hardy" => GameSource::Hardy,
            "chsh" => GameSource::Chsh,
            "chsh-lift" => GameSource::ChshLift,
            "trivial-always-win" => GameSource::TrivialAlwaysWin,
            path => {
                if !std::path::Path::new(path).exists() {
                    return Err(CliError::Usage(format!(
                        "unknown game {path:?}: expected hardy, chsh, chsh-lift, trivial-always-win or a file"
                    )));
                }
                GameSource::File(GameSpec::load(path)?)
            }
        })
    }

    fn is_string_game(&self) -> bool {
        matches!(self, GameSource::Hardy | GameSource::ChshLift)
    }

    /// Finite game; string games are truncated at `max_len` (default 1).
    fn finite(&self, args: &GameArgs) -> CliResult<GameSpec> {
        let max_len = args.max_len.unwrap_or(1);
        Ok(match self {
            GameSource::Hardy => truncate(&HardyGame, max_len)?,
            GameSource::ChshLift => truncate(&chsh_lift(args.delta)?, max_len)?,
            GameSource::Chsh => chsh(),
            GameSource::TrivialAlwaysWin => trivial_always_win(),
            GameSource::File(g) => g.clone(),
        })
    }

    fn verifier(&self, args: &GameArgs) -> CliResult<Box<dyn Verifier>> {
        Ok(match self {
            GameSource::Hardy => Box::new(HardyGame),
            GameSource::ChshLift => Box::new(chsh_lift(args.delta)?),
            GameSource::Chsh => Box::new(chsh()),
            GameSource::TrivialAlwaysWin => Box::new(trivial_always_win()),
            GameSource::File(g) => Box::new(g.clone()),
        })
    }
}

enum StrategySpec {
    Sn { n: usize, theta: f64 },
    ChshCanonical,
    File(PathBuf),
}

impl StrategySpec {
    fn parse(args: &StrategyArgs) -> CliResult<Self> {
        let theta = match args.theta.as_str() {
            "opt" => optimal_theta().0,
            t => t.parse::<f64>().map_err(|_| {
                CliError::Usage(format!("--theta expects radians or `opt`, got {t:?}"))
            })?,
        };
        if let Some(n) = args.strategy.strip_prefix("sn:") {
            let n =
                n.parse::<usize>().ok().filter(|&n| n >= 1).ok_or_else(|| {
                    CliError::Usage(format!("bad copy count in {:?}", args.strategy))
                })?;
            return Ok(StrategySpec::Sn { n, theta });
        }
        match args.strategy.as_str() {
            "chsh-canonical" => Ok(StrategySpec::ChshCanonical),
            path if std::path::Path::new(path).exists() => Ok(StrategySpec::File(path.into())),
            other => Err(CliError::Usage(format!(
                "unknown strategy {other:?}: expected sn:<n>, chsh-canonical or a file"
            ))),
        }
    }

    fn build(&self) -> CliResult<QuantumStrategy> {
        Ok(match self {
            StrategySpec::Sn { n, theta } => build_sn(&HardyParams::new(*theta)?, *n)?,
            StrategySpec::ChshCanonical => chsh_canonical(),
            StrategySpec::File(path) => {
                let text = std::fs::read_to_string(path).map_err(Error::from)?;
                serde_json::from_str::<QuantumStrategyFile>(&text)
                    .map_err(Error::from)?
                    .into_strategy()?
            }
        })
    }

    fn describe(&self) -> String {
        match self {
            StrategySpec::Sn { n, .. } => format!("sn:{n}"),
            StrategySpec::ChshCanonical => "chsh-canonical".into(),
            StrategySpec::File(p) => p.display().to_string(),
        }
    }

    fn theta(&self) -> Option<f64> {
        match self {
            StrategySpec::Sn { theta, .. } => Some(*theta),
            _ => None,
        }
    }
}

/// Runs a parsed command line and returns the text to print.
pub fn run(cli: &Cli) -> CliResult<String> {
    match cli.parallel {
        Some(0) => Err(CliError::Usage("--parallel must be at least 1".into())),
        Some(threads) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
            pool.install(|| dispatch(cli))
        }
        None => dispatch(cli),
    }
}

fn dispatch(cli: &Cli) -> CliResult<String> {
    let f = cli.format;
    match &cli.command {
        Command::ClassicalValue(game) => cmd_classical_value(game, f),
        Command::QuantumValue { game, strategy } => cmd_quantum_value(game, strategy, f),
        Command::Sample {
            game,
            strategy,
            rounds,
            seed,
            transcript,
        } => cmd_sample(game, strategy, *rounds, *seed, *transcript, f),
        Command::Tradeoff { eps } => cmd_tradeoff(eps, f),
        Command::Dichotomy(game) => cmd_dichotomy(game, f),
        Command::ExportGame { game, out } => cmd_export_game(game, out.as_deref()),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct ClassicalReport {
    game: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_len: Option<usize>,
    value: String,
    value_f64: f64,
    witness_alice: Vec<(String, String)>,
    witness_bob: Vec<(String, String)>,
    search_size: String,
    strategies_examined: u64,
    pruned: u64,
}

pub fn cmd_classical_value(args: &GameArgs, format: Format) -> CliResult<String> {
    let source = GameSource::resolve(&args.game)?;
    let game = source.finite(args)?;
    let report = classical_value_with(&game, &SolverConfig::default())?;
    let (alice, bob) = report.witness.labels(&game);
    let rep = ClassicalReport {
        game: args.game.clone(),
        max_len: source.is_string_game().then(|| args.max_len.unwrap_or(1)),
        value: format_rational(&report.value),
        value_f64: round_sig(*report.value.numer() as f64 / *report.value.denom() as f64),
        witness_alice: game.questions_a().iter().cloned().zip(alice).collect(),
        witness_bob: game.questions_b().iter().cloned().zip(bob).collect(),
        search_size: search_size(&game).to_string(),
        strategies_examined: report.strategies_examined as u64,
        pruned: report.pruned as u64,
    };
    Ok(match format {
        Format::Json => to_json(&rep),
        Format::Csv => csv(
            &["game", "max_len", "value", "strategies_examined", "pruned"],
            &[vec![
                rep.game.clone(),
                rep.max_len.map(|l| l.to_string()).unwrap_or_default(),
                rep.value.clone(),
                rep.strategies_examined.to_string(),
                rep.pruned.to_string(),
            ]],
        ),
        Format::Text => {
            let show = |w: &[(String, String)]| {
                w.iter()
                    .map(|(q, a)| format!("{q}->{a:?}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            let mut s = String::new();
            writeln!(s, "game: {}", rep.game).unwrap();
            if let Some(l) = rep.max_len {
                writeln!(s, "max_len: {l}").unwrap();
            }
            writeln!(s, "value: {}", rep.value).unwrap();
            writeln!(s, "witness alice: {}", show(&rep.witness_alice)).unwrap();
            writeln!(s, "witness bob: {}", show(&rep.witness_bob)).unwrap();
            writeln!(
                s,
                "search: {} leaves examined, {} subtrees pruned, unpruned size {}",
                rep.strategies_examined, rep.pruned, rep.search_size
            )
            .unwrap();
            s
        }
    })
}

#[derive(Serialize)]
struct QuantumReport {
    game: String,
    strategy: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    theta: Option<f64>,
    value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_form: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_form_delta: Option<f64>,
    local_dim_a: usize,
    local_dim_b: usize,
}

pub fn cmd_quantum_value(
    args: &GameArgs,
    strategy: &StrategyArgs,
    format: Format,
) -> CliResult<String> {
    let source = GameSource::resolve(&args.game)?;
    let verifier = source.verifier(args)?;
    let spec = StrategySpec::parse(strategy)?;
    let strat = spec.build()?;
    let value = quantum_value(verifier.as_ref(), &strat, &verifier.pi_f64())?;
    let closed = match (&source, &spec) {
        (GameSource::Hardy, StrategySpec::Sn { n, theta }) => {
            Some(sn_success_closed_form(*theta, *n as u32)?)
        }
        _ => None,
    };
    let (d_a, d_b) = strat.local_dims();
    let rep = QuantumReport {
        game: args.game.clone(),
        strategy: spec.describe(),
        theta: spec.theta(),
        value: round_sig(value),
        closed_form: closed.map(round_sig),
        closed_form_delta: closed.map(|c| (value - c).abs()),
        local_dim_a: d_a,
        local_dim_b: d_b,
    };
    Ok(match format {
        Format::Json => to_json(&rep),
        Format::Csv => csv(
            &[
                "game",
                "strategy",
                "value",
                "closed_form",
                "closed_form_delta",
                "local_dim_a",
                "local_dim_b",
            ],
            &[vec![
                rep.game.clone(),
                rep.strategy.clone(),
                format_prob(value),
                closed.map(format_prob).unwrap_or_default(),
                rep.closed_form_delta
                    .map(|d| format!("{d:.3e}"))
                    .unwrap_or_default(),
                d_a.to_string(),
                d_b.to_string(),
            ]],
        ),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "game: {}", rep.game).unwrap();
            writeln!(s, "strategy: {}", rep.strategy).unwrap();
            if let Some(t) = rep.theta {
                writeln!(s, "theta: {}", format_prob(t)).unwrap();
            }
            writeln!(s, "value: {}", format_prob(value)).unwrap();
            if let (Some(c), Some(d)) = (closed, rep.closed_form_delta) {
                writeln!(s, "closed form: {} (|delta| = {d:.3e})", format_prob(c)).unwrap();
            }
            writeln!(s, "local dimension: {d_a} x {d_b}").unwrap();
            s
        }
    })
}

#[derive(Serialize)]
struct SampleReport {
    game: String,
    strategy: String,
    seed: u64,
    rounds: u64,
    wins: u64,
    rate: f64,
    ci95_low: f64,
    ci95_high: f64,
    exact: f64,
    /// `(rate − exact) / sqrt(exact (1 − exact) / rounds)`.
    z_score: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    transcript: Option<Vec<crate::referee::RoundRecord>>,
}

pub fn cmd_sample(
    args: &GameArgs,
    strategy: &StrategyArgs,
    rounds: u64,
    seed: u64,
    transcript: bool,
    format: Format,
) -> CliResult<String> {
    if rounds == 0 {
        return Err(CliError::Usage("--rounds must be at least 1".into()));
    }
    let source = GameSource::resolve(&args.game)?;
    let verifier = source.verifier(args)?;
    let spec = StrategySpec::parse(strategy)?;
    let strat = spec.build()?;
    let pi = verifier.pi_f64();
    let exact = quantum_value(verifier.as_ref(), &strat, &pi)?;
    let sim = simulate(
        verifier.as_ref(),
        &strat,
        &pi,
        &RefereeConfig {
            rounds,
            seed,
            transcript,
        },
    )?;
    let sigma = (exact * (1.0 - exact) / rounds as f64).sqrt();
    let z = if sigma > 0.0 {
        (sim.rate - exact) / sigma
    } else {
        0.0
    };
    let rep = SampleReport {
        game: args.game.clone(),
        strategy: spec.describe(),
        seed,
        rounds,
        wins: sim.wins,
        rate: round_sig(sim.rate),
        ci95_low: round_sig(sim.ci_low),
        ci95_high: round_sig(sim.ci_high),
        exact: round_sig(exact),
        z_score: round_sig(z),
        transcript: sim.transcript,
    };
    Ok(match format {
        Format::Json => to_json(&rep),
        Format::Csv => match &rep.transcript {
            Some(t) => csv(
                &["round", "x", "y", "a", "b", "win"],
                &t.iter()
                    .enumerate()
                    .map(|(i, r)| {
                        vec![
                            i.to_string(),
                            r.x.to_string(),
                            r.y.to_string(),
                            r.a.clone(),
                            r.b.clone(),
                            (r.win as u8).to_string(),
                        ]
                    })
                    .collect::<Vec<_>>(),
            ),
            None => csv(
                &[
                    "seed",
                    "rounds",
                    "wins",
                    "rate",
                    "ci95_low",
                    "ci95_high",
                    "exact",
                ],
                &[vec![
                    seed.to_string(),
                    rounds.to_string(),
                    rep.wins.to_string(),
                    format_prob(sim.rate),
                    format_prob(sim.ci_low),
                    format_prob(sim.ci_high),
                    format_prob(exact),
                ]],
            ),
        },
        Format::Text => {
            let mut s = String::new();
            writeln!(
                s,
                "game: {}  strategy: {}  seed: {seed}",
                rep.game, rep.strategy
            )
            .unwrap();
            writeln!(s, "rounds: {rounds}  wins: {}", rep.wins).unwrap();
            writeln!(
                s,
                "rate: {}  95% CI [{}, {}]",
                format_prob(sim.rate),
                format_prob(sim.ci_low),
                format_prob(sim.ci_high)
            )
            .unwrap();
            writeln!(s, "exact: {}  z: {:.3}", format_prob(exact), z).unwrap();
            if let Some(t) = &rep.transcript {
                for (i, r) in t.iter().enumerate() {
                    writeln!(
                        s,
                        "{i} x={} y={} a={:?} b={:?} {}",
                        r.x,
                        r.y,
                        r.a,
                        r.b,
                        if r.win { "win" } else { "lose" }
                    )
                    .unwrap();
                }
            }
            s
        }
    })
}

#[derive(Serialize)]
struct TradeoffRow {
    epsilon: f64,
    n: u32,
    local_dim: String,
    closed_form_error: f64,
    dim_lower_bound: u64,
}

pub fn cmd_tradeoff(eps: &[f64], format: Format) -> CliResult<String> {
    let mut rows = Vec::with_capacity(eps.len());
    for &e in eps {
        if !(e > 0.0 && e < 1.0) {
            return Err(Error::Parameter(format!("epsilon = {e} outside (0, 1)")).into());
        }
        let plan = crate::quantum::plan_for_epsilon(e)?;
        let witness = dimension_lower_bound(e)?;
        rows.push(TradeoffRow {
            epsilon: e,
            n: plan.n,
            local_dim: plan.local_dim.to_string(),
            closed_form_error: round_sig(plan.closed_form_error),
            dim_lower_bound: witness.dim_lower_bound,
        });
    }
    Ok(match format {
        Format::Json => to_json(&rows),
        Format::Csv => csv(
            &[
                "epsilon",
                "n",
                "local_dim",
                "closed_form_error",
                "dim_lower_bound",
            ],
            &rows
                .iter()
                .map(|r| {
                    vec![
                        r.epsilon.to_string(),
                        r.n.to_string(),
                        r.local_dim.clone(),
                        format_prob(r.closed_form_error),
                        r.dim_lower_bound.to_string(),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
        Format::Text => {
            let mut s = format!(
                "{:>10} {:>4} {:>22} {:>18} {:>16}\n",
                "epsilon", "n", "local_dim", "closed_form_error", "dim_lower_bound"
            );
            for r in &rows {
                writeln!(
                    s,
                    "{:>10} {:>4} {:>22} {:>18} {:>16}",
                    r.epsilon,
                    r.n,
                    r.local_dim,
                    format_prob(r.closed_form_error),
                    r.dim_lower_bound
                )
                .unwrap();
            }
            s
        }
    })
}

pub fn cmd_dichotomy(args: &GameArgs, format: Format) -> CliResult<String> {
    let max_len = args.max_len.unwrap_or(2);
    let report = match GameSource::resolve(&args.game)? {
        GameSource::Hardy => check_dichotomy(&HardyGame, max_len)?,
        GameSource::ChshLift => check_dichotomy(&chsh_lift(args.delta)?, max_len)?,
        _ => {
            return Err(CliError::Usage(
                "dichotomy needs a string game: hardy or chsh-lift".into(),
            ))
        }
    };
    Ok(match format {
        Format::Json => to_json(&json!({ "game": args.game, "report": report })),
        Format::Csv => csv(
            &["s", "t", "branch"],
            &report
                .pairs
                .iter()
                .map(|p| vec![p.s.clone(), p.t.clone(), p.branch.to_string()])
                .collect::<Vec<_>>(),
        ),
        Format::Text => {
            let mut s = format!("game: {}  max_len: {max_len}\n", args.game);
            writeln!(s, "{:<8} {:<8} branch", "s", "t").unwrap();
            for p in &report.pairs {
                writeln!(s, "{:<8} {:<8} {}", p.s, p.t, p.branch).unwrap();
            }
            writeln!(s, "overall: {}", report.overall).unwrap();
            writeln!(s, "note: {}", report.note).unwrap();
            s
        }
    })
}

pub fn cmd_export_game(args: &GameArgs, out: Option<&std::path::Path>) -> CliResult<String> {
    let game = GameSource::resolve(&args.game)?.finite(args)?;
    let mut text = game.to_json();
    text.push('\n');
    match out {
        Some(path) => {
            std::fs::write(path, &text).map_err(Error::from)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}
