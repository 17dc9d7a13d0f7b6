//! The four commands. Each turns a spec into a [`Report`]; the exit code
//! follows from the report's outcome.

use std::path::Path;

use thiserror::Error;

use cryptologic::crypto::elgamal::ddh_decide;
use cryptologic::crypto::{vernam_statespace, CryptoError, Cryptosystem, ElGamalSystem, ATT};
use cryptologic::games::{
    lookup_corpus, sampled_lookup_corpus, ConstantAttacker, DdhCpaAttacker, ElGamalCcaAttacker, LookupAttacker,
    VernamCpaAttacker,
};
use cryptologic::logic::Predicate;
use cryptologic::muddy::{simulate, MuddyConfig, MuddyError, PriorExpansion, Termination};
use cryptologic::rational::{self, Rational};
use cryptologic::{
    check_it_sec, run_ind_cca, run_ind_cpa, Agent, AdvantageReport, BitString, EvalConfig, GameError,
    GroupElement, InnerMode, LogicError, Model, DEFAULT_MAX_STATES,
};

use crate::report::{
    state_map, AttackerResult, CheckKind, CheckResult, Fraction, GameKind, GameResult, MuddyResult,
    ObservationReport, Outcome, Report, RoundReport, TerminationReason, TerminationReport, WitnessReport,
};
use crate::spec::{self, parse_spec, AttackerSpec, GameSpec, QuerySpec, SpecError, SpecFile, System, Target};

#[derive(Debug, Error)]
pub enum CommandError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Crypto(#[from] CryptoError),
    #[error(transparent)]
    Muddy(#[from] MuddyError),
    #[error("{what} needs {needed} states, more than the cap of {cap} (see --max-states)")]
    Cap { what: String, needed: u128, cap: usize },
    #[error("{0}")]
    Usage(String),
}

type Result<T> = std::result::Result<T, CommandError>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Check,
    Game,
    Muddy,
    Eval { query: String },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Game => "game",
            Command::Muddy => "muddy",
            Command::Eval { .. } => "eval",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Options {
    pub max_states: usize,
    /// Overrides the spec's coin bias.
    pub coin_bias: Option<Rational>,
    pub inner_mode: InnerMode,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_states: DEFAULT_MAX_STATES,
            coin_bias: None,
            inner_mode: InnerMode::AgentLocal,
        }
    }
}

impl Options {
    fn config(&self) -> EvalConfig {
        EvalConfig {
            inner_mode: self.inner_mode,
        }
    }
}

/// Parses the spec at `path` and runs `command`; failures become error reports.
pub fn run(command: &Command, path: &Path, opts: &Options) -> Report {
    let spec = match parse_spec(path) {
        Ok(spec) => spec,
        Err(e) => return Report::failure(command.name(), None, e.to_string()),
    };
    execute(command, &spec, opts).unwrap_or_else(|e| Report::failure(command.name(), spec.name.clone(), e.to_string()))
}

pub fn execute(command: &Command, spec: &SpecFile, opts: &Options) -> Result<Report> {
    let target = spec.target()?;
    let wrong = |hint: &str| {
        Err(CommandError::Usage(format!(
            "`{}` cannot run a {target} spec; {hint}",
            command.name()
        )))
    };
    match (command, target) {
        (Command::Check, Target::Queries) => {
            let model = spec.model(opts.max_states)?;
            let queries = spec.queries.as_deref().unwrap_or_default();
            let checks = queries
                .iter()
                .map(|q| evaluate_query(&model, q, opts))
                .collect::<Result<Vec<_>>>()?;
            Ok(checks_report(command, spec, checks))
        }
        (Command::Eval { query }, Target::Queries) => {
            let q = spec.query(query)?;
            let model = spec.model(opts.max_states)?;
            let check = evaluate_query(&model, q, opts)?;
            Ok(checks_report(command, spec, vec![check]))
        }
        (Command::Check, Target::Game) => match spec.game.as_ref().expect("game target") {
            GameSpec::ItSec => {
                let system = spec.system.as_ref().expect("game target").build()?;
                let check = it_sec_game(&system, opts)?;
                Ok(checks_report(command, spec, vec![check]))
            }
            _ => wrong("use `game` for cpa and cca games"),
        },
        (Command::Game, Target::Game) => {
            let game = spec.game.as_ref().expect("game target");
            if matches!(game, GameSpec::ItSec) {
                return wrong("use `check` for the it_sec game");
            }
            let system = spec.system.as_ref().expect("game target").build()?;
            let result = play_game(&system, game, opts)?;
            let outcome = if result.secure { Outcome::Holds } else { Outcome::Violated };
            let mut report = Report::new(command.name(), spec.name.clone(), outcome);
            report.game = Some(result);
            Ok(report)
        }
        (Command::Muddy, Target::Muddy) => {
            let config = spec.muddy.as_ref().expect("muddy target").build()?;
            let mut report = Report::new(command.name(), spec.name.clone(), Outcome::Completed);
            report.muddy = Some(muddy_result(&config)?);
            Ok(report)
        }
        (Command::Eval { .. }, _) => wrong("`eval` evaluates named queries of a schema spec"),
        (Command::Check, Target::Muddy) => wrong("use `muddy`"),
        (Command::Game, _) => wrong("`game` runs a system+game spec"),
        (Command::Muddy, _) => wrong("`muddy` runs a muddy spec"),
    }
}

fn checks_report(command: &Command, spec: &SpecFile, checks: Vec<CheckResult>) -> Report {
    let outcome = if checks.iter().all(|c| c.holds) {
        Outcome::Holds
    } else {
        Outcome::Violated
    };
    let mut report = Report::new(command.name(), spec.name.clone(), outcome);
    report.checks = checks;
    report
}

fn evaluate_query(model: &Model, query: &QuerySpec, opts: &Options) -> Result<CheckResult> {
    match query {
        QuerySpec::ItSec {
            name,
            attacker,
            message,
            ciphertext,
        } => {
            let verdict = check_it_sec(model, attacker, message, ciphertext)?;
            Ok(CheckResult {
                name: name.clone(),
                kind: CheckKind::ItSec,
                holds: verdict.holds,
                agent: Some(attacker.clone()),
                probability: None,
                interval: None,
                witness: verdict.witness.map(|w| WitnessReport {
                    state: state_map(&w.state),
                    posterior: Some(w.lhs.into()),
                    reference: Some(w.rhs.into()),
                }),
            })
        }
        QuerySpec::Triple { name, .. } => {
            let triple = spec::triple(model, query)?;
            let config = opts.config();
            let holds = model.eval_triple(&triple, &config)?;
            let agent = match &triple.agent {
                Agent::Named(a) => Some(a.clone()),
                Agent::Global => None,
            };
            let (probability, interval) = match (&triple.post, &agent) {
                (Predicate::W(iota, body), Some(a)) => {
                    let p = model.conditional_probability(a, &triple.anchor, &Predicate::Top, body, &config)?;
                    (Some(p.into()), Some([iota.lo().into(), iota.hi().into()]))
                }
                _ => (None, None),
            };
            Ok(CheckResult {
                name: name.clone(),
                kind: CheckKind::Triple,
                holds,
                agent: Some(agent.unwrap_or_else(|| spec::GLOBAL_AGENT.into())),
                probability,
                interval,
                witness: (!holds).then(|| WitnessReport {
                    state: state_map(&triple.anchor),
                    posterior: None,
                    reference: None,
                }),
            })
        }
    }
}

fn require(what: &str, needed: u128, cap: usize) -> Result<()> {
    if needed > cap as u128 {
        Err(CommandError::Cap {
            what: what.into(),
            needed,
            cap,
        })
    } else {
        Ok(())
    }
}

fn it_sec_game(system: &System, opts: &Options) -> Result<CheckResult> {
    let System::Vernam { system, messages } = system else {
        return Err(CommandError::Usage("the it_sec game needs a Vernam-family system".into()));
    };
    let needed = (1u128 << system.key_len()) << system.message_len().min(100);
    require("the encryption-session space", needed, opts.max_states)?;
    let model = vernam_statespace(system, messages)?;
    let verdict = check_it_sec(&model, ATT, "m", "c")?;
    Ok(CheckResult {
        name: "IT-SEC".into(),
        kind: CheckKind::ItSec,
        holds: verdict.holds,
        agent: Some(ATT.into()),
        probability: None,
        interval: None,
        witness: verdict.witness.map(|w| WitnessReport {
            state: state_map(&w.state),
            posterior: Some(w.lhs.into()),
            reference: Some(w.rhs.into()),
        }),
    })
}

const CORPUS_LIMIT: usize = 4096;

fn play_game(system: &System, game: &GameSpec, opts: &Options) -> Result<GameResult> {
    let (kind, attacker, spec_bias) = match game {
        GameSpec::Cpa { attacker, coin_bias } => (GameKind::Cpa, attacker, coin_bias),
        GameSpec::Cca { attacker, coin_bias } => (GameKind::Cca, attacker, coin_bias),
        GameSpec::ItSec => unreachable!("it_sec is played by check"),
    };
    let coin_bias = match (&opts.coin_bias, spec_bias) {
        (Some(p), _) => p.clone(),
        (None, Some(text)) => spec::parse_probability(text, "game: coin_bias")?,
        (None, None) => rational::ratio(1, 2),
    };
    let trials = match system {
        System::Vernam { system, .. } => trial_count(system),
        System::ElGamal(sys) => trial_count(sys),
    };
    require("the game", trials, opts.max_states)?;
    let runs: Vec<(String, AdvantageReport)> = match (system, attacker) {
        (System::Vernam { system, .. }, AttackerSpec::VernamPlusBit) => {
            let a = VernamCpaAttacker::for_system(system)?;
            vec![("vernam_plus_bit".into(), run_ind_cpa(system, &a, &coin_bias)?)]
        }
        (System::Vernam { system, .. }, AttackerSpec::LookupCorpus { sample, seed }) => {
            let corpus = match sample {
                Some(n) => sampled_lookup_corpus(system, *n, seed.unwrap_or(0))?,
                None => lookup_corpus(system, CORPUS_LIMIT)?,
            };
            corpus
                .iter()
                .map(|a| Ok((lookup_name(a), run_ind_cpa(system, a, &coin_bias)?)))
                .collect::<Result<_>>()?
        }
        (System::Vernam { system, .. }, AttackerSpec::Constant { m0, m1, guess }) => {
            let a = ConstantAttacker {
                m0: bits(m0)?,
                m1: bits(m1)?,
                answer: answer(*guess)?,
            };
            vec![(constant_name(m0, m1, *guess), run_ind_cpa(system, &a, &coin_bias)?)]
        }
        (System::ElGamal(sys), AttackerSpec::Constant { m0, m1, guess }) => {
            let a = ConstantAttacker {
                m0: element(sys, m0)?,
                m1: element(sys, m1)?,
                answer: answer(*guess)?,
            };
            vec![(constant_name(m0, m1, *guess), run_ind_cpa(sys, &a, &coin_bias)?)]
        }
        (System::ElGamal(sys), AttackerSpec::Ddh { oracle, m0, m1 }) => {
            let group = sys.group();
            let decide: Box<dyn Fn(u64, u64, u64) -> bool> = match oracle.as_str() {
                "exact" => Box::new(move |x, y, z| ddh_decide(&group, x, y, z)),
                "never" => Box::new(|_, _, _| false),
                _ => Box::new(|_, _, _| true),
            };
            let a = match (m0, m1) {
                (None, None) => DdhCpaAttacker::new(group, decide)?,
                (Some(a), Some(b)) => DdhCpaAttacker::with_messages(group.element(*a).map_err(GameError::from)?, group.element(*b).map_err(GameError::from)?, decide)?,
                _ => return Err(CommandError::Usage("ddh attacker: give both m0 and m1 or neither".into())),
            };
            vec![(format!("ddh oracle={oracle}"), run_ind_cpa(sys, &a, &coin_bias)?)]
        }
        (System::ElGamal(sys), AttackerSpec::Malleability { q, m0, m1 }) => {
            let group = sys.group();
            let multipliers: Vec<GroupElement> = match q {
                Some(q) => vec![group.element(*q).map_err(GameError::from)?],
                None => group.carrier().into_iter().filter(|x| *x != group.identity()).collect(),
            };
            let mut runs = Vec::new();
            for q in multipliers {
                let a = match (m0, m1) {
                    (None, None) => ElGamalCcaAttacker::new(q)?,
                    (Some(a), Some(b)) => ElGamalCcaAttacker::with_messages(
                        q,
                        group.element(*a).map_err(GameError::from)?,
                        group.element(*b).map_err(GameError::from)?,
                    )?,
                    _ => return Err(CommandError::Usage("malleability attacker: give both m0 and m1 or neither".into())),
                };
                runs.push((format!("malleability q={q}"), run_ind_cca(sys, &a, &coin_bias)?));
            }
            runs
        }
        _ => {
            return Err(SpecError::Incompatible(format!(
                "attacker `{}` cannot play against {}",
                attacker.label(),
                system.describe()
            ))
            .into())
        }
    };
    let baseline = runs.first().is_some_and(|(_, r)| r.baseline);
    let secure = runs.iter().all(|(_, r)| !r.beats_blind());
    let detailed = runs.len() == 1;
    let attackers = runs
        .into_iter()
        .map(|(name, r)| attacker_result(name, &r, detailed))
        .collect();
    Ok(GameResult {
        kind,
        system: system.describe(),
        coin_bias: coin_bias.into(),
        trials: trials as usize,
        baseline,
        secure,
        attackers,
    })
}

fn trial_count<S: Cryptosystem>(system: &S) -> u128 {
    system.keys().len() as u128 * u128::from(system.seed_count()) * 2
}

fn attacker_result(attacker: String, r: &AdvantageReport, detailed: bool) -> AttackerResult {
    let verdict = r.verdict();
    AttackerResult {
        attacker,
        success_probability: (&r.success_probability).into(),
        blind_success: (&r.blind_success).into(),
        advantage: r.advantage().into(),
        indistinguishable: r.indistinguishable,
        witness: verdict.witness.map(|w| WitnessReport {
            state: state_map(&w.state),
            posterior: Some(w.lhs.into()),
            reference: Some(w.rhs.into()),
        }),
        observations: if detailed {
            r.observations
                .iter()
                .map(|o| ObservationReport {
                    view: state_map(&o.view),
                    mass: (&o.mass).into(),
                    posterior: (&o.posterior).into(),
                    w0: o.certain_zero,
                    w1: o.certain_one,
                    at_bias: o.at_bias,
                })
                .collect()
        } else {
            Vec::new()
        },
    }
}

fn lookup_name(a: &LookupAttacker) -> String {
    let table: String = a.table.iter().map(|&b| if b { '1' } else { '0' }).collect();
    format!("lookup m0={} m1={} table={table}", a.m0, a.m1)
}

fn constant_name(m0: &str, m1: &str, guess: Option<u8>) -> String {
    let g = guess.map_or("none".to_string(), |g| g.to_string());
    format!("constant m0={m0} m1={m1} guess={g}")
}

fn bits(text: &str) -> Result<BitString> {
    text.parse()
        .map_err(|_| CommandError::Usage(format!("`{text}` is not a bit string")))
}

fn element(sys: &ElGamalSystem, text: &str) -> Result<GroupElement> {
    let x: u64 = text
        .parse()
        .map_err(|_| CommandError::Usage(format!("`{text}` is not a group element")))?;
    Ok(sys.element(x)?)
}

fn answer(guess: Option<u8>) -> Result<Option<bool>> {
    match guess {
        None => Ok(None),
        Some(0) => Ok(Some(false)),
        Some(1) => Ok(Some(true)),
        Some(g) => Err(CommandError::Usage(format!("constant attacker: guess {g} is not 0 or 1"))),
    }
}

fn muddy_result(config: &MuddyConfig) -> Result<MuddyResult> {
    let transcript = simulate(config)?;
    let fractions = |v: &[Rational]| v.iter().map(Fraction::from).collect::<Vec<_>>();
    let termination = match transcript.termination {
        Termination::AllKnow { round } => TerminationReport {
            reason: TerminationReason::AllKnow,
            round,
        },
        Termination::MaxRounds { rounds } => TerminationReport {
            reason: TerminationReason::MaxRounds,
            round: rounds,
        },
    };
    Ok(MuddyResult {
        ell: config.ell,
        assignment: transcript.assignment.to_string(),
        father: config.father,
        threshold: (&config.threshold).into(),
        prior: fractions(&config.prior),
        noise: fractions(&config.noise),
        prior_expansion: match config.prior_expansion {
            PriorExpansion::UniformWithinCount => "uniform_within_count".into(),
            PriorExpansion::PerAssignment => "per_assignment".into(),
        },
        first_knows: transcript.first_knows(),
        rounds: transcript
            .rounds
            .iter()
            .map(|r| RoundReport {
                round: r.round,
                posteriors: fractions(&r.posteriors),
                claimed: r.announcements.iter().map(|a| a.claimed).collect(),
                heard: r.announcements.iter().map(|a| a.transmitted).collect(),
            })
            .collect(),
        termination,
    })
}
