//! Command reports: a JSON form that round-trips exactly, and a text form
//! for terminals.

use std::collections::BTreeMap;
use std::fmt::{self, Write};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use cryptologic::rational::{self, Rational};
use cryptologic::State;

use crate::spec::SPEC_VERSION;

/// An exact probability, written `"num/den"`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fraction(pub Rational);

impl From<Rational> for Fraction {
    fn from(r: Rational) -> Self {
        Fraction(r)
    }
}

impl From<&Rational> for Fraction {
    fn from(r: &Rational) -> Self {
        Fraction(r.clone())
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&rational::to_fraction_string(&self.0))
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Fraction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        match rational::parse(&text) {
            Some(r) if text.contains('/') && rational::to_fraction_string(&r) == text => Ok(Fraction(r)),
            _ => Err(serde::de::Error::custom(format!("`{text}` is not a reduced num/den fraction"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Holds,
    Violated,
    Completed,
    Error,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Holds | Outcome::Completed => 0,
            Outcome::Violated => 10,
            Outcome::Error => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub spec_version: u32,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec: Option<String>,
    pub outcome: Outcome,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub game: Option<GameResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub muddy: Option<MuddyResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    ItSec,
    Triple,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckResult {
    pub name: String,
    pub kind: CheckKind,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agent: Option<String>,
    /// For a `W` postcondition: the conditional probability of its body.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probability: Option<Fraction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<[Fraction; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessReport {
    pub state: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub posterior: Option<Fraction>,
    /// The prior for secrecy checks, the coin bias for games.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference: Option<Fraction>,
}

pub fn state_map(state: &State) -> BTreeMap<String, String> {
    state.iter().map(|(f, v)| (f.to_string(), v.to_string())).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GameKind {
    Cpa,
    Cca,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameResult {
    pub kind: GameKind,
    pub system: String,
    pub coin_bias: Fraction,
    pub trials: usize,
    /// `O |= W[p,p](b=1)` for the observer with the empty view.
    pub baseline: bool,
    /// No attacker's success differs from its blind success.
    pub secure: bool,
    pub attackers: Vec<AttackerResult>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AttackerResult {
    pub attacker: String,
    pub success_probability: Fraction,
    /// Success of the same guesses made independently of `b`.
    pub blind_success: Fraction,
    pub advantage: Fraction,
    /// Every attacker information set satisfies the same `W[p,p](b=1)` as
    /// the observer.
    pub indistinguishable: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub observations: Vec<ObservationReport>,
}

/// The attacker's posterior of `b = 1` at one information set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObservationReport {
    pub view: BTreeMap<String, String>,
    pub mass: Fraction,
    pub posterior: Fraction,
    /// `W[0,0](b=1)`
    pub w0: bool,
    /// `W[1,1](b=1)`
    pub w1: bool,
    /// `W[p,p](b=1)`
    pub at_bias: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MuddyResult {
    pub ell: usize,
    pub assignment: String,
    pub father: bool,
    pub threshold: Fraction,
    pub prior: Vec<Fraction>,
    pub noise: Vec<Fraction>,
    pub prior_expansion: String,
    pub rounds: Vec<RoundReport>,
    pub termination: TerminationReport,
    /// First round in which each child claims to know.
    pub first_knows: Vec<Option<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RoundReport {
    pub round: usize,
    pub posteriors: Vec<Fraction>,
    pub claimed: Vec<bool>,
    pub heard: Vec<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TerminationReason {
    AllKnow,
    MaxRounds,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TerminationReport {
    pub reason: TerminationReason,
    pub round: usize,
}

impl Report {
    pub fn new(command: &str, spec: Option<String>, outcome: Outcome) -> Self {
        Report {
            spec_version: SPEC_VERSION,
            command: command.into(),
            spec,
            outcome,
            checks: Vec::new(),
            game: None,
            muddy: None,
            error: None,
        }
    }

    pub fn failure(command: &str, spec: Option<String>, message: String) -> Self {
        Report {
            error: Some(message),
            ..Report::new(command, spec, Outcome::Error)
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.outcome.exit_code()
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("reports always serialize");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// The terminal form, without timing.
    pub fn to_human(&self) -> String {
        let mut out = String::new();
        let title = self.spec.as_deref().map(|s| format!(" {s}")).unwrap_or_default();
        let _ = writeln!(out, "{}{title}", self.command);
        for check in &self.checks {
            render_check(&mut out, check);
        }
        if let Some(game) = &self.game {
            render_game(&mut out, game);
        }
        if let Some(muddy) = &self.muddy {
            render_muddy(&mut out, muddy);
        }
        if let Some(error) = &self.error {
            let _ = writeln!(out, "error: {error}");
        }
        let word = match self.outcome {
            Outcome::Holds => "holds",
            Outcome::Violated => "violated",
            Outcome::Completed => "completed",
            Outcome::Error => "error",
        };
        let _ = writeln!(out, "outcome: {word} (exit {})", self.exit_code());
        out
    }
}

fn bindings(state: &BTreeMap<String, String>) -> String {
    state
        .iter()
        .map(|(f, v)| format!("{f}={v}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn render_check(out: &mut String, check: &CheckResult) {
    let verdict = if check.holds { "holds" } else { "fails" };
    let _ = write!(out, "  {}: {verdict}", check.name);
    if let (Some(p), Some([lo, hi])) = (&check.probability, &check.interval) {
        let _ = write!(out, " (probability {p}, interval [{lo},{hi}])");
    }
    let _ = writeln!(out);
    if let Some(w) = &check.witness {
        let _ = write!(out, "    witness {}", bindings(&w.state));
        if let (Some(post), Some(prior)) = (&w.posterior, &w.reference) {
            let _ = write!(out, ": posterior {post}, prior {prior}");
        }
        let _ = writeln!(out);
    }
}

fn render_game(out: &mut String, game: &GameResult) {
    let kind = match game.kind {
        GameKind::Cpa => "IND-CPA",
        GameKind::Cca => "IND-CCA",
    };
    let _ = writeln!(
        out,
        "  {kind} against {}, coin bias {}, {} trials per attacker",
        game.system, game.coin_bias, game.trials
    );
    let _ = writeln!(
        out,
        "  observer: W[{0},{0}](b=1) {1}",
        game.coin_bias,
        if game.baseline { "holds" } else { "fails" }
    );
    const LISTED: usize = 12;
    for a in game.attackers.iter().take(LISTED) {
        let _ = writeln!(
            out,
            "  {}: success {} (blind {}), advantage {}, view {}",
            a.attacker,
            a.success_probability,
            a.blind_success,
            a.advantage,
            if a.indistinguishable { "indistinguishable" } else { "reveals b" }
        );
        if let Some(w) = &a.witness {
            let _ = write!(out, "    witness {}", bindings(&w.state));
            if let (Some(post), Some(bias)) = (&w.posterior, &w.reference) {
                let _ = write!(out, ": posterior of b=1 is {post}, bias {bias}");
            }
            let _ = writeln!(out);
        }
    }
    if game.attackers.len() > LISTED {
        let _ = writeln!(out, "  ... {} more attackers", game.attackers.len() - LISTED);
    }
    if game.attackers.len() > 1 {
        let mut values: Vec<&Fraction> = game.attackers.iter().map(|a| &a.success_probability).collect();
        values.sort_by(|a, b| a.0.cmp(&b.0));
        values.dedup();
        let listed: Vec<String> = values.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(
            out,
            "  {} attackers, success {}",
            game.attackers.len(),
            listed.join(" / ")
        );
    }
    let _ = writeln!(out, "  {kind}: {}", if game.secure { "holds" } else { "broken" });
}

fn render_muddy(out: &mut String, m: &MuddyResult) {
    let list = |v: &[Fraction]| v.iter().map(Fraction::to_string).collect::<Vec<_>>().join(" ");
    let _ = writeln!(
        out,
        "  {} children, assignment {}, father {}, threshold {}",
        m.ell,
        m.assignment,
        if m.father { "on" } else { "off" },
        m.threshold
    );
    let _ = writeln!(out, "  prior {} ({})", list(&m.prior), m.prior_expansion);
    let _ = writeln!(out, "  noise {}", list(&m.noise));
    let width = m
        .rounds
        .iter()
        .flat_map(|r| r.posteriors.iter().map(|p| p.to_string().len()))
        .max()
        .unwrap_or(1)
        .max(7);
    let mut header = format!("  {:<6}", "round");
    for i in 1..=m.ell {
        let _ = write!(header, " {:<width$}", format!("child{i}"));
    }
    let _ = writeln!(out, "{}", header.trim_end());
    for r in &m.rounds {
        let mut line = format!("  {:<6}", r.round);
        for (i, p) in r.posteriors.iter().enumerate() {
            let mark = match (r.claimed[i], r.heard[i]) {
                (true, true) => "K",
                (false, false) => "-",
                (true, false) => "K>-",
                (false, true) => "->K",
            };
            let _ = write!(line, " {:<width$}", format!("{p} {mark}"));
        }
        let _ = writeln!(out, "{}", line.trim_end());
    }
    match m.termination.reason {
        TerminationReason::AllKnow => {
            let _ = writeln!(out, "  round {}: all know", m.termination.round);
        }
        TerminationReason::MaxRounds => {
            let _ = writeln!(out, "  stopped after {} rounds without everyone knowing", m.termination.round);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cryptologic::rational::ratio;

    #[test]
    fn fractions_are_strings() {
        let f = Fraction(ratio(2, 4));
        assert_eq!(serde_json::to_string(&f).unwrap(), "\"1/2\"");
        assert_eq!(serde_json::from_str::<Fraction>("\"1/1\"").unwrap(), Fraction(ratio(1, 1)));
        assert!(serde_json::from_str::<Fraction>("\"2/4\"").is_err());
        assert!(serde_json::from_str::<Fraction>("\"1\"").is_err());
        assert!(serde_json::from_str::<Fraction>("0.5").is_err());
    }

    #[test]
    fn report_round_trip() {
        let mut report = Report::new("game", Some("demo".into()), Outcome::Violated);
        report.game = Some(GameResult {
            kind: GameKind::Cpa,
            system: "otp(ell=1)".into(),
            coin_bias: Fraction(ratio(1, 3)),
            trials: 8,
            baseline: true,
            secure: false,
            attackers: vec![AttackerResult {
                attacker: "x".into(),
                success_probability: Fraction(ratio(1, 1)),
                blind_success: Fraction(ratio(1, 2)),
                advantage: Fraction(ratio(1, 3)),
                indistinguishable: false,
                witness: Some(WitnessReport {
                    state: [("c".to_string(), "01".to_string())].into(),
                    posterior: Some(Fraction(ratio(0, 1))),
                    reference: Some(Fraction(ratio(1, 3))),
                }),
                observations: vec![],
            }],
        });
        let text = report.to_json();
        let back = Report::from_json(&text).unwrap();
        assert_eq!(back, report);
        assert_eq!(back.to_json(), text);
        assert!(!text.contains("0.3"));
    }
}
