//! JSON specification files.
//!
//! A file describes exactly one target: a schema with views and queries, a
//! builtin system with a game, or a muddy-children run. Probabilities are
//! `"num/den"` strings throughout.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use cryptologic::crypto::vernam::{MessageDistribution, VernamSystem};
use cryptologic::crypto::ElGamalSystem;
use cryptologic::logic::Predicate;
use cryptologic::muddy::{binomial_prior, Assignment, MuddyConfig, PriorExpansion};
use cryptologic::rational::{self, Rational};
use cryptologic::{
    enumerate_with_cap, Agent, BitString, CyclicGroup, FieldSpec, Model, Schema, SchemaError, State,
    TripleQuery, Value, ValueKind, ViewMap,
};

use crate::syntax::{self, SyntaxError};

pub const SPEC_VERSION: u32 = 1;

/// Agent name that selects the global triple.
pub const GLOBAL_AGENT: &str = "global";

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported spec_version {0} (expected {SPEC_VERSION})")]
    Version(u32),
    #[error("{0}")]
    Target(String),
    #[error("{location}, {error}")]
    Syntax { location: String, error: SyntaxError },
    #[error("{location}: unknown field `{field}`")]
    UnknownField { location: String, field: String },
    #[error("{location}: unknown agent `{agent}`")]
    UnknownAgent { location: String, agent: String },
    #[error("schema: {0}")]
    Schema(#[from] SchemaError),
    #[error("{0}")]
    Invalid(String),
    #[error("incompatible spec: {0}")]
    Incompatible(String),
}

type Result<T> = std::result::Result<T, SpecError>;

fn invalid<T>(message: impl Into<String>) -> Result<T> {
    Err(SpecError::Invalid(message.into()))
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub spec_version: u32,
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub description: Option<String>,
    #[serde(default)]
    pub group: Option<GroupSpec>,
    #[serde(default)]
    pub schema: Option<SchemaSpec>,
    #[serde(default)]
    pub views: Option<BTreeMap<String, Vec<String>>>,
    #[serde(default)]
    pub queries: Option<Vec<QuerySpec>>,
    #[serde(default)]
    pub system: Option<SystemSpec>,
    #[serde(default)]
    pub game: Option<GameSpec>,
    #[serde(default)]
    pub muddy: Option<MuddySpec>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub p: u64,
    pub g: u64,
    pub n: u64,
}

impl GroupSpec {
    pub fn build(&self) -> Result<CyclicGroup> {
        CyclicGroup::new(self.p, self.g, self.n).map_err(|e| SpecError::Invalid(format!("group: {e}")))
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemaSpec {
    pub fields: Vec<FieldDecl>,
    #[serde(default)]
    pub constraint: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDecl {
    pub name: String,
    /// `bit`, `bits[N]`, `int` or `group`.
    #[serde(rename = "type", default)]
    pub kind: Option<String>,
    #[serde(default)]
    pub domain: Option<Vec<String>>,
    #[serde(default)]
    pub distribution: Option<Distribution>,
    #[serde(default)]
    pub derive: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Distribution {
    /// `"uniform"`.
    Named(String),
    /// One probability per domain value.
    Weights(Vec<String>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum QuerySpec {
    Triple {
        name: String,
        #[serde(default = "top")]
        pre: String,
        #[serde(default)]
        anchor: BTreeMap<String, String>,
        agent: String,
        post: String,
    },
    ItSec {
        #[serde(default = "it_sec_name")]
        name: String,
        #[serde(default = "att")]
        attacker: String,
        #[serde(default = "message")]
        message: String,
        #[serde(default = "ciphertext")]
        ciphertext: String,
    },
}

fn top() -> String {
    "T".into()
}
fn it_sec_name() -> String {
    "IT-SEC".into()
}
fn att() -> String {
    "Att".into()
}
fn message() -> String {
    "m".into()
}
fn ciphertext() -> String {
    "c".into()
}

impl QuerySpec {
    pub fn name(&self) -> &str {
        match self {
            QuerySpec::Triple { name, .. } | QuerySpec::ItSec { name, .. } => name,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "builtin", rename_all = "snake_case", deny_unknown_fields)]
pub enum SystemSpec {
    Otp {
        ell: usize,
        #[serde(default)]
        messages: Option<MessageSpec>,
    },
    Vernam {
        ell: usize,
        blocks: usize,
        #[serde(default)]
        messages: Option<MessageSpec>,
    },
    VernamPlusBit {
        ell: usize,
        #[serde(default)]
        messages: Option<MessageSpec>,
    },
    Elgamal {
        p: u64,
        g: u64,
        n: u64,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum MessageSpec {
    /// `"uniform"`.
    Named(String),
    /// Message bit string to probability; unlisted messages get 0.
    Weights(BTreeMap<String, String>),
}

/// A compiled builtin system.
#[derive(Debug, Clone)]
pub enum System {
    Vernam {
        system: VernamSystem,
        messages: MessageDistribution,
    },
    ElGamal(ElGamalSystem),
}

impl System {
    pub fn describe(&self) -> String {
        match self {
            System::Vernam { system, .. } => {
                let ell = system.key_len();
                match (system.blocks(), system.plus_one_bit()) {
                    (_, true) => format!("vernam_plus_bit(ell={ell})"),
                    (1, false) => format!("otp(ell={ell})"),
                    (j, false) => format!("vernam(ell={ell}, blocks={j})"),
                }
            }
            System::ElGamal(sys) => {
                let g = sys.group();
                format!("elgamal(p={}, g={}, n={})", g.modulus(), g.generator(), g.order())
            }
        }
    }
}

impl SystemSpec {
    pub fn build(&self) -> Result<System> {
        let vernam = |ell, blocks, plus, messages: &Option<MessageSpec>| -> Result<System> {
            let system = VernamSystem::new(ell, blocks, plus).map_err(|e| SpecError::Invalid(format!("system: {e}")))?;
            let messages = vernam_messages(&system, messages)?;
            Ok(System::Vernam { system, messages })
        };
        match self {
            SystemSpec::Otp { ell, messages } => vernam(*ell, 1, false, messages),
            SystemSpec::Vernam { ell, blocks, messages } => vernam(*ell, *blocks, false, messages),
            SystemSpec::VernamPlusBit { ell, messages } => vernam(*ell, 1, true, messages),
            SystemSpec::Elgamal { p, g, n } => {
                let group = GroupSpec { p: *p, g: *g, n: *n }.build()?;
                Ok(System::ElGamal(ElGamalSystem::new(group)))
            }
        }
    }
}

fn vernam_messages(system: &VernamSystem, spec: &Option<MessageSpec>) -> Result<MessageDistribution> {
    match spec {
        None => Ok(MessageDistribution::Uniform),
        Some(MessageSpec::Named(s)) if s == "uniform" => Ok(MessageDistribution::Uniform),
        Some(MessageSpec::Named(s)) => invalid(format!("system messages: unknown distribution `{s}`")),
        Some(MessageSpec::Weights(map)) => {
            let mut weights = Vec::new();
            let mut sum = rational::zero();
            for (m, p) in map {
                let bits: BitString = m
                    .parse()
                    .map_err(|_| SpecError::Invalid(format!("system messages: `{m}` is not a bit string")))?;
                if bits.len() != system.message_len() {
                    return invalid(format!(
                        "system messages: `{m}` has {} bits, messages have {}",
                        bits.len(),
                        system.message_len()
                    ));
                }
                let p = probability(p, &format!("system messages: `{m}`"))?;
                sum += &p;
                weights.push((bits, p));
            }
            if sum != rational::one() {
                return invalid(format!(
                    "system messages: distribution sums to {}, not 1",
                    rational::to_fraction_string(&sum)
                ));
            }
            Ok(MessageDistribution::Weights(weights))
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GameSpec {
    ItSec,
    Cpa {
        attacker: AttackerSpec,
        #[serde(default)]
        coin_bias: Option<String>,
    },
    Cca {
        attacker: AttackerSpec,
        #[serde(default)]
        coin_bias: Option<String>,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case", deny_unknown_fields)]
pub enum AttackerSpec {
    /// Reads the extra key bit off the ciphertext.
    VernamPlusBit,
    /// Every deterministic lookup attacker, or `sample` of them drawn with `seed`.
    LookupCorpus {
        #[serde(default)]
        sample: Option<usize>,
        #[serde(default)]
        seed: Option<u64>,
    },
    /// Fixed messages and a fixed answer (`null` for no answer).
    Constant {
        m0: String,
        m1: String,
        #[serde(default)]
        guess: Option<u8>,
    },
    /// Decides with a DDH oracle: `exact`, `never` or `always`.
    Ddh {
        #[serde(default = "exact")]
        oracle: String,
        #[serde(default)]
        m0: Option<u64>,
        #[serde(default)]
        m1: Option<u64>,
    },
    /// Queries `(c1, q * c2)`; every non-identity `q` when absent.
    Malleability {
        #[serde(default)]
        q: Option<u64>,
        #[serde(default)]
        m0: Option<u64>,
        #[serde(default)]
        m1: Option<u64>,
    },
}

fn exact() -> String {
    "exact".into()
}

impl AttackerSpec {
    pub fn label(&self) -> &'static str {
        match self {
            AttackerSpec::VernamPlusBit => "vernam_plus_bit",
            AttackerSpec::LookupCorpus { .. } => "lookup_corpus",
            AttackerSpec::Constant { .. } => "constant",
            AttackerSpec::Ddh { .. } => "ddh",
            AttackerSpec::Malleability { .. } => "malleability",
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MuddySpec {
    #[serde(default)]
    pub ell: Option<usize>,
    /// Bit string, child 1 first.
    #[serde(default)]
    pub assignment: Option<String>,
    /// Draw the assignment from the prior instead.
    #[serde(default)]
    pub seed: Option<u64>,
    /// `binomial`, `uniform`, or `p_0 ..= p_ell`.
    #[serde(default)]
    pub prior: Option<Distribution>,
    /// One flip probability for everyone, or one per child.
    #[serde(default)]
    pub noise: Option<Noise>,
    #[serde(default = "yes")]
    pub father: bool,
    #[serde(default)]
    pub threshold: Option<String>,
    #[serde(default)]
    pub max_rounds: Option<usize>,
    /// `uniform_within_count` or `per_assignment`.
    #[serde(default)]
    pub prior_expansion: Option<String>,
    /// Realized flips, one bit string per round.
    #[serde(default)]
    pub flips: Option<Vec<String>>,
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Noise {
    All(String),
    PerChild(Vec<String>),
}

impl MuddySpec {
    pub fn build(&self) -> Result<MuddyConfig> {
        let (ell, assignment) = match (&self.assignment, self.seed) {
            (Some(_), Some(_)) => return invalid("muddy: give either `assignment` or `seed`, not both"),
            (None, None) => return invalid("muddy: one of `assignment` or `seed` is required"),
            (Some(text), None) => {
                let bits: BitString = text
                    .parse()
                    .map_err(|_| SpecError::Invalid(format!("muddy: assignment `{text}` is not a bit string")))?;
                if self.ell.is_some_and(|ell| ell != bits.len()) {
                    return invalid(format!("muddy: assignment `{text}` does not have ell bits"));
                }
                (bits.len(), Assignment::Fixed(bits))
            }
            (None, Some(seed)) => match self.ell {
                Some(ell) => (ell, Assignment::Sampled { seed }),
                None => return invalid("muddy: `ell` is required with `seed`"),
            },
        };
        let prior = match &self.prior {
            None => binomial_prior(ell),
            Some(Distribution::Named(s)) if s == "binomial" => binomial_prior(ell),
            Some(Distribution::Named(s)) if s == "uniform" => vec![rational::ratio(1, ell as i64 + 1); ell + 1],
            Some(Distribution::Named(s)) => return invalid(format!("muddy: unknown prior `{s}`")),
            Some(Distribution::Weights(ws)) => ws
                .iter()
                .enumerate()
                .map(|(k, p)| probability(p, &format!("muddy: prior p_{k}")))
                .collect::<Result<_>>()?,
        };
        let noise = match &self.noise {
            None => vec![rational::zero(); ell],
            Some(Noise::All(p)) => vec![probability(p, "muddy: noise")?; ell],
            Some(Noise::PerChild(ps)) => ps
                .iter()
                .enumerate()
                .map(|(i, p)| probability(p, &format!("muddy: noise of child {}", i + 1)))
                .collect::<Result<_>>()?,
        };
        let threshold = match &self.threshold {
            None => rational::one(),
            Some(t) => probability(t, "muddy: threshold")?,
        };
        let prior_expansion = match self.prior_expansion.as_deref() {
            None | Some("uniform_within_count") => PriorExpansion::UniformWithinCount,
            Some("per_assignment") => PriorExpansion::PerAssignment,
            Some(other) => return invalid(format!("muddy: unknown prior_expansion `{other}`")),
        };
        let realized_flips = match &self.flips {
            None => None,
            Some(rounds) => Some(
                rounds
                    .iter()
                    .map(|r| {
                        r.parse::<BitString>()
                            .map(|b| b.bits().to_vec())
                            .map_err(|_| SpecError::Invalid(format!("muddy: flips `{r}` is not a bit string")))
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        let config = MuddyConfig {
            ell,
            assignment,
            prior,
            noise,
            father: self.father,
            threshold,
            max_rounds: self.max_rounds.unwrap_or(cryptologic::muddy::MAX_ROUNDS),
            prior_expansion,
            realized_flips,
        };
        config
            .validate()
            .map_err(|e| SpecError::Invalid(format!("muddy: {e}")))?;
        Ok(config)
    }
}

fn probability(text: &str, location: &str) -> Result<Rational> {
    match rational::parse(text) {
        Some(p) if rational::in_unit_interval(&p) => Ok(p),
        _ => invalid(format!("{location}: `{text}` is not a probability")),
    }
}

/// Parses `num/den` for a command-line or spec probability.
pub fn parse_probability(text: &str, location: &str) -> Result<Rational> {
    probability(text, location)
}

/// What a spec file asks for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Queries,
    Game,
    Muddy,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::Queries => "schema+queries",
            Target::Game => "system+game",
            Target::Muddy => "muddy",
        })
    }
}

/// Reads, parses and validates a spec file.
pub fn parse_spec(path: &Path) -> Result<SpecFile> {
    let text = std::fs::read_to_string(path).map_err(|e| SpecError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_spec_str(&text)
}

pub fn parse_spec_str(text: &str) -> Result<SpecFile> {
    let version: serde_json::Value = serde_json::from_str(text).map_err(json_error)?;
    match version.get("spec_version").and_then(serde_json::Value::as_u64) {
        Some(v) if v == u64::from(SPEC_VERSION) => {}
        Some(v) => return Err(SpecError::Version(v.try_into().unwrap_or(u32::MAX))),
        None => return invalid("missing numeric `spec_version`"),
    }
    let spec: SpecFile = serde_json::from_str(text).map_err(json_error)?;
    spec.validate()?;
    Ok(spec)
}

fn json_error(e: serde_json::Error) -> SpecError {
    let message = e.to_string();
    let message = match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message,
    };
    SpecError::Json {
        line: e.line(),
        column: e.column(),
        message,
    }
}

impl SpecFile {
    pub fn target(&self) -> Result<Target> {
        let queries = self.schema.is_some() || self.views.is_some() || self.queries.is_some();
        let game = self.system.is_some() || self.game.is_some();
        let muddy = self.muddy.is_some();
        match (queries, game, muddy) {
            (true, false, false) => {
                if self.schema.is_none() || self.queries.is_none() {
                    return Err(SpecError::Target("a schema target needs both `schema` and `queries`".into()));
                }
                Ok(Target::Queries)
            }
            (false, true, false) => {
                if self.system.is_none() || self.game.is_none() {
                    return Err(SpecError::Target("a game target needs both `system` and `game`".into()));
                }
                if self.group.is_some() {
                    return Err(SpecError::Target("`group` belongs to schema targets".into()));
                }
                Ok(Target::Game)
            }
            (false, false, true) => {
                if self.group.is_some() {
                    return Err(SpecError::Target("`group` belongs to schema targets".into()));
                }
                Ok(Target::Muddy)
            }
            (false, false, false) => Err(SpecError::Target(
                "the spec has no target: expected schema+queries, system+game, or muddy".into(),
            )),
            _ => Err(SpecError::Target(
                "the spec mixes targets: give exactly one of schema+queries, system+game, or muddy".into(),
            )),
        }
    }

    /// Checks everything that does not need the state space.
    pub fn validate(&self) -> Result<()> {
        match self.target()? {
            Target::Queries => {
                let schema = self.schema()?;
                schema.validate()?;
                let views = self.views()?;
                let names = schema.field_names();
                for view in &views {
                    if let Some(f) = view.visible.iter().find(|f| !names.contains(f)) {
                        return Err(SpecError::UnknownField {
                            location: format!("view `{}`", view.agent),
                            field: f.clone(),
                        });
                    }
                }
                let queries = self.queries.as_deref().unwrap_or_default();
                let mut seen = std::collections::BTreeSet::new();
                for q in queries {
                    if !seen.insert(q.name()) {
                        return invalid(format!("query `{}` is defined twice", q.name()));
                    }
                    self.check_query(q, &names, &views)?;
                }
                Ok(())
            }
            Target::Game => {
                let system = self.system.as_ref().expect("target checked").build()?;
                match self.game.as_ref().expect("target checked") {
                    GameSpec::ItSec => match system {
                        System::Vernam { .. } => Ok(()),
                        System::ElGamal(_) => Err(SpecError::Incompatible(
                            "the it_sec game needs a Vernam-family system".into(),
                        )),
                    },
                    GameSpec::Cpa { attacker, coin_bias } => {
                        if let Some(p) = coin_bias {
                            probability(p, "game: coin_bias")?;
                        }
                        check_pairing(&system, attacker, false)
                    }
                    GameSpec::Cca { attacker, coin_bias } => {
                        if let Some(p) = coin_bias {
                            probability(p, "game: coin_bias")?;
                        }
                        check_pairing(&system, attacker, true)
                    }
                }
            }
            Target::Muddy => self.muddy.as_ref().expect("target checked").build().map(|_| ()),
        }
    }

    fn check_query(&self, query: &QuerySpec, names: &[String], views: &[ViewMap]) -> Result<()> {
        let has_view = |agent: &str| views.iter().any(|v| v.agent == agent);
        let field = |location: String, f: &str| -> Result<()> {
            if names.iter().any(|n| n == f) {
                Ok(())
            } else {
                Err(SpecError::UnknownField {
                    location,
                    field: f.to_string(),
                })
            }
        };
        match query {
            QuerySpec::Triple {
                name,
                pre,
                anchor,
                agent,
                post,
            } => {
                if agent != GLOBAL_AGENT && !has_view(agent) {
                    return Err(SpecError::UnknownAgent {
                        location: format!("query `{name}`"),
                        agent: agent.clone(),
                    });
                }
                for (part, text) in [("pre", pre), ("post", post)] {
                    let p = predicate(text, &format!("query `{name}` {part}"))?;
                    for f in p.fields() {
                        field(format!("query `{name}` {part}"), f)?;
                    }
                }
                for f in anchor.keys() {
                    field(format!("query `{name}` anchor"), f)?;
                }
                Ok(())
            }
            QuerySpec::ItSec {
                name,
                attacker,
                message,
                ciphertext,
            } => {
                if !has_view(attacker) {
                    return Err(SpecError::UnknownAgent {
                        location: format!("query `{name}`"),
                        agent: attacker.clone(),
                    });
                }
                field(format!("query `{name}`"), message)?;
                field(format!("query `{name}`"), ciphertext)
            }
        }
    }

    fn group(&self) -> Result<Option<CyclicGroup>> {
        self.group.as_ref().map(GroupSpec::build).transpose()
    }

    /// The schema section as a core schema.
    pub fn schema(&self) -> Result<Schema> {
        let Some(spec) = &self.schema else {
            return Err(SpecError::Target("the spec has no schema".into()));
        };
        let group = self.group()?;
        let mut fields = Vec::new();
        for decl in &spec.fields {
            fields.push(field_spec(decl, group)?);
        }
        let mut schema = Schema::new(fields);
        if let Some(text) = &spec.constraint {
            let condition = syntax::parse_condition(text).map_err(|error| SpecError::Syntax {
                location: "schema constraint".into(),
                error,
            })?;
            schema = schema.with_constraint(condition);
        }
        Ok(schema)
    }

    pub fn views(&self) -> Result<Vec<ViewMap>> {
        let views = self.views.clone().unwrap_or_default();
        if views.contains_key(GLOBAL_AGENT) {
            return invalid(format!("`{GLOBAL_AGENT}` is reserved and cannot name a view"));
        }
        Ok(views.into_iter().map(|(agent, fields)| ViewMap::new(agent, fields)).collect())
    }

    /// Enumerates the schema and registers the views.
    pub fn model(&self, cap: usize) -> Result<Model> {
        let schema = self.schema()?;
        let space = enumerate_with_cap(&schema, cap)?;
        for decl in &self.schema.as_ref().expect("schema present").fields {
            let Some(kind) = decl.kind.as_deref() else { continue };
            let expected = parse_kind(kind, self.group()?, &decl.name)?;
            for (state, _) in space.states() {
                let found = state.get(&decl.name).map(Value::kind);
                if found.as_ref() != Some(&expected) {
                    return invalid(format!(
                        "field `{}` is declared {expected} but takes the value {}",
                        decl.name,
                        state.get(&decl.name).map_or("nothing".into(), Value::to_string)
                    ));
                }
            }
        }
        Model::new(space, self.views()?).map_err(|e| SpecError::Invalid(e.to_string()))
    }

    pub fn query(&self, name: &str) -> Result<&QuerySpec> {
        self.queries
            .as_deref()
            .unwrap_or_default()
            .iter()
            .find(|q| q.name() == name)
            .ok_or_else(|| SpecError::Invalid(format!("no query named `{name}`")))
    }
}

fn check_pairing(system: &System, attacker: &AttackerSpec, cca: bool) -> Result<()> {
    let vernam = matches!(system, System::Vernam { .. });
    let ok = match attacker {
        AttackerSpec::VernamPlusBit => {
            matches!(system, System::Vernam { system, .. } if system.plus_one_bit()) && !cca
        }
        AttackerSpec::LookupCorpus { .. } => vernam && !cca,
        AttackerSpec::Constant { .. } => !cca,
        AttackerSpec::Ddh { oracle, .. } => {
            if !matches!(oracle.as_str(), "exact" | "never" | "always") {
                return invalid(format!("ddh attacker: unknown oracle `{oracle}`"));
            }
            !vernam && !cca
        }
        AttackerSpec::Malleability { .. } => !vernam && cca,
    };
    if ok {
        Ok(())
    } else {
        Err(SpecError::Incompatible(format!(
            "attacker `{}` cannot play the {} game against {}",
            attacker.label(),
            if cca { "cca" } else { "cpa" },
            system.describe()
        )))
    }
}

pub fn predicate(text: &str, location: &str) -> Result<Predicate> {
    syntax::parse_predicate(text).map_err(|error| SpecError::Syntax {
        location: location.into(),
        error,
    })
}

pub fn parse_kind(text: &str, group: Option<CyclicGroup>, field: &str) -> Result<ValueKind> {
    let bits = text
        .strip_prefix("bits[")
        .and_then(|t| t.strip_suffix(']'))
        .map(str::parse::<usize>);
    match (text, bits) {
        ("bit", _) => Ok(ValueKind::Bit),
        ("int", _) => Ok(ValueKind::Int),
        ("group", _) => group
            .map(ValueKind::Group)
            .ok_or_else(|| SpecError::Invalid(format!("field `{field}` has type group but the spec has no `group`"))),
        (_, Some(Ok(n))) if n > 0 => Ok(ValueKind::Bits(n)),
        _ => invalid(format!(
            "field `{field}`: unknown type `{text}` (expected bit, bits[N], int or group)"
        )),
    }
}

const MAX_DEFAULT_BITS: usize = 16;

fn field_spec(decl: &FieldDecl, group: Option<CyclicGroup>) -> Result<FieldSpec> {
    let name = &decl.name;
    if let Some(text) = &decl.derive {
        if decl.domain.is_some() || decl.distribution.is_some() {
            return invalid(format!("field `{name}`: a derived field has no domain or distribution"));
        }
        let expr = syntax::parse_expr(text).map_err(|error| SpecError::Syntax {
            location: format!("field `{name}` derive"),
            error,
        })?;
        return Ok(FieldSpec::derived(name.clone(), expr));
    }
    let Some(kind_text) = &decl.kind else {
        return invalid(format!("field `{name}` needs a `type` or a `derive` expression"));
    };
    let kind = parse_kind(kind_text, group, name)?;
    let domain: Vec<Value> = match (&decl.domain, &kind) {
        (Some(texts), _) => texts
            .iter()
            .map(|t| {
                kind.parse_value(t)
                    .map_err(|e| SpecError::Invalid(format!("field `{name}` domain: {e}")))
            })
            .collect::<Result<_>>()?,
        (None, ValueKind::Bit) => vec![Value::Bit(false), Value::Bit(true)],
        (None, ValueKind::Bits(n)) if *n <= MAX_DEFAULT_BITS => {
            BitString::all(*n).into_iter().map(Value::Bits).collect()
        }
        (None, ValueKind::Group(g)) => g.carrier().into_iter().map(Value::Group).collect(),
        (None, _) => return invalid(format!("field `{name}` needs an explicit `domain`")),
    };
    match &decl.distribution {
        None => Ok(FieldSpec::uniform(name.clone(), domain)),
        Some(Distribution::Named(s)) if s == "uniform" => Ok(FieldSpec::uniform(name.clone(), domain)),
        Some(Distribution::Named(s)) => invalid(format!("field `{name}`: unknown distribution `{s}`")),
        Some(Distribution::Weights(ws)) => {
            let weights = ws
                .iter()
                .map(|w| {
                    rational::parse(w)
                        .ok_or_else(|| SpecError::Invalid(format!("field `{name}`: `{w}` is not a fraction")))
                })
                .collect::<Result<_>>()?;
            Ok(FieldSpec::sampled(name.clone(), domain, weights))
        }
    }
}

/// Reads an anchor against the kinds found in `model`.
pub fn anchor_state(model: &Model, anchor: &BTreeMap<String, String>, location: &str) -> Result<State> {
    let mut state = State::new();
    let Some((first, _)) = model.space().states().first() else {
        return invalid("the state space is empty");
    };
    for (field, text) in anchor {
        let Some(kind) = first.get(field).map(Value::kind) else {
            return Err(SpecError::UnknownField {
                location: location.into(),
                field: field.clone(),
            });
        };
        let value = kind
            .parse_value(text)
            .map_err(|e| SpecError::Invalid(format!("{location}: field `{field}`: {e}")))?;
        state.bind(field.clone(), value);
    }
    Ok(state)
}

/// A compiled triple query.
pub fn triple(model: &Model, query: &QuerySpec) -> Result<TripleQuery> {
    let QuerySpec::Triple {
        name,
        pre,
        anchor,
        agent,
        post,
    } = query
    else {
        return invalid(format!("query `{}` is not a triple", query.name()));
    };
    Ok(TripleQuery {
        pre: predicate(pre, &format!("query `{name}` pre"))?,
        anchor: anchor_state(model, anchor, &format!("query `{name}` anchor"))?,
        agent: if agent == GLOBAL_AGENT {
            Agent::Global
        } else {
            Agent::named(agent.clone())
        },
        post: predicate(post, &format!("query `{name}` post"))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const OTP: &str = r#"{
        "spec_version": 1,
        "schema": { "fields": [
            { "name": "k", "type": "bits[1]" },
            { "name": "m", "type": "bits[1]", "distribution": ["3/4", "1/4"] },
            { "name": "c", "derive": "k ^ m" }
        ] },
        "views": { "Gen": ["k"], "Enc": ["k", "m", "c"], "Dec": ["k", "c"], "Att": ["c"] },
        "queries": [ { "kind": "it_sec" } ]
    }"#;

    #[test]
    fn otp_schema() {
        let spec = parse_spec_str(OTP).unwrap();
        assert_eq!(spec.target().unwrap(), Target::Queries);
        assert_eq!(spec.schema().unwrap().field_names(), ["k", "m", "c"]);
        assert_eq!(spec.views().unwrap().len(), 4);
        assert_eq!(spec.model(100).unwrap().space().len(), 4);
    }

    #[test]
    fn distribution_sum_is_reported() {
        let text = OTP.replace(r#"["3/4", "1/4"]"#, r#"["3/4", "3/8"]"#);
        let err = parse_spec_str(&text).unwrap_err();
        let message = err.to_string();
        assert!(message.contains("\"m\"") && message.contains("9/8"), "{message}");
    }

    #[test]
    fn json_errors_have_positions() {
        let err = parse_spec_str("{\n  \"spec_version\": 1,\n  \"schema\": [\n").unwrap_err();
        assert!(matches!(err, SpecError::Json { line: 4, .. }), "{err:?}");
    }

    #[test]
    fn unknown_names() {
        let text = OTP.replace(r#""Att": ["c"]"#, r#""Att": ["z"]"#);
        assert!(matches!(parse_spec_str(&text), Err(SpecError::UnknownField { .. })));
        let text = OTP.replace(r#"{ "kind": "it_sec" }"#, r#"{ "kind": "triple", "name": "q", "agent": "Eve", "post": "m = 0" }"#);
        assert!(matches!(parse_spec_str(&text), Err(SpecError::UnknownAgent { .. })));
        let text = OTP.replace(r#"{ "kind": "it_sec" }"#, r#"{ "kind": "triple", "name": "q", "agent": "Att", "post": "x = 0" }"#);
        assert!(matches!(parse_spec_str(&text), Err(SpecError::UnknownField { .. })));
        let text = OTP.replace(r#"{ "kind": "it_sec" }"#, r#"{ "kind": "triple", "name": "q", "agent": "Att", "post": "m = " }"#);
        assert!(matches!(parse_spec_str(&text), Err(SpecError::Syntax { .. })));
    }

    #[test]
    fn targets_are_exclusive() {
        let text = OTP.replace(r#""spec_version": 1,"#, r#""spec_version": 1, "muddy": { "assignment": "11" },"#);
        assert!(matches!(parse_spec_str(&text), Err(SpecError::Target(_))));
        let text = OTP.replace(r#""spec_version": 1"#, r#""spec_version": 2"#);
        assert!(matches!(parse_spec_str(&text), Err(SpecError::Version(2))));
    }

    #[test]
    fn attacker_pairings() {
        let game = |system: &str, game: &str| {
            parse_spec_str(&format!(r#"{{"spec_version": 1, "system": {system}, "game": {game}}}"#))
        };
        let otp = r#"{"builtin": "otp", "ell": 1}"#;
        let elgamal = r#"{"builtin": "elgamal", "p": 11, "g": 3, "n": 5}"#;
        assert!(game(otp, r#"{"kind": "cpa", "attacker": {"name": "lookup_corpus"}}"#).is_ok());
        assert!(matches!(
            game(otp, r#"{"kind": "cpa", "attacker": {"name": "vernam_plus_bit"}}"#),
            Err(SpecError::Incompatible(_))
        ));
        assert!(matches!(
            game(elgamal, r#"{"kind": "cpa", "attacker": {"name": "malleability"}}"#),
            Err(SpecError::Incompatible(_))
        ));
        assert!(game(elgamal, r#"{"kind": "cca", "attacker": {"name": "malleability", "q": 4}}"#).is_ok());
        assert!(matches!(game(elgamal, r#"{"kind": "it_sec"}"#), Err(SpecError::Incompatible(_))));
    }

    #[test]
    fn muddy_configs() {
        let spec = parse_spec_str(r#"{"spec_version": 1, "muddy": {"assignment": "011", "noise": "1/10"}}"#).unwrap();
        let config = spec.muddy.unwrap().build().unwrap();
        assert_eq!(config.ell, 3);
        assert_eq!(config.noise, vec![rational::ratio(1, 10); 3]);
        let err = parse_spec_str(r#"{"spec_version": 1, "muddy": {"assignment": "01010101010101010101"}}"#)
            .unwrap_err();
        assert!(err.to_string().contains("20"), "{err}");
    }
}
