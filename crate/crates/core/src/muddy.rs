//! Muddy children with noisy announcements.
//!
//! Worlds are bitstrings `m` of length `ell`; child `i` sees every bit but
//! `m_i`. In each round every child announces whether it knows its own bit,
//! each announcement is flipped independently with the speaker's noise
//! rate, and everyone conditions on what was transmitted.
//!
//! [`simulate`] tracks the public weight of every world: the prior times the
//! likelihood of the transmitted announcements so far. Each round's weights
//! form a state space over `m`, and a child's posterior is a conditional
//! probability under its view. [`build_muddy_statespace`] instead enumerates
//! the flip bits of every round as fields of one joint space, with one view
//! per child and round.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::expr::{Condition, Expr};
use crate::logic::{EvalConfig, LogicError, Model, Predicate};
use crate::rational::{self, binomial, to_fraction_string, Rational};
use crate::statespace::{
    enumerate_with_cap, FieldSpec, Schema, SchemaError, SpaceError, State, StateSpace, ViewMap,
};
use crate::value::{BitString, Value};

pub const MAX_CHILDREN: usize = 6;
pub const MAX_ROUNDS: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MuddyError {
    #[error("{what} is {value}, the maximum is {max}")]
    Cap {
        what: &'static str,
        value: usize,
        max: usize,
    },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("p_{k} + p_{} is zero", .k + 1)]
    ZeroDenominator { k: usize },
    #[error("round {round}: the transmitted announcements have probability zero")]
    Inconsistent { round: usize },
    #[error(transparent)]
    Schema(#[from] SchemaError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Logic(#[from] LogicError),
}

/// How a prior over the number of muddy children becomes a prior over
/// worlds. Both are uniform within each count class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum PriorExpansion {
    /// `p_k` is the probability of exactly `k` muddy children, split evenly
    /// over the `C(ell, k)` worlds with that count.
    #[default]
    UniformWithinCount,
    /// Every world with `k` muddy children gets weight proportional to
    /// `p_k`. Under this reading a child seeing `k` muddy foreheads has
    /// posterior `p_{k+1} / (p_k + p_{k+1})` for its own.
    PerAssignment,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Assignment {
    Fixed(BitString),
    /// Drawn from the prior (after the father's announcement, if any).
    Sampled { seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuddyConfig {
    pub ell: usize,
    pub assignment: Assignment,
    /// `p_0 ..= p_ell` over the number of muddy children.
    pub prior: Vec<Rational>,
    /// Flip probability of each child's announcements, in `[0, 1)`.
    pub noise: Vec<Rational>,
    /// Everyone hears that at least one child is muddy.
    pub father: bool,
    /// A child announces that it knows when its posterior is at least
    /// `threshold` or at most `1 - threshold`.
    pub threshold: Rational,
    pub max_rounds: usize,
    pub prior_expansion: PriorExpansion,
    /// Flip outcomes along the simulated run, `[round][child]`. Absent
    /// means nothing is flipped.
    pub realized_flips: Option<Vec<Vec<bool>>>,
}

/// `C(ell, k) / 2^ell`.
pub fn binomial_prior(ell: usize) -> Vec<Rational> {
    let total = Rational::from_integer(num_bigint::BigInt::one() << ell);
    (0..=ell).map(|k| binomial(ell as u64, k as u64) / &total).collect()
}

impl MuddyConfig {
    /// Noiseless, father announced, binomial prior, exact certainty.
    pub fn classical(assignment: BitString) -> Self {
        let ell = assignment.len();
        MuddyConfig {
            ell,
            assignment: Assignment::Fixed(assignment),
            prior: binomial_prior(ell),
            noise: vec![rational::zero(); ell],
            father: true,
            threshold: rational::one(),
            max_rounds: MAX_ROUNDS,
            prior_expansion: PriorExpansion::default(),
            realized_flips: None,
        }
    }

    pub fn validate(&self) -> Result<(), MuddyError> {
        let bad = |msg: String| Err(MuddyError::Config(msg));
        if self.ell == 0 {
            return bad("at least one child is needed".into());
        }
        if self.ell > MAX_CHILDREN {
            return Err(MuddyError::Cap {
                what: "the number of children",
                value: self.ell,
                max: MAX_CHILDREN,
            });
        }
        if self.max_rounds == 0 {
            return bad("at least one round is needed".into());
        }
        if self.max_rounds > MAX_ROUNDS {
            return Err(MuddyError::Cap {
                what: "the number of rounds",
                value: self.max_rounds,
                max: MAX_ROUNDS,
            });
        }
        if self.prior.len() != self.ell + 1 {
            return bad(format!("prior has {} entries, expected {}", self.prior.len(), self.ell + 1));
        }
        if self.prior.iter().any(|p| *p < rational::zero()) {
            return bad("prior has a negative entry".into());
        }
        let sum: Rational = self.prior.iter().sum();
        if !sum.is_one() {
            return bad(format!("prior sums to {}", to_fraction_string(&sum)));
        }
        if self.noise.len() != self.ell {
            return bad(format!("{} noise rates for {} children", self.noise.len(), self.ell));
        }
        if let Some(e) = self.noise.iter().find(|e| **e < rational::zero() || **e >= rational::one()) {
            return bad(format!("noise rate {} outside [0,1)", to_fraction_string(e)));
        }
        let half = rational::ratio(1, 2);
        if self.threshold <= half || self.threshold > rational::one() {
            return bad(format!("threshold {} outside (1/2,1]", to_fraction_string(&self.threshold)));
        }
        if let Assignment::Fixed(m) = &self.assignment {
            if m.len() != self.ell {
                return bad(format!("assignment {m} does not have {} bits", self.ell));
            }
            if self.world_prior(m).is_zero() {
                return bad(format!("assignment {m} has prior probability zero"));
            }
        }
        if self.worlds().iter().all(|(_, w)| w.is_zero()) {
            return bad("the prior excludes every world".into());
        }
        if let Some(flips) = &self.realized_flips {
            if flips.len() > self.max_rounds || flips.iter().any(|r| r.len() != self.ell) {
                return bad("realized flips must have at most max_rounds rows of ell entries".into());
            }
            for row in flips {
                for (i, &f) in row.iter().enumerate() {
                    if f && self.noise[i].is_zero() {
                        return bad(format!("child {} has no noise but a flip is requested", i + 1));
                    }
                }
            }
        }
        Ok(())
    }

    /// Unnormalized prior weight of one world under the expansion, before
    /// the father's announcement.
    fn raw_weight(&self, m: &BitString) -> Rational {
        let k = count(m);
        match self.prior_expansion {
            PriorExpansion::UniformWithinCount => &self.prior[k] / binomial(self.ell as u64, k as u64),
            PriorExpansion::PerAssignment => self.prior[k].clone(),
        }
    }

    /// Every world with its prior probability, index order.
    pub fn worlds(&self) -> Vec<(BitString, Rational)> {
        let raw: Vec<(BitString, Rational)> = BitString::all(self.ell)
            .into_iter()
            .map(|m| {
                let w = if self.father && count(&m) == 0 {
                    rational::zero()
                } else {
                    self.raw_weight(&m)
                };
                (m, w)
            })
            .collect();
        let total: Rational = raw.iter().map(|(_, w)| w.clone()).sum();
        if total.is_zero() {
            return raw;
        }
        raw.into_iter().map(|(m, w)| (m, w / &total)).collect()
    }

    pub fn world_prior(&self, m: &BitString) -> Rational {
        self.worlds()
            .into_iter()
            .find(|(w, _)| w == m)
            .map(|(_, p)| p)
            .unwrap_or_else(rational::zero)
    }

    /// The actual world: the fixed assignment, or a draw from the prior.
    pub fn resolve_assignment(&self) -> BitString {
        match &self.assignment {
            Assignment::Fixed(m) => m.clone(),
            Assignment::Sampled { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let u = Rational::new(rng.gen::<u64>().into(), num_bigint::BigInt::one() << 64);
                let worlds = self.worlds();
                let mut acc = rational::zero();
                for (m, p) in &worlds {
                    acc += p;
                    if u < acc && !p.is_zero() {
                        return m.clone();
                    }
                }
                worlds.into_iter().rev().find(|(_, p)| !p.is_zero()).map(|(m, _)| m).expect("validated")
            }
        }
    }

    /// Own-forehead posterior of a child that sees `k` muddy foreheads,
    /// before any announcement, under this configuration's expansion and
    /// without the father's announcement.
    pub fn initial_own_probability(&self, k: usize) -> Result<Rational, MuddyError> {
        match self.prior_expansion {
            PriorExpansion::PerAssignment => initial_own_probability(&self.prior, k),
            PriorExpansion::UniformWithinCount => {
                if k + 1 >= self.prior.len() {
                    return Err(MuddyError::Config(format!("{k} muddy foreheads cannot be seen")));
                }
                let ell = self.ell as u64;
                let own = &self.prior[k + 1] / binomial(ell, k as u64 + 1);
                let other = &self.prior[k] / binomial(ell, k as u64);
                let total = &own + other;
                if total.is_zero() {
                    return Err(MuddyError::ZeroDenominator { k });
                }
                Ok(own / total)
            }
        }
    }
}

fn count(m: &BitString) -> usize {
    m.bits().iter().filter(|b| **b).count()
}

/// `p_{k+1} / (p_k + p_{k+1})`.
pub fn initial_own_probability(prior: &[Rational], k: usize) -> Result<Rational, MuddyError> {
    if k + 1 >= prior.len() {
        return Err(MuddyError::Config(format!(
            "{k} muddy foreheads cannot be seen among {} others",
            prior.len().saturating_sub(2)
        )));
    }
    let total = &prior[k] + &prior[k + 1];
    if total.is_zero() {
        return Err(MuddyError::ZeroDenominator { k });
    }
    Ok(&prior[k + 1] / total)
}

/// Field `m_i` (1-based) as a one-bit string.
pub fn own_field(child: usize) -> String {
    format!("m{}", child + 1)
}

fn own_is_muddy(child: usize) -> Predicate {
    Predicate::eq(Expr::field(own_field(child)), Expr::constant(Value::bits("1")))
}

fn child_agent(child: usize) -> String {
    format!("child{}", child + 1)
}

fn observed_fields(ell: usize, child: usize) -> impl Iterator<Item = String> {
    (0..ell).filter(move |&k| k != child).map(own_field)
}

fn world_state(m: &BitString) -> State {
    let mut s = State::new().with("m", Value::Bits(m.clone()));
    for (i, &b) in m.bits().iter().enumerate() {
        s.bind(own_field(i), Value::Bits(BitString::new(vec![b])));
    }
    s
}

fn decides(posterior: &Rational, threshold: &Rational) -> bool {
    *posterior >= *threshold || *posterior <= rational::one() - threshold
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Announcement {
    pub round: usize,
    pub child: usize,
    /// The child knows its own bit.
    pub claimed: bool,
    /// What the others heard.
    pub transmitted: bool,
}

impl fmt::Display for Announcement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = |k: bool| if k { "knows" } else { "does not know" };
        write!(f, "child {}: {}", self.child + 1, word(self.claimed))?;
        if self.claimed != self.transmitted {
            write!(f, " (heard: {})", word(self.transmitted))?;
        }
        Ok(())
    }
}

/// A child's distribution over full worlds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointBelief {
    pub child: usize,
    pub worlds: Vec<(BitString, Rational)>,
}

impl JointBelief {
    pub fn own_probability(&self) -> Rational {
        self.worlds
            .iter()
            .filter(|(m, _)| m.bit(self.child) == Some(true))
            .map(|(_, p)| p.clone())
            .sum()
    }
}

/// Public weights of the worlds at the start of a round: the prior
/// conditioned on everything transmitted before it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundState {
    pub round: usize,
    pub ell: usize,
    pub weights: Vec<(BitString, Rational)>,
}

impl RoundState {
    pub fn initial(config: &MuddyConfig) -> Result<Self, MuddyError> {
        config.validate()?;
        Ok(RoundState {
            round: 1,
            ell: config.ell,
            weights: config.worlds(),
        })
    }

    /// The worlds of positive weight as a state space over `m` and its
    /// bits, with view `child{i}` seeing every bit but its own.
    pub fn model(&self) -> Result<Model, MuddyError> {
        let mut fields = vec!["m".to_string()];
        fields.extend((0..self.ell).map(own_field));
        let space = StateSpace::from_weighted(
            fields,
            self.weights.iter().map(|(m, p)| (world_state(m), p.clone())),
        )?;
        let views = (0..self.ell).map(|i| ViewMap::new(child_agent(i), observed_fields(self.ell, i)));
        Ok(Model::new(space, views)?)
    }

    /// The child's belief in world `actual`: the weights restricted to the
    /// worlds agreeing with `actual` off the child's own bit.
    pub fn belief(&self, child: usize, actual: &BitString) -> Result<JointBelief, MuddyError> {
        let visible = |m: &BitString| (0..self.ell).filter(|&k| k != child).all(|k| m.bit(k) == actual.bit(k));
        let mass: Rational = self.weights.iter().filter(|(m, _)| visible(m)).map(|(_, p)| p.clone()).sum();
        if mass.is_zero() {
            return Err(MuddyError::Inconsistent { round: self.round });
        }
        let worlds = self
            .weights
            .iter()
            .map(|(m, p)| {
                let q = if visible(m) { p / &mass } else { rational::zero() };
                (m.clone(), q)
            })
            .collect();
        Ok(JointBelief { child, worlds })
    }
}

/// One synchronous round in world `actual`: every child announces, the
/// announcements pass through the channel (`flips[i]` flips child `i`'s),
/// and the public weights are conditioned on what was transmitted, with
/// every world's hypothetical announcements weighed by the flip rates.
/// Returns the announcements, each child's posterior before announcing, and
/// the next round's state.
pub fn run_round(
    state: &RoundState,
    actual: &BitString,
    flips: &[bool],
    config: &MuddyConfig,
) -> Result<(Vec<Announcement>, Vec<Rational>, RoundState), MuddyError> {
    let ell = state.ell;
    let model = state.model()?;
    let eval = EvalConfig::default();

    // claims[i]: projection of a world under child i's view -> knows
    let mut claims: Vec<HashMap<State, bool>> = Vec::with_capacity(ell);
    for i in 0..ell {
        let view = model.view(&child_agent(i))?;
        let mut known = HashMap::new();
        for class in model.space().partition(view) {
            let p = model.conditional_probability(&child_agent(i), &class.key, &Predicate::Top, &own_is_muddy(i), &eval)?;
            known.insert(class.key, decides(&p, &config.threshold));
        }
        claims.push(known);
    }
    let claimed_in = |i: usize, m: &BitString| -> Option<bool> {
        let view = model.view(&child_agent(i)).ok()?;
        claims[i].get(&view.project(&world_state(m))).copied()
    };

    let actual_state = world_state(actual);
    let mut posteriors = Vec::with_capacity(ell);
    let mut announcements = Vec::with_capacity(ell);
    for i in 0..ell {
        posteriors.push(model.conditional_probability(
            &child_agent(i),
            &actual_state,
            &Predicate::Top,
            &own_is_muddy(i),
            &eval,
        )?);
        let claimed = claimed_in(i, actual).ok_or(MuddyError::Inconsistent { round: state.round })?;
        announcements.push(Announcement {
            round: state.round,
            child: i,
            claimed,
            transmitted: claimed ^ flips.get(i).copied().unwrap_or(false),
        });
    }

    let mut next = Vec::with_capacity(state.weights.len());
    for (m, w) in &state.weights {
        let mut w = w.clone();
        if !w.is_zero() {
            for a in &announcements {
                let eps = &config.noise[a.child];
                let claimed = claimed_in(a.child, m).ok_or(MuddyError::Inconsistent { round: state.round })?;
                w *= if claimed == a.transmitted { rational::one() - eps } else { eps.clone() };
            }
        }
        next.push((m.clone(), w));
    }
    let total: Rational = next.iter().map(|(_, w)| w.clone()).sum();
    if total.is_zero() {
        return Err(MuddyError::Inconsistent { round: state.round });
    }
    for (_, w) in &mut next {
        *w /= &total;
    }
    Ok((
        announcements,
        posteriors,
        RoundState {
            round: state.round + 1,
            ell,
            weights: next,
        },
    ))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundRecord {
    pub round: usize,
    /// Each child's posterior that its own forehead is muddy, when it speaks.
    pub posteriors: Vec<Rational>,
    pub announcements: Vec<Announcement>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Termination {
    AllKnow { round: usize },
    MaxRounds { rounds: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    pub assignment: BitString,
    pub rounds: Vec<RoundRecord>,
    pub termination: Termination,
}

impl Transcript {
    /// First round in which each child claims to know, if any.
    pub fn first_knows(&self) -> Vec<Option<usize>> {
        let ell = self.assignment.len();
        (0..ell)
            .map(|i| {
                self.rounds
                    .iter()
                    .find(|r| r.announcements[i].claimed)
                    .map(|r| r.round)
            })
            .collect()
    }
}

/// Runs rounds until every child claims to know or `max_rounds` is reached.
pub fn simulate(config: &MuddyConfig) -> Result<Transcript, MuddyError> {
    let mut state = RoundState::initial(config)?;
    let actual = config.resolve_assignment();
    let mut rounds = Vec::new();
    for t in 1..=config.max_rounds {
        let flips = config
            .realized_flips
            .as_ref()
            .and_then(|f| f.get(t - 1))
            .cloned()
            .unwrap_or_else(|| vec![false; config.ell]);
        let (announcements, posteriors, next) = run_round(&state, &actual, &flips, config)?;
        let all_know = announcements.iter().all(|a| a.claimed);
        rounds.push(RoundRecord {
            round: t,
            posteriors,
            announcements,
        });
        if all_know {
            return Ok(Transcript {
                assignment: actual,
                rounds,
                termination: Termination::AllKnow { round: t },
            });
        }
        state = next;
    }
    Ok(Transcript {
        assignment: actual,
        rounds,
        termination: Termination::MaxRounds {
            rounds: config.max_rounds,
        },
    })
}

/// The joint space of worlds and flip bits for `rounds` rounds.
pub struct MuddyModel {
    model: Model,
    ell: usize,
    rounds: usize,
}

/// Announcement field `a{round}_{child}` (1-based).
pub fn announcement_field(round: usize, child: usize) -> String {
    format!("a{round}_{}", child + 1)
}

/// Flip field `f{round}_{child}` (1-based); present only for noisy children.
pub fn flip_field(round: usize, child: usize) -> String {
    format!("f{round}_{}", child + 1)
}

/// Agent `child{i}@round{t}`: the other children's bits and every
/// announcement transmitted before round `t`.
pub fn round_agent(child: usize, round: usize) -> String {
    format!("child{}@round{round}", child + 1)
}

fn round_view(ell: usize, child: usize, round: usize) -> ViewMap {
    let mut visible: Vec<String> = observed_fields(ell, child).collect();
    for s in 1..round {
        visible.extend((0..ell).map(|j| announcement_field(s, j)));
    }
    ViewMap::new(round_agent(child, round), visible)
}

/// Builds the joint space with `m`, its bits `m1..`, a flip bit per noisy
/// child per round, and the transmitted announcements of rounds
/// `1..=rounds`. Announcements of round `t` are computed from the
/// information sets of the round-`t` views.
pub fn build_muddy_statespace(config: &MuddyConfig, rounds: usize, cap: usize) -> Result<MuddyModel, MuddyError> {
    config.validate()?;
    if rounds > config.max_rounds {
        return Err(MuddyError::Cap {
            what: "the number of rounds",
            value: rounds,
            max: config.max_rounds,
        });
    }
    let ell = config.ell;
    let (domain, weights): (Vec<Value>, Vec<Rational>) = config
        .worlds()
        .into_iter()
        .map(|(m, p)| (Value::Bits(m), p))
        .unzip();
    let mut fields = vec![FieldSpec::sampled("m", domain, weights)];
    for i in 0..ell {
        fields.push(FieldSpec::derived(own_field(i), Expr::bit_at(Expr::field("m"), i)));
    }
    for t in 1..=rounds {
        for (i, eps) in config.noise.iter().enumerate() {
            if !eps.is_zero() {
                fields.push(FieldSpec::sampled(
                    flip_field(t, i),
                    vec![Value::Bit(false), Value::Bit(true)],
                    vec![rational::one() - eps, eps.clone()],
                ));
            }
        }
    }
    let mut schema = Schema::new(fields);
    if config.father {
        schema = schema.with_constraint(Condition::Neq(Expr::field("m"), Expr::constant(BitString::zeros(ell))));
    }
    let mut space = enumerate_with_cap(&schema, cap)?;

    for t in 1..=rounds {
        let mut computed = Vec::with_capacity(ell);
        for i in 0..ell {
            let view = round_view(ell, i, t);
            let mut knows = vec![false; space.len()];
            for class in space.partition(&view) {
                let muddy: Rational = class
                    .members
                    .iter()
                    .filter(|&&s| space.states()[s].0.get(&own_field(i)) == Some(&Value::bits("1")))
                    .map(|&s| space.states()[s].1.clone())
                    .sum();
                let decided = decides(&(muddy / &class.mass), &config.threshold);
                for &s in &class.members {
                    knows[s] = decided;
                }
            }
            computed.push(knows);
        }
        for (i, knows) in computed.into_iter().enumerate() {
            let flip = flip_field(t, i);
            space = space.extend_with(announcement_field(t, i), |s, state| {
                let flipped = state.get(&flip).and_then(Value::as_bit).unwrap_or(false);
                Value::Bit(knows[s] ^ flipped)
            });
        }
    }

    let mut views = Vec::new();
    for t in 1..=rounds + 1 {
        for i in 0..ell {
            views.push(round_view(ell, i, t));
        }
    }
    Ok(MuddyModel {
        model: Model::new(space, views)?,
        ell,
        rounds,
    })
}

impl MuddyModel {
    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    /// What `child` observes at the start of `round` in world `m` after the
    /// given transmitted announcements (`heard[s][j]` for rounds before).
    pub fn anchor(&self, child: usize, m: &BitString, heard: &[Vec<bool>]) -> State {
        let mut s = State::new();
        for k in (0..self.ell).filter(|&k| k != child) {
            s.bind(own_field(k), Value::Bits(BitString::new(vec![m.bit(k).unwrap_or(false)])));
        }
        for (r, row) in heard.iter().enumerate() {
            for (j, &a) in row.iter().enumerate() {
                s.bind(announcement_field(r + 1, j), Value::Bit(a));
            }
        }
        s
    }

    /// Posterior that `child`'s own forehead is muddy at the start of
    /// `round` (at most `rounds + 1`).
    pub fn posterior(&self, child: usize, round: usize, m: &BitString, heard: &[Vec<bool>]) -> Result<Rational, MuddyError> {
        let anchor = self.anchor(child, m, &heard[..round - 1]);
        Ok(self.model.conditional_probability(
            &round_agent(child, round),
            &anchor,
            &Predicate::Top,
            &own_is_muddy(child),
            &EvalConfig::default(),
        )?)
    }

    /// `K(m_i = v)` for some bit `v`, at the start of `round`.
    pub fn knows(&self, child: usize, round: usize, m: &BitString, heard: &[Vec<bool>]) -> Result<bool, MuddyError> {
        let anchor = self.anchor(child, m, &heard[..round - 1]);
        let agent = round_agent(child, round);
        for v in ["0", "1"] {
            let post = Predicate::eq(Expr::field(own_field(child)), Expr::constant(Value::bits(v)));
            if self.model.eval_knowledge(&agent, &anchor, &Predicate::Top, &post, &EvalConfig::default())? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}
