//! Security games evaluated exhaustively: perfect secrecy, IND-CPA and
//! IND-CCA, with exact success probabilities and the triple-level
//! comparison `C |= W(b=1)` against `O |= W(b=1)`.

mod attackers;

pub use attackers::{
    attacker_to_ddh, lookup_corpus, sampled_lookup_corpus, ConstantAttacker, DdhCpaAttacker,
    DdhFromAttacker, ElGamalCcaAttacker, LookupAttacker, VernamCpaAttacker,
};

use std::sync::Arc;

use thiserror::Error;

use crate::crypto::{CryptoError, Cryptosystem};
use crate::expr::Expr;
use crate::group::GroupError;
use crate::logic::{Agent, EvalConfig, LogicError, Model, Predicate, SubjectiveInterval, TripleQuery};
use crate::rational::{self, Rational};
use crate::statespace::{SchemaError, SpaceError, State, StateSpace, ViewMap};
use crate::value::Value;

/// Observer with the empty view; its information set is the whole space.
pub const OBSERVER: &str = "O";

/// `None` is the failure answer (no decision).
pub type Guess = Option<bool>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GameError {
    #[error(transparent)]
    Crypto(#[from] CryptoError),
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Schema(#[from] SchemaError),
    #[error("unknown field `{0}`")]
    UnknownField(String),
    #[error("attacker chose invalid messages: {0}")]
    InvalidMessages(String),
    #[error("decryption query equals the challenge ciphertext {0}")]
    ForbiddenQuery(String),
    #[error("oracle accepted both messages for ciphertext {0}")]
    FaultyOracle(String),
    #[error("coin bias {0} must lie strictly between 0 and 1")]
    CoinBias(String),
    #[error("{0}")]
    Parameter(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub state: State,
    /// Probability seen by the attacker at `state`.
    pub lhs: Rational,
    /// Probability it is compared against.
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
    pub advantage: Option<Rational>,
}

/// Perfect secrecy: for every attacker information set of positive mass and
/// every message value, the posterior of the message equals its prior.
/// Information sets are visited in order of their projected state and
/// messages in value order; the first mismatch is the witness.
pub fn check_it_sec(
    model: &Model,
    attacker: &str,
    message_field: &str,
    ciphertext_field: &str,
) -> Result<Verdict, GameError> {
    let space = model.space();
    for f in [message_field, ciphertext_field] {
        if !space.has_field(f) {
            return Err(GameError::UnknownField(f.to_string()));
        }
    }
    let view = model.view(attacker)?;
    if !view.visible.contains(ciphertext_field) {
        return Err(GameError::Parameter(format!(
            "view of {attacker} does not contain `{ciphertext_field}`"
        )));
    }
    let model = model.clone().with_view(ViewMap::new(OBSERVER, Vec::<String>::new()))?;
    let config = EvalConfig::default();
    let messages = space.field_values(message_field);
    let mut priors = Vec::with_capacity(messages.len());
    for m in &messages {
        let post = Predicate::eq(Expr::field(message_field), Expr::constant(m.clone()));
        let prior = model.conditional_probability(OBSERVER, &State::new(), &Predicate::Top, &post, &config)?;
        priors.push((post, prior));
    }
    for class in space.partition(view) {
        for (m, (post, prior)) in messages.iter().zip(&priors) {
            let posterior = model.conditional_probability(attacker, &class.key, &Predicate::Top, post, &config)?;
            if &posterior != prior {
                return Ok(Verdict {
                    holds: false,
                    witness: Some(Witness {
                        state: class.key.clone().with(message_field, m.clone()),
                        lhs: posterior,
                        rhs: prior.clone(),
                    }),
                    advantage: None,
                });
            }
        }
    }
    Ok(Verdict {
        holds: true,
        witness: None,
        advantage: None,
    })
}

/// Chosen-plaintext attacker: picks two messages after seeing the public
/// key, then guesses `b` from the challenge ciphertext.
pub trait CpaAttacker<S: Cryptosystem> {
    fn choose(&self, public: &S::Public) -> (S::Message, S::Message);

    fn guess(
        &self,
        public: &S::Public,
        m0: &S::Message,
        m1: &S::Message,
        c: &S::Ciphertext,
    ) -> Result<Guess, GameError>;
}

/// Adds one decryption query on a ciphertext other than the challenge.
pub trait CcaAttacker<S: Cryptosystem>: CpaAttacker<S> {
    fn craft(
        &self,
        public: &S::Public,
        m0: &S::Message,
        m1: &S::Message,
        c: &S::Ciphertext,
    ) -> Result<S::Ciphertext, GameError>;

    fn decide(
        &self,
        public: &S::Public,
        m0: &S::Message,
        m1: &S::Message,
        c: &S::Ciphertext,
        c_prime: &S::Ciphertext,
        d: &S::Message,
    ) -> Result<Guess, GameError>;
}

/// Attacker's posterior of `b = 1` at one of its information sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Observation {
    pub view: State,
    pub mass: Rational,
    pub posterior: Rational,
    /// `C |= W[0,0](b=1)`
    pub certain_zero: bool,
    /// `C |= W[1,1](b=1)`
    pub certain_one: bool,
    /// `C |= W[p,p](b=1)` for the coin bias `p`.
    pub at_bias: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdvantageReport {
    pub success_probability: Rational,
    /// `p Pr(guess = 1) + (1 - p) Pr(guess = 0)`: the success of the same
    /// guesses made independently of `b`.
    pub blind_success: Rational,
    pub coin_bias: Rational,
    /// `O |= W[p,p](b=1)`.
    pub baseline: bool,
    pub observations: Vec<Observation>,
    /// Every observation agrees with the baseline.
    pub indistinguishable: bool,
    pub trials: usize,
}

impl AdvantageReport {
    /// Success probability minus the best blind guess, `max(p, 1 - p)`.
    pub fn advantage(&self) -> Rational {
        let blind = rational::one() - &self.coin_bias;
        let best = if blind > self.coin_bias { blind } else { self.coin_bias.clone() };
        &self.success_probability - best
    }

    /// The guesses carry information about `b`: success differs from
    /// [`blind_success`](Self::blind_success). With a fair coin and no
    /// abstentions this is `success != 1/2`.
    pub fn beats_blind(&self) -> bool {
        self.success_probability != self.blind_success
    }

    /// The first observation where the attacker's posterior leaves the bias.
    pub fn verdict(&self) -> Verdict {
        let witness = self
            .observations
            .iter()
            .find(|o| o.at_bias != self.baseline)
            .map(|o| Witness {
                state: o.view.clone(),
                lhs: o.posterior.clone(),
                rhs: self.coin_bias.clone(),
            });
        Verdict {
            holds: self.indistinguishable,
            witness,
            advantage: Some(self.advantage()),
        }
    }
}

const CPA_VIEW: [&str; 4] = ["public", "m0", "m1", "c"];
const CCA_VIEW: [&str; 6] = ["public", "m0", "m1", "c", "c_prime", "d"];

/// Plays the chosen-plaintext game for every key, seed and coin value.
pub fn run_ind_cpa<S, A>(system: &S, attacker: &A, coin_bias: &Rational) -> Result<AdvantageReport, GameError>
where
    S: Cryptosystem,
    A: CpaAttacker<S> + ?Sized,
{
    play(system, coin_bias, &CPA_VIEW, |key, public, seed, b, _| {
        let (m0, m1) = attacker.choose(public);
        check_messages(system, &m0, &m1)?;
        let c = system.encrypt(key, seed, if b { &m1 } else { &m0 })?;
        let guess = attacker.guess(public, &m0, &m1, &c)?;
        Ok(Trial {
            bindings: vec![("m0", m0.into()), ("m1", m1.into()), ("c", c.into())],
            guess,
        })
    })
}

/// As [`run_ind_cpa`], with one decryption query per trial.
pub fn run_ind_cca<S, A>(system: &S, attacker: &A, coin_bias: &Rational) -> Result<AdvantageReport, GameError>
where
    S: Cryptosystem,
    A: CcaAttacker<S> + ?Sized,
{
    play(system, coin_bias, &CCA_VIEW, |key, public, seed, b, secret| {
        let (m0, m1) = attacker.choose(public);
        check_messages(system, &m0, &m1)?;
        let c = system.encrypt(key, seed, if b { &m1 } else { &m0 })?;
        let c_prime = attacker.craft(public, &m0, &m1, &c)?;
        if c_prime == c {
            return Err(GameError::ForbiddenQuery(c.into().to_string()));
        }
        let d = system.decrypt(secret, &c_prime)?;
        let guess = attacker.decide(public, &m0, &m1, &c, &c_prime, &d)?;
        Ok(Trial {
            bindings: vec![
                ("m0", m0.into()),
                ("m1", m1.into()),
                ("c", c.into()),
                ("c_prime", c_prime.into()),
                ("d", d.into()),
            ],
            guess,
        })
    })
}

struct Trial {
    bindings: Vec<(&'static str, Value)>,
    guess: Guess,
}

fn check_messages<S: Cryptosystem>(system: &S, m0: &S::Message, m1: &S::Message) -> Result<(), GameError> {
    let show = |m: &S::Message| m.clone().into().to_string();
    for m in [m0, m1] {
        if !system.is_message(m) {
            return Err(GameError::InvalidMessages(format!("{} is not a message", show(m))));
        }
    }
    if m0 == m1 {
        return Err(GameError::InvalidMessages(format!("both messages are {}", show(m0))));
    }
    Ok(())
}

fn guess_value(g: Guess) -> Value {
    match g {
        Some(b) => Value::Bit(b),
        None => Value::Tuple(Vec::new()),
    }
}

/// Records every trial as a weighted state, then reads the success
/// probability and the attacker's posteriors off the resulting space.
fn play<S, F>(system: &S, coin_bias: &Rational, att_view: &[&str], mut trial: F) -> Result<AdvantageReport, GameError>
where
    S: Cryptosystem,
    F: FnMut(&S::EncKey, &S::Public, u64, bool, &S::DecKey) -> Result<Trial, GameError>,
{
    if *coin_bias <= rational::zero() || *coin_bias >= rational::one() {
        return Err(GameError::CoinBias(rational::to_fraction_string(coin_bias)));
    }
    let keys = system.keys();
    let seeds = system.seed_count();
    if keys.is_empty() || seeds == 0 {
        return Err(GameError::Parameter("empty key or seed space".into()));
    }
    let base = Rational::new(1.into(), (keys.len() as u64 * seeds).into());
    let coin = [
        (false, rational::one() - coin_bias),
        (true, coin_bias.clone()),
    ];

    let mut records = Vec::new();
    for (key, secret) in &keys {
        let public = system.public(key);
        for seed in 0..seeds {
            for (b, pb) in &coin {
                let t = trial(key, &public, seed, *b, secret)?;
                let mut state = State::from_pairs([
                    ("key", key.clone().into()),
                    ("secret", secret.clone().into()),
                    ("public", public.clone().into()),
                    ("seed", Value::Int(seed as i64)),
                    ("b", Value::Bit(*b)),
                    ("guess", guess_value(t.guess)),
                ]);
                for (name, v) in t.bindings {
                    state.bind(name, v);
                }
                records.push((state, &base * pb));
            }
        }
    }
    let trials = records.len();
    let fields = records[0].0.fields().map(str::to_string).collect();
    let space = Arc::new(StateSpace::from_weighted(fields, records)?);
    let model = Model::from_shared(
        Arc::clone(&space),
        [
            ViewMap::new(crate::crypto::ATT, att_view.iter().copied()),
            ViewMap::new(OBSERVER, Vec::<String>::new()),
        ],
    )?;

    let success_probability = space.event_probability(|s| s.get("guess") == s.get("b"));
    let guessed = |bit: bool| space.event_probability(|s| s.get("guess") == Some(&Value::Bit(bit)));
    let blind_success = coin_bias * guessed(true) + (rational::one() - coin_bias) * guessed(false);
    let b1 = Predicate::field_is("b", true);
    let point = |p: Rational| -> Result<Predicate, GameError> {
        Ok(Predicate::w(SubjectiveInterval::point(p)?, b1.clone()))
    };
    let at_bias = point(coin_bias.clone())?;
    let zero = point(rational::zero())?;
    let one = point(rational::one())?;
    let config = EvalConfig::default();
    let holds = |agent: &str, anchor: &State, post: &Predicate| {
        model.eval_triple(
            &TripleQuery {
                pre: Predicate::Top,
                anchor: anchor.clone(),
                agent: Agent::named(agent),
                post: post.clone(),
            },
            &config,
        )
    };

    let baseline = holds(OBSERVER, &State::new(), &at_bias)?;
    let mut observations = Vec::new();
    for class in space.partition(model.view(crate::crypto::ATT)?) {
        let posterior = model.conditional_probability(crate::crypto::ATT, &class.key, &Predicate::Top, &b1, &config)?;
        observations.push(Observation {
            certain_zero: holds(crate::crypto::ATT, &class.key, &zero)?,
            certain_one: holds(crate::crypto::ATT, &class.key, &one)?,
            at_bias: holds(crate::crypto::ATT, &class.key, &at_bias)?,
            view: class.key,
            mass: class.mass,
            posterior,
        });
    }
    let indistinguishable = observations.iter().all(|o| o.at_bias == baseline);
    Ok(AdvantageReport {
        success_probability,
        blind_success,
        coin_bias: coin_bias.clone(),
        baseline,
        observations,
        indistinguishable,
        trials,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crypto::{ddh_decide, vernam_statespace, ElGamalSystem, MessageDistribution, VernamSystem, ATT};
    use crate::group::CyclicGroup;
    use crate::rational::ratio;
    use crate::value::BitString;

    fn skewed(len: usize) -> MessageDistribution {
        // weights 1, 2, ..., 2^len normalized
        let n = 1i64 << len;
        let total = n * (n + 1) / 2;
        MessageDistribution::Weights(
            BitString::all(len)
                .into_iter()
                .zip(1..)
                .map(|(m, w)| (m, ratio(w, total)))
                .collect(),
        )
    }

    /// Pr(m | c) and Pr(m) straight from state masses.
    fn by_event_ratio(space: &StateSpace, m: &Value, c: &Value) -> (Rational, Rational) {
        let joint = space.event_probability(|s| s.get("m") == Some(m) && s.get("c") == Some(c));
        let pc = space.event_probability(|s| s.get("c") == Some(c));
        (joint / pc, space.event_probability(|s| s.get("m") == Some(m)))
    }

    #[test]
    fn one_time_pad_is_perfectly_secret() {
        for dist in [MessageDistribution::Uniform, skewed(1)] {
            let model = vernam_statespace(&VernamSystem::one_time_pad(1).unwrap(), &dist).unwrap();
            assert!(check_it_sec(&model, ATT, "m", "c").unwrap().holds);
        }
        let model = vernam_statespace(&VernamSystem::one_time_pad(3).unwrap(), &skewed(3)).unwrap();
        assert_eq!(model.space().len(), 64);
        let verdict = check_it_sec(&model, ATT, "m", "c").unwrap();
        assert!(verdict.holds && verdict.witness.is_none());
    }

    #[test]
    fn repeated_key_fails_with_witness() {
        let model = vernam_statespace(&VernamSystem::new(1, 2, false).unwrap(), &MessageDistribution::Uniform).unwrap();
        let verdict = check_it_sec(&model, ATT, "m", "c").unwrap();
        assert!(!verdict.holds);
        let w = verdict.witness.unwrap();
        assert_eq!(w.state.get("m"), Some(&Value::bits("00")));
        assert_eq!(w.state.get("c"), Some(&Value::bits("00")));
        assert_eq!((w.lhs.clone(), w.rhs.clone()), (ratio(1, 2), ratio(1, 4)));
        let (post, prior) = by_event_ratio(model.space(), &Value::bits("00"), &Value::bits("00"));
        assert_eq!((post, prior), (w.lhs, w.rhs));
    }

    #[test]
    fn it_sec_matches_point_interval_triples() {
        let model = vernam_statespace(&VernamSystem::new(1, 2, false).unwrap(), &MessageDistribution::Uniform)
            .unwrap()
            .with_view(ViewMap::new(OBSERVER, Vec::<String>::new()))
            .unwrap();
        let config = EvalConfig::default();
        let m = Predicate::field_is("m", BitString::zeros(2));
        let iota = SubjectiveInterval::point(ratio(1, 4)).unwrap();
        let at = |agent: &str, anchor: State| {
            model
                .eval_triple(
                    &TripleQuery {
                        pre: Predicate::Top,
                        anchor,
                        agent: Agent::named(agent),
                        post: Predicate::w(iota.clone(), m.clone()),
                    },
                    &config,
                )
                .unwrap()
        };
        assert!(at(OBSERVER, State::new()));
        assert!(!at(ATT, State::new().with("c", Value::bits("00"))));
    }

    #[test]
    fn it_sec_rejects_unknown_fields() {
        let model = vernam_statespace(&VernamSystem::one_time_pad(1).unwrap(), &MessageDistribution::Uniform).unwrap();
        assert!(matches!(check_it_sec(&model, ATT, "x", "c"), Err(GameError::UnknownField(_))));
        assert!(check_it_sec(&model, "Gen", "m", "k").is_ok());
        assert!(matches!(check_it_sec(&model, ATT, "m", "k"), Err(GameError::Parameter(_))));
    }

    #[test]
    fn vernam_plus_bit_is_broken_by_chosen_plaintext() {
        let sys = VernamSystem::new(2, 1, true).unwrap();
        let report = run_ind_cpa(&sys, &VernamCpaAttacker::new(2), &ratio(1, 2)).unwrap();
        assert_eq!(report.success_probability, ratio(1, 1));
        assert!(report.baseline && !report.indistinguishable);
        for o in &report.observations {
            let last = o.view.get("c").unwrap().as_bits().unwrap().bits().to_vec();
            let b = last[0] ^ last[last.len() - 1];
            assert_eq!((o.certain_zero, o.certain_one), (!b, b));
        }
        let verdict = report.verdict();
        assert!(!verdict.holds && verdict.witness.is_some());
        assert_eq!(verdict.advantage, Some(ratio(1, 2)));
    }

    #[test]
    fn one_time_pad_blinds_every_lookup_attacker() {
        let sys = VernamSystem::one_time_pad(1).unwrap();
        for att in lookup_corpus(&sys, 100).unwrap() {
            let report = run_ind_cpa(&sys, &att, &ratio(1, 2)).unwrap();
            assert_eq!(report.success_probability, ratio(1, 2));
            assert!(report.indistinguishable);
        }
    }

    #[test]
    fn biased_coin_blind_success_is_the_mixture() {
        let sys = VernamSystem::one_time_pad(1).unwrap();
        let p = ratio(1, 3);
        for att in lookup_corpus(&sys, 100).unwrap() {
            let report = run_ind_cpa(&sys, &att, &p).unwrap();
            assert!(report.indistinguishable);
            assert!(report.observations.iter().all(|o| o.posterior == p));
            let ones = att.table.iter().filter(|&&g| g).count() as i64;
            let guess_one = ratio(ones, 2);
            let expected = &p * &guess_one + (rational::one() - &p) * (rational::one() - &guess_one);
            assert_eq!(report.success_probability, expected);
            assert_eq!(report.blind_success, expected);
            assert!(!report.beats_blind());
        }
    }

    #[test]
    fn elgamal_cpa_with_perfect_ddh_oracle() {
        let g = CyclicGroup::new(11, 2, 10).unwrap();
        let sys = ElGamalSystem::new(g);
        let att = DdhCpaAttacker::new(g, |x, y, z| ddh_decide(&g, x, y, z)).unwrap();
        let report = run_ind_cpa(&sys, &att, &ratio(1, 2)).unwrap();
        assert_eq!(report.trials, 200);
        assert_eq!(report.success_probability, ratio(1, 1));
        assert!(report.beats_blind());

        let blind = DdhCpaAttacker::new(g, |_, _, _| false).unwrap();
        let report = run_ind_cpa(&sys, &blind, &ratio(1, 2)).unwrap();
        assert_eq!(report.success_probability, ratio(1, 2));
        assert!(!report.beats_blind());
        // The key g^0 = 1 leaves m_b in the clear, whatever the attacker does.
        assert!(!report.indistinguishable);
    }

    #[test]
    fn elgamal_cca_attack_always_succeeds() {
        let g = CyclicGroup::new(11, 2, 10).unwrap();
        let sys = ElGamalSystem::new(g);
        for q in g.carrier().into_iter().filter(|q| !q.is_identity()) {
            let att = ElGamalCcaAttacker::new(q).unwrap();
            let report = run_ind_cca(&sys, &att, &ratio(1, 2)).unwrap();
            assert_eq!(report.success_probability, ratio(1, 1));
            assert!(report.observations.iter().all(|o| o.certain_zero || o.certain_one));
        }
    }

    struct Replay;

    impl CpaAttacker<ElGamalSystem> for Replay {
        fn choose(&self, k: &crate::group::GroupElement) -> (crate::group::GroupElement, crate::group::GroupElement) {
            (k.group().pow_generator(1), k.group().pow_generator(2))
        }
        fn guess(
            &self,
            _: &crate::group::GroupElement,
            _: &crate::group::GroupElement,
            _: &crate::group::GroupElement,
            _: &crate::crypto::Ciphertext,
        ) -> Result<Guess, GameError> {
            Ok(None)
        }
    }

    impl CcaAttacker<ElGamalSystem> for Replay {
        fn craft(
            &self,
            _: &crate::group::GroupElement,
            _: &crate::group::GroupElement,
            _: &crate::group::GroupElement,
            c: &crate::crypto::Ciphertext,
        ) -> Result<crate::crypto::Ciphertext, GameError> {
            Ok(*c)
        }
        fn decide(
            &self,
            _: &crate::group::GroupElement,
            _: &crate::group::GroupElement,
            _: &crate::group::GroupElement,
            _: &crate::crypto::Ciphertext,
            _: &crate::crypto::Ciphertext,
            _: &crate::group::GroupElement,
        ) -> Result<Guess, GameError> {
            Ok(None)
        }
    }

    #[test]
    fn challenge_replay_is_rejected() {
        let sys = ElGamalSystem::new(CyclicGroup::new(11, 2, 10).unwrap());
        assert!(matches!(run_ind_cca(&sys, &Replay, &ratio(1, 2)), Err(GameError::ForbiddenQuery(_))));
    }

    #[test]
    fn invalid_inputs() {
        let sys = VernamSystem::one_time_pad(2).unwrap();
        let same = ConstantAttacker {
            m0: BitString::zeros(2),
            m1: BitString::zeros(2),
            answer: Some(true),
        };
        assert!(matches!(
            run_ind_cpa::<VernamSystem, _>(&sys, &same, &ratio(1, 2)),
            Err(GameError::InvalidMessages(_))
        ));
        let short = ConstantAttacker {
            m0: BitString::zeros(1),
            m1: BitString::zeros(2),
            answer: Some(true),
        };
        assert!(matches!(
            run_ind_cpa::<VernamSystem, _>(&sys, &short, &ratio(1, 2)),
            Err(GameError::InvalidMessages(_))
        ));
        let fine = VernamCpaAttacker::new(1);
        assert!(matches!(run_ind_cpa(&sys, &fine, &ratio(0, 1)), Err(GameError::CoinBias(_))));
    }
}
