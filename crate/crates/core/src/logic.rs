//! Predicates with probabilistic and knowledge modalities, and Hoare triples
//! `pre {q}_A post` evaluated over an agent's information sets.
//!
//! Triple semantics for a named agent `A` at anchor `q`:
//! - `pre` is evaluated at `q_A`, the agent's canonical representative. It
//!   must come out definite; `Unknown` is an error.
//! - if `pre` is false the triple holds vacuously;
//! - otherwise `post` is evaluated at `q` itself, and an `Unknown` post
//!   leaves the triple unsatisfied.
//!
//! `W[lo,hi](psi)` holds at `s` for `A` when the conditional probability of
//! the inner triple `T {s'}_A psi` over `s' ~_A s` lies in `[lo,hi]`. `K(psi)`
//! requires the inner triple at every `s' ~_A s`. With [`InnerMode::Objective`]
//! the inner triple is the global one, which holds when some registered
//! agent's local triple holds.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::expr::{values_equal, Expr, ExprError};
use crate::rational::{in_unit_interval, to_fraction_string, Rational};
use crate::statespace::{SpaceError, State, StateSpace, ViewMap};
use crate::value::Value;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("ill-typed atom: {0}")]
    IllTyped(#[from] ExprError),
    #[error("modality {0} needs a named agent")]
    ModalityUnderGlobal(&'static str),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("precondition is undetermined at {agent:?}'s view")]
    UnknownPrecondition { agent: String },
    #[error("no view registered for agent {0:?}")]
    UnknownAgent(String),
    #[error("interval [{}, {}] is not within [0,1] with lo <= hi", to_fraction_string(.lo), to_fraction_string(.hi))]
    InvalidInterval { lo: Rational, hi: Rational },
}

/// Strong Kleene truth values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Truth {
    True,
    False,
    Unknown,
}

impl Truth {
    pub fn and(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::False, _) | (_, Truth::False) => Truth::False,
            (Truth::True, Truth::True) => Truth::True,
            _ => Truth::Unknown,
        }
    }

    pub fn or(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::True, _) | (_, Truth::True) => Truth::True,
            (Truth::False, Truth::False) => Truth::False,
            _ => Truth::Unknown,
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Truth {
        match self {
            Truth::True => Truth::False,
            Truth::False => Truth::True,
            Truth::Unknown => Truth::Unknown,
        }
    }

    pub fn is_true(self) -> bool {
        self == Truth::True
    }
}

impl From<bool> for Truth {
    fn from(b: bool) -> Self {
        if b {
            Truth::True
        } else {
            Truth::False
        }
    }
}

/// A closed rational interval inside `[0,1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubjectiveInterval {
    lo: Rational,
    hi: Rational,
}

impl SubjectiveInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self, LogicError> {
        if !in_unit_interval(&lo) || !in_unit_interval(&hi) || lo > hi {
            return Err(LogicError::InvalidInterval { lo, hi });
        }
        Ok(SubjectiveInterval { lo, hi })
    }

    pub fn point(p: Rational) -> Result<Self, LogicError> {
        Self::new(p.clone(), p)
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn contains(&self, p: &Rational) -> bool {
        self.lo <= *p && *p <= self.hi
    }

    pub fn is_subset_of(&self, other: &SubjectiveInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }
}

impl fmt::Display for SubjectiveInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", to_fraction_string(&self.lo), to_fraction_string(&self.hi))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Eq,
    Neq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Predicate {
    Top,
    Bottom,
    Atom { rel: Relation, lhs: Expr, rhs: Expr },
    And(Box<Predicate>, Box<Predicate>),
    Or(Box<Predicate>, Box<Predicate>),
    Not(Box<Predicate>),
    W(SubjectiveInterval, Box<Predicate>),
    K(Box<Predicate>),
}

impl Predicate {
    pub fn eq(lhs: Expr, rhs: Expr) -> Predicate {
        Predicate::Atom {
            rel: Relation::Eq,
            lhs,
            rhs,
        }
    }

    pub fn neq(lhs: Expr, rhs: Expr) -> Predicate {
        Predicate::Atom {
            rel: Relation::Neq,
            lhs,
            rhs,
        }
    }

    /// `field = value`.
    pub fn field_is(field: &str, value: impl Into<Value>) -> Predicate {
        Predicate::eq(Expr::field(field), Expr::Const(value.into()))
    }

    pub fn and(self, other: Predicate) -> Predicate {
        Predicate::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Predicate) -> Predicate {
        Predicate::Or(Box::new(self), Box::new(other))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Predicate {
        Predicate::Not(Box::new(self))
    }

    pub fn w(iota: SubjectiveInterval, body: Predicate) -> Predicate {
        Predicate::W(iota, Box::new(body))
    }

    pub fn k(body: Predicate) -> Predicate {
        Predicate::K(Box::new(body))
    }

    pub fn has_modality(&self) -> bool {
        match self {
            Predicate::Top | Predicate::Bottom | Predicate::Atom { .. } => false,
            Predicate::And(a, b) | Predicate::Or(a, b) => a.has_modality() || b.has_modality(),
            Predicate::Not(a) => a.has_modality(),
            Predicate::W(..) | Predicate::K(_) => true,
        }
    }

    /// Fields referenced anywhere, for checking against a space.
    pub fn fields(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_fields(&mut out);
        out
    }

    fn collect_fields<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Predicate::Top | Predicate::Bottom => {}
            Predicate::Atom { lhs, rhs, .. } => {
                out.extend(lhs.fields());
                out.extend(rhs.fields());
            }
            Predicate::And(a, b) | Predicate::Or(a, b) => {
                a.collect_fields(out);
                b.collect_fields(out);
            }
            Predicate::Not(a) | Predicate::W(_, a) | Predicate::K(a) => a.collect_fields(out),
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::Top => f.write_str("T"),
            Predicate::Bottom => f.write_str("F"),
            Predicate::Atom { rel, lhs, rhs } => {
                let op = match rel {
                    Relation::Eq => "=",
                    Relation::Neq => "!=",
                };
                write!(f, "{lhs} {op} {rhs}")
            }
            Predicate::And(a, b) => write!(f, "({a} & {b})"),
            Predicate::Or(a, b) => write!(f, "({a} | {b})"),
            Predicate::Not(a) => write!(f, "!({a})"),
            Predicate::W(iota, a) => write!(f, "W{iota}({a})"),
            Predicate::K(a) => write!(f, "K({a})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Agent {
    Named(String),
    /// Satisfied when some registered agent's local triple is.
    Global,
}

impl Agent {
    pub fn named(name: impl Into<String>) -> Agent {
        Agent::Named(name.into())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum InnerMode {
    /// Inner triples of `W`/`K` use the same agent: `pre {s}_A post`.
    #[default]
    AgentLocal,
    /// Inner triples are global: `pre {s} post`.
    Objective,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct EvalConfig {
    pub inner_mode: InnerMode,
}

impl EvalConfig {
    pub fn objective() -> Self {
        EvalConfig {
            inner_mode: InnerMode::Objective,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleQuery {
    pub pre: Predicate,
    pub anchor: State,
    pub agent: Agent,
    pub post: Predicate,
}

/// A state space with its registered agent views.
#[derive(Debug, Clone)]
pub struct Model {
    space: Arc<StateSpace>,
    views: BTreeMap<String, ViewMap>,
}

impl Model {
    pub fn new(space: StateSpace, views: impl IntoIterator<Item = ViewMap>) -> Result<Self, LogicError> {
        Model::from_shared(Arc::new(space), views)
    }

    pub fn from_shared(
        space: Arc<StateSpace>,
        views: impl IntoIterator<Item = ViewMap>,
    ) -> Result<Self, LogicError> {
        let mut model = Model {
            space,
            views: BTreeMap::new(),
        };
        for v in views {
            model = model.with_view(v)?;
        }
        Ok(model)
    }

    /// Same space with one more (or a replaced) view.
    pub fn with_view(mut self, view: ViewMap) -> Result<Self, LogicError> {
        self.space.check_view(&view)?;
        self.views.insert(view.agent.clone(), view);
        Ok(self)
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn shared_space(&self) -> Arc<StateSpace> {
        Arc::clone(&self.space)
    }

    pub fn views(&self) -> impl Iterator<Item = &ViewMap> {
        self.views.values()
    }

    pub fn view(&self, agent: &str) -> Result<&ViewMap, LogicError> {
        self.views
            .get(agent)
            .ok_or_else(|| LogicError::UnknownAgent(agent.to_string()))
    }

    /// Three-valued evaluation of `pred` at `state` for `agent`.
    pub fn eval_predicate(
        &self,
        pred: &Predicate,
        state: &State,
        agent: &Agent,
        config: &EvalConfig,
    ) -> Result<Truth, LogicError> {
        let view = match agent {
            Agent::Named(name) => Some(self.view(name)?),
            Agent::Global => None,
        };
        self.eval(pred, state, view, config)
    }

    /// `Pr(pre {s}_A post | s ~_A anchor)`, exactly.
    pub fn conditional_probability(
        &self,
        agent: &str,
        anchor: &State,
        pre: &Predicate,
        post: &Predicate,
        config: &EvalConfig,
    ) -> Result<Rational, LogicError> {
        let view = self.view(agent)?;
        self.cond_prob(view, anchor, pre, post, config)
    }

    pub fn eval_triple(&self, query: &TripleQuery, config: &EvalConfig) -> Result<bool, LogicError> {
        match &query.agent {
            Agent::Named(name) => {
                let view = self.view(name)?;
                self.triple_local(view, &query.anchor, &query.pre, &query.post, config)
            }
            Agent::Global => self.triple_global(&query.anchor, &query.pre, &query.post, config),
        }
    }

    /// The knowledge reading: the inner triple holds at every state of the
    /// agent's information set at `anchor`.
    pub fn eval_knowledge(
        &self,
        agent: &str,
        anchor: &State,
        pre: &Predicate,
        post: &Predicate,
        config: &EvalConfig,
    ) -> Result<bool, LogicError> {
        let view = self.view(agent)?;
        for (s, _) in self.space.information_set(view, anchor)? {
            if !self.inner_triple(view, s, pre, post, config)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn eval(
        &self,
        pred: &Predicate,
        state: &State,
        view: Option<&ViewMap>,
        config: &EvalConfig,
    ) -> Result<Truth, LogicError> {
        Ok(match pred {
            Predicate::Top => Truth::True,
            Predicate::Bottom => Truth::False,
            Predicate::Atom { rel, lhs, rhs } => match values_equal(lhs, rhs, state)? {
                None => Truth::Unknown,
                Some(eq) => Truth::from(eq == (*rel == Relation::Eq)),
            },
            Predicate::And(a, b) => {
                let left = self.eval(a, state, view, config)?;
                if left == Truth::False {
                    return Ok(Truth::False);
                }
                left.and(self.eval(b, state, view, config)?)
            }
            Predicate::Or(a, b) => {
                let left = self.eval(a, state, view, config)?;
                if left == Truth::True {
                    return Ok(Truth::True);
                }
                left.or(self.eval(b, state, view, config)?)
            }
            Predicate::Not(a) => self.eval(a, state, view, config)?.not(),
            Predicate::W(iota, body) => {
                let view = view.ok_or(LogicError::ModalityUnderGlobal("W"))?;
                let p = self.cond_prob(view, state, &Predicate::Top, body, config)?;
                Truth::from(iota.contains(&p))
            }
            Predicate::K(body) => {
                let view = view.ok_or(LogicError::ModalityUnderGlobal("K"))?;
                let mut all = true;
                for (s, _) in self.space.information_set(view, state)? {
                    if !self.inner_triple(view, s, &Predicate::Top, body, config)? {
                        all = false;
                        break;
                    }
                }
                Truth::from(all)
            }
        })
    }

    fn cond_prob(
        &self,
        view: &ViewMap,
        anchor: &State,
        pre: &Predicate,
        post: &Predicate,
        config: &EvalConfig,
    ) -> Result<Rational, LogicError> {
        let set = self.space.information_set(view, anchor)?;
        let mut total = Rational::zero();
        let mut hits = Rational::zero();
        for (s, p) in set {
            total += p;
            if self.inner_triple(view, s, pre, post, config)? {
                hits += p;
            }
        }
        if total.is_zero() {
            return Err(SpaceError::EmptyInformationSet {
                agent: view.agent.clone(),
            }
            .into());
        }
        if hits == total {
            return Ok(Rational::one());
        }
        Ok(hits / total)
    }

    fn inner_triple(
        &self,
        view: &ViewMap,
        s: &State,
        pre: &Predicate,
        post: &Predicate,
        config: &EvalConfig,
    ) -> Result<bool, LogicError> {
        match config.inner_mode {
            InnerMode::AgentLocal => self.triple_local(view, s, pre, post, config),
            InnerMode::Objective => self.triple_global(s, pre, post, config),
        }
    }

    fn triple_local(
        &self,
        view: &ViewMap,
        anchor: &State,
        pre: &Predicate,
        post: &Predicate,
        config: &EvalConfig,
    ) -> Result<bool, LogicError> {
        let representative = view.project(anchor);
        match self.eval(pre, &representative, Some(view), config)? {
            Truth::False => Ok(true),
            Truth::Unknown => Err(LogicError::UnknownPrecondition {
                agent: view.agent.clone(),
            }),
            Truth::True => Ok(self.eval(post, anchor, Some(view), config)?.is_true()),
        }
    }

    fn triple_global(
        &self,
        anchor: &State,
        pre: &Predicate,
        post: &Predicate,
        config: &EvalConfig,
    ) -> Result<bool, LogicError> {
        let mut first_error = None;
        let mut any_definite = false;
        for view in self.views.values() {
            match self.triple_local(view, anchor, pre, post, config) {
                Ok(true) => return Ok(true),
                Ok(false) => any_definite = true,
                Err(e) => {
                    first_error.get_or_insert(e);
                }
            }
        }
        match first_error {
            Some(e) if !any_definite => Err(e),
            _ => Ok(false),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::statespace::{enumerate, FieldSpec, Schema};
    use crate::value::BitString;

    fn bits(len: usize) -> Vec<Value> {
        BitString::all(len).into_iter().map(Value::Bits).collect()
    }

    fn vernam_model(blocks: usize, m_weights: Vec<Rational>) -> Model {
        let schema = Schema::new(vec![
            FieldSpec::uniform("k", bits(1)),
            FieldSpec::sampled("m", bits(blocks), m_weights),
            FieldSpec::derived(
                "c",
                Expr::xor(Expr::repeat(Expr::field("k"), blocks), Expr::field("m")),
            ),
        ]);
        Model::new(
            enumerate(&schema).unwrap(),
            [
                ViewMap::new("Gen", ["k"]),
                ViewMap::new("Enc", ["k", "m", "c"]),
                ViewMap::new("Dec", ["k", "c"]),
                ViewMap::new("Att", ["c"]),
                ViewMap::new("O", Vec::<String>::new()),
            ],
        )
        .unwrap()
    }

    fn uniform(n: i64) -> Vec<Rational> {
        vec![ratio(1, n); n as usize]
    }

    fn full(k: &str, m: &str, c: &str) -> State {
        State::from_pairs([("k", Value::bits(k)), ("m", Value::bits(m)), ("c", Value::bits(c))])
    }

    fn cfg() -> EvalConfig {
        EvalConfig::default()
    }

    fn point(a: i64, b: i64) -> SubjectiveInterval {
        SubjectiveInterval::point(ratio(a, b)).unwrap()
    }

    #[test]
    fn atoms_are_three_valued() {
        let model = vernam_model(1, uniform(2));
        let m1 = Predicate::field_is("m", Value::bits("1"));
        let att = Agent::named("Att");
        assert_eq!(
            model.eval_predicate(&m1, &full("0", "1", "1"), &att, &cfg()).unwrap(),
            Truth::True
        );
        let partial = State::from_pairs([("c", Value::bits("1"))]);
        assert_eq!(model.eval_predicate(&m1, &partial, &att, &cfg()).unwrap(), Truth::Unknown);
    }

    #[test]
    fn w_conditions_on_information_set() {
        let model = vernam_model(1, uniform(2));
        let pred = Predicate::w(point(1, 2), Predicate::field_is("m", Value::bits("1")));
        let t = model
            .eval_predicate(&pred, &full("0", "1", "1"), &Agent::named("Att"), &cfg())
            .unwrap();
        assert_eq!(t, Truth::True);
    }

    #[test]
    fn modalities_reject_global_agent() {
        let model = vernam_model(1, uniform(2));
        let pred = Predicate::k(Predicate::Top);
        assert!(matches!(
            model.eval_predicate(&pred, &full("0", "1", "1"), &Agent::Global, &cfg()),
            Err(LogicError::ModalityUnderGlobal("K"))
        ));
    }

    #[test]
    fn conditional_probability_examples() {
        let m1 = Predicate::field_is("m", Value::bits("1"));
        let c1 = State::from_pairs([("c", Value::bits("1"))]);
        let uniform_model = vernam_model(1, uniform(2));
        assert_eq!(
            uniform_model
                .conditional_probability("Att", &c1, &Predicate::Top, &m1, &cfg())
                .unwrap(),
            ratio(1, 2)
        );
        let skewed = vernam_model(1, vec![ratio(2, 3), ratio(1, 3)]);
        assert_eq!(
            skewed.conditional_probability("Att", &c1, &Predicate::Top, &m1, &cfg()).unwrap(),
            ratio(1, 3)
        );
        let two_blocks = vernam_model(2, uniform(4));
        let c00 = State::from_pairs([("c", Value::bits("00"))]);
        let m00 = Predicate::field_is("m", Value::bits("00"));
        assert_eq!(
            two_blocks
                .conditional_probability("Att", &c00, &Predicate::Top, &m00, &cfg())
                .unwrap(),
            ratio(1, 2)
        );
        assert_eq!(
            two_blocks
                .conditional_probability("O", &State::new(), &Predicate::Top, &m00, &cfg())
                .unwrap(),
            ratio(1, 4)
        );
    }

    #[test]
    fn triples() {
        let model = vernam_model(1, uniform(2));
        let c1 = State::from_pairs([("c", Value::bits("1"))]);
        let query = TripleQuery {
            pre: Predicate::Top,
            anchor: c1.clone(),
            agent: Agent::named("Att"),
            post: Predicate::w(point(1, 2), Predicate::field_is("m", Value::bits("1"))),
        };
        assert!(model.eval_triple(&query, &cfg()).unwrap());

        let vacuous = TripleQuery {
            pre: Predicate::Bottom,
            post: Predicate::Bottom,
            ..query.clone()
        };
        assert!(model.eval_triple(&vacuous, &cfg()).unwrap());

        let two_blocks = vernam_model(2, uniform(4));
        let q = TripleQuery {
            pre: Predicate::Top,
            anchor: State::from_pairs([("c", Value::bits("00"))]),
            agent: Agent::named("Att"),
            post: Predicate::w(point(1, 4), Predicate::field_is("m", Value::bits("00"))),
        };
        assert!(!two_blocks.eval_triple(&q, &cfg()).unwrap());
    }

    #[test]
    fn prior_read_from_empty_anchor() {
        let model = vernam_model(1, vec![ratio(2, 3), ratio(1, 3)]);
        for (a, expect) in [(ratio(1, 3), true), (ratio(2, 3), false)] {
            let q = TripleQuery {
                pre: Predicate::Top,
                anchor: State::new(),
                agent: Agent::named("O"),
                post: Predicate::w(
                    SubjectiveInterval::point(a).unwrap(),
                    Predicate::field_is("m", Value::bits("1")),
                ),
            };
            assert_eq!(model.eval_triple(&q, &cfg()).unwrap(), expect);
        }
    }

    #[test]
    fn unknown_precondition_is_an_error() {
        let model = vernam_model(1, uniform(2));
        let q = TripleQuery {
            pre: Predicate::field_is("m", Value::bits("1")),
            anchor: full("0", "1", "1"),
            agent: Agent::named("Att"),
            post: Predicate::Top,
        };
        assert!(matches!(
            model.eval_triple(&q, &cfg()),
            Err(LogicError::UnknownPrecondition { .. })
        ));
    }

    #[test]
    fn knowledge_examples() {
        let model = vernam_model(1, uniform(2));
        let m_from_kc = Predicate::eq(
            Expr::field("m"),
            Expr::xor(Expr::field("k"), Expr::field("c")),
        );
        for (s, _) in model.space().states() {
            assert!(model.eval_knowledge("Dec", s, &Predicate::Top, &m_from_kc, &cfg()).unwrap());
        }
        let c1 = State::from_pairs([("c", Value::bits("1"))]);
        let m1 = Predicate::field_is("m", Value::bits("1"));
        assert!(!model.eval_knowledge("Att", &c1, &Predicate::Top, &m1, &cfg()).unwrap());
        for (s, _) in model.space().states() {
            let direct = model.eval_predicate(&m1, s, &Agent::named("Enc"), &cfg()).unwrap();
            let known = model.eval_knowledge("Enc", s, &Predicate::Top, &m1, &cfg()).unwrap();
            assert_eq!(direct.is_true(), known);
        }
    }

    #[test]
    fn global_is_existential_over_agents() {
        let model = vernam_model(1, uniform(2));
        let post = Predicate::k(Predicate::field_is("k", Value::bits("0")));
        let anchor = full("0", "1", "1");
        let global = model
            .eval_triple(
                &TripleQuery {
                    pre: Predicate::Top,
                    anchor: anchor.clone(),
                    agent: Agent::Global,
                    post: post.clone(),
                },
                &cfg(),
            )
            .unwrap();
        let any = model.views().any(|v| {
            model
                .eval_triple(
                    &TripleQuery {
                        pre: Predicate::Top,
                        anchor: anchor.clone(),
                        agent: Agent::named(v.agent.clone()),
                        post: post.clone(),
                    },
                    &cfg(),
                )
                .unwrap()
        });
        assert!(global);
        assert_eq!(global, any);
    }

    #[test]
    fn interval_validation() {
        assert!(SubjectiveInterval::new(ratio(1, 2), ratio(1, 3)).is_err());
        assert!(SubjectiveInterval::new(ratio(-1, 2), ratio(1, 3)).is_err());
        assert!(SubjectiveInterval::new(ratio(0, 1), ratio(3, 2)).is_err());
        let inner = SubjectiveInterval::new(ratio(1, 3), ratio(1, 2)).unwrap();
        let outer = SubjectiveInterval::new(ratio(0, 1), ratio(1, 2)).unwrap();
        assert!(inner.is_subset_of(&outer));
        assert!(!outer.is_subset_of(&inner));
    }
}
