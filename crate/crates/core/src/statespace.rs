//! Finite probability spaces of named-field states, with per-agent views.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::expr::{Condition, Expr, ExprError};
use crate::rational::{to_fraction_string, Rational};
use crate::value::Value;

/// Default bound on the number of enumerated states.
pub const DEFAULT_MAX_STATES: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemaError {
    #[error("field {0:?} declared twice")]
    DuplicateField(String),
    #[error("field {field:?}: distribution sums to {}, not 1", to_fraction_string(.sum))]
    DistributionSum { field: String, sum: Rational },
    #[error("field {field:?}: negative probability {}", to_fraction_string(.weight))]
    NegativeWeight { field: String, weight: Rational },
    #[error("field {field:?}: {domain} domain values but {weights} probabilities")]
    DomainMismatch {
        field: String,
        domain: usize,
        weights: usize,
    },
    #[error("field {field:?}: value {value} listed twice in the domain")]
    DuplicateDomainValue { field: String, value: Value },
    #[error("field {field:?} refers to {referenced:?}, which is not an earlier field")]
    ForwardReference { field: String, referenced: String },
    #[error("constraint refers to unknown field {0:?}")]
    UnknownConstraintField(String),
    #[error("the constraint excludes every state")]
    EmptySpace,
    #[error("state count bound {bound} exceeds the cap of {cap}")]
    CapExceeded { bound: u128, cap: usize },
    #[error("field {field:?}: {source}")]
    Expr {
        field: String,
        #[source]
        source: ExprError,
    },
    #[error("constraint: {0}")]
    Constraint(ExprError),
    #[error("state probabilities sum to {}, not 1", to_fraction_string(.0))]
    TotalMass(Rational),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("agent {agent:?}: anchor does not bind visible field {field:?}")]
    AnchorMissingField { agent: String, field: String },
    #[error("agent {agent:?}: the anchor's information set is empty")]
    EmptyInformationSet { agent: String },
    #[error("view of {agent:?} names unknown field {field:?}")]
    UnknownViewField { agent: String, field: String },
}

/// How a field gets its value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldKind {
    Sampled {
        domain: Vec<Value>,
        weights: Vec<Rational>,
    },
    /// Computed from earlier fields.
    Derived(Expr),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    pub name: String,
    pub kind: FieldKind,
}

impl FieldSpec {
    pub fn sampled(name: impl Into<String>, domain: Vec<Value>, weights: Vec<Rational>) -> Self {
        FieldSpec {
            name: name.into(),
            kind: FieldKind::Sampled { domain, weights },
        }
    }

    pub fn uniform(name: impl Into<String>, domain: Vec<Value>) -> Self {
        let w = Rational::new(1.into(), (domain.len().max(1) as i64).into());
        let weights = vec![w; domain.len()];
        FieldSpec::sampled(name, domain, weights)
    }

    pub fn derived(name: impl Into<String>, expr: Expr) -> Self {
        FieldSpec {
            name: name.into(),
            kind: FieldKind::Derived(expr),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Schema {
    pub fields: Vec<FieldSpec>,
    /// States violating it are dropped and the rest renormalized.
    pub constraint: Option<Condition>,
}

impl Schema {
    pub fn new(fields: Vec<FieldSpec>) -> Self {
        Schema {
            fields,
            constraint: None,
        }
    }

    pub fn with_constraint(mut self, constraint: Condition) -> Self {
        self.constraint = Some(constraint);
        self
    }

    pub fn field_names(&self) -> Vec<String> {
        self.fields.iter().map(|f| f.name.clone()).collect()
    }

    /// Checks names, distributions and reference order.
    pub fn validate(&self) -> Result<(), SchemaError> {
        let mut seen = BTreeSet::new();
        for field in &self.fields {
            match &field.kind {
                FieldKind::Sampled { domain, weights } => {
                    check_distribution(&field.name, domain, weights)?
                }
                FieldKind::Derived(expr) => {
                    for r in expr.fields() {
                        if !seen.contains(r) {
                            return Err(SchemaError::ForwardReference {
                                field: field.name.clone(),
                                referenced: r.to_string(),
                            });
                        }
                    }
                }
            }
            if !seen.insert(field.name.as_str()) {
                return Err(SchemaError::DuplicateField(field.name.clone()));
            }
        }
        if let Some(c) = &self.constraint {
            for r in c.fields() {
                if !seen.contains(r) {
                    return Err(SchemaError::UnknownConstraintField(r.to_string()));
                }
            }
        }
        Ok(())
    }

    /// Upper bound on the number of states: product of nonzero-support sizes.
    pub fn state_bound(&self) -> u128 {
        self.fields
            .iter()
            .filter_map(|f| match &f.kind {
                FieldKind::Sampled { weights, .. } => {
                    Some(weights.iter().filter(|w| !w.is_zero()).count() as u128)
                }
                FieldKind::Derived(_) => None,
            })
            .fold(1u128, |acc, n| acc.saturating_mul(n))
    }
}

fn check_distribution(
    field: &str,
    domain: &[Value],
    weights: &[Rational],
) -> Result<(), SchemaError> {
    if domain.len() != weights.len() {
        return Err(SchemaError::DomainMismatch {
            field: field.to_string(),
            domain: domain.len(),
            weights: weights.len(),
        });
    }
    if let Some(w) = weights.iter().find(|w| **w < Rational::zero()) {
        return Err(SchemaError::NegativeWeight {
            field: field.to_string(),
            weight: w.clone(),
        });
    }
    let sum: Rational = weights.iter().cloned().sum();
    if !sum.is_one() {
        return Err(SchemaError::DistributionSum {
            field: field.to_string(),
            sum,
        });
    }
    let mut distinct = BTreeSet::new();
    for v in domain {
        if !distinct.insert(v) {
            return Err(SchemaError::DuplicateDomainValue {
                field: field.to_string(),
                value: v.clone(),
            });
        }
    }
    Ok(())
}

/// A partial assignment of values to field names. Equality is structural and
/// independent of insertion order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct State(BTreeMap<String, Value>);

impl State {
    pub fn new() -> Self {
        State::default()
    }

    pub fn from_pairs<K: Into<String>>(pairs: impl IntoIterator<Item = (K, Value)>) -> Self {
        State(pairs.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }

    pub fn get(&self, field: &str) -> Option<&Value> {
        self.0.get(field)
    }

    pub fn is_bound(&self, field: &str) -> bool {
        self.0.contains_key(field)
    }

    pub fn bind(&mut self, field: impl Into<String>, value: Value) {
        self.0.insert(field.into(), value);
    }

    pub fn with(mut self, field: impl Into<String>, value: Value) -> Self {
        self.bind(field, value);
        self
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Value)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn fields(&self) -> impl Iterator<Item = &str> {
        self.0.keys().map(String::as_str)
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}={v}")?;
        }
        f.write_str(">")
    }
}

/// An agent's projection `q -> q_A` onto a set of visible fields.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ViewMap {
    pub agent: String,
    pub visible: BTreeSet<String>,
}

impl ViewMap {
    pub fn new<S: Into<String>>(agent: impl Into<String>, visible: impl IntoIterator<Item = S>) -> Self {
        ViewMap {
            agent: agent.into(),
            visible: visible.into_iter().map(Into::into).collect(),
        }
    }

    /// Restriction of `state` to the visible fields; unbound ones are skipped.
    pub fn project(&self, state: &State) -> State {
        State(
            self.visible
                .iter()
                .filter_map(|f| state.get(f).map(|v| (f.clone(), v.clone())))
                .collect(),
        )
    }

    /// Same projection, i.e. the agent cannot tell the states apart.
    pub fn same_info(&self, q: &State, q2: &State) -> bool {
        self.visible.iter().all(|f| q.get(f) == q2.get(f))
    }

    fn require_bound(&self, anchor: &State) -> Result<(), SpaceError> {
        match self.visible.iter().find(|f| !anchor.is_bound(f)) {
            Some(f) => Err(SpaceError::AnchorMissingField {
                agent: self.agent.clone(),
                field: f.clone(),
            }),
            None => Ok(()),
        }
    }
}

/// One `~_A` equivalence class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InformationClass {
    /// The canonical representative `q_A`.
    pub key: State,
    /// Indices into [`StateSpace::states`].
    pub members: Vec<usize>,
    pub mass: Rational,
}

/// Fully bound states with exact, positive probabilities summing to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateSpace {
    fields: Vec<String>,
    states: Vec<(State, Rational)>,
}

/// Enumerates `schema` with the default cap.
pub fn enumerate(schema: &Schema) -> Result<StateSpace, SchemaError> {
    enumerate_with_cap(schema, DEFAULT_MAX_STATES)
}

/// Cartesian product of the sampled fields, derived fields filled in,
/// zero-mass and constraint-violating states dropped, the rest renormalized.
pub fn enumerate_with_cap(schema: &Schema, cap: usize) -> Result<StateSpace, SchemaError> {
    schema.validate()?;
    let bound = schema.state_bound();
    if bound > cap as u128 {
        return Err(SchemaError::CapExceeded { bound, cap });
    }
    let mut out = Vec::new();
    expand(schema, 0, State::new(), Rational::one(), &mut out)?;
    if let Some(constraint) = &schema.constraint {
        let mut kept = Vec::with_capacity(out.len());
        for (state, p) in out {
            match constraint.eval(&state).map_err(SchemaError::Constraint)? {
                Some(true) => kept.push((state, p)),
                Some(false) => {}
                None => unreachable!("validated constraint over fully bound state"),
            }
        }
        out = kept;
    }
    let total: Rational = out.iter().map(|(_, p)| p.clone()).sum();
    if out.is_empty() || total.is_zero() {
        return Err(SchemaError::EmptySpace);
    }
    if !total.is_one() {
        for (_, p) in out.iter_mut() {
            *p = &*p / &total;
        }
    }
    Ok(StateSpace {
        fields: schema.field_names(),
        states: out,
    })
}

fn expand(
    schema: &Schema,
    index: usize,
    state: State,
    mass: Rational,
    out: &mut Vec<(State, Rational)>,
) -> Result<(), SchemaError> {
    let Some(field) = schema.fields.get(index) else {
        out.push((state, mass));
        return Ok(());
    };
    match &field.kind {
        FieldKind::Sampled { domain, weights } => {
            for (v, w) in domain.iter().zip(weights) {
                if w.is_zero() {
                    continue;
                }
                let next = state.clone().with(field.name.clone(), v.clone());
                expand(schema, index + 1, next, &mass * w, out)?;
            }
            Ok(())
        }
        FieldKind::Derived(expr) => {
            let value = expr
                .eval(&state)
                .map_err(|source| SchemaError::Expr {
                    field: field.name.clone(),
                    source,
                })?
                .expect("derived fields only read earlier, bound fields");
            expand(schema, index + 1, state.with(field.name.clone(), value), mass, out)
        }
    }
}

impl StateSpace {
    /// Builds a space from explicit weighted states. Duplicates are merged,
    /// zero-mass states dropped; the total must be exactly 1.
    pub fn from_weighted(
        fields: Vec<String>,
        states: impl IntoIterator<Item = (State, Rational)>,
    ) -> Result<StateSpace, SchemaError> {
        let mut index: HashMap<State, usize> = HashMap::new();
        let mut merged: Vec<(State, Rational)> = Vec::new();
        for (state, p) in states {
            if p < Rational::zero() {
                return Err(SchemaError::NegativeWeight {
                    field: state.to_string(),
                    weight: p,
                });
            }
            if p.is_zero() {
                continue;
            }
            match index.get(&state) {
                Some(&i) => merged[i].1 += p,
                None => {
                    index.insert(state.clone(), merged.len());
                    merged.push((state, p));
                }
            }
        }
        let total: Rational = merged.iter().map(|(_, p)| p.clone()).sum();
        if merged.is_empty() {
            return Err(SchemaError::EmptySpace);
        }
        if !total.is_one() {
            return Err(SchemaError::TotalMass(total));
        }
        Ok(StateSpace {
            fields,
            states: merged,
        })
    }

    pub fn fields(&self) -> &[String] {
        &self.fields
    }

    pub fn states(&self) -> &[(State, Rational)] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn has_field(&self, name: &str) -> bool {
        self.fields.iter().any(|f| f == name)
    }

    pub fn check_view(&self, view: &ViewMap) -> Result<(), SpaceError> {
        match view.visible.iter().find(|f| !self.has_field(f)) {
            Some(f) => Err(SpaceError::UnknownViewField {
                agent: view.agent.clone(),
                field: f.clone(),
            }),
            None => Ok(()),
        }
    }

    /// All states the agent cannot distinguish from `anchor`, with their
    /// probabilities. The anchor must bind every visible field.
    pub fn information_set(
        &self,
        view: &ViewMap,
        anchor: &State,
    ) -> Result<Vec<(&State, &Rational)>, SpaceError> {
        view.require_bound(anchor)?;
        let set: Vec<_> = self
            .states
            .iter()
            .filter(|(s, _)| view.same_info(s, anchor))
            .map(|(s, p)| (s, p))
            .collect();
        if set.is_empty() {
            return Err(SpaceError::EmptyInformationSet {
                agent: view.agent.clone(),
            });
        }
        Ok(set)
    }

    /// The agent's information sets, ordered by representative.
    pub fn partition(&self, view: &ViewMap) -> Vec<InformationClass> {
        let mut classes: BTreeMap<State, (Vec<usize>, Rational)> = BTreeMap::new();
        for (i, (s, p)) in self.states.iter().enumerate() {
            let entry = classes
                .entry(view.project(s))
                .or_insert_with(|| (Vec::new(), Rational::zero()));
            entry.0.push(i);
            entry.1 += p;
        }
        classes
            .into_iter()
            .map(|(key, (members, mass))| InformationClass { key, members, mass })
            .collect()
    }

    /// Exact probability of the states satisfying `event`.
    pub fn event_probability(&self, mut event: impl FnMut(&State) -> bool) -> Rational {
        self.states
            .iter()
            .filter(|(s, _)| event(s))
            .map(|(_, p)| p.clone())
            .sum()
    }

    /// Distinct values of a field, sorted.
    pub fn field_values(&self, field: &str) -> Vec<Value> {
        let set: BTreeSet<&Value> = self.states.iter().filter_map(|(s, _)| s.get(field)).collect();
        set.into_iter().cloned().collect()
    }

    /// Adds a field computed per state (index into [`Self::states`] and state).
    pub fn extend_with(
        &self,
        name: impl Into<String>,
        mut value: impl FnMut(usize, &State) -> Value,
    ) -> StateSpace {
        let name = name.into();
        let mut fields = self.fields.clone();
        fields.push(name.clone());
        let states = self
            .states
            .iter()
            .enumerate()
            .map(|(i, (s, p))| (s.clone().with(name.clone(), value(i, s)), p.clone()))
            .collect();
        StateSpace { fields, states }
    }
}
