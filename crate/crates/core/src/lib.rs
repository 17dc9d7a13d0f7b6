//! Probabilistic-epistemic Hoare triples over finite state spaces.
//!
//! A [`Model`] pairs an exhaustively enumerated [`StateSpace`] (exact rational
//! probabilities) with per-agent [`ViewMap`]s. Triples `pre {q}_A post` are
//! evaluated against the agent's information set at `q`, with the
//! probabilistic modality `W[lo,hi]` conditioning on that set and `K` as its
//! all-states counterpart.
//!
//! On top of the engine sit concrete models: the Vernam family and El-Gamal
//! over small cyclic groups ([`crypto`]), perfect-secrecy and IND-CPA/IND-CCA
//! harnesses with exact advantages ([`games`]), and the noisy muddy-children
//! protocol ([`muddy`]).

#![allow(clippy::result_large_err)]

pub mod crypto;
pub mod expr;
pub mod games;
pub mod group;
pub mod logic;
pub mod muddy;
pub mod rational;
pub mod statespace;
pub mod value;

pub use crypto::{Cryptosystem, CryptoError};
pub use expr::{Condition, Expr, ExprError};
pub use games::{
    check_it_sec, run_ind_cca, run_ind_cpa, AdvantageReport, CcaAttacker, CpaAttacker, GameError,
    Verdict, Witness,
};
pub use group::{CyclicGroup, GroupElement, GroupError};
pub use muddy::{simulate, MuddyConfig, MuddyError, Transcript};
pub use logic::{
    Agent, EvalConfig, InnerMode, LogicError, Model, Predicate, SubjectiveInterval, TripleQuery,
    Truth,
};
pub use rational::Rational;
pub use statespace::{
    enumerate, enumerate_with_cap, FieldKind, FieldSpec, InformationClass, Schema, SchemaError,
    SpaceError, State, StateSpace, ViewMap, DEFAULT_MAX_STATES,
};
pub use value::{BitString, Value, ValueError, ValueKind};
