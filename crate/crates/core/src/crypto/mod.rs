//! Concrete cryptosystems and their state-space encodings.

pub mod elgamal;
pub mod vernam;

use thiserror::Error;

use crate::group::GroupError;
use crate::logic::LogicError;
use crate::statespace::SchemaError;
use crate::value::{Value, ValueError};

pub use elgamal::{
    ddh_decide, elgamal_statespace, Ciphertext, ElGamalSystem, GameMode, KeyPair, MessagePair,
};
pub use vernam::{vernam_statespace, MessageDistribution, VernamSystem};

/// Agent names used by every builtin model.
pub const GEN: &str = "Gen";
pub const ENC: &str = "Enc";
pub const DEC: &str = "Dec";
pub const ATT: &str = "Att";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CryptoError {
    #[error("expected a {expected}-bit {what}, got {actual} bits")]
    Length {
        what: &'static str,
        expected: usize,
        actual: usize,
    },
    #[error("block length and block count must be at least 1")]
    EmptyShape,
    #[error("exponent {value} outside Z_{order}")]
    ExponentRange { value: u64, order: u64 },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Value(#[from] ValueError),
    #[error(transparent)]
    Schema(#[from] SchemaError),
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error("message {0} is outside the message space")]
    BadMessage(String),
}

/// Key generation, encryption and decryption over finite types, with keys
/// and seeds enumerable so that games can be evaluated exhaustively.
pub trait Cryptosystem {
    /// Key used by `Enc`.
    type EncKey: Clone + Into<Value>;
    /// Key used by `Dec`.
    type DecKey: Clone + Into<Value>;
    /// The part of the encryption key announced to everyone.
    type Public: Clone + Into<Value>;
    type Message: Clone + Eq + Into<Value>;
    type Ciphertext: Clone + Eq + Into<Value>;

    /// Every key pair, each generated with equal probability.
    fn keys(&self) -> Vec<(Self::EncKey, Self::DecKey)>;

    fn public(&self, key: &Self::EncKey) -> Self::Public;

    /// Size of the seed space; seeds are `0..seed_count()`, uniform.
    fn seed_count(&self) -> u64;

    fn is_message(&self, m: &Self::Message) -> bool;

    fn encrypt(
        &self,
        key: &Self::EncKey,
        seed: u64,
        m: &Self::Message,
    ) -> Result<Self::Ciphertext, CryptoError>;

    fn decrypt(&self, key: &Self::DecKey, c: &Self::Ciphertext)
        -> Result<Self::Message, CryptoError>;
}
