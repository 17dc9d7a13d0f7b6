//! Vernam ciphers: `E(k, m) = D(k, m) = k^j xor m`, optionally with the first
//! key bit appended to cover one extra message bit.

use crate::expr::Expr;
use crate::logic::Model;
use crate::rational::Rational;
use crate::statespace::{enumerate, FieldSpec, Schema, ViewMap};
use crate::value::{BitString, Value};

use super::{CryptoError, Cryptosystem, ATT, DEC, ENC, GEN};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VernamSystem {
    ell: usize,
    blocks: usize,
    plus_one_bit: bool,
}

impl VernamSystem {
    pub fn new(ell: usize, blocks: usize, plus_one_bit: bool) -> Result<Self, CryptoError> {
        if ell == 0 || blocks == 0 {
            return Err(CryptoError::EmptyShape);
        }
        Ok(VernamSystem {
            ell,
            blocks,
            plus_one_bit,
        })
    }

    /// One-time pad: a single block.
    pub fn one_time_pad(ell: usize) -> Result<Self, CryptoError> {
        Self::new(ell, 1, false)
    }

    pub fn key_len(&self) -> usize {
        self.ell
    }

    pub fn blocks(&self) -> usize {
        self.blocks
    }

    pub fn plus_one_bit(&self) -> bool {
        self.plus_one_bit
    }

    pub fn message_len(&self) -> usize {
        self.ell * self.blocks + usize::from(self.plus_one_bit)
    }

    /// The key stretched to message length: `k^j`, then `k_0` if extended.
    pub fn effective_key(&self, k: &BitString) -> Result<BitString, CryptoError> {
        self.check(k, self.ell, "key")?;
        let mut stretched = k.repeat(self.blocks);
        if self.plus_one_bit {
            stretched.push(k.bit(0).expect("nonempty key"));
        }
        Ok(stretched)
    }

    pub fn encrypt(&self, k: &BitString, m: &BitString) -> Result<BitString, CryptoError> {
        self.check(m, self.message_len(), "message")?;
        Ok(self.effective_key(k)?.xor(m)?)
    }

    pub fn decrypt(&self, k: &BitString, c: &BitString) -> Result<BitString, CryptoError> {
        self.encrypt(k, c)
    }

    pub fn all_keys(&self) -> Vec<BitString> {
        BitString::all(self.ell)
    }

    pub fn all_messages(&self) -> Vec<BitString> {
        BitString::all(self.message_len())
    }

    fn check(&self, b: &BitString, expected: usize, what: &'static str) -> Result<(), CryptoError> {
        if b.len() != expected {
            return Err(CryptoError::Length {
                what,
                expected,
                actual: b.len(),
            });
        }
        Ok(())
    }

    /// Ciphertext as an expression over fields `key` and `message`.
    pub fn ciphertext_expr(&self, key: &str, message: &str) -> Expr {
        let mut stretched = Expr::repeat(Expr::field(key), self.blocks);
        if self.plus_one_bit {
            stretched = Expr::concat(stretched, Expr::bit_at(Expr::field(key), 0));
        }
        Expr::xor(stretched, Expr::field(message))
    }
}

impl Cryptosystem for VernamSystem {
    type EncKey = BitString;
    type DecKey = BitString;
    type Public = ();
    type Message = BitString;
    type Ciphertext = BitString;

    fn keys(&self) -> Vec<(BitString, BitString)> {
        self.all_keys().into_iter().map(|k| (k.clone(), k)).collect()
    }

    fn public(&self, _key: &BitString) {}

    fn seed_count(&self) -> u64 {
        1
    }

    fn is_message(&self, m: &BitString) -> bool {
        m.len() == self.message_len()
    }

    fn encrypt(&self, key: &BitString, _seed: u64, m: &BitString) -> Result<BitString, CryptoError> {
        VernamSystem::encrypt(self, key, m)
    }

    fn decrypt(&self, key: &BitString, c: &BitString) -> Result<BitString, CryptoError> {
        VernamSystem::decrypt(self, key, c)
    }
}

/// Message distribution for the perfect-secrecy encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MessageDistribution {
    Uniform,
    /// Explicit probabilities; messages not listed get probability 0.
    Weights(Vec<(BitString, Rational)>),
}

/// The encryption-session space `<k, m, c>` with `k` uniform, `m` drawn from
/// `messages`, `c` derived, and the views Gen `{k}`, Enc `{k,m,c}`,
/// Dec `{k,c}`, Att `{c}`.
pub fn vernam_statespace(
    sys: &VernamSystem,
    messages: &MessageDistribution,
) -> Result<Model, CryptoError> {
    let keys: Vec<Value> = sys.all_keys().into_iter().map(Value::Bits).collect();
    let all = sys.all_messages();
    let message_field = match messages {
        MessageDistribution::Uniform => {
            FieldSpec::uniform("m", all.into_iter().map(Value::Bits).collect())
        }
        MessageDistribution::Weights(weights) => {
            for (m, _) in weights {
                sys.check(m, sys.message_len(), "message")?;
            }
            FieldSpec::sampled(
                "m",
                weights.iter().map(|(m, _)| Value::Bits(m.clone())).collect(),
                weights.iter().map(|(_, p)| p.clone()).collect(),
            )
        }
    };
    let schema = Schema::new(vec![
        FieldSpec::uniform("k", keys),
        message_field,
        FieldSpec::derived("c", sys.ciphertext_expr("k", "m")),
    ]);
    let space = enumerate(&schema)?;
    Ok(Model::new(
        space,
        [
            ViewMap::new(GEN, ["k"]),
            ViewMap::new(ENC, ["k", "m", "c"]),
            ViewMap::new(DEC, ["k", "c"]),
            ViewMap::new(ATT, ["c"]),
        ],
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::statespace::State;

    fn b(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn encryption_examples() {
        let one_block = VernamSystem::new(2, 1, false).unwrap();
        assert_eq!(one_block.encrypt(&b("10"), &b("01")).unwrap(), b("11"));
        let two_blocks = VernamSystem::new(1, 2, false).unwrap();
        assert_eq!(two_blocks.encrypt(&b("1"), &b("01")).unwrap(), b("10"));
        let extended = VernamSystem::new(2, 1, true).unwrap();
        assert_eq!(extended.effective_key(&b("10")).unwrap(), b("101"));
        assert_eq!(extended.encrypt(&b("10"), &b("000")).unwrap(), b("101"));
    }

    #[test]
    fn length_mismatch_is_rejected() {
        let sys = VernamSystem::new(2, 1, false).unwrap();
        assert!(matches!(
            sys.encrypt(&b("1"), &b("01")),
            Err(CryptoError::Length { what: "key", .. })
        ));
        assert!(matches!(
            sys.encrypt(&b("10"), &b("011")),
            Err(CryptoError::Length { what: "message", .. })
        ));
        assert!(VernamSystem::new(0, 1, false).is_err());
    }

    #[test]
    fn encryption_is_an_involution() {
        for (ell, blocks, plus) in [(1, 1, false), (2, 3, false), (3, 2, true), (4, 3, false), (6, 2, false)] {
            let sys = VernamSystem::new(ell, blocks, plus).unwrap();
            if sys.message_len() > 12 {
                continue;
            }
            for k in sys.all_keys() {
                for m in sys.all_messages() {
                    let c = sys.encrypt(&k, &m).unwrap();
                    assert_eq!(sys.encrypt(&k, &c).unwrap(), m);
                }
            }
        }
    }

    #[test]
    fn session_spaces() {
        let otp = VernamSystem::one_time_pad(1).unwrap();
        let model = vernam_statespace(&otp, &MessageDistribution::Uniform).unwrap();
        assert_eq!(model.space().len(), 4);

        let two = VernamSystem::new(1, 2, false).unwrap();
        let model = vernam_statespace(&two, &MessageDistribution::Uniform).unwrap();
        assert_eq!(model.space().len(), 8);
        let anchor = State::new().with("c", Value::bits("00"));
        let att = model.view(ATT).unwrap();
        assert_eq!(model.space().information_set(att, &anchor).unwrap().len(), 2);

        let gen = model.view(GEN).unwrap();
        let classes = model.space().partition(gen);
        assert_eq!(classes.len(), 2);
        assert!(classes.iter().all(|c| c.mass == ratio(1, 2)));
    }

    #[test]
    fn unnormalized_distribution_is_rejected() {
        let otp = VernamSystem::one_time_pad(1).unwrap();
        let bad = MessageDistribution::Weights(vec![(b("0"), ratio(1, 2)), (b("1"), ratio(1, 4))]);
        assert!(matches!(
            vernam_statespace(&otp, &bad),
            Err(CryptoError::Schema(_))
        ));
    }
}
