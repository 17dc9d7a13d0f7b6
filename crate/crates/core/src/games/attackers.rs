use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::crypto::{Ciphertext, Cryptosystem, ElGamalSystem, VernamSystem};
use crate::group::{CyclicGroup, GroupElement};
use crate::value::BitString;

use super::{CcaAttacker, CpaAttacker, GameError, Guess};

/// Against Vernam with the first key bit appended: the first and last
/// ciphertext bits are both masked by `k_0`, so their XOR is the last
/// message bit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VernamCpaAttacker {
    m0: BitString,
    m1: BitString,
}

impl VernamCpaAttacker {
    /// Messages `0^ell :: 0` and `0^ell :: 1`.
    pub fn new(ell: usize) -> Self {
        Self::with_message_len(ell + 1)
    }

    pub fn for_system(sys: &VernamSystem) -> Result<Self, GameError> {
        if !sys.plus_one_bit() {
            return Err(GameError::Parameter(
                "the first-and-last-bit attack needs the extra key bit".into(),
            ));
        }
        Ok(Self::with_message_len(sys.message_len()))
    }

    fn with_message_len(len: usize) -> Self {
        let mut m1 = BitString::zeros(len - 1);
        m1.push(true);
        VernamCpaAttacker {
            m0: BitString::zeros(len),
            m1,
        }
    }

    pub fn messages(&self) -> (&BitString, &BitString) {
        (&self.m0, &self.m1)
    }
}

impl CpaAttacker<VernamSystem> for VernamCpaAttacker {
    fn choose(&self, _: &()) -> (BitString, BitString) {
        (self.m0.clone(), self.m1.clone())
    }

    fn guess(&self, _: &(), _: &BitString, _: &BitString, c: &BitString) -> Result<Guess, GameError> {
        let bits = c.bits();
        match (bits.first(), bits.last()) {
            (Some(first), Some(last)) if bits.len() >= 2 => Ok(Some(first ^ last)),
            _ => Err(GameError::Parameter(format!("ciphertext {c} is too short"))),
        }
    }
}

/// Deterministic attacker on a Vernam system: a fixed message pair and a
/// guess table indexed by the ciphertext read as a big-endian integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LookupAttacker {
    pub m0: BitString,
    pub m1: BitString,
    pub table: Vec<bool>,
}

fn index_of(bits: &BitString) -> usize {
    bits.bits().iter().fold(0, |acc, &b| (acc << 1) | usize::from(b))
}

impl CpaAttacker<VernamSystem> for LookupAttacker {
    fn choose(&self, _: &()) -> (BitString, BitString) {
        (self.m0.clone(), self.m1.clone())
    }

    fn guess(&self, _: &(), _: &BitString, _: &BitString, c: &BitString) -> Result<Guess, GameError> {
        self.table
            .get(index_of(c))
            .map(|&g| Some(g))
            .ok_or_else(|| GameError::Parameter(format!("no table entry for {c}")))
    }
}

const MAX_TABLE_BITS: usize = 16;

/// Every lookup attacker: all ordered pairs of distinct messages times all
/// guess tables. Fails if there would be more than `limit`.
pub fn lookup_corpus(sys: &VernamSystem, limit: usize) -> Result<Vec<LookupAttacker>, GameError> {
    let len = sys.message_len();
    let too_many = || GameError::Parameter(format!("more than {limit} lookup attackers for {len}-bit messages"));
    if len > 4 {
        return Err(too_many());
    }
    let cells = 1usize << len;
    let messages = BitString::all(len);
    let pairs = messages.len() * (messages.len() - 1);
    if pairs.checked_mul(1 << cells).is_none_or(|n| n > limit) {
        return Err(too_many());
    }
    let mut corpus = Vec::new();
    for m0 in &messages {
        for m1 in messages.iter().filter(|m| *m != m0) {
            for table in 0..1u64 << cells {
                corpus.push(LookupAttacker {
                    m0: m0.clone(),
                    m1: m1.clone(),
                    table: BitString::from_index(table, cells).bits().to_vec(),
                });
            }
        }
    }
    Ok(corpus)
}

/// `count` lookup attackers drawn from a seeded generator.
pub fn sampled_lookup_corpus(sys: &VernamSystem, count: usize, seed: u64) -> Result<Vec<LookupAttacker>, GameError> {
    let len = sys.message_len();
    if len > MAX_TABLE_BITS {
        return Err(GameError::Parameter(format!("{len}-bit ciphertexts are too long for a guess table")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let space = 1u64 << len;
    Ok((0..count)
        .map(|_| {
            let a = rng.gen_range(0..space);
            let b = (a + rng.gen_range(1..space)) % space;
            LookupAttacker {
                m0: BitString::from_index(a, len),
                m1: BitString::from_index(b, len),
                table: (0..space).map(|_| rng.gen()).collect(),
            }
        })
        .collect())
}

/// Fixed messages, fixed answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantAttacker<M> {
    pub m0: M,
    pub m1: M,
    pub answer: Guess,
}

impl<S: Cryptosystem> CpaAttacker<S> for ConstantAttacker<S::Message> {
    fn choose(&self, _: &S::Public) -> (S::Message, S::Message) {
        (self.m0.clone(), self.m1.clone())
    }

    fn guess(&self, _: &S::Public, _: &S::Message, _: &S::Message, _: &S::Ciphertext) -> Result<Guess, GameError> {
        Ok(self.answer)
    }
}

/// Guesses `b` when `DHd(k, c1, c2 / m_b)` accepts; with no acceptance it
/// answers 0.
pub struct DdhCpaAttacker<F> {
    m0: GroupElement,
    m1: GroupElement,
    oracle: F,
}

impl<F: Fn(u64, u64, u64) -> bool> DdhCpaAttacker<F> {
    /// Uses `g` and `g^2` as the message pair.
    pub fn new(group: CyclicGroup, oracle: F) -> Result<Self, GameError> {
        Self::with_messages(group.pow_generator(1), group.pow_generator(2), oracle)
    }

    pub fn with_messages(m0: GroupElement, m1: GroupElement, oracle: F) -> Result<Self, GameError> {
        if m0 == m1 {
            return Err(GameError::InvalidMessages(format!("both messages are {m0}")));
        }
        if m0.group() != m1.group() {
            return Err(GameError::InvalidMessages("messages from different groups".into()));
        }
        Ok(DdhCpaAttacker { m0, m1, oracle })
    }
}

impl<F: Fn(u64, u64, u64) -> bool> CpaAttacker<ElGamalSystem> for DdhCpaAttacker<F> {
    fn choose(&self, _: &GroupElement) -> (GroupElement, GroupElement) {
        (self.m0, self.m1)
    }

    fn guess(&self, k: &GroupElement, m0: &GroupElement, m1: &GroupElement, c: &Ciphertext) -> Result<Guess, GameError> {
        let accepts = |m: &GroupElement| -> Result<bool, GameError> {
            let z = c.c2.div(m)?;
            Ok((self.oracle)(k.value(), c.c1.value(), z.value()))
        };
        match (accepts(m0)?, accepts(m1)?) {
            (true, true) => Err(GameError::FaultyOracle(c.to_string())),
            (false, true) => Ok(Some(true)),
            _ => Ok(Some(false)),
        }
    }
}

/// Queries `(c1, q * c2)`, which decrypts to `q * m_b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ElGamalCcaAttacker {
    q: GroupElement,
    m0: GroupElement,
    m1: GroupElement,
}

impl ElGamalCcaAttacker {
    /// Uses `g` and `g^2` as the message pair.
    pub fn new(q: GroupElement) -> Result<Self, GameError> {
        let g = q.group();
        Self::with_messages(q, g.pow_generator(1), g.pow_generator(2))
    }

    pub fn with_messages(q: GroupElement, m0: GroupElement, m1: GroupElement) -> Result<Self, GameError> {
        if q.is_identity() {
            return Err(GameError::Parameter("the query multiplier must not be 1".into()));
        }
        if m0 == m1 {
            return Err(GameError::InvalidMessages(format!("both messages are {m0}")));
        }
        Ok(ElGamalCcaAttacker { q, m0, m1 })
    }

    pub fn multiplier(&self) -> GroupElement {
        self.q
    }
}

impl CpaAttacker<ElGamalSystem> for ElGamalCcaAttacker {
    fn choose(&self, _: &GroupElement) -> (GroupElement, GroupElement) {
        (self.m0, self.m1)
    }

    /// Without the oracle this attacker has no answer.
    fn guess(&self, _: &GroupElement, _: &GroupElement, _: &GroupElement, _: &Ciphertext) -> Result<Guess, GameError> {
        Ok(None)
    }
}

impl CcaAttacker<ElGamalSystem> for ElGamalCcaAttacker {
    fn craft(&self, _: &GroupElement, _: &GroupElement, _: &GroupElement, c: &Ciphertext) -> Result<Ciphertext, GameError> {
        Ok(Ciphertext::new(c.c1, self.q.mul(&c.c2)?))
    }

    fn decide(
        &self,
        _: &GroupElement,
        m0: &GroupElement,
        m1: &GroupElement,
        _: &Ciphertext,
        _: &Ciphertext,
        d: &GroupElement,
    ) -> Result<Guess, GameError> {
        let m = d.div(&self.q)?;
        Ok(if m == *m0 {
            Some(false)
        } else if m == *m1 {
            Some(true)
        } else {
            None
        })
    }
}

/// A Diffie-Hellman decision procedure built from a chosen-plaintext
/// attacker: announce `x` as the public key, and accept exactly when the
/// attacker answers 0 on `(y, z * m0)` and 1 on `(y, z * m1)`.
pub struct DdhFromAttacker<'a, A: ?Sized> {
    group: CyclicGroup,
    attacker: &'a A,
}

pub fn attacker_to_ddh<A>(attacker: &A, group: CyclicGroup) -> DdhFromAttacker<'_, A>
where
    A: CpaAttacker<ElGamalSystem> + ?Sized,
{
    DdhFromAttacker { group, attacker }
}

impl<A: CpaAttacker<ElGamalSystem> + ?Sized> DdhFromAttacker<'_, A> {
    /// Triples with a component outside the carrier are rejected (0).
    pub fn decide(&self, x: u64, y: u64, z: u64) -> Result<bool, GameError> {
        let (Ok(k), Ok(y), Ok(z)) = (self.group.element(x), self.group.element(y), self.group.element(z)) else {
            return Ok(false);
        };
        let (m0, m1) = self.attacker.choose(&k);
        let on = |m: &GroupElement| -> Result<Guess, GameError> {
            let c = Ciphertext::new(y, z.mul(m)?);
            self.attacker.guess(&k, &m0, &m1, &c)
        };
        Ok(on(&m0)? == Some(false) && on(&m1)? == Some(true))
    }
}
