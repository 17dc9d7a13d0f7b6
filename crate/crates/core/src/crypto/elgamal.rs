//! El-Gamal over a cyclic subgroup of `Z_p^*`:
//! `Gen(a) = (g^a, a)`, `E(k, r, m) = (g^r, k^r * m)`, `D(a, c) = c2 / c1^a`.

use std::fmt;

use crate::expr::{Condition, Expr};
use crate::group::{CyclicGroup, GroupElement};
use crate::logic::Model;
use crate::rational::Rational;
use crate::statespace::{enumerate_with_cap, FieldSpec, Schema, ViewMap};
use crate::value::Value;

use super::{CryptoError, Cryptosystem, ATT, DEC, ENC, GEN};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ElGamalSystem {
    group: CyclicGroup,
}

/// Public key `k = g^a` and secret exponent `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KeyPair {
    pub public: GroupElement,
    pub secret: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ciphertext {
    pub c1: GroupElement,
    pub c2: GroupElement,
}

impl Ciphertext {
    pub fn new(c1: GroupElement, c2: GroupElement) -> Self {
        Ciphertext { c1, c2 }
    }
}

impl fmt::Display for Ciphertext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.c1, self.c2)
    }
}

impl From<Ciphertext> for Value {
    fn from(c: Ciphertext) -> Self {
        Value::Tuple(vec![Value::Group(c.c1), Value::Group(c.c2)])
    }
}

impl ElGamalSystem {
    pub fn new(group: CyclicGroup) -> Self {
        ElGamalSystem { group }
    }

    pub fn group(&self) -> CyclicGroup {
        self.group
    }

    pub fn gen(&self, a: u64) -> Result<KeyPair, CryptoError> {
        self.exponent(a)?;
        Ok(KeyPair {
            public: self.group.pow_generator(a as i64),
            secret: a,
        })
    }

    pub fn encrypt(
        &self,
        public: &GroupElement,
        r: u64,
        m: &GroupElement,
    ) -> Result<Ciphertext, CryptoError> {
        self.exponent(r)?;
        let c1 = self.group.pow_generator(r as i64);
        let c2 = self.group.mul(&self.group.exp(public, r as i64)?, m)?;
        Ok(Ciphertext { c1, c2 })
    }

    pub fn decrypt(&self, secret: u64, c: &Ciphertext) -> Result<GroupElement, CryptoError> {
        let mask = self.group.exp(&c.c1, secret as i64)?;
        Ok(self.group.mul(&c.c2, &self.group.inv(&mask)?)?)
    }

    /// A group element from its residue, rejecting values outside the carrier.
    pub fn element(&self, x: u64) -> Result<GroupElement, CryptoError> {
        Ok(self.group.element(x)?)
    }

    fn exponent(&self, e: u64) -> Result<(), CryptoError> {
        if e >= self.group.order() {
            return Err(CryptoError::ExponentRange {
                value: e,
                order: self.group.order(),
            });
        }
        Ok(())
    }
}

impl Cryptosystem for ElGamalSystem {
    type EncKey = GroupElement;
    type DecKey = u64;
    type Public = GroupElement;
    type Message = GroupElement;
    type Ciphertext = Ciphertext;

    fn keys(&self) -> Vec<(GroupElement, u64)> {
        (0..self.group.order())
            .map(|a| (self.group.pow_generator(a as i64), a))
            .collect()
    }

    fn public(&self, key: &GroupElement) -> GroupElement {
        *key
    }

    fn seed_count(&self) -> u64 {
        self.group.order()
    }

    fn is_message(&self, m: &GroupElement) -> bool {
        m.group() == self.group
    }

    fn encrypt(&self, key: &GroupElement, seed: u64, m: &GroupElement) -> Result<Ciphertext, CryptoError> {
        ElGamalSystem::encrypt(self, key, seed, m)
    }

    fn decrypt(&self, key: &u64, c: &Ciphertext) -> Result<GroupElement, CryptoError> {
        ElGamalSystem::decrypt(self, *key, c)
    }
}

/// Exhaustive Diffie-Hellman decision: whether `x = g^a`, `y = g^b`,
/// `z = g^(ab)` for some exponents.
pub fn ddh_decide(group: &CyclicGroup, x: u64, y: u64, z: u64) -> bool {
    let (Some(a), Some(b)) = (group.discrete_log(x), group.discrete_log(y)) else {
        return false;
    };
    let ab = (a as u128 * b as u128 % group.order() as u128) as i64;
    group.contains(z) && group.pow_generator(ab).value() == z
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GameMode {
    Cpa,
    /// Adds the decryption query `c' = (c1, q * c2)`; `q` is fixed, or
    /// uniform over the non-identity elements when `None`.
    Cca { q: Option<GroupElement> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MessagePair {
    Fixed(GroupElement, GroupElement),
    /// `m0` and `m1` independently uniform over the carrier.
    Uniform,
}

/// The testing-session space `<k, kbar, r, m0, m1, b, c>` (plus `q`,
/// `c_prime`, `d` for CCA). `mb` holds the encrypted message so that the
/// views can name it.
pub fn elgamal_statespace(
    sys: &ElGamalSystem,
    mode: GameMode,
    messages: &MessagePair,
    coin_bias: &Rational,
    cap: usize,
) -> Result<Model, CryptoError> {
    let group = sys.group();
    let n = group.order();
    let exponents: Vec<Value> = (0..n).map(|e| Value::Int(e as i64)).collect();
    let carrier: Vec<Value> = group.carrier().into_iter().map(Value::Group).collect();
    let g = Expr::constant(group.generator());

    let (m0, m1) = match messages {
        MessagePair::Fixed(m0, m1) => {
            for m in [m0, m1] {
                if m.group() != group {
                    return Err(CryptoError::BadMessage(m.to_string()));
                }
            }
            (
                FieldSpec::uniform("m0", vec![Value::Group(*m0)]),
                FieldSpec::uniform("m1", vec![Value::Group(*m1)]),
            )
        }
        MessagePair::Uniform => (
            FieldSpec::uniform("m0", carrier.clone()),
            FieldSpec::uniform("m1", carrier.clone()),
        ),
    };
    let one = Rational::from_integer(1.into());
    let mut fields = vec![
        FieldSpec::uniform("kbar", exponents.clone()),
        FieldSpec::derived("k", Expr::pow(g.clone(), Expr::field("kbar"))),
        FieldSpec::uniform("r", exponents),
        m0,
        m1,
        FieldSpec::sampled(
            "b",
            vec![Value::Bit(false), Value::Bit(true)],
            vec![&one - coin_bias, coin_bias.clone()],
        ),
        FieldSpec::derived(
            "mb",
            Expr::select(
                Expr::field("b"),
                Expr::constant(false),
                Expr::field("m0"),
                Expr::field("m1"),
            ),
        ),
        FieldSpec::derived(
            "c",
            Expr::Tuple(vec![
                Expr::pow(g, Expr::field("r")),
                Expr::mul(
                    Expr::pow(Expr::field("k"), Expr::field("r")),
                    Expr::field("mb"),
                ),
            ]),
        ),
    ];
    let mut constraint = None;
    let views = match mode {
        GameMode::Cpa => vec![
            ViewMap::new(GEN, ["k", "kbar"]),
            ViewMap::new(ENC, ["k", "r", "mb", "c"]),
            ViewMap::new(DEC, ["kbar", "mb", "c"]),
            ViewMap::new(ATT, ["k", "m0", "m1", "c"]),
        ],
        GameMode::Cca { q } => {
            let q_domain = match q {
                Some(q) => {
                    if q.is_identity() || q.group() != group {
                        return Err(CryptoError::BadMessage(format!("query multiplier {q}")));
                    }
                    vec![Value::Group(q)]
                }
                None => carrier
                    .iter()
                    .filter(|v| !v.as_group().is_some_and(GroupElement::is_identity))
                    .cloned()
                    .collect(),
            };
            fields.push(FieldSpec::uniform("q", q_domain));
            fields.push(FieldSpec::derived(
                "c_prime",
                Expr::Tuple(vec![
                    Expr::project(Expr::field("c"), 0),
                    Expr::mul(Expr::field("q"), Expr::project(Expr::field("c"), 1)),
                ]),
            ));
            fields.push(FieldSpec::derived(
                "d",
                Expr::div(
                    Expr::project(Expr::field("c_prime"), 1),
                    Expr::pow(Expr::project(Expr::field("c_prime"), 0), Expr::field("kbar")),
                ),
            ));
            constraint = Some(Condition::Neq(Expr::field("c_prime"), Expr::field("c")));
            vec![
                ViewMap::new(GEN, ["k", "kbar"]),
                ViewMap::new(ENC, ["k", "r", "mb", "c"]),
                ViewMap::new(DEC, ["kbar", "c_prime", "d"]),
                ViewMap::new(ATT, ["k", "m0", "m1", "q", "c", "c_prime", "d"]),
            ]
        }
    };
    let schema = Schema {
        fields,
        constraint,
    };
    let space = enumerate_with_cap(&schema, cap)?;
    Ok(Model::new(space, views)?)
}
