//! Term values held in state fields.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::group::{CyclicGroup, GroupElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValueError {
    #[error("cannot read {text:?} as {kind}")]
    BadLiteral { text: String, kind: String },
    #[error("bit strings of lengths {0} and {1} cannot be combined")]
    LengthMismatch(usize, usize),
    #[error("bit index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
}

/// An ordered bit sequence. The length is part of its identity, so `01` and
/// `001` are different values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn new(bits: Vec<bool>) -> Self {
        BitString(bits)
    }

    pub fn zeros(len: usize) -> Self {
        BitString(vec![false; len])
    }

    /// The `len`-bit big-endian encoding of `value`: bit 0 is the most significant.
    pub fn from_index(value: u64, len: usize) -> Self {
        BitString(
            (0..len)
                .map(|i| (value >> (len - 1 - i)) & 1 == 1)
                .collect(),
        )
    }

    /// All `2^len` strings in lexicographic order.
    pub fn all(len: usize) -> Vec<BitString> {
        (0..1u64 << len).map(|v| BitString::from_index(v, len)).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bit(&self, index: usize) -> Option<bool> {
        self.0.get(index).copied()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn xor(&self, other: &BitString) -> Result<BitString, ValueError> {
        if self.len() != other.len() {
            return Err(ValueError::LengthMismatch(self.len(), other.len()));
        }
        Ok(BitString(
            self.0.iter().zip(&other.0).map(|(a, b)| a ^ b).collect(),
        ))
    }

    pub fn concat(&self, other: &BitString) -> BitString {
        let mut bits = self.0.clone();
        bits.extend_from_slice(&other.0);
        BitString(bits)
    }

    pub fn repeat(&self, times: usize) -> BitString {
        BitString(self.0.repeat(times))
    }

    pub fn push(&mut self, bit: bool) {
        self.0.push(bit);
    }
}

impl FromStr for BitString {
    type Err = ValueError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(ValueError::BadLiteral {
                    text: s.to_string(),
                    kind: "bit string".into(),
                }),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(BitString)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            f.write_str(if *b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Bit(bool),
    Bits(BitString),
    Group(GroupElement),
    Int(i64),
    Tuple(Vec<Value>),
}

/// The shape of a [`Value`], used to read untyped literals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValueKind {
    Bit,
    Bits(usize),
    Group(CyclicGroup),
    Int,
    Tuple(Vec<ValueKind>),
}

impl Value {
    pub fn kind(&self) -> ValueKind {
        match self {
            Value::Bit(_) => ValueKind::Bit,
            Value::Bits(b) => ValueKind::Bits(b.len()),
            Value::Group(g) => ValueKind::Group(g.group()),
            Value::Int(_) => ValueKind::Int,
            Value::Tuple(items) => ValueKind::Tuple(items.iter().map(Value::kind).collect()),
        }
    }

    pub fn bits(text: &str) -> Value {
        Value::Bits(text.parse().expect("bit string literal"))
    }

    pub fn as_bits(&self) -> Option<&BitString> {
        match self {
            Value::Bits(b) => Some(b),
            _ => None,
        }
    }

    pub fn as_group(&self) -> Option<&GroupElement> {
        match self {
            Value::Group(g) => Some(g),
            _ => None,
        }
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Value::Int(i) => Some(*i),
            _ => None,
        }
    }

    pub fn as_bit(&self) -> Option<bool> {
        match self {
            Value::Bit(b) => Some(*b),
            Value::Bits(b) if b.len() == 1 => b.bit(0),
            _ => None,
        }
    }
}

impl ValueKind {
    /// Reads `text` as a value of this kind. Tuples use `(a,b,...)`.
    pub fn parse_value(&self, text: &str) -> Result<Value, ValueError> {
        let text = text.trim();
        let bad = || ValueError::BadLiteral {
            text: text.to_string(),
            kind: self.to_string(),
        };
        match self {
            ValueKind::Bit => match text {
                "0" => Ok(Value::Bit(false)),
                "1" => Ok(Value::Bit(true)),
                _ => Err(bad()),
            },
            ValueKind::Bits(len) => {
                let b: BitString = text.parse().map_err(|_| bad())?;
                if b.len() != *len {
                    return Err(bad());
                }
                Ok(Value::Bits(b))
            }
            ValueKind::Group(group) => {
                let v: u64 = text.parse().map_err(|_| bad())?;
                group.element(v).map(Value::Group).map_err(|_| bad())
            }
            ValueKind::Int => text.parse().map(Value::Int).map_err(|_| bad()),
            ValueKind::Tuple(kinds) => {
                let inner = text
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or_else(bad)?;
                let parts = split_top_level(inner);
                if parts.len() != kinds.len() {
                    return Err(bad());
                }
                parts
                    .iter()
                    .zip(kinds)
                    .map(|(p, k)| k.parse_value(p))
                    .collect::<Result<Vec<_>, _>>()
                    .map(Value::Tuple)
            }
        }
    }
}

fn split_top_level(text: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    parts
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Bit(b) => write!(f, "{}", u8::from(*b)),
            Value::Bits(b) => write!(f, "{b}"),
            Value::Group(g) => write!(f, "{g}"),
            Value::Int(i) => write!(f, "{i}"),
            Value::Tuple(items) => {
                f.write_str("(")?;
                for (i, v) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for ValueKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueKind::Bit => f.write_str("bit"),
            ValueKind::Bits(n) => write!(f, "bits[{n}]"),
            ValueKind::Group(g) => write!(f, "group {g}"),
            ValueKind::Int => f.write_str("int"),
            ValueKind::Tuple(kinds) => {
                f.write_str("(")?;
                for (i, k) in kinds.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{k}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl From<BitString> for Value {
    fn from(b: BitString) -> Self {
        Value::Bits(b)
    }
}

impl From<GroupElement> for Value {
    fn from(g: GroupElement) -> Self {
        Value::Group(g)
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bit(b)
    }
}

impl From<u64> for Value {
    fn from(i: u64) -> Self {
        Value::Int(i as i64)
    }
}

impl From<()> for Value {
    fn from(_: ()) -> Self {
        Value::Tuple(Vec::new())
    }
}
