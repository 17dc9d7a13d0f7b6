//! Field expressions evaluated over (possibly partial) states.
//!
//! Expressions are dynamically typed: `Xor` is bitwise on bit strings and
//! exponentiation when its left operand is a group element, so one surface
//! operator `^` serves both. Untyped literals are read against the kind of
//! the sibling operand.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::group::GroupError;
use crate::statespace::State;
use crate::value::{Value, ValueError, ValueKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("operator {op} cannot combine {lhs} and {rhs}")]
    TypeMismatch {
        op: &'static str,
        lhs: String,
        rhs: String,
    },
    #[error("operator {op} cannot apply to {operand}")]
    BadOperand { op: &'static str, operand: String },
    #[error("literal {0:?} has no typed operand to take its type from")]
    UntypedLiteral(String),
    #[error(transparent)]
    Value(#[from] ValueError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Field(String),
    Const(Value),
    /// Raw literal text, typed by the operand it is compared or combined with.
    Literal(String),
    Xor(Box<Expr>, Box<Expr>),
    Concat(Box<Expr>, Box<Expr>),
    /// `j`-fold concatenation.
    Repeat(Box<Expr>, usize),
    /// Single bit at an index, as a length-1 bit string.
    BitAt(Box<Expr>, usize),
    Tuple(Vec<Expr>),
    /// Tuple component.
    Project(Box<Expr>, usize),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Inv(Box<Expr>),
    /// `if lhs = rhs then then_branch else else_branch`.
    Select {
        lhs: Box<Expr>,
        rhs: Box<Expr>,
        then_branch: Box<Expr>,
        else_branch: Box<Expr>,
    },
}

impl Expr {
    pub fn field(name: impl Into<String>) -> Expr {
        Expr::Field(name.into())
    }

    pub fn constant(v: impl Into<Value>) -> Expr {
        Expr::Const(v.into())
    }

    pub fn xor(a: Expr, b: Expr) -> Expr {
        Expr::Xor(Box::new(a), Box::new(b))
    }

    pub fn concat(a: Expr, b: Expr) -> Expr {
        Expr::Concat(Box::new(a), Box::new(b))
    }

    pub fn repeat(a: Expr, times: usize) -> Expr {
        Expr::Repeat(Box::new(a), times)
    }

    pub fn bit_at(a: Expr, index: usize) -> Expr {
        Expr::BitAt(Box::new(a), index)
    }

    pub fn project(a: Expr, index: usize) -> Expr {
        Expr::Project(Box::new(a), index)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn div(a: Expr, b: Expr) -> Expr {
        Expr::Div(Box::new(a), Box::new(b))
    }

    pub fn pow(a: Expr, b: Expr) -> Expr {
        Expr::Pow(Box::new(a), Box::new(b))
    }

    pub fn select(lhs: Expr, rhs: Expr, then_branch: Expr, else_branch: Expr) -> Expr {
        Expr::Select {
            lhs: Box::new(lhs),
            rhs: Box::new(rhs),
            then_branch: Box::new(then_branch),
            else_branch: Box::new(else_branch),
        }
    }

    /// Names of all fields the expression reads.
    pub fn fields(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_fields(&mut out);
        out
    }

    fn collect_fields<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Expr::Field(name) => {
                out.insert(name);
            }
            Expr::Const(_) | Expr::Literal(_) => {}
            Expr::Repeat(a, _) | Expr::BitAt(a, _) | Expr::Project(a, _) | Expr::Inv(a) => {
                a.collect_fields(out)
            }
            Expr::Xor(a, b)
            | Expr::Concat(a, b)
            | Expr::Mul(a, b)
            | Expr::Div(a, b)
            | Expr::Pow(a, b) => {
                a.collect_fields(out);
                b.collect_fields(out);
            }
            Expr::Tuple(items) => items.iter().for_each(|e| e.collect_fields(out)),
            Expr::Select {
                lhs,
                rhs,
                then_branch,
                else_branch,
            } => {
                lhs.collect_fields(out);
                rhs.collect_fields(out);
                then_branch.collect_fields(out);
                else_branch.collect_fields(out);
            }
        }
    }

    /// Evaluates against `state`. `Ok(None)` means some field the result
    /// depends on is unbound.
    pub fn eval(&self, state: &State) -> Result<Option<Value>, ExprError> {
        match self {
            Expr::Field(name) => Ok(state.get(name).cloned()),
            Expr::Const(v) => Ok(Some(v.clone())),
            Expr::Literal(text) => Err(ExprError::UntypedLiteral(text.clone())),
            Expr::Xor(a, b) => {
                let Some((x, y)) = eval_pair(a, b, state, PairRule::Xor)? else {
                    return Ok(None);
                };
                match (&x, &y) {
                    (Value::Bits(p), Value::Bits(q)) => Ok(Some(Value::Bits(p.xor(q)?))),
                    (Value::Bit(p), Value::Bit(q)) => Ok(Some(Value::Bit(p ^ q))),
                    (Value::Group(_), Value::Int(_)) => group_pow(&x, &y).map(Some),
                    _ => Err(mismatch("^", &x, &y)),
                }
            }
            Expr::Pow(a, b) => {
                let Some((x, y)) = eval_pair(a, b, state, PairRule::Pow)? else {
                    return Ok(None);
                };
                group_pow(&x, &y).map(Some)
            }
            Expr::Concat(a, b) => {
                let Some((x, y)) = eval_pair(a, b, state, PairRule::Concat)? else {
                    return Ok(None);
                };
                match (&x, &y) {
                    (Value::Bits(p), Value::Bits(q)) => Ok(Some(Value::Bits(p.concat(q)))),
                    _ => Err(mismatch("::", &x, &y)),
                }
            }
            Expr::Repeat(a, times) => match a.eval(state)? {
                None => Ok(None),
                Some(Value::Bits(b)) => Ok(Some(Value::Bits(b.repeat(*times)))),
                Some(other) => Err(bad_operand("repeat", &other)),
            },
            Expr::BitAt(a, index) => match a.eval(state)? {
                None => Ok(None),
                Some(Value::Bits(b)) => match b.bit(*index) {
                    Some(bit) => Ok(Some(Value::Bits(crate::BitString::new(vec![bit])))),
                    None => Err(ValueError::IndexOutOfRange {
                        index: *index,
                        len: b.len(),
                    }
                    .into()),
                },
                Some(other) => Err(bad_operand("[]", &other)),
            },
            Expr::Tuple(items) => {
                let mut values = Vec::with_capacity(items.len());
                for item in items {
                    match item.eval(state)? {
                        Some(v) => values.push(v),
                        None => return Ok(None),
                    }
                }
                Ok(Some(Value::Tuple(values)))
            }
            Expr::Project(a, index) => match a.eval(state)? {
                None => Ok(None),
                Some(Value::Tuple(items)) => items
                    .get(*index)
                    .cloned()
                    .map(Some)
                    .ok_or_else(|| ExprError::BadOperand {
                        op: "projection",
                        operand: format!("{}-tuple at index {index}", items.len()),
                    }),
                Some(other) => Err(bad_operand("projection", &other)),
            },
            Expr::Mul(a, b) => {
                let Some((x, y)) = eval_pair(a, b, state, PairRule::Same)? else {
                    return Ok(None);
                };
                match (&x, &y) {
                    (Value::Group(p), Value::Group(q)) => Ok(Some(Value::Group(p.mul(q)?))),
                    (Value::Int(p), Value::Int(q)) => Ok(Some(Value::Int(p * q))),
                    _ => Err(mismatch("*", &x, &y)),
                }
            }
            Expr::Div(a, b) => {
                let Some((x, y)) = eval_pair(a, b, state, PairRule::Same)? else {
                    return Ok(None);
                };
                match (&x, &y) {
                    (Value::Group(p), Value::Group(q)) => Ok(Some(Value::Group(p.div(q)?))),
                    _ => Err(mismatch("/", &x, &y)),
                }
            }
            Expr::Inv(a) => match a.eval(state)? {
                None => Ok(None),
                Some(Value::Group(g)) => Ok(Some(Value::Group(g.inv()))),
                Some(other) => Err(bad_operand("inv", &other)),
            },
            Expr::Select {
                lhs,
                rhs,
                then_branch,
                else_branch,
            } => match values_equal(lhs, rhs, state)? {
                None => Ok(None),
                Some(true) => then_branch.eval(state),
                Some(false) => else_branch.eval(state),
            },
        }
    }
}

/// Equality of two expressions at a state, `None` when either side is unbound.
pub fn values_equal(a: &Expr, b: &Expr, state: &State) -> Result<Option<bool>, ExprError> {
    let Some((x, y)) = eval_pair(a, b, state, PairRule::Same)? else {
        return Ok(None);
    };
    if x.kind() != y.kind() {
        return Err(mismatch("=", &x, &y));
    }
    Ok(Some(x == y))
}

#[derive(Clone, Copy)]
enum PairRule {
    /// Literal takes the other operand's kind.
    Same,
    Xor,
    Pow,
    /// A literal concatenated with bits is read as bits of its own length.
    Concat,
}

fn literal_kind(rule: PairRule, literal_is_rhs: bool, other: &Value, text: &str) -> ValueKind {
    match (rule, other) {
        (PairRule::Pow, _) | (PairRule::Xor, Value::Group(_)) if literal_is_rhs => ValueKind::Int,
        (PairRule::Concat, _) => ValueKind::Bits(text.trim().len()),
        _ => other.kind(),
    }
}

fn eval_pair(
    a: &Expr,
    b: &Expr,
    state: &State,
    rule: PairRule,
) -> Result<Option<(Value, Value)>, ExprError> {
    match (a, b) {
        (Expr::Literal(x), Expr::Literal(_)) => Err(ExprError::UntypedLiteral(x.clone())),
        (Expr::Literal(text), other) => {
            let Some(y) = other.eval(state)? else {
                return Ok(None);
            };
            let x = literal_kind(rule, false, &y, text).parse_value(text)?;
            Ok(Some((x, y)))
        }
        (other, Expr::Literal(text)) => {
            let Some(x) = other.eval(state)? else {
                return Ok(None);
            };
            let y = literal_kind(rule, true, &x, text).parse_value(text)?;
            Ok(Some((x, y)))
        }
        _ => {
            let x = a.eval(state)?;
            let y = b.eval(state)?;
            Ok(x.zip(y))
        }
    }
}

fn group_pow(x: &Value, y: &Value) -> Result<Value, ExprError> {
    match (x, y) {
        (Value::Group(g), Value::Int(e)) => Ok(Value::Group(g.pow(*e))),
        _ => Err(mismatch("^", x, y)),
    }
}

fn mismatch(op: &'static str, x: &Value, y: &Value) -> ExprError {
    ExprError::TypeMismatch {
        op,
        lhs: x.kind().to_string(),
        rhs: y.kind().to_string(),
    }
}

fn bad_operand(op: &'static str, v: &Value) -> ExprError {
    ExprError::BadOperand {
        op,
        operand: v.kind().to_string(),
    }
}

/// Boolean conditions over full states, used for schema constraints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Condition {
    True,
    Eq(Expr, Expr),
    Neq(Expr, Expr),
    And(Box<Condition>, Box<Condition>),
    Or(Box<Condition>, Box<Condition>),
    Not(Box<Condition>),
}

impl Condition {
    /// `None` when a referenced field is unbound.
    pub fn eval(&self, state: &State) -> Result<Option<bool>, ExprError> {
        Ok(match self {
            Condition::True => Some(true),
            Condition::Eq(a, b) => values_equal(a, b, state)?,
            Condition::Neq(a, b) => values_equal(a, b, state)?.map(|eq| !eq),
            Condition::And(a, b) => match (a.eval(state)?, b.eval(state)?) {
                (Some(false), _) | (_, Some(false)) => Some(false),
                (Some(true), Some(true)) => Some(true),
                _ => None,
            },
            Condition::Or(a, b) => match (a.eval(state)?, b.eval(state)?) {
                (Some(true), _) | (_, Some(true)) => Some(true),
                (Some(false), Some(false)) => Some(false),
                _ => None,
            },
            Condition::Not(a) => a.eval(state)?.map(|b| !b),
        })
    }

    pub fn fields(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_fields(&mut out);
        out
    }

    fn collect_fields<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Condition::True => {}
            Condition::Eq(a, b) | Condition::Neq(a, b) => {
                out.extend(a.fields());
                out.extend(b.fields());
            }
            Condition::And(a, b) | Condition::Or(a, b) => {
                a.collect_fields(out);
                b.collect_fields(out);
            }
            Condition::Not(a) => a.collect_fields(out),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Field(name) => f.write_str(name),
            Expr::Const(v) => write!(f, "{v}"),
            Expr::Literal(text) => f.write_str(text),
            Expr::Xor(a, b) => write!(f, "({a} ^ {b})"),
            Expr::Pow(a, b) => write!(f, "({a} ^ {b})"),
            Expr::Concat(a, b) => write!(f, "({a} :: {b})"),
            Expr::Repeat(a, n) => write!(f, "repeat({a}, {n})"),
            Expr::BitAt(a, i) => write!(f, "{a}[{i}]"),
            Expr::Tuple(items) => {
                f.write_str("(")?;
                for (i, e) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{e}")?;
                }
                f.write_str(")")
            }
            Expr::Project(a, i) => write!(f, "{a}.{i}"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Inv(a) => write!(f, "inv({a})"),
            Expr::Select {
                lhs,
                rhs,
                then_branch,
                else_branch,
            } => write!(f, "if({lhs} = {rhs}, {then_branch}, {else_branch})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::CyclicGroup;

    fn otp_state() -> State {
        State::from_pairs([
            ("k", Value::bits("0")),
            ("m", Value::bits("1")),
            ("c", Value::bits("1")),
        ])
    }

    #[test]
    fn xor_with_literal_takes_sibling_kind() {
        let e = Expr::xor(Expr::field("k"), Expr::Literal("1".into()));
        assert_eq!(e.eval(&otp_state()).unwrap(), Some(Value::bits("1")));
    }

    #[test]
    fn unbound_field_propagates_as_none() {
        let e = Expr::xor(Expr::field("k"), Expr::field("zz"));
        assert_eq!(e.eval(&otp_state()).unwrap(), None);
    }

    #[test]
    fn caret_on_group_is_exponentiation() {
        let g = CyclicGroup::new(11, 2, 10).unwrap();
        let s = State::from_pairs([("k", Value::Group(g.element(8).unwrap())), ("r", Value::Int(4))]);
        let e = Expr::xor(Expr::field("k"), Expr::field("r"));
        assert_eq!(e.eval(&s).unwrap(), Some(Value::Group(g.element(4).unwrap())));
        let lit = Expr::xor(Expr::field("k"), Expr::Literal("4".into()));
        assert_eq!(lit.eval(&s).unwrap(), Some(Value::Group(g.element(4).unwrap())));
    }

    #[test]
    fn mismatched_kinds_are_errors() {
        let s = State::from_pairs([("a", Value::bits("01")), ("b", Value::Int(3))]);
        assert!(Expr::xor(Expr::field("a"), Expr::field("b")).eval(&s).is_err());
        assert!(values_equal(&Expr::field("a"), &Expr::field("b"), &s).is_err());
    }

    #[test]
    fn select_picks_branch() {
        let s = State::from_pairs([
            ("b", Value::Bit(true)),
            ("m0", Value::Int(9)),
            ("m1", Value::Int(3)),
        ]);
        let e = Expr::select(
            Expr::field("b"),
            Expr::Literal("0".into()),
            Expr::field("m0"),
            Expr::field("m1"),
        );
        assert_eq!(e.eval(&s).unwrap(), Some(Value::Int(3)));
    }
}
