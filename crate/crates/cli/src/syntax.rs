//! Surface syntax for predicates and field expressions.
//!
//! ```text
//! pred  := or
//! or    := and ('|' and)*
//! and   := unary ('&' unary)*
//! unary := '!' unary | 'T' | 'F' | 'W' '[' rat ',' rat ']' '(' pred ')'
//!        | 'K' '(' pred ')' | '(' pred ')' | expr ('=' | '!=') expr
//! expr  := cat ('^' cat)*
//! cat   := mul ('::' mul)*
//! mul   := post (('*' | '/') post)*
//! post  := prim ('[' n ']' | '.' n)*
//! prim  := ident | digits | '(' expr (',' expr)* ')'
//!        | 'repeat' '(' expr ',' n ')' | 'inv' '(' expr ')'
//!        | 'if' '(' expr '=' expr ',' expr ',' expr ')'
//! ```
//!
//! `^` is XOR on bits and exponentiation on group elements; it binds
//! loosest, so group expressions such as `(k ^ r) * m` need parentheses.
//! Digit strings are literals typed by the operand they meet.

use std::fmt;

use cryptologic::logic::Predicate;
use cryptologic::rational::{self, Rational};
use cryptologic::{Condition, Expr, SubjectiveInterval};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

impl std::error::Error for SyntaxError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Digits(String),
    Sym(&'static str),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) | Tok::Digits(s) => write!(f, "`{s}`"),
            Tok::Sym(s) => write!(f, "`{s}`"),
        }
    }
}

const SYMBOLS: [&str; 15] = ["::", "!=", "(", ")", "[", "]", ",", ".", "^", "*", "/", "=", "!", "&", "|"];

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), column));
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Digits(chars[start..i].iter().collect()), column));
        } else {
            let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
            let Some(sym) = SYMBOLS.iter().find(|s| rest.starts_with(**s)) else {
                return Err(SyntaxError {
                    column,
                    message: format!("unexpected character `{c}`"),
                });
            };
            out.push((Tok::Sym(sym), column));
            i += sym.len();
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

type PResult<T> = Result<T, SyntaxError>;

impl Parser {
    fn new(text: &str) -> PResult<Self> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
            end: text.chars().count() + 1,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn peek_at(&self, offset: usize) -> Option<&Tok> {
        self.toks.get(self.pos + offset).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, c)| *c)
    }

    fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(SyntaxError {
            column: self.column(),
            message: message.into(),
        })
    }

    fn unexpected<T>(&self, wanted: &str) -> PResult<T> {
        match self.peek() {
            Some(t) => self.error(format!("expected {wanted}, found {t}")),
            None => self.error(format!("expected {wanted}, found end of input")),
        }
    }

    fn eat(&mut self, sym: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Sym(s)) if *s == sym) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, sym: &str) -> PResult<()> {
        if self.eat(sym) {
            Ok(())
        } else {
            self.unexpected(&format!("`{sym}`"))
        }
    }

    fn is_ident(&self, offset: usize, name: &str) -> bool {
        matches!(self.peek_at(offset), Some(Tok::Ident(s)) if s == name)
    }

    fn is_sym(&self, offset: usize, sym: &str) -> bool {
        matches!(self.peek_at(offset), Some(Tok::Sym(s)) if *s == sym)
    }

    fn finish(&self) -> PResult<()> {
        match self.peek() {
            None => Ok(()),
            Some(t) => self.error(format!("unexpected {t}")),
        }
    }

    fn number(&mut self) -> PResult<usize> {
        match self.peek().cloned() {
            Some(Tok::Digits(d)) => {
                self.pos += 1;
                d.parse().or_else(|_| self.error(format!("number {d} is too large")))
            }
            _ => self.unexpected("a number"),
        }
    }

    fn rational(&mut self) -> PResult<Rational> {
        let start = self.column();
        let numer = self.number()?;
        let denom = if self.eat("/") { self.number()? } else { 1 };
        rational::parse(&format!("{numer}/{denom}")).ok_or(SyntaxError {
            column: start,
            message: format!("{numer}/{denom} is not a probability"),
        })
    }

    fn predicate(&mut self) -> PResult<Predicate> {
        let mut p = self.conjunction()?;
        while self.eat("|") {
            p = p.or(self.conjunction()?);
        }
        Ok(p)
    }

    fn conjunction(&mut self) -> PResult<Predicate> {
        let mut p = self.unary()?;
        while self.eat("&") {
            p = p.and(self.unary()?);
        }
        Ok(p)
    }

    fn unary(&mut self) -> PResult<Predicate> {
        if self.eat("!") {
            return Ok(self.unary()?.not());
        }
        let keyword_alone = |p: &Parser| !p.is_sym(1, "=") && !p.is_sym(1, "!=");
        if self.is_ident(0, "T") && keyword_alone(self) {
            self.pos += 1;
            return Ok(Predicate::Top);
        }
        if self.is_ident(0, "F") && keyword_alone(self) {
            self.pos += 1;
            return Ok(Predicate::Bottom);
        }
        if self.is_ident(0, "W") && self.is_sym(1, "[") {
            self.pos += 2;
            let column = self.column();
            let lo = self.rational()?;
            self.expect(",")?;
            let hi = self.rational()?;
            self.expect("]")?;
            let iota = SubjectiveInterval::new(lo, hi).map_err(|e| SyntaxError {
                column,
                message: e.to_string(),
            })?;
            self.expect("(")?;
            let body = self.predicate()?;
            self.expect(")")?;
            return Ok(Predicate::w(iota, body));
        }
        if self.is_ident(0, "K") && self.is_sym(1, "(") {
            self.pos += 2;
            let body = self.predicate()?;
            self.expect(")")?;
            return Ok(Predicate::k(body));
        }
        if self.is_sym(0, "(") {
            let saved = self.pos;
            self.pos += 1;
            if let Ok(p) = self.predicate() {
                if self.eat(")") {
                    return Ok(p);
                }
            }
            self.pos = saved;
        }
        self.atom()
    }

    fn atom(&mut self) -> PResult<Predicate> {
        let lhs = self.expr()?;
        if self.eat("=") {
            Ok(Predicate::eq(lhs, self.expr()?))
        } else if self.eat("!=") {
            Ok(Predicate::neq(lhs, self.expr()?))
        } else {
            self.unexpected("`=` or `!=`")
        }
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut e = self.concat()?;
        while self.eat("^") {
            e = Expr::xor(e, self.concat()?);
        }
        Ok(e)
    }

    fn concat(&mut self) -> PResult<Expr> {
        let mut e = self.product()?;
        while self.eat("::") {
            e = Expr::concat(e, self.product()?);
        }
        Ok(e)
    }

    fn product(&mut self) -> PResult<Expr> {
        let mut e = self.postfix()?;
        loop {
            if self.eat("*") {
                e = Expr::mul(e, self.postfix()?);
            } else if self.eat("/") {
                e = Expr::div(e, self.postfix()?);
            } else {
                return Ok(e);
            }
        }
    }

    fn postfix(&mut self) -> PResult<Expr> {
        let mut e = self.primary()?;
        loop {
            if self.eat("[") {
                let i = self.number()?;
                self.expect("]")?;
                e = Expr::bit_at(e, i);
            } else if self.eat(".") {
                e = Expr::project(e, self.number()?);
            } else {
                return Ok(e);
            }
        }
    }

    fn primary(&mut self) -> PResult<Expr> {
        match self.peek().cloned() {
            Some(Tok::Digits(d)) => {
                self.pos += 1;
                Ok(Expr::Literal(d))
            }
            Some(Tok::Ident(name)) if name == "repeat" && self.is_sym(1, "(") => {
                self.pos += 2;
                let e = self.expr()?;
                self.expect(",")?;
                let n = self.number()?;
                self.expect(")")?;
                Ok(Expr::repeat(e, n))
            }
            Some(Tok::Ident(name)) if name == "inv" && self.is_sym(1, "(") => {
                self.pos += 2;
                let e = self.expr()?;
                self.expect(")")?;
                Ok(Expr::Inv(Box::new(e)))
            }
            Some(Tok::Ident(name)) if name == "if" && self.is_sym(1, "(") => {
                self.pos += 2;
                let lhs = self.expr()?;
                self.expect("=")?;
                let rhs = self.expr()?;
                self.expect(",")?;
                let then_branch = self.expr()?;
                self.expect(",")?;
                let else_branch = self.expr()?;
                self.expect(")")?;
                Ok(Expr::select(lhs, rhs, then_branch, else_branch))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Expr::field(name))
            }
            Some(Tok::Sym("(")) => {
                self.pos += 1;
                let mut items = vec![self.expr()?];
                while self.eat(",") {
                    items.push(self.expr()?);
                }
                self.expect(")")?;
                Ok(if items.len() == 1 {
                    items.pop().expect("one item")
                } else {
                    Expr::Tuple(items)
                })
            }
            _ => self.unexpected("an expression"),
        }
    }
}

pub fn parse_predicate(text: &str) -> Result<Predicate, SyntaxError> {
    let mut p = Parser::new(text)?;
    let pred = p.predicate()?;
    p.finish()?;
    Ok(pred)
}

pub fn parse_expr(text: &str) -> Result<Expr, SyntaxError> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// A modality-free predicate as a schema constraint.
pub fn parse_condition(text: &str) -> Result<Condition, SyntaxError> {
    let pred = parse_predicate(text)?;
    to_condition(&pred).ok_or(SyntaxError {
        column: 1,
        message: "constraints cannot use W or K".into(),
    })
}

fn to_condition(p: &Predicate) -> Option<Condition> {
    use cryptologic::logic::Relation;
    Some(match p {
        Predicate::Top => Condition::True,
        Predicate::Bottom => Condition::Not(Box::new(Condition::True)),
        Predicate::Atom { rel: Relation::Eq, lhs, rhs } => Condition::Eq(lhs.clone(), rhs.clone()),
        Predicate::Atom { rel: Relation::Neq, lhs, rhs } => Condition::Neq(lhs.clone(), rhs.clone()),
        Predicate::And(a, b) => Condition::And(Box::new(to_condition(a)?), Box::new(to_condition(b)?)),
        Predicate::Or(a, b) => Condition::Or(Box::new(to_condition(a)?), Box::new(to_condition(b)?)),
        Predicate::Not(a) => Condition::Not(Box::new(to_condition(a)?)),
        Predicate::W(..) | Predicate::K(_) => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use cryptologic::rational::ratio;

    #[test]
    fn point_interval_modality() {
        let p = parse_predicate("W[1/2,1/2](m = 1)").unwrap();
        let iota = SubjectiveInterval::point(ratio(1, 2)).unwrap();
        let body = Predicate::eq(Expr::field("m"), Expr::Literal("1".into()));
        assert_eq!(p, Predicate::w(iota, body));
    }

    #[test]
    fn precedence() {
        let e = parse_expr("k::k ^ m").unwrap();
        assert_eq!(e, Expr::xor(Expr::concat(Expr::field("k"), Expr::field("k")), Expr::field("m")));
        let e = parse_expr("(k ^ r) * m").unwrap();
        assert_eq!(e, Expr::mul(Expr::xor(Expr::field("k"), Expr::field("r")), Expr::field("m")));
        let p = parse_predicate("a = 1 | b = 0 & !c = 1").unwrap();
        let atom = |f: &str, v: &str| Predicate::eq(Expr::field(f), Expr::Literal(v.into()));
        assert_eq!(p, atom("a", "1").or(atom("b", "0").and(atom("c", "1").not())));
    }

    #[test]
    fn parenthesized_atoms_and_tuples() {
        let p = parse_predicate("(c) = (5, 3)").unwrap();
        assert_eq!(
            p,
            Predicate::eq(
                Expr::field("c"),
                Expr::Tuple(vec![Expr::Literal("5".into()), Expr::Literal("3".into())])
            )
        );
        let p = parse_predicate("((m = 1))").unwrap();
        assert_eq!(p, Predicate::eq(Expr::field("m"), Expr::Literal("1".into())));
        let e = parse_expr("c.1 / c.0").unwrap();
        assert_eq!(e, Expr::div(Expr::project(Expr::field("c"), 1), Expr::project(Expr::field("c"), 0)));
    }

    #[test]
    fn keywords() {
        assert_eq!(parse_predicate("T").unwrap(), Predicate::Top);
        assert_eq!(parse_predicate("!F").unwrap(), Predicate::Bottom.not());
        assert_eq!(
            parse_predicate("K(m = k ^ c)").unwrap(),
            Predicate::k(Predicate::eq(
                Expr::field("m"),
                Expr::xor(Expr::field("k"), Expr::field("c"))
            ))
        );
        assert!(parse_expr("if(b = 0, m0, m1)").is_ok());
        assert!(parse_expr("repeat(k, 2) :: k[0]").is_ok());
    }

    #[test]
    fn errors_carry_columns() {
        let e = parse_predicate("m = 1 &").unwrap_err();
        assert_eq!(e.column, 8);
        let e = parse_predicate("W[3/2,1](m = 1)").unwrap_err();
        assert_eq!(e.column, 3);
        let e = parse_predicate("m # 1").unwrap_err();
        assert_eq!(e.column, 3);
        assert!(parse_condition("W[0,1](m = 1)").is_err());
    }
}
