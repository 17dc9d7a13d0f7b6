//! Cyclic subgroups of the multiplicative group modulo a prime.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("generator {g} is not a unit modulo {p}")]
    BadGenerator { p: u64, g: u64 },
    #[error("generator {g} has order {actual} modulo {p}, not {claimed}")]
    WrongOrder {
        p: u64,
        g: u64,
        claimed: u64,
        actual: u64,
    },
    #[error("{value} is not in the subgroup generated by {g} modulo {p}")]
    NotInCarrier { value: u64, p: u64, g: u64 },
    #[error("elements belong to different groups")]
    GroupMismatch,
}

/// The subgroup `<g>` of `Z_p^*`, of order `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicGroup {
    p: u64,
    g: u64,
    n: u64,
}

/// Largest modulus accepted; keeps every product below `u64::MAX` without widening tricks.
pub const MAX_MODULUS: u64 = 1 << 31;

impl CyclicGroup {
    /// Validates that `p` is prime and that `g` has order exactly `n`.
    pub fn new(p: u64, g: u64, n: u64) -> Result<Self, GroupError> {
        if !is_prime(p) || p > MAX_MODULUS {
            return Err(GroupError::NotPrime(p));
        }
        if g == 0 || g >= p {
            return Err(GroupError::BadGenerator { p, g });
        }
        let actual = multiplicative_order(g, p);
        if actual != n {
            return Err(GroupError::WrongOrder {
                p,
                g,
                claimed: n,
                actual,
            });
        }
        Ok(CyclicGroup { p, g, n })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn generator(&self) -> GroupElement {
        GroupElement {
            value: self.g,
            group: *self,
        }
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            value: 1 % self.p,
            group: *self,
        }
    }

    /// Membership test. `Z_p^*` is cyclic, so `x` lies in the unique subgroup
    /// of order `n` iff `x^n = 1`.
    pub fn contains(&self, x: u64) -> bool {
        x != 0 && x < self.p && pow_mod(x, self.n, self.p) == 1
    }

    pub fn element(&self, x: u64) -> Result<GroupElement, GroupError> {
        if self.contains(x) {
            Ok(GroupElement {
                value: x,
                group: *self,
            })
        } else {
            Err(GroupError::NotInCarrier {
                value: x,
                p: self.p,
                g: self.g,
            })
        }
    }

    /// `g^e`, with `e` reduced modulo the group order.
    pub fn pow_generator(&self, e: i64) -> GroupElement {
        self.generator().pow(e)
    }

    /// Carrier listed as `g, g^2, ..., g^(n-1), 1`.
    pub fn carrier(&self) -> Vec<GroupElement> {
        (1..=self.n).map(|e| self.pow_generator(e as i64)).collect()
    }

    pub fn exp(&self, x: &GroupElement, e: i64) -> Result<GroupElement, GroupError> {
        self.check(x)?;
        Ok(x.pow(e))
    }

    pub fn mul(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(x)?;
        self.check(y)?;
        x.mul(y)
    }

    pub fn inv(&self, x: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(x)?;
        Ok(x.inv())
    }

    fn check(&self, x: &GroupElement) -> Result<(), GroupError> {
        if x.group != *self {
            return Err(GroupError::GroupMismatch);
        }
        Ok(())
    }

    /// Least `e` in `[0, n)` with `g^e = x`, by exhaustive search.
    pub fn discrete_log(&self, x: u64) -> Option<u64> {
        if !self.contains(x) {
            return None;
        }
        let mut acc = 1 % self.p;
        for e in 0..self.n {
            if acc == x {
                return Some(e);
            }
            acc = mul_mod(acc, self.g, self.p);
        }
        None
    }
}

impl fmt::Display for CyclicGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}> mod {} (order {})", self.g, self.p, self.n)
    }
}

/// An element of a [`CyclicGroup`]. Only constructible through the group, so
/// the residue always lies in the carrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    group: CyclicGroup,
    value: u64,
}

impl GroupElement {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn group(&self) -> CyclicGroup {
        self.group
    }

    pub fn is_identity(&self) -> bool {
        self.value == 1
    }

    pub fn pow(&self, e: i64) -> GroupElement {
        let e = e.rem_euclid(self.group.n as i64) as u64;
        GroupElement {
            value: pow_mod(self.value, e, self.group.p),
            group: self.group,
        }
    }

    pub fn mul(&self, other: &GroupElement) -> Result<GroupElement, GroupError> {
        if self.group != other.group {
            return Err(GroupError::GroupMismatch);
        }
        Ok(GroupElement {
            value: mul_mod(self.value, other.value, self.group.p),
            group: self.group,
        })
    }

    pub fn inv(&self) -> GroupElement {
        self.pow(self.group.n as i64 - 1)
    }

    pub fn div(&self, other: &GroupElement) -> Result<GroupElement, GroupError> {
        self.mul(&other.inv())
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (a * b) % p
}

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn multiplicative_order(g: u64, p: u64) -> u64 {
    let mut acc = g % p;
    let mut order = 1;
    while acc != 1 {
        acc = mul_mod(acc, g, p);
        order += 1;
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z11() -> CyclicGroup {
        CyclicGroup::new(11, 2, 10).unwrap()
    }

    #[test]
    fn exp_mul_inv_small_cases() {
        let g = z11();
        let two = g.element(2).unwrap();
        assert_eq!(g.exp(&two, 4).unwrap().value(), 5);
        assert_eq!(g.inv(&g.element(4).unwrap()).unwrap().value(), 3);
        assert_eq!(g.exp(&g.element(7).unwrap(), 0).unwrap(), g.identity());
        assert_eq!(two.pow(-1).value(), 6);
    }

    #[test]
    fn constructor_rejects_wrong_order() {
        assert!(matches!(
            CyclicGroup::new(11, 2, 5),
            Err(GroupError::WrongOrder { actual: 10, .. })
        ));
        assert!(matches!(
            CyclicGroup::new(12, 5, 2),
            Err(GroupError::NotPrime(12))
        ));
        assert!(CyclicGroup::new(23, 4, 11).is_ok());
        assert!(CyclicGroup::new(11, 4, 5).is_ok());
    }

    #[test]
    fn carrier_listing_ends_in_identity() {
        let g = CyclicGroup::new(11, 4, 5).unwrap();
        let values: Vec<u64> = g.carrier().iter().map(|x| x.value()).collect();
        assert_eq!(values, vec![4, 5, 9, 3, 1]);
        assert!(g.element(7).is_err());
    }

    #[test]
    fn discrete_log_examples() {
        let g = z11();
        assert_eq!(g.discrete_log(8), Some(3));
        assert_eq!(g.discrete_log(1), Some(0));
        let sub = CyclicGroup::new(11, 4, 5).unwrap();
        assert_eq!(sub.discrete_log(7), None);
        assert_eq!(sub.discrete_log(0), None);
    }

    #[test]
    fn exponents_reduce_modulo_order() {
        let g = z11();
        for e in -25..25 {
            assert_eq!(g.pow_generator(e), g.pow_generator(e + 10));
        }
    }
}
