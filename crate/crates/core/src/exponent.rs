//! Arbitrary-precision exponents with a machine-word fast path, and exponent
//! tuples (monomials) under the colexicographic order.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Index};
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use smallvec::SmallVec;

/// A natural number used as an exponent.
///
/// Values that fit in a `u64` are always stored inline; the big
/// representation is only used above `u64::MAX`, so derived equality and
/// hashing are consistent.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Exponent(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Word(u64),
    Big(BigUint),
}

impl Exponent {
    pub const ZERO: Exponent = Exponent(Repr::Word(0));

    pub fn zero() -> Self {
        Self::ZERO
    }

    pub fn one() -> Self {
        Exponent(Repr::Word(1))
    }

    pub fn pow2(k: u32) -> Self {
        if k < 64 {
            Exponent(Repr::Word(1u64 << k))
        } else {
            Exponent(Repr::Big(BigUint::one() << k))
        }
    }

    pub fn from_biguint(n: BigUint) -> Self {
        match n.to_u64() {
            Some(w) => Exponent(Repr::Word(w)),
            None => Exponent(Repr::Big(n)),
        }
    }

    pub fn to_biguint(&self) -> BigUint {
        match &self.0 {
            Repr::Word(w) => BigUint::from(*w),
            Repr::Big(b) => b.clone(),
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        match &self.0 {
            Repr::Word(w) => Some(*w),
            Repr::Big(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Word(0))
    }

    pub fn is_odd(&self) -> bool {
        match &self.0 {
            Repr::Word(w) => w & 1 == 1,
            Repr::Big(b) => b.is_odd(),
        }
    }

    /// Number of significant bits (0 for zero).
    pub fn bits(&self) -> u64 {
        match &self.0 {
            Repr::Word(w) => 64 - u64::from(w.leading_zeros()),
            Repr::Big(b) => b.bits(),
        }
    }

    /// Bit `i` of the binary expansion.
    pub fn bit(&self, i: u64) -> bool {
        match &self.0 {
            Repr::Word(w) => i < 64 && (w >> i) & 1 == 1,
            Repr::Big(b) => b.bit(i),
        }
    }

    pub fn checked_sub(&self, rhs: &Exponent) -> Option<Exponent> {
        match (&self.0, &rhs.0) {
            (Repr::Word(a), Repr::Word(b)) => a.checked_sub(*b).map(|d| Exponent(Repr::Word(d))),
            _ => {
                if self < rhs {
                    None
                } else {
                    Some(Self::from_biguint(self.to_biguint() - rhs.to_biguint()))
                }
            }
        }
    }

    pub fn mul(&self, rhs: &Exponent) -> Exponent {
        if let (Repr::Word(a), Repr::Word(b)) = (&self.0, &rhs.0) {
            if let Some(p) = a.checked_mul(*b) {
                return Exponent(Repr::Word(p));
            }
        }
        Self::from_biguint(self.to_biguint() * rhs.to_biguint())
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn div_rem(&self, rhs: &Exponent) -> (Exponent, Exponent) {
        assert!(!rhs.is_zero(), "exponent division by zero");
        if let (Repr::Word(a), Repr::Word(b)) = (&self.0, &rhs.0) {
            return (Exponent(Repr::Word(a / b)), Exponent(Repr::Word(a % b)));
        }
        let (q, r) = self.to_biguint().div_rem(&rhs.to_biguint());
        (Self::from_biguint(q), Self::from_biguint(r))
    }

    pub fn rem_biguint(&self, m: &BigUint) -> BigUint {
        match &self.0 {
            Repr::Word(w) => BigUint::from(*w) % m,
            Repr::Big(b) => b % m,
        }
    }

    pub fn gcd(&self, rhs: &Exponent) -> Exponent {
        if let (Repr::Word(a), Repr::Word(b)) = (&self.0, &rhs.0) {
            return Exponent(Repr::Word(a.gcd(b)));
        }
        Self::from_biguint(self.to_biguint().gcd(&rhs.to_biguint()))
    }
}

impl Default for Exponent {
    fn default() -> Self {
        Self::ZERO
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Word(a), Repr::Word(b)) => a.cmp(b),
            (Repr::Word(_), Repr::Big(_)) => Ordering::Less,
            (Repr::Big(_), Repr::Word(_)) => Ordering::Greater,
            (Repr::Big(a), Repr::Big(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add<&Exponent> for &Exponent {
    type Output = Exponent;

    fn add(self, rhs: &Exponent) -> Exponent {
        if let (Repr::Word(a), Repr::Word(b)) = (&self.0, &rhs.0) {
            if let Some(s) = a.checked_add(*b) {
                return Exponent(Repr::Word(s));
            }
        }
        Exponent::from_biguint(self.to_biguint() + rhs.to_biguint())
    }
}

impl Add for Exponent {
    type Output = Exponent;

    fn add(self, rhs: Exponent) -> Exponent {
        &self + &rhs
    }
}

impl From<u64> for Exponent {
    fn from(w: u64) -> Self {
        Exponent(Repr::Word(w))
    }
}

impl From<u32> for Exponent {
    fn from(w: u32) -> Self {
        Exponent(Repr::Word(u64::from(w)))
    }
}

impl From<usize> for Exponent {
    fn from(w: usize) -> Self {
        Exponent(Repr::Word(w as u64))
    }
}

impl From<BigUint> for Exponent {
    fn from(n: BigUint) -> Self {
        Self::from_biguint(n)
    }
}

impl From<&Exponent> for BigUint {
    fn from(e: &Exponent) -> Self {
        e.to_biguint()
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Word(w) => write!(f, "{w}"),
            Repr::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Exponent {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Ok(w) = s.parse::<u64>() {
            return Ok(Exponent(Repr::Word(w)));
        }
        s.parse::<BigUint>().map(Self::from_biguint)
    }
}

/// An exponent tuple `(e_1, ..., e_n)`.
///
/// Ordered colexicographically: `e_n` is compared first, then `e_{n-1}`,
/// down to `e_1`. This is a monomial order and coincides with the order of
/// Kronecker-packed exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[Exponent; 2]>);

impl Monomial {
    pub fn new(exps: impl IntoIterator<Item = Exponent>) -> Self {
        Monomial(exps.into_iter().collect())
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(std::iter::repeat_n(Exponent::ZERO, nvars).collect())
    }

    pub fn univariate(e: impl Into<Exponent>) -> Self {
        let mut v = SmallVec::new();
        v.push(e.into());
        Monomial(v)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exps(&self) -> &[Exponent] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(Exponent::is_zero)
    }

    /// Product of monomials (componentwise exponent sum).
    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), rhs.nvars());
        Monomial(self.0.iter().zip(rhs.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `self / rhs` when `rhs` divides `self`.
    pub fn checked_div(&self, rhs: &Monomial) -> Option<Monomial> {
        self.0.iter().zip(rhs.0.iter()).map(|(a, b)| a.checked_sub(b)).collect::<Option<SmallVec<_>>>().map(Monomial)
    }

    /// Largest single-variable exponent.
    pub fn max_exponent(&self) -> Exponent {
        self.0.iter().max().cloned().unwrap_or_default()
    }
}

impl Index<usize> for Monomial {
    type Output = Exponent;

    fn index(&self, i: usize) -> &Exponent {
        &self.0[i]
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.nvars(), other.nvars());
        for (a, b) in self.0.iter().rev().zip(other.0.iter().rev()) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_and_big_compare_consistently() {
        let big = Exponent::pow2(70);
        let word = Exponent::from(u64::MAX);
        assert!(word < big);
        assert_eq!(&word + &Exponent::one(), Exponent::pow2(64));
        assert_eq!(Exponent::from_biguint(BigUint::from(5u8)), Exponent::from(5u64));
        assert_eq!(big.checked_sub(&big), Some(Exponent::ZERO));
        assert_eq!(word.checked_sub(&big), None);
    }

    #[test]
    fn colex_compares_last_variable_first() {
        let a = Monomial::new([Exponent::from(5u64), Exponent::from(1u64)]);
        let b = Monomial::new([Exponent::from(0u64), Exponent::from(2u64)]);
        assert!(a < b);
        let c = Monomial::new([Exponent::from(6u64), Exponent::from(1u64)]);
        assert!(a < c);
    }

    #[test]
    fn parse_and_display_round_trip() {
        let s = "1267650600228229401496703205376";
        let e: Exponent = s.parse().unwrap();
        assert_eq!(e, Exponent::pow2(100));
        assert_eq!(e.to_string(), s);
        assert_eq!(e.bits(), 101);
        assert!(e.bit(100) && !e.bit(99));
    }
}
