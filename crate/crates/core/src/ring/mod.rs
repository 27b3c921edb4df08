//! Coefficient rings and the number theory behind interpolation.

mod dlog;
mod prime;

use std::fmt;

use num_bigint::{BigInt, BigUint, RandBigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::exponent::Exponent;

pub use dlog::{discrete_log_pow2, power_residue, qth_power_residue};
pub(crate) use prime::random_prime_one_mod;
pub use prime::{find_smooth_prime, find_smooth_prime_with_budget, is_prime, random_prime, SmoothPrimeContext};

/// Coefficient ring of a polynomial: the integers or a prime field.
///
/// Prime-field elements are kept as canonical representatives in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Ring {
    Integers,
    PrimeField(BigInt),
}

impl Ring {
    /// `Z_p`, checking that `p` is prime.
    pub fn prime_field(p: impl Into<BigInt>) -> Result<Ring> {
        let p = p.into();
        if p.sign() != Sign::Plus || !is_prime(p.magnitude()) {
            return Err(Error::Precondition(format!("{p} is not a prime modulus")));
        }
        Ok(Ring::PrimeField(p))
    }

    pub fn modulus(&self) -> Option<&BigInt> {
        match self {
            Ring::Integers => None,
            Ring::PrimeField(p) => Some(p),
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self, Ring::PrimeField(_))
    }

    pub fn reduce(&self, x: BigInt) -> BigInt {
        match self {
            Ring::Integers => x,
            Ring::PrimeField(p) => x.mod_floor(p),
        }
    }

    pub fn from_i64(&self, x: i64) -> BigInt {
        self.reduce(BigInt::from(x))
    }

    pub fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(a + b)
    }

    pub fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(a - b)
    }

    pub fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(a * b)
    }

    pub fn neg(&self, a: &BigInt) -> BigInt {
        self.reduce(-a)
    }

    pub fn inv(&self, a: &BigInt) -> Result<BigInt> {
        match self {
            Ring::Integers => {
                if a.magnitude().is_one() {
                    Ok(a.clone())
                } else {
                    Err(Error::NotInvertible(a.to_string()))
                }
            }
            Ring::PrimeField(p) => inv_mod(a, p).ok_or_else(|| Error::NotInvertible(a.to_string())),
        }
    }

    /// `a / b` when the quotient exists in the ring.
    pub fn div_exact(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        match self {
            Ring::Integers => {
                if b.is_zero() {
                    return None;
                }
                let (q, r) = a.div_rem(b);
                r.is_zero().then_some(q)
            }
            Ring::PrimeField(p) => inv_mod(b, p).map(|bi| (a * bi).mod_floor(p)),
        }
    }

    /// `a^e`. Over `Z_p` this is [`pow_mod`]; over `Z` the exponent must fit
    /// in memory, so callers guard the size first.
    pub fn pow(&self, a: &BigInt, e: &Exponent) -> BigInt {
        match self {
            Ring::PrimeField(p) => pow_mod(a, e, p),
            Ring::Integers => int_pow(a, e),
        }
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> BigInt {
        match self {
            Ring::PrimeField(p) => rng.gen_bigint_range(&BigInt::zero(), p),
            Ring::Integers => BigInt::from(rng.gen_range(-1_000_000i64..=1_000_000)),
        }
    }

    pub(crate) fn check_same(&self, other: &Ring) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch { left: self.to_string(), right: other.to_string() })
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::PrimeField(p) => write!(f, "Zp {p}"),
        }
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `a^e mod p` for prime `p`.
///
/// For `a` coprime to `p` the exponent is first reduced modulo `p - 1`, so
/// the cost depends on `log p` and never on the size of `e` beyond one
/// reduction.
pub fn pow_mod(a: &BigInt, e: &Exponent, p: &BigInt) -> BigInt {
    let a = a.mod_floor(p);
    if e.is_zero() {
        return BigInt::one() % p;
    }
    if a.is_zero() {
        return BigInt::zero();
    }
    let order = p.magnitude() - 1u32;
    let e = e.rem_biguint(&order);
    BigInt::from_biguint(Sign::Plus, a.magnitude().modpow(&e, p.magnitude()))
}

/// Square-and-multiply on the full exponent, with no Fermat reduction.
pub fn pow_mod_unreduced(a: &BigInt, e: &Exponent, p: &BigInt) -> BigInt {
    let a = a.mod_floor(p);
    let mut acc = BigInt::one() % p;
    for i in (0..e.bits()).rev() {
        acc = (&acc * &acc) % p;
        if e.bit(i) {
            acc = (&acc * &a) % p;
        }
    }
    acc
}

pub fn inv_mod(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(p);
    let g = a.extended_gcd(p);
    g.gcd.is_one().then(|| g.x.mod_floor(p))
}

/// Exact integer power. Panics-free for `|a| <= 1` with any exponent.
pub(crate) fn int_pow(a: &BigInt, e: &Exponent) -> BigInt {
    if e.is_zero() {
        return BigInt::one();
    }
    if a.is_zero() {
        return BigInt::zero();
    }
    if a.magnitude().is_one() {
        return if a.is_negative() && e.is_odd() { -BigInt::one() } else { BigInt::one() };
    }
    let mut acc = BigInt::one();
    for i in (0..e.bits()).rev() {
        acc = &acc * &acc;
        if e.bit(i) {
            acc *= a;
        }
    }
    acc
}

/// Symmetric representative of `x mod m` in `(-m/2, m/2]`.
pub fn symmetric_mod(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    let half: BigInt = m >> 1u32;
    if r > half {
        r - m
    } else {
        r
    }
}

/// Chinese remaindering of `a mod m` with `b mod n`, `gcd(m, n) = 1`.
pub fn crt_pair(a: &BigInt, m: &BigInt, b: &BigInt, n: &BigInt) -> BigInt {
    let mi = inv_mod(m, n).expect("CRT moduli must be coprime");
    let t = ((b - a) * mi).mod_floor(n);
    (a + m * t).mod_floor(&(m * n))
}

pub(crate) fn biguint_to_bigint(n: &BigUint) -> BigInt {
    BigInt::from_biguint(Sign::Plus, n.clone())
}
