use num_bigint::{BigInt, BigUint, RandBigInt, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

const SMALL_PRIMES: [u64; 25] =
    [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];

/// Witnesses that make Miller-Rabin deterministic below 2^64.
const WORD_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

const BIG_ROUNDS: usize = 40;

const DEFAULT_SEARCH_BUDGET: usize = 100_000;

/// Primality test: deterministic below 2^64, 40 Miller-Rabin rounds above.
///
/// The witnesses for large inputs are drawn from a generator seeded by the
/// candidate itself, so the answer is reproducible.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(w) = n.to_u64() {
        return is_prime_u64(w);
    }
    for &sp in &SMALL_PRIMES {
        if (n % sp).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let seed = n.iter_u64_digits().fold(0x9e37_79b9_7f4a_7c15u64, |h, x| h.rotate_left(17) ^ x);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let two = BigUint::from(2u32);
    'witness: for _ in 0..BIG_ROUNDS {
        let a = rng.gen_biguint_range(&two, &n_minus_1);
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(m)) as u64
}

fn pow_mod_u64(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u64(acc, a, m);
        }
        a = mul_mod_u64(a, a, m);
        e >>= 1;
    }
    acc
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WORD_WITNESSES {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A random prime with exactly `bits` bits (`bits >= 2`).
pub fn random_prime<R: Rng + ?Sized>(bits: u64, rng: &mut R) -> Result<BigUint> {
    if bits < 2 {
        return Err(Error::Precondition("a prime needs at least 2 bits".into()));
    }
    for _ in 0..DEFAULT_SEARCH_BUDGET {
        let mut n = rng.gen_biguint(bits);
        n.set_bit(bits - 1, true);
        n.set_bit(0, bits > 2 || n.bit(0));
        if is_prime(&n) {
            return Ok(n);
        }
    }
    Err(Error::ResourceLimit(format!("no {bits}-bit prime found")))
}

/// A random prime `p ≡ 1 (mod d)` of roughly `bits` bits.
pub(crate) fn random_prime_one_mod<R: Rng + ?Sized>(d: &BigUint, bits: u64, rng: &mut R) -> Result<BigUint> {
    let mult_bits = bits.saturating_sub(d.bits()).max(2);
    for _ in 0..DEFAULT_SEARCH_BUDGET {
        let mut m = rng.gen_biguint(mult_bits);
        m.set_bit(mult_bits - 1, true);
        let p = d * &m + 1u32;
        if is_prime(&p) {
            return Ok(p);
        }
    }
    Err(Error::ResourceLimit(format!("no prime congruent to 1 mod {d} found")))
}

/// A prime `p = c·2^k + 1` (`c` odd) with a generator of its order-`2^k`
/// subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothPrimeContext {
    p: BigInt,
    k: u32,
    c: BigUint,
    omega: BigInt,
    /// `omega^(-2^i)` for `i < k`.
    omega_inv_pow2: Vec<BigInt>,
}

impl SmoothPrimeContext {
    /// Builds the context for a known prime, picking a random generator of the
    /// full 2-power subgroup of `Z_p^*`.
    pub fn from_prime<R: Rng + ?Sized>(p: &BigUint, rng: &mut R) -> Result<Self> {
        if !is_prime(p) || p < &BigUint::from(3u32) {
            return Err(Error::Precondition(format!("{p} is not an odd prime")));
        }
        let pm1 = p - 1u32;
        let k = pm1.trailing_zeros().unwrap_or(0) as u32;
        let c = &pm1 >> k;
        Self::with_parts(p.clone(), k, c, rng)
    }

    fn with_parts<R: Rng + ?Sized>(p: BigUint, k: u32, c: BigUint, rng: &mut R) -> Result<Self> {
        let one = BigUint::one();
        let half_order = BigUint::one() << (k - 1);
        for _ in 0..256 {
            let a = rng.gen_biguint_range(&one, &p);
            let w = a.modpow(&c, &p);
            if w.modpow(&half_order, &p) != one {
                let p_int = BigInt::from_biguint(Sign::Plus, p);
                let omega = BigInt::from_biguint(Sign::Plus, w);
                let omega_inv = super::inv_mod(&omega, &p_int).expect("omega is a unit");
                let mut omega_inv_pow2 = Vec::with_capacity(k as usize);
                let mut cur = omega_inv;
                for _ in 0..k {
                    omega_inv_pow2.push(cur.clone());
                    cur = (&cur * &cur) % &p_int;
                }
                return Ok(SmoothPrimeContext { p: p_int, k, c, omega, omega_inv_pow2 });
            }
        }
        Err(Error::ResourceLimit("no generator of the 2-power subgroup found".into()))
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    /// Two-adic valuation of `p - 1`.
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn c(&self) -> &BigUint {
        &self.c
    }

    pub fn omega(&self) -> &BigInt {
        &self.omega
    }

    /// The subgroup order `2^k`.
    pub fn subgroup_order(&self) -> BigUint {
        BigUint::one() << self.k
    }

    pub fn field(&self) -> super::Ring {
        super::Ring::PrimeField(self.p.clone())
    }

    pub(crate) fn omega_inv_pow2(&self) -> &[BigInt] {
        &self.omega_inv_pow2
    }
}

fn ceil_log2(n: &BigUint) -> u32 {
    let bits = n.bits() as u32;
    if n.is_zero() {
        0
    } else if (n - 1u32).is_zero() || (n & (n - 1u32)).is_zero() {
        bits - 1
    } else {
        bits
    }
}

/// Finds a prime `p = c·2^k + 1` with `2^k >= min_subgroup` and
/// `p >= min_modulus`.
///
/// `k` is the smallest admissible exponent. Odd multipliers `c` are sampled
/// at random from a window `[lo, 2·lo)` that doubles whenever it is
/// exhausted without success.
pub fn find_smooth_prime<R: Rng + ?Sized>(
    min_subgroup: &BigUint,
    min_modulus: &BigUint,
    rng: &mut R,
) -> Result<SmoothPrimeContext> {
    find_smooth_prime_with_budget(min_subgroup, min_modulus, DEFAULT_SEARCH_BUDGET, rng)
}

pub fn find_smooth_prime_with_budget<R: Rng + ?Sized>(
    min_subgroup: &BigUint,
    min_modulus: &BigUint,
    budget: usize,
    rng: &mut R,
) -> Result<SmoothPrimeContext> {
    if min_subgroup < &BigUint::from(2u32) {
        return Err(Error::Precondition("min_subgroup must be at least 2".into()));
    }
    let k = ceil_log2(min_subgroup).max(1);
    let two_k = BigUint::one() << k;
    let need = if min_modulus > &BigUint::one() { min_modulus - 1u32 } else { BigUint::zero() };
    let mut lo = Integer::div_ceil(&need, &two_k).max(BigUint::one());
    let mut attempts = 0usize;
    while attempts < budget {
        let hi = &lo << 1u32;
        // odd values in [lo, hi)
        let first_odd = if lo.is_odd() { lo.clone() } else { &lo + 1u32 };
        let n_odd = if first_odd >= hi { BigUint::zero() } else { (&hi - &first_odd + 1u32) >> 1u32 };
        let small_window = n_odd.to_u64().filter(|&n| n <= 64);
        let candidates: Vec<BigUint> = match small_window {
            Some(n) => {
                let mut all: Vec<BigUint> = (0..n).map(|i| &first_odd + 2u64 * i).collect();
                all.shuffle(rng);
                all
            }
            None => (0..256)
                .map(|_| {
                    let off = rng.gen_biguint_below(&n_odd);
                    &first_odd + (off << 1u32)
                })
                .collect(),
        };
        for c in candidates {
            attempts += 1;
            let p = (&c << k) + 1u32;
            if &p >= min_modulus && is_prime(&p) {
                return SmoothPrimeContext::with_parts(p, k, c, rng);
            }
            if attempts >= budget {
                break;
            }
        }
        lo = hi;
    }
    Err(Error::ResourceLimit(format!("no prime c*2^{k}+1 >= {min_modulus} within {budget} attempts")))
}
