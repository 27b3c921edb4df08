use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::SmoothPrimeContext;
use crate::error::{Error, Result};

/// Discrete logarithm to base `omega` in the order-`2^k` subgroup.
///
/// Pohlig-Hellman with base 2: bit `i` of the logarithm is read off by
/// raising `y·omega^(-e_low)` to the `2^(k-1-i)`, for `O(k^2)`
/// multiplications in total.
pub fn discrete_log_pow2(ctx: &SmoothPrimeContext, y: &BigInt) -> Result<BigUint> {
    let p = ctx.p();
    let k = ctx.k();
    let y = y.mod_floor(p);
    let one = BigInt::one();
    let mut check = y.clone();
    for _ in 0..k {
        check = (&check * &check) % p;
    }
    if y.is_zero() || check != one {
        return Err(Error::NotInSubgroup { k });
    }
    let mut e = BigUint::zero();
    let mut cur = y;
    for i in 0..k {
        let mut h = cur.clone();
        for _ in 0..(k - 1 - i) {
            h = (&h * &h) % p;
        }
        if h != one {
            e.set_bit(u64::from(i), true);
            cur = (&cur * &ctx.omega_inv_pow2()[i as usize]) % p;
        }
    }
    debug_assert!(cur.is_one());
    Ok(e)
}

/// Whether `a` is a `d`-th power in `Z_p^*`, for `d | p - 1`.
pub fn power_residue(p: &BigInt, a: &BigInt, d: &BigUint) -> Result<bool> {
    let pm1 = p.magnitude() - 1u32;
    if d.is_zero() || !(&pm1 % d).is_zero() {
        return Err(Error::Precondition(format!("{d} does not divide {p} - 1")));
    }
    let a = a.mod_floor(p);
    if a.is_zero() {
        return Err(Error::Precondition("residue test needs a nonzero element".into()));
    }
    Ok(a.magnitude().modpow(&(pm1 / d), p.magnitude()).is_one())
}

/// Whether `a` is a `q`-th power residue modulo the prime `p`, `q | p - 1`.
pub fn qth_power_residue(p: &BigInt, a: &BigInt, q: &BigUint) -> Result<bool> {
    power_residue(p, a, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::Exponent;
    use crate::ring::{find_smooth_prime, pow_mod};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_and_generator() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let ctx = find_smooth_prime(&BigUint::from(1u64 << 20), &BigUint::from(2u32), &mut rng).unwrap();
        assert_eq!(discrete_log_pow2(&ctx, &BigInt::one()).unwrap(), BigUint::zero());
        assert_eq!(discrete_log_pow2(&ctx, ctx.omega()).unwrap(), BigUint::one());
    }

    #[test]
    fn rejects_elements_outside_the_subgroup() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        // 97 = 3·2^5 + 1; an element of order 3 is not in the 2-power subgroup.
        let ctx = find_smooth_prime(&BigUint::from(32u32), &BigUint::from(2u32), &mut rng).unwrap();
        let p = ctx.p();
        let order3 = pow_mod(&BigInt::from(5), &Exponent::from(32u64), p);
        assert!(!order3.is_one());
        assert_eq!(discrete_log_pow2(&ctx, &order3), Err(Error::NotInSubgroup { k: 5 }));
        assert!(discrete_log_pow2(&ctx, &BigInt::zero()).is_err());
    }

    #[test]
    fn quadratic_residues_mod_97_match_enumeration() {
        let p = BigInt::from(97);
        let squares: std::collections::BTreeSet<i64> = (1..97i64).map(|b| b * b % 97).collect();
        for a in 1..97i64 {
            let r = qth_power_residue(&p, &BigInt::from(a), &BigUint::from(2u32)).unwrap();
            assert_eq!(r, squares.contains(&a), "a = {a}");
        }
    }

    #[test]
    fn cubes_are_cubic_residues() {
        let p = BigInt::from(97);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let b = BigInt::from(rng.gen_range(1..97));
            let a = b.modpow(&BigInt::from(3), &p);
            assert!(qth_power_residue(&p, &a, &BigUint::from(3u32)).unwrap());
        }
        assert!(qth_power_residue(&p, &BigInt::one(), &BigUint::from(3u32)).unwrap());
        assert!(qth_power_residue(&p, &BigInt::from(2), &BigUint::from(5u32)).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn dlog_round_trip(seed in any::<u64>(), e in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed % 8);
            let ctx = find_smooth_prime(&BigUint::from(1u64 << 40), &BigUint::from(2u32), &mut rng).unwrap();
            let y = pow_mod(ctx.omega(), &Exponent::from(e), ctx.p());
            let expected = BigUint::from(e) % ctx.subgroup_order();
            prop_assert_eq!(discrete_log_pow2(&ctx, &y).unwrap(), expected);
        }
    }
}
