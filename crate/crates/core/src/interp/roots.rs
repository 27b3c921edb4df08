use num_bigint::{BigInt, RandBigInt};
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::poly::DensePoly;
use crate::ring::{biguint_to_bigint, SmoothPrimeContext};

/// Default number of consecutive failed splitting attempts tolerated per
/// factor.
pub const DEFAULT_ROOT_RETRIES: usize = 64;

/// All roots of `lambda`, which must split into distinct linear factors
/// inside the order-`2^k` subgroup of `Z_p^*`.
///
/// The subgroup condition is checked up front as `z^(2^k) ≡ 1 mod Λ`; the
/// factors are then separated by gcds with `(z + δ)^((p-1)/2) - 1` for
/// random shifts `δ`.
pub fn find_roots_subgroup<R: Rng + ?Sized>(
    lambda: &DensePoly,
    ctx: &SmoothPrimeContext,
    max_retries: usize,
    rng: &mut R,
) -> Result<Vec<BigInt>> {
    let ring = ctx.field();
    ring.check_same(lambda.ring())?;
    let lambda = lambda.monic()?;
    let Some(t) = lambda.deg() else {
        return Err(Error::NonSplit);
    };
    if t == 0 {
        return Ok(Vec::new());
    }
    if lambda.coeff(0).is_zero() {
        return Err(Error::NonSplit);
    }
    let z = DensePoly::x(ring.clone());
    let order = Exponent::from(ctx.subgroup_order());
    if !z.powmod(&order, &lambda)?.sub(&DensePoly::one(ring.clone())).is_zero() {
        return Err(Error::NonSplit);
    }
    let half = Exponent::from((ctx.p().magnitude() - 1u32) >> 1u32);
    let p = ctx.p().magnitude();
    let mut roots = Vec::with_capacity(t);
    let mut stack = vec![lambda];
    while let Some(h) = stack.pop() {
        let d = h.deg().expect("nonzero factor");
        if d == 1 {
            roots.push(ring.neg(&h.coeff(0)));
            continue;
        }
        let mut failures = 0;
        loop {
            let delta = biguint_to_bigint(&rng.gen_biguint_below(p));
            let shifted = DensePoly::new(ring.clone(), vec![delta, BigInt::one()]);
            let a = shifted.powmod(&half, &h)?.sub(&DensePoly::one(ring.clone()));
            let g = h.gcd(&a)?;
            let dg = g.deg().unwrap_or(0);
            if dg > 0 && dg < d {
                let (q, _) = h.divrem(&g)?;
                stack.push(g);
                stack.push(q);
                break;
            }
            failures += 1;
            if failures > max_retries {
                return Err(Error::NonSplit);
            }
        }
    }
    roots.sort();
    Ok(roots)
}
