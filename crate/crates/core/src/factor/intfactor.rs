use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ring::is_prime;

const TRIAL_LIMIT: u32 = 10_000;
const RHO_ITERATIONS: u64 = 1 << 22;

/// Prime factorization by trial division, then Pollard's rho (Brent's
/// variant) on what remains. Fails with [`Error::Budget`] if a cofactor
/// resists the iteration budget.
pub fn factor_integer(n: &BigUint) -> Result<Vec<(BigUint, u32)>> {
    if n.is_zero() {
        return Err(Error::Precondition("zero has no factorization".into()));
    }
    let mut n = n.clone();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    let mut d = 2u32;
    while d < TRIAL_LIMIT && BigUint::from(d) * d <= n {
        let mut e = 0;
        while (&n % d).is_zero() {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((BigUint::from(d), e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let mut stack = vec![n];
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e37);
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m) {
            match out.iter_mut().find(|(p, _)| *p == m) {
                Some((_, e)) => *e += 1,
                None => out.push((m, 1)),
            }
            continue;
        }
        let f = rho(&m, &mut rng).ok_or_else(|| Error::Budget(format!("could not factor {m}")))?;
        stack.push(&m / &f);
        stack.push(f);
    }
    out.sort();
    Ok(out)
}

fn rho(n: &BigUint, rng: &mut ChaCha8Rng) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    let mut budget = RHO_ITERATIONS;
    while budget > 0 {
        let c = rng.gen_biguint_range(&BigUint::one(), n);
        let mut y = rng.gen_biguint_below(n);
        let (mut r, m) = (1u64, 128u64);
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        let step = |v: &BigUint| (v * v + &c) % n;
        while g.is_one() && budget > 0 {
            x = y.clone();
            for _ in 0..r {
                y = step(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = step(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += m;
                budget = budget.saturating_sub(m);
            }
            r *= 2;
        }
        if g == *n {
            loop {
                ys = step(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if !g.is_one() && g != *n {
            return Some(g);
        }
    }
    None
}

/// All positive divisors, failing once there would be more than `limit`.
pub fn divisors(n: &BigUint, limit: usize) -> Result<Vec<BigUint>> {
    let fac = factor_integer(n)?;
    let count = fac.iter().try_fold(1usize, |acc, (_, e)| acc.checked_mul(*e as usize + 1));
    if count.is_none_or(|c| c > limit) {
        return Err(Error::Budget(format!("{n} has more than {limit} divisors")));
    }
    let mut out = vec![BigUint::one()];
    for (p, e) in fac {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for d in &out {
            let mut cur = d.clone();
            for _ in 0..=e {
                next.push(cur.clone());
                cur *= &p;
            }
        }
        out = next;
    }
    out.sort();
    Ok(out)
}

/// Exact integer `k`-th root when `n` is a perfect `k`-th power.
pub fn exact_root(n: &BigUint, k: u32) -> Option<BigUint> {
    let r = n.nth_root(k);
    (num_traits::pow(r.clone(), k.to_usize()?) == *n).then_some(r)
}
