use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;

use super::gap::{gap_split, rational_root_gap};
use super::intfactor::divisors;
use crate::arith::divides;
use crate::error::{Error, Result};
use crate::par;
use crate::poly::SparsePoly;
use crate::ring::{biguint_to_bigint, inv_mod, pow_mod, random_prime, Ring};

/// Default cap on candidate roots `a/b`.
pub const DEFAULT_CANDIDATE_BUDGET: usize = 10_000;

/// Random primes a candidate root must vanish at before exact confirmation.
const SCREEN_PRIMES: usize = 4;

/// `(f(1), f(-1))` exactly, in `O(t)` additions.
pub fn eval_at_pm_one(f: &SparsePoly) -> Result<(BigInt, BigInt)> {
    f.require_univariate()?;
    if *f.ring() != Ring::Integers {
        return Err(Error::UnsupportedRing { op: "eval_at_pm_one", ring: f.ring().to_string() });
    }
    let mut plus = BigInt::zero();
    let mut minus = BigInt::zero();
    for t in f.terms() {
        plus += &t.coeff;
        if t.exps[0].is_odd() {
            minus -= &t.coeff;
        } else {
            minus += &t.coeff;
        }
    }
    Ok((plus, minus))
}

/// Every rational root `a/b` (`gcd(a, b) = 1`, `b > 0`) of an integer
/// polynomial, i.e. every linear factor `b·x - a`, each listed once.
///
/// `0` and `±1` are decided exactly from the lowest exponent and
/// [`eval_at_pm_one`]. Other candidates `a | f_low`, `b | lc(f)` are screened
/// modulo random primes and then confirmed exactly: past a gap of
/// `bits(t·H) + 1` any such root is a root of each block on both sides, so
/// `b·x - a` is checked against every block with [`divides`].
pub fn linear_rational_factors<R: Rng + ?Sized>(f: &SparsePoly, rng: &mut R) -> Result<Vec<(BigInt, BigInt)>> {
    linear_rational_factors_with_budget(f, DEFAULT_CANDIDATE_BUDGET, rng)
}

pub fn linear_rational_factors_with_budget<R: Rng + ?Sized>(
    f: &SparsePoly,
    budget: usize,
    rng: &mut R,
) -> Result<Vec<(BigInt, BigInt)>> {
    f.require_univariate()?;
    if f.is_zero() {
        return Err(Error::Precondition("the zero polynomial has every root".into()));
    }
    let f = f.primitive_part()?;
    let mut found = Vec::new();
    let low = f.trailing_term().expect("nonzero").exps.clone();
    if !low.is_one() {
        found.push((BigInt::zero(), BigInt::one()));
    }
    let f = f.div_monomial(&low).expect("lowest monomial divides");
    let (at_one, at_minus_one) = eval_at_pm_one(&f)?;
    if at_minus_one.is_zero() {
        found.push((-BigInt::one(), BigInt::one()));
    }
    if at_one.is_zero() {
        found.push((BigInt::one(), BigInt::one()));
    }
    if f.len() > 1 {
        let candidates = candidates(&f, budget)?;
        let primes = screen_primes(rng)?;
        let survivors: Vec<&(BigInt, BigInt)> = par::map(&candidates, |c| vanishes_mod(&f, c, &primes))
            .into_iter()
            .zip(&candidates)
            .filter_map(|(keep, c)| keep.then_some(c))
            .collect();
        if !survivors.is_empty() {
            let split = gap_split(&f, &rational_root_gap(&f)?)?;
            for (a, b) in survivors {
                let g = SparsePoly::univariate(Ring::Integers, [(b.clone(), 1u64), (-a.clone(), 0u64)]);
                let mut all = true;
                for (block, _) in &split.blocks {
                    if !divides(block, &g)? {
                        all = false;
                        break;
                    }
                }
                if all {
                    found.push((a.clone(), b.clone()));
                }
            }
        }
    }
    found.sort_by(|x, y| (&x.0 * &y.1).cmp(&(&y.0 * &x.1)));
    Ok(found)
}

fn candidates(f: &SparsePoly, budget: usize) -> Result<Vec<(BigInt, BigInt)>> {
    let low = f.trailing_term().expect("nonzero").coeff.magnitude().clone();
    let lead = f.leading_term().expect("nonzero").coeff.magnitude().clone();
    let da = divisors(&low, budget)?;
    let db = divisors(&lead, budget)?;
    if 2 * da.len() * db.len() > budget {
        return Err(Error::Budget(format!(
            "{} candidate roots exceed the budget of {budget}",
            2 * da.len() * db.len()
        )));
    }
    let mut out = Vec::new();
    for a in &da {
        for b in &db {
            if !a.gcd(b).is_one() || (a.is_one() && b.is_one()) {
                continue;
            }
            let (a, b) = (biguint_to_bigint(a), biguint_to_bigint(b));
            out.push((a.clone(), b.clone()));
            out.push((-a, b));
        }
    }
    Ok(out)
}

fn screen_primes<R: Rng + ?Sized>(rng: &mut R) -> Result<Vec<BigInt>> {
    (0..SCREEN_PRIMES).map(|_| random_prime(62, rng).map(|p| biguint_to_bigint(&p))).collect()
}

/// Whether `f(a/b) ≡ 0` modulo every screening prime not dividing `b`.
fn vanishes_mod(f: &SparsePoly, (a, b): &(BigInt, BigInt), primes: &[BigInt]) -> bool {
    primes.iter().all(|p| {
        let Some(binv) = inv_mod(b, p) else {
            return true;
        };
        let r = (a * binv).mod_floor(p);
        let v: BigInt = f.terms().iter().map(|t| &t.coeff * pow_mod(&r, &t.exps[0], p)).sum();
        v.mod_floor(p).is_zero()
    })
}
