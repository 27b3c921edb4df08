use num_bigint::{BigInt, BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use super::intfactor::{exact_root, factor_integer};
use crate::arith::pow_with_budget;
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::par;
use crate::poly::SparsePoly;
use crate::ring::{biguint_to_bigint, pow_mod, power_residue, random_prime_one_mod, Ring};

/// Term budget for the certificate `g^k`.
pub const DEFAULT_CERTIFY_TERM_BUDGET: usize = 1 << 20;

/// Outcome of [`detect_perfect_power`] on the primitive part of `f`.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerReport {
    /// Largest detected `k` with `pp(f) = g^k`; `1` when none was found.
    pub k: u64,
    /// Lower bound on the probability that `k` is not too large.
    pub confidence: f64,
    /// `(p, a)` pairs at which residues were tested.
    pub witnesses: Vec<(BigUint, BigInt)>,
    /// Removed integer content (positive).
    pub content: BigInt,
}

/// Largest prime exponent examined for a polynomial of degree `deg`:
/// `64 · (1 + log2 log2 max(deg, 4))`.
pub fn prime_exponent_bound(deg: &Exponent) -> u64 {
    let bits = deg.bits().max(3) as f64;
    (64.0 * (1.0 + bits.log2())).floor() as u64
}

/// Detects whether the primitive part of `f` is a perfect power.
///
/// `k` must divide both the degree and the lowest exponent, so only primes
/// `q` dividing their gcd are candidates. For each, `f(a)` must be a
/// `q^j`-th power residue modulo random primes `p ≡ 1 (mod q^j)`; a
/// polynomial that is not a `q`-th power passes one such test with
/// probability about `1/q`. The leading coefficient must itself be an exact
/// `q`-th power (positive for even `q`). True powers always pass.
pub fn detect_perfect_power<R: Rng + ?Sized>(f: &SparsePoly, confidence: f64, rng: &mut R) -> Result<PowerReport> {
    f.require_univariate()?;
    if *f.ring() != Ring::Integers {
        return Err(Error::UnsupportedRing { op: "detect_perfect_power", ring: f.ring().to_string() });
    }
    if f.is_constant() {
        return Err(Error::Precondition("power detection needs a nonconstant polynomial".into()));
    }
    if !(0.0..1.0).contains(&confidence) {
        return Err(Error::Precondition(format!("confidence {confidence} is not in [0, 1)")));
    }
    let content = f.content()?;
    let terms = f.terms().iter().map(|t| crate::poly::Term { coeff: &t.coeff / &content, exps: t.exps.clone() });
    let f = SparsePoly::canonicalize(terms.collect(), 1, Ring::Integers)?;
    let deg = f.degree().finite().cloned().expect("nonconstant");
    let low = f.trailing_term().expect("nonzero").exps[0].clone();
    let g = deg.gcd(&low);
    let trials = ((1.0 / (1.0 - confidence)).log2().ceil() as u32).max(1);
    let bound = prime_exponent_bound(&deg);
    let lc = f.leading_term().expect("nonzero").coeff.clone();

    let mut k = 1u64;
    let mut witnesses = Vec::new();
    let mut error_bound = 0.0f64;
    for (q, max_e) in factor_integer(&g.to_biguint())? {
        let Some(q) = q.to_u64().filter(|&q| q <= bound) else {
            continue;
        };
        let mut d = 1u64;
        for _ in 0..max_e {
            let Some(next) = d.checked_mul(q) else { break };
            if !lc_is_power(&lc, next) {
                break;
            }
            let mut plans = Vec::with_capacity(trials as usize);
            for _ in 0..trials {
                let bits = 61 + u64::from(64 - next.leading_zeros());
                let p = random_prime_one_mod(&BigUint::from(next), bits, rng)?;
                let a = rng.gen_biguint_below(&p);
                plans.push((p, biguint_to_bigint(&a)));
            }
            let passed = par::try_map(&plans, |(p, a)| residue_test(&f, p, a, next))?;
            witnesses.extend(plans);
            error_bound += (1.0 / q as f64).powi(trials as i32);
            if passed.into_iter().all(|b| b) {
                d = next;
            } else {
                break;
            }
        }
        k *= d;
    }
    Ok(PowerReport { k, confidence: (1.0 - error_bound).max(0.0), witnesses, content })
}

fn lc_is_power(lc: &BigInt, d: u64) -> bool {
    if d.is_multiple_of(2) && lc.sign() == num_bigint::Sign::Minus {
        return false;
    }
    d.to_u32().is_some_and(|d| exact_root(lc.magnitude(), d).is_some())
}

/// Residue test at one `(p, a)`; a zero value is moved to the next point
/// `a + 1, a + 2, ...` so that every trial is informative.
fn residue_test(f: &SparsePoly, p: &BigUint, a: &BigInt, d: u64) -> Result<bool> {
    let pi = biguint_to_bigint(p);
    let mut a = a.clone();
    for _ in 0..64 {
        let v: BigInt = f.terms().iter().map(|t| &t.coeff * pow_mod(&a, &t.exps[0], &pi)).sum();
        let v = v.mod_floor(&pi);
        if !v.is_zero() {
            return power_residue(&pi, &v, &BigUint::from(d));
        }
        a += 1;
    }
    Ok(true)
}

/// Deterministic certificate: `g^k = f` exactly.
pub fn certify_power(f: &SparsePoly, g: &SparsePoly, k: u64) -> Result<bool> {
    certify_power_with_budget(f, g, k, DEFAULT_CERTIFY_TERM_BUDGET)
}

pub fn certify_power_with_budget(f: &SparsePoly, g: &SparsePoly, k: u64, max_terms: usize) -> Result<bool> {
    f.check_compatible(g)?;
    if k == 0 {
        return Err(Error::Precondition("the power must be at least 1".into()));
    }
    let expected = match g.degree().finite() {
        Some(d) => d.mul(&Exponent::from(k)),
        None => return Ok(f.is_zero()),
    };
    if f.degree().finite() != Some(&expected) {
        return Ok(false);
    }
    Ok(pow_with_budget(g, k, max_terms)? == *f)
}
