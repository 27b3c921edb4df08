use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::inv_mod;

/// Solves `Σ_i c_i · r_i^j = v_j` for `j < t` modulo `p`.
///
/// With `M(z) = Π (z - r_i)` and `N(z) = Σ_s z^s Σ_j m_(j+s+1) v_j`, the
/// solution is `c_i = N(r_i) / M'(r_i)`; `O(t^2)` field operations.
pub fn solve_transposed_vandermonde(roots: &[BigInt], values: &[BigInt], p: &BigInt) -> Result<Vec<BigInt>> {
    let t = roots.len();
    if values.len() < t {
        return Err(Error::Precondition(format!("{t} roots need {t} values, got {}", values.len())));
    }
    let roots: Vec<BigInt> = roots.iter().map(|r| r.mod_floor(p)).collect();
    if roots.iter().any(Zero::is_zero) {
        return Err(Error::Precondition("Vandermonde roots must be nonzero".into()));
    }
    if roots.iter().collect::<HashSet<_>>().len() != t {
        return Err(Error::DuplicateRoot);
    }
    // master polynomial, ascending coefficients, monic of degree t
    let mut m = vec![BigInt::one()];
    for r in &roots {
        let mut next = vec![BigInt::zero(); m.len() + 1];
        for (i, c) in m.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * r;
        }
        m = next.into_iter().map(|c| c.mod_floor(p)).collect();
    }
    let n: Vec<BigInt> = (0..t)
        .map(|s| {
            let acc: BigInt = (0..t - s).map(|j| &m[j + s + 1] * &values[j]).sum();
            acc.mod_floor(p)
        })
        .collect();
    let dm: Vec<BigInt> = (1..=t).map(|i| (&m[i] * BigInt::from(i)).mod_floor(p)).collect();
    let horner = |poly: &[BigInt], x: &BigInt| poly.iter().rev().fold(BigInt::zero(), |acc, c| (acc * x + c) % p);
    crate::par::try_map(&roots, |r| {
        let den = horner(&dm, r).mod_floor(p);
        let inv = inv_mod(&den, p).ok_or(Error::DuplicateRoot)?;
        Ok((horner(&n, r) * inv).mod_floor(p))
    })
}
