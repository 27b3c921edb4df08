use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{DensePoly, SparsePoly};
use crate::error::{Error, Result};
use crate::par;
use crate::ring::{pow_mod, Ring};

/// Default ceiling on the bit size of an exact integer evaluation.
pub const DEFAULT_EVAL_BIT_BUDGET: u64 = 1 << 24;

/// `f(point)` in the coefficient ring of `f`.
pub fn eval(f: &SparsePoly, point: &[BigInt]) -> Result<BigInt> {
    eval_with_budget(f, point, DEFAULT_EVAL_BIT_BUDGET)
}

/// Like [`eval`], refusing integer evaluations whose terms would need more
/// than `bit_budget` bits.
pub fn eval_with_budget(f: &SparsePoly, point: &[BigInt], bit_budget: u64) -> Result<BigInt> {
    if point.len() != f.nvars() {
        return Err(Error::Arity { expected: f.nvars(), found: point.len() });
    }
    let ring = f.ring();
    let point: Vec<BigInt> = point.iter().map(|x| ring.reduce(x.clone())).collect();
    if *ring == Ring::Integers {
        let bits: Vec<u64> = point.iter().map(|x| if x.magnitude() <= &One::one() { 0 } else { x.bits() }).collect();
        for t in f.terms() {
            let mut est: u128 = 0;
            for (e, b) in t.exps.exps().iter().zip(&bits) {
                if *b == 0 {
                    continue;
                }
                let e = e.to_u64().map_or(u128::MAX, u128::from);
                est = est.saturating_add(e.saturating_mul(u128::from(*b)));
            }
            if est > u128::from(bit_budget) {
                return Err(Error::Budget(format!(
                    "integer evaluation needs about {est} bits, budget is {bit_budget}"
                )));
            }
        }
    }
    let values = par::map(f.terms(), |t| {
        t.exps.exps().iter().zip(&point).fold(t.coeff.clone(), |acc, (e, x)| ring.mul(&acc, &ring.pow(x, e)))
    });
    Ok(ring.reduce(values.into_iter().sum()))
}

/// `(f(1), f(w), ..., f(w^(m-1)))` over a prime field.
///
/// Each term computes `w^e` once and then walks its own geometric
/// progression, so the cost is `O(t·(m + log p))` field operations.
pub fn eval_geometric(f: &SparsePoly, w: &BigInt, m: usize) -> Result<Vec<BigInt>> {
    f.require_univariate()?;
    let p = f
        .ring()
        .modulus()
        .ok_or_else(|| Error::UnsupportedRing { op: "eval_geometric", ring: f.ring().to_string() })?;
    let chunk = (f.len() / (4 * par::threads())).clamp(1, 256);
    let partials = par::map_chunks(f.terms(), chunk, |terms| {
        let mut acc = vec![BigInt::zero(); m];
        for t in terms {
            let rho = pow_mod(w, &t.exps[0], p);
            let mut cur = t.coeff.clone();
            for slot in acc.iter_mut() {
                *slot += &cur;
                cur = (&cur * &rho) % p;
            }
            for slot in acc.iter_mut() {
                if slot.bits() > 2 * p.bits() {
                    *slot %= p;
                }
            }
        }
        acc
    });
    let mut out = vec![BigInt::zero(); m];
    for part in partials {
        for (o, v) in out.iter_mut().zip(part) {
            *o += v;
        }
    }
    Ok(out.into_iter().map(|v| v % p).collect())
}

/// `f(h) mod g`: the modular black-box evaluation.
///
/// Computed as the sum of `c_i · (h^(e_i) mod g)` with binary powering
/// modulo `g`, so the cost depends on `log D` and never on `D`. Over the
/// integers `g` must have a unit leading coefficient.
pub fn eval_mod(f: &SparsePoly, h: &DensePoly, g: &DensePoly) -> Result<DensePoly> {
    eval_mod_counted(f, h, g, &mut 0)
}

pub(crate) fn eval_mod_counted(f: &SparsePoly, h: &DensePoly, g: &DensePoly, ops: &mut u64) -> Result<DensePoly> {
    f.require_univariate()?;
    f.ring().check_same(h.ring())?;
    f.ring().check_same(g.ring())?;
    let dg = g.deg().ok_or(Error::ZeroDivisor)?;
    if h.deg().is_some_and(|dh| dh >= dg) {
        return Err(Error::Degree(format!("deg h = {} is not below deg g = {dg}", h.deg().unwrap_or(0))));
    }
    let ring = f.ring();
    if *ring == Ring::Integers && !g.lc().is_some_and(|c| c.magnitude().is_one()) {
        return Err(Error::UnsupportedRing { op: "eval_mod with a non-monic modulus", ring: ring.to_string() });
    }
    let images = par::try_map(f.terms(), |t| {
        let mut term_ops = 0u64;
        let img = h.powmod_counted(&t.exps[0], g, &mut term_ops)?.scale(&t.coeff);
        Ok::<_, Error>((img, term_ops + dg as u64))
    })?;
    let mut acc = DensePoly::zero(ring.clone());
    for (img, n) in images {
        acc = acc.add(&img);
        *ops += n + dg as u64;
    }
    Ok(acc)
}
