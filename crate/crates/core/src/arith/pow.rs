use super::mul::mul_heap;
use crate::error::{Error, Result};
use crate::poly::SparsePoly;

/// Term budget used by [`pow`].
pub const DEFAULT_POW_TERM_BUDGET: usize = 1 << 20;

/// `f^k` by binary powering with heap multiplication.
pub fn pow(f: &SparsePoly, k: u64) -> Result<SparsePoly> {
    pow_with_budget(f, k, DEFAULT_POW_TERM_BUDGET)
}

/// As [`pow`], failing with [`Error::Budget`] as soon as an intermediate
/// result holds more than `max_terms` terms.
pub fn pow_with_budget(f: &SparsePoly, k: u64, max_terms: usize) -> Result<SparsePoly> {
    let check = |p: SparsePoly| {
        if p.len() > max_terms {
            Err(Error::Budget(format!("power has more than {max_terms} terms")))
        } else {
            Ok(p)
        }
    };
    let mut acc = SparsePoly::one(f.ring().clone(), f.nvars());
    for i in (0..u64::BITS - k.leading_zeros()).rev() {
        acc = check(mul_heap(&acc, &acc)?.0)?;
        if (k >> i) & 1 == 1 {
            acc = check(mul_heap(&acc, f)?.0)?;
        }
    }
    Ok(acc)
}
