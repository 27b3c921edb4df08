use super::{SparsePoly, Term};
use crate::error::{Error, Result};
use crate::exponent::{Exponent, Monomial};

/// Kronecker substitution `g(z) = f(z, z^D, ..., z^(D^(n-1)))`.
///
/// Requires every exponent to be below `D`; the term count and the term
/// order are preserved.
pub fn kronecker_pack(f: &SparsePoly, bound: &Exponent) -> Result<SparsePoly> {
    if bound.is_zero() {
        return Err(Error::Precondition("Kronecker bound must be positive".into()));
    }
    let terms = f
        .terms()
        .iter()
        .map(|t| {
            let mut acc = Exponent::ZERO;
            for e in t.exps.exps().iter().rev() {
                if e >= bound {
                    return Err(Error::Bound { exponent: e.to_string(), bound: bound.to_string() });
                }
                acc = &acc.mul(bound) + e;
            }
            Ok(Term { coeff: t.coeff.clone(), exps: Monomial::univariate(acc) })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SparsePoly::from_canonical(f.ring().clone(), 1, terms))
}

/// Inverse of [`kronecker_pack`]: `D`-adic expansion of each exponent into
/// `n` digits. Every exponent must be below `D^n`.
pub fn kronecker_unpack(g: &SparsePoly, bound: &Exponent, nvars: usize) -> Result<SparsePoly> {
    g.require_univariate()?;
    if bound.is_zero() || nvars == 0 {
        return Err(Error::Precondition("Kronecker unpacking needs D >= 1 and n >= 1".into()));
    }
    let terms = g
        .terms()
        .iter()
        .map(|t| {
            let mut rest = t.exps[0].clone();
            let mut digits = Vec::with_capacity(nvars);
            for _ in 0..nvars {
                let (q, r) = rest.div_rem(bound);
                digits.push(r);
                rest = q;
            }
            if !rest.is_zero() {
                return Err(Error::Bound { exponent: t.exps[0].to_string(), bound: format!("{bound}^{nvars}") });
            }
            Ok(Term { coeff: t.coeff.clone(), exps: Monomial::new(digits) })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SparsePoly::from_canonical(g.ring().clone(), nvars, terms))
}
