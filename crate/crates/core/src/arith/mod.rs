//! Sparse arithmetic: merges, heap multiplication and division, the
//! dense-divisor divisibility test, and powering.

mod divides;
mod division;
mod heap;
mod mul;
mod pow;

use std::cmp::Ordering;

use num_traits::Zero;

use crate::error::Result;
use crate::poly::{SparsePoly, Term};
use crate::ring::Ring;

pub use divides::{divides, divides_with, DividesOptions, DEFAULT_DIVIDES_DENSE_BUDGET};
pub use division::{divmod_heap, pseudo_divmod_heap, PseudoDivision};
pub use mul::{mul, mul_dense, mul_heap, mul_kronecker, mul_kronecker_with_bound, mul_naive};
pub use pow::{pow, pow_with_budget, DEFAULT_POW_TERM_BUDGET};

/// Operation counters reported by the arithmetic routines.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ArithStats {
    /// Coefficient additions, subtractions, multiplications and divisions.
    pub ring_ops: u64,
    /// Exponent comparisons (heap sifts and merge steps).
    pub comparisons: u64,
    /// Largest number of pending entries held in the heap.
    pub peak_heap: usize,
    pub out_terms: usize,
    /// Set when `divides` had to fall back to heap division.
    pub quadratic_path: bool,
}

/// `f + g` as a single merge of the two term lists.
pub fn add(f: &SparsePoly, g: &SparsePoly) -> Result<SparsePoly> {
    f.check_compatible(g)?;
    let terms = merge(f.ring(), f.terms(), g.terms(), false, &mut ArithStats::default());
    Ok(SparsePoly::from_canonical(f.ring().clone(), f.nvars(), terms))
}

/// `f - g` as a single merge.
pub fn sub(f: &SparsePoly, g: &SparsePoly) -> Result<SparsePoly> {
    f.check_compatible(g)?;
    let terms = merge(f.ring(), f.terms(), g.terms(), true, &mut ArithStats::default());
    Ok(SparsePoly::from_canonical(f.ring().clone(), f.nvars(), terms))
}

pub fn add_with_stats(f: &SparsePoly, g: &SparsePoly) -> Result<(SparsePoly, ArithStats)> {
    f.check_compatible(g)?;
    let mut stats = ArithStats::default();
    let terms = merge(f.ring(), f.terms(), g.terms(), false, &mut stats);
    stats.out_terms = terms.len();
    Ok((SparsePoly::from_canonical(f.ring().clone(), f.nvars(), terms), stats))
}

pub(crate) fn merge(ring: &Ring, a: &[Term], b: &[Term], negate_b: bool, stats: &mut ArithStats) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let take_b = |t: &Term| {
        if negate_b {
            Term { coeff: ring.neg(&t.coeff), exps: t.exps.clone() }
        } else {
            t.clone()
        }
    };
    while i < a.len() && j < b.len() {
        stats.comparisons += 1;
        match a[i].exps.cmp(&b[j].exps) {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push(take_b(&b[j]));
                j += 1;
            }
            Ordering::Equal => {
                stats.ring_ops += 1;
                let c = if negate_b { ring.sub(&a[i].coeff, &b[j].coeff) } else { ring.add(&a[i].coeff, &b[j].coeff) };
                if !c.is_zero() {
                    out.push(Term { coeff: c, exps: a[i].exps.clone() });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().map(take_b));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::Exponent;

    fn z(pairs: &[(i64, u64)]) -> SparsePoly {
        SparsePoly::univariate(Ring::Integers, pairs.iter().copied())
    }

    #[test]
    fn merge_examples() {
        let f = z(&[(3, 7), (1, 0)]);
        assert_eq!(add(&f, &SparsePoly::zero(Ring::Integers, 1)).unwrap(), f);
        assert_eq!(add(&z(&[(1, 1), (1, 0)]), &z(&[(1, 1), (-1, 0)])).unwrap(), z(&[(2, 1)]));
        let big = 1u64 << 40;
        assert_eq!(add(&z(&[(1, big), (1, 0)]), &z(&[(1, big), (-1, 0)])).unwrap(), z(&[(2, big)]));
        assert!(sub(&f, &f).unwrap().is_zero());
    }

    #[test]
    fn huge_exponents_merge() {
        let e = Exponent::pow2(200);
        let f = SparsePoly::univariate(Ring::Integers, [(1, e.clone()), (1, Exponent::ZERO)]);
        let g = SparsePoly::univariate(Ring::Integers, [(1, e.clone()), (-1, Exponent::ZERO)]);
        assert_eq!(add(&f, &g).unwrap(), SparsePoly::univariate(Ring::Integers, [(2, e)]));
    }

    #[test]
    fn mismatches_are_errors() {
        let f = z(&[(1, 1)]);
        let g = SparsePoly::zero(Ring::prime_field(7).unwrap(), 1);
        assert!(add(&f, &g).is_err());
        assert!(sub(&f, &SparsePoly::zero(Ring::Integers, 2)).is_err());
    }

    #[test]
    fn merge_cost_is_linear() {
        let f = z(&(0..50).map(|i| (1, 2 * i)).collect::<Vec<_>>());
        let g = z(&(0..50).map(|i| (1, 2 * i + 1)).collect::<Vec<_>>());
        let (s, st) = add_with_stats(&f, &g).unwrap();
        assert_eq!(s.len(), 100);
        assert!(st.comparisons <= 100);
        assert_eq!(st.ring_ops, 0);
    }
}
