use std::cmp::{Ordering, Reverse};

use num_bigint::BigInt;
use num_traits::Zero;

use super::heap::ChainHeap;
use super::ArithStats;
use crate::error::{Error, Result};
use crate::exponent::{Exponent, Monomial};
use crate::poly::{SparsePoly, Term};
use crate::ring::Ring;

/// Largest pseudo-division exponent tried before giving up.
const MAX_PSEUDO_DELTA: u64 = 1 << 20;

/// Result of a pseudo-division `lc(g)^delta · f = q·g + r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoDivision {
    pub quotient: SparsePoly,
    pub remainder: SparsePoly,
    pub delta: u64,
    pub multiplier: BigInt,
    pub stats: ArithStats,
}

/// Univariate division with remainder by a heap over the pending products
/// `q_k · g_j`, processed from the highest exponent down.
///
/// Over the integers every quotient coefficient must be divisible by
/// `lc(g)`; otherwise the result is [`Error::InexactDivision`] (see
/// [`pseudo_divmod_heap`]).
pub fn divmod_heap(f: &SparsePoly, g: &SparsePoly) -> Result<(SparsePoly, SparsePoly, ArithStats)> {
    let mut stats = ArithStats::default();
    let (q, r) = divmod_inner(f, g, usize::MAX, &mut stats)?;
    stats.out_terms = q.len() + r.len();
    Ok((q, r, stats))
}

/// Pseudo-division over the integers. The exponent `delta` doubles until
/// the division of `lc(g)^delta · f` goes through, which happens once it
/// reaches the number of quotient terms. Over a field `delta` is zero.
pub fn pseudo_divmod_heap(f: &SparsePoly, g: &SparsePoly) -> Result<PseudoDivision> {
    let mut stats = ArithStats::default();
    let lc = g.leading_term().ok_or(Error::ZeroDivisor)?.coeff.clone();
    let mut delta = 0u64;
    loop {
        let multiplier = num_traits::pow(lc.clone(), delta as usize);
        let scaled = if delta == 0 { f.clone() } else { f.scale(&multiplier) };
        match divmod_inner(&scaled, g, usize::MAX, &mut stats) {
            Ok((quotient, remainder)) => {
                stats.out_terms = quotient.len() + remainder.len();
                return Ok(PseudoDivision { quotient, remainder, delta, multiplier, stats });
            }
            Err(Error::InexactDivision(_)) if delta < MAX_PSEUDO_DELTA => {
                delta = (2 * delta).max(1);
            }
            Err(e) => return Err(e),
        }
    }
}

/// Heap division that gives up with [`Error::Budget`] once the quotient
/// exceeds `max_quotient` terms.
pub(crate) fn divmod_inner(
    f: &SparsePoly,
    g: &SparsePoly,
    max_quotient: usize,
    stats: &mut ArithStats,
) -> Result<(SparsePoly, SparsePoly)> {
    f.check_compatible(g)?;
    f.require_univariate()?;
    let ring = f.ring();
    let gd: Vec<&Term> = g.terms().iter().rev().collect();
    let lead = *gd.first().ok_or(Error::ZeroDivisor)?;
    let dg = lead.exps[0].clone();
    let lc_inv = match ring {
        Ring::PrimeField(_) => Some(ring.inv(&lead.coeff)?),
        Ring::Integers => None,
    };
    let fd: Vec<&Term> = f.terms().iter().rev().collect();
    let mut fi = 0usize;
    let mut quotient: Vec<Term> = Vec::new();
    let mut remainder: Vec<Term> = Vec::new();
    let mut col: Vec<usize> = Vec::new();
    let mut heap: ChainHeap<Reverse<Exponent>> = ChainHeap::with_rows(16);
    let mut popped = Vec::new();
    loop {
        let fe = fd.get(fi).map(|t| &t.exps[0]);
        let he = heap.peek_key().map(|k| &k.0);
        let (take_f, take_h) = match (fe, he) {
            (None, None) => break,
            (Some(_), None) => (true, false),
            (None, Some(_)) => (false, true),
            (Some(a), Some(b)) => {
                stats.comparisons += 1;
                match a.cmp(b) {
                    Ordering::Greater => (true, false),
                    Ordering::Less => (false, true),
                    Ordering::Equal => (true, true),
                }
            }
        };
        let mut acc = BigInt::zero();
        let e = if take_f {
            acc += &fd[fi].coeff;
            fi += 1;
            fd[fi - 1].exps[0].clone()
        } else {
            heap.peek_key().expect("nonempty").0.clone()
        };
        if take_h {
            heap.pop_into(&mut popped);
            for &k in &popped {
                let j = col[k];
                acc -= &quotient[k].coeff * &gd[j].coeff;
                stats.ring_ops += 2;
                if j + 1 < gd.len() {
                    col[k] = j + 1;
                    heap.push(Reverse(&quotient[k].exps[0] + &gd[j + 1].exps[0]), k);
                }
            }
            popped.clear();
        }
        let acc = ring.reduce(acc);
        if acc.is_zero() {
            continue;
        }
        match e.checked_sub(&dg) {
            Some(qe) => {
                stats.ring_ops += 1;
                let qc = match &lc_inv {
                    Some(inv) => ring.mul(&acc, inv),
                    None => ring.div_exact(&acc, &lead.coeff).ok_or_else(|| {
                        Error::InexactDivision(format!(
                            "coefficient {acc} at x^{e} is not divisible by the leading coefficient {}",
                            lead.coeff
                        ))
                    })?,
                };
                let k = quotient.len();
                if k >= max_quotient {
                    return Err(Error::Budget(format!("quotient exceeds {max_quotient} terms")));
                }
                col.push(1);
                if gd.len() > 1 {
                    heap.push(Reverse(&qe + &gd[1].exps[0]), k);
                }
                quotient.push(Term { coeff: qc, exps: Monomial::univariate(qe) });
            }
            None => remainder.push(Term { coeff: acc, exps: Monomial::univariate(e) }),
        }
    }
    stats.comparisons += heap.comparisons;
    stats.peak_heap = stats.peak_heap.max(heap.peak_rows);
    quotient.reverse();
    remainder.reverse();
    Ok((SparsePoly::from_canonical(ring.clone(), 1, quotient), SparsePoly::from_canonical(ring.clone(), 1, remainder)))
}
