use num_bigint::BigInt;
use num_traits::Zero;

use super::heap::ChainHeap;
use super::{merge, ArithStats};
use crate::error::Result;
use crate::exponent::{Exponent, Monomial};
use crate::poly::{from_dense, kronecker_pack, kronecker_unpack, to_dense, Degree, SparsePoly, Term};

/// Degree cap for the dense crossover in [`mul`].
const DENSE_CROSSOVER_DEGREE: u64 = 1 << 16;

/// Heap multiplication. The heap holds at most one entry per term of the
/// smaller operand, so its size is `min(#f, #g)` and each output term costs
/// `O(log min(#f, #g))` comparisons.
pub fn mul_heap(f: &SparsePoly, g: &SparsePoly) -> Result<(SparsePoly, ArithStats)> {
    f.check_compatible(g)?;
    let (a, b) = if f.len() <= g.len() { (f, g) } else { (g, f) };
    let ring = f.ring();
    let mut stats = ArithStats::default();
    if a.is_zero() {
        return Ok((SparsePoly::zero(ring.clone(), f.nvars()), stats));
    }
    let (at, bt) = (a.terms(), b.terms());
    let mut col = vec![0usize; at.len()];
    let mut heap: ChainHeap<Monomial> = ChainHeap::with_rows(at.len());
    heap.push(at[0].exps.mul(&bt[0].exps), 0);
    let mut out: Vec<Term> = Vec::new();
    let mut popped = Vec::new();
    while let Some(key) = heap.pop_into(&mut popped) {
        let mut acc = BigInt::zero();
        for (n, &i) in popped.iter().enumerate() {
            let j = col[i];
            acc += &at[i].coeff * &bt[j].coeff;
            stats.ring_ops += if n == 0 { 1 } else { 2 };
        }
        for &i in &popped {
            let j = col[i];
            if j == 0 && i + 1 < at.len() {
                heap.push(at[i + 1].exps.mul(&bt[0].exps), i + 1);
            }
            if j + 1 < bt.len() {
                col[i] = j + 1;
                heap.push(at[i].exps.mul(&bt[j + 1].exps), i);
            }
        }
        popped.clear();
        let acc = ring.reduce(acc);
        if !acc.is_zero() {
            out.push(Term { coeff: acc, exps: key });
        }
    }
    stats.comparisons = heap.comparisons;
    stats.peak_heap = heap.peak_rows;
    stats.out_terms = out.len();
    Ok((SparsePoly::from_canonical(ring.clone(), f.nvars(), out), stats))
}

/// Reference multiplication: every row `f_i · g` is formed and the rows are
/// combined by a balanced tournament of pairwise merges.
pub fn mul_naive(f: &SparsePoly, g: &SparsePoly) -> Result<(SparsePoly, ArithStats)> {
    f.check_compatible(g)?;
    let ring = f.ring();
    let mut stats = ArithStats::default();
    let mut rows: Vec<Vec<Term>> = f
        .terms()
        .iter()
        .map(|ft| {
            g.terms()
                .iter()
                .filter_map(|gt| {
                    let c = ring.mul(&ft.coeff, &gt.coeff);
                    (!c.is_zero()).then(|| Term { coeff: c, exps: ft.exps.mul(&gt.exps) })
                })
                .collect()
        })
        .collect();
    stats.ring_ops += (f.len() * g.len()) as u64;
    while rows.len() > 1 {
        let mut next = Vec::with_capacity(rows.len().div_ceil(2));
        let mut it = rows.into_iter();
        while let Some(left) = it.next() {
            match it.next() {
                Some(right) => next.push(merge(ring, &left, &right, false, &mut stats)),
                None => next.push(left),
            }
        }
        rows = next;
    }
    let out = rows.pop().unwrap_or_default();
    stats.out_terms = out.len();
    Ok((SparsePoly::from_canonical(ring.clone(), f.nvars(), out), stats))
}

/// Dense schoolbook product of two univariate polynomials of small degree.
pub fn mul_dense(f: &SparsePoly, g: &SparsePoly) -> Result<(SparsePoly, ArithStats)> {
    f.check_compatible(g)?;
    let mut stats = ArithStats::default();
    let fd = to_dense(f, DENSE_CROSSOVER_DEGREE)?;
    let gd = to_dense(g, DENSE_CROSSOVER_DEGREE)?;
    let h = from_dense(&fd.mul_counted(&gd, &mut stats.ring_ops));
    stats.out_terms = h.len();
    Ok((h, stats))
}

/// Multivariate product through Kronecker substitution with a bound large
/// enough that no carries occur.
pub fn mul_kronecker(f: &SparsePoly, g: &SparsePoly) -> Result<(SparsePoly, ArithStats)> {
    f.check_compatible(g)?;
    let (Degree::Finite(df), Degree::Finite(dg)) = (f.max_degree(), g.max_degree()) else {
        return Ok((SparsePoly::zero(f.ring().clone(), f.nvars()), ArithStats::default()));
    };
    let bound = &(&df + &dg) + &Exponent::one();
    mul_kronecker_with_bound(f, g, &bound)
}

/// Kronecker product with an explicit per-variable bound; every variable of
/// the product must stay below `bound`.
pub fn mul_kronecker_with_bound(f: &SparsePoly, g: &SparsePoly, bound: &Exponent) -> Result<(SparsePoly, ArithStats)> {
    f.check_compatible(g)?;
    let fp = kronecker_pack(f, bound)?;
    let gp = kronecker_pack(g, bound)?;
    let (hp, stats) = mul_univariate_auto(&fp, &gp)?;
    Ok((kronecker_unpack(&hp, bound, f.nvars())?, stats))
}

/// Product with automatic choice: dense when both operands are nearly full
/// and of small degree, heap otherwise.
pub fn mul(f: &SparsePoly, g: &SparsePoly) -> Result<(SparsePoly, ArithStats)> {
    f.check_compatible(g)?;
    if f.nvars() == 1 {
        mul_univariate_auto(f, g)
    } else {
        mul_heap(f, g)
    }
}

fn mul_univariate_auto(f: &SparsePoly, g: &SparsePoly) -> Result<(SparsePoly, ArithStats)> {
    let small = |p: &SparsePoly| p.degree().finite().and_then(Exponent::to_u64).filter(|&d| d < DENSE_CROSSOVER_DEGREE);
    if let (Some(df), Some(dg)) = (small(f), small(g)) {
        let dense_work = (df + 1) as u128 * (dg + 1) as u128;
        if dense_work <= 2 * (f.len() as u128) * (g.len() as u128) {
            return mul_dense(f, g);
        }
    }
    mul_heap(f, g)
}
