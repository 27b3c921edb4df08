use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::exponent::{Exponent, Monomial};
use crate::poly::{SparsePoly, Term};

/// `f = Σ block_i · x^(shift_i)`, cut wherever two consecutive exponents
/// are at least `gap_threshold` apart. Every block has a constant term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapSplit {
    pub blocks: Vec<(SparsePoly, Exponent)>,
    pub gap_threshold: Exponent,
}

impl GapSplit {
    pub fn reassemble(&self, ring: &crate::ring::Ring) -> SparsePoly {
        let terms = self
            .blocks
            .iter()
            .flat_map(|(b, s)| {
                b.terms()
                    .iter()
                    .map(move |t| Term { coeff: t.coeff.clone(), exps: Monomial::univariate(&t.exps[0] + s) })
            })
            .collect();
        SparsePoly::from_canonical(ring.clone(), 1, terms)
    }
}

/// Default threshold: `max(64, bit length of the height)`.
pub fn default_gap(f: &SparsePoly) -> Exponent {
    let h = f.height().unwrap_or_default();
    Exponent::from(h.bits().max(64))
}

/// Scans the sorted exponents once and cuts at every gap of at least
/// `gamma`.
pub fn gap_split(f: &SparsePoly, gamma: &Exponent) -> Result<GapSplit> {
    f.require_univariate()?;
    if gamma.is_zero() {
        return Err(Error::Precondition("the gap threshold must be at least 1".into()));
    }
    let mut blocks = Vec::new();
    let mut current: Vec<&Term> = Vec::new();
    let flush = |current: &mut Vec<&Term>, blocks: &mut Vec<(SparsePoly, Exponent)>| {
        if let Some(first) = current.first() {
            let shift = first.exps[0].clone();
            let terms = current
                .iter()
                .map(|t| Term {
                    coeff: t.coeff.clone(),
                    exps: Monomial::univariate(t.exps[0].checked_sub(&shift).expect("sorted")),
                })
                .collect();
            blocks.push((SparsePoly::from_canonical(f.ring().clone(), 1, terms), shift));
            current.clear();
        }
    };
    for t in f.terms() {
        if let Some(prev) = current.last() {
            let gap = t.exps[0].checked_sub(&prev.exps[0]).expect("sorted");
            if &gap >= gamma {
                flush(&mut current, &mut blocks);
            }
        }
        current.push(t);
    }
    flush(&mut current, &mut blocks);
    Ok(GapSplit { blocks, gap_threshold: gamma.clone() })
}

/// A gap at which every rational root other than `0` and `±1` must be a
/// root of both sides: `bits(t · H) + 1`.
pub(crate) fn rational_root_gap(f: &SparsePoly) -> Result<Exponent> {
    let th = f.height()? * BigUint::from(f.len().max(1));
    Ok(Exponent::from(th.bits() + 1))
}
