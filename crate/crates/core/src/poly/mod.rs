//! The distributed sparse representation, dense polynomials, evaluation
//! primitives and Kronecker substitution.

mod dense;
pub(crate) mod eval;
mod kronecker;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exponent::{Exponent, Monomial};
use crate::ring::{symmetric_mod, Ring};

pub use dense::{from_dense, to_dense, DensePoly, DEFAULT_DENSE_BUDGET};
pub use eval::{eval, eval_geometric, eval_mod, eval_with_budget, DEFAULT_EVAL_BIT_BUDGET};
pub use kronecker::{kronecker_pack, kronecker_unpack};

/// Degree of a polynomial; the zero polynomial has degree minus infinity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    MinusInfinity,
    Finite(Exponent),
}

impl Degree {
    pub fn finite(&self) -> Option<&Exponent> {
        match self {
            Degree::MinusInfinity => None,
            Degree::Finite(e) => Some(e),
        }
    }
}

/// One nonzero coefficient with its exponent tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: BigInt,
    pub exps: Monomial,
}

impl Term {
    pub fn new(coeff: impl Into<BigInt>, exps: Monomial) -> Self {
        Term { coeff: coeff.into(), exps }
    }

    pub fn univariate(coeff: impl Into<BigInt>, e: impl Into<Exponent>) -> Self {
        Term { coeff: coeff.into(), exps: Monomial::univariate(e) }
    }
}

/// A polynomial in distributed sparse form.
///
/// Terms are strictly ascending in colex order, coefficients are nonzero
/// and canonical for the ring, and the zero polynomial has no terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly {
    ring: Ring,
    nvars: usize,
    terms: Vec<Term>,
}

impl SparsePoly {
    pub fn zero(ring: Ring, nvars: usize) -> Self {
        SparsePoly { ring, nvars, terms: Vec::new() }
    }

    pub fn constant(ring: Ring, nvars: usize, c: impl Into<BigInt>) -> Self {
        let c = ring.reduce(c.into());
        let terms = if c.is_zero() { Vec::new() } else { vec![Term { coeff: c, exps: Monomial::one(nvars) }] };
        SparsePoly { ring, nvars, terms }
    }

    pub fn one(ring: Ring, nvars: usize) -> Self {
        Self::constant(ring, nvars, 1)
    }

    /// `c · m` for a single monomial.
    pub fn monomial(ring: Ring, c: impl Into<BigInt>, exps: Monomial) -> Self {
        let nvars = exps.nvars();
        let c = ring.reduce(c.into());
        let terms = if c.is_zero() { Vec::new() } else { vec![Term { coeff: c, exps }] };
        SparsePoly { ring, nvars, terms }
    }

    /// Sorts, merges like terms, reduces coefficients and drops zeros.
    pub fn canonicalize(raw: Vec<Term>, nvars: usize, ring: Ring) -> Result<Self> {
        if let Some(bad) = raw.iter().find(|t| t.exps.nvars() != nvars) {
            return Err(Error::Arity { expected: nvars, found: bad.exps.nvars() });
        }
        let mut raw = raw;
        raw.sort_by(|a, b| a.exps.cmp(&b.exps));
        let mut terms: Vec<Term> = Vec::with_capacity(raw.len());
        for t in raw {
            match terms.last_mut() {
                Some(last) if last.exps == t.exps => last.coeff += t.coeff,
                _ => terms.push(t),
            }
        }
        let terms = terms
            .into_iter()
            .filter_map(|t| {
                let c = ring.reduce(t.coeff);
                (!c.is_zero()).then_some(Term { coeff: c, exps: t.exps })
            })
            .collect();
        Ok(SparsePoly { ring, nvars, terms })
    }

    /// Univariate polynomial from `(coefficient, exponent)` pairs in any order.
    pub fn univariate<C, E>(ring: Ring, pairs: impl IntoIterator<Item = (C, E)>) -> Self
    where
        C: Into<BigInt>,
        E: Into<Exponent>,
    {
        let raw = pairs.into_iter().map(|(c, e)| Term::univariate(c, e)).collect();
        Self::canonicalize(raw, 1, ring).expect("univariate terms always have arity 1")
    }

    /// Wraps terms that are already canonical.
    pub(crate) fn from_canonical(ring: Ring, nvars: usize, terms: Vec<Term>) -> Self {
        let p = SparsePoly { ring, nvars, terms };
        debug_assert!(p.is_canonical(), "non-canonical terms: {p:?}");
        p
    }

    pub fn is_canonical(&self) -> bool {
        self.terms
            .iter()
            .all(|t| t.exps.nvars() == self.nvars && !t.coeff.is_zero() && self.ring.reduce(t.coeff.clone()) == t.coeff)
            && self.terms.windows(2).all(|w| w[0].exps < w[1].exps)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    /// Number of nonzero terms `t`.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].exps.is_one())
    }

    pub fn is_univariate(&self) -> bool {
        self.nvars == 1
    }

    pub(crate) fn require_univariate(&self) -> Result<()> {
        if self.nvars == 1 {
            Ok(())
        } else {
            Err(Error::Arity { expected: 1, found: self.nvars })
        }
    }

    pub(crate) fn check_compatible(&self, other: &SparsePoly) -> Result<()> {
        self.ring.check_same(&other.ring)?;
        if self.nvars != other.nvars {
            return Err(Error::Arity { expected: self.nvars, found: other.nvars });
        }
        Ok(())
    }

    /// Degree in the colex-leading sense: for univariate polynomials the usual
    /// degree, in general the largest exponent of the last variable.
    pub fn degree(&self) -> Degree {
        match self.terms.last() {
            None => Degree::MinusInfinity,
            Some(t) => Degree::Finite(t.exps.exps().last().cloned().unwrap_or_default()),
        }
    }

    /// Largest exponent of any variable in any term (minus infinity for zero).
    pub fn max_degree(&self) -> Degree {
        self.terms.iter().map(|t| t.exps.max_exponent()).max().map_or(Degree::MinusInfinity, Degree::Finite)
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.last()
    }

    pub fn trailing_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// Largest coefficient magnitude; integers only.
    pub fn height(&self) -> Result<BigUint> {
        if self.ring != Ring::Integers {
            return Err(Error::UnsupportedRing { op: "height", ring: self.ring.to_string() });
        }
        Ok(self.terms.iter().map(|t| t.coeff.magnitude().clone()).max().unwrap_or_default())
    }

    pub fn neg(&self) -> SparsePoly {
        let terms = self.terms.iter().map(|t| Term { coeff: self.ring.neg(&t.coeff), exps: t.exps.clone() }).collect();
        SparsePoly::from_canonical(self.ring.clone(), self.nvars, terms)
    }

    /// Multiplication by a scalar.
    pub fn scale(&self, c: &BigInt) -> SparsePoly {
        let terms = self
            .terms
            .iter()
            .filter_map(|t| {
                let v = self.ring.mul(&t.coeff, c);
                (!v.is_zero()).then(|| Term { coeff: v, exps: t.exps.clone() })
            })
            .collect();
        SparsePoly::from_canonical(self.ring.clone(), self.nvars, terms)
    }

    /// Multiplication by a monomial; preserves the term order.
    pub fn mul_monomial(&self, m: &Monomial) -> SparsePoly {
        let terms = self.terms.iter().map(|t| Term { coeff: t.coeff.clone(), exps: t.exps.mul(m) }).collect();
        SparsePoly::from_canonical(self.ring.clone(), self.nvars, terms)
    }

    /// Exact division by a monomial that divides every term.
    pub fn div_monomial(&self, m: &Monomial) -> Option<SparsePoly> {
        let terms = self
            .terms
            .iter()
            .map(|t| t.exps.checked_div(m).map(|exps| Term { coeff: t.coeff.clone(), exps }))
            .collect::<Option<Vec<_>>>()?;
        Some(SparsePoly::from_canonical(self.ring.clone(), self.nvars, terms))
    }

    /// Integer content (nonnegative gcd of the coefficients).
    pub fn content(&self) -> Result<BigInt> {
        if self.ring != Ring::Integers {
            return Err(Error::UnsupportedRing { op: "content", ring: self.ring.to_string() });
        }
        Ok(self.terms.iter().fold(BigInt::zero(), |g, t| g.gcd(&t.coeff)))
    }

    /// `self / content`, with a positive leading coefficient.
    pub fn primitive_part(&self) -> Result<SparsePoly> {
        let c = self.content()?;
        if c.is_zero() {
            return Ok(self.clone());
        }
        let c = if self.leading_term().is_some_and(|t| t.coeff.is_negative()) { -c } else { c };
        let terms = self.terms.iter().map(|t| Term { coeff: &t.coeff / &c, exps: t.exps.clone() }).collect();
        Ok(SparsePoly::from_canonical(Ring::Integers, self.nvars, terms))
    }

    /// Image in another ring (integers reduce into a prime field).
    pub fn change_ring(&self, ring: &Ring) -> Result<SparsePoly> {
        match (&self.ring, ring) {
            (a, b) if a == b => Ok(self.clone()),
            (Ring::Integers, Ring::PrimeField(_)) => {
                SparsePoly::canonicalize(self.terms.clone(), self.nvars, ring.clone())
            }
            (a, b) => Err(Error::RingMismatch { left: a.to_string(), right: b.to_string() }),
        }
    }

    /// Integer polynomial with symmetric representatives of the coefficients.
    pub fn lift_symmetric(&self) -> Result<SparsePoly> {
        let p = self
            .ring
            .modulus()
            .ok_or_else(|| Error::UnsupportedRing { op: "lift_symmetric", ring: self.ring.to_string() })?;
        let terms =
            self.terms.iter().map(|t| Term { coeff: symmetric_mod(&t.coeff, p), exps: t.exps.clone() }).collect();
        Ok(SparsePoly::from_canonical(Ring::Integers, self.nvars, terms))
    }

    /// Coefficient of an exact monomial, zero if absent.
    pub fn coeff_of(&self, m: &Monomial) -> BigInt {
        self.terms.binary_search_by(|t| t.exps.cmp(m)).map_or_else(|_| BigInt::zero(), |i| self.terms[i].coeff.clone())
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, t) in self.terms.iter().rev().enumerate() {
            let neg = t.coeff.is_negative();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = t.coeff.magnitude();
            let vars: Vec<String> = t
                .exps
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, e)| !e.is_zero())
                .map(|(i, e)| {
                    let name = if self.nvars == 1 { "x".to_string() } else { format!("x{}", i + 1) };
                    if e == &Exponent::one() {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}
