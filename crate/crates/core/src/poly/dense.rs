use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::{Degree, SparsePoly, Term};
use crate::error::{Error, Result};
use crate::exponent::{Exponent, Monomial};
use crate::ring::Ring;

/// Largest degree [`to_dense`] accepts by default.
pub const DEFAULT_DENSE_BUDGET: u64 = 1 << 24;

/// A univariate polynomial stored as its full coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensePoly {
    ring: Ring,
    coeffs: Vec<BigInt>,
}

impl DensePoly {
    pub fn new(ring: Ring, coeffs: Vec<BigInt>) -> Self {
        let coeffs = coeffs.into_iter().map(|c| ring.reduce(c)).collect();
        let mut p = DensePoly { ring, coeffs };
        p.trim();
        p
    }

    pub fn from_i64(ring: Ring, coeffs: &[i64]) -> Self {
        Self::new(ring, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(ring: Ring) -> Self {
        DensePoly { ring, coeffs: Vec::new() }
    }

    pub fn one(ring: Ring) -> Self {
        Self::constant(ring, BigInt::one())
    }

    pub fn constant(ring: Ring, c: BigInt) -> Self {
        Self::new(ring, vec![c])
    }

    /// The variable `x`.
    pub fn x(ring: Ring) -> Self {
        Self::new(ring, vec![BigInt::zero(), BigInt::one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.deg() {
            None => Degree::MinusInfinity,
            Some(d) => Degree::Finite(Exponent::from(d)),
        }
    }

    /// Degree as an index, `None` for zero.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &DensePoly) -> DensePoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        DensePoly::new(self.ring.clone(), coeffs)
    }

    pub fn sub(&self, other: &DensePoly) -> DensePoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect();
        DensePoly::new(self.ring.clone(), coeffs)
    }

    pub fn scale(&self, c: &BigInt) -> DensePoly {
        DensePoly::new(self.ring.clone(), self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &DensePoly) -> DensePoly {
        self.mul_counted(other, &mut 0)
    }

    /// Schoolbook product; adds the number of ring multiplications and
    /// additions to `ops`.
    pub(crate) fn mul_counted(&self, other: &DensePoly, ops: &mut u64) -> DensePoly {
        if self.is_zero() || other.is_zero() {
            return DensePoly::zero(self.ring.clone());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
            *ops += 2 * other.coeffs.len() as u64;
        }
        DensePoly::new(self.ring.clone(), out)
    }

    /// Euclidean division. Over the integers each quotient coefficient must
    /// divide exactly by the leading coefficient of `g`.
    pub fn divrem(&self, g: &DensePoly) -> Result<(DensePoly, DensePoly)> {
        self.divrem_counted(g, &mut 0)
    }

    pub(crate) fn divrem_counted(&self, g: &DensePoly, ops: &mut u64) -> Result<(DensePoly, DensePoly)> {
        let dg = g.deg().ok_or(Error::ZeroDivisor)?;
        let ring = &self.ring;
        let lc = g.lc().expect("nonzero divisor");
        let lc_inv = match ring {
            Ring::PrimeField(_) => Some(ring.inv(lc)?),
            Ring::Integers => None,
        };
        let mut r = self.coeffs.clone();
        let Some(df) = self.deg().filter(|&d| d >= dg) else {
            return Ok((DensePoly::zero(ring.clone()), self.clone()));
        };
        let mut q = vec![BigInt::zero(); df - dg + 1];
        for i in (0..=df - dg).rev() {
            let top = ring.reduce(std::mem::take(&mut r[i + dg]));
            if top.is_zero() {
                continue;
            }
            let qc = match &lc_inv {
                Some(inv) => ring.mul(&top, inv),
                None => ring.div_exact(&top, lc).ok_or_else(|| {
                    Error::InexactDivision(format!("{top} is not divisible by the leading coefficient {lc}"))
                })?,
            };
            for (j, gc) in g.coeffs[..dg].iter().enumerate() {
                r[i + j] -= &qc * gc;
            }
            *ops += 2 * dg as u64 + 1;
            q[i] = qc;
        }
        r.truncate(dg);
        Ok((DensePoly::new(ring.clone(), q), DensePoly::new(ring.clone(), r)))
    }

    pub fn rem(&self, g: &DensePoly) -> Result<DensePoly> {
        self.divrem(g).map(|(_, r)| r)
    }

    pub(crate) fn mulmod_counted(&self, other: &DensePoly, g: &DensePoly, ops: &mut u64) -> Result<DensePoly> {
        let prod = self.mul_counted(other, ops);
        prod.divrem_counted(g, ops).map(|(_, r)| r)
    }

    /// `self^e mod g` by square-and-multiply on the full exponent.
    pub fn powmod(&self, e: &Exponent, g: &DensePoly) -> Result<DensePoly> {
        self.powmod_counted(e, g, &mut 0)
    }

    pub(crate) fn powmod_counted(&self, e: &Exponent, g: &DensePoly, ops: &mut u64) -> Result<DensePoly> {
        let base = self.divrem_counted(g, ops)?.1;
        let mut acc = DensePoly::one(self.ring.clone()).divrem_counted(g, ops)?.1;
        if let Some(p) = self.ring.modulus().and_then(|p| p.to_u64()) {
            let word = |d: &DensePoly| d.coeffs.iter().map(|c| c.to_u64().expect("reduced")).collect::<Vec<_>>();
            let lc_inv = self.ring.inv(g.lc().expect("nonzero divisor"))?.to_u64().expect("reduced");
            let out = word_powmod(word(&base), word(&acc), e, &word(g), lc_inv, p, ops);
            return Ok(DensePoly::new(self.ring.clone(), out.into_iter().map(BigInt::from).collect()));
        }
        for i in (0..e.bits()).rev() {
            acc = acc.mulmod_counted(&acc, g, ops)?;
            if e.bit(i) {
                acc = acc.mulmod_counted(&base, g, ops)?;
            }
        }
        Ok(acc)
    }

    /// Scales to leading coefficient one (fields only).
    pub fn monic(&self) -> Result<DensePoly> {
        match self.lc() {
            None => Ok(self.clone()),
            Some(lc) => Ok(self.scale(&self.ring.inv(lc)?)),
        }
    }

    /// Monic greatest common divisor over a prime field.
    pub fn gcd(&self, other: &DensePoly) -> Result<DensePoly> {
        if !self.ring.is_field() {
            return Err(Error::UnsupportedRing { op: "gcd", ring: self.ring.to_string() });
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let acc = self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| self.ring.reduce(acc * x + c));
        self.ring.reduce(acc)
    }

    pub fn derivative(&self) -> DensePoly {
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
        DensePoly::new(self.ring.clone(), coeffs)
    }
}

/// Square-and-multiply over a word-sized prime. Counts operations exactly as
/// the generic path does.
fn word_powmod(
    base: Vec<u64>,
    mut acc: Vec<u64>,
    e: &Exponent,
    g: &[u64],
    lc_inv: u64,
    p: u64,
    ops: &mut u64,
) -> Vec<u64> {
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let dg = g.len() - 1;
    let mul_rem = |a: &[u64], b: &[u64], ops: &mut u64| -> Vec<u64> {
        let (a, b) = (trim_words(a), trim_words(b));
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut r = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                let v = r[i + j] as u128 + x as u128 * y as u128;
                r[i + j] = (v % p as u128) as u64;
            }
            *ops += 2 * b.len() as u64;
        }
        while r.last() == Some(&0) {
            r.pop();
        }
        if r.len() > dg {
            for i in (0..r.len() - dg).rev() {
                let top = r[i + dg];
                if top == 0 {
                    continue;
                }
                let qc = mulmod(top, lc_inv);
                for (j, &gc) in g[..dg].iter().enumerate() {
                    let m = mulmod(qc, gc);
                    r[i + j] = if r[i + j] >= m { r[i + j] - m } else { r[i + j] + (p - m) };
                }
                r[i + dg] = 0;
                *ops += 2 * dg as u64 + 1;
            }
            r.truncate(dg);
        }
        r
    };
    for i in (0..e.bits()).rev() {
        acc = mul_rem(&acc, &acc, ops);
        if e.bit(i) {
            acc = mul_rem(&acc, &base, ops);
        }
    }
    acc
}

fn trim_words(a: &[u64]) -> &[u64] {
    let n = a.iter().rposition(|&c| c != 0).map_or(0, |i| i + 1);
    &a[..n]
}

/// Dense form of a univariate polynomial whose degree is below `budget`.
pub fn to_dense(f: &SparsePoly, budget: u64) -> Result<DensePoly> {
    f.require_univariate()?;
    let Some(deg) = f.degree().finite().cloned() else {
        return Ok(DensePoly::zero(f.ring().clone()));
    };
    let d = deg
        .to_u64()
        .filter(|&d| d < budget)
        .ok_or_else(|| Error::Budget(format!("degree {deg} is beyond the dense budget {budget}")))?;
    let mut coeffs = vec![BigInt::zero(); d as usize + 1];
    for t in f.terms() {
        let i = t.exps[0].to_u64().expect("bounded by the degree") as usize;
        coeffs[i] = t.coeff.clone();
    }
    Ok(DensePoly { ring: f.ring().clone(), coeffs })
}

pub fn from_dense(d: &DensePoly) -> SparsePoly {
    let terms = d
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| Term { coeff: c.clone(), exps: Monomial::univariate(i) })
        .collect();
    SparsePoly::from_canonical(d.ring.clone(), 1, terms)
}
