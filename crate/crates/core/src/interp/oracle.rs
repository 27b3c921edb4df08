use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::par;
use crate::poly::SparsePoly;
use crate::ring::{pow_mod, Ring};

/// A polynomial available only through evaluation modulo primes.
pub trait BlackBox: Sync {
    fn nvars(&self) -> usize;

    /// `f(point) mod p`.
    fn eval_mod(&self, point: &[BigInt], p: &BigInt) -> Result<BigInt>;

    /// `f(base^j) mod p` for `j = start, ..., start + count - 1`, with powers
    /// taken coordinatewise. Counts as `count` evaluations.
    fn eval_powers(&self, base: &[BigInt], start: u64, count: usize, p: &BigInt) -> Result<Vec<BigInt>> {
        let first: Vec<BigInt> = base.iter().map(|b| pow_mod(b, &Exponent::from(start), p)).collect();
        let points: Vec<Vec<BigInt>> = (0..count)
            .scan(first, |cur, _| {
                let here = cur.clone();
                for (c, b) in cur.iter_mut().zip(base) {
                    *c = (&*c * b).mod_floor(p);
                }
                Some(here)
            })
            .collect();
        par::try_map(&points, |pt| self.eval_mod(pt, p))
    }
}

impl<B: BlackBox + ?Sized> BlackBox for &B {
    fn nvars(&self) -> usize {
        (**self).nvars()
    }

    fn eval_mod(&self, point: &[BigInt], p: &BigInt) -> Result<BigInt> {
        (**self).eval_mod(point, p)
    }

    fn eval_powers(&self, base: &[BigInt], start: u64, count: usize, p: &BigInt) -> Result<Vec<BigInt>> {
        (**self).eval_powers(base, start, count, p)
    }
}

/// Black box backed by a known polynomial. Integer polynomials reduce
/// modulo whatever prime is requested; prime-field polynomials only answer
/// for their own modulus.
#[derive(Clone, Debug)]
pub struct PolyOracle {
    poly: SparsePoly,
}

impl PolyOracle {
    pub fn new(poly: SparsePoly) -> Self {
        PolyOracle { poly }
    }

    pub fn poly(&self) -> &SparsePoly {
        &self.poly
    }

    fn check_modulus(&self, p: &BigInt) -> Result<()> {
        match self.poly.ring() {
            Ring::Integers => Ok(()),
            Ring::PrimeField(q) if q == p => Ok(()),
            r => Err(Error::RingMismatch { left: r.to_string(), right: format!("Zp {p}") }),
        }
    }

    fn term_values(&self, point: &[BigInt], p: &BigInt) -> Result<Vec<(BigInt, BigInt)>> {
        if point.len() != self.poly.nvars() {
            return Err(Error::Arity { expected: self.poly.nvars(), found: point.len() });
        }
        self.check_modulus(p)?;
        Ok(par::map(self.poly.terms(), |t| {
            let mut r = BigInt::from(1) % p;
            for (x, e) in point.iter().zip(t.exps.exps()) {
                r = (r * pow_mod(x, e, p)) % p;
            }
            (t.coeff.mod_floor(p), r)
        }))
    }
}

impl BlackBox for PolyOracle {
    fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    fn eval_mod(&self, point: &[BigInt], p: &BigInt) -> Result<BigInt> {
        let tv = self.term_values(point, p)?;
        Ok(tv.iter().fold(BigInt::zero(), |acc, (c, r)| acc + c * r).mod_floor(p))
    }

    fn eval_powers(&self, base: &[BigInt], start: u64, count: usize, p: &BigInt) -> Result<Vec<BigInt>> {
        let tv = self.term_values(base, p)?;
        let start = Exponent::from(start);
        let chunk = (tv.len() / (4 * par::threads())).clamp(1, 256);
        let partials = par::map_chunks(&tv, chunk, |part| {
            let mut acc = vec![BigInt::zero(); count];
            for (c, r) in part {
                let mut cur = (c * pow_mod(r, &start, p)) % p;
                for slot in acc.iter_mut() {
                    *slot += &cur;
                    cur = (&cur * r) % p;
                }
            }
            acc
        });
        let mut out = vec![BigInt::zero(); count];
        for part in partials {
            for (o, v) in out.iter_mut().zip(part) {
                *o += v;
            }
        }
        Ok(out.into_iter().map(|v| v.mod_floor(p)).collect())
    }
}

/// Black box given by a closure `(point, p) -> f(point) mod p`.
pub struct FnOracle<F> {
    nvars: usize,
    f: F,
}

impl<F> FnOracle<F>
where
    F: Fn(&[BigInt], &BigInt) -> Result<BigInt> + Sync,
{
    pub fn new(nvars: usize, f: F) -> Self {
        FnOracle { nvars, f }
    }
}

impl<F> BlackBox for FnOracle<F>
where
    F: Fn(&[BigInt], &BigInt) -> Result<BigInt> + Sync,
{
    fn nvars(&self) -> usize {
        self.nvars
    }

    fn eval_mod(&self, point: &[BigInt], p: &BigInt) -> Result<BigInt> {
        (self.f)(point, p)
    }
}

/// Wraps a black box and counts every evaluation made through it.
pub struct ProbeCountingOracle<B> {
    inner: B,
    probes: AtomicU64,
}

impl<B: BlackBox> ProbeCountingOracle<B> {
    pub fn new(inner: B) -> Self {
        ProbeCountingOracle { inner, probes: AtomicU64::new(0) }
    }

    pub fn probes(&self) -> u64 {
        self.probes.load(Ordering::Relaxed)
    }

    pub fn reset(&self) {
        self.probes.store(0, Ordering::Relaxed);
    }

    pub fn inner(&self) -> &B {
        &self.inner
    }
}

impl ProbeCountingOracle<PolyOracle> {
    pub fn from_poly(poly: SparsePoly) -> Self {
        Self::new(PolyOracle::new(poly))
    }
}

impl<B: BlackBox> BlackBox for ProbeCountingOracle<B> {
    fn nvars(&self) -> usize {
        self.inner.nvars()
    }

    fn eval_mod(&self, point: &[BigInt], p: &BigInt) -> Result<BigInt> {
        self.probes.fetch_add(1, Ordering::Relaxed);
        self.inner.eval_mod(point, p)
    }

    fn eval_powers(&self, base: &[BigInt], start: u64, count: usize, p: &BigInt) -> Result<Vec<BigInt>> {
        self.probes.fetch_add(count as u64, Ordering::Relaxed);
        self.inner.eval_powers(base, start, count, p)
    }
}

/// Presents an `n`-variate black box as univariate through the substitution
/// `x_i = z^(D^(i-1))`.
pub struct KroneckerOracle<B> {
    inner: B,
    bound: Exponent,
}

impl<B: BlackBox> KroneckerOracle<B> {
    pub fn new(inner: B, bound: Exponent) -> Self {
        KroneckerOracle { inner, bound }
    }

    fn lift(&self, z: &BigInt, p: &BigInt) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(self.inner.nvars());
        let mut cur = z.mod_floor(p);
        for _ in 0..self.inner.nvars() {
            out.push(cur.clone());
            cur = pow_mod(&cur, &self.bound, p);
        }
        out
    }

    fn single(point: &[BigInt]) -> Result<&BigInt> {
        match point {
            [z] => Ok(z),
            _ => Err(Error::Arity { expected: 1, found: point.len() }),
        }
    }
}

impl<B: BlackBox> BlackBox for KroneckerOracle<B> {
    fn nvars(&self) -> usize {
        1
    }

    fn eval_mod(&self, point: &[BigInt], p: &BigInt) -> Result<BigInt> {
        self.inner.eval_mod(&self.lift(Self::single(point)?, p), p)
    }

    fn eval_powers(&self, base: &[BigInt], start: u64, count: usize, p: &BigInt) -> Result<Vec<BigInt>> {
        self.inner.eval_powers(&self.lift(Self::single(base)?, p), start, count, p)
    }
}
