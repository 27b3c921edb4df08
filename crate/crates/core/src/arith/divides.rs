use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::division::divmod_inner;
use super::ArithStats;
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::par;
use crate::poly::{to_dense, DensePoly, SparsePoly};
use crate::ring::{biguint_to_bigint, random_prime, Ring};

/// Largest divisor degree handled by the dense path of [`divides`].
pub const DEFAULT_DIVIDES_DENSE_BUDGET: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DividesOptions {
    /// Divisors of degree above this go through heap division.
    pub dense_budget: u64,
    /// Random primes used to screen integer inputs before exact work.
    pub screen_primes: usize,
    /// Quotient size allowed when confirming integer divisibility by heap
    /// division.
    pub quotient_budget: usize,
    /// Coefficient size (bits) allowed in the exact rational remainder.
    pub rational_bit_budget: u64,
    pub seed: u64,
}

impl Default for DividesOptions {
    fn default() -> Self {
        DividesOptions {
            dense_budget: DEFAULT_DIVIDES_DENSE_BUDGET,
            screen_primes: 3,
            quotient_budget: 1 << 20,
            rational_bit_budget: 1 << 16,
            seed: 0x5eed,
        }
    }
}

/// Whether `g` divides `f` exactly.
pub fn divides(f: &SparsePoly, g: &SparsePoly) -> Result<bool> {
    divides_with(f, g, &DividesOptions::default()).map(|(b, _)| b)
}

/// Divisibility test. For a divisor of small degree the remainder is
/// `Σ c_i · (x^(e_i) mod g)`, found by binary powering, so the work depends
/// on `log deg f` and not on `deg f`. Larger divisors use heap division and
/// set `quadratic_path` in the stats.
///
/// Over the integers the answer `false` is certified by a nonzero remainder
/// modulo a prime not dividing `lc(g)`; `true` needs an exact computation,
/// either a heap division with a bounded quotient or the remainder over the
/// rationals. If both exceed their budgets the result is [`Error::Budget`].
pub fn divides_with(f: &SparsePoly, g: &SparsePoly, opts: &DividesOptions) -> Result<(bool, ArithStats)> {
    f.check_compatible(g)?;
    f.require_univariate()?;
    let mut stats = ArithStats::default();
    let dg = g.degree().finite().cloned().ok_or(Error::ZeroDivisor)?;
    if f.is_zero() {
        return Ok((true, stats));
    }
    let small = dg.to_u64().filter(|&d| d <= opts.dense_budget);
    let answer = match (small, f.ring()) {
        (None, _) => {
            stats.quadratic_path = true;
            match divmod_inner(f, g, usize::MAX, &mut stats) {
                Ok((_, r)) => r.is_zero(),
                Err(Error::InexactDivision(_)) => false,
                Err(e) => return Err(e),
            }
        }
        (Some(_), Ring::PrimeField(_)) => remainder_is_zero_mod_p(f, g, &mut stats.ring_ops)?,
        (Some(d), Ring::Integers) => divides_integers(f, g, d, opts, &mut stats)?,
    };
    Ok((answer, stats))
}

fn remainder_is_zero_mod_p(f: &SparsePoly, g: &SparsePoly, ops: &mut u64) -> Result<bool> {
    let gd = to_dense(g, u64::MAX)?.monic()?;
    if gd.deg() == Some(0) {
        return Ok(true);
    }
    let x = DensePoly::x(gd.ring().clone()).divrem_counted(&gd, ops)?.1;
    Ok(crate::poly::eval::eval_mod_counted(f, &x, &gd, ops)?.is_zero())
}

fn divides_integers(
    f: &SparsePoly,
    g: &SparsePoly,
    dg: u64,
    opts: &DividesOptions,
    stats: &mut ArithStats,
) -> Result<bool> {
    if !f.content()?.is_multiple_of(&g.content()?) {
        return Ok(false);
    }
    if dg == 0 {
        return Ok(true);
    }
    if f.degree() < g.degree() {
        return Ok(false);
    }
    let gp = g.primitive_part()?;
    let lc = gp.leading_term().expect("nonzero").coeff.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut screened = 0;
    while screened < opts.screen_primes {
        let p = biguint_to_bigint(&random_prime(62, &mut rng)?);
        if (&lc % &p).is_zero() {
            continue;
        }
        let ring = Ring::PrimeField(p);
        if !remainder_is_zero_mod_p(&f.change_ring(&ring)?, &gp.change_ring(&ring)?, &mut stats.ring_ops)? {
            return Ok(false);
        }
        screened += 1;
    }
    match divmod_inner(f, &gp, opts.quotient_budget, stats) {
        Ok((_, r)) => return Ok(r.is_zero()),
        Err(Error::InexactDivision(_)) => return Ok(false),
        Err(Error::Budget(_)) => {}
        Err(e) => return Err(e),
    }
    rational_remainder_is_zero(f, &gp, opts.rational_bit_budget, &mut stats.ring_ops)
}

/// Dense polynomial over the rationals, reduced modulo a fixed monic
/// modulus. Only what the exact remainder needs.
struct QMod {
    m: Vec<BigRational>,
    bit_budget: u64,
}

impl QMod {
    fn reduce(&self, mut a: Vec<BigRational>, ops: &mut u64) -> Result<Vec<BigRational>> {
        let d = self.m.len() - 1;
        while a.len() > d {
            let top = a.pop().expect("nonempty");
            if top.is_zero() {
                continue;
            }
            let shift = a.len() - d;
            for (j, mj) in self.m[..d].iter().enumerate() {
                a[shift + j] -= &top * mj;
            }
            *ops += 2 * d as u64;
        }
        for c in &a {
            let bits = c.numer().bits().max(c.denom().bits());
            if bits > self.bit_budget {
                return Err(Error::Budget(format!("exact remainder coefficients exceed {} bits", self.bit_budget)));
            }
        }
        Ok(a)
    }

    fn mulmod(&self, a: &[BigRational], b: &[BigRational], ops: &mut u64) -> Result<Vec<BigRational>> {
        if a.is_empty() || b.is_empty() {
            return Ok(Vec::new());
        }
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        *ops += 2 * (a.len() * b.len()) as u64;
        self.reduce(out, ops)
    }

    fn x_pow(&self, e: &Exponent, ops: &mut u64) -> Result<Vec<BigRational>> {
        let x = self.reduce(vec![BigRational::zero(), BigRational::one()], ops)?;
        let mut acc = self.reduce(vec![BigRational::one()], ops)?;
        for i in (0..e.bits()).rev() {
            acc = self.mulmod(&acc, &acc, ops)?;
            if e.bit(i) {
                acc = self.mulmod(&acc, &x, ops)?;
            }
        }
        Ok(acc)
    }
}

fn rational_remainder_is_zero(f: &SparsePoly, g: &SparsePoly, bit_budget: u64, ops: &mut u64) -> Result<bool> {
    let gd = to_dense(g, u64::MAX)?;
    let lc = BigRational::from_integer(gd.lc().expect("nonzero").clone());
    let m: Vec<BigRational> = gd.coeffs().iter().map(|c| BigRational::from_integer(c.clone()) / &lc).collect();
    let ctx = QMod { m, bit_budget };
    let images = par::try_map(f.terms(), |t| {
        let mut term_ops = 0u64;
        let img = ctx.x_pow(&t.exps[0], &mut term_ops)?;
        Ok::<_, Error>((img, term_ops))
    })?;
    let mut acc = vec![BigRational::zero(); ctx.m.len() - 1];
    for (t, (img, n)) in f.terms().iter().zip(images) {
        *ops += n;
        let c = BigRational::from_integer(t.coeff.clone());
        for (a, b) in acc.iter_mut().zip(&img) {
            *a += &c * b;
        }
        *ops += 2 * img.len() as u64;
    }
    Ok(acc.iter().all(Zero::is_zero))
}
