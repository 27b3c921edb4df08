//! Sparse interpolation from a black box: Prony / Ben-Or–Tiwari over smooth
//! prime fields, integer coefficients by Chinese remaindering, early
//! termination, Kronecker reduction of the multivariate case, and Monte
//! Carlo verification.

mod bm;
mod oracle;
mod roots;
mod vandermonde;

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exponent::{Exponent, Monomial};
use crate::par;
use crate::poly::{eval, kronecker_unpack, DensePoly, SparsePoly, Term};
use crate::ring::{
    biguint_to_bigint, crt_pair, discrete_log_pow2, find_smooth_prime, pow_mod, random_prime, symmetric_mod, Ring,
    SmoothPrimeContext,
};

pub use bm::{berlekamp_massey, BerlekampMassey};
pub use oracle::{BlackBox, FnOracle, KroneckerOracle, PolyOracle, ProbeCountingOracle};
pub use roots::{find_roots_subgroup, DEFAULT_ROOT_RETRIES};
pub use vandermonde::solve_transposed_vandermonde;

/// Bounds and knobs for an interpolation run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterpConfig {
    /// Bound `T` on the number of terms. Optional with early termination.
    pub term_bound: Option<usize>,
    /// Bound `D`: every exponent is below it.
    pub degree_bound: Exponent,
    /// Bound `H` on coefficient magnitudes (integers only). Without it a
    /// single prime is trusted, as if `H = (p - 1) / 2`.
    pub height_bound: Option<BigUint>,
    pub early_termination: bool,
    /// Probe pairs without a change of the recurrence before stopping.
    pub stability_window: usize,
    pub verify_trials: usize,
    pub seed: u64,
    /// Size of the ordinary primes used for coefficient recovery.
    pub crt_prime_bits: u64,
    /// Minimum size of the smooth prime used for the support.
    pub support_prime_bits: u64,
    pub max_root_retries: usize,
    /// Probe cap for early termination when no term bound is given.
    pub max_probes: usize,
    /// Fresh smooth primes tried when a verification probe disagrees.
    pub max_prime_retries: usize,
}

impl InterpConfig {
    pub fn new(term_bound: Option<usize>, degree_bound: impl Into<Exponent>) -> Self {
        InterpConfig {
            term_bound,
            degree_bound: degree_bound.into(),
            height_bound: None,
            early_termination: false,
            stability_window: 2,
            verify_trials: 0,
            seed: 0,
            crt_prime_bits: 62,
            support_prime_bits: 62,
            max_root_retries: DEFAULT_ROOT_RETRIES,
            max_probes: 1 << 16,
            max_prime_retries: 4,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.term_bound == Some(0) {
            return Err(Error::Precondition("the term bound must be at least 1".into()));
        }
        if self.degree_bound.is_zero() {
            return Err(Error::Precondition("the degree bound must be at least 1".into()));
        }
        if self.height_bound.as_ref().is_some_and(Zero::is_zero) {
            return Err(Error::Precondition("the height bound must be at least 1".into()));
        }
        if self.term_bound.is_none() && !self.early_termination {
            return Err(Error::Precondition("a term bound is required without early termination".into()));
        }
        Ok(())
    }
}

fn check_subgroup(ctx: &SmoothPrimeContext, bound: &Exponent) -> Result<()> {
    if ctx.subgroup_order() < bound.to_biguint() {
        return Err(Error::Precondition(format!(
            "the subgroup of order 2^{} cannot separate exponents below {bound}",
            ctx.k()
        )));
    }
    Ok(())
}

fn univariate_only<B: BlackBox>(bb: &B) -> Result<()> {
    if bb.nvars() != 1 {
        return Err(Error::Arity { expected: 1, found: bb.nvars() });
    }
    Ok(())
}

/// Interpolation over the field of `ctx` with exactly `2T` probes at
/// `1, ω, ..., ω^(2T-1)`.
pub fn interpolate_prony<B: BlackBox>(bb: &B, ctx: &SmoothPrimeContext, cfg: &InterpConfig) -> Result<SparsePoly> {
    cfg.validate()?;
    let t = cfg.term_bound.ok_or_else(|| Error::Precondition("a term bound is required".into()))?;
    check_subgroup(ctx, &cfg.degree_bound)?;
    univariate_only(bb)?;
    let seq = bb.eval_powers(std::slice::from_ref(ctx.omega()), 0, 2 * t, ctx.p())?;
    let lambda = berlekamp_massey(&seq, ctx.p());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    recover(ctx, cfg, &seq, &lambda, &mut rng)
}

/// Interpolation that stops once the recurrence has stayed unchanged for
/// `stability_window` probe pairs, for about `2t + 2λ` probes in total.
pub fn interpolate_early_termination<B: BlackBox>(
    bb: &B,
    ctx: &SmoothPrimeContext,
    cfg: &InterpConfig,
) -> Result<SparsePoly> {
    cfg.validate()?;
    check_subgroup(ctx, &cfg.degree_bound)?;
    univariate_only(bb)?;
    let cap = cfg.term_bound.map_or(cfg.max_probes, |t| 2 * t);
    let mut bm = BerlekampMassey::new(ctx.p().clone());
    let mut stable = 0;
    let mut n = 0usize;
    while n < cap {
        let step = 2.min(cap - n);
        let vals = bb.eval_powers(std::slice::from_ref(ctx.omega()), n as u64, step, ctx.p())?;
        let mut changed = false;
        for v in vals {
            changed |= bm.push(v);
        }
        n += step;
        stable = if changed { 0 } else { stable + 1 };
        if stable >= cfg.stability_window && n >= 2 * bm.len() {
            break;
        }
    }
    let lambda = bm.minpoly();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    recover(ctx, cfg, bm.seq(), &lambda, &mut rng)
}

fn recover(
    ctx: &SmoothPrimeContext,
    cfg: &InterpConfig,
    seq: &[BigInt],
    lambda: &DensePoly,
    rng: &mut ChaCha8Rng,
) -> Result<SparsePoly> {
    let t = lambda.deg().unwrap_or(0);
    if cfg.term_bound.is_some_and(|bound| t > bound) || 2 * t > seq.len() {
        return Err(Error::NonSplit);
    }
    let roots = find_roots_subgroup(lambda, ctx, cfg.max_root_retries, rng)?;
    let exps = par::try_map(&roots, |r| {
        let e = Exponent::from(discrete_log_pow2(ctx, r)?);
        if e >= cfg.degree_bound {
            return Err(Error::ExponentOutOfRange { exponent: e.to_string(), bound: cfg.degree_bound.to_string() });
        }
        Ok(e)
    })?;
    let coeffs = solve_transposed_vandermonde(&roots, &seq[..t], ctx.p())?;
    let terms = coeffs.into_iter().zip(exps).map(|(c, e)| Term { coeff: c, exps: Monomial::univariate(e) }).collect();
    SparsePoly::canonicalize(terms, 1, ctx.field())
}

/// Interpolation of an integer polynomial from evaluations modulo primes of
/// our choosing.
///
/// The support comes from one smooth prime with `2^k >= D`; coefficients are
/// then recovered modulo further ordinary primes, where the known support
/// turns each step into a Vandermonde solve with `t` probes, and combined by
/// Chinese remaindering until the modulus reaches `2H + 1`.
pub fn interpolate_integer<B: BlackBox>(bb: &B, cfg: &InterpConfig) -> Result<SparsePoly> {
    cfg.validate()?;
    univariate_only(bb)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let min_subgroup = cfg.degree_bound.to_biguint().max(BigUint::from(2u32));
    let min_modulus = BigUint::one() << (cfg.support_prime_bits.max(2) - 1);
    let mut attempt = 0;
    loop {
        attempt += 1;
        let ctx = find_smooth_prime(&min_subgroup, &min_modulus, &mut rng)?;
        let sub_cfg = InterpConfig { seed: rng.gen(), ..cfg.clone() };
        let modular = if cfg.early_termination {
            interpolate_early_termination(bb, &ctx, &sub_cfg)?
        } else {
            interpolate_prony(bb, &ctx, &sub_cfg)?
        };
        let p = ctx.p().magnitude().clone();
        let height = cfg.height_bound.clone().unwrap_or_else(|| (&p - 1u32) >> 1u32);
        let candidate = lift_coefficients(bb, &modular, &height, cfg, &mut rng)?;
        let p_may_drop_terms = p <= height;
        if !p_may_drop_terms && cfg.verify_trials == 0 {
            return Ok(candidate);
        }
        if verify(&candidate, bb, cfg.verify_trials.max(1), &mut rng)? {
            return Ok(candidate);
        }
        if !p_may_drop_terms || attempt >= cfg.max_prime_retries {
            return Err(Error::HeightBound(
                "the recovered polynomial disagrees with the black box; a bound is violated".into(),
            ));
        }
    }
}

fn lift_coefficients<B: BlackBox>(
    bb: &B,
    modular: &SparsePoly,
    height: &BigUint,
    cfg: &InterpConfig,
    rng: &mut ChaCha8Rng,
) -> Result<SparsePoly> {
    let p = modular.ring().modulus().expect("field image").clone();
    let exps: Vec<Exponent> = modular.terms().iter().map(|t| t.exps[0].clone()).collect();
    let mut residues: Vec<BigInt> = modular.terms().iter().map(|t| t.coeff.clone()).collect();
    let mut modulus = p.clone();
    let target = biguint_to_bigint(&(height * 2u32 + 1u32));
    let mut used = vec![p];
    while !exps.is_empty() && modulus < target {
        let q = biguint_to_bigint(&random_prime(cfg.crt_prime_bits, rng)?);
        if used.contains(&q) {
            continue;
        }
        let Some(points) = distinct_powers(&exps, &q, rng) else {
            continue;
        };
        used.push(q.clone());
        let (theta, rs) = points;
        let vals = bb.eval_powers(std::slice::from_ref(&theta), 0, exps.len(), &q)?;
        let cq = solve_transposed_vandermonde(&rs, &vals, &q)?;
        for (r, c) in residues.iter_mut().zip(cq) {
            *r = crt_pair(r, &modulus, &c, &q);
        }
        modulus *= &q;
    }
    let h = biguint_to_bigint(height);
    let mut terms = Vec::with_capacity(exps.len());
    for (c, e) in residues.iter().zip(exps) {
        let c = symmetric_mod(c, &modulus);
        if c.magnitude() > height {
            return Err(Error::HeightBound(format!("recovered coefficient {c} exceeds the height bound {h}")));
        }
        terms.push(Term { coeff: c, exps: Monomial::univariate(e) });
    }
    SparsePoly::canonicalize(terms, 1, Ring::Integers)
}

/// A base `θ` whose powers `θ^(e_i) mod q` are nonzero and pairwise distinct.
fn distinct_powers(exps: &[Exponent], q: &BigInt, rng: &mut ChaCha8Rng) -> Option<(BigInt, Vec<BigInt>)> {
    let two = BigInt::from(2);
    for _ in 0..16 {
        let theta = rng.gen_bigint_range(&two, &(q - 1));
        let rs: Vec<BigInt> = par::map(exps, |e| pow_mod(&theta, e, q));
        let mut sorted = rs.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() == rs.len() && !sorted[0].is_zero() {
            return Some((theta, rs));
        }
    }
    None
}

/// Interpolation of an `n`-variate integer polynomial with every partial
/// degree below `cfg.degree_bound`, through the univariate image with
/// degree bound `D^n`.
pub fn interpolate_multivariate<B: BlackBox>(bb: &B, cfg: &InterpConfig) -> Result<SparsePoly> {
    let n = bb.nvars();
    if n == 0 {
        return Err(Error::Precondition("at least one variable is required".into()));
    }
    let d = cfg.degree_bound.clone();
    let packed_bound = Exponent::from(num_traits::pow(d.to_biguint(), n));
    let packed_cfg = InterpConfig { degree_bound: packed_bound, ..cfg.clone() };
    let g = interpolate_integer(&KroneckerOracle::new(bb, d.clone()), &packed_cfg)?;
    kronecker_unpack(&g, &d, n)
}

/// Interpolation over `ring`, for any number of variables.
///
/// Over the integers this is [`interpolate_integer`] (through the Kronecker
/// image when there are several variables). Over a prime field the prime
/// must be of the form `c·2^k + 1` with `2^k` at least the (packed) degree
/// bound; with `verify_trials > 0` the result is checked against the black
/// box before it is returned.
pub fn interpolate<B: BlackBox>(bb: &B, ring: &Ring, cfg: &InterpConfig) -> Result<SparsePoly> {
    let n = bb.nvars();
    if n == 0 {
        return Err(Error::Precondition("at least one variable is required".into()));
    }
    let p = match ring {
        Ring::Integers if n == 1 => return interpolate_integer(bb, cfg),
        Ring::Integers => return interpolate_multivariate(bb, cfg),
        Ring::PrimeField(p) => p,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let ctx = SmoothPrimeContext::from_prime(p.magnitude(), &mut rng)?;
    let result = if n == 1 {
        field_run(bb, &ctx, cfg)?
    } else {
        let d = cfg.degree_bound.clone();
        let packed = Exponent::from(num_traits::pow(d.to_biguint(), n));
        let packed_cfg = InterpConfig { degree_bound: packed, ..cfg.clone() };
        let image = field_run(&KroneckerOracle::new(bb, d.clone()), &ctx, &packed_cfg)?;
        kronecker_unpack(&image, &d, n)?
    };
    if cfg.verify_trials > 0 && !verify(&result, bb, cfg.verify_trials, &mut rng)? {
        return Err(Error::Oracle("the interpolant disagrees with the black box".into()));
    }
    Ok(result)
}

fn field_run<B: BlackBox>(bb: &B, ctx: &SmoothPrimeContext, cfg: &InterpConfig) -> Result<SparsePoly> {
    if cfg.early_termination {
        interpolate_early_termination(bb, ctx, cfg)
    } else {
        interpolate_prony(bb, ctx, cfg)
    }
}

/// Monte Carlo identity test of `candidate` against the black box.
///
/// Integer candidates are compared modulo a fresh 62-bit prime per trial,
/// prime-field candidates modulo their own prime, at uniformly random
/// points. A discrepancy of total degree below `D` escapes one trial with
/// probability at most `D/p`.
pub fn verify<B: BlackBox, R: Rng + ?Sized>(
    candidate: &SparsePoly,
    bb: &B,
    trials: usize,
    rng: &mut R,
) -> Result<bool> {
    if candidate.nvars() != bb.nvars() {
        return Err(Error::Arity { expected: bb.nvars(), found: candidate.nvars() });
    }
    let mut plans = Vec::with_capacity(trials);
    for _ in 0..trials {
        let p = match candidate.ring() {
            Ring::Integers => biguint_to_bigint(&random_prime(62, rng)?),
            Ring::PrimeField(p) => p.clone(),
        };
        let point: Vec<BigInt> = (0..bb.nvars()).map(|_| rng.gen_bigint_range(&BigInt::zero(), &p)).collect();
        plans.push((p, point));
    }
    let agree = par::try_map(&plans, |(p, point)| {
        let image = candidate.change_ring(&Ring::PrimeField(p.clone()))?;
        let mine = eval(&image, point)?;
        Ok::<_, Error>(mine == bb.eval_mod(point, p)?.mod_floor(p))
    })?;
    Ok(agree.into_iter().all(|a| a))
}
