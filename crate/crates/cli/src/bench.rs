//! `bench` subcommand: one CSV row of operation counters per trial.

use std::time::Instant;

use num_bigint::{BigUint, RandBigInt};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sparsepoly::arith::{divides_with, divmod_heap, mul_heap, mul_kronecker, mul_naive, ArithStats, DividesOptions};
use sparsepoly::interp::{interpolate, InterpConfig, ProbeCountingOracle};
use sparsepoly::{par, Exponent, Monomial, Ring, SparsePoly, Term};

pub const HEADER: [&str; 11] = [
    "operation",
    "t_f",
    "t_g",
    "t_out",
    "log2_degree_bound",
    "ring_ops",
    "comparisons",
    "peak_heap",
    "probes",
    "wall_nanoseconds",
    "seed",
];

pub const OPERATIONS: [&str; 7] = ["mul", "mul-naive", "mul-kronecker", "divmod", "divides", "interp", "interp-early"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRecord {
    pub operation: String,
    pub t_f: usize,
    pub t_g: usize,
    pub t_out: usize,
    pub log2_degree_bound: u64,
    pub ring_ops: u64,
    pub comparisons: u64,
    pub peak_heap: usize,
    pub probes: u64,
    pub wall_nanoseconds: u128,
    pub seed: u64,
}

impl BenchRecord {
    pub fn fields(&self) -> [String; 11] {
        [
            self.operation.clone(),
            self.t_f.to_string(),
            self.t_g.to_string(),
            self.t_out.to_string(),
            self.log2_degree_bound.to_string(),
            self.ring_ops.to_string(),
            self.comparisons.to_string(),
            self.peak_heap.to_string(),
            self.probes.to_string(),
            self.wall_nanoseconds.to_string(),
            self.seed.to_string(),
        ]
    }
}

/// Random univariate integer polynomial with up to `t` terms, exponents
/// below `2^degbits` and coefficients in `[-2^20, 2^20]`.
pub fn random_poly(rng: &mut impl Rng, t: usize, degbits: u64) -> SparsePoly {
    let terms = (0..t)
        .map(|_| {
            let mut c: i64 = rng.gen_range(-(1 << 20)..=(1 << 20));
            if c == 0 {
                c = 1;
            }
            Term::new(c, Monomial::univariate(Exponent::from(rng.gen_biguint(degbits))))
        })
        .collect();
    SparsePoly::canonicalize(terms, 1, Ring::Integers).expect("univariate terms")
}

/// Runs `trials` independent trials, concurrently, seeded `seed + i`.
pub fn run(op: &str, terms: usize, degbits: u64, trials: usize, seed: u64) -> Result<Vec<BenchRecord>, String> {
    if !OPERATIONS.contains(&op) {
        return Err(format!("unknown bench operation `{op}` (one of {})", OPERATIONS.join(", ")));
    }
    if degbits == 0 {
        return Err("--degbits must be at least 1".into());
    }
    let rows = par::map_range(trials, |i| trial(op, terms, degbits, seed.wrapping_add(i as u64)));
    rows.into_iter().collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())
}

fn trial(op: &str, terms: usize, degbits: u64, seed: u64) -> sparsepoly::Result<BenchRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rec = BenchRecord {
        operation: op.to_string(),
        t_f: 0,
        t_g: 0,
        t_out: 0,
        log2_degree_bound: degbits,
        ring_ops: 0,
        comparisons: 0,
        peak_heap: 0,
        probes: 0,
        wall_nanoseconds: 0,
        seed,
    };
    let absorb = |rec: &mut BenchRecord, st: &ArithStats| {
        rec.ring_ops = st.ring_ops;
        rec.comparisons = st.comparisons;
        rec.peak_heap = st.peak_heap;
    };
    match op {
        "mul" | "mul-naive" | "mul-kronecker" => {
            let f = random_poly(&mut rng, terms, degbits);
            let g = random_poly(&mut rng, terms, degbits);
            let start = Instant::now();
            let (h, st) = match op {
                "mul" => mul_heap(&f, &g)?,
                "mul-naive" => mul_naive(&f, &g)?,
                _ => mul_kronecker(&f, &g)?,
            };
            rec.wall_nanoseconds = start.elapsed().as_nanos();
            (rec.t_f, rec.t_g, rec.t_out) = (f.len(), g.len(), h.len());
            absorb(&mut rec, &st);
        }
        "divmod" => {
            let q = random_poly(&mut rng, terms, degbits);
            let g = monic(random_poly(&mut rng, terms, degbits));
            let f = mul_heap(&q, &g)?.0;
            let start = Instant::now();
            let (q2, r, st) = divmod_heap(&f, &g)?;
            rec.wall_nanoseconds = start.elapsed().as_nanos();
            (rec.t_f, rec.t_g, rec.t_out) = (f.len(), g.len(), q2.len() + r.len());
            absorb(&mut rec, &st);
        }
        "divides" => {
            let g = monic(random_poly(&mut rng, 8, 5));
            let s = random_poly(&mut rng, terms, degbits);
            let f = mul_heap(&g, &s)?.0;
            let start = Instant::now();
            let (yes, st) = divides_with(&f, &g, &DividesOptions::default())?;
            rec.wall_nanoseconds = start.elapsed().as_nanos();
            debug_assert!(yes);
            (rec.t_f, rec.t_g, rec.t_out) = (f.len(), g.len(), usize::from(yes));
            absorb(&mut rec, &st);
        }
        _ => {
            let f = random_poly(&mut rng, terms, degbits);
            let bb = ProbeCountingOracle::from_poly(f.clone());
            let mut cfg = InterpConfig::new(Some(terms.max(1)), Exponent::pow2(degbits as u32));
            cfg.height_bound = Some(BigUint::from(1u32 << 20));
            cfg.early_termination = op == "interp-early";
            cfg.seed = seed;
            let start = Instant::now();
            let h = interpolate(&bb, &Ring::Integers, &cfg)?;
            rec.wall_nanoseconds = start.elapsed().as_nanos();
            (rec.t_f, rec.t_out, rec.probes) = (f.len(), h.len(), bb.probes());
        }
    }
    Ok(rec)
}

fn monic(g: SparsePoly) -> SparsePoly {
    let mut terms = g.into_terms();
    if let Some(t) = terms.last_mut() {
        t.coeff = 1.into();
    } else {
        terms.push(Term::new(1, Monomial::univariate(0u64)));
    }
    SparsePoly::canonicalize(terms, 1, Ring::Integers).expect("univariate terms")
}
