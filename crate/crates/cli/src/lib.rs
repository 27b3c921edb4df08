//! Command-line adapters over the `sparsepoly` library.
//!
//! Every subcommand reads `.sp` files (see [`polyfile`]), calls one library
//! function and writes the result to `-o <file>` or standard output.

pub mod bench;
pub mod polyfile;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sparsepoly::arith::{self, ArithStats, DividesOptions, DEFAULT_DIVIDES_DENSE_BUDGET};
use sparsepoly::factor;
use sparsepoly::interp::{self, InterpConfig, ProbeCountingOracle};
use sparsepoly::poly::{self, DEFAULT_DENSE_BUDGET};
use sparsepoly::{Exponent, Ring, SparsePoly};

/// Environment override for the dense conversion budget of `divides`.
pub const DENSE_BUDGET_ENV: &str = "SPARSEPOLY_DENSE_BUDGET";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] sparsepoly::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "sparsepoly", version, about = "Exact arithmetic on supersparse polynomials")]
struct Cli {
    /// Write the result here instead of standard output.
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,
    /// Print counters as key=value lines on standard error.
    #[arg(long, global = true)]
    stats: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    Add(Pair),
    Sub(Pair),
    Mul {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_enum, default_value_t = MulAlgo::Heap)]
        algo: MulAlgo,
    },
    /// Quotient to the output, remainder to --rem (or standard output).
    Divmod {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        rem: Option<PathBuf>,
        /// Pseudo-division by a non-unit leading coefficient over Z.
        #[arg(long)]
        pseudo: bool,
    },
    /// Prints `true` when the second polynomial divides the first.
    Divides {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_parser = parse_u64)]
        dense_budget: Option<u64>,
    },
    Eval {
        f: PathBuf,
        /// Comma-separated coordinates.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long = "mod", value_parser = parse_bigint)]
        modulus: Option<BigInt>,
    },
    /// `f(h) mod g`.
    Evalmod {
        f: PathBuf,
        #[arg(long)]
        h: PathBuf,
        #[arg(long)]
        g: PathBuf,
    },
    Pack {
        f: PathBuf,
        #[arg(long, value_parser = parse_exponent)]
        bound: Exponent,
    },
    Unpack {
        f: PathBuf,
        #[arg(long, value_parser = parse_exponent)]
        bound: Exponent,
        #[arg(long)]
        nvars: usize,
    },
    Interp(InterpArgs),
    Gapsplit {
        f: PathBuf,
        #[arg(long, value_parser = parse_exponent)]
        gamma: Option<Exponent>,
    },
    /// Rational roots `a/b`, one per line.
    RootsLinear {
        f: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    PerfectPower {
        f: PathBuf,
        #[arg(long, default_value_t = 0.999_999)]
        confidence: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Prints `true` when f = g^k.
    CertifyPower {
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long, value_parser = parse_u64)]
        k: u64,
    },
    /// One CSV row of counters per trial.
    Bench {
        op: String,
        #[arg(long, default_value_t = 100)]
        terms: usize,
        #[arg(long, default_value_t = 60)]
        degbits: u64,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
struct Pair {
    a: PathBuf,
    b: PathBuf,
}

#[derive(Args, Debug)]
struct InterpArgs {
    /// Reference polynomial answering the probes.
    #[arg(long)]
    oracle: PathBuf,
    #[arg(long = "T", value_parser = parse_usize)]
    term_bound: Option<usize>,
    #[arg(long = "D", value_parser = parse_exponent)]
    degree_bound: Exponent,
    #[arg(long = "H", value_parser = parse_biguint)]
    height_bound: Option<BigUint>,
    #[arg(long)]
    early: bool,
    #[arg(long, default_value_t = 0)]
    verify: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MulAlgo {
    Heap,
    Naive,
    Kronecker,
}

/// Accepts a decimal natural or `b^k`.
pub fn parse_biguint(s: &str) -> std::result::Result<BigUint, String> {
    let bad = || format!("`{s}` is not a natural number or b^k");
    match s.split_once('^') {
        Some((b, k)) => {
            let b = BigUint::from_str(b.trim()).map_err(|_| bad())?;
            let k: u32 = k.trim().parse().map_err(|_| bad())?;
            Ok(num_traits::pow(b, k as usize))
        }
        None => BigUint::from_str(s.trim()).map_err(|_| bad()),
    }
}

fn parse_bigint(s: &str) -> std::result::Result<BigInt, String> {
    match s.strip_prefix('-') {
        Some(rest) => parse_biguint(rest).map(|n| -BigInt::from(n)),
        None => parse_biguint(s).map(BigInt::from),
    }
}

fn parse_exponent(s: &str) -> std::result::Result<Exponent, String> {
    parse_biguint(s).map(Exponent::from_biguint)
}

fn parse_u64(s: &str) -> std::result::Result<u64, String> {
    let n = parse_biguint(s)?;
    u64::try_from(&n).map_err(|_| format!("`{s}` does not fit in 64 bits"))
}

fn parse_usize(s: &str) -> std::result::Result<usize, String> {
    parse_u64(s).and_then(|n| usize::try_from(n).map_err(|e| e.to_string()))
}

fn read_poly(path: &Path) -> CliResult<SparsePoly> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    polyfile::parse(&text).map_err(|e| match e {
        polyfile::FormatError::Poly(e) => CliError::Domain(e),
        e => CliError::Usage(format!("{}: {e}", path.display())),
    })
}

fn write_to(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

struct Session {
    output: Option<PathBuf>,
    stats: bool,
    counters: Vec<(String, String)>,
}

impl Session {
    fn emit(&self, text: &str) -> CliResult<()> {
        match &self.output {
            Some(p) => write_to(p, text),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| CliError::Usage(e.to_string()))
            }
        }
    }

    fn stat(&mut self, key: &str, value: impl ToString) {
        self.counters.push((key.to_string(), value.to_string()));
    }

    fn arith(&mut self, st: &ArithStats) {
        self.stat("ring_ops", st.ring_ops);
        self.stat("comparisons", st.comparisons);
        self.stat("peak_heap", st.peak_heap);
        self.stat("out_terms", st.out_terms);
        if st.quadratic_path {
            self.stat("quadratic_path", true);
        }
    }

    fn flush_stats(&self) {
        if self.stats {
            let mut err = std::io::stderr().lock();
            for (k, v) in &self.counters {
                let _ = writeln!(err, "{k}={v}");
            }
        }
    }
}

fn dense_budget(flag: Option<u64>) -> CliResult<u64> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(DENSE_BUDGET_ENV) {
        Ok(v) => parse_u64(&v).map_err(|e| CliError::Usage(format!("{DENSE_BUDGET_ENV}: {e}"))),
        Err(_) => Ok(DEFAULT_DIVIDES_DENSE_BUDGET),
    }
}

fn execute(cmd: Cmd, s: &mut Session) -> CliResult<()> {
    match cmd {
        Cmd::Add(p) => {
            let (a, b) = (read_poly(&p.a)?, read_poly(&p.b)?);
            let (h, st) = arith::add_with_stats(&a, &b)?;
            s.arith(&st);
            s.emit(&polyfile::write(&h))
        }
        Cmd::Sub(p) => {
            let (a, b) = (read_poly(&p.a)?, read_poly(&p.b)?);
            s.emit(&polyfile::write(&arith::sub(&a, &b)?))
        }
        Cmd::Mul { pair, algo } => {
            let (a, b) = (read_poly(&pair.a)?, read_poly(&pair.b)?);
            let (h, st) = match algo {
                MulAlgo::Heap => arith::mul_heap(&a, &b)?,
                MulAlgo::Naive => arith::mul_naive(&a, &b)?,
                MulAlgo::Kronecker => arith::mul_kronecker(&a, &b)?,
            };
            s.arith(&st);
            s.emit(&polyfile::write(&h))
        }
        Cmd::Divmod { pair, rem, pseudo } => {
            let (f, g) = (read_poly(&pair.a)?, read_poly(&pair.b)?);
            let (q, r) = if pseudo {
                let pd = arith::pseudo_divmod_heap(&f, &g)?;
                s.arith(&pd.stats);
                s.stat("delta", pd.delta);
                s.stat("multiplier", &pd.multiplier);
                (pd.quotient, pd.remainder)
            } else {
                let (q, r, st) = arith::divmod_heap(&f, &g)?;
                s.arith(&st);
                (q, r)
            };
            match (rem, &s.output) {
                (Some(path), _) => {
                    write_to(&path, &polyfile::write(&r))?;
                    s.emit(&polyfile::write(&q))
                }
                (None, Some(_)) => {
                    s.emit(&polyfile::write(&q))?;
                    Session { output: None, stats: false, counters: vec![] }.emit(&polyfile::write(&r))
                }
                (None, None) => s.emit(&(polyfile::write(&q) + &polyfile::write(&r))),
            }
        }
        Cmd::Divides { pair, dense_budget: flag } => {
            let (f, g) = (read_poly(&pair.a)?, read_poly(&pair.b)?);
            let opts = DividesOptions { dense_budget: dense_budget(flag)?, ..DividesOptions::default() };
            let (yes, st) = arith::divides_with(&f, &g, &opts)?;
            s.arith(&st);
            s.emit(&format!("{yes}\n"))
        }
        Cmd::Eval { f, point, modulus } => {
            let mut f = read_poly(&f)?;
            if let Some(p) = modulus {
                f = f.change_ring(&Ring::prime_field(p)?)?;
            }
            let point = point
                .split(',')
                .filter(|w| !w.trim().is_empty())
                .map(|w| parse_bigint(w.trim()).map_err(CliError::Usage))
                .collect::<CliResult<Vec<_>>>()?;
            s.emit(&format!("{}\n", poly::eval(&f, &point)?))
        }
        Cmd::Evalmod { f, h, g } => {
            let f = read_poly(&f)?;
            let h = poly::to_dense(&read_poly(&h)?, DEFAULT_DENSE_BUDGET)?;
            let g = poly::to_dense(&read_poly(&g)?, DEFAULT_DENSE_BUDGET)?;
            s.emit(&polyfile::write(&poly::from_dense(&poly::eval_mod(&f, &h, &g)?)))
        }
        Cmd::Pack { f, bound } => s.emit(&polyfile::write(&poly::kronecker_pack(&read_poly(&f)?, &bound)?)),
        Cmd::Unpack { f, bound, nvars } => {
            s.emit(&polyfile::write(&poly::kronecker_unpack(&read_poly(&f)?, &bound, nvars)?))
        }
        Cmd::Interp(a) => {
            let f = read_poly(&a.oracle)?;
            let ring = f.ring().clone();
            let bb = ProbeCountingOracle::from_poly(f);
            let mut cfg = InterpConfig::new(a.term_bound, a.degree_bound);
            cfg.height_bound = a.height_bound;
            cfg.early_termination = a.early;
            cfg.verify_trials = a.verify;
            cfg.seed = a.seed;
            let res = interp::interpolate(&bb, &ring, &cfg);
            s.stat("probes", bb.probes());
            let h = res?;
            s.stat("terms", h.len());
            s.emit(&polyfile::write(&h))
        }
        Cmd::Gapsplit { f, gamma } => {
            let f = read_poly(&f)?;
            let gamma = gamma.unwrap_or_else(|| factor::default_gap(&f));
            let split = factor::gap_split(&f, &gamma)?;
            s.stat("blocks", split.blocks.len());
            let mut out = format!("gamma {}\nblocks {}\n", split.gap_threshold, split.blocks.len());
            for (block, shift) in &split.blocks {
                writeln!(out, "shift {shift}").unwrap();
                out.push_str(&polyfile::write(block));
            }
            s.emit(&out)
        }
        Cmd::RootsLinear { f, seed } => {
            let f = read_poly(&f)?;
            let roots = factor::linear_rational_factors(&f, &mut ChaCha8Rng::seed_from_u64(seed))?;
            s.stat("roots", roots.len());
            let mut out = String::new();
            for (a, b) in roots {
                if b.is_one() {
                    writeln!(out, "{a}").unwrap();
                } else {
                    writeln!(out, "{a}/{b}").unwrap();
                }
            }
            s.emit(&out)
        }
        Cmd::PerfectPower { f, confidence, seed } => {
            if !(0.0..1.0).contains(&confidence) {
                return Err(CliError::Usage("--confidence must lie in [0, 1)".into()));
            }
            let f = read_poly(&f)?;
            let rep = factor::detect_perfect_power(&f, confidence, &mut ChaCha8Rng::seed_from_u64(seed))?;
            s.stat("witnesses", rep.witnesses.len());
            s.emit(&format!("k {}\nconfidence {}\ncontent {}\n", rep.k, rep.confidence, rep.content))
        }
        Cmd::CertifyPower { f, g, k } => {
            let (f, g) = (read_poly(&f)?, read_poly(&g)?);
            s.emit(&format!("{}\n", factor::certify_power(&f, &g, k)?))
        }
        Cmd::Bench { op, terms, degbits, trials, seed } => {
            let rows = bench::run(&op, terms, degbits, trials, seed).map_err(CliError::Usage)?;
            let mut w = csv::Writer::from_writer(Vec::new());
            let csv_err = |e: csv::Error| CliError::Usage(e.to_string());
            w.write_record(bench::HEADER).map_err(csv_err)?;
            for r in &rows {
                w.write_record(r.fields()).map_err(csv_err)?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
            s.emit(&String::from_utf8(bytes).expect("csv output is ASCII"))
        }
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// code: 0 on success, 1 on a domain error, 2 on a usage error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let mut session = Session { output: cli.output, stats: cli.stats, counters: Vec::new() };
    let res = execute(cli.cmd, &mut session);
    session.flush_stats();
    match res {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e.to_string().replace('\n', " "));
            e.exit_code()
        }
    }
}
