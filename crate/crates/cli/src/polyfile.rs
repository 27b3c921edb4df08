//! The `.sp` text format:
//!
//! ```text
//! sp 1
//! ring Z            (or: ring Zp <p>)
//! nvars <n>
//! terms <t>
//! <coeff> <e1> ... <en>     (t lines)
//! ```
//!
//! Reading canonicalizes; writing emits terms from the leading one down.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use sparsepoly::{Exponent, Monomial, Ring, SparsePoly, Term};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Poly(#[from] sparsepoly::Error),
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

pub fn parse(text: &str) -> Result<SparsePoly, FormatError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.split_whitespace().collect::<Vec<_>>()));
    let mut header = |want: &str| -> Result<(usize, Vec<&str>), FormatError> {
        let (n, words) = lines.next().ok_or_else(|| syntax(0, format!("missing `{want}` line")))?;
        if words.first() != Some(&want) {
            return Err(syntax(n, format!("expected `{want}`")));
        }
        Ok((n, words[1..].to_vec()))
    };
    let (n, v) = header("sp")?;
    if v != ["1"] {
        return Err(syntax(n, "unsupported version"));
    }
    let (n, r) = header("ring")?;
    let ring = match r.as_slice() {
        ["Z"] => Ring::Integers,
        ["Zp", p] => Ring::prime_field(BigInt::from_str(p).map_err(|_| syntax(n, "bad modulus"))?)?,
        _ => return Err(syntax(n, "ring must be `Z` or `Zp <p>`")),
    };
    let (n, v) = header("nvars")?;
    let nvars: usize =
        v.first().and_then(|s| s.parse().ok()).filter(|_| v.len() == 1).ok_or_else(|| syntax(n, "bad nvars"))?;
    let (n, v) = header("terms")?;
    let t: usize =
        v.first().and_then(|s| s.parse().ok()).filter(|_| v.len() == 1).ok_or_else(|| syntax(n, "bad term count"))?;
    let mut raw = Vec::with_capacity(t);
    for _ in 0..t {
        let (n, words) = lines.next().ok_or_else(|| syntax(0, format!("expected {t} term lines")))?;
        if words.len() != nvars + 1 {
            return Err(syntax(n, format!("expected a coefficient and {nvars} exponents")));
        }
        let coeff = BigInt::from_str(words[0]).map_err(|_| syntax(n, "bad coefficient"))?;
        let exps = words[1..]
            .iter()
            .map(|w| Exponent::from_str(w).map_err(|_| syntax(n, "bad exponent")))
            .collect::<Result<Vec<_>, _>>()?;
        raw.push(Term { coeff, exps: Monomial::new(exps) });
    }
    if let Some((n, words)) = lines.find(|(_, w)| !w.is_empty()) {
        return Err(syntax(n, format!("unexpected trailing content `{}`", words.join(" "))));
    }
    Ok(SparsePoly::canonicalize(raw, nvars, ring)?)
}

pub fn write(f: &SparsePoly) -> String {
    let mut out = String::new();
    out.push_str("sp 1\n");
    match f.ring() {
        Ring::Integers => out.push_str("ring Z\n"),
        Ring::PrimeField(p) => writeln!(out, "ring Zp {p}").unwrap(),
    }
    writeln!(out, "nvars {}", f.nvars()).unwrap();
    writeln!(out, "terms {}", f.len()).unwrap();
    for t in f.terms().iter().rev() {
        out.push_str(&t.coeff.to_string());
        for e in t.exps.exps() {
            write!(out, " {e}").unwrap();
        }
        out.push('\n');
    }
    out
}
