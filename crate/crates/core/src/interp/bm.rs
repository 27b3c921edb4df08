use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::poly::DensePoly;
use crate::ring::{inv_mod, Ring};

/// Incremental Berlekamp-Massey over `Z_p`.
#[derive(Clone, Debug)]
pub struct BerlekampMassey {
    p: BigInt,
    seq: Vec<BigInt>,
    conn: Vec<BigInt>,
    prev: Vec<BigInt>,
    len: usize,
    shift: usize,
    prev_disc: BigInt,
}

impl BerlekampMassey {
    pub fn new(p: BigInt) -> Self {
        BerlekampMassey {
            p,
            seq: Vec::new(),
            conn: vec![BigInt::one()],
            prev: vec![BigInt::one()],
            len: 0,
            shift: 1,
            prev_disc: BigInt::one(),
        }
    }

    /// Linear complexity of the sequence so far.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn seq(&self) -> &[BigInt] {
        &self.seq
    }

    /// Appends one element; returns whether the recurrence changed.
    pub fn push(&mut self, s: BigInt) -> bool {
        let p = &self.p;
        let n = self.seq.len();
        self.seq.push(s.mod_floor(p));
        let mut d = BigInt::zero();
        for (i, c) in self.conn.iter().enumerate().take(self.len + 1) {
            d += c * &self.seq[n - i];
        }
        let d = d.mod_floor(p);
        if d.is_zero() {
            self.shift += 1;
            return false;
        }
        let coef = (&d * inv_mod(&self.prev_disc, p).expect("nonzero discrepancy")) % p;
        let old = self.conn.clone();
        if self.conn.len() < self.prev.len() + self.shift {
            self.conn.resize(self.prev.len() + self.shift, BigInt::zero());
        }
        for (i, b) in self.prev.iter().enumerate() {
            let slot = &mut self.conn[i + self.shift];
            *slot = (&*slot - &coef * b).mod_floor(p);
        }
        if 2 * self.len <= n {
            self.len = n + 1 - self.len;
            self.prev = old;
            self.prev_disc = d;
            self.shift = 1;
        } else {
            self.shift += 1;
        }
        true
    }

    /// Monic minimal polynomial `Λ(z) = z^L · C(1/z)` of the recurrence.
    pub fn minpoly(&self) -> DensePoly {
        let mut coeffs = vec![BigInt::zero(); self.len + 1];
        for (i, c) in self.conn.iter().enumerate().take(self.len + 1) {
            coeffs[self.len - i] = c.clone();
        }
        DensePoly::new(Ring::PrimeField(self.p.clone()), coeffs)
    }
}

/// Minimal polynomial of the shortest linear recurrence generating `seq`
/// modulo the prime `p`.
pub fn berlekamp_massey(seq: &[BigInt], p: &BigInt) -> DensePoly {
    let mut bm = BerlekampMassey::new(p.clone());
    for s in seq {
        bm.push(s.clone());
    }
    bm.minpoly()
}
