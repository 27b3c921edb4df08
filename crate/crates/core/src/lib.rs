//! Arithmetic, interpolation and factorization fragments for supersparse
//! polynomials: polynomials with few terms whose degrees may be far too
//! large to write down densely.
//!
//! Exponents are arbitrary precision, coefficients live in the integers or
//! a prime field, and every cost-sensitive routine reports operation
//! counters alongside its result.

pub mod arith;
pub mod error;
pub mod exponent;
pub mod factor;
pub mod interp;
pub mod par;
pub mod poly;
pub mod ring;

pub use error::{Error, Result};
pub use exponent::{Exponent, Monomial};
pub use poly::{Degree, DensePoly, SparsePoly, Term};
pub use ring::{Ring, SmoothPrimeContext};
