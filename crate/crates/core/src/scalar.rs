//! Scalar field abstraction used by points of `Max B` and by thin
//! representations.
//!
//! Everything that evaluates monomials or rescales arrows is generic over
//! [`Scalar`]. The crate root re-exports concrete aliases for the exact
//! rational instantiation (the one the CLI and the locus predicates use) and
//! for `f64`, which is convenient for layout and quick numerical checks but
//! decides vanishing by exact comparison with zero.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Num;

/// A field element usable as the value of an arrow or a matching variable.
pub trait Scalar: Num + Clone + fmt::Debug + fmt::Display + PartialEq + Send + Sync + 'static {}

impl<T> Scalar for T where T: Num + Clone + fmt::Debug + fmt::Display + PartialEq + Send + Sync + 'static {}

/// Parses `"3/2"`, `"-7"` or `"0"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Renders a rational the way [`parse_rational`] reads it back.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Integer power by repeated squaring; `Num` does not provide one.
pub fn pow<T: Scalar>(base: &T, mut exp: u32) -> T {
    let mut acc = T::one();
    let mut b = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b.clone();
        }
        b = b.clone() * b;
        exp >>= 1;
    }
    acc
}
