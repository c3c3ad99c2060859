//! Exact coefficient tower: big rationals, dense polynomials in `q`, reduced
//! rational functions in `q`, and truncated power series in `q`.

mod poly;
mod qseries;
mod ratfunc;

pub use num_bigint::BigInt;
pub use poly::PolyQ;
pub use qseries::TruncatedQSeries;
pub use ratfunc::RationalFunctionQ;

/// Exact rational number, always gcd-reduced with positive denominator.
pub type BigRat = num_rational::BigRational;

use num_traits::{One, Zero};

/// Renders a rational as `"p"` or `"p/q"`.
pub fn rat_to_string(r: &BigRat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p"` or `"p/q"`.
pub fn rat_from_str(s: &str) -> Option<BigRat> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(BigRat::from_integer),
        Some((n, d)) => {
            let n = n.trim().parse::<BigInt>().ok()?;
            let d = d.trim().parse::<BigInt>().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRat::new(n, d))
            }
        }
    }
}

pub(crate) fn rat(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

pub(crate) fn rat_frac(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}
