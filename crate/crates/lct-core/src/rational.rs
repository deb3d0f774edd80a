//! The exact scalar field: arbitrary-precision rationals.
//!
//! Every exact quantity in this crate (coefficients, Newton distances,
//! thresholds) is a [`Rational`]. Floating point appears only at the
//! numerical-probe boundary.

use alloc::string::String;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Int = BigInt;

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator (maintained by `num_rational`).
pub type Rational = num_rational::BigRational;

/// Rational from an integer numerator/denominator pair. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Rational from an integer.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational from a nonnegative machine integer.
pub fn from_u32(n: u32) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Lossy conversion to `f64` for the numerical probe; exact code never calls
/// this. Falls back to a quotient of approximations when the parts overflow.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = big_to_f64(r.numer());
        let d = big_to_f64(r.denom());
        n / d
    })
}

fn big_to_f64(n: &BigInt) -> f64 {
    n.to_f64().unwrap_or(if n.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

/// Canonical string form: `"num"` when the denominator is 1, else `"num/den"`.
pub fn format(r: &Rational) -> String {
    use alloc::string::ToString;
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        let mut s = r.numer().to_string();
        s.push('/');
        s.push_str(&r.denom().to_string());
        s
    }
}

/// Parses `"num"` or `"num/den"` (optionally signed). Returns `None` on any
/// malformed input or zero denominator.
pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num_s, den_s) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num_s.trim().parse().ok()?;
    let den: BigInt = den_s.trim().parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}
