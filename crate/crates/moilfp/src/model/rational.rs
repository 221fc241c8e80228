//! Exact rational scalar used throughout the solver.
//!
//! Every arithmetic decision in the search (reduced-gradient signs, dominance
//! comparisons, cut feasibility) is a sign test, so all solver state is kept
//! as arbitrary-precision rationals. Decimal output exists only for display.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::str::FromStr;

pub type Rational = BigRational;

/// Shorthand constructor from machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rint(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn rzero() -> Rational {
    Rational::zero()
}

pub fn rone() -> Rational {
    Rational::one()
}

/// Parses `p`, `-p` or `p/q` with integer p, q.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let (num_s, den_s) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num_s.trim()).map_err(|_| format!("bad number `{s}`"))?;
    let den = BigInt::from_str(den_s.trim()).map_err(|_| format!("bad number `{s}`"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(Rational::new(num, den))
}

/// Renders a rational as `p` or `p/q` (lowest terms).
pub fn fmt_exact(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Renders with exactly four decimal places, rounding half away from zero.
pub fn fmt4(r: &Rational) -> String {
    let scaled = r * rint(10_000);
    let rounded: BigInt = scaled.round().to_integer();
    let sign = if rounded.is_negative() { "-" } else { "" };
    let abs = rounded.abs();
    let int_part = &abs / BigInt::from(10_000);
    let frac_part = &abs % BigInt::from(10_000);
    format!("{sign}{int_part}.{frac_part:04}")
}
