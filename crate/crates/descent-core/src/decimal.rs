//! Exact truncated decimal expansions and digit matching.
//!
//! All output is floor (truncation), never rounding; `sqrt(n)` digits come
//! from `isqrt(n * 10^(2m))`, so no floating point is involved.

use alloc::format;
use alloc::string::String;

use num_traits::{pow::Pow, Zero};

use crate::arith::{isqrt, DomainError, Fraction, Nat};

fn ten_pow(m: u32) -> Nat {
    Nat::from(10u32).pow(m)
}

/// Renders `f` truncated to `m` fractional decimal digits, e.g. `"1.41421"`.
/// With `m = 0` only the integer part is rendered.
pub fn decimal_floor(f: &Fraction, m: u32) -> String {
    let int = f.num() / f.den();
    if m == 0 {
        return format!("{int}");
    }
    let rem = f.num() - &int * f.den();
    let frac = (rem * ten_pow(m)) / f.den();
    format!("{int}.{frac:0>width$}", width = m as usize)
}

/// Exact first `m` fractional decimal digits of `sqrt(n)`.
pub fn sqrt_decimal_floor(n: &Nat, m: u32) -> Result<String, DomainError> {
    if n.is_zero() {
        return Err(DomainError("radicand must be positive"));
    }
    let scale = ten_pow(m);
    let (root, _) = isqrt(&(n * &scale * &scale));
    let int = &root / &scale;
    if m == 0 {
        return Ok(format!("{int}"));
    }
    let frac = &root - &int * &scale;
    Ok(format!("{int}.{frac:0>width$}", width = m as usize))
}

/// Number of leading fractional digits of `f` agreeing with `sqrt(n)`,
/// both truncated to `m` digits. Zero if the integer parts differ.
pub fn matched_digits(f: &Fraction, n: &Nat, m: u32) -> Result<usize, DomainError> {
    let lhs = decimal_floor(f, m);
    let rhs = sqrt_decimal_floor(n, m)?;
    let (lhs_int, lhs_frac) = lhs.split_once('.').unwrap_or((lhs.as_str(), ""));
    let (rhs_int, rhs_frac) = rhs.split_once('.').unwrap_or((rhs.as_str(), ""));
    if lhs_int != rhs_int {
        return Ok(0);
    }
    Ok(lhs_frac
        .bytes()
        .zip(rhs_frac.bytes())
        .take_while(|(a, b)| a == b)
        .count())
}
