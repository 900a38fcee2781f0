//! Arbitrary-precision integer primitives and exact comparisons.
//!
//! Everything in the crate is built on these few operations; fractions are
//! compared by cross multiplication and `sqrt(n)` only ever appears through
//! the squared comparison `a^2` vs `n*b^2`.

use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{CheckedSub, Zero};

/// Non-negative arbitrary-precision integer.
pub type Nat = BigUint;

/// Input outside an operation's domain (currently only zero where positivity
/// is required).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainError(pub &'static str);

impl fmt::Display for DomainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "domain error: {}", self.0)
    }
}

impl core::error::Error for DomainError {}

/// A pair of positive integers `num/den`.
///
/// Not necessarily in lowest terms: descent only ever strips powers of 2
/// (or, in the general module, the gcd), never normalizes by default.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fraction {
    num: Nat,
    den: Nat,
}

impl Fraction {
    /// Both components must be positive.
    pub fn new(num: Nat, den: Nat) -> Result<Self, DomainError> {
        if num.is_zero() || den.is_zero() {
            return Err(DomainError("fraction components must be positive"));
        }
        Ok(Fraction { num, den })
    }

    pub fn from_u64(num: u64, den: u64) -> Result<Self, DomainError> {
        Self::new(Nat::from(num), Nat::from(den))
    }

    pub fn num(&self) -> &Nat {
        &self.num
    }

    pub fn den(&self) -> &Nat {
        &self.den
    }

    /// The exact defect `num^2 - n*den^2`, or `None` if it would be negative.
    pub fn defect(&self, radicand: &Nat) -> Option<Nat> {
        let lhs = &self.num * &self.num;
        let rhs = radicand * &self.den * &self.den;
        lhs.checked_sub(&rhs)
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Exponent of the largest power of 2 dividing `n`.
pub fn two_adic_valuation(n: &Nat) -> Result<u64, DomainError> {
    n.trailing_zeros()
        .ok_or(DomainError("2-adic valuation of zero is undefined"))
}

/// Integer square root with exactness flag: `root^2 <= n < (root+1)^2`,
/// and the flag is set iff `root^2 = n`.
pub fn isqrt(n: &Nat) -> (Nat, bool) {
    let root = n.sqrt();
    let exact = &root * &root == *n;
    (root, exact)
}

/// Compares `a^2` against `n*b^2`, exactly.
///
/// `Greater` means `a/b > sqrt(n)`; this is the only way the crate ever
/// talks about an irrational value.
pub fn cmp_scaled_squares(a: &Nat, b: &Nat, n: &Nat) -> Ordering {
    let lhs = a * a;
    let rhs = n * b * b;
    lhs.cmp(&rhs)
}

/// Compares two fractions by exact cross multiplication.
pub fn fraction_cmp(f: &Fraction, g: &Fraction) -> Ordering {
    let lhs = f.num() * g.den();
    let rhs = g.num() * f.den();
    lhs.cmp(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(n: u64) -> Nat {
        Nat::from(n)
    }

    #[test]
    fn valuation_small_cases() {
        assert_eq!(two_adic_valuation(&nat(8)), Ok(3));
        assert_eq!(two_adic_valuation(&nat(7)), Ok(0));
        assert_eq!(two_adic_valuation(&nat(12)), Ok(2));
        assert!(two_adic_valuation(&nat(0)).is_err());
    }

    #[test]
    fn isqrt_contract() {
        assert_eq!(isqrt(&nat(0)), (nat(0), true));
        assert_eq!(isqrt(&nat(2)), (nat(1), false));
        // 577^2 = 332929, checked by direct multiplication
        assert_eq!(nat(577) * nat(577), nat(332929));
        assert_eq!(isqrt(&nat(332929)), (nat(577), true));
    }

    #[test]
    fn scaled_square_comparison() {
        assert_eq!(cmp_scaled_squares(&nat(3), &nat(2), &nat(2)), Ordering::Greater);
        assert_eq!(cmp_scaled_squares(&nat(2), &nat(1), &nat(4)), Ordering::Equal);
        assert_eq!(cmp_scaled_squares(&nat(1), &nat(1), &nat(2)), Ordering::Less);
    }

    #[test]
    fn fraction_comparison() {
        let f = |n, d| Fraction::from_u64(n, d).unwrap();
        assert_eq!(fraction_cmp(&f(2, 1), &f(3, 2)), Ordering::Greater);
        assert_eq!(fraction_cmp(&f(6, 4), &f(3, 2)), Ordering::Equal);
        assert_eq!(fraction_cmp(&f(17, 12), &f(3, 2)), Ordering::Less);
    }

    #[test]
    fn fraction_rejects_zero() {
        assert!(Fraction::from_u64(0, 1).is_err());
        assert!(Fraction::from_u64(1, 0).is_err());
    }
}
