//! The descent step for radicand 2: parity reduction, strictness case
//! analysis, and the refinement map `(a', b') -> (a'^2 + 2b'^2, 2a'b')`.
//!
//! Each step turns an over-approximation `a/b >= sqrt(2)` into a strictly
//! smaller one, with the defect `a^2 - 2b^2` squared exactly. Outputs are
//! deliberately not parity-reduced; reduction happens at the start of the
//! next step.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::One;

use crate::arith::{cmp_scaled_squares, two_adic_valuation, Fraction, Nat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DescentError {
    /// The input fraction satisfies `num^2 < 2*den^2`, i.e. lies below the root.
    UnderApproximation,
    /// `num^2 = radicand*den^2` exactly. Impossible for radicand 2 with
    /// positive integers, but reported as a diagnostic rather than assumed
    /// unreachable so the general-radicand path can share the contract.
    ExactEquality,
    /// A reduced pair with both components even was supplied.
    BothEven,
}

impl fmt::Display for DescentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DescentError::UnderApproximation => {
                write!(f, "precondition violated: num^2 < radicand * den^2")
            }
            DescentError::ExactEquality => {
                write!(f, "precondition violated: num^2 = radicand * den^2 exactly")
            }
            DescentError::BothEven => {
                write!(f, "precondition violated: both components are even")
            }
        }
    }
}

impl core::error::Error for DescentError {}

/// A fraction with the largest common power of 2 stripped, together with
/// the exponent that was removed. The two components are never both even.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedPair {
    num: Nat,
    den: Nat,
    stripped: u64,
}

impl ReducedPair {
    pub fn num(&self) -> &Nat {
        &self.num
    }

    pub fn den(&self) -> &Nat {
        &self.den
    }

    /// Exponent of the common power of 2 removed from the source pair.
    pub fn stripped(&self) -> u64 {
        self.stripped
    }

    pub fn as_fraction(&self) -> Fraction {
        Fraction::new(self.num.clone(), self.den.clone()).expect("reduced pair is positive")
    }
}

/// Which branch of the case analysis proved strictness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParityCase {
    /// The reduced numerator is odd, so its square is odd and cannot equal
    /// the even `2*den^2`.
    OddNumerator,
    /// The reduced numerator is `2c` and the denominator is odd; the witness
    /// `c` satisfies `2c^2 > den^2`.
    EvenNumeratorOddDenominator { witness: Nat },
}

/// Full transcript of one descent step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentStepRecord {
    pub input: Fraction,
    pub reduced: ReducedPair,
    pub case: ParityCase,
    pub output: Fraction,
    /// `reduced.num^2 - 2*reduced.den^2`, always >= 1.
    pub defect_in: Nat,
    /// `output.num^2 - 2*output.den^2`; equals `defect_in^2` exactly.
    pub defect_out: Nat,
}

/// Strips the largest common power of 2, preserving the fraction's value.
pub fn reduce_parity(f: &Fraction) -> ReducedPair {
    let vn = two_adic_valuation(f.num()).expect("fraction numerator is positive");
    let vd = two_adic_valuation(f.den()).expect("fraction denominator is positive");
    let stripped = vn.min(vd);
    ReducedPair {
        num: f.num() >> stripped,
        den: f.den() >> stripped,
        stripped,
    }
}

/// Case analysis establishing the strict inequality `num^2 > 2*den^2`.
pub fn prove_strict(p: &ReducedPair) -> Result<ParityCase, DescentError> {
    let num_even = !p.num.bit(0);
    let den_even = !p.den.bit(0);
    if num_even && den_even {
        return Err(DescentError::BothEven);
    }
    let two = Nat::from(2u32);
    match cmp_scaled_squares(&p.num, &p.den, &two) {
        Ordering::Less => return Err(DescentError::UnderApproximation),
        Ordering::Equal => return Err(DescentError::ExactEquality),
        Ordering::Greater => {}
    }
    if !num_even {
        Ok(ParityCase::OddNumerator)
    } else {
        // num = 2c and den is odd; from (2c)^2 >= 2 den^2 we get
        // 2c^2 >= den^2, and parity makes the inequality strict.
        let c: Nat = &p.num >> 1u32;
        let lhs = &two * &c * &c;
        let rhs = &p.den * &p.den;
        debug_assert!(lhs > rhs);
        Ok(ParityCase::EvenNumeratorOddDenominator { witness: c })
    }
}

/// The refinement map: `(num, den) -> (num^2 + 2*den^2, 2*num*den)`.
pub fn refine(p: &ReducedPair) -> Fraction {
    let two = Nat::from(2u32);
    let num = &p.num * &p.num + &two * &p.den * &p.den;
    let den = &two * &p.num * &p.den;
    Fraction::new(num, den).expect("refinement of a positive pair is positive")
}

/// One full descent step on an over-approximation of `sqrt(2)`.
pub fn descent_step(f: &Fraction) -> Result<DescentStepRecord, DescentError> {
    let two = Nat::from(2u32);
    match cmp_scaled_squares(f.num(), f.den(), &two) {
        Ordering::Less => return Err(DescentError::UnderApproximation),
        Ordering::Equal => return Err(DescentError::ExactEquality),
        Ordering::Greater => {}
    }
    let reduced = reduce_parity(f);
    let case = prove_strict(&reduced)?;
    let output = refine(&reduced);
    let defect_in = reduced
        .as_fraction()
        .defect(&two)
        .expect("reduction preserves the over-approximation");
    let defect_out = output
        .defect(&two)
        .expect("refinement preserves the over-approximation");
    debug_assert!(defect_in >= Nat::one());
    debug_assert_eq!(defect_out, &defect_in * &defect_in);
    Ok(DescentStepRecord {
        input: f.clone(),
        reduced,
        case,
        output,
        defect_in,
        defect_out,
    })
}

/// Chains `steps` descent steps; record `i+1`'s input is record `i`'s output.
pub fn iterate(f: &Fraction, steps: usize) -> Result<Vec<DescentStepRecord>, DescentError> {
    let mut records = Vec::with_capacity(steps);
    let mut current = f.clone();
    for _ in 0..steps {
        let record = descent_step(&current)?;
        current = record.output.clone();
        records.push(record);
    }
    Ok(records)
}
