//! Gcd-based descent for arbitrary positive radicands.
//!
//! The parity trick is specific to 2; for a general radicand `n` strictness
//! comes from exact equality detection instead: after reducing `a/b` to
//! coprime form, `a^2 = n*b^2` forces `b = 1` and exhibits `n` as a perfect
//! square. Otherwise the same refinement `(a^2 + n*b^2, 2ab)` applies and
//! squares the defect `a^2 - n*b^2` exactly.

use alloc::vec::Vec;

use core::cmp::Ordering;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{cmp_scaled_squares, isqrt, DomainError, Fraction, Nat};
use crate::descent::DescentError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RadicandKind {
    PerfectSquare { root: Nat },
    NonSquare,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicandClassification {
    pub n: Nat,
    pub kind: RadicandKind,
}

/// Exact perfect-square detection via integer square root.
pub fn classify_radicand(n: &Nat) -> Result<RadicandClassification, DomainError> {
    if n.is_zero() {
        return Err(DomainError("radicand must be positive"));
    }
    let (root, exact) = isqrt(n);
    let kind = if exact {
        RadicandKind::PerfectSquare { root }
    } else {
        RadicandKind::NonSquare
    };
    Ok(RadicandClassification { n: n.clone(), kind })
}

/// Witness that a fraction equals `sqrt(n)` exactly, which exhibits `n` as a
/// perfect square with the given integer root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqualityCertificate {
    pub radicand: Nat,
    pub input: Fraction,
    pub root: Nat,
}

/// One descent step with radicand `n`; reduction is by full gcd and the
/// defect is `a^2 - n*b^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralStepRecord {
    pub radicand: Nat,
    pub input: Fraction,
    pub gcd: Nat,
    pub reduced: Fraction,
    pub output: Fraction,
    pub defect_in: Nat,
    pub defect_out: Nat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneralOutcome {
    Step(GeneralStepRecord),
    ExactRoot(EqualityCertificate),
}

/// Result of a bounded general iteration: either a chain of strict steps or
/// an equality certificate hit at the seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneralRun {
    Descent(Vec<GeneralStepRecord>),
    ExactRoot(EqualityCertificate),
}

/// One descent step on `f` with radicand `n`, or an equality certificate if
/// `f` equals `sqrt(n)` exactly.
pub fn descent_step_general(n: &Nat, f: &Fraction) -> Result<GeneralOutcome, DescentError> {
    if n.is_zero() {
        // zero radicand has no positive over-approximation contract
        return Err(DescentError::UnderApproximation);
    }
    match cmp_scaled_squares(f.num(), f.den(), n) {
        Ordering::Less => return Err(DescentError::UnderApproximation),
        Ordering::Equal => {
            let g = f.num().gcd(f.den());
            let num = f.num() / &g;
            let den = f.den() / &g;
            // a^2 = n*b^2 with gcd(a,b) = 1 forces b = 1, so n = a^2
            debug_assert!(den.is_one());
            debug_assert_eq!(&num * &num, *n);
            debug_assert!(matches!(
                classify_radicand(n).map(|c| c.kind),
                Ok(RadicandKind::PerfectSquare { ref root }) if *root == num
            ));
            return Ok(GeneralOutcome::ExactRoot(EqualityCertificate {
                radicand: n.clone(),
                input: f.clone(),
                root: num,
            }));
        }
        Ordering::Greater => {}
    }
    let g = f.num().gcd(f.den());
    let reduced = Fraction::new(f.num() / &g, f.den() / &g).expect("gcd quotients are positive");
    let defect_in = reduced
        .defect(n)
        .expect("gcd reduction preserves the over-approximation");
    let two = Nat::from(2u32);
    let num = reduced.num() * reduced.num() + n * reduced.den() * reduced.den();
    let den = &two * reduced.num() * reduced.den();
    let output = Fraction::new(num, den).expect("refinement of a positive pair is positive");
    let defect_out = output
        .defect(n)
        .expect("refinement preserves the over-approximation");
    debug_assert_eq!(defect_out, &defect_in * &defect_in);
    Ok(GeneralOutcome::Step(GeneralStepRecord {
        radicand: n.clone(),
        input: f.clone(),
        gcd: g,
        reduced,
        output,
        defect_in,
        defect_out,
    }))
}

/// Chains up to `steps` general descent steps. Equality can only occur at
/// the seed (every step output has defect `defect_in^2 >= 1`), in which case
/// the equality certificate is returned instead of a chain.
pub fn iterate_general(n: &Nat, f: &Fraction, steps: usize) -> Result<GeneralRun, DescentError> {
    let mut records = Vec::with_capacity(steps);
    let mut current = f.clone();
    for _ in 0..steps {
        match descent_step_general(n, &current)? {
            GeneralOutcome::Step(record) => {
                current = record.output.clone();
                records.push(record);
            }
            GeneralOutcome::ExactRoot(cert) => {
                debug_assert!(records.is_empty());
                return Ok(GeneralRun::ExactRoot(cert));
            }
        }
    }
    Ok(GeneralRun::Descent(records))
}
