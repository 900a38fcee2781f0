//! Exact-arithmetic descent for square roots.
//!
//! Given positive integers `a`, `b` with `a^2 >= 2*b^2` (so `a/b >= sqrt(2)`),
//! each descent step strips common factors of 2, applies the refinement
//! `a'' = a'^2 + 2*b'^2`, `b'' = 2*a'*b'`, and yields a strictly smaller
//! fraction that still over-approximates `sqrt(2)`. Iterating produces an
//! unending, strictly improving sequence; no floating point is used anywhere.
//!
//! The crate is `no_std` (with `alloc`) and split into:
//!
//! - [`arith`]: bigint primitives and exact comparisons
//! - [`descent`]: the parity-based descent for radicand 2
//! - [`general`]: gcd-based extension to arbitrary radicands
//! - [`decimal`]: exact truncated decimal expansions and digit matching

#![no_std]

extern crate alloc;

pub mod arith;
pub mod decimal;
pub mod descent;
pub mod general;

pub use arith::{cmp_scaled_squares, fraction_cmp, isqrt, two_adic_valuation, DomainError, Fraction, Nat};
pub use descent::{
    descent_step, iterate, reduce_parity, refine, DescentError, DescentStepRecord, ParityCase,
    ReducedPair,
};
pub use general::{
    classify_radicand, descent_step_general, iterate_general, EqualityCertificate,
    GeneralOutcome, GeneralRun, GeneralStepRecord, RadicandClassification, RadicandKind,
};
