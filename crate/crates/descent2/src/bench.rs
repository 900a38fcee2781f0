//! Seeded fuzz benchmark: random valid inputs of a given bit length, one
//! descent step each, every postcondition re-checked from scratch.
//!
//! Each trial derives its own RNG stream from (seed, trial index), so the
//! summary is identical whether trials run serially or in parallel.

use std::time::{Duration, Instant};

use descent_core::{descent_step, Fraction, Nat, ParityCase};
use num_bigint::RandBigInt;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchSummary {
    pub trials: u64,
    pub violations: u64,
    pub elapsed: Duration,
    pub steps_per_sec: f64,
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    // splitmix64 of the pair keeps per-trial streams independent
    let mut z = seed ^ trial.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    ChaCha8Rng::seed_from_u64(z ^ (z >> 31))
}

/// Rejection-samples `b`, then `a` with `a^2 >= 2*b^2`, both of the given
/// bit length. The pair is redrawn together when `a` fails, since for a
/// large `b` no numerator of the same bit length may exist.
pub fn sample_input(rng: &mut ChaCha8Rng, bits: u64) -> Fraction {
    let two = Nat::from(2u32);
    loop {
        let b = rng.gen_biguint(bits);
        if b.is_zero() {
            continue;
        }
        let a = rng.gen_biguint(bits);
        if !a.is_zero() && &a * &a >= &two * &b * &b {
            return Fraction::new(a, b).expect("sampled components are positive");
        }
    }
}

fn run_trial(seed: u64, bits: u64, trial: u64) -> u64 {
    let mut rng = trial_rng(seed, trial);
    let input = sample_input(&mut rng, bits);
    let two = Nat::from(2u32);
    let record = match descent_step(&input) {
        Ok(r) => r,
        Err(_) => return 1,
    };
    let mut bad = 0u64;

    // value-preserving reduction
    let scale = Nat::one() << record.reduced.stripped();
    if record.reduced.num() * &scale != *input.num()
        || record.reduced.den() * &scale != *input.den()
    {
        bad += 1;
    }
    // parity case matches the reduced pair
    let num_odd = record.reduced.num().bit(0);
    match &record.case {
        ParityCase::OddNumerator => {
            if !num_odd {
                bad += 1;
            }
        }
        ParityCase::EvenNumeratorOddDenominator { witness } => {
            if num_odd
                || !record.reduced.den().bit(0)
                || &(witness * &two) != record.reduced.num()
            {
                bad += 1;
            }
        }
    }
    // strict decrease
    if input.num() * record.output.den() <= record.output.num() * input.den() {
        bad += 1;
    }
    // strict over-approximation
    if record.output.num() * record.output.num()
        <= &two * record.output.den() * record.output.den()
    {
        bad += 1;
    }
    // defect squaring
    if record.defect_out != &record.defect_in * &record.defect_in
        || record.defect_in.is_zero()
    {
        bad += 1;
    }
    bad
}

/// Runs `trials` independent descent-step trials; deterministic for a fixed
/// seed regardless of `parallel`.
pub fn fuzz_bench(bits: u64, trials: u64, seed: u64, parallel: bool) -> BenchSummary {
    let start = Instant::now();
    let violations = if parallel {
        (0..trials)
            .into_par_iter()
            .map(|t| run_trial(seed, bits, t))
            .sum()
    } else {
        (0..trials).map(|t| run_trial(seed, bits, t)).sum()
    };
    let elapsed = start.elapsed();
    let steps_per_sec = trials as f64 / elapsed.as_secs_f64().max(f64::EPSILON);
    BenchSummary {
        trials,
        violations,
        elapsed,
        steps_per_sec,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sizes_clean() {
        assert_eq!(fuzz_bench(2, 10, 0, false).violations, 0);
    }

    #[test]
    fn mid_sizes_clean() {
        assert_eq!(fuzz_bench(64, 200, 1, false).violations, 0);
    }

    #[test]
    fn parallel_agrees_with_serial() {
        let serial = fuzz_bench(32, 100, 7, false);
        let parallel = fuzz_bench(32, 100, 7, true);
        assert_eq!(serial.violations, parallel.violations);
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_input(&mut trial_rng(5, 3), 48);
        let b = sample_input(&mut trial_rng(5, 3), 48);
        assert_eq!(a, b);
    }
}
