//! Proof certificates: a descent run serialized as a JSON document whose
//! every claimed identity and inequality can be re-checked from raw integers.
//!
//! The verifier deliberately shares no code path with generation beyond the
//! `descent-core` arithmetic primitives: it recomputes everything from each
//! step's `input` field and treats all other fields as claims.

use std::fmt;
use std::str::FromStr;

use descent_core::{
    iterate, iterate_general, DescentError, Fraction, GeneralRun, Nat, ParityCase,
};
use num_integer::Integer;
use num_traits::{CheckedSub, One, Zero};
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: u32 = 1;
pub const CLAIM: &str = "strictly-decreasing-over-approximations";

pub const CASE_ODD_NUMERATOR: &str = "odd-numerator";
pub const CASE_EVEN_NUMERATOR: &str = "even-numerator-odd-denominator";
pub const CASE_GCD_REDUCTION: &str = "gcd-reduction";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionWire {
    pub num: String,
    pub den: String,
}

impl FractionWire {
    fn from_fraction(f: &Fraction) -> Self {
        FractionWire {
            num: f.num().to_string(),
            den: f.den().to_string(),
        }
    }
}

/// One fully-expanded descent step. All integers travel as canonical
/// base-10 digit strings so certificates survive any consumer's
/// integer-width limits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecordWire {
    pub input: FractionWire,
    pub stripped: u64,
    pub reduced: FractionWire,
    pub case: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_c: Option<String>,
    pub output: FractionWire,
    pub defect_in: String,
    pub defect_out: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub format_version: u32,
    pub radicand: String,
    pub start: FractionWire,
    pub steps: Vec<StepRecordWire>,
    pub claim: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuildError {
    /// Fewer than one step requested.
    NoSteps,
    /// The seed equals `sqrt(n)` exactly; there is no descent to certify.
    ExactRoot { root: Nat },
    Descent(DescentError),
}

impl fmt::Display for BuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuildError::NoSteps => write!(f, "a certificate needs at least one step"),
            BuildError::ExactRoot { root } => {
                write!(f, "seed equals the exact root {root}; nothing to certify")
            }
            BuildError::Descent(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for BuildError {}

impl From<DescentError> for BuildError {
    fn from(e: DescentError) -> Self {
        BuildError::Descent(e)
    }
}

/// Runs the descent and records every step verbatim.
pub fn build_certificate(
    start: &Fraction,
    steps: usize,
    radicand: &Nat,
) -> Result<Certificate, BuildError> {
    if steps == 0 {
        return Err(BuildError::NoSteps);
    }
    let two = Nat::from(2u32);
    let wire_steps = if *radicand == two {
        iterate(start, steps)?
            .into_iter()
            .map(|r| {
                let (case, witness_c) = match &r.case {
                    ParityCase::OddNumerator => (CASE_ODD_NUMERATOR.to_string(), None),
                    ParityCase::EvenNumeratorOddDenominator { witness } => {
                        (CASE_EVEN_NUMERATOR.to_string(), Some(witness.to_string()))
                    }
                };
                StepRecordWire {
                    input: FractionWire::from_fraction(&r.input),
                    stripped: r.reduced.stripped(),
                    reduced: FractionWire::from_fraction(&r.reduced.as_fraction()),
                    case,
                    witness_c,
                    output: FractionWire::from_fraction(&r.output),
                    defect_in: r.defect_in.to_string(),
                    defect_out: r.defect_out.to_string(),
                }
            })
            .collect()
    } else {
        match iterate_general(radicand, start, steps)? {
            GeneralRun::ExactRoot(cert) => {
                return Err(BuildError::ExactRoot { root: cert.root })
            }
            GeneralRun::Descent(records) => records
                .into_iter()
                .map(|r| StepRecordWire {
                    input: FractionWire::from_fraction(&r.input),
                    stripped: 0,
                    reduced: FractionWire::from_fraction(&r.reduced),
                    case: CASE_GCD_REDUCTION.to_string(),
                    witness_c: None,
                    output: FractionWire::from_fraction(&r.output),
                    defect_in: r.defect_in.to_string(),
                    defect_out: r.defect_out.to_string(),
                })
                .collect(),
        }
    };
    Ok(Certificate {
        format_version: FORMAT_VERSION,
        radicand: radicand.to_string(),
        start: FractionWire::from_fraction(start),
        steps: wire_steps,
        claim: CLAIM.to_string(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    /// Index of the offending step, absent for certificate-level failures.
    pub step_index: Option<usize>,
    pub check_name: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub failures: Vec<Failure>,
}

struct Checker {
    failures: Vec<Failure>,
}

impl Checker {
    fn fail(&mut self, step: Option<usize>, check: &str, detail: String) {
        self.failures.push(Failure {
            step_index: step,
            check_name: check.to_string(),
            detail,
        });
    }
}

fn parse_digits(s: &str) -> Result<Nat, String> {
    if s.is_empty() {
        return Err("empty digit string".to_string());
    }
    if !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("non-digit character in {s:?}"));
    }
    if s.len() > 1 && s.starts_with('0') {
        return Err(format!("leading zero in {s:?}"));
    }
    Nat::from_str(s).map_err(|e| e.to_string())
}

fn parse_positive(s: &str) -> Result<Nat, String> {
    let n = parse_digits(s)?;
    if n.is_zero() {
        return Err(format!("{s:?} must be positive"));
    }
    Ok(n)
}

fn parse_fraction(w: &FractionWire) -> Result<(Nat, Nat), String> {
    Ok((parse_positive(&w.num)?, parse_positive(&w.den)?))
}

/// Re-derives every relation of every step from the `input` fields alone and
/// compares against the claims; any mismatch becomes a named failure.
pub fn verify_certificate(cert: &Certificate) -> VerifyReport {
    let mut c = Checker { failures: Vec::new() };

    if cert.format_version != FORMAT_VERSION {
        c.fail(
            None,
            "structure",
            format!("unsupported format_version {}", cert.format_version),
        );
    }
    if cert.claim != CLAIM {
        c.fail(None, "structure", format!("unexpected claim {:?}", cert.claim));
    }
    if cert.steps.is_empty() {
        c.fail(None, "structure", "certificate has no steps".to_string());
        return finish(c);
    }
    let radicand = match parse_positive(&cert.radicand) {
        Ok(n) => n,
        Err(e) => {
            c.fail(None, "structure", format!("radicand: {e}"));
            return finish(c);
        }
    };
    let start = match parse_fraction(&cert.start) {
        Ok(f) => Some(f),
        Err(e) => {
            c.fail(None, "structure", format!("start: {e}"));
            None
        }
    };

    let two = Nat::from(2u32);
    let mut prev_output: Option<(Nat, Nat)> = start.clone();

    for (i, step) in cert.steps.iter().enumerate() {
        let idx = Some(i);
        let (a, b) = match parse_fraction(&step.input) {
            Ok(p) => p,
            Err(e) => {
                c.fail(idx, "structure", format!("input: {e}"));
                prev_output = None;
                continue;
            }
        };

        // (8) chaining: input must equal the previous output (or the start)
        if let Some((pn, pd)) = &prev_output {
            if *pn != a || *pd != b {
                let what = if i == 0 { "start" } else { "previous output" };
                c.fail(
                    idx,
                    "chaining",
                    format!("input {}/{} does not equal the {what} {pn}/{pd}", a, b),
                );
            }
        }

        // (1) reduction validity, recomputed from the input alone
        let (red_a, red_b) = match step.case.as_str() {
            CASE_GCD_REDUCTION => {
                if radicand == two {
                    c.fail(
                        idx,
                        "case-tag",
                        "gcd-reduction case used with radicand 2".to_string(),
                    );
                }
                if step.stripped != 0 {
                    c.fail(
                        idx,
                        "reduction-validity",
                        format!("stripped must be 0 for gcd reduction, got {}", step.stripped),
                    );
                }
                let g = a.gcd(&b);
                (&a / &g, &b / &g)
            }
            CASE_ODD_NUMERATOR | CASE_EVEN_NUMERATOR => {
                if radicand != two {
                    c.fail(
                        idx,
                        "case-tag",
                        format!("parity case used with radicand {radicand}"),
                    );
                }
                let k = a
                    .trailing_zeros()
                    .unwrap_or(0)
                    .min(b.trailing_zeros().unwrap_or(0));
                if step.stripped != k {
                    c.fail(
                        idx,
                        "reduction-validity",
                        format!("stripped = {} but largest common power of 2 is {k}", step.stripped),
                    );
                }
                (&a >> k, &b >> k)
            }
            other => {
                c.fail(idx, "structure", format!("unknown case tag {other:?}"));
                prev_output = None;
                continue;
            }
        };
        match parse_fraction(&step.reduced) {
            Ok((cn, cd)) => {
                if cn != red_a || cd != red_b {
                    c.fail(
                        idx,
                        "reduction-validity",
                        format!("claimed reduced {cn}/{cd}, recomputed {red_a}/{red_b}"),
                    );
                }
            }
            Err(e) => c.fail(idx, "structure", format!("reduced: {e}")),
        }

        // (2) case tag consistent with the recomputed reduced pair
        match step.case.as_str() {
            CASE_ODD_NUMERATOR => {
                if !red_a.is_odd() {
                    c.fail(idx, "case-tag", format!("reduced numerator {red_a} is even"));
                }
                if step.witness_c.is_some() {
                    c.fail(idx, "case-tag", "witness_c present for odd-numerator".to_string());
                }
            }
            CASE_EVEN_NUMERATOR => {
                if !red_a.is_even() || !red_b.is_odd() {
                    c.fail(
                        idx,
                        "case-tag",
                        format!("expected even numerator and odd denominator, got {red_a}/{red_b}"),
                    );
                }
                match step.witness_c.as_deref().map(parse_digits) {
                    Some(Ok(w)) => {
                        if &w * &two != red_a {
                            c.fail(
                                idx,
                                "case-tag",
                                format!("witness_c = {w} but reduced numerator is {red_a}"),
                            );
                        }
                    }
                    Some(Err(e)) => c.fail(idx, "structure", format!("witness_c: {e}")),
                    None => c.fail(idx, "case-tag", "witness_c missing".to_string()),
                }
            }
            CASE_GCD_REDUCTION => {
                if !red_a.gcd(&red_b).is_one() {
                    c.fail(idx, "case-tag", format!("{red_a}/{red_b} is not coprime"));
                }
                if step.witness_c.is_some() {
                    c.fail(idx, "case-tag", "witness_c present for gcd-reduction".to_string());
                }
            }
            _ => unreachable!("unknown tags bail out above"),
        }

        // (3) strictness: recomputed defect must be >= 1 and match the claim
        let lhs = &red_a * &red_a;
        let rhs = &radicand * &red_b * &red_b;
        let defect_in = match lhs.checked_sub(&rhs) {
            Some(d) if !d.is_zero() => d,
            _ => {
                c.fail(
                    idx,
                    "strictness",
                    format!("{red_a}^2 is not strictly greater than {radicand}*{red_b}^2"),
                );
                prev_output = None;
                continue;
            }
        };
        match parse_digits(&step.defect_in) {
            Ok(claimed) => {
                if claimed != defect_in {
                    c.fail(
                        idx,
                        "strictness",
                        format!("claimed defect_in {claimed}, recomputed {defect_in}"),
                    );
                }
            }
            Err(e) => c.fail(idx, "structure", format!("defect_in: {e}")),
        }

        // (4) refinement formulas
        let out_a = &red_a * &red_a + &radicand * &red_b * &red_b;
        let out_b = &two * &red_a * &red_b;
        match parse_fraction(&step.output) {
            Ok((cn, cd)) => {
                if cn != out_a || cd != out_b {
                    c.fail(
                        idx,
                        "refinement-formula",
                        format!("claimed output {cn}/{cd}, recomputed {out_a}/{out_b}"),
                    );
                }
            }
            Err(e) => c.fail(idx, "structure", format!("output: {e}")),
        }

        // (5) defect squaring on the recomputed output
        let defect_out = (&out_a * &out_a)
            .checked_sub(&(&radicand * &out_b * &out_b))
            .unwrap_or_default();
        if defect_out != &defect_in * &defect_in {
            c.fail(
                idx,
                "defect-squaring",
                format!("output defect {defect_out} is not defect_in^2"),
            );
        }
        match parse_digits(&step.defect_out) {
            Ok(claimed) => {
                if claimed != defect_out {
                    c.fail(
                        idx,
                        "defect-squaring",
                        format!("claimed defect_out {claimed}, recomputed {defect_out}"),
                    );
                }
            }
            Err(e) => c.fail(idx, "structure", format!("defect_out: {e}")),
        }

        // (6) strict decrease, cross-multiplied against the raw input
        if &a * &out_b <= &out_a * &b {
            c.fail(
                idx,
                "strict-decrease",
                format!("{a}/{b} is not strictly greater than {out_a}/{out_b}"),
            );
        }

        // (7) output still over-approximates strictly
        if &out_a * &out_a <= &radicand * &out_b * &out_b {
            c.fail(
                idx,
                "over-approximation",
                format!("{out_a}^2 is not strictly greater than {radicand}*{out_b}^2"),
            );
        }

        prev_output = Some((out_a, out_b));
    }

    finish(c)
}

fn finish(c: Checker) -> VerifyReport {
    VerifyReport {
        ok: c.failures.is_empty(),
        failures: c.failures,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub reason: String,
    /// 1-based line and column, when the underlying JSON parser reports one.
    pub position: Option<(usize, usize)>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.position {
            Some((line, col)) => write!(f, "{} (line {line}, column {col})", self.reason),
            None => write!(f, "{}", self.reason),
        }
    }
}

impl std::error::Error for ParseError {}

/// Deterministic pretty-printed JSON with stable field order, so equal
/// certificates serialize to identical bytes.
pub fn serialize(cert: &Certificate) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(cert).expect("certificate serialization is total");
    bytes.push(b'\n');
    bytes
}

/// Parses and schema-validates a certificate document.
pub fn deserialize(bytes: &[u8]) -> Result<Certificate, ParseError> {
    let cert: Certificate = serde_json::from_slice(bytes).map_err(|e| ParseError {
        reason: e.to_string(),
        position: Some((e.line(), e.column())),
    })?;
    for (i, step) in cert.steps.iter().enumerate() {
        match step.case.as_str() {
            CASE_ODD_NUMERATOR | CASE_GCD_REDUCTION => {
                if step.witness_c.is_some() {
                    return Err(ParseError {
                        reason: format!(
                            "step {i}: witness_c must be absent for case {:?}",
                            step.case
                        ),
                        position: None,
                    });
                }
            }
            CASE_EVEN_NUMERATOR => {
                if step.witness_c.is_none() {
                    return Err(ParseError {
                        reason: format!("step {i}: witness_c required for case {:?}", step.case),
                        position: None,
                    });
                }
            }
            other => {
                return Err(ParseError {
                    reason: format!("step {i}: unknown case tag {other:?}"),
                    position: None,
                });
            }
        }
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frac(n: u64, d: u64) -> Fraction {
        Fraction::from_u64(n, d).unwrap()
    }

    fn nat(n: u64) -> Nat {
        Nat::from(n)
    }

    #[test]
    fn build_matches_iterate() {
        let cert = build_certificate(&frac(2, 1), 2, &nat(2)).unwrap();
        assert_eq!(cert.steps.len(), 2);
        assert_eq!(cert.steps[0].output.num, "6");
        assert_eq!(cert.steps[0].output.den, "4");
        assert_eq!(cert.steps[0].case, CASE_EVEN_NUMERATOR);
        assert_eq!(cert.steps[1].output.num, "17");
        assert_eq!(cert.steps[1].output.den, "12");

        let cert = build_certificate(&frac(3, 2), 1, &nat(2)).unwrap();
        assert_eq!(cert.steps[0].case, CASE_ODD_NUMERATOR);
        assert_eq!(cert.steps[0].output.num, "17");

        assert_eq!(
            build_certificate(&frac(1, 1), 1, &nat(2)),
            Err(BuildError::Descent(DescentError::UnderApproximation))
        );
        assert_eq!(
            build_certificate(&frac(3, 2), 0, &nat(2)),
            Err(BuildError::NoSteps)
        );
        assert_eq!(
            build_certificate(&frac(2, 1), 1, &nat(4)),
            Err(BuildError::ExactRoot { root: nat(2) })
        );
    }

    #[test]
    fn round_trip_verifies() {
        let cert = build_certificate(&frac(2, 1), 3, &nat(2)).unwrap();
        let report = verify_certificate(&cert);
        assert!(report.ok, "failures: {:?}", report.failures);

        let bytes = serialize(&cert);
        let back = deserialize(&bytes).unwrap();
        assert_eq!(back, cert);
        assert_eq!(serialize(&back), bytes);
    }

    #[test]
    fn general_certificate_verifies() {
        let cert = build_certificate(&frac(2, 1), 3, &nat(3)).unwrap();
        assert_eq!(cert.steps[0].case, CASE_GCD_REDUCTION);
        let report = verify_certificate(&cert);
        assert!(report.ok, "failures: {:?}", report.failures);
    }

    #[test]
    fn tampered_output_names_refinement() {
        let mut cert = build_certificate(&frac(2, 1), 3, &nat(2)).unwrap();
        cert.steps[1].output.num = "18".to_string();
        let report = verify_certificate(&cert);
        assert!(!report.ok);
        assert!(report
            .failures
            .iter()
            .any(|f| f.check_name == "refinement-formula" && f.step_index == Some(1)));
    }

    #[test]
    fn reordered_steps_break_chaining() {
        let mut cert = build_certificate(&frac(2, 1), 3, &nat(2)).unwrap();
        cert.steps.swap(0, 1);
        let report = verify_certificate(&cert);
        assert!(!report.ok);
        assert!(report.failures.iter().any(|f| f.check_name == "chaining"));
    }

    #[test]
    fn malformed_json_reports_position() {
        let err = deserialize(b"{}").unwrap_err();
        assert!(err.position.is_some());

        let cert = build_certificate(&frac(3, 2), 1, &nat(2)).unwrap();
        let mut text = String::from_utf8(serialize(&cert)).unwrap();
        // odd-numerator step must not carry a witness
        text = text.replace("\"case\": \"odd-numerator\",", "\"case\": \"odd-numerator\", \"witness_c\": \"1\",");
        assert!(deserialize(text.as_bytes()).is_err());
    }

    #[test]
    fn noncanonical_digits_flagged() {
        let mut cert = build_certificate(&frac(2, 1), 1, &nat(2)).unwrap();
        cert.steps[0].defect_in = "02".to_string();
        let report = verify_certificate(&cert);
        assert!(!report.ok);
        assert!(report.failures.iter().any(|f| f.check_name == "structure"));
    }
}
