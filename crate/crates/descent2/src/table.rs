//! Convergence tables: one row per iterate with exact decimal prefix and
//! the count of leading digits matching the target root.

use std::fmt::Write as _;

use descent_core::{
    decimal::{decimal_floor, matched_digits},
    iterate, iterate_general, DescentError, EqualityCertificate, Fraction, GeneralRun, Nat,
};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergenceRow {
    pub step_index: usize,
    pub fraction: Fraction,
    /// Raw defect `num^2 - n*den^2` of this row's fraction.
    pub defect: Nat,
    pub decimal_prefix: String,
    pub matched_digits: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableOutcome {
    Rows(Vec<ConvergenceRow>),
    /// The seed equals `sqrt(n)` exactly.
    ExactRoot(EqualityCertificate),
}

fn row(
    step_index: usize,
    fraction: Fraction,
    radicand: &Nat,
    precision: u32,
) -> ConvergenceRow {
    let defect = fraction
        .defect(radicand)
        .expect("every tabulated fraction over-approximates the root");
    let decimal_prefix = decimal_floor(&fraction, precision);
    let matched = matched_digits(&fraction, radicand, precision)
        .expect("radicand is positive");
    ConvergenceRow {
        step_index,
        fraction,
        defect,
        decimal_prefix,
        matched_digits: matched,
    }
}

/// Rows for the seed and each iterate. Radicand 2 uses the parity descent;
/// any other radicand uses the gcd descent.
pub fn convergence_table(
    seed: &Fraction,
    radicand: &Nat,
    steps: usize,
    precision: u32,
) -> Result<TableOutcome, DescentError> {
    let two = Nat::from(2u32);
    let outputs: Vec<Fraction> = if *radicand == two {
        iterate(seed, steps)?
            .into_iter()
            .map(|r| r.output)
            .collect()
    } else {
        match iterate_general(radicand, seed, steps)? {
            GeneralRun::ExactRoot(cert) => return Ok(TableOutcome::ExactRoot(cert)),
            GeneralRun::Descent(records) => {
                records.into_iter().map(|r| r.output).collect()
            }
        }
    };
    let mut rows = Vec::with_capacity(outputs.len() + 1);
    rows.push(row(0, seed.clone(), radicand, precision));
    for (i, f) in outputs.into_iter().enumerate() {
        rows.push(row(i + 1, f, radicand, precision));
    }
    Ok(TableOutcome::Rows(rows))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Table,
    Json,
    Csv,
}

#[derive(Serialize)]
struct RowWire<'a> {
    step: usize,
    num: String,
    den: String,
    defect: String,
    decimal: &'a str,
    matched_digits: usize,
}

fn wire(r: &ConvergenceRow) -> RowWire<'_> {
    RowWire {
        step: r.step_index,
        num: r.fraction.num().to_string(),
        den: r.fraction.den().to_string(),
        defect: r.defect.to_string(),
        decimal: &r.decimal_prefix,
        matched_digits: r.matched_digits,
    }
}

/// Renders rows in the requested format; `Csv` columns are fixed as
/// `step,num,den,defect,decimal,matched_digits`.
pub fn render_rows(rows: &[ConvergenceRow], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let wires: Vec<_> = rows.iter().map(wire).collect();
            let mut s = serde_json::to_string_pretty(&wires).expect("rows serialize");
            s.push('\n');
            s
        }
        OutputFormat::Csv => {
            let mut s = String::from("step,num,den,defect,decimal,matched_digits\n");
            for r in rows {
                let w = wire(r);
                writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    w.step, w.num, w.den, w.defect, w.decimal, w.matched_digits
                )
                .expect("string write");
            }
            s
        }
        OutputFormat::Table => {
            let headers = ["step", "fraction", "defect", "decimal", "matched"];
            let cells: Vec<[String; 5]> = rows
                .iter()
                .map(|r| {
                    [
                        r.step_index.to_string(),
                        r.fraction.to_string(),
                        r.defect.to_string(),
                        r.decimal_prefix.clone(),
                        r.matched_digits.to_string(),
                    ]
                })
                .collect();
            let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
            for row in &cells {
                for (w, cell) in widths.iter_mut().zip(row.iter()) {
                    *w = (*w).max(cell.len());
                }
            }
            let mut s = String::new();
            for (i, h) in headers.iter().enumerate() {
                let sep = if i + 1 == headers.len() { '\n' } else { ' ' };
                write!(s, "{h:<width$}{sep}", width = widths[i]).expect("string write");
            }
            for row in &cells {
                for (i, cell) in row.iter().enumerate() {
                    let sep = if i + 1 == row.len() { '\n' } else { ' ' };
                    write!(s, "{cell:<width$}{sep}", width = widths[i]).expect("string write");
                }
            }
            s
        }
    }
}
