use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use descent_core::{decimal::sqrt_decimal_floor, Fraction, Nat};
use descent2::bench::fuzz_bench;
use descent2::certificate::{build_certificate, deserialize, serialize, verify_certificate};
use descent2::table::{convergence_table, render_rows, OutputFormat, TableOutcome};

const EXIT_OK: u8 = 0;
const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_PRECONDITION: u8 = 3;

fn parse_nat(s: &str) -> Result<Nat, String> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("{s:?} is not a non-negative decimal integer"));
    }
    Nat::from_str(s).map_err(|e| e.to_string())
}

#[derive(Parser)]
#[command(
    name = "descent2",
    about = "Exact rational descent toward square roots, with checkable certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Table => OutputFormat::Table,
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
        }
    }
}

#[derive(Args)]
struct SeedArgs {
    /// Numerator of the starting over-approximation
    #[arg(long, value_parser = parse_nat)]
    num: Nat,
    /// Denominator of the starting over-approximation
    #[arg(long, value_parser = parse_nat)]
    den: Nat,
    /// Target radicand n; the descent approximates sqrt(n)
    #[arg(long, default_value = "2", value_parser = parse_nat)]
    radicand: Nat,
}

#[derive(Subcommand)]
enum Command {
    /// Run the descent and print a convergence table
    Descend {
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long, default_value_t = 5)]
        steps: usize,
        /// Fractional decimal digits per row
        #[arg(long, default_value_t = 30)]
        precision: u32,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Run the descent and write a proof certificate
    Certify {
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long)]
        steps: usize,
        /// Output file (conventionally *.descent.json)
        #[arg(long)]
        out: PathBuf,
    },
    /// Independently re-check every claim in a certificate file
    Verify { file: PathBuf },
    /// Print the exact truncated decimal expansion of sqrt(n)
    Digits {
        #[arg(long, value_parser = parse_nat)]
        radicand: Nat,
        #[arg(long)]
        precision: u32,
    },
    /// Fuzz random valid inputs through one descent step and time it
    Bench {
        #[arg(long)]
        bits: u64,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        parallel: bool,
    },
}

fn seed_fraction(seed: &SeedArgs) -> Result<Fraction, u8> {
    Fraction::new(seed.num.clone(), seed.den.clone()).map_err(|e| {
        eprintln!("error: {e}");
        EXIT_PRECONDITION
    })
}

fn run(cli: Cli) -> u8 {
    match cli.command {
        Command::Descend {
            seed,
            steps,
            precision,
            format,
        } => {
            let f = match seed_fraction(&seed) {
                Ok(f) => f,
                Err(code) => return code,
            };
            match convergence_table(&f, &seed.radicand, steps, precision) {
                Ok(TableOutcome::Rows(rows)) => {
                    print!("{}", render_rows(&rows, format.into()));
                    EXIT_OK
                }
                Ok(TableOutcome::ExactRoot(cert)) => {
                    match format {
                        Format::Json => println!(
                            "{}",
                            serde_json::json!({
                                "radicand": cert.radicand.to_string(),
                                "exact_root": cert.root.to_string(),
                            })
                        ),
                        _ => println!(
                            "radicand {} is a perfect square: exact root {}",
                            cert.radicand, cert.root
                        ),
                    }
                    EXIT_OK
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    EXIT_PRECONDITION
                }
            }
        }
        Command::Certify { seed, steps, out } => {
            let f = match seed_fraction(&seed) {
                Ok(f) => f,
                Err(code) => return code,
            };
            match build_certificate(&f, steps, &seed.radicand) {
                Ok(cert) => {
                    if let Err(e) = fs::write(&out, serialize(&cert)) {
                        eprintln!("error: cannot write {}: {e}", out.display());
                        return EXIT_VERIFY_FAILED;
                    }
                    println!("wrote {} steps to {}", cert.steps.len(), out.display());
                    EXIT_OK
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    EXIT_PRECONDITION
                }
            }
        }
        Command::Verify { file } => {
            let bytes = match fs::read(&file) {
                Ok(b) => b,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", file.display());
                    return EXIT_VERIFY_FAILED;
                }
            };
            let cert = match deserialize(&bytes) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("verification failed: malformed certificate: {e}");
                    return EXIT_VERIFY_FAILED;
                }
            };
            let report = verify_certificate(&cert);
            if report.ok {
                println!("OK: {} steps verified", cert.steps.len());
                EXIT_OK
            } else {
                for f in &report.failures {
                    match f.step_index {
                        Some(i) => eprintln!("step {i}: {}: {}", f.check_name, f.detail),
                        None => eprintln!("certificate: {}: {}", f.check_name, f.detail),
                    }
                }
                eprintln!("verification failed: {} check(s)", report.failures.len());
                EXIT_VERIFY_FAILED
            }
        }
        Command::Digits {
            radicand,
            precision,
        } => match sqrt_decimal_floor(&radicand, precision) {
            Ok(s) => {
                println!("{s}");
                EXIT_OK
            }
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_PRECONDITION
            }
        },
        Command::Bench {
            bits,
            trials,
            seed,
            parallel,
        } => {
            if bits < 2 || trials < 1 {
                eprintln!("error: bench requires --bits >= 2 and --trials >= 1");
                return EXIT_PRECONDITION;
            }
            let summary = fuzz_bench(bits, trials, seed, parallel);
            println!(
                "trials: {}  violations: {}  elapsed: {:.3}s  steps/sec: {:.0}",
                summary.trials,
                summary.violations,
                summary.elapsed.as_secs_f64(),
                summary.steps_per_sec
            );
            if summary.violations == 0 {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            }
        }
    }
}

fn main() -> ExitCode {
    ExitCode::from(run(Cli::parse()))
}
