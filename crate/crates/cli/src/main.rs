//! One-shot queries over the period-doubling sequence.
//!
//! Exit codes: 0 success, 2 usage, 3 not a factor, 4 budget exceeded,
//! 5 divergences found by `verify`. Output is deterministic: identical
//! invocations produce identical bytes.

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use pdseq::census::{palindrome_census, position_of, square_census, CensusPoint};
use pdseq::doubling::prefix;
use pdseq::envelope::extension_of;
use pdseq::gaps::{gap_sequence, theta_prefix, Gap, GapRole, ThetaId};
use pdseq::verify::{sweep, SweepConfig};
use pdseq::words::Word;
use pdseq::Error;

const EXIT_USAGE: u8 = 2;
const EXIT_NOT_A_FACTOR: u8 = 3;
const EXIT_BUDGET: u8 = 4;
const EXIT_DIVERGENCES: u8 = 5;

#[derive(Parser)]
#[command(
    name = "pdseq",
    about = "Envelope words, gap sequences and censuses of the period-doubling sequence",
    version
)]
struct Cli {
    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the first N letters of the sequence.
    Prefix { n: usize },

    /// Envelope word and extension of a factor.
    Env { word: String },

    /// The first gaps of a factor, with their roles.
    Gaps {
        word: String,
        /// How many gaps to list.
        #[arg(long, default_value_t = 8)]
        count: usize,
    },

    /// Start position of the P-th occurrence of a factor.
    Position { word: String, p: usize },

    /// Print the first N letters of theta sequence 1 or 2.
    Theta { id: u8, n: usize },

    /// Palindrome census: a single length or an inclusive range like 1..32.
    Palindromes { range: String },

    /// Square census: a single prefix length or an inclusive range.
    Squares { range: String },

    /// Run the differential verification sweep.
    Verify {
        /// Longest factor length enumerated.
        #[arg(long = "max-len", default_value_t = 64)]
        max_len: usize,
        /// Largest gap index tested per factor.
        #[arg(long = "max-p", default_value_t = 50)]
        max_p: usize,
        /// Host prefix is 2^K letters.
        #[arg(long = "prefix-pow", default_value_t = 16)]
        prefix_pow: u32,
        /// Skip the pinned golden examples.
        #[arg(long = "no-golden")]
        no_golden: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(match err {
                Error::NotAFactor(_) => EXIT_NOT_A_FACTOR,
                Error::BudgetExceeded { .. } => EXIT_BUDGET,
                Error::MalformedWord(_) | Error::InvalidLetter(_) | Error::EmptyPattern => {
                    EXIT_USAGE
                }
                _ => 1,
            })
        }
    }
}

/// CLI words are bare tokens of a/b letters; anything else is a usage error.
fn parse_word(token: &str) -> Result<Word, Error> {
    if token.is_empty() || !token.chars().all(|c| c == 'a' || c == 'b') {
        return Err(Error::MalformedWord(token.to_string()));
    }
    token.parse()
}

/// `"5"` or `"1..32"`, inclusive on both ends.
fn parse_range(token: &str) -> Result<(usize, usize), Error> {
    let malformed = || Error::MalformedWord(token.to_string());
    if let Some((lo, hi)) = token.split_once("..") {
        let lo: usize = lo.parse().map_err(|_| malformed())?;
        let hi: usize = hi.parse().map_err(|_| malformed())?;
        if lo == 0 || hi < lo {
            return Err(malformed());
        }
        Ok((lo, hi))
    } else {
        let n: usize = token.parse().map_err(|_| malformed())?;
        if n == 0 {
            return Err(malformed());
        }
        Ok((n, n))
    }
}

#[derive(Serialize)]
struct EnvOutput {
    word: Word,
    envelope: String,
    envelope_word: Word,
    mu1: Word,
    mu2: Word,
}

#[derive(Serialize)]
struct GapOutput {
    p: usize,
    role: GapRole,
    #[serde(flatten)]
    gap: Gap,
}

#[derive(Serialize)]
struct PositionOutput {
    word: Word,
    p: usize,
    position: usize,
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    match &cli.command {
        Command::Prefix { n } => {
            let word = prefix(*n)?;
            if cli.json {
                println!("{}", serde_json::to_string(&word).expect("serializable"));
            } else {
                println!("{word}");
            }
        }

        Command::Env { word } => {
            let factor = parse_word(word)?;
            let ext = extension_of(&factor)?;
            if cli.json {
                let out = EnvOutput {
                    word: factor,
                    envelope: ext.env.to_string(),
                    envelope_word: ext.assemble(),
                    mu1: ext.mu1,
                    mu2: ext.mu2,
                };
                println!("{}", serde_json::to_string(&out).expect("serializable"));
            } else {
                println!(
                    "{} = {}, mu1 = {}, mu2 = {}",
                    ext.env,
                    ext.assemble(),
                    ext.mu1,
                    ext.mu2
                );
            }
        }

        Command::Gaps { word, count } => {
            let factor = parse_word(word)?;
            let gaps = gap_sequence(&factor, *count)?;
            if cli.json {
                let out: Vec<GapOutput> = gaps
                    .into_iter()
                    .enumerate()
                    .map(|(i, (role, gap))| GapOutput {
                        p: i + 1,
                        role,
                        gap,
                    })
                    .collect();
                println!("{}", serde_json::to_string(&out).expect("serializable"));
            } else {
                let parts: Vec<String> = gaps
                    .iter()
                    .enumerate()
                    .map(|(i, (_, gap))| format!("p={} {}", i + 1, gap))
                    .collect();
                println!("{}", parts.join(" | "));
            }
        }

        Command::Position { word, p } => {
            let factor = parse_word(word)?;
            if *p == 0 {
                return Err(Error::MalformedWord("occurrence indices start at 1".into()));
            }
            let position = position_of(&factor, *p)?;
            if cli.json {
                let out = PositionOutput {
                    word: factor,
                    p: *p,
                    position,
                };
                println!("{}", serde_json::to_string(&out).expect("serializable"));
            } else {
                println!("{position}");
            }
        }

        Command::Theta { id, n } => {
            let theta = match id {
                1 => ThetaId::Theta1,
                2 => ThetaId::Theta2,
                _ => {
                    return Err(Error::MalformedWord(format!(
                        "theta id {id}, expected 1 or 2"
                    )))
                }
            };
            let letters = theta_prefix(theta, *n)?;
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string(&letters.to_string()).expect("serializable")
                );
            } else {
                println!("{letters}");
            }
        }

        Command::Palindromes { range } => {
            let (lo, hi) = parse_range(range)?;
            let mut points = Vec::with_capacity(hi - lo + 1);
            for n in lo..=hi {
                points.push(CensusPoint {
                    n,
                    value: palindrome_census(n)?,
                });
            }
            emit_census(cli.json, lo == hi, &points);
        }

        Command::Squares { range } => {
            let (lo, hi) = parse_range(range)?;
            let points: Vec<CensusPoint> = (lo..=hi)
                .map(|n| CensusPoint {
                    n,
                    value: square_census(n),
                })
                .collect();
            emit_census(cli.json, lo == hi, &points);
        }

        Command::Verify {
            max_len,
            max_p,
            prefix_pow,
            no_golden,
        } => {
            let cfg = SweepConfig {
                max_factor_len: *max_len,
                max_gap_index: *max_p,
                prefix_exponent: *prefix_pow,
                seed_examples: !no_golden,
                fault: None,
            };
            let report = sweep(&cfg);
            for divergence in &report.divergences {
                println!(
                    "{}",
                    serde_json::to_string(divergence).expect("serializable")
                );
            }
            eprintln!(
                "checked {} factors, {} gap pairs; skipped {} pairs with unconfirmed successors{}",
                report.checked_factors,
                report.checked_pairs,
                report.skipped_pairs,
                if report.incomplete {
                    "; report incomplete (budget clamp)"
                } else {
                    ""
                },
            );
            println!("{} divergences", report.divergences.len());
            if !report.is_clean() {
                return Ok(ExitCode::from(EXIT_DIVERGENCES));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn emit_census(json: bool, single: bool, points: &[CensusPoint]) {
    if json {
        println!("{}", serde_json::to_string(points).expect("serializable"));
    } else if single {
        println!("{}", points[0].value);
    } else {
        println!("n_or_N,value");
        for point in points {
            println!("{},{}", point.n, point.value);
        }
    }
}
