//! The `theater` command line.
//!
//! Exit codes: 0 success (a predicate answering `false` included), 1
//! `verify` failure or I/O failure, 2 usage or parse error, 3 a size too
//! large for exhaustive work.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::json;

use crate::anomaly::{find_b_anomaly, theater_violation, AnomalyMode, Direction};
use crate::counting::{
    count_bounded_cycles, count_class_brute_capped, enumerate_class_capped, sampler_rng, BoundedCycleSampler, PermClass,
    DEFAULT_ENUMERATION_CAP, SAMPLER_RNG,
};
use crate::error::Error;
use crate::foata::{cycle_decomposition, foata_forward, foata_inverse};
use crate::perm::{parse_permutation, DiagramFormat, Permutation, TextStyle};
use crate::theater_sim::{exhaustive_full_occupancy, monte_carlo, SeatPolicy};
use crate::verify::{run_suite, DEFAULT_MAX_LENGTH, VERIFY_CAP};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "theater", version, about = "Foata correspondence, b-anomalies and theater-admissible permutations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DiagramOut {
    Ascii,
    Svg,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ClassArg {
    BoundedCycles,
    TheaterAdmissible,
    AnomalyFree,
}

impl From<ClassArg> for PermClass {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::BoundedCycles => PermClass::BoundedCycles,
            ClassArg::TheaterAdmissible => PermClass::TheaterAdmissible,
            ClassArg::AnomalyFree => PermClass::AnomalyFree,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Recurrence,
    Brute,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DirectionArg {
    ToTheater,
    ToBounded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SimMode {
    Exhaustive,
    MonteCarlo,
}

fn positive() -> clap::builder::RangedU64ValueParser<usize> {
    clap::builder::RangedU64ValueParser::<usize>::new().range(1..)
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Image of a permutation under the Foata correspondence
    Foata {
        perm: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Preimage under the Foata correspondence
    #[command(name = "foata-inv")]
    FoataInv {
        perm: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Canonical cycle decomposition
    Cycles {
        perm: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Look for b-anomalies
    Anomaly {
        perm: String,
        #[arg(long, value_parser = positive())]
        b: usize,
        /// List every block that is a b-anomaly
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Theater admissibility for block length b
    Admissible {
        perm: String,
        #[arg(long, value_parser = positive())]
        b: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Bijection between bounded-cycle and theater-admissible permutations
    Biject {
        perm: String,
        #[arg(long, value_enum)]
        direction: DirectionArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Count a class of permutations
    Count {
        #[arg(long, value_parser = positive())]
        length: usize,
        #[arg(long, value_parser = positive())]
        b: usize,
        #[arg(long, value_enum, default_value_t = ClassArg::BoundedCycles)]
        class: ClassArg,
        #[arg(long, value_enum, default_value_t = Method::Recurrence)]
        method: Method,
        /// Largest length accepted for brute-force counting
        #[arg(long, value_parser = positive(), default_value_t = DEFAULT_ENUMERATION_CAP)]
        max_length: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List the members of a class in lexicographic order
    Enumerate {
        #[arg(long, value_parser = positive())]
        length: usize,
        #[arg(long, value_parser = positive())]
        b: usize,
        #[arg(long, value_enum)]
        class: ClassArg,
        #[arg(long, value_parser = positive(), default_value_t = DEFAULT_ENUMERATION_CAP)]
        max_length: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Uniform draws of permutations with all cycles of length at most b
    Sample {
        #[arg(long, value_parser = positive())]
        length: usize,
        #[arg(long, value_parser = positive())]
        b: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..), default_value_t = 1)]
        trials: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Theater seating dynamics
    Simulate {
        #[arg(long, value_parser = positive())]
        length: usize,
        #[arg(long, value_parser = positive())]
        b: usize,
        #[arg(long, value_enum)]
        mode: SimMode,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..), default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the exhaustive property suite
    Verify {
        #[arg(long, value_parser = positive(), default_value_t = DEFAULT_MAX_LENGTH)]
        max_length: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Point diagram of a permutation
    Diagram {
        perm: String,
        #[arg(long, value_enum)]
        format: DiagramOut,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure of a subcommand, mapped onto an exit code.
#[derive(Debug)]
enum Failure {
    Lib(Error),
    Usage(String),
    Io(std::io::Error),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<crate::error::ParseError> for Failure {
    fn from(e: crate::error::ParseError) -> Self {
        Failure::Lib(e.into())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Parses `argv` (program name first) and runs the subcommand, writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(failure) => {
            let (code, msg) = match failure {
                Failure::Lib(e @ Error::Infeasible { .. }) => (EXIT_INFEASIBLE, e.to_string()),
                Failure::Lib(e) => (EXIT_USAGE, e.to_string()),
                Failure::Usage(msg) => (EXIT_USAGE, msg),
                Failure::Io(e) => (EXIT_FAILURE, e.to_string()),
                Failure::Verify => (EXIT_FAILURE, "verification failed".to_string()),
            };
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn parse_perm(text: &str) -> Result<(Permutation, TextStyle), Failure> {
    Ok(parse_permutation(text)?)
}

fn print_json(out: &mut dyn Write, value: &serde_json::Value) -> Outcome {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Foata { perm, format } => map_command(&perm, format, out, foata_forward),
        Command::FoataInv { perm, format } => map_command(&perm, format, out, foata_inverse),
        Command::Cycles { perm, format } => {
            let (p, _) = parse_perm(&perm)?;
            let dec = cycle_decomposition(&p);
            match format {
                Format::Text => writeln!(out, "{dec}")?,
                Format::Json => print_json(
                    out,
                    &json!({ "permutation": p, "cycles": dec, "max_cycle_length": dec.max_cycle_length() }),
                )?,
            }
            Ok(())
        }
        Command::Anomaly { perm, b, all, format } => {
            let (p, _) = parse_perm(&perm)?;
            let mode = if all { AnomalyMode::All } else { AnomalyMode::Single };
            let witnesses = find_b_anomaly(&p, b, mode)?;
            match format {
                Format::Text => {
                    writeln!(out, "{}", !witnesses.is_empty())?;
                    for w in &witnesses {
                        writeln!(
                            out,
                            "block {}..{} letters {} blocker {} at position {}",
                            w.first_position(),
                            w.last_position(),
                            join(&w.block_letters),
                            w.blocker_value,
                            w.blocker_position
                        )?;
                    }
                }
                Format::Json => print_json(
                    out,
                    &json!({
                        "permutation": p,
                        "b": b,
                        "mode": if all { "all" } else { "single" },
                        "has_anomaly": !witnesses.is_empty(),
                        "witnesses": witnesses,
                    }),
                )?,
            }
            Ok(())
        }
        Command::Admissible { perm, b, format } => {
            let (p, _) = parse_perm(&perm)?;
            let violation = theater_violation(&p, b)?;
            match format {
                Format::Text => {
                    writeln!(out, "{}", violation.is_none())?;
                    if let Some(v) = &violation {
                        writeln!(
                            out,
                            "violation: block {}..{} letters {} victim {} letter {}",
                            v.first_position(),
                            v.last_position(),
                            join(&v.block_letters),
                            v.victim_position,
                            v.victim_value
                        )?;
                    }
                }
                Format::Json => print_json(
                    out,
                    &json!({ "permutation": p, "b": b, "admissible": violation.is_none(), "violation": violation }),
                )?,
            }
            Ok(())
        }
        Command::Biject { perm, direction, format } => {
            let (p, style) = parse_perm(&perm)?;
            let (dir, name) = match direction {
                DirectionArg::ToTheater => (Direction::ToTheater, "to-theater"),
                DirectionArg::ToBounded => (Direction::ToBounded, "to-bounded"),
            };
            let image = crate::anomaly::biject(&p, dir);
            match format {
                Format::Text => writeln!(out, "{}", image.to_text(style))?,
                Format::Json => print_json(out, &json!({ "direction": name, "input": p, "output": image }))?,
            }
            Ok(())
        }
        Command::Count { length, b, class, method, max_length, format } => {
            let class = PermClass::from(class);
            let mut results: Vec<(&str, BigUint)> = Vec::new();
            if matches!(method, Method::Recurrence | Method::Both) {
                results.push(("recurrence", count_bounded_cycles(length, b)?));
            }
            if matches!(method, Method::Brute | Method::Both) {
                results.push(("brute", count_class_brute_capped(length, b, class, max_length)?));
            }
            match format {
                Format::Text if results.len() == 1 => writeln!(out, "{}", results[0].1)?,
                Format::Text => {
                    for (name, count) in &results {
                        writeln!(out, "{name} {count}")?;
                    }
                }
                Format::Json => {
                    let objects: Vec<_> = results
                        .iter()
                        .map(|(name, count)| {
                            json!({ "L": length, "b": b, "class": class.as_str(), "method": name, "count": count.to_string() })
                        })
                        .collect();
                    if objects.len() == 1 {
                        print_json(out, &objects[0])?;
                    } else {
                        print_json(out, &serde_json::Value::Array(objects))?;
                    }
                }
            }
            if results.windows(2).any(|w| w[0].1 != w[1].1) {
                return Err(Failure::Usage("recurrence and brute-force counts differ".into()));
            }
            Ok(())
        }
        Command::Enumerate { length, b, class, max_length, format } => {
            for p in enumerate_class_capped(length, b, class.into(), max_length)? {
                match format {
                    Format::Text => writeln!(out, "{}", p.to_short_text())?,
                    Format::Json => print_json(out, &json!(p))?,
                }
            }
            Ok(())
        }
        Command::Sample { length, b, seed, trials, format } => {
            let sampler = BoundedCycleSampler::new(length, b)?;
            let mut rng = sampler_rng(seed);
            let samples: Vec<Permutation> = (0..trials).map(|_| sampler.sample(&mut rng)).collect();
            match format {
                Format::Text => {
                    for p in &samples {
                        writeln!(out, "{}", p.to_short_text())?;
                    }
                }
                Format::Json => print_json(
                    out,
                    &json!({ "L": length, "b": b, "seed": seed, "rng": SAMPLER_RNG, "samples": samples }),
                )?,
            }
            Ok(())
        }
        Command::Simulate { length, b, mode, trials, seed, format } => match mode {
            SimMode::Exhaustive => {
                let traces = exhaustive_full_occupancy(length, b)?;
                match format {
                    Format::Text => {
                        for t in &traces {
                            writeln!(out, "{}", t.seat_order()?.to_short_text())?;
                        }
                    }
                    Format::Json => print_json(
                        out,
                        &json!({ "L": length, "b": b, "mode": "exhaustive", "count": traces.len(), "traces": traces }),
                    )?,
                }
                Ok(())
            }
            SimMode::MonteCarlo => {
                let summary = monte_carlo(length, b, seed, trials, SeatPolicy::UniformReachable)?;
                match format {
                    Format::Text => {
                        writeln!(out, "trials {}", summary.trials)?;
                        writeln!(out, "full {}", summary.full)?;
                        writeln!(out, "full_rate {:.6}", summary.full_rate)?;
                        writeln!(out, "mean_seated_fraction {:.6}", summary.mean_seated_fraction)?;
                        writeln!(out, "seed {}", summary.seed)?;
                        writeln!(out, "policy {}", summary.policy.as_str())?;
                        writeln!(out, "rng {}", summary.rng)?;
                    }
                    Format::Json => print_json(out, &json!(summary))?,
                }
                Ok(())
            }
        },
        Command::Verify { max_length, format } => {
            if max_length > VERIFY_CAP {
                return Err(Error::Infeasible { length: max_length, cap: VERIFY_CAP }.into());
            }
            let report = run_suite(max_length);
            match format {
                Format::Text => writeln!(out, "{report}")?,
                Format::Json => print_json(out, &json!({ "passed": report.passed(), "report": report }))?,
            }
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Verify)
            }
        }
        Command::Diagram { perm, format, out: path } => {
            let (p, _) = parse_perm(&perm)?;
            let doc = match format {
                DiagramOut::Ascii => {
                    if p.len() > 99 {
                        return Err(Failure::Usage("ascii diagrams are limited to 99 letters".into()));
                    }
                    p.render(DiagramFormat::Ascii)
                }
                DiagramOut::Svg => p.render(DiagramFormat::Svg),
                DiagramOut::Json => format!("{}\n", json!({ "points": p.point_diagram().points })),
            };
            match path {
                Some(path) => std::fs::write(path, doc)?,
                None => out.write_all(doc.as_bytes())?,
            }
            Ok(())
        }
    }
}

fn map_command(perm: &str, format: Format, out: &mut dyn Write, f: fn(&Permutation) -> Permutation) -> Outcome {
    let (p, style) = parse_perm(perm)?;
    let image = f(&p);
    match format {
        Format::Text => writeln!(out, "{}", image.to_text(style))?,
        Format::Json => print_json(out, &json!({ "input": p, "output": image }))?,
    }
    Ok(())
}

fn join(letters: &[u32]) -> String {
    letters.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}
