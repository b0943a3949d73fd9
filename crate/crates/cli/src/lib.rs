//! Command-line front end: encode secrets into share states, print the
//! access-structure report, certify the code distance, reconstruct from a
//! state file, and run the classical linear-scheme search.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use qss_core::access::{
    access_structure_report, erasure_correctable, reconstruct_classical, reconstruct_quantum,
    SecretPrior,
};
use qss_core::classical::{check_bound, search_linear_schemes, ThresholdParams};
use qss_core::code5::{encode_classical, encode_quantum, verify_distance, Bit, QubitSecret};
use qss_core::document::{
    read_state, render_access_report, render_distance_report, render_search_report,
    report_number, to_report_json, write_state, ReportFormat,
};
use qss_core::quantum::reduced_state;
use qss_core::{Error, ShareSubset};
use serde_json::json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_VERIFICATION: i32 = 2;
/// Unknown flags, unparseable values and malformed input files.
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "qss5", version, about = "Five-qubit (3,5) secret sharing laboratory")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
    Csv,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => ReportFormat::Json,
            Format::Table => ReportFormat::Table,
            Format::Csv => ReportFormat::Csv,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the five share qubits of a classical or quantum secret as a state document.
    Encode {
        /// Classical secret bit.
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1), conflicts_with_all = ["alpha0", "alpha1"])]
        secret: Option<u8>,
        /// Amplitude of |0⟩ as `re,im` (quantum secret).
        #[arg(long, requires = "alpha1", allow_hyphen_values = true)]
        alpha0: Option<String>,
        /// Amplitude of |1⟩ as `re,im` (quantum secret).
        #[arg(long, requires = "alpha0", allow_hyphen_values = true)]
        alpha1: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify all 31 share subsets.
    Report {
        /// Probability q0 of the secret 0; q1 = 1 - q0.
        #[arg(long, default_value_t = 0.5)]
        prior: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the Knill-Laflamme conditions up to a Pauli weight.
    Distance {
        #[arg(long, default_value_t = 3)]
        max_weight: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reconstruct the secret from the shares in a subset of a five-qubit state file.
    Reconstruct {
        /// Participants, e.g. `1,2,3`.
        #[arg(long)]
        subset: String,
        /// State document holding all five shares.
        #[arg(long)]
        state: PathBuf,
        #[arg(long, default_value_t = 0.5)]
        prior: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search linear GF(2) schemes with one-bit shares for a (k, n) threshold structure.
    SearchClassical {
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long = "max-rand", default_value_t = 5)]
        max_rand: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

impl Command {
    pub fn out(&self) -> Option<&PathBuf> {
        match self {
            Command::Encode { out, .. }
            | Command::Report { out, .. }
            | Command::Distance { out, .. }
            | Command::Reconstruct { out, .. }
            | Command::SearchClassical { out, .. } => out.as_ref(),
        }
    }
}

/// Result of one invocation: the exit status and the document to emit.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub status: i32,
    pub document: String,
}

impl Outcome {
    fn ok(document: String) -> Self {
        Self { status: EXIT_OK, document }
    }
}

/// Exit status for a library error.
pub fn status_for(err: &Error) -> i32 {
    match err {
        Error::Parse(_) => EXIT_USAGE,
        Error::Indeterminate { .. } => EXIT_VERIFICATION,
        Error::Domain(_) | Error::Unqualified(_) => EXIT_DOMAIN,
    }
}

fn parse_complex(text: &str) -> Result<Complex64, Error> {
    let mut parts = text.split(',').map(str::trim);
    let mut next = |what: &str| {
        parts
            .next()
            .filter(|p| !p.is_empty())
            .ok_or_else(|| Error::Parse(format!("missing {what} part in {text:?}")))?
            .parse::<f64>()
            .map_err(|e| Error::Parse(format!("{text:?}: {e}")))
    };
    let re = next("real")?;
    let im = match text.contains(',') {
        true => next("imaginary")?,
        false => 0.0,
    };
    if parts.next().is_some() {
        return Err(Error::Parse(format!("{text:?} has more than two parts")));
    }
    Ok(Complex64::new(re, im))
}

/// Dispatches one parsed command. Reading the state file happens here; writing
/// `--out` is left to the caller.
pub fn run(command: &Command) -> Result<Outcome, Error> {
    match command {
        Command::Encode {
            secret,
            alpha0,
            alpha1,
            ..
        } => {
            let psi = match (secret, alpha0, alpha1) {
                (Some(s), _, _) => encode_classical(Bit::try_from(*s)?),
                (None, Some(a0), Some(a1)) => {
                    let secret = QubitSecret::new(parse_complex(a0)?, parse_complex(a1)?)?;
                    encode_quantum(&secret)
                }
                _ => {
                    return Err(Error::Parse(
                        "encode needs --secret or both --alpha0 and --alpha1".into(),
                    ))
                }
            };
            Ok(Outcome::ok(write_state(&psi)))
        }
        Command::Report { prior, format, .. } => {
            let prior = SecretPrior::from_q0(*prior)?;
            let report = access_structure_report(prior)?;
            let status = if report.threshold_3_of_5 { EXIT_OK } else { EXIT_VERIFICATION };
            Ok(Outcome {
                status,
                document: render_access_report(&report, (*format).into()),
            })
        }
        Command::Distance {
            max_weight, format, ..
        } => {
            let report = verify_distance(*max_weight)?;
            let status = match report.distance {
                Some(d) if d < 3 => EXIT_VERIFICATION,
                _ => EXIT_OK,
            };
            Ok(Outcome {
                status,
                document: render_distance_report(&report, (*format).into()),
            })
        }
        Command::Reconstruct {
            subset,
            state,
            prior,
            format,
            ..
        } => {
            let j: ShareSubset = subset.parse()?;
            if j.is_empty() {
                return Err(Error::Domain("subset is empty".into()));
            }
            let text = std::fs::read_to_string(state)
                .map_err(|e| Error::Parse(format!("{}: {e}", state.display())))?;
            let psi = read_state(&text)?;
            if psi.num_qubits() != 5 {
                return Err(Error::Domain(format!(
                    "state file holds {} qubits, expected 5",
                    psi.num_qubits()
                )));
            }
            let prior = SecretPrior::from_q0(*prior)?;
            let shares = reduced_state(&psi, j)?;
            let classical = reconstruct_classical(j, &shares, prior)?;
            let quantum = if erasure_correctable(j)? {
                Some(reconstruct_quantum(j, &shares, None)?.recovered)
            } else {
                None
            };
            Ok(Outcome::ok(render_reconstruction(
                j,
                prior,
                &classical,
                quantum.as_ref(),
                (*format).into(),
            )))
        }
        Command::SearchClassical {
            n,
            k,
            max_rand,
            format,
            ..
        } => {
            let search = search_linear_schemes(*n, *k, *max_rand)?;
            let bound = check_bound(&ThresholdParams::binary(*n, *k)?);
            Ok(Outcome::ok(render_search_report(&search, &bound, (*format).into())))
        }
    }
}

fn render_reconstruction(
    j: ShareSubset,
    prior: SecretPrior,
    classical: &qss_core::access::ClassicalRecovery,
    quantum: Option<&qss_core::quantum::DensityMatrix>,
    format: ReportFormat,
) -> String {
    let rows = |m: &qss_core::quantum::DensityMatrix| -> Vec<Vec<[f64; 2]>> {
        (0..2)
            .map(|r| (0..2).map(|c| [m.matrix()[(r, c)].re, m.matrix()[(r, c)].im]).collect())
            .collect()
    };
    match format {
        ReportFormat::Json => to_report_json(&json!({
            "members": j,
            "prior": prior,
            "classical": classical,
            "quantum": quantum.map(|m| json!({ "recovered": rows(m) })),
        })),
        ReportFormat::Csv => {
            let mut out = String::from("members,guess,success_probability,helstrom_bound,quantum\n");
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                j.members().map(|m| m.to_string()).collect::<Vec<_>>().join(" "),
                classical.guess,
                report_number(classical.success_probability),
                report_number(classical.helstrom_bound),
                if quantum.is_some() { "recovered" } else { "unqualified" }
            ));
            out
        }
        ReportFormat::Table => {
            let mut out = format!(
                "subset:              {j}\nguess:               {}\nsuccess probability: {}\nhelstrom bound:      {}\n",
                classical.guess,
                report_number(classical.success_probability),
                report_number(classical.helstrom_bound)
            );
            match quantum {
                Some(m) => {
                    out.push_str("recovered qubit:\n");
                    for row in rows(m) {
                        let cells: Vec<String> = row
                            .iter()
                            .map(|[re, im]| format!("{} {}i", report_number(*re), report_number(*im)))
                            .collect();
                        out.push_str(&format!("  {}\n", cells.join("   ")));
                    }
                }
                None => out.push_str("recovered qubit:     unqualified subset\n"),
            }
            out
        }
    }
}
