//! Command-line surface for `cellmap-core`: argument parsing, table
//! ingestion, report rendering and exit codes.

pub mod commands;
pub mod render;
pub mod tables;

use std::ffi::OsString;
use std::path::PathBuf;

use cellmap_core::error::Error;
use clap::{Args, Parser, Subcommand};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;
pub const EXIT_INCONCLUSIVE: i32 = 4;

/// Environment variable naming the default table directory.
pub const TABLE_DIR_VAR: &str = "CELLMAP_TABLE_DIR";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn new(code: i32, message: impl Into<String>) -> Failure {
        Failure { code, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match &e {
            Error::InsufficientTruncation(_) | Error::InconclusiveSample(_) | Error::DegenerateSample(_) => {
                EXIT_INCONCLUSIVE
            }
            Error::MlsViolation(_)
            | Error::SpringerNormalization(_)
            | Error::CorrespondenceGap(_)
            | Error::DeltaMismatch(_)
            | Error::FormViolation(_)
            | Error::VerificationFailure(_)
            | Error::Internal(_) => EXIT_VERIFY,
            _ => EXIT_DATA,
        };
        Failure::new(code, e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(name = "cellmap", version, about = "Weyl groups, nilpotent orbits and parahoric Kazhdan-Lusztig maps")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Global {
    /// Emit the machine-readable JSON format.
    #[arg(long, global = true)]
    pub json: bool,
    /// Also write the output to this file.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Sampling seed for the Kazhdan-Lusztig oracle.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Truncation order t^K for the oracle (default 2N + r + 4).
    #[arg(long, global = true, value_name = "K")]
    pub trunc: Option<usize>,
    /// Directory of table files (default: $CELLMAP_TABLE_DIR).
    #[arg(long, global = true, value_name = "DIR")]
    pub tables: Option<PathBuf>,
    /// Replace already registered tables with different checksums.
    #[arg(long, global = true)]
    pub force: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Root datum: simple roots, Cartan matrix, degrees, highest root.
    Roots { ty: String },
    /// Conjugacy classes of the Weyl group.
    Classes { ty: String },
    /// Character table.
    Chars { ty: String },
    /// Fake degrees and b-invariants.
    Fakedeg { ty: String },
    /// Nilpotent orbits with dimensions, specialness and duals.
    Orbits { ty: String },
    /// Springer correspondence.
    Springer { ty: String },
    /// Truncated induction from a parahoric levi.
    Jinduce {
        ty: String,
        /// Affine node subset, e.g. 0,2.
        #[arg(long)]
        levi: String,
        /// Character of the levi Weyl group, e.g. "2 x 1,1".
        #[arg(long)]
        rep: String,
    },
    /// Kazhdan-Lusztig map of one orbit.
    Kl {
        ty: String,
        #[arg(long)]
        orbit: String,
        /// Affine node subset (default: the hyperspecial parahoric).
        #[arg(long)]
        parahoric: Option<String>,
    },
    /// Verify the parahoric identity for every parahoric and special orbit.
    Verify { ty: String },
    /// Cell map from dual orbits to classes.
    Av { ty: String },
    /// Strata labels and their Kazhdan-Lusztig classes.
    Strata { ty: String },
    /// Predicted parahoric Kazhdan-Lusztig table for G2 or F4.
    Predict { ty: String },
    /// Run every invariant suite.
    Selftest,
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parse and run a command line (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match commands::execute(&cli) {
        Ok(out) => {
            let text = if cli.global.json { out.json_text() } else { out.text.clone() };
            if let Some(path) = &cli.global.out {
                if let Err(e) = std::fs::write(path, &text) {
                    return Outcome {
                        code: EXIT_DATA,
                        stdout: text,
                        stderr: format!("error: cannot write {}: {e}\n", path.display()),
                    };
                }
            }
            let stderr = if out.code == EXIT_OK { String::new() } else { format!("error: {}\n", out.summary) };
            Outcome { code: out.code, stdout: text, stderr }
        }
        Err(f) => Outcome { code: f.code, stdout: String::new(), stderr: format!("error: {}\n", f.message) },
    }
}
