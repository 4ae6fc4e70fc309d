mod commands;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use hochcat::hochschild::{DEFAULT_DIM_CAP, SCHEMA_VERSION};
use hochcat::io::to_json_pretty;
use hochcat::{Error, Result, ScalarKind};
use serde::Serialize;

/// Largest degree window accepted; complexes grow exponentially with it.
pub const MAX_WINDOW: usize = 6;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;

#[derive(Parser)]
#[command(name = "hochcat", version, about = "Exact Hochschild cohomology of finite linear categories and finite spaces")]
struct Cli {
    #[command(flatten)]
    settings: Settings,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct Settings {
    /// Scalar field: `rational` or `fp:<p>`. Defaults to the input files' own, else rational.
    #[arg(long, global = true, value_name = "rational|fp:<p>")]
    pub scalars: Option<ScalarKind>,
    /// Cohomology is exact in degrees 0..=N; degree N+1 is reported as an upper bound.
    #[arg(long, global = true, value_name = "N", default_value_t = 3)]
    pub window: usize,
    /// Use normalized cochains (identities excluded from the inputs).
    #[arg(long, global = true)]
    pub normalized: bool,
    /// Largest cochain space built in any one degree.
    #[arg(long, global = true, value_name = "N", default_value_t = DEFAULT_DIM_CAP)]
    pub max_dim: usize,
    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Emit the machine-readable JSON report.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check a description file (category, bimodule, presheaf or space) against its axioms.
    Validate { file: PathBuf },
    /// Hochschild cohomology of a category, with cocycle representatives.
    Hh {
        /// Category file or `builtin:<name>`; optional when --coefficients is given.
        category: Option<String>,
        /// Bimodule file to use as coefficients instead of the diagonal.
        #[arg(long, value_name = "FILE")]
        coefficients: Option<PathBuf>,
    },
    /// Compare the Betti tables of two Hochschild complexes.
    Compare {
        left: String,
        /// Second category; or use --opposite / --blind.
        right: Option<String>,
        /// Compare with the opposite category.
        #[arg(long, conflicts_with_all = ["right", "blind"])]
        opposite: bool,
        /// Compare the censoring-aware complex with the blind one on truncated coefficients.
        #[arg(long, conflicts_with = "right")]
        blind: bool,
    },
    /// Mayer–Vietoris sequence of a cover of a finite space by two opens.
    Mv {
        space: PathBuf,
        /// Cover file naming exactly two opens.
        #[arg(long, value_name = "FILE", conflicts_with_all = ["u", "v"])]
        cover: Option<PathBuf>,
        #[arg(long, requires = "v")]
        u: Option<String>,
        #[arg(long, requires = "u")]
        v: Option<String>,
    },
    /// Compare the presheaf bicomplex with the incidence category and the category algebra.
    GsCompare {
        /// Presheaf file, space file (its minimal-basis coefficients) or `builtin:<name>`.
        input: String,
    },
    /// First- and second-order deformation checks.
    Deform {
        category: String,
        /// Degree-2 cochain file.
        #[arg(required_unless_present = "enumerate")]
        cochain: Option<PathBuf>,
        /// Check every basis class of HH² instead of a given cochain.
        #[arg(long, conflicts_with = "cochain")]
        enumerate: bool,
    },
    /// Run the verification suite over the bundled corpus.
    Suite {
        /// Run only these criteria (1 to 12).
        #[arg(long = "criterion", value_name = "N")]
        criteria: Vec<usize>,
    },
}

/// A finished report: its JSON body, its text rendering and the exit code.
pub struct Outcome {
    pub json: String,
    pub text: String,
    pub code: i32,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema_version: u32,
    command: &'a str,
    #[serde(flatten)]
    report: &'a T,
}

impl Outcome {
    /// `verified` says whether every mathematical check in the report passed.
    pub fn new<T: Serialize>(command: &str, report: &T, text: String, verified: bool) -> Result<Self> {
        let json = to_json_pretty(&Envelope { schema_version: SCHEMA_VERSION, command, report })?;
        Ok(Outcome { json, text, code: if verified { EXIT_OK } else { EXIT_VERIFICATION } })
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e.root() {
        Error::ResourceCap { .. } => EXIT_RESOURCE,
        Error::NotExact(_) => EXIT_VERIFICATION,
        _ => EXIT_VALIDATION,
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let s = &cli.settings;
    if s.window > MAX_WINDOW {
        return Err(Error::ResourceCap { what: "degree window".into(), dim: s.window, cap: MAX_WINDOW });
    }
    match &cli.command {
        Command::Validate { file } => commands::validate(s, file),
        Command::Hh { category, coefficients } => commands::hh(s, category.as_deref(), coefficients.as_deref()),
        Command::Compare { left, right, opposite, blind } => commands::compare(s, left, right.as_deref(), *opposite, *blind),
        Command::Mv { space, cover, u, v } => commands::mv(s, space, cover.as_deref(), u.as_deref().zip(v.as_deref())),
        Command::GsCompare { input } => commands::gs_compare(s, input),
        Command::Deform { category, cochain, enumerate } => commands::deform(s, category, cochain.as_deref(), *enumerate),
        Command::Suite { criteria } => commands::suite(s, criteria),
    }
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let body = if cli.settings.json { &outcome.json } else { &outcome.text };
    let written = match &cli.settings.out {
        Some(path) => std::fs::write(path, body).map_err(|e| Error::from(e).in_file(path.display().to_string())),
        None => std::io::stdout().write_all(body.as_bytes()).map_err(Error::from),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return EXIT_VALIDATION;
    }
    outcome.code
}
