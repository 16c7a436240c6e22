//! Command-line front end.
//!
//! Exit codes: 0 positive verdict, 1 negative verdict, 2 input error (with a
//! JSON diagnostic on stderr), 3 enumeration cap exceeded under `--strict`.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::crosscheck::{compare_seeds, summarize};
use crate::factorization::FunctionTable;
use crate::io::{
    domains_to_value, lattice_to_value, load_domains, load_factorization, load_lattice, load_table, table_to_csv,
    IoError,
};
use crate::oracle::{random_instance, InstanceLimits};
use crate::report::{self, BoundsMode, ChainMode, FactorizeOptions, Options, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "pseudopoly",
    version,
    about = "Decide and enumerate factorizations f = p(φ1(x1), …, φn(xn)) of tabulated lattice-valued functions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the boundary condition and pseudo-polynomiality; exit 0 iff pseudo-polynomial.
    Check(Common),
    /// List every factorization, up to a cap.
    Factorize {
        #[command(flatten)]
        common: Common,
        /// Materialize at most this many factorizations.
        #[arg(long, default_value_t = 10_000)]
        max_factorizations: usize,
        /// Report exact counts only.
        #[arg(long)]
        count_only: bool,
        /// Exit with code 3 when the cap is exceeded.
        #[arg(long)]
        strict: bool,
    },
    /// Verify one factorization given as JSON; exit 0 iff it factors the table.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Factorization JSON `{"phi": .., "p": ..}`, or a factorize report.
        #[arg(long)]
        factorization: PathBuf,
        /// Entry of the report's factorization list to verify.
        #[arg(long)]
        index: Option<usize>,
    },
    /// Compare the engine against brute force on seeded random instances.
    OracleCompare {
        /// Inclusive seed range `A..B`.
        #[arg(long, default_value = "1..200", value_parser = parse_seeds)]
        seeds: RangeInclusive<u64>,
        /// Instance limits `n,x,y`: arity, domain size, lattice size.
        #[arg(long, default_value = "2,3,6")]
        limits: InstanceLimits,
        /// Write the summary here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Write a seeded random instance as lattice.json, domain.json and table.csv.
    Generate {
        #[arg(long)]
        seed: u64,
        /// Instance limits `n,x,y`.
        #[arg(long, default_value = "2,3,6")]
        limits: InstanceLimits,
        /// Directory to write the three files into.
        #[arg(long)]
        out_dir: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Lattice JSON; overrides the lattice named in the domain file.
    #[arg(long)]
    pub lattice: Option<PathBuf>,
    /// Domain JSON.
    #[arg(long)]
    pub domain: PathBuf,
    /// Function table CSV with header x1,...,xn,f.
    #[arg(long)]
    pub table: PathBuf,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// How designated elements are obtained.
    #[arg(long, value_enum, default_value_t = BoundsMode::Auto)]
    pub bounds: BoundsMode,
    /// When to add the chain section.
    #[arg(long, value_enum, default_value_t = ChainMode::Auto)]
    pub chain_mode: ChainMode,
    /// Include the step-by-step evaluation of every Φ value.
    #[arg(long)]
    pub trace: bool,
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

impl Common {
    fn options(&self) -> Options {
        Options { bounds: self.bounds, chain: self.chain_mode, trace: self.trace }
    }
}

fn parse_seeds(s: &str) -> Result<RangeInclusive<u64>, String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let a: u64 = a.trim().parse().map_err(|e| format!("bad start {a:?}: {e}"))?;
    let b: u64 = b.trim().trim_start_matches('=').parse().map_err(|e| format!("bad end {b:?}: {e}"))?;
    if a > b {
        return Err(format!("empty seed range {a}..{b}"));
    }
    Ok(a..=b)
}

fn load(common: &Common) -> Result<FunctionTable, IoError> {
    let set = load_domains(&common.domain)?;
    let lattice = match (&common.lattice, set.lattice) {
        (Some(p), _) => load_lattice(p)?,
        (None, Some(y)) => y,
        (None, None) => {
            return Err(IoError::Schema("no lattice: pass --lattice or add \"lattice\" to the domain file".into()))
        }
    };
    load_table(&common.table, Arc::new(lattice), set.domains)
}

struct Io<'a> {
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

impl Io<'_> {
    fn diagnostic(&mut self, d: Value) -> i32 {
        let _ = writeln!(self.stderr, "{d}");
        EXIT_INPUT
    }

    fn emit(&mut self, text: &str, output: Option<&Path>) -> Result<(), Value> {
        match output {
            Some(p) => fs::write(p, text)
                .map_err(|e| json!({ "error": "write", "message": format!("cannot write {}: {e}", p.display()) })),
            None => {
                let _ = self.stdout.write_all(text.as_bytes());
                Ok(())
            }
        }
    }

    fn report(&mut self, r: Report, common: &Common) -> i32 {
        let text = match common.format {
            Format::Json => format!("{}\n", serde_json::to_string_pretty(&r.value).expect("reports serialize")),
            Format::Text => report::render_text(&r.value),
        };
        match self.emit(&text, common.output.as_deref()) {
            Ok(()) => r.outcome.exit_code(),
            Err(d) => self.diagnostic(d),
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut io = Io { stdout, stderr };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(io.stdout, "{e}");
                return EXIT_OK;
            }
            return io.diagnostic(json!({ "error": "usage", "message": e.to_string().trim_end() }));
        }
    };
    match cli.command {
        Command::Check(common) => {
            let f = match load(&common) {
                Ok(f) => f,
                Err(e) => return io.diagnostic(e.diagnostic()),
            };
            match report::check(&f, &common.options()) {
                Ok(r) => io.report(r, &common),
                Err(e) => io.diagnostic(e.diagnostic()),
            }
        }
        Command::Factorize { common, max_factorizations, count_only, strict } => {
            let f = match load(&common) {
                Ok(f) => f,
                Err(e) => return io.diagnostic(e.diagnostic()),
            };
            let fopts = FactorizeOptions { cap: max_factorizations, count_only, strict };
            match report::factorize(&f, &common.options(), &fopts) {
                Ok(r) => io.report(r, &common),
                Err(e) => io.diagnostic(e.diagnostic()),
            }
        }
        Command::Verify { common, factorization, index } => {
            let f = match load(&common) {
                Ok(f) => f,
                Err(e) => return io.diagnostic(e.diagnostic()),
            };
            let (phi, p) = match load_factorization(&factorization, &f, index) {
                Ok(x) => x,
                Err(e) => return io.diagnostic(e.diagnostic()),
            };
            match report::verify(&f, &common.options(), &phi, &p) {
                Ok(r) => io.report(r, &common),
                Err(e) => io.diagnostic(e.diagnostic()),
            }
        }
        Command::OracleCompare { seeds, limits, output } => {
            let outcomes = compare_seeds(seeds.clone(), &limits);
            let summary = summarize(seeds, &limits, &outcomes);
            let text = format!("{}\n", serde_json::to_string_pretty(&summary).expect("summaries serialize"));
            match io.emit(&text, output.as_deref()) {
                Ok(()) if summary.passed => EXIT_OK,
                Ok(()) => EXIT_NEGATIVE,
                Err(d) => io.diagnostic(d),
            }
        }
        Command::Generate { seed, limits, out_dir } => {
            let f = random_instance(seed, &limits);
            let domain = json!({ "domains": domains_to_value(f.domains()), "lattice": "lattice.json" });
            let files = [
                (
                    "lattice.json",
                    format!("{}\n", serde_json::to_string_pretty(&lattice_to_value(f.lattice())).expect("json")),
                ),
                ("domain.json", format!("{}\n", serde_json::to_string_pretty(&domain).expect("json"))),
                ("table.csv", table_to_csv(&f)),
            ];
            if let Err(e) = fs::create_dir_all(&out_dir) {
                return io.diagnostic(
                    json!({ "error": "write", "message": format!("cannot create {}: {e}", out_dir.display()) }),
                );
            }
            for (name, text) in files {
                if let Err(d) = io.emit(&text, Some(&out_dir.join(name))) {
                    return io.diagnostic(d);
                }
            }
            EXIT_OK
        }
    }
}
