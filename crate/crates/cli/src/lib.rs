//! Command-line front end for `bicyclic-core`.
//!
//! Exit codes: 0 success, 1 a verification or classification failed (or the
//! computation itself errored), 2 usage errors such as malformed literals
//! or unreadable table files.

pub mod table;

use std::io::Write;
use std::path::PathBuf;

use bicyclic_core::oracle::{
    self, decompose, scan_exclusions, tabulate, verify_homomorphism, verify_injective,
};
use bicyclic_core::suite::{core_suite, identity_suite, SuiteConfig};
use bicyclic_core::{Elem, Error as CoreError, Family, NormalForm, Report, SdPair, TabulatedEndo};
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

pub use table::{load_table, parse_table, TableError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "bicyclic",
    version,
    about = "Exact arithmetic and endomorphism oracles for bicyclic extensions over ray families"
)]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Product of two elements, e.g. `mul "(1,1,0)" "(0,0,2)"`.
    Mul {
        a: Elem,
        b: Elem,
        /// Ray starts of the ambient family.
        #[arg(long, default_value = "0,1,2")]
        family: Family,
    },
    /// Inverse of an element.
    Inv { a: Elem },
    /// Natural partial order: is `a ≼ b`?
    Order {
        a: Elem,
        b: Elem,
        #[arg(long, default_value = "0,1,2")]
        family: Family,
    },
    /// D-relatedness of two elements.
    Drel { a: Elem, b: Elem },
    /// Shift the ray of an element down by `s`.
    Shift { a: Elem, s: u64 },
    /// Membership in the corner cut out by `(m,m,[0))`.
    Corner { a: Elem, m: u64 },
    /// Validate a family of ray starts, e.g. `family 0,1,2`.
    Family { starts: String },
    /// Image of an element under a normal form, e.g. `apply a2.l3.w0 "(1,0,1)"`.
    Apply { f: NormalForm, x: Elem },
    /// Composite `f ∘ g` (apply `f` first).
    Compose { f: NormalForm, g: NormalForm },
    /// Reduce a word of maps to a normal form, composing left to right.
    ///
    /// Terms: `id`, `lambda`, `lambda^<m>`, `varpi`, `alpha<k>`, or a normal form `a<k>.l<m>.w<w>`.
    Normalize {
        #[arg(required = true)]
        terms: Vec<String>,
    },
    /// Semidirect-product pairs: one argument converts, two multiply.
    ///
    /// Arguments are pairs `(k,m)` or normal forms without reversal (`w0`).
    Sd { a: String, b: Option<String> },
    /// Tabulate a normal form on `Window(N)` in the table file format.
    Tabulate {
        f: NormalForm,
        #[arg(long = "N", default_value_t = 4)]
        n: u64,
    },
    /// Recover the normal form of a tabulated endomorphism.
    Decompose {
        #[arg(long = "from-file")]
        from_file: PathBuf,
    },
    /// Check that a table (or a tabulated normal form) is an injective homomorphism.
    Verify {
        f: Option<NormalForm>,
        #[arg(
            long = "from-file",
            conflicts_with = "f",
            required_unless_present = "f"
        )]
        from_file: Option<PathBuf>,
        /// Pair window; the table domain must reach `2N`.
        #[arg(long = "N")]
        n: Option<u64>,
    },
    /// Scan the normal forms with `k ≤ K`, `m ≤ M` for the layer exclusions.
    Scan {
        #[arg(long = "K", default_value_t = 5)]
        k: u64,
        #[arg(long = "M", default_value_t = 5)]
        m: u64,
    },
    /// Run every law suite.
    Suite {
        #[arg(long = "K")]
        k: Option<u64>,
        #[arg(long = "M")]
        m: Option<u64>,
        #[arg(long = "N")]
        n: Option<u64>,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Failed { kind: &'static str, message: String },
}

impl From<TableError> for Failure {
    fn from(e: TableError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        let kind = match &e {
            CoreError::MiddleLayerIdentityImage { .. } => "MiddleLayerIdentityImage",
            CoreError::NotClassifiable { .. } => "NotClassifiable",
            CoreError::NonPositiveK(_) => "NonPositiveK",
            CoreError::NotInSubmonoid { .. } => "NotInSubmonoid",
            CoreError::NotOmegaClosed { .. } => "NotOmegaClosed",
            CoreError::RayUnderflow { .. } => "RayUnderflow",
            CoreError::UnsupportedFamily { .. } => "UnsupportedFamily",
            CoreError::DomainTooSmall { .. } => "DomainTooSmall",
            CoreError::Overflow(_) => "Overflow",
            CoreError::NotInFamily { .. } => "NotInFamily",
            _ => "Error",
        };
        Failure::Failed {
            kind,
            message: e.to_string(),
        }
    }
}

enum Output {
    Value(serde_json::Value, String),
    Reports(Vec<Report>),
}

fn value<T: Serialize + ToString>(v: &T) -> Output {
    Output::Value(
        serde_json::to_value(v).expect("serializable"),
        v.to_string(),
    )
}

fn boolean(b: bool) -> Output {
    Output::Value(json!({ "result": b }), b.to_string())
}

fn parse_term(term: &str) -> Result<NormalForm, Failure> {
    let bad = || {
        Failure::Usage(format!("cannot parse {term:?} as a map (id, lambda, lambda^<m>, varpi, alpha<k>, a<k>.l<m>.w<w>)"))
    };
    let number = |s: &str| -> Result<u64, Failure> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        s.parse().map_err(|_| bad())
    };
    match term {
        "id" => Ok(NormalForm::IDENTITY),
        "lambda" => Ok(NormalForm::LAMBDA),
        "varpi" => Ok(NormalForm::VARPI),
        _ => {
            if let Some(m) = term.strip_prefix("lambda^") {
                Ok(NormalForm::lambda_pow(number(m)?))
            } else if let Some(k) = term.strip_prefix("alpha") {
                NormalForm::alpha(number(k)?).map_err(|_| bad())
            } else {
                term.parse::<NormalForm>()
                    .map_err(|e| Failure::Usage(e.to_string()))
            }
        }
    }
}

fn parse_pair(arg: &str) -> Result<SdPair, Failure> {
    if let Ok(p) = arg.parse::<SdPair>() {
        return Ok(p);
    }
    let f = arg.parse::<NormalForm>().map_err(|_| {
        Failure::Usage(format!(
            "cannot parse {arg:?} as a pair (k,m) or a normal form"
        ))
    })?;
    Ok(f.to_sd()?)
}

fn execute(command: Command) -> Result<Output, Failure> {
    Ok(match command {
        Command::Mul { a, b, family } => value(&family.mul(a, b)?),
        Command::Inv { a } => value(&a.inverse()),
        Command::Order { a, b, family } => boolean(family.nat_leq(a, b)),
        Command::Drel { a, b } => boolean(a.d_related(b)),
        Command::Shift { a, s } => value(&a.shift_down(s)?),
        Command::Corner { a, m } => boolean(a.in_corner(m)),
        Command::Family { starts } => {
            let family: Family = starts.parse()?;
            let rays: Vec<u64> = family.rays().iter().map(|r| r.start()).collect();
            Output::Value(json!({ "rays": rays }), family.to_string())
        }
        Command::Apply { f, x } => value(&f.apply(x)?),
        Command::Compose { f, g } => value(&f.compose(g)?),
        Command::Normalize { terms } => {
            let mut acc = NormalForm::IDENTITY;
            for term in &terms {
                acc = acc.compose(parse_term(term)?)?;
            }
            value(&acc)
        }
        Command::Sd { a, b } => {
            let a = parse_pair(&a)?;
            match b {
                Some(b) => value(&a.mul(parse_pair(&b)?)?),
                None => value(&a),
            }
        }
        Command::Tabulate { f, n } => {
            let file = table::TableFile::from(&tabulate(f, n)?);
            let text = serde_json::to_string(&file).expect("serializable");
            Output::Value(serde_json::to_value(&file).expect("serializable"), text)
        }
        Command::Decompose { from_file } => value(&decompose(&load_table(&from_file)?)?),
        Command::Verify { f, from_file, n } => {
            let table: TabulatedEndo = match (f, from_file) {
                (_, Some(path)) => load_table(&path)?,
                (Some(f), None) => tabulate(f, 2 * n.unwrap_or(4))?,
                (None, None) => {
                    return Err(Failure::Usage(
                        "verify needs a normal form or --from-file".into(),
                    ))
                }
            };
            let window = n.unwrap_or(table.domain_bound() / 2);
            Output::Reports(vec![
                verify_homomorphism(&table, window)?,
                verify_injective(&table),
            ])
        }
        Command::Scan { k, m } => {
            if k == 0 {
                return Err(Failure::Usage("--K must be at least 1".into()));
            }
            Output::Reports(vec![scan_exclusions(k, m)])
        }
        Command::Suite { k, m, n } => {
            if k == Some(0) {
                return Err(Failure::Usage("--K must be at least 1".into()));
            }
            let cfg = SuiteConfig {
                k_max: k,
                m_max: m,
                window: n,
            };
            Output::Reports(
                core_suite(&cfg)
                    .into_iter()
                    .chain(identity_suite(&cfg))
                    .collect(),
            )
        }
    })
}

fn overall(reports: &[Report]) -> oracle::Status {
    if reports.iter().all(Report::passed) {
        oracle::Status::Pass
    } else {
        oracle::Status::Fail
    }
}

/// Parses `argv` (including the program name), runs the command, and
/// writes its output. Returns the process exit code.
pub fn parse_and_dispatch<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let json_mode = cli.json;
    match execute(cli.command) {
        Ok(Output::Value(json, text)) => {
            if json_mode {
                let _ = writeln!(out, "{json}");
            } else {
                let _ = writeln!(out, "{text}");
            }
            EXIT_OK
        }
        Ok(Output::Reports(reports)) => {
            let status = overall(&reports);
            if json_mode {
                let doc = if reports.len() == 1 {
                    serde_json::to_value(&reports[0])
                } else {
                    serde_json::to_value(json!({ "status": status, "reports": reports }))
                };
                let _ = writeln!(out, "{}", doc.expect("serializable"));
            } else {
                for r in &reports {
                    let _ = writeln!(out, "{r}");
                }
            }
            match status {
                oracle::Status::Pass => EXIT_OK,
                oracle::Status::Fail => EXIT_FAIL,
            }
        }
        Err(Failure::Usage(message)) => {
            let _ = writeln!(err, "usage error: {message}");
            EXIT_USAGE
        }
        Err(Failure::Failed { kind, message }) => {
            if json_mode {
                let _ = writeln!(out, "{}", json!({ "error": kind, "message": message }));
            }
            let _ = writeln!(err, "{kind}: {message}");
            EXIT_FAIL
        }
    }
}
